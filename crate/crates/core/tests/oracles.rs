mod common;

use std::collections::BTreeSet;

use chains_core::*;
use common::lv;
use rand::Rng;

#[test]
fn subset_enumerators_match_direct_sums() {
    let mut rng = common::rng(11);
    for _ in 0..300 {
        let n = rng.gen_range(3..=11);
        let dominated = rng.gen_bool(0.5);
        let l = common::random_generic(&mut rng, n, dominated);
        assert!(l.is_generic());
        assert_eq!(short_family(&l).unwrap(), common::short_family(&l), "{l}");
        assert_eq!(sh_faces(&l).unwrap(), common::sh_faces(&l), "{l}");
        assert_eq!(sh_family(&l).unwrap(), common::sh_family(&l), "{l}");
        assert_eq!(a_vector(&l).unwrap(), common::a_vector(&l), "{l}");
        assert_eq!(short_complex(&l).unwrap(), common::complex(&l), "{l}");
    }
}

#[test]
fn genericity_matches_direct_sums() {
    let mut rng = common::rng(12);
    for _ in 0..500 {
        let n = rng.gen_range(3..=9);
        let entries: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let l = LengthVector::from_integers(&entries).unwrap();
        assert_eq!(l.is_generic(), common::is_generic(&l), "{l}");
    }
}

/// Genes recomputed pairwise from the definition of the shifted order.
fn oracle_code_string(l: &LengthVector) -> String {
    let sorted = l.normalize();
    let n = l.n();
    let family = common::sh_family(&sorted);
    let le = |a: &SubsetMask, b: &SubsetMask| {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        x.reverse();
        y.reverse();
        x.len() <= y.len() && x.iter().zip(&y).all(|(p, q)| p <= q)
    };
    let mut genes: Vec<Vec<usize>> = family
        .iter()
        .filter(|a| !family.iter().any(|b| b != *a && le(a, b)))
        .map(|g| std::iter::once(n).chain(g.to_vec().into_iter().rev()).collect())
        .collect();
    genes.sort_by(|a, b| b.len().cmp(&a.len()).then(b.cmp(a)));
    let body: Vec<String> =
        genes.iter().map(|g| g.iter().map(|x| x.to_string()).collect::<String>()).collect();
    format!("⟨{}⟩", body.join(","))
}

#[test]
fn genetic_codes_match_pairwise_definition() {
    let mut rng = common::rng(13);
    for _ in 0..300 {
        let n = rng.gen_range(3..=9);
        let l = common::random_generic(&mut rng, n, false);
        assert_eq!(genetic_code(&l).unwrap().to_string(), oracle_code_string(&l), "{l}");
    }
    assert_eq!(oracle_code_string(&lv("1,1,1,2,3,3")), "⟨632,64⟩");
    assert_eq!(oracle_code_string(&lv("1/4,1,1,1,2,2")), "⟨641⟩");
}

#[test]
fn enumeration_matches_grid_scan() {
    for n in 4..=5 {
        for dominated in [true, false] {
            let chambers = enumerate_chambers(n, dominated).unwrap();
            let found: BTreeSet<(bool, CanonicalForm)> =
                chambers.iter().map(|c| (!c.code.is_empty_space(), c.canonical.clone())).collect();
            assert_eq!(found.len(), chambers.len());
            let grid = common::grid_chambers(n, dominated, 9);
            assert_eq!(found, grid, "n = {n}, dominated = {dominated}");
        }
    }
}

#[test]
fn enumerated_codes_match_grid_codes() {
    for n in 4..=5 {
        let enumerated: BTreeSet<String> =
            enumerate_chambers(n, false).unwrap().iter().map(|c| c.code.to_string()).collect();
        let mut grid = BTreeSet::new();
        let bound = 9i64;
        let mut head = vec![1i64; n - 1];
        'scan: loop {
            for last in 1..=bound {
                let mut e = head.clone();
                e.push(last);
                let l = LengthVector::from_integers(&e).unwrap();
                if common::is_generic(&l) {
                    grid.insert(oracle_code_string(&l));
                }
            }
            let Some(i) = (0..n - 1).rev().find(|&i| head[i] < bound) else { break 'scan };
            let v = head[i] + 1;
            head[i..].iter_mut().for_each(|x| *x = v);
        }
        assert_eq!(enumerated, grid, "n = {n}");
    }
}

#[test]
fn canonical_form_matches_exhaustive_isomorphism() {
    let mut rng = common::rng(14);
    let complexes: Vec<SimplicialComplex> = (0..120)
        .map(|_| {
            let v = rng.gen_range(3..=6);
            let f = rng.gen_range(1..=5);
            common::random_complex(&mut rng, v, f, 3)
        })
        .collect();
    for a in &complexes {
        for b in complexes.iter().take(40) {
            let brute = common::isomorphic_by_permutations(a, b);
            assert_eq!(canonical_form(a) == canonical_form(b), brute, "{a:?} vs {b:?}");
            assert_eq!(are_isomorphic(a, b).is_isomorphic(), brute, "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn rings_follow_complexes() {
    let chambers = enumerate_chambers(6, false).unwrap();
    for a in chambers.iter().take(25) {
        for b in chambers.iter().take(25) {
            let (ca, cb) = (a.code.complex(), b.code.complex());
            let (ra, rb) = (GradedRing::from_complex(&ca, 2), GradedRing::from_complex(&cb, 2));
            let ring = rings_isomorphic(&ra, &rb, &ca, &cb).unwrap().is_isomorphic();
            assert_eq!(ring, common::isomorphic_by_permutations(&ca, &cb));
        }
    }
}

#[test]
fn realize_round_trips_on_random_vectors() {
    let mut rng = common::rng(15);
    for _ in 0..60 {
        let n = rng.gen_range(4..=8);
        let dominated = rng.gen_bool(0.5);
        let l = common::random_generic(&mut rng, n, dominated);
        let problem = RealizationProblem::from_complex(n, &short_complex(&l).unwrap(), dominated).unwrap();
        let result = realize(&problem).unwrap();
        if common::sh_family(&l).is_empty() {
            // The empty-space chamber is not a complex target.
            continue;
        }
        assert!(result.feasible, "{l}");
        let w = result.witness.unwrap();
        assert_eq!(common::sh_family(&w), common::sh_family(&l), "{l} vs {w}");
        assert_eq!(genetic_code(&w).unwrap(), genetic_code(&l).unwrap());
    }
}

#[test]
fn betti_tables_from_direct_counts() {
    let mut rng = common::rng(16);
    for _ in 0..200 {
        let n = rng.gen_range(4..=9);
        let l = common::random_generic(&mut rng, n, true);
        let a = common::a_vector(&l);
        for d in [3i64, 4, 6] {
            let t = betti_numbers(&l, d).unwrap();
            let ranks = t.ranks.clone().unwrap();
            assert_eq!(ranks.iter().sum::<u64>(), 2 * a.iter().sum::<u64>());
            // Independent placement: H^{s(d-1)} and H^{s(d-1)-1}.
            let step = (d - 1) as usize;
            for (k, &r) in ranks.iter().enumerate() {
                let expected = if k % step == 0 && k / step <= n - 3 {
                    a[k / step]
                } else if (k + 1) % step == 0 && (k + 1) / step >= 1 && (k + 1) / step <= n - 2 {
                    a[n - (k + 1) / step - 2]
                } else {
                    0
                };
                assert_eq!(r, expected, "{l} d={d} k={k}");
            }
        }
    }
}

#[test]
fn morse_counts_match_a_vector() {
    let mut rng = common::rng(17);
    for _ in 0..100 {
        let n = rng.gen_range(3..=10);
        let l = common::random_generic(&mut rng, n, false);
        let a = common::a_vector(&l);
        for d in [2i64, 3, 5] {
            let g = morse_inventory(&l, d, MorseFunction::GOnV).unwrap();
            for (s, &count) in a.iter().enumerate() {
                let index = (d as usize - 1) * s;
                assert_eq!(g.index_counts().get(&index).copied().unwrap_or(0), count);
            }
            let f = morse_inventory(&l, d, MorseFunction::FPrimeOnZPrime).unwrap();
            assert_eq!(f.critical_points.len() as u64, 1 << (n - 1));
            for p in &f.critical_points {
                assert!(!common::is_short(&l, p.subset.bits()));
            }
        }
    }
}

#[test]
fn pairing_matches_counting() {
    // Rows and columns are indexed by subsets of {1..n-1} of complementary
    // sizes; J ∩ K = {n} pairs each row with exactly its complement.
    for n in 1..=10usize {
        for k in 0..n {
            let m = pairing_matrix(n, k).unwrap();
            let full = SubsetMask::full(n - 1).with(n);
            for (r, &j) in m.rows.iter().enumerate() {
                for (c, &kk) in m.cols.iter().enumerate() {
                    let complementary = j.union(kk) == full && j.intersection(kk).len() == 1;
                    assert_eq!(m.entries[r][c] == 1, complementary);
                }
            }
        }
    }
}
