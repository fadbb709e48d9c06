mod common;

use std::collections::BTreeSet;

use chains_core::*;
use proptest::prelude::*;

fn entries(max_n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((1i64..40, 1i64..8), 3..=max_n)
        .prop_map(|v| v.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect())
}

fn any_vector(max_n: usize) -> impl Strategy<Value = LengthVector> {
    entries(max_n).prop_map(|e| LengthVector::new(e).unwrap())
}

fn generic_vector(max_n: usize) -> impl Strategy<Value = LengthVector> {
    any_vector(max_n).prop_filter("generic", |l| l.is_generic())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |mut p| {
        p.push(n);
        p
    })
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(1usize..=7, 1..=4), 0..6).prop_map(|sets| {
        SimplicialComplex::from_facets(sets.into_iter().map(|s| SubsetMask::from_indices(s).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn complement_duality(l in generic_vector(10), bits in any::<u64>()) {
        let j = SubsetMask::from_bits(bits & SubsetMask::full(l.n()).bits());
        let flipped = match l.classify_subset(j).unwrap() {
            SubsetClass::Short => SubsetClass::Long,
            SubsetClass::Long => SubsetClass::Short,
            SubsetClass::Degenerate => unreachable!(),
        };
        prop_assert_eq!(l.classify_subset(j.complement(l.n())).unwrap(), flipped);
    }

    #[test]
    fn genericity_is_definitional(l in any_vector(8)) {
        let by_subsets = (0..1u64 << l.n())
            .all(|b| l.classify_subset(SubsetMask::from_bits(b)).unwrap() != SubsetClass::Degenerate);
        prop_assert_eq!(l.is_generic(), by_subsets);
        prop_assert_eq!(l.is_generic(), l.degenerate_subsets().is_empty());
    }

    #[test]
    fn normalize_is_idempotent(l in any_vector(10)) {
        let once = l.normalize();
        prop_assert_eq!(&once.normalize(), &once);
        prop_assert_eq!(once.is_generic(), l.is_generic());
        prop_assert_eq!(once.is_dominated(), l.is_dominated());
        let mut a = l.entries().to_vec();
        let mut b = once.entries().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(once.last(), l.last());
    }

    #[test]
    fn scaling_changes_nothing(l in any_vector(9), p in 1i64..50, q in 1i64..50, bits in any::<u64>()) {
        let c = Rational::new(p.into(), q.into());
        let s = l.scaled(&c).unwrap();
        let j = SubsetMask::from_bits(bits & SubsetMask::full(l.n()).bits());
        prop_assert_eq!(s.classify_subset(j).unwrap(), l.classify_subset(j).unwrap());
        prop_assert_eq!(s.is_generic(), l.is_generic());
        prop_assert_eq!(s.is_dominated(), l.is_dominated());
    }

    #[test]
    fn short_family_has_half_the_subsets(l in generic_vector(12)) {
        let s = short_family(&l).unwrap();
        prop_assert_eq!(s.len() as u64, 1u64 << (l.n() - 1));
        let set: BTreeSet<_> = s.iter().copied().collect();
        for j in &s {
            for i in j.iter() {
                prop_assert!(set.contains(&j.without(i)));
            }
        }
    }

    #[test]
    fn code_round_trip(l in generic_vector(12)) {
        let (sorted, perm) = l.normalize_with_permutation();
        let code = genetic_code(&l).unwrap();
        prop_assert_eq!(&genetic_code(&sorted).unwrap(), &code);
        prop_assert_eq!(code.faces(), sh_faces(&sorted).unwrap());
        let back = VertexMap::new((1..l.n()).map(|k| (k, perm[k - 1])).collect());
        let mut relabelled: Vec<_> = code.faces().into_iter().map(|f| back.apply(f)).collect();
        relabelled.sort();
        prop_assert_eq!(relabelled, sh_faces(&l).unwrap());
        prop_assert_eq!(code.complex(), short_complex(&sorted).unwrap());
        prop_assert_eq!(ChamberCode::parse(l.n(), &code.to_string()).unwrap(), code.clone());
        prop_assert_eq!(ChamberCode::from_family(l.n(), &code.sh()).unwrap(), code);
    }

    #[test]
    fn permutation_invariance(l in generic_vector(9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut r = common::rng(seed);
        let mut perm: Vec<usize> = (1..l.n()).collect();
        perm.shuffle(&mut r);
        perm.push(l.n());
        let p = l.permuted(&perm).unwrap();
        prop_assert_eq!(genetic_code(&p).unwrap(), genetic_code(&l).unwrap());
        prop_assert_eq!(a_vector(&p).unwrap(), a_vector(&l).unwrap());
        prop_assert!(are_isomorphic(&short_complex(&p).unwrap(), &short_complex(&l).unwrap()).is_isomorphic());
    }

    #[test]
    fn ring_is_commutative_and_associative(c in complex_strategy(), bits in prop::collection::vec(any::<u8>(), 3)) {
        let ring = GradedRing::from_complex(&c, 2);
        let basis = ring.basis();
        let pick = |b: u8| basis[b as usize % basis.len()];
        let (x, y, z) = (pick(bits[0]), pick(bits[1]), pick(bits[2]));
        prop_assert_eq!(ring.multiply(x, y), ring.multiply(y, x));
        let left = ring.multiply(x, y).and_then(|xy| ring.multiply(xy, z));
        let right = ring.multiply(y, z).and_then(|yz| ring.multiply(x, yz));
        prop_assert_eq!(left, right);
        for &g in &ring.generators() {
            prop_assert_eq!(ring.multiply(g, g), None);
        }
        prop_assert_eq!(ring.underlying_complex(), c);
    }

    #[test]
    fn canonical_form_ignores_labels(c in complex_strategy(), perm in permutation(8)) {
        let map = VertexMap::new((1..=7).map(|v| (v, perm[v - 1])).collect());
        let relabelled = c.relabel(&map);
        prop_assert_eq!(canonical_form(&relabelled), canonical_form(&c));
        let cert = are_isomorphic(&c, &relabelled);
        let found = cert.mapping().expect("relabelled copy is isomorphic");
        prop_assert_eq!(c.relabel(found), relabelled);
        let (form, to_canon) = canonical_labeling(&c);
        prop_assert_eq!(c.relabel(&to_canon), form.complex());
    }

    #[test]
    fn distinct_certificates_hold(a in complex_strategy(), b in complex_strategy()) {
        let cert = are_isomorphic(&a, &b);
        prop_assert_eq!(cert.is_isomorphic(), canonical_form(&a) == canonical_form(&b));
        if let Some(map) = cert.mapping() {
            prop_assert_eq!(a.relabel(map), b);
        }
    }

    #[test]
    fn betti_duality(l in generic_vector(9), d in prop::sample::select(vec![3i64, 4, 5, 6])) {
        let t = betti_numbers(&l, d).unwrap();
        prop_assert_eq!(t.dominated_valid, l.is_dominated());
        if let Some(r) = &t.ranks {
            let dim = t.dim as usize;
            prop_assert_eq!(r.len(), dim + 1);
            for k in 0..=dim {
                prop_assert_eq!(r[k], r[dim - k]);
            }
        }
    }
}
