//! Test-only oracles. They recompute everything from the rational entries by
//! plain summation, sharing no code paths with the library's integer-weight
//! enumerators, shifted-order machinery or search routines.

#![allow(dead_code)]

use std::collections::BTreeSet;

use chains_core::{canonical_form, CanonicalForm, LengthVector, Rational, SimplicialComplex, SubsetMask};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn lv(s: &str) -> LengthVector {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn sum_over(l: &LengthVector, bits: u64) -> Rational {
    l.entries()
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .fold(Rational::zero(), |acc, (_, x)| acc + x)
}

/// `2 Σ_J < total`, by rational arithmetic.
pub fn is_short(l: &LengthVector, bits: u64) -> bool {
    let two = Rational::from_integer(2.into());
    sum_over(l, bits) * two < *l.total()
}

pub fn is_generic(l: &LengthVector) -> bool {
    let two = Rational::from_integer(2.into());
    (0..1u64 << l.n()).all(|b| sum_over(l, b) * &two != *l.total())
}

pub fn short_family(l: &LengthVector) -> Vec<SubsetMask> {
    (0..1u64 << l.n()).filter(|&b| is_short(l, b)).map(SubsetMask::from_bits).collect()
}

/// `Sh(l)` with `∅` when `{n}` is short, ascending.
pub fn sh_family(l: &LengthVector) -> Vec<SubsetMask> {
    let last = 1u64 << (l.n() - 1);
    (0..last).filter(|&b| is_short(l, b | last)).map(SubsetMask::from_bits).collect()
}

pub fn sh_faces(l: &LengthVector) -> Vec<SubsetMask> {
    sh_family(l).into_iter().filter(|m| !m.is_empty()).collect()
}

pub fn complex(l: &LengthVector) -> SimplicialComplex {
    SimplicialComplex::from_facets(sh_faces(l))
}

pub fn a_vector(l: &LengthVector) -> Vec<u64> {
    let mut a = vec![0; l.n() - 1];
    for j in sh_family(l) {
        a[j.len()] += 1;
    }
    a
}

/// Random rational vector with small numerators and denominators, retried
/// until generic; last entry raised to the maximum when `dominated`.
pub fn random_generic(rng: &mut impl Rng, n: usize, dominated: bool) -> LengthVector {
    loop {
        let mut entries: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.gen_range(1..=30i64).into(), rng.gen_range(1..=6i64).into()))
            .collect();
        if dominated {
            let max = entries.iter().max().unwrap().clone();
            let last = entries.len() - 1;
            let top = entries.iter().position(|x| *x == max).unwrap();
            entries.swap(top, last);
        }
        let l = LengthVector::new(entries).unwrap();
        if is_generic(&l) {
            return l;
        }
    }
}

/// Isomorphism by trying every bijection between the vertex sets.
pub fn isomorphic_by_permutations(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    let (va, vb) = (a.vertices().to_vec(), b.vertices().to_vec());
    if va.len() != vb.len() {
        return false;
    }
    let target: BTreeSet<SubsetMask> = b.faces().into_iter().collect();
    let faces = a.faces();
    let mut perm: Vec<usize> = (0..vb.len()).collect();
    loop {
        let image = |f: &SubsetMask| {
            SubsetMask::from_indices(f.iter().map(|v| vb[perm[va.iter().position(|&x| x == v).unwrap()]]))
                .unwrap()
        };
        if faces.len() == target.len() && faces.iter().all(|f| target.contains(&image(f))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Chamber keys found by scanning a grid of integer length vectors with
/// `l_1 <= ... <= l_{n-1}` and entries in `1..=bound`. Each key is whether
/// `{n}` is short plus the canonical form of `Sh̃`.
pub fn grid_chambers(n: usize, dominated: bool, bound: i64) -> BTreeSet<(bool, CanonicalForm)> {
    let mut out = BTreeSet::new();
    let mut head = vec![1i64; n - 1];
    loop {
        for last in 1..=bound {
            if dominated && head.iter().any(|&x| x > last) {
                continue;
            }
            let mut entries = head.clone();
            entries.push(last);
            let l = LengthVector::from_integers(&entries).unwrap();
            if is_generic(&l) {
                let nonempty = !sh_family(&l).is_empty();
                out.insert((nonempty, canonical_form(&complex(&l))));
            }
        }
        // Next non-decreasing head.
        let Some(i) = (0..n - 1).rev().find(|&i| head[i] < bound) else {
            return out;
        };
        let v = head[i] + 1;
        for x in &mut head[i..] {
            *x = v;
        }
    }
}

/// Random complex on vertices `1..=v` with facets of size at most `max_dim + 1`.
pub fn random_complex(rng: &mut impl Rng, v: usize, facets: usize, max_size: usize) -> SimplicialComplex {
    let sets = (0..facets).map(|_| {
        let size = rng.gen_range(1..=max_size.min(v));
        let mut s = SubsetMask::EMPTY;
        while s.len() < size {
            s = s.with(rng.gen_range(1..=v));
        }
        s
    });
    SimplicialComplex::from_facets(sets)
}
