//! Short-subset structures of a length vector: the short family `S`, the
//! complex of short sets through `n`, and its genetic code.
//!
//! Indexing is 1-based throughout the public API: bit `i - 1` of a mask is
//! set iff `i` belongs to the subset.

// `with_weights!` bodies are instantiated for both `i128` and `BigInt`.
#![allow(clippy::clone_on_copy, clippy::op_ref)]

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::lengths::{balance, select_masks, subset_sum, with_weights, LengthVector, Weight};

/// A subset of `{1..=62}` stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    /// Builds a mask from 1-based indices.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = 0u64;
        for i in indices {
            if i == 0 || i > crate::lengths::HARD_MAX_N {
                return Err(Error::IndexOutOfRange { index: i, n: crate::lengths::HARD_MAX_N });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Self(bits))
    }

    /// `{1..=n}`.
    pub const fn full(n: usize) -> Self {
        Self(low_bits(n))
    }

    pub const fn singleton(i: usize) -> Self {
        Self(1 << (i - 1))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 64 && self.0 & (1 << (i - 1)) != 0
    }

    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: SubsetMask) -> Self {
        Self(self.0 | other.0)
    }

    pub const fn intersection(self, other: SubsetMask) -> Self {
        Self(self.0 & other.0)
    }

    pub const fn with(self, i: usize) -> Self {
        Self(self.0 | 1 << (i - 1))
    }

    pub const fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << (i - 1)))
    }

    /// Complement inside `{1..=n}`.
    pub const fn complement(self, n: usize) -> Self {
        Self(!self.0 & low_bits(n))
    }

    /// Largest element, if any.
    pub const fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self` (including `∅` and `self`), ascending.
    pub fn submasks(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some(((cur | !full).wrapping_add(1)) & full) };
            Some(SubsetMask(cur))
        })
    }
}

/// Iterator over the elements of a [`SubsetMask`].
#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl DoubleEndedIterator for Elements {
    fn next_back(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = 63 - self.0.leading_zeros() as usize;
        self.0 &= !(1 << i);
        Some(i + 1)
    }
}

impl ExactSizeIterator for Elements {}

const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

/// Down-closure of a family of masks, ascending and deduplicated. Includes `∅`
/// whenever the family is non-empty.
pub fn down_closure(family: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut seen: HashSet<SubsetMask> = HashSet::new();
    for &g in family {
        // A gene whose top subset is already present has all its subsets present.
        if seen.contains(&g) {
            continue;
        }
        seen.extend(g.submasks());
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Inclusion-maximal members of a family, ascending.
pub fn maximal_elements(family: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut sorted: Vec<SubsetMask> = family.to_vec();
    sorted.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sorted.dedup();
    let mut out: Vec<SubsetMask> = Vec::new();
    for m in sorted {
        if !out.iter().any(|o| m.is_subset_of(*o)) {
            out.push(m);
        }
    }
    out.sort_unstable();
    out
}

/// `a ≤ b` in the shifted order: `|a| <= |b|` and, listing both in descending
/// order, each element of `a` is at most the matching element of `b`. When
/// `l_1 <= ... <= l_{n-1}`, `a ≤ b` forces `Σ_a l <= Σ_b l`.
pub fn shifted_le(a: SubsetMask, b: SubsetMask) -> bool {
    a.len() <= b.len() && a.iter().rev().zip(b.iter().rev()).all(|(x, y)| x <= y)
}

/// Covers from below in the shifted order: drop an element or lower one by one.
pub fn shifted_lower_covers(x: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    x.iter().flat_map(move |b| {
        let lowered = (b >= 2 && !x.contains(b - 1)).then(|| x.without(b).with(b - 1));
        std::iter::once(x.without(b)).chain(lowered)
    })
}

/// Covers from above inside `{1..m}`: add `1`, or raise an element by one.
pub fn shifted_upper_covers(x: SubsetMask, m: usize) -> impl Iterator<Item = SubsetMask> {
    let add_one = (m >= 1 && !x.contains(1)).then(|| x.with(1));
    add_one.into_iter().chain(
        x.iter()
            .filter(move |&b| b < m && !x.contains(b + 1))
            .map(move |b| x.without(b).with(b + 1)),
    )
}

/// Down-closure in the shifted order, ascending. Includes `∅` whenever the
/// family is non-empty.
pub fn shifted_closure(family: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut seen: HashSet<SubsetMask> = family.iter().copied().collect();
    let mut stack: Vec<SubsetMask> = seen.iter().copied().collect();
    while let Some(x) = stack.pop() {
        for y in shifted_lower_covers(x) {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// True iff the family is closed under going down in the shifted order.
pub fn is_shifted(family: &[SubsetMask]) -> bool {
    let set: HashSet<SubsetMask> = family.iter().copied().collect();
    family.iter().all(|&x| shifted_lower_covers(x).all(|y| set.contains(&y)))
}

/// Genetic code of a chamber, in the notation of the chamber tables.
///
/// Relabel so that `l_1 <= ... <= l_{n-1}`; then `Sh` is closed under the
/// shifted order and the genes are its maximal elements in that order. The
/// code therefore names a chamber up to relabeling `{1..n-1}`; [`sh_faces`]
/// and [`short_complex`] keep the original labels.
///
/// `⟨⟩` (no genes) means `{n}` is long and the chain space is empty; `⟨n⟩` (the
/// single gene `∅`) means `{n}` is short but no `{i, n}` is.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChamberCode {
    n: usize,
    genes: Vec<SubsetMask>,
}

impl ChamberCode {
    /// Validates that the genes form a shifted-order antichain inside `{1..n-1}`.
    pub fn new(n: usize, genes: Vec<SubsetMask>) -> Result<Self> {
        if !(3..=crate::lengths::HARD_MAX_N).contains(&n) {
            return Err(Error::MalformedTarget(format!("n = {n} out of range")));
        }
        let ground = SubsetMask::full(n - 1);
        for g in &genes {
            if !g.is_subset_of(ground) {
                return Err(Error::MalformedTarget(format!("{g} is not inside {{1..{}}}", n - 1)));
            }
        }
        for (i, a) in genes.iter().enumerate() {
            for b in &genes[i + 1..] {
                if shifted_le(*a, *b) || shifted_le(*b, *a) {
                    return Err(Error::MalformedTarget(format!("genes {a} and {b} are comparable")));
                }
            }
        }
        let mut genes = genes;
        genes.sort_unstable_by(gene_order);
        Ok(Self { n, genes })
    }

    /// Code of the family `Sh = faces ∪ {∅}` (so `{n}` is short). The face set
    /// must already be closed under the shifted order.
    pub fn from_complex(n: usize, complex: &SimplicialComplex) -> Result<Self> {
        let mut family = complex.faces();
        family.push(SubsetMask::EMPTY);
        Self::from_family(n, &family)
    }

    /// Code of a shifted family of subsets of `{1..n-1}` (`∅` included unless
    /// the family is empty).
    pub fn from_family(n: usize, family: &[SubsetMask]) -> Result<Self> {
        if !is_shifted(family) {
            return Err(Error::MalformedTarget(
                "family is not closed under the shifted order; relabel by increasing length".into(),
            ));
        }
        let set: HashSet<SubsetMask> = family.iter().copied().collect();
        let m = n.saturating_sub(1);
        let genes = set
            .iter()
            .copied()
            .filter(|&x| shifted_upper_covers(x, m).all(|y| !set.contains(&y)))
            .collect();
        Self::new(n, genes)
    }

    /// The code `⟨⟩` of an empty chain space.
    pub fn empty_space(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Genes in display order (largest first, then lexicographically descending).
    pub fn genes(&self) -> &[SubsetMask] {
        &self.genes
    }

    /// True iff `{n}` is long.
    pub fn is_empty_space(&self) -> bool {
        self.genes.is_empty()
    }

    /// The family `Sh = {J ⊆ {1..n-1} : J ∪ {n} short}` of the sorted
    /// representative, ascending, `∅` included when present.
    pub fn sh(&self) -> Vec<SubsetMask> {
        shifted_closure(&self.genes)
    }

    /// Faces of the complex `Sh \ {∅}`, ascending.
    pub fn faces(&self) -> Vec<SubsetMask> {
        let mut all = self.sh();
        all.retain(|m| !m.is_empty());
        all
    }

    /// The simplicial complex `Sh \ {∅}`.
    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(maximal_elements(&self.faces()))
    }

    /// Genes as arrays of the elements of `J ∪ {n}` in descending order.
    pub fn gene_arrays(&self) -> Vec<Vec<usize>> {
        self.genes.iter().map(|g| gene_digits(self.n, *g)).collect()
    }

    /// Inverse of [`ChamberCode::gene_arrays`].
    pub fn from_gene_arrays(n: usize, arrays: &[Vec<usize>]) -> Result<Self> {
        let genes = arrays
            .iter()
            .map(|a| gene_from_elements(n, a))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, genes)
    }

    /// Angle-bracket notation with ASCII brackets, e.g. `<632,64>`.
    pub fn to_ascii(&self) -> String {
        format!("<{}>", self.gene_strings().join(","))
    }

    fn gene_strings(&self) -> Vec<String> {
        let sep = if self.n <= 9 { "" } else { "." };
        self.gene_arrays()
            .iter()
            .map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep))
            .collect()
    }

    /// Parses `⟨632,64⟩`, `<632,64>` or `632,64`. For `n >= 10` elements of a
    /// gene are separated by dots (`10.3.1`); `⟨⟩` is the empty code.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let err = || Error::CodeParse(s.to_string());
        let t = s.trim();
        let t = t
            .strip_prefix('⟨')
            .and_then(|r| r.strip_suffix('⟩'))
            .or_else(|| t.strip_prefix('<').and_then(|r| r.strip_suffix('>')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Self::empty_space(n);
        }
        let mut genes = Vec::new();
        for gene in t.split(',') {
            let gene = gene.trim();
            let elements: Vec<usize> = if gene.contains('.') {
                gene.split('.').map(|x| x.parse().map_err(|_| err())).collect::<Result<_>>()?
            } else {
                gene.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err))
                    .collect::<Result<_>>()?
            };
            genes.push(gene_from_elements(n, &elements)?);
        }
        Self::new(n, genes)
    }
}

fn gene_digits(n: usize, g: SubsetMask) -> Vec<usize> {
    std::iter::once(n).chain(g.iter().rev()).collect()
}

fn gene_from_elements(n: usize, elements: &[usize]) -> Result<SubsetMask> {
    if !elements.contains(&n) {
        return Err(Error::MalformedTarget(format!(
            "gene {elements:?} does not contain n = {n}"
        )));
    }
    let rest: Vec<usize> = elements.iter().copied().filter(|&e| e != n).collect();
    if let Some(&bad) = rest.iter().find(|&&e| e == 0 || e >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n: n - 1 });
    }
    SubsetMask::from_indices(rest)
}

/// Larger genes first, then lexicographically descending on the descending
/// element sequence (so `⟨632,64⟩`).
fn gene_order(a: &SubsetMask, b: &SubsetMask) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| b.iter().rev().cmp(a.iter().rev()))
}

impl fmt::Display for ChamberCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.gene_strings().join(","))
    }
}

impl fmt::Debug for ChamberCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChamberCode(n={}, {self})", self.n)
    }
}

impl Serialize for ChamberCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.gene_arrays().serialize(s)
    }
}

/// The short family `S(l)`: every short subset of `{1..n}`, ascending by mask,
/// by direct enumeration of all `2^n` subsets.
pub fn short_family(lengths: &LengthVector) -> Result<Vec<SubsetMask>> {
    lengths.require_generic()?;
    Ok(with_weights!(lengths, |w, t| select_masks(w, |_, s| balance(s, t) == Ordering::Less))
        .into_iter()
        .map(SubsetMask::from_bits)
        .collect())
}

/// Faces of `Sh̃(l) = {∅ ≠ J ⊆ {1..n-1} : J ∪ {n} short}` by direct
/// enumeration of all `2^(n-1)` candidates, ascending by mask.
pub fn sh_faces(lengths: &LengthVector) -> Result<Vec<SubsetMask>> {
    lengths.require_generic()?;
    let n = lengths.n();
    Ok(with_weights!(lengths, |w, t| {
        let last = &w[n - 1];
        select_masks(&w[..n - 1], |mask, s| {
            mask != 0 && balance(&(s.clone() + last), t) == Ordering::Less
        })
    })
    .into_iter()
    .map(SubsetMask::from_bits)
    .collect())
}

/// Result of walking the faces of `Sh(l)` once.
struct ShWalk {
    maximal: Vec<SubsetMask>,
    /// Maximal in the shifted order; meaningful only for sorted `l_1..l_{n-1}`.
    shifted_maximal: Vec<SubsetMask>,
    counts: Vec<u64>,
}

/// Depth-first walk over `Sh(l)`, extending sets by increasing index and only
/// through short sets (the family is down-closed, so nothing is missed).
fn walk_sh(lengths: &LengthVector) -> ShWalk {
    let n = lengths.n();
    with_weights!(lengths, |w, t| walk_sh_with(w, t, n))
}

fn walk_sh_with<W: Weight>(w: &[W], total: &W, n: usize) -> ShWalk {
    let mut walk = ShWalk { maximal: Vec::new(), shifted_maximal: Vec::new(), counts: vec![0; n - 1] };
    let last = &w[n - 1];
    if balance(last, total) != Ordering::Less {
        return walk;
    }
    // Indices 0..n-1 sorted by weight, for the maximality test.
    let mut by_weight: Vec<usize> = (0..n - 1).collect();
    by_weight.sort_by(|&a, &b| w[a].cmp(&w[b]));
    let mut stack: Vec<(u64, W, usize)> = vec![(0, last.clone(), 0)];
    while let Some((mask, sum, next)) = stack.pop() {
        walk.counts[mask.count_ones() as usize] += 1;
        let lightest_outside = by_weight.iter().find(|&&i| mask & (1 << i) == 0);
        let is_maximal = match lightest_outside {
            None => true,
            Some(&i) => balance(&(sum.clone() + &w[i]), total) != Ordering::Less,
        };
        if is_maximal {
            walk.maximal.push(SubsetMask::from_bits(mask));
        }
        let raised_short = |b: usize| {
            balance(&(sum.clone() + &w[b + 1] - w[b].clone()), total) == Ordering::Less
        };
        let shifted_maximal = (mask & 1 != 0 || balance(&(sum.clone() + &w[0]), total) != Ordering::Less)
            && (0..n - 2)
                .filter(|&b| mask >> b & 0b11 == 0b01)
                .all(|b| !raised_short(b));
        if shifted_maximal {
            walk.shifted_maximal.push(SubsetMask::from_bits(mask));
        }
        for (i, wi) in w.iter().enumerate().take(n - 1).skip(next) {
            let extended = sum.clone() + wi;
            if balance(&extended, total) == Ordering::Less {
                stack.push((mask | 1 << i, extended, i + 1));
            }
        }
    }
    walk.maximal.sort_unstable();
    walk
}

/// Genetic code of the chamber containing `l`, computed on the sorted
/// representative.
pub fn genetic_code(lengths: &LengthVector) -> Result<ChamberCode> {
    lengths.require_generic()?;
    ChamberCode::new(lengths.n(), walk_sh(&lengths.normalize()).shifted_maximal)
}

/// The complex `Sh̃(l)` in the labels of `l`, from its facets.
pub fn short_complex(lengths: &LengthVector) -> Result<SimplicialComplex> {
    lengths.require_generic()?;
    Ok(SimplicialComplex::from_facets(walk_sh(lengths).maximal))
}

/// `Sh(l)` in the labels of `l`, ascending; contains `∅` iff `{n}` is short.
pub fn sh_family(lengths: &LengthVector) -> Result<Vec<SubsetMask>> {
    let mut family = sh_faces(lengths)?;
    if sh_contains(lengths, SubsetMask::EMPTY) {
        family.insert(0, SubsetMask::EMPTY);
    }
    Ok(family)
}

/// `a_k` for `k = 0..=n-2`: the number of `k`-element members of `Sh(l)`.
pub fn a_vector(lengths: &LengthVector) -> Result<Vec<u64>> {
    lengths.require_generic()?;
    Ok(walk_sh(lengths).counts)
}

/// True iff `J ∪ {n}` is short, from the integer weights.
pub(crate) fn sh_contains(lengths: &LengthVector, j: SubsetMask) -> bool {
    let n = lengths.n();
    with_weights!(lengths, |w, t| {
        balance(&(subset_sum(w, j.bits()) + &w[n - 1]), t) == Ordering::Less
    })
}
