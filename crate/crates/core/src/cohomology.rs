//! Topological invariants of the chain space read off from the short-subset
//! combinatorics: Betti numbers, the graded ring `Λ(Sh̃)`, Morse critical
//! point inventories and the mod-2 intersection pairing.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{are_isomorphic, Invariant, IsoCertificate, SimplicialComplex, VertexMap};
use crate::error::{Error, Result};
use crate::lengths::{dimension, LengthVector, SubsetClass};
use crate::subsets::{a_vector, sh_family, short_complex, short_family, SubsetMask};

/// Integral Betti numbers of `C^n_d(l)` for dominated `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub d: i64,
    pub dim: i64,
    /// `ranks[k]` is the rank of `H^k`, `k = 0..=dim`; absent when the
    /// length vector is not dominated and the formula does not apply.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<u64>>,
    pub dominated_valid: bool,
}

impl BettiTable {
    /// Rank table from an a-vector `(a_0, ..., a_{n-2})`:
    /// `rank H^{s(d-1)} = a_s` for `s = 0..=n-3` and
    /// `rank H^{s(d-1)-1} = a_{n-s-2}` for `s = 1..=n-2`.
    pub fn from_a_vector(n: usize, d: i64, a: &[u64]) -> Result<Self> {
        if d < 3 {
            return Err(Error::UnsupportedDimension(d));
        }
        let dim = dimension(n, d)?;
        let step = (d - 1) as usize;
        let mut ranks = vec![0u64; dim as usize + 1];
        for s in 0..=n - 3 {
            ranks[s * step] = a.get(s).copied().unwrap_or(0);
        }
        for s in 1..=n - 2 {
            ranks[s * step - 1] = a.get(n - s - 2).copied().unwrap_or(0);
        }
        Ok(Self { d, dim, ranks: Some(ranks), dominated_valid: true })
    }

    fn withheld(n: usize, d: i64) -> Result<Self> {
        Ok(Self { d, dim: dimension(n, d)?, ranks: None, dominated_valid: false })
    }

    pub fn total_rank(&self) -> Option<u64> {
        self.ranks.as_ref().map(|r| r.iter().sum())
    }
}

/// Betti numbers of `C^n_d(l)`. A non-dominated `l` yields a table flagged
/// `dominated_valid = false` with no ranks.
pub fn betti_numbers(lengths: &LengthVector, d: i64) -> Result<BettiTable> {
    if d < 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    lengths.require_generic()?;
    if !lengths.is_dominated() {
        return BettiTable::withheld(lengths.n(), d);
    }
    BettiTable::from_a_vector(lengths.n(), d, &a_vector(lengths)?)
}

/// Alternating sum of the ranks.
pub fn euler_characteristic(table: &BettiTable) -> Result<i64> {
    let ranks = match (&table.ranks, table.dominated_valid) {
        (Some(r), true) => r,
        _ => return Err(Error::InvalidTable),
    };
    Ok(ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
        .sum())
}

/// The algebra `Λ(Δ) = Z2[X_1..X_n] / I(Δ)` on its square-free monomial
/// basis `{X_J : J ∈ Δ ∪ {∅}}`, with `X_i` in degree `grade_unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    grade_unit: usize,
    /// `∅` first, then faces ordered by size and mask.
    basis: Vec<SubsetMask>,
    index: HashMap<SubsetMask, usize>,
}

impl GradedRing {
    pub fn from_complex(complex: &SimplicialComplex, grade_unit: usize) -> Self {
        let mut basis = complex.faces();
        basis.push(SubsetMask::EMPTY);
        basis.sort_unstable_by_key(|m| (m.len(), *m));
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self { grade_unit, basis, index }
    }

    pub fn grade_unit(&self) -> usize {
        self.grade_unit
    }

    pub fn basis(&self) -> &[SubsetMask] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, monomial: SubsetMask) -> usize {
        monomial.len() * self.grade_unit
    }

    /// Degree-`grade_unit` generators `X_i`.
    pub fn generators(&self) -> Vec<SubsetMask> {
        self.basis.iter().copied().filter(|m| m.len() == 1).collect()
    }

    /// `graded_dims[s]` is the dimension in degree `s * grade_unit`.
    pub fn graded_dims(&self) -> Vec<u64> {
        let top = self.basis.last().map(|m| m.len()).unwrap_or(0);
        let mut dims = vec![0; top + 1];
        for m in &self.basis {
            dims[m.len()] += 1;
        }
        dims
    }

    pub fn contains(&self, monomial: SubsetMask) -> bool {
        self.index.contains_key(&monomial)
    }

    /// `X_J · X_K`: `X_{J ∪ K}` when `J ∩ K = ∅` and `J ∪ K` is a face, else zero.
    pub fn multiply(&self, j: SubsetMask, k: SubsetMask) -> Option<SubsetMask> {
        if !j.intersection(k).is_empty() {
            return None;
        }
        let u = j.union(k);
        self.contains(u).then_some(u)
    }

    /// Product of two elements given as sets of basis monomials (sums mod 2).
    pub fn multiply_elements(
        &self,
        x: &BTreeSet<SubsetMask>,
        y: &BTreeSet<SubsetMask>,
    ) -> BTreeSet<SubsetMask> {
        let mut out = BTreeSet::new();
        for &a in x {
            for &b in y {
                if let Some(p) = self.multiply(a, b) {
                    if !out.remove(&p) {
                        out.insert(p);
                    }
                }
            }
        }
        out
    }

    /// All non-zero products of basis monomials as ordered triples `(J, K, J ∪ K)`.
    pub fn product_table(&self) -> Vec<(SubsetMask, SubsetMask, SubsetMask)> {
        let mut table = Vec::new();
        for &face in &self.basis {
            for j in face.submasks() {
                let k = SubsetMask::from_bits(face.bits() & !j.bits());
                table.push((j, k, face));
            }
        }
        table.sort_unstable();
        table
    }

    /// Number of entries of [`GradedRing::product_table`]: each basis
    /// monomial `X_F` splits as `X_J · X_{F-J}` in `2^|F|` ordered ways.
    pub fn product_table_len(&self) -> u64 {
        self.basis.iter().map(|m| 1u64 << m.len()).sum()
    }

    /// Recovers the complex from the multiplicative structure alone: a set of
    /// generators spans a face iff their product is non-zero.
    pub fn underlying_complex(&self) -> SimplicialComplex {
        let gens = self.generators();
        let mut nonzero: Vec<SubsetMask> = vec![SubsetMask::EMPTY];
        let mut frontier = nonzero.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &m in &frontier {
                for &g in gens.iter().filter(|g| m.max().is_none_or(|top| g.bits() > 1 << (top - 1))) {
                    if let Some(p) = self.multiply(m, g) {
                        next.push(p);
                    }
                }
            }
            nonzero.extend_from_slice(&next);
            frontier = next;
        }
        SimplicialComplex::from_facets(nonzero)
    }

    /// Image of the ring under the substitution `X_i ↦ X_σ(i)`.
    pub fn relabel(&self, map: &VertexMap) -> GradedRing {
        GradedRing::from_complex(&self.underlying_complex().relabel(map), self.grade_unit)
    }
}

impl Serialize for GradedRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GradedRing", 4)?;
        st.serialize_field("grade_unit", &self.grade_unit)?;
        st.serialize_field("graded_dims", &self.graded_dims())?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("products", &self.product_table())?;
        st.end()
    }
}

/// The ring `Λ(Sh̃(l))` with generators in degree `d - 1`, presenting
/// `H^{(d-1)*}(C^n_d(l); Z2)` for generic dominated `l` and `d >= 3`.
pub fn ring_presentation(lengths: &LengthVector, d: i64) -> Result<GradedRing> {
    if d < 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    lengths.require_generic()?;
    if !lengths.is_dominated() {
        return Err(Error::NotDominated);
    }
    let complex = short_complex(lengths)?;
    Ok(GradedRing::from_complex(&complex, (d - 1) as usize))
}

/// Decides graded-ring isomorphism of `Λ(Δ1)` and `Λ(Δ2)`. Every graded
/// isomorphism comes from a simplicial one, so the question is settled on the
/// complexes recovered from the rings' own multiplication; a positive answer
/// carries the variable substitution `X_i ↦ X_σ(i)`, checked on every product.
pub fn rings_isomorphic(
    r1: &GradedRing,
    r2: &GradedRing,
    c1: &SimplicialComplex,
    c2: &SimplicialComplex,
) -> Result<IsoCertificate> {
    if r1.grade_unit != r2.grade_unit {
        return Err(Error::GradeUnitMismatch { left: r1.grade_unit, right: r2.grade_unit });
    }
    let (k1, k2) = (r1.underlying_complex(), r2.underlying_complex());
    if &k1 != c1 || &k2 != c2 {
        return Err(Error::RingComplexMismatch);
    }
    let (g1, g2) = (r1.graded_dims(), r2.graded_dims());
    if g1 != g2 {
        return Ok(IsoCertificate::distinct(Invariant::GradedDimensions, g1, g2));
    }
    let cert = are_isomorphic(&k1, &k2);
    if let Some(map) = cert.mapping() {
        for (j, k, jk) in r1.product_table() {
            let image = r2.multiply(map.apply(j), map.apply(k));
            assert_eq!(image, Some(map.apply(jk)), "substitution does not preserve products");
        }
        assert_eq!(r1.rank(), r2.rank());
    }
    Ok(cert)
}

/// Which Morse function the inventory describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorseFunction {
    /// `g` on the manifold `V_d(l)` bounded by the chain space: critical
    /// points `ρ_J` for short `J ∋ n`, index `(d-1)(|J|-1)`.
    GOnV,
    /// `f'` on the complement `Z'` of the chain space: critical points `ρ_J`
    /// for long `J`, index `(d-1)(n-|J|)`.
    FPrimeOnZPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    pub subset: SubsetMask,
    pub index: usize,
}

impl CriticalPoint {
    /// The collinear configuration `ρ_J` as signs of `±e_1`, one per segment:
    /// `κ_J(i) e_1` when `n ∈ J` and `-κ_J(i) e_1` otherwise, where `κ_J` is
    /// `-1` on `J`. The last character is always `-`.
    pub fn sign_pattern(&self, n: usize) -> String {
        let flip = !self.subset.contains(n);
        (1..=n)
            .map(|i| if self.subset.contains(i) != flip { '-' } else { '+' })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseInventory {
    pub function: MorseFunction,
    pub n: usize,
    pub d: i64,
    pub critical_points: Vec<CriticalPoint>,
}

impl MorseInventory {
    /// Number of critical points of each index.
    pub fn index_counts(&self) -> BTreeMap<usize, u64> {
        let mut counts = BTreeMap::new();
        for p in &self.critical_points {
            *counts.entry(p.index).or_insert(0) += 1;
        }
        counts
    }
}

pub fn morse_inventory(lengths: &LengthVector, d: i64, which: MorseFunction) -> Result<MorseInventory> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    lengths.require_generic()?;
    let n = lengths.n();
    let step = (d - 1) as usize;
    let critical_points = match which {
        MorseFunction::GOnV => sh_family(lengths)?
            .into_iter()
            .map(|j| {
                let subset = j.with(n);
                CriticalPoint { subset, index: step * (subset.len() - 1) }
            })
            .collect(),
        MorseFunction::FPrimeOnZPrime => {
            // Long sets are exactly the complements of short ones.
            let mut long: Vec<SubsetMask> =
                short_family(lengths)?.into_iter().map(|s| s.complement(n)).collect();
            long.sort_unstable();
            debug_assert!(long
                .iter()
                .take(8)
                .all(|j| lengths.classify_subset(*j) == Ok(SubsetClass::Long)));
            long.into_iter()
                .map(|subset| CriticalPoint { subset, index: step * (n - subset.len()) })
                .collect()
        }
    };
    Ok(MorseInventory { function: which, n, d, critical_points })
}

/// Mod-2 intersection number of the classes `W_J`, `W_K` for `n ∈ J ∩ K` and
/// `|J| + |K| = n + 1`: `1` iff `J ∩ K = {n}`.
pub fn intersection_pairing(n: usize, j: SubsetMask, k: SubsetMask) -> Result<u8> {
    if n == 0 || n > crate::lengths::HARD_MAX_N {
        return Err(Error::Pairing(format!("n = {n} out of range")));
    }
    let ground = SubsetMask::full(n);
    if !j.is_subset_of(ground) || !k.is_subset_of(ground) {
        return Err(Error::Pairing(format!("{j} or {k} is not inside {{1..{n}}}")));
    }
    if !j.contains(n) || !k.contains(n) {
        return Err(Error::Pairing(format!("both {j} and {k} must contain {n}")));
    }
    if j.len() + k.len() != n + 1 {
        return Err(Error::Pairing(format!(
            "|J| + |K| = {} but must equal n + 1 = {}",
            j.len() + k.len(),
            n + 1
        )));
    }
    Ok(u8::from(j.intersection(k) == SubsetMask::singleton(n)))
}

/// Largest `n` accepted by [`pairing_matrix`]; the matrix has `C(n-1, k)^2` entries.
pub const PAIRING_MAX_N: usize = 16;

/// The mod-2 pairing between `{J ∋ n : |J| = n - k}` (rows) and
/// `{K ∋ n : |K| = k + 1}` (columns), both ascending by mask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingMatrix {
    pub rows: Vec<SubsetMask>,
    pub cols: Vec<SubsetMask>,
    pub entries: Vec<Vec<u8>>,
}

impl PairingMatrix {
    pub fn is_permutation_matrix(&self) -> bool {
        let square = self.rows.len() == self.cols.len();
        let rows_ok = self.entries.iter().all(|r| r.iter().filter(|&&x| x == 1).count() == 1);
        let cols_ok = (0..self.cols.len())
            .all(|c| self.entries.iter().filter(|r| r[c] == 1).count() == 1);
        let zero_one = self.entries.iter().flatten().all(|&x| x <= 1);
        square && rows_ok && cols_ok && zero_one
    }
}

pub fn pairing_matrix(n: usize, k: usize) -> Result<PairingMatrix> {
    if !(1..=PAIRING_MAX_N).contains(&n) {
        return Err(Error::Pairing(format!("n = {n} outside 1..={PAIRING_MAX_N}")));
    }
    if k > n - 1 {
        return Err(Error::Pairing(format!("k = {k} outside 0..={}", n - 1)));
    }
    let through_n = |size: usize| -> Vec<SubsetMask> {
        SubsetMask::full(n - 1)
            .submasks()
            .filter(|m| m.len() + 1 == size)
            .map(|m| m.with(n))
            .collect()
    };
    let rows = through_n(n - k);
    let cols = through_n(k + 1);
    let entries = rows
        .iter()
        .map(|&j| {
            cols.iter()
                .map(|&c| intersection_pairing(n, j, c))
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairingMatrix { rows, cols, entries })
}
