//! The inverse problem: which complexes arise as `Sh̃(l)`, with exact rational
//! witnesses, plus chamber enumeration for small `n` and the diffeomorphism
//! verdict for pairs of length vectors.
//!
//! A target family `Sh` is realized by maximizing a common margin `δ` in the
//! strict inequalities "`J ∪ {n}` short" (for the maximal members) and
//! "`K ∪ {n}` long" (for the minimal non-members), with `l_i >= δ` and the
//! normalization `Σ l_i = 1`. The family is realizable iff the optimum is
//! positive.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{betti_numbers, BettiTable};
use crate::complex::{are_isomorphic, canonical_form, CanonicalForm, Invariant, IsoCertificate, VertexMap};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::lengths::{dimension, LengthVector, Rational, HARD_MAX_N};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::subsets::{
    genetic_code, shifted_lower_covers, maximal_elements, sh_contains, sh_family, short_complex, ChamberCode, SubsetMask,
};

/// Smallest `n` accepted by [`enumerate_chambers`].
pub const ENUMERATION_MIN_N: usize = 4;
/// Default largest `n` for [`enumerate_chambers`].
pub const DEFAULT_ENUMERATION_MAX_N: usize = 7;
/// Cap that cannot be raised: the search walks all `2^(n-1)` subsets per branch.
pub const ENUMERATION_HARD_MAX_N: usize = 10;

/// Target `Sh` for a length vector, in the labels the witness must use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationProblem {
    n: usize,
    /// Down-closed; contains `∅` iff `{n}` is to be short.
    family: Vec<SubsetMask>,
    pub require_dominated: bool,
}

impl RealizationProblem {
    /// Target `Sh̃ = complex`, so `{n}` short; an empty complex is the code `⟨n⟩`.
    pub fn from_complex(n: usize, complex: &SimplicialComplex, require_dominated: bool) -> Result<Self> {
        if !(3..=HARD_MAX_N).contains(&n) {
            return Err(Error::MalformedTarget(format!("n = {n} out of range")));
        }
        if !complex.vertices().is_subset_of(SubsetMask::full(n - 1)) {
            return Err(Error::MalformedTarget(format!(
                "vertices {} are not inside {{1..{}}}",
                complex.vertices(),
                n - 1
            )));
        }
        let mut family = complex.faces();
        family.insert(0, SubsetMask::EMPTY);
        Ok(Self { n, family, require_dominated })
    }

    /// Target chamber given by its code; the witness lands in the sorted frame.
    pub fn from_code(code: &ChamberCode, require_dominated: bool) -> Self {
        Self { n: code.n(), family: code.sh(), require_dominated }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The target `Sh`, ascending.
    pub fn family(&self) -> &[SubsetMask] {
        &self.family
    }

    pub fn is_empty_space(&self) -> bool {
        self.family.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationResult {
    pub feasible: bool,
    /// Code of the realized chamber.
    pub code: Option<ChamberCode>,
    /// Realizing length vector, normalized to total length 1.
    pub witness: Option<LengthVector>,
    /// Optimal margin `δ` of the strict inequalities.
    pub slack: Option<Rational>,
}

/// Strict-inequality system for "`Sh(l)` equals a given family".
struct ChamberSystem {
    n: usize,
    rows: Vec<Vec<Rational>>,
    /// Non-strict rows (`coeffs · l <= 0`), no margin.
    plain: Vec<Vec<Rational>>,
}

impl ChamberSystem {
    /// Base system: positivity, optional dominance, and optionally
    /// `l_1 <= ... <= l_{n-1}`, under which only the extreme positivity and
    /// dominance rows are needed.
    fn new(n: usize, require_dominated: bool, sorted: bool) -> Self {
        let mut sys = Self { n, rows: Vec::new(), plain: Vec::new() };
        let unit = |i: usize| {
            let mut r = vec![Rational::zero(); n];
            r[i] = Rational::one();
            r
        };
        let below = |i: usize, j: usize| {
            let mut r = unit(i);
            r[j] = -Rational::one();
            r
        };
        let heads: Vec<usize> = if sorted { vec![0] } else { (0..n - 1).collect() };
        // l_i >= δ
        for &i in &heads {
            sys.rows.push(unit(i));
        }
        sys.rows.push(unit(n - 1));
        if require_dominated {
            let tops: Vec<usize> = if sorted { vec![n - 2] } else { (0..n - 1).collect() };
            for i in tops {
                sys.plain.push(below(i, n - 1));
            }
        }
        if sorted {
            for i in 0..n - 2 {
                sys.plain.push(below(i, i + 1));
            }
        }
        sys
    }

    /// Row `r` with `r · l >= δ` meaning `J ∪ {n}` short (or long if `long`).
    fn subset_row(&self, j: SubsetMask, long: bool) -> Vec<Rational> {
        let with_n = j.with(self.n);
        (1..=self.n)
            .map(|i| {
                let inside = with_n.contains(i);
                if inside == long {
                    Rational::one()
                } else {
                    -Rational::one()
                }
            })
            .collect()
    }

    fn push(&mut self, j: SubsetMask, long: bool) {
        let row = self.subset_row(j, long);
        self.rows.push(row);
    }

    fn strictly_satisfies(&self, row: &[Rational], point: &[Rational]) -> bool {
        let value = row.iter().zip(point).fold(Rational::zero(), |acc, (a, x)| acc + a * x);
        value.is_positive()
    }

    /// Maximal margin and its point, or `None` if the strict system is infeasible.
    fn solve(&self) -> Option<(Vec<Rational>, Rational)> {
        let n = self.n;
        let mut objective = vec![Rational::zero(); n + 1];
        objective[n] = Rational::one();
        let mut lp = LinearProgram::new(objective);
        let mut total = vec![Rational::one(); n + 1];
        total[n] = Rational::zero();
        lp.constrain(total, Relation::Eq, Rational::one());
        for r in &self.rows {
            // δ - r·l <= 0
            let mut c: Vec<Rational> = r.iter().map(|x| -x).collect();
            c.push(Rational::one());
            lp.constrain(c, Relation::Le, Rational::zero());
        }
        for r in &self.plain {
            let mut c = r.clone();
            c.push(Rational::zero());
            lp.constrain(c, Relation::Le, Rational::zero());
        }
        match lp.maximize() {
            LpOutcome::Optimal { mut point, value } if value.is_positive() => {
                point.truncate(n);
                Some((point, value))
            }
            _ => None,
        }
    }
}

/// Minimal subsets of `{1..n-1}` outside a down-closed family.
fn minimal_non_members(n: usize, family: &[SubsetMask]) -> Vec<SubsetMask> {
    if family.is_empty() {
        return vec![SubsetMask::EMPTY];
    }
    let members: HashSet<SubsetMask> = family.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &f in family {
        for v in (1..n).filter(|&v| !f.contains(v)) {
            let x = f.with(v);
            if !members.contains(&x) && x.iter().all(|u| members.contains(&x.without(u))) {
                out.insert(x);
            }
        }
    }
    out.into_iter().collect()
}

/// Decides whether the target family is `Sh(l)` for some generic `l` and,
/// if so, returns a verified witness.
pub fn realize(problem: &RealizationProblem) -> Result<RealizationResult> {
    let n = problem.n();
    let family = problem.family();
    let mut sys = ChamberSystem::new(n, problem.require_dominated, false);
    for g in maximal_elements(family) {
        sys.push(g, false);
    }
    for k in minimal_non_members(n, family) {
        sys.push(k, true);
    }
    let Some((point, slack)) = sys.solve() else {
        return Ok(RealizationResult { feasible: false, code: None, witness: None, slack: None });
    };
    let witness = verified_witness(point, family, problem.require_dominated)?;
    Ok(RealizationResult {
        feasible: true,
        code: Some(genetic_code(&witness)?),
        witness: Some(witness),
        slack: Some(slack),
    })
}

/// Recomputes `Sh` of the candidate from scratch and insists it is the target.
fn verified_witness(point: Vec<Rational>, family: &[SubsetMask], dominated: bool) -> Result<LengthVector> {
    let witness = LengthVector::with_max_n(point, HARD_MAX_N)?;
    let actual = sh_family(&witness)?;
    if actual != family || (dominated && !witness.is_dominated()) {
        let show = |f: &[SubsetMask]| f.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
        return Err(Error::VerificationFailed {
            expected: show(family),
            actual: format!("{} (dominated: {})", show(&actual), witness.is_dominated()),
        });
    }
    Ok(witness)
}

/// One chamber found by [`enumerate_chambers`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub code: ChamberCode,
    pub witness: LengthVector,
    pub canonical: CanonicalForm,
}

impl Chamber {
    /// Isomorphism-invariant key; `⟨⟩` and `⟨n⟩` share an empty complex but
    /// differ in whether the space is empty.
    pub fn key(&self) -> (bool, &CanonicalForm) {
        (!self.code.is_empty_space(), &self.canonical)
    }
}

/// All chambers for `n` up to relabeling `{1..n-1}`, each with a verified witness.
pub fn enumerate_chambers(n: usize, dominated_only: bool) -> Result<Vec<Chamber>> {
    enumerate_chambers_capped(n, dominated_only, DEFAULT_ENUMERATION_MAX_N)
}

pub fn enumerate_chambers_capped(n: usize, dominated_only: bool, max_n: usize) -> Result<Vec<Chamber>> {
    let max = max_n.min(ENUMERATION_HARD_MAX_N);
    if !(ENUMERATION_MIN_N..=max).contains(&n) {
        return Err(Error::UnsupportedN { n, min: ENUMERATION_MIN_N, max });
    }
    let leaves = ChamberSearch::run(n, dominated_only);

    let mut chambers: Vec<Chamber> = leaves
        .into_par_iter()
        .map(|(family, point)| {
            let code = ChamberCode::from_family(n, &family)?;
            let witness = verified_witness(point, &family, dominated_only)?;
            if genetic_code(&witness)? != code {
                return Err(Error::VerificationFailed {
                    expected: code.to_string(),
                    actual: genetic_code(&witness)?.to_string(),
                });
            }
            let canonical = canonical_form(&code.complex());
            Ok(Chamber { code, witness, canonical })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut seen = HashSet::new();
    chambers.retain(|c| seen.insert((!c.code.is_empty_space(), c.canonical.clone())));
    chambers.sort_by(|a, b| {
        let size = |c: &Chamber| (!c.code.is_empty_space(), c.canonical.faces().len());
        size(a).cmp(&size(b)).then_with(|| a.canonical.cmp(&b.canonical))
    });
    Ok(chambers)
}

/// Depth-first search over families that are down-closed for the shifted
/// order (drop an element, or lower one by one). Sorting `l_1..l_{n-1}`
/// ascending puts every chamber in such a form, so this sees every chamber up
/// to relabeling. Each decision adds one strict inequality; branches whose
/// system becomes infeasible are cut, which prunes every family containing an
/// unrealizable sub-configuration.
///
/// Under the sorting constraints a short row implies the short rows of its
/// lower covers with the same margin, so only the current maxima are kept.
struct ChamberSearch {
    base: ChamberSystem,
    elements: Vec<SubsetMask>,
    lower_covers: Vec<Vec<usize>>,
    included: Vec<bool>,
    short_rows: Vec<bool>,
    long_rows: Vec<bool>,
    leaves: Vec<(Vec<SubsetMask>, Vec<Rational>)>,
}

impl ChamberSearch {
    fn run(n: usize, dominated_only: bool) -> Vec<(Vec<SubsetMask>, Vec<Rational>)> {
        let m = n - 1;
        let mut elements: Vec<SubsetMask> = SubsetMask::full(m).submasks().collect();
        elements.sort_by_key(|s| (s.len(), s.iter().sum::<usize>(), *s));
        let position: HashMap<SubsetMask, usize> =
            elements.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let lower_covers = elements
            .iter()
            .map(|&x| shifted_lower_covers(x).map(|y| position[&y]).collect())
            .collect();
        let base = ChamberSystem::new(n, dominated_only, true);
        let start = base.solve().expect("positivity alone is feasible").0;
        let count = elements.len();
        let mut search = Self {
            base,
            elements,
            lower_covers,
            included: vec![false; count],
            short_rows: vec![false; count],
            long_rows: vec![false; count],
            leaves: Vec::new(),
        };
        search.descend(0, &start);
        search.leaves
    }

    fn solve_with(&self, x: SubsetMask, long: bool) -> Option<Vec<Rational>> {
        let mut sys = ChamberSystem { n: self.base.n, rows: self.base.rows.clone(), plain: self.base.plain.clone() };
        for (i, &y) in self.elements.iter().enumerate() {
            if self.short_rows[i] {
                sys.push(y, false);
            }
            if self.long_rows[i] {
                sys.push(y, true);
            }
        }
        sys.push(x, long);
        sys.solve().map(|s| s.0)
    }

    fn descend(&mut self, e: usize, point: &[Rational]) {
        if e == self.elements.len() {
            let mut family: Vec<SubsetMask> =
                (0..e).filter(|&i| self.included[i]).map(|i| self.elements[i]).collect();
            family.sort_unstable();
            self.leaves.push((family, point.to_vec()));
            return;
        }
        if !self.lower_covers[e].iter().all(|&c| self.included[c]) {
            self.descend(e + 1, point);
            return;
        }
        let x = self.elements[e];
        for long in [false, true] {
            let row = self.base.subset_row(x, long);
            let next = if self.base.strictly_satisfies(&row, point) {
                Some(point.to_vec())
            } else {
                self.solve_with(x, long)
            };
            let Some(next) = next else { continue };
            if long {
                self.long_rows[e] = true;
                self.descend(e + 1, &next);
                self.long_rows[e] = false;
            } else {
                self.included[e] = true;
                self.short_rows[e] = true;
                let dropped: Vec<usize> =
                    self.lower_covers[e].iter().copied().filter(|&c| self.short_rows[c]).collect();
                for &c in &dropped {
                    self.short_rows[c] = false;
                }
                self.descend(e + 1, &next);
                for &c in &dropped {
                    self.short_rows[c] = true;
                }
                self.short_rows[e] = false;
                self.included[e] = false;
            }
        }
    }
}

/// Diffeomorphism verdict for two chain spaces of the same ambient dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Diffeomorphic,
    NotDiffeomorphic,
    /// Complexes differ but one vector is not dominated, where the
    /// classification does not apply.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub verdict: Verdict,
    pub certificate: IsoCertificate,
    pub betti: [BettiTable; 2],
}

/// Compares `C^n_d(l1)` and `C^m_d(l2)` through their short-subset complexes.
///
/// Isomorphic complexes give diffeomorphic spaces for any generic vectors;
/// for dominated vectors and `d >= 3` non-isomorphic complexes give
/// non-diffeomorphic spaces.
pub fn equivalent(l1: &LengthVector, l2: &LengthVector, d: i64) -> Result<Equivalence> {
    if d < 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    let betti = [betti_numbers(l1, d)?, betti_numbers(l2, d)?];
    let (e1, e2) = (!sh_contains(l1, SubsetMask::EMPTY), !sh_contains(l2, SubsetMask::EMPTY));
    let emptiness = |e: bool| if e { "empty" } else { "non-empty" };

    let (verdict, certificate) = if e1 && e2 {
        (Verdict::Diffeomorphic, IsoCertificate::Isomorphic { mapping: VertexMap::default() })
    } else if e1 != e2 {
        (
            Verdict::NotDiffeomorphic,
            IsoCertificate::distinct(Invariant::EmptySpace, emptiness(e1), emptiness(e2)),
        )
    } else if l1.n() != l2.n() {
        let (d1, d2) = (dimension(l1.n(), d)?, dimension(l2.n(), d)?);
        (Verdict::NotDiffeomorphic, IsoCertificate::distinct(Invariant::Dimension, d1, d2))
    } else {
        let cert = are_isomorphic(&short_complex(l1)?, &short_complex(l2)?);
        let verdict = if cert.is_isomorphic() {
            Verdict::Diffeomorphic
        } else if l1.is_dominated() && l2.is_dominated() {
            Verdict::NotDiffeomorphic
        } else {
            Verdict::Undecided
        };
        (verdict, cert)
    };
    Ok(Equivalence { verdict, certificate, betti })
}
