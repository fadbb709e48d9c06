//! Report builders behind the `chains` binary. Every report is a plain
//! serde structure, so JSON output is deterministic.

pub mod selftest;
pub mod text;

use std::collections::BTreeMap;

use chains_core::{
    a_vector, are_isomorphic, betti_numbers, canonical_form, dimension, enumerate_chambers_capped,
    equivalent, genetic_code, morse_inventory, realize, ring_presentation, rings_isomorphic,
    short_complex, BettiTable, Error, GradedRing, IsoCertificate, LengthVector, MorseFunction,
    MorseInventory, RealizationProblem, Result, SimplicialComplex, SubsetMask, Verdict,
};
use serde::Serialize;

/// Critical points are listed individually only up to this `n`.
pub const MORSE_LIST_MAX_N: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub vertices: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
    pub f_vector: Vec<u64>,
    pub components: usize,
    pub component_vertices: Vec<Vec<usize>>,
    pub minimal_non_faces: Vec<Vec<usize>>,
}

impl ComplexReport {
    pub fn new(c: &SimplicialComplex) -> Self {
        Self {
            vertices: c.vertices().to_vec(),
            facets: c.facet_lists(),
            f_vector: c.f_vector(),
            components: c.connected_components(),
            component_vertices: c.components().iter().map(|m| m.to_vec()).collect(),
            minimal_non_faces: c.minimal_non_faces().iter().map(|m| m.to_vec()).collect(),
        }
    }

    pub fn edges(&self) -> u64 {
        self.f_vector.get(1).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub subset: Vec<usize>,
    pub index: usize,
    /// `+`/`-` per segment: the direction of `ρ_J(i)` along `e_1`.
    pub signs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InventoryReport {
    pub total: u64,
    pub index_counts: BTreeMap<usize, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical_points: Option<Vec<PointReport>>,
}

impl InventoryReport {
    fn new(inv: &MorseInventory) -> Self {
        let critical_points = (inv.n <= MORSE_LIST_MAX_N).then(|| {
            inv.critical_points
                .iter()
                .map(|p| PointReport { subset: p.subset.to_vec(), index: p.index, signs: p.sign_pattern(inv.n) })
                .collect()
        });
        Self { total: inv.critical_points.len() as u64, index_counts: inv.index_counts(), critical_points }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MorseReport {
    pub d: i64,
    pub g: InventoryReport,
    pub f_prime: InventoryReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingReport {
    pub d: i64,
    pub grade_unit: usize,
    pub rank: usize,
    pub graded_dims: Vec<u64>,
    pub generators: Vec<usize>,
    /// Square-free monomial relations besides `X_i^2 = 0`.
    pub relations: Vec<Vec<usize>>,
    pub product_table_size: u64,
}

impl RingReport {
    fn new(d: i64, ring: &GradedRing, complex: &SimplicialComplex) -> Self {
        Self {
            d,
            grade_unit: ring.grade_unit(),
            rank: ring.rank(),
            graded_dims: ring.graded_dims(),
            generators: ring.generators().iter().filter_map(|g| SubsetMask::max(*g)).collect(),
            relations: complex.minimal_non_faces().iter().map(|m| m.to_vec()).collect(),
            product_table_size: ring.product_table_len(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionEntry {
    pub d: i64,
    pub dim: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: Vec<String>,
    /// `l_1..l_{n-1}` sorted ascending; all labels below refer to this vector.
    pub normalized: Vec<String>,
    /// `permutation[k]` is the input position of normalized entry `k + 1`.
    pub permutation: Vec<usize>,
    pub n: usize,
    pub generic: bool,
    pub dominated: bool,
    pub empty_space: bool,
    pub genetic_code: String,
    pub genes: Vec<Vec<usize>>,
    pub short_complex: ComplexReport,
    pub a_vector: Vec<u64>,
    pub dimensions: Vec<DimensionEntry>,
    pub morse: Vec<MorseReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<BettiTable>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<Vec<RingReport>>,
    pub warnings: Vec<String>,
}

/// Emitted instead of a report when the input is not generic.
#[derive(Clone, Debug, Serialize)]
pub struct DegenerateReport {
    pub error: String,
    pub input: Vec<String>,
    pub degenerate_subsets: Vec<Vec<usize>>,
}

pub enum Analysis {
    Report(Box<AnalysisReport>),
    Degenerate(DegenerateReport),
}

fn check_dims(ds: &[i64]) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for &d in ds {
        if d < 3 {
            return Err(Error::UnsupportedDimension(d));
        }
        if !out.contains(&d) {
            out.push(d);
        }
    }
    Ok(out)
}

pub fn analyze(input: &LengthVector, ds: &[i64]) -> Result<Analysis> {
    let ds = check_dims(ds)?;
    if !input.is_generic() {
        let mut degenerate = input.degenerate_subsets();
        degenerate.sort_by_key(|m| (m.len(), m.to_vec()));
        let first = degenerate.first().map(|m| m.to_string()).unwrap_or_default();
        return Ok(Analysis::Degenerate(DegenerateReport {
            error: format!("length vector is not generic: {first} balances its complement"),
            input: input.to_strings(),
            degenerate_subsets: degenerate.iter().map(|m| m.to_vec()).collect(),
        }));
    }
    let (l, permutation) = input.normalize_with_permutation();
    let n = l.n();
    let code = genetic_code(&l)?;
    let complex = short_complex(&l)?;
    let dominated = l.is_dominated();

    let mut warnings = Vec::new();
    if !dominated {
        warnings.push(format!(
            "not dominated: l_{n} is not a maximal entry, so Betti numbers and the cohomology ring are not given by the short-subset formulas and are withheld"
        ));
    }
    if permutation.iter().enumerate().any(|(k, &p)| p != k + 1) {
        warnings.push("entries l_1..l_{n-1} were sorted; labels refer to the normalized vector".into());
    }
    if n > MORSE_LIST_MAX_N {
        warnings.push(format!("critical points are listed only for n <= {MORSE_LIST_MAX_N}"));
    }

    let mut morse = Vec::new();
    let mut dimensions = Vec::new();
    for &d in &ds {
        dimensions.push(DimensionEntry { d, dim: dimension(n, d)? });
        morse.push(MorseReport {
            d,
            g: InventoryReport::new(&morse_inventory(&l, d, MorseFunction::GOnV)?),
            f_prime: InventoryReport::new(&morse_inventory(&l, d, MorseFunction::FPrimeOnZPrime)?),
        });
    }
    let (betti, ring) = if dominated {
        let betti = ds.iter().map(|&d| betti_numbers(&l, d)).collect::<Result<Vec<_>>>()?;
        let ring = ds
            .iter()
            .map(|&d| Ok(RingReport::new(d, &ring_presentation(&l, d)?, &complex)))
            .collect::<Result<Vec<_>>>()?;
        (Some(betti), Some(ring))
    } else {
        (None, None)
    };

    Ok(Analysis::Report(Box::new(AnalysisReport {
        input: input.to_strings(),
        normalized: l.to_strings(),
        permutation,
        n,
        generic: true,
        dominated,
        empty_space: code.is_empty_space(),
        genetic_code: code.to_string(),
        genes: code.gene_arrays(),
        short_complex: ComplexReport::new(&complex),
        a_vector: a_vector(&l)?,
        dimensions,
        morse,
        betti,
        ring,
        warnings,
    })))
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareSide {
    pub input: Vec<String>,
    pub n: usize,
    pub dominated: bool,
    pub genetic_code: String,
    pub a_vector: Vec<u64>,
    pub short_complex: ComplexReport,
}

/// Complex isomorphism, ring isomorphism, canonical-form equality and Betti
/// equality on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct Consistency {
    pub complex_isomorphic: bool,
    pub ring_isomorphic: bool,
    pub canonical_forms_equal: bool,
    pub betti_equal: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareResult {
    pub d: i64,
    pub verdict: Verdict,
    pub certificate: IsoCertificate,
    pub consistency: Consistency,
    pub betti: [BettiTable; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub left: CompareSide,
    pub right: CompareSide,
    pub results: Vec<CompareResult>,
    pub warnings: Vec<String>,
}

fn side(l: &LengthVector) -> Result<CompareSide> {
    Ok(CompareSide {
        input: l.to_strings(),
        n: l.n(),
        dominated: l.is_dominated(),
        genetic_code: genetic_code(l)?.to_string(),
        a_vector: a_vector(l)?,
        short_complex: ComplexReport::new(&short_complex(l)?),
    })
}

pub fn compare(l1: &LengthVector, l2: &LengthVector, ds: &[i64]) -> Result<CompareReport> {
    let ds = check_dims(ds)?;
    l1.require_generic()?;
    l2.require_generic()?;
    let (c1, c2) = (short_complex(l1)?, short_complex(l2)?);
    let complex_isomorphic = are_isomorphic(&c1, &c2).is_isomorphic();
    let canonical_forms_equal = canonical_form(&c1) == canonical_form(&c2);
    let mut results = Vec::new();
    for d in ds {
        let eq = equivalent(l1, l2, d)?;
        let unit = (d - 1) as usize;
        let (r1, r2) = (GradedRing::from_complex(&c1, unit), GradedRing::from_complex(&c2, unit));
        let ring_isomorphic = rings_isomorphic(&r1, &r2, &c1, &c2)?.is_isomorphic();
        let betti_equal = match (&eq.betti[0].ranks, &eq.betti[1].ranks) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        };
        results.push(CompareResult {
            d,
            verdict: eq.verdict,
            certificate: eq.certificate,
            consistency: Consistency { complex_isomorphic, ring_isomorphic, canonical_forms_equal, betti_equal },
            betti: eq.betti,
        });
    }
    let mut warnings = Vec::new();
    if !(l1.is_dominated() && l2.is_dominated()) {
        warnings.push(
            "a vector is not dominated: non-isomorphic complexes do not decide the question and Betti tables are withheld"
                .into(),
        );
    }
    Ok(CompareReport { left: side(l1)?, right: side(l2)?, results, warnings })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberReport {
    pub genetic_code: String,
    pub genes: Vec<Vec<usize>>,
    pub empty_space: bool,
    pub witness: Vec<String>,
    pub integral_witness: Vec<String>,
    pub facets: Vec<Vec<usize>>,
    pub f_vector: Vec<u64>,
    pub components: usize,
    pub a_vector: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub dominated_only: bool,
    pub count: usize,
    pub chambers: Vec<ChamberReport>,
}

pub fn enumerate(n: usize, dominated_only: bool, max_n: usize) -> Result<EnumerationReport> {
    let chambers = enumerate_chambers_capped(n, dominated_only, max_n)?;
    let chambers = chambers
        .iter()
        .map(|c| {
            let complex = c.code.complex();
            Ok(ChamberReport {
                genetic_code: c.code.to_string(),
                genes: c.code.gene_arrays(),
                empty_space: c.code.is_empty_space(),
                witness: c.witness.to_strings(),
                integral_witness: c.witness.integral().iter().map(|x| x.to_string()).collect(),
                facets: complex.facet_lists(),
                f_vector: complex.f_vector(),
                components: complex.connected_components(),
                a_vector: a_vector(&c.witness)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnumerationReport { n, dominated_only, count: chambers.len(), chambers })
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub n: usize,
    pub require_dominated: bool,
    pub target_facets: Vec<Vec<usize>>,
    pub target_empty_space: bool,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genetic_code: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral_witness: Option<Vec<String>>,
    /// Margin by which every defining inequality holds at the witness, with
    /// entries summing to 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<String>,
}

pub fn realize_target(problem: &RealizationProblem) -> Result<RealizationReport> {
    let result = realize(problem)?;
    let targets: Vec<SubsetMask> = chains_core::maximal_elements(problem.family());
    Ok(RealizationReport {
        n: problem.n(),
        require_dominated: problem.require_dominated,
        target_facets: targets.iter().filter(|m| !m.is_empty()).map(|m| m.to_vec()).collect(),
        target_empty_space: problem.is_empty_space(),
        feasible: result.feasible,
        genetic_code: result.code.map(|c| c.to_string()),
        integral_witness: result.witness.as_ref().map(|w| w.integral().iter().map(|x| x.to_string()).collect()),
        witness: result.witness.map(|w| w.to_strings()),
        slack: result.slack.map(|s| s.to_string()),
    })
}

/// Parses `1,1,2` or a JSON array of strings such as `["1/4","1","2"]`.
pub fn parse_lengths(s: &str, max_n: usize) -> Result<LengthVector> {
    if s.trim_start().starts_with('[') {
        LengthVector::from_json(s, max_n)
    } else {
        LengthVector::parse_list(s, max_n)
    }
}

/// Parses facets as JSON (`[[1,2],[1,3]]`) or as `1,2;1,3`.
pub fn parse_facets(s: &str) -> Result<SimplicialComplex> {
    let t = s.trim();
    let lists: Vec<Vec<usize>> = if t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| Error::Parse(format!("facets: {e}")))?
    } else if t.is_empty() {
        Vec::new()
    } else {
        t.split(';')
            .map(|f| {
                f.split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("facet entry {x:?}"))))
                    .collect()
            })
            .collect::<Result<_>>()?
    };
    SimplicialComplex::from_facet_lists(&lists)
}

/// Machine-readable error document.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub error: String,
}

pub fn error_report(e: &Error) -> ErrorReport {
    ErrorReport { error: e.to_string() }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Diffeomorphic => "diffeomorphic",
        Verdict::NotDiffeomorphic => "not diffeomorphic",
        Verdict::Undecided => "undecided (not dominated)",
    }
}
