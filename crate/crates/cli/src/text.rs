//! Plain-text rendering in the `⟨…⟩` notation.

use std::fmt::Write;

use chains_core::BettiTable;

use crate::{
    verdict_name, AnalysisReport, CompareReport, ComplexReport, EnumerationReport, InventoryReport,
    RealizationReport,
};

fn tuple<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn set(xs: &[usize]) -> String {
    format!("{{{}}}", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn sets(xss: &[Vec<usize>]) -> String {
    if xss.is_empty() {
        return "none".into();
    }
    xss.iter().map(|x| set(x)).collect::<Vec<_>>().join(" ")
}

fn complex_line(c: &ComplexReport) -> String {
    format!(
        "{} vertices, {} edges, f-vector {}, {} component{}",
        c.vertices.len(),
        c.edges(),
        tuple(&c.f_vector),
        c.components,
        if c.components == 1 { "" } else { "s" }
    )
}

fn betti_line(t: &BettiTable) -> String {
    match &t.ranks {
        Some(r) => format!("d = {}: dim {}, Betti {}", t.d, t.dim, tuple(r)),
        None => format!("d = {}: dim {}, Betti withheld (not dominated)", t.d, t.dim),
    }
}

fn inventory(inv: &InventoryReport) -> String {
    let counts: Vec<String> = inv.index_counts.iter().map(|(i, c)| format!("{i}:{c}")).collect();
    format!("{} critical points, by index {}", inv.total, counts.join(" "))
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "l = {}", r.input.join(","));
    if r.normalized != r.input {
        let _ = writeln!(s, "normalized l = {} (from positions {})", r.normalized.join(","), tuple(&r.permutation));
    }
    let _ = writeln!(
        s,
        "n = {}, generic, {}",
        r.n,
        if r.dominated { "dominated" } else { "not dominated" }
    );
    let _ = writeln!(s, "chamber {}", r.genetic_code);
    if r.empty_space {
        let _ = writeln!(s, "{{n}} is long: the chain space is empty");
    }
    let _ = writeln!(s, "short complex: {}", complex_line(&r.short_complex));
    let _ = writeln!(s, "  facets {}", sets(&r.short_complex.facets));
    let _ = writeln!(s, "a-vector {}", tuple(&r.a_vector));
    for m in &r.morse {
        let _ = writeln!(s, "Morse, d = {}:", m.d);
        let _ = writeln!(s, "  g  on V:  {}", inventory(&m.g));
        let _ = writeln!(s, "  f' on Z': {}", inventory(&m.f_prime));
    }
    if let Some(betti) = &r.betti {
        for t in betti {
            let _ = writeln!(s, "{}", betti_line(t));
        }
    }
    if let Some(rings) = &r.ring {
        for ring in rings {
            let _ = writeln!(
                s,
                "ring, d = {}: graded dims {} in degrees multiple of {}, {} generators, relations {}, {} products",
                ring.d,
                tuple(&ring.graded_dims),
                ring.grade_unit,
                ring.generators.len(),
                sets(&ring.relations),
                ring.product_table_size
            );
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

pub fn comparison(r: &CompareReport) -> String {
    let mut s = String::new();
    for (name, side) in [("left ", &r.left), ("right", &r.right)] {
        let _ = writeln!(
            s,
            "{name} l = {}: chamber {}, {}",
            side.input.join(","),
            side.genetic_code,
            complex_line(&side.short_complex)
        );
    }
    for res in &r.results {
        let _ = writeln!(s, "d = {}: {} ({})", res.d, verdict_name(res.verdict), res.certificate);
        let c = &res.consistency;
        let betti = match c.betti_equal {
            Some(true) => "equal",
            Some(false) => "different",
            None => "withheld",
        };
        let _ = writeln!(
            s,
            "  complexes isomorphic: {}, rings isomorphic: {}, canonical forms equal: {}, Betti tables {betti}",
            c.complex_isomorphic, c.ring_isomorphic, c.canonical_forms_equal
        );
        for t in &res.betti {
            let _ = writeln!(s, "  {}", betti_line(t));
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

pub fn enumeration(r: &EnumerationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} chambers for n = {}{}",
        r.count,
        r.n,
        if r.dominated_only { " (dominated)" } else { "" }
    );
    for c in &r.chambers {
        let _ = writeln!(
            s,
            "{:<24} l = {:<28} f-vector {:<12} components {}",
            c.genetic_code,
            c.integral_witness.join(","),
            tuple(&c.f_vector),
            c.components
        );
    }
    s
}

pub fn realization(r: &RealizationReport) -> String {
    let mut s = String::new();
    let target = if r.target_empty_space { "empty chain space".to_string() } else { sets(&r.target_facets) };
    let _ = writeln!(s, "target for n = {}: {target}", r.n);
    if r.feasible {
        let _ = writeln!(s, "feasible: chamber {}", r.genetic_code.as_deref().unwrap_or(""));
        let _ = writeln!(s, "witness {}", r.witness.as_ref().map(|w| w.join(",")).unwrap_or_default());
        let _ = writeln!(
            s,
            "integral witness {}",
            r.integral_witness.as_ref().map(|w| w.join(",")).unwrap_or_default()
        );
        let _ = writeln!(s, "slack {}", r.slack.as_deref().unwrap_or(""));
    } else {
        let _ = writeln!(
            s,
            "infeasible: no generic{} length vector has this complex",
            if r.require_dominated { " dominated" } else { "" }
        );
    }
    s
}
