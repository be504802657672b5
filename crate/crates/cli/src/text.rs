//! Plain-text renderings of reports.

use std::fmt::Write as _;

use rees_core::report::{CampaignReport, Regime, Status, VerificationReport};

pub fn lines(items: &[String]) -> String {
    items.iter().map(|l| format!("{l}\n")).collect()
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::RejectedInstance => "rejected-instance",
        Status::BudgetExceeded => "budget-exceeded",
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::DeterminantalGenerators => "determinantal-generators",
        Regime::Asymptotic => "asymptotic",
        Regime::Exploratory => "exploratory",
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "FALSE",
        None => "-",
    }
}

pub fn verification(r: &VerificationReport) -> String {
    let mut s = String::new();
    let i = &r.instance;
    let _ = writeln!(s, "instance: s={} over {} {}", i.s, i.field, i.points.join(" "));
    let _ = writeln!(s, "t={} d0={} regime={}", r.t, r.d0, regime_name(r.regime));
    let _ = writeln!(s, "hf={:?} alpha={} sigma={}", r.hilbert.hf, r.hilbert.alpha, r.hilbert.sigma);
    if let Some(c) = &r.case {
        let _ = writeln!(
            s,
            "case {} (d={}, k={}, rho={}), presentation {}x{}",
            c.tag, c.d, c.k, c.rho, c.presentation.rows, c.presentation.cols
        );
    }
    if let Some(counts) = &r.generator_counts {
        let parts: Vec<String> = counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "generators: {}", parts.join(" "));
    }
    if let Some(rees) = &r.rees {
        let parts: Vec<String> =
            rees.minimal_generator_bidegrees.iter().map(|b| format!("({},{})x{}", b.bidegree.0, b.bidegree.1, b.count)).collect();
        let _ = writeln!(s, "rees ideal: {} variables, minimal generators {}", rees.variables, parts.join(" "));
        let p = &rees.perfection;
        let _ = writeln!(s, "codim {} pd {} perfect {}", p.codim, p.projective_dimension, p.perfect);
    }
    if let Some(v) = &r.verdicts {
        let items = [
            ("equal", v.equal),
            ("perfect", v.perfect),
            ("betti_match", v.betti_match),
            ("quadratic_generation", v.quadratic_generation),
            ("containment", v.containment),
            ("elimination_sound", v.elimination_sound),
            ("linear_slice", v.linear_slice),
            ("linear_relation_count", v.linear_relation_count),
            ("sigma", v.sigma),
            ("hilbert_burch", v.hilbert_burch),
        ];
        for (name, value) in items.iter().filter(|(_, v)| v.is_some()) {
            let _ = writeln!(s, "  {name}: {}", flag(*value));
        }
    }
    let o = &r.observations;
    for (name, value) in
        [("splitting_independent", o.splitting_independent), ("linear_forms_in_j", o.linear_forms_in_j), ("containment", o.containment)]
    {
        if value.is_some() {
            let _ = writeln!(s, "  observed {name}: {}", flag(value));
        }
    }
    if let Some(b) = &r.betti {
        let _ = write!(s, "betti (rees, linear forms split off):\n{}", b.rees_grid);
        let _ = write!(s, "betti (generic minors):\n{}", b.generic_grid);
    }
    if let Some(t) = &r.timings_ms {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k}={v}ms")).collect();
        let _ = writeln!(s, "timings: {}", parts.join(" "));
    }
    let _ = writeln!(s, "status: {}", status_name(r.status));
    if let Some(reason) = &r.reason {
        let _ = writeln!(s, "reason: {reason}");
    }
    s
}

pub fn campaign(c: &CampaignReport) -> String {
    let mut s = String::new();
    for r in &c.reports {
        let seed = match &r.instance.provenance {
            rees_core::points::Provenance::Random { seed, .. } => format!("seed {seed}"),
            rees_core::points::Provenance::Explicit { name } => name.clone().unwrap_or_else(|| "file".into()),
        };
        let outcome = match r.status {
            Status::Ok if r.passed() => "pass".to_string(),
            Status::Ok => format!("FAIL {}", r.failures().join(",")),
            other => status_name(other).to_string(),
        };
        let _ = writeln!(s, "s={} t={} {seed}: {outcome}", r.instance.s, r.t);
    }
    for e in &c.errors {
        let _ = writeln!(s, "s={:?} t={} seed={:?} points={:?}: error: {}", e.s, e.t, e.seed, e.points, e.message);
    }
    let m = &c.summary;
    let _ = writeln!(
        s,
        "total {} passed {} failed {} rejected {} budget-exceeded {} errors {}",
        m.total, m.passed, m.failed, m.rejected, m.budget_exceeded, m.errors
    );
    s
}
