//! Versioned, deterministic report documents.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::points::{GenericityReport, PointSet, Provenance};
use crate::resolution::{BettiTable, Perfection, PresentationSummary};

pub const SCHEMA_VERSION: u32 = 1;

/// Echo of the command line that produced a report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub s: Option<usize>,
    pub d: Option<usize>,
    pub k: Option<usize>,
    pub t: Option<u32>,
    pub field: String,
    pub seed: Option<u64>,
    pub points: Option<String>,
    pub order: String,
    pub budget: Option<String>,
    pub format: String,
    pub output: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    RejectedInstance,
    BudgetExceeded,
}

/// Which statement a run checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `t = d + 1`: explicit determinantal generators.
    DeterminantalGenerators,
    /// `t >= max(4, s + 1)`: perfection and generation in total degree 2.
    Asymptotic,
    /// Any other `t`: the Rees ideal is computed and described, nothing is claimed.
    Exploratory,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub s: usize,
    pub field: String,
    pub points: Vec<String>,
    pub provenance: Provenance,
}

impl From<&PointSet> for InstanceSummary {
    fn from(x: &PointSet) -> Self {
        InstanceSummary {
            s: x.len(),
            field: x.field().to_string(),
            points: x.point_strings(),
            provenance: x.provenance().clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSummary {
    pub hf: Vec<usize>,
    pub alpha: u32,
    pub sigma: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSummary {
    pub tag: String,
    pub d: usize,
    pub k: usize,
    pub rho: usize,
    pub presentation: PresentationSummary,
    pub f: Vec<String>,
    pub g: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BidegreeCount {
    pub bidegree: (u32, u32),
    pub count: usize,
}

/// The Rees ideal computed by elimination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesSummary {
    pub variables: usize,
    pub groebner_basis_size: usize,
    pub perfection: Perfection,
    pub minimal_generator_bidegrees: Vec<BidegreeCount>,
    pub max_total_generator_degree: u32,
}

/// Claimed properties; `None` when a property is not claimed in the regime.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub equal: Option<bool>,
    pub perfect: Option<bool>,
    pub betti_match: Option<bool>,
    pub quadratic_generation: Option<bool>,
    pub containment: Option<bool>,
    pub elimination_sound: Option<bool>,
    pub linear_slice: Option<bool>,
    pub linear_relation_count: Option<bool>,
    pub sigma: Option<bool>,
    pub hilbert_burch: Option<bool>,
}

impl Verdicts {
    fn named(&self) -> [(&'static str, Option<bool>); 10] {
        [
            ("equal", self.equal),
            ("perfect", self.perfect),
            ("betti_match", self.betti_match),
            ("quadratic_generation", self.quadratic_generation),
            ("containment", self.containment),
            ("elimination_sound", self.elimination_sound),
            ("linear_slice", self.linear_slice),
            ("linear_relation_count", self.linear_relation_count),
            ("sigma", self.sigma),
            ("hilbert_burch", self.hilbert_burch),
        ]
    }

    /// Names of the claimed properties that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        self.named().into_iter().filter(|(_, v)| *v == Some(false)).map(|(n, _)| n).collect()
    }

    pub fn all_true(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Properties that are checked and reported but not part of any claim.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Observations {
    /// J built with the upper-triangular splitting equals J with the symmetric one.
    pub splitting_independent: Option<bool>,
    /// The linear relations already lie in J.
    pub linear_forms_in_j: Option<bool>,
    /// Theorem generators vanish on the graph, for rejected instances.
    pub containment: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiComparison {
    pub rees_without_linear_forms: BettiTable,
    pub generic_minors: BettiTable,
    pub rees_grid: String,
    pub generic_grid: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config: Option<RunConfig>,
    pub instance: InstanceSummary,
    pub t: u32,
    pub d0: u32,
    pub regime: Regime,
    pub hilbert: HilbertSummary,
    pub genericity: GenericityReport,
    pub case: Option<CaseSummary>,
    pub generator_counts: Option<BTreeMap<String, usize>>,
    pub rees: Option<ReesSummary>,
    pub verdicts: Option<Verdicts>,
    pub observations: Observations,
    pub betti: Option<BettiComparison>,
    pub status: Status,
    pub reason: Option<String>,
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl VerificationReport {
    /// True when the run finished and every claimed verdict holds.
    pub fn passed(&self) -> bool {
        self.status == Status::Ok && self.verdicts.as_ref().is_some_and(Verdicts::all_true)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.verdicts.as_ref().map(Verdicts::failures).unwrap_or_default()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub rejected: usize,
    pub budget_exceeded: usize,
    /// Entries that could not be run at all, such as `t` below the initial degree.
    pub errors: usize,
}

/// A campaign entry that produced no report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignError {
    pub s: Option<usize>,
    pub t: u32,
    pub seed: Option<u64>,
    pub points: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub config: Option<RunConfig>,
    pub summary: CampaignSummary,
    pub reports: Vec<VerificationReport>,
    pub errors: Vec<CampaignError>,
}

impl CampaignReport {
    pub fn new(config: Option<RunConfig>, reports: Vec<VerificationReport>, errors: Vec<CampaignError>) -> Self {
        let mut summary =
            CampaignSummary { total: reports.len() + errors.len(), errors: errors.len(), ..Default::default() };
        for r in &reports {
            match r.status {
                Status::Ok if r.passed() => summary.passed += 1,
                Status::Ok => summary.failed += 1,
                Status::RejectedInstance => summary.rejected += 1,
                Status::BudgetExceeded => summary.budget_exceeded += 1,
            }
        }
        CampaignReport { schema_version: SCHEMA_VERSION, config, summary, reports, errors }
    }
}

/// Pretty JSON with a trailing newline; key order is fixed by the types.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
