//! Rees ideals by elimination and the end-to-end comparison with the
//! predicted generator sets.

use std::collections::BTreeMap;
use std::time::Instant;

use super::case::{CaseData, CaseTag};
use super::matrices::{linear_relations, theorem_generators, LabeledGenerators};
use super::tensors::{coefficient_tensors, Splitting};
use crate::arith::{rank_of_rows, SparseRow};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, kernel_of_map, Ideal};
use crate::points::{genericity_report, graded_piece, hilbert_data, split_s, PointSet};
use crate::poly::{MonomialOrder, Polynomial, Ring, VarKind};
use crate::report::{
    BettiComparison, BidegreeCount, CaseSummary, HilbertSummary, InstanceSummary, Observations, ReesSummary, Regime,
    Status, Verdicts, VerificationReport, SCHEMA_VERSION,
};
use crate::resolution::{
    betti_table, generic_minors_ideal, hilbert_burch_check, minimal_generators, perfection, split_linear_forms,
    PresentationSummary,
};

/// `max(4, s + 1)`, the degree from which the asymptotic statements apply.
pub fn d0(s: usize) -> u32 {
    4.max(s as u32 + 1)
}

fn source_vars(ring: &Ring) -> Vec<usize> {
    (0..ring.nvars()).filter(|&v| matches!(ring.kind(v), VarKind::X | VarKind::Y)).collect()
}

/// Rees ideal of `I_t` in `k[w1..w3, x0..xN]`, with `x_i` mapped to the
/// `i`-th basis element of the degree-`t` piece.
pub fn rees_via_elimination(x: &PointSet, t: u32, budget: &Budget) -> Result<Ideal> {
    let basis = graded_piece(x, t).basis;
    if basis.is_empty() {
        return Err(Error::Invalid(format!("the degree-{t} piece of the ideal is zero")));
    }
    let ring = Ring::rees_flat(x.field(), basis.len(), false);
    kernel_of_map(&basis, &ring, &source_vars(&ring), budget)
}

/// Rees ideal of `I_{d+1}` in the case coordinates `x_ij -> w_i F_j`, `y_l -> G_l`.
pub fn rees_via_elimination_case(case: &CaseData, budget: &Budget) -> Result<Ideal> {
    let ring = case.rees_ring(false);
    kernel_of_map(&case.degree_d1_generators(), &ring, &source_vars(&ring), budget)
}

/// Minimal bihomogeneous generators as `(bidegree, generator)`, sorted by bidegree.
pub fn bigraded_minimal_generators(ideal: &Ideal, budget: &Budget) -> Result<Vec<((u32, u32), Polynomial)>> {
    let mut out = Vec::new();
    for (_, g) in minimal_generators(ideal, None, budget)? {
        out.push((g.bidegree()?, g));
    }
    out.sort_by_key(|(b, _)| (b.0 + b.1, b.1));
    Ok(out)
}

fn bidegree_counts(gens: &[((u32, u32), Polynomial)]) -> Vec<BidegreeCount> {
    let mut m: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for (b, _) in gens {
        *m.entry(*b).or_default() += 1;
    }
    m.into_iter().map(|(bidegree, count)| BidegreeCount { bidegree, count }).collect()
}

/// Whether every polynomial vanishes under the given substitution.
fn all_vanish(polys: &[Polynomial], images: &[Polynomial]) -> Result<bool> {
    for p in polys {
        if !p.substitute(images)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `w_i -> w_i`, `x_m -> m`-th target, for a flat Rees ring.
fn flat_images(x: &PointSet, targets: &[Polynomial]) -> Vec<Polynomial> {
    let plane = Ring::plane(x.field());
    (0..3).map(|i| Polynomial::var(&plane, i)).chain(targets.iter().map(|f| f.change_field(&plane).expect("same field"))).collect()
}

fn linear_span_rank(ring: &Ring, forms: &[Polynomial]) -> usize {
    let rows = forms.iter().map(|f| {
        let mut row: SparseRow =
            f.terms().iter().map(|(m, v)| (m.exps().iter().position(|&e| e > 0).expect("linear"), v.clone())).collect();
        row.sort_by_key(|e| e.0);
        row
    });
    rank_of_rows(ring.field(), ring.nvars(), rows)
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Compare the Betti table with generic 2x2 minors (binomial case).
    pub compare_betti: bool,
    /// Also build J with the upper-triangular splitting and compare.
    pub check_splitting: bool,
    pub splitting: Splitting,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { compare_betti: true, check_splitting: true, splitting: Splitting::Symmetric, timings: false }
    }
}

struct Timer {
    laps: Option<BTreeMap<String, u64>>,
    last: Instant,
}

impl Timer {
    fn new(on: bool) -> Self {
        Timer { laps: on.then(BTreeMap::new), last: Instant::now() }
    }

    fn lap(&mut self, name: &str) {
        if let Some(l) = &mut self.laps {
            l.insert(name.to_string(), self.last.elapsed().as_millis() as u64);
        }
        self.last = Instant::now();
    }
}

/// Runs every check that applies to `(x, t)` and records the outcome.
///
/// Budget exhaustion and rejected instances become report statuses; only
/// invalid input (such as `t` below the initial degree) is an error.
pub fn verify_theorem(x: &PointSet, t: u32, opts: &VerifyOptions, budget: &Budget) -> Result<VerificationReport> {
    let s = x.len();
    let (d, _) = split_s(s);
    let hd = hilbert_data(x);
    if t < hd.alpha {
        return Err(Error::Invalid(format!("t = {t} is below the initial degree {}", hd.alpha)));
    }
    let d0 = d0(s);
    let regime = if t as usize == d + 1 {
        Regime::DeterminantalGenerators
    } else if t >= d0 {
        Regime::Asymptotic
    } else {
        Regime::Exploratory
    };
    let mut report = VerificationReport {
        schema_version: SCHEMA_VERSION,
        config: None,
        instance: InstanceSummary::from(x),
        t,
        d0,
        regime,
        hilbert: HilbertSummary { hf: hd.hf.clone(), alpha: hd.alpha, sigma: hd.sigma },
        genericity: genericity_report(x),
        case: None,
        generator_counts: None,
        rees: None,
        verdicts: None,
        observations: Observations::default(),
        betti: None,
        status: Status::Ok,
        reason: None,
        timings_ms: None,
    };
    let mut timer = Timer::new(opts.timings);
    let outcome = match regime {
        Regime::DeterminantalGenerators => run_determinantal(x, opts, budget, &mut report, &mut timer),
        _ => run_flat(x, t, budget, &mut report, &mut timer),
    };
    match outcome {
        Ok(verdicts) => report.verdicts = Some(verdicts),
        Err(Error::BudgetExceeded { steps }) => {
            report.status = Status::BudgetExceeded;
            report.reason = Some(format!("budget exhausted after {steps} steps"));
        }
        Err(Error::Degenerate(msg)) => {
            report.status = Status::RejectedInstance;
            report.reason = Some(msg);
        }
        Err(e) => return Err(e),
    }
    report.timings_ms = timer.laps;
    Ok(report)
}

fn summarize_rees(elim: &Ideal, budget: &Budget, timer: &mut Timer) -> Result<ReesSummary> {
    let gb = elim.groebner_basis(&MonomialOrder::GrevLex, budget)?;
    let perf = perfection(elim, budget)?;
    timer.lap("perfection");
    let mins = bigraded_minimal_generators(elim, budget)?;
    timer.lap("minimal_generators");
    Ok(ReesSummary {
        variables: elim.ring().nvars(),
        groebner_basis_size: gb.len(),
        perfection: perf,
        max_total_generator_degree: mins.iter().map(|(b, _)| b.0 + b.1).max().unwrap_or(0),
        minimal_generator_bidegrees: bidegree_counts(&mins),
    })
}

fn run_flat(x: &PointSet, t: u32, budget: &Budget, report: &mut VerificationReport, timer: &mut Timer) -> Result<Verdicts> {
    let basis = graded_piece(x, t).basis;
    let elim = rees_via_elimination(x, t, budget)?;
    timer.lap("elimination");
    let sound = all_vanish(elim.gens(), &flat_images(x, &basis))?;
    let rees = summarize_rees(&elim, budget, timer)?;
    let mut v = Verdicts { elimination_sound: Some(sound), ..Default::default() };
    if report.regime == Regime::Asymptotic {
        v.perfect = Some(rees.perfection.perfect);
        v.quadratic_generation = Some(rees.max_total_generator_degree <= 2);
    }
    report.rees = Some(rees);
    Ok(v)
}

fn in_general_position(report: &VerificationReport, d: usize) -> std::result::Result<(), String> {
    let g = &report.genericity;
    if !g.generic_hf {
        return Err("the Hilbert function of the points is not generic".into());
    }
    if g.max_collinear > d.max(2) {
        return Err(format!("{} of the points are collinear", g.max_collinear));
    }
    Ok(())
}

fn run_determinantal(
    x: &PointSet,
    opts: &VerifyOptions,
    budget: &Budget,
    report: &mut VerificationReport,
    timer: &mut Timer,
) -> Result<Verdicts> {
    let case = CaseData::from_points(x, budget)?;
    timer.lap("presentation");
    report.case = Some(CaseSummary {
        tag: case.tag.name().to_string(),
        d: case.d,
        k: case.k,
        rho: case.rho(),
        presentation: PresentationSummary::from(&case.l),
        f: case.f.iter().map(ToString::to_string).collect(),
        g: case.g.iter().map(ToString::to_string).collect(),
    });
    let tensors = coefficient_tensors(&case.l, opts.splitting)?;
    let predicted = theorem_generators(&case, &tensors);
    if let Err(reason) = in_general_position(report, case.d) {
        if let Ok(p) = &predicted {
            report.observations.containment = Some(all_vanish(&p.polys(), &case.graph_images())?);
        }
        return Err(Error::Degenerate(reason));
    }
    let predicted = predicted?;
    timer.lap("theorem_generators");
    report.generator_counts = Some(predicted.counts());

    let mut v = Verdicts {
        containment: Some(all_vanish(&predicted.polys(), &case.graph_images())?),
        hilbert_burch: Some(hilbert_burch_check(&case.points_ideal, &case.l, budget)?),
        sigma: Some(report.hilbert.sigma as usize == if case.tag == CaseTag::Binomial { case.d } else { case.d + 1 }),
        ..Default::default()
    };
    let relations = linear_relations(&tensors, &case)?;
    let expected_relations = match case.tag {
        CaseTag::Binomial => case.d,
        CaseTag::DLessThan2k => 0,
        CaseTag::DAtLeast2k => case.d - 2 * case.k,
    };
    v.linear_relation_count = Some(relations.len() == expected_relations);

    let elim = rees_via_elimination_case(&case, budget)?;
    timer.lap("elimination");
    v.elimination_sound = Some(all_vanish(elim.gens(), &case.graph_images())?);
    let predicted_ideal = predicted.ideal()?;
    v.equal = Some(ideal_equal(&predicted_ideal, &elim, &MonomialOrder::GrevLex, budget)?);
    timer.lap("equality");

    // degree-one part of the Rees ideal against the linear relations
    let gb = elim.groebner_basis(&MonomialOrder::GrevLex, budget)?;
    let linear: Vec<Polynomial> = gb.polys().iter().filter(|p| p.degree() == Some(1)).cloned().collect();
    let both: Vec<Polynomial> = linear.iter().chain(&relations).cloned().collect();
    let r = linear_span_rank(elim.ring(), &both);
    v.linear_slice = Some(r == linear.len() && r == relations.len());

    let rees = summarize_rees(&elim, budget, timer)?;
    v.perfect = Some(rees.perfection.perfect);
    if case.tag == CaseTag::Binomial {
        v.quadratic_generation = Some(rees.max_total_generator_degree <= 2);
    }
    report.rees = Some(rees);

    if opts.compare_betti && case.tag == CaseTag::Binomial {
        let split = split_linear_forms(&elim, budget)?;
        let ours = betti_table(&split.ideal, None, budget)?;
        let generic = betti_table(&generic_minors_ideal(x.field(), 3, case.d + 2, 2)?, None, budget)?;
        v.betti_match = Some(ours == generic);
        report.betti = Some(BettiComparison {
            rees_grid: ours.grid(),
            generic_grid: generic.grid(),
            rees_without_linear_forms: ours,
            generic_minors: generic,
        });
        timer.lap("betti");
    }

    if case.k > 0 && !relations.is_empty() {
        let j_only = Ideal::new(elim.ring(), predicted.items.iter().filter(|(s, _)| s.label() != "linear-relation").map(|(_, p)| p.clone()).collect())?;
        let mut inside = true;
        for f in &relations {
            inside &= j_only.contains(f, budget)?;
        }
        report.observations.linear_forms_in_j = Some(inside);
    }
    if opts.check_splitting && case.k > 0 && x.field().characteristic() != 2 {
        let other = match opts.splitting {
            Splitting::Symmetric => Splitting::UpperTriangular,
            Splitting::UpperTriangular => Splitting::Symmetric,
        };
        let alt: LabeledGenerators = theorem_generators(&case, &coefficient_tensors(&case.l, other)?)?;
        report.observations.splitting_independent =
            Some(ideal_equal(&alt.ideal()?, &predicted_ideal, &MonomialOrder::GrevLex, budget)?);
        timer.lap("splitting");
    }
    Ok(v)
}
