use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::args::{Format, InstanceArgs, OutputArgs};
use crate::{exit, text, Outcome};
use rees_core::groebner::Ideal;
use rees_core::points::{
    genericity_report, graded_piece, hilbert_data, points_ideal, split_s, GenericityReport, HilbertData, PointSet,
};
use rees_core::poly::{parse_polynomial_list, MonomialOrder, Ring, VarKind};
use rees_core::rees::{
    bigraded_minimal_generators, coefficient_tensors, rees_via_elimination, theorem_generators, verify_theorem,
    CaseData, GeneratorSource, Splitting, VerifyOptions,
};
use rees_core::report::{to_json, BidegreeCount, InstanceSummary, RunConfig, Status, SCHEMA_VERSION};
use rees_core::resolution::{
    betti_table, hilbert_burch_check, hilbert_series, perfection, presentation_matrix, BettiTable, HilbertSeries,
    Perfection, PresentationSummary,
};
use rees_core::{Error, Result};

pub(crate) fn config(
    command: &str,
    x: Option<&PointSet>,
    inst: &InstanceArgs,
    t: Option<u32>,
    order: &MonomialOrder,
    out: &OutputArgs,
) -> RunConfig {
    let s = x.map(PointSet::len).or(inst.s);
    let (d, k) = s.map(split_s).unzip();
    RunConfig {
        command: command.into(),
        s,
        d,
        k,
        t,
        field: x.map(|x| x.field()).or_else(|| inst.field.field().ok()).map(|f| f.to_string()).unwrap_or_default(),
        seed: inst.seed,
        points: inst.points.clone(),
        order: order.name(),
        budget: out.budget.clone(),
        format: out.format.name().into(),
        output: out.output.as_ref().map(|p| p.display().to_string()),
    }
}

fn render<T: Serialize>(out: &OutputArgs, doc: &T, text: impl FnOnce() -> String) -> String {
    match out.format {
        Format::Json => to_json(doc),
        Format::Text => text(),
    }
}

fn ok(report: String) -> Result<Outcome> {
    Ok(Outcome { code: exit::OK, report })
}

#[derive(Args, Debug)]
pub struct PointsGenArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Serialize)]
struct PointsDoc {
    schema_version: u32,
    config: RunConfig,
    instance: InstanceSummary,
    hilbert: HilbertData,
    genericity: GenericityReport,
}

pub fn points_gen(a: &PointsGenArgs) -> Result<Outcome> {
    let x = a.inst.load()?;
    let doc = PointsDoc {
        schema_version: SCHEMA_VERSION,
        config: config("points gen", Some(&x), &a.inst, None, &MonomialOrder::GrevLex, &a.out),
        instance: InstanceSummary::from(&x),
        hilbert: hilbert_data(&x),
        genericity: genericity_report(&x),
    };
    ok(render(&a.out, &doc, || x.to_string()))
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    /// Only the degree-t piece I_t.
    #[arg(long)]
    pub t: Option<u32>,
    /// Print the reduced Gröbner basis instead of the generators.
    #[arg(long)]
    pub groebner: bool,
    /// Monomial order for --groebner: grevlex or lex.
    #[arg(long, default_value = "grevlex")]
    pub order: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Serialize)]
struct IdealDoc {
    schema_version: u32,
    config: RunConfig,
    instance: InstanceSummary,
    t: Option<u32>,
    generators: Vec<String>,
    groebner_basis: Option<Vec<String>>,
}

pub fn ideal(a: &IdealArgs) -> Result<Outcome> {
    let order = MonomialOrder::parse(&a.order)?;
    let x = a.inst.load()?;
    let ideal = match a.t {
        Some(t) => Ideal::new(&Ring::plane(x.field()), graded_piece(&x, t).basis)?,
        None => points_ideal(&x),
    };
    let groebner_basis = if a.groebner {
        Some(ideal.groebner_basis(&order, &a.out.budget()?)?.polys().iter().map(ToString::to_string).collect())
    } else {
        None
    };
    let doc = IdealDoc {
        schema_version: SCHEMA_VERSION,
        config: config("ideal", Some(&x), &a.inst, a.t, &order, &a.out),
        instance: InstanceSummary::from(&x),
        t: a.t,
        generators: ideal.gens().iter().map(ToString::to_string).collect(),
        groebner_basis,
    };
    ok(render(&a.out, &doc, || text::lines(doc.groebner_basis.as_ref().unwrap_or(&doc.generators))))
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Serialize)]
struct HilbertDoc {
    schema_version: u32,
    config: RunConfig,
    instance: InstanceSummary,
    hilbert: HilbertData,
    genericity: GenericityReport,
    series: HilbertSeries,
    /// The evaluation-matrix ranks agree with the standard-monomial counts for `t <= s + 3`.
    oracle_agrees: bool,
}

pub fn hilbert(a: &HilbertArgs) -> Result<Outcome> {
    let x = a.inst.load()?;
    let hd = hilbert_data(&x);
    let series = hilbert_series(&points_ideal(&x), &a.out.budget()?)?;
    let oracle_agrees = (0..=x.len() as u32 + 3).all(|t| series.value(t) == hd.at(t) as i64);
    let doc = HilbertDoc {
        schema_version: SCHEMA_VERSION,
        config: config("hilbert", Some(&x), &a.inst, None, &MonomialOrder::GrevLex, &a.out),
        instance: InstanceSummary::from(&x),
        genericity: genericity_report(&x),
        hilbert: hd,
        series,
        oracle_agrees,
    };
    let code = if oracle_agrees { exit::OK } else { exit::FALSE_VERDICT };
    let report = render(&a.out, &doc, || {
        let mut s = String::new();
        let _ = writeln!(s, "hf: {:?}", doc.hilbert.hf);
        let _ = writeln!(s, "alpha: {}", doc.hilbert.alpha);
        let _ = writeln!(s, "sigma: {}", doc.hilbert.sigma);
        let g = &doc.genericity;
        let _ = writeln!(s, "s = C({}, 2) + {}; generic hf: {}; max collinear: {}", g.d + 1, g.k, g.generic_hf, g.max_collinear);
        let _ = writeln!(s, "series numerator: {:?}", doc.series.numerator);
        let _ = writeln!(s, "oracle agrees: {}", doc.oracle_agrees);
        s
    });
    Ok(Outcome { code, report })
}

#[derive(Args, Debug)]
pub struct PresentationArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Serialize)]
struct PresentationDoc {
    schema_version: u32,
    config: RunConfig,
    instance: InstanceSummary,
    shape: String,
    presentation: PresentationSummary,
    generators: Vec<String>,
    signed_minors: Vec<String>,
    hilbert_burch: bool,
    case: Option<String>,
}

pub fn presentation(a: &PresentationArgs) -> Result<Outcome> {
    let x = a.inst.load()?;
    let budget = a.out.budget()?;
    let ideal = points_ideal(&x);
    let l = presentation_matrix(&ideal, &budget)?;
    let hb = hilbert_burch_check(&ideal, &l, &budget)?;
    let case = match CaseData::from_presentation(x.len(), ideal.clone(), l.clone()) {
        Ok(c) => Some(c.tag.name().to_string()),
        Err(Error::Degenerate(_)) => None,
        Err(e) => return Err(e),
    };
    let doc = PresentationDoc {
        schema_version: SCHEMA_VERSION,
        config: config("presentation", Some(&x), &a.inst, None, &MonomialOrder::GrevLex, &a.out),
        instance: InstanceSummary::from(&x),
        shape: l.shape(),
        presentation: PresentationSummary::from(&l),
        generators: l.generators().iter().map(ToString::to_string).collect(),
        signed_minors: l.signed_minors()?.iter().map(ToString::to_string).collect(),
        hilbert_burch: hb,
        case,
    };
    let code = if hb { exit::OK } else { exit::FALSE_VERDICT };
    let report = render(&a.out, &doc, || {
        let mut s = String::new();
        let _ = writeln!(s, "shape: {}", doc.shape);
        let _ = writeln!(s, "row degrees: {:?}", doc.presentation.row_degrees);
        let _ = writeln!(s, "column degrees: {:?}", doc.presentation.col_degrees);
        let _ = write!(s, "{l}");
        let _ = writeln!(s, "hilbert-burch: {}", doc.hilbert_burch);
        let _ = writeln!(s, "case: {}", doc.case.as_deref().unwrap_or("none"));
        s
    });
    Ok(Outcome { code, report })
}

#[derive(Args, Debug)]
pub struct EliminateArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    /// Degree of the piece I_t whose Rees ideal is computed.
    #[arg(long)]
    pub t: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Serialize)]
struct BigradedGenerator {
    bidegree: (u32, u32),
    generator: String,
}

#[derive(Serialize)]
struct EliminateDoc {
    schema_version: u32,
    config: RunConfig,
    instance: InstanceSummary,
    t: u32,
    variables: Vec<String>,
    targets: Vec<String>,
    groebner_basis_size: Option<usize>,
    bidegree_counts: Vec<BidegreeCount>,
    minimal_generators: Vec<BigradedGenerator>,
}

pub fn eliminate(a: &EliminateArgs) -> Result<Outcome> {
    let x = a.inst.load()?;
    let budget = a.out.budget()?;
    let k = rees_via_elimination(&x, a.t, &budget)?;
    let mins = bigraded_minimal_generators(&k, &budget)?;
    let mut counts: Vec<BidegreeCount> = Vec::new();
    for (b, _) in &mins {
        match counts.iter_mut().find(|c| c.bidegree == *b) {
            Some(c) => c.count += 1,
            None => counts.push(BidegreeCount { bidegree: *b, count: 1 }),
        }
    }
    let doc = EliminateDoc {
        schema_version: SCHEMA_VERSION,
        config: config("rees eliminate", Some(&x), &a.inst, Some(a.t), &MonomialOrder::GrevLex, &a.out),
        instance: InstanceSummary::from(&x),
        t: a.t,
        variables: k.ring().names().to_vec(),
        targets: graded_piece(&x, a.t).basis.iter().map(ToString::to_string).collect(),
        groebner_basis_size: k.cached_basis(&MonomialOrder::GrevLex).map(|g| g.len()),
        bidegree_counts: counts,
        minimal_generators: mins.iter().map(|(b, g)| BigradedGenerator { bidegree: *b, generator: g.to_string() }).collect(),
    };
    ok(render(&a.out, &doc, || {
        let mut s = String::new();
        for (i, f) in doc.targets.iter().enumerate() {
            let _ = writeln!(s, "# x{i} -> {f}");
        }
        for g in &doc.minimal_generators {
            let _ = writeln!(s, "({},{}) {}", g.bidegree.0, g.bidegree.1, g.generator);
        }
        s
    }))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum SplittingArg {
    #[default]
    Symmetric,
    UpperTriangular,
}

impl From<SplittingArg> for Splitting {
    fn from(s: SplittingArg) -> Splitting {
        match s {
            SplittingArg::Symmetric => Splitting::Symmetric,
            SplittingArg::UpperTriangular => Splitting::UpperTriangular,
        }
    }
}

#[derive(Args, Debug)]
pub struct TheoremArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    /// Must be d + 1 when given.
    #[arg(long)]
    pub t: Option<u32>,
    /// How the quadratic entries are split into symmetric coefficient tensors.
    #[arg(long, value_enum, default_value_t = SplittingArg::Symmetric)]
    pub splitting: SplittingArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Serialize)]
struct TheoremGenerator {
    source: GeneratorSource,
    bidegree: (u32, u32),
    generator: String,
}

#[derive(Serialize)]
struct TheoremDoc {
    schema_version: u32,
    config: RunConfig,
    instance: InstanceSummary,
    t: u32,
    case: String,
    variables: Vec<String>,
    counts: std::collections::BTreeMap<String, usize>,
    generators: Vec<TheoremGenerator>,
}

pub fn theorem(a: &TheoremArgs) -> Result<Outcome> {
    let x = a.inst.load()?;
    let (d, _) = split_s(x.len());
    let t = d as u32 + 1;
    if a.t.is_some_and(|u| u != t) {
        return Err(Error::Invalid(format!("predicted generators exist only for t = d + 1 = {t}")));
    }
    let case = CaseData::from_points(&x, &a.out.budget()?)?;
    let gens = theorem_generators(&case, &coefficient_tensors(&case.l, a.splitting.into())?)?;
    let mut items = Vec::with_capacity(gens.len());
    for (src, g) in &gens.items {
        items.push(TheoremGenerator { source: src.clone(), bidegree: g.bidegree()?, generator: g.to_string() });
    }
    let doc = TheoremDoc {
        schema_version: SCHEMA_VERSION,
        config: config("rees theorem", Some(&x), &a.inst, Some(t), &MonomialOrder::GrevLex, &a.out),
        instance: InstanceSummary::from(&x),
        t,
        case: case.tag.name().into(),
        variables: gens.ring.names().to_vec(),
        counts: gens.counts(),
        generators: items,
    };
    ok(render(&a.out, &doc, || {
        let mut s = String::new();
        for (g, (src, _)) in doc.generators.iter().zip(&gens.items) {
            let _ = writeln!(s, "{}: {}", src.label(), g.generator);
        }
        s
    }))
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    /// Degree of the piece I_t whose Rees ideal is computed.
    #[arg(long)]
    pub t: u32,
    /// Skip the Betti table comparison with generic minors.
    #[arg(long)]
    pub no_betti: bool,
    /// Skip building J a second time with the other splitting.
    #[arg(long)]
    pub no_splitting_check: bool,
    #[arg(long, value_enum, default_value_t = SplittingArg::Symmetric)]
    pub splitting: SplittingArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl VerifyArgs {
    pub(crate) fn options(&self) -> VerifyOptions {
        VerifyOptions {
            compare_betti: !self.no_betti,
            check_splitting: !self.no_splitting_check,
            splitting: self.splitting.into(),
            timings: self.out.timings,
        }
    }
}

/// Exit code of a single verification report.
pub(crate) fn verdict_code(r: &rees_core::report::VerificationReport) -> i32 {
    match r.status {
        Status::Ok if r.passed() => exit::OK,
        Status::Ok => exit::FALSE_VERDICT,
        Status::RejectedInstance => exit::OK,
        Status::BudgetExceeded => exit::BUDGET,
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let x = a.inst.load()?;
    let mut report = verify_theorem(&x, a.t, &a.options(), &a.out.budget()?)?;
    report.config = Some(config("rees verify", Some(&x), &a.inst, Some(a.t), &MonomialOrder::GrevLex, &a.out));
    let code = verdict_code(&report);
    Ok(Outcome { code, report: render(&a.out, &report, || text::verification(&report)) })
}

#[derive(Args, Debug)]
pub struct ResolveArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    /// Resolve the Rees ideal of I_t (by elimination) instead of the ideal of the points.
    #[arg(long)]
    pub t: Option<u32>,
    /// Resolve the ideal generated by the polynomials in this file, one per line.
    #[arg(long, conflicts_with_all = ["t", "points", "s", "seed"])]
    pub ideal: Option<PathBuf>,
    /// Comma-separated variable names for --ideal.
    #[arg(long, default_value = "w1,w2,w3")]
    pub vars: String,
    /// Internal degree bound for the Betti table; unbounded by default.
    #[arg(long)]
    pub bound: Option<u32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Serialize)]
struct ResolveDoc {
    schema_version: u32,
    config: RunConfig,
    instance: Option<InstanceSummary>,
    variables: Vec<String>,
    generators: usize,
    series: HilbertSeries,
    betti: BettiTable,
    grid: String,
    /// The alternating sum of the Betti numbers reproduces the series numerator.
    euler_check: bool,
    perfection: Perfection,
}

fn kind_of(name: &str) -> VarKind {
    match name.chars().next() {
        Some('w') => VarKind::W,
        Some('x') => VarKind::X,
        Some('y') => VarKind::Y,
        _ => VarKind::Other,
    }
}

pub fn resolve(a: &ResolveArgs) -> Result<Outcome> {
    let budget = a.out.budget()?;
    let (x, ideal) = match &a.ideal {
        Some(path) => {
            let vars = a.vars.split(',').map(str::trim).map(|v| (v.to_string(), kind_of(v))).collect();
            let ring: Arc<Ring> = Ring::new(a.inst.field.field()?, vars)?;
            let gens = parse_polynomial_list(&ring, &std::fs::read_to_string(path)?)?;
            (None, Ideal::new(&ring, gens)?)
        }
        None => {
            let x = a.inst.load()?;
            let ideal = match a.t {
                Some(t) => rees_via_elimination(&x, t, &budget)?,
                None => points_ideal(&x),
            };
            (Some(x), ideal)
        }
    };
    let start = Instant::now();
    let series = hilbert_series(&ideal, &budget)?;
    let betti = betti_table(&ideal, a.bound, &budget)?;
    let perfection = perfection(&ideal, &budget)?;
    let mut cfg = config("resolve", x.as_ref(), &a.inst, a.t, &MonomialOrder::GrevLex, &a.out);
    if let Some(path) = &a.ideal {
        cfg.points = Some(path.display().to_string());
    }
    let doc = ResolveDoc {
        schema_version: SCHEMA_VERSION,
        config: cfg,
        instance: x.as_ref().map(InstanceSummary::from),
        variables: ideal.ring().names().to_vec(),
        generators: ideal.gens().len(),
        euler_check: betti.euler_numerator() == series.numerator,
        grid: betti.grid(),
        series,
        betti,
        perfection,
    };
    let code = if doc.euler_check { exit::OK } else { exit::FALSE_VERDICT };
    let report = render(&a.out, &doc, || {
        let mut s = doc.grid.clone();
        let p = &doc.perfection;
        let _ = writeln!(s, "codim {} pd {} perfect {}", p.codim, p.projective_dimension, p.perfect);
        if a.out.timings {
            let _ = writeln!(s, "elapsed {} ms", start.elapsed().as_millis());
        }
        s
    });
    Ok(Outcome { code, report })
}
