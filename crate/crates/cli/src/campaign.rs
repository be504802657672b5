use std::path::PathBuf;

use clap::Args;

use crate::args::{FieldArgs, InstanceArgs, OutputArgs};
use crate::commands::{config, SplittingArg};
use crate::{exit, text, Outcome};
use rees_core::arith::Field;
use rees_core::exec::{self, ExecMode};
use rees_core::poly::MonomialOrder;
use rees_core::rees::{verify_theorem, VerifyOptions};
use rees_core::report::{to_json, CampaignError, CampaignReport, VerificationReport};
use rees_core::{Error, Result};

#[derive(Args, Debug)]
pub struct CampaignArgs {
    /// `S:T:SEEDS` for random points (SEEDS is `n`, `a..b` or `a,b,c`), or
    /// `NAME:T[:FIELD]` for a built-in set. Repeatable.
    #[arg(long = "entry")]
    pub entries: Vec<String>,
    /// File with one entry per line; `#` starts a comment.
    #[arg(long)]
    pub entries_file: Option<PathBuf>,
    /// Accept random points in any position.
    #[arg(long)]
    pub unconstrained: bool,
    /// Redraws allowed per random instance before giving up on the constraints.
    #[arg(long, default_value_t = 1000)]
    pub retries: u32,
    /// Skip the Betti table comparison with generic minors.
    #[arg(long)]
    pub no_betti: bool,
    /// Skip building J a second time with the other splitting.
    #[arg(long)]
    pub no_splitting_check: bool,
    #[arg(long, value_enum, default_value_t = SplittingArg::Symmetric)]
    pub splitting: SplittingArg,
    /// Run the instances one after another.
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// One verification run of a campaign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignEntry {
    pub s: Option<usize>,
    pub t: u32,
    pub seed: Option<u64>,
    pub points: Option<String>,
    pub field: Option<String>,
}

fn bad(entry: &str, why: &str) -> Error {
    Error::Invalid(format!("bad campaign entry `{entry}`: {why}"))
}

fn parse_seeds(entry: &str, text: &str) -> Result<Vec<u64>> {
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad(entry, "seeds must be integers"));
    if let Some((a, b)) = text.split_once("..") {
        return Ok((num(a)?..num(b)?).collect());
    }
    text.split(',').map(num).collect()
}

/// Expands entry strings into single runs, in order.
pub fn parse_entries<S: AsRef<str>>(lines: &[S]) -> Result<Vec<CampaignEntry>> {
    let mut out = Vec::new();
    for line in lines {
        let entry = line.as_ref().trim();
        if entry.is_empty() || entry.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = entry.split(':').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(bad(entry, "expected S:T:SEEDS or NAME:T[:FIELD]"));
        }
        let t: u32 = parts[1].trim().parse().map_err(|_| bad(entry, "t must be an integer"))?;
        match parts[0].trim().parse::<usize>() {
            Ok(s) => {
                let seeds = parts.get(2).ok_or_else(|| bad(entry, "random entries need seeds"))?;
                for seed in parse_seeds(entry, seeds)? {
                    out.push(CampaignEntry { s: Some(s), t, seed: Some(seed), points: None, field: None });
                }
            }
            Err(_) => out.push(CampaignEntry {
                s: None,
                t,
                seed: None,
                points: Some(parts[0].trim().to_string()),
                field: parts.get(2).map(|f| f.trim().to_string()),
            }),
        }
    }
    Ok(out)
}

impl CampaignArgs {
    fn instance(&self, e: &CampaignEntry) -> InstanceArgs {
        let field = match &e.field {
            Some(f) => FieldArgs { field: Some(f.clone()), prime: None },
            None => self.field.clone(),
        };
        InstanceArgs {
            s: e.s,
            points: e.points.clone(),
            seed: e.seed,
            unconstrained: self.unconstrained,
            retries: self.retries,
            field,
        }
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            compare_betti: !self.no_betti,
            check_splitting: !self.no_splitting_check,
            splitting: self.splitting.into(),
            timings: self.out.timings,
        }
    }

    fn run_one(&self, e: &CampaignEntry) -> std::result::Result<VerificationReport, CampaignError> {
        let inst = self.instance(e);
        let attempt = || -> Result<VerificationReport> {
            let x = inst.load()?;
            let mut r = verify_theorem(&x, e.t, &self.options(), &self.out.budget()?)?;
            r.config = Some(config("campaign", Some(&x), &inst, Some(e.t), &MonomialOrder::GrevLex, &self.out));
            Ok(r)
        };
        attempt().map_err(|err| CampaignError {
            s: e.s,
            t: e.t,
            seed: e.seed,
            points: e.points.clone(),
            message: err.to_string(),
        })
    }
}

pub fn run(a: &CampaignArgs) -> Result<Outcome> {
    let mut lines = a.entries.clone();
    if let Some(path) = &a.entries_file {
        lines.extend(std::fs::read_to_string(path)?.lines().map(str::to_string));
    }
    let entries = parse_entries(&lines)?;
    for e in entries.iter().filter_map(|e| e.field.as_ref()) {
        Field::parse(&e.replace('_', " "))?;
    }
    let mode = if a.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let results = exec::map(mode, &entries, |e| a.run_one(e));
    let (mut reports, mut errors) = (Vec::new(), Vec::new());
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => errors.push(e),
        }
    }
    let mut cfg = config("campaign", None, &InstanceArgs::default(), None, &MonomialOrder::GrevLex, &a.out);
    cfg.field = a.field.field()?.to_string();
    let report = CampaignReport::new(Some(cfg), reports, errors);
    let s = &report.summary;
    let code = if s.failed > 0 {
        exit::FALSE_VERDICT
    } else if s.errors > 0 {
        exit::USAGE
    } else if s.budget_exceeded > 0 {
        exit::BUDGET
    } else {
        exit::OK
    };
    let rendered = match a.out.format {
        crate::Format::Json => to_json(&report),
        crate::Format::Text => text::campaign(&report),
    };
    Ok(Outcome { code, report: rendered })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_expand_seed_ranges() {
        let e = parse_entries(&["3:3:0..3", "# comment", "frame-4:3:Q", "5:3:7,9"]).unwrap();
        assert_eq!(e.len(), 6);
        assert_eq!(e[0], CampaignEntry { s: Some(3), t: 3, seed: Some(0), points: None, field: None });
        assert_eq!(e[3].points.as_deref(), Some("frame-4"));
        assert_eq!(e[3].field.as_deref(), Some("Q"));
        assert_eq!(e[5].seed, Some(9));
    }

    #[test]
    fn malformed_entries_are_rejected() {
        assert!(parse_entries(&["3"]).is_err());
        assert!(parse_entries(&["3:x:1"]).is_err());
        assert!(parse_entries(&["3:3"]).is_err());
        assert!(parse_entries(&["3:3:a..b"]).is_err());
        assert!(parse_entries::<&str>(&[]).unwrap().is_empty());
    }
}
