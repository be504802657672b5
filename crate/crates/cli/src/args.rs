use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rees_core::arith::{Field, DEFAULT_PRIME};
use rees_core::points::{random_points, Constraints, PointSet};
use rees_core::{Budget, Error, Result};

/// Ground field: `--field Q` (or `--field "F p"`) or `--prime p`; `F 32003` by default.
#[derive(Args, Clone, Debug, Default)]
pub struct FieldArgs {
    /// `Q` for the rationals, or `F p` for a prime field.
    #[arg(long, conflicts_with = "prime")]
    pub field: Option<String>,
    /// Work over the prime field with this modulus.
    #[arg(long)]
    pub prime: Option<u64>,
}

impl FieldArgs {
    pub fn field(&self) -> Result<Field> {
        match (&self.field, self.prime) {
            (Some(f), _) => Field::parse(&f.replace('_', " ")),
            (None, Some(p)) => Field::prime(p),
            (None, None) => Field::prime(DEFAULT_PRIME as u64),
        }
    }

    fn explicit(&self) -> bool {
        self.field.is_some() || self.prime.is_some()
    }
}

/// Which point set to work on: a built-in, a point file, or random points.
#[derive(Args, Clone, Debug, Default)]
pub struct InstanceArgs {
    /// Number of points; required for random instances.
    #[arg(long)]
    pub s: Option<usize>,
    /// A built-in set (coordinate-triangle, frame-4, three-collinear) or a point file.
    #[arg(long)]
    pub points: Option<String>,
    /// Seed for random points.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Accept random points in any position instead of general position.
    #[arg(long)]
    pub unconstrained: bool,
    /// Redraws allowed before giving up on the constraints.
    #[arg(long, default_value_t = 1000)]
    pub retries: u32,
    #[command(flatten)]
    pub field: FieldArgs,
}

impl InstanceArgs {
    pub fn load(&self) -> Result<PointSet> {
        let x = match &self.points {
            Some(name) => self.named_or_file(name)?,
            None => {
                let s = self.s.ok_or_else(|| Error::Invalid("random instances need --s (or use --points)".into()))?;
                let seed = self.seed.ok_or_else(|| Error::Invalid("random instances need --seed".into()))?;
                random_points(self.field.field()?, s, seed, &self.constraints(s), self.retries)?
            }
        };
        if let Some(s) = self.s {
            if s != x.len() {
                return Err(Error::Invalid(format!("--s {s} but the point set has {} points", x.len())));
            }
        }
        Ok(x)
    }

    fn constraints(&self, s: usize) -> Constraints {
        if self.unconstrained {
            Constraints::default()
        } else {
            Constraints::general(s)
        }
    }

    fn named_or_file(&self, name: &str) -> Result<PointSet> {
        if let Ok(x) = PointSet::by_name(name, self.field.field()?) {
            return Ok(x);
        }
        let path = PathBuf::from(name);
        if !path.exists() {
            return PointSet::by_name(name, self.field.field()?);
        }
        let x = PointSet::parse(&std::fs::read_to_string(&path)?)?;
        if self.field.explicit() && self.field.field()? != x.field() {
            return Err(Error::Invalid(format!("{name} is over {} but {} was requested", x.field(), self.field.field()?)));
        }
        Ok(x)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Step or time limit, e.g. `500ms`, `30s`, `10m` or `steps:100000`.
    #[arg(long)]
    pub budget: Option<String>,
    /// Record wall-clock timings in the report (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

impl OutputArgs {
    /// A fresh budget; each call restarts the clock.
    pub fn budget(&self) -> Result<Budget> {
        self.budget.as_deref().map_or(Ok(Budget::unlimited()), Budget::parse)
    }
}
