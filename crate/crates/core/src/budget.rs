//! Step and wall-clock limits for long computations.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Shared computation budget. Clones share the step counter and deadline.
#[derive(Clone, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_steps: Option<u64>,
    steps: Arc<AtomicU64>,
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None, max_steps: None, steps: Arc::new(AtomicU64::new(0)) }
    }

    pub fn with_time(limit: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + limit), ..Self::unlimited() }
    }

    pub fn with_steps(max_steps: u64) -> Self {
        Budget { max_steps: Some(max_steps), ..Self::unlimited() }
    }

    /// Parses `250ms`, `30s`, `10m`, or `steps:N`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("bad budget `{text}` (use e.g. 500ms, 30s, 10m, steps:100000)"));
        if let Some(n) = text.strip_prefix("steps:") {
            return n.parse().map(Self::with_steps).map_err(|_| bad());
        }
        let (num, unit) = text.split_at(text.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?);
        let n: u64 = num.parse().map_err(|_| bad())?;
        let d = match unit {
            "ms" => Duration::from_millis(n),
            "s" => Duration::from_secs(n),
            "m" | "min" => Duration::from_secs(60 * n),
            _ => return Err(bad()),
        };
        Ok(Self::with_time(d))
    }

    /// Same limits with a fresh counter and a deadline restarted now.
    pub fn fresh(&self, time_limit: Option<Duration>) -> Self {
        Budget {
            deadline: time_limit.map(|d| Instant::now() + d).or(self.deadline),
            max_steps: self.max_steps,
            steps: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps.load(Ordering::Relaxed)
    }

    /// Records `n` units of work and fails once a limit is crossed.
    pub fn charge(&self, n: u64) -> Result<()> {
        let total = self.steps.fetch_add(n, Ordering::Relaxed) + n;
        if self.max_steps.is_some_and(|m| total > m) {
            return Err(Error::BudgetExceeded { steps: total });
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(Error::BudgetExceeded { steps: total });
            }
        }
        Ok(())
    }
}
