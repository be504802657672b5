use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hilbert::{genericity_report, split_s};
use super::{PointSet, Provenance};
use crate::arith::{Field, Scalar};
use crate::error::{Error, Result};

/// Conditions a random point set must meet; failing samples are redrawn.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Constraints {
    /// Hilbert function `min(C(t+2,2), s)` in every degree.
    pub generic_hf: bool,
    /// At most this many points on a line.
    pub max_collinear: Option<usize>,
    /// Exactly this many points on the fullest line.
    pub exact_collinear: Option<usize>,
}

impl Constraints {
    /// Generic Hilbert function and no `d+1` points on a line, for `s = C(d+1,2) + k`.
    pub fn general(s: usize) -> Self {
        let (d, _) = split_s(s);
        Constraints { generic_hf: true, max_collinear: Some(d.max(2)), exact_collinear: None }
    }

    pub fn holds(&self, x: &PointSet) -> bool {
        if !self.generic_hf && self.max_collinear.is_none() && self.exact_collinear.is_none() {
            return true;
        }
        let g = genericity_report(x);
        (!self.generic_hf || g.generic_hf)
            && self.max_collinear.is_none_or(|m| g.max_collinear <= m)
            && self.exact_collinear.is_none_or(|m| g.max_collinear == m)
    }
}

fn point_from_index(r: u64, p: u32) -> [Scalar; 3] {
    let f = Field::Prime(p);
    let pp = p as u64;
    if r < pp * pp {
        [f.one(), f.from_i64((r / pp) as i64), f.from_i64((r % pp) as i64)]
    } else if r < pp * pp + pp {
        [f.zero(), f.one(), f.from_i64((r - pp * pp) as i64)]
    } else {
        [f.zero(), f.zero(), f.one()]
    }
}

/// `s` distinct points drawn uniformly from the projective plane over `F_p`,
/// redrawn until `constraints` hold. The same seed always yields the same set.
pub fn random_points(field: Field, s: usize, seed: u64, constraints: &Constraints, max_retries: u32) -> Result<PointSet> {
    let Field::Prime(p) = field else {
        return Err(Error::Invalid("random points need a prime field".into()));
    };
    let total = p as u64 * p as u64 + p as u64 + 1;
    if s == 0 || s as u64 > total {
        return Err(Error::Invalid(format!("cannot choose {s} distinct points in a plane with {total} points")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for retries in 0..=max_retries {
        let mut idx: Vec<u64> = Vec::with_capacity(s);
        while idx.len() < s {
            let r = rng.gen_range(0..total);
            if !idx.contains(&r) {
                idx.push(r);
            }
        }
        let pts = idx.iter().map(|&r| point_from_index(r, p)).collect();
        let x = PointSet::new(field, pts, Provenance::Random { seed, retries })?;
        if constraints.holds(&x) {
            return Ok(x);
        }
    }
    Err(Error::RetriesExhausted(max_retries))
}
