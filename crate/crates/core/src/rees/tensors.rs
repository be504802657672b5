//! Coefficient tensors of the linear and quadric entries of a presentation matrix.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::resolution::PresentationMatrix;

/// How the coefficient of `w_i w_h` (`i != h`) in a quadric is shared between
/// `gamma[.., i, h, ..]` and `gamma[.., h, i, ..]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Splitting {
    /// Half on each; needs a field of characteristic other than 2.
    #[default]
    Symmetric,
    /// Everything on `i < h`.
    UpperTriangular,
}

/// Coefficients of the entries of `L`, keyed by matrix position.
///
/// `lambda[(r, c, i)]` is the coefficient of `w_i` in a linear entry `L[r][c]`;
/// `gamma[(r, i, h, c)]` is the share of `w_i w_h` in a quadric entry `L[r][c]`.
/// Indices are 0-based and only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTensors {
    pub lambda: BTreeMap<(usize, usize, usize), Scalar>,
    pub gamma: BTreeMap<(usize, usize, usize, usize), Scalar>,
    pub splitting: Splitting,
}

impl CoefficientTensors {
    pub fn lambda(&self, r: usize, c: usize, i: usize) -> Option<&Scalar> {
        self.lambda.get(&(r, c, i))
    }

    pub fn gamma(&self, r: usize, i: usize, h: usize, c: usize) -> Option<&Scalar> {
        self.gamma.get(&(r, i, h, c))
    }
}

/// Reads off `lambda` and `gamma` from the entries of `l` in the `w`-variables.
/// Entries must be zero, linear or quadric.
pub fn coefficient_tensors(l: &PresentationMatrix, splitting: Splitting) -> Result<CoefficientTensors> {
    let field = l.ring().field();
    let nw = l.ring().nvars();
    let half = if splitting == Splitting::Symmetric {
        if field.characteristic() == 2 {
            return Err(Error::Invalid("the symmetric splitting needs characteristic other than 2".into()));
        }
        Some(field.from_i64(2).inv()?)
    } else {
        None
    };
    let mut lambda = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    for (r, row) in l.entries().iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            match e.degree() {
                None => {}
                Some(1) => {
                    for (m, v) in e.terms() {
                        let i = m.exps().iter().position(|&x| x > 0).expect("linear monomial");
                        lambda.insert((r, c, i), v.clone());
                    }
                }
                Some(2) => {
                    for (m, v) in e.terms() {
                        let vars: Vec<usize> = (0..nw).flat_map(|i| std::iter::repeat_n(i, m.exp(i) as usize)).collect();
                        let (i, h) = (vars[0], vars[1]);
                        match (&half, i == h) {
                            (_, true) | (None, false) => {
                                gamma.insert((r, i, h, c), v.clone());
                            }
                            (Some(half), false) => {
                                let share = v * half;
                                gamma.insert((r, i, h, c), share.clone());
                                gamma.insert((r, h, i, c), share);
                            }
                        }
                    }
                }
                Some(deg) => {
                    return Err(Error::Invalid(format!("entry ({r}, {c}) has degree {deg}; only linear and quadric entries are supported")));
                }
            }
        }
    }
    Ok(CoefficientTensors { lambda, gamma, splitting })
}
