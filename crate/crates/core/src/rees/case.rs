//! Case detection: the Hilbert–Burch matrix of a point set laid out in the
//! block form that the determinantal constructions expect.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::points::{points_ideal, split_s, PointSet};
use crate::poly::{Polynomial, Ring};
use crate::resolution::{presentation_matrix, PresentationMatrix};

/// Which shape of presentation applies to `s = C(d+1, 2) + k` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    /// `k = 0`: a `d x (d+1)` matrix of linear forms.
    #[serde(rename = "binomial")]
    Binomial,
    /// `0 < k`, `d < 2k`: every row has `2k - d` linear then `d - k + 1` quadric entries.
    #[serde(rename = "d<2k")]
    DLessThan2k,
    /// `0 < k`, `d >= 2k`: `k` quadric rows above `d - 2k` linear rows.
    #[serde(rename = "d>=2k")]
    DAtLeast2k,
}

impl CaseTag {
    pub fn of(d: usize, k: usize) -> CaseTag {
        if k == 0 {
            CaseTag::Binomial
        } else if d < 2 * k {
            CaseTag::DLessThan2k
        } else {
            CaseTag::DAtLeast2k
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Binomial => "binomial",
            CaseTag::DLessThan2k => "d<2k",
            CaseTag::DAtLeast2k => "d>=2k",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of rows of the presentation matrix.
pub fn rho(d: usize, k: usize) -> usize {
    if k == 0 {
        d
    } else if d <= 2 * k {
        k
    } else {
        d - k
    }
}

/// Everything the constructions need about one point set.
#[derive(Clone, Debug)]
pub struct CaseData {
    pub s: usize,
    pub d: usize,
    pub k: usize,
    pub tag: CaseTag,
    /// The presentation matrix with rows and columns in block order.
    pub l: PresentationMatrix,
    /// `F_j`, the signed maximal minors of degree `d`.
    pub f: Vec<Polynomial>,
    /// `G_l`, the signed maximal minors of degree `d + 1` (only when `d < 2k`).
    pub g: Vec<Polynomial>,
    pub points_ideal: Ideal,
}

impl CaseData {
    /// Computes the presentation matrix of `I_X` and lays it out in block
    /// form. Point sets whose matrix does not have the expected block shape
    /// are rejected with [`Error::Degenerate`].
    pub fn from_points(x: &PointSet, budget: &Budget) -> Result<CaseData> {
        let ideal = points_ideal(x);
        let l = presentation_matrix(&ideal, budget)?;
        Self::from_presentation(x.len(), ideal, l)
    }

    pub fn from_presentation(s: usize, points_ideal: Ideal, l: PresentationMatrix) -> Result<CaseData> {
        let (d, k) = split_s(s);
        let tag = CaseTag::of(d, k);
        let d32 = d as u32;
        let shape_error = |what: &str| {
            Error::Degenerate(format!(
                "presentation {} with row degrees {:?} and column degrees {:?} does not have the {tag} block shape: {what}",
                l.shape(),
                l.row_degrees(),
                l.col_degrees()
            ))
        };
        let rho = rho(d, k);
        if l.rows() != rho || l.cols() != rho + 1 {
            return Err(shape_error(&format!("expected {rho}x{}", rho + 1)));
        }
        let count = |degs: &[u32], v: u32| degs.iter().filter(|&&x| x == v).count();
        let (n_lin_cols, n_quad_cols) = match tag {
            CaseTag::Binomial => (0, d + 1),
            CaseTag::DLessThan2k => (2 * k - d, d - k + 1),
            CaseTag::DAtLeast2k => (0, d - k + 1),
        };
        // columns: generators of degree d + 1 (G block) first, then degree d (F block)
        if count(l.col_degrees(), d32 + 1) != n_lin_cols || count(l.col_degrees(), d32) != n_quad_cols {
            return Err(shape_error(&format!("expected {n_quad_cols} generators of degree {d} and {n_lin_cols} of degree {}", d + 1)));
        }
        let col_order: Vec<usize> = (0..l.cols())
            .filter(|&c| l.col_degrees()[c] == d32 + 1)
            .chain((0..l.cols()).filter(|&c| l.col_degrees()[c] == d32))
            .collect();
        // rows: degree d + 2 (quadric) first, then degree d + 1 (linear)
        let (n_quad_rows, n_lin_rows) = match tag {
            CaseTag::Binomial => (0, d),
            CaseTag::DLessThan2k => (k, 0),
            CaseTag::DAtLeast2k => (k, d - 2 * k),
        };
        if count(l.row_degrees(), d32 + 2) != n_quad_rows || count(l.row_degrees(), d32 + 1) != n_lin_rows {
            return Err(shape_error(&format!("expected {n_quad_rows} syzygies of degree {} and {n_lin_rows} of degree {}", d + 2, d + 1)));
        }
        let row_order: Vec<usize> = (0..l.rows())
            .filter(|&r| l.row_degrees()[r] == d32 + 2)
            .chain((0..l.rows()).filter(|&r| l.row_degrees()[r] == d32 + 1))
            .collect();
        let l = l.with_col_order(&col_order)?.with_row_order(&row_order)?;
        let minors = l.signed_minors()?;
        let g = minors[..n_lin_cols].to_vec();
        let f = minors[n_lin_cols..].to_vec();
        if f.iter().chain(&g).any(Polynomial::is_zero) {
            return Err(Error::Degenerate("a maximal minor of the presentation matrix vanishes".into()));
        }
        Ok(CaseData { s, d, k, tag, l, f, g, points_ideal })
    }

    pub fn rho(&self) -> usize {
        self.l.rows()
    }

    /// Number of linear columns, `2k - d` when `d < 2k` and 0 otherwise.
    pub fn linear_cols(&self) -> usize {
        self.g.len()
    }

    /// Rows with quadric entries: the first `k`.
    pub fn quadric_rows(&self) -> std::ops::Range<usize> {
        match self.tag {
            CaseTag::Binomial => 0..0,
            _ => 0..self.k,
        }
    }

    /// Rows of linear forms against the `F` block.
    pub fn linear_rows(&self) -> std::ops::Range<usize> {
        match self.tag {
            CaseTag::Binomial => 0..self.d,
            CaseTag::DLessThan2k => self.k..self.k,
            CaseTag::DAtLeast2k => self.k..self.rho(),
        }
    }

    /// `k[w1..w3, x_ij, y_l]` for this case, optionally with `t`.
    pub fn rees_ring(&self, with_t: bool) -> Arc<Ring> {
        Ring::rees(self.points_ideal.ring().field(), self.f.len(), self.g.len(), with_t)
    }

    /// The generators `w_i F_j` (column-major) then `G_l` of `I_{d+1}`.
    pub fn degree_d1_generators(&self) -> Vec<Polynomial> {
        let plane = self.points_ideal.ring();
        let mut out = Vec::with_capacity(3 * self.f.len() + self.g.len());
        for fj in &self.f {
            for i in 0..3 {
                out.push(&Polynomial::var(plane, i) * fj);
            }
        }
        out.extend(self.g.iter().cloned());
        out
    }

    /// Images of the variables of [`CaseData::rees_ring`] (without `t`) under
    /// `w_i -> w_i`, `x_ij -> w_i F_j`, `y_l -> G_l`.
    pub fn graph_images(&self) -> Vec<Polynomial> {
        let plane = self.points_ideal.ring();
        let mut images: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(plane, i)).collect();
        images.extend(self.degree_d1_generators());
        images
    }
}
