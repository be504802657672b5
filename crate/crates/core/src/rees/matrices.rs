//! The symbolic matrices `M`, `X`, `B`, the linear relations and the
//! predicted generator sets of Rees ideals.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::case::{CaseData, CaseTag};
use super::tensors::CoefficientTensors;
use crate::arith::{rank_of_rows, SparseRow};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{minors, Polynomial, Ring};

/// A matrix of polynomials in `k[w, x, y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolMatrix {
    ring: Arc<Ring>,
    entries: Vec<Vec<Polynomial>>,
}

impl SymbolMatrix {
    pub fn new(ring: &Arc<Ring>, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix".into()));
        }
        Ok(SymbolMatrix { ring: ring.clone(), entries })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    pub fn minors(&self, size: usize) -> Vec<(Vec<usize>, Vec<usize>, Polynomial)> {
        minors(&self.ring, &self.entries, size)
    }

    pub fn mul(&self, other: &SymbolMatrix) -> Result<SymbolMatrix> {
        if self.cols() != other.rows() {
            return Err(Error::Shape(format!("cannot multiply {:?} by {:?}", self.shape(), other.shape())));
        }
        let entries = (0..self.rows())
            .map(|r| {
                (0..other.cols())
                    .map(|c| {
                        (0..self.cols()).fold(Polynomial::zero(&self.ring), |acc, k| &acc + &(&self.entries[r][k] * &other.entries[k][c]))
                    })
                    .collect()
            })
            .collect();
        SymbolMatrix::new(&self.ring, entries)
    }
}

impl fmt::Display for SymbolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[ {} ]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Where a predicted generator comes from. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSource {
    /// 2x2 minor of `M` (binomial case) or of `X`; column 1 is the `w`-column.
    MinorOfX { rows: Vec<usize>, cols: Vec<usize> },
    /// 3x3 minor of `B`.
    MinorOfB { rows: Vec<usize> },
    /// Entry `(u, v)` of `B X`.
    EntryOfBx { row: usize, col: usize },
    /// Linear relation from row `row` of the linear block of `L`.
    LinearRelation { row: usize },
}

impl GeneratorSource {
    pub fn label(&self) -> &'static str {
        match self {
            GeneratorSource::MinorOfX { .. } => "minor-of-x",
            GeneratorSource::MinorOfB { .. } => "minor-of-b",
            GeneratorSource::EntryOfBx { .. } => "entry-of-bx",
            GeneratorSource::LinearRelation { .. } => "linear-relation",
        }
    }

    /// Minors of `X` using the `w`-column.
    pub fn involves_w_column(&self) -> bool {
        matches!(self, GeneratorSource::MinorOfX { cols, .. } if cols.contains(&1))
    }
}

/// Generators with their provenance.
#[derive(Clone, Debug)]
pub struct LabeledGenerators {
    pub ring: Arc<Ring>,
    pub items: Vec<(GeneratorSource, Polynomial)>,
}

impl LabeledGenerators {
    pub fn polys(&self) -> Vec<Polynomial> {
        self.items.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.polys())
    }

    /// Generator counts per provenance label, zero polynomials included.
    pub fn counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for (src, _) in &self.items {
            *out.entry(src.label().to_string()).or_insert(0) += 1;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn x_var(ring: &Arc<Ring>, i: usize, j: usize) -> Polynomial {
    Polynomial::var(ring, 3 + 3 * j + i)
}

/// `[w | x_{.1} ... x_{.n}]` with `n = #F`: `M` in the binomial case, `X` otherwise.
pub fn build_x(case: &CaseData) -> SymbolMatrix {
    let ring = case.rees_ring(false);
    let entries = (0..3)
        .map(|i| {
            std::iter::once(Polynomial::var(&ring, i)).chain((0..case.f.len()).map(|j| x_var(&ring, i, j))).collect()
        })
        .collect();
    SymbolMatrix::new(&ring, entries).expect("rectangular")
}

/// The `3 x (d+2)` matrix `M` of the binomial case.
pub fn build_m(case: &CaseData) -> Result<SymbolMatrix> {
    if case.tag != CaseTag::Binomial {
        return Err(Error::Invalid(format!("M is defined for the binomial case only, not {}", case.tag)));
    }
    Ok(build_x(case))
}

/// `sum_j sum_i lambda[l][j][i] x_ij`, one per row of the linear block.
///
/// Fails with [`Error::Degenerate`] when the forms are linearly dependent,
/// and with [`Error::Invalid`] if one does not vanish under `x_ij -> w_i F_j`.
pub fn linear_relations(tensors: &CoefficientTensors, case: &CaseData) -> Result<Vec<Polynomial>> {
    let ring = case.rees_ring(false);
    let field = ring.field();
    let offset = case.linear_cols();
    let mut forms = Vec::new();
    for r in case.linear_rows() {
        let terms = tensors
            .lambda
            .range((r, 0, 0)..(r + 1, 0, 0))
            .map(|(&(_, c, i), v)| (x_var(&ring, i, c - offset).terms()[0].0.clone(), v.clone()));
        forms.push(Polynomial::from_terms(&ring, terms));
    }
    let rows = forms.iter().map(|f| {
        let mut row: SparseRow = f.terms().iter().map(|(m, v)| (m.exps().iter().position(|&e| e > 0).expect("linear"), v.clone())).collect();
        row.sort_by_key(|e| e.0);
        row
    });
    if rank_of_rows(field, ring.nvars(), rows) != forms.len() {
        return Err(Error::Degenerate("the linear relations are linearly dependent".into()));
    }
    let images = case.graph_images();
    for f in &forms {
        if !f.substitute(&images)?.is_zero() {
            return Err(Error::Invalid(format!("linear relation {f} does not vanish on the generators")));
        }
    }
    Ok(forms)
}

/// The `k x 3` matrix `B` with
/// `b_ui = sum_l lambda[u][l][i] y_l + sum_j sum_h gamma[u][i][h][j] x_hj`.
pub fn build_b(tensors: &CoefficientTensors, case: &CaseData) -> Result<SymbolMatrix> {
    if case.k == 0 {
        return Err(Error::Invalid("B needs k >= 1".into()));
    }
    let ring = case.rees_ring(false);
    let nlin = case.linear_cols();
    let y0 = 3 + 3 * case.f.len();
    let mut entries = Vec::new();
    for u in case.quadric_rows() {
        let mut row = Vec::with_capacity(3);
        for i in 0..3 {
            let mut b = Polynomial::zero(&ring);
            for l in 0..nlin {
                if let Some(v) = tensors.lambda(u, l, i) {
                    b = &b + &Polynomial::var(&ring, y0 + l).scale(v);
                }
            }
            for j in 0..case.f.len() {
                for h in 0..3 {
                    if let Some(v) = tensors.gamma(u, i, h, nlin + j) {
                        b = &b + &x_var(&ring, h, j).scale(v);
                    }
                }
            }
            row.push(b);
        }
        entries.push(row);
    }
    SymbolMatrix::new(&ring, entries)
}

/// `J`: 3x3 minors of `B`, 2x2 minors of `X` and the entries of `B X`.
pub fn build_j(b: Option<&SymbolMatrix>, x: &SymbolMatrix) -> Result<LabeledGenerators> {
    if x.rows() != 3 {
        return Err(Error::Shape(format!("X must have 3 rows, not {}", x.rows())));
    }
    if let Some(b) = b {
        if b.cols() != 3 {
            return Err(Error::Shape(format!("B must have 3 columns, not {}", b.cols())));
        }
    }
    let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
    let mut items = Vec::new();
    if let Some(b) = b {
        for (rows, _, p) in b.minors(3) {
            items.push((GeneratorSource::MinorOfB { rows: one_based(&rows) }, p));
        }
    }
    for (rows, cols, p) in x.minors(2) {
        items.push((GeneratorSource::MinorOfX { rows: one_based(&rows), cols: one_based(&cols) }, p));
    }
    if let Some(b) = b {
        let bx = b.mul(x)?;
        for (u, row) in bx.entries().iter().enumerate() {
            for (v, p) in row.iter().enumerate() {
                items.push((GeneratorSource::EntryOfBx { row: u + 1, col: v + 1 }, p.clone()));
            }
        }
    }
    Ok(LabeledGenerators { ring: x.ring().clone(), items })
}

/// The predicted generators of the Rees ideal of `I_{d+1}`: minors of `M` and
/// the linear relations (binomial), `J` (`d < 2k`), or `J` and the linear
/// relations (`d >= 2k`).
pub fn theorem_generators(case: &CaseData, tensors: &CoefficientTensors) -> Result<LabeledGenerators> {
    let x = build_x(case);
    let b = if case.k > 0 { Some(build_b(tensors, case)?) } else { None };
    let mut gens = build_j(b.as_ref(), &x)?;
    for (r, f) in linear_relations(tensors, case)?.into_iter().enumerate() {
        gens.items.push((GeneratorSource::LinearRelation { row: r + 1 }, f));
    }
    Ok(gens)
}
