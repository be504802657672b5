//! Minimal homogeneous generators and first syzygies by graded linear algebra.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{rref, Echelon, ExactMatrix, SparseRow};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::engine::{GbState, Weights};
use crate::groebner::{ideal_equal, Ideal};
use crate::poly::{signed_maximal_minors, Monomial, MonomialOrder, Polynomial, Ring};

fn degree_of(f: &Polynomial) -> Result<u32> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{f}")));
    }
    Ok(f.degree().expect("nonzero generator"))
}

/// Indices into `gens` of a minimal generating subset, chosen greedily degree
/// by degree: a candidate is kept when it is not in the ideal generated by the
/// generators kept so far.
pub(crate) fn minimal_subset(gens: &[Polynomial], bound: Option<u32>, budget: &Budget) -> Result<Vec<usize>> {
    let mut by_degree: Vec<(u32, usize)> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        by_degree.push((degree_of(g)?, i));
    }
    by_degree.sort();
    if let (Some(b), Some(&(top, _))) = (bound, by_degree.last()) {
        if top > b {
            return Err(Error::BoundExceeded { bound: b, what: format!("a generator of degree {top}") });
        }
    }
    let mut st = GbState::new(MonomialOrder::GrevLex, Weights::new(None));
    let mut kept = Vec::new();
    for &(deg, i) in &by_degree {
        st.run(Some(deg), budget)?;
        if !st.normal_form(gens[i].terms().to_vec(), budget)?.is_empty() {
            kept.push(i);
            st.add_generator(gens[i].terms().to_vec());
        }
    }
    Ok(kept)
}

/// A minimal homogeneous generating set as `(degree, generator)`, sorted by
/// degree and otherwise in input order. Fails when a generator exceeds `bound`.
pub fn minimal_generators(ideal: &Ideal, bound: Option<u32>, budget: &Budget) -> Result<Vec<(u32, Polynomial)>> {
    let gens = ideal.gens();
    let kept = minimal_subset(gens, bound, budget)?;
    Ok(kept.into_iter().map(|i| (gens[i].degree().expect("nonzero"), gens[i].clone())).collect())
}

/// First-syzygy matrix of a minimal generating set.
///
/// Row `r` is a syzygy of degree `row_degrees[r]`: `sum_c entries[r][c] * generators[c] = 0`.
/// Entry `(r, c)` is zero or homogeneous of degree `row_degrees[r] - col_degrees[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMatrix {
    ring: Arc<Ring>,
    entries: Vec<Vec<Polynomial>>,
    row_degrees: Vec<u32>,
    col_degrees: Vec<u32>,
    generators: Vec<Polynomial>,
}

impl PresentationMatrix {
    /// Checks shapes and entry degrees against the labels.
    pub fn new(
        ring: &Arc<Ring>,
        entries: Vec<Vec<Polynomial>>,
        row_degrees: Vec<u32>,
        col_degrees: Vec<u32>,
        generators: Vec<Polynomial>,
    ) -> Result<Self> {
        if entries.len() != row_degrees.len() || entries.iter().any(|r| r.len() != col_degrees.len()) {
            return Err(Error::Shape("entries do not match the degree labels".into()));
        }
        if !generators.is_empty() && generators.len() != col_degrees.len() {
            return Err(Error::Shape("one generator per column expected".into()));
        }
        for (r, row) in entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let want = row_degrees[r].checked_sub(col_degrees[c]);
                if !e.is_homogeneous() || e.degree() != want {
                    return Err(Error::Shape(format!("entry ({r}, {c}) = {e} has the wrong degree")));
                }
            }
        }
        Ok(PresentationMatrix { ring: ring.clone(), entries, row_degrees, col_degrees, generators })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    pub fn row_degrees(&self) -> &[u32] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[u32] {
        &self.col_degrees
    }

    /// The generators the columns refer to (empty when built without them).
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Degree that entry `(r, c)` carries, zero or not.
    pub fn entry_degree(&self, r: usize, c: usize) -> Option<u32> {
        self.row_degrees[r].checked_sub(self.col_degrees[c])
    }

    pub fn is_hilbert_burch_shape(&self) -> bool {
        self.cols() == self.rows() + 1
    }

    /// Signed maximal minors `(-1)^(c+1) det(L without column c)`, one per column.
    pub fn signed_minors(&self) -> Result<Vec<Polynomial>> {
        if !self.is_hilbert_burch_shape() {
            return Err(Error::Shape(format!("{}x{} is not of shape r x (r+1)", self.rows(), self.cols())));
        }
        Ok(signed_maximal_minors(&self.ring, &self.entries))
    }

    /// Same matrix with rows permuted: row `k` of the result is row `order[k]`.
    pub fn with_row_order(&self, order: &[usize]) -> Result<Self> {
        let mut seen = order.to_vec();
        seen.sort_unstable();
        if seen != (0..self.rows()).collect::<Vec<_>>() {
            return Err(Error::Shape("not a permutation of the rows".into()));
        }
        Ok(PresentationMatrix {
            ring: self.ring.clone(),
            entries: order.iter().map(|&r| self.entries[r].clone()).collect(),
            row_degrees: order.iter().map(|&r| self.row_degrees[r]).collect(),
            col_degrees: self.col_degrees.clone(),
            generators: self.generators.clone(),
        })
    }

    /// Same matrix with columns (and generators) permuted.
    pub fn with_col_order(&self, order: &[usize]) -> Result<Self> {
        let mut seen = order.to_vec();
        seen.sort_unstable();
        if seen != (0..self.cols()).collect::<Vec<_>>() {
            return Err(Error::Shape("not a permutation of the columns".into()));
        }
        Ok(PresentationMatrix {
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|row| order.iter().map(|&c| row[c].clone()).collect()).collect(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: order.iter().map(|&c| self.col_degrees[c]).collect(),
            generators: if self.generators.is_empty() {
                Vec::new()
            } else {
                order.iter().map(|&c| self.generators[c].clone()).collect()
            },
        })
    }

    /// Checks `L * (generators)^T = 0`.
    pub fn annihilates_generators(&self) -> bool {
        self.entries.iter().all(|row| {
            let mut acc = Polynomial::zero(&self.ring);
            for (e, g) in row.iter().zip(&self.generators) {
                acc = &acc + &(e * g);
            }
            acc.is_zero()
        })
    }

    /// `"2x3"` style shape label.
    pub fn shape(&self) -> String {
        format!("{}x{}", self.rows(), self.cols())
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[ {} ]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Shape and degree labels, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationSummary {
    pub rows: usize,
    pub cols: usize,
    pub row_degrees: Vec<u32>,
    pub col_degrees: Vec<u32>,
    pub entries: Vec<Vec<String>>,
}

impl From<&PresentationMatrix> for PresentationSummary {
    fn from(l: &PresentationMatrix) -> Self {
        PresentationSummary {
            rows: l.rows(),
            cols: l.cols(),
            row_degrees: l.row_degrees.clone(),
            col_degrees: l.col_degrees.clone(),
            entries: l.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }
}

/// Coordinates of tuples `(a_c)` with `a_c` of degree `deg - col_degrees[c]`.
struct SyzygySpace {
    offsets: Vec<usize>,
    monos: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    len: usize,
}

impl SyzygySpace {
    fn new(nvars: usize, col_degrees: &[u32], deg: u32) -> Self {
        let mut offsets = Vec::new();
        let mut monos = Vec::new();
        let mut index = Vec::new();
        let mut len = 0;
        for &cd in col_degrees {
            let ms = if deg >= cd { Monomial::all_of_degree(nvars, deg - cd) } else { Vec::new() };
            offsets.push(len);
            len += ms.len();
            index.push(ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect());
            monos.push(ms);
        }
        SyzygySpace { offsets, monos, index, len }
    }

    fn coords(&self, tuple: &[Polynomial]) -> SparseRow {
        let mut row: SparseRow = Vec::new();
        for (c, p) in tuple.iter().enumerate() {
            for (m, v) in p.terms() {
                row.push((self.offsets[c] + self.index[c][m], v.clone()));
            }
        }
        row.sort_by_key(|e| e.0);
        row
    }

    fn tuple(&self, ring: &Arc<Ring>, v: &[crate::arith::Scalar]) -> Vec<Polynomial> {
        (0..self.monos.len())
            .map(|c| {
                let start = self.offsets[c];
                Polynomial::from_terms(
                    ring,
                    self.monos[c].iter().enumerate().map(|(i, m)| (m.clone(), v[start + i].clone())).filter(|(_, x)| !x.is_zero()),
                )
            })
            .collect()
    }
}

/// Minimal first syzygies of `gens` in degrees up to `max_degree`, degree by degree.
fn minimal_syzygies(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    degrees: &[u32],
    max_degree: u32,
    budget: &Budget,
) -> Result<Vec<(u32, Vec<Polynomial>)>> {
    let n = ring.nvars();
    let field = ring.field();
    let mut found: Vec<(u32, Vec<Polynomial>)> = Vec::new();
    let start = degrees.iter().copied().min().unwrap_or(0) + 1;
    for deg in start..=max_degree {
        let space = SyzygySpace::new(n, degrees, deg);
        if space.len == 0 {
            continue;
        }
        let targets = Monomial::all_of_degree(n, deg);
        let row_of: HashMap<&Monomial, usize> = targets.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut a = ExactMatrix::zeros(targets.len(), space.len, field);
        for (c, g) in gens.iter().enumerate() {
            for (k, m) in space.monos[c].iter().enumerate() {
                for (gm, v) in g.terms() {
                    a.set(row_of[&gm.mul(m)], space.offsets[c] + k, v.clone())?;
                }
            }
        }
        budget.charge((targets.len() * space.len / 64 + 1) as u64)?;
        let kernel = rref(&a).nullspace;
        if kernel.is_empty() {
            continue;
        }
        let mut span = Echelon::new(field, space.len);
        for (sd, syz) in &found {
            for m in Monomial::all_of_degree(n, deg - sd) {
                let shifted: Vec<Polynomial> = syz.iter().map(|p| p.mul_monomial(&m)).collect();
                span.insert(space.coords(&shifted));
            }
        }
        for v in kernel {
            let tuple = space.tuple(ring, &v);
            if span.insert(space.coords(&tuple)) {
                found.push((deg, tuple));
            }
        }
    }
    Ok(found)
}

/// The minimalized first-syzygy matrix of the minimal generators of a
/// codimension-2 ideal of points, rows sorted by degree.
///
/// Syzygies are searched up to degree `2 * (max generator degree) + nvars`.
/// Fails when the number of minimal syzygies is not one less than the number
/// of minimal generators, which rules out anything but a Hilbert–Burch shape.
pub fn presentation_matrix(ideal: &Ideal, budget: &Budget) -> Result<PresentationMatrix> {
    let ring = ideal.ring();
    let gens: Vec<Polynomial> = minimal_generators(ideal, None, budget)?.into_iter().map(|(_, g)| g).collect();
    if gens.is_empty() {
        return Err(Error::Invalid("the zero ideal has no presentation".into()));
    }
    if gens.iter().any(|g| g.degree() == Some(0)) {
        return Err(Error::Invalid("the unit ideal has no presentation".into()));
    }
    let degrees: Vec<u32> = gens.iter().map(|g| g.degree().expect("nonzero")).collect();
    let cap = 2 * degrees.iter().copied().max().expect("nonempty") + ring.nvars() as u32;
    let syz = minimal_syzygies(ring, &gens, &degrees, cap, budget)?;
    if syz.len() + 1 != gens.len() {
        return Err(Error::Invalid(format!(
            "{} minimal generators but {} minimal syzygies up to degree {cap}: not the ideal of a point set",
            gens.len(),
            syz.len()
        )));
    }
    let (row_degrees, entries): (Vec<u32>, Vec<Vec<Polynomial>>) = syz.into_iter().unzip();
    PresentationMatrix::new(ring, entries, row_degrees, degrees, gens)
}

/// Whether `l` has shape `r x (r+1)` and its signed maximal minors generate `ideal`.
pub fn hilbert_burch_check(ideal: &Ideal, l: &PresentationMatrix, budget: &Budget) -> Result<bool> {
    if !l.is_hilbert_burch_shape() {
        return Ok(false);
    }
    let minors = l.signed_minors()?;
    let generated = Ideal::new(ideal.ring(), minors)?;
    if generated.is_zero() {
        return Ok(ideal.is_zero());
    }
    ideal_equal(ideal, &generated, &MonomialOrder::GrevLex, budget)
}
