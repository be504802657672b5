//! Sparse exact matrices and row reduction.

use std::collections::{BTreeMap, HashMap};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        ExactMatrix { rows, cols, field, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    pub fn from_dense(field: Field, rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone())?;
            }
        }
        Ok(m)
    }

    pub fn from_sparse_rows(field: Field, cols: usize, rows: &[SparseRow]) -> Self {
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row {
                debug_assert!(*j < cols);
                if !v.is_zero() {
                    m.entries.insert((i, *j), v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::Shape(format!("index ({r}, {c}) outside {}x{}", self.rows, self.cols)));
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), v.field().to_string()));
        }
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn sparse_rows(&self) -> Vec<SparseRow> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].push((c, v.clone()));
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            out[r] = &out[r] + &(a * &v[c]);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows, self.field);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((c, r), v.clone());
        }
        m
    }
}

/// Result of exact row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    /// Pivot column of each row of `reduced`, increasing.
    pub pivots: Vec<usize>,
    /// The nonzero rows of the reduced row echelon form.
    pub reduced: ExactMatrix,
    /// Basis of the right nullspace, one vector per free column (in column order).
    pub nullspace: Vec<Vec<Scalar>>,
}

pub fn rref(m: &ExactMatrix) -> Rref {
    let mut ech = Echelon::new(m.field(), m.cols());
    for row in m.sparse_rows() {
        ech.insert(row);
    }
    let reduced_rows = ech.reduced_rows();
    let pivots: Vec<usize> = reduced_rows.iter().map(|r| r[0].0).collect();
    let pivot_set: HashMap<usize, usize> = pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let field = m.field();
    let mut nullspace = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivot_set.contains_key(c)) {
        let mut v = vec![field.zero(); m.cols()];
        v[free] = field.one();
        for row in &reduced_rows {
            if let Ok(pos) = row.binary_search_by_key(&free, |e| e.0) {
                v[row[0].0] = row[pos].1.neg();
            }
        }
        nullspace.push(v);
    }
    Rref {
        rank: reduced_rows.len(),
        reduced: ExactMatrix::from_sparse_rows(field, m.cols(), &reduced_rows),
        pivots,
        nullspace,
    }
}

pub fn rank(m: &ExactMatrix) -> usize {
    rank_of_rows(m.field(), m.cols(), m.sparse_rows())
}

pub fn rank_of_rows(field: Field, cols: usize, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut ech = Echelon::new(field, cols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// `a - c * b` on sparse rows.
pub fn axpy_row(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, (&b[j].1 * c).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub_mul(c, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row echelon basis of a row space.
///
/// Rows are stored monic with pairwise distinct leading columns. Only
/// leading entries are eliminated on insertion; `reduced_rows` finishes the
/// back substitution.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    rows: Vec<SparseRow>,
    lead: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field, cols: usize) -> Self {
        Echelon { field, cols, rows: Vec::new(), lead: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Reduces `row` until its leading column is not a pivot column.
    pub fn top_reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((c, v)) = row.first() {
            match self.lead.get(c) {
                Some(&k) => {
                    let v = v.clone();
                    row = axpy_row(&row, &v, &self.rows[k]);
                }
                None => break,
            }
        }
        row
    }

    /// Whether `row` lies in the span.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.top_reduce(row).is_empty()
    }

    /// Adds `row`; returns false when it was already in the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.top_reduce(row);
        if row.is_empty() {
            return false;
        }
        let inv = row[0].1.inv().expect("leading entry nonzero");
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.lead.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.lead.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Rows of the reduced row echelon form, sorted by pivot column.
    pub fn reduced_rows(&self) -> Vec<SparseRow> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.rows[k][0].0);
        let mut done: HashMap<usize, SparseRow> = HashMap::new();
        let mut out: Vec<SparseRow> = vec![Vec::new(); order.len()];
        for (slot, &k) in order.iter().enumerate().rev() {
            let mut row = self.rows[k].clone();
            let mut idx = 1;
            while idx < row.len() {
                let c = row[idx].0;
                if let Some(r) = done.get(&c) {
                    let v = row[idx].1.clone();
                    row = axpy_row(&row, &v, r);
                } else {
                    idx += 1;
                }
            }
            done.insert(row[0].0, row.clone());
            out[slot] = row;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: Field, rows: &[&[i64]]) -> ExactMatrix {
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        ExactMatrix::from_dense(field, &dense).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let r = rref(&ExactMatrix::identity(3, Field::Rational));
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert!(r.nullspace.is_empty());
    }

    #[test]
    fn zero_matrix_nullspace() {
        let r = rref(&ExactMatrix::zeros(2, 3, Field::Rational));
        assert_eq!(r.rank, 0);
        assert_eq!(r.nullspace.len(), 3);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Field::Rational;
        let m = mat(f, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        for v in &r.nullspace {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        assert_eq!(r.rank + r.nullspace.len(), 4);
        // reduced form rows: (1 0 1 4), (0 1 1 0)
        assert_eq!(r.reduced.get(0, 2), f.one());
        assert_eq!(r.reduced.get(0, 3), f.from_i64(4));
    }

    #[test]
    fn rref_of_rref_keeps_pivots() {
        let f = Field::prime(7).unwrap();
        let m = mat(f, &[&[0, 3, 1, 5], &[2, 1, 0, 0], &[2, 4, 1, 5]]);
        let r = rref(&m);
        let again = rref(&r.reduced);
        assert_eq!(r.pivots, again.pivots);
        assert_eq!(r.reduced, again.reduced);
    }

    #[test]
    fn echelon_membership() {
        let f = Field::Rational;
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(vec![(0, f.one()), (2, f.from_i64(2))]));
        assert!(e.insert(vec![(1, f.one())]));
        assert!(!e.insert(vec![(0, f.from_i64(3)), (1, f.from_i64(5)), (2, f.from_i64(6))]));
        assert!(!e.contains(vec![(2, f.one())]));
        assert_eq!(e.rank(), 2);
    }

    use proptest::prelude::*;

    fn arb_entries() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..5, c), r))
    }

    proptest! {
        #[test]
        fn small_matrices_have_equal_rank_over_q_and_mod_p(rows in arb_entries()) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let over_q = rref(&mat(Field::Rational, &refs));
            let over_p = rref(&mat(Field::prime(32003).unwrap(), &refs));
            // Hadamard's bound keeps every minor below 4096, so no minor vanishes mod p
            prop_assert_eq!(over_q.rank, over_p.rank);
            prop_assert_eq!(&over_q.pivots, &over_p.pivots);
            for r in [&over_q, &over_p] {
                prop_assert_eq!(r.rank + r.nullspace.len(), rows[0].len());
            }
        }

        #[test]
        fn rank_is_transpose_invariant(rows in arb_entries()) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = mat(Field::Rational, &refs);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }
    }
}
