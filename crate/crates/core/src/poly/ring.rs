use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::Field;
use crate::error::{Error, Result};

/// Role of a variable in the bigraded ring `k[w, x, y]` (plus auxiliaries).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VarKind {
    /// Coordinate of the plane, bidegree (1, 0).
    W,
    /// Coordinate `x_ij` of the target projective space, bidegree (0, 1).
    X,
    /// Coordinate `y_l` paired with a generator of degree `d + 1`, bidegree (0, 1).
    Y,
    /// Elimination variable, outside the bigrading.
    T,
    /// Any other indeterminate, bidegree (0, 1).
    Other,
}

impl VarKind {
    pub fn bidegree(self) -> (u32, u32) {
        match self {
            VarKind::W => (1, 0),
            VarKind::X | VarKind::Y | VarKind::Other => (0, 1),
            VarKind::T => (0, 0),
        }
    }
}

/// Variables, their roles and the ground field of a polynomial ring.
#[derive(Clone)]
pub struct Ring {
    field: Field,
    names: Vec<String>,
    kinds: Vec<VarKind>,
    index: HashMap<String, usize>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.names == other.names && self.kinds == other.kinds
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.names.join(", "))
    }
}

/// Name of `x_{ij}` for a matrix with `cols` columns: `x12` when `cols <= 9`, else `x_1_12`.
pub fn x_name(i: usize, j: usize, cols: usize) -> String {
    if cols <= 9 {
        format!("x{i}{j}")
    } else {
        format!("x_{i}_{j}")
    }
}

impl Ring {
    pub fn new(field: Field, vars: Vec<(String, VarKind)>) -> Result<Arc<Ring>> {
        let mut index = HashMap::new();
        for (i, (name, _)) in vars.iter().enumerate() {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Invalid(format!("bad variable name `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate variable `{name}`")));
            }
        }
        let (names, kinds) = vars.into_iter().unzip();
        Ok(Arc::new(Ring { field, names, kinds, index }))
    }

    /// `k[w1, w2, w3]`.
    pub fn plane(field: Field) -> Arc<Ring> {
        Self::new(field, (1..=3).map(|i| (format!("w{i}"), VarKind::W)).collect()).expect("valid names")
    }

    /// `k[w1..w3, x_ij, y_l]` with `x` in column-major order (`x11, x21, x31, x12, ...`),
    /// optionally followed by the elimination variable `t`.
    pub fn rees(field: Field, cols: usize, ys: usize, with_t: bool) -> Arc<Ring> {
        let mut vars: Vec<(String, VarKind)> = (1..=3).map(|i| (format!("w{i}"), VarKind::W)).collect();
        for j in 1..=cols {
            for i in 1..=3 {
                vars.push((x_name(i, j, cols), VarKind::X));
            }
        }
        for l in 1..=ys {
            vars.push((format!("y{l}"), VarKind::Y));
        }
        if with_t {
            vars.push(("t".to_string(), VarKind::T));
        }
        Self::new(field, vars).expect("valid names")
    }

    /// `k[w1..w3, x0..x{n-1}]` (plus `t`), for a linear system without column structure.
    pub fn rees_flat(field: Field, n: usize, with_t: bool) -> Arc<Ring> {
        let mut vars: Vec<(String, VarKind)> = (1..=3).map(|i| (format!("w{i}"), VarKind::W)).collect();
        for j in 0..n {
            vars.push((format!("x{j}"), VarKind::X));
        }
        if with_t {
            vars.push(("t".to_string(), VarKind::T));
        }
        Self::new(field, vars).expect("valid names")
    }

    /// Polynomial ring on the entries `z_ij` of a generic `rows x cols` matrix.
    pub fn generic_matrix(field: Field, rows: usize, cols: usize) -> Arc<Ring> {
        let mut vars = Vec::new();
        for i in 1..=rows {
            for j in 1..=cols {
                let name = if rows <= 9 && cols <= 9 { format!("z{i}{j}") } else { format!("z_{i}_{j}") };
                vars.push((name, VarKind::Other));
            }
        }
        Self::new(field, vars).expect("valid names")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vars_of_kind(&self, kind: VarKind) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.kinds[i] == kind).collect()
    }

    /// Same variables and field minus the ones in `drop`; returns the new ring and
    /// the old-to-new index map.
    pub fn without(&self, drop: &[usize]) -> (Arc<Ring>, Vec<Option<usize>>) {
        let mut map = vec![None; self.nvars()];
        let mut vars = Vec::new();
        for (i, slot) in map.iter_mut().enumerate() {
            if !drop.contains(&i) {
                *slot = Some(vars.len());
                vars.push((self.names[i].clone(), self.kinds[i]));
            }
        }
        (Ring::new(self.field, vars).expect("subset of valid ring"), map)
    }

    /// Same variables over another field.
    pub fn with_field(&self, field: Field) -> Arc<Ring> {
        Arc::new(Ring { field, ..self.clone() })
    }

    /// Appends `extra` variables.
    pub fn extended(&self, extra: Vec<(String, VarKind)>) -> Result<Arc<Ring>> {
        let mut vars: Vec<(String, VarKind)> =
            self.names.iter().cloned().zip(self.kinds.iter().copied()).collect();
        vars.extend(extra);
        Ring::new(self.field, vars)
    }
}

pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
