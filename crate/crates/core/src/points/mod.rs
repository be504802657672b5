//! Finite point sets in the projective plane and the graded pieces of their ideals.

mod hilbert;
mod random;

use std::fmt;

use serde::Serialize;

pub use hilbert::{
    evaluation_matrix, genericity_report, graded_piece, hilbert_data, max_collinear, plane_monomials, points_ideal,
    split_s, GenericityReport, GradedPiece, HilbertData,
};
pub use random::{random_points, Constraints};

use crate::arith::{Field, Scalar};
use crate::error::{Error, Result};

/// Where a point set came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Explicit { name: Option<String> },
    Random { seed: u64, retries: u32 },
}

/// Distinct points of the projective plane, each normalized so that its
/// first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: Field,
    points: Vec<[Scalar; 3]>,
    provenance: Provenance,
}

fn normalize(p: [Scalar; 3]) -> Result<[Scalar; 3]> {
    let lead = p.iter().find(|c| !c.is_zero()).ok_or_else(|| Error::Degenerate("the zero vector is not a point".into()))?;
    let inv = lead.inv()?;
    Ok([&p[0] * &inv, &p[1] * &inv, &p[2] * &inv])
}

impl PointSet {
    pub fn new(field: Field, points: Vec<[Scalar; 3]>, provenance: Provenance) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Invalid("a point set needs at least one point".into()));
        }
        let mut out: Vec<[Scalar; 3]> = Vec::with_capacity(points.len());
        for p in points {
            if p.iter().any(|c| c.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), p[0].field().to_string()));
            }
            let p = normalize(p)?;
            if out.contains(&p) {
                return Err(Error::Invalid(format!("repeated point {}", fmt_point(&p))));
            }
            out.push(p);
        }
        Ok(PointSet { field, points: out, provenance })
    }

    pub fn from_integers(field: Field, points: &[[i64; 3]], provenance: Provenance) -> Result<Self> {
        let pts = points.iter().map(|p| [field.from_i64(p[0]), field.from_i64(p[1]), field.from_i64(p[2])]).collect();
        Self::new(field, pts, provenance)
    }

    /// `[1:0:0], [0:1:0], [0:0:1]`.
    pub fn coordinate_triangle(field: Field) -> Self {
        Self::named(field, "coordinate-triangle", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    /// The standard frame: the coordinate points and `[1:1:1]`.
    pub fn frame4(field: Field) -> Self {
        Self::named(field, "frame-4", &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    }

    /// Four points, exactly three of them on the line `w3 = 0`.
    pub fn three_collinear(field: Field) -> Self {
        Self::named(field, "three-collinear", &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])
    }

    fn named(field: Field, name: &str, pts: &[[i64; 3]]) -> Self {
        Self::from_integers(field, pts, Provenance::Explicit { name: Some(name.into()) }).expect("built-in point set is valid")
    }

    /// Looks up a built-in instance by name.
    pub fn by_name(name: &str, field: Field) -> Result<Self> {
        match name {
            "coordinate-triangle" => Ok(Self::coordinate_triangle(field)),
            "frame-4" => Ok(Self::frame4(field)),
            "three-collinear" => Ok(Self::three_collinear(field)),
            other => Err(Error::Invalid(format!(
                "unknown point set `{other}` (built-ins: coordinate-triangle, frame-4, three-collinear)"
            ))),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn points(&self) -> &[[Scalar; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Parses the point-file format: a header line `Q` or `F p`, then one point
    /// per line with comma-separated integer or fraction coordinates. Blank
    /// lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse { pos: 0, msg: "missing field header".into() })?;
        let field = Field::parse(header)?;
        let mut pts = Vec::new();
        for line in lines {
            let coords: Vec<&str> = line.split(',').collect();
            if coords.len() != 3 {
                return Err(Error::Parse { pos: 0, msg: format!("expected 3 coordinates in `{line}`") });
            }
            pts.push([field.parse_scalar(coords[0])?, field.parse_scalar(coords[1])?, field.parse_scalar(coords[2])?]);
        }
        Self::new(field, pts, Provenance::Explicit { name: None })
    }

    /// Points as strings `[a:b:c]`.
    pub fn point_strings(&self) -> Vec<String> {
        self.points.iter().map(fmt_point).collect()
    }
}

fn fmt_point(p: &[Scalar; 3]) -> String {
    format!("[{}:{}:{}]", p[0], p[1], p[2])
}

/// The point-file format accepted by [`PointSet::parse`].
impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.field)?;
        for p in &self.points {
            writeln!(f, "{},{},{}", p[0], p[1], p[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
