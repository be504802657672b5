use std::sync::Arc;

use serde::Serialize;

use super::PointSet;
use crate::arith::{rank, rref, ExactMatrix, Scalar};
use crate::groebner::Ideal;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Degree-`t` monomials in `w1, w2, w3`, descending in grevlex.
pub fn plane_monomials(t: u32) -> Vec<Monomial> {
    let mut ms = Monomial::all_of_degree(3, t);
    ms.sort_by(|a, b| MonomialOrder::GrevLex.compare(b, a));
    ms
}

fn eval_monomial(m: &Monomial, p: &[Scalar; 3]) -> Scalar {
    let mut v = p[0].field().one();
    for (i, &e) in m.exps().iter().enumerate() {
        for _ in 0..e {
            v = &v * &p[i];
        }
    }
    v
}

/// Rows are points, columns the degree-`t` monomials of [`plane_monomials`].
pub fn evaluation_matrix(x: &PointSet, t: u32) -> ExactMatrix {
    let monos = plane_monomials(t);
    let mut m = ExactMatrix::zeros(x.len(), monos.len(), x.field());
    for (r, p) in x.points().iter().enumerate() {
        for (c, mono) in monos.iter().enumerate() {
            m.set(r, c, eval_monomial(mono, p)).expect("entry in the point field");
        }
    }
    m
}

fn binom2(t: u32) -> usize {
    ((t + 2) * (t + 1) / 2) as usize
}

/// Hilbert function of the points up to the degree where it stabilizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// `hf[t]` for `t = 0..=sigma`; constant equal to `s` from `sigma - 1` on.
    pub hf: Vec<usize>,
    /// Least `t` with `I_t != 0`.
    pub alpha: u32,
    /// Least `t` with `HF(t) - HF(t-1) = 0`.
    pub sigma: u32,
}

impl HilbertData {
    pub fn at(&self, t: u32) -> usize {
        self.hf[(t as usize).min(self.hf.len() - 1)]
    }
}

pub fn hilbert_data(x: &PointSet) -> HilbertData {
    let s = x.len();
    let mut hf: Vec<usize> = Vec::new();
    let mut t = 0u32;
    loop {
        let h = rank(&evaluation_matrix(x, t));
        if t > 0 && h == hf[t as usize - 1] {
            hf.push(h);
            break;
        }
        hf.push(h);
        t += 1;
    }
    let sigma = t;
    assert!(sigma as usize <= s, "sigma exceeds the number of points");
    assert_eq!(hf[sigma as usize], s, "Hilbert function stabilizes at the number of points");
    let at = |t: u32| hf[(t as usize).min(hf.len() - 1)];
    let alpha = (0..).find(|&t| at(t) < binom2(t)).expect("some I_t is nonzero");
    HilbertData { hf, alpha, sigma }
}

/// A basis of the degree-`t` piece of the ideal of a point set.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    pub basis: Vec<Polynomial>,
}

/// `I_t`, read off the nullspace of the evaluation matrix.
pub fn graded_piece(x: &PointSet, t: u32) -> GradedPiece {
    graded_piece_in(&Ring::plane(x.field()), x, t)
}

pub(crate) fn graded_piece_in(ring: &Arc<Ring>, x: &PointSet, t: u32) -> GradedPiece {
    let monos = plane_monomials(t);
    let red = rref(&evaluation_matrix(x, t));
    let basis = red
        .nullspace
        .iter()
        .map(|v| Polynomial::from_terms(ring, monos.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero())))
        .collect();
    GradedPiece { degree: t, basis }
}

/// The saturated ideal of the points, generated by its pieces of degree at most sigma.
pub fn points_ideal(x: &PointSet) -> Ideal {
    let ring = Ring::plane(x.field());
    let hd = hilbert_data(x);
    let gens = (hd.alpha..=hd.sigma.max(hd.alpha)).flat_map(|t| graded_piece_in(&ring, x, t).basis).collect();
    Ideal::new(&ring, gens).expect("pieces live in the plane ring")
}

/// `(d, k)` with `s = C(d+1, 2) + k` and `0 <= k <= d`.
pub fn split_s(s: usize) -> (usize, usize) {
    let mut d = 0;
    while (d + 2) * (d + 1) / 2 <= s {
        d += 1;
    }
    (d, s - (d + 1) * d / 2)
}

fn det3(a: &[Scalar; 3], b: &[Scalar; 3], c: &[Scalar; 3]) -> Scalar {
    let m = |x: &Scalar, y: &Scalar| x * y;
    let t1 = &a[0] * &(&m(&b[1], &c[2]) - &m(&b[2], &c[1]));
    let t2 = &a[1] * &(&m(&b[0], &c[2]) - &m(&b[2], &c[0]));
    let t3 = &a[2] * &(&m(&b[0], &c[1]) - &m(&b[1], &c[0]));
    &(&t1 - &t2) + &t3
}

/// Largest number of points on one line.
pub fn max_collinear(x: &PointSet) -> usize {
    let pts = x.points();
    if pts.len() <= 2 {
        return pts.len();
    }
    let mut best = 2;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let on = pts.iter().filter(|p| det3(&pts[i], &pts[j], p).is_zero()).count();
            best = best.max(on);
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub generic_hf: bool,
    pub max_collinear: usize,
    pub d: usize,
    pub k: usize,
}

pub fn genericity_report(x: &PointSet) -> GenericityReport {
    let s = x.len();
    let hd = hilbert_data(x);
    let generic_hf = (0..=s as u32).all(|t| hd.at(t) == binom2(t).min(s));
    let (d, k) = split_s(s);
    GenericityReport { generic_hf, max_collinear: max_collinear(x), d, k }
}
