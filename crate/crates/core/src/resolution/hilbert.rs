//! Hilbert series of homogeneous ideals from their initial monomial ideals.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Monomial, MonomialOrder};

/// Integer polynomials in `z`, lowest degree first.
pub(crate) mod series {
    pub fn trim(mut p: Vec<i64>) -> Vec<i64> {
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, v) in a.iter().enumerate() {
            out[i] += v;
        }
        for (i, v) in b.iter().enumerate() {
            out[i] += v;
        }
        trim(out)
    }

    pub fn shift(a: &[i64], by: usize) -> Vec<i64> {
        let mut out = vec![0; by];
        out.extend_from_slice(a);
        trim(out)
    }

    pub fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// `1 - z^d`.
    pub fn one_minus_power(d: usize) -> Vec<i64> {
        let mut p = vec![0; d + 1];
        p[0] += 1;
        p[d] -= 1;
        trim(p)
    }

    pub fn eval_at_one(a: &[i64]) -> i64 {
        a.iter().sum()
    }

    /// Exact division by `1 - z`; `a(1)` must vanish.
    pub fn div_one_minus_z(a: &[i64]) -> Vec<i64> {
        // a = (1 - z) q  <=>  q_i = a_0 + ... + a_i
        let mut q = Vec::with_capacity(a.len());
        let mut acc = 0;
        for v in a.iter().take(a.len().saturating_sub(1)) {
            acc += v;
            q.push(acc);
        }
        trim(q)
    }
}

/// `HS(S/I) = numerator(z) / (1 - z)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    /// Coefficients of the numerator, lowest degree first. Empty for the unit ideal.
    pub numerator: Vec<i64>,
    /// Krull dimension of `S/I`.
    pub dim: usize,
    pub codim: usize,
    /// Numerator after cancelling `(1 - z)^codim`; its value at 1 is the degree.
    pub h_vector: Vec<i64>,
}

impl HilbertSeries {
    pub fn from_numerator(nvars: usize, numerator: Vec<i64>) -> Self {
        let numerator = series::trim(numerator);
        if numerator.is_empty() {
            return HilbertSeries { nvars, numerator, dim: 0, codim: nvars, h_vector: Vec::new() };
        }
        let mut h = numerator.clone();
        let mut codim = 0;
        while series::eval_at_one(&h) == 0 {
            h = series::div_one_minus_z(&h);
            codim += 1;
        }
        HilbertSeries { nvars, numerator, dim: nvars - codim, codim, h_vector: h }
    }

    /// Multiplicity of `S/I`.
    pub fn degree(&self) -> i64 {
        series::eval_at_one(&self.h_vector)
    }

    /// `dim_k (S/I)_t`.
    pub fn value(&self, t: u32) -> i64 {
        // coefficient of z^t in h(z) / (1 - z)^dim
        let t = t as i64;
        let dim = self.dim as i64;
        self.h_vector
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as i64) <= t)
            .map(|(i, c)| c * binomial(t - i as i64 + dim - 1, dim - 1))
            .sum()
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 {
        // only reached for dim = 0, where 1/(1-z)^0 = 1 contributes at n = -1
        return i64::from(n == -1);
    }
    if n < k {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Removes monomials divisible by another generator; sorted and deduplicated.
fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.exps().to_vec()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S / <gens>` for monomial generators.
pub fn monomial_numerator(gens: &[Monomial], budget: &Budget) -> Result<Vec<i64>> {
    numerator_rec(minimize(gens.to_vec()), budget)
}

fn numerator_rec(gens: Vec<Monomial>, budget: &Budget) -> Result<Vec<i64>> {
    budget.charge(1)?;
    if gens.is_empty() {
        return Ok(vec![1]);
    }
    if gens.iter().any(Monomial::is_one) {
        return Ok(Vec::new());
    }
    // generators sharing no variable with any other split off as factors
    let masks: Vec<u64> = gens.iter().map(Monomial::support_mask).collect();
    let mut factor = vec![1i64];
    let mut rest = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let isolated = (0..gens.len()).all(|j| j == i || (masks[i] & masks[j] == 0 || g.gcd_is_one(&gens[j])));
        if isolated {
            factor = series::mul(&factor, &series::one_minus_power(g.degree() as usize));
        } else {
            rest.push(g.clone());
        }
    }
    if rest.is_empty() {
        return Ok(factor);
    }
    // pivot on the variable occurring in the most generators
    let nvars = rest[0].len();
    let (v, _) = (0..nvars)
        .map(|v| (v, rest.iter().filter(|g| g.exp(v) > 0).count()))
        .max_by_key(|&(v, c)| (c, std::cmp::Reverse(v)))
        .expect("at least one variable");
    let e = rest.iter().map(|g| g.exp(v)).filter(|&e| e > 0).min().expect("pivot variable occurs");
    let mut pivot = Monomial::one(nvars);
    pivot.set_exp(v, e);

    let mut with_pivot = rest.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = rest.iter().map(|g| g.colon(&pivot)).collect();
    let a = numerator_rec(minimize(with_pivot), budget)?;
    let b = numerator_rec(minimize(colon), budget)?;
    Ok(series::mul(&factor, &series::add(&a, &series::shift(&b, e as usize))))
}

/// Hilbert series of `S/I` for a homogeneous ideal. Uses any cached Gröbner
/// basis: the initial ideal under every order has the same Hilbert function.
pub fn hilbert_series(ideal: &Ideal, budget: &Budget) -> Result<HilbertSeries> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous("the Hilbert series needs a homogeneous ideal".into()));
    }
    let n = ideal.ring().nvars();
    if ideal.is_zero() {
        return Ok(HilbertSeries::from_numerator(n, vec![1]));
    }
    let gb = match ideal.cached_basis(&MonomialOrder::GrevLex) {
        Some(gb) => gb,
        None => ideal.any_cached_basis().map_or_else(|| ideal.groebner_basis(&MonomialOrder::GrevLex, budget), Ok)?,
    };
    Ok(HilbertSeries::from_numerator(n, monomial_numerator(&gb.leading_monomials(), budget)?))
}
