//! Graded Betti numbers via Koszul homology.
//!
//! `beta_{i,j}(S/I) = dim_k H_i(x_1..x_n; S/I)_j`. Before the Koszul complex
//! is built, linear forms in `I` are split off and a regular sequence of
//! generic linear forms is factored out; neither step changes the Betti
//! numbers except for a Koszul factor from the linear forms, which is put
//! back at the end.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::hilbert::{hilbert_series, series, HilbertSeries};
use crate::arith::{rank_of_rows, Field, Scalar, SparseRow};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::groebner::{cut_by_last_variable, Ideal};
use crate::poly::{subsets, Monomial, MonomialOrder, Polynomial};

/// Graded Betti numbers `beta_{i,j}` of `S/I`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, u32), usize)>) -> Self {
        BettiTable { entries: entries.into_iter().filter(|e| e.1 > 0).collect() }
    }

    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries keyed by `(i, j)`.
    pub fn entries(&self) -> &BTreeMap<(usize, u32), usize> {
        &self.entries
    }

    /// `sum_j beta_{i,j}`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((a, _), _)| *a == i).map(|(_, b)| b).sum()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// `sum_{i,j} (-1)^i beta_{i,j} z^j`, which equals the Hilbert series numerator.
    pub fn euler_numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut out = vec![0i64; top + 1];
        for (&(i, j), &b) in &self.entries {
            let b = b as i64;
            out[j as usize] += if i % 2 == 0 { b } else { -b };
        }
        series::trim(out)
    }

    /// Betti table of `S/I` after adjoining `c` independent linear forms to `I`
    /// in `c` new variables: the tensor product with a Koszul complex.
    pub fn with_linear_forms(&self, c: usize) -> BettiTable {
        let mut out: BTreeMap<(usize, u32), usize> = BTreeMap::new();
        for (&(i, j), &b) in &self.entries {
            for a in 0..=c {
                *out.entry((i + a, j + a as u32)).or_default() += b * binomial(c, a);
            }
        }
        BettiTable { entries: out }
    }

    /// Text grid: one row per homological degree `i`, one column per internal degree `j`.
    pub fn grid(&self) -> String {
        let top_j = self.entries.keys().map(|k| k.1).max().unwrap_or(0);
        let pd = self.projective_dimension();
        let width = self.entries.values().map(|b| b.to_string().len()).max().unwrap_or(1).max(top_j.to_string().len());
        let mut s = format!("{:>4} ", "");
        for j in 0..=top_j {
            s.push_str(&format!(" {j:>width$}"));
        }
        s.push('\n');
        for i in 0..=pd {
            s.push_str(&format!("{i:>4}:"));
            for j in 0..=top_j {
                let b = self.get(i, j);
                let cell = if b == 0 { ".".to_string() } else { b.to_string() };
                s.push_str(&format!(" {cell:>width$}"));
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.grid())
    }
}

/// Serialized as a list of `[i, j, beta]` triples.
impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (&(i, j), &b) in &self.entries {
            seq.serialize_element(&(i, j, b))?;
        }
        seq.end()
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `S/I` rewritten without the linear forms of `I`.
#[derive(Clone, Debug)]
pub struct LinearSplit {
    /// The ideal in the remaining variables, with `S/I` isomorphic to `S'/ideal`.
    pub ideal: Ideal,
    /// The linear forms of the reduced Gröbner basis of `I`.
    pub forms: Vec<Polynomial>,
}

/// Eliminates the variables led by degree-one elements of the reduced grevlex basis.
pub fn split_linear_forms(ideal: &Ideal, budget: &Budget) -> Result<LinearSplit> {
    let ring = ideal.ring();
    if ideal.is_zero() {
        return Ok(LinearSplit { ideal: ideal.clone(), forms: Vec::new() });
    }
    let gb = ideal.groebner_basis(&MonomialOrder::GrevLex, budget)?;
    let forms: Vec<Polynomial> = gb.polys().iter().filter(|p| p.degree() == Some(1)).cloned().collect();
    if forms.is_empty() {
        return Ok(LinearSplit { ideal: ideal.clone(), forms });
    }
    let leads: Vec<usize> = forms
        .iter()
        .map(|f| f.terms()[0].0.exps().iter().position(|&e| e > 0).expect("linear leading term"))
        .collect();
    let (sub, map) = ring.without(&leads);
    let mut images = Vec::with_capacity(ring.nvars());
    for v in 0..ring.nvars() {
        match map[v] {
            Some(j) => images.push(Polynomial::var(&sub, j)),
            None => {
                let f = &forms[leads.iter().position(|&l| l == v).expect("lead variable")];
                let tail = Polynomial::from_terms(ring, f.terms()[1..].iter().cloned());
                images.push(-&tail.map_ring(&sub, &map)?);
            }
        }
    }
    let gens = ideal.gens().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
    Ok(LinearSplit { ideal: Ideal::new(&sub, gens)?, forms })
}

/// Result of factoring out generic linear forms that form a regular sequence.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub ideal: Ideal,
    /// Length of the regular sequence found; a lower bound for the depth.
    pub steps: usize,
    pub series: HilbertSeries,
}

const REDUCTION_SEED: u64 = 0x5eed_0f4e65;
const ATTEMPTS: usize = 3;

fn random_coefficient(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(1..p as i64)),
        Field::Rational => {
            let v = rng.gen_range(1..=9);
            field.from_i64(if rng.gen_bool(0.5) { v } else { -v })
        }
    }
}

/// Substitutes `x_last := sum_{u < last} c_u x_u`, i.e. adds the linear form
/// `x_last - sum c_u x_u` and drops the last variable.
fn cut_last_variable(ideal: &Ideal, coeffs: &[Scalar]) -> Result<Ideal> {
    let ring = ideal.ring();
    let last = ring.nvars() - 1;
    let (sub, map) = ring.without(&[last]);
    let mut images: Vec<Polynomial> = (0..last).map(|v| Polynomial::var(&sub, map[v].expect("kept"))).collect();
    let form = Polynomial::from_terms(&sub, (0..last).map(|u| (Monomial::var(last, u), coeffs[u].clone())));
    images.push(form);
    let gens = ideal.gens().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
    Ideal::new(&sub, gens)
}

/// Greedily factors out linear forms while each one is a nonzerodivisor, at
/// most `limit` of them. The last variable is tried first since its regularity
/// can be read off the grevlex basis. Otherwise generic forms are tried, and a
/// linear form `l` is regular on `S/I` exactly when `S/(I + l)` has the same
/// Hilbert series numerator as `S/I`.
pub fn regular_reduction(ideal: &Ideal, limit: usize, budget: &Budget) -> Result<Reduction> {
    let series = hilbert_series(ideal, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(REDUCTION_SEED);
    let mut cur = ideal.clone();
    let mut steps = 0;
    'outer: while steps < limit.min(series.dim) {
        if let Some(cut) = cut_by_last_variable(&cur, budget)? {
            cur = cut;
            steps += 1;
            continue;
        }
        let n = cur.ring().nvars();
        for _ in 0..ATTEMPTS {
            let coeffs: Vec<Scalar> = (0..n - 1).map(|_| random_coefficient(cur.ring().field(), &mut rng)).collect();
            let cut = cut_last_variable(&cur, &coeffs)?;
            if hilbert_series(&cut, budget)?.numerator == series.numerator {
                cur = cut;
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    Ok(Reduction { ideal: cur, steps, series })
}

/// Upper bound on Koszul complex entries handled before giving up.
const KOSZUL_LIMIT: usize = 4_000_000;

/// Betti numbers of `S/I` from Koszul homology, in internal degrees up to `cap`
/// (unbounded when `S/I` has finite length).
fn koszul_betti(ideal: &Ideal, cap: u32, mode: ExecMode, budget: &Budget) -> Result<BettiTable> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let gb = ideal.groebner_basis(&MonomialOrder::GrevLex, budget)?;
    if gb.is_unit() {
        return Ok(BettiTable::default());
    }
    if n == 0 {
        return Ok(BettiTable::from_entries([((0, 0), 1)]));
    }
    let lms = gb.leading_monomials();
    // standard monomials by degree, up to cap + 1 or until they run out
    let mut standard: Vec<Vec<Monomial>> = Vec::new();
    let mut artinian = false;
    for e in 0..=cap + 1 {
        let ms: Vec<Monomial> = Monomial::all_of_degree(n, e).into_iter().filter(|m| !lms.iter().any(|l| l.divides(m))).collect();
        if ms.is_empty() {
            artinian = true;
            break;
        }
        standard.push(ms);
    }
    let top = standard.len() as u32 - 1;
    let jmax = if artinian { top + n as u32 } else { cap };
    let size: usize = (0..=n).map(|i| binomial(n, i) * standard.iter().map(Vec::len).sum::<usize>()).sum();
    if size > KOSZUL_LIMIT {
        return Err(Error::BoundExceeded { bound: KOSZUL_LIMIT as u32, what: format!("Koszul complex of size {size}") });
    }
    let index: Vec<HashMap<&Monomial, usize>> =
        standard.iter().map(|ms| ms.iter().enumerate().map(|(i, m)| (m, i)).collect()).collect();
    // mult[e][a][v] = x_v * (a-th standard monomial of degree e), reduced, as a sparse vector
    let mult: Vec<Vec<Vec<SparseRow>>> = (0..standard.len().saturating_sub(1))
        .map(|e| {
            standard[e]
                .iter()
                .map(|m| {
                    (0..n)
                        .map(|v| {
                            let f = Polynomial::monomial(ring, m.mul(&Monomial::var(n, v)), ring.field().one());
                            let r = gb.normal_form_budget(&f, budget)?;
                            let mut row: SparseRow = r.terms().iter().map(|(t, c)| (index[e + 1][t], c.clone())).collect();
                            row.sort_by_key(|x| x.0);
                            Ok(row)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let subsets_of: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets(n, i)).collect();
    let subset_index: Vec<HashMap<Vec<usize>, usize>> =
        subsets_of.iter().map(|ss| ss.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect()).collect();
    let dim_a = |e: i64| if e < 0 || e as usize >= standard.len() { 0 } else { standard[e as usize].len() };

    // rank of d_i : K_{i,e} -> K_{i-1,e+1}, for all (i, e) with i + e <= jmax
    let jobs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (0..standard.len()).filter(move |&e| (i + e) as u32 <= jmax).map(move |e| (i, e)))
        .collect();
    let ranks = exec::try_map(mode, &jobs, |&(i, e)| -> Result<usize> {
        let tgt = dim_a(e as i64 + 1);
        if tgt == 0 {
            return Ok(0);
        }
        budget.charge(1)?;
        let cols = binomial(n, i - 1) * tgt;
        let (mult, subset_index) = (&mult, &subset_index);
        let rows = subsets_of[i].iter().flat_map(|s| {
            (0..standard[e].len()).map(move |a| {
                let mut row: SparseRow = Vec::new();
                for (p, &v) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(p);
                    let base = subset_index[i - 1][&rest] * tgt;
                    for (c, x) in &mult[e][a][v] {
                        row.push((base + c, if p % 2 == 0 { x.clone() } else { x.neg() }));
                    }
                }
                row.sort_by_key(|x| x.0);
                row
            })
        });
        Ok(rank_of_rows(ring.field(), cols, rows))
    })?;
    let rank: HashMap<(usize, usize), usize> = jobs.into_iter().zip(ranks).collect();
    let r = |i: usize, e: i64| if e < 0 { 0 } else { rank.get(&(i, e as usize)).copied().unwrap_or(0) };

    let mut entries = Vec::new();
    for i in 0..=n {
        for j in i as u32..=jmax {
            let e = j as i64 - i as i64;
            let b = binomial(n, i) * dim_a(e) - r(i, e) - r(i + 1, e - 1);
            entries.push(((i, j), b));
        }
    }
    Ok(BettiTable::from_entries(entries))
}

/// Graded Betti table of `S/I` for a homogeneous ideal.
///
/// `bound` caps internal degrees when the reduced quotient is not of finite
/// length (default `2 * max generator degree + nvars`). The result is checked
/// against the Hilbert series numerator; a mismatch caused by the cap is
/// reported as [`Error::BoundExceeded`].
pub fn betti_table(ideal: &Ideal, bound: Option<u32>, budget: &Budget) -> Result<BettiTable> {
    betti_table_in(ExecMode::default(), ideal, bound, budget)
}

/// [`betti_table`] with the Koszul ranks computed in the given mode.
pub fn betti_table_in(mode: ExecMode, ideal: &Ideal, bound: Option<u32>, budget: &Budget) -> Result<BettiTable> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous("Betti numbers need a homogeneous ideal".into()));
    }
    let full = hilbert_series(ideal, budget)?;
    let split = split_linear_forms(ideal, budget)?;
    let reduced = regular_reduction(&split.ideal, usize::MAX, budget)?;
    let max_deg = ideal.gens().iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let cap = bound.unwrap_or(2 * max_deg + ideal.ring().nvars() as u32);
    let table = koszul_betti(&reduced.ideal, cap, mode, budget)?.with_linear_forms(split.forms.len());
    if table.euler_numerator() != full.numerator {
        return Err(Error::BoundExceeded { bound: cap, what: "Betti table degrees (Euler characteristic mismatch)".into() });
    }
    Ok(table)
}

/// How perfection was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerfectionMethod {
    /// A regular sequence of length `dim` was found, so depth = dim and, by
    /// Auslander–Buchsbaum, pd = codim.
    RegularSequence,
    /// The projective dimension was read off a Betti table.
    BettiTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Perfection {
    pub perfect: bool,
    pub dim: usize,
    pub codim: usize,
    pub projective_dimension: usize,
    pub linear_forms: usize,
    pub regular_sequence: usize,
    pub method: PerfectionMethod,
}

/// Decides whether `pd(S/I) = codim(I)`.
pub fn perfection(ideal: &Ideal, budget: &Budget) -> Result<Perfection> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous("perfection needs a homogeneous ideal".into()));
    }
    let n = ideal.ring().nvars();
    let split = split_linear_forms(ideal, budget)?;
    let reduced = regular_reduction(&split.ideal, usize::MAX, budget)?;
    let dim = reduced.series.dim;
    let codim = n - dim;
    let linear_forms = split.forms.len();
    if reduced.steps == dim {
        return Ok(Perfection {
            perfect: true,
            dim,
            codim,
            projective_dimension: codim,
            linear_forms,
            regular_sequence: reduced.steps,
            method: PerfectionMethod::RegularSequence,
        });
    }
    let max_deg = ideal.gens().iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let cap = 2 * max_deg + n as u32;
    let table = koszul_betti(&reduced.ideal, cap, ExecMode::default(), budget)?;
    if table.euler_numerator() != reduced.series.numerator {
        return Err(Error::BoundExceeded { bound: cap, what: "Betti table degrees (Euler characteristic mismatch)".into() });
    }
    let pd = table.projective_dimension() + linear_forms;
    if pd < codim {
        return Err(Error::Invalid(format!("projective dimension {pd} below codimension {codim}")));
    }
    Ok(Perfection {
        perfect: pd == codim,
        dim,
        codim,
        projective_dimension: pd,
        linear_forms,
        regular_sequence: reduced.steps,
        method: PerfectionMethod::BettiTable,
    })
}

pub fn is_perfect(ideal: &Ideal, budget: &Budget) -> Result<bool> {
    Ok(perfection(ideal, budget)?.perfect)
}
