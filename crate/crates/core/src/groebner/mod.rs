//! Gröbner bases, normal forms, elimination and kernels of ring maps.

pub(crate) mod engine;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use engine::{elements_of, sort_terms, Element, GbState, Terms, Weights};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring, VarKind};

/// A reduced Gröbner basis together with its order.
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    sorted: Vec<Terms>,
    reducers: Vec<Element>,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order.name()).field("polys", &self.polys).finish()
    }
}

fn to_polynomial(ring: &Arc<Ring>, terms: &Terms) -> Polynomial {
    Polynomial::from_terms(ring, terms.iter().cloned())
}

fn to_terms(f: &Polynomial) -> Terms {
    f.terms().to_vec()
}

impl GroebnerBasis {
    fn from_sorted(ring: &Arc<Ring>, order: MonomialOrder, sorted: Vec<Terms>) -> Self {
        let polys = sorted.iter().map(|t| to_polynomial(ring, t)).collect();
        let reducers = elements_of(&sorted);
        GroebnerBasis { ring: ring.clone(), order, polys, sorted, reducers }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by leading monomial ascending.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Basis elements as term lists sorted descending in the basis order.
    pub(crate) fn sorted_terms(&self) -> &[Terms] {
        &self.sorted
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.first().is_some_and(|t| t[0].0.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.normal_form_budget(f, &Budget::unlimited())
    }

    pub fn normal_form_budget(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut t = to_terms(f);
        sort_terms(&self.order, &mut t);
        let weights = Weights::new(None);
        let (r, _) = engine::reduce(&self.order, &weights, &self.reducers, t, 0, true, budget)?;
        Ok(to_polynomial(&self.ring, &r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Finite generator list with reduced Gröbner bases cached per monomial order.
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    weights: Option<Vec<u32>>,
    cache: Mutex<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            weights: self.weights.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring).field("gens", &self.gens).finish()
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, weights: None, cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), weights: None, cache: Mutex::new(BTreeMap::new()) }
    }

    /// Sets the variable weights used as sugar degree. Weights making the
    /// generators homogeneous keep pair selection degree by degree.
    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.ring.nvars() || weights.contains(&0) {
            return Err(Error::Invalid("weights must be positive, one per variable".into()));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    pub fn groebner_basis(&self, order: &MonomialOrder, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return Ok(gb.clone());
        }
        let sorted = run_buchberger(&self.gens, order, self.weights.clone(), budget)?;
        let gb = Arc::new(GroebnerBasis::from_sorted(&self.ring, order.clone(), sorted));
        self.cache.lock().expect("cache lock").insert(order.clone(), gb.clone());
        Ok(gb)
    }

    /// Cached basis, if one was computed or seeded for `order`.
    pub fn cached_basis(&self, order: &MonomialOrder) -> Option<Arc<GroebnerBasis>> {
        self.cache.lock().expect("cache lock").get(order).cloned()
    }

    /// Some cached basis, preferring the first order in the cache's sort.
    pub fn any_cached_basis(&self) -> Option<Arc<GroebnerBasis>> {
        self.cache.lock().expect("cache lock").values().next().cloned()
    }

    fn seed_cache(&self, gb: GroebnerBasis) {
        self.cache.lock().expect("cache lock").insert(gb.order.clone(), Arc::new(gb));
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        Ok(self.groebner_basis(&MonomialOrder::GrevLex, budget)?.normal_form_budget(f, budget)?.is_zero())
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let gb = self.groebner_basis(&MonomialOrder::GrevLex, budget)?;
        for g in &other.gens {
            if !gb.normal_form_budget(g, budget)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let mut out = Ideal::new(&self.ring, gens)?;
        out.weights = self.weights.clone().filter(|_| self.weights == other.weights);
        Ok(out)
    }
}

fn run_buchberger(gens: &[Polynomial], order: &MonomialOrder, weights: Option<Vec<u32>>, budget: &Budget) -> Result<Vec<Terms>> {
    let mut st = GbState::new(order.clone(), Weights::new(weights));
    for g in gens {
        st.add_generator(to_terms(g));
    }
    st.run(None, budget)?;
    st.reduced_basis(budget)
}

/// Normal form of `f` modulo `basis`, which must be a Gröbner basis under `order`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    if basis.iter().any(|g| !same_ring(g.ring(), f.ring())) {
        return Err(Error::RingMismatch);
    }
    let mut sorted: Vec<Terms> = Vec::new();
    for g in basis.iter().filter(|g| !g.is_zero()) {
        let mut t = to_terms(g);
        sort_terms(order, &mut t);
        let inv = t[0].1.inv()?;
        t.iter_mut().for_each(|x| x.1 = &x.1 * &inv);
        sorted.push(t);
    }
    GroebnerBasis::from_sorted(f.ring(), order.clone(), sorted).normal_form(f)
}

/// The reduced Gröbner basis of `gens` under `order`.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder, budget: &Budget) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("empty generator list".into()));
    };
    let ring = first.ring().clone();
    Ok(Ideal::new(&ring, gens.to_vec())?.groebner_basis(order, budget)?.polys().to_vec())
}

/// `I ∩ k[remaining variables]`, as an ideal of the ring without `vars`.
///
/// The elimination basis restricted to the remaining variables is the reduced
/// grevlex basis of the result, so it is seeded into the result's cache.
pub fn eliminate(ideal: &Ideal, vars: &[usize], budget: &Budget) -> Result<Ideal> {
    let ring = ideal.ring();
    if vars.iter().any(|&v| v >= ring.nvars()) {
        return Err(Error::Invalid("elimination variable out of range".into()));
    }
    let order = MonomialOrder::elimination(ring, vars)?;
    let gb = ideal.groebner_basis(&order, budget)?;
    let (sub, map) = ring.without(vars);
    let kept: Vec<&Terms> = gb.sorted_terms().iter().filter(|t| t.iter().all(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0))).collect();
    let sorted: Vec<Terms> = kept.into_iter().map(|t| project_terms(t, &map, sub.nvars())).collect();
    let gens: Vec<Polynomial> = sorted.iter().map(|t| to_polynomial(&sub, t)).collect();
    let mut out = Ideal::new(&sub, gens)?;
    if let Some(w) = ideal.weights() {
        out.weights = Some((0..ring.nvars()).filter(|i| map[*i].is_some()).map(|i| w[i]).collect());
    }
    out.seed_cache(GroebnerBasis::from_sorted(&sub, MonomialOrder::GrevLex, sorted));
    Ok(out)
}

/// Keeps the terms free of dropped variables, renumbered through `map`.
fn project_terms(t: &Terms, map: &[Option<usize>], nvars: usize) -> Terms {
    t.iter()
        .filter(|(m, _)| m.exps().iter().enumerate().all(|(i, &x)| x == 0 || map[i].is_some()))
        .map(|(m, c)| {
            let mut e = Monomial::one(nvars);
            for (i, &x) in m.exps().iter().enumerate() {
                if let Some(j) = map[i] {
                    e.set_exp(j, x);
                }
            }
            (e, c.clone())
        })
        .collect()
}

/// `(I + <x_n>) / <x_n>` for the last variable `x_n`, when `x_n` is a
/// nonzerodivisor modulo the homogeneous ideal `I`, and `None` otherwise.
///
/// In grevlex, `x_n` is regular exactly when it divides no leading monomial,
/// and then setting `x_n = 0` in the reduced basis gives the reduced basis of
/// the cut, which is seeded into the result's cache.
pub fn cut_by_last_variable(ideal: &Ideal, budget: &Budget) -> Result<Option<Ideal>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if n == 0 || !ideal.is_homogeneous() {
        return Ok(None);
    }
    let gb = ideal.groebner_basis(&MonomialOrder::GrevLex, budget)?;
    if gb.leading_monomials().iter().any(|m| m.exp(n - 1) > 0) {
        return Ok(None);
    }
    let (sub, map) = ring.without(&[n - 1]);
    let sorted: Vec<Terms> = gb.sorted_terms().iter().map(|t| project_terms(t, &map, sub.nvars())).collect();
    let gens: Vec<Polynomial> = sorted.iter().map(|t| to_polynomial(&sub, t)).collect();
    let out = Ideal::new(&sub, gens)?;
    out.seed_cache(GroebnerBasis::from_sorted(&sub, MonomialOrder::GrevLex, sorted));
    Ok(Some(out))
}

/// The graph ideal `<x_i - t*F_i>` in `ring` extended by `t`, with weights
/// making it homogeneous (`w` weight 1, `t` weight 1, `x_i` weight `deg F + 1`).
pub fn graph_ideal(targets: &[Polynomial], ring: &Arc<Ring>, source_vars: &[usize]) -> Result<Ideal> {
    if targets.len() != source_vars.len() {
        return Err(Error::Shape(format!("{} targets for {} source variables", targets.len(), source_vars.len())));
    }
    let Some(first) = targets.first() else {
        return Err(Error::Invalid("kernel of a map with no targets".into()));
    };
    let base = first.ring().clone();
    if targets.iter().any(|f| !same_ring(f.ring(), &base)) {
        return Err(Error::RingMismatch);
    }
    if targets.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial("kernel target"));
    }
    let deg = first.degree().unwrap_or(0);
    if targets.iter().any(|f| !f.is_homogeneous() || f.degree() != Some(deg)) {
        return Err(Error::NotHomogeneous("kernel targets must be forms of one degree".into()));
    }
    if base.nvars() > ring.nvars() || (0..base.nvars()).any(|i| base.name(i) != ring.name(i)) {
        return Err(Error::Invalid("target ring must be a prefix of the source ring".into()));
    }
    if source_vars.iter().any(|&v| v < base.nvars() || v >= ring.nvars()) {
        return Err(Error::Invalid("source variables must lie outside the target ring".into()));
    }
    let rt = ring.extended(vec![("t".into(), VarKind::T)])?;
    let t_idx = ring.nvars();
    let embed: Vec<Option<usize>> = (0..base.nvars()).map(Some).collect();
    let t = Polynomial::var(&rt, t_idx);
    let mut gens = Vec::with_capacity(targets.len());
    for (f, &x) in targets.iter().zip(source_vars) {
        let fe = f.map_ring(&rt, &embed)?;
        gens.push(&Polynomial::var(&rt, x) - &(&t * &fe));
    }
    let mut weights = vec![1u32; rt.nvars()];
    for &x in source_vars {
        weights[x] = deg + 1;
    }
    Ideal::new(&rt, gens)?.with_weights(weights)
}

/// Kernel of `x_i ↦ t*F_i` from `ring` (which starts with the variables of the
/// targets' ring) to `k[w, t]`, computed by eliminating `t` from the graph ideal.
pub fn kernel_of_map(targets: &[Polynomial], ring: &Arc<Ring>, source_vars: &[usize], budget: &Budget) -> Result<Ideal> {
    let graph = graph_ideal(targets, ring, source_vars)?;
    let t_idx = ring.nvars();
    let elim = eliminate(&graph, &[t_idx], budget)?;
    // move generators and the seeded basis onto the caller's ring value
    let gb = elim.cached_basis(&MonomialOrder::GrevLex).expect("seeded by eliminate");
    let sorted = gb.sorted_terms().to_vec();
    let gens = sorted.iter().map(|t| to_polynomial(ring, t)).collect();
    let mut out = Ideal::new(ring, gens)?;
    out.weights = elim.weights.clone();
    out.seed_cache(GroebnerBasis::from_sorted(ring, MonomialOrder::GrevLex, sorted));
    Ok(out)
}

/// Equality of ideals by comparing reduced Gröbner bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal, order: &MonomialOrder, budget: &Budget) -> Result<bool> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ga = a.groebner_basis(order, budget)?;
    let gb = b.groebner_basis(order, budget)?;
    Ok(ga.polys() == gb.polys())
}
