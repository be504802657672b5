//! Buchberger's algorithm over sorted term vectors.
//!
//! Polynomials inside the engine are plain term vectors sorted descending in
//! the working order, with monic leading terms. Pairs are selected by sugar
//! (weighted degree), ties broken by the smaller lcm, and pruned with the
//! Gebauer–Möller installation of Buchberger's two criteria.

use std::cmp::Ordering;

use crate::arith::Scalar;
use crate::budget::Budget;
use crate::error::Result;
use crate::poly::{Monomial, MonomialOrder};

pub(crate) type Terms = Vec<(Monomial, Scalar)>;

pub(crate) fn sort_terms(order: &MonomialOrder, terms: &mut Terms) {
    terms.sort_by(|a, b| order.compare(&b.0, &a.0));
}

fn make_monic(terms: &mut Terms) {
    let Some(lc) = terms.first().map(|t| t.1.clone()) else { return };
    if lc.is_one() {
        return;
    }
    let inv = lc.inv().expect("leading coefficient is nonzero");
    for t in terms.iter_mut() {
        t.1 = &t.1 * &inv;
    }
}

/// `p - c * m * g`, both inputs sorted descending.
fn sub_scaled(order: &MonomialOrder, p: &[(Monomial, Scalar)], c: &Scalar, m: &Monomial, g: &[(Monomial, Scalar)]) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let zero = c.field().zero();
    let mut gm: Option<Monomial> = g.first().map(|t| t.0.mul(m));
    while i < p.len() {
        let Some(cur) = gm.as_ref() else { break };
        match order.compare(&p[i].0, cur) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.take().unwrap(), zero.sub_mul(c, &g[j].1)));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let v = p[i].1.sub_mul(c, &g[j].1);
                if !v.is_zero() {
                    out.push((gm.take().unwrap(), v));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    if let Some(cur) = gm {
        out.push((cur, zero.sub_mul(c, &g[j].1)));
        for t in &g[j + 1..] {
            out.push((t.0.mul(m), zero.sub_mul(c, &t.1)));
        }
    }
    out
}

/// A basis element: monic, sorted, with cached leading-monomial data.
#[derive(Clone, Debug)]
pub(crate) struct Element {
    pub terms: Terms,
    pub sugar: u32,
    pub mask: u64,
    pub active: bool,
}

impl Element {
    fn new(terms: Terms, sugar: u32) -> Self {
        let mask = terms[0].0.support_mask();
        Element { terms, sugar, mask, active: true }
    }

    #[inline]
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Weighted degree used for sugar; unit weights give total degree.
#[derive(Clone, Debug)]
pub(crate) struct Weights(Option<Vec<u32>>);

impl Weights {
    pub fn new(w: Option<Vec<u32>>) -> Self {
        Weights(w.filter(|w| w.iter().any(|&x| x != 1)))
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> u32 {
        match &self.0 {
            None => m.degree(),
            Some(w) => m.weighted_degree(w),
        }
    }

    pub fn poly_degree(&self, terms: &Terms) -> u32 {
        terms.iter().map(|(m, _)| self.degree(m)).max().unwrap_or(0)
    }
}

fn find_reducer<'a>(basis: &'a [Element], m: &Monomial) -> Option<&'a Element> {
    let mask = m.support_mask();
    basis.iter().find(|g| g.active && g.mask & !mask == 0 && g.lm().divides(m))
}

/// Normal form of `p` with respect to the active elements of `basis`. With
/// `full = false` only the leading term is reduced.
pub(crate) fn reduce(
    order: &MonomialOrder,
    weights: &Weights,
    basis: &[Element],
    mut p: Terms,
    mut sugar: u32,
    full: bool,
    budget: &Budget,
) -> Result<(Terms, u32)> {
    let mut out: Terms = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let lead = &p[start].0;
        match find_reducer(basis, lead) {
            Some(g) => {
                budget.charge(1)?;
                let q = g.lm().quotient_of(lead);
                sugar = sugar.max(g.sugar + weights.degree(&q));
                let c = p[start].1.clone();
                p = sub_scaled(order, &p[start + 1..], &c, &q, &g.terms[1..]);
                start = 0;
            }
            None if full => {
                out.push(p[start].clone());
                start += 1;
            }
            None => {
                out.extend(p.drain(start..));
                break;
            }
        }
    }
    Ok((out, sugar))
}

/// Incremental Buchberger state. Generators may be added between runs and a
/// run may stop at a sugar bound, which for homogeneous input gives a basis
/// that is correct up to that degree.
#[derive(Clone, Debug)]
pub(crate) struct GbState {
    order: MonomialOrder,
    weights: Weights,
    elems: Vec<Element>,
    pairs: Vec<Pair>,
    pending: Vec<(Terms, u32)>,
    /// True once the ideal contains a nonzero constant.
    unit: bool,
}

impl GbState {
    pub fn new(order: MonomialOrder, weights: Weights) -> Self {
        GbState { order, weights, elems: Vec::new(), pairs: Vec::new(), pending: Vec::new(), unit: false }
    }

    /// Queues a generator; it is reduced and inserted during the next run.
    pub fn add_generator(&mut self, mut terms: Terms) {
        terms.retain(|t| !t.1.is_zero());
        if terms.is_empty() {
            return;
        }
        sort_terms(&self.order, &mut terms);
        let sugar = self.weights.poly_degree(&terms);
        self.pending.push((terms, sugar));
    }

    /// Smallest sugar of any outstanding work.
    pub fn next_sugar(&self) -> Option<u32> {
        let a = self.pairs.iter().map(|p| p.sugar).min();
        let b = self.pending.iter().map(|p| p.1).min();
        match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (x, y) => x.or(y),
        }
    }

    /// Processes pairs and generators with sugar `<= limit` (all of them when `None`).
    pub fn run(&mut self, limit: Option<u32>, budget: &Budget) -> Result<()> {
        while !self.unit {
            let Some(s) = self.next_sugar() else { break };
            if limit.is_some_and(|l| s > l) {
                break;
            }
            let (poly, sugar) = if let Some(k) = self.pending.iter().position(|p| p.1 == s) {
                self.pending.swap_remove(k)
            } else {
                let k = self.select_pair(s);
                let pair = self.pairs.swap_remove(k);
                budget.charge(1)?;
                (self.spoly(&pair), pair.sugar)
            };
            let (mut h, sugar) = reduce(&self.order, &self.weights, &self.elems, poly, sugar, true, budget)?;
            if h.is_empty() {
                continue;
            }
            make_monic(&mut h);
            if h[0].0.is_one() {
                self.unit = true;
                self.elems.iter_mut().for_each(|e| e.active = false);
                self.elems.push(Element::new(h, sugar));
                self.pairs.clear();
                self.pending.clear();
                break;
            }
            self.insert(Element::new(h, sugar));
        }
        Ok(())
    }

    fn select_pair(&self, sugar: u32) -> usize {
        let mut best: Option<usize> = None;
        for (k, p) in self.pairs.iter().enumerate() {
            if p.sugar != sugar {
                continue;
            }
            best = match best {
                Some(b) if self.order.compare(&self.pairs[b].lcm, &p.lcm) != Ordering::Greater => Some(b),
                _ => Some(k),
            };
        }
        best.expect("a pair with the requested sugar")
    }

    fn spoly(&self, pair: &Pair) -> Terms {
        let f = &self.elems[pair.i];
        let g = &self.elems[pair.j];
        let a = f.lm().quotient_of(&pair.lcm);
        let b = g.lm().quotient_of(&pair.lcm);
        let fa: Terms = f.terms[1..].iter().map(|(m, c)| (m.mul(&a), c.clone())).collect();
        sub_scaled(&self.order, &fa, &f.terms[0].1, &b, &g.terms[1..])
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let di = self.weights.degree(lcm) - self.weights.degree(self.elems[i].lm());
        let dj = self.weights.degree(lcm) - self.weights.degree(self.elems[j].lm());
        (self.elems[i].sugar + di).max(self.elems[j].sugar + dj)
    }

    fn insert(&mut self, h: Element) {
        let hi = self.elems.len();
        let lh = h.lm().clone();
        self.elems.push(h);

        // candidate pairs with every active element
        let cands: Vec<(Pair, bool)> = (0..hi)
            .filter(|&g| self.elems[g].active)
            .map(|g| {
                let lcm = self.elems[g].lm().lcm(&lh);
                let coprime = self.elems[g].lm().gcd_is_one(&lh);
                let sugar = self.pair_sugar(g, hi, &lcm);
                (Pair { i: g, j: hi, lcm, sugar }, coprime)
            })
            .collect();

        // chain criterion among the new pairs: drop lcms strictly divisible by another
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a != b && cands[b].0.lcm != cands[a].0.lcm && cands[b].0.lcm.divides(&cands[a].0.lcm) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // equal lcms: keep one representative unless a coprime pair shares the lcm
        let mut chosen: Vec<(Pair, bool)> = Vec::new();
        for (k, c) in cands.into_iter().enumerate() {
            if !keep[k] {
                continue;
            }
            match chosen.iter_mut().find(|(p, _)| p.lcm == c.0.lcm) {
                Some(existing) => existing.1 |= c.1,
                None => chosen.push(c),
            }
        }

        // old pairs whose lcm is divisible by lm(h) are redundant unless h
        // shares the lcm with one of the pair's elements
        let elems = &self.elems;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && elems[p.i].lm().lcm(&lh) != p.lcm
                && elems[p.j].lm().lcm(&lh) != p.lcm)
        });
        // product criterion
        self.pairs.extend(chosen.into_iter().filter(|(_, coprime)| !coprime).map(|(p, _)| p));

        for g in 0..hi {
            if self.elems[g].active && lh.divides(self.elems[g].lm()) {
                self.elems[g].active = false;
            }
        }
    }

    /// Reduced Gröbner basis of everything processed so far: monic,
    /// interreduced, sorted by leading monomial ascending.
    pub fn reduced_basis(&self, budget: &Budget) -> Result<Vec<Terms>> {
        let minimal: Vec<&Element> = self.elems.iter().filter(|e| e.active).collect();
        let mut out = Vec::with_capacity(minimal.len());
        for e in &minimal {
            let tail = e.terms[1..].to_vec();
            let (tail, _) = reduce(&self.order, &self.weights, &self.elems, tail, 0, true, budget)?;
            let mut t = Vec::with_capacity(tail.len() + 1);
            t.push(e.terms[0].clone());
            t.extend(tail);
            out.push(t);
        }
        out.sort_by(|a, b| self.order.compare(&a[0].0, &b[0].0));
        Ok(out)
    }

    /// Full normal form against the current (possibly truncated) basis.
    pub fn normal_form(&self, mut terms: Terms, budget: &Budget) -> Result<Terms> {
        terms.retain(|t| !t.1.is_zero());
        sort_terms(&self.order, &mut terms);
        Ok(reduce(&self.order, &self.weights, &self.elems, terms, 0, true, budget)?.0)
    }
}

/// Elements built from an already reduced basis, for repeated normal forms.
pub(crate) fn elements_of(basis: &[Terms]) -> Vec<Element> {
    basis.iter().map(|t| Element::new(t.clone(), 0)).collect()
}
