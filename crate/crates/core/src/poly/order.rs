use std::cmp::Ordering;

use serde::Serialize;

use super::monomial::Monomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum InnerOrder {
    Lex,
    GrevLex,
}

/// A block of variables compared with its own inner order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderBlock {
    pub vars: Vec<usize>,
    pub inner: InnerOrder,
}

/// Monomial order. Blocks are compared in sequence; they must partition the
/// ring variables (see [`MonomialOrder::block`]).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    Block(Vec<OrderBlock>),
}

impl MonomialOrder {
    pub fn block(blocks: Vec<OrderBlock>, nvars: usize) -> Result<Self> {
        let mut seen = vec![false; nvars];
        for b in &blocks {
            for &v in &b.vars {
                if v >= nvars || seen[v] {
                    return Err(Error::Invalid(format!("variable {v} repeated or out of range in block order")));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid("block order does not cover every variable".into()));
        }
        Ok(MonomialOrder::Block(blocks))
    }

    /// Eliminates `vars`: lex on that block, grevlex on the rest.
    pub fn elimination(ring: &Ring, vars: &[usize]) -> Result<Self> {
        let mut first: Vec<usize> = vars.to_vec();
        first.sort_unstable();
        first.dedup();
        let rest = (0..ring.nvars()).filter(|v| !first.contains(v)).collect();
        Self::block(
            vec![OrderBlock { vars: first, inner: InnerOrder::Lex }, OrderBlock { vars: rest, inner: InnerOrder::GrevLex }],
            ring.nvars(),
        )
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "grevlex" => Ok(MonomialOrder::GrevLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::Invalid(format!("unknown monomial order `{other}` (expected grevlex or lex)"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block(bs) => {
                let parts: Vec<String> = bs.iter().map(|b| format!("{:?}{:?}", b.inner, b.vars)).collect();
                format!("block({})", parts.join(", "))
            }
        }
    }

    /// Degree-compatible orders let homogeneous computations be truncated by degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::GrevLex => grevlex(a.exps(), b.exps()),
            MonomialOrder::Block(blocks) => {
                for blk in blocks {
                    let o = match blk.inner {
                        InnerOrder::Lex => {
                            let mut o = Ordering::Equal;
                            for &v in &blk.vars {
                                o = a.exp(v).cmp(&b.exp(v));
                                if o != Ordering::Equal {
                                    break;
                                }
                            }
                            o
                        }
                        InnerOrder::GrevLex => {
                            let da: u32 = blk.vars.iter().map(|&v| a.exp(v) as u32).sum();
                            let db: u32 = blk.vars.iter().map(|&v| b.exp(v) as u32).sum();
                            let mut o = da.cmp(&db);
                            if o == Ordering::Equal {
                                for &v in blk.vars.iter().rev() {
                                    o = b.exp(v).cmp(&a.exp(v));
                                    if o != Ordering::Equal {
                                        break;
                                    }
                                }
                            }
                            o
                        }
                    };
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[inline]
fn grevlex(a: &[u8], b: &[u8]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

/// Compares two monomials of one ring under `order`.
pub fn compare(order: &MonomialOrder, m1: &Monomial, m2: &Monomial) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(Error::RingMismatch);
    }
    Ok(order.compare(m1, m2))
}
