use std::sync::Arc;

use super::polynomial::Polynomial;
use super::ring::Ring;

/// Determinant of a square matrix by cofactor expansion along the first row.
pub fn determinant(ring: &Arc<Ring>, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    match n {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Polynomial::zero(ring);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Polynomial>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
                let term = &m[0][c] * &determinant(ring, &sub);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All `k x k` minors as `(rows, cols, determinant)`, rows outer, both lexicographic.
pub fn minors(ring: &Arc<Ring>, m: &[Vec<Polynomial>], k: usize) -> Vec<(Vec<usize>, Vec<usize>, Polynomial)> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rows in subsets(nrows, k) {
        for cols in subsets(ncols, k) {
            let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
            out.push((rows.clone(), cols, determinant(ring, &sub)));
        }
    }
    out
}

/// For a `r x (r+1)` matrix, `(-1)^(c+1) det(matrix without column c)` for
/// columns `c = 1..=r+1`, so that every row `u` satisfies
/// `sum_c m[u][c] * minor_c = 0`.
pub fn signed_maximal_minors(ring: &Arc<Ring>, m: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let r = m.len();
    let cols = r + 1;
    (0..cols)
        .map(|c| {
            let sub: Vec<Vec<Polynomial>> =
                m.iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
            let d = determinant(ring, &sub);
            if c % 2 == 0 { d } else { -&d }
        })
        .collect()
}
