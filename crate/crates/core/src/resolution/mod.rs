//! Minimal generators, Hilbert–Burch presentations, Hilbert series, Betti
//! tables and perfection of homogeneous ideals.

mod betti;
mod generators;
mod hilbert;

pub use betti::{
    betti_table, betti_table_in, is_perfect, perfection, regular_reduction, split_linear_forms, BettiTable, LinearSplit, Perfection,
    PerfectionMethod, Reduction,
};
pub use generators::{
    hilbert_burch_check, minimal_generators, presentation_matrix, PresentationMatrix, PresentationSummary,
};
pub use hilbert::{hilbert_series, monomial_numerator, HilbertSeries};


use std::sync::Arc;

use crate::arith::Field;
use crate::error::Result;
use crate::groebner::Ideal;
use crate::poly::{minors, Polynomial, Ring};

/// The ideal of `size x size` minors of a generic `rows x cols` matrix of indeterminates.
pub fn generic_minors_ideal(field: Field, rows: usize, cols: usize, size: usize) -> Result<Ideal> {
    let ring: Arc<Ring> = Ring::generic_matrix(field, rows, cols);
    let m: Vec<Vec<Polynomial>> = (0..rows).map(|i| (0..cols).map(|j| Polynomial::var(&ring, i * cols + j)).collect()).collect();
    let gens = minors(&ring, &m, size).into_iter().map(|(_, _, p)| p).collect();
    Ideal::new(&ring, gens)
}

#[cfg(test)]
mod tests;
