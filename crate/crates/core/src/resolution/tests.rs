use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::arith::Field;
use crate::budget::Budget;
use crate::error::Error;
use crate::groebner::ideal_equal;
use crate::points::{points_ideal, random_points, Constraints, PointSet};
use crate::poly::{parse_polynomial, Monomial, MonomialOrder, Ring};

fn plane() -> Arc<Ring> {
    Ring::plane(Field::Rational)
}

fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap()).collect()).unwrap()
}

fn unlimited() -> Budget {
    Budget::unlimited()
}

fn degrees(i: &Ideal) -> Vec<u32> {
    minimal_generators(i, None, &unlimited()).unwrap().into_iter().map(|(d, _)| d).collect()
}

#[test]
fn minimal_generator_examples() {
    let q = Field::Rational;
    assert_eq!(degrees(&points_ideal(&PointSet::coordinate_triangle(q))), vec![2, 2, 2]);
    assert_eq!(degrees(&points_ideal(&PointSet::frame4(q))), vec![2, 2]);
    let f = Field::prime(32003).unwrap();
    let eight = random_points(f, 8, 5, &Constraints::general(8), 50).unwrap();
    assert_eq!(degrees(&points_ideal(&eight)), vec![3, 3, 4]);
}

#[test]
fn redundant_generators_are_dropped() {
    let r = plane();
    let i = ideal(&r, &["w1*w2", "w1*w2*w3", "w1^2", "w1^2 + w1*w2"]);
    let g = minimal_generators(&i, None, &unlimited()).unwrap();
    assert_eq!(g.len(), 2);
    assert!(matches!(minimal_generators(&i, Some(2), &unlimited()), Err(Error::BoundExceeded { .. })));
}

#[test]
fn presentation_of_the_coordinate_triangle() {
    let i = points_ideal(&PointSet::coordinate_triangle(Field::Rational));
    let l = presentation_matrix(&i, &unlimited()).unwrap();
    assert_eq!(l.shape(), "2x3");
    assert_eq!(l.row_degrees(), &[3, 3]);
    assert!(l.entries().iter().flatten().all(|e| e.is_zero() || e.degree() == Some(1)));
    assert!(l.annihilates_generators());
    assert!(hilbert_burch_check(&i, &l, &unlimited()).unwrap());
    // the signed minors are the generators up to one common unit
    let minors = l.signed_minors().unwrap();
    let ratio = minors[0].leading_coeff().unwrap().checked_div(l.generators()[0].leading_coeff().unwrap()).unwrap();
    for (m, g) in minors.iter().zip(l.generators()) {
        assert_eq!(m, &g.scale(&ratio));
    }
}

#[test]
fn presentation_of_the_frame_is_a_koszul_syzygy() {
    let i = points_ideal(&PointSet::frame4(Field::Rational));
    let l = presentation_matrix(&i, &unlimited()).unwrap();
    assert_eq!(l.shape(), "1x2");
    assert_eq!(l.row_degrees(), &[4]);
    assert!(hilbert_burch_check(&i, &l, &unlimited()).unwrap());
}

#[test]
fn presentation_for_seven_general_points_mixes_degrees() {
    let f = Field::prime(32003).unwrap();
    let x = random_points(f, 7, 3, &Constraints::general(7), 50).unwrap();
    let i = points_ideal(&x);
    let l = presentation_matrix(&i, &unlimited()).unwrap();
    assert_eq!(l.shape(), "2x3");
    assert_eq!(l.col_degrees(), &[3, 3, 3]);
    let mut rd = l.row_degrees().to_vec();
    rd.sort_unstable();
    assert_eq!(rd, vec![4, 5]);
    assert!(hilbert_burch_check(&i, &l, &unlimited()).unwrap());
}

#[test]
fn hilbert_burch_check_rejects_non_perfect_input() {
    let r = plane();
    let i = ideal(&r, &["w1*w2", "w1*w3"]);
    let l = presentation_matrix(&i, &unlimited()).unwrap();
    // the single syzygy (w3, -w2) has minors generating <w2, w3>, not I
    assert_eq!(l.shape(), "1x2");
    assert!(!hilbert_burch_check(&i, &l, &unlimited()).unwrap());
    // written as a 2x1 column it is not of shape r x (r+1) at all
    let col = PresentationMatrix::new(
        &r,
        vec![vec![l.entry(0, 0).clone()], vec![l.entry(0, 1).clone()]],
        vec![3, 3],
        vec![2],
        Vec::new(),
    )
    .unwrap();
    assert!(!hilbert_burch_check(&i, &col, &unlimited()).unwrap());
}

#[test]
fn presentation_rejects_non_codim_two_input() {
    let r = plane();
    let ci = ideal(&r, &["w1", "w2", "w3"]);
    assert!(matches!(presentation_matrix(&ci, &unlimited()), Err(Error::Invalid(_))));
}

#[test]
fn hilbert_series_examples() {
    let tri = points_ideal(&PointSet::coordinate_triangle(Field::Rational));
    let hs = hilbert_series(&tri, &unlimited()).unwrap();
    assert_eq!((hs.dim, hs.codim, hs.degree()), (1, 2, 3));
    assert_eq!(hs.numerator, vec![1, 0, -3, 2]);
    assert_eq!((0..5).map(|t| hs.value(t)).collect::<Vec<_>>(), vec![1, 3, 3, 3, 3]);

    let z = Ideal::zero(&Ring::rees_flat(Field::Rational, 4, false));
    let hs = hilbert_series(&z, &unlimited()).unwrap();
    assert_eq!((hs.dim, hs.codim), (7, 0));

    let r = plane();
    let hs = hilbert_series(&ideal(&r, &["w1", "w2"]), &unlimited()).unwrap();
    assert_eq!((hs.dim, hs.codim, hs.numerator.clone()), (1, 2, vec![1, -2, 1]));
}

#[test]
fn monomial_numerator_examples() {
    let m = |e: &[u8]| Monomial::from_exponents(e);
    let b = unlimited();
    // S/<x^2> in one variable: 1 - z^2
    assert_eq!(monomial_numerator(&[m(&[2])], &b).unwrap(), vec![1, 0, -1]);
    // <xy, xz> in three variables: 1 - 2z^2 + z^3
    assert_eq!(monomial_numerator(&[m(&[1, 1, 0]), m(&[1, 0, 1])], &b).unwrap(), vec![1, 0, -2, 1]);
    assert_eq!(monomial_numerator(&[m(&[0, 0])], &b).unwrap(), Vec::<i64>::new());
}

fn table(entries: &[((usize, u32), usize)]) -> BettiTable {
    BettiTable::from_entries(entries.iter().copied())
}

#[test]
fn betti_examples() {
    let r = plane();
    let b = unlimited();
    let koszul = betti_table(&ideal(&r, &["w1", "w2"]), None, &b).unwrap();
    assert_eq!(koszul, table(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]));

    let tri = betti_table(&points_ideal(&PointSet::coordinate_triangle(Field::Rational)), None, &b).unwrap();
    assert_eq!(tri, table(&[((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]));

    let np = betti_table(&ideal(&r, &["w1*w2", "w1*w3"]), None, &b).unwrap();
    assert_eq!(np, table(&[((0, 0), 1), ((1, 2), 2), ((2, 3), 1)]));

    let ci = betti_table(&ideal(&r, &["w1^2", "w2^3", "w3"]), None, &b).unwrap();
    assert_eq!(ci.total(1), 3);
    assert_eq!(ci.get(3, 6), 1);
}

#[test]
fn betti_grid_layout() {
    let t = table(&[((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
    assert_eq!(t.grid(), "      0 1 2 3\n   0: 1 . . .\n   1: . . 3 .\n   2: . . . 2\n");
}

#[test]
fn generic_two_by_two_minors() {
    let b = unlimited();
    // 2x2 minors of a 2x3 matrix: Hilbert–Burch, 1 -> 3 -> 2
    let i23 = generic_minors_ideal(Field::Rational, 2, 3, 2).unwrap();
    assert_eq!(betti_table(&i23, None, &b).unwrap(), table(&[((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]));
    // 3x4: codim 6, perfect, linear resolution after the quadrics
    let i34 = generic_minors_ideal(Field::Rational, 3, 4, 2).unwrap();
    assert_eq!(i34.gens().len(), 18);
    let t = betti_table(&i34, None, &b).unwrap();
    assert_eq!(t.projective_dimension(), 6);
    assert_eq!(t.get(1, 2), 18);
    let hs = hilbert_series(&i34, &b).unwrap();
    assert_eq!((hs.codim, hs.degree()), (6, 10));
    assert_eq!(t.euler_numerator(), hs.numerator);
}

#[test]
fn perfection_examples() {
    let r = plane();
    let b = unlimited();
    let tri = perfection(&points_ideal(&PointSet::coordinate_triangle(Field::Rational)), &b).unwrap();
    assert!(tri.perfect);
    assert_eq!((tri.projective_dimension, tri.codim), (2, 2));
    let np = perfection(&ideal(&r, &["w1*w2", "w1*w3"]), &b).unwrap();
    assert!(!np.perfect);
    assert_eq!((np.projective_dimension, np.codim, np.method), (2, 1, PerfectionMethod::BettiTable));
    assert!(is_perfect(&ideal(&r, &["w1", "w2^2"]), &b).unwrap());
}

#[test]
fn splitting_linear_forms() {
    let r = plane();
    let b = unlimited();
    let i = ideal(&r, &["w1 - w2", "w1*w3 - w2^2"]);
    let s = split_linear_forms(&i, &b).unwrap();
    assert_eq!(s.forms.len(), 1);
    assert_eq!(s.ideal.ring().nvars(), 2);
    let full = betti_table(&i, None, &b).unwrap();
    let part = betti_table(&s.ideal, None, &b).unwrap();
    assert_eq!(part.with_linear_forms(1), full);
}

fn arb_gens() -> impl Strategy<Value = Vec<Vec<(usize, i64)>>> {
    // each generator: a combination of degree-2 monomials (indices into the 6 quadrics)
    prop::collection::vec(prop::collection::vec((0usize..6, -3i64..4), 1..4), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_characteristic_and_invariance(raw in arb_gens(), shift in 0usize..4) {
        let f = Field::prime(32003).unwrap();
        let r = Ring::plane(f);
        let quads = Monomial::all_of_degree(3, 2);
        let gens: Vec<Polynomial> = raw
            .iter()
            .map(|t| Polynomial::from_terms(&r, t.iter().map(|&(k, c)| (quads[k].clone(), f.from_i64(c)))))
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let b = Budget::unlimited();
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let t = betti_table(&i, None, &b).unwrap();
        prop_assert_eq!(t.euler_numerator(), hilbert_series(&i, &b).unwrap().numerator);
        let hs = hilbert_series(&i, &b).unwrap();
        prop_assert!(t.projective_dimension() >= hs.codim);

        let mut perm = gens.clone();
        let n = perm.len();
        perm.rotate_left(shift % n);
        let perm: Vec<Polynomial> = perm.iter().enumerate().map(|(k, g)| g.scale(&f.from_i64(k as i64 + 5))).collect();
        let j = Ideal::new(&r, perm).unwrap();
        prop_assert!(ideal_equal(&i, &j, &MonomialOrder::GrevLex, &b).unwrap());
        prop_assert_eq!(t, betti_table(&j, None, &b).unwrap());
    }

    #[test]
    fn presentation_rows_annihilate_generators(seed in 0u64..1000, s in 3usize..9) {
        let f = Field::prime(32003).unwrap();
        let x = random_points(f, s, seed, &Constraints::default(), 10).unwrap();
        let i = points_ideal(&x);
        let b = Budget::unlimited();
        let l = presentation_matrix(&i, &b).unwrap();
        prop_assert!(l.annihilates_generators());
        prop_assert!(hilbert_burch_check(&i, &l, &b).unwrap());
    }
}
