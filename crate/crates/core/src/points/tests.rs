use proptest::prelude::*;

use super::*;
use crate::arith::{rank, Field};
use crate::budget::Budget;
use crate::groebner::Ideal;
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring};

fn q() -> Field {
    Field::Rational
}

fn fp() -> Field {
    Field::prime(32003).unwrap()
}

fn span_rank(polys: &[Polynomial], t: u32) -> usize {
    let monos = plane_monomials(t);
    let rows: Vec<_> = polys
        .iter()
        .map(|f| monos.iter().enumerate().filter_map(|(i, m)| Some((i, f.coeff(m))).filter(|e| !e.1.is_zero())).collect())
        .collect();
    crate::arith::rank_of_rows(polys[0].field(), monos.len(), rows)
}

#[test]
fn normalization_and_distinctness() {
    let x = PointSet::from_integers(q(), &[[2, 4, 6], [0, 3, 0]], Provenance::Explicit { name: None }).unwrap();
    assert_eq!(x.point_strings(), vec!["[1:2:3]", "[0:1:0]"]);
    assert!(PointSet::from_integers(q(), &[[1, 2, 3], [2, 4, 6]], Provenance::Explicit { name: None }).is_err());
    assert!(PointSet::from_integers(q(), &[[0, 0, 0]], Provenance::Explicit { name: None }).is_err());
    assert!(PointSet::from_integers(q(), &[], Provenance::Explicit { name: None }).is_err());
}

#[test]
fn file_format_round_trip() {
    let text = "# frame\nQ\n1,0,0\n0,1/2,0\n0,0,1\n3,3,3\n";
    let x = PointSet::parse(text).unwrap();
    assert_eq!(x.len(), 4);
    assert_eq!(x.point_strings()[1], "[0:1:0]");
    let back = PointSet::parse(&x.to_string()).unwrap();
    assert_eq!(back.points(), x.points());
    let y = PointSet::parse("F 7\n1,2,3\n").unwrap();
    assert_eq!(y.field(), Field::Prime(7));
    assert!(PointSet::parse("F 8\n1,2,3\n").is_err());
    assert!(PointSet::parse("Q\n1,2\n").is_err());
}

#[test]
fn evaluation_matrix_examples() {
    let tri = PointSet::coordinate_triangle(q());
    let m1 = evaluation_matrix(&tri, 1);
    assert_eq!((m1.rows(), m1.cols(), rank(&m1)), (3, 3, 3));
    for r in 0..3 {
        assert_eq!((0..3).filter(|&c| !m1.get(r, c).is_zero()).count(), 1);
    }
    let m0 = evaluation_matrix(&PointSet::frame4(q()), 0);
    assert_eq!((m0.cols(), rank(&m0)), (1, 1));
    let m2 = evaluation_matrix(&tri, 2);
    let r = crate::arith::rref(&m2);
    assert_eq!((r.rank, r.nullspace.len()), (3, 3));
    for v in &r.nullspace {
        assert!(m2.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
    }
}

#[test]
fn hilbert_data_examples() {
    let tri = hilbert_data(&PointSet::coordinate_triangle(q()));
    assert_eq!((tri.at(0), tri.at(1), tri.at(2), tri.at(7)), (1, 3, 3, 3));
    assert_eq!((tri.alpha, tri.sigma), (2, 2));

    let eight = random_points(fp(), 8, 5, &Constraints::general(8), 50).unwrap();
    let h = hilbert_data(&eight);
    assert_eq!(h.hf, vec![1, 3, 6, 8, 8]);
    assert_eq!(h.sigma, 4);

    let col = PointSet::from_integers(q(), &[[1, 0, 0], [0, 1, 0], [1, 1, 0]], Provenance::Explicit { name: None }).unwrap();
    assert_eq!(hilbert_data(&col).at(1), 2);
    assert!(!genericity_report(&col).generic_hf);
}

#[test]
fn graded_piece_examples() {
    let tri = PointSet::coordinate_triangle(q());
    let r = Ring::plane(q());
    let g2 = graded_piece(&tri, 2);
    let expected: Vec<Polynomial> = ["w1*w2", "w1*w3", "w2*w3"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
    let mut both = g2.basis.clone();
    both.extend(expected);
    assert_eq!(span_rank(&g2.basis, 2), 3);
    assert_eq!(span_rank(&both, 2), 3);
    assert!(graded_piece(&tri, 1).basis.is_empty());

    let frame = PointSet::frame4(q());
    let g = graded_piece(&frame, 2);
    let mut both = g.basis.clone();
    both.push(parse_polynomial(&r, "w2*w1 - w2*w3").unwrap());
    both.push(parse_polynomial(&r, "w3*w1 - w3*w2").unwrap());
    assert_eq!((g.basis.len(), span_rank(&both, 2)), (2, 2));
}

#[test]
fn s_decomposition() {
    assert_eq!(split_s(3), (2, 0));
    assert_eq!(split_s(4), (2, 1));
    assert_eq!(split_s(5), (2, 2));
    assert_eq!(split_s(7), (3, 1));
    assert_eq!(split_s(8), (3, 2));
    assert_eq!(split_s(1), (1, 0));
}

#[test]
fn frame_genericity() {
    let g = genericity_report(&PointSet::frame4(q()));
    assert_eq!((g.generic_hf, g.max_collinear, g.d, g.k), (true, 2, 2, 1));
    assert_eq!(max_collinear(&PointSet::three_collinear(q())), 3);
}

#[test]
fn random_points_contract() {
    let c = Constraints { generic_hf: true, ..Default::default() };
    let x = random_points(fp(), 3, 1, &c, 10).unwrap();
    assert_eq!(hilbert_data(&x).at(1), 3);
    assert_eq!(random_points(fp(), 6, 99, &Constraints::general(6), 20).unwrap(), random_points(fp(), 6, 99, &Constraints::general(6), 20).unwrap());
    let f2 = Field::prime(2).unwrap();
    assert!(random_points(f2, 4, 0, &Constraints::default(), 0).is_ok());
    assert_eq!(random_points(f2, 7, 0, &Constraints::default(), 0).unwrap().len(), 7);
    assert!(random_points(f2, 8, 0, &Constraints::default(), 0).is_err());
    assert!(random_points(q(), 3, 0, &Constraints::default(), 0).is_err());
    let tight = Constraints { exact_collinear: Some(3), ..Default::default() };
    assert!(matches!(random_points(fp(), 4, 0, &tight, 3), Err(crate::error::Error::RetriesExhausted(3))));
}

/// Standard monomials of degree `t` outside the initial ideal.
fn standard_count(lms: &[crate::poly::Monomial], t: u32) -> usize {
    plane_monomials(t).iter().filter(|m| !lms.iter().any(|l| l.divides(m))).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn evaluation_and_groebner_hilbert_functions_agree(s in 1usize..9, seed in 0u64..1000) {
        let x = random_points(fp(), s, seed, &Constraints::default(), 0).unwrap();
        let ideal: Ideal = points_ideal(&x);
        let gb = ideal.groebner_basis(&MonomialOrder::GrevLex, &Budget::unlimited()).unwrap();
        let lms = gb.leading_monomials();
        let hd = hilbert_data(&x);
        for t in 0..=(s as u32 + 3) {
            let dim = graded_piece(&x, t).basis.len();
            prop_assert_eq!(dim, plane_monomials(t).len() - hd.at(t));
            prop_assert_eq!(hd.at(t), standard_count(&lms, t));
        }
        // HF is nondecreasing, bounded by s, and stable from sigma on
        prop_assert!(hd.hf.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(hd.hf.iter().all(|&h| h <= s));
        prop_assert_eq!(hd.at(hd.sigma), s);
        for t in 0..=hd.sigma + 1 {
            for f in &graded_piece(&x, t).basis {
                for p in x.points() {
                    prop_assert!(f.evaluate(p).unwrap().is_zero());
                }
            }
        }
    }
}
