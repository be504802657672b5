use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::arith::Field;
use crate::budget::Budget;
use crate::error::Error;
use crate::groebner::{ideal_equal, Ideal};
use crate::points::{random_points, Constraints, PointSet};
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring};
use crate::report::{Regime, Status};
use crate::resolution::PresentationMatrix;

fn fp() -> Field {
    Field::prime(32003).unwrap()
}

fn unlimited() -> Budget {
    Budget::unlimited()
}

fn case_of(x: &PointSet) -> CaseData {
    CaseData::from_points(x, &unlimited()).unwrap()
}

fn general(s: usize, seed: u64) -> PointSet {
    random_points(fp(), s, seed, &Constraints::general(s), 100).unwrap()
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

fn one_row(entries: &[&str], row_degree: u32, col_degrees: &[u32]) -> PresentationMatrix {
    let r = Ring::plane(Field::Rational);
    PresentationMatrix::new(&r, vec![entries.iter().map(|e| p(&r, e)).collect()], vec![row_degree], col_degrees.to_vec(), Vec::new())
        .unwrap()
}

#[test]
fn tensors_of_a_linear_row() {
    let l = one_row(&["w1", "-w2", "0"], 3, &[2, 2, 2]);
    let t = coefficient_tensors(&l, Splitting::Symmetric).unwrap();
    let q = Field::Rational;
    assert_eq!(t.lambda.len(), 2);
    assert_eq!(t.lambda(0, 0, 0), Some(&q.one()));
    assert_eq!(t.lambda(0, 1, 1), Some(&q.from_i64(-1)));
    assert!(t.gamma.is_empty());
}

#[test]
fn tensors_split_quadrics() {
    let l = one_row(&["w1*w3 - w2*w3", "w2^2"], 4, &[2, 2]);
    let q = Field::Rational;
    let half = q.from_ratio(&1.into(), &2.into()).unwrap();
    let t = coefficient_tensors(&l, Splitting::Symmetric).unwrap();
    assert_eq!(t.gamma(0, 0, 2, 0), Some(&half));
    assert_eq!(t.gamma(0, 2, 0, 0), Some(&half));
    assert_eq!(t.gamma(0, 1, 2, 0), Some(&half.neg()));
    assert_eq!(t.gamma(0, 2, 1, 0), Some(&half.neg()));
    assert_eq!(t.gamma(0, 1, 1, 1), Some(&q.one()));
    let u = coefficient_tensors(&l, Splitting::UpperTriangular).unwrap();
    assert_eq!(u.gamma(0, 0, 2, 0), Some(&q.one()));
    assert_eq!(u.gamma(0, 2, 0, 0), None);
}

#[test]
fn tensors_reject_cubics_and_characteristic_two() {
    let l = one_row(&["w1^3", "w2^3"], 5, &[2, 2]);
    assert!(matches!(coefficient_tensors(&l, Splitting::Symmetric), Err(Error::Invalid(_))));
    let r = Ring::plane(Field::prime(2).unwrap());
    let l2 = PresentationMatrix::new(&r, vec![vec![p(&r, "w1*w2"), p(&r, "w3^2")]], vec![4], vec![2, 2], Vec::new()).unwrap();
    assert!(coefficient_tensors(&l2, Splitting::Symmetric).is_err());
    assert!(coefficient_tensors(&l2, Splitting::UpperTriangular).is_ok());
}

#[test]
fn tensors_reproduce_every_entry() {
    for x in [general(7, 2), general(8, 3), general(5, 4)] {
        let case = case_of(&x);
        let r = case.l.ring().clone();
        for split in [Splitting::Symmetric, Splitting::UpperTriangular] {
            let t = coefficient_tensors(&case.l, split).unwrap();
            for (row, entries) in case.l.entries().iter().enumerate() {
                for (col, e) in entries.iter().enumerate() {
                    let mut acc = Polynomial::zero(&r);
                    for i in 0..3 {
                        if let Some(v) = t.lambda(row, col, i) {
                            acc = &acc + &Polynomial::var(&r, i).scale(v);
                        }
                        for h in 0..3 {
                            if let Some(v) = t.gamma(row, i, h, col) {
                                acc = &acc + &(&Polynomial::var(&r, i) * &Polynomial::var(&r, h)).scale(v);
                            }
                        }
                    }
                    assert_eq!(&acc, e);
                }
            }
        }
    }
}

#[test]
fn case_tags_and_shapes() {
    let tri = case_of(&PointSet::coordinate_triangle(Field::Rational));
    assert_eq!((tri.tag, tri.d, tri.k, tri.l.shape()), (CaseTag::Binomial, 2, 0, "2x3".to_string()));
    assert_eq!(tri.f.len(), 3);
    let frame = case_of(&PointSet::frame4(Field::Rational));
    assert_eq!((frame.tag, frame.l.shape(), frame.f.len(), frame.g.len()), (CaseTag::DAtLeast2k, "1x2".into(), 2, 0));
    let five = case_of(&general(5, 1));
    assert_eq!((five.tag, five.l.shape(), five.f.len(), five.g.len()), (CaseTag::DLessThan2k, "2x3".into(), 1, 2));
    let seven = case_of(&general(7, 1));
    assert_eq!((seven.tag, seven.l.shape(), seven.l.row_degrees().to_vec()), (CaseTag::DAtLeast2k, "2x3".into(), vec![5, 4]));
    let eight = case_of(&general(8, 1));
    assert_eq!((eight.tag, eight.f.len(), eight.g.len()), (CaseTag::DLessThan2k, 2, 1));
    assert_eq!((rho(2, 0), rho(2, 1), rho(2, 2), rho(3, 1), rho(3, 2), rho(5, 1)), (2, 1, 2, 2, 2, 4));
}

#[test]
fn non_general_points_fail_the_block_shape() {
    // three collinear points among four: two conics become a line and a cubic
    let err = CaseData::from_points(&PointSet::three_collinear(Field::Rational), &unlimited());
    assert!(matches!(err, Err(Error::Degenerate(_))));
}

#[test]
fn matrix_m_for_the_triangle() {
    let case = case_of(&PointSet::coordinate_triangle(Field::Rational));
    let m = build_m(&case).unwrap();
    assert_eq!(m.shape(), (3, 4));
    let r = m.ring().clone();
    let minors = m.minors(2);
    assert_eq!(minors.len(), 18);
    let first = minors.iter().find(|(rows, cols, _)| rows == &vec![0, 1] && cols == &vec![0, 1]).unwrap();
    assert_eq!(first.2, p(&r, "w1*x21 - w2*x11"));
    for (_, _, f) in &minors {
        assert!(matches!(f.bidegree().unwrap(), (1, 1) | (0, 2)));
    }
    assert!(build_m(&case_of(&PointSet::frame4(Field::Rational))).is_err());
}

fn span_equal(r: &Arc<Ring>, a: &[Polynomial], b: &[Polynomial]) -> bool {
    let ia = Ideal::new(r, a.to_vec()).unwrap();
    let ib = Ideal::new(r, b.to_vec()).unwrap();
    ideal_equal(&ia, &ib, &MonomialOrder::GrevLex, &unlimited()).unwrap()
}

#[test]
fn linear_relations_of_the_triangle() {
    let case = case_of(&PointSet::coordinate_triangle(Field::Rational));
    let t = coefficient_tensors(&case.l, Splitting::Symmetric).unwrap();
    let rel = linear_relations(&t, &case).unwrap();
    assert_eq!(rel.len(), 2);
    let r = case.rees_ring(false);
    // F = (w1w2, w1w3, w2w3), so w3*F1 = w2*F2 = w1*F3
    let plane = case.points_ideal.ring();
    assert_eq!(case.f, vec![p(plane, "w1*w2"), p(plane, "w1*w3"), p(plane, "w2*w3")]);
    assert!(span_equal(&r, &rel, &[p(&r, "x31 - x22"), p(&r, "x22 - x13")]));
}

#[test]
fn linear_relation_counts() {
    let five = case_of(&general(5, 2));
    assert!(linear_relations(&coefficient_tensors(&five.l, Splitting::Symmetric).unwrap(), &five).unwrap().is_empty());
    let seven = case_of(&general(7, 2));
    assert_eq!(linear_relations(&coefficient_tensors(&seven.l, Splitting::Symmetric).unwrap(), &seven).unwrap().len(), 1);
    let frame = case_of(&PointSet::frame4(Field::Rational));
    assert!(linear_relations(&coefficient_tensors(&frame.l, Splitting::Symmetric).unwrap(), &frame).unwrap().is_empty());
}

#[test]
fn matrix_b_shapes_and_identity() {
    for x in [PointSet::frame4(Field::Rational), general(5, 3), general(7, 3), general(8, 3)] {
        let case = case_of(&x);
        let t = coefficient_tensors(&case.l, Splitting::Symmetric).unwrap();
        let b = build_b(&t, &case).unwrap();
        assert_eq!(b.shape(), (case.k, 3));
        let images = case.graph_images();
        let plane = case.points_ideal.ring().clone();
        for u in 0..case.k {
            let mut acc = Polynomial::zero(&plane);
            for i in 0..3 {
                let e = b.entry(u, i);
                assert!(e.is_zero() || e.bidegree().unwrap() == (0, 1));
                acc = &acc + &(&e.substitute(&images).unwrap() * &Polynomial::var(&plane, i));
            }
            assert!(acc.is_zero());
        }
        let has_y = b.entries().iter().flatten().any(|e| e.terms().iter().any(|(m, _)| m.exps()[3 + 3 * case.f.len()..].iter().any(|&v| v > 0)));
        assert_eq!(has_y, case.tag == CaseTag::DLessThan2k);
        assert!(b.minors(3).is_empty());
    }
    let tri = case_of(&PointSet::coordinate_triangle(Field::Rational));
    assert!(build_b(&coefficient_tensors(&tri.l, Splitting::Symmetric).unwrap(), &tri).is_err());
}

#[test]
fn ideal_j_counts_and_containment() {
    for x in [PointSet::frame4(Field::Rational), general(5, 5), general(7, 5), general(8, 5)] {
        let case = case_of(&x);
        let t = coefficient_tensors(&case.l, Splitting::Symmetric).unwrap();
        let xm = build_x(&case);
        let n = case.d - case.k + 2;
        assert_eq!(xm.shape(), (3, n));
        let j = build_j(Some(&build_b(&t, &case).unwrap()), &xm).unwrap();
        let counts = j.counts();
        assert_eq!(counts["entry-of-bx"], case.k * n);
        assert_eq!(counts["minor-of-x"], 3 * n * (n - 1) / 2);
        assert!(!counts.contains_key("minor-of-b"));
        let images = case.graph_images();
        assert!(j.polys().iter().all(|f| f.substitute(&images).unwrap().is_zero()));
        assert!(j.items.iter().any(|(s, _)| s.involves_w_column()));
    }
}

#[test]
fn theorem_generator_counts() {
    let tri = case_of(&PointSet::coordinate_triangle(Field::Rational));
    let g = theorem_generators(&tri, &coefficient_tensors(&tri.l, Splitting::Symmetric).unwrap()).unwrap();
    assert_eq!(g.counts().get("minor-of-x"), Some(&18));
    assert_eq!(g.counts().get("linear-relation"), Some(&2));

    let frame = case_of(&PointSet::frame4(Field::Rational));
    let g = theorem_generators(&frame, &coefficient_tensors(&frame.l, Splitting::Symmetric).unwrap()).unwrap();
    assert_eq!(g.len(), 12);
    assert_eq!((g.counts()["minor-of-x"], g.counts()["entry-of-bx"]), (9, 3));

    let eight = case_of(&general(8, 7));
    let g = theorem_generators(&eight, &coefficient_tensors(&eight.l, Splitting::Symmetric).unwrap()).unwrap();
    assert!(!g.counts().contains_key("linear-relation"));
    let y1 = g.ring.var_index("y1").unwrap();
    assert!(g.polys().iter().any(|f| f.uses_var(y1)));
}

#[test]
fn elimination_examples() {
    let b = unlimited();
    let tri = PointSet::coordinate_triangle(Field::Rational);
    let k2 = rees_via_elimination(&tri, 2, &b).unwrap();
    let lin: Vec<&Polynomial> = k2.gens().iter().filter(|g| g.degree() == Some(2) && g.bidegree().unwrap() == (1, 1)).collect();
    assert!(lin.len() >= 2);

    let case = case_of(&tri);
    let k3 = rees_via_elimination_case(&case, &b).unwrap();
    let mut bidegrees: Vec<(u32, u32)> = bigraded_minimal_generators(&k3, &b).unwrap().into_iter().map(|(d, _)| d).collect();
    bidegrees.dedup();
    assert_eq!(bidegrees, vec![(0, 1), (1, 1), (0, 2)]);

    // five general points: I_2 is spanned by one conic
    let five = general(5, 1);
    assert!(rees_via_elimination(&five, 2, &b).unwrap().is_zero());
    assert!(rees_via_elimination(&tri, 1, &b).is_err());
}

#[test]
fn bigraded_generators_of_the_zero_ideal() {
    let r = Ring::rees_flat(Field::Rational, 2, false);
    assert!(bigraded_minimal_generators(&Ideal::zero(&r), &unlimited()).unwrap().is_empty());
}

#[test]
fn minors_of_b_give_cubics_when_k_is_three() {
    let x = general(9, 1);
    let case = case_of(&x);
    assert_eq!((case.d, case.k, case.tag), (3, 3, CaseTag::DLessThan2k));
    let t = coefficient_tensors(&case.l, Splitting::Symmetric).unwrap();
    let g = theorem_generators(&case, &t).unwrap();
    assert_eq!(g.counts()["minor-of-b"], 1);
    let k = rees_via_elimination_case(&case, &unlimited()).unwrap();
    let mins = bigraded_minimal_generators(&k, &unlimited()).unwrap();
    assert!(mins.iter().any(|(b, _)| *b == (0, 3)));
}

#[test]
fn verification_of_the_witness_instances() {
    let opts = VerifyOptions::default();
    let tri = verify_theorem(&PointSet::coordinate_triangle(Field::Rational), 3, &opts, &unlimited()).unwrap();
    assert_eq!((tri.status, tri.regime), (Status::Ok, Regime::DeterminantalGenerators));
    assert!(tri.passed(), "{:?}", tri.failures());
    assert_eq!(tri.rees.as_ref().unwrap().max_total_generator_degree, 2);
    let v = tri.verdicts.as_ref().unwrap();
    assert_eq!((v.equal, v.perfect, v.betti_match), (Some(true), Some(true), Some(true)));

    let frame = verify_theorem(&PointSet::frame4(Field::Rational), 3, &opts, &unlimited()).unwrap();
    assert!(frame.passed(), "{:?}", frame.failures());
    assert_eq!(frame.observations.splitting_independent, Some(true));
}

#[test]
fn special_position_is_rejected_for_determinantal_generators() {
    let x = PointSet::three_collinear(fp());
    let r = verify_theorem(&x, 3, &VerifyOptions::default(), &unlimited()).unwrap();
    assert_eq!(r.status, Status::RejectedInstance);
    assert!(r.verdicts.is_none());
    assert!(r.reason.is_some());
}

#[test]
fn tiny_budget_is_reported() {
    let r = verify_theorem(&general(7, 11), 4, &VerifyOptions::default(), &Budget::with_steps(3)).unwrap();
    assert_eq!(r.status, Status::BudgetExceeded);
    assert!(r.verdicts.is_none());
}

#[test]
fn exploratory_runs_claim_nothing_but_soundness() {
    let r = verify_theorem(&PointSet::frame4(Field::Rational), 2, &VerifyOptions::default(), &unlimited()).unwrap();
    assert_eq!(r.regime, Regime::Exploratory);
    let v = r.verdicts.unwrap();
    assert_eq!(v.elimination_sound, Some(true));
    assert_eq!((v.equal, v.perfect), (None, None));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn predicted_generators_vanish_on_the_graph(seed in 0u64..10_000, s in 3usize..10) {
        // any point set whose presentation has the block shape, general or not
        let x = random_points(fp(), s, seed, &Constraints::default(), 10).unwrap();
        if let Ok(case) = CaseData::from_points(&x, &unlimited()) {
            let t = coefficient_tensors(&case.l, Splitting::Symmetric).unwrap();
            if let Ok(g) = theorem_generators(&case, &t) {
                let images = case.graph_images();
                for f in g.polys() {
                    prop_assert!(f.substitute(&images).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn splittings_give_the_same_ideal(seed in 0u64..10_000, s in prop::sample::select(vec![4usize, 5, 7, 8])) {
        let x = general(s, seed);
        let case = case_of(&x);
        let a = theorem_generators(&case, &coefficient_tensors(&case.l, Splitting::Symmetric).unwrap()).unwrap();
        let b = theorem_generators(&case, &coefficient_tensors(&case.l, Splitting::UpperTriangular).unwrap()).unwrap();
        prop_assert!(ideal_equal(&a.ideal().unwrap(), &b.ideal().unwrap(), &MonomialOrder::GrevLex, &unlimited()).unwrap());
    }
}
