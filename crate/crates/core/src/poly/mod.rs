//! Sparse multivariate polynomials, monomial orders and the `(w, x/y)` bigrading.

mod det;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use det::{determinant, minors, signed_maximal_minors, subsets};
pub use monomial::Monomial;
pub use order::{compare, InnerOrder, MonomialOrder, OrderBlock};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use polynomial::{poly_op, PolyOp, Polynomial};
pub use ring::{same_ring, x_name, Ring, VarKind};

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::arith::Field;
    use crate::error::Error;

    fn plane() -> Arc<Ring> {
        Ring::plane(Field::Rational)
    }

    fn p(ring: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(ring, s).unwrap()
    }

    fn mono(ring: &Arc<Ring>, s: &str) -> Monomial {
        p(ring, s).terms()[0].0.clone()
    }

    #[test]
    fn grevlex_tie_break_on_last_variable() {
        let r = plane();
        let o = MonomialOrder::GrevLex;
        assert_eq!(compare(&o, &mono(&r, "w1^2"), &mono(&r, "w1*w2")).unwrap(), Ordering::Greater);
        assert_eq!(compare(&o, &mono(&r, "w1*w3"), &mono(&r, "w2^2")).unwrap(), Ordering::Less);
        let m = mono(&r, "w1*w2^3");
        assert_eq!(compare(&o, &m, &m).unwrap(), Ordering::Equal);
    }

    #[test]
    fn elimination_block_dominates() {
        let r = Ring::rees(Field::Rational, 1, 0, true);
        let t = r.var_index("t").unwrap();
        let o = MonomialOrder::elimination(&r, &[t]).unwrap();
        assert_eq!(o.compare(&mono(&r, "t"), &mono(&r, "w1^5")), Ordering::Greater);
        assert_eq!(o.compare(&mono(&r, "x11*w2"), &mono(&r, "w1*w3")), Ordering::Less);
        assert_eq!(o.compare(&mono(&r, "t*w1"), &mono(&r, "x11^3")), Ordering::Greater);
    }

    #[test]
    fn compare_rejects_mismatched_lengths() {
        let a = Monomial::one(3);
        let b = Monomial::one(4);
        assert_eq!(compare(&MonomialOrder::GrevLex, &a, &b), Err(Error::RingMismatch));
    }

    #[test]
    fn block_order_must_partition() {
        let blocks = vec![OrderBlock { vars: vec![0, 1], inner: InnerOrder::Lex }];
        assert!(MonomialOrder::block(blocks, 3).is_err());
    }

    #[test]
    fn square_of_binomial() {
        let r = plane();
        let f = p(&r, "w1 + w2");
        assert_eq!(&f * &f, p(&r, "w1^2 + 2*w1*w2 + w2^2"));
        assert_eq!((&f * &f).to_string(), "w1^2 + 2*w1*w2 + w2^2");
        assert!((&f * &Polynomial::zero(&r)).is_zero());
        assert_eq!(&p(&r, "w1") * &p(&r, "w2*w3"), p(&r, "w1*w2*w3"));
    }

    #[test]
    fn arithmetic_across_rings_is_rejected() {
        let a = p(&plane(), "w1");
        let b = p(&Ring::plane(Field::prime(7).unwrap()), "w1");
        assert_eq!(poly_op(&a, &b, PolyOp::Add), Err(Error::RingMismatch));
    }

    #[test]
    fn bidegrees() {
        let r = Ring::rees(Field::Rational, 3, 0, false);
        assert_eq!(p(&r, "w1*x11").bidegree().unwrap(), (1, 1));
        assert_eq!(p(&r, "x11*x22").bidegree().unwrap(), (0, 2));
        assert!(matches!(p(&r, "w1*w2 + x11").bidegree(), Err(Error::NotBihomogeneous { .. })));
        assert!(matches!(Polynomial::zero(&r).bidegree(), Err(Error::ZeroPolynomial(_))));
    }

    #[test]
    fn printing_follows_grammar() {
        let r = plane();
        let f = p(&r, "-3/2*w1*w2 + w3^2 - 1 + w1^2");
        assert_eq!(f.to_string(), "w1^2 - 3/2*w1*w2 + w3^2 - 1");
        assert_eq!(p(&r, "-w2").to_string(), "-w2");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        let rp = Ring::plane(Field::prime(7).unwrap());
        assert_eq!(p(&rp, "w1 - w2").to_string(), "w1 + 6*w2");
    }

    #[test]
    fn parse_errors() {
        let r = plane();
        assert!(matches!(parse_polynomial(&r, "w4"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial(&r, "w1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial(&r, "1/0*w1"), Err(Error::Parse { .. })));
        assert_eq!(parse_polynomial(&r, "w1^300"), Err(Error::ExponentOverflow));
    }

    #[test]
    fn long_index_names() {
        let r = Ring::rees(Field::Rational, 10, 0, false);
        assert!(r.var_index("x_3_10").is_some());
        let f = p(&r, "x_1_10*w2 - x_2_10*w1");
        assert_eq!(p(&r, &f.to_string()), f);
    }

    #[test]
    fn substitution_and_evaluation() {
        let r = plane();
        let f = p(&r, "w1*w2 - w3^2");
        let images = vec![p(&r, "w1 + w2"), p(&r, "w1 - w2"), p(&r, "w3")];
        assert_eq!(f.substitute(&images).unwrap(), p(&r, "w1^2 - w2^2 - w3^2"));
        let pt: Vec<_> = [2, 3, 1].iter().map(|&v| Field::Rational.from_i64(v)).collect();
        assert_eq!(f.evaluate(&pt).unwrap(), Field::Rational.from_i64(5));
    }

    fn arb_poly(ring: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u8..3, 3), -5i64..6), 0..6).prop_map(move |terms| {
            Polynomial::from_terms(
                &ring,
                terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), ring.field().from_i64(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(plane()), g in arb_poly(plane()), h in arb_poly(plane())) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn print_parse_round_trip(f in arb_poly(plane())) {
            let r = f.ring().clone();
            prop_assert_eq!(parse_polynomial(&r, &f.to_string()).unwrap(), f.clone());
            let rp = Ring::plane(Field::prime(32003).unwrap());
            let g = f.change_field(&rp).unwrap();
            prop_assert_eq!(parse_polynomial(&rp, &g.to_string()).unwrap(), g);
        }

        #[test]
        fn orders_are_total_and_transitive(
            a in prop::collection::vec(0u8..4, 4),
            b in prop::collection::vec(0u8..4, 4),
            c in prop::collection::vec(0u8..4, 4),
        ) {
            let (a, b, c) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b), Monomial::from_exponents(&c));
            let block = MonomialOrder::block(vec![
                OrderBlock { vars: vec![3], inner: InnerOrder::Lex },
                OrderBlock { vars: vec![0, 1, 2], inner: InnerOrder::GrevLex },
            ], 4).unwrap();
            for o in [MonomialOrder::Lex, MonomialOrder::GrevLex, block] {
                prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
                if o.compare(&a, &b) != Ordering::Less && o.compare(&b, &c) != Ordering::Less {
                    prop_assert!(o.compare(&a, &c) != Ordering::Less);
                }
                // multiplicative and 1 is minimal
                prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), o.compare(&a, &b));
                prop_assert!(o.compare(&Monomial::one(4), &a) != Ordering::Greater);
            }
        }
    }
}
