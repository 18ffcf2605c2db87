//! Exact arithmetic kernel: big rationals, dense univariate and minimal
//! bivariate polynomials, rational functions with exact derivatives, and
//! exact determinants. No floating point anywhere.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything here is safe to use from any number of
//! threads without synchronization.

mod bivar;
mod det;
mod poly;
mod ratfun;
mod rational;

pub use bivar::{BivariatePolynomial, BivariateQuotient};
pub use det::{det_exact, Field};
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use rational::{
    factorial, from_wire, pochhammer, rat, rat_int, rat_pow, rat_sqrt, to_decimal, to_wire,
    Rational,
};

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(arb_rational(), 0..=max_deg + 1).prop_map(Polynomial::new)
    }

    fn arb_ratfun() -> impl Strategy<Value = RationalFunction> {
        (arb_poly(3), arb_poly(2)).prop_filter_map("nonzero denominator", |(n, d)| {
            if d.is_zero() {
                None
            } else {
                Some(RationalFunction::new(n, d))
            }
        })
    }

    proptest! {
        #[test]
        fn product_rule_holds_exactly(f in arb_ratfun(), g in arb_ratfun()) {
            let lhs = (&f * &g).derivative();
            let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn euler_derivative_composes(f in arb_ratfun(), j in 0usize..=3, k in 0usize..=3) {
            prop_assert_eq!(
                f.euler_derivative(j + k),
                f.euler_derivative(j).euler_derivative(k)
            );
        }

        #[test]
        fn determinant_vanishes_on_equal_rows(
            row in proptest::collection::vec(arb_rational(), 3),
            other in proptest::collection::vec(arb_rational(), 3),
        ) {
            let m = vec![row.clone(), other, row];
            prop_assert!(det_exact(&m).is_zero());
        }

        #[test]
        fn determinant_is_multilinear_in_rows(
            a in proptest::collection::vec(arb_rational(), 4),
            b in proptest::collection::vec(arb_rational(), 4),
            rest in proptest::collection::vec(proptest::collection::vec(arb_rational(), 4), 3),
            c in arb_rational(),
        ) {
            // det with first row a + c*b splits linearly
            let sum_row: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x + &c * y).collect();
            let with = |first: Vec<Rational>| {
                let mut m = vec![first];
                m.extend(rest.iter().cloned());
                det_exact(&m)
            };
            prop_assert_eq!(with(sum_row), with(a) + c * with(b));
        }

        #[test]
        fn ratfun_equality_matches_cross_multiplication(f in arb_ratfun(), g in arb_ratfun()) {
            let cross = &(f.num() * g.den()) - &(g.num() * f.den());
            prop_assert_eq!(f == g, cross.is_zero());
        }

        #[test]
        fn canonicalization_is_idempotent(f in arb_ratfun()) {
            let again = RationalFunction::new(f.num().clone(), f.den().clone());
            prop_assert_eq!(&again.num(), &f.num());
            prop_assert_eq!(&again.den(), &f.den());
        }
    }
}
