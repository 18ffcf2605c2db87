//! Exact determinants over any field with decidable zero tests.

use num_traits::{One, Zero};

use super::ratfun::RationalFunction;
use super::rational::Rational;

/// Minimal field interface for exact elimination.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Exact determinant by Gaussian elimination with row pivoting on the
/// first nonzero entry. The result does not depend on pivot choices;
/// the 0x0 determinant is 1. Panics if the rows are not square.
pub fn det_exact<F: Field>(matrix: &[Vec<F>]) -> F {
    let n = matrix.len();
    for row in matrix {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let mut m: Vec<Vec<F>> = matrix.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return F::zero(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = det.neg();
        }
        let pivot = m[col][col].clone();
        det = det.mul(&pivot);
        let (pivot_rows, rest) = m.split_at_mut(col + 1);
        let pivot_row = &pivot_rows[col];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].div(&pivot);
            for (slot, above) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *slot = slot.sub(&factor.mul(above));
            }
        }
    }
    det
}
