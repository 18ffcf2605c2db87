//! Minimal bivariate polynomials and quotients: just enough to state and
//! check identities about mixed partial derivatives of homogeneous
//! functions of two variables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use super::rational::{rat_int, rat_pow, Rational};

/// Coefficient grid `coeffs[i][j]` for `x^i y^j`, trimmed so the last row
/// and the last column each contain a nonzero entry (zero is the empty grid).
#[derive(Clone, PartialEq, Eq)]
pub struct BivariatePolynomial {
    coeffs: Vec<Vec<Rational>>,
}

impl BivariatePolynomial {
    pub fn new(mut coeffs: Vec<Vec<Rational>>) -> Self {
        let width = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        for row in &mut coeffs {
            row.resize(width, Rational::zero());
        }
        // trim all-zero border rows, then all-zero border columns
        while coeffs
            .last()
            .is_some_and(|row| row.iter().all(Rational::is_zero))
        {
            coeffs.pop();
        }
        let mut width = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        while width > 0 && coeffs.iter().all(|row| row[width - 1].is_zero()) {
            width -= 1;
            for row in &mut coeffs {
                row.pop();
            }
        }
        if coeffs.iter().all(|row| row.is_empty()) {
            coeffs.clear();
        }
        BivariatePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        BivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(rat_int(1), 0, 0)
    }

    /// `c * x^dx * y^dy`.
    pub fn monomial(c: Rational, dx: usize, dy: usize) -> Self {
        let mut coeffs = vec![vec![Rational::zero(); dy + 1]; dx + 1];
        coeffs[dx][dy] = c;
        BivariatePolynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Exact mixed partial derivative of order (`dx`, `dy`).
    pub fn partial(&self, dx: usize, dy: usize) -> BivariatePolynomial {
        let mut out = self.clone();
        for _ in 0..dx {
            out = out.partial_x();
        }
        for _ in 0..dy {
            out = out.partial_y();
        }
        out
    }

    fn partial_x(&self) -> BivariatePolynomial {
        if self.coeffs.len() <= 1 {
            return BivariatePolynomial::zero();
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|c| c * rat_int(i as i64 + 1)).collect())
            .collect();
        BivariatePolynomial::new(coeffs)
    }

    fn partial_y(&self) -> BivariatePolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, c)| c * rat_int(j as i64))
                    .collect()
            })
            .collect();
        BivariatePolynomial::new(coeffs)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    acc += c * rat_pow(x, i as i64) * rat_pow(y, j as i64);
                }
            }
        }
        acc
    }

    /// Substitutes `y = 1`, collapsing to a univariate polynomial in `x`.
    pub fn at_y_one(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|row| row.iter().sum::<Rational>())
                .collect(),
        )
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let rows = self.coeffs.len().max(rhs.coeffs.len());
        let cols = self
            .coeffs
            .first()
            .map_or(0, Vec::len)
            .max(rhs.coeffs.first().map_or(0, Vec::len));
        let coeffs = (0..rows)
            .map(|i| (0..cols).map(|j| self.coeff(i, j) + rhs.coeff(i, j)).collect())
            .collect();
        BivariatePolynomial::new(coeffs)
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial::new(
            self.coeffs
                .iter()
                .map(|row| row.iter().map(|c| -c).collect())
                .collect(),
        )
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePolynomial::zero();
        }
        let rows = self.coeffs.len() + rhs.coeffs.len() - 1;
        let cols = self.coeffs[0].len() + rhs.coeffs[0].len() - 1;
        let mut coeffs = vec![vec![Rational::zero(); cols]; rows];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, rrow) in rhs.coeffs.iter().enumerate() {
                    for (l, b) in rrow.iter().enumerate() {
                        if !b.is_zero() {
                            coeffs[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        BivariatePolynomial::new(coeffs)
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({c})*x^{i}*y^{j}")?;
            }
        }
        Ok(())
    }
}

/// Unreduced quotient of bivariate polynomials. Derivatives use the
/// quotient rule without cancellation; sizes stay small at the orders
/// needed here.
#[derive(Clone)]
pub struct BivariateQuotient {
    pub num: BivariatePolynomial,
    pub den: BivariatePolynomial,
}

impl BivariateQuotient {
    pub fn new(num: BivariatePolynomial, den: BivariatePolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        BivariateQuotient { num, den }
    }

    pub fn from_poly(p: BivariatePolynomial) -> Self {
        BivariateQuotient::new(p, BivariatePolynomial::one())
    }

    pub fn partial_x(&self) -> BivariateQuotient {
        let num = &(&self.num.partial(1, 0) * &self.den) - &(&self.num * &self.den.partial(1, 0));
        BivariateQuotient::new(num, &self.den * &self.den)
    }

    pub fn partial_y(&self) -> BivariateQuotient {
        let num = &(&self.num.partial(0, 1) * &self.den) - &(&self.num * &self.den.partial(0, 1));
        BivariateQuotient::new(num, &self.den * &self.den)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let den = self.den.eval(x, y);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(x, y) / den)
    }

    /// Substitutes `y = 1`, producing a reduced univariate function of `x`.
    pub fn at_y_one(&self) -> RationalFunction {
        RationalFunction::new(self.num.at_y_one(), self.den.at_y_one())
    }
}
