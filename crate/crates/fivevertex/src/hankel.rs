//! Homogeneous-limit evaluations built on Hankel determinants: the
//! eigenvalue-ratio forms, their explicit rational-function forms, the
//! iterated-Euler-operator forms, and the terminating-hypergeometric
//! forms, together with the derivative identity and the homogeneous-
//! function determinant identity these rest on.
//!
//! Everything lives in `x = u^2`. Monomial prefactors can carry
//! half-integer powers of `x`; they are tracked exactly through doubled
//! exponents and only ever collapse against a rapidity `u` or an even
//! total.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    det_exact, factorial, pochhammer, rat, rat_int, rat_pow, BivariateQuotient, Polynomial,
    Rational, RationalFunction,
};
use crate::lattice::LatticeSpec;

/// Which determinant size evaluates the partition function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Determinant of size `L - N`.
    LN,
    /// Determinant of size `N`.
    N,
}

impl Side {
    pub fn size(self, spec: &LatticeSpec) -> usize {
        match self {
            Side::LN => spec.l - spec.n,
            Side::N => spec.n,
        }
    }

    /// The smaller of the two, for callers free to choose.
    pub fn smaller(spec: &LatticeSpec) -> Side {
        if spec.n <= spec.l - spec.n {
            Side::N
        } else {
            Side::LN
        }
    }
}

/// Exact scalar `coefficient * x^(doubled_exponent / 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfPowerScalar {
    pub coefficient: Rational,
    pub doubled_exponent: i64,
}

impl HalfPowerScalar {
    pub fn new(coefficient: Rational, doubled_exponent: i64) -> Self {
        HalfPowerScalar {
            coefficient,
            doubled_exponent,
        }
    }

    /// Collapses at `x` when the exponent is integral.
    pub fn collapse(&self, x: &Rational) -> Option<Rational> {
        (self.doubled_exponent % 2 == 0)
            .then(|| &self.coefficient * rat_pow(x, self.doubled_exponent / 2))
    }

    /// Exact value with `x = u^2`: the half powers become powers of `u`.
    pub fn value_with_u(&self, u: &Rational) -> Rational {
        &self.coefficient * rat_pow(u, self.doubled_exponent)
    }
}

/// Symbolic value `fun(x) * x^(parity/2)` with `parity` in `{0, 1}`.
#[derive(Clone, Debug)]
pub struct HalfPowerFunction {
    pub fun: RationalFunction,
    pub parity: u32,
}

/// Coefficients of the terminating Gauss series `sum (a)_k (b)_k /
/// ((c)_k k!) z^k`: at least one upper parameter must be a nonpositive
/// integer, and the lower parameter must stay clear of nonpositive
/// integers until termination.
pub fn hyp2f1_coefficients(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<Rational>> {
    let as_termination = |q: &Rational| -> Option<usize> {
        (q.is_integer() && !q.is_positive()).then(|| (-q).to_integer().try_into().unwrap())
    };
    let k_max = match (as_termination(a), as_termination(b)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => return Err(Error::NonTerminating),
    };
    let mut coeffs = Vec::with_capacity(k_max + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for k in 0..k_max {
        let c_factor = c + rat_int(k as i64);
        if c_factor.is_zero() {
            return Err(Error::PochhammerZero {
                c: c.to_string(),
                k: k + 1,
            });
        }
        term = term * (a + rat_int(k as i64)) * (b + rat_int(k as i64))
            / (c_factor * rat_int(k as i64 + 1));
        coeffs.push(term.clone());
    }
    Ok(coeffs)
}

/// Exact value of the terminating Gauss series at `x`.
pub fn hyp2f1_terminating(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: &Rational,
) -> Result<Rational> {
    let coeffs = hyp2f1_coefficients(a, b, c)?;
    let mut acc = Rational::zero();
    for coeff in coeffs.iter().rev() {
        acc = acc * x + coeff;
    }
    Ok(acc)
}

/// `c (x-1)^p x^q` as a rational function, exponents of either sign.
fn power_product(c: Rational, p: i64, q: i64) -> RationalFunction {
    let x_minus_one = RationalFunction::from_poly(Polynomial::from_ints(&[-1, 1]));
    (&x_minus_one.pow(p) * &RationalFunction::monomial(Rational::one(), q)).scale(&c)
}

/// `[f, f'/1!, f''/2!, ...]`, `count` terms.
fn taylor_sequence(base: &RationalFunction, count: usize) -> Vec<RationalFunction> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(base.clone());
    for s in 1..count {
        let next = out[s - 1].derivative().scale(&rat(1, s as i64));
        out.push(next);
    }
    out
}

/// `[f, (x d/dx) f, (x d/dx)^2 f, ...]`, `count` terms.
fn euler_sequence(base: &RationalFunction, count: usize) -> Vec<RationalFunction> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(base.clone());
    for s in 1..count {
        out.push(out[s - 1].euler_derivative(1));
    }
    out
}

fn check_x(x: &Rational) -> Result<()> {
    if x.is_zero() || x.is_one() {
        return Err(Error::PoleInput(format!(
            "x = {x} sits on a pole or zero of the entry functions"
        )));
    }
    Ok(())
}

fn sign_of(exponent: i64) -> Rational {
    if exponent.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Hankel matrix from a shifted Taylor sequence: entry `(i, j)` (1-based)
/// reads position `i + j - 1 + shift`; negative positions hold zero, the
/// vanishing of coefficients of negative order.
fn hankel_from_taylor(
    seq: &[RationalFunction],
    size: usize,
    shift: i64,
) -> Vec<Vec<RationalFunction>> {
    (1..=size as i64)
        .map(|i| {
            (1..=size as i64)
                .map(|j| {
                    let s = i + j - 1 + shift;
                    if s < 0 {
                        RationalFunction::zero()
                    } else {
                        seq[s as usize].clone()
                    }
                })
                .collect()
        })
        .collect()
}

fn eval_matrix(matrix: &[Vec<RationalFunction>], x: &Rational) -> Result<Vec<Vec<Rational>>> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| {
                    f.eval(x)
                        .ok_or_else(|| Error::PoleInput(format!("entry has a pole at x = {x}")))
                })
                .collect()
        })
        .collect()
}

fn eval_euler_hankel(
    base: &RationalFunction,
    size: usize,
    x: &Rational,
) -> Result<Vec<Vec<Rational>>> {
    let seq = euler_sequence(base, 2 * size.max(1) - 1);
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    seq[i + j]
                        .eval(x)
                        .ok_or_else(|| Error::PoleInput(format!("entry has a pole at x = {x}")))
                })
                .collect()
        })
        .collect()
}

/// Eigenvalue-ratio evaluation at a rational rapidity: the size-`L-N`
/// determinant of shifted Taylor coefficients of `(a/d)(x) x^(N-1)`, or
/// the size-`N` determinant for the reciprocal ratio, with the printed
/// monomial and sign prefactors. Exact at any `u` off `{0, +-1}`.
pub fn z_hankel_ad(
    spec: &LatticeSpec,
    u: &Rational,
    alpha: &Rational,
    delta: &Rational,
    side: Side,
) -> Result<Rational> {
    if u.is_zero() {
        return Err(Error::ZeroParameter("u"));
    }
    let x = u * u;
    check_x(&x)?;
    let (l, m, n) = (spec.l as i64, spec.m as i64, spec.n as i64);
    let size = side.size(spec);
    let shift = match side {
        Side::LN => -(l - 2 * n),
        Side::N => l - 2 * n,
    };
    let base = match side {
        // (a/d) x^(N-1) = alpha^(2M) Delta^(-M) (x-1)^M x^(N-1-M)
        Side::LN => power_product(rat_pow(alpha, 2 * m) * rat_pow(delta, -m), m, n - 1 - m),
        // (d/a) x^(1-N) = Delta^M alpha^(-2M) (x-1)^(-M) x^(M+1-N)
        Side::N => power_product(rat_pow(delta, m) * rat_pow(alpha, -2 * m), -m, m + 1 - n),
    };
    let max_pos = (2 * size as i64 - 1 + shift).max(0) as usize;
    let seq = taylor_sequence(&base, max_pos + 1);
    let matrix = hankel_from_taylor(&seq, size, shift);
    let det = det_exact(&eval_matrix(&matrix, &x)?);

    let d_val = rat_pow(u, m) * rat_pow(alpha, -m);
    let a_val = rat_pow(alpha, m) * rat_pow(delta, -m) * rat_pow(&(u - Rational::one() / u), m);
    Ok(match side {
        Side::LN => {
            sign_of((l - n) * (l - n - 1) / 2)
                * rat_pow(delta, n * (l - n))
                * rat_pow(&d_val, l)
                * rat_pow(u, 2 * (l - n))
                * det
        }
        Side::N => {
            sign_of(n * l + n * (n + 1) / 2)
                * rat_pow(delta, n * (l - n))
                * rat_pow(&a_val, l)
                * rat_pow(u, 2 * n * (l - 1))
                * det
        }
    })
}

/// The explicit-entry form, symbolic in `x`: determinant of shifted
/// Taylor coefficients of `(x-1)^M / x^(M-N+1)` (size `L-N`) or its
/// reciprocal (size `N`), with the monomial prefactor carrying an exact
/// half power of `x` when `ML` is odd.
pub fn z_explicit_symbolic(
    spec: &LatticeSpec,
    alpha: &Rational,
    delta: &Rational,
    side: Side,
) -> Result<HalfPowerFunction> {
    if alpha.is_zero() {
        return Err(Error::ZeroParameter("alpha"));
    }
    if delta.is_zero() {
        return Err(Error::ZeroParameter("delta"));
    }
    let (l, m, n) = (spec.l as i64, spec.m as i64, spec.n as i64);
    let size = side.size(spec);
    let shift = match side {
        Side::LN => -(l - 2 * n),
        Side::N => l - 2 * n,
    };
    let base = match side {
        Side::LN => power_product(Rational::one(), m, n - m - 1),
        Side::N => power_product(Rational::one(), -m, m - n + 1),
    };
    let max_pos = (2 * size as i64 - 1 + shift).max(0) as usize;
    let seq = taylor_sequence(&base, max_pos + 1);
    let det = det_exact(&hankel_from_taylor(&seq, size, shift));

    let alpha_delta = rat_pow(alpha, m * (l - 2 * n)) * rat_pow(delta, -((l - n) * (m - n)));
    let (sign, doubled_power, extra) = match side {
        Side::LN => (
            sign_of((l - n) * (l - n - 1) / 2),
            2 * (l - n) + m * l,
            RationalFunction::one(),
        ),
        Side::N => (
            sign_of(n * l + n * (n + 1) / 2),
            2 * n * (l - 1) - m * l,
            power_product(Rational::one(), m * l, 0),
        ),
    };
    let parity = doubled_power.rem_euclid(2) as u32;
    let whole = (doubled_power - parity as i64) / 2;
    let fun = &(&det.scale(&(sign * alpha_delta)) * &extra)
        * &RationalFunction::monomial(Rational::one(), whole);
    Ok(HalfPowerFunction { fun, parity })
}

/// Explicit-entry evaluation at a rational `x` off `{0, 1}`: entries are
/// evaluated first, so the determinant runs over plain rationals.
pub fn z_hankel_explicit(
    spec: &LatticeSpec,
    x: &Rational,
    alpha: &Rational,
    delta: &Rational,
    side: Side,
) -> Result<HalfPowerScalar> {
    check_x(x)?;
    let (l, m, n) = (spec.l as i64, spec.m as i64, spec.n as i64);
    let size = side.size(spec);
    let shift = match side {
        Side::LN => -(l - 2 * n),
        Side::N => l - 2 * n,
    };
    let base = match side {
        Side::LN => power_product(Rational::one(), m, n - m - 1),
        Side::N => power_product(Rational::one(), -m, m - n + 1),
    };
    let max_pos = (2 * size as i64 - 1 + shift).max(0) as usize;
    let seq = taylor_sequence(&base, max_pos + 1);
    let det = det_exact(&eval_matrix(&hankel_from_taylor(&seq, size, shift), x)?);

    let alpha_delta = rat_pow(alpha, m * (l - 2 * n)) * rat_pow(delta, -((l - n) * (m - n)));
    Ok(match side {
        Side::LN => HalfPowerScalar::new(
            sign_of((l - n) * (l - n - 1) / 2) * alpha_delta * det,
            2 * (l - n) + m * l,
        ),
        Side::N => HalfPowerScalar::new(
            sign_of(n * l + n * (n + 1) / 2)
                * alpha_delta
                * det
                * rat_pow(&(x - Rational::one()), m * l),
            2 * n * (l - 1) - m * l,
        ),
    })
}

/// Iterated-Euler-operator form: entries `(x d/dx)^(i+j-2)` applied to a
/// single base function obtained from `N` (respectively `L-N`) plain
/// derivatives of a power product.
///
/// The size-`N` sign here is `(-1)^(N(L+1))`, pinned by cross-checking
/// against the other forms and the enumeration; a circulating variant of
/// this formula carries `(-1)^((L-N)N/2)` instead, which fails those
/// cross-checks (already at `L = 3`, `N = 1`, where the two differ).
pub fn z_euler_form(
    spec: &LatticeSpec,
    x: &Rational,
    alpha: &Rational,
    delta: &Rational,
    side: Side,
) -> Result<HalfPowerScalar> {
    check_x(x)?;
    let (l, m, n) = (spec.l as i64, spec.m as i64, spec.n as i64);
    let size = side.size(spec);
    let (inner_order, raw) = match side {
        Side::LN => (
            spec.n,
            power_product(Rational::one(), m + l - n - 1, -(m - n + 1)),
        ),
        Side::N => (
            spec.l - spec.n,
            power_product(Rational::one(), -(m - n + 1), m - n + 1),
        ),
    };
    let mut base = raw;
    for _ in 0..inner_order {
        base = base.derivative();
    }
    let det = det_exact(&eval_euler_hankel(&base, size, x)?);

    let alpha_delta = rat_pow(alpha, m * (l - 2 * n)) * rat_pow(delta, -((l - n) * (m - n)));
    Ok(match side {
        Side::LN => {
            let mut factor = sign_of((l - n) * (l - n - 1) / 2) * alpha_delta;
            for i in 1..=l - n {
                factor *= factorial((m + i - 1) as usize)
                    / factorial((n + i - 1) as usize)
                    / factorial((m + l - n - 1) as usize);
            }
            HalfPowerScalar::new(factor * det, m * l - (l - n) * (l - n - 3))
        }
        Side::N => {
            let mut factor = sign_of(n * (l + 1)) * alpha_delta;
            for i in 1..=n {
                factor *= factorial((m - n) as usize)
                    / factorial((l - i) as usize)
                    / factorial((m - i) as usize);
            }
            let value = factor * det * rat_pow(&(x - Rational::one()), m * l);
            HalfPowerScalar::new(value, 2 * n * (l - 1) - m * l - n * (n - 1))
        }
    })
}

/// The Hankel base function of the terminating-hypergeometric form.
pub fn hypergeom_base(spec: &LatticeSpec, side: Side) -> Result<RationalFunction> {
    let (l, m, n) = (spec.l as i64, spec.m as i64, spec.n as i64);
    match side {
        Side::LN => {
            // (x-1)^(M+L-2N-1) x^(-(M+1)) F(-N, L-N-1; -M; x)
            let coeffs = hyp2f1_coefficients(&rat_int(-n), &rat_int(l - n - 1), &rat_int(-m))?;
            let series = RationalFunction::from_poly(Polynomial::new(coeffs));
            Ok(&power_product(Rational::one(), m + l - 2 * n - 1, -(m + 1)) * &series)
        }
        Side::N => {
            // x^(M-L+1) (x-1)^(-(M+L-2N+1)) F(N+1-L, N-L; 2N-L-M; 1-x);
            // the reflected argument keeps the lower parameter clear of
            // zero whenever the series has not yet terminated
            let coeffs = hyp2f1_coefficients(
                &rat_int(n + 1 - l),
                &rat_int(n - l),
                &rat_int(2 * n - l - m),
            )?;
            let one_minus_x = Polynomial::from_ints(&[1, -1]);
            let mut series = Polynomial::zero();
            let mut power = Polynomial::one();
            for c in &coeffs {
                series = &series + &power.scale(c);
                power = &power * &one_minus_x;
            }
            Ok(&power_product(Rational::one(), -(m + l - 2 * n + 1), m - l + 1)
                * &RationalFunction::from_poly(series))
        }
    }
}

/// Terminating-hypergeometric form: the Euler-operator base function in
/// closed form, with factorial prefactors.
pub fn z_hypergeom(
    spec: &LatticeSpec,
    x: &Rational,
    alpha: &Rational,
    delta: &Rational,
    side: Side,
) -> Result<HalfPowerScalar> {
    check_x(x)?;
    if spec.n > spec.m {
        return Err(Error::InvalidInput(
            "hypergeometric form needs the line count bounded by the row count".into(),
        ));
    }
    let (l, m, n) = (spec.l as i64, spec.m as i64, spec.n as i64);
    let size = side.size(spec);
    let base = hypergeom_base(spec, side)?;
    let det = det_exact(&eval_euler_hankel(&base, size, x)?);

    let alpha_delta = rat_pow(alpha, m * (l - 2 * n)) * rat_pow(delta, -((l - n) * (m - n)));
    Ok(match side {
        Side::LN => {
            let mut factor = sign_of((l - n) * (l - n - 1) / 2) * alpha_delta;
            for i in 1..=l - n {
                factor *= factorial(m as usize) * factorial((m + i - 1) as usize)
                    / factorial((m - n) as usize)
                    / factorial((m + l - n - 1) as usize)
                    / factorial((n + i - 1) as usize);
            }
            HalfPowerScalar::new(factor * det, m * l - (l - n) * (l - n - 3))
        }
        Side::N => {
            let mut factor = alpha_delta;
            for i in 1..=n {
                factor *= factorial((l + m - 2 * n) as usize)
                    / factorial((l - i) as usize)
                    / factorial((m - i) as usize);
            }
            let value = factor * det * rat_pow(&(x - Rational::one()), m * l);
            HalfPowerScalar::new(value, -l * (m - 2 * n) - n * (n + 1))
        }
    })
}

/// Left side by repeated exact differentiation, right side through the
/// terminating series: `d^n/dx^n [(x-1)^(-a) x^(-b)] = (b)_n (x-1)^(-a-n)
/// x^(-b-n) F(-n, 1-n-a-b; 1-n-b; x)`. Both sides are compared as the
/// polynomial cofactor of `(x-1)^(-a-n) x^(-b-n)`, and once more at the
/// sample point.
pub fn verify_derivative_formula(
    order: usize,
    a: &Rational,
    b: &Rational,
    x: &Rational,
) -> Result<bool> {
    let n = order as i64;
    if b.is_integer() && !b.is_positive() {
        let bound = num_bigint::BigInt::from(n);
        if -b.to_integer() < bound {
            return Err(Error::InvalidInput(format!(
                "parameter b = {b} hits the excluded nonpositive range for order {order}"
            )));
        }
    }
    // iterated derivative of (x-1)^p x^q C(x) with p = -a-k, q = -b-k:
    // C -> C' x(x-1) + C (p x + q (x-1))
    let mut cofactor = Polynomial::one();
    let x_poly = Polynomial::x();
    let x_minus_one = Polynomial::from_ints(&[-1, 1]);
    for k in 0..order {
        let p = -(a + rat_int(k as i64));
        let q = -(b + rat_int(k as i64));
        cofactor = &(&cofactor.derivative() * &(&x_poly * &x_minus_one))
            + &(&cofactor * &(&x_poly.scale(&p) + &x_minus_one.scale(&q)));
    }
    let lhs = cofactor;

    let coeffs = hyp2f1_coefficients(
        &rat_int(-n),
        &(rat_int(1 - n) - a - b),
        &(rat_int(1 - n) - b),
    )?;
    let rhs = Polynomial::new(coeffs).scale(&pochhammer(b, order));

    Ok(lhs == rhs && lhs.eval(x) == rhs.eval(x))
}

/// For a homogeneous function of two variables, the determinant of mixed
/// partials at `y = 1` equals `(-1/x)^(n(n-1)/2)` times the Hankel
/// determinant of iterated Euler derivatives of the restriction.
/// Homogeneity of degree `nu` is enforced first on sampled scalings.
pub fn verify_lemma_dets(h: &BivariateQuotient, nu: i64, size: usize) -> Result<bool> {
    let samples = [
        (rat_int(2), rat_int(3), rat_int(2)),
        (rat(5, 2), rat(1, 3), rat_int(3)),
        (rat(-3, 2), rat(7, 4), rat(3, 2)),
    ];
    let mut checked = 0;
    for (x0, y0, t) in &samples {
        let scaled = h.eval(&(t * x0), &(t * y0));
        let plain = h.eval(x0, y0);
        if let (Some(scaled), Some(plain)) = (scaled, plain) {
            if scaled != rat_pow(t, nu) * plain {
                return Err(Error::InvalidInput(format!(
                    "function is not homogeneous of degree {nu}"
                )));
            }
            checked += 1;
        }
    }
    if checked == 0 {
        return Err(Error::InvalidInput(
            "homogeneity check found no usable sample points".into(),
        ));
    }

    // left side: mixed partials, then y = 1
    let mut x_derivs = vec![h.clone()];
    for _ in 1..size {
        x_derivs.push(x_derivs.last().unwrap().partial_x());
    }
    let mut lhs_rows = Vec::with_capacity(size);
    for dx in &x_derivs {
        let mut row = Vec::with_capacity(size);
        let mut current = dx.clone();
        for j in 0..size {
            row.push(current.at_y_one());
            if j + 1 < size {
                current = current.partial_y();
            }
        }
        lhs_rows.push(row);
    }
    let lhs = det_exact(&lhs_rows);

    // right side: Euler-operator Hankel determinant of the restriction
    let restricted = h.at_y_one();
    let seq = euler_sequence(&restricted, 2 * size.max(1) - 1);
    let rhs_rows: Vec<Vec<RationalFunction>> = (0..size)
        .map(|i| (0..size).map(|j| seq[i + j].clone()).collect())
        .collect();
    let half = (size as i64) * (size as i64 - 1) / 2;
    let scale = RationalFunction::monomial(sign_of(half), -half);
    let rhs = &det_exact(&rhs_rows) * &scale;

    Ok(lhs == rhs)
}

/// True when the reduced denominator is a constant times a power of `x`
/// times a power of `x - 1`: the derivative chains must not grow any
/// other pole.
pub fn denominator_is_pole_restricted(f: &RationalFunction) -> bool {
    let mut den = f.den().clone();
    let x = Polynomial::x();
    let x_minus_one = Polynomial::from_ints(&[-1, 1]);
    loop {
        if den.degree() == Some(0) {
            return true;
        }
        let (q, r) = den.div_rem(&x);
        if r.is_zero() {
            den = q;
            continue;
        }
        let (q, r) = den.div_rem(&x_minus_one);
        if r.is_zero() {
            den = q;
            continue;
        }
        return false;
    }
}
