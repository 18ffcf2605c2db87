//! Local vertex operators intertwined by the deformed rational R-matrix:
//! the five-vertex operator itself, its `w4 = 0` companion, the
//! four-vertex degeneration, the nilpotent-pair family on `m+1`
//! dimensions, and the truncated bosonic solution.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_sqrt, Rational};
use crate::lattice::vertex_weights;

use super::ops::{DenseMatrix, LocalLOperator};

/// Five-vertex local operator: diagonal blocks `w1` and `0`, central
/// block `[[w4, w6], [w5, w3]]`, at spectral argument `u/xi`.
pub fn five_vertex_l(
    u: &Rational,
    xi: &Rational,
    alpha: &Rational,
    delta: &Rational,
) -> Result<LocalLOperator> {
    let w = vertex_weights(alpha, delta, u, xi)?;
    let a = DenseMatrix::from_rows(vec![
        vec![w.w1.clone(), Rational::zero()],
        vec![Rational::zero(), w.w4.clone()],
    ]);
    let b = DenseMatrix::from_rows(vec![
        vec![Rational::zero(), Rational::zero()],
        vec![w.w6.clone(), Rational::zero()],
    ]);
    let c = DenseMatrix::from_rows(vec![
        vec![Rational::zero(), w.w5.clone()],
        vec![Rational::zero(), Rational::zero()],
    ]);
    let d = DenseMatrix::from_rows(vec![
        vec![w.w3.clone(), Rational::zero()],
        vec![Rational::zero(), w.w2],
    ]);
    Ok(LocalLOperator::from_blocks(&a, &b, &c, &d))
}

/// Deliberately inadmissible five-vertex operator with a nonzero crossing
/// weight; a negative control for the intertwining checks.
pub fn corrupted_five_vertex_l(
    u: &Rational,
    xi: &Rational,
    alpha: &Rational,
    delta: &Rational,
    crossing: Rational,
) -> Result<LocalLOperator> {
    let l = five_vertex_l(u, xi, alpha, delta)?;
    let mut m = l.matrix().clone();
    m.set(3, 3, crossing);
    Ok(LocalLOperator::new(2, m))
}

/// Variants of the nilpotent-pair solution family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpmVariant {
    /// Upper-left slot carries the deformed diagonal; lower-right is `u`-linear.
    First,
    /// Lower-right slot carries the deformed diagonal; upper-left is `1/u`.
    Second,
    /// Common degeneration of the other two.
    Third,
}

/// Parameters of the nilpotent-pair family. The pair `S-`, `S+` acts on
/// `m+1` dimensions with `S- S+ S- = S-`, `(S-)^2 = 0`; the defining unit
/// vector must have rational entries with squares summing to one.
#[derive(Clone, Debug)]
pub struct SpmParams {
    pub variant: SpmVariant,
    pub m: usize,
    pub n_vec: Vec<Rational>,
    pub alpha: Rational,
    pub beta1: Rational,
    pub beta2: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl SpmParams {
    /// A rational unit vector for each supported `m` (components of
    /// Pythagorean tuples).
    pub fn default_unit_vector(m: usize) -> Result<Vec<Rational>> {
        let ints: &[(i64, i64)] = match m {
            1 => &[(1, 1)],
            2 => &[(3, 5), (4, 5)],
            3 => &[(3, 13), (4, 13), (12, 13)],
            _ => {
                return Err(Error::InvalidInput(format!(
                    "no built-in unit vector for m = {m}"
                )))
            }
        };
        Ok(ints.iter().map(|&(n, d)| crate::exact::rat(n, d)).collect())
    }
}

fn lower_shift(n_vec: &[Rational]) -> DenseMatrix {
    // nonzero entries only in the first column below the diagonal
    let m = n_vec.len();
    let mut s = DenseMatrix::zero(m + 1);
    for (i, v) in n_vec.iter().enumerate() {
        s.set(i + 1, 0, v.clone());
    }
    s
}

/// `X(beta) = E_00/(1+beta) + beta/(1+beta) (I - S- S+)`.
fn x_op(s_minus: &DenseMatrix, s_plus: &DenseMatrix, beta: &Rational) -> DenseMatrix {
    let dim = s_minus.dim();
    let one_plus = Rational::one() + beta;
    let e00 = s_plus.mul(s_minus); // equals E_00 for a unit vector
    let proj = DenseMatrix::identity(dim).sub(&s_minus.mul(s_plus));
    e00.scale(&(Rational::one() / &one_plus))
        .add(&proj.scale(&(beta / &one_plus)))
}

/// `Y(gamma) = I/(1+gamma) + (1/Delta - 1/(1+gamma)) S+ S- + gamma/(1+gamma) S- S+`.
fn y_op(
    s_minus: &DenseMatrix,
    s_plus: &DenseMatrix,
    gamma: &Rational,
    delta: &Rational,
) -> DenseMatrix {
    let dim = s_minus.dim();
    let one_plus = Rational::one() + gamma;
    let inv = Rational::one() / &one_plus;
    DenseMatrix::identity(dim)
        .scale(&inv)
        .add(&s_plus.mul(s_minus).scale(&(Rational::one() / delta - &inv)))
        .add(&s_minus.mul(s_plus).scale(&(gamma / &one_plus)))
}

/// Builds the nilpotent-pair local operator on `2(m+1)` dimensions.
pub fn spm_l(u: &Rational, params: &SpmParams) -> Result<LocalLOperator> {
    if u.is_zero() {
        return Err(Error::ZeroParameter("u"));
    }
    if params.delta.is_zero() {
        return Err(Error::ZeroParameter("delta"));
    }
    if !(&params.beta1 * &params.beta2).is_zero() {
        return Err(Error::InvalidInput(
            "nilpotent-pair family requires beta1 * beta2 = 0".into(),
        ));
    }
    if params.n_vec.len() != params.m {
        return Err(Error::InvalidInput(format!(
            "unit vector has {} components, expected m = {}",
            params.n_vec.len(),
            params.m
        )));
    }
    let norm: Rational = params.n_vec.iter().map(|v| v * v).sum();
    if !norm.is_one() {
        return Err(Error::InvalidInput(
            "defining vector must have unit square norm".into(),
        ));
    }
    for (name, v) in [("1+beta1", &params.beta1), ("1+beta2", &params.beta2), ("1+gamma", &params.gamma)] {
        if (Rational::one() + v).is_zero() {
            return Err(Error::InvalidInput(format!("{name} must be nonzero")));
        }
    }
    let needs_alpha = matches!(params.variant, SpmVariant::First | SpmVariant::Second);
    if needs_alpha && params.alpha.is_zero() {
        return Err(Error::ZeroParameter("alpha"));
    }

    let s_minus = lower_shift(&params.n_vec);
    let s_plus = s_minus.transpose();
    let x1 = x_op(&s_minus, &s_plus, &params.beta1);
    let x2 = x_op(&s_minus, &s_plus, &params.beta2);
    let y = y_op(&s_minus, &s_plus, &params.gamma, &params.delta);
    let u_inv = Rational::one() / u;

    let (a, d) = match params.variant {
        SpmVariant::First => {
            let a = y
                .scale(&(&params.alpha * u))
                .sub(&x1.scale(&(&params.alpha / &params.delta * &u_inv)));
            let d = x2.scale(&(u / &params.alpha));
            (a, d)
        }
        SpmVariant::Second => {
            let a = x1.scale(&(&params.alpha * &u_inv));
            let d = y
                .scale(&(&u_inv / &params.alpha))
                .sub(&x2.scale(&(u / (&params.alpha * &params.delta))));
            (a, d)
        }
        SpmVariant::Third => {
            let a = x1.scale(&(-&u_inv / &params.delta));
            let d = x2.scale(u);
            (a, d)
        }
    };
    Ok(LocalLOperator::from_blocks(&a, &s_minus, &s_plus, &d))
}

/// Four-vertex local operator: `w1 = -1/(Delta u)`, `w3 = u`,
/// `w2 = w4 = 0`, `w5 = w6 = 1` (argument `u/xi`).
pub fn four_vertex_l(u: &Rational, xi: &Rational, delta: &Rational) -> Result<LocalLOperator> {
    if u.is_zero() || xi.is_zero() {
        return Err(Error::ZeroParameter("u"));
    }
    if delta.is_zero() {
        return Err(Error::ZeroParameter("delta"));
    }
    let ratio = u / xi;
    let a = DenseMatrix::from_rows(vec![
        vec![-Rational::one() / (delta * &ratio), Rational::zero()],
        vec![Rational::zero(), Rational::zero()],
    ]);
    let mut b = DenseMatrix::zero(2);
    b.set(1, 0, Rational::one());
    let mut c = DenseMatrix::zero(2);
    c.set(0, 1, Rational::one());
    let d = DenseMatrix::from_rows(vec![
        vec![ratio, Rational::zero()],
        vec![Rational::zero(), Rational::zero()],
    ]);
    Ok(LocalLOperator::from_blocks(&a, &b, &c, &d))
}

/// Sign choice in the bosonic solution's off-diagonal dressing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BosonicSign {
    Plus,
    Minus,
}

/// Truncated bosonic local operator on Fock levels `0..cutoff`.
///
/// The diagonal blocks are `u Delta^(n-1) - alpha/(Delta u) proj0` and
/// `Delta^n / u + delta_param u proj0`; the off-diagonal blocks are the
/// deformed shift operators dressed by `1 +/- i sqrt(alpha delta) proj0`.
/// Requiring `alpha * delta_param = -s^2` for rational `s` keeps every
/// entry rational (`i sqrt(alpha delta)` becomes `-s` or `+s`); the
/// combination `alpha delta = -1` (i.e. `s = +/-1`) is excluded because
/// it kills one of the dressed corner entries.
pub fn bosonic_l(
    u: &Rational,
    alpha: &Rational,
    delta_param: &Rational,
    delta: &Rational,
    cutoff: usize,
    sign: BosonicSign,
) -> Result<LocalLOperator> {
    if u.is_zero() {
        return Err(Error::ZeroParameter("u"));
    }
    if delta.is_zero() {
        return Err(Error::ZeroParameter("delta"));
    }
    if cutoff < 3 {
        return Err(Error::InvalidInput(
            "bosonic truncation needs at least three Fock levels".into(),
        ));
    }
    let product = alpha * delta_param;
    let s = rat_sqrt(&(-&product)).ok_or_else(|| {
        Error::InvalidInput(
            "alpha * delta_param must be -s^2 for a rational s to keep entries rational".into(),
        )
    })?;
    if (&s * &s).is_one() {
        return Err(Error::InvalidInput(
            "alpha * delta_param = -1 is excluded".into(),
        ));
    }
    // i sqrt(alpha delta_param) = -s under the principal branch; the two
    // sign variants simply swap s -> -s.
    let i_sqrt = match sign {
        BosonicSign::Plus => -&s,
        BosonicSign::Minus => s.clone(),
    };

    let f = cutoff;
    let pow = |e: i64| -> Rational {
        let mut acc = Rational::one();
        if e >= 0 {
            for _ in 0..e {
                acc *= delta;
            }
        } else {
            for _ in 0..-e {
                acc /= delta;
            }
        }
        acc
    };

    let mut a = DenseMatrix::zero(f);
    let mut d = DenseMatrix::zero(f);
    for n in 0..f {
        a.set(n, n, u * pow(n as i64 - 1));
        d.set(n, n, pow(n as i64) / u);
    }
    let a00 = a.get(0, 0) - alpha / (delta * u);
    a.set(0, 0, a00);
    let d00 = d.get(0, 0) + delta_param * u;
    d.set(0, 0, d00);

    // raising and lowering blocks; the vacuum projector dresses the
    // raising block on its input side and the lowering block on its
    // output side, so only one corner entry of each is touched
    let mut b = DenseMatrix::zero(f);
    for n in 0..f - 1 {
        b.set(n + 1, n, pow(n as i64));
    }
    let b10 = b.get(1, 0) * (Rational::one() + &i_sqrt);
    b.set(1, 0, b10);

    let mut c = DenseMatrix::zero(f);
    for n in 0..f - 1 {
        c.set(n, n + 1, pow(n as i64));
    }
    let c01 = c.get(0, 1) * (Rational::one() - &i_sqrt);
    c.set(0, 1, c01);

    Ok(LocalLOperator::from_blocks(&a, &b, &c, &d))
}

/// The deformed shift operators of the bosonic solution, truncated; handy
/// for checking their quadratic relations.
pub fn bosonic_shift_ops(delta: &Rational, cutoff: usize) -> (DenseMatrix, DenseMatrix) {
    let mut raise = DenseMatrix::zero(cutoff);
    let mut lower = DenseMatrix::zero(cutoff);
    let mut power = Rational::one();
    for n in 0..cutoff - 1 {
        raise.set(n + 1, n, power.clone());
        lower.set(n, n + 1, power.clone());
        power *= delta;
    }
    (raise, lower)
}
