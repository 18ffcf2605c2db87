//! Determinant evaluations of the vacuum matrix elements: the split
//! power-row matrix for the inhomogeneous model, its homogeneous-limit
//! derivative form, the compact scalar-product determinant, and the
//! identity connecting the two determinant sizes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{det_exact, factorial, rat_pow, Polynomial, Rational, RationalFunction};
use crate::lattice::{require_distinct_squares, LatticeSpec, Rapidities, WeightParams};

/// Vacuum eigenvalue functions `a`, `d` for the diagonal monodromy
/// blocks: either the closed forms of the five-vertex model, or a finite
/// table of free values (the determinant formulas hold for arbitrary
/// eigenvalue assignments).
#[derive(Clone, Debug)]
pub enum VacuumEigenvalues {
    FiveVertex {
        alpha: Rational,
        delta: Rational,
        xi: Vec<Rational>,
    },
    Table(BTreeMap<Rational, (Rational, Rational)>),
}

impl VacuumEigenvalues {
    pub fn five_vertex(params: &WeightParams, m_rows: usize) -> Self {
        let xi = (1..=m_rows).map(|k| params.xi_at(k)).collect();
        VacuumEigenvalues::FiveVertex {
            alpha: params.alpha.clone(),
            delta: params.delta.clone(),
            xi,
        }
    }

    pub fn table(entries: impl IntoIterator<Item = (Rational, (Rational, Rational))>) -> Self {
        VacuumEigenvalues::Table(entries.into_iter().collect())
    }

    pub fn a(&self, u: &Rational) -> Result<Rational> {
        match self {
            VacuumEigenvalues::FiveVertex { alpha, delta, xi } => {
                let mut acc = Rational::one();
                for x in xi {
                    acc *= alpha / delta * (u / x - x / u);
                }
                Ok(acc)
            }
            VacuumEigenvalues::Table(map) => map
                .get(u)
                .map(|(a, _)| a.clone())
                .ok_or_else(|| Error::InvalidInput(format!("no eigenvalue table entry for u = {u}"))),
        }
    }

    pub fn d(&self, u: &Rational) -> Result<Rational> {
        match self {
            VacuumEigenvalues::FiveVertex { alpha, xi, .. } => {
                let mut acc = Rational::one();
                for x in xi {
                    acc *= u / (alpha * x);
                }
                Ok(acc)
            }
            VacuumEigenvalues::Table(map) => map
                .get(u)
                .map(|(_, d)| d.clone())
                .ok_or_else(|| Error::InvalidInput(format!("no eigenvalue table entry for u = {u}"))),
        }
    }
}

/// The `L x L` split power-row matrix: row `i` (1-based) carries
/// `d(u_j) u_j^(2i-1)` for `i <= split` and `a(u_j) u_j^(2i-3)` above it.
pub fn split_power_matrix(
    us: &[Rational],
    split: usize,
    eig: &VacuumEigenvalues,
) -> Result<Vec<Vec<Rational>>> {
    let l = us.len();
    let mut rows = Vec::with_capacity(l);
    for i in 1..=l {
        let mut row = Vec::with_capacity(l);
        for u in us {
            let entry = if i <= split {
                eig.d(u)? * rat_pow(u, 2 * i as i64 - 1)
            } else {
                eig.a(u)? * rat_pow(u, 2 * i as i64 - 3)
            };
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn vandermonde_square_inverse(us: &[Rational]) -> Result<Rational> {
    let mut acc = Rational::one();
    for j in 0..us.len() {
        for i in 0..j {
            let diff = &us[j] * &us[j] - &us[i] * &us[i];
            if diff.is_zero() {
                return Err(Error::CoincidentRapidities { i, j });
            }
            acc *= diff;
        }
    }
    Ok(Rational::one() / acc)
}

/// Matrix element of `n` annihilating, `m` diagonal-`A` and `n` creating
/// operators: `Delta^((n+m)n) prod_(j=1..m) u_(n+j) prod_(i<j) (u_j^2 -
/// u_i^2)^(-1) det V` with split index `n`. The rapidity list is ordered
/// creation block, middle block, annihilation block.
pub fn s_a(
    n: usize,
    m: usize,
    us: &[Rational],
    eig: &VacuumEigenvalues,
    delta: &Rational,
) -> Result<Rational> {
    assert_eq!(us.len(), 2 * n + m, "rapidity count must be 2n + m");
    require_distinct_squares(us)?;
    let matrix = split_power_matrix(us, n, eig)?;
    let mut value = rat_pow(delta, ((n + m) * n) as i64) * det_exact(&matrix);
    value *= vandermonde_square_inverse(us)?;
    for j in 0..m {
        value *= &us[n + j];
    }
    Ok(value)
}

/// Companion with `m` diagonal-`D` operators: split index `n + m` and the
/// middle-block rapidities inverted.
pub fn s_d(
    n: usize,
    m: usize,
    us: &[Rational],
    eig: &VacuumEigenvalues,
    delta: &Rational,
) -> Result<Rational> {
    assert_eq!(us.len(), 2 * n + m, "rapidity count must be 2n + m");
    require_distinct_squares(us)?;
    let matrix = split_power_matrix(us, n + m, eig)?;
    let mut value = rat_pow(delta, ((n + m) * n) as i64) * det_exact(&matrix);
    value *= vandermonde_square_inverse(us)?;
    for j in 0..m {
        value /= &us[n + j];
    }
    Ok(value)
}

/// Partition function of the inhomogeneous model as a single determinant.
/// Wide lattices (`L >= 2N`) route through the `A`-block element with
/// `n = N`, tall boundaries through the `D`-block element with
/// `n = L - N`; the monomial prefactor always runs over the middle block
/// of rapidities (positions `n+1 ..= n+m`), which the enumeration oracle
/// confirms against the alternative first-block reading.
pub fn z_inhomogeneous_det(spec: &LatticeSpec, params: &WeightParams) -> Result<Rational> {
    let us: Vec<Rational> = match &params.rapidities {
        Rapidities::Inhomogeneous { u, xi } => {
            if u.len() != spec.l || xi.len() != spec.m {
                return Err(Error::InvalidInput(format!(
                    "expected {} column and {} row rapidities, got {} and {}",
                    spec.l,
                    spec.m,
                    u.len(),
                    xi.len()
                )));
            }
            u.clone()
        }
        Rapidities::Homogeneous { .. } => {
            return Err(Error::InvalidInput(
                "inhomogeneous determinant needs distinct rapidities; use the homogeneous-limit evaluation instead".into(),
            ))
        }
    };
    let eig = VacuumEigenvalues::five_vertex(params, spec.m);
    if spec.l >= 2 * spec.n {
        s_a(spec.n, spec.l - 2 * spec.n, &us, &eig, &params.delta)
    } else {
        s_d(spec.l - spec.n, 2 * spec.n - spec.l, &us, &eig, &params.delta)
    }
}

/// Homogeneous-limit row generators. Every eigenvalue-times-power row is
/// `u^eps * h(u^2)` with a common parity `eps = (M+1) mod 2`, so the
/// derivative in `u^2` acts on pairs `(eps, h)` as
/// `h -> h' + (eps/2) h/x`.
pub struct LimitRows {
    pub parity: u32,
    pub generators: Vec<RationalFunction>,
}

/// Generators `h_i` for the limit matrix rows at split `n_split`: rows
/// `1..=n_split` from the `d`-side, the rest from the `a`-side. The row
/// rapidities may stay inhomogeneous; only the column rapidity merges.
pub fn limit_row_generators(
    l: usize,
    n_split: usize,
    alpha: &Rational,
    delta: &Rational,
    xi: &[Rational],
) -> LimitRows {
    let m_rows = xi.len();
    let parity = ((m_rows + 1) % 2) as u32;
    // d(u) u^(2i-1) = (prod 1/(alpha xi)) u^(M + 2i - 1)
    // a(u) u^(2i-3) = ((alpha/Delta)^M prod 1/xi) u^(2i-3-M) prod (x - xi^2)
    let c_d: Rational = xi.iter().map(|x| Rational::one() / (alpha * x)).product();
    let c_a: Rational = xi.iter().map(|x| alpha / delta / x).product();
    let root_poly = xi.iter().fold(Polynomial::one(), |acc, x| {
        &acc * &Polynomial::new(vec![-(x * x), Rational::one()])
    });
    let mut generators = Vec::with_capacity(l);
    for i in 1..=l {
        let gen = if i <= n_split {
            let e = (m_rows + 2 * i - 1) as i64;
            RationalFunction::monomial(c_d.clone(), (e - parity as i64) / 2)
        } else {
            let e = 2 * i as i64 - 3 - m_rows as i64;
            let mono = RationalFunction::monomial(c_a.clone(), (e - parity as i64) / 2);
            &mono * &RationalFunction::from_poly(root_poly.clone())
        };
        generators.push(gen);
    }
    LimitRows { parity, generators }
}

/// Applies the half-parity-aware derivative `h -> h' + (eps/2) h/x`.
pub fn parity_derivative(h: &RationalFunction, parity: u32) -> RationalFunction {
    let mut out = h.derivative();
    if parity == 1 {
        let half_over_x = RationalFunction::monomial(crate::exact::rat(1, 2), -1);
        out = &out + &(&half_over_x * h);
    }
    out
}

/// The homogeneous-limit matrix as symbolic functions of `x = u^2`:
/// entry `(i, j)` is the `(j-1)`-th Taylor-coefficient operator applied
/// to row generator `i`.
pub fn limit_matrix_symbolic(rows: &LimitRows) -> Vec<Vec<RationalFunction>> {
    let l = rows.generators.len();
    let mut out = Vec::with_capacity(l);
    for gen in &rows.generators {
        let mut row = Vec::with_capacity(l);
        let mut current = gen.clone();
        for j in 1..=l {
            row.push(current.scale(&(Rational::one() / factorial(j - 1))));
            if j < l {
                current = parity_derivative(&current, rows.parity);
            }
        }
        out.push(row);
    }
    out
}

/// Partition function of the homogeneous model through the limit matrix:
/// `Z = Delta^(N(L-N)) u^(L-2N) det Q(u^2)` with the parity power of `u`
/// restored.
pub fn z_homogeneous_limit_det(
    spec: &LatticeSpec,
    u: &Rational,
    alpha: &Rational,
    delta: &Rational,
) -> Result<Rational> {
    if u.is_zero() {
        return Err(Error::ZeroParameter("u"));
    }
    if alpha.is_zero() {
        return Err(Error::ZeroParameter("alpha"));
    }
    if delta.is_zero() {
        return Err(Error::ZeroParameter("delta"));
    }
    let xi = vec![Rational::one(); spec.m];
    let rows = limit_row_generators(spec.l, spec.n, alpha, delta, &xi);
    let symbolic = limit_matrix_symbolic(&rows);
    let x = u * u;
    let mut matrix = Vec::with_capacity(spec.l);
    for row in &symbolic {
        let mut out = Vec::with_capacity(spec.l);
        for f in row {
            out.push(f.eval(&x).ok_or_else(|| {
                Error::PoleInput(format!("limit matrix entry has a pole at x = {x}"))
            })?);
        }
        matrix.push(out);
    }
    let det = det_exact(&matrix);
    Ok(rat_pow(delta, (spec.n * (spec.l - spec.n)) as i64)
        * rat_pow(u, spec.l as i64 - 2 * spec.n as i64)
        * rat_pow(u, rows.parity as i64 * spec.l as i64)
        * det)
}

/// Compact `n x n` scalar-product determinant with the annihilation-side
/// rapidities read off the tail of `us` in reverse. Includes the
/// `Delta^(n^2)` normalization that aligns it with [`s_a`] at `m = 0`
/// (the determinant itself is interaction-independent).
pub fn scalar_product_compact(
    n: usize,
    us: &[Rational],
    eig: &VacuumEigenvalues,
    delta: &Rational,
) -> Result<Rational> {
    assert_eq!(us.len(), 2 * n, "rapidity count must be 2n");
    require_distinct_squares(us)?;
    let a_tilde: Vec<Rational> = us
        .iter()
        .map(|u| Ok(eig.a(u)? * rat_pow(u, 2 * n as i64 - 1)))
        .collect::<Result<_>>()?;
    let d_tilde: Vec<Rational> = us
        .iter()
        .map(|u| Ok(eig.d(u)? * u))
        .collect::<Result<_>>()?;
    let value = compact_determinant_side(n, us, &a_tilde, &d_tilde)?;
    Ok(rat_pow(delta, (n * n) as i64) * value)
}

fn compact_determinant_side(
    n: usize,
    us: &[Rational],
    a_tilde: &[Rational],
    d_tilde: &[Rational],
) -> Result<Rational> {
    let sq: Vec<Rational> = us.iter().map(|u| u * u).collect();
    let mut matrix = Vec::with_capacity(n);
    for i in 1..=n {
        let rev = 2 * n - i; // 0-based index of u_(2n-i+1)
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let den = &sq[j] - &sq[rev];
            if den.is_zero() {
                return Err(Error::CoincidentRapidities { i: j, j: rev });
            }
            row.push((&d_tilde[rev] * &a_tilde[j] - &d_tilde[j] * &a_tilde[rev]) / den);
        }
        matrix.push(row);
    }
    let mut value = det_exact(&matrix);
    for k in 0..n {
        for j in 0..k {
            value /= (&sq[k] - &sq[j]) * (&sq[n + k] - &sq[n + j]);
        }
    }
    Ok(value)
}

/// The two determinant sizes agree: the `2n x 2n` split power-row form
/// equals the compact `n x n` form for arbitrary free values standing in
/// for the eigenvalue combinations. Returns both sides.
pub fn determinant_size_identity(
    n: usize,
    us: &[Rational],
    a_tilde: &[Rational],
    d_tilde: &[Rational],
) -> Result<(Rational, Rational)> {
    assert_eq!(us.len(), 2 * n);
    assert_eq!(a_tilde.len(), 2 * n);
    assert_eq!(d_tilde.len(), 2 * n);
    require_distinct_squares(us)?;
    // large side: rows d~_j u_j^(2(i-1)), then a~_j u_j^(2(i-n-1))
    let l = 2 * n;
    let mut matrix = Vec::with_capacity(l);
    for i in 1..=l {
        let mut row = Vec::with_capacity(l);
        for (j, u) in us.iter().enumerate() {
            let entry = if i <= n {
                &d_tilde[j] * rat_pow(u, 2 * (i as i64 - 1))
            } else {
                &a_tilde[j] * rat_pow(u, 2 * (i as i64 - n as i64 - 1))
            };
            row.push(entry);
        }
        matrix.push(row);
    }
    let large = det_exact(&matrix) * vandermonde_square_inverse(us)?;
    let compact = compact_determinant_side(n, us, a_tilde, d_tilde)?;
    Ok((large, compact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, to_wire};
    use crate::lattice::{partition_function_oracle, DEFAULT_ORACLE_BUDGET};
    use crate::qism::{
        f_func, five_vertex_sites, g_func, vacuum_bracket, MiddleOps, DEFAULT_DIMENSION_CAP,
    };
    use crate::rng::SplitMix64;

    fn inhom(l: usize, m: usize, seed: u64) -> WeightParams {
        let mut rng = SplitMix64::new(seed);
        WeightParams::inhomogeneous(
            rng.rational_where(false),
            rng.rational_where(false),
            rng.distinct_square_rationals(l, false),
            rng.distinct_square_rationals(m, false),
        )
        .unwrap()
    }

    fn us_of(params: &WeightParams, l: usize) -> Vec<Rational> {
        (1..=l).map(|j| params.u_at(j).clone()).collect()
    }

    #[test]
    fn one_particle_base_case() {
        let m_rows = 3;
        let params = inhom(2, m_rows, 8);
        let eig = VacuumEigenvalues::five_vertex(&params, m_rows);
        let us = us_of(&params, 2);
        let got = s_a(1, 0, &us, &eig, &params.delta).unwrap();
        let g = g_func(&params.delta, &us[1], &us[0]).unwrap();
        let expected = g
            * (eig.a(&us[1]).unwrap() * eig.d(&us[0]).unwrap()
                - eig.a(&us[0]).unwrap() * eig.d(&us[1]).unwrap());
        assert_eq!(got, expected);
        assert_eq!(s_d(1, 0, &us, &eig, &params.delta).unwrap(), got);
    }

    #[test]
    fn pure_middle_block_reduces_to_eigenvalues() {
        let m_rows = 2;
        let params = inhom(1, m_rows, 9);
        let eig = VacuumEigenvalues::five_vertex(&params, m_rows);
        let us = us_of(&params, 1);
        assert_eq!(
            s_a(0, 1, &us, &eig, &params.delta).unwrap(),
            eig.a(&us[0]).unwrap()
        );
        assert_eq!(
            s_d(0, 1, &us, &eig, &params.delta).unwrap(),
            eig.d(&us[0]).unwrap()
        );
    }

    #[test]
    fn mixed_element_matches_operator_bracket() {
        let m_rows = 3;
        let params = inhom(3, m_rows, 10);
        let eig = VacuumEigenvalues::five_vertex(&params, m_rows);
        let us = us_of(&params, 3);
        let sites = five_vertex_sites(m_rows, &params);
        for (which, det_value) in [
            (MiddleOps::A, s_a(1, 1, &us, &eig, &params.delta).unwrap()),
            (MiddleOps::D, s_d(1, 1, &us, &eig, &params.delta).unwrap()),
        ] {
            let bracket = vacuum_bracket(
                &sites,
                &us[2..],
                which,
                &us[1..2],
                &us[..1],
                DEFAULT_DIMENSION_CAP,
            )
            .unwrap();
            assert_eq!(det_value, bracket);
        }
    }

    #[test]
    fn determinant_z_equals_oracle_on_golden_case() {
        let spec = LatticeSpec::new(2, 2, 1).unwrap();
        let params = WeightParams::inhomogeneous(
            rat_int(1),
            rat_int(1),
            vec![rat_int(2), rat_int(3)],
            vec![rat_int(1), rat_int(5)],
        )
        .unwrap();
        let z = z_inhomogeneous_det(&spec, &params).unwrap();
        assert_eq!(to_wire(&z), "611/150");
    }

    #[test]
    fn determinant_z_closed_forms_at_extremes() {
        let params = inhom(3, 4, 11);
        let eig = VacuumEigenvalues::five_vertex(&params, 4);
        let us = us_of(&params, 3);
        let spec = LatticeSpec::new(3, 4, 0).unwrap();
        let expect: Rational = us.iter().map(|u| eig.a(u).unwrap()).product();
        assert_eq!(z_inhomogeneous_det(&spec, &params).unwrap(), expect);
        let spec = LatticeSpec::new(3, 4, 3).unwrap();
        let expect: Rational = us.iter().map(|u| eig.d(u).unwrap()).product();
        assert_eq!(z_inhomogeneous_det(&spec, &params).unwrap(), expect);
    }

    #[test]
    fn determinant_z_equals_oracle_small_grid() {
        for (l, m) in [(3, 3), (4, 3), (2, 4), (4, 4)] {
            for n in 0..=l.min(m) {
                let spec = LatticeSpec::new(l, m, n).unwrap();
                let params = inhom(l, m, (l * 37 + m * 5 + n) as u64);
                let z_det = z_inhomogeneous_det(&spec, &params).unwrap();
                let z_sum =
                    partition_function_oracle(&spec, &params, DEFAULT_ORACLE_BUDGET).unwrap();
                assert_eq!(z_det, z_sum, "mismatch at ({l},{m},{n})");
            }
        }
    }

    #[test]
    fn homogeneous_limit_det_small_case() {
        // Z(2x2, N=1) = 2(x-1)/Delta
        let spec = LatticeSpec::new(2, 2, 1).unwrap();
        for (u, alpha, delta) in [
            (rat_int(2), rat_int(1), rat_int(1)),
            (rat_int(3), rat_int(1), rat_int(2)),
            (rat(5, 7), rat(2, 3), rat(-3, 4)),
        ] {
            let z = z_homogeneous_limit_det(&spec, &u, &alpha, &delta).unwrap();
            assert_eq!(z, rat_int(2) * (&u * &u - rat_int(1)) / &delta);
        }
    }

    #[test]
    fn homogeneous_limit_matches_oracle() {
        let mut rng = SplitMix64::new(12);
        for (l, m) in [(2, 3), (3, 2), (3, 3), (4, 3)] {
            for n in 0..=l.min(m) {
                let spec = LatticeSpec::new(l, m, n).unwrap();
                let u = rng.rational_where(true);
                let alpha = rng.rational_where(false);
                let delta = rng.rational_where(false);
                let params =
                    WeightParams::homogeneous(alpha.clone(), delta.clone(), u.clone()).unwrap();
                let z_lim = z_homogeneous_limit_det(&spec, &u, &alpha, &delta).unwrap();
                let z_sum =
                    partition_function_oracle(&spec, &params, DEFAULT_ORACLE_BUDGET).unwrap();
                assert_eq!(z_lim, z_sum, "mismatch at ({l},{m},{n})");
            }
        }
    }

    /// The defining limit: the squared-difference-normalized determinant,
    /// with every rapidity sliding to `u` along rational rays, reduces to
    /// the derivative matrix evaluated at `u`. Symbolic in the slide
    /// parameter, so the limit is an exact evaluation at zero.
    #[test]
    fn limit_matrix_agrees_with_symbolic_limit() {
        let mut rng = SplitMix64::new(13);
        for (l, n_split) in [(2usize, 1usize), (3, 1), (3, 2), (4, 2)] {
            let m_rows = 3;
            let alpha = rng.rational_where(false);
            let delta = rng.rational_where(false);
            let xi = rng.distinct_square_rationals(m_rows, false);
            let u = rng.rational_where(true);
            // rays u_j = u (1 + c_j t) with distinct small integers c_j
            let u_funs: Vec<RationalFunction> = (1..=l as i64)
                .map(|c| {
                    RationalFunction::from_poly(Polynomial::new(vec![u.clone(), &u * rat_int(c)]))
                })
                .collect();
            // eigenvalue functions of a symbolic rapidity
            let a_of = |w: &RationalFunction| -> RationalFunction {
                let mut acc = RationalFunction::one();
                for x in &xi {
                    let ratio = w.scale(&(Rational::one() / x));
                    let inv = &RationalFunction::constant(x.clone()) / w;
                    acc = &acc * &(&ratio - &inv).scale(&(&alpha / &delta));
                }
                acc
            };
            let d_of = |w: &RationalFunction| -> RationalFunction {
                let mut acc = RationalFunction::one();
                for x in &xi {
                    acc = &acc * &w.scale(&(Rational::one() / (&alpha * x)));
                }
                acc
            };
            let mut matrix = Vec::with_capacity(l);
            for i in 1..=l {
                let mut row = Vec::with_capacity(l);
                for w in &u_funs {
                    let entry = if i <= n_split {
                        &d_of(w) * &w.pow(2 * i as i64 - 1)
                    } else {
                        &a_of(w) * &w.pow(2 * i as i64 - 3)
                    };
                    row.push(entry);
                }
                matrix.push(row);
            }
            let det = det_exact(&matrix);
            let mut norm = RationalFunction::one();
            for j in 0..l {
                for i in 0..j {
                    norm = &norm * &(&(&u_funs[j] * &u_funs[j]) - &(&u_funs[i] * &u_funs[i]));
                }
            }
            let ratio = &det / &norm;
            let limit_value = ratio.eval(&Rational::zero()).expect("finite limit");

            let rows = limit_row_generators(l, n_split, &alpha, &delta, &xi);
            let symbolic = limit_matrix_symbolic(&rows);
            let x = &u * &u;
            let numeric: Vec<Vec<Rational>> = symbolic
                .iter()
                .map(|row| row.iter().map(|f| f.eval(&x).unwrap()).collect())
                .collect();
            let q_det = det_exact(&numeric) * rat_pow(&u, rows.parity as i64 * l as i64);
            assert_eq!(limit_value, q_det, "limit mismatch at l={l}, split={n_split}");
        }
    }

    #[test]
    fn compact_scalar_product_matches_split_form() {
        for n in 1..=3 {
            let m_rows = 2;
            let params = inhom(2 * n, m_rows, 14 + n as u64);
            let eig = VacuumEigenvalues::five_vertex(&params, m_rows);
            let us = us_of(&params, 2 * n);
            let compact = scalar_product_compact(n, &us, &eig, &params.delta).unwrap();
            let split = s_a(n, 0, &us, &eig, &params.delta).unwrap();
            assert_eq!(compact, split);
        }
    }

    #[test]
    fn size_identity_for_free_values() {
        let mut rng = SplitMix64::new(15);
        for n in 1..=3usize {
            for _ in 0..(4 - n) {
                let us = rng.distinct_square_rationals(2 * n, false);
                let a_tilde: Vec<Rational> = (0..2 * n).map(|_| rng.rational()).collect();
                let d_tilde: Vec<Rational> = (0..2 * n).map(|_| rng.rational()).collect();
                let (large, compact) =
                    determinant_size_identity(n, &us, &a_tilde, &d_tilde).unwrap();
                assert_eq!(large, compact);
            }
        }
    }

    /// The recursion that removes one middle-block operator: the direct
    /// evaluation equals the weighted sum over which rapidity leaves.
    #[test]
    fn middle_block_recursion() {
        let m_rows = 2;
        for (n, m) in [(1usize, 1usize), (1, 2), (2, 1)] {
            let l = 2 * n + m;
            let params = inhom(l, m_rows, (16 + 10 * n + m) as u64);
            let eig = VacuumEigenvalues::five_vertex(&params, m_rows);
            let us = us_of(&params, l);
            let direct = s_a(n, m, &us, &eig, &params.delta).unwrap();
            // remove the operator at u_(n+1): rapidities 0..=n compete
            let mut total = Rational::zero();
            for i in 0..=n {
                let mut coeff = eig.a(&us[i]).unwrap() * &us[n] / &us[i];
                for (j, u_j) in us.iter().enumerate().take(n + 1) {
                    if j == i {
                        continue;
                    }
                    coeff *= f_func(&params.delta, &us[i], u_j).unwrap();
                }
                let mut reduced: Vec<Rational> = us
                    .iter()
                    .take(n + 1)
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, u)| u.clone())
                    .collect();
                reduced.extend(us.iter().skip(n + 1).cloned());
                total += coeff * s_a(n, m - 1, &reduced, &eig, &params.delta).unwrap();
            }
            assert_eq!(direct, total, "recursion fails at n={n}, m={m}");
        }
    }

    #[test]
    fn determinant_z_is_symmetric_where_it_should_be() {
        let spec = LatticeSpec::new(4, 3, 1).unwrap();
        let params = inhom(4, 3, 17);
        let z = z_inhomogeneous_det(&spec, &params).unwrap();
        let (u, xi) = match &params.rapidities {
            Rapidities::Inhomogeneous { u, xi } => (u.clone(), xi.clone()),
            _ => unreachable!(),
        };
        // row-rapidity permutation
        let mut xi2 = xi.clone();
        xi2.swap(0, 2);
        let permuted =
            WeightParams::inhomogeneous(params.alpha.clone(), params.delta.clone(), u.clone(), xi2)
                .unwrap();
        assert_eq!(z_inhomogeneous_det(&spec, &permuted).unwrap(), z);
        // within-middle-block swap (positions 2 and 3 are middle for n = 1)
        let mut u2 = u.clone();
        u2.swap(1, 2);
        let swapped =
            WeightParams::inhomogeneous(params.alpha.clone(), params.delta.clone(), u2, xi.clone())
                .unwrap();
        assert_eq!(z_inhomogeneous_det(&spec, &swapped).unwrap(), z);
        // cross-block swap: creation-block u_1 with middle-block u_2;
        // the per-middle-rapidity weight 1/v restores equality
        let mut u3 = u.clone();
        u3.swap(0, 1);
        let crossed =
            WeightParams::inhomogeneous(params.alpha.clone(), params.delta.clone(), u3.clone(), xi)
                .unwrap();
        let z_crossed = z_inhomogeneous_det(&spec, &crossed).unwrap();
        assert_eq!(&z_crossed / &u3[1], &z / &u[1]);
    }

    #[test]
    fn row_scaling_multiplies_out() {
        let m_rows = 2;
        let params = inhom(4, m_rows, 18);
        let us = us_of(&params, 4);
        let eig = VacuumEigenvalues::five_vertex(&params, m_rows);
        let c = rat(5, 3);
        let scaled = VacuumEigenvalues::table(us.iter().map(|u| {
            (
                u.clone(),
                (&c * eig.a(u).unwrap(), eig.d(u).unwrap()),
            )
        }));
        let (n, m) = (1usize, 2usize);
        let base = s_a(n, m, &us, &eig, &params.delta).unwrap();
        let bumped = s_a(n, m, &us, &scaled, &params.delta).unwrap();
        assert_eq!(bumped, base * rat_pow(&c, (n + m) as i64));
    }
}
