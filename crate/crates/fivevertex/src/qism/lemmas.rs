//! Operator-algebra consequences used by the determinant derivations:
//! the action of a diagonal-block operator on an off-shell state, and the
//! total symmetry of weighted operator strings.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::Rational;
use crate::lattice::WeightParams;

use super::monodromy::{
    build_monodromy, five_vertex_sites, vacuum_a, vacuum_d, vacuum_state, MiddleOps, Site,
};
use super::ops::SparseOperator;
use super::rll::f_func;

/// Residual of the action formula: applying `A(u_{n+1})` (or `D`) to the
/// off-shell state `prod_{j<=n} B(u_j) |vac>` minus the closed-form sum
///
/// `sum_i eig(u_i) ratio_i prod_{j != i} f(...) prod_{j != i} B(u_j) |vac>`
///
/// where for the `A`-case `ratio_i = u_{n+1}/u_i` with `f(u_i, u_j)`, and
/// for the `D`-case `ratio_i = u_i/u_{n+1}` with `f(u_j, u_i)`.
pub fn action_formula_residual(
    which: MiddleOps,
    us: &[Rational],
    m_rows: usize,
    params: &WeightParams,
    cap: usize,
) -> Result<Vec<Rational>> {
    let n = us.len() - 1;
    let quads: Vec<_> = us
        .iter()
        .map(|u| build_monodromy(m_rows, u, params, cap))
        .collect::<Result<_>>()?;
    let dim = quads[0].dim();

    // left side: direct operator action
    let mut state = vacuum_state(dim);
    for quad in quads.iter().take(n) {
        state = quad.b.apply(&state);
    }
    let lhs = match which {
        MiddleOps::A => quads[n].a.apply(&state),
        MiddleOps::D => quads[n].d.apply(&state),
    };

    // right side: weighted sum over which rapidity is excluded
    let mut rhs = vec![Rational::zero(); dim];
    for i in 0..=n {
        let eig = match which {
            MiddleOps::A => vacuum_a(m_rows, &us[i], params),
            MiddleOps::D => vacuum_d(m_rows, &us[i], params),
        };
        // the ratio g/f at coincident arguments is taken as the limit
        // value, a plain rapidity ratio
        let ratio = match which {
            MiddleOps::A => &us[n] / &us[i],
            MiddleOps::D => &us[i] / &us[n],
        };
        let mut coeff = eig * ratio;
        for (j, u_j) in us.iter().enumerate() {
            if j == i {
                continue;
            }
            coeff *= match which {
                MiddleOps::A => f_func(&params.delta, &us[i], u_j)?,
                MiddleOps::D => f_func(&params.delta, u_j, &us[i])?,
            };
        }
        let mut state = vacuum_state(dim);
        for (j, quad) in quads.iter().enumerate() {
            if j == i {
                continue;
            }
            state = quad.b.apply(&state);
        }
        for (slot, v) in rhs.iter_mut().zip(&state) {
            *slot += &coeff * v;
        }
    }

    Ok(lhs
        .into_iter()
        .zip(rhs)
        .map(|(l, r)| l - r)
        .collect())
}

/// The weighted operator string `prod w(v_j) prod C(u) prod X(v) prod B(w)`
/// with `w(v) = 1/v` for `X = A` and `w(v) = v` for `X = D`, assembled as
/// a single operator on the quantum space.
pub fn weighted_string(
    sites: &[Site],
    c_us: &[Rational],
    which: MiddleOps,
    mid_us: &[Rational],
    b_us: &[Rational],
    cap: usize,
) -> Result<SparseOperator> {
    let dim: usize = sites.iter().map(Site::quantum_dim).product();
    let mut op = SparseOperator::identity(dim);
    let mut weight = Rational::one();
    for u in b_us.iter().rev() {
        let quad = super::monodromy::monodromy_from_sites(sites, u, cap)?;
        op = quad.b.mul(&op);
    }
    for u in mid_us.iter().rev() {
        let quad = super::monodromy::monodromy_from_sites(sites, u, cap)?;
        match which {
            MiddleOps::A => {
                op = quad.a.mul(&op);
                weight *= Rational::one() / u;
            }
            MiddleOps::D => {
                op = quad.d.mul(&op);
                weight *= u;
            }
        }
    }
    for u in c_us.iter().rev() {
        let quad = super::monodromy::monodromy_from_sites(sites, u, cap)?;
        op = quad.c.mul(&op);
    }
    Ok(op.scale(&weight))
}

/// Checks that the weighted string is invariant under a set of
/// transpositions mixing the three rapidity groups; returns the failing
/// transposition if any.
pub fn symmetry_violation(
    which: MiddleOps,
    c_us: &[Rational],
    mid_us: &[Rational],
    b_us: &[Rational],
    m_rows: usize,
    params: &WeightParams,
    cap: usize,
) -> Result<Option<(usize, usize)>> {
    let sites = five_vertex_sites(m_rows, params);
    let all: Vec<Rational> = c_us
        .iter()
        .chain(mid_us.iter())
        .chain(b_us.iter())
        .cloned()
        .collect();
    let split = |vals: &[Rational]| {
        (
            vals[..c_us.len()].to_vec(),
            vals[c_us.len()..c_us.len() + mid_us.len()].to_vec(),
            vals[c_us.len() + mid_us.len()..].to_vec(),
        )
    };
    let reference = weighted_string(&sites, c_us, which, mid_us, b_us, cap)?;
    // adjacent transpositions generate the full symmetric group; checking
    // them exercises every boundary between the three groups
    for i in 0..all.len().saturating_sub(1) {
        let mut swapped = all.clone();
        swapped.swap(i, i + 1);
        let (c2, m2, b2) = split(&swapped);
        let candidate = weighted_string(&sites, &c2, which, &m2, &b2, cap)?;
        if candidate != reference {
            return Ok(Some((i, i + 1)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::qism::monodromy::DEFAULT_DIMENSION_CAP;
    use crate::rng::SplitMix64;

    fn inhom(m: usize, seed: u64) -> WeightParams {
        let mut rng = SplitMix64::new(seed);
        WeightParams::inhomogeneous(
            rng.rational_where(false),
            rng.rational_where(false),
            rng.distinct_square_rationals(1, false),
            rng.distinct_square_rationals(m, false),
        )
        .unwrap()
    }

    #[test]
    fn action_formula_one_particle() {
        let params = inhom(2, 50);
        let mut rng = SplitMix64::new(51);
        let us = rng.distinct_square_rationals(2, false);
        let residual =
            action_formula_residual(MiddleOps::A, &us, 2, &params, DEFAULT_DIMENSION_CAP)
                .unwrap();
        assert!(residual.iter().all(Rational::is_zero));
    }

    #[test]
    fn action_formula_two_particles_d_case() {
        let params = inhom(3, 52);
        let mut rng = SplitMix64::new(53);
        let us = rng.distinct_square_rationals(3, false);
        let residual =
            action_formula_residual(MiddleOps::D, &us, 3, &params, DEFAULT_DIMENSION_CAP)
                .unwrap();
        assert!(residual.iter().all(Rational::is_zero));
    }

    #[test]
    fn action_formula_no_particles_is_the_eigenvalue() {
        let params = inhom(2, 54);
        let us = vec![rat(7, 3)];
        for which in [MiddleOps::A, MiddleOps::D] {
            let residual =
                action_formula_residual(which, &us, 2, &params, DEFAULT_DIMENSION_CAP).unwrap();
            assert!(residual.iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn weighted_string_cross_set_swaps() {
        let params = inhom(2, 60);
        let mut rng = SplitMix64::new(61);
        // l = n = 1, m = 0: swapping the C and B rapidities
        let us = rng.distinct_square_rationals(2, false);
        let violation = symmetry_violation(
            MiddleOps::A,
            &us[..1],
            &[],
            &us[1..],
            2,
            &params,
            DEFAULT_DIMENSION_CAP,
        )
        .unwrap();
        assert_eq!(violation, None);
    }

    #[test]
    fn weighted_string_middle_swaps_both_kinds() {
        let params = inhom(2, 62);
        let mut rng = SplitMix64::new(63);
        let us = rng.distinct_square_rationals(2, false);
        for which in [MiddleOps::A, MiddleOps::D] {
            // l = 0, m = n = 1: swapping the middle and B rapidities
            let violation = symmetry_violation(
                which,
                &[],
                &us[..1],
                &us[1..],
                2,
                &params,
                DEFAULT_DIMENSION_CAP,
            )
            .unwrap();
            assert_eq!(violation, None);
        }
    }

    #[test]
    fn unweighted_string_is_not_symmetric() {
        // dropping the rapidity weight breaks cross-set invariance, so the
        // weight is doing real work
        let params = inhom(2, 64);
        let mut rng = SplitMix64::new(65);
        let us = rng.distinct_square_rationals(2, false);
        let sites = five_vertex_sites(2, &params);
        let direct = |mid: &Rational, b: &Rational| {
            let a_op = weighted_string(
                &sites,
                &[],
                MiddleOps::A,
                std::slice::from_ref(mid),
                &[],
                DEFAULT_DIMENSION_CAP,
            )
            .unwrap()
            .scale(mid); // undo the 1/v weight
            let b_op = weighted_string(
                &sites,
                &[],
                MiddleOps::A,
                &[],
                std::slice::from_ref(b),
                DEFAULT_DIMENSION_CAP,
            )
            .unwrap();
            a_op.mul(&b_op)
        };
        assert_ne!(direct(&us[0], &us[1]), direct(&us[1], &us[0]));
    }
}
