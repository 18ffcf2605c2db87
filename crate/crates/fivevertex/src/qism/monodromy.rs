//! Monodromy matrices: ordered products of local vertex operators down a
//! column, their `A/B/C/D` blocks on the tensor quantum space, vacuum
//! eigenvalues, and the partition function as a vacuum matrix element.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::lattice::{LatticeSpec, Rapidities, WeightParams};

use super::ops::{LocalLOperator, SparseOperator};
use super::solutions::{self, BosonicSign, SpmParams};

/// Default cap on the tensor quantum-space dimension (2^12).
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

/// One row's worth of local structure: which solution family the site
/// uses and its row rapidity. Heterogeneous site lists are admissible
/// because every family obeys the same intertwining relation.
#[derive(Clone, Debug)]
pub enum Site {
    FiveVertex {
        xi: Rational,
        alpha: Rational,
        delta: Rational,
    },
    FourVertex {
        xi: Rational,
        delta: Rational,
    },
    NilpotentPair {
        xi: Rational,
        params: SpmParams,
    },
    Bosonic {
        xi: Rational,
        alpha: Rational,
        delta_param: Rational,
        delta: Rational,
        cutoff: usize,
        sign: BosonicSign,
    },
}

impl Site {
    pub fn quantum_dim(&self) -> usize {
        match self {
            Site::FiveVertex { .. } | Site::FourVertex { .. } => 2,
            Site::NilpotentPair { params, .. } => params.m + 1,
            Site::Bosonic { cutoff, .. } => *cutoff,
        }
    }

    /// Local operator at column rapidity `u`; the row rapidity enters
    /// through the ratio `u/xi`.
    pub fn local_l(&self, u: &Rational) -> Result<LocalLOperator> {
        match self {
            Site::FiveVertex { xi, alpha, delta } => {
                solutions::five_vertex_l(u, xi, alpha, delta)
            }
            Site::FourVertex { xi, delta } => solutions::four_vertex_l(u, xi, delta),
            Site::NilpotentPair { xi, params } => solutions::spm_l(&(u / xi), params),
            Site::Bosonic {
                xi,
                alpha,
                delta_param,
                delta,
                cutoff,
                sign,
            } => solutions::bosonic_l(&(u / xi), alpha, delta_param, delta, *cutoff, *sign),
        }
    }
}

/// The four blocks of a monodromy matrix acting on the tensor quantum
/// space; immutable once built.
#[derive(Clone, Debug)]
pub struct OperatorQuad {
    pub a: SparseOperator,
    pub b: SparseOperator,
    pub c: SparseOperator,
    pub d: SparseOperator,
}

impl OperatorQuad {
    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn from_local(l: &LocalLOperator) -> Self {
        OperatorQuad {
            a: l.block(0, 0).to_sparse(),
            b: l.block(0, 1).to_sparse(),
            c: l.block(1, 0).to_sparse(),
            d: l.block(1, 1).to_sparse(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> OperatorQuad {
        OperatorQuad {
            a: self.a.scale(factor),
            b: self.b.scale(factor),
            c: self.c.scale(factor),
            d: self.d.scale(factor),
        }
    }
}

fn embed_block(
    block: &super::ops::DenseMatrix,
    dim_before: usize,
    dim_after: usize,
) -> SparseOperator {
    let q = block.dim();
    let dim = dim_before * q * dim_after;
    let mut op = SparseOperator::zero(dim);
    for s_out in 0..q {
        for s_in in 0..q {
            let v = block.get(s_out, s_in);
            if v.is_zero() {
                continue;
            }
            for pre in 0..dim_before {
                for post in 0..dim_after {
                    let row = (pre * q + s_out) * dim_after + post;
                    let col = (pre * q + s_in) * dim_after + post;
                    op.set(row, col, v.clone());
                }
            }
        }
    }
    op
}

/// Ordered product of the site operators along a column, last site first;
/// sites are listed top to bottom, and the auxiliary index chains from
/// the top boundary edge (in) to the bottom boundary edge (out).
pub fn monodromy_from_sites(sites: &[Site], u: &Rational, cap: usize) -> Result<OperatorQuad> {
    let dim: usize = sites.iter().map(Site::quantum_dim).product();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    let mut t = [
        [SparseOperator::identity(dim), SparseOperator::zero(dim)],
        [SparseOperator::zero(dim), SparseOperator::identity(dim)],
    ];
    let mut dim_before = 1usize;
    for (k, site) in sites.iter().enumerate() {
        let q = site.quantum_dim();
        let dim_after: usize = sites[k + 1..].iter().map(Site::quantum_dim).product();
        let local = site.local_l(u)?;
        let embedded = [
            [
                embed_block(&local.block(0, 0), dim_before, dim_after),
                embed_block(&local.block(0, 1), dim_before, dim_after),
            ],
            [
                embed_block(&local.block(1, 0), dim_before, dim_after),
                embed_block(&local.block(1, 1), dim_before, dim_after),
            ],
        ];
        // left-multiply the running product by this site's operator
        let mut next = [
            [SparseOperator::zero(dim), SparseOperator::zero(dim)],
            [SparseOperator::zero(dim), SparseOperator::zero(dim)],
        ];
        #[allow(clippy::needless_range_loop)]
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = SparseOperator::zero(dim);
                for k2 in 0..2 {
                    acc = acc.add(&embedded[i][k2].mul(&t[k2][j]));
                }
                next[i][j] = acc;
            }
        }
        t = next;
        dim_before *= q;
    }
    let [[a, b], [c, d]] = t;
    Ok(OperatorQuad { a, b, c, d })
}

/// Monodromy of the plain five-vertex model over `M` two-dimensional
/// sites with row rapidities from `params`.
pub fn build_monodromy(
    m_rows: usize,
    u: &Rational,
    params: &WeightParams,
    cap: usize,
) -> Result<OperatorQuad> {
    let sites = five_vertex_sites(m_rows, params);
    monodromy_from_sites(&sites, u, cap)
}

pub fn five_vertex_sites(m_rows: usize, params: &WeightParams) -> Vec<Site> {
    (1..=m_rows)
        .map(|k| Site::FiveVertex {
            xi: params.xi_at(k),
            alpha: params.alpha.clone(),
            delta: params.delta.clone(),
        })
        .collect()
}

/// All-site-vacuum state: basis vector 0 of the tensor space.
pub fn vacuum_state(dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[0] = Rational::one();
    v
}

/// Vacuum eigenvalue of the diagonal `A`-block: the product over sites of
/// the empty-vertex weight; for the five-vertex sites this is
/// `(alpha/Delta)^M prod_k (u/xi_k - xi_k/u)`.
pub fn vacuum_a(m_rows: usize, u: &Rational, params: &WeightParams) -> Rational {
    let mut acc = Rational::one();
    for k in 1..=m_rows {
        let xi = params.xi_at(k);
        acc *= &params.alpha / &params.delta * (u / &xi - &xi / u);
    }
    acc
}

/// Vacuum eigenvalue of the `D`-block: `u^M / (alpha^M prod_k xi_k)`.
pub fn vacuum_d(m_rows: usize, u: &Rational, params: &WeightParams) -> Rational {
    let mut acc = Rational::one();
    for k in 1..=m_rows {
        let xi = params.xi_at(k);
        acc *= u / (&params.alpha * &xi);
    }
    acc
}

/// Vacuum eigenvalues of an arbitrary site list, read off the local
/// operators; checks on the way that the site vacuum really is an
/// eigenvector of both diagonal blocks and is killed by the `C`-block.
pub fn site_vacuum_eigenvalues(sites: &[Site], u: &Rational) -> Result<(Rational, Rational)> {
    let mut a = Rational::one();
    let mut d = Rational::one();
    for site in sites {
        let l = site.local_l(u)?;
        let q = site.quantum_dim();
        let a_block = l.block(0, 0);
        let d_block = l.block(1, 1);
        let c_block = l.block(1, 0);
        for i in 1..q {
            if !a_block.get(i, 0).is_zero() || !d_block.get(i, 0).is_zero() {
                return Err(Error::InvalidInput(
                    "site vacuum is not an eigenvector of the diagonal blocks".into(),
                ));
            }
            if !c_block.get(i, 0).is_zero() {
                return Err(Error::InvalidInput(
                    "site vacuum is not annihilated by the C-block".into(),
                ));
            }
        }
        if !c_block.get(0, 0).is_zero() {
            return Err(Error::InvalidInput(
                "site vacuum is not annihilated by the C-block".into(),
            ));
        }
        a *= a_block.get(0, 0);
        d *= d_block.get(0, 0);
    }
    Ok((a, d))
}

/// Which operators sit between the two off-shell states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MiddleOps {
    A,
    D,
}

/// `<vac| prod C(c_us) prod X(mid_us) prod B(b_us) |vac>` for `X` the `A`-
/// or `D`-block, over an arbitrary site list.
pub fn vacuum_bracket(
    sites: &[Site],
    c_us: &[Rational],
    middle: MiddleOps,
    mid_us: &[Rational],
    b_us: &[Rational],
    cap: usize,
) -> Result<Rational> {
    let dim: usize = sites.iter().map(Site::quantum_dim).product();
    let mut state = vacuum_state(dim);
    for u in b_us {
        let quad = monodromy_from_sites(sites, u, cap)?;
        state = quad.b.apply(&state);
    }
    for u in mid_us {
        let quad = monodromy_from_sites(sites, u, cap)?;
        state = match middle {
            MiddleOps::A => quad.a.apply(&state),
            MiddleOps::D => quad.d.apply(&state),
        };
    }
    for u in c_us {
        let quad = monodromy_from_sites(sites, u, cap)?;
        state = quad.c.apply(&state);
    }
    Ok(state.swap_remove(0))
}

/// Partition function as a vacuum matrix element: the rightmost `n`
/// columns act as `B`-operators, the leftmost `n` as `C`-operators, and
/// the `m = |L - 2N|` middle columns as `A`- (wide lattice) or `D`-
/// (tall boundary) operators, with `n = min(N, L-N)`.
pub fn matrix_element_z(
    spec: &LatticeSpec,
    params: &WeightParams,
    cap: usize,
) -> Result<Rational> {
    if let Rapidities::Inhomogeneous { u, xi } = &params.rapidities {
        if u.len() != spec.l || xi.len() != spec.m {
            return Err(Error::InvalidInput(format!(
                "expected {} column and {} row rapidities, got {} and {}",
                spec.l,
                spec.m,
                u.len(),
                xi.len()
            )));
        }
    }
    let sites = five_vertex_sites(spec.m, params);
    let l = spec.l;
    let n_small = spec.n.min(l - spec.n);
    let m_mid = l - 2 * n_small;
    let middle = if spec.l >= 2 * spec.n {
        MiddleOps::A
    } else {
        MiddleOps::D
    };
    let us: Vec<Rational> = (1..=l).map(|j| params.u_at(j).clone()).collect();
    let b_us = &us[0..n_small];
    let mid_us = &us[n_small..n_small + m_mid];
    let c_us = &us[n_small + m_mid..];
    vacuum_bracket(&sites, c_us, middle, mid_us, b_us, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, to_wire};
    use crate::lattice::{partition_function_oracle, DEFAULT_ORACLE_BUDGET};
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

    #[test]
    fn single_site_monodromy_is_the_local_operator() {
        let params = inhom(1, 1, 3);
        let u = rat(5, 3);
        let quad = build_monodromy(1, &u, &params, DEFAULT_DIMENSION_CAP).unwrap();
        let local = solutions::five_vertex_l(&u, &params.xi_at(1), &params.alpha, &params.delta)
            .unwrap();
        assert_eq!(quad.a, local.block(0, 0).to_sparse());
        assert_eq!(quad.b, local.block(0, 1).to_sparse());
        assert_eq!(quad.c, local.block(1, 0).to_sparse());
        assert_eq!(quad.d, local.block(1, 1).to_sparse());
    }

    #[test]
    fn vacuum_is_eigenvector_of_diagonal_blocks() {
        for m_rows in 1..=5 {
            let params = inhom(2, m_rows, 17 + m_rows as u64);
            let u = rat(7, 4);
            let quad = build_monodromy(m_rows, &u, &params, DEFAULT_DIMENSION_CAP).unwrap();
            let vac = vacuum_state(quad.dim());
            let a_vac = quad.a.apply(&vac);
            let d_vac = quad.d.apply(&vac);
            let a_expect = vacuum_a(m_rows, &u, &params);
            let d_expect = vacuum_d(m_rows, &u, &params);
            assert_eq!(a_vac[0], a_expect);
            assert_eq!(d_vac[0], d_expect);
            for i in 1..quad.dim() {
                assert!(a_vac[i].is_zero());
                assert!(d_vac[i].is_zero());
            }
        }
    }

    #[test]
    fn vacuum_annihilation() {
        // C |vac> = 0 and <vac| B = 0 (row 0 of B vanishes)
        for m_rows in [2usize, 3] {
            let params = inhom(2, m_rows, 40 + m_rows as u64);
            let u = rat(3, 7);
            let quad = build_monodromy(m_rows, &u, &params, DEFAULT_DIMENSION_CAP).unwrap();
            let vac = vacuum_state(quad.dim());
            assert!(quad.c.apply(&vac).iter().all(Rational::is_zero));
            for j in 0..quad.dim() {
                assert!(quad.b.get(0, j).is_zero());
            }
        }
    }

    #[test]
    fn matrix_element_equals_oracle_on_golden_case() {
        let spec = LatticeSpec::new(2, 2, 1).unwrap();
        let params = WeightParams::inhomogeneous(
            rat_int(1),
            rat_int(1),
            vec![rat_int(2), rat_int(3)],
            vec![rat_int(1), rat_int(5)],
        )
        .unwrap();
        let z = matrix_element_z(&spec, &params, DEFAULT_DIMENSION_CAP).unwrap();
        assert_eq!(to_wire(&z), "611/150");
    }

    #[test]
    fn matrix_element_matches_closed_forms_at_extremes() {
        let spec = LatticeSpec::new(3, 4, 0).unwrap();
        let params = inhom(3, 4, 99);
        let z = matrix_element_z(&spec, &params, DEFAULT_DIMENSION_CAP).unwrap();
        let a_product: Rational = (1..=3).map(|j| vacuum_a(4, params.u_at(j), &params)).product();
        assert_eq!(z, a_product);

        let spec = LatticeSpec::new(3, 4, 3).unwrap();
        let z = matrix_element_z(&spec, &params, DEFAULT_DIMENSION_CAP).unwrap();
        let d_product: Rational = (1..=3).map(|j| vacuum_d(4, params.u_at(j), &params)).product();
        assert_eq!(z, d_product);
    }

    #[test]
    fn matrix_element_equals_oracle_small_grid() {
        for (l, m) in [(2, 3), (3, 2), (3, 3), (4, 3)] {
            for n in 0..=l.min(m) {
                let spec = LatticeSpec::new(l, m, n).unwrap();
                let params = inhom(l, m, (l * 100 + m * 10 + n) as u64);
                let z_ops = matrix_element_z(&spec, &params, DEFAULT_DIMENSION_CAP).unwrap();
                let z_sum =
                    partition_function_oracle(&spec, &params, DEFAULT_ORACLE_BUDGET).unwrap();
                assert_eq!(z_ops, z_sum, "mismatch at ({l},{m},{n})");
            }
        }
    }

    #[test]
    fn scalar_product_base_case() {
        // <vac| C(u2) B(u1) |vac> = g(u2,u1) [a(u2) d(u1) - a(u1) d(u2)]
        let m_rows = 3;
        let params = inhom(2, m_rows, 5);
        let (u1, u2) = (rat(5, 2), rat(4, 3));
        let sites = five_vertex_sites(m_rows, &params);
        let got = vacuum_bracket(
            &sites,
            std::slice::from_ref(&u2),
            MiddleOps::A,
            &[],
            std::slice::from_ref(&u1),
            DEFAULT_DIMENSION_CAP,
        )
        .unwrap();
        let g = &params.delta * &u2 * &u1 / (&u2 * &u2 - &u1 * &u1);
        let a = |u: &Rational| vacuum_a(m_rows, u, &params);
        let d = |u: &Rational| vacuum_d(m_rows, u, &params);
        assert_eq!(got, g * (a(&u2) * d(&u1) - a(&u1) * d(&u2)));
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let params = inhom(2, 13, 1);
        assert!(matches!(
            build_monodromy(13, &rat_int(2), &params, DEFAULT_DIMENSION_CAP),
            Err(Error::DimensionCap { .. })
        ));
    }

    #[test]
    fn heterogeneous_sites_have_consistent_vacuum() {
        let mut rng = SplitMix64::new(777);
        let sites = vec![
            Site::FiveVertex {
                xi: rat_int(2),
                alpha: rat(3, 5),
                delta: rat(7, 3),
            },
            Site::NilpotentPair {
                xi: rat(1, 2),
                params: SpmParams {
                    variant: solutions::SpmVariant::First,
                    m: 2,
                    n_vec: SpmParams::default_unit_vector(2).unwrap(),
                    alpha: rng.rational_where(true),
                    beta1: Rational::zero(),
                    beta2: rng.rational_where(true),
                    gamma: rng.rational_where(true),
                    delta: rat(7, 3),
                },
            },
            Site::FourVertex {
                xi: rat_int(3),
                delta: rat(7, 3),
            },
        ];
        let u = rat(11, 4);
        let (a, d) = site_vacuum_eigenvalues(&sites, &u).unwrap();
        let quad = monodromy_from_sites(&sites, &u, DEFAULT_DIMENSION_CAP).unwrap();
        let vac = vacuum_state(quad.dim());
        assert_eq!(quad.a.apply(&vac)[0], a);
        assert_eq!(quad.d.apply(&vac)[0], d);
    }
}
