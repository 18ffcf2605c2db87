//! The intertwining structure: the 4x4 R-matrix, the local intertwining
//! residual, and the sixteen commutation relations it encodes.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::ops::{DenseMatrix, LocalLOperator, SparseOperator};

/// `f(v, u) = Delta v^2 / (v^2 - u^2)`.
pub fn f_func(delta: &Rational, v: &Rational, u: &Rational) -> Result<Rational> {
    let den = v * v - u * u;
    if den.is_zero() {
        return Err(Error::CoincidentRapidities { i: 0, j: 1 });
    }
    Ok(delta * v * v / den)
}

/// `g(v, u) = Delta v u / (v^2 - u^2)`.
pub fn g_func(delta: &Rational, v: &Rational, u: &Rational) -> Result<Rational> {
    let den = v * v - u * u;
    if den.is_zero() {
        return Err(Error::CoincidentRapidities { i: 0, j: 1 });
    }
    Ok(delta * v * u / den)
}

/// The 4x4 intertwiner on two auxiliary spaces:
/// `diag-corner f(v,u)`, central block `[[g(v,u), 1], [0, g(v,u)]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    entries: DenseMatrix,
}

impl RMatrix {
    pub fn new(delta: &Rational, u: &Rational, v: &Rational) -> Result<Self> {
        let f = f_func(delta, v, u)?;
        let g = g_func(delta, v, u)?;
        let mut m = DenseMatrix::zero(4);
        m.set(0, 0, f.clone());
        m.set(1, 1, g.clone());
        m.set(1, 2, Rational::one());
        m.set(2, 2, g);
        m.set(3, 3, f);
        Ok(RMatrix { entries: m })
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        self.entries.get(row, col)
    }

    pub fn as_matrix(&self) -> &DenseMatrix {
        &self.entries
    }
}

/// Residual of the intertwining relation for a local operator builder:
/// `R(u,v) (L(u) ox L(v)) - (L(v) ox L(u)) R(u,v)` as a `4q x 4q` matrix
/// over (aux ox aux) ox quantum, which must vanish for a genuine solution.
pub fn rll_residual(
    l_u: &LocalLOperator,
    l_v: &LocalLOperator,
    r: &RMatrix,
) -> DenseMatrix {
    let q = l_u.quantum_dim();
    assert_eq!(q, l_v.quantum_dim());
    let pair = |x: &LocalLOperator, y: &LocalLOperator, a: usize, b: usize, c: usize, d: usize| {
        x.block(a, c).mul(&y.block(b, d))
    };
    let mut residual = DenseMatrix::zero(4 * q);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    // lhs block: sum over (a', b') of R[(ab),(a'b')] L(u)_{a'c} L(v)_{b'd}
                    let mut lhs = DenseMatrix::zero(q);
                    for ap in 0..2 {
                        for bp in 0..2 {
                            let coeff = r.entry(2 * a + b, 2 * ap + bp);
                            if coeff.is_zero() {
                                continue;
                            }
                            lhs = lhs.add(&pair(l_u, l_v, ap, bp, c, d).scale(coeff));
                        }
                    }
                    // rhs block: sum over (c', d') of L(v)_{ac'} L(u)_{bd'} R[(c'd'),(cd)]
                    let mut rhs = DenseMatrix::zero(q);
                    for cp in 0..2 {
                        for dp in 0..2 {
                            let coeff = r.entry(2 * cp + dp, 2 * c + d);
                            if coeff.is_zero() {
                                continue;
                            }
                            rhs = rhs.add(&pair(l_v, l_u, a, b, cp, dp).scale(coeff));
                        }
                    }
                    let block = lhs.sub(&rhs);
                    for i in 0..q {
                        for j in 0..q {
                            residual.set(
                                (2 * a + b) * q + i,
                                (2 * c + d) * q + j,
                                block.get(i, j).clone(),
                            );
                        }
                    }
                }
            }
        }
    }
    residual
}

/// Builds the intertwiner from the model parameters and reports whether
/// the residual vanishes, restricted to quantum indices `< keep` on both
/// sides when `safe_dim` is given (for truncated solutions).
pub fn verify_rll(
    l_u: &LocalLOperator,
    l_v: &LocalLOperator,
    delta: &Rational,
    u: &Rational,
    v: &Rational,
    safe_dim: Option<usize>,
) -> Result<DenseMatrix> {
    let r = RMatrix::new(delta, u, v)?;
    let mut residual = rll_residual(l_u, l_v, &r);
    if let Some(keep) = safe_dim {
        let q = l_u.quantum_dim();
        let dim = residual.dim();
        let mut masked = DenseMatrix::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                if i % q <= keep && j % q <= keep {
                    masked.set(i, j, residual.get(i, j).clone());
                }
            }
        }
        residual = masked;
    }
    Ok(residual)
}

/// Labels for the sixteen relations, in their conventional order.
pub const RELATION_NAMES: [&str; 16] = [
    "AA", "AB1", "AB2", "BB", "CA2", "CB-AD", "DA2", "DB2", "CA1", "CB1", "CB-DA", "DB1", "CC",
    "CD1", "CD2", "DD",
];

/// Evaluates the sixteen commutation relations for two operator
/// quadruples at rapidities `u` and `v`; each returned operator must be
/// zero. When `safe_dim` is set, entries with row or column index above
/// it are masked out before the zero test (truncated realizations).
pub fn commutation_residuals(
    at_u: &super::monodromy::OperatorQuad,
    at_v: &super::monodromy::OperatorQuad,
    delta: &Rational,
    u: &Rational,
    v: &Rational,
    safe_dim: Option<usize>,
) -> Result<Vec<(&'static str, SparseOperator)>> {
    let f = f_func(delta, v, u)?;
    let g = g_func(delta, v, u)?;
    let g_rev = g_func(delta, u, v)?;
    let u_over_v = u / v;
    let v_over_u = v / u;
    let (a, b, c, d) = (&at_u.a, &at_u.b, &at_u.c, &at_u.d);
    let (ap, bp, cp, dp) = (&at_v.a, &at_v.b, &at_v.c, &at_v.d);

    let residuals: Vec<(&'static str, SparseOperator)> = vec![
        ("AA", a.commutator(ap)),
        ("AB1", a.mul(bp).sub(&ap.mul(b).scale(&u_over_v))),
        (
            "AB2",
            ap.mul(b)
                .sub(&b.mul(ap).scale(&f))
                .sub(&bp.mul(a).scale(&g_rev)),
        ),
        ("BB", b.commutator(bp)),
        (
            "CA2",
            c.mul(ap)
                .sub(&ap.mul(c).scale(&f))
                .sub(&a.mul(cp).scale(&g_rev)),
        ),
        (
            "CB-AD",
            c.mul(bp).sub(&ap.mul(d).sub(&a.mul(dp)).scale(&g)),
        ),
        (
            "DA2",
            d.commutator(ap).sub(&bp.mul(c).sub(&b.mul(cp)).scale(&g)),
        ),
        (
            "DB2",
            d.mul(bp)
                .sub(&bp.mul(d).scale(&f))
                .sub(&b.mul(dp).scale(&g_rev)),
        ),
        ("CA1", c.mul(ap).sub(&cp.mul(a).scale(&v_over_u))),
        ("CB1", c.mul(bp).sub(&cp.mul(b))),
        (
            "CB-DA",
            cp.mul(b).sub(&d.mul(ap).sub(&dp.mul(a)).scale(&g)),
        ),
        ("DB1", d.mul(bp).sub(&dp.mul(b).scale(&v_over_u))),
        ("CC", c.commutator(cp)),
        ("CD1", c.mul(dp).sub(&cp.mul(d).scale(&u_over_v))),
        (
            "CD2",
            cp.mul(d)
                .sub(&d.mul(cp).scale(&f))
                .sub(&dp.mul(c).scale(&g_rev)),
        ),
        ("DD", d.commutator(dp)),
    ];

    Ok(match safe_dim {
        None => residuals,
        Some(keep) => residuals
            .into_iter()
            .map(|(name, op)| (name, op.restrict(|i| i <= keep)))
            .collect(),
    })
}

/// True if every relation residual vanishes.
pub fn all_relations_hold(residuals: &[(&'static str, SparseOperator)]) -> bool {
    residuals.iter().all(|(_, op)| op.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::qism::monodromy::{build_monodromy, OperatorQuad, DEFAULT_DIMENSION_CAP};
    use crate::qism::solutions::{
        bosonic_l, corrupted_five_vertex_l, five_vertex_l, four_vertex_l, spm_l, BosonicSign,
        SpmParams, SpmVariant,
    };
    use crate::lattice::WeightParams;
    use crate::rng::SplitMix64;

    #[test]
    fn r_matrix_layout() {
        let r = RMatrix::new(&rat_int(5), &rat_int(2), &rat_int(3)).unwrap();
        let f = rat_int(5) * rat_int(9) / rat_int(5); // Delta v^2/(v^2-u^2)
        let g = rat_int(5) * rat_int(6) / rat_int(5);
        assert_eq!(r.entry(0, 0), &f);
        assert_eq!(r.entry(1, 1), &g);
        assert_eq!(r.entry(1, 2), &rat_int(1));
        assert_eq!(r.entry(2, 2), &g);
        assert_eq!(r.entry(3, 3), &f);
        assert!(r.entry(2, 1).is_zero());
    }

    #[test]
    fn five_vertex_operator_intertwines() {
        let (alpha, delta) = (rat_int(1), rat_int(5));
        let (u, v, xi) = (rat_int(2), rat_int(3), rat_int(1));
        let l_u = five_vertex_l(&u, &xi, &alpha, &delta).unwrap();
        let l_v = five_vertex_l(&v, &xi, &alpha, &delta).unwrap();
        let residual = verify_rll(&l_u, &l_v, &delta, &u, &v, None).unwrap();
        assert!(residual.is_zero());
    }

    #[test]
    fn four_vertex_operator_intertwines() {
        let delta = rat(7, 2);
        let (u, v, xi) = (rat(5, 3), rat(2, 7), rat(1, 2));
        let l_u = four_vertex_l(&u, &xi, &delta).unwrap();
        let l_v = four_vertex_l(&v, &xi, &delta).unwrap();
        let residual = verify_rll(&l_u, &l_v, &delta, &u, &v, None).unwrap();
        assert!(residual.is_zero());
    }

    #[test]
    fn corrupted_operator_fails_to_intertwine() {
        let (alpha, delta) = (rat_int(1), rat_int(5));
        let (u, v, xi) = (rat_int(2), rat_int(3), rat_int(1));
        let l_u = corrupted_five_vertex_l(&u, &xi, &alpha, &delta, rat_int(1)).unwrap();
        let l_v = corrupted_five_vertex_l(&v, &xi, &alpha, &delta, rat_int(1)).unwrap();
        let residual = verify_rll(&l_u, &l_v, &delta, &u, &v, None).unwrap();
        assert!(!residual.is_zero());
    }

    #[test]
    fn nilpotent_family_intertwines_across_variants() {
        let mut rng = SplitMix64::new(2024);
        for variant in [SpmVariant::First, SpmVariant::Second, SpmVariant::Third] {
            for m in 1..=3 {
                let params = SpmParams {
                    variant,
                    m,
                    n_vec: SpmParams::default_unit_vector(m).unwrap(),
                    alpha: rng.rational_where(true),
                    beta1: Rational::zero(),
                    beta2: rng.rational_where(true),
                    gamma: rng.rational_where(true),
                    delta: rng.rational_where(true),
                };
                let (u, v) = {
                    let pair = rng.distinct_square_rationals(2, true);
                    (pair[0].clone(), pair[1].clone())
                };
                let l_u = spm_l(&u, &params).unwrap();
                let l_v = spm_l(&v, &params).unwrap();
                let residual = verify_rll(&l_u, &l_v, &params.delta, &u, &v, None).unwrap();
                assert!(residual.is_zero(), "variant {variant:?}, m = {m}");
            }
        }
    }

    #[test]
    fn bosonic_operator_intertwines_on_safe_block() {
        let delta = rat(4, 3);
        let (alpha, delta_param) = (rat(9, 2), rat(-1, 2)); // product -9/4 = -(3/2)^2
        let cutoff = 6;
        let (u, v) = (rat(3, 5), rat(7, 4));
        for sign in [BosonicSign::Plus, BosonicSign::Minus] {
            let l_u = bosonic_l(&u, &alpha, &delta_param, &delta, cutoff, sign).unwrap();
            let l_v = bosonic_l(&v, &alpha, &delta_param, &delta, cutoff, sign).unwrap();
            let residual =
                verify_rll(&l_u, &l_v, &delta, &u, &v, Some(cutoff - 3)).unwrap();
            assert!(residual.is_zero());
        }
    }

    #[test]
    fn sixteen_relations_hold_for_the_monodromy() {
        let mut rng = SplitMix64::new(31);
        let params = WeightParams::inhomogeneous(
            rng.rational_where(false),
            rng.rational_where(false),
            rng.distinct_square_rationals(2, false),
            rng.distinct_square_rationals(3, false),
        )
        .unwrap();
        let pair = rng.distinct_square_rationals(2, false);
        let (u, v) = (pair[0].clone(), pair[1].clone());
        let at_u = build_monodromy(3, &u, &params, DEFAULT_DIMENSION_CAP).unwrap();
        let at_v = build_monodromy(3, &v, &params, DEFAULT_DIMENSION_CAP).unwrap();
        let residuals =
            commutation_residuals(&at_u, &at_v, &params.delta, &u, &v, None).unwrap();
        assert_eq!(residuals.len(), 16);
        for (name, op) in &residuals {
            assert!(op.is_zero(), "relation {name} fails");
        }
    }

    #[test]
    fn sixteen_relations_hold_for_the_bosonic_solution_on_safe_block() {
        let delta = rat(5, 4);
        let (alpha, delta_param) = (rat_int(-8), rat(1, 2)); // product -4
        let cutoff = 6;
        let (u, v) = (rat(2, 3), rat(5, 7));
        let quad = |w: &Rational| {
            OperatorQuad::from_local(
                &bosonic_l(w, &alpha, &delta_param, &delta, cutoff, BosonicSign::Minus).unwrap(),
            )
        };
        let residuals = commutation_residuals(
            &quad(&u),
            &quad(&v),
            &delta,
            &u,
            &v,
            Some(cutoff - 3),
        )
        .unwrap();
        assert!(all_relations_hold(&residuals));
        // negative control: without the mask the cut edge shows
        let unmasked =
            commutation_residuals(&quad(&u), &quad(&v), &delta, &u, &v, None).unwrap();
        assert!(!all_relations_hold(&unmasked));
    }
}
