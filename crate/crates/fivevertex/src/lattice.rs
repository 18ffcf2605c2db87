//! Ground-truth oracle: enumerate every admissible configuration of the
//! model on the `L x M` lattice with the fixed boundary conditions, weigh
//! it, and sum. Configurations are ensembles of `N` non-intersecting
//! lines entering at the bottom of the `N` leftmost columns and leaving
//! at the top of the `N` rightmost ones; they are in bijection with plane
//! partitions in an `A x B x C` box, `A = L-N`, `B = N`, `C = M-N`.
//!
//! Columns carry rapidities `u_j` counted right to left, rows carry
//! `xi_k` counted top to bottom; the vertex at column position `p`, row
//! `k` takes weight `w_t(u_j / xi_k)` with `j = L+1-p`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rational};
use crate::par;

/// Hard cap on enumerated configurations unless the caller overrides it.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1_000_000;

/// Lattice geometry: `l` columns, `m` rows, `n` boundary lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub l: usize,
    pub m: usize,
    pub n: usize,
}

impl LatticeSpec {
    pub fn new(l: usize, m: usize, n: usize) -> Result<Self> {
        if l < 1 || m < 1 {
            return Err(Error::InvalidInput(format!(
                "lattice needs at least one column and one row, got {l} x {m}"
            )));
        }
        if n > l.min(m) {
            return Err(Error::InvalidInput(format!(
                "boundary line count {n} exceeds min({l}, {m})"
            )));
        }
        Ok(LatticeSpec { l, m, n })
    }

    /// Box side along the columns: `A = L - N`.
    pub fn box_a(&self) -> usize {
        self.l - self.n
    }

    /// Box side counting the lines: `B = N`.
    pub fn box_b(&self) -> usize {
        self.n
    }

    /// Box side along the rows: `C = M - N`.
    pub fn box_c(&self) -> usize {
        self.m - self.n
    }
}

/// Column and row rapidities.
#[derive(Clone, Debug, PartialEq)]
pub enum Rapidities {
    /// All columns carry `u`, all rows carry `xi = 1`.
    Homogeneous { u: Rational },
    /// Per-column `u_j` (right to left) and per-row `xi_k` (top to bottom).
    Inhomogeneous { u: Vec<Rational>, xi: Vec<Rational> },
}

/// Interaction parameter, external field and rapidities.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightParams {
    pub alpha: Rational,
    pub delta: Rational,
    pub rapidities: Rapidities,
}

impl WeightParams {
    pub fn homogeneous(alpha: Rational, delta: Rational, u: Rational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroParameter("alpha"));
        }
        if delta.is_zero() {
            return Err(Error::ZeroParameter("delta"));
        }
        if u.is_zero() {
            return Err(Error::ZeroParameter("u"));
        }
        Ok(WeightParams {
            alpha,
            delta,
            rapidities: Rapidities::Homogeneous { u },
        })
    }

    /// Inhomogeneous rapidities; requires pairwise distinct `u_j^2` and
    /// pairwise distinct `xi_k^2`.
    pub fn inhomogeneous(
        alpha: Rational,
        delta: Rational,
        u: Vec<Rational>,
        xi: Vec<Rational>,
    ) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroParameter("alpha"));
        }
        if delta.is_zero() {
            return Err(Error::ZeroParameter("delta"));
        }
        require_distinct_squares(&u)?;
        for x in &xi {
            if x.is_zero() {
                return Err(Error::ZeroParameter("xi"));
            }
        }
        let sq: Vec<Rational> = xi.iter().map(|x| x * x).collect();
        for i in 0..sq.len() {
            for j in 0..i {
                if sq[i] == sq[j] {
                    return Err(Error::CoincidentRapidities { i: j, j: i });
                }
            }
        }
        Ok(WeightParams {
            alpha,
            delta,
            rapidities: Rapidities::Inhomogeneous { u, xi },
        })
    }

    /// Column rapidity `u_j` (1-based, counted right to left).
    pub fn u_at(&self, j: usize) -> &Rational {
        match &self.rapidities {
            Rapidities::Homogeneous { u } => u,
            Rapidities::Inhomogeneous { u, .. } => &u[j - 1],
        }
    }

    /// Row rapidity `xi_k` (1-based, counted top to bottom).
    pub fn xi_at(&self, k: usize) -> Rational {
        match &self.rapidities {
            Rapidities::Homogeneous { .. } => Rational::one(),
            Rapidities::Inhomogeneous { xi, .. } => xi[k - 1].clone(),
        }
    }
}

/// Checks nonzero entries with pairwise distinct squares.
pub fn require_distinct_squares(values: &[Rational]) -> Result<()> {
    for v in values {
        if v.is_zero() {
            return Err(Error::ZeroParameter("u"));
        }
    }
    let sq: Vec<Rational> = values.iter().map(|v| v * v).collect();
    for i in 0..sq.len() {
        for j in 0..i {
            if sq[i] == sq[j] {
                return Err(Error::CoincidentRapidities { i: j, j: i });
            }
        }
    }
    Ok(())
}

/// The five admitted vertex types, named by the conventional weight index
/// (type 2, the crossing, is frozen out).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexType {
    /// No lines.
    V1,
    /// Vertical line through.
    V3,
    /// Horizontal line through.
    V4,
    /// Line enters from below, leaves to the right.
    V5,
    /// Line enters from the left, leaves upward.
    V6,
}

impl VertexType {
    pub fn label(self) -> char {
        match self {
            VertexType::V1 => '1',
            VertexType::V3 => '3',
            VertexType::V4 => '4',
            VertexType::V5 => '5',
            VertexType::V6 => '6',
        }
    }
}

/// The six vertex weights at spectral argument `u/xi`; `w2` is always zero.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexWeights {
    pub w1: Rational,
    pub w2: Rational,
    pub w3: Rational,
    pub w4: Rational,
    pub w5: Rational,
    pub w6: Rational,
}

impl VertexWeights {
    pub fn weight(&self, t: VertexType) -> &Rational {
        match t {
            VertexType::V1 => &self.w1,
            VertexType::V3 => &self.w3,
            VertexType::V4 => &self.w4,
            VertexType::V5 => &self.w5,
            VertexType::V6 => &self.w6,
        }
    }
}

/// `w1 = (alpha/Delta)(u/xi - xi/u)`, `w3 = u/(xi alpha)`, `w4 = alpha u/xi`,
/// `w5 = w6 = 1`, `w2 = 0`.
pub fn vertex_weights(
    alpha: &Rational,
    delta: &Rational,
    u: &Rational,
    xi: &Rational,
) -> Result<VertexWeights> {
    if alpha.is_zero() {
        return Err(Error::ZeroParameter("alpha"));
    }
    if delta.is_zero() {
        return Err(Error::ZeroParameter("delta"));
    }
    if u.is_zero() {
        return Err(Error::ZeroParameter("u"));
    }
    if xi.is_zero() {
        return Err(Error::ZeroParameter("xi"));
    }
    let ratio = u / xi;
    let inv = xi / u;
    Ok(VertexWeights {
        w1: alpha / delta * (&ratio - &inv),
        w2: Rational::zero(),
        w3: &ratio / alpha,
        w4: alpha * &ratio,
        w5: Rational::one(),
        w6: Rational::one(),
    })
}

/// One admissible configuration: vertex types per site, rows top to
/// bottom, column positions left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexConfiguration {
    types: Vec<Vec<VertexType>>,
}

impl VertexConfiguration {
    pub fn types(&self) -> &[Vec<VertexType>] {
        &self.types
    }

    /// Debug dump: one text row per lattice row, vertex-type labels
    /// `{1,3,4,5,6}` per site.
    pub fn type_grid(&self) -> String {
        self.types
            .iter()
            .map(|row| row.iter().map(|t| t.label()).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Traces line `i` (1-based, bottom entry position `i`) upward and
    /// reports, for each unit step to the right, the row (1-based, top to
    /// bottom) where the step happens; steps are listed in bottom-up order.
    fn right_move_rows(&self, spec: &LatticeSpec, line: usize) -> Vec<usize> {
        let m = spec.m;
        let mut moves = Vec::with_capacity(spec.box_a());
        let mut pos = line; // entering from below at column position `line`
        for row in (1..=m).rev() {
            // the line enters row `row` from below at `pos`
            debug_assert!(matches!(
                self.types[row - 1][pos - 1],
                VertexType::V3 | VertexType::V5
            ));
            let mut p = pos;
            while self.types[row - 1][p - 1] != VertexType::V3
                && self.types[row - 1][p - 1] != VertexType::V6
            {
                // V5 starts the rightward run, V4 continues it
                moves.push(row);
                p += 1;
            }
            pos = p;
        }
        debug_assert_eq!(pos, spec.l - spec.n + line);
        moves
    }

    /// The plane partition of the configuration: `B = N` rows of `A = L-N`
    /// heights in `[0, C]`, weakly decreasing along rows and columns.
    /// Row `i` (1-based) follows the line entering at bottom position `i`;
    /// the height of its `j`-th step from the right counts the rows below
    /// the step, shifted by the line index so that the extreme
    /// configurations land on the all-zero and all-`C` arrays.
    pub fn to_plane_partition(&self, spec: &LatticeSpec) -> PlanePartition {
        let a = spec.box_a();
        let mut rows = Vec::with_capacity(spec.n);
        for line in 1..=spec.n {
            let moves = self.right_move_rows(spec, line);
            debug_assert_eq!(moves.len(), a);
            let mut row: Vec<u32> = moves
                .iter()
                .map(|&r| {
                    let h = spec.m as i64 - r as i64 - (spec.n as i64 - line as i64);
                    debug_assert!(h >= 0);
                    h as u32
                })
                .collect();
            row.reverse();
            rows.push(row);
        }
        PlanePartition { rows }
    }
}

/// Heights of a 3D Young diagram, weakly decreasing along rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePartition {
    pub rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    /// Checks containment in an `a x b x c` box including monotonicity.
    pub fn is_valid_in_box(&self, a: usize, b: usize, c: usize) -> bool {
        if self.rows.len() != b {
            return false;
        }
        for row in &self.rows {
            if row.len() != a {
                return false;
            }
            if row.iter().any(|&h| h as usize > c) {
                return false;
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
        }
        for i in 1..self.rows.len() {
            for j in 0..a {
                if self.rows[i][j] > self.rows[i - 1][j] {
                    return false;
                }
            }
        }
        true
    }
}

/// Row transition: all admissible bottom masks below a row given the mask
/// above it, with the vertex types of the row. Bit `p-1` of a mask marks a
/// line on the vertical edge at column position `p`.
fn row_transitions(l: usize, top: u32) -> Vec<(u32, Vec<VertexType>)> {
    let mut out = Vec::new();
    let mut types = Vec::with_capacity(l);
    descend(l, top, 1, 0u32, false, &mut types, &mut out);
    return out;

    fn descend(
        l: usize,
        top: u32,
        p: usize,
        bottom: u32,
        h: bool,
        types: &mut Vec<VertexType>,
        out: &mut Vec<(u32, Vec<VertexType>)>,
    ) {
        if p > l {
            if !h {
                out.push((bottom, types.clone()));
            }
            return;
        }
        let t = top >> (p - 1) & 1 == 1;
        match (h, t) {
            (false, false) => {
                // empty vertex, or a line entering from below and turning right
                types.push(VertexType::V1);
                descend(l, top, p + 1, bottom, false, types, out);
                types.pop();
                types.push(VertexType::V5);
                descend(l, top, p + 1, bottom | 1 << (p - 1), true, types, out);
                types.pop();
            }
            (false, true) => {
                types.push(VertexType::V3);
                descend(l, top, p + 1, bottom | 1 << (p - 1), false, types, out);
                types.pop();
            }
            (true, false) => {
                types.push(VertexType::V4);
                descend(l, top, p + 1, bottom, true, types, out);
                types.pop();
            }
            (true, true) => {
                types.push(VertexType::V6);
                descend(l, top, p + 1, bottom, false, types, out);
                types.pop();
            }
        }
    }
}

fn top_boundary_mask(spec: &LatticeSpec) -> u32 {
    // lines on the rightmost N columns
    let mut mask = 0u32;
    for p in spec.l - spec.n + 1..=spec.l {
        mask |= 1 << (p - 1);
    }
    mask
}

fn bottom_boundary_mask(spec: &LatticeSpec) -> u32 {
    // lines on the leftmost N columns
    let mut mask = 0u32;
    for p in 1..=spec.n {
        mask |= 1 << (p - 1);
    }
    mask
}

/// Every admissible configuration, exactly once. Intended for desk-scale
/// lattices; the count equals the number of plane partitions in the box.
pub fn enumerate_configs(spec: &LatticeSpec) -> Vec<VertexConfiguration> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<VertexType>> = Vec::with_capacity(spec.m);
    walk(spec, 1, top_boundary_mask(spec), &mut rows, &mut out);
    return out;

    fn walk(
        spec: &LatticeSpec,
        row: usize,
        mask: u32,
        rows: &mut Vec<Vec<VertexType>>,
        out: &mut Vec<VertexConfiguration>,
    ) {
        if row > spec.m {
            if mask == bottom_boundary_mask(spec) {
                out.push(VertexConfiguration { types: rows.clone() });
            }
            return;
        }
        for (next, types) in row_transitions(spec.l, mask) {
            rows.push(types);
            walk(spec, row + 1, next, rows, out);
            rows.pop();
        }
    }
}

/// Number of admissible configurations, without materializing them.
pub fn count_configs(spec: &LatticeSpec) -> u64 {
    fn walk(spec: &LatticeSpec, row: usize, mask: u32) -> u64 {
        if row > spec.m {
            return u64::from(mask == bottom_boundary_mask(spec));
        }
        row_transitions(spec.l, mask)
            .into_iter()
            .map(|(next, _)| walk(spec, row + 1, next))
            .sum()
    }
    walk(spec, 1, top_boundary_mask(spec))
}

/// Plane partitions in an `a x b x c` box, by the box product formula
/// `prod (i+j+k-1)/(i+j+k-2)`.
pub fn macmahon_boxed_count(a: usize, b: usize, c: usize) -> BigInt {
    let mut acc = Rational::one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                acc *= rat_int((i + j + k - 1) as i64) / rat_int((i + j + k - 2) as i64);
            }
        }
    }
    assert!(acc.is_integer());
    acc.to_integer()
}

/// Independent enumerator of plane partitions in an `a x b x c` box:
/// all `b x a` height arrays over `0..=c`, weakly decreasing along rows
/// and down columns.
pub fn enumerate_plane_partitions(a: usize, b: usize, c: usize) -> Vec<PlanePartition> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(b);
    fill(a, b, c, &mut rows, &mut out);
    return out;

    fn fill(a: usize, b: usize, c: usize, rows: &mut Vec<Vec<u32>>, out: &mut Vec<PlanePartition>) {
        if rows.len() == b {
            out.push(PlanePartition { rows: rows.clone() });
            return;
        }
        let bound: Vec<u32> = match rows.last() {
            Some(prev) => prev.clone(),
            None => vec![c as u32; a],
        };
        let mut row: Vec<u32> = Vec::with_capacity(a);
        gen_row(a, &bound, &mut row, rows, out, b, c);

        fn gen_row(
            a: usize,
            bound: &[u32],
            row: &mut Vec<u32>,
            rows: &mut Vec<Vec<u32>>,
            out: &mut Vec<PlanePartition>,
            b: usize,
            c: usize,
        ) {
            if row.len() == a {
                rows.push(row.clone());
                fill(a, b, c, rows, out);
                rows.pop();
                return;
            }
            let col = row.len();
            let cap = bound[col].min(row.last().copied().unwrap_or(c as u32));
            for h in (0..=cap).rev() {
                row.push(h);
                gen_row(a, bound, row, rows, out, b, c);
                row.pop();
            }
        }
    }
}

fn weight_tables(spec: &LatticeSpec, params: &WeightParams) -> Result<Vec<Vec<VertexWeights>>> {
    let mut rows = Vec::with_capacity(spec.m);
    for k in 1..=spec.m {
        let xi = params.xi_at(k);
        let mut row = Vec::with_capacity(spec.l);
        for p in 1..=spec.l {
            let j = spec.l + 1 - p;
            row.push(vertex_weights(
                &params.alpha,
                &params.delta,
                params.u_at(j),
                &xi,
            )?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn row_weight(weights: &[VertexWeights], types: &[VertexType]) -> Rational {
    let mut acc = Rational::one();
    for (w, &t) in weights.iter().zip(types) {
        acc *= w.weight(t);
    }
    acc
}

/// Exact partition function by full enumeration. Errors out (rather than
/// grinding) when the configuration count exceeds `budget`.
pub fn partition_function_oracle(
    spec: &LatticeSpec,
    params: &WeightParams,
    budget: u64,
) -> Result<Rational> {
    check_params_shape(spec, params)?;
    let count = macmahon_boxed_count(spec.box_a(), spec.box_b(), spec.box_c());
    if count > BigInt::from(budget) {
        return Err(Error::SizeBudget {
            count: count.try_into().unwrap_or(u128::MAX),
            budget: u128::from(budget),
        });
    }
    let tables = weight_tables(spec, params)?;

    // split on the first row, then let each branch walk the rest
    let branches = row_transitions(spec.l, top_boundary_mask(spec));
    let spec_copy = *spec;
    let total = par::sum_over(branches, Rational::zero(), move |(mask, types)| {
        let first = row_weight(&tables[0], &types);
        first * sum_below(&spec_copy, &tables, 2, mask)
    });
    return Ok(total);

    fn sum_below(
        spec: &LatticeSpec,
        tables: &[Vec<VertexWeights>],
        row: usize,
        mask: u32,
    ) -> Rational {
        if row > spec.m {
            return if mask == bottom_boundary_mask(spec) {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        let mut acc = Rational::zero();
        for (next, types) in row_transitions(spec.l, mask) {
            let w = row_weight(&tables[row - 1], &types);
            if w.is_zero() {
                continue;
            }
            acc += w * sum_below(spec, tables, row + 1, next);
        }
        acc
    }
}

fn check_params_shape(spec: &LatticeSpec, params: &WeightParams) -> Result<()> {
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
    Ok(())
}

/// Total exponent of `alpha` in any configuration weight is `M(L-2N)`;
/// exposed for the scaling invariant.
pub fn alpha_exponent(spec: &LatticeSpec) -> i64 {
    spec.m as i64 * (spec.l as i64 - 2 * spec.n as i64)
}
