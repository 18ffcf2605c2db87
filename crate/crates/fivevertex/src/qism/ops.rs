//! Exact sparse operators on the quantum space and small dense matrices
//! for local vertex operators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Sparse linear operator with rational entries; zero entries are never
/// stored, so the entry map doubles as a zero test.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseOperator {
    dim: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseOperator {
    pub fn zero(dim: usize) -> Self {
        SparseOperator {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = SparseOperator::zero(dim);
        for i in 0..dim {
            op.entries.insert((i, i), Rational::one());
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        debug_assert!(row < self.dim && col < self.dim);
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn add(&self, rhs: &SparseOperator) -> SparseOperator {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            let sum = out.get(i, j) + v;
            out.set(i, j, sum);
        }
        out
    }

    pub fn sub(&self, rhs: &SparseOperator) -> SparseOperator {
        self.add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> SparseOperator {
        if factor.is_zero() {
            return SparseOperator::zero(self.dim);
        }
        SparseOperator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&k, v)| (k, v * factor))
                .collect(),
        }
    }

    /// Operator composition `self * rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &SparseOperator) -> SparseOperator {
        assert_eq!(self.dim, rhs.dim);
        // index rhs rows once
        let mut rows: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(i, j), v) in &rhs.entries {
            rows.entry(i).or_default().push((j, v));
        }
        let mut out = SparseOperator::zero(self.dim);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rows.get(&k) {
                for &(j, b) in row {
                    let sum = out.get(i, j) + a * b;
                    out.set(i, j, sum);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, vec: &[Rational]) -> Vec<Rational> {
        assert_eq!(vec.len(), self.dim);
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), v) in &self.entries {
            if !vec[j].is_zero() {
                out[i] += v * &vec[j];
            }
        }
        out
    }

    /// Keeps only entries whose row and column both pass `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> SparseOperator {
        SparseOperator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .filter(|(&(i, j), _)| keep(i) && keep(j))
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    pub fn commutator(&self, rhs: &SparseOperator) -> SparseOperator {
        self.mul(rhs).sub(&rhs.mul(self))
    }
}

impl fmt::Debug for SparseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseOperator(dim={}, nnz={})", self.dim, self.entries.len())?;
        for (&(i, j), v) in self.entries.iter().take(32) {
            writeln!(f, "  ({i},{j}) = {v}")?;
        }
        if self.entries.len() > 32 {
            writeln!(f, "  ...")?;
        }
        Ok(())
    }
}

/// Dense square matrix of rationals; used for local vertex operators,
/// whose dimensions stay tiny.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: Vec<Vec<Rational>>,
}

impl DenseMatrix {
    pub fn zero(dim: usize) -> Self {
        DenseMatrix {
            rows: vec![vec![Rational::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = DenseMatrix::zero(dim);
        for i in 0..dim {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let dim = rows.len();
        for row in &rows {
            assert_eq!(row.len(), dim);
        }
        DenseMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    pub fn add(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let dim = self.dim();
        assert_eq!(dim, rhs.dim());
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| &self.rows[i][j] + &rhs.rows[i][j]).collect())
            .collect();
        DenseMatrix { rows }
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> DenseMatrix {
        self.add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> DenseMatrix {
        DenseMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v * factor).collect())
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let dim = self.dim();
        assert_eq!(dim, rhs.dim());
        let mut out = DenseMatrix::zero(dim);
        for i in 0..dim {
            for k in 0..dim {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..dim {
                    if !rhs.rows[k][j].is_zero() {
                        let add = &self.rows[i][k] * &rhs.rows[k][j];
                        out.rows[i][j] += add;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseMatrix {
        let dim = self.dim();
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| self.rows[j][i].clone()).collect())
            .collect();
        DenseMatrix { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Rational::is_zero))
    }

    pub fn to_sparse(&self) -> SparseOperator {
        let mut op = SparseOperator::zero(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    op.set(i, j, v.clone());
                }
            }
        }
        op
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Local vertex operator on the product of a two-dimensional auxiliary
/// space and a `q`-dimensional quantum space, laid out auxiliary-major:
/// row/column index `a * q + s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalLOperator {
    quantum_dim: usize,
    matrix: DenseMatrix,
}

impl LocalLOperator {
    pub fn new(quantum_dim: usize, matrix: DenseMatrix) -> Self {
        assert_eq!(matrix.dim(), 2 * quantum_dim);
        LocalLOperator {
            quantum_dim,
            matrix,
        }
    }

    /// Assembles from the four quantum-space blocks in auxiliary slots
    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(
        a: &DenseMatrix,
        b: &DenseMatrix,
        c: &DenseMatrix,
        d: &DenseMatrix,
    ) -> Self {
        let q = a.dim();
        assert!(b.dim() == q && c.dim() == q && d.dim() == q);
        let mut m = DenseMatrix::zero(2 * q);
        for (slot_row, slot_col, block) in [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, d)] {
            for i in 0..q {
                for j in 0..q {
                    m.set(slot_row * q + i, slot_col * q + j, block.get(i, j).clone());
                }
            }
        }
        LocalLOperator::new(q, m)
    }

    pub fn quantum_dim(&self) -> usize {
        self.quantum_dim
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// Quantum-space block at auxiliary (out, in) slot.
    pub fn block(&self, aux_out: usize, aux_in: usize) -> DenseMatrix {
        let q = self.quantum_dim;
        let rows = (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| self.matrix.get(aux_out * q + i, aux_in * q + j).clone())
                    .collect()
            })
            .collect();
        DenseMatrix::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    #[test]
    fn sparse_mul_matches_dense() {
        let mut a = SparseOperator::zero(3);
        a.set(0, 1, rat_int(2));
        a.set(2, 2, rat_int(-1));
        let mut b = SparseOperator::zero(3);
        b.set(1, 0, rat_int(3));
        b.set(2, 2, rat_int(5));
        let c = a.mul(&b);
        assert_eq!(c.get(0, 0), rat_int(6));
        assert_eq!(c.get(2, 2), rat_int(-5));
        assert_eq!(c.nnz(), 2);
    }

    #[test]
    fn apply_is_consistent_with_mul() {
        let mut a = SparseOperator::zero(2);
        a.set(0, 0, rat_int(1));
        a.set(0, 1, rat_int(2));
        a.set(1, 0, rat_int(3));
        let v = vec![rat_int(5), rat_int(7)];
        assert_eq!(a.apply(&v), vec![rat_int(19), rat_int(15)]);
    }

    #[test]
    fn zeros_are_never_stored() {
        let mut a = SparseOperator::zero(2);
        a.set(0, 0, rat_int(4));
        a.set(0, 0, rat_int(0));
        assert!(a.is_zero());
        let b = SparseOperator::identity(2).sub(&SparseOperator::identity(2));
        assert!(b.is_zero());
    }

    #[test]
    fn blocks_round_trip() {
        let q = 2;
        let a = DenseMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(3), rat_int(4)],
        ]);
        let b = DenseMatrix::zero(q);
        let c = DenseMatrix::identity(q);
        let d = a.transpose();
        let l = LocalLOperator::from_blocks(&a, &b, &c, &d);
        assert_eq!(l.block(0, 0), a);
        assert_eq!(l.block(0, 1), b);
        assert_eq!(l.block(1, 0), c);
        assert_eq!(l.block(1, 1), d);
    }
}
