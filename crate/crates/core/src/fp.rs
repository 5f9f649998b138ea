//! Dense exact linear algebra over the prime fields F_p.
//!
//! Every matrix in the engine is one of these. Arithmetic is exact residue
//! arithmetic; the prime is capped at 2^16 so products of residues fit in a
//! `u64` without overflow. Pivoting is deterministic (first nonzero entry in
//! column order), so every basis produced downstream is reproducible.

use crate::error::{EngineError, Result};
use serde::{Deserialize, Serialize};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(EngineError::NotPrime(p));
    }
    if p > 1 << 16 {
        return Err(EngineError::PrimeTooLarge(p));
    }
    Ok(())
}

/// Inverse of a nonzero residue mod a prime, by Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Row-major matrix over F_p with entries reduced to [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, data: &[Vec<u64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row data");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Column vector from a slice.
    pub fn col_vec(p: u64, data: &[u64]) -> Self {
        Self::from_fn(p, data.len(), 1, |i, _| data[i])
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.at(i, j) == u64::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.p, self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|&a| (self.p - a) % self.p).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        let entries = self.entries.iter().map(|&a| a * c % self.p).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        assert_eq!(self.p, other.p);
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.at(i, j) + a * other.at(k, j)) % self.p;
                    out.entries[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    /// Kronecker product; basis of the tensor is ordered (i of self, j of other).
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        Self::from_fn(self.p, self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.at(i / other.rows, j / other.cols) * other.at(i % other.rows, j % other.cols)
                % self.p
        })
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.p, other.p);
        Self::from_fn(self.p, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j)
            } else {
                other.at(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        Self::from_fn(self.p, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j)
            } else {
                other.at(i - self.rows, j)
            }
        })
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        Self::from_fn(self.p, self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.at(i, j)
            } else if i >= self.rows && j >= self.cols {
                other.at(i - self.rows, j - self.cols)
            } else {
                0
            }
        })
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.p, self.rows, idx.len(), |i, j| self.at(i, idx[j]))
    }

    pub fn inv_scalar(&self, a: u64) -> u64 {
        inv_mod(a, self.p)
    }

    /// Reduced row echelon form with deterministic pivoting: scan columns
    /// left to right, take the first row with a nonzero entry.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut pivot_row = None;
            for i in r..m.rows {
                if m.at(i, c) != 0 {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.at(r, j), m.at(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.inv_scalar(m.at(r, c));
            for j in 0..m.cols {
                let v = m.at(r, j) * inv % m.p;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && m.at(i, c) != 0 {
                    let f = m.at(i, c);
                    for j in 0..m.cols {
                        let v = (m.at(i, j) + (m.p - f) * m.at(r, j)) % m.p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref_rank(&self) -> (FpMatrix, usize) {
        let (m, pivots) = self.rref();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space as columns of a `cols x nullity` matrix, and a
    /// basis of the column space as columns of a `rows x rank` matrix (the
    /// pivot columns of the original matrix, in order).
    pub fn kernel_image(&self) -> (FpMatrix, FpMatrix) {
        let (rref, pivots) = self.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = FpMatrix::zeros(self.p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            kernel.set(fc, k, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                let v = rref.at(pi, fc);
                kernel.set(pc, k, (self.p - v) % self.p);
            }
        }
        let image = self.select_columns(&pivots);
        debug_assert_eq!(kernel.cols + rank, self.cols);
        (kernel, image)
    }

    pub fn kernel(&self) -> FpMatrix {
        self.kernel_image().0
    }

    /// Solve A x = b for a single column vector, returning any solution.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(EngineError::DimensionMismatch(format!(
                "solve: matrix has {} rows but rhs has {} entries",
                self.rows,
                b.len()
            )));
        }
        let rhs = FpMatrix::col_vec(self.p, b);
        Ok(self.solve_matrix(&rhs)?.map(|x| x.column(0)))
    }

    /// Solve A X = B columnwise; None if any column is inconsistent.
    pub fn solve_matrix(&self, b: &FpMatrix) -> Result<Option<FpMatrix>> {
        if b.rows != self.rows {
            return Err(EngineError::DimensionMismatch(format!(
                "solve: matrix has {} rows but rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (rref, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = FpMatrix::zeros(self.p, self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, rref.at(pi, self.cols + j));
            }
        }
        debug_assert!(self.mul(&x) == *b, "solution must verify by substitution");
        Ok(Some(x))
    }

    /// Solve X A = B for X (factor B through A acting on the right).
    pub fn solve_left(a: &FpMatrix, b: &FpMatrix) -> Option<FpMatrix> {
        a.transpose()
            .solve_matrix(&b.transpose())
            .ok()
            .flatten()
            .map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = FpMatrix::identity(self.p, self.rows);
        match self.solve_matrix(&id) {
            Ok(Some(inv)) if inv.mul(self) == id => Some(inv),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Flatten to a single column (row-major), for treating maps as vectors.
    pub fn vectorize(&self) -> Vec<u64> {
        self.entries.clone()
    }

    pub fn from_vector(p: u64, rows: usize, cols: usize, data: &[u64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        let entries = data.iter().map(|&x| x % p).collect();
        FpMatrix { p, rows, cols, entries }
    }

    pub fn entries_raw(&self) -> &[u64] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_identity() {
        let id = FpMatrix::identity(2, 3);
        let (r, rank) = id.rref_rank();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_rank_one() {
        // Hand row reduction: second row is the first, rank 1.
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        let (_, rank) = m.rref_rank();
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_empty() {
        let m = FpMatrix::zeros(5, 0, 4);
        let (r, rank) = m.rref_rank();
        assert_eq!(r, m);
        assert_eq!(rank, 0);
    }

    #[test]
    fn kernel_image_identity() {
        let id = FpMatrix::identity(3, 2);
        let (k, im) = id.kernel_image();
        assert_eq!(k.cols, 0);
        assert_eq!(im.cols, 2);
    }

    #[test]
    fn kernel_image_zero() {
        let z = FpMatrix::zeros(3, 2, 2);
        let (k, im) = z.kernel_image();
        assert_eq!(k.cols, 2);
        assert_eq!(im.cols, 0);
    }

    #[test]
    fn kernel_of_ones() {
        // Hand computation: kernel of [[1,1],[1,1]] over F_2 is spanned by (1,1).
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        let (k, _) = m.kernel_image();
        assert_eq!(k.cols, 1);
        assert_eq!(k.column(0), vec![1, 1]);
    }

    #[test]
    fn solve_identity() {
        let a = FpMatrix::identity(7, 3);
        let x = a.solve(&[3, 5, 0]).unwrap().unwrap();
        assert_eq!(x, vec![3, 5, 0]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = FpMatrix::zeros(2, 2, 2);
        assert!(a.solve(&[1, 0]).unwrap().is_none());
    }

    #[test]
    fn solve_matches_exhaustive_enumeration() {
        // Oracle: enumerate all four vectors of F_2^2 and collect the
        // solutions of [[1,1],[0,0]] x = (1,0) by direct substitution.
        let a = FpMatrix::from_rows(2, &[vec![1, 1], vec![0, 0]]);
        let b = [1u64, 0];
        let mut solutions = Vec::new();
        for x0 in 0..2u64 {
            for x1 in 0..2u64 {
                let ax = [(x0 + x1) % 2, 0];
                if ax == b {
                    solutions.push(vec![x0, x1]);
                }
            }
        }
        assert_eq!(solutions, vec![vec![0, 1], vec![1, 0]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert!(solutions.contains(&x));
    }

    #[test]
    fn inverse_round_trip() {
        let m = FpMatrix::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn prime_guard() {
        assert!(check_prime(2).is_ok());
        assert!(check_prime(65521).is_ok());
        assert!(matches!(check_prime(6), Err(EngineError::NotPrime(6))));
        assert!(matches!(check_prime(65537), Err(EngineError::PrimeTooLarge(_))));
    }

    fn arb_matrix() -> impl Strategy<Value = FpMatrix> {
        (prop_oneof![Just(2u64), Just(3u64), Just(5u64)], 0usize..5, 0usize..5).prop_flat_map(
            |(p, rows, cols)| {
                proptest::collection::vec(0..p, rows * cols)
                    .prop_map(move |data| FpMatrix::from_vector(p, rows, cols, &data))
            },
        )
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let (r1, _) = m.rref_rank();
            let (r2, _) = r1.rref_rank();
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let (k, im) = m.kernel_image();
            prop_assert_eq!(k.cols + im.cols, m.cols);
            // kernel columns really are in the kernel and independent
            if k.cols > 0 {
                prop_assert!(m.mul(&k).is_zero());
                prop_assert_eq!(k.rank(), k.cols);
            }
        }

        #[test]
        fn solve_verifies(m in arb_matrix(), seed in 0u64..100) {
            let mut rng = crate::rng::Rng::new(seed);
            let x: Vec<u64> = (0..m.cols).map(|_| rng.below(m.p)).collect();
            let b = m.mul(&FpMatrix::col_vec(m.p, &x));
            let sol = m.solve(&b.column(0)).unwrap();
            prop_assert!(sol.is_some());
            let s = FpMatrix::col_vec(m.p, &sol.unwrap());
            prop_assert_eq!(m.mul(&s), b);
        }
    }
}
