//! Dense exact linear algebra over `F_p`.
//!
//! This is the kernel behind the coinvariant exponents
//! `e((M/p)_{Γ_n})`, computed as cokernel dimensions of assembled
//! multiplication matrices over `F_p[X]/(X^{p^n})`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Default cap on the row dimension `g · p^n` of assembled matrices.
pub const DIM_BUDGET: usize = 8192;

/// Dense matrix over `F_p`, entries stored row-major in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_entries(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let m = p as i64;
        FpMatrix {
            p,
            rows,
            cols,
            entries: entries.iter().map(|&e| (((e % m) + m) % m) as u32).collect(),
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!((v as u64) < self.p);
        self.entries[i * self.cols + j] = v;
    }

    /// Copy `block` into this matrix with its top-left corner at `(i0, j0)`.
    pub fn set_block(&mut self, i0: usize, j0: usize, block: &FpMatrix) {
        debug_assert_eq!(self.p, block.p);
        for i in 0..block.rows {
            let src = &block.entries[i * block.cols..(i + 1) * block.cols];
            let dst_off = (i0 + i) * self.cols + j0;
            self.entries[dst_off..dst_off + block.cols].copy_from_slice(src);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Rank by in-place Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut a = self.entries.clone();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            // find pivot
            let mut piv = None;
            for r in rank..rows {
                if a[r * cols + col] != 0 {
                    piv = Some(r);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            a.swap_with_rows(rank, piv, cols);
            // normalize pivot row
            let inv = mod_inv(a[rank * cols + col] as u64, p) as u64;
            for j in col..cols {
                let v = a[rank * cols + j] as u64 * inv % p;
                a[rank * cols + j] = v as u32;
            }
            // eliminate below
            for r in rank + 1..rows {
                let f = a[r * cols + col] as u64;
                if f == 0 {
                    continue;
                }
                let f = p - f;
                for j in col..cols {
                    let v = (a[r * cols + j] as u64 + f * a[rank * cols + j] as u64) % p;
                    a[r * cols + j] = v as u32;
                }
            }
            rank += 1;
        }
        rank
    }

    /// `rows − rank`: the `F_p`-dimension of the cokernel of the map whose
    /// columns are the relations (generators index rows).
    pub fn cokernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    /// Dimension of the kernel (nullity over the columns).
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

trait SwapRows {
    fn swap_with_rows(&mut self, a: usize, b: usize, cols: usize);
}

impl SwapRows for Vec<u32> {
    fn swap_with_rows(&mut self, a: usize, b: usize, cols: usize) {
        if a == b {
            return;
        }
        for j in 0..cols {
            self.swap(a * cols + j, b * cols + j);
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is a small prime.
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// The `m × m` lower-triangular Toeplitz matrix of multiplication by `fbar`
/// on `F_p[X]/(X^m)` in the basis `1, X, …, X^{m−1}`.
///
/// `fbar` is the mod-p reduction of the canonical polynomial representative;
/// coefficients beyond its length are zero.
pub fn mult_matrix_dim(p: u64, fbar: &[u64], m: usize) -> Result<FpMatrix, Error> {
    if m > DIM_BUDGET {
        return Err(Error::DimensionBudgetExceeded);
    }
    let mut a = FpMatrix::zeros(p, m, m);
    for (k, &c) in fbar.iter().enumerate() {
        let c = (c % p) as u32;
        if c == 0 {
            continue;
        }
        for j in 0..m.saturating_sub(k) {
            a.set(j + k, j, c);
        }
    }
    Ok(a)
}

/// [`mult_matrix_dim`] with `m = p^n` (the coinvariant level-`n` quotient).
pub fn mult_matrix(p: u64, fbar: &[u64], n: u32) -> Result<FpMatrix, Error> {
    let m = p.checked_pow(n).ok_or(Error::DimensionBudgetExceeded)? as usize;
    mult_matrix_dim(p, fbar, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mult_matrix_identity() {
        let a = mult_matrix(3, &[1], 1).unwrap();
        assert_eq!(a, FpMatrix::identity(3, 3));
    }

    #[test]
    fn mult_matrix_shift() {
        let a = mult_matrix(3, &[0, 1], 1).unwrap();
        let expect = FpMatrix::from_entries(3, 3, 3, &[0, 0, 0, 1, 0, 0, 0, 1, 0]);
        assert_eq!(a, expect);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.cokernel_dim(), 1);
    }

    #[test]
    fn twist_trivial_mod_p() {
        // f = 3 + 4X reduces to X mod 3: same matrix as the shift.
        let a = mult_matrix(3, &[3 % 3, 4 % 3], 1).unwrap();
        let b = mult_matrix(3, &[0, 1], 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cokernel_edge_cases() {
        assert_eq!(FpMatrix::zeros(5, 4, 3).cokernel_dim(), 4);
        assert_eq!(FpMatrix::identity(5, 4).cokernel_dim(), 0);
    }

    #[test]
    fn budget_enforced() {
        assert_eq!(
            mult_matrix_dim(3, &[1], DIM_BUDGET + 1).err(),
            Some(Error::DimensionBudgetExceeded)
        );
    }
}
