//! Arithmetic over GF(q) for prime q, and row reduction of small matrices.
//!
//! Only prime fields are supported; the callers reject prime powers before
//! getting here.  Matrices are dense row-major with entries in 0..q.

use crate::error::{Error, Result};

pub(crate) fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(q: u32) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime { q })
    }
}

/// Smallest generator of the multiplicative group of GF(q).
pub(crate) fn primitive_root(q: u32) -> u32 {
    debug_assert!(is_prime(q));
    if q == 2 {
        return 1;
    }
    'candidates: for g in 2..q {
        // g generates iff its order is q-1: check g^((q-1)/p) != 1 for the
        // prime divisors p of q-1.
        let mut m = q - 1;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                if pow_mod(g, (q - 1) / p, q) == 1 {
                    continue 'candidates;
                }
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 && pow_mod(g, (q - 1) / m, q) == 1 {
            continue 'candidates;
        }
        return g;
    }
    unreachable!("every prime field has a primitive root")
}

fn pow_mod(base: u32, mut exp: u32, q: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut b = base as u64 % q as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % q as u64;
        }
        b = b * b % q as u64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(q), "zero has no inverse");
    pow_mod(a % q, q - 2, q)
}

/// Dense row-major matrix over GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MatGF {
    pub q: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl MatGF {
    pub fn new(q: u32, rows: usize, cols: usize) -> Self {
        MatGF {
            q,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(q: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = MatGF::new(q, r, c);
        for (i, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x % q;
            }
        }
        m
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = MatGF::new(q, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// self * other, with self.cols == other.rows.
    pub fn mul(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.q, other.q);
        let q = self.q as u64;
        let mut out = MatGF::new(self.q, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out[(i, j)] as u64;
                    out[(i, j)] = ((cur + a * other[(k, j)] as u64) % q) as u32;
                }
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns the rank.
    /// Pivots are 1, pivot columns are cleared above and below, zero rows
    /// sink to the bottom.
    pub fn rref(&mut self) -> usize {
        let q = self.q;
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| self[(r, col)] != 0) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..self.cols {
                    self.data.swap(src * self.cols + j, pivot_row * self.cols + j);
                }
            }
            let inv = inv_mod(self[(pivot_row, col)], q);
            for j in col..self.cols {
                self[(pivot_row, j)] = (self[(pivot_row, j)] as u64 * inv as u64 % q as u64) as u32;
            }
            for r in 0..self.rows {
                if r != pivot_row && self[(r, col)] != 0 {
                    let factor = self[(r, col)] as u64;
                    for j in col..self.cols {
                        let sub = factor * self[(pivot_row, j)] as u64 % q as u64;
                        let cur = self[(r, j)] as u64;
                        self[(r, j)] = ((cur + q as u64 - sub) % q as u64) as u32;
                    }
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    pub fn rank(&self) -> usize {
        self.clone().rref()
    }
}

impl std::ops::Index<(usize, usize)> for MatGF {
    type Output = u32;
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatGF {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(5));
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(6));
        assert!(!is_prime(9));
    }

    #[test]
    fn inverses_in_small_fields() {
        for q in [2u32, 3, 5, 7] {
            for a in 1..q {
                let inv = inv_mod(a, q);
                assert_eq!(a * inv % q, 1, "inverse of {a} mod {q}");
            }
        }
    }

    #[test]
    fn primitive_roots_generate() {
        for q in [2u32, 3, 5, 7, 11] {
            let g = primitive_root(q);
            let mut seen = vec![false; q as usize];
            let mut x = 1u32;
            for _ in 0..q - 1 {
                seen[x as usize] = true;
                x = x * g % q;
            }
            assert!((1..q).all(|a| seen[a as usize]), "root {g} of {q}");
        }
    }

    #[test]
    fn rref_examples() {
        // Rank 2 over GF(2).
        let mut m = MatGF::from_rows(2, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rref(), 2);
        // Over GF(3): pivots are normalized to 1.
        let mut m = MatGF::from_rows(3, &[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.rref(), 2);
        assert_eq!(m.row(0), &[1, 0]);
        assert_eq!(m.row(1), &[0, 1]);
        // Singular over GF(3): the second row is twice the first.
        let mut m = MatGF::from_rows(3, &[vec![2, 1], vec![1, 2]]);
        assert_eq!(m.rref(), 1);
        assert_eq!(m.row(0), &[1, 2]);
        assert_eq!(m.row(1), &[0, 0]);
    }

    #[test]
    fn rref_is_idempotent() {
        let mut m = MatGF::from_rows(
            5,
            &[vec![1, 2, 3, 4], vec![2, 4, 1, 3], vec![3, 1, 4, 2]],
        );
        m.rref();
        let again = {
            let mut c = m.clone();
            c.rref();
            c
        };
        assert_eq!(m, again);
    }

    #[test]
    fn multiply_against_identity() {
        let m = MatGF::from_rows(7, &[vec![1, 2, 3], vec![4, 5, 6]]);
        let id = MatGF::identity(7, 3);
        assert_eq!(m.mul(&id), m);
    }
}
