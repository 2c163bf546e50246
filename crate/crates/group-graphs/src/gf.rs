//! Exact linear algebra over the prime fields GF(p).
//!
//! Matrices act on row vectors by right multiplication, the convention used
//! by the semidirect-product construction in [`crate::construct`]. All
//! arithmetic is exact; there is no rounding anywhere in the crate.

use thiserror::Error;

use crate::arith::is_prime;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("matrix is singular mod {0}")]
    Singular(u64),
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("entry count {got} does not match dimension {dim}x{dim}")]
    BadShape { dim: usize, got: usize },
}

/// A square matrix over GF(p), entries stored row-major and reduced mod p.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfMatrix {
    p: u64,
    dim: usize,
    entries: Vec<u64>,
}

impl std::fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GfMatrix(mod {})", self.p)?;
        for r in 0..self.dim {
            writeln!(f, "  {:?}", &self.entries[r * self.dim..(r + 1) * self.dim])?;
        }
        Ok(())
    }
}

impl GfMatrix {
    /// Builds a matrix from signed entries, reducing each mod p.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(GfError::BadShape {
                    dim,
                    got: row.len(),
                });
            }
            for &v in row {
                entries.push(v.rem_euclid(p as i64) as u64);
            }
        }
        Ok(GfMatrix { p, dim, entries })
    }

    pub fn identity(p: u64, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        GfMatrix { p, dim, entries }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.dim + c]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == GfMatrix::identity(self.p, self.dim)
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix, GfError> {
        if self.dim != other.dim || self.p != other.p {
            return Err(GfError::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let p = self.p;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] = (entries[i * n + j] + a * other.entries[k * n + j]) % p;
                }
            }
        }
        Ok(GfMatrix {
            p,
            dim: n,
            entries,
        })
    }

    /// Multiplies a row vector on the right: `v * M`.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.dim);
        let n = self.dim;
        let mut out = vec![0u64; n];
        for (k, &vk) in v.iter().enumerate() {
            if vk == 0 {
                continue;
            }
            let row = &self.entries[k * n..(k + 1) * n];
            for (o, &m) in out.iter_mut().zip(row) {
                *o = (*o + vk * m) % self.p;
            }
        }
        out
    }

    /// Multiplicative order, by repeated multiplication.
    ///
    /// Fails on singular input: a singular matrix never returns to the
    /// identity.
    pub fn order(&self) -> Result<u64, GfError> {
        if self.inverse().is_none() {
            return Err(GfError::Singular(self.p));
        }
        let mut o = 1u64;
        let mut m = self.clone();
        while !m.is_identity() {
            m = m.mul(self).expect("same shape");
            o += 1;
        }
        Ok(o)
    }

    pub fn pow(&self, mut e: u64) -> GfMatrix {
        let mut base = self.clone();
        let mut acc = GfMatrix::identity(self.p, self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            e >>= 1;
        }
        acc
    }

    /// Inverse by Gauss-Jordan elimination, or `None` when singular.
    pub fn inverse(&self) -> Option<GfMatrix> {
        let n = self.dim;
        let p = self.p;
        let mut a = self.entries.clone();
        let mut inv = GfMatrix::identity(p, n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                    inv.swap(col * n + j, pivot * n + j);
                }
            }
            let scale = mod_inverse(a[col * n + col], p);
            for j in 0..n {
                a[col * n + j] = a[col * n + j] * scale % p;
                inv[col * n + j] = inv[col * n + j] * scale % p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = (a[r * n + j] + (p - f) * a[col * n + j]) % p;
                    inv[r * n + j] = (inv[r * n + j] + (p - f) * inv[col * n + j]) % p;
                }
            }
        }
        Some(GfMatrix {
            p,
            dim: n,
            entries: inv,
        })
    }

    pub fn rank(&self) -> usize {
        let n = self.dim;
        let p = self.p;
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..n {
                    a.swap(rank * n + j, pivot * n + j);
                }
            }
            let scale = mod_inverse(a[rank * n + col], p);
            for j in 0..n {
                a[rank * n + j] = a[rank * n + j] * scale % p;
            }
            for r in 0..n {
                if r == rank {
                    continue;
                }
                let f = a[r * n + col];
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = (a[r * n + j] + (p - f) * a[rank * n + j]) % p;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Basis of the fixed space `{v : v M = v}`, i.e. the left kernel of `M - I`,
/// by exact elimination. An empty basis means the action is fixed-point-free.
pub fn fixed_space(m: &GfMatrix) -> Vec<Vec<u64>> {
    let n = m.dim;
    let p = m.p;
    // v(M - I) = 0 is a linear system in the row vector v; transpose so the
    // unknowns index columns of the usual right-kernel computation.
    let mut a = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut e = m.entries[i * n + j];
            if i == j {
                e = (e + p - 1) % p;
            }
            a[j * n + i] = e; // transpose of M - I
        }
    }
    right_kernel_basis(&a, n, p)
}

fn right_kernel_basis(a: &[u64], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = a.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..n {
                m.swap(rank * n + j, pivot * n + j);
            }
        }
        let scale = mod_inverse(m[rank * n + col], p);
        for j in 0..n {
            m[rank * n + j] = m[rank * n + j] * scale % p;
        }
        for r in 0..n {
            if r == rank {
                continue;
            }
            let f = m[r * n + col];
            if f == 0 {
                continue;
            }
            for j in 0..n {
                m[r * n + j] = (m[r * n + j] + (p - f) * m[rank * n + j]) % p;
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row;
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            let coeff = m[row * n + free];
            if coeff != 0 {
                v[pc] = (p - coeff) % p;
            }
        }
        basis.push(v);
    }
    basis
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    debug_assert!(!a.is_multiple_of(p));
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
