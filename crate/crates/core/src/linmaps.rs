// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Square GF(2) matrices for the F_2-linear field maps.
//!
//! Matrices act on column vectors of coefficients: `out = M * in`, so column
//! `j` of the matrix of a map `f` is the coefficient vector of `f(x^j)`. Matrices
//! displayed in the row-vector convention must be transposed on ingestion.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2field::{FieldElem, IrreduciblePoly};

/// An `n x n` matrix over GF(2) stored as packed bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    n: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinMatrix {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        let stride = n.div_ceil(64);
        Ok(BinMatrix {
            n,
            stride,
            data: vec![0; n * stride],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = BinMatrix::zero(n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Build from 0/1 rows, e.g. fixtures copied from a printed matrix.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let mut m = BinMatrix::zero(rows.len())?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m.n {
                return Err(Error::DimensionMismatch {
                    expected: m.n,
                    got: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        Ok(m)
    }

    /// Build column by column; `col(j)` yields the coefficient vector of column `j`.
    pub fn from_columns<F>(n: usize, mut col: F) -> Result<Self>
    where
        F: FnMut(usize) -> Vec<bool>,
    {
        let mut m = BinMatrix::zero(n)?;
        for j in 0..n {
            let c = col(j);
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.len(),
                });
            }
            for (i, _) in c.iter().enumerate().filter(|(_, &b)| b) {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        (self.data[row * self.stride + col / 64] >> (col % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let w = &mut self.data[row * self.stride + col / 64];
        let mask = 1u64 << (col % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Column indices of the 1-entries in row `r`.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.row(r).iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(k * 64 + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }

    /// Every 1-entry as `(row, col)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |r| self.row_support(r).into_iter().map(move |c| (r, c)))
    }

    /// Number of 1-entries.
    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.n).filter(|&r| self.get(r, c)).count()
    }

    /// Largest row or column weight.
    pub fn max_degree(&self) -> usize {
        let mut cols = vec![0usize; self.n];
        let mut best = 0;
        for r in 0..self.n {
            best = best.max(self.row_weight(r));
            for c in self.row_support(r) {
                cols[c] += 1;
            }
        }
        cols.into_iter().fold(best, usize::max)
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut t = BinMatrix::zero(self.n).expect("n >= 1");
        for (r, c) in self.entries() {
            t.set(c, r, true);
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn multiply(&self, other: &BinMatrix) -> Result<BinMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = BinMatrix::zero(self.n)?;
        for r in 0..self.n {
            let base = r * self.stride;
            for k in self.row_support(r) {
                for w in 0..self.stride {
                    out.data[base + w] ^= other.data[k * other.stride + w];
                }
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse over packed rows.
    pub fn invert(&self) -> Result<BinMatrix> {
        let n = self.n;
        let s = self.stride;
        let mut a = self.data.clone();
        let mut inv = BinMatrix::identity(n)?.data;
        for col in 0..n {
            let bit = 1u64 << (col % 64);
            let word = col / 64;
            let pivot = (col..n)
                .find(|&r| a[r * s + word] & bit != 0)
                .ok_or(Error::SingularMap)?;
            if pivot != col {
                for w in 0..s {
                    a.swap(pivot * s + w, col * s + w);
                    inv.swap(pivot * s + w, col * s + w);
                }
            }
            for r in 0..n {
                if r != col && a[r * s + word] & bit != 0 {
                    for w in 0..s {
                        a[r * s + w] ^= a[col * s + w];
                        inv[r * s + w] ^= inv[col * s + w];
                    }
                }
            }
        }
        Ok(BinMatrix {
            n,
            stride: s,
            data: inv,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.invert().is_ok()
    }

    /// `M * v` for a coefficient vector `v` of length `n`.
    pub fn apply(&self, v: &[bool]) -> Result<Vec<bool>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|r| self.row_support(r).into_iter().filter(|&c| v[c]).count() % 2 == 1)
            .collect())
    }

    /// Apply to a field element, returning an element of the same field.
    pub fn apply_elem(&self, a: &FieldElem) -> Result<FieldElem> {
        a.modulus().from_coeffs(&self.apply(&a.coeffs())?)
    }
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            for c in 0..self.n {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix({}x{})", self.n, self.n)?;
        fmt::Display::fmt(self, f)
    }
}

/// Matrix of `a -> f(a)` for an F_2-linear `f`, built from the images of `x^j`.
pub fn matrix_of_linear_fn<F>(p: &IrreduciblePoly, f: F) -> Result<BinMatrix>
where
    F: Fn(&FieldElem) -> FieldElem,
{
    let n = p.degree();
    let x = p.generator();
    let mut basis = p.one();
    BinMatrix::from_columns(n, |_| {
        let col = f(&basis).coeffs();
        basis = &basis * &x;
        col
    })
}

/// Matrix of multiplication by the nonzero constant `c`.
pub fn matrix_of_const_mul(c: &FieldElem) -> Result<BinMatrix> {
    if c.is_zero() {
        return Err(Error::SingularMap);
    }
    matrix_of_linear_fn(c.modulus(), |a| c * a)
}

/// Matrix of the Frobenius map `a -> a^2`.
pub fn matrix_of_squaring(p: &IrreduciblePoly) -> Result<BinMatrix> {
    matrix_of_linear_fn(p, FieldElem::square)
}

/// Matrix of `a -> sqrt(a)`, computed as the inverse of the squaring matrix.
pub fn matrix_of_sqrt(p: &IrreduciblePoly) -> Result<BinMatrix> {
    matrix_of_squaring(p)?.invert()
}

/// Matrix of `a -> c * a^2`; the zero map when `c = 0`.
pub fn matrix_of_square_then_const(c: &FieldElem) -> Result<BinMatrix> {
    let p = c.modulus();
    if c.is_zero() {
        return BinMatrix::zero(p.degree());
    }
    matrix_of_const_mul(c)?.multiply(&matrix_of_squaring(p)?)
}
