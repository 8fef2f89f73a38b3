//! Dense row-major complex matrices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fmath;

/// Double precision complex scalar.
#[allow(non_camel_case_types)]
pub type c64 = Complex<f64>;

/// Dense `rows × cols` matrix of complex scalars stored row-major.
///
/// Every constructor that accepts external data rejects NaN and infinities,
/// so downstream code may assume finite entries.
#[derive(Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<c64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<c64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::BadDimension(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::BadShape {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![c64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> c64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a real matrix from row-major `f64` entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| c64::new(x, 0.0)).collect())
    }

    /// Builds a real matrix from fixed-width rows; handy for literals.
    pub fn from_real_rows<const C: usize>(rows: &[[f64; C]]) -> Self {
        Self::from_fn(rows.len(), C, |r, c| c64::new(rows[r][c], 0.0))
    }

    /// Diagonal matrix with real diagonal entries.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| {
            if r == c {
                c64::new(diag[r], 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        })
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[c64], v: &[c64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[c64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<c64> {
        self.data
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn column(&self, c: usize) -> Vec<c64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, values: &[c64]) {
        for (r, v) in values.iter().enumerate() {
            self[(r, c)] = *v;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn trace(&self) -> c64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(c64) -> c64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        fmath::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entrywise modulus of `self − other`.
    ///
    /// Panics if the shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "max_abs_diff on mismatched shapes"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖M − M†‖_F`, the Hermiticity defect.
    pub fn hermitian_defect(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                acc += (self[(r, c)] - self[(c, r)].conj()).norm_sqr();
            }
        }
        fmath::sqrt(acc)
    }

    /// Checks `‖M − M†‖_F ≤ rel · ‖M‖_F`.
    pub fn ensure_hermitian(&self, rel: f64) -> Result<()> {
        self.ensure_square()?;
        let asymmetry = self.hermitian_defect();
        let bound = rel * self.frobenius_norm();
        if asymmetry <= bound {
            Ok(())
        } else {
            Err(Error::NotHermitian { asymmetry, bound })
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == c64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &str, f: impl Fn(c64, c64) -> c64) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }

    pub fn mul_vec(&self, v: &[c64]) -> Vec<c64> {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum())
            .collect()
    }

    /// `⟨v|M|v⟩`.
    pub fn quadratic_form(&self, v: &[c64]) -> c64 {
        let mv = self.mul_vec(v);
        v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Copies the `nrows × ncols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Self {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols, "block out of range");
        Self::from_fn(nrows, ncols, |r, c| self[(r0 + r, c0 + c)])
    }

    /// Assembles `[[a, b], [c, d]]` from four blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch(format!(
                "incompatible blocks {}x{}, {}x{}, {}x{}, {}x{}",
                a.rows, a.cols, b.rows, b.cols, c.rows, c.cols, d.rows, d.cols
            )));
        }
        let (top, left) = (a.rows, a.cols);
        Ok(Self::from_fn(top + c.rows, left + b.cols, |r, col| {
            match (r < top, col < left) {
                (true, true) => a[(r, col)],
                (true, false) => b[(r, col - left)],
                (false, true) => c[(r - top, col)],
                (false, false) => d[(r - top, col - left)],
            }
        }))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = c64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &c64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut c64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                if z.im == 0.0 {
                    write!(f, "{:>10.4} ", z.re)?;
                } else {
                    write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[c64]) -> f64 {
    fmath::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Returns `v / ‖v‖`, or `None` for the zero vector.
pub fn normalized(v: &[c64]) -> Option<Vec<c64>> {
    let n = vec_norm(v);
    (n > 0.0).then(|| v.iter().map(|z| z / n).collect())
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &[c64], b: &[c64]) -> Vec<c64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Computational basis vector `|k⟩` of dimension `dim`.
pub fn basis_vector(dim: usize, k: usize) -> Vec<c64> {
    let mut v = vec![c64::new(0.0, 0.0); dim];
    v[k] = c64::new(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_buffers() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c64::new(0.0, 0.0); 3]),
            Err(Error::BadShape { expected: 4, got: 3 })
        ));
        assert!(matches!(
            ComplexMatrix::from_real(1, 2, &[0.0, f64::NAN]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn product_and_adjoint() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                c64::new(1.0, 1.0),
                c64::new(0.0, 2.0),
                c64::new(3.0, 0.0),
                c64::new(0.0, -1.0),
            ],
        )
        .unwrap();
        let prod = &a * &ComplexMatrix::identity(2);
        assert_eq!(prod, a);
        let h = &a * &a.adjoint();
        assert!(h.hermitian_defect() < 1e-15);
        assert!(a.try_mul(&ComplexMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn blocks_reassemble() {
        let m = ComplexMatrix::from_fn(4, 4, |r, c| c64::new((r * 4 + c) as f64, r as f64));
        let back = ComplexMatrix::from_blocks(
            &m.block(0, 0, 2, 2),
            &m.block(0, 2, 2, 2),
            &m.block(2, 0, 2, 2),
            &m.block(2, 2, 2, 2),
        )
        .unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn quadratic_form_reads_diagonal() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -2.0, 3.0]);
        let v = basis_vector(3, 1);
        assert_eq!(m.quadratic_form(&v), c64::new(-2.0, 0.0));
    }
}
