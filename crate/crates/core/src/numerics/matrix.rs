use std::fmt;
use std::ops::{Index, Mul};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, SymgateError};

/// Unitarity threshold shared by every module: `max |M†M - I| < 1e-10`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Hermiticity threshold: `max |H - H†| < 1e-10`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Dense complex square matrix of dimension 2, 3 or 4.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if (2..=4).contains(&dim) {
        Ok(())
    } else {
        Err(SymgateError::InvalidDimension(dim, "2, 3 or 4"))
    }
}

impl ComplexMatrix {
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        if rows.iter().any(|r| r.len() != dim) {
            return Err(SymgateError::InvalidDimension(dim, "a square matrix"));
        }
        Self::from_nalgebra(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
    }

    pub fn from_nalgebra(inner: DMatrix<Complex64>) -> Result<Self> {
        check_dim(inner.nrows())?;
        if inner.nrows() != inner.ncols() {
            return Err(SymgateError::InvalidDimension(inner.ncols(), "a square matrix"));
        }
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SymgateError::NonFinite);
        }
        Ok(Self { inner })
    }

    /// Builds a matrix from a closure; panics on an unsupported dimension.
    pub(crate) fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        debug_assert!((2..=4).contains(&dim));
        Self {
            inner: DMatrix::from_fn(dim, dim, f),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Complex64::ONE } else { Complex64::ZERO })
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Complex64::ZERO)
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i] } else { Complex64::ZERO })
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            inner: self.inner.transpose(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            inner: self.inner.map(|z| z.conj()),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            inner: self.inner.map(|z| z * factor),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.inner.determinant()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim());
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.inner[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.inner.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// `max |M†M - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = Self {
            inner: self.inner.adjoint() * &self.inner,
        };
        prod.max_abs_diff(&Self::identity(self.dim()))
    }

    /// `max |H - H†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_residual() < UNITARY_TOL
    }

    pub fn ensure_unitary(&self) -> Result<()> {
        let residual = self.unitarity_residual();
        if residual < UNITARY_TOL {
            Ok(())
        } else {
            Err(SymgateError::NotUnitary { residual })
        }
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.inner[(i, j)]).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in matrix product");
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim(), self.dim())?;
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
