//! Column-indexed logical matrices: every column is either a standard basis
//! vector or zero. DFA structure matrices, swap matrices and power-reducing
//! matrices all live here; products compose by index and are never densified.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::stp::DeltaVector;

/// `rows x col_targets.len()` matrix whose column `j` is the basis vector
/// with a 1 in row `col_targets[j]` (1-based), or the zero column when
/// `col_targets[j] == 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalMatrix {
    rows: usize,
    col_targets: Vec<usize>,
}

impl LogicalMatrix {
    pub fn new(rows: usize, col_targets: Vec<usize>) -> Result<Self> {
        if rows == 0 || col_targets.is_empty() {
            return Err(Error::Invalid(
                "logical matrix dimensions must be positive".into(),
            ));
        }
        if let Some(&bad) = col_targets.iter().find(|&&t| t > rows) {
            return Err(Error::OutOfRange(format!(
                "column target {bad} exceeds row count {rows}"
            )));
        }
        Ok(Self { rows, col_targets })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            col_targets: (1..=n).collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            col_targets: vec![0; cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.col_targets.len()
    }

    pub fn col_targets(&self) -> &[usize] {
        &self.col_targets
    }

    /// Target row of column `j` (0-based column, 1-based target, 0 = zero column).
    #[inline]
    pub fn target(&self, j: usize) -> usize {
        self.col_targets[j]
    }

    pub fn is_zero(&self) -> bool {
        self.col_targets.iter().all(|&t| t == 0)
    }

    /// Matrix product `self * other`, computed by index composition.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cols() != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "compose: {}x{} vs {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let col_targets = other
            .col_targets
            .iter()
            .map(|&t| if t == 0 { 0 } else { self.col_targets[t - 1] })
            .collect();
        Ok(Self {
            rows: self.rows,
            col_targets,
        })
    }

    /// Action on a delta vector: `self * v`.
    pub fn apply(&self, v: &DeltaVector) -> Result<DeltaVector> {
        if v.dim() != self.cols() {
            return Err(Error::DimensionMismatch(format!(
                "apply: {} columns vs vector of dimension {}",
                self.cols(),
                v.dim()
            )));
        }
        let index = if v.index() == 0 {
            0
        } else {
            self.col_targets[v.index() - 1]
        };
        DeltaVector::new(self.rows, index)
    }

    /// True when some column `j` targets row `j+1`, i.e. the encoded partial
    /// map has a fixed point.
    pub fn has_fixed_point(&self) -> bool {
        self.is_square()
            && self
                .col_targets
                .iter()
                .enumerate()
                .any(|(j, &t)| t == j + 1)
    }

    /// True when the encoded partial map has a periodic point: some power of
    /// the matrix has a fixed point. For a square logical matrix this is
    /// exactly `spectral radius == 1` (otherwise all eigenvalues are zero).
    pub fn has_periodic_point(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut p = self.clone();
        for _ in 0..self.rows {
            if p.has_fixed_point() {
                return true;
            }
            if p.is_zero() {
                return false;
            }
            p = self.compose(&p).expect("square dimensions");
        }
        false
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols()
    }

    pub fn densify<T: Scalar>(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows, self.cols());
        for (j, &t) in self.col_targets.iter().enumerate() {
            if t > 0 {
                m.set(t - 1, j, T::one());
            }
        }
        m
    }
}

impl std::fmt::Display for LogicalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "d{}[", self.rows)?;
        for (i, t) in self.col_targets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}
