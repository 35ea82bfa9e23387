//! The semi-tensor product calculus.
//!
//! `stp(a, b) = (a (x) I_{s/cols(a)}) (b (x) I_{s/rows(b)})` with
//! `s = lcm(cols(a), rows(b))`. It coincides with the ordinary product when
//! the inner dimensions match and with the Kronecker product when they are
//! coprime. Swap matrices and power-reducing matrices are the logical
//! companions used to reorder and contract STP factor chains.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::logical::LogicalMatrix;
use crate::matrix::{Matrix, DEFAULT_ELEMENT_CAP};
use crate::scalar::Scalar;

/// Basis vector `delta_n^i` of dimension `n`; index 0 encodes the zero vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaVector {
    dim: usize,
    index: usize,
}

impl DeltaVector {
    pub fn new(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("delta vector dimension must be positive".into()));
        }
        if index > dim {
            return Err(Error::OutOfRange(format!(
                "delta index {index} exceeds dimension {dim}"
            )));
        }
        Ok(Self { dim, index })
    }

    /// The zero vector `delta_n^0`.
    pub fn zero(dim: usize) -> Self {
        Self { dim, index: 0 }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    /// Column-vector densification (`dim x 1`).
    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.dim, 1);
        if self.index > 0 {
            m.set(self.index - 1, 0, T::one());
        }
        m
    }

    /// STP of two delta vectors: `delta_n^i (x) delta_m^j = delta_{nm}^{(i-1)m+j}`,
    /// with zero absorbing.
    pub fn stp(&self, other: &DeltaVector) -> DeltaVector {
        let dim = self.dim * other.dim;
        if self.index == 0 || other.index == 0 {
            DeltaVector::zero(dim)
        } else {
            DeltaVector {
                dim,
                index: (self.index - 1) * other.dim + other.index,
            }
        }
    }
}

/// Semi-tensor product with the default element cap.
pub fn stp<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    stp_capped(a, b, DEFAULT_ELEMENT_CAP)
}

/// Semi-tensor product `a |x b` with an explicit element-count cap on the
/// padded operands.
pub fn stp_capped<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, cap: u128) -> Result<Matrix<T>> {
    let s = a.cols().lcm(&b.rows());
    let left = if s == a.cols() {
        a.clone()
    } else {
        a.kron_capped(&Matrix::identity(s / a.cols()), cap)?
    };
    let right = if s == b.rows() {
        b.clone()
    } else {
        b.kron_capped(&Matrix::identity(s / b.rows()), cap)?
    };
    left.mul(&right)
}

/// Swap matrix `W_[n,m]`: the `nm x nm` logical permutation with
/// `W_[n,m] |x x |x y = y |x x` for all `x` of dimension `n`, `y` of
/// dimension `m`.
pub fn swap_matrix(n: usize, m: usize) -> LogicalMatrix {
    assert!(n >= 1 && m >= 1);
    let mut targets = vec![0usize; n * m];
    for i in 1..=n {
        for j in 1..=m {
            // column of delta_n^i |x delta_m^j holds delta_m^j |x delta_n^i
            targets[(i - 1) * m + (j - 1)] = (j - 1) * n + i;
        }
    }
    LogicalMatrix::new(n * m, targets).expect("targets in range by construction")
}

/// Power-reducing matrix `Phi_n = diag(delta_n^1,...,delta_n^n)`: the
/// `n^2 x n` logical matrix with `x |x x = Phi_n x` for `x` in `Delta_n`.
pub fn power_reducing_matrix(n: usize) -> LogicalMatrix {
    assert!(n >= 1);
    let targets = (1..=n).map(|i| (i - 1) * n + i).collect();
    LogicalMatrix::new(n * n, targets).expect("targets in range by construction")
}
