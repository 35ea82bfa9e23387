//! Arbitrary and DFA-constrained switching systems in matrix form, and the
//! lift constructions: the structure-matrix lift `Phi_i = F_i (x) A_i`, the
//! per-edge lift, the adjacency (omega) lift and the T-product lift.

use crate::automaton::{f_product, structure_matrices, Dfa};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, DEFAULT_ELEMENT_CAP};
use crate::scalar::Scalar;
use crate::stp::{stp_capped, DeltaVector};
use crate::word::Word;

/// A finite matrix set `{A_1,...,A_m}` of `n x n` matrices under arbitrary
/// switching, together with the concatenation `H = [A_1,...,A_m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArbitrarySystem<T: Scalar> {
    dim: usize,
    arity: usize,
    matrices: Vec<Matrix<T>>,
    h: Matrix<T>,
}

impl<T: Scalar> ArbitrarySystem<T> {
    pub fn new(matrices: Vec<Matrix<T>>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::Invalid("matrix set must be nonempty".into()));
        }
        let dim = matrices[0].rows();
        for (i, m) in matrices.iter().enumerate() {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {} is {}x{}, expected {dim}x{dim}",
                    i + 1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let refs: Vec<&Matrix<T>> = matrices.iter().collect();
        let h = Matrix::hstack(&refs)?;
        Ok(Self {
            dim,
            arity: matrices.len(),
            matrices,
            h,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.matrices
    }

    pub fn matrix(&self, label: usize) -> &Matrix<T> {
        &self.matrices[label - 1]
    }

    /// The `n x nm` concatenation `H`.
    pub fn h(&self) -> &Matrix<T> {
        &self.h
    }

    /// One step `x -> A_label x`, evaluated through the STP form
    /// `H |x delta_m^label |x x`.
    pub fn step(&self, label: usize, x: &[T]) -> Result<Vec<T>> {
        if label == 0 || label > self.arity {
            return Err(Error::OutOfRange(format!(
                "label {label} outside [1,{}]",
                self.arity
            )));
        }
        let delta = DeltaVector::new(self.arity, label)?.to_matrix::<T>();
        let selected = stp_capped(&self.h, &delta, DEFAULT_ELEMENT_CAP)?;
        selected.mul_vec(x)
    }

    /// Reversed-order product `A_{sigma_{k-1}} ... A_{sigma_0}`.
    pub fn product(&self, w: &Word) -> Result<Matrix<T>> {
        if w.is_empty() {
            return Err(Error::Invalid("word must be nonempty".into()));
        }
        if w.arity() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "word arity {} vs system arity {}",
                w.arity(),
                self.arity
            )));
        }
        let mut acc = self.matrix(w.labels()[0]).clone();
        for &j in &w.labels()[1..] {
            acc = self.matrix(j).mul(&acc)?;
        }
        Ok(acc)
    }

    /// The `n x n m^k` matrix `H_k = H |x prod_{i=1}^{k-1} (I_{m^i} (x) H)`
    /// whose block `tau` equals the product along `index_to_word(tau, k, m)`.
    pub fn h_tilde(&self, k: usize, cap: u128) -> Result<Matrix<T>> {
        if k == 0 {
            return Err(Error::Invalid("horizon must be positive".into()));
        }
        let mut acc = self.h.clone();
        let mut m_pow = 1usize;
        for _ in 1..k {
            m_pow *= self.arity;
            let eye = Matrix::identity(m_pow);
            let factor = eye.kron_capped(&self.h, cap)?;
            acc = stp_capped(&acc, &factor, cap)?;
        }
        Ok(acc)
    }

    /// Block `tau` (1-based, Eq-style partition) of `h_tilde(k)`.
    pub fn h_tilde_block(h_tilde: &Matrix<T>, n: usize, tau: usize) -> Result<Matrix<T>> {
        h_tilde.block(0, (tau - 1) * n, n, n)
    }

    /// Scale every matrix by `c`.
    pub fn scaled(&self, c: T) -> Self {
        Self::new(self.matrices.iter().map(|m| m.scale(c)).collect())
            .expect("scaling preserves shape")
    }
}

/// A matrix set paired with the DFA constraining its switching sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedSystem<T: Scalar> {
    system: ArbitrarySystem<T>,
    dfa: Dfa,
}

impl<T: Scalar> ConstrainedSystem<T> {
    pub fn new(system: ArbitrarySystem<T>, dfa: Dfa) -> Result<Self> {
        if dfa.num_labels() != system.arity() {
            return Err(Error::DimensionMismatch(format!(
                "DFA has {} labels but the matrix set has arity {}",
                dfa.num_labels(),
                system.arity()
            )));
        }
        Ok(Self { system, dfa })
    }

    pub fn system(&self) -> &ArbitrarySystem<T> {
        &self.system
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }
}

/// The lifted arbitrary system `{Phi_1,...,Phi_m}` with
/// `Phi_i = F_i (x) A_i`, of dimension `n * l`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSystem<T: Scalar> {
    base: ConstrainedSystem<T>,
    phis: Vec<Matrix<T>>,
}

impl<T: Scalar> LiftedSystem<T> {
    pub fn base(&self) -> &ConstrainedSystem<T> {
        &self.base
    }

    pub fn phis(&self) -> &[Matrix<T>] {
        &self.phis
    }

    pub fn phi(&self, label: usize) -> &Matrix<T> {
        &self.phis[label - 1]
    }

    /// Dimension `n * l` of the lifted state.
    pub fn dim(&self) -> usize {
        self.phis[0].rows()
    }

    /// The lifted matrices as a standalone arbitrary system.
    pub fn to_arbitrary(&self) -> ArbitrarySystem<T> {
        ArbitrarySystem::new(self.phis.clone()).expect("uniform lifted blocks")
    }
}

/// The structure-matrix lift of a constrained system.
pub fn stp_lift<T: Scalar>(c: &ConstrainedSystem<T>) -> Result<LiftedSystem<T>> {
    let sm = structure_matrices(c.dfa());
    let phis = sm
        .per_label()
        .iter()
        .zip(c.system().matrices())
        .map(|(f, a)| f.densify::<T>().kron(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftedSystem {
        base: c.clone(),
        phis,
    })
}

/// The lifted state `xi = q (x) x`; the zero vector when `q` is undefined.
pub fn lifted_state<T: Scalar>(q: &DeltaVector, x: &[T]) -> Vec<T> {
    let n = x.len();
    let mut xi = vec![T::zero(); q.dim() * n];
    if q.index() > 0 {
        xi[(q.index() - 1) * n..q.index() * n].copy_from_slice(x);
    }
    xi
}

/// A T-product lift together with the dense-label -> word dictionary.
#[derive(Debug, Clone)]
pub struct TProductSystem<T: Scalar> {
    pub system: ConstrainedSystem<T>,
    /// `label_words[j-1]` is the original length-T word behind label `j`.
    pub label_words: Vec<Word>,
}

/// The T-product of a constrained system: one label per accepted length-`t`
/// word, one edge per realizing state path, matrices `A_sigma`.
pub fn t_product_lift<T: Scalar>(c: &ConstrainedSystem<T>, t: usize) -> Result<TProductSystem<T>> {
    if t == 0 {
        return Err(Error::Invalid("T must be positive".into()));
    }
    const WORD_CAP: usize = 10_000_000;
    let mut label_words = Vec::new();
    let mut matrices = Vec::new();
    let mut edges = Vec::new();
    for (idx, w) in c.dfa().enumerate_accepted(t).enumerate() {
        if idx >= WORD_CAP {
            return Err(Error::ElementCapExceeded {
                required: WORD_CAP as u128 + 1,
                cap: WORD_CAP as u128,
            });
        }
        let label = idx + 1;
        let fw = f_product(c.dfa(), &w)?;
        for state in 1..=c.dfa().num_states() {
            let target = fw.target(state - 1);
            if target != 0 {
                edges.push((state, target, label));
            }
        }
        matrices.push(c.system().product(&w)?);
        label_words.push(w);
    }
    let dfa = Dfa::from_edges(c.dfa().num_states(), label_words.len(), &edges)?;
    let system = ArbitrarySystem::new(matrices)?;
    Ok(TProductSystem {
        system: ConstrainedSystem::new(system, dfa)?,
        label_words,
    })
}

/// The adjacency lift `{B_i}` of a matrix set under a 0/1 matrix `omega`
/// (`omega[i][j] = 1` iff label `i` may follow label `j`): `B_i` is the
/// Kronecker product of the structure matrix of label `i` (the `m x m`
/// matrix whose `i`-th row is row `i` of `omega`) with `A_i`.
pub fn omega_lift<T: Scalar>(
    s: &ArbitrarySystem<T>,
    omega: &Matrix<T>,
) -> Result<ArbitrarySystem<T>> {
    let m = s.arity();
    if omega.rows() != m || omega.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "omega must be {m}x{m}, got {}x{}",
            omega.rows(),
            omega.cols()
        )));
    }
    let mut lifted = Vec::with_capacity(m);
    for i in 1..=m {
        let mut f = Matrix::<T>::zeros(m, m);
        for j in 0..m {
            let v = omega.get(i - 1, j);
            if v != T::zero() && v != T::one() {
                return Err(Error::Invalid(format!(
                    "omega entry ({i},{}) must be 0 or 1",
                    j + 1
                )));
            }
            f.set(i - 1, j, v);
        }
        lifted.push(f.kron(s.matrix(i))?);
    }
    ArbitrarySystem::new(lifted)
}

/// The per-edge lift: one `nl x nl` matrix
/// `(delta_l^to delta_l^from^T) (x) A_label` per DFA edge, in edge order.
pub fn edge_lift<T: Scalar>(c: &ConstrainedSystem<T>) -> Result<Vec<Matrix<T>>> {
    let l = c.dfa().num_states();
    let mut out = Vec::new();
    for (from, to, label) in c.dfa().edges() {
        let mut e = Matrix::<T>::zeros(l, l);
        e.set(to - 1, from - 1, T::one());
        out.push(e.kron(c.system().matrix(label))?);
    }
    Ok(out)
}
