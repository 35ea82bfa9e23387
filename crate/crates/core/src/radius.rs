//! Certified JSR/CJSR brackets.
//!
//! Fixed-horizon brute force streams reversed-order products depth-first
//! with suffix reuse (each length-j product extends a stored length-(j-1)
//! product by one multiplication), taking the running max of spectral-radius
//! rates as the lower bound and the running min of norm rates as the upper
//! bound. Constrained variants prune by the DFA's surviving state set or by
//! the composed logical structure-matrix product; the Gripenberg routine is
//! a best-first branch and bound with a delta-certified bracket.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use rayon::prelude::*;

use crate::automaton::structure_matrices;
use crate::error::{Error, Result};
use crate::logical::LogicalMatrix;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::spectra::{block_norm, matrix_norm, spectral_radius, NormKind};
use crate::systems::{stp_lift, ArbitrarySystem, ConstrainedSystem};
use crate::word::Word;

/// Effort descriptor of a bounds run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Effort<T> {
    /// Fixed-horizon brute force up to length `k`.
    Horizon(usize),
    /// Gripenberg branch and bound with accuracy `delta`.
    Delta(T),
}

/// A certified `(lower, upper)` bracket with the witnessing word and effort
/// metadata.
#[derive(Debug, Clone)]
pub struct BoundsResult<T: Scalar> {
    pub lower: T,
    pub upper: T,
    /// Word achieving the best `rho(A_sigma)^(1/|sigma|)`; ties resolved
    /// shortest first, then lexicographic.
    pub lower_witness: Word,
    pub effort: Effort<T>,
    pub products_evaluated: u64,
    pub wall_time: f64,
    /// True when the product budget ran out; the bracket is still valid but
    /// wider than a full run would give.
    pub truncated: bool,
}

impl<T: Scalar> BoundsResult<T> {
    /// Stability verdict of the bracket against radius 1.
    pub fn verdict(&self) -> &'static str {
        if self.upper < T::one() {
            "stable"
        } else if self.lower >= T::one() {
            "unstable"
        } else {
            "undetermined"
        }
    }
}

/// Tuning knobs shared by the brute-force bound computations.
#[derive(Debug, Clone)]
pub struct BoundOptions {
    /// Worker threads; the word tree is partitioned by first label and the
    /// per-branch results merged in label order, so results are identical
    /// for any thread count.
    pub threads: usize,
    /// Max products per run. The budget is split evenly over the first-label
    /// branches (in both sequential and parallel modes) so truncation points
    /// do not depend on scheduling.
    pub product_cap: u64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            product_cap: 10_000_000,
        }
    }
}

/// Pruning and valuation hooks for one bounds run.
trait Guide<T: Scalar>: Sync {
    type State: Clone + Send;

    fn start(&self) -> Self::State;
    /// `None` prunes the entire subtree under this label.
    fn extend(&self, state: &Self::State, label: usize) -> Option<Self::State>;
    fn norm_value(&self, product: &Matrix<T>, state: &Self::State) -> Result<T>;
    /// Matrix whose spectral radius is the lower-bound candidate, or `None`
    /// when the word cannot be repeated indefinitely (its spectral radius is
    /// then not a valid certificate and would in any case be zero on the
    /// lifted system).
    fn rho_matrix(&self, product: &Matrix<T>, state: &Self::State) -> Result<Option<Matrix<T>>>;
}

/// Candidate lower bound: rate with its witness, ordered by value then by
/// (length, labels) for reproducible reports.
#[derive(Debug, Clone)]
struct Candidate<T> {
    rate: T,
    word: Word,
}

impl<T: Scalar> Candidate<T> {
    fn better_than(&self, other: &Candidate<T>) -> bool {
        if self.rate != other.rate {
            return self.rate > other.rate;
        }
        (self.word.len(), self.word.labels()) < (other.word.len(), other.word.labels())
    }
}

struct Stats<T: Scalar> {
    /// max norm value per word length (index len-1); None when no word of
    /// that length survived pruning
    max_norm: Vec<Option<T>>,
    best: Option<Candidate<T>>,
    products: u64,
    truncated: bool,
}

impl<T: Scalar> Stats<T> {
    fn new(k: usize) -> Self {
        Self {
            max_norm: vec![None; k],
            best: None,
            products: 0,
            truncated: false,
        }
    }

    fn merge(&mut self, other: Stats<T>) {
        for (slot, v) in self.max_norm.iter_mut().zip(other.max_norm) {
            *slot = match (*slot, v) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            };
        }
        if let Some(c) = other.best {
            match &self.best {
                Some(cur) if !c.better_than(cur) => {}
                _ => self.best = Some(c),
            }
        }
        self.products += other.products;
        self.truncated |= other.truncated;
    }
}

struct Explorer<'a, T: Scalar, G: Guide<T>> {
    matrices: &'a [Matrix<T>],
    guide: &'a G,
    k: usize,
}

impl<'a, T: Scalar, G: Guide<T>> Explorer<'a, T, G> {
    /// Explore the subtree of words starting with `first`, with its own
    /// product budget.
    fn branch(&self, first: usize, budget: u64) -> Result<Stats<T>> {
        let mut stats = Stats::new(self.k);
        let state = match self.guide.extend(&self.guide.start(), first) {
            Some(s) => s,
            None => return Ok(stats),
        };
        let mut labels = vec![first];
        let product = self.matrices[first - 1].clone();
        let mut incumbent = T::zero();
        self.visit(&mut labels, product, state, budget, &mut stats, &mut incumbent)?;
        Ok(stats)
    }

    fn visit(
        &self,
        labels: &mut Vec<usize>,
        product: Matrix<T>,
        state: G::State,
        budget: u64,
        stats: &mut Stats<T>,
        incumbent: &mut T,
    ) -> Result<()> {
        stats.products += 1;
        let len = labels.len();
        let nrm = self.guide.norm_value(&product, &state)?;
        let inv_len = T::one() / T::from_usize(len).unwrap();
        let norm_rate = nrm.powf(inv_len);
        stats.max_norm[len - 1] = Some(match stats.max_norm[len - 1] {
            Some(cur) => cur.max(nrm),
            None => nrm,
        });
        // rho is evaluated lazily: skipped only when the norm certificate is
        // strictly below the incumbent, which cannot change the final max or
        // its witness.
        if norm_rate >= *incumbent || stats.best.is_none() {
            if let Some(rm) = self.guide.rho_matrix(&product, &state)? {
                let rho = spectral_radius(&rm)?;
                let cand = Candidate {
                    rate: rho.powf(inv_len),
                    word: Word::new(labels.clone(), self.matrices.len())?,
                };
                *incumbent = (*incumbent).max(cand.rate);
                match &stats.best {
                    Some(cur) if !cand.better_than(cur) => {}
                    _ => stats.best = Some(cand),
                }
            }
        }
        if len < self.k {
            for label in 1..=self.matrices.len() {
                if stats.products >= budget {
                    stats.truncated = true;
                    return Ok(());
                }
                if let Some(next) = self.guide.extend(&state, label) {
                    let next_product = self.matrices[label - 1].mul(&product)?;
                    labels.push(label);
                    self.visit(labels, next_product, next, budget, stats, incumbent)?;
                    labels.pop();
                }
            }
        }
        Ok(())
    }
}

fn run_bounds<T: Scalar, G: Guide<T>>(
    matrices: &[Matrix<T>],
    guide: &G,
    k: usize,
    opts: &BoundOptions,
) -> Result<BoundsResult<T>> {
    if k == 0 {
        return Err(Error::Invalid("horizon must be positive".into()));
    }
    let start = Instant::now();
    let m = matrices.len();
    let explorer = Explorer {
        matrices,
        guide,
        k,
    };
    let branch_budget = (opts.product_cap / m as u64).max(1);
    let labels: Vec<usize> = (1..=m).collect();
    let branch_stats: Vec<Result<Stats<T>>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| {
            labels
                .par_iter()
                .map(|&first| explorer.branch(first, branch_budget))
                .collect()
        })
    } else {
        labels
            .iter()
            .map(|&first| explorer.branch(first, branch_budget))
            .collect()
    };
    let mut stats = Stats::new(k);
    for s in branch_stats {
        stats.merge(s?);
    }

    let (lower, witness) = match stats.best {
        Some(c) => (c.rate, c.word),
        None => (T::zero(), Word::empty(m)),
    };
    let mut upper = T::infinity();
    for (len0, slot) in stats.max_norm.iter().enumerate() {
        if let Some(v) = slot {
            let inv = T::one() / T::from_usize(len0 + 1).unwrap();
            upper = upper.min(v.powf(inv));
        }
    }
    Ok(BoundsResult {
        lower,
        upper,
        lower_witness: witness,
        effort: Effort::Horizon(k),
        products_evaluated: stats.products,
        wall_time: start.elapsed().as_secs_f64(),
        truncated: stats.truncated,
    })
}

struct PlainGuide<'a> {
    norm: &'a NormKind,
    arity: usize,
}

impl<'a, T: Scalar> Guide<T> for PlainGuide<'a> {
    type State = ();

    fn start(&self) {}

    fn extend(&self, _: &(), label: usize) -> Option<()> {
        (label <= self.arity).then_some(())
    }

    fn norm_value(&self, product: &Matrix<T>, _: &()) -> Result<T> {
        matrix_norm(product, self.norm)
    }

    fn rho_matrix(&self, product: &Matrix<T>, _: &()) -> Result<Option<Matrix<T>>> {
        Ok(Some(product.clone()))
    }
}

/// Fixed-horizon JSR bracket of an arbitrary switching system.
pub fn jsr_bounds<T: Scalar>(
    s: &ArbitrarySystem<T>,
    k: usize,
    norm: &NormKind,
) -> Result<BoundsResult<T>> {
    jsr_bounds_with(s, k, norm, &BoundOptions::default())
}

pub fn jsr_bounds_with<T: Scalar>(
    s: &ArbitrarySystem<T>,
    k: usize,
    norm: &NormKind,
    opts: &BoundOptions,
) -> Result<BoundsResult<T>> {
    let guide = PlainGuide {
        norm,
        arity: s.arity(),
    };
    run_bounds(s.matrices(), &guide, k, opts)
}

/// Constrained exploration: the state is the composed structure-matrix
/// product `F_sigma`; a zero product prunes the subtree (the word and all
/// its extensions are rejected). The spectral radius of `A_sigma` counts
/// toward the lower bound only when `F_sigma` has a periodic point, i.e.
/// when `sigma` repeated forever stays accepted; for such words
/// `rho(F_sigma) = 1`, so this matches the lifted system's
/// `rho(Phi_sigma) = rho(F_sigma) rho(A_sigma)` word for word.
struct DfaGuide<'a> {
    structure: Vec<LogicalMatrix>,
    states: usize,
    norm: &'a NormKind,
}

impl<'a, T: Scalar> Guide<T> for DfaGuide<'a> {
    type State = LogicalMatrix;

    fn start(&self) -> LogicalMatrix {
        LogicalMatrix::identity(self.states)
    }

    fn extend(&self, state: &LogicalMatrix, label: usize) -> Option<LogicalMatrix> {
        let next = self.structure[label - 1]
            .compose(state)
            .expect("uniform structure matrix dimensions");
        (!next.is_zero()).then_some(next)
    }

    fn norm_value(&self, product: &Matrix<T>, _: &LogicalMatrix) -> Result<T> {
        matrix_norm(product, self.norm)
    }

    fn rho_matrix(&self, product: &Matrix<T>, state: &LogicalMatrix) -> Result<Option<Matrix<T>>> {
        Ok(state.has_periodic_point().then(|| product.clone()))
    }
}

/// Fixed-horizon CJSR bracket, maximizing over accepted words only.
pub fn cjsr_bounds<T: Scalar>(
    c: &ConstrainedSystem<T>,
    k: usize,
    norm: &NormKind,
) -> Result<BoundsResult<T>> {
    cjsr_bounds_with(c, k, norm, &BoundOptions::default())
}

pub fn cjsr_bounds_with<T: Scalar>(
    c: &ConstrainedSystem<T>,
    k: usize,
    norm: &NormKind,
    opts: &BoundOptions,
) -> Result<BoundsResult<T>> {
    let sm = structure_matrices(c.dfa());
    let guide = DfaGuide {
        structure: sm.per_label().to_vec(),
        states: c.dfa().num_states(),
        norm,
    };
    run_bounds(c.system().matrices(), &guide, k, opts)
}

struct LiftGuide<'a> {
    structure: Vec<LogicalMatrix>,
    base: &'a NormKind,
    states: usize,
}

impl<'a, T: Scalar> Guide<T> for LiftGuide<'a> {
    type State = LogicalMatrix;

    fn start(&self) -> LogicalMatrix {
        LogicalMatrix::identity(self.states)
    }

    fn extend(&self, state: &LogicalMatrix, label: usize) -> Option<LogicalMatrix> {
        let next = self.structure[label - 1]
            .compose(state)
            .expect("uniform structure matrix dimensions");
        (!next.is_zero()).then_some(next)
    }

    fn norm_value(&self, product: &Matrix<T>, _: &LogicalMatrix) -> Result<T> {
        block_norm(product, self.states, self.base)
    }

    fn rho_matrix(&self, product: &Matrix<T>, state: &LogicalMatrix) -> Result<Option<Matrix<T>>> {
        // when F_sigma has no periodic point, Phi_sigma is nilpotent and its
        // spectral radius is exactly zero; skip the eigensolver entirely
        Ok(state.has_periodic_point().then(|| product.clone()))
    }
}

/// CJSR bracket computed on the lifted system with the block norm; per-k
/// values coincide with `cjsr_bounds`.
pub fn cjsr_bounds_via_lift<T: Scalar>(
    c: &ConstrainedSystem<T>,
    k: usize,
    base: &NormKind,
) -> Result<BoundsResult<T>> {
    cjsr_bounds_via_lift_with(c, k, base, &BoundOptions::default())
}

pub fn cjsr_bounds_via_lift_with<T: Scalar>(
    c: &ConstrainedSystem<T>,
    k: usize,
    base: &NormKind,
    opts: &BoundOptions,
) -> Result<BoundsResult<T>> {
    let lift = stp_lift(c)?;
    let sm = structure_matrices(c.dfa());
    let guide = LiftGuide {
        structure: sm.per_label().to_vec(),
        base,
        states: c.dfa().num_states(),
    };
    run_bounds(lift.phis(), &guide, k, opts)
}

struct OmegaGuide<'a, T: Scalar> {
    omega: &'a Matrix<T>,
    norm: &'a NormKind,
}

impl<'a, T: Scalar> Guide<T> for OmegaGuide<'a, T> {
    /// `(first, last)` labels of the word, if any.
    type State = Option<(usize, usize)>;

    fn start(&self) -> Option<(usize, usize)> {
        None
    }

    fn extend(
        &self,
        state: &Option<(usize, usize)>,
        label: usize,
    ) -> Option<Option<(usize, usize)>> {
        match state {
            None => Some(Some((label, label))),
            Some((first, prev)) => (self.omega.get(label - 1, prev - 1) == T::one())
                .then_some(Some((*first, label))),
        }
    }

    fn norm_value(&self, product: &Matrix<T>, _: &Option<(usize, usize)>) -> Result<T> {
        matrix_norm(product, self.norm)
    }

    fn rho_matrix(
        &self,
        product: &Matrix<T>,
        state: &Option<(usize, usize)>,
    ) -> Result<Option<Matrix<T>>> {
        // the word is repeatable iff the wrap-around pair (last -> first) is
        // admissible; only then is its spectral radius a valid certificate
        let (first, last) = state.expect("rho is only queried on nonempty words");
        Ok((self.omega.get(first - 1, last - 1) == T::one()).then(|| product.clone()))
    }
}

/// Fixed-horizon bracket of the Markovian JSR: products whose consecutive
/// label pairs are admissible under the 0/1 matrix `omega`.
pub fn markovian_bounds<T: Scalar>(
    s: &ArbitrarySystem<T>,
    omega: &Matrix<T>,
    k: usize,
    norm: &NormKind,
) -> Result<BoundsResult<T>> {
    markovian_bounds_with(s, omega, k, norm, &BoundOptions::default())
}

pub fn markovian_bounds_with<T: Scalar>(
    s: &ArbitrarySystem<T>,
    omega: &Matrix<T>,
    k: usize,
    norm: &NormKind,
    opts: &BoundOptions,
) -> Result<BoundsResult<T>> {
    let m = s.arity();
    if omega.rows() != m || omega.cols() != m {
        return Err(Error::DimensionMismatch(format!("omega must be {m}x{m}")));
    }
    for i in 0..m {
        for j in 0..m {
            let v = omega.get(i, j);
            if v != T::zero() && v != T::one() {
                return Err(Error::Invalid(format!(
                    "omega entry ({},{}) must be 0 or 1",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    for i in 0..m {
        let row_dead = (0..m).all(|j| omega.get(i, j) == T::zero());
        let col_dead = (0..m).all(|j| omega.get(j, i) == T::zero());
        if row_dead || col_dead {
            return Err(Error::NotAlive { state: i + 1 });
        }
    }
    let guide = OmegaGuide { omega, norm };
    run_bounds(s.matrices(), &guide, k, opts)
}

/// Pending branch of the Gripenberg search: the word, its product, and the
/// certificate `p = min over prefixes of norm-rate`.
struct PendingEntry<T: Scalar> {
    p: T,
    word: Vec<usize>,
    product: Matrix<T>,
}

impl<T: Scalar> PartialEq for PendingEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.word == other.word
    }
}
impl<T: Scalar> Eq for PendingEntry<T> {}

impl<T: Scalar> Ord for PendingEntry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap: larger certificate first, lexicographically smaller word
        // breaking ties
        self.p
            .partial_cmp(&other.p)
            .expect("certificates are finite")
            .then_with(|| other.word.cmp(&self.word))
    }
}
impl<T: Scalar> PartialOrd for PendingEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Gripenberg branch and bound: on natural termination the bracket has
/// width at most `delta`; on budget exhaustion the bracket is still valid
/// and flagged as truncated. Deterministic for fixed inputs regardless of
/// thread count (the search is a single ordered queue).
pub fn gripenberg<T: Scalar>(
    s: &ArbitrarySystem<T>,
    delta: T,
    norm: &NormKind,
    max_products: u64,
) -> Result<BoundsResult<T>> {
    if delta <= T::zero() {
        return Err(Error::Invalid("delta must be positive".into()));
    }
    let start = Instant::now();
    let m = s.arity();
    let mut products = 0u64;
    let mut best: Option<Candidate<T>> = None;
    let mut incumbent = T::zero();
    let mut queue: BinaryHeap<PendingEntry<T>> = BinaryHeap::new();
    let mut truncated = false;

    let consider = |labels: &[usize],
                        product: &Matrix<T>,
                        parent_p: T,
                        best: &mut Option<Candidate<T>>,
                        incumbent: &mut T|
     -> Result<T> {
        let len = labels.len();
        let inv_len = T::one() / T::from_usize(len).unwrap();
        let nrm = matrix_norm(product, norm)?;
        let norm_rate = nrm.powf(inv_len);
        let p = parent_p.min(norm_rate);
        if norm_rate >= *incumbent || best.is_none() {
            let rho = spectral_radius(product)?;
            let cand = Candidate {
                rate: rho.powf(inv_len),
                word: Word::new(labels.to_vec(), m)?,
            };
            *incumbent = (*incumbent).max(cand.rate);
            match best {
                Some(cur) if !cand.better_than(cur) => {}
                _ => *best = Some(cand),
            }
        }
        Ok(p)
    };

    for label in 1..=m {
        let product = s.matrix(label).clone();
        products += 1;
        let p = consider(&[label], &product, T::infinity(), &mut best, &mut incumbent)?;
        queue.push(PendingEntry {
            p,
            word: vec![label],
            product,
        });
    }

    loop {
        let lower = incumbent;
        let entry = match queue.pop() {
            Some(e) => e,
            None => break,
        };
        if entry.p <= lower + delta {
            // every pending certificate is no larger; the bracket is closed
            queue.clear();
            break;
        }
        if products + m as u64 > max_products {
            truncated = true;
            queue.push(entry);
            break;
        }
        for label in 1..=m {
            let product = s.matrix(label).mul(&entry.product)?;
            products += 1;
            let mut word = entry.word.clone();
            word.push(label);
            let p = consider(&word, &product, entry.p, &mut best, &mut incumbent)?;
            if p > incumbent + delta {
                queue.push(PendingEntry { p, word, product });
            }
        }
    }

    let (lower, witness) = match best {
        Some(c) => (c.rate, c.word),
        None => (T::zero(), Word::empty(m)),
    };
    let mut upper = lower + delta;
    if truncated {
        for e in queue.iter() {
            upper = upper.max(e.p);
        }
    }
    Ok(BoundsResult {
        lower,
        upper,
        lower_witness: witness,
        effort: Effort::Delta(delta),
        products_evaluated: products,
        wall_time: start.elapsed().as_secs_f64(),
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Dfa;

    fn m2(rows: &[Vec<f64>]) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    fn example_set() -> ArbitrarySystem<f64> {
        ArbitrarySystem::new(vec![
            m2(&[vec![0.94, 0.56], vec![-0.35, 0.73]]),
            m2(&[vec![0.94, 0.56], vec![0.14, 0.73]]),
            m2(&[vec![0.94, 0.56], vec![-0.35, 0.46]]),
            m2(&[vec![0.94, 0.56], vec![0.14, 0.46]]),
        ])
        .unwrap()
    }

    #[test]
    fn singleton_k1_is_radius_and_norm() {
        let a = m2(&[vec![0.5, 1.0], vec![0.0, 0.5]]);
        let s = ArbitrarySystem::new(vec![a.clone()]).unwrap();
        let b = jsr_bounds(&s, 1, &NormKind::Two).unwrap();
        assert!((b.lower - spectral_radius(&a).unwrap()).abs() < 1e-12);
        assert!((b.upper - matrix_norm(&a, &NormKind::Two).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn commuting_diagonal_set_is_tight() {
        let s = ArbitrarySystem::new(vec![
            Matrix::<f64>::identity(2),
            Matrix::<f64>::identity(2).scale(2.0),
        ])
        .unwrap();
        for k in 1..=4 {
            let b = jsr_bounds(&s, k, &NormKind::Two).unwrap();
            assert!((b.lower - 2.0).abs() < 1e-9);
            assert!((b.upper - 2.0).abs() < 1e-9);
            assert_eq!(b.lower_witness.labels(), &[2]);
        }
    }

    #[test]
    fn example_bracket_at_k7() {
        let b = jsr_bounds(&example_set(), 7, &NormKind::Two).unwrap();
        assert!(b.lower >= 1.1330 && b.lower <= 1.1350, "lower = {}", b.lower);
        assert!(b.upper >= 1.1570 && b.upper <= 1.1770, "upper = {}", b.upper);
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let opts1 = BoundOptions {
            threads: 1,
            ..Default::default()
        };
        let opts4 = BoundOptions {
            threads: 4,
            ..Default::default()
        };
        let a = jsr_bounds_with(&example_set(), 5, &NormKind::Two, &opts1).unwrap();
        let b = jsr_bounds_with(&example_set(), 5, &NormKind::Two, &opts4).unwrap();
        assert_eq!(a.lower, b.lower);
        assert_eq!(a.upper, b.upper);
        assert_eq!(a.lower_witness, b.lower_witness);
        assert_eq!(a.products_evaluated, b.products_evaluated);
    }

    #[test]
    fn complete_dfa_matches_unconstrained() {
        let s = example_set();
        let dfa = Dfa::complete_single_state(4);
        let c = ConstrainedSystem::new(s.clone(), dfa).unwrap();
        for k in 1..=4 {
            let a = jsr_bounds(&s, k, &NormKind::Two).unwrap();
            let b = cjsr_bounds(&c, k, &NormKind::Two).unwrap();
            assert!((a.lower - b.lower).abs() < 1e-12);
            assert!((a.upper - b.upper).abs() < 1e-12);
        }
    }

    #[test]
    fn singleton_gripenberg_closes_immediately() {
        let a = m2(&[vec![0.5, 1.0], vec![0.0, 0.5]]);
        let s = ArbitrarySystem::new(vec![a.clone()]).unwrap();
        let b = gripenberg(&s, 0.01, &NormKind::Two, 100_000).unwrap();
        let rho = spectral_radius(&a).unwrap();
        assert!(!b.truncated);
        assert!(b.lower >= rho - 1e-9);
        assert!(b.upper <= rho + 0.01 + 1e-9);
    }

    #[test]
    fn gripenberg_on_example_set() {
        let b = gripenberg(&example_set(), 0.02, &NormKind::Two, 2_000_000).unwrap();
        assert!(b.lower >= 1.1340 - 1e-3, "lower = {}", b.lower);
        assert!(b.upper <= 1.1667 + 0.02 + 1e-9, "upper = {}", b.upper);
        assert!(b.lower <= b.upper + 1e-12);
    }

    #[test]
    fn markovian_identity_omega_gives_constant_words() {
        let s = example_set();
        let omega = Matrix::<f64>::identity(4);
        for k in 1..=4 {
            let b = markovian_bounds(&s, &omega, k, &NormKind::Two).unwrap();
            assert!((b.lower - 1.1340).abs() < 1e-3, "lower = {}", b.lower);
        }
    }

    #[test]
    fn scaling_equivariance() {
        let s = example_set();
        let c = 0.37;
        let scaled = s.scaled(c);
        let a = jsr_bounds(&s, 4, &NormKind::Two).unwrap();
        let b = jsr_bounds(&scaled, 4, &NormKind::Two).unwrap();
        assert!((b.lower - c * a.lower).abs() < 1e-9);
        assert!((b.upper - c * a.upper).abs() < 1e-9);
    }

    fn example_dfa() -> Dfa {
        Dfa::from_edges(
            4,
            4,
            &[
                (1, 3, 1),
                (2, 3, 1),
                (3, 3, 1),
                (4, 3, 1),
                (2, 1, 2),
                (3, 1, 2),
                (1, 2, 3),
                (3, 2, 3),
                (3, 4, 4),
            ],
        )
        .unwrap()
    }

    #[test]
    fn cjsr_and_via_lift_agree_per_k() {
        let c = ConstrainedSystem::new(example_set(), example_dfa()).unwrap();
        for k in 1..=5 {
            let a = cjsr_bounds(&c, k, &NormKind::Two).unwrap();
            let b = cjsr_bounds_via_lift(&c, k, &NormKind::Two).unwrap();
            assert!((a.lower - b.lower).abs() < 1e-9, "k={k}: {} vs {}", a.lower, b.lower);
            assert!((a.upper - b.upper).abs() < 1e-9, "k={k}: {} vs {}", a.upper, b.upper);
        }
    }

    #[test]
    fn non_repeatable_word_gives_no_lower_certificate() {
        // two states, 1 -> 2 under label 1, 2 -> 1 under label 2: the words
        // "1" and "2" are accepted but cannot repeat, so only length-2
        // alternations certify a lower bound
        let dfa = Dfa::from_edges(2, 2, &[(1, 2, 1), (2, 1, 2)]).unwrap();
        let big = m2(&[vec![2.0, 0.0], vec![0.0, 2.0]]);
        let small = m2(&[vec![0.1, 0.0], vec![0.0, 0.1]]);
        let c = ConstrainedSystem::new(
            ArbitrarySystem::new(vec![big, small]).unwrap(),
            dfa,
        )
        .unwrap();
        let b1 = cjsr_bounds(&c, 1, &NormKind::Two).unwrap();
        assert_eq!(b1.lower, 0.0);
        assert!(b1.lower_witness.is_empty());
        let b2 = cjsr_bounds(&c, 2, &NormKind::Two).unwrap();
        let expected = (2.0f64 * 0.1).sqrt();
        assert!((b2.lower - expected).abs() < 1e-9, "lower = {}", b2.lower);
        let v = cjsr_bounds_via_lift(&c, 2, &NormKind::Two).unwrap();
        assert!((v.lower - expected).abs() < 1e-9);
    }

    #[test]
    fn markovian_lower_requires_admissible_wraparound() {
        // label 2 may follow 1 and label 1 may follow 2; nothing repeats a
        // single label, so the lower certificate comes from alternations
        let big = m2(&[vec![2.0, 0.0], vec![0.0, 2.0]]);
        let small = m2(&[vec![0.1, 0.0], vec![0.0, 0.1]]);
        let s = ArbitrarySystem::new(vec![big, small]).unwrap();
        let omega = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let b = markovian_bounds(&s, &omega, 3, &NormKind::Two).unwrap();
        let expected = (2.0f64 * 0.1).sqrt();
        assert!((b.lower - expected).abs() < 1e-9, "lower = {}", b.lower);
    }

    #[test]
    fn witness_reproduces_lower() {
        let s = example_set();
        let b = jsr_bounds(&s, 6, &NormKind::Two).unwrap();
        let p = s.product(&b.lower_witness).unwrap();
        let rho = spectral_radius(&p).unwrap();
        let rate = rho.powf(1.0 / b.lower_witness.len() as f64);
        assert!((rate - b.lower).abs() < 1e-9);
    }
}
