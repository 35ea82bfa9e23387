//! Deterministic finite automata with partial transition functions, their
//! transition structure matrices, acceptance by matrix product, and pruned
//! enumeration of accepted words.
//!
//! States and labels are 1-based; 0 is reserved for "undefined". A word is
//! accepted when some state sequence realizes it, equivalently when the
//! composed structure-matrix product is nonzero. Both routes are implemented
//! and cross-checked in tests.

use crate::error::{Error, Result};
use crate::logical::LogicalMatrix;
use crate::matrix::Matrix;
use crate::word::Word;

/// DFA with `num_states` states, `num_labels` input labels and a partial
/// transition function. Construction enforces aliveness: every state has at
/// least one defined outgoing transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    num_states: usize,
    num_labels: usize,
    /// transitions[(s-1)*m + (j-1)] = target state, 0 if undefined
    transitions: Vec<usize>,
}

impl Dfa {
    /// Build from an edge list `(from, to, label)`, all 1-based.
    pub fn from_edges(
        num_states: usize,
        num_labels: usize,
        edges: &[(usize, usize, usize)],
    ) -> Result<Self> {
        if num_states == 0 || num_labels == 0 {
            return Err(Error::Invalid(
                "state and label counts must be positive".into(),
            ));
        }
        let mut transitions = vec![0usize; num_states * num_labels];
        for &(from, to, label) in edges {
            if from == 0 || from > num_states {
                return Err(Error::OutOfRange(format!(
                    "edge source state {from} outside [1,{num_states}]"
                )));
            }
            if to == 0 || to > num_states {
                return Err(Error::OutOfRange(format!(
                    "edge target state {to} outside [1,{num_states}]"
                )));
            }
            if label == 0 || label > num_labels {
                return Err(Error::OutOfRange(format!(
                    "edge label {label} outside [1,{num_labels}]"
                )));
            }
            let slot = &mut transitions[(from - 1) * num_labels + (label - 1)];
            if *slot != 0 {
                return Err(Error::NondeterministicEdge {
                    state: from,
                    label,
                });
            }
            *slot = to;
        }
        let dfa = Self {
            num_states,
            num_labels,
            transitions,
        };
        dfa.check_alive()?;
        Ok(dfa)
    }

    /// Complete DFA on a single state, accepting every word.
    pub fn complete_single_state(num_labels: usize) -> Self {
        Self {
            num_states: 1,
            num_labels,
            transitions: vec![1; num_labels],
        }
    }

    fn check_alive(&self) -> Result<()> {
        for s in 1..=self.num_states {
            let defined = (1..=self.num_labels).any(|j| self.transition(s, j).is_some());
            if !defined {
                return Err(Error::NotAlive { state: s });
            }
        }
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    /// `f(state, label)`, if defined.
    pub fn transition(&self, state: usize, label: usize) -> Option<usize> {
        let t = self.transitions[(state - 1) * self.num_labels + (label - 1)];
        (t != 0).then_some(t)
    }

    /// Edge list `(from, to, label)` in (state, label) order.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for s in 1..=self.num_states {
            for j in 1..=self.num_labels {
                if let Some(t) = self.transition(s, j) {
                    out.push((s, t, j));
                }
            }
        }
        out
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.arity() != self.num_labels {
            return Err(Error::DimensionMismatch(format!(
                "word arity {} vs {} labels",
                w.arity(),
                self.num_labels
            )));
        }
        Ok(())
    }

    /// Acceptance by direct graph walk over the surviving state set.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.check_word(w)?;
        let mut alive: u128 = (1u128 << self.num_states) - 1;
        for &label in w.labels() {
            alive = self.step_set(alive, label);
            if alive == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One transition applied to a bitset of states.
    fn step_set(&self, set: u128, label: usize) -> u128 {
        let mut next = 0u128;
        for s in 1..=self.num_states {
            if set & (1u128 << (s - 1)) != 0 {
                if let Some(t) = self.transition(s, label) {
                    next |= 1u128 << (t - 1);
                }
            }
        }
        next
    }

    /// Stream of accepted words of length `k` in lexicographic order,
    /// produced by depth-first extension with dead-set pruning.
    pub fn enumerate_accepted(&self, k: usize) -> AcceptedWords<'_> {
        assert!(k >= 1, "word length must be positive");
        assert!(
            self.num_states <= 128,
            "state bitset limited to 128 states"
        );
        AcceptedWords {
            dfa: self,
            k,
            prefix: Vec::new(),
            sets: vec![(1u128 << self.num_states) - 1],
            started: false,
        }
    }
}

/// Per-label structure matrices `F_1..F_m` and their stacked concatenation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMatrices {
    per_label: Vec<LogicalMatrix>,
}

impl StructureMatrices {
    pub fn per_label(&self) -> &[LogicalMatrix] {
        &self.per_label
    }

    pub fn label(&self, j: usize) -> &LogicalMatrix {
        &self.per_label[j - 1]
    }

    /// The `l x ml` concatenation `[F_1,...,F_m]` as a dense matrix.
    pub fn stacked<T: crate::scalar::Scalar>(&self) -> Matrix<T> {
        let dense: Vec<Matrix<T>> = self.per_label.iter().map(|f| f.densify()).collect();
        let refs: Vec<&Matrix<T>> = dense.iter().collect();
        Matrix::hstack(&refs).expect("uniform block sizes")
    }
}

/// The structure matrices of a DFA: `F_j[s,t] = 1` iff `f(q_t, j) = q_s`,
/// undefined transitions yielding zero columns.
pub fn structure_matrices(d: &Dfa) -> StructureMatrices {
    let l = d.num_states();
    let per_label = (1..=d.num_labels())
        .map(|j| {
            let targets = (1..=l)
                .map(|t| d.transition(t, j).unwrap_or(0))
                .collect();
            LogicalMatrix::new(l, targets).expect("targets in range")
        })
        .collect();
    StructureMatrices { per_label }
}

/// Composed structure-matrix product `F_{sigma_{k-1}} ... F_{sigma_0}`
/// (earliest label applied first).
pub fn f_product(d: &Dfa, w: &Word) -> Result<LogicalMatrix> {
    d.check_word(w)?;
    if w.is_empty() {
        return Err(Error::Invalid("word must be nonempty".into()));
    }
    let sm = structure_matrices(d);
    let mut acc = sm.label(w.labels()[0]).clone();
    for &j in &w.labels()[1..] {
        acc = sm.label(j).compose(&acc)?;
    }
    Ok(acc)
}

/// Lazy lexicographic stream of the accepted words of a fixed length.
pub struct AcceptedWords<'a> {
    dfa: &'a Dfa,
    k: usize,
    prefix: Vec<usize>,
    /// surviving state sets per prefix depth; sets[0] is the full set
    sets: Vec<u128>,
    started: bool,
}

impl<'a> AcceptedWords<'a> {
    /// Advance the current prefix to the next candidate in lexicographic
    /// order, backtracking as needed. Returns false when exhausted.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            // descend to the first accepted word
            return self.descend(1);
        }
        loop {
            match self.prefix.pop() {
                None => return false,
                Some(last) => {
                    self.sets.pop();
                    if last < self.dfa.num_labels() && self.descend(last + 1) {
                        return true;
                    }
                }
            }
        }
    }

    /// Try labels `from..=m` at the current depth, then extend greedily with
    /// the smallest surviving labels to full length.
    fn descend(&mut self, from: usize) -> bool {
        let mut from = from;
        loop {
            let cur = *self.sets.last().unwrap();
            let mut placed = false;
            for j in from..=self.dfa.num_labels() {
                let next = self.dfa.step_set(cur, j);
                if next != 0 {
                    self.prefix.push(j);
                    self.sets.push(next);
                    placed = true;
                    break;
                }
            }
            if !placed {
                // backtrack one level
                match self.prefix.pop() {
                    None => return false,
                    Some(last) => {
                        self.sets.pop();
                        from = last + 1;
                        continue;
                    }
                }
            }
            if self.prefix.len() == self.k {
                return true;
            }
            from = 1;
        }
    }
}

impl<'a> Iterator for AcceptedWords<'a> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.advance() {
            Some(Word::new(self.prefix.clone(), self.dfa.num_labels()).expect("labels in range"))
        } else {
            None
        }
    }
}

/// Build the DFA of an adjacency constraint: states are the labels, and
/// `f(q_j, i) = q_i` iff `omega[i][j] = 1` (label `i` may follow label `j`).
pub fn omega_to_dfa<T: crate::scalar::Scalar>(omega: &Matrix<T>, m: usize) -> Result<Dfa> {
    if omega.rows() != m || omega.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "omega must be {m}x{m}, got {}x{}",
            omega.rows(),
            omega.cols()
        )));
    }
    let mut edges = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            let v = omega.get(i - 1, j - 1);
            if v == T::one() {
                edges.push((j, i, i));
            } else if v != T::zero() {
                return Err(Error::Invalid(format!(
                    "omega entry ({i},{j}) must be 0 or 1"
                )));
            }
        }
    }
    Dfa::from_edges(m, m, &edges)
}
