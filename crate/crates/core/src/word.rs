//! Switching words over the alphabet `[m]` and the bijection between a
//! length-`k` word and its vector-form index in `[m^k]`:
//! `tau = 1 + sum_t (j_t - 1) m^t`, where `j_t` is the label at time `t`.

use crate::error::{Error, Result};

/// A finite switching sequence `sigma_0 sigma_1 ... sigma_{k-1}` with labels
/// in `1..=arity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    labels: Vec<usize>,
    arity: usize,
}

impl Word {
    pub fn new(labels: Vec<usize>, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Invalid("alphabet size must be positive".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l > arity) {
            return Err(Error::OutOfRange(format!(
                "label {bad} outside alphabet [1,{arity}]"
            )));
        }
        Ok(Self { labels, arity })
    }

    pub fn empty(arity: usize) -> Self {
        Self {
            labels: Vec::new(),
            arity,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Parse from text: contiguous digits for alphabets up to 9
    /// (e.g. "231"), otherwise comma-separated labels (e.g. "2,13,1").
    pub fn parse(s: &str, arity: usize) -> Result<Self> {
        let labels: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim().parse::<usize>().map_err(|_| {
                        Error::Parse {
                            field: "word".into(),
                            message: format!("invalid label `{p}`"),
                        }
                    })
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse {
                        field: "word".into(),
                        message: format!("invalid digit `{c}`"),
                    })
                })
                .collect::<Result<_>>()?
        };
        Word::new(labels, arity)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arity <= 9 {
            for l in &self.labels {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Index `tau` in `[m^k]` of the vector form of `w`.
pub fn word_to_index(w: &Word) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::Invalid("word must be nonempty".into()));
    }
    let m = w.arity();
    let mut tau = 1usize;
    let mut weight = 1usize;
    for &j in w.labels() {
        tau += (j - 1) * weight;
        weight *= m;
    }
    Ok(tau)
}

/// The unique length-`k` word over `[m]` whose index is `tau`.
pub fn index_to_word(tau: usize, k: usize, m: usize) -> Result<Word> {
    if k == 0 || m == 0 {
        return Err(Error::Invalid("length and alphabet size must be positive".into()));
    }
    let total = m.checked_pow(k as u32).ok_or_else(|| {
        Error::OutOfRange(format!("m^k overflows for m={m}, k={k}"))
    })?;
    if tau == 0 || tau > total {
        return Err(Error::OutOfRange(format!(
            "index {tau} outside [1,{total}] for m={m}, k={k}"
        )));
    }
    let mut rem = tau - 1;
    let mut labels = Vec::with_capacity(k);
    for _ in 0..k {
        labels.push(rem % m + 1);
        rem /= m;
    }
    Word::new(labels, m)
}
