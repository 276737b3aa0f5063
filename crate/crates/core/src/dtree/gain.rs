//! Entropy and information gain over tag count vectors.

/// Shannon entropy in bits of the distribution given by `counts`.
/// Empty input has entropy 0.
pub fn entropy(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GainError {
    EmptyParent,
    Mismatch,
}

impl std::fmt::Display for GainError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GainError::EmptyParent => write!(f, "information gain of an empty node"),
            GainError::Mismatch => write!(f, "child counts do not add up to the parent counts"),
        }
    }
}

impl std::error::Error for GainError {}

/// `H(parent) - n_yes/n * H(yes) - n_no/n * H(no)` in bits.
/// The three slices are indexed by tag; `yes + no` must equal `parent`.
pub fn info_gain(parent: &[u64], yes: &[u64], no: &[u64]) -> Result<f64, GainError> {
    if parent.len() != yes.len() || parent.len() != no.len() {
        return Err(GainError::Mismatch);
    }
    if parent
        .iter()
        .zip(yes)
        .zip(no)
        .any(|((p, y), n)| *p != y + n)
    {
        return Err(GainError::Mismatch);
    }
    let n: u64 = parent.iter().sum();
    if n == 0 {
        return Err(GainError::EmptyParent);
    }
    Ok(split_gain(parent, yes, no))
}

/// Unchecked gain; callers guarantee `yes + no == parent` and a non-empty parent.
pub(crate) fn split_gain(parent: &[u64], yes: &[u64], no: &[u64]) -> f64 {
    let n = parent.iter().sum::<u64>() as f64;
    let ny = yes.iter().sum::<u64>() as f64;
    let nn = no.iter().sum::<u64>() as f64;
    let g = entropy(parent) - ny / n * entropy(yes) - nn / n * entropy(no);
    g.max(0.0)
}
