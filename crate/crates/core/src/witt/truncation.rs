use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::WittError;

/// A finite set of positive integers closed under taking divisors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncationSet {
    elems: Vec<u64>,
}

impl TruncationSet {
    /// Validates divisor-closure; duplicates are removed.
    pub fn new<I: IntoIterator<Item = u64>>(elems: I) -> Result<Self, WittError> {
        let mut elems: Vec<u64> = elems.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        if elems.first() == Some(&0) {
            return Err(WittError::ZeroIndex);
        }
        for &n in &elems {
            for d in divisors(n) {
                if elems.binary_search(&d).is_err() {
                    return Err(WittError::NotDivisorClosed { element: n, divisor: d });
                }
            }
        }
        Ok(Self { elems })
    }

    /// `{1, …, r}`.
    pub fn big(r: u64) -> Self {
        Self {
            elems: (1..=r).collect(),
        }
    }

    /// `{1, p, …, p^{n-1}}`.
    pub fn p_typical(p: u64, n: u32) -> Self {
        Self {
            elems: (0..n).map(|k| p.pow(k)).collect(),
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.index_of(n).is_some()
    }

    /// Position of `n` in increasing order.
    pub fn index_of(&self, n: u64) -> Option<usize> {
        self.elems.binary_search(&n).ok()
    }

    /// `S/n = {d : nd ∈ S}`, again divisor-closed.
    pub fn quotient(&self, n: u64) -> Self {
        assert!(n > 0, "quotient by zero");
        Self {
            elems: self
                .elems
                .iter()
                .filter(|&&e| e % n == 0)
                .map(|&e| e / n)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.elems.iter().all(|&e| other.contains(e))
    }

    /// Compact label such as `1_2_3`, used in cache file names.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.elems.iter().map(|e| alloc::format!("{e}")).collect();
        parts.join("_")
    }
}

impl fmt::Display for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elems.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Divisors of `n` in increasing order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
