use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::smith::smith_diagonal;
use super::IntMatrix;

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with
/// `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `ℤ/n`; `n = 0` gives `ℤ`, `n = 1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_orders(core::iter::once(n.into()))
    }

    /// Normalizes a direct sum of cyclic groups `⊕ ℤ/nᵢ` (zero meaning `ℤ`)
    /// into invariant-factor form.
    pub fn from_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().map(|n| n.abs()).collect();
        let free_rank = orders.iter().filter(|n| n.is_zero()).count();
        let torsion: Vec<BigInt> = orders.into_iter().filter(|n| !n.is_zero()).collect();
        let k = torsion.len();
        let diag = smith_diagonal(&IntMatrix::diagonal(k, k, torsion));
        Self {
            free_rank,
            invariant_factors: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
        }
    }

    /// Builds the group from the diagonal of a Smith form of a presentation
    /// matrix with `generators` rows: zeros and missing entries become free
    /// summands, units vanish.
    pub(crate) fn from_presentation_diagonal(generators: usize, diagonal: &[BigInt]) -> Self {
        let nonzero: Vec<&BigInt> = diagonal.iter().filter(|d| !d.is_zero()).collect();
        Self {
            free_rank: generators - nonzero.len(),
            invariant_factors: nonzero.into_iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    /// Reconstructs a finite abelian `p`-group from the orders of its
    /// `p^k`-torsion subgroups `|G[p^k]|` for `k = 0, 1, …` (the sequence
    /// must stabilize at `|G|`). Returns `None` if the counts are not those
    /// of a `p`-group.
    pub fn from_p_torsion_counts(p: u64, counts: &[BigInt]) -> Option<Self> {
        let p = BigInt::from(p);
        // number of cyclic factors of order ≥ p^k is log_p(|G[p^k]| / |G[p^{k-1}]|)
        let mut at_least: Vec<u32> = Vec::new();
        for w in counts.windows(2) {
            if w[0].is_zero() || !(&w[1] % &w[0]).is_zero() {
                return None;
            }
            let mut q = &w[1] / &w[0];
            let mut e = 0u32;
            while q > BigInt::one() {
                if !(&q % &p).is_zero() {
                    return None;
                }
                q /= &p;
                e += 1;
            }
            at_least.push(e);
        }
        let mut orders = Vec::new();
        for (k, &n) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            if next > n {
                return None;
            }
            for _ in 0..(n - next) {
                orders.push(num_traits::pow(p.clone(), k + 1));
            }
        }
        Some(Self::from_orders(orders))
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Number of cyclic summands in invariant-factor form.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// For a finite `p`-group: the exponents `e` with summands `ℤ/p^e`,
    /// largest first. `None` if not a `p`-group.
    pub fn p_group_exponents(&self, p: u64) -> Option<Vec<u32>> {
        if !self.is_finite() {
            return None;
        }
        let p = BigInt::from(p);
        let mut out = Vec::new();
        for d in self.invariant_factors.iter().rev() {
            let mut q = d.clone();
            let mut e = 0;
            while (&q % &p).is_zero() {
                q /= &p;
                e += 1;
            }
            if !q.is_one() {
                return None;
            }
            out.push(e);
        }
        Some(out)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !core::mem::take(&mut first) {
                write!(f, " × ")
            } else {
                Ok(())
            }
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                write!(f, "ℤ")?;
            }
            r => {
                sep(f)?;
                write!(f, "ℤ^{r}")?;
            }
        }
        for d in self.invariant_factors.iter().rev() {
            sep(f)?;
            write!(f, "ℤ/{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalization() {
        let g = FiniteAbelianGroup::from_orders(ints(&[4, 2, 1, 0, 6]));
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.invariant_factors(), &ints(&[2, 2, 12])[..]);
        assert_eq!(g.to_string(), "ℤ × ℤ/12 × ℤ/2 × ℤ/2");
        assert_eq!(FiniteAbelianGroup::cyclic(1).to_string(), "0");
        assert_eq!(FiniteAbelianGroup::cyclic(0), FiniteAbelianGroup::free(1));
    }

    #[test]
    fn torsion_counts_round_trip() {
        // ℤ/4 × ℤ/2: |G[2]| = 4, |G[4]| = 8
        let g = FiniteAbelianGroup::from_p_torsion_counts(2, &ints(&[1, 4, 8, 8])).unwrap();
        assert_eq!(g, FiniteAbelianGroup::from_orders(ints(&[4, 2])));
        assert_eq!(g.p_group_exponents(2), Some(vec![2, 1]));
        assert_eq!(g.order(), Some(BigInt::from(8)));
        assert!(FiniteAbelianGroup::from_p_torsion_counts(2, &ints(&[1, 3])).is_none());
    }
}
