use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{FiniteAbelianGroup, IntMatrix, LinalgError, SparseIntMatrix};

/// A bounded chain complex of free abelian groups `C_0 ← C_1 ← … ← C_N`.
///
/// `boundary(n)` is the matrix of `∂_n : C_n → C_{n-1}` with `rank C_{n-1}`
/// rows and `rank C_n` columns. `∂_{n-1} ∂_n = 0` is checked on
/// construction.
#[derive(Clone, Debug)]
pub struct IntegerChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[n - 1]` is `∂_n`.
    boundaries: Vec<SparseIntMatrix>,
}

impl IntegerChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self, LinalgError> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(LinalgError::IncompatibleShapes {
                expected: (ranks.len().saturating_sub(1), 0),
                found: (boundaries.len(), 0),
            });
        }
        for (k, d) in boundaries.iter().enumerate() {
            let n = k + 1;
            if d.rows() != ranks[n - 1] || d.cols() != ranks[n] {
                return Err(LinalgError::IncompatibleShapes {
                    expected: (ranks[n - 1], ranks[n]),
                    found: (d.rows(), d.cols()),
                });
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
                return Err(LinalgError::ComplexInvalid { degree: k + 1 });
            }
        }
        Ok(Self { ranks, boundaries })
    }

    pub fn from_dense(ranks: Vec<usize>, boundaries: &[IntMatrix]) -> Result<Self, LinalgError> {
        Self::new(ranks, boundaries.iter().map(SparseIntMatrix::from_dense).collect())
    }

    /// Top degree `N` (the complex is zero above it).
    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> Option<&SparseIntMatrix> {
        n.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    /// Euler characteristic `Σ (-1)^n rank C_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// `H_n = ker ∂_n / im ∂_{n+1}` for `n = 0..=N`.
    pub fn homology(&self) -> Vec<FiniteAbelianGroup> {
        let invariants: Vec<Vec<BigInt>> =
            self.boundaries.iter().map(SparseIntMatrix::invariant_factors).collect();
        (0..self.ranks.len())
            .map(|n| {
                let rank_out = if n == 0 { 0 } else { invariants[n - 1].len() };
                let incoming: &[BigInt] = invariants.get(n).map_or(&[], Vec::as_slice);
                let free = self.ranks[n] - rank_out - incoming.len();
                let torsion = incoming.iter().filter(|d| !d.is_one()).cloned();
                FiniteAbelianGroup::from_orders(
                    core::iter::repeat_n(BigInt::from(0), free).chain(torsion),
                )
            })
            .collect()
    }

    /// Betti numbers of `C ⊗ F_p` (via the integral Smith invariants and the
    /// universal coefficient theorem).
    pub fn homology_dims_mod_p(&self, p: u64) -> Vec<usize> {
        let p = BigInt::from(p);
        let ranks_mod_p: Vec<usize> = self
            .boundaries
            .iter()
            .map(|d| {
                d.invariant_factors()
                    .iter()
                    .filter(|x| !x.is_multiple_of(&p))
                    .count()
            })
            .collect();
        (0..self.ranks.len())
            .map(|n| {
                let out = if n == 0 { 0 } else { ranks_mod_p[n - 1] };
                let inc = ranks_mod_p.get(n).copied().unwrap_or(0);
                self.ranks[n] - out - inc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn circle() {
        // ℤ ←0− ℤ
        let c = IntegerChainComplex::from_dense(vec![1, 1], &[IntMatrix::from_rows(&[[0]])]).unwrap();
        let h = c.homology();
        assert_eq!(h, vec![FiniteAbelianGroup::free(1), FiniteAbelianGroup::free(1)]);
    }

    #[test]
    fn multiplication_by_two() {
        let c = IntegerChainComplex::from_dense(vec![1, 1], &[IntMatrix::from_rows(&[[2]])]).unwrap();
        let h = c.homology();
        assert_eq!(h[0], FiniteAbelianGroup::cyclic(2));
        assert!(h[1].is_trivial());
        assert_eq!(c.homology_dims_mod_p(2), vec![1, 1]);
        assert_eq!(c.homology_dims_mod_p(3), vec![0, 0]);
    }

    #[test]
    fn two_cell_sphere_quotient() {
        // Normalized chains of Δ²/∂Δ²: the basepoint in degree 0 and the
        // 2-cell; reduced chains drop the basepoint. Unreduced: ℤ ← 0 ← ℤ.
        let c = IntegerChainComplex::from_dense(
            vec![1, 0, 1],
            &[IntMatrix::zeros(1, 0), IntMatrix::zeros(0, 1)],
        )
        .unwrap();
        let h = c.homology();
        assert_eq!(h[0], FiniteAbelianGroup::free(1));
        assert!(h[1].is_trivial());
        assert_eq!(h[2], FiniteAbelianGroup::free(1));
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = IntMatrix::from_rows(&[[1]]);
        let d2 = IntMatrix::from_rows(&[[1]]);
        let err = IntegerChainComplex::from_dense(vec![1, 1, 1], &[d1, d2]).unwrap_err();
        assert_eq!(err, LinalgError::ComplexInvalid { degree: 2 });
    }

    #[test]
    fn rejects_bad_shapes() {
        let d1 = IntMatrix::from_rows(&[[1, 1]]);
        assert!(IntegerChainComplex::from_dense(vec![1, 1], &[d1]).is_err());
    }
}
