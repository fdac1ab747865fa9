//! Finite pointed simplicial sets and their normalized chains.
//!
//! Simplices are handled in Eilenberg–Zilber normal form: every simplex is
//! a unique iterated degeneracy of a nondegenerate one. The basepoint (in
//! every degree) is not represented as a value; structure maps that land on
//! it return `None`.

mod chains;
mod finite;
mod power;

pub use chains::{reduced_chain_complex, reduced_homology, ChainBasis};
pub use finite::{monotone_surjections, sphere_model, smash, FinitePointedSimplicialSet, Simplex};
pub use power::{PowerSimplex, SmashPower};

use alloc::vec::Vec;
use core::fmt::Debug;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("more than {limit} nondegenerate simplices in degree {degree}")]
    BudgetExceeded { degree: usize, limit: usize },
    #[error("generator faces malformed: {0}")]
    MalformedGenerator(&'static str),
    #[error("simplicial identity {identity} fails in degree {degree}")]
    IdentityFailed { degree: usize, identity: &'static str },
}

/// A pointed simplicial set with finitely many nondegenerate simplices.
pub trait PointedSimplicialSet {
    type Simplex: Clone + Ord + Debug;

    /// Largest degree carrying a nondegenerate non-basepoint simplex.
    fn dimension(&self) -> usize;

    fn degree(&self, x: &Self::Simplex) -> usize;

    /// `d_i x`, or `None` for the basepoint.
    fn face(&self, x: &Self::Simplex, i: usize) -> Option<Self::Simplex>;

    fn degeneracy(&self, x: &Self::Simplex, i: usize) -> Self::Simplex;

    /// All non-basepoint simplices of degree `n`, degenerate ones included.
    fn simplices(&self, n: usize) -> Vec<Self::Simplex>;

    /// Non-basepoint nondegenerate simplices of degree `n` in a fixed
    /// order, or `None` as soon as there are more than `limit` of them.
    fn nondegenerate_within(&self, n: usize, limit: usize) -> Option<Vec<Self::Simplex>>;

    fn nondegenerate(&self, n: usize) -> Vec<Self::Simplex> {
        self.nondegenerate_within(n, usize::MAX)
            .expect("unbounded enumeration")
    }

    /// Bit `i` is set when `x = s_i d_i x`.
    fn degeneracy_mask(&self, x: &Self::Simplex) -> u64 {
        let n = self.degree(x);
        let mut mask = 0;
        for i in 0..n {
            if let Some(y) = self.face(x, i) {
                if self.degeneracy(&y, i) == *x {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    fn is_degenerate(&self, x: &Self::Simplex) -> bool {
        self.degeneracy_mask(x) != 0
    }
}

/// Checks `d_i d_j = d_{j-1} d_i (i < j)`, `d_i s_i = d_{i+1} s_i = id`,
/// `d_i s_j = s_{j-1} d_i (i < j)`, `d_i s_j = s_j d_{i-1} (i > j + 1)` and
/// `s_i s_j = s_{j+1} s_i (i ≤ j)` on every simplex of degree `≤ max_degree`.
pub fn verify_simplicial_identities<X: PointedSimplicialSet>(
    x: &X,
    max_degree: usize,
) -> Result<(), SimplicialError> {
    let fail = |degree, identity| Err(SimplicialError::IdentityFailed { degree, identity });
    for n in 0..=max_degree {
        for s in x.simplices(n) {
            if x.degree(&s) != n {
                return fail(n, "degree");
            }
            if n >= 2 {
                for j in 0..=n {
                    for i in 0..j {
                        let lhs = x.face(&s, j).and_then(|t| x.face(&t, i));
                        let rhs = x.face(&s, i).and_then(|t| x.face(&t, j - 1));
                        if lhs != rhs {
                            return fail(n, "d_i d_j = d_{j-1} d_i");
                        }
                    }
                }
            }
            for j in 0..=n {
                let sj = x.degeneracy(&s, j);
                if x.face(&sj, j).as_ref() != Some(&s) || x.face(&sj, j + 1).as_ref() != Some(&s) {
                    return fail(n, "d_j s_j = d_{j+1} s_j = id");
                }
                for i in 0..=n + 1 {
                    if i < j {
                        let lhs = x.face(&sj, i);
                        let rhs = x.face(&s, i).map(|t| x.degeneracy(&t, j - 1));
                        if lhs != rhs {
                            return fail(n, "d_i s_j = s_{j-1} d_i");
                        }
                    } else if i > j + 1 {
                        let lhs = x.face(&sj, i);
                        let rhs = x.face(&s, i - 1).map(|t| x.degeneracy(&t, j));
                        if lhs != rhs {
                            return fail(n, "d_i s_j = s_j d_{i-1}");
                        }
                    }
                }
                for i in 0..=j {
                    let lhs = x.degeneracy(&sj, i);
                    let rhs = x.degeneracy(&x.degeneracy(&s, i), j + 1);
                    if lhs != rhs {
                        return fail(n, "s_i s_j = s_{j+1} s_i");
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
