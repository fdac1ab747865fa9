use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{PointedSimplicialSet, SimplicialError};
use crate::linalg::{FiniteAbelianGroup, IntegerChainComplex, SparseIntMatrix};

/// The nondegenerate non-basepoint simplices indexing each chain group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBasis<S> {
    pub cells: Vec<Vec<S>>,
}

impl<S> ChainBasis<S> {
    pub fn ranks(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}

/// Normalized chains modulo the basepoint, `∂ = Σ (−1)^i d_i` with
/// degenerate faces and the basepoint dropped. At most `limit` cells are
/// allowed per degree.
pub fn reduced_chain_complex<X: PointedSimplicialSet>(
    x: &X,
    limit: usize,
) -> Result<(IntegerChainComplex, ChainBasis<X::Simplex>), SimplicialError> {
    let top = x.dimension();
    let mut cells: Vec<Vec<X::Simplex>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let c = x
            .nondegenerate_within(n, limit)
            .ok_or(SimplicialError::BudgetExceeded { degree: n, limit })?;
        cells.push(c);
    }
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let index: BTreeMap<&X::Simplex, usize> =
            cells[n - 1].iter().enumerate().map(|(k, s)| (s, k)).collect();
        let mut triplets = Vec::new();
        for (col, s) in cells[n].iter().enumerate() {
            for i in 0..=n {
                let Some(f) = x.face(s, i) else { continue };
                match index.get(&f) {
                    Some(&row) => {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        triplets.push((row, col, BigInt::from(sign)));
                    }
                    None => debug_assert!(x.is_degenerate(&f), "missing nondegenerate face {f:?}"),
                }
            }
        }
        boundaries.push(
            SparseIntMatrix::from_triplets(cells[n - 1].len(), cells[n].len(), triplets)
                .expect("indices in range"),
        );
    }
    let ranks = cells.iter().map(Vec::len).collect();
    let complex = IntegerChainComplex::new(ranks, boundaries)
        .map_err(|_| SimplicialError::IdentityFailed { degree: top, identity: "∂∂ = 0" })?;
    Ok((complex, ChainBasis { cells }))
}

/// Reduced homology `H̃_n(X; ℤ)` for `n = 0..=dim X`.
pub fn reduced_homology<X: PointedSimplicialSet>(
    x: &X,
    limit: usize,
) -> Result<Vec<FiniteAbelianGroup>, SimplicialError> {
    Ok(reduced_chain_complex(x, limit)?.0.homology())
}
