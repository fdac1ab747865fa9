//! Exact integer linear algebra: Smith normal form, homology of integer
//! chain complexes, and kernels/cokernels of maps between finite abelian
//! groups.

mod complex;
mod group;
mod matrix;
mod smith;
mod sparse;

pub use complex::IntegerChainComplex;
pub use group::FiniteAbelianGroup;
pub use matrix::IntMatrix;
pub use smith::{smith_diagonal, smith_normal_form, SmithDecomposition};
pub use sparse::SparseIntMatrix;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("incompatible shapes: expected {expected:?}, found {found:?}")]
    IncompatibleShapes {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("boundary maps do not square to zero at degree {degree}")]
    ComplexInvalid { degree: usize },
    #[error("entry ({row}, {col}) does not give a well-defined map of cyclic groups")]
    IllDefinedMap { row: usize, col: usize },
    #[error("cyclic group orders must be positive")]
    InvalidOrder,
}

/// Kernel and cokernel of the homomorphism `⊕ ℤ/aᵢ → ⊕ ℤ/bⱼ` given by
/// `f` (one row per target summand, one column per source summand).
///
/// The cokernel is read off the Smith form of the presentation matrix
/// `[f | diag(b)]`. The same decomposition yields the lattice
/// `K = {x ∈ ℤ^s : f x ∈ diag(b) ℤ^t}` from its null space, and the kernel
/// is `K / diag(a) ℤ^s`.
pub fn kernel_cokernel(
    f: &IntMatrix,
    source_orders: &[BigInt],
    target_orders: &[BigInt],
) -> Result<(FiniteAbelianGroup, FiniteAbelianGroup), LinalgError> {
    let (t, s) = (target_orders.len(), source_orders.len());
    if f.rows() != t || f.cols() != s {
        return Err(LinalgError::IncompatibleShapes {
            expected: (t, s),
            found: (f.rows(), f.cols()),
        });
    }
    if source_orders
        .iter()
        .chain(target_orders)
        .any(|n| !n.is_positive())
    {
        return Err(LinalgError::InvalidOrder);
    }
    for j in 0..t {
        for i in 0..s {
            if !(&f[(j, i)] * &source_orders[i]).is_multiple_of(&target_orders[j]) {
                return Err(LinalgError::IllDefinedMap { row: j, col: i });
            }
        }
    }

    let presentation = f.hconcat(&IntMatrix::diagonal(t, t, target_orders.iter().cloned()))?;
    let snf = smith_normal_form(&presentation);
    let cokernel = FiniteAbelianGroup::from_presentation_diagonal(t, &snf.diagonal);

    if s == 0 {
        return Ok((FiniteAbelianGroup::trivial(), cokernel));
    }
    let rank = snf.rank();
    // Null space of the presentation, projected to the source coordinates.
    let generators = snf.v.columns(rank..s + t).row_block(0..s);
    let g_snf = smith_normal_form(&generators);
    debug_assert_eq!(g_snf.rank(), s, "K has full rank since diag(a)ℤ^s ⊆ K");
    // K = U_G⁻¹ · diag(d) ℤ^s, so diag(a) in K-coordinates is diag(d)⁻¹ U_G diag(a).
    let mut rel = g_snf
        .u
        .mul(&IntMatrix::diagonal(s, s, source_orders.iter().cloned()))?;
    for i in 0..s {
        let d = &g_snf.diagonal[i];
        for j in 0..s {
            debug_assert!(rel[(i, j)].is_multiple_of(d));
            let q = &rel[(i, j)] / d;
            rel[(i, j)] = q;
        }
    }
    let kernel_diag: Vec<BigInt> = smith_normal_form(&rel).diagonal;
    debug_assert!(kernel_diag.iter().all(|d| !d.is_zero()));
    let kernel = FiniteAbelianGroup::from_presentation_diagonal(s, &kernel_diag);
    Ok((kernel, cokernel))
}
