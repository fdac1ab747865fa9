//! The weight-graded pointed cyclic bar construction on the free monoid
//! `U` on the simplicial sphere `S² = Δ²/∂Δ²`.
//!
//! `b′(m)_s` is the wedge over compositions `n_0 + … + n_s = m` of
//! `A(n_0) ∧ … ∧ A(n_s)` where `A(l) = (S²)^{∧l}`; its realization is the
//! weight-`m` summand `B(m)`. Homology is computed exactly, either from the
//! diagonal simplicial set or from the total complex of the doubly
//! normalized chains (same answer, much smaller).

mod cyclic;
mod koszul;
mod total;

pub use cyclic::{compositions, regroup, rotate_blocks, BarDiagonal, BarSimplex, CyclicBarComplex, SubdividedComplex};
pub use koszul::{koszul_is_resolution, koszul_tor, TorGroup};
pub use total::{total_complex, TotalComplex};

use alloc::vec::Vec;

use crate::linalg::FiniteAbelianGroup;
use crate::simplicial::{
    reduced_chain_complex, sphere_model, FinitePointedSimplicialSet, Simplex, PointedSimplicialSet, PowerSimplex,
    SimplicialError, SmashPower,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BarError {
    #[error("more than {limit} cells in degree {degree}")]
    BudgetExceeded { degree: usize, limit: usize },
    #[error("weight {m} is above the configured cap {cap}")]
    WeightOverCap { m: usize, cap: usize },
    #[error("boundary maps do not square to zero")]
    NotAComplex,
}

impl From<SimplicialError> for BarError {
    fn from(e: SimplicialError) -> Self {
        match e {
            SimplicialError::BudgetExceeded { degree, limit } => Self::BudgetExceeded { degree, limit },
            _ => Self::NotAComplex,
        }
    }
}

/// Size limits for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest weight `m` accepted.
    pub max_weight: usize,
    /// Largest number of cells in a single chain degree.
    pub max_cells: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_weight: 3,
            max_cells: 50_000,
        }
    }
}

impl Budget {
    pub fn unbounded() -> Self {
        Self {
            max_weight: usize::MAX,
            max_cells: usize::MAX,
        }
    }

    fn admit(&self, m: usize) -> Result<(), BarError> {
        if m > self.max_weight {
            Err(BarError::WeightOverCap { m, cap: self.max_weight })
        } else {
            Ok(())
        }
    }
}

/// Which chain model computes `H_*(B(m))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HomologyRoute {
    /// Doubly normalized total complex (default).
    #[default]
    TotalComplex,
    /// Normalized chains of the diagonal simplicial set.
    Diagonal,
}

/// The free monoid on a pointed simplicial set, graded by word length:
/// `A(l) = X^{∧l}`, product by concatenation.
#[derive(Clone, Debug)]
pub struct GradedPointedMonoid<X> {
    generator: X,
}

impl<X: PointedSimplicialSet + Clone> GradedPointedMonoid<X> {
    pub fn free_on(generator: X) -> Self {
        Self { generator }
    }

    pub fn level(&self, l: usize) -> SmashPower<X> {
        SmashPower::new(self.generator.clone(), l)
    }

    pub fn multiply(
        &self,
        a: &PowerSimplex<X::Simplex>,
        b: &PowerSimplex<X::Simplex>,
    ) -> PowerSimplex<X::Simplex> {
        SmashPower::<X>::concat(a, b)
    }

    /// Checks that concatenation maps the nondegenerate simplices of
    /// `A(l) ∧ A(l′)` bijectively onto those of `A(l + l′)` in degrees
    /// `≤ max_degree`.
    pub fn product_is_isomorphism(&self, l: usize, l2: usize, max_degree: usize) -> bool {
        let (a, b, ab) = (self.level(l), self.level(l2), self.level(l + l2));
        (0..=max_degree).all(|n| {
            let mut image = Vec::new();
            for x in a.simplices(n) {
                for y in b.simplices(n) {
                    if a.degeneracy_mask(&x) & b.degeneracy_mask(&y) == 0 {
                        image.push(self.multiply(&x, &y));
                    }
                }
            }
            image.sort();
            let before = image.len();
            image.dedup();
            before == image.len() && image == ab.nondegenerate(n)
        })
    }
}

/// `b′(m)` over the sphere model.
pub fn sphere_bar(m: usize) -> CyclicBarComplex<FinitePointedSimplicialSet> {
    CyclicBarComplex::new(sphere_model(), m)
}

/// Wedge summands of `b′(m)_s`.
pub fn bar_level(m: usize, s: usize) -> Vec<Vec<usize>> {
    compositions(m, s + 1)
}

pub fn diagonal_realization(m: usize) -> BarDiagonal<FinitePointedSimplicialSet> {
    sphere_bar(m).diagonal_realization()
}

pub fn subdivide(m: usize, p: usize) -> SubdividedComplex<FinitePointedSimplicialSet> {
    sphere_bar(m).subdivide(p)
}

/// Reduced integral homology of `B(m)`, degrees `0..=3m`.
pub fn homology_b(m: usize, budget: &Budget) -> Result<Vec<FiniteAbelianGroup>, BarError> {
    homology_b_with(m, HomologyRoute::default(), budget)
}

pub fn homology_b_with(
    m: usize,
    route: HomologyRoute,
    budget: &Budget,
) -> Result<Vec<FiniteAbelianGroup>, BarError> {
    budget.admit(m)?;
    let complex = match route {
        HomologyRoute::TotalComplex => total_complex(&sphere_model(), m, budget.max_cells)?.0,
        HomologyRoute::Diagonal => reduced_chain_complex(&diagonal_realization(m), budget.max_cells)?.0,
    };
    let mut h = complex.homology();
    h.resize(3 * m + 1, FiniteAbelianGroup::trivial());
    Ok(h)
}

/// Reduced homology of the diagonal of `sd_p b′(m)`.
pub fn subdivided_homology(m: usize, p: usize, budget: &Budget) -> Result<Vec<FiniteAbelianGroup>, BarError> {
    budget.admit(m)?;
    let mut h = reduced_chain_complex(&subdivide(m, p).diagonal(), budget.max_cells)?
        .0
        .homology();
    h.resize(3 * m + 1, FiniteAbelianGroup::trivial());
    Ok(h)
}

/// `true` when `H̃_n(B(m)) = ℤ` for `n ∈ {2m, 2m+1}` and 0 otherwise.
pub fn matches_lemma(m: usize, h: &[FiniteAbelianGroup]) -> bool {
    h.iter().enumerate().all(|(n, g)| {
        if n == 2 * m || n == 2 * m + 1 {
            *g == FiniteAbelianGroup::free(1)
        } else {
            g.is_trivial()
        }
    })
}

/// Whether `C_p` acts freely on the non-basepoint simplices of
/// `sd_p b′(m)`.
///
/// A degenerate simplex is fixed exactly when the nondegenerate simplex it
/// comes from is (the action commutes with degeneracies), so it suffices
/// to scan levels `k ≤ m` and vertically nondegenerate factor tuples.
pub fn check_free_action(m: usize, p: usize) -> bool {
    let sd = subdivide(m, p);
    let power = SmashPower::new(sphere_model(), m);
    // filled lazily: only compositions fixed by the rotation need tuples
    let mut tuples: Vec<Option<Vec<PowerSimplex<Simplex>>>> = alloc::vec![None; power.dimension() + 1];
    for k in 0..=m {
        for comp in sd.level(k) {
            let shifted = rotate_blocks(
                &BarSimplex::<()> {
                    comp: comp.clone(),
                    vdeg: 0,
                    factors: alloc::vec![(); m],
                },
                k + 1,
            );
            if shifted.comp != comp {
                continue;
            }
            for (q, slot) in tuples.iter_mut().enumerate() {
                let level = slot.get_or_insert_with(|| power.nondegenerate(q));
                for t in level.iter() {
                    let y = BarSimplex {
                        comp: comp.clone(),
                        vdeg: q,
                        factors: t.factors.clone(),
                    };
                    if sd.act(&y) == y {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests;
