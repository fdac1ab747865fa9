use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{FiniteAbelianGroup, IntegerChainComplex, IntMatrix};
use crate::witt::{CoefficientRing, IntPolynomial};

/// One group of a bigraded answer: homological degree, internal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorGroup {
    pub homological: usize,
    pub internal: usize,
    pub group: FiniteAbelianGroup,
}

/// The Koszul resolution `R{1} ← R{e}` of the ground ring over
/// `R = ℤ[x]` with `|x| = 2`, `|e| = (1, 2)` and `d e = x`.
struct Koszul {
    /// `(homological, internal)` degrees of the free generators.
    generators: [(usize, usize); 2],
    /// `d e` as a polynomial in `x`.
    de: IntPolynomial,
}

impl Koszul {
    fn new() -> Self {
        Self {
            generators: [(0, 0), (1, 2)],
            de: IntPolynomial::var(1, 0),
        }
    }

    /// The piece of internal degree `2j` of `K` itself: `x^{j−1} e ↦ x^j`.
    fn internal_piece(&self, j: usize) -> IntegerChainComplex {
        let rank1 = usize::from(j >= 1);
        let d = if rank1 == 1 {
            // coefficient of x^j in x^{j-1}·de
            IntMatrix::new(1, 1, alloc::vec![self.de.coefficient(&[1])]).expect("1×1")
        } else {
            IntMatrix::zeros(1, 0)
        };
        IntegerChainComplex::from_dense(alloc::vec![1, rank1], &[d]).expect("two-term complex")
    }
}

/// `Tor^{ℤ[x]}_{*,*}(R, R)` for the ground ring `R` (`ℤ` or `F_p`), from
/// the Koszul complex reduced along `x ↦ 0`.
pub fn koszul_tor(ring: CoefficientRing) -> Vec<TorGroup> {
    let k = Koszul::new();
    // R ⊗_{ℤ[x]} K: one copy of R per generator, differential d e evaluated at x = 0
    let de0 = k.de.eval(&[BigInt::zero()]);
    let mut out = Vec::new();
    let top_internal = k.generators.iter().map(|g| g.1).max().unwrap_or(0);
    for internal in 0..=top_internal {
        let in_degree: Vec<usize> = k
            .generators
            .iter()
            .filter(|g| g.1 == internal)
            .map(|g| g.0)
            .collect();
        if in_degree.is_empty() {
            continue;
        }
        let maxh = *in_degree.iter().max().unwrap();
        let ranks: Vec<usize> = (0..=maxh).map(|h| usize::from(in_degree.contains(&h))).collect();
        // only e → 1 can be nonzero, and only if both sit in this internal degree
        let boundaries: Vec<IntMatrix> = (1..=maxh)
            .map(|h| {
                let mut d = IntMatrix::zeros(ranks[h - 1], ranks[h]);
                if h == 1 && ranks[0] == 1 && ranks[1] == 1 {
                    d[(0, 0)] = de0.clone();
                }
                d
            })
            .collect();
        let c = IntegerChainComplex::from_dense(ranks, &boundaries).expect("complex");
        let groups: Vec<FiniteAbelianGroup> = match ring {
            CoefficientRing::Integers => c.homology(),
            CoefficientRing::PrimeField(p) => c
                .homology_dims_mod_p(p)
                .into_iter()
                .map(|d| FiniteAbelianGroup::from_orders((0..d).map(|_| BigInt::from(p))))
                .collect(),
        };
        for (h, g) in groups.into_iter().enumerate() {
            if !g.is_trivial() {
                out.push(TorGroup {
                    homological: h,
                    internal,
                    group: g,
                });
            }
        }
    }
    out
}

/// Checks that the Koszul complex resolves `ℤ`: in internal degree `2j`
/// its homology is `ℤ` in degree 0 for `j = 0` and vanishes for `j ≥ 1`.
pub fn koszul_is_resolution(max_j: usize) -> bool {
    let k = Koszul::new();
    (0..=max_j).all(|j| {
        let h = k.internal_piece(j).homology();
        if j == 0 {
            h[0] == FiniteAbelianGroup::free(1) && h.iter().skip(1).all(FiniteAbelianGroup::is_trivial)
        } else {
            h.iter().all(FiniteAbelianGroup::is_trivial)
        }
    })
}
