use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::cyclic::{compositions, coface_theta, regroup, BarSimplex};
use super::BarError;
use crate::linalg::{IntegerChainComplex, SparseIntMatrix};
use crate::simplicial::{PointedSimplicialSet, SmashPower};

/// The complex and, per total degree, the cells forming its basis.
pub type TotalComplex<S> = (IntegerChainComplex, Vec<Vec<BarSimplex<S>>>);

/// Total complex of the doubly normalized chains of `b′(m)`.
///
/// A cell in total degree `s + q` is a composition `(n_0, …, n_s)` of `m`
/// with `n_1, …, n_s > 0` (no horizontal unit insertion) together with a
/// nondegenerate `q`-simplex of `X^{∧m}`. The differential is
/// `∂ = ∂^h + (−1)^s ∂^v`. By Eilenberg–Zilber this computes the homology of
/// the diagonal with far fewer cells.
pub fn total_complex<X: PointedSimplicialSet + Clone>(
    x: &X,
    m: usize,
    limit: usize,
) -> Result<TotalComplex<X::Simplex>, BarError> {
    let power = SmashPower::new(x.clone(), m);
    let qmax = power.dimension();
    let smax = m;
    let top = smax + qmax;

    let tuples: Vec<Vec<Vec<X::Simplex>>> = (0..=qmax)
        .map(|q| power.nondegenerate(q).into_iter().map(|t| t.factors).collect())
        .collect();
    let comps: Vec<Vec<Vec<usize>>> = (0..=smax)
        .map(|s| {
            compositions(m, s + 1)
                .into_iter()
                .filter(|c| c[1..].iter().all(|&k| k > 0))
                .collect()
        })
        .collect();

    let mut cells: Vec<Vec<BarSimplex<X::Simplex>>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let count: usize = (0..=smax.min(n))
            .filter(|&s| n - s <= qmax)
            .map(|s| comps[s].len() * tuples[n - s].len())
            .sum();
        if count > limit {
            return Err(BarError::BudgetExceeded { degree: n, limit });
        }
        let mut level = Vec::with_capacity(count);
        for (s, level_comps) in comps.iter().enumerate().take(smax.min(n) + 1) {
            let q = n - s;
            if q > qmax {
                continue;
            }
            for c in level_comps {
                for t in &tuples[q] {
                    level.push(BarSimplex {
                        comp: c.clone(),
                        vdeg: q,
                        factors: t.clone(),
                    });
                }
            }
        }
        cells.push(level);
    }

    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let index: BTreeMap<&BarSimplex<X::Simplex>, usize> =
            cells[n - 1].iter().enumerate().map(|(k, c)| (c, k)).collect();
        let mut triplets = Vec::new();
        for (col, cell) in cells[n].iter().enumerate() {
            let s = cell.level();
            let q = cell.vdeg;
            if s >= 1 {
                for i in 0..=s {
                    let f = regroup(cell, &coface_theta(s, i, 1));
                    if f.comp[1..].contains(&0) {
                        continue;
                    }
                    let row = index[&f];
                    triplets.push((row, col, BigInt::from(if i % 2 == 0 { 1 } else { -1 })));
                }
            }
            if q >= 1 {
                let vsign = if s % 2 == 0 { 1 } else { -1 };
                for j in 0..=q {
                    let Some(factors) = cell
                        .factors
                        .iter()
                        .map(|f| x.face(f, j))
                        .collect::<Option<Vec<_>>>()
                    else {
                        continue;
                    };
                    let f = BarSimplex {
                        comp: cell.comp.clone(),
                        vdeg: q - 1,
                        factors,
                    };
                    if let Some(&row) = index.get(&f) {
                        let sign = if j % 2 == 0 { vsign } else { -vsign };
                        triplets.push((row, col, BigInt::from(sign)));
                    }
                }
            }
        }
        boundaries.push(
            SparseIntMatrix::from_triplets(cells[n - 1].len(), cells[n].len(), triplets)
                .expect("indices in range"),
        );
    }
    let ranks = cells.iter().map(Vec::len).collect();
    let complex = IntegerChainComplex::new(ranks, boundaries).map_err(|_| BarError::NotAComplex)?;
    Ok((complex, cells))
}
