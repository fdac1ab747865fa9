//! Smith normal form over the integers.
//!
//! Pivoting always picks the entry of smallest nonzero absolute value in the
//! remaining block, scanning rows then columns in index order, so the
//! decomposition is a deterministic function of the input.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// The `min(rows, cols)` diagonal entries of `D`; nonnegative, each
    /// dividing the next, zeros last.
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Computes the Smith normal form of `a` together with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    reduce(&mut d, Some((&mut u, &mut v)));
    let diagonal = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
    SmithDecomposition { u, d, v, diagonal }
}

/// Diagonal of the Smith normal form only; skips transform bookkeeping.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let mut d = a.clone();
    reduce(&mut d, None);
    (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect()
}

type Transforms<'a> = Option<(&'a mut IntMatrix, &'a mut IntMatrix)>;

fn swap_rows(a: &mut IntMatrix, t: &mut Transforms<'_>, i: usize, j: usize) {
    a.swap_rows(i, j);
    if let Some((u, _)) = t {
        u.swap_rows(i, j);
    }
}

fn swap_cols(a: &mut IntMatrix, t: &mut Transforms<'_>, i: usize, j: usize) {
    a.swap_cols(i, j);
    if let Some((_, v)) = t {
        v.swap_cols(i, j);
    }
}

fn add_row(a: &mut IntMatrix, t: &mut Transforms<'_>, target: usize, source: usize, f: &BigInt) {
    a.add_row_multiple(target, source, f);
    if let Some((u, _)) = t {
        u.add_row_multiple(target, source, f);
    }
}

fn add_col(a: &mut IntMatrix, t: &mut Transforms<'_>, target: usize, source: usize, f: &BigInt) {
    a.add_col_multiple(target, source, f);
    if let Some((_, v)) = t {
        v.add_col_multiple(target, source, f);
    }
}

/// First entry of minimal nonzero absolute value in the block `[t.., t..]`.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => x.abs() < a[b].abs(),
            };
            if better {
                if x.is_one() || (-x).is_one() {
                    return Some((i, j));
                }
                best = Some((i, j));
            }
        }
    }
    best
}

fn reduce(a: &mut IntMatrix, mut tr: Transforms<'_>) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_pivot(a, t) else {
            break;
        };
        swap_rows(a, &mut tr, t, pi);
        swap_cols(a, &mut tr, t, pj);
        loop {
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    add_row(a, &mut tr, i, t, &-q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    add_col(a, &mut tr, j, t, &-q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                // A nonzero remainder is smaller than the pivot: promote it.
                let mut best: Option<(usize, usize)> = None;
                let mut consider = |pos: (usize, usize), a: &IntMatrix| {
                    if a[pos].is_zero() {
                        return;
                    }
                    if best.is_none_or(|b| a[pos].abs() < a[b].abs()) {
                        best = Some(pos);
                    }
                };
                for i in t + 1..rows {
                    consider((i, t), a);
                }
                for j in t + 1..cols {
                    consider((t, j), a);
                }
                let (bi, bj) = best.expect("unclean pivot row/column has a nonzero entry");
                swap_rows(a, &mut tr, t, bi);
                swap_cols(a, &mut tr, t, bj);
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[(i, j)].is_zero() && !a[(i, j)].is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => add_row(a, &mut tr, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some((u, _)) = &mut tr {
                u.negate_row(t);
            }
        }
        t += 1;
    }
}
