use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{smith::smith_diagonal, IntMatrix, LinalgError};

/// Row-sparse integer matrix; each row keeps its nonzero entries sorted by
/// column. Used for boundary maps, which have a handful of `±1` per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows).map(|_| Vec::new()).collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut data: Vec<Vec<(usize, BigInt)>> = (0..rows).map(|_| Vec::new()).collect();
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(LinalgError::IncompatibleShapes {
                    expected: (rows, cols),
                    found: (i + 1, j + 1),
                });
            }
            data[i].push((j, v));
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
            for (j, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let data = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row_entries(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    /// Iterates `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn mul(&self, rhs: &SparseIntMatrix) -> Result<SparseIntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::IncompatibleShapes {
                expected: (self.cols, rhs.cols),
                found: (rhs.rows, rhs.cols),
            });
        }
        let mut triplets = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    triplets.push((i, *j, a * b));
                }
            }
        }
        SparseIntMatrix::from_triplets(self.rows, rhs.cols, triplets)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Nonzero Smith invariants (a divisibility chain) of the matrix.
    ///
    /// Unit entries are eliminated first directly on the sparse rows: a
    /// `±1` pivot lets its column be cleared by row operations and its row
    /// by column operations that touch nothing else, contributing one
    /// invariant factor `1`. What is left has no unit entries and goes
    /// through the dense Smith reduction.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut rows: Vec<Vec<(usize, BigInt)>> = self.data.clone();
        let mut col_rows: Vec<BTreeSet<usize>> = (0..self.cols).map(|_| BTreeSet::new()).collect();
        for (i, row) in rows.iter().enumerate() {
            for (j, _) in row {
                col_rows[*j].insert(i);
            }
        }
        let mut alive_row = alloc::vec![true; self.rows];
        let mut units = 0usize;

        loop {
            // Markowitz-style choice among unit entries, ties broken by index.
            let mut best: Option<(usize, usize, usize)> = None; // (cost, row, col)
            for (i, row) in rows.iter().enumerate() {
                if !alive_row[i] || row.is_empty() {
                    continue;
                }
                let rlen = row.len() - 1;
                for (j, v) in row {
                    if !v.abs().is_one() {
                        continue;
                    }
                    let cost = rlen * (col_rows[*j].len() - 1);
                    if best.is_none_or(|(c, bi, bj)| (cost, i, *j) < (c, bi, bj)) {
                        best = Some((cost, i, *j));
                    }
                }
                if matches!(best, Some((0, _, _))) {
                    break;
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            let pivot_row = core::mem::take(&mut rows[pi]);
            alive_row[pi] = false;
            for (j, _) in &pivot_row {
                col_rows[*j].remove(&pi);
            }
            let pivot_val = pivot_row
                .iter()
                .find(|e| e.0 == pj)
                .map(|e| e.1.clone())
                .expect("pivot entry present");
            let targets: Vec<usize> = col_rows[pj].iter().copied().collect();
            for k in targets {
                let akj = rows[k]
                    .iter()
                    .find(|e| e.0 == pj)
                    .map(|e| e.1.clone())
                    .expect("column index consistent");
                // row_k -= (a_kj / pivot) row_pivot, pivot = ±1
                let factor = -(akj * &pivot_val);
                let old = core::mem::take(&mut rows[k]);
                let merged = axpy(&old, &pivot_row, &factor);
                for (j, _) in &old {
                    col_rows[*j].remove(&k);
                }
                for (j, _) in &merged {
                    col_rows[*j].insert(k);
                }
                rows[k] = merged;
            }
            debug_assert!(col_rows[pj].is_empty());
            // Column pj now only meets the pivot; the rest of the pivot row
            // is cleared by column operations local to that row.
            units += 1;
        }

        let rest_rows: Vec<usize> = (0..self.rows)
            .filter(|&i| alive_row[i] && !rows[i].is_empty())
            .collect();
        let mut rest_cols: Vec<usize> = rest_rows
            .iter()
            .flat_map(|&i| rows[i].iter().map(|e| e.0))
            .collect();
        rest_cols.sort_unstable();
        rest_cols.dedup();

        let mut out: Vec<BigInt> = (0..units).map(|_| BigInt::one()).collect();
        if !rest_rows.is_empty() {
            let mut dense = IntMatrix::zeros(rest_rows.len(), rest_cols.len());
            for (ii, &i) in rest_rows.iter().enumerate() {
                for (j, v) in &rows[i] {
                    let jj = rest_cols.binary_search(j).expect("column collected");
                    dense[(ii, jj)] = v.clone();
                }
            }
            out.extend(smith_diagonal(&dense).into_iter().filter(|d| !d.is_zero()));
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// `a + f·b` for sorted sparse rows.
fn axpy(a: &[(usize, BigInt)], b: &[(usize, BigInt)], f: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, &b[j].1 * f));
            j += 1;
        } else {
            let v = &a[i].1 + &b[j].1 * f;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
