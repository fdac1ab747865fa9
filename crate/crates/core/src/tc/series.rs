//! Poincaré series of `THH(THH(F_p))` over `THH(F_p)`, computed two ways.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficients `q^0..=q^N` of both sides, plus the check on the bar
/// construction factor alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    /// `(1/(1−q²)) · (1 + Σ_{m≥1} (q^{2m} + q^{2m+1}))`, weight by weight.
    pub by_weight: Vec<BigInt>,
    /// `(1+q³)/(1−q²)²`.
    pub closed_form: Vec<BigInt>,
    /// `1 + Σ_{m≥1} (q^{2m} + q^{2m+1})`.
    pub bar: Vec<BigInt>,
    /// `(1+q³)/(1−q²)`.
    pub bar_closed_form: Vec<BigInt>,
}

impl SeriesComparison {
    pub fn matches(&self) -> bool {
        self.by_weight == self.closed_form && self.bar == self.bar_closed_form
    }
}

fn truncated_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = alloc::vec![BigInt::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1/(1−q²)` up to `q^N`.
fn inverse_one_minus_q2(n: usize) -> Vec<BigInt> {
    (0..=n)
        .map(|k| if k % 2 == 0 { BigInt::one() } else { BigInt::zero() })
        .collect()
}

/// Homology of weight `m` of the bar construction: a `ℤ` in degrees `2m`
/// and `2m+1` for `m ≥ 1`, the unit in degree `0` for `m = 0`.
fn bar_weight(m: usize) -> Vec<(usize, BigInt)> {
    if m == 0 {
        alloc::vec![(0, BigInt::one())]
    } else {
        alloc::vec![(2 * m, BigInt::one()), (2 * m + 1, BigInt::one())]
    }
}

pub fn iterated_thh_series(n: usize) -> SeriesComparison {
    let mut bar = alloc::vec![BigInt::zero(); n + 1];
    for m in 0..=n / 2 {
        for (d, c) in bar_weight(m) {
            if d <= n {
                bar[d] += c;
            }
        }
    }
    let inv = inverse_one_minus_q2(n);
    let mut one_plus_q3 = alloc::vec![BigInt::zero(); n + 1];
    one_plus_q3[0] = BigInt::one();
    if n >= 3 {
        one_plus_q3[3] = BigInt::one();
    }
    let bar_closed_form = truncated_mul(&one_plus_q3, &inv, n);
    SeriesComparison {
        by_weight: truncated_mul(&inv, &bar, n),
        closed_form: truncated_mul(&bar_closed_form, &inv, n),
        bar,
        bar_closed_form,
    }
}
