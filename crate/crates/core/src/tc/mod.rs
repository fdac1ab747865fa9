//! Assembly of `TC_*(THH(F_p), F_p)` from the per-weight spectral
//! sequences and the `φ − can` kernel, and the resulting relative
//! K-groups `K_{2r+1}(THH(F_p), F_p) ≅ 𝕎_r(F_p)`.
//!
//! Weights `m = p^v m′` with `p ∤ m′` are grouped into towers. In degree
//! `2r+1` the tower contributes the kernel of
//! `φ − can : ∏_v TC⁻(p^v m′) → ∏_v TP(p^v m′)`, where `φ` raises `v` by
//! one and `can` keeps it.

mod series;

pub use series::{iterated_thh_series, SeriesComparison};

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::{kernel_cokernel, FiniteAbelianGroup, IntMatrix, LinalgError};
use crate::ss::{e2_page, run_to_e_infinity, expected_count, Mode};
use crate::witt::{big_witt_decomposition, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TcError {
    #[error("{p} divides the weight {mprime}")]
    DivisibleWeight { mprime: u64, p: u64 },
    #[error("tower truncated at level {vmax}, needs at least {needed}")]
    TruncationTooSmall { vmax: u32, needed: u32 },
    #[error("{value} is not a unit modulo {p}")]
    NotAUnit { value: BigInt, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("(m′, s) lists disagree with the big Witt decomposition")]
    DecompositionMismatch,
    #[error("invariant violated: {0}")]
    InvariantViolation(&'static str),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_prime(p: u64) -> Result<(), TcError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(TcError::NotPrime(p))
    }
}

/// `s(m′) = #{v ≥ 0 : p^v m′ ≤ r}`, the smallest `v` with `r < p^v m′`.
pub fn s_parameter(mprime: u64, r: u64, p: u64) -> Result<u32, TcError> {
    if mprime == 0 || mprime % p == 0 {
        return Err(TcError::DivisibleWeight { mprime, p });
    }
    let mut s = 0;
    let mut w = mprime;
    while w <= r {
        s += 1;
        w = match w.checked_mul(p) {
            Some(w) => w,
            None => break,
        };
    }
    Ok(s)
}

/// Odd-degree lengths of `TC⁻` and `TP` along one tower, read off the
/// spectral sequences in degree `2r+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTower {
    pub mprime: u64,
    pub p: u64,
    pub r: u64,
    /// `tc_minus[v]`: length of `TC⁻_{2r+1}` at weight `p^v m′`.
    pub tc_minus: Vec<u32>,
    /// `tp[v]`: length of `TP_{2r+1}` at weight `p^v m′`.
    pub tp: Vec<u32>,
}

impl WeightTower {
    /// Levels `v = 0..=vmax`; `vmax` must be at least `s(m′)`.
    pub fn from_spectral_sequences(mprime: u64, r: u64, p: u64, vmax: u32) -> Result<Self, TcError> {
        check_prime(p)?;
        let s = s_parameter(mprime, r, p)?;
        if vmax < s {
            return Err(TcError::TruncationTooSmall { vmax, needed: s });
        }
        let degree = 2 * r as i64 + 1;
        let mut tc_minus = Vec::new();
        let mut tp = Vec::new();
        for v in 0..=vmax {
            let m = p.pow(v) * mprime;
            let hfp = run_to_e_infinity(&e2_page(m, p, Mode::HomotopyFixedPoints).expect("m ≥ 1"), degree..=degree);
            let tate = run_to_e_infinity(&e2_page(m, p, Mode::Tate).expect("m ≥ 1"), degree..=degree);
            let (a, b) = (hfp.count(degree), tate.count(degree));
            if a != expected_count(Mode::HomotopyFixedPoints, m, p, degree)
                || b != expected_count(Mode::Tate, m, p, degree)
            {
                return Err(TcError::InvariantViolation("survivor counts differ from the closed form"));
            }
            tc_minus.push(a as u32);
            tp.push(b as u32);
        }
        Ok(Self {
            mprime,
            p,
            r,
            tc_minus,
            tp,
        })
    }

    pub fn vmax(&self) -> u32 {
        self.tc_minus.len() as u32 - 1
    }

    /// Whether level `v` is below the threshold, `p^v m′ ≤ r`.
    pub fn below_threshold(&self, v: u32) -> bool {
        self.p
            .checked_pow(v)
            .and_then(|q| q.checked_mul(self.mprime))
            .is_some_and(|w| w <= self.r)
    }

    pub fn source_orders(&self) -> Vec<BigInt> {
        self.tc_minus.iter().map(|&a| num_traits::pow(BigInt::from(self.p), a as usize)).collect()
    }

    pub fn target_orders(&self) -> Vec<BigInt> {
        self.tp.iter().map(|&b| num_traits::pow(BigInt::from(self.p), b as usize)).collect()
    }
}

/// How `can` acts below the threshold, where it maps `ℤ/p^{v+1}` onto
/// `ℤ/p^v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CanBelowThreshold {
    /// Unit times reduction mod `p^v` (the restriction `W_{v+1} → W_v`).
    #[default]
    Reduction,
    /// The zero map.
    Zero,
}

/// Scalars for the components of `φ − can`, indexed by source level `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitChoices {
    /// Unit scalar of `φ : v → v+1` where it is an isomorphism.
    pub phi: Vec<BigInt>,
    /// Unit scalar of `can : v → v`.
    pub can: Vec<BigInt>,
    /// Scalar of `φ` above the threshold; must be divisible by `p`.
    pub phi_above: Vec<BigInt>,
    pub can_below: CanBelowThreshold,
}

impl UnitChoices {
    /// All units 1, `φ` zero above the threshold, `can` a reduction below.
    pub fn ones(levels: usize) -> Self {
        Self {
            phi: alloc::vec![BigInt::one(); levels],
            can: alloc::vec![BigInt::one(); levels],
            phi_above: alloc::vec![BigInt::zero(); levels],
            can_below: CanBelowThreshold::Reduction,
        }
    }

    fn validate(&self, levels: usize, p: u64) -> Result<(), TcError> {
        let pb = BigInt::from(p);
        if self.phi.len() < levels || self.can.len() < levels || self.phi_above.len() < levels {
            return Err(TcError::InvariantViolation("too few unit choices for the tower"));
        }
        for u in self.phi.iter().chain(&self.can).take(2 * levels) {
            if u.is_multiple_of(&pb) {
                return Err(TcError::NotAUnit { value: u.clone(), p });
            }
        }
        if let Some(x) = self.phi_above.iter().find(|x| !x.is_multiple_of(&pb)) {
            return Err(TcError::NotAUnit { value: x.clone(), p });
        }
        Ok(())
    }
}

/// The matrix of `φ − can` on the truncated tower: column `v` is the
/// source `TC⁻(p^v m′)`, row `w` the target `TP(p^w m′)`.
pub fn phi_can_matrix(tower: &WeightTower, units: &UnitChoices) -> Result<IntMatrix, TcError> {
    let n = tower.tc_minus.len();
    units.validate(n, tower.p)?;
    let mut f = IntMatrix::zeros(n, n);
    for v in 0..n {
        let below = tower.below_threshold(v as u32);
        if v + 1 < n {
            f[(v + 1, v)] = if below {
                units.phi[v].clone()
            } else {
                units.phi_above[v].clone()
            };
        }
        f[(v, v)] = if below && units.can_below == CanBelowThreshold::Zero {
            BigInt::zero()
        } else {
            -units.can[v].clone()
        };
    }
    Ok(f)
}

/// Full result of the kernel computation for one tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCanAnalysis {
    pub tower: WeightTower,
    pub matrix: IntMatrix,
    pub kernel: FiniteAbelianGroup,
    pub cokernel: FiniteAbelianGroup,
    /// The kernel element built by downward induction from `1` at level
    /// `s − 1`; all zero when `s = 0`.
    pub section: Vec<BigInt>,
}

fn inverse_mod(u: &BigInt, modulus: &BigInt) -> BigInt {
    let e = u.extended_gcd(modulus);
    debug_assert!(e.gcd.is_one() || modulus.is_one());
    e.x.mod_floor(modulus)
}

/// Kernel and cokernel of `φ − can` on the tower of `m′` in degree `2r+1`,
/// truncated at `vmax` (at least `s(m′)`).
pub fn phi_can_analysis(
    mprime: u64,
    r: u64,
    p: u64,
    vmax: u32,
    units: &UnitChoices,
) -> Result<PhiCanAnalysis, TcError> {
    let tower = WeightTower::from_spectral_sequences(mprime, r, p, vmax)?;
    let matrix = phi_can_matrix(&tower, units)?;
    let (src, tgt) = (tower.source_orders(), tower.target_orders());
    let (kernel, cokernel) = kernel_cokernel(&matrix, &src, &tgt)?;

    let s = s_parameter(mprime, r, p)? as usize;
    let n = src.len();
    let mut x = alloc::vec![BigInt::zero(); n];
    if s > 0 {
        x[s - 1] = BigInt::one();
        // target w < s: φ x_{w−1} = can x_w
        for w in (1..s).rev() {
            let can_x = -(&matrix[(w, w)] * &x[w]);
            x[w - 1] = (inverse_mod(&matrix[(w, w - 1)], &tgt[w]) * can_x).mod_floor(&src[w - 1]);
        }
        // target w ≥ s: can is invertible there
        for w in s..n {
            let phi_x = &matrix[(w, w - 1)] * &x[w - 1];
            let c = -matrix[(w, w)].clone();
            x[w] = (inverse_mod(&c, &tgt[w]) * phi_x).mod_floor(&src[w]);
        }
        for w in 0..n {
            let y: BigInt = (0..n).map(|v| &matrix[(w, v)] * &x[v]).sum();
            if !y.is_multiple_of(&tgt[w]) {
                return Err(TcError::InvariantViolation("section is not in the kernel"));
            }
        }
    }
    Ok(PhiCanAnalysis {
        tower,
        matrix,
        kernel,
        cokernel,
        section: x,
    })
}

/// `ker(φ − can)` with one guard level above `s(m′)`.
pub fn phi_can_kernel(mprime: u64, r: u64, p: u64, units: &UnitChoices) -> Result<FiniteAbelianGroup, TcError> {
    let vmax = s_parameter(mprime, r, p)? + 1;
    Ok(phi_can_analysis(mprime, r, p, vmax, units)?.kernel)
}

/// Kernel of `f : ⊕ ℤ/a_i → ⊕ ℤ/b_j` by listing the source, for finite
/// `p`-groups of order at most `max_order`; `None` beyond that.
pub fn kernel_by_enumeration(
    f: &IntMatrix,
    source_orders: &[BigInt],
    target_orders: &[BigInt],
    p: u64,
    max_order: u64,
) -> Option<FiniteAbelianGroup> {
    let orders: Vec<u64> = source_orders.iter().map(|o| u64::try_from(o).ok()).collect::<Option<_>>()?;
    let total = orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o))?;
    if total > max_order {
        return None;
    }
    let mut kernel: Vec<Vec<u64>> = Vec::new();
    for code in 0..total {
        let mut c = code;
        let x: Vec<u64> = orders
            .iter()
            .map(|&o| {
                let d = c % o;
                c /= o;
                d
            })
            .collect();
        let in_kernel = (0..target_orders.len()).all(|j| {
            let y: BigInt = (0..x.len()).map(|i| &f[(j, i)] * BigInt::from(x[i])).sum();
            y.is_multiple_of(&target_orders[j])
        });
        if in_kernel {
            kernel.push(x);
        }
    }
    // |K[p^k]| for k = 0, 1, … until it reaches |K|
    let mut counts = Vec::new();
    let mut pk = 1u128;
    loop {
        let n = kernel
            .iter()
            .filter(|x| x.iter().zip(&orders).all(|(&xi, &o)| (xi as u128 * pk) % o as u128 == 0))
            .count();
        counts.push(BigInt::from(n));
        if n == kernel.len() {
            break;
        }
        pk = pk.checked_mul(p as u128)?;
    }
    counts.push(BigInt::from(kernel.len()));
    FiniteAbelianGroup::from_p_torsion_counts(p, &counts)
}

/// One row of the table: degree, the `(m′, s)` entries and the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittLengthRow {
    pub prime: u64,
    pub degree: u64,
    pub entries: Vec<(u64, u32)>,
    pub group: FiniteAbelianGroup,
}

impl WittLengthRow {
    pub fn order(&self) -> BigInt {
        self.group.order().expect("finite")
    }

    /// The `p`-power orders of the cyclic factors, largest first.
    pub fn factor_orders(&self) -> Vec<BigInt> {
        let p = BigInt::from(self.prime);
        let mut out: Vec<BigInt> = self
            .entries
            .iter()
            .map(|&(_, s)| num_traits::pow(p.clone(), s as usize))
            .collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

/// `TC_degree` relative to `F_p`, assembled tower by tower from the
/// Smith-form kernels. Even degrees give the trivial group.
pub fn tc_row(degree: u64, p: u64) -> Result<WittLengthRow, TcError> {
    check_prime(p)?;
    if degree % 2 == 0 {
        return Ok(WittLengthRow {
            prime: p,
            degree,
            entries: Vec::new(),
            group: FiniteAbelianGroup::trivial(),
        });
    }
    let r = (degree - 1) / 2;
    let mut entries = Vec::new();
    let mut orders = Vec::new();
    for mprime in (1..=r).filter(|k| k % p != 0) {
        let k = phi_can_kernel(mprime, r, p, &UnitChoices::ones(s_parameter(mprime, r, p)? as usize + 2))?;
        let exps = k
            .p_group_exponents(p)
            .ok_or(TcError::InvariantViolation("kernel is not a finite p-group"))?;
        match exps.as_slice() {
            [] => {}
            [s] => {
                entries.push((mprime, *s));
                orders.push(num_traits::pow(BigInt::from(p), *s as usize));
            }
            _ => return Err(TcError::InvariantViolation("kernel is not cyclic")),
        }
    }
    Ok(WittLengthRow {
        prime: p,
        degree,
        entries,
        group: FiniteAbelianGroup::from_orders(orders),
    })
}

/// `TC_{2r+1}(THH(F_p), F_p)`.
pub fn tc_groups(r: u64, p: u64) -> Result<WittLengthRow, TcError> {
    tc_row(2 * r + 1, p)
}

/// `K_degree(THH(F_p), F_p)`, equal to relative `TC`; the odd rows are
/// cross-checked against the big Witt decomposition.
pub fn k_relative_row(degree: u64, p: u64) -> Result<WittLengthRow, TcError> {
    let row = tc_row(degree, p)?;
    if degree % 2 == 1 {
        let r = (degree - 1) / 2;
        if row.entries != big_witt_decomposition(r, p) {
            return Err(TcError::DecompositionMismatch);
        }
        if row.order() != num_traits::pow(BigInt::from(p), r as usize) {
            return Err(TcError::InvariantViolation("order differs from p^r"));
        }
    }
    Ok(row)
}

/// `K_{2r+1}(THH(F_p), F_p) ≅ 𝕎_r(F_p)`.
pub fn k_relative(r: u64, p: u64) -> Result<FiniteAbelianGroup, TcError> {
    Ok(k_relative_row(2 * r + 1, p)?.group)
}

#[cfg(test)]
mod tests;
