//! Witt vectors over truncation sets.
//!
//! A Witt vector on a truncation set `S` has one coefficient `a_d` per
//! `d ∈ S` and ghost coordinates `w_n(a) = Σ_{d | n} d·a_d^{n/d}`. Sum and
//! product are given by integral polynomials obtained by inverting the
//! ghost map one component at a time; over `F_p` the same polynomials are
//! applied and the result reduced mod `p`.

mod poly;
mod truncation;

pub use poly::IntPolynomial;
pub use truncation::TruncationSet;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::FiniteAbelianGroup;
use truncation::divisors;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WittError {
    #[error("ghost coordinates need a torsion-free coefficient ring")]
    NonIntegralRing,
    #[error("structure polynomial component {component} has a non-integral coefficient")]
    NonIntegralCoefficient { component: u64 },
    #[error("operands live on different truncation sets or coefficient rings")]
    MismatchedTruncation,
    #[error("not a divisor-closed subset of the truncation set")]
    InvalidSubset,
    #[error("{element} is present but its divisor {divisor} is not")]
    NotDivisorClosed { element: u64, divisor: u64 },
    #[error("truncation sets contain positive integers only")]
    ZeroIndex,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected {expected} coefficients, found {found}")]
    WrongLength { expected: usize, found: usize },
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, WittError> {
        if is_prime(p) {
            Ok(Self::PrimeField(p))
        } else {
            Err(WittError::NotPrime(p))
        }
    }

    fn normalize(self, x: BigInt) -> BigInt {
        match self {
            Self::Integers => x,
            Self::PrimeField(p) => x.mod_floor(&BigInt::from(p)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WittOp {
    Add,
    Mul,
}

impl WittOp {
    pub fn name(self) -> &'static str {
        match self {
            Self::Add => "add",
            Self::Mul => "mul",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittVector {
    set: TruncationSet,
    coeffs: Vec<BigInt>,
    ring: CoefficientRing,
}

impl WittVector {
    /// Coefficients are listed in increasing order of the index set and
    /// reduced mod `p` over `F_p`.
    pub fn new(
        set: TruncationSet,
        coeffs: Vec<BigInt>,
        ring: CoefficientRing,
    ) -> Result<Self, WittError> {
        if coeffs.len() != set.len() {
            return Err(WittError::WrongLength {
                expected: set.len(),
                found: coeffs.len(),
            });
        }
        let coeffs = coeffs.into_iter().map(|c| ring.normalize(c)).collect();
        Ok(Self { set, coeffs, ring })
    }

    pub fn from_i64(set: TruncationSet, coeffs: &[i64], ring: CoefficientRing) -> Result<Self, WittError> {
        Self::new(set, coeffs.iter().map(|&c| BigInt::from(c)).collect(), ring)
    }

    pub fn zero(set: TruncationSet, ring: CoefficientRing) -> Self {
        let coeffs = (0..set.len()).map(|_| BigInt::zero()).collect();
        Self { set, coeffs, ring }
    }

    /// Teichmüller representative `[a] = (a, 0, 0, …)`.
    pub fn teichmuller(set: TruncationSet, a: BigInt, ring: CoefficientRing) -> Self {
        let mut v = Self::zero(set, ring);
        if !v.coeffs.is_empty() {
            v.coeffs[0] = ring.normalize(a);
        }
        v
    }

    pub fn one(set: TruncationSet, ring: CoefficientRing) -> Self {
        Self::teichmuller(set, BigInt::one(), ring)
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, d: u64) -> Option<&BigInt> {
        self.set.index_of(d).map(|i| &self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Ghost coordinates `w_n(a)`, one per `n ∈ S`.
pub fn ghost(a: &WittVector) -> Result<Vec<BigInt>, WittError> {
    if a.ring != CoefficientRing::Integers {
        return Err(WittError::NonIntegralRing);
    }
    Ok(a.set
        .elements()
        .iter()
        .map(|&n| {
            divisors(n)
                .into_iter()
                .map(|d| {
                    let i = a.set.index_of(d).expect("divisor-closed");
                    BigInt::from(d) * num_traits::pow(a.coeffs[i].clone(), (n / d) as usize)
                })
                .sum()
        })
        .collect())
}

/// The ghost polynomial `w_n` in the variables `offset .. offset + |S|`.
fn ghost_polynomial(set: &TruncationSet, n: u64, offset: usize, nvars: usize) -> IntPolynomial {
    let mut acc = IntPolynomial::zero(nvars);
    for d in divisors(n) {
        let i = set.index_of(d).expect("divisor-closed");
        let term = IntPolynomial::var(nvars, offset + i)
            .pow((n / d) as u32)
            .scale(&BigInt::from(d));
        acc = acc.add(&term);
    }
    acc
}

/// Solves `w_n(s) = target(n)` for `n ∈ out` by recursion on `n`:
/// `s_n = (target(n) − Σ_{d | n, d < n} d·s_d^{n/d}) / n`.
fn solve_ghost_system(
    out: &TruncationSet,
    mut target: impl FnMut(u64) -> IntPolynomial,
) -> Result<Vec<IntPolynomial>, WittError> {
    let mut s: Vec<IntPolynomial> = Vec::with_capacity(out.len());
    for &n in out.elements() {
        let mut rest = target(n);
        for d in divisors(n) {
            if d == n {
                break;
            }
            let sd = &s[out.index_of(d).expect("divisor-closed")];
            rest = rest.sub(&sd.pow((n / d) as u32).scale(&BigInt::from(d)));
        }
        let sn = rest
            .div_exact(&BigInt::from(n))
            .ok_or(WittError::NonIntegralCoefficient { component: n })?;
        s.push(sn);
    }
    Ok(s)
}

/// The integral polynomials computing sum or product on `S`.
///
/// Variables `0..|S|` are the coefficients `x_e` of the left operand and
/// `|S|..2|S|` those (`y_e`) of the right one, each in increasing order of
/// `e`. Component `k` belongs to the `k`-th element of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructurePolynomials {
    set: TruncationSet,
    op: WittOp,
    components: Vec<IntPolynomial>,
}

/// Computes the structure polynomials of `op` on `set`.
pub fn structure_polynomials(set: &TruncationSet, op: WittOp) -> Result<StructurePolynomials, WittError> {
    let k = set.len();
    let nvars = 2 * k;
    let components = solve_ghost_system(set, |n| {
        let x = ghost_polynomial(set, n, 0, nvars);
        let y = ghost_polynomial(set, n, k, nvars);
        match op {
            WittOp::Add => x.add(&y),
            WittOp::Mul => x.mul(&y),
        }
    })?;
    Ok(StructurePolynomials {
        set: set.clone(),
        op,
        components,
    })
}

impl StructurePolynomials {
    /// Wraps externally supplied components (e.g. read from a cache) after
    /// checking them against the ghost equations.
    pub fn from_components(
        set: TruncationSet,
        op: WittOp,
        components: Vec<IntPolynomial>,
    ) -> Result<Self, WittError> {
        let sp = Self { set, op, components };
        if sp.components.len() != sp.set.len()
            || sp.components.iter().any(|c| c.nvars() != 2 * sp.set.len())
        {
            return Err(WittError::WrongLength {
                expected: sp.set.len(),
                found: sp.components.len(),
            });
        }
        sp.verify_ghost_equations()?;
        Ok(sp)
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    pub fn op(&self) -> WittOp {
        self.op
    }

    pub fn components(&self) -> &[IntPolynomial] {
        &self.components
    }

    /// The component polynomial for index `d ∈ S`.
    pub fn component(&self, d: u64) -> Option<&IntPolynomial> {
        self.set.index_of(d).map(|i| &self.components[i])
    }

    /// Names `x1, x2, …, y1, y2, …` matching the variable order.
    pub fn variable_names(&self) -> Vec<String> {
        let xs = self.set.elements().iter().map(|e| alloc::format!("x{e}"));
        let ys = self.set.elements().iter().map(|e| alloc::format!("y{e}"));
        xs.chain(ys).collect()
    }

    /// Substitutes the polynomials into the ghost polynomials and compares
    /// with `w_n(x) op w_n(y)` symbolically.
    pub fn verify_ghost_equations(&self) -> Result<(), WittError> {
        let k = self.set.len();
        let nvars = 2 * k;
        for &n in self.set.elements() {
            let mut lhs = IntPolynomial::zero(nvars);
            for d in divisors(n) {
                let sd = &self.components[self.set.index_of(d).expect("divisor-closed")];
                lhs = lhs.add(&sd.pow((n / d) as u32).scale(&BigInt::from(d)));
            }
            let x = ghost_polynomial(&self.set, n, 0, nvars);
            let y = ghost_polynomial(&self.set, n, k, nvars);
            let rhs = match self.op {
                WittOp::Add => x.add(&y),
                WittOp::Mul => x.mul(&y),
            };
            if lhs != rhs {
                return Err(WittError::NonIntegralCoefficient { component: n });
            }
        }
        Ok(())
    }

    /// Evaluates the polynomials on two operands.
    pub fn apply(&self, a: &WittVector, b: &WittVector) -> Result<WittVector, WittError> {
        if a.set != self.set || b.set != self.set || a.ring != b.ring {
            return Err(WittError::MismatchedTruncation);
        }
        let values: Vec<BigInt> = a.coeffs.iter().chain(&b.coeffs).cloned().collect();
        let coeffs = self
            .components
            .iter()
            .map(|c| a.ring.normalize(c.eval(&values)))
            .collect();
        Ok(WittVector {
            set: self.set.clone(),
            coeffs,
            ring: a.ring,
        })
    }

    /// `k·a` for `k ≥ 0` by double-and-add; requires additive polynomials.
    pub fn multiple(&self, a: &WittVector, mut k: u64) -> Result<WittVector, WittError> {
        assert_eq!(self.op, WittOp::Add, "multiples need the addition polynomials");
        let mut acc = WittVector::zero(a.set.clone(), a.ring);
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.apply(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.apply(&base, &base)?;
            }
        }
        Ok(acc)
    }
}

pub fn witt_add(a: &WittVector, b: &WittVector) -> Result<WittVector, WittError> {
    if a.set != b.set || a.ring != b.ring {
        return Err(WittError::MismatchedTruncation);
    }
    structure_polynomials(&a.set, WittOp::Add)?.apply(a, b)
}

pub fn witt_mul(a: &WittVector, b: &WittVector) -> Result<WittVector, WittError> {
    if a.set != b.set || a.ring != b.ring {
        return Err(WittError::MismatchedTruncation);
    }
    structure_polynomials(&a.set, WittOp::Mul)?.apply(a, b)
}

/// Polynomials for the Frobenius `F_n : W_S → W_{S/n}`, characterized by
/// `w_m(F_n a) = w_{mn}(a)`, in the `|S|` coefficients of `a`.
pub fn frobenius_polynomials(set: &TruncationSet, n: u64) -> Result<Vec<IntPolynomial>, WittError> {
    if n == 0 {
        return Err(WittError::ZeroIndex);
    }
    let out = set.quotient(n);
    solve_ghost_system(&out, |m| ghost_polynomial(set, m * n, 0, set.len()))
}

pub fn frobenius(a: &WittVector, n: u64) -> Result<WittVector, WittError> {
    let polys = frobenius_polynomials(&a.set, n)?;
    let coeffs = polys.iter().map(|p| a.ring.normalize(p.eval(&a.coeffs))).collect();
    Ok(WittVector {
        set: a.set.quotient(n),
        coeffs,
        ring: a.ring,
    })
}

/// `V_n : W_{S/n} → W_S`, placing `a_d` at index `nd` and zero elsewhere.
/// `a` must live on `target.quotient(n)`.
pub fn verschiebung(a: &WittVector, n: u64, target: &TruncationSet) -> Result<WittVector, WittError> {
    if n == 0 {
        return Err(WittError::ZeroIndex);
    }
    if a.set != target.quotient(n) {
        return Err(WittError::MismatchedTruncation);
    }
    let mut out = WittVector::zero(target.clone(), a.ring);
    for (d, c) in a.set.elements().iter().zip(&a.coeffs) {
        let i = target.index_of(n * d).expect("n·(S/n) ⊆ S");
        out.coeffs[i] = c.clone();
    }
    Ok(out)
}

/// Forgets the coefficients outside the divisor-closed subset `t`.
pub fn restriction(a: &WittVector, t: &TruncationSet) -> Result<WittVector, WittError> {
    if !t.is_subset(&a.set) {
        return Err(WittError::InvalidSubset);
    }
    let coeffs = t
        .elements()
        .iter()
        .map(|&d| a.coeffs[a.set.index_of(d).expect("subset")].clone())
        .collect();
    Ok(WittVector {
        set: t.clone(),
        coeffs,
        ring: a.ring,
    })
}

/// The factors `(m′, s)` of `𝕎_r(k) ≅ ∏_{p ∤ m′} W_{s(m′)}(k)`, with
/// `s(m′) = #{v ≥ 0 : p^v m′ ≤ r}`, in increasing `m′`.
pub fn big_witt_decomposition(r: u64, p: u64) -> Vec<(u64, u32)> {
    (1..=r)
        .filter(|m| m % p != 0)
        .map(|m| {
            let mut s = 0;
            let mut q = m;
            while q <= r {
                s += 1;
                q = match q.checked_mul(p) {
                    Some(q) => q,
                    None => break,
                };
            }
            (m, s)
        })
        .collect()
}

/// Additive group of Witt vectors on `set` over `F_p`, found by
/// enumerating all `p^{|S|}` elements and counting `p^k`-torsion.
///
/// Only sensible for small sets; panics if `p^{|S|}` overflows.
pub fn additive_group_by_enumeration(set: &TruncationSet, p: u64) -> Result<FiniteAbelianGroup, WittError> {
    let ring = CoefficientRing::prime_field(p)?;
    let add = structure_polynomials(set, WittOp::Add)?;
    let n = set.len();
    let size = p.checked_pow(n as u32).expect("group too large to enumerate");
    let mut counts: Vec<BigInt> = alloc::vec![BigInt::zero(); n + 2];
    for code in 0..size {
        let mut c = code;
        let coeffs: Vec<BigInt> = (0..n)
            .map(|_| {
                let d = c % p;
                c /= p;
                BigInt::from(d)
            })
            .collect();
        let a = WittVector::new(set.clone(), coeffs, ring)?;
        // the smallest k with p^k a = 0
        let mut k = 0;
        let mut x = a;
        while !x.is_zero() {
            x = add.multiple(&x, p)?;
            k += 1;
            assert!(k <= n, "exponent of W_S(F_p) exceeds |S|");
        }
        for slot in counts.iter_mut().skip(k) {
            *slot += 1;
        }
    }
    Ok(FiniteAbelianGroup::from_p_torsion_counts(p, &counts).expect("counts of a p-group"))
}
