//! Tate and homotopy fixed point spectral sequences of a weight summand.
//!
//! For weight `m` with `v = val_p(m)` the `E²` page is
//! `F_p[t^{±1}, x]{y, z}` (Tate) or its truncation to `t`-exponents `≥ 0`
//! (homotopy fixed points), with `|t| = (−2, 0)`, `|x| = (0, 2)`,
//! `|y| = (0, 2m)`, `|z| = (0, 2m+1)`. The only differential is
//! `d^{2v+2}(t^j x^i y) = t^{j+v+1} x^{i+v} z`.
//!
//! Each total degree contains infinitely many monomials, all on one line
//! `(j, i) + ℕ·(1, 1)`. Queries enumerate a finite window of that line
//! starting at its lower end and check that the window's last monomial is
//! killed by a source whose `tx`-translates stay admissible, so everything
//! beyond the window dies too.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;

use crate::linalg::FiniteAbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SsError {
    #[error("weight 0 is the absolute part and has no relative spectral sequence")]
    WeightZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Tate,
    HomotopyFixedPoints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Y,
    Z,
}

/// `t^j x^i · gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub j: i64,
    pub i: i64,
    pub gen: Generator,
}

impl Monomial {
    pub fn column(&self) -> i64 {
        -2 * self.j
    }

    pub fn row(&self, m: u64) -> i64 {
        2 * self.i + 2 * m as i64 + i64::from(self.gen == Generator::Z)
    }

    pub fn total_degree(&self, m: u64) -> i64 {
        self.column() + self.row(m)
    }

    /// Multiplication by `tx`, which preserves total degree.
    fn shift(&self) -> Self {
        Self {
            j: self.j + 1,
            i: self.i + 1,
            gen: self.gen,
        }
    }
}

/// `p`-adic valuation of a positive integer.
pub fn valuation(mut m: u64, p: u64) -> u32 {
    assert!(m > 0 && p > 1);
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

/// A page `E^r`, described by admissibility of monomials (nothing dies
/// before the single differential, so the page number decides which
/// monomials are still alive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Page {
    pub mode: Mode,
    pub m: u64,
    pub p: u64,
    pub v: u32,
    pub number: u32,
}

pub fn e2_page(m: u64, p: u64, mode: Mode) -> Result<Page, SsError> {
    if m == 0 {
        return Err(SsError::WeightZero);
    }
    if !crate::witt::is_prime(p) {
        return Err(SsError::NotPrime(p));
    }
    Ok(Page {
        mode,
        m,
        p,
        v: valuation(m, p),
        number: 2,
    })
}

impl Page {
    /// Page on which the differential acts.
    pub fn differential_page(&self) -> u32 {
        2 * self.v + 2
    }

    /// Whether `a` is a basis monomial of `E²`.
    pub fn admissible(&self, a: &Monomial) -> bool {
        a.i >= 0 && (self.mode == Mode::Tate || a.j >= 0)
    }

    /// The differential `d^{number}` on a basis monomial; `None` when it is
    /// zero on this page.
    pub fn differential(&self, a: &Monomial) -> Option<Monomial> {
        if self.number != self.differential_page() || a.gen != Generator::Y {
            return None;
        }
        let v = i64::from(self.v);
        let b = Monomial {
            j: a.j + v + 1,
            i: a.i + v,
            gen: Generator::Z,
        };
        let r = i64::from(self.number);
        assert_eq!(b.column() - a.column(), -r, "column shift of d^r");
        assert_eq!(b.row(self.m) - a.row(self.m), r - 1, "row shift of d^r");
        self.admissible(&b).then_some(b)
    }

    /// First `len` admissible monomials of total degree `degree`, starting
    /// at the lower end of the line.
    pub fn line(&self, degree: i64, len: usize) -> Vec<Monomial> {
        let base = degree - 2 * self.m as i64;
        let gen = if base.rem_euclid(2) == 0 { Generator::Y } else { Generator::Z };
        // i − j = c on the whole line
        let c = base.div_euclid(2);
        let j0 = match self.mode {
            Mode::Tate => -c,
            Mode::HomotopyFixedPoints => (-c).max(0),
        };
        (0..len as i64)
            .map(|k| Monomial {
                j: j0 + k,
                i: j0 + k + c,
                gen,
            })
            .inspect(|a| debug_assert!(self.admissible(a) && a.total_degree(self.m) == degree))
            .collect()
    }

    pub fn next_page(&self) -> Page {
        Page {
            number: self.number + 1,
            ..*self
        }
    }
}

/// `E^∞` basis classes per total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurvivorTable {
    pub mode: Mode,
    pub m: u64,
    pub p: u64,
    pub survivors: BTreeMap<i64, Vec<Monomial>>,
}

impl SurvivorTable {
    pub fn count(&self, degree: i64) -> usize {
        self.survivors.get(&degree).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> BTreeMap<i64, usize> {
        self.survivors.iter().map(|(&d, s)| (d, s.len())).collect()
    }
}

/// `E^∞` survivors in one total degree.
fn survivors_in_degree(page: &Page, degree: i64) -> Vec<Monomial> {
    let v = page.v as usize;
    let mut len = v + 3;
    loop {
        let diff_page = Page {
            number: page.differential_page(),
            ..*page
        };
        let here = diff_page.line(degree, len);
        // sources one degree up; the window reaches past every target here
        let sources = diff_page.line(degree + 1, len + v + 2);
        let hit: Vec<Monomial> = sources.iter().filter_map(|y| diff_page.differential(y)).collect();
        let alive: Vec<Monomial> = here
            .iter()
            .copied()
            .filter(|a| diff_page.differential(a).is_none() && !hit.contains(a))
            .collect();
        // tail: the window's last monomial must die, and stay dead under tx
        let last = *here.last().expect("nonempty window");
        let tail_ok = match diff_page.differential(&last) {
            Some(b) => diff_page.differential(&last.shift()) == Some(b.shift()),
            None => sources.iter().any(|y| {
                diff_page.differential(y) == Some(last)
                    && diff_page.differential(&y.shift()) == Some(last.shift())
            }),
        };
        if tail_ok {
            return alive;
        }
        len *= 2;
        assert!(len < 1 << 20, "spectral sequence window does not close");
    }
}

/// Runs the page to `E^∞` over the given total degrees.
pub fn run_to_e_infinity(page: &Page, degrees: RangeInclusive<i64>) -> SurvivorTable {
    assert_eq!(page.number, 2, "start from the E² page");
    let survivors = degrees.map(|d| (d, survivors_in_degree(page, d))).collect();
    SurvivorTable {
        mode: page.mode,
        m: page.m,
        p: page.p,
        survivors,
    }
}

/// The closed form: Tate has `v` classes in each odd degree; homotopy
/// fixed points have `v + 1` in degree `2r+1` if `m ≤ r` and `v` if `r < m`.
pub fn expected_count(mode: Mode, m: u64, p: u64, degree: i64) -> usize {
    if degree.rem_euclid(2) == 0 {
        return 0;
    }
    let v = valuation(m, p) as usize;
    let r = (degree - 1).div_euclid(2);
    match mode {
        Mode::Tate => v,
        Mode::HomotopyFixedPoints if m as i64 <= r => v + 1,
        Mode::HomotopyFixedPoints => v,
    }
}

/// Whether the map from homotopy fixed point to Tate survivors in degree
/// `2r+1` (the identity on common monomials) is a bijection.
pub fn can_comparison(m: u64, p: u64, r: i64) -> Result<bool, SsError> {
    let d = 2 * r + 1;
    let hfp = survivors_in_degree(&e2_page(m, p, Mode::HomotopyFixedPoints)?, d);
    let tate = survivors_in_degree(&e2_page(m, p, Mode::Tate)?, d);
    Ok(hfp == tate)
}

/// `ℤ/p^c` in each odd degree with `c` survivors, `0` in even degrees.
pub fn assemble_cyclic(table: &SurvivorTable, p: u64) -> BTreeMap<i64, FiniteAbelianGroup> {
    table
        .survivors
        .iter()
        .map(|(&d, s)| {
            let g = if d.rem_euclid(2) == 1 {
                FiniteAbelianGroup::cyclic(num_traits::pow(BigInt::from(p), s.len()))
            } else {
                FiniteAbelianGroup::trivial()
            };
            (d, g)
        })
        .collect()
}
