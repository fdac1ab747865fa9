//! Cross-check suites run by `cyclobar verify`.

use std::time::Instant;

use cyclobar_core::bar::{
    check_free_action, homology_b, homology_b_with, koszul_is_resolution, matches_lemma, subdivided_homology,
    HomologyRoute,
};
use cyclobar_core::linalg::FiniteAbelianGroup;
use cyclobar_core::ss::{can_comparison, e2_page, expected_count, run_to_e_infinity, Mode};
use cyclobar_core::tc::{
    iterated_thh_series, k_relative_row, kernel_by_enumeration, phi_can_analysis, s_parameter, tc_row,
    CanBelowThreshold, UnitChoices,
};
use cyclobar_core::witt::{
    additive_group_by_enumeration, big_witt_decomposition, frobenius, ghost, structure_polynomials, verschiebung,
    witt_add, witt_mul, CoefficientRing, TruncationSet, WittOp, WittVector,
};
use cyclobar_core::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::table::{Output, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Witt,
    Homology,
    Ss,
    Tc,
    All,
}

/// Restrictions on what a suite covers.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub quick: bool,
    /// Only this prime, where a suite ranges over primes.
    pub prime: Option<u64>,
    /// Only this weight in the homology suite.
    pub weight: Option<usize>,
    /// Print per-check progress and timings on stderr.
    pub progress: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn output(&self) -> Output {
        let mut t = Table::new(["suite", "check", "status", "detail"]);
        for c in &self.checks {
            t.push([c.suite, &c.name, if c.passed { "PASS" } else { "FAIL" }, &c.detail]);
        }
        let json = json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "suite": c.suite,
                "check": c.name,
                "status": if c.passed { "PASS" } else { "FAIL" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        });
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        Output::new(json, t).note(format!("result: {verdict}"))
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

struct Runner<'a> {
    scope: &'a Scope,
    report: Report,
}

impl Runner<'_> {
    fn run(&mut self, suite: &'static str, name: &str, check: impl FnOnce() -> Check) {
        let start = Instant::now();
        let outcome = check();
        if self.scope.progress {
            let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
            eprintln!("[{suite}] {name}: {verdict} ({:.2}s)", start.elapsed().as_secs_f64());
        }
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.report.checks.push(CheckResult {
            suite,
            name: name.to_string(),
            passed,
            detail,
        });
    }

    fn primes(&self, default: &[u64]) -> Vec<u64> {
        self.scope.prime.map_or_else(|| default.to_vec(), |p| vec![p])
    }
}

pub fn run(suite: Suite, cfg: &RunConfig, scope: &Scope) -> Result<Report, CliError> {
    let mut r = Runner {
        scope,
        report: Report::default(),
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Witt {
        witt_suite(&mut r);
    }
    if all || suite == Suite::Homology {
        homology_suite(&mut r, cfg)?;
    }
    if all || suite == Suite::Ss {
        ss_suite(&mut r);
    }
    if all || suite == Suite::Tc {
        tc_suite(&mut r);
    }
    Ok(r.report)
}

fn witt_suite(r: &mut Runner<'_>) {
    let quick = r.scope.quick;
    let (big_len, n_max) = if quick { (6, 3) } else { (8, 4) };
    let mut sets = vec![TruncationSet::big(big_len)];
    for p in [2, 3] {
        for n in 1..=n_max {
            sets.push(TruncationSet::p_typical(p, n));
        }
    }
    r.run("witt", "structure polynomials are integral", || {
        for s in &sets {
            for op in [WittOp::Add, WittOp::Mul] {
                structure_polynomials(s, op)
                    .and_then(|sp| sp.verify_ghost_equations())
                    .map_err(|e| format!("{s} {}: {e}", op.name()))?;
            }
        }
        Ok(format!("{} truncation sets", sets.len()))
    });
    let samples = if quick { 100 } else { 500 };
    r.run("witt", "ghost map is a ring homomorphism", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for i in 0..samples {
            let s = &sets[rng.gen_range(0..sets.len())];
            let mut draw = || -> Vec<i64> { (0..s.len()).map(|_| rng.gen_range(-20..=20)).collect() };
            let (a, b) = (draw(), draw());
            let a = WittVector::from_i64(s.clone(), &a, CoefficientRing::Integers).map_err(|e| e.to_string())?;
            let b = WittVector::from_i64(s.clone(), &b, CoefficientRing::Integers).map_err(|e| e.to_string())?;
            let (ga, gb) = (ghost(&a).unwrap(), ghost(&b).unwrap());
            let sum = ghost(&witt_add(&a, &b).map_err(|e| e.to_string())?).unwrap();
            let prod = ghost(&witt_mul(&a, &b).map_err(|e| e.to_string())?).unwrap();
            for k in 0..ga.len() {
                ensure(sum[k] == &ga[k] + &gb[k] && prod[k] == &ga[k] * &gb[k], || {
                    format!("sample {i} on {s}, component {k}")
                })?;
            }
        }
        Ok(format!("{samples} random pairs"))
    });
    r.run("witt", "F_n V_n is multiplication by n", || {
        let target = TruncationSet::big(6);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2, 3] {
            let source = target.quotient(n);
            let a: Vec<i64> = (0..source.len()).map(|_| rng.gen_range(-9..=9)).collect();
            let a = WittVector::from_i64(source, &a, CoefficientRing::Integers).unwrap();
            let fv = frobenius(&verschiebung(&a, n, &target).map_err(|e| e.to_string())?, n).map_err(|e| e.to_string())?;
            let lhs = ghost(&fv).unwrap();
            let rhs: Vec<BigInt> = ghost(&a).unwrap().iter().map(|w| w * BigInt::from(n)).collect();
            ensure(lhs == rhs, || format!("n = {n}"))?;
        }
        Ok("S = {1..6}, n = 2, 3".into())
    });
    let n_cyclic = if quick { 2 } else { 3 };
    r.run("witt", "W_n(F_p) is cyclic of order p^n", || {
        for p in [2, 3] {
            for n in 1..=n_cyclic {
                let g = additive_group_by_enumeration(&TruncationSet::p_typical(p, n), p).map_err(|e| e.to_string())?;
                ensure(g == FiniteAbelianGroup::cyclic(pow(p, n)), || format!("W_{n}(F_{p}) = {g}"))?;
            }
        }
        Ok(format!("p = 2, 3; n ≤ {n_cyclic}"))
    });
    let r_max = if quick { 50 } else { 200 };
    r.run("witt", "decomposition lengths sum to r", || {
        for p in [2, 3, 5, 7] {
            for rr in 1..=r_max {
                let total: u64 = big_witt_decomposition(rr, p).iter().map(|&(_, s)| s as u64).sum();
                ensure(total == rr, || format!("p = {p}, r = {rr}: {total}"))?;
            }
        }
        Ok(format!("r ≤ {r_max}"))
    });
}

fn homology_suite(r: &mut Runner<'_>, cfg: &RunConfig) -> Result<(), CliError> {
    let budget = cfg.bar_budget();
    let quick = r.scope.quick;
    let weights: Vec<usize> = match r.scope.weight {
        Some(m) => {
            if m > budget.max_weight {
                return Err(CliError::Budget(format!("weight {m} is above the configured cap {}", budget.max_weight)));
            }
            vec![m]
        }
        None => (1..=budget.max_weight.min(if quick { 2 } else { 3 })).collect(),
    };
    for &m in &weights {
        r.run("homology", &format!("B({m}) is ℤ in degrees {} and {}", 2 * m, 2 * m + 1), || {
            let h = homology_b(m, &budget).map_err(|e| e.to_string())?;
            ensure(m == 0 || matches_lemma(m, &h), || format!("{h:?}"))?;
            Ok(format!("{} degrees", h.len()))
        });
    }
    for &m in weights.iter().filter(|&&m| m <= if quick { 1 } else { 2 }) {
        r.run("homology", &format!("diagonal route agrees for m = {m}"), || {
            let a = homology_b_with(m, HomologyRoute::TotalComplex, &budget).map_err(|e| e.to_string())?;
            let b = homology_b_with(m, HomologyRoute::Diagonal, &budget).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{a:?} vs {b:?}"))?;
            Ok(String::new())
        });
        for p in r.primes(&[2, 3]) {
            r.run("homology", &format!("sd_{p} preserves homology for m = {m}"), || {
                let a = homology_b(m, &budget).map_err(|e| e.to_string())?;
                let b = subdivided_homology(m, p as usize, &budget).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("{a:?} vs {b:?}"))?;
                Ok(String::new())
            });
        }
    }
    let m_free = if quick { 4 } else { 6 };
    let primes = r.primes(&[2, 3]);
    r.run("homology", "C_p acts freely iff p ∤ m", || {
        for &p in &primes {
            for m in 1..=m_free {
                let free = check_free_action(m, p as usize);
                ensure(free == (m as u64 % p != 0), || format!("m = {m}, p = {p}: {free}"))?;
            }
        }
        Ok(format!("m ≤ {m_free}"))
    });
    r.run("homology", "Koszul complex resolves the ground ring", || {
        ensure(koszul_is_resolution(8), || "not exact".into())?;
        Ok(String::new())
    });
    Ok(())
}

fn ss_suite(r: &mut Runner<'_>) {
    let quick = r.scope.quick;
    let (v_max, deg_max, r_max) = if quick { (3, 60, 30) } else { (5, 200, 100) };
    let primes = r.primes(&[2, 3, 5]);
    r.run("ss", "survivor counts match the closed forms", || {
        let mut n = 0;
        for &p in &primes {
            for mprime in (1..=9).filter(|k| k % p != 0) {
                for v in 0..=v_max {
                    let m = p.pow(v) * mprime;
                    for mode in [Mode::Tate, Mode::HomotopyFixedPoints] {
                        let t = run_to_e_infinity(&e2_page(m, p, mode).unwrap(), 0..=deg_max);
                        for d in 0..=deg_max {
                            let want = expected_count(mode, m, p, d);
                            ensure(t.count(d) == want, || format!("{mode:?} m = {m} degree {d}"))?;
                        }
                        n += 1;
                    }
                }
            }
        }
        Ok(format!("{n} spectral sequences, v ≤ {v_max}, degrees ≤ {deg_max}"))
    });
    r.run("ss", "can is an isomorphism iff r < m", || {
        for &p in &primes {
            for mprime in (1..=9).filter(|k| k % p != 0) {
                for v in 0..=v_max {
                    let m = p.pow(v) * mprime;
                    for rr in 0..=r_max {
                        let got = can_comparison(m, p, rr).map_err(|e| e.to_string())?;
                        ensure(got == (rr < m as i64), || format!("m = {m}, r = {rr}"))?;
                    }
                }
            }
        }
        Ok(format!("r ≤ {r_max}"))
    });
}

fn tc_suite(r: &mut Runner<'_>) {
    let quick = r.scope.quick;
    let r_max = if quick { 20 } else { 100 };
    let primes = r.primes(&[2, 3, 5, 7]);
    r.run("tc", "K-groups equal the big Witt decomposition", || {
        for &p in &primes {
            for rr in 0..=r_max {
                let row = k_relative_row(2 * rr + 1, p).map_err(|e| format!("p = {p}, r = {rr}: {e}"))?;
                ensure(row.order() == pow(p, rr as u32), || format!("p = {p}, r = {rr}: order"))?;
                let even = tc_row(2 * rr, p).map_err(|e| e.to_string())?;
                ensure(even.group.is_trivial(), || format!("degree {}", 2 * rr))?;
            }
        }
        Ok(format!("r ≤ {r_max}"))
    });
    let (kr_max, draws) = if quick { (5, 2) } else { (8, 4) };
    let primes: Vec<u64> = r.primes(&[2, 3]);
    r.run("tc", "φ − can kernel is ℤ/p^s for any units", || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut enumerated = 0;
        for &p in &primes {
            for rr in 0..=kr_max {
                for mprime in (1..=rr + 1).filter(|k| k % p != 0) {
                    let s = s_parameter(mprime, rr, p).map_err(|e| e.to_string())?;
                    let want = FiniteAbelianGroup::cyclic(pow(p, s));
                    let mut choices = vec![UnitChoices::ones(12)];
                    for can_below in [CanBelowThreshold::Reduction, CanBelowThreshold::Zero] {
                        for _ in 0..draws {
                            let mut unit = || loop {
                                let u: u64 = rng.gen_range(1..1000);
                                if u % p != 0 {
                                    break BigInt::from(u);
                                }
                            };
                            let phi = (0..12).map(|_| unit()).collect();
                            let can = (0..12).map(|_| unit()).collect();
                            let phi_above = (0..12).map(|_| BigInt::from(rng.gen_range(0..100u64) * p)).collect();
                            choices.push(UnitChoices {
                                phi,
                                can,
                                phi_above,
                                can_below,
                            });
                        }
                    }
                    for units in &choices {
                        for vmax in [s + 1, s + 2] {
                            let a = phi_can_analysis(mprime, rr, p, vmax, units).map_err(|e| e.to_string())?;
                            let ctx = || format!("m′ = {mprime}, r = {rr}, p = {p}, V = {vmax}");
                            ensure(a.kernel == want, || format!("{}: kernel {}", ctx(), a.kernel))?;
                            ensure(a.cokernel.is_trivial(), || format!("{}: cokernel {}", ctx(), a.cokernel))?;
                            let (src, tgt) = (a.tower.source_orders(), a.tower.target_orders());
                            if let Some(k) = kernel_by_enumeration(&a.matrix, &src, &tgt, p, 1 << 12) {
                                ensure(k == a.kernel, || format!("{}: enumeration gives {k}", ctx()))?;
                                enumerated += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(format!("r ≤ {kr_max}; {enumerated} towers enumerated"))
    });
    r.run("tc", "Poincaré series of iterated THH", || {
        ensure(iterated_thh_series(40).matches(), || "series differ".into())?;
        Ok("to degree 40".into())
    });
}
