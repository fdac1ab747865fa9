//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use cyclobar_core::bar::{check_free_action, homology_b, matches_lemma, subdivided_homology, Budget};
use cyclobar_core::linalg::FiniteAbelianGroup;
use cyclobar_core::ss::{can_comparison, e2_page, expected_count, run_to_e_infinity, Mode};
use cyclobar_core::tc::{
    iterated_thh_series, k_relative_row, kernel_by_enumeration, phi_can_analysis, s_parameter, tc_row,
    CanBelowThreshold, UnitChoices,
};
use cyclobar_core::witt::{
    additive_group_by_enumeration, big_witt_decomposition, ghost, structure_polynomials, witt_add, witt_mul,
    CoefficientRing, TruncationSet, WittOp, WittVector,
};
use cyclobar_core::BigInt;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn sample<S: Strategy>(runner: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(runner).expect("strategy").current()
}

fn homology_of_bar() -> Check {
    let budget = Budget::default();
    for m in 1..=3 {
        let h = homology_b(m, &budget).map_err(|e| format!("m={m}: {e}"))?;
        ensure(matches_lemma(m, &h), || format!("m={m}: {h:?}"))?;
    }
    Ok(())
}

const GRID_PRIMES: [u64; 3] = [2, 3, 5];

fn spectral_sequence_closed_forms() -> Check {
    for p in GRID_PRIMES {
        for mprime in (1..=9).filter(|k| k % p != 0) {
            for v in 0..=5 {
                let m = p.pow(v) * mprime;
                for mode in [Mode::Tate, Mode::HomotopyFixedPoints] {
                    let t = run_to_e_infinity(&e2_page(m, p, mode).unwrap(), 0..=200);
                    for d in 0..=200 {
                        let want = expected_count(mode, m, p, d);
                        ensure(t.count(d) == want, || {
                            format!("{mode:?} m={m} p={p} degree {d}: {} ≠ {want}", t.count(d))
                        })?;
                        if d % 2 == 1 {
                            let r = (d - 1) as u64 / 2;
                            let closed = match mode {
                                Mode::Tate => v as usize,
                                Mode::HomotopyFixedPoints if m <= r => v as usize + 1,
                                Mode::HomotopyFixedPoints => v as usize,
                            };
                            ensure(want == closed, || format!("closed form at m={m} p={p} degree {d}"))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn can_threshold() -> Check {
    for p in GRID_PRIMES {
        for mprime in (1..=9).filter(|k| k % p != 0) {
            for v in 0..=5 {
                let m = p.pow(v) * mprime;
                for r in 0..=100i64 {
                    let got = can_comparison(m, p, r).map_err(|e| e.to_string())?;
                    ensure(got == (r < m as i64), || format!("m={m} p={p} r={r}: {got}"))?;
                }
            }
        }
    }
    Ok(())
}

fn k_groups() -> Check {
    for p in [2, 3, 5, 7] {
        for r in 0..=100u64 {
            let row = k_relative_row(2 * r + 1, p).map_err(|e| format!("p={p} r={r}: {e}"))?;
            let total: u64 = row.entries.iter().map(|&(_, s)| s as u64).sum();
            ensure(total == r, || format!("p={p} r={r}: Σs = {total}"))?;
            ensure(row.order() == pow(p, r as u32), || format!("p={p} r={r}: order"))?;
            ensure(row.entries == big_witt_decomposition(r, p), || format!("p={p} r={r}: entries"))?;
            let even = tc_row(2 * r, p).map_err(|e| e.to_string())?;
            ensure(even.group.is_trivial(), || format!("p={p} degree {}: nonzero", 2 * r))?;
        }
    }
    Ok(())
}

fn phi_can_kernels() -> Check {
    let mut runner = TestRunner::deterministic();
    let mut enumerated = 0;
    for p in [2u64, 3] {
        let unit = (1u64..1000).prop_filter("unit", move |u| u % p != 0).prop_map(BigInt::from);
        let mult = (0u64..100).prop_map(move |x| BigInt::from(x * p));
        for r in 0..=8u64 {
            for mprime in (1..=r + 1).filter(|k| k % p != 0) {
                let s = s_parameter(mprime, r, p).unwrap();
                let want = FiniteAbelianGroup::cyclic(pow(p, s));
                let mut choices = vec![UnitChoices::ones(12)];
                for variant in [CanBelowThreshold::Reduction, CanBelowThreshold::Zero] {
                    for _ in 0..4 {
                        choices.push(UnitChoices {
                            phi: (0..12).map(|_| sample(&mut runner, &unit)).collect(),
                            can: (0..12).map(|_| sample(&mut runner, &unit)).collect(),
                            phi_above: (0..12).map(|_| sample(&mut runner, &mult)).collect(),
                            can_below: variant,
                        });
                    }
                }
                for units in &choices {
                    let mut kernels = Vec::new();
                    for vmax in [s + 1, s + 2] {
                        let a = phi_can_analysis(mprime, r, p, vmax, units).map_err(|e| e.to_string())?;
                        let ctx = || format!("m′={mprime} r={r} p={p} V={vmax}");
                        ensure(a.kernel == want, || format!("{}: kernel {}", ctx(), a.kernel))?;
                        ensure(a.cokernel.is_trivial(), || format!("{}: cokernel {}", ctx(), a.cokernel))?;
                        let (src, tgt) = (a.tower.source_orders(), a.tower.target_orders());
                        if let Some(k) = kernel_by_enumeration(&a.matrix, &src, &tgt, p, 1 << 12) {
                            ensure(k == a.kernel, || format!("{}: enumeration gives {k}", ctx()))?;
                            enumerated += 1;
                        }
                        kernels.push(a.kernel);
                    }
                    ensure(kernels[0] == kernels[1], || format!("m′={mprime} r={r}: unstable under V+1"))?;
                }
            }
        }
    }
    ensure(enumerated > 0, || "no tower small enough to enumerate".into())
}

fn witt_arithmetic() -> Check {
    let mut sets = vec![TruncationSet::big(8)];
    for p in [2, 3] {
        for n in 1..=4 {
            sets.push(TruncationSet::p_typical(p, n));
        }
    }
    for s in &sets {
        for op in [WittOp::Add, WittOp::Mul] {
            structure_polynomials(s, op)
                .and_then(|sp| sp.verify_ghost_equations())
                .map_err(|e| format!("{s} {}: {e}", op.name()))?;
        }
    }
    let mut runner = TestRunner::deterministic();
    let set_choice = proptest::sample::select(sets.clone());
    let coeff = -20i64..=20;
    for i in 0..500 {
        let s = sample(&mut runner, &set_choice);
        let a: Vec<i64> = (0..s.len()).map(|_| sample(&mut runner, &coeff)).collect();
        let b: Vec<i64> = (0..s.len()).map(|_| sample(&mut runner, &coeff)).collect();
        let a = WittVector::from_i64(s.clone(), &a, CoefficientRing::Integers).unwrap();
        let b = WittVector::from_i64(s.clone(), &b, CoefficientRing::Integers).unwrap();
        let (ga, gb) = (ghost(&a).unwrap(), ghost(&b).unwrap());
        let sum = ghost(&witt_add(&a, &b).unwrap()).unwrap();
        let prod = ghost(&witt_mul(&a, &b).unwrap()).unwrap();
        for k in 0..ga.len() {
            ensure(sum[k] == &ga[k] + &gb[k] && prod[k] == &ga[k] * &gb[k], || {
                format!("sample {i} on {s}: ghost not multiplicative/additive at {k}")
            })?;
        }
    }
    for p in [2, 3] {
        for n in 1..=3 {
            let g = additive_group_by_enumeration(&TruncationSet::p_typical(p, n), p).map_err(|e| e.to_string())?;
            ensure(g == FiniteAbelianGroup::cyclic(pow(p, n)), || format!("W_{n}(F_{p}) = {g}"))?;
        }
    }
    Ok(())
}

fn freeness_and_subdivision() -> Check {
    for p in [2, 3] {
        for m in 1..=6 {
            let free = check_free_action(m, p);
            ensure(free == (m % p != 0), || format!("m={m} p={p}: free = {free}"))?;
        }
    }
    let budget = Budget::default();
    for p in [2, 3] {
        for m in 1..=2 {
            let sd = subdivided_homology(m, p, &budget).map_err(|e| e.to_string())?;
            let h = homology_b(m, &budget).map_err(|e| e.to_string())?;
            ensure(sd == h, || format!("m={m} p={p}: {sd:?} vs {h:?}"))?;
        }
    }
    Ok(())
}

fn poincare_series() -> Check {
    let c = iterated_thh_series(40);
    ensure(c.matches(), || format!("{:?}", c))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("homology of B(m) for m = 1..3", homology_of_bar),
        ("spectral sequence survivors match the closed forms", spectral_sequence_closed_forms),
        ("can is an isomorphism iff r < m", can_threshold),
        ("K-groups equal the big Witt decomposition for r ≤ 100", k_groups),
        ("φ − can kernel is ℤ/p^s", phi_can_kernels),
        ("Witt vector arithmetic", witt_arithmetic),
        ("free cyclic action and subdivision", freeness_and_subdivision),
        ("Poincaré series of iterated THH", poincare_series),
    ];
    let mut failed = false;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {} {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed = true;
                println!("FAIL {} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
