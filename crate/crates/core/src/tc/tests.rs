use super::*;
use alloc::vec;
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn s_parameter_examples() {
    assert_eq!(s_parameter(1, 3, 2), Ok(2));
    assert_eq!(s_parameter(3, 3, 2), Ok(1));
    assert_eq!(s_parameter(5, 3, 2), Ok(0));
    assert_eq!(s_parameter(2, 3, 2), Err(TcError::DivisibleWeight { mprime: 2, p: 2 }));
    assert_eq!(s_parameter(1, u64::MAX, 2), Ok(64));
}

#[test]
fn tower_lengths() {
    let t = WeightTower::from_spectral_sequences(1, 3, 2, 3).unwrap();
    // weights 1, 2, 4, 8 in degree 7
    assert_eq!(t.tc_minus, vec![1, 2, 2, 3]);
    assert_eq!(t.tp, vec![0, 1, 2, 3]);
    assert!(t.below_threshold(1) && !t.below_threshold(2));
    assert_eq!(
        WeightTower::from_spectral_sequences(1, 3, 2, 1),
        Err(TcError::TruncationTooSmall { vmax: 1, needed: 2 })
    );
}

#[test]
fn tc_group_examples() {
    let row = tc_groups(3, 2).unwrap();
    assert_eq!(row.entries, vec![(1, 2), (3, 1)]);
    assert_eq!(row.group, FiniteAbelianGroup::from_orders(ints(&[4, 2])));
    assert_eq!(row.degree, 7);
    assert_eq!(row.factor_orders(), ints(&[4, 2]));
    assert!(tc_groups(0, 2).unwrap().entries.is_empty());
    assert!(tc_groups(0, 2).unwrap().group.is_trivial());
    assert_eq!(tc_groups(2, 3).unwrap().entries, vec![(1, 1), (2, 1)]);
    assert!(tc_row(8, 5).unwrap().group.is_trivial());
    assert_eq!(tc_groups(3, 4), Err(TcError::NotPrime(4)));
}

#[test]
fn k_relative_agrees_with_decomposition() {
    for p in [2, 3, 5] {
        for r in 0..=20 {
            let row = k_relative_row(2 * r + 1, p).unwrap();
            assert_eq!(row.entries, crate::witt::big_witt_decomposition(r, p));
            assert_eq!(row.order(), num_traits::pow(BigInt::from(p), r as usize));
        }
    }
    assert_eq!(k_relative(6, 3).unwrap(), FiniteAbelianGroup::from_orders(ints(&[9, 9, 3, 3])));
}

#[test]
fn phi_can_kernel_examples() {
    let ones = UnitChoices::ones(8);
    assert_eq!(phi_can_kernel(1, 3, 2, &ones).unwrap(), FiniteAbelianGroup::cyclic(4));
    assert!(phi_can_kernel(5, 3, 2, &ones).unwrap().is_trivial());
    assert_eq!(phi_can_kernel(1, 2, 3, &ones).unwrap(), FiniteAbelianGroup::cyclic(3));
    let units = UnitChoices {
        phi: ints(&[2, 5, 7, 4, 1, 1, 1, 1]),
        can: ints(&[4, 8, 2, 1, 5, 1, 1, 1]),
        phi_above: vec![BigInt::zero(); 8],
        can_below: CanBelowThreshold::Reduction,
    };
    assert_eq!(phi_can_kernel(1, 2, 3, &units).unwrap(), FiniteAbelianGroup::cyclic(3));
    assert!(matches!(
        phi_can_kernel(1, 2, 3, &UnitChoices { phi: ints(&[3; 8]), ..ones.clone() }),
        Err(TcError::NotAUnit { .. })
    ));
    assert!(matches!(
        phi_can_analysis(1, 3, 2, 1, &ones),
        Err(TcError::TruncationTooSmall { vmax: 1, needed: 2 })
    ));
}

#[test]
fn section_generates_kernel() {
    let a = phi_can_analysis(1, 5, 2, 4, &UnitChoices::ones(8)).unwrap();
    // s = 3: x_2 = 1, x_1 = x_0 = 1 by descent, x_3 = 1 by lifting
    assert_eq!(a.section, ints(&[1, 1, 1, 1, 0]));
    assert_eq!(a.kernel, FiniteAbelianGroup::cyclic(8));
    assert!(a.cokernel.is_trivial());
}

#[test]
fn enumeration_agrees_on_small_towers() {
    let mut checked = 0;
    for p in [2u64, 3] {
        for r in 1..=8 {
            for mprime in (1..=r + 1).filter(|k| k % p != 0) {
                let s = s_parameter(mprime, r, p).unwrap();
                for variant in [CanBelowThreshold::Reduction, CanBelowThreshold::Zero] {
                    let units = UnitChoices {
                        can_below: variant,
                        ..UnitChoices::ones(8)
                    };
                    let a = phi_can_analysis(mprime, r, p, s + 1, &units).unwrap();
                    let brute = kernel_by_enumeration(
                        &a.matrix,
                        &a.tower.source_orders(),
                        &a.tower.target_orders(),
                        p,
                        1 << 12,
                    );
                    if let Some(k) = brute {
                        assert_eq!(k, a.kernel, "m′={mprime} r={r} p={p}");
                        checked += 1;
                    }
                    assert_eq!(a.kernel, FiniteAbelianGroup::cyclic(num_traits::pow(BigInt::from(p), s as usize)));
                }
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn thh_series() {
    let c = iterated_thh_series(5);
    assert_eq!(c.closed_form, ints(&[1, 0, 2, 1, 3, 2]));
    assert!(c.matches());
    assert!(iterated_thh_series(40).matches());
    assert!(iterated_thh_series(0).matches());
}

fn unit(p: u64) -> impl Strategy<Value = BigInt> {
    (1u64..1000)
        .prop_filter("unit", move |u| u % p != 0)
        .prop_map(BigInt::from)
}

fn choices(p: u64) -> impl Strategy<Value = UnitChoices> {
    (
        proptest::collection::vec(unit(p), 8),
        proptest::collection::vec(unit(p), 8),
        proptest::collection::vec((0u64..50).prop_map(move |x| BigInt::from(x * p)), 8),
        prop_oneof![Just(CanBelowThreshold::Reduction), Just(CanBelowThreshold::Zero)],
    )
        .prop_map(|(phi, can, phi_above, can_below)| UnitChoices {
            phi,
            can,
            phi_above,
            can_below,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_independent_of_units(
        (p, units) in prop_oneof![Just(2u64), Just(3u64)].prop_flat_map(|p| (Just(p), choices(p))),
        r in 1u64..=8,
        mprime in 1u64..=9,
        guard in 1u32..=2,
    ) {
        prop_assume!(mprime % p != 0);
        let s = s_parameter(mprime, r, p).unwrap();
        let a = phi_can_analysis(mprime, r, p, s + guard, &units).unwrap();
        prop_assert_eq!(a.kernel.clone(), FiniteAbelianGroup::cyclic(num_traits::pow(BigInt::from(p), s as usize)));
        prop_assert!(a.cokernel.is_trivial());
        if let Some(k) = kernel_by_enumeration(&a.matrix, &a.tower.source_orders(), &a.tower.target_orders(), p, 1 << 12) {
            prop_assert_eq!(k, a.kernel);
        }
    }
}
