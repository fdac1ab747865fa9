use super::*;
use crate::simplicial::{verify_simplicial_identities, Simplex};
use crate::witt::CoefficientRing;
use alloc::vec;

type Bs = BarSimplex<Simplex>;

fn counts(d: &BarDiagonal<FinitePointedSimplicialSet>) -> Vec<usize> {
    d.cell_counts(usize::MAX).unwrap()
}

#[test]
fn bar_level_examples() {
    assert_eq!(bar_level(1, 0), vec![vec![1]]);
    assert_eq!(bar_level(1, 1), vec![vec![1, 0], vec![0, 1]]);
    assert_eq!(bar_level(2, 1), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    for (m, s) in [(3, 2), (4, 3), (2, 5)] {
        // C(s + m, m)
        let expected = (1..=m).fold(1, |acc, k| acc * (s + k) / k);
        assert_eq!(bar_level(m, s).len(), expected);
    }
}

#[test]
fn cyclic_identities() {
    let bar = sphere_bar(2);
    for s in 0..=3 {
        for q in 2..=4 {
            for y in bar.simplices(s, q) {
                // t^{s+1} = id
                let mut z = y.clone();
                for _ in 0..=s {
                    z = bar.rotate(&z);
                }
                assert_eq!(z, y);
                if s >= 1 {
                    // d_0 t = d_s, d_i t = t d_{i-1}
                    assert_eq!(bar.face_h(&bar.rotate(&y), 0), bar.face_h(&y, s));
                    for i in 1..=s {
                        assert_eq!(bar.face_h(&bar.rotate(&y), i), bar.rotate(&bar.face_h(&y, i - 1)));
                    }
                    for j in 0..=s {
                        for i in 0..j {
                            if s >= 2 {
                                let a = bar.face_h(&bar.face_h(&y, j), i);
                                let b = bar.face_h(&bar.face_h(&y, i), j - 1);
                                assert_eq!(a, b);
                            }
                        }
                    }
                }
                // s_0 t = t^2 s_s, s_i t = t s_{i-1}
                let r = bar.rotate(&y);
                assert_eq!(bar.degeneracy_h(&r, 0), bar.rotate(&bar.rotate(&bar.degeneracy_h(&y, s))));
                for i in 1..=s {
                    assert_eq!(bar.degeneracy_h(&r, i), bar.rotate(&bar.degeneracy_h(&y, i - 1)));
                }
                for i in 0..=s {
                    assert_eq!(bar.face_h(&bar.degeneracy_h(&y, i), i), y);
                    assert_eq!(bar.face_h(&bar.degeneracy_h(&y, i), i + 1), y);
                }
                // horizontal and vertical operators commute
                for j in 0..=q {
                    let v = bar.face_v(&y, j);
                    assert_eq!(v.as_ref().map(|v| bar.rotate(v)), bar.face_v(&r, j));
                    if s >= 1 {
                        assert_eq!(
                            v.as_ref().map(|v| bar.face_h(v, 0)),
                            bar.face_v(&bar.face_h(&y, 0), j)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn faces_merge_blocks() {
    let bar = sphere_bar(2);
    let s2 = sphere_model();
    let cell = s2.cell(0);
    let y: Bs = BarSimplex {
        comp: vec![1, 0, 1],
        vdeg: 2,
        factors: vec![cell.clone(), cell.clone()],
    };
    assert_eq!(bar.face_h(&y, 0).comp, vec![1, 1]);
    assert_eq!(bar.face_h(&y, 2).comp, vec![2, 0]);
    assert_eq!(bar.degeneracy_h(&y, 1).comp, vec![1, 0, 0, 1]);
    assert_eq!(bar.rotate(&y).comp, vec![1, 1, 0]);
    assert_eq!(bar.face_v(&y, 0), None);
}

#[test]
fn diagonal_satisfies_simplicial_identities() {
    verify_simplicial_identities(&diagonal_realization(1), 4).unwrap();
    verify_simplicial_identities(&diagonal_realization(2), 3).unwrap();
    verify_simplicial_identities(&subdivide(1, 2).diagonal(), 3).unwrap();
    verify_simplicial_identities(&subdivide(2, 3).diagonal(), 2).unwrap();
}

#[test]
fn diagonal_cell_counts() {
    assert_eq!(counts(&diagonal_realization(0)), vec![1]);
    assert_eq!(counts(&diagonal_realization(1)), vec![0, 0, 3, 3]);
    assert_eq!(counts(&diagonal_realization(2)), vec![0, 0, 6, 72, 216, 240, 90]);
    // the enumeration agrees with filtering all simplices
    let d = diagonal_realization(2);
    for n in 0..=4 {
        let filtered = d.simplices(n).into_iter().filter(|y| !d.is_degenerate(y)).count();
        assert_eq!(filtered, d.nondegenerate(n).len(), "degree {n}");
    }
}

#[test]
fn cyclic_degrees_bounded_by_weight() {
    for m in 1..=3 {
        let bar = sphere_bar(m);
        for s in m + 1..=m + 3 {
            assert!(bar.bar_level(s).iter().all(|c| c[1..].contains(&0)), "m={m} s={s}");
        }
        assert!(bar.bar_level(m).iter().any(|c| !c[1..].contains(&0)));
    }
    let d = diagonal_realization(2);
    for n in 0..=6 {
        for y in d.nondegenerate(n) {
            let nonunit = y.comp[1..].iter().filter(|&&k| k > 0).count();
            assert!(nonunit <= 2);
        }
    }
}

#[test]
fn homology_of_weight_pieces() {
    let budget = Budget::default();
    assert_eq!(homology_b(0, &budget).unwrap(), vec![FiniteAbelianGroup::free(1)]);
    for m in 1..=3 {
        let h = homology_b(m, &budget).unwrap();
        assert!(matches_lemma(m, &h), "m={m}: {h:?}");
    }
}

#[test]
fn diagonal_and_total_complex_agree() {
    let budget = Budget::default();
    for m in 0..=2 {
        assert_eq!(
            homology_b_with(m, HomologyRoute::Diagonal, &budget).unwrap(),
            homology_b_with(m, HomologyRoute::TotalComplex, &budget).unwrap()
        );
    }
}

#[test]
fn total_complex_sizes() {
    let ranks = |m| total_complex(&sphere_model(), m, usize::MAX).unwrap().0.ranks().to_vec();
    assert_eq!(ranks(1), vec![0, 0, 1, 1]);
    assert_eq!(ranks(2), vec![0, 0, 1, 8, 19, 18, 6]);
    assert_eq!(ranks(3), vec![0, 0, 1, 27, 189, 595, 996, 924, 450, 90]);
}

#[test]
fn subdivision_has_same_homology() {
    let budget = Budget::default();
    for m in 1..=2 {
        let h = homology_b(m, &budget).unwrap();
        for p in [2, 3] {
            assert_eq!(subdivided_homology(m, p, &budget).unwrap(), h, "m={m} p={p}");
        }
    }
}

#[test]
fn subdivision_levels_and_action() {
    let sd = subdivide(1, 2);
    assert_eq!(sd.bar_index(0), 1);
    assert_eq!(sd.bar_index(2), 5);
    assert_eq!(sd.level(0), vec![vec![1, 0], vec![0, 1]]);
    let cell = sphere_model().cell(0);
    let y: Bs = BarSimplex {
        comp: vec![1, 0],
        vdeg: 2,
        factors: vec![cell],
    };
    assert_eq!(sd.act(&y).comp, vec![0, 1]);
}

#[test]
fn action_commutes_with_structure_maps() {
    for (m, p) in [(2, 2), (2, 3), (3, 3)] {
        let sd = subdivide(m, p);
        let bar = sd.bar().clone();
        for k in 0..=2 {
            for q in 2..=3 {
                for y in sd.simplices(k, q) {
                    let g = sd.act(&y);
                    let mut z = y.clone();
                    for _ in 0..p {
                        z = sd.act(&z);
                    }
                    assert_eq!(z, y);
                    for i in 0..=k {
                        assert_eq!(sd.act(&sd.degeneracy_h(&y, i)), sd.degeneracy_h(&g, i));
                        if k >= 1 {
                            assert_eq!(sd.act(&sd.face_h(&y, i)), sd.face_h(&g, i));
                        }
                    }
                    for j in 0..=q {
                        assert_eq!(bar.face_v(&y, j).map(|v| sd.act(&v)), bar.face_v(&g, j));
                    }
                }
            }
        }
    }
}

#[test]
fn free_action_iff_prime_does_not_divide_weight() {
    assert!(check_free_action(1, 2));
    assert!(!check_free_action(2, 2));
    assert!(check_free_action(3, 2));
    for p in [2, 3] {
        for m in 1..=6 {
            assert_eq!(check_free_action(m, p), m % p != 0, "m={m} p={p}");
        }
    }
}

#[test]
fn budget_errors() {
    let budget = Budget::default();
    assert_eq!(homology_b(4, &budget), Err(BarError::WeightOverCap { m: 4, cap: 3 }));
    let tight = Budget {
        max_weight: 4,
        max_cells: 100,
    };
    assert_eq!(homology_b(3, &tight), Err(BarError::BudgetExceeded { degree: 4, limit: 100 }));
    assert!(matches!(
        homology_b_with(2, HomologyRoute::Diagonal, &tight),
        Err(BarError::BudgetExceeded { degree: 4, .. })
    ));
}

#[test]
fn free_monoid_levels() {
    let u = GradedPointedMonoid::free_on(sphere_model());
    for l in 0..=2 {
        for l2 in 0..=2 {
            assert!(u.product_is_isomorphism(l, l2, 6), "l={l} l'={l2}");
        }
    }
    assert_eq!(u.level(0).nondegenerate(0).len(), 1);
}

#[test]
fn koszul_examples() {
    let z = koszul_tor(CoefficientRing::Integers);
    assert_eq!(
        z,
        vec![
            TorGroup { homological: 0, internal: 0, group: FiniteAbelianGroup::free(1) },
            TorGroup { homological: 1, internal: 2, group: FiniteAbelianGroup::free(1) },
        ]
    );
    for p in [2, 3, 5] {
        let f = koszul_tor(CoefficientRing::PrimeField(p));
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|t| t.group == FiniteAbelianGroup::cyclic(p)));
        assert!(f.iter().all(|t| t.homological < 2));
    }
    assert!(koszul_is_resolution(10));
}
