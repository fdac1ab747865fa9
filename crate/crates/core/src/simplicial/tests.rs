use super::*;
use crate::linalg::FiniteAbelianGroup;
use alloc::vec;
use alloc::vec::Vec;

fn concentrated(h: &[FiniteAbelianGroup], degrees: &[usize]) -> bool {
    h.iter().enumerate().all(|(n, g)| {
        if degrees.contains(&n) {
            *g == FiniteAbelianGroup::free(1)
        } else {
            g.is_trivial()
        }
    })
}

#[test]
fn surjection_counts() {
    assert_eq!(monotone_surjections(3, 2).len(), 3);
    assert_eq!(monotone_surjections(4, 2).len(), 6);
    assert_eq!(monotone_surjections(2, 2), vec![vec![0, 1, 2]]);
    assert!(monotone_surjections(1, 2).is_empty());
}

#[test]
fn sphere_levels() {
    let s2 = sphere_model();
    // non-basepoint simplices: none in degrees 0, 1; the cell in degree 2
    assert!(s2.simplices(0).is_empty());
    assert!(s2.simplices(1).is_empty());
    assert_eq!(s2.simplices(2), vec![s2.cell(0)]);
    assert_eq!(s2.simplices(3).len(), 3);
    verify_simplicial_identities(&s2, 5).unwrap();
    let h = reduced_homology(&s2, usize::MAX).unwrap();
    assert!(concentrated(&h, &[2]));
}

#[test]
fn smash_unit_and_point() {
    let s2 = sphere_model();
    let with_unit = smash(&s2, &FinitePointedSimplicialSet::s0());
    assert_eq!(with_unit.cell_counts(), s2.cell_counts());
    assert!(concentrated(&reduced_homology(&with_unit, usize::MAX).unwrap(), &[2]));
    let with_point = smash(&s2, &FinitePointedSimplicialSet::point());
    assert_eq!(with_point.num_generators(), 0);
}

#[test]
fn smash_of_spheres() {
    let s2 = sphere_model();
    let s4 = smash(&s2, &s2);
    // (2,2)-shuffles in degree 4, one shared degeneracy slot each in degree 3
    assert_eq!(s4.cell_counts(), vec![0, 0, 1, 6, 6]);
    verify_simplicial_identities(&s4, 5).unwrap();
    assert!(concentrated(&reduced_homology(&s4, usize::MAX).unwrap(), &[4]));
    let s6 = smash(&s4, &s2);
    assert!(concentrated(&reduced_homology(&s6, usize::MAX).unwrap(), &[6]));
}

#[test]
fn smash_power_matches_iterated_smash() {
    let s2 = sphere_model();
    for l in 0..=3 {
        let power = SmashPower::new(s2.clone(), l);
        let mut iterated = FinitePointedSimplicialSet::s0();
        for _ in 0..l {
            iterated = smash(&iterated, &s2);
        }
        let counts: Vec<usize> = (0..=power.dimension()).map(|n| power.nondegenerate(n).len()).collect();
        let mut expected = iterated.cell_counts();
        expected.resize(counts.len(), 0);
        assert_eq!(counts, expected, "l = {l}");
        let h = reduced_homology(&power, usize::MAX).unwrap();
        assert!(concentrated(&h, &[2 * l]), "l = {l}");
    }
    verify_simplicial_identities(&SmashPower::new(s2, 2), 5).unwrap();
}

#[test]
fn budget_is_enforced() {
    let p = SmashPower::new(sphere_model(), 2);
    assert_eq!(
        reduced_homology(&p, 3),
        Err(SimplicialError::BudgetExceeded { degree: 3, limit: 3 })
    );
}

#[test]
fn rejects_bad_generators() {
    let mut x = FinitePointedSimplicialSet::default();
    assert!(x.add_generator(1, vec![None]).is_err());
    let v = x.add_generator(0, vec![]).unwrap();
    let e = x.add_generator(1, vec![Some(x.cell(v)), None]).unwrap();
    // a 2-simplex whose faces violate d_0 d_1 = d_0 d_0
    assert!(x.add_generator(2, vec![Some(x.cell(e)), None, None]).is_err());
}
