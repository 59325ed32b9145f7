mod common;

use common::{minus1_bases, minus2_bases, mukai_vector, mv, ns_class, rigid};
use mukai_core::transforms::{
    canonical_reduce, find_pq, invariants_of, psi_image, psi_invariants, reflect, reflect_explicit, reflection_part,
    ReflectionKind, ReflectionSpec,
};
use mukai_core::{Int, MukaiVector, NSClass};
use proptest::prelude::*;

fn check_reflection(v0: MukaiVector, v: MukaiVector, w: MukaiVector) -> Result<(), TestCaseError> {
    let spec = ReflectionSpec::new(v0).unwrap();
    let (rv, rw) = (reflect(&spec, &v), reflect(&spec, &w));
    prop_assert_eq!(rv.pair(&rw), v.pair(&w));
    prop_assert_eq!(reflect(&spec.dual(), &rv), v);
    let u = v0.dual();
    prop_assert_eq!(reflection_part(spec.kind, &u, &reflection_part(spec.kind, &u, &v)), v);
    prop_assert_eq!(v.dual().dual(), v);
    if spec.is_self_dual() {
        prop_assert_eq!(reflect(&spec, &rv), v);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn minus1_reflection_is_an_isometry_with_inverse(v0 in rigid(minus1_bases()), v in mukai_vector(), w in mukai_vector()) {
        prop_assert_eq!(v0.square(), -1);
        check_reflection(v0, v, w)?;
    }

    #[test]
    fn minus2_reflection_is_an_isometry_with_inverse(v0 in rigid(minus2_bases()), v in mukai_vector(), w in mukai_vector()) {
        prop_assert_eq!(v0.square(), -2);
        check_reflection(v0, v, w)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn self_dual_reflections_are_involutions(k in 1..=8usize, v in mukai_vector()) {
        for v0 in [MukaiVector::structure_sheaf(), mv(0, NSClass::root(k), 0)] {
            let spec = ReflectionSpec::new(v0).unwrap();
            prop_assert!(spec.is_self_dual());
            prop_assert_eq!(reflect(&spec, &reflect(&spec, &v)), v);
        }
    }

    #[test]
    fn psi_on_the_sublattice_matches_invariants(r in -6..=6 as Int, beta in -8..=8 as Int, s in -8..=8 as Int) {
        let v = mv(r, beta * NSClass::e1(), common::fix_parity(r, s));
        let img = psi_image(&v);
        let pv = img.vector.unwrap();
        prop_assert_eq!(invariants_of(&pv), psi_invariants(&v));
        prop_assert_eq!(invariants_of(&pv).chi, invariants_of(&v).chi);
        prop_assert_eq!(pv.square(), v.square());
    }

    #[test]
    fn psi_is_undefined_off_the_sublattice(v in mukai_vector()) {
        let on = !v.xi().kx && v.xi().coords.iter().skip(1).all(|&c| c == 0);
        prop_assert_eq!(psi_image(&v).vector.is_some(), on);
    }

    #[test]
    fn reduction_preserves_square_and_ell(half in 1..=4 as Int, xi in ns_class(3), t in 0..=20 as Int) {
        let r = 2 * half;
        // s ≤ (ξ^2)/r keeps ⟨v^2⟩ = (ξ^2) − r s nonnegative
        let mut s = xi.square().div_euclid(r) - t;
        if s % 2 != 0 {
            s -= 1;
        }
        let v = mv(r, xi, s);
        prop_assert!(v.square() >= 0);
        prop_assume!(v.is_primitive());
        prop_assume!(v.ell() == 1 || v.square() % 8 == 0);
        let red = canonical_reduce(&v, None).unwrap();
        prop_assert_eq!(red.output.square(), v.square());
        prop_assert_eq!(red.output.ell(), v.ell());
        prop_assert_eq!(red.output.r(), 2 * v.ell());
        if v.ell() == 1 {
            let l_out = red.l_out.unwrap();
            prop_assert!((l_out - v.xi()).div_exact(2).is_some());
        }
    }
}

#[test]
fn explicit_formula_on_the_positive_range() {
    let mut checked = 0;
    for v0 in minus1_bases().into_iter().chain(minus2_bases()) {
        let spec = ReflectionSpec::new(v0).unwrap();
        let c = match spec.kind {
            ReflectionKind::Minus1 => 2,
            ReflectionKind::Minus2 => 1,
        };
        for l in 1..=10 {
            for b in 1..=10 {
                if c * b * v0.r() - l > 0 {
                    let src = l * v0 - b * MukaiVector::rho();
                    assert_eq!(reflect(&spec, &src), reflect_explicit(&spec, l, b), "v0 = {v0}, l = {l}, b = {b}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn psi_generator_images() {
    let e1 = NSClass::e1();
    assert_eq!(psi_image(&mv(0, NSClass::ZERO, 2)).vector, Some(mv(0, 2 * e1, 2)));
    assert_eq!(psi_image(&mv(0, 4 * e1, 2)).vector, Some(mv(0, -2 * e1, 2)));
    assert_eq!(psi_image(&mv(0, e1, 0)).vector, Some(mv(0, -e1, 0)));
    assert_eq!(psi_image(&MukaiVector::structure_sheaf()).vector, Some(MukaiVector::structure_sheaf()));
}

#[test]
fn find_pq_is_the_unique_solution() {
    for r in 2..=60 as Int {
        for d in -60..=60 as Int {
            if num_integer::gcd(r, d) != 1 {
                assert!(find_pq(r, d).is_err());
                continue;
            }
            let (p, q, _) = find_pq(r, d).unwrap();
            assert_eq!(d * p - r * q, 1);
            assert!(0 < p && p < r);
            let all: Vec<Int> = (1..r).filter(|x| (d * x - 1).rem_euclid(r) == 0).collect();
            assert_eq!(all, vec![p]);
        }
    }
}
