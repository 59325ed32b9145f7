mod common;

use common::{e8_class, fix_parity, mukai_vector, mv, positive_rank_vector};
use mukai_core::lattice::e8_ball;
use mukai_core::mukai::{
    discriminant, discriminant_from_chern, divisibility_check, elliptic_decompose, elliptic_pairing_identity,
    isotropic_companion,
};
use mukai_core::{Int, MukaiVector, NSClass};
use num_rational::Ratio;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn pairing_is_integral_and_dual_isometric(v in mukai_vector(), w in mukai_vector()) {
        prop_assert_eq!((v.r() * w.s() + w.r() * v.s()).rem_euclid(2), 0);
        prop_assert_eq!(v.dual().pair(&w.dual()), v.pair(&w));
        prop_assert_eq!(v.pair(&w), w.pair(&v));
        let sum = v + w;
        prop_assert!(MukaiVector::new(sum.r(), sum.xi(), sum.s()).is_ok());
        let diff = v - w;
        prop_assert!(MukaiVector::new(diff.r(), diff.xi(), diff.s()).is_ok());
    }

    #[test]
    fn elliptic_pairing_identity_holds(
        (r0, d) in prop_oneof![Just((2, 1)), Just((2, -3)), Just((4, 1)), Just((4, 3)), Just((6, 5))],
        l1 in 1..=4 as Int, l2 in 1..=4 as Int,
        n1 in -6..=6 as Int, n2 in -6..=6 as Int,
        d1 in e8_class(3), d2 in e8_class(3),
        s1 in -12..=12 as Int, s2 in -12..=12 as Int,
    ) {
        let e1 = NSClass::e1();
        let e2 = NSClass::e2();
        let v1 = mv(l1 * r0, (l1 * d) * e2 + n1 * e1 + d1, fix_parity(l1 * r0, s1));
        let v2 = mv(l2 * r0, (l2 * d) * e2 + n2 * e1 + d2, fix_parity(l2 * r0, s2));
        let a = elliptic_decompose(&v1, r0, d).unwrap();
        let b = elliptic_decompose(&v2, r0, d).unwrap();
        prop_assert_eq!(a.recompose(), v1);
        prop_assert_eq!((a.l, a.n, a.delta), (l1, n1, d1));
        let (lhs, rhs) = elliptic_pairing_identity(&a, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn discriminant_matches_chern_character(v in positive_rank_vector()) {
        prop_assert_eq!(Ratio::from_integer(discriminant(&v).unwrap()), discriminant_from_chern(&v));
    }

    #[test]
    fn companion_is_primitive_isotropic_on_the_ray(r0 in 1..=8 as Int, xi in common::ns_class(3)) {
        let xi = xi.numerical();
        prop_assume!(num_integer::gcd(r0, xi.content()) == 1);
        let w = isotropic_companion(r0, &xi).unwrap();
        prop_assert_eq!(w.square(), 0);
        prop_assert!(w.is_primitive());
        let l0 = w.r() / r0;
        prop_assert!(l0 == 1 || l0 == 2 || l0 <= 2 * r0);
        prop_assert_eq!(w.xi(), l0 * xi);
    }
}

/// `r0 | ⟨u, w⟩` for every `u = (r, x e2 + y e1 + z α_k, s)` with all
/// coefficients of size at most 6.
#[test]
fn divisibility_exhaustive_at_height_six() {
    let h: Int = 6;
    let mut count = 0;
    for k in 1..=8 {
        for r in 1..=h {
            for x in -h..=h {
                for y in -h..=h {
                    for z in -h..=h {
                        let xi = x * NSClass::e2() + y * NSClass::e1() + z * NSClass::root(k);
                        let l = num_integer::gcd(r, xi.content());
                        let w = isotropic_companion(r / l, &xi.div_exact(l).unwrap()).unwrap();
                        for s in -h..=h {
                            if let Ok(u) = MukaiVector::new(r, xi, s) {
                                assert!(divisibility_check(&u, &w).unwrap(), "{} ∤ ⟨{u}, {w}⟩", r / l);
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(count > 600_000);
}

/// Primitive `ℓ = 2` members of the `(2, 1)` family have `⟨v^2⟩ ≡ 0 mod 8`.
#[test]
fn ell_two_squares_are_divisible_by_eight() {
    let mut found = 0;
    for l in 1..=4 {
        for n in -4..=4 {
            for (_, y) in e8_ball(4) {
                let delta = 2 * NSClass::from_u_e8(0, 0, &y);
                for s in -8..=8 {
                    let Ok(v) = MukaiVector::new(2 * l, l * NSClass::e2() + n * NSClass::e1() + delta, s) else { continue };
                    if v.ell() == 2 && v.is_primitive() {
                        found += 1;
                        assert!(l % 2 == 0 && n % 2 == 0 && s % 2 == 0, "{v}");
                        assert_eq!(v.square() % 8, 0, "{v}");
                    }
                }
            }
        }
    }
    assert!(found > 1000);
}

#[test]
fn discriminant_examples() {
    assert_eq!(discriminant(&MukaiVector::structure_sheaf()).unwrap(), 0);
    assert_eq!(discriminant(&mv(2, NSClass::ZERO, -2)).unwrap(), 8);
    assert_eq!(discriminant(&mv(2, NSClass::e2(), 0)).unwrap(), 4);
}
