mod common;

use common::ns_class;
use mukai_core::lattice::{enumerate_norm_range, gram_rows, LinearConstraint};
use mukai_core::oracle::e8_standard_vectors;
use mukai_core::{Int, NSClass};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn pairing_is_symmetric_and_bilinear(x in ns_class(5), y in ns_class(5), z in ns_class(5), a in -5..=5 as Int) {
        prop_assert_eq!(x.pair(&y), y.pair(&x));
        prop_assert_eq!((a * x + y).pair(&z), a * x.pair(&z) + y.pair(&z));
    }

    #[test]
    fn squares_are_even(x in ns_class(6)) {
        prop_assert_eq!(x.square().rem_euclid(2), 0);
    }

    #[test]
    fn torsion_bit_does_not_pair(x in ns_class(4), y in ns_class(4)) {
        prop_assert_eq!(x.with_kx(true).pair(&y), x.with_kx(false).pair(&y));
    }

    #[test]
    fn text_and_json_round_trip(x in ns_class(50)) {
        prop_assert_eq!(x.to_string().parse::<NSClass>().unwrap(), x);
        let j = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<NSClass>(&j).unwrap(), x);
    }
}

#[test]
fn gram_matches_pairing_of_basis() {
    let g = gram_rows();
    for i in 0..10 {
        for j in 0..10 {
            assert_eq!(g[i][j], NSClass::basis(i).pair(&NSClass::basis(j)));
        }
    }
}

#[test]
fn minus_two_classes_orthogonal_to_h0_match_grid() {
    let h0 = NSClass::e1() + NSClass::e2();
    let fast = enumerate_norm_range(-2, -2, &[LinearConstraint::orthogonal_to(h0)], None).unwrap();
    // a e1 − a e2 + y has square −2a^2 − q(y); the E8 part comes from the standard model
    let mut grid = Vec::new();
    for a in -3..=3 {
        for (_, y) in e8_standard_vectors(4) {
            let x = NSClass::from_u_e8(a, -a, &y);
            if x.square() == -2 {
                grid.push(x);
            }
        }
    }
    let (mut fast, mut grid) = (fast, grid);
    fast.sort();
    grid.sort();
    assert_eq!(fast.len(), 242);
    assert_eq!(fast, grid);
}
