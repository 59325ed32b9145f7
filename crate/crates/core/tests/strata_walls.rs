mod common;

use common::mv;
use mukai_core::oracle::naive_walls;
use mukai_core::selftest::{strata_test_vectors, wall_oracle_vectors};
use mukai_core::strata::elliptic_low_codim_blocks;
use mukai_core::{
    candidate_walls, chamber_representative, enumerate_hn_types, is_general, support_locus_bounds, verify_min_codim,
    Case, MukaiVector, NSClass, StratumKind, SurfaceConfig, WallConfig,
};

#[test]
fn codimension_bounds_at_height_six() {
    let cfg = SurfaceConfig::default();
    let mut exceptional = 0;
    for v in strata_test_vectors() {
        let rep = verify_min_codim(&v, 6, &cfg).unwrap();
        assert!(rep.positive(), "{v}: {rep:?}");
        assert!(rep.pss_dichotomy(), "{v}: {rep:?}");
        if rep.exceptional {
            exceptional += 1;
            assert_eq!(rep.pss_min, Some(1), "{v}");
        }
    }
    assert!(exceptional >= 3);
}

#[test]
fn types_satisfy_bilinearity_and_case_a_cross_pairings() {
    let cfg = SurfaceConfig::default();
    for v in strata_test_vectors() {
        let case_a = verify_min_codim(&v, 0, &cfg).unwrap().case == Case::A;
        for kind in [StratumKind::HnSlope, StratumKind::HnSurface] {
            for t in enumerate_hn_types(&v, 6, kind, &cfg).unwrap() {
                let parts = t.surface_vectors();
                let mut ledger: i128 = parts.iter().map(MukaiVector::square).sum();
                for i in 0..parts.len() {
                    for j in i + 1..parts.len() {
                        let p = parts[i].pair(&parts[j]);
                        ledger += 2 * p;
                        if kind == StratumKind::HnSlope && case_a && v.r() >= 2 {
                            assert!(p >= 1, "{v}: {parts:?}");
                        }
                    }
                }
                assert_eq!(ledger, v.square(), "{v}: {parts:?}");
            }
        }
    }
}

#[test]
fn enumeration_examples() {
    let cfg = SurfaceConfig::default();
    assert!(enumerate_hn_types(&mv(2, NSClass::e2(), 0), 6, StratumKind::HnSlope, &cfg).unwrap().is_empty());
    let w = mv(2, NSClass::e2(), 0);
    // the leading block w + aϱ, a > 0, has square −4a: no sheaves, no stratum
    let types = enumerate_hn_types(&(2 * w), 4, StratumKind::HnSlope, &cfg).unwrap();
    assert!(types.is_empty());
    // isotropic w: semistable splittings are not counted as strata
    assert!(enumerate_hn_types(&(2 * w), 4, StratumKind::HnSurface, &cfg).unwrap().is_empty());
    let types = enumerate_hn_types(&(2 * mv(2, NSClass::e2(), -2)), 4, StratumKind::HnSlope, &cfg).unwrap();
    assert!(!types.is_empty());
    assert!(types.iter().all(|t| t.codim >= 1));
    let v = mv(2, NSClass::ZERO, -2);
    let types = enumerate_hn_types(&v, 4, StratumKind::HnSlope, &cfg).unwrap();
    let o = MukaiVector::structure_sheaf();
    assert!(types.iter().any(|t| t.surface_vectors() == vec![o, mv(1, NSClass::ZERO, -3)]));
    assert!(enumerate_hn_types(&v, -1, StratumKind::HnSlope, &cfg).is_err());
}

#[test]
fn fiber_blocks_of_codim_at_most_one() {
    assert_eq!(elliptic_low_codim_blocks(2, 1, 1).unwrap(), vec![(1, 1, 0), (1, 2, 0), (2, 1, 0)]);
}

#[test]
fn support_bounds_sweep() {
    for l2 in (2..=200).step_by(2) {
        let b = support_locus_bounds(l2).unwrap();
        assert!(b.codim_ok, "{l2}");
        assert_eq!(b.dim_total - b.dim_m1_bound, l2 / 2 + 1);
    }
    assert!(support_locus_bounds(3).is_err());
    assert!(support_locus_bounds(0).is_err());
}

#[test]
fn walls_match_oracle_and_chambers_are_general() {
    let cfg = WallConfig::default();
    for v in wall_oracle_vectors() {
        let walls = candidate_walls(&v, &cfg).unwrap();
        assert_eq!(walls, naive_walls(&v, &cfg).unwrap(), "{v}");
        let h = chamber_representative(&v, &cfg).unwrap();
        assert!(is_general(&h, &v, &cfg).unwrap(), "{v}: {h}");
    }
}

#[test]
fn wider_window_gives_more_walls() {
    let v = mv(2, NSClass::e2(), 0);
    let narrow = candidate_walls(&v, &WallConfig::default()).unwrap();
    let wide = candidate_walls(&v, &WallConfig { scale: 2, ..WallConfig::default() }).unwrap();
    assert!(narrow.iter().all(|w| wide.contains(w)));
    assert!(wide.len() > narrow.len());
    assert!(candidate_walls(&v, &WallConfig { scale: 0, ..WallConfig::default() }).is_err());
}
