//! Fixed inputs shared by the criterion benchmarks.

use mukai_core::{Int, MukaiVector, NSClass, ReflectionSpec};

fn mv(r: Int, xi: NSClass, s: Int) -> MukaiVector {
    MukaiVector::new(r, xi, s).expect("parity holds by construction")
}

/// A pair of generic vectors for pairing and reflection kernels.
pub fn sample_pair() -> (MukaiVector, MukaiVector) {
    let v = mv(3, 2 * NSClass::e1() - NSClass::e2() + NSClass::root(4), 5);
    let w = mv(4, NSClass::e1() + 3 * NSClass::root(7), -2);
    (v, w)
}

/// Rigid reflections of both kinds.
pub fn reflection_specs() -> [ReflectionSpec; 2] {
    [
        ReflectionSpec::new(mv(3, NSClass::e1() + NSClass::e2(), 1)).expect("square −1"),
        ReflectionSpec::new(mv(2, NSClass::e1() + NSClass::e2(), 2)).expect("square −2"),
    ]
}

/// Isotropic rank-two vector used for wall enumeration.
pub fn wall_vector() -> MukaiVector {
    mv(2, NSClass::e2(), 0)
}

/// The exceptional vector `2(1, 0, -1/2)` and a non-exceptional rank-three vector.
pub fn strata_vectors() -> [MukaiVector; 2] {
    [mv(2, NSClass::ZERO, -2), mv(3, NSClass::e1() + NSClass::e2(), -3)]
}

/// A rank-eight vector reduced to rank two.
pub fn reduce_vector() -> MukaiVector {
    mv(8, 4 * NSClass::e1() + 2 * NSClass::e2(), 2)
}
