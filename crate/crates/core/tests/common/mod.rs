#![allow(dead_code)]

use mukai_core::{Int, MukaiVector, NSClass};
use proptest::prelude::*;

pub fn mv(r: Int, xi: NSClass, s: Int) -> MukaiVector {
    MukaiVector::new(r, xi, s).unwrap()
}

pub fn fix_parity(r: Int, s: Int) -> Int {
    if (r - s).rem_euclid(2) == 0 {
        s
    } else {
        s + 1
    }
}

pub fn ns_class(b: Int) -> impl Strategy<Value = NSClass> {
    (prop::array::uniform10(-b..=b), any::<bool>()).prop_map(|(c, k)| NSClass::new(c).with_kx(k))
}

pub fn e8_class(b: Int) -> impl Strategy<Value = NSClass> {
    prop::array::uniform8(-b..=b).prop_map(|y| NSClass::from_u_e8(0, 0, &y))
}

pub fn mukai_vector() -> impl Strategy<Value = MukaiVector> {
    (-6..=6 as Int, ns_class(4), -12..=12 as Int).prop_map(|(r, xi, s)| mv(r, xi, fix_parity(r, s)))
}

pub fn positive_rank_vector() -> impl Strategy<Value = MukaiVector> {
    (1..=8 as Int, ns_class(4), -20..=20 as Int).prop_map(|(r, xi, s)| mv(r, xi, fix_parity(r, s)))
}

/// Rigid vectors of square −1.
pub fn minus1_bases() -> Vec<MukaiVector> {
    let (e1, e2) = (NSClass::e1(), NSClass::e2());
    vec![MukaiVector::structure_sheaf(), mv(3, e1 + e2, 1), mv(5, 2 * e1 + e2, 1)]
}

/// Rigid vectors of square −2.
pub fn minus2_bases() -> Vec<MukaiVector> {
    let (e1, e2) = (NSClass::e1(), NSClass::e2());
    vec![mv(0, NSClass::root(1), 0), mv(2, e1 + e2, 2), mv(4, 3 * e1 + e2, 2)]
}

/// A base rigid vector twisted by a random class; twisting keeps the square.
pub fn rigid(bases: Vec<MukaiVector>) -> impl Strategy<Value = MukaiVector> {
    let n = bases.len();
    (0..n, prop::array::uniform10(-2..=2 as Int)).prop_map(move |(i, d)| bases[i].twist(&NSClass::new(d)))
}
