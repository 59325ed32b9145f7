//! Brute-force models used to cross-check the fast paths. The E8 lattice is
//! built here from its standard coordinates `Z^8 ∪ (Z + ½)^8` with even
//! coordinate sum, independently of the Cartan matrix.

use num_rational::Ratio;

use crate::error::Result;
use crate::lattice::{e8_norm, Int, NSClass, E8_CARTAN};
use crate::mukai::MukaiVector;
use crate::shortvec::isqrt;
use crate::walls::{canonical_sign, h0, wall_rank, WallClass, WallConfig};

/// Simple roots in standard coordinates, doubled to stay integral.
const SIMPLE_ROOTS_X2: [[Int; 8]; 8] = [
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

fn inverse_cartan() -> [[Ratio<Int>; 8]; 8] {
    let mut a: Vec<Vec<Ratio<Int>>> = (0..8)
        .map(|i| {
            let mut row: Vec<Ratio<Int>> = E8_CARTAN[i].iter().map(|&x| Ratio::from_integer(x)).collect();
            row.extend((0..8).map(|j| Ratio::from_integer(Int::from(i == j))));
            row
        })
        .collect();
    for c in 0..8 {
        let p = (c..8).find(|&r| a[r][c] != Ratio::from_integer(0)).expect("Cartan matrix is invertible");
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..8 {
            if r != c {
                let f = a[r][c];
                for k in 0..16 {
                    let t = a[c][k] * f;
                    a[r][k] -= t;
                }
            }
        }
    }
    let mut inv = [[Ratio::from_integer(0); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            inv[i][j] = a[i][8 + j];
        }
    }
    inv
}

/// Root-basis coordinates of a doubled standard vector `z = 2x`.
fn to_root_coords(z: &[Int; 8], inv: &[[Ratio<Int>; 8]; 8]) -> [Int; 8] {
    // b_j = x·α_j = z·(2α_j) / 4, then c = C^{-1} b
    let b: Vec<Ratio<Int>> =
        SIMPLE_ROOTS_X2.iter().map(|a| Ratio::new(a.iter().zip(z).map(|(p, q)| p * q).sum(), 4)).collect();
    let mut c = [0; 8];
    for i in 0..8 {
        let s: Ratio<Int> = (0..8).map(|j| inv[i][j] * b[j]).sum();
        assert!(s.is_integer(), "standard vector outside the lattice");
        c[i] = s.to_integer();
    }
    c
}

/// Every E8 vector with `x·x ≤ max_norm`, in root coordinates, with its norm.
pub fn e8_standard_vectors(max_norm: Int) -> Vec<(Int, [Int; 8])> {
    let inv = inverse_cartan();
    let lim = 4 * max_norm;
    let zmax = isqrt(lim.max(0));
    let mut out = Vec::new();
    for parity in [0, 1] {
        let mut z = [0; 8];
        fn go(i: usize, used: Int, lim: Int, zmax: Int, parity: Int, z: &mut [Int; 8], visit: &mut dyn FnMut(&[Int; 8])) {
            if i == 8 {
                visit(z);
                return;
            }
            for t in -zmax..=zmax {
                if t.rem_euclid(2) != parity || used + t * t > lim {
                    continue;
                }
                z[i] = t;
                go(i + 1, used + t * t, lim, zmax, parity, z, visit);
            }
            z[i] = 0;
        }
        go(0, 0, lim, zmax, parity, &mut z, &mut |z| {
            if z.iter().sum::<Int>().rem_euclid(4) == 0 {
                let n = z.iter().map(|t| t * t).sum::<Int>() / 4;
                out.push((n, to_root_coords(z, &inv)));
            }
        });
    }
    out.sort();
    out
}

/// Roots of `E8(−1)` counted in the standard model.
pub fn e8_root_count() -> usize {
    e8_standard_vectors(2).iter().filter(|(n, _)| *n == 2).count()
}

/// Walls of `v` by a double loop over `r_F` and `ξ_F` in a box, with the E8
/// part of `ξ_F` drawn from the standard model.
pub fn naive_walls(v: &MukaiVector, cfg: &WallConfig) -> Result<Vec<WallClass>> {
    let r = v.r();
    let w = cfg.region.unwrap_or(2 * r);
    let xi = v.xi().numerical();
    let mut lo = 0;
    for r_f in 1..r {
        lo = lo.min(crate::walls::window_low(v, r_f, cfg)?);
    }
    // |η1 + η2| ≤ W and 2 η1 η2 − q(y_η) ≥ lo bound both parts of η
    let q_eta = w * w / 2 - lo;
    let u_eta = (w + isqrt(w * w - 2 * lo) + 1) / 2 + 1;
    let q_xi = e8_norm(&xi.e8_part());
    let ceil_sqrt = |n: Int| {
        let s = isqrt(n);
        if s * s == n { s } else { s + 1 }
    };
    let mut out = Vec::new();
    for r_f in 1..r {
        // y_F = (r_F y_ξ − y_η)/r, so √q(y_F) ≤ (r_F √q(y_ξ) + √q(y_η))/r
        let a = ceil_sqrt(r_f * r_f * q_xi) + ceil_sqrt(q_eta);
        let q_f = (a * a + r * r - 1) / (r * r);
        let u_f = (r_f * (xi.u_part().0.abs() + xi.u_part().1.abs()) + u_eta) / r + 1;
        let ys = e8_standard_vectors(q_f);
        for a in -u_f..=u_f {
            for b in -u_f..=u_f {
                for (_, y) in &ys {
                    let xf = NSClass::from_u_e8(a, b, y);
                    let eta = r_f * xi - r * xf;
                    let n = eta.square();
                    if n >= 0 || eta.pair(&h0()).abs() > w {
                        continue;
                    }
                    let eta = canonical_sign(&eta);
                    if let Some(rf) = wall_rank(v, &eta, cfg)? {
                        let m = eta.content();
                        out.push(WallClass {
                            eta,
                            r_f: rf,
                            norm: n,
                            multiplicity: m,
                            primitive: eta.div_exact(m).expect("content divides"),
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::e8_ball;

    #[test]
    fn standard_model_matches_cartan_model() {
        assert_eq!(e8_root_count(), 240);
        let std = e8_standard_vectors(4);
        assert_eq!(std, e8_ball(4));
    }
}
