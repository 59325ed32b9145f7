//! Walls for μ-stability: classes `η = r_F ξ − r ξ_F` with negative square
//! in a discriminant window, the genericity test for a polarization and a
//! search for a polarization off every wall.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_affine, Int, LinearConstraint, NSClass};
use crate::mukai::{discriminant, MukaiVector};

/// A polarization is a class `H` with `(H^2) > 0` and `(H, e1 + e2) > 0`;
/// on an unnodal surface these are exactly the ample classes up to the cone.
pub type PolarizationClass = NSClass;

/// `e1 + e2`, the reference point of the positive cone.
pub fn h0() -> PolarizationClass {
    NSClass::e1() + NSClass::e2()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WallConfig {
    /// Multiplies the window `2 r_F (r − r_F) Δ(v)`.
    pub scale: Int,
    /// Bound `W` on `|(η, e1 + e2)|` for the listing; defaults to `2r`.
    pub region: Option<Int>,
    /// Rounds of perturbation before the chamber search gives up.
    pub max_rounds: usize,
}

impl Default for WallConfig {
    fn default() -> Self {
        WallConfig { scale: 1, region: None, max_rounds: 16 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct WallClass {
    pub eta: NSClass,
    /// Least admissible subsheaf rank for this `η`.
    #[serde(rename = "rF")]
    pub r_f: Int,
    pub norm: Int,
    /// `η = multiplicity · primitive`.
    pub multiplicity: Int,
    pub primitive: NSClass,
}

/// Orientation with `(η, h0) > 0`, or lexicographically positive on `h0^⊥`.
pub fn canonical_sign(eta: &NSClass) -> NSClass {
    let t = eta.pair(&h0());
    let flip = t < 0 || (t == 0 && eta.coords.iter().find(|&&c| c != 0).map_or(false, |&c| c < 0));
    if flip {
        -*eta
    } else {
        *eta
    }
}

/// Lower end of the window for subsheaf rank `r_f`.
pub fn window_low(v: &MukaiVector, r_f: Int, cfg: &WallConfig) -> Result<Int> {
    let delta = discriminant(v)?;
    Ok(-cfg.scale * 2 * r_f * (v.r() - r_f) * delta)
}

/// Least `r_F ∈ (0, r)` with `η ≡ r_F ξ (mod r)` and `η` inside its window.
pub fn wall_rank(v: &MukaiVector, eta: &NSClass, cfg: &WallConfig) -> Result<Option<Int>> {
    let n = eta.square();
    if n >= 0 {
        return Ok(None);
    }
    let xi = v.xi().numerical();
    for r_f in 1..v.r() {
        let diff = r_f * xi - *eta;
        if diff.div_exact(v.r()).is_some() && n >= window_low(v, r_f, cfg)? {
            return Ok(Some(r_f));
        }
    }
    Ok(None)
}

fn check_domain(v: &MukaiVector, cfg: &WallConfig) -> Result<Int> {
    if v.r() < 2 {
        return Err(Error::pre("no walls: rank < 2"));
    }
    let delta = discriminant(v)?;
    if delta < 0 {
        return Err(Error::pre(format!("Δ(v) = {delta} < 0")));
    }
    if cfg.scale < 1 {
        return Err(Error::pre("wall bound scale must be positive"));
    }
    Ok(delta)
}

fn make_wall(eta: NSClass, r_f: Int) -> WallClass {
    let m = eta.content();
    WallClass { eta, r_f, norm: eta.square(), multiplicity: m, primitive: eta.div_exact(m).expect("content divides") }
}

/// Walls `η = r_F ξ − r ξ_F` with `(η, c) = k`, canonically signed, with
/// `k ≥ 0` and, when `k = 0`, only the positively signed member kept.
fn walls_on_slice(v: &MukaiVector, c: &NSClass, k: Int, cfg: &WallConfig, out: &mut Vec<WallClass>) -> Result<()> {
    let r = v.r();
    let xi = v.xi().numerical();
    for r_f in 1..r {
        // (ξ_F, c) = (r_F (ξ, c) − k) / r
        let num = r_f * xi.pair(c) - k;
        if num % r != 0 {
            continue;
        }
        let lo = window_low(v, r_f, cfg)?;
        if lo > -1 {
            continue;
        }
        let cons = LinearConstraint { dual: *c, value: num / r };
        for xf in enumerate_affine(lo, -1, r, &(r_f * xi), &cons)? {
            let eta = r_f * xi - r * xf;
            if canonical_sign(&eta) != eta {
                continue;
            }
            if let Some(least) = wall_rank(v, &eta, cfg)? {
                out.push(make_wall(eta, least));
            }
        }
    }
    Ok(())
}

/// All walls with `|(η, e1 + e2)| ≤ W`, one per sign class, sorted.
pub fn candidate_walls(v: &MukaiVector, cfg: &WallConfig) -> Result<Vec<WallClass>> {
    check_domain(v, cfg)?;
    let w = cfg.region.unwrap_or(2 * v.r());
    if w < 0 {
        return Err(Error::pre("wall region must be nonnegative"));
    }
    let mut out = Vec::new();
    for k in 0..=w {
        walls_on_slice(v, &h0(), k, cfg, &mut out)?;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Walls `η` with `(η, H) = 0`, canonically signed; empty iff `H` is general.
pub fn walls_through(h: &PolarizationClass, v: &MukaiVector, cfg: &WallConfig) -> Result<Vec<WallClass>> {
    if h.square() <= 0 || h.pair(&h0()) <= 0 {
        return Err(Error::pre(format!("{h} is not in the positive cone")));
    }
    if v.r() < 2 {
        return Ok(Vec::new());
    }
    check_domain(v, cfg)?;
    let mut out = Vec::new();
    walls_on_slice(v, h, 0, cfg, &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// `(η, H) ≠ 0` for every wall of `v`.
pub fn is_general(h: &PolarizationClass, v: &MukaiVector, cfg: &WallConfig) -> Result<bool> {
    Ok(walls_through(h, v, cfg)?.is_empty())
}

/// A small vector pairing nonzero with as many `η` in `walls` as possible:
/// the best of seeded samples from `[−B, B]^10`, `B = 1, 2, 4`, stopping
/// early when one separates every wall.
fn separating_perturbation(walls: &[WallClass]) -> NSClass {
    // (η, p) = Σ_i (η, b_i) p_i
    let duals: Vec<[Int; 10]> =
        walls.iter().map(|w| std::array::from_fn(|i| w.eta.pair(&NSClass::basis(i)))).collect();
    let mut best = (usize::MAX, NSClass::e1());
    let missed = |p: &NSClass, cap: usize| {
        let mut m = 0;
        for d in &duals {
            if d.iter().zip(&p.coords).map(|(a, b)| a * b).sum::<Int>() == 0 {
                m += 1;
                if m >= cap {
                    break;
                }
            }
        }
        m
    };
    for round in 0..3u32 {
        let b: Int = 1 << round;
        let mut rng = StdRng::seed_from_u64(u64::from(round));
        for _ in 0..256 {
            let p = NSClass::new(std::array::from_fn(|_| rng.gen_range(-b..=b)));
            let m = missed(&p, best.0);
            if m < best.0 {
                best = (m, p);
                if m == 0 {
                    return p;
                }
            }
        }
    }
    best.1
}

/// A polarization off every wall of `v`. Starts at `e1 + e2`; while walls
/// pass through `H`, replaces `H` by `N H + P` with `P` a small vector
/// separating those walls and `N > max |(η, P)|`.
pub fn chamber_representative(v: &MukaiVector, cfg: &WallConfig) -> Result<PolarizationClass> {
    if v.r() < 1 {
        return Err(Error::pre("chamber search needs rank ≥ 1"));
    }
    let mut h = h0();
    for _ in 0..=cfg.max_rounds {
        let through = walls_through(&h, v, cfg)?;
        if through.is_empty() {
            debug_assert!(is_general(&h, v, cfg)?);
            return Ok(h);
        }
        let p = separating_perturbation(&through);
        let mut n = through.iter().map(|w| w.eta.pair(&p).abs()).max().unwrap_or(0) + 1;
        loop {
            let cand = n * h + p;
            if cand.square() > 0 && cand.pair(&h0()) > 0 {
                h = cand.div_exact(cand.content()).expect("content divides");
                break;
            }
            n += 1;
        }
    }
    Err(Error::SearchExhausted(format!("no general polarization for {v} within {} rounds", cfg.max_rounds)))
}
