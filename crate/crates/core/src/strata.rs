//! Dimension bookkeeping for filtration and Harder–Narasimhan strata, bounded
//! enumeration of stratum types and the codimension checks built on them.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::existence::{classify_case, is_double_of_square_one, moduli_dim, Case, CaseClassification, SurfaceConfig};
use crate::lattice::{Int, NSClass};
use crate::mukai::{slope_decompose, MukaiVector};
use crate::transforms::find_pq;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumKind {
    /// Properly semistable locus: Jordan–Hölder factors along the primitive ray.
    HnSurface,
    /// Harder–Narasimhan type with blocks `l_i (r0 + ξ0) + a_i ϱ`.
    HnSlope,
    /// Fiber quotient types of an elliptic fibration.
    FiberQuotient,
}

/// One graded piece of a stratum.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    Surface { v: MukaiVector, dim: Int },
    Fiber { l: Int, r: Int, d: Int },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StratumType {
    pub kind: StratumKind,
    pub blocks: Vec<Block>,
    pub dim: Int,
    pub codim: Int,
}

impl StratumType {
    pub fn surface_vectors(&self) -> Vec<MukaiVector> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                Block::Surface { v, .. } => Some(*v),
                Block::Fiber { .. } => None,
            })
            .collect()
    }
}

/// `dim N + ⟨v1, v2⟩ + n` for the stack of filtrations with quotients `v1`, `v2`.
pub fn filtration_dim(dim_n: Int, v1: &MukaiVector, v2: &MukaiVector, n: Int) -> Result<Int> {
    if n < 0 {
        return Err(Error::pre("n must be nonnegative"));
    }
    Ok(dim_n + v1.pair(v2) + n)
}

/// `Σ dim_i + Σ_{i<j} ⟨v_j, v_i⟩` and the codimension in `⟨v^2⟩`, `v = Σ v_i`.
pub fn hn_stratum_dim(blocks: &[(MukaiVector, Int)]) -> Result<(Int, Int)> {
    if blocks.is_empty() {
        return Err(Error::pre("a stratum needs at least one block"));
    }
    let mut dim = 0;
    let mut total = MukaiVector::rho() - MukaiVector::rho();
    for (i, (vi, di)) in blocks.iter().enumerate() {
        dim += di;
        for (vj, _) in &blocks[i + 1..] {
            dim += vj.pair(vi);
        }
        total = total + *vi;
    }
    Ok((dim, total.square() - dim))
}

/// Upper bound for the stack dimension of semistable sheaves with vector
/// `w` on the ray of `class`; `None` when there are none.
pub fn block_dim(w: &MukaiVector, class: &CaseClassification) -> Option<Int> {
    let sq = w.square();
    if sq >= 0 {
        return moduli_dim(w, &w.xi()).ok().map(|d| d.dim.upper());
    }
    // only k copies of the rigid witness survive: Aut is GL_k
    let (k, u) = w.primitive_part();
    (class.witness == Some(u)).then(|| -k * k)
}

/// Non-increasing partitions of `n` with at least two parts.
fn partitions(n: Int) -> Vec<Vec<Int>> {
    fn go(n: Int, max: Int, cur: &mut Vec<Int>, out: &mut Vec<Vec<Int>>) {
        if n == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Enumerates stratum types of `v`. For `HnSlope` every block satisfies
/// `|s_i| ≤ height_bound` (that is `|2 a_i|`), and the chain
/// `a_1/l_1 > a_2/l_2 > …` is strict. `HnSurface` types do not depend on the bound.
pub fn enumerate_hn_types(
    v: &MukaiVector,
    height_bound: Int,
    kind: StratumKind,
    cfg: &SurfaceConfig,
) -> Result<Vec<StratumType>> {
    if height_bound < 0 {
        return Err(Error::pre("height_bound must be nonnegative"));
    }
    let slope = slope_decompose(v)?;
    let class = classify_case(slope.r0, &slope.xi0, cfg)?;
    let mut out = Vec::new();
    match kind {
        StratumKind::HnSurface => {
            let (k, w) = v.primitive_part();
            if w.square() <= 0 {
                return Ok(out);
            }
            for parts in partitions(k) {
                let blocks: Vec<(MukaiVector, Int)> = parts.iter().map(|&p| (p * w, p * p * w.square())).collect();
                out.push(finish(kind, &blocks)?);
            }
        }
        StratumKind::HnSlope => {
            let xi0 = slope.xi0.numerical();
            let xi_kx = v.xi().kx;
            let mut cur = Vec::new();
            compositions(slope.l, v.s(), None, height_bound, slope.r0, &mut cur, &mut |parts| {
                let mut blocks = Vec::with_capacity(parts.len());
                for (i, &(li, si)) in parts.iter().enumerate() {
                    let mut w = MukaiVector::new(li * slope.r0, li * xi0, si)?;
                    // the torsion part of L rides on the first block
                    if i == 0 && xi_kx {
                        w = w.with_kx(true);
                    }
                    match block_dim(&w, &class) {
                        Some(d) => blocks.push((w, d)),
                        None => return Ok(()),
                    }
                }
                out.push(finish(kind, &blocks)?);
                Ok(())
            })?;
        }
        StratumKind::FiberQuotient => {
            return Err(Error::pre("fiber quotient types are enumerated by elliptic_low_codim_blocks"));
        }
    }
    Ok(out)
}

fn finish(kind: StratumKind, blocks: &[(MukaiVector, Int)]) -> Result<StratumType> {
    let (dim, codim) = hn_stratum_dim(blocks)?;
    Ok(StratumType {
        kind,
        blocks: blocks.iter().map(|&(v, dim)| Block::Surface { v, dim }).collect(),
        dim,
        codim,
    })
}

/// Ordered `(l_i, s_i)` with `Σ l_i = l`, `Σ s_i = s`, at least two parts,
/// `s_i ≡ l_i r0 (mod 2)`, `|s_i| ≤ bound`, `s_i/l_i` strictly decreasing.
fn compositions(
    l: Int,
    s: Int,
    prev: Option<(Int, Int)>,
    bound: Int,
    r0: Int,
    cur: &mut Vec<(Int, Int)>,
    visit: &mut dyn FnMut(&[(Int, Int)]) -> Result<()>,
) -> Result<()> {
    let below = |li: Int, si: Int| match prev {
        None => true,
        Some((lp, sp)) => si * lp < sp * li,
    };
    // close with the remainder as the last block
    if !cur.is_empty() && s.abs() <= bound && (s - l * r0).rem_euclid(2) == 0 && below(l, s) {
        cur.push((l, s));
        visit(cur)?;
        cur.pop();
    }
    for li in 1..l {
        for si in -bound..=bound {
            if (si - li * r0).rem_euclid(2) != 0 || !below(li, si) {
                continue;
            }
            cur.push((li, si));
            compositions(l - li, s - si, Some((li, si)), bound, r0, cur, visit)?;
            cur.pop();
        }
    }
    Ok(())
}

/// Minimum codimensions found at a bound, split by stratum kind.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodimReport {
    pub v: MukaiVector,
    pub height_bound: Int,
    pub case: Case,
    /// `v = 2 v0` with `⟨v0^2⟩ = 1`.
    pub exceptional: bool,
    /// `⟨v^2⟩` reaches the existence threshold; below it the strata may
    /// fill the whole stack and no codimension bound is claimed.
    pub above_threshold: bool,
    pub hn_min: Option<Int>,
    pub pss_min: Option<Int>,
    pub types_checked: usize,
    /// All types that reach codimension at most 1.
    pub low_codim_types: Vec<StratumType>,
}

impl CodimReport {
    pub fn min(&self) -> Option<Int> {
        match (self.hn_min, self.pss_min) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Every stratum has codim ≥ 1 whenever `v` is above the threshold.
    pub fn positive(&self) -> bool {
        !self.above_threshold || self.min().map_or(true, |m| m >= 1)
    }

    /// Properly semistable strata have codim ≥ 2 unless `v` is exceptional,
    /// where codim 1 is attained.
    pub fn pss_dichotomy(&self) -> bool {
        match self.pss_min {
            None => !self.exceptional,
            Some(m) => if self.exceptional { m == 1 } else { m >= 2 },
        }
    }
}

/// Enumerates all types of `v` at `height_bound` and records the minima.
pub fn verify_min_codim(v: &MukaiVector, height_bound: Int, cfg: &SurfaceConfig) -> Result<CodimReport> {
    if v.square() <= 0 {
        return Err(Error::pre("codimension checks need ⟨v^2⟩ > 0"));
    }
    let slope = slope_decompose(v)?;
    let class = classify_case(slope.r0, &slope.xi0, cfg)?;
    let hn = enumerate_hn_types(v, height_bound, StratumKind::HnSlope, cfg)?;
    let pss = enumerate_hn_types(v, height_bound, StratumKind::HnSurface, cfg)?;
    let hn_min = hn.iter().map(|t| t.codim).min();
    let pss_min = pss.iter().map(|t| t.codim).min();
    let low_codim_types = hn.iter().chain(pss.iter()).filter(|t| t.codim <= 1).cloned().collect();
    Ok(CodimReport {
        v: *v,
        height_bound,
        case: class.case,
        exceptional: is_double_of_square_one(v),
        above_threshold: v.square() >= class.threshold(slope.l),
        hn_min,
        pss_min,
        types_checked: hn.len() + pss.len(),
        low_codim_types,
    })
}

/// `Σ l_i ((r_i d − r d_i) − 1)` over fiber blocks `(l_i, r_i, d_i)`.
///
/// A block needs `0 < r_i`, `l_i r_i ≤ r`, `r_i d − r d_i > 0` and either
/// `gcd(r_i, d_i) = 1`, or `gcd(r_i, d_i) = 2` with `l_i = 1` (a primitive
/// vector with `ℓ = 2`).
pub fn elliptic_codim(r: Int, d: Int, blocks: &[(Int, Int, Int)]) -> Result<Int> {
    if r < 1 || r.gcd(&d) != 1 {
        return Err(Error::pre(format!("need r ≥ 1 and gcd({r}, {d}) = 1")));
    }
    let mut total = 0;
    for &(l, ri, di) in blocks {
        let g = ri.gcd(&di);
        let admissible_gcd = g == 1 || (g == 2 && l == 1);
        if l < 1 || ri < 1 || l * ri > r || !admissible_gcd {
            return Err(Error::pre(format!("block ({l}, {ri}, {di}) is not admissible for ({r}, {d})")));
        }
        let deg = ri * d - r * di;
        if deg <= 0 {
            return Err(Error::pre(format!("block ({l}, {ri}, {di}) does not destabilize: r_i d − r d_i = {deg}")));
        }
        total += l * (deg - 1);
    }
    Ok(total)
}

/// All admissible single blocks with `elliptic_codim ≤ max_codim`.
pub fn elliptic_low_codim_blocks(r: Int, d: Int, max_codim: Int) -> Result<Vec<(Int, Int, Int)>> {
    if r < 1 || r.gcd(&d) != 1 || max_codim < 0 {
        return Err(Error::pre("need r ≥ 1, gcd(r, d) = 1 and max_codim ≥ 0"));
    }
    let mut out = Vec::new();
    for l in 1..=r {
        for ri in 1..=r / l {
            // 0 < r_i d − r d_i ≤ max_codim + 1
            let lo = Integer::div_ceil(&(ri * d - max_codim - 1), &r);
            let hi = Integer::div_floor(&(ri * d - 1), &r);
            for di in lo..=hi {
                if let Ok(c) = elliptic_codim(r, d, &[(l, ri, di)]) {
                    if c <= max_codim {
                        out.push((l, ri, di));
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberSupport {
    /// The first half fiber `Π1` of the multiple fiber `2Π1`.
    Pi1,
    Pi2,
    /// A full fiber `f`.
    Fiber,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundaryDivisor {
    pub label: &'static str,
    pub u: MukaiVector,
    pub support: FiberSupport,
    /// `⟨v, u⟩` for every `v = (r, d e2 + n e1 + δ, a)`.
    pub pairing: Int,
}

/// The codimension-one boundary pieces of the family `v ∈ (0, r e1, d)^⊥`
/// with `ℓ = 1`: `u1` on each half fiber, `2u1` and `u2` on a full fiber.
pub fn boundary_divisors(r: Int, d: Int) -> Result<Vec<BoundaryDivisor>> {
    if r < 2 || r % 2 != 0 {
        return Err(Error::pre(format!("boundary divisors need even r ≥ 2, got {r}")));
    }
    let (p, q, _) = find_pq(r, d)?;
    let u1 = MukaiVector::new(0, p * NSClass::e1(), 2 * q)?;
    // (p', q') = (p, q) ± (r, d)/2 with 0 < p' ≤ r; u2 = (0, 2p' e1, 2q')
    let (p2, s2) = if 2 * p <= r { (p + r / 2, 4 * q + 2 * d) } else { (p - r / 2, 4 * q - 2 * d) };
    let u2 = MukaiVector::new(0, (2 * p2) * NSClass::e1(), s2)?;
    let v = MukaiVector::new(r, d * NSClass::e2(), 0)?;
    let mk = |label, u: MukaiVector, support| BoundaryDivisor { label, u, support, pairing: v.pair(&u) };
    Ok(vec![
        mk("D1", u1, FiberSupport::Pi1),
        mk("D2", u1, FiberSupport::Pi2),
        mk("D3", 2 * u1, FiberSupport::Fiber),
        mk("D4", u2, FiberSupport::Fiber),
    ])
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SupportBounds {
    pub dim_total: Int,
    pub dim_m1_bound: Int,
    pub dim_m2_bound: Int,
    pub codim_ok: bool,
}

/// `4(L^2)`, `7/2 (L^2) − 1` and `4(L^2) − 2` for rank-0 sheaves on `|2L|`.
pub fn support_locus_bounds(l2: Int) -> Result<SupportBounds> {
    if l2 <= 0 || l2 % 2 != 0 {
        return Err(Error::pre(format!("(L^2) must be positive and even, got {l2}")));
    }
    let dim_total = 4 * l2;
    let dim_m1_bound = 7 * l2 / 2 - 1;
    let dim_m2_bound = 4 * l2 - 2;
    let codim_ok = dim_total - dim_m1_bound >= 2 && dim_total - dim_m2_bound >= 2;
    Ok(SupportBounds { dim_total, dim_m1_bound, dim_m2_bound, codim_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(r: Int, xi: NSClass, s: Int) -> MukaiVector {
        MukaiVector::new(r, xi, s).unwrap()
    }

    #[test]
    fn filtration_examples() {
        let v = mv(2, NSClass::ZERO, -2);
        assert_eq!(filtration_dim(0, &v, &v, 0).unwrap(), 4);
        let v1 = mv(1, NSClass::ZERO, 1);
        let v2 = mv(1, NSClass::ZERO, -3);
        assert_eq!(v1.pair(&v2), 1);
        assert_eq!(filtration_dim(3, &v1, &v2, 2).unwrap(), 6);
        assert!(filtration_dim(0, &v1, &v2, -1).is_err());
    }

    #[test]
    fn stratum_dim_examples() {
        let w = mv(1, NSClass::ZERO, -1);
        assert_eq!(hn_stratum_dim(&[(w, 1), (w, 1)]).unwrap(), (3, 1));
        let u = mv(2, NSClass::e2(), 0);
        assert_eq!(hn_stratum_dim(&[(u, 0), (u, 0)]).unwrap(), (0, 0));
        let v = mv(2, NSClass::e2(), -2);
        assert_eq!(hn_stratum_dim(&[(v, 4)]).unwrap(), (4, 0));
        assert!(hn_stratum_dim(&[]).is_err());
    }

    #[test]
    fn exceptional_vector_reaches_codim_one() {
        let cfg = SurfaceConfig::default();
        let v = mv(2, NSClass::ZERO, -2);
        let hn = enumerate_hn_types(&v, 4, StratumKind::HnSlope, &cfg).unwrap();
        let target = vec![mv(1, NSClass::ZERO, 1), mv(1, NSClass::ZERO, -3)];
        assert!(hn.iter().any(|t| t.surface_vectors() == target && t.codim == 1));
        let rep = verify_min_codim(&v, 6, &cfg).unwrap();
        assert!(rep.exceptional && rep.above_threshold);
        assert_eq!(rep.pss_min, Some(1));
        assert_eq!(rep.min(), Some(1));
        assert!(rep.positive() && rep.pss_dichotomy());
    }

    #[test]
    fn primitive_vector_has_no_codim_one() {
        let cfg = SurfaceConfig::default();
        let v = mv(2, NSClass::e2(), -2);
        let rep = verify_min_codim(&v, 6, &cfg).unwrap();
        assert_eq!(rep.min(), None);
        let rep = verify_min_codim(&mv(1, NSClass::ZERO, -3), 6, &cfg).unwrap();
        assert_eq!(rep.types_checked, 0);
        assert!(enumerate_hn_types(&mv(2, NSClass::e2(), 0), 4, StratumKind::HnSlope, &cfg).unwrap().is_empty());
    }

    #[test]
    fn double_isotropic_types_have_positive_codim() {
        let cfg = SurfaceConfig::default();
        let w = mv(2, NSClass::e2(), 0);
        let v = 2 * w - 2 * MukaiVector::rho();
        assert!(v.square() > 0);
        for t in enumerate_hn_types(&v, 4, StratumKind::HnSlope, &cfg).unwrap() {
            assert!(t.codim >= 1, "{t:?}");
        }
    }

    #[test]
    fn elliptic_codim_examples() {
        assert_eq!(elliptic_codim(2, 1, &[(1, 1, 0)]).unwrap(), 0);
        assert_eq!(elliptic_codim(2, 1, &[(1, 1, -1)]).unwrap(), 2);
        assert!(elliptic_codim(2, 1, &[(2, 2, 0)]).is_err());
        assert!(elliptic_codim(2, 1, &[(1, 1, 1)]).is_err());
        assert_eq!(elliptic_low_codim_blocks(2, 1, 1).unwrap(), vec![(1, 1, 0), (1, 2, 0), (2, 1, 0)]);
    }

    #[test]
    fn boundary_divisor_examples() {
        let b = boundary_divisors(2, 1).unwrap();
        let u1 = mv(0, NSClass::e1(), 0);
        assert_eq!(b[0].u, u1);
        assert_eq!(b[1].u, u1);
        assert_eq!(b[2].u, 2 * u1);
        assert_eq!(b[3].u, mv(0, 4 * NSClass::e1(), 2));
        assert_eq!(b[0].pairing, 1);
        assert_eq!(b[3].pairing, 2);
        let v = mv(2, NSClass::e2() + 5 * NSClass::e1() + NSClass::root(2), 4);
        assert_eq!(v.pair(&b[3].u), 2);
        assert!(boundary_divisors(3, 1).is_err());
    }

    #[test]
    fn support_bounds_examples() {
        let b = support_locus_bounds(2).unwrap();
        assert_eq!((b.dim_total, b.dim_m1_bound, b.dim_m2_bound, b.codim_ok), (8, 6, 6, true));
        let b = support_locus_bounds(4).unwrap();
        assert_eq!((b.dim_total, b.dim_m1_bound, b.dim_m2_bound), (16, 13, 14));
        let b = support_locus_bounds(10).unwrap();
        assert_eq!((b.dim_total, b.dim_m1_bound, b.dim_m2_bound), (40, 34, 38));
        assert!(support_locus_bounds(3).is_err());
        assert!(support_locus_bounds(0).is_err());
    }
}
