//! Lattice-level functors: reflections attached to rigid vectors, the partial
//! action of the relative Fourier–Mukai transform Ψ, the reduction of even
//! rank vectors to ranks 2 and 4, and the Bézout/Hilbert utilities.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Int, NSClass};
use crate::mukai::MukaiVector;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReflectionKind {
    Minus1,
    Minus2,
}

impl ReflectionKind {
    /// `c` in `R(v) = D(v) + c ⟨D(v), v0^∨⟩ v0^∨`.
    pub fn coefficient(self) -> Int {
        match self {
            ReflectionKind::Minus1 => 2,
            ReflectionKind::Minus2 => 1,
        }
    }
}

/// A rigid vector `v0` with `⟨v0^2⟩ ∈ {−1, −2}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReflectionSpec {
    pub v0: MukaiVector,
    pub kind: ReflectionKind,
}

impl ReflectionSpec {
    pub fn new(v0: MukaiVector) -> Result<Self> {
        let kind = match v0.square() {
            -1 => ReflectionKind::Minus1,
            -2 => ReflectionKind::Minus2,
            q => return Err(Error::pre(format!("reflection needs ⟨v0^2⟩ ∈ {{−1, −2}}, got {q}"))),
        };
        Ok(ReflectionSpec { v0, kind })
    }

    /// The reflection attached to `v0^∨`; it inverts this one.
    pub fn dual(&self) -> Self {
        ReflectionSpec { v0: self.v0.dual(), kind: self.kind }
    }

    /// Whether `v0^∨ = ±v0`, the case where `reflect` is itself an involution.
    pub fn is_self_dual(&self) -> bool {
        let d = self.v0.dual();
        d == self.v0 || d == -self.v0
    }
}

/// `S_u(v) = v + c ⟨v, u⟩ u`, an involutive isometry when `⟨u^2⟩ = −2/c`.
pub fn reflection_part(kind: ReflectionKind, u: &MukaiVector, v: &MukaiVector) -> MukaiVector {
    *v + (kind.coefficient() * v.pair(u)) * *u
}

/// `R(v) = D(v) + c ⟨D(v), v0^∨⟩ v0^∨`, `D` the dualization.
pub fn reflect(spec: &ReflectionSpec, v: &MukaiVector) -> MukaiVector {
    reflection_part(spec.kind, &spec.v0.dual(), &v.dual())
}

/// The image of `l v0 − b ϱ` under the reflection, written directly as
/// `(c b r0 − l) v0^∨ − b ϱ`.
pub fn reflect_explicit(spec: &ReflectionSpec, l: Int, b: Int) -> MukaiVector {
    let m = spec.kind.coefficient() * b * spec.v0.r() - l;
    m * spec.v0.dual() - b * MukaiVector::rho()
}

/// `(rank', deg_e1', chi')` of `Ψ(v)`, read off from pairings.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PsiInvariants {
    pub rank: Int,
    pub deg_e1: Int,
    /// `χ = r/2 + a`, an integer by the parity condition.
    pub chi: Int,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PsiImage {
    /// Present only on the sublattice spanned by `(1,0,½)`, `(0,e1,0)`, `(0,0,1)`.
    pub vector: Option<MukaiVector>,
    pub invariants: PsiInvariants,
    /// Whether `(ξ', e1)` carries the sign `−(ξ, e1)`; the alternative
    /// normalization `+(ξ, e1)` is not excluded by the known images.
    pub sign_convention_flag: bool,
}

pub fn psi_invariants(v: &MukaiVector) -> PsiInvariants {
    let t = v.xi().pair(&NSClass::e1());
    PsiInvariants { rank: v.r() - 2 * t, deg_e1: -t, chi: (v.r() + v.s()) / 2 }
}

pub fn invariants_of(v: &MukaiVector) -> PsiInvariants {
    PsiInvariants { rank: v.r(), deg_e1: v.xi().pair(&NSClass::e1()), chi: (v.r() + v.s()) / 2 }
}

/// Ψ on `(r, β e1, s/2)`: `(r, (s − r − β) e1, s/2)`. Linear extension of
/// `O_X ↦ O_X`, `ϱ ↦ (0, 2e1, 1)`, `(0, e1, 0) ↦ (0, −e1, 0)`.
pub fn psi_image(v: &MukaiVector) -> PsiImage {
    let xi = v.xi();
    let on_sublattice = !xi.kx && xi.coords.iter().enumerate().all(|(i, &c)| i == 0 || c == 0);
    let vector = on_sublattice.then(|| {
        let beta = xi.coords[0];
        MukaiVector::new(v.r(), (v.s() - v.r() - beta) * NSClass::e1(), v.s()).expect("parity is unchanged")
    });
    PsiImage { vector, invariants: psi_invariants(v), sign_convention_flag: true }
}

/// Output of the reduction to rank 2 (`ℓ = 1`) or rank 4 (`ℓ = 2`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Reduction {
    pub input: MukaiVector,
    pub output: MukaiVector,
    pub ell: Int,
    pub square: Int,
    /// Determinant `L'` of the target moduli space, for `ℓ = 1`; it sits at
    /// `M(v', L')` when the input sits at `M(v, L)`.
    #[serde(rename = "L_out")]
    pub l_out: Option<NSClass>,
}

/// Reduces a primitive even-rank `v` to `v' = (2, ζ, s'/2)` when `ℓ(v) = 1`,
/// with `ζ` the representative of `ξ mod 2` with entries in `{0, 1}`, or to
/// `v'' = (4, 2(e2 + (n+1)e1), 1)` when `ℓ(v) = 2`, `n = ⟨v^2⟩/8`.
pub fn canonical_reduce(v: &MukaiVector, l_class: Option<&NSClass>) -> Result<Reduction> {
    let r = v.r();
    if r <= 0 || r % 2 != 0 {
        return Err(Error::pre(format!("reduction needs positive even rank, got {r}")));
    }
    if !v.is_primitive() {
        return Err(Error::pre(format!("{v} is not primitive")));
    }
    let sq = v.square();
    if sq < 0 {
        return Err(Error::pre(format!("⟨v^2⟩ = {sq} is negative")));
    }
    let l_class = *l_class.unwrap_or(&v.xi());
    if l_class.coords != v.xi().coords {
        return Err(Error::pre(format!("L = {l_class} does not reduce to ξ")));
    }
    let ell = v.ell();
    let (output, l_out) = if ell == 2 {
        if sq % 8 != 0 {
            return Err(Error::pre(format!("ℓ(v) = 2 forces ⟨v^2⟩ ≡ 0 mod 8, got {sq}")));
        }
        let n = sq / 8;
        let xi = 2 * NSClass::e2() + (2 * (n + 1)) * NSClass::e1();
        (MukaiVector::new(4, xi, 2)?, None)
    } else {
        let mut coords = [0; 10];
        for (z, &c) in coords.iter_mut().zip(v.xi().coords.iter()) {
            *z = c.rem_euclid(2);
        }
        let zeta = NSClass::new(coords);
        let s2 = zeta.square() - sq;
        debug_assert!(s2 % 4 == 0);
        // L + (r/2)K_X ↦ L' + K_X with L' ≡ L mod 2
        let kx = l_class.kx ^ ((r / 2) % 2 == 1) ^ true;
        (MukaiVector::new(2, zeta, s2 / 2)?, Some(zeta.with_kx(kx)))
    };
    assert_eq!(output.square(), sq, "reduction changed ⟨v^2⟩");
    assert_eq!(output.ell(), ell, "reduction changed ℓ");
    Ok(Reduction { input: *v, output, ell, square: sq, l_out })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PqBranch {
    Direct,
    /// `p > r/2`; the pair `(r − p, d − q)` is used instead.
    Dual { p: Int, q: Int },
}

/// The unique `(p, q)` with `dp − rq = 1` and `0 < p < r`.
pub fn find_pq(r: Int, d: Int) -> Result<(Int, Int, PqBranch)> {
    if r < 2 {
        return Err(Error::pre(format!("find_pq needs r ≥ 2, got {r}")));
    }
    let eg = d.extended_gcd(&r);
    if eg.gcd.abs() != 1 {
        return Err(Error::pre(format!("gcd({r}, {d}) ≠ 1")));
    }
    let p = (eg.x * eg.gcd).rem_euclid(r);
    let q = (d * p - 1) / r;
    debug_assert_eq!(d * p - r * q, 1);
    let branch = if 2 * p <= r { PqBranch::Direct } else { PqBranch::Dual { p: r - p, q: d - q } };
    Ok((p, q, branch))
}

/// `b` with `2b = −χ(e, e) + χ(O_X)`.
pub fn hilb_points(chi_ee: Int, chi_o: Int) -> Result<Int> {
    let t = chi_o - chi_ee;
    if t < 0 || t % 2 != 0 {
        return Err(Error::pre(format!("−χ(e,e) + χ(O) = {t} must be even and nonnegative")));
    }
    Ok(t / 2)
}

/// `⌊l · gcd(r, m) / m⌋`.
pub fn multiple_fiber_bound(l: Int, r: Int, m: Int) -> Result<Int> {
    if l < 1 || r < 1 || m < 1 {
        return Err(Error::pre("multiple_fiber_bound needs l, r, m ≥ 1"));
    }
    Ok(l * r.gcd(&m) / m)
}
