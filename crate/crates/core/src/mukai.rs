//! Mukai vectors `v = (r, ξ, s/2)` on an Enriques surface.
//!
//! The third entry is stored doubled (`s = 2a`) so that everything stays
//! integral; membership in the Mukai lattice is the congruence `r ≡ s (mod 2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Cursor, Int, NSClass, DIM};

/// A Mukai vector `(r, ξ, s/2)`. The torsion bit of `xi` lets the same type
/// hold a determinant `L` as well as its numerical class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "MukaiJson", into = "MukaiJson")]
pub struct MukaiVector {
    r: Int,
    xi: NSClass,
    s: Int,
}

#[derive(Serialize, Deserialize)]
struct MukaiJson {
    r: Int,
    xi: [Int; DIM],
    kx: u8,
    s: Int,
}

impl From<MukaiVector> for MukaiJson {
    fn from(v: MukaiVector) -> Self {
        MukaiJson { r: v.r, xi: v.xi.coords, kx: u8::from(v.xi.kx), s: v.s }
    }
}

impl TryFrom<MukaiJson> for MukaiVector {
    type Error = Error;
    fn try_from(j: MukaiJson) -> Result<Self> {
        if j.kx > 1 {
            return Err(Error::pre("kx must be 0 or 1"));
        }
        MukaiVector::new(j.r, NSClass { coords: j.xi, kx: j.kx == 1 }, j.s)
    }
}

impl MukaiVector {
    /// Builds `(r, xi, s/2)`; fails unless `r ≡ s (mod 2)`.
    pub fn new(r: Int, xi: NSClass, s: Int) -> Result<Self> {
        if (r - s).rem_euclid(2) != 0 {
            return Err(Error::pre(format!("parity violated: r = {r} and s = {s} differ mod 2")));
        }
        Ok(MukaiVector { r, xi, s })
    }

    /// `ϱ_X = (0, 0, 1)`.
    pub fn rho() -> Self {
        MukaiVector { r: 0, xi: NSClass::ZERO, s: 2 }
    }

    /// `v(O_X) = (1, 0, 1/2)`.
    pub fn structure_sheaf() -> Self {
        MukaiVector { r: 1, xi: NSClass::ZERO, s: 1 }
    }

    pub fn r(&self) -> Int {
        self.r
    }

    pub fn xi(&self) -> NSClass {
        self.xi
    }

    /// Twice the third coordinate.
    pub fn s(&self) -> Int {
        self.s
    }

    /// The third coordinate `a = s/2`.
    pub fn a(&self) -> Ratio<Int> {
        Ratio::new(self.s, 2)
    }

    pub fn with_kx(mut self, kx: bool) -> Self {
        self.xi.kx = kx;
        self
    }

    pub fn pair(&self, w: &MukaiVector) -> Int {
        mukai_pair(self, w)
    }

    pub fn square(&self) -> Int {
        mukai_square(self)
    }

    /// `v^∨ = (r, −ξ, a)`.
    pub fn dual(&self) -> Self {
        MukaiVector { r: self.r, xi: -self.xi, s: self.s }
    }

    pub fn ell(&self) -> Int {
        ell(self)
    }

    /// Largest `k` with `v = k w` in the Mukai lattice, together with `w`.
    pub fn primitive_part(&self) -> (Int, MukaiVector) {
        let g = ell(self);
        if g == 0 {
            return (0, *self);
        }
        let mut best = 1;
        for k in 2..=g {
            if g % k == 0 && ((self.r + self.s) / k).rem_euclid(2) == 0 {
                best = k;
            }
        }
        let w = MukaiVector {
            r: self.r / best,
            xi: self.xi.div_exact(best).expect("k divides the content").with_kx(self.xi.kx),
            s: self.s / best,
        };
        (best, w)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_part().0 == 1
    }

    /// `v · e^D = (r, ξ + rD, a + (ξ, D) + r (D^2)/2)`.
    pub fn twist(&self, d: &NSClass) -> Self {
        MukaiVector {
            r: self.r,
            xi: self.xi + self.r * *d,
            s: self.s + 2 * self.xi.pair(d) + self.r * d.square(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.s == 0 && self.xi.is_numerically_zero()
    }
}

impl Add for MukaiVector {
    type Output = MukaiVector;
    fn add(self, o: MukaiVector) -> MukaiVector {
        MukaiVector { r: self.r + o.r, xi: self.xi + o.xi, s: self.s + o.s }
    }
}

impl Sub for MukaiVector {
    type Output = MukaiVector;
    fn sub(self, o: MukaiVector) -> MukaiVector {
        MukaiVector { r: self.r - o.r, xi: self.xi - o.xi, s: self.s - o.s }
    }
}

impl Neg for MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector { r: -self.r, xi: -self.xi, s: -self.s }
    }
}

impl Mul<MukaiVector> for Int {
    type Output = MukaiVector;
    fn mul(self, v: MukaiVector) -> MukaiVector {
        MukaiVector { r: self * v.r, xi: self * v.xi, s: self * v.s }
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.r, self.xi, self.s)
    }
}

impl FromStr for MukaiVector {
    type Err = Error;

    /// Parses `(r; [x1,...,x10]; s)` or `(r; [x1,...,x10+K]; s)`, where the
    /// last entry is `s = 2a`.
    fn from_str(src: &str) -> Result<Self> {
        let mut c = Cursor::new(src, 0);
        c.expect('(')?;
        let r = c.integer()?;
        c.expect(';')?;
        let xi = c.ns_class()?;
        c.expect(';')?;
        c.skip_ws();
        let at = c.pos;
        let s = c.integer()?;
        c.expect(')')?;
        c.finish()?;
        MukaiVector::new(r, xi, s).map_err(|e| match e {
            Error::Precondition(m) => Error::parse(at, m),
            other => other,
        })
    }
}

/// `⟨v, w⟩ = (ξ_v, ξ_w) − (r_v s_w + r_w s_v)/2`.
pub fn mukai_pair(v: &MukaiVector, w: &MukaiVector) -> Int {
    let num = v.r * w.s + w.r * v.s;
    debug_assert!(num % 2 == 0, "parity invariant guarantees an integer pairing");
    v.xi.pair(&w.xi) - num / 2
}

/// `⟨v^2⟩ = (ξ^2) − r s`.
pub fn mukai_square(v: &MukaiVector) -> Int {
    v.xi.square() - v.r * v.s
}

/// `ℓ(v) = gcd(r, c1, s)` over all ten coordinates of `ξ`.
pub fn ell(v: &MukaiVector) -> Int {
    v.xi.coords.iter().fold(num_integer::gcd(v.r, v.s), |g, &c| num_integer::gcd(g, c))
}

/// `v = (l r0, l ξ0, s/2)` with `gcd(r0, ξ0) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SlopeClass {
    pub l: Int,
    pub r0: Int,
    pub xi0: NSClass,
}

/// Splits off `l = gcd(r, content ξ)`, with the convention `gcd(r, 0) = r`.
pub fn slope_decompose(v: &MukaiVector) -> Result<SlopeClass> {
    if v.r <= 0 {
        return Err(Error::pre(format!("slope decomposition needs positive rank, got {}", v.r)));
    }
    let l = num_integer::gcd(v.r, v.xi.content());
    Ok(SlopeClass { l, r0: v.r / l, xi0: v.xi.div_exact(l).expect("l divides ξ") })
}

/// Bogomolov discriminant `Δ(v) = ⟨v^2⟩ + r^2`.
pub fn discriminant(v: &MukaiVector) -> Result<Int> {
    if v.r <= 0 {
        return Err(Error::pre("discriminant needs positive rank"));
    }
    Ok(v.square() + v.r * v.r)
}

/// Chern data `(r, c1, ch2)` of `v / sqrt(td_X)`, where `sqrt(td_X) = (1, 0, 1/2)`.
pub fn chern_character(v: &MukaiVector) -> (Int, NSClass, Ratio<Int>) {
    let r = Ratio::from_integer(v.r);
    (v.r, v.xi, v.a() - r / Ratio::from_integer(2))
}

/// `2 r c2 − (r − 1)(c1^2)` evaluated from the Chern character, independent of
/// the Mukai pairing.
pub fn discriminant_from_chern(v: &MukaiVector) -> Ratio<Int> {
    let (r, c1, ch2) = chern_character(v);
    let c1sq = Ratio::from_integer(c1.square());
    let c2 = c1sq / Ratio::from_integer(2) - ch2;
    Ratio::from_integer(2 * r) * c2 - Ratio::from_integer(r - 1) * c1sq
}

/// The primitive isotropic vector `w = l0 (r0 + ξ0) + a0 ϱ` on the ray of
/// `(r0, ξ0)`, with `a0 / l0 = (ξ0^2) / (2 r0)` and `l0` minimal.
pub fn isotropic_companion(r0: Int, xi0: &NSClass) -> Result<MukaiVector> {
    if r0 <= 0 {
        return Err(Error::pre("companion needs r0 > 0"));
    }
    if num_integer::gcd(r0, xi0.content()) != 1 {
        return Err(Error::pre("companion needs gcd(r0, ξ0) = 1"));
    }
    let x2 = xi0.square();
    for l0 in 1..=2 * r0 {
        let num = l0 * x2;
        if num % r0 != 0 {
            continue;
        }
        let s0 = num / r0;
        if (l0 * r0 - s0).rem_euclid(2) == 0 {
            return Ok(MukaiVector { r: l0 * r0, xi: l0 * xi0.numerical(), s: s0 });
        }
    }
    unreachable!("l0 = 2 r0 always satisfies both conditions")
}

/// Checks that `r0 | ⟨u, w⟩` where `(r0, ξ0)` is the slope class of `u` and
/// `w` its isotropic companion.
pub fn divisibility_check(u: &MukaiVector, w: &MukaiVector) -> Result<bool> {
    let sc = slope_decompose(u)?;
    let expected = isotropic_companion(sc.r0, &sc.xi0)?;
    if expected != w.with_kx(false) {
        return Err(Error::pre(format!("{w} is not the companion of the slope class of {u}")));
    }
    Ok(u.pair(w) % sc.r0 == 0)
}

/// `v = l u + n e1 + δ + a ϱ` with `u = (r0, d e2, 0)` and `δ ∈ U^⊥`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EllipticDecomposition {
    pub l: Int,
    pub n: Int,
    pub delta: NSClass,
    /// Twice the coefficient of `ϱ`.
    pub s: Int,
    pub r0: Int,
    pub d: Int,
}

impl EllipticDecomposition {
    /// `u = (r0, d e2, 0)`.
    pub fn base_u(&self) -> MukaiVector {
        MukaiVector { r: self.r0, xi: self.d * NSClass::e2(), s: 0 }
    }

    pub fn recompose(&self) -> MukaiVector {
        let e1 = MukaiVector { r: 0, xi: NSClass::e1(), s: 0 };
        let delta = MukaiVector { r: 0, xi: self.delta, s: 0 };
        let rho_part = MukaiVector { r: 0, xi: NSClass::ZERO, s: self.s };
        self.l * self.base_u() + self.n * e1 + delta + rho_part
    }
}

/// Writes `v ∈ (0, r0 e1, d)^⊥` in the basis adapted to `u = (r0, d e2, 0)`.
pub fn elliptic_decompose(v: &MukaiVector, r0: Int, d: Int) -> Result<EllipticDecomposition> {
    if r0 <= 0 || r0 % 2 != 0 {
        return Err(Error::pre(format!("r0 must be positive and even, got {r0}")));
    }
    if num_integer::gcd(r0, d) != 1 {
        return Err(Error::pre(format!("gcd({r0}, {d}) must be 1")));
    }
    if v.r % r0 != 0 {
        return Err(Error::pre(format!("rank {} is not divisible by {r0}", v.r)));
    }
    let f = MukaiVector { r: 0, xi: r0 * NSClass::e1(), s: 2 * d };
    if v.pair(&f) != 0 {
        return Err(Error::pre(format!("{v} is not orthogonal to (0, {r0} e1, {d})")));
    }
    let l = v.r / r0;
    // (ξ, e1) is the e2-coefficient and equals l d by orthogonality
    let n = v.xi.coords[0];
    let mut delta = v.xi;
    delta.coords[0] = 0;
    delta.coords[1] = 0;
    Ok(EllipticDecomposition { l, n, delta, s: v.s, r0, d })
}

/// Both sides of
/// `⟨v1,v2⟩ = (l2/2l1)⟨v1^2⟩ + (l1/2l2)⟨v2^2⟩ − (1/2 l1 l2)((l2 δ1 − l1 δ2)^2)`.
pub fn elliptic_pairing_identity(
    v1: &EllipticDecomposition,
    v2: &EllipticDecomposition,
) -> Result<(Ratio<Int>, Ratio<Int>)> {
    if v1.l <= 0 || v2.l <= 0 {
        return Err(Error::pre("both decompositions need l > 0"));
    }
    if (v1.r0, v1.d) != (v2.r0, v2.d) {
        return Err(Error::pre("decompositions use different base vectors u"));
    }
    let (w1, w2) = (v1.recompose(), v2.recompose());
    let lhs = Ratio::from_integer(w1.pair(&w2));
    let (l1, l2) = (v1.l, v2.l);
    let mix = l2 * v1.delta - l1 * v2.delta;
    let rhs = Ratio::new(l2 * w1.square(), 2 * l1) + Ratio::new(l1 * w2.square(), 2 * l2)
        - Ratio::new(mix.square(), 2 * l1 * l2);
    Ok((lhs, rhs))
}

/// Integer `a / b` rounded towards negative infinity.
