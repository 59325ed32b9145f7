//! The Néron–Severi lattice `NS_f(X) = U ⊕ E8(−1)` of an Enriques surface.
//!
//! Coordinates 0 and 1 are the hyperbolic pair `e1, e2` with `(e1, e2) = 1`;
//! coordinates 2..=9 are the simple roots of `E8(−1)` in Bourbaki labelling
//! (node 2 hangs off node 4, the others form the chain 1-3-4-5-6-7-8).
//! The canonical class `K_X` is 2-torsion and numerically trivial, so it is
//! carried as a separate bit that no pairing looks at.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shortvec::{lll, Ellipsoid};

/// Integer type used for all lattice data. Overflow is checked in every
/// build profile of this workspace.
pub type Int = i128;

/// Rank of `NS_f(X)`.
pub const DIM: usize = 10;

/// Edges of the E8 Dynkin diagram, 0-based Bourbaki labels.
pub const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7)];

const fn build_cartan() -> [[Int; 8]; 8] {
    let mut c = [[0 as Int; 8]; 8];
    let mut i = 0;
    while i < 8 {
        c[i][i] = 2;
        i += 1;
    }
    let mut k = 0;
    while k < E8_EDGES.len() {
        let (a, b) = E8_EDGES[k];
        c[a][b] = -1;
        c[b][a] = -1;
        k += 1;
    }
    c
}

const fn build_gram() -> [[Int; DIM]; DIM] {
    let c = build_cartan();
    let mut g = [[0 as Int; DIM]; DIM];
    g[0][1] = 1;
    g[1][0] = 1;
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            g[i + 2][j + 2] = -c[i][j];
            j += 1;
        }
        i += 1;
    }
    g
}

/// Positive definite Cartan matrix of E8.
pub const E8_CARTAN: [[Int; 8]; 8] = build_cartan();

/// Gram matrix of `NS_f(X)` in the fixed basis.
pub const GRAM: [[Int; DIM]; DIM] = build_gram();

/// A class in `NS(X)`: integer coordinates plus the coefficient of `K_X`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct NSClass {
    pub coords: [Int; DIM],
    #[serde(with = "bit")]
    pub kx: bool,
}

pub(crate) mod bit {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(*b))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(serde::de::Error::custom(format!("torsion bit must be 0 or 1, got {other}"))),
        }
    }
}

impl NSClass {
    pub const ZERO: NSClass = NSClass { coords: [0; DIM], kx: false };

    pub fn new(coords: [Int; DIM]) -> Self {
        NSClass { coords, kx: false }
    }

    pub fn with_kx(mut self, kx: bool) -> Self {
        self.kx = kx;
        self
    }

    /// The `i`-th basis vector.
    pub fn basis(i: usize) -> Self {
        let mut c = [0; DIM];
        c[i] = 1;
        NSClass::new(c)
    }

    pub fn e1() -> Self {
        Self::basis(0)
    }

    pub fn e2() -> Self {
        Self::basis(1)
    }

    /// The simple root with Bourbaki label `k` in `1..=8`.
    pub fn root(k: usize) -> Self {
        assert!((1..=8).contains(&k), "E8 labels run from 1 to 8");
        Self::basis(k + 1)
    }

    /// The torsion class `K_X`.
    pub fn k_x() -> Self {
        NSClass::ZERO.with_kx(true)
    }

    pub fn from_u_e8(x1: Int, x2: Int, y: &[Int]) -> Self {
        let mut c = [0; DIM];
        c[0] = x1;
        c[1] = x2;
        c[2..].copy_from_slice(y);
        NSClass::new(c)
    }

    /// Intersection number; the torsion bits are ignored.
    pub fn pair(&self, other: &NSClass) -> Int {
        pair_ns(self, other)
    }

    pub fn square(&self) -> Int {
        pair_ns(self, self)
    }

    /// True when the numerical class vanishes (the torsion bit may be set).
    pub fn is_numerically_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// gcd of the coordinates, 0 for the zero class.
    pub fn content(&self) -> Int {
        self.coords.iter().fold(0, |g, &c| num_integer::gcd(g, c))
    }

    /// Exact division of the coordinates, if possible. The torsion bit is dropped.
    pub fn div_exact(&self, k: Int) -> Option<NSClass> {
        if k == 0 || self.coords.iter().any(|c| c % k != 0) {
            return None;
        }
        let mut c = self.coords;
        for x in c.iter_mut() {
            *x /= k;
        }
        Some(NSClass::new(c))
    }

    /// Numerical part, with the torsion bit cleared.
    pub fn numerical(&self) -> NSClass {
        NSClass::new(self.coords)
    }

    pub fn mod2(&self) -> Mod2Class {
        mod2_class(self)
    }

    /// Coordinates of the U summand.
    pub fn u_part(&self) -> (Int, Int) {
        (self.coords[0], self.coords[1])
    }

    /// Coordinates of the E8(−1) summand in the root basis.
    pub fn e8_part(&self) -> [Int; 8] {
        let mut y = [0; 8];
        y.copy_from_slice(&self.coords[2..]);
        y
    }

    /// `max |coord|`, used to order candidate polarizations.
    pub fn height(&self) -> Int {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

/// Intersection form `x^T G y` on the numerical parts.
pub fn pair_ns(x: &NSClass, y: &NSClass) -> Int {
    // U block
    let mut acc = x.coords[0] * y.coords[1] + x.coords[1] * y.coords[0];
    for i in 0..8 {
        let xi = x.coords[i + 2];
        if xi == 0 {
            continue;
        }
        let mut row = 0;
        for j in 0..8 {
            row += E8_CARTAN[i][j] * y.coords[j + 2];
        }
        acc -= xi * row;
    }
    acc
}

/// Positive definite E8 form on root-basis coordinates.
pub fn e8_norm(y: &[Int]) -> Int {
    let mut acc = 0;
    for i in 0..8 {
        for j in 0..8 {
            acc += y[i] * E8_CARTAN[i][j] * y[j];
        }
    }
    acc
}

impl Add for NSClass {
    type Output = NSClass;
    fn add(self, o: NSClass) -> NSClass {
        let mut c = self.coords;
        for (a, b) in c.iter_mut().zip(o.coords) {
            *a += b;
        }
        NSClass { coords: c, kx: self.kx ^ o.kx }
    }
}

impl Sub for NSClass {
    type Output = NSClass;
    fn sub(self, o: NSClass) -> NSClass {
        self + (-o)
    }
}

impl Neg for NSClass {
    type Output = NSClass;
    fn neg(self) -> NSClass {
        let mut c = self.coords;
        for a in c.iter_mut() {
            *a = -*a;
        }
        // −K_X = K_X
        NSClass { coords: c, kx: self.kx }
    }
}

impl Mul<NSClass> for Int {
    type Output = NSClass;
    fn mul(self, x: NSClass) -> NSClass {
        let mut c = x.coords;
        for a in c.iter_mut() {
            *a *= self;
        }
        NSClass { coords: c, kx: x.kx && self.rem_euclid(2) == 1 }
    }
}

/// Residue of a class in `NS(X) ⊗ Z/2`: ten coordinate bits and the `K_X` bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Mod2Class {
    pub bits: [u8; DIM],
    pub kx: u8,
}

impl Mod2Class {
    pub fn is_zero(&self) -> bool {
        self.kx == 0 && self.bits.iter().all(|&b| b == 0)
    }

    /// True when all ten coordinate bits vanish (the `K_X` bit may not).
    pub fn numerically_even(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }
}

impl fmt::Display for Mod2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<String> = self.bits.iter().map(|b| b.to_string()).collect();
        write!(f, "({}; {})", bits.join(","), self.kx)
    }
}

pub fn mod2_class(x: &NSClass) -> Mod2Class {
    let mut bits = [0u8; DIM];
    for (b, c) in bits.iter_mut().zip(x.coords) {
        *b = c.rem_euclid(2) as u8;
    }
    Mod2Class { bits, kx: u8::from(x.kx) }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        let k = if self.kx { "+K" } else { "" };
        write!(f, "[{}{k}]", parts.join(","))
    }
}

/// Parser over a byte string that reports byte offsets.
pub(crate) struct Cursor<'a> {
    pub src: &'a str,
    pub pos: usize,
    pub base: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str, base: usize) -> Self {
        Cursor { src, pos: 0, base }
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.base + self.pos, msg)
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub fn expect(&mut self, ch: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected '{ch}', found '{c}'"))),
            None => Err(self.err(format!("expected '{ch}', found end of input"))),
        }
    }

    pub fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn integer(&mut self) -> Result<Int> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        text.parse::<Int>().map_err(|_| {
            self.pos = start;
            self.err(format!("expected an integer, found '{}'", &self.src[start..].chars().take(8).collect::<String>()))
        })
    }

    pub fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    pub fn ns_class(&mut self) -> Result<NSClass> {
        self.expect('[')?;
        let mut coords = [0; DIM];
        for (i, slot) in coords.iter_mut().enumerate() {
            if i > 0 {
                self.expect(',')?;
            }
            *slot = self.integer()?;
        }
        self.skip_ws();
        if self.peek() == Some(',') {
            return Err(self.err(format!("a class has exactly {DIM} coordinates")));
        }
        let mut kx = false;
        if self.eat('+') {
            self.expect('K')?;
            kx = true;
        }
        self.expect(']')?;
        // the torsion bit is also accepted after the bracket
        if !kx && self.eat('+') {
            self.expect('K')?;
            kx = true;
        }
        Ok(NSClass { coords, kx })
    }
}

impl FromStr for NSClass {
    type Err = Error;

    /// Parses `[a1,...,a10]`, `[a1,...,a10+K]` or `[a1,...,a10]+K`.
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor::new(s, 0);
        let x = c.ns_class()?;
        c.finish()?;
        Ok(x)
    }
}

/// Determinant by fraction-free Gaussian elimination.
pub fn determinant(m: &[Vec<Int>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * prev
}

/// `(positive, negative, zero)` inertia of a symmetric integer matrix,
/// by congruence diagonalisation over the rationals.
pub fn signature(m: &[Vec<Int>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // replace basis vector i by b_i + b_j; the new diagonal 2 a_ij is nonzero
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = &a[i][p] / &d;
            for &j in &active {
                let t = &f * &a[p][j];
                a[i][j] -= t;
            }
        }
        for &i in &active {
            a[i][p] = BigRational::zero();
            a[p][i] = BigRational::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

/// Gram matrix as nested vectors.
pub fn gram_rows() -> Vec<Vec<Int>> {
    GRAM.iter().map(|r| r.to_vec()).collect()
}

/// The linear condition `(x, dual) = value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub dual: NSClass,
    pub value: Int,
}

impl LinearConstraint {
    pub fn orthogonal_to(dual: NSClass) -> Self {
        LinearConstraint { dual, value: 0 }
    }

    pub fn holds(&self, x: &NSClass) -> bool {
        pair_ns(x, &self.dual) == self.value
    }
}

/// Every class `x` (with `kx = 0`) such that `lo <= (x^2) <= hi` and all
/// `constraints` hold, sorted lexicographically by coordinates.
///
/// The set is finite when the span of the constraint functionals contains a
/// class `c` with `(c^2) > 0`: then `(x, c)` is pinned and `c^⊥` is negative
/// definite. The implementation looks for such a `c` among the constraint
/// duals and their pairwise sums and differences.
///
/// Otherwise `hyperbolic_bound = Some(b)` must be given. It splits off the U
/// summand and restricts its two coordinates to `|x1|, |x2| <= b`; the E8(−1)
/// part is then bounded by `q(y) <= 2 x1 x2 − lo`. Without either certificate
/// the set is infinite (for instance `x1 e1 + y` with `y` a root and any `x1`)
/// and the call fails with [`Error::Infinite`].
pub fn enumerate_norm_range(
    lo: Int,
    hi: Int,
    constraints: &[LinearConstraint],
    hyperbolic_bound: Option<Int>,
) -> Result<Vec<NSClass>> {
    if lo > hi {
        return Err(Error::pre(format!("empty norm range: lo = {lo} > hi = {hi}")));
    }
    let mut out = Vec::new();
    if let Some(c) = positive_direction(constraints) {
        enumerate_with_positive(lo, hi, &c, constraints, &mut out);
    } else if let Some(b) = hyperbolic_bound {
        if b < 0 {
            return Err(Error::pre("hyperbolic bound must be nonnegative"));
        }
        enumerate_hyperbolic_box(lo, hi, b, constraints, &mut out)?;
    } else {
        return Err(Error::Infinite(
            "no constraint pins a positive direction and no hyperbolic bound was given".into(),
        ));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn positive_direction(constraints: &[LinearConstraint]) -> Option<LinearConstraint> {
    for c in constraints {
        if c.dual.square() > 0 {
            return Some(*c);
        }
    }
    for (i, a) in constraints.iter().enumerate() {
        for b in &constraints[i + 1..] {
            let sum = LinearConstraint { dual: a.dual + b.dual, value: a.value + b.value };
            if sum.dual.square() > 0 {
                return Some(sum);
            }
            let diff = LinearConstraint { dual: a.dual - b.dual, value: a.value - b.value };
            if diff.dual.square() > 0 {
                return Some(diff);
            }
        }
    }
    None
}

/// Unimodular `U` with `g U = (d, 0, …, 0)`, `d = gcd(g) > 0`.
fn kernel_basis(g: [Int; DIM]) -> (Int, [[Int; DIM]; DIM]) {
    let mut g = g;
    // columns of U are stored as rows of `u`
    let mut u = [[0; DIM]; DIM];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = 1;
    }
    loop {
        let nonzero: Vec<usize> = (0..DIM).filter(|&i| g[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| g[i].abs()).expect("nonempty");
        for &j in &nonzero {
            if j != p {
                let q = g[j].div_euclid(g[p]);
                g[j] -= q * g[p];
                let up = u[p];
                for (a, b) in u[j].iter_mut().zip(up) {
                    *a -= q * b;
                }
            }
        }
    }
    let p = (0..DIM).find(|&i| g[i] != 0).expect("functional is nonzero");
    g.swap(0, p);
    u.swap(0, p);
    if g[0] < 0 {
        g[0] = -g[0];
        for a in u[0].iter_mut() {
            *a = -*a;
        }
    }
    (g[0], u)
}

fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Vec<BigRational> {
    let n = b.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("definite matrix is invertible");
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= piv.clone();
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=n {
                    let t = &m[c][k] * &f;
                    m[r][k] -= t;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

fn enumerate_with_positive(lo: Int, hi: Int, c: &LinearConstraint, all: &[LinearConstraint], out: &mut Vec<NSClass>) {
    affine_slice(lo, 1, &NSClass::ZERO, c, |x| {
        let n = x.square();
        if n >= lo && n <= hi && all.iter().all(|k| k.holds(&x)) {
            out.push(x);
        }
    });
}

/// Every `x` with `(x, c) = k` and `((a x − s)^2) >= lo`, for `(c^2) > 0`, `a >= 1`.
pub fn enumerate_affine(lo: Int, hi: Int, a: Int, s: &NSClass, c: &LinearConstraint) -> Result<Vec<NSClass>> {
    if lo > hi {
        return Err(Error::pre(format!("empty norm range: lo = {lo} > hi = {hi}")));
    }
    if a < 1 {
        return Err(Error::pre("the scale a must be positive"));
    }
    if c.dual.square() <= 0 {
        return Err(Error::Infinite("the slice functional must have positive square".into()));
    }
    let mut out = Vec::new();
    affine_slice(lo, a, s, c, |x| {
        let n = (a * x - *s).square();
        if n >= lo && n <= hi {
            out.push(x);
        }
    });
    out.sort();
    Ok(out)
}

// On the slice, x = x0 + K z with K a basis of c^⊥, which is negative
// definite. With N = −K^T G K, b = K^T G x0 − K^T G s / a the condition
// (a x − s)^2 >= lo reads z^T N z − 2 b^T z <= ((a x0 − s)^2 − lo) / a^2,
// the centered ellipsoid (z − m)^T N (z − m) <= C + m^T N m, m = N^{-1} b.
fn affine_slice(lo: Int, a: Int, s: &NSClass, c: &LinearConstraint, mut visit: impl FnMut(NSClass)) {
    let g: [Int; DIM] = std::array::from_fn(|i| pair_ns(&NSClass::basis(i), &c.dual));
    let (d, u) = kernel_basis(g);
    if c.value % d != 0 {
        return;
    }
    let x0 = (c.value / d) * NSClass::new(u[0]);
    let raw: Vec<NSClass> = (1..DIM).map(|i| NSClass::new(u[i])).collect();
    let raw_gram: Vec<Vec<BigInt>> =
        raw.iter().map(|p| raw.iter().map(|q| BigInt::from(-pair_ns(p, q))).collect()).collect();
    let kers: Vec<NSClass> = lll(&raw_gram)
        .iter()
        .map(|row| row.iter().zip(&raw).fold(NSClass::ZERO, |acc, (&k, b)| acc + k * *b))
        .collect();
    let big = |x: Int| BigRational::from_integer(BigInt::from(x));
    let ar = big(a);
    let nmat: Vec<Vec<BigInt>> =
        kers.iter().map(|p| kers.iter().map(|q| BigInt::from(-pair_ns(p, q))).collect()).collect();
    let nrat: Vec<Vec<BigRational>> =
        nmat.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let bvec: Vec<BigRational> =
        kers.iter().map(|k| big(pair_ns(k, &x0)) - big(pair_ns(k, s)) / ar.clone()).collect();
    let m = solve_rational(&nrat, &bvec);
    let mut mnm = BigRational::zero();
    for i in 0..DIM - 1 {
        for j in 0..DIM - 1 {
            mnm += &m[i] * &nrat[i][j] * &m[j];
        }
    }
    let bound = (big((a * x0 - *s).square()) - big(lo)) / (ar.clone() * ar) + mnm;
    if bound.is_negative() {
        return;
    }
    let ell = Ellipsoid::new(&nmat).expect("orthogonal complement of a positive class is definite");
    ell.for_each_centered(&m, &bound, |z| {
        let mut v = x0;
        for (zi, k) in z.iter().zip(&kers) {
            if *zi != 0 {
                v = v + *zi * *k;
            }
        }
        debug_assert!(c.holds(&v));
        visit(v);
    });
}

fn enumerate_hyperbolic_box(lo: Int, hi: Int, b: Int, all: &[LinearConstraint], out: &mut Vec<NSClass>) -> Result<()> {
    let qmax = 2 * b * b - lo;
    let ys = e8_ball(qmax);
    for x1 in -b..=b {
        for x2 in -b..=b {
            let h = 2 * x1 * x2;
            for (q, y) in &ys {
                let n = h - q;
                if n < lo || n > hi {
                    continue;
                }
                let v = NSClass::from_u_e8(x1, x2, y);
                if all.iter().all(|k| k.holds(&v)) {
                    out.push(v);
                }
            }
        }
    }
    Ok(())
}

/// All E8 vectors (root-basis coordinates) with positive norm `q(y) <= bound`,
/// paired with their norm, the zero vector included.
pub fn e8_ball(bound: Int) -> Vec<(Int, [Int; 8])> {
    let m: Vec<Vec<BigInt>> = E8_CARTAN.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let ell = Ellipsoid::new(&m).expect("E8 Cartan matrix is definite");
    let mut out = Vec::new();
    ell.for_each(&BigInt::from(bound), |y| {
        let mut a = [0; 8];
        a.copy_from_slice(y);
        out.push((e8_norm(&a), a));
    });
    out.sort();
    out
}
