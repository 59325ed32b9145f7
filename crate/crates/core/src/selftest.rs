//! Self-verification suites over every module, at two scales. Each suite
//! counts the properties it checked and keeps the first counterexample.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::existence::{moduli_dim, mu_stable_exists, Dimension, ExistenceReport, SurfaceConfig};
use crate::lattice::{determinant, e8_ball, gram_rows, signature, Int, NSClass};
use crate::mukai::{
    discriminant, discriminant_from_chern, divisibility_check, elliptic_decompose, elliptic_pairing_identity,
    isotropic_companion, MukaiVector,
};
use crate::oracle::{e8_root_count, naive_walls};
use crate::strata::{
    boundary_divisors, elliptic_codim, elliptic_low_codim_blocks, enumerate_hn_types, hn_stratum_dim,
    support_locus_bounds, verify_min_codim, StratumKind,
};
use crate::transforms::{
    canonical_reduce, find_pq, hilb_points, invariants_of, multiple_fiber_bound, psi_image, psi_invariants, reflect,
    reflect_explicit, reflection_part, ReflectionKind, ReflectionSpec,
};
use crate::walls::{candidate_walls, chamber_representative, h0, is_general, window_low, WallConfig};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// 10^3 random samples, reduced exhaustive ranges.
    Quick,
    /// 10^4 random samples, full exhaustive ranges.
    Full,
}

impl Level {
    pub fn samples(self) -> usize {
        match self {
            Level::Quick => 1_000,
            Level::Full => 10_000,
        }
    }

    /// Height for the exhaustive divisibility sweep.
    pub fn divisibility_height(self) -> Int {
        match self {
            Level::Quick => 4,
            Level::Full => 6,
        }
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(Error::parse(0, format!("unknown selftest level {other:?}, expected quick or full"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Quick => "quick",
            Level::Full => "full",
        })
    }
}

/// Outcome of one suite.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
    /// Counts that are reported but not required to vanish.
    pub info: Vec<String>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

struct Suite {
    report: SuiteReport,
    start: Instant,
}

impl Suite {
    fn new(name: &str) -> Self {
        Suite {
            report: SuiteReport {
                name: name.to_string(),
                checks: 0,
                failures: 0,
                first_failure: None,
                info: Vec::new(),
                millis: 0,
            },
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok {
            self.report.failures += 1;
            if self.report.first_failure.is_none() {
                self.report.first_failure = Some(what());
            }
        }
    }

    /// Records an error from a call that was expected to succeed.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(t) => Some(t),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn info(&mut self, line: String) {
        self.report.info.push(line);
    }

    fn finish(mut self) -> SuiteReport {
        self.report.millis = self.start.elapsed().as_millis();
        self.report
    }
}

fn mv(r: Int, xi: NSClass, s: Int) -> MukaiVector {
    MukaiVector::new(r, xi, s).expect("fixed vectors satisfy the parity condition")
}

fn e1() -> NSClass {
    NSClass::e1()
}

fn e2() -> NSClass {
    NSClass::e2()
}

fn rand_ns(rng: &mut StdRng, b: Int) -> NSClass {
    NSClass::new(std::array::from_fn(|_| rng.gen_range(-b..=b))).with_kx(rng.gen())
}

fn rand_e8(rng: &mut StdRng, b: Int) -> NSClass {
    let mut x = NSClass::new(std::array::from_fn(|_| rng.gen_range(-b..=b)));
    x.coords[0] = 0;
    x.coords[1] = 0;
    x
}

fn with_parity(r: Int, s: Int) -> Int {
    if (r - s).rem_euclid(2) == 0 {
        s
    } else {
        s + 1
    }
}

fn rand_vector(rng: &mut StdRng) -> MukaiVector {
    let r = rng.gen_range(-6..=6);
    let s = with_parity(r, rng.gen_range(-10..=10));
    mv(r, rand_ns(rng, 3), s)
}

/// A random rigid vector of the given kind; one draw in eight is self-dual.
fn rand_rigid(rng: &mut StdRng, kind: ReflectionKind) -> ReflectionSpec {
    let target = match kind {
        ReflectionKind::Minus1 => -1,
        ReflectionKind::Minus2 => -2,
    };
    if rng.gen_range(0..8) == 0 {
        let v0 = match kind {
            ReflectionKind::Minus1 => MukaiVector::structure_sheaf(),
            ReflectionKind::Minus2 => mv(0, NSClass::root(rng.gen_range(1..=8)), 0),
        };
        return ReflectionSpec::new(v0).expect("rigid by construction");
    }
    loop {
        let r0 = rng.gen_range(1..=4);
        let xi = rand_ns(rng, 2);
        let num = xi.square() - target;
        if num % r0 != 0 || (num / r0 - r0).rem_euclid(2) != 0 {
            continue;
        }
        let v0 = mv(r0, xi, num / r0);
        let spec = ReflectionSpec::new(v0).expect("square is −1 or −2");
        debug_assert_eq!(spec.kind, kind);
        return spec;
    }
}

/// Gram matrix, unimodularity, signature and the E8 root count.
pub fn lattice_suite() -> SuiteReport {
    let mut s = Suite::new("lattice");
    let g = gram_rows();
    let n = g.len();
    s.check(n == 10, || format!("rank {n} ≠ 10"));
    for i in 0..n {
        s.check(g[i][i] % 2 == 0, || format!("diagonal entry {i} is odd"));
        for j in 0..n {
            s.check(g[i][j] == g[j][i], || format!("Gram not symmetric at ({i},{j})"));
        }
    }
    let det = determinant(&g);
    s.check(det == BigInt::from(1) || det == BigInt::from(-1), || format!("det = {det}"));
    let sig = signature(&g);
    s.check(sig == (1, 9, 0), || format!("signature {sig:?} ≠ (1, 9, 0)"));
    let cartan_roots = e8_ball(2).iter().filter(|(q, _)| *q == 2).count();
    s.check(cartan_roots == 240, || format!("Fincke–Pohst finds {cartan_roots} roots"));
    let std_roots = e8_root_count();
    s.check(std_roots == 240, || format!("standard model finds {std_roots} roots"));
    for k in 1..=8 {
        let a = NSClass::root(k);
        s.check(a.square() == -2, || format!("α_{k} has square {}", a.square()));
    }
    s.check(e1().square() == 0 && e2().square() == 0 && e1().pair(&e2()) == 1, || "U block is wrong".into());
    s.finish()
}

/// Every numeric instance stated for the theory, reproduced exactly.
pub fn instance_suite() -> SuiteReport {
    let mut s = Suite::new("instances");
    let cfg = SurfaceConfig::default();
    let o = MukaiVector::structure_sheaf();
    s.check(o.square() == -1, || format!("⟨(1,0,½)^2⟩ = {}", o.square()));
    let w = mv(2, e2(), 0);
    s.check(w.square() == 0, || format!("⟨(2,e2,0)^2⟩ = {}", w.square()));
    let v = mv(2, NSClass::ZERO, -2);
    s.check(v.square() == 4, || format!("⟨(2,0,−1)^2⟩ = {}", v.square()));
    if let Some(rep) = s.ok(mu_stable_exists(&v, None, &cfg), || "existence for (2,0,−1)".into()) {
        s.check(rep.mu_stable_exists && rep.threshold == 4, || {
            format!("(2,0,−1): exists = {}, threshold = {}", rep.mu_stable_exists, rep.threshold)
        });
        s.check(rep.stack_dim.dim == Dimension::Exact(4), || format!("(2,0,−1): dim {:?}", rep.stack_dim.dim));
    }
    for (src, dst) in [
        (mv(0, NSClass::ZERO, 2), mv(0, 2 * e1(), 2)),
        (mv(0, 4 * e1(), 2), mv(0, -2 * e1(), 2)),
        (mv(0, e1(), 0), mv(0, -e1(), 0)),
    ] {
        let img = psi_image(&src);
        s.check(img.vector == Some(dst), || format!("Ψ{src} = {:?}, expected {dst}", img.vector));
    }
    s.check(matches!(find_pq(2, 1), Ok((1, 0, _))), || format!("find_pq(2,1) = {:?}", find_pq(2, 1)));
    if let Some(ds) = s.ok(boundary_divisors(2, 1), || "boundary divisors (2,1)".into()) {
        let u2 = mv(0, 4 * e1(), 2);
        s.check(ds[3].u == u2 && ds[3].pairing == 2, || format!("D4 = {:?}", ds[3]));
        s.check(ds[0].u == mv(0, e1(), 0) && ds[0].pairing == 1, || format!("D1 = {:?}", ds[0]));
        let v = mv(2, e2() + 3 * e1() + NSClass::root(4), 0);
        s.check(v.pair(&u2) == 2, || format!("⟨v, u2⟩ = {}", v.pair(&u2)));
    }
    for n in 0..=20 {
        let v2 = mv(4, 2 * (e2() + (n + 1) * e1()), 2);
        s.check(v2.square() == 8 * n, || format!("⟨v''^2⟩ = {} for n = {n}", v2.square()));
        s.check(v2.ell() == 2 && v2.is_primitive(), || format!("v'' = {v2} has ℓ ≠ 2"));
        if let Some(red) = s.ok(canonical_reduce(&v2, None), || format!("reduce {v2}")) {
            s.check(red.output == v2, || format!("reduce {v2} gave {}", red.output));
        }
    }
    if let Some(b) = s.ok(support_locus_bounds(2), || "support bounds at 2".into()) {
        s.check((b.dim_total, b.dim_m1_bound, b.dim_m2_bound, b.codim_ok) == (8, 6, 6, true), || format!("{b:?}"));
    }
    for (args, want) in [((1, 2, 2), 1), ((1, 1, 2), 0), ((3, 4, 2), 3)] {
        let got = multiple_fiber_bound(args.0, args.1, args.2);
        s.check(got == Ok(want), || format!("multiple_fiber_bound{args:?} = {got:?}"));
    }
    for (args, want) in [((1, 1), 0), ((-3, 1), 2)] {
        let got = hilb_points(args.0, args.1);
        s.check(got == Ok(want), || format!("hilb_points{args:?} = {got:?}"));
    }
    for (r0, xi0, want) in [(2, e2(), mv(2, e2(), 0)), (1, NSClass::ZERO, mv(2, NSClass::ZERO, 0)), (2, e1() + e2(), mv(4, 2 * (e1() + e2()), 2))] {
        let got = isotropic_companion(r0, &xi0);
        s.check(got == Ok(want), || format!("companion({r0}, {xi0}) = {got:?}"));
    }
    for (v, want) in [(o, 0), (mv(2, NSClass::ZERO, -2), 8), (mv(2, e2(), 0), 4)] {
        s.check(discriminant(&v) == Ok(want), || format!("Δ{v} = {:?}", discriminant(&v)));
    }
    let cases = [(1, 1, 0, 0), (1, 1, -1, 2)];
    for (l, ri, di, want) in cases {
        let got = elliptic_codim(2, 1, &[(l, ri, di)]);
        s.check(got == Ok(want), || format!("elliptic_codim(2,1,[({l},{ri},{di})]) = {got:?}"));
    }
    s.check(elliptic_codim(2, 1, &[(2, 2, 0)]).is_err(), || "block (2,2,0) accepted".into());
    s.finish()
}

/// Isometry, corrected involution and the explicit formula for reflections.
pub fn reflection_suite(level: Level) -> SuiteReport {
    let mut s = Suite::new("reflections");
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let n = level.samples();
    for kind in [ReflectionKind::Minus1, ReflectionKind::Minus2] {
        let mut literal_fail = 0usize;
        let mut self_dual = 0usize;
        for _ in 0..n {
            let spec = rand_rigid(&mut rng, kind);
            let back = spec.dual();
            let (v, w) = (rand_vector(&mut rng), rand_vector(&mut rng));
            let (rv, rw) = (reflect(&spec, &v), reflect(&spec, &w));
            s.check(rv.pair(&rw) == v.pair(&w), || format!("⟨Rv,Rw⟩ ≠ ⟨v,w⟩ for v0 = {}, v = {v}, w = {w}", spec.v0));
            s.check(MukaiVector::new(rv.r(), rv.xi(), rv.s()).is_ok(), || format!("R{v} breaks parity"));
            s.check(reflect(&back, &rv) == v, || format!("R_dual(R v) ≠ v for v0 = {}, v = {v}", spec.v0));
            let u = spec.v0.dual();
            let su = reflection_part(kind, &u, &v);
            s.check(reflection_part(kind, &u, &su) == v, || format!("S^2 ≠ id for u = {u}, v = {v}"));
            s.check(v.dual().dual() == v, || format!("D^2 ≠ id for {v}"));
            let twice = reflect(&spec, &rv);
            if spec.is_self_dual() {
                self_dual += 1;
                s.check(twice == v, || format!("R^2 ≠ id for self-dual v0 = {}, v = {v}", spec.v0));
            } else if twice != v {
                literal_fail += 1;
            }
        }
        s.info(format!(
            "{kind:?}: {n} pairs, {self_dual} with self-dual v0; literal R∘R ≠ id on {literal_fail} pairs with v0^∨ ≠ ±v0"
        ));
    }
    let specs = [
        MukaiVector::structure_sheaf(),
        mv(1, e1() + e2(), 3),
        mv(3, e1() + e2(), 1),
        mv(0, NSClass::root(1), 0),
        mv(2, e1() + e2(), 2),
        mv(4, 3 * e1() + e2(), 2),
    ];
    for v0 in specs {
        let Some(spec) = s.ok(ReflectionSpec::new(v0), || format!("spec {v0}")) else { continue };
        let c = spec.kind.coefficient();
        for l in 1..=10 {
            for b in 1..=10 {
                if c * b * v0.r() - l <= 0 {
                    continue;
                }
                let src = l * v0 - b * MukaiVector::rho();
                let want = reflect_explicit(&spec, l, b);
                s.check(reflect(&spec, &src) == want, || format!("explicit formula fails for v0 = {v0}, l = {l}, b = {b}"));
            }
        }
    }
    s.finish()
}

/// Pairing integrality, discriminant, elliptic identity, divisibility and
/// the ℓ = 2 congruence, plus Ψ, reduction and Bézout checks.
pub fn identity_suite(level: Level) -> SuiteReport {
    let mut s = Suite::new("identities");
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let n = level.samples();
    for _ in 0..n {
        let (v, w) = (rand_vector(&mut rng), rand_vector(&mut rng));
        s.check((v.r() * w.s() + w.r() * v.s()) % 2 == 0, || format!("⟨{v},{w}⟩ not integral"));
        s.check(v.dual().pair(&w.dual()) == v.pair(&w), || format!("dualization not isometric on {v}, {w}"));
        s.check(MukaiVector::new((v + w).r(), (v + w).xi(), (v + w).s()).is_ok(), || format!("{v} + {w} breaks parity"));
    }
    for _ in 0..n {
        let r = rng.gen_range(1..=8);
        let v = mv(r, rand_ns(&mut rng, 4), with_parity(r, rng.gen_range(-20..=20)));
        let d = discriminant(&v).map(Ratio::from_integer);
        s.check(d == Ok(discriminant_from_chern(&v)), || format!("Δ{v} disagrees with the Chern character"));
    }
    let mut decomps = 0;
    while decomps < n {
        let r0 = 2 * rng.gen_range(1..=3);
        let d: Int = rng.gen_range(-5..=5);
        if r0.gcd(&d) != 1 {
            continue;
        }
        let pick = |rng: &mut StdRng| {
            let l = rng.gen_range(1..=4);
            let xi = (l * d) * e2() + rng.gen_range(-6..=6) * e1() + rand_e8(rng, 3);
            let r = l * r0;
            mv(r, xi, with_parity(r, rng.gen_range(-12..=12)))
        };
        let (v1, v2) = (pick(&mut rng), pick(&mut rng));
        let (Some(a), Some(b)) = (
            s.ok(elliptic_decompose(&v1, r0, d), || format!("decompose {v1}")),
            s.ok(elliptic_decompose(&v2, r0, d), || format!("decompose {v2}")),
        ) else {
            continue;
        };
        decomps += 1;
        s.check(a.recompose() == v1, || format!("recompose {v1}"));
        if let Some((lhs, rhs)) = s.ok(elliptic_pairing_identity(&a, &b), || "pairing identity".into()) {
            s.check(lhs == rhs, || format!("identity fails for {v1}, {v2}: {lhs} ≠ {rhs}"));
        }
    }
    // u = (r, x e2 + y e1 + z α_k, s) with every coefficient of size ≤ h
    let h = level.divisibility_height();
    let mut div_checked = 0u64;
    for k in 1..=8 {
        for r in 1..=h {
            for x in -h..=h {
                for y in -h..=h {
                    for z in -h..=h {
                        let xi = x * e2() + y * e1() + z * NSClass::root(k);
                        for sv in -h..=h {
                            let Ok(u) = MukaiVector::new(r, xi, sv) else { continue };
                            let l = num_integer::gcd(r, xi.content());
                            let (r0, xi0) = (r / l, xi.div_exact(l).expect("l divides ξ"));
                            let Ok(w) = isotropic_companion(r0, &xi0) else { continue };
                            div_checked += 1;
                            s.check(divisibility_check(&u, &w) == Ok(true), || format!("{r0} ∤ ⟨{u}, {w}⟩"));
                        }
                    }
                }
            }
        }
    }
    s.info(format!("divisibility: {div_checked} vectors at height ≤ {h}"));
    // ℓ = 2 members of the (2,1) family: l u + n e1 + δ + a ϱ with u = (2, e2, 0)
    let ball = e8_ball(match level {
        Level::Quick => 2,
        Level::Full => 4,
    });
    let mut ell2 = 0u64;
    for l in 1..=4 {
        for nn in -4..=4 {
            for (_, y) in &ball {
                let delta = 2 * NSClass::from_u_e8(0, 0, y);
                for sv in -8..=8 {
                    let Ok(v) = MukaiVector::new(2 * l, l * e2() + nn * e1() + delta, sv) else { continue };
                    if v.ell() != 2 || !v.is_primitive() {
                        continue;
                    }
                    ell2 += 1;
                    let even = v.r() % 2 == 0 && v.s() % 2 == 0 && v.xi().coords.iter().all(|c| c % 2 == 0);
                    s.check(even && v.square() % 8 == 0, || format!("ℓ = 2 vector {v} has ⟨v^2⟩ = {}", v.square()));
                }
            }
        }
    }
    s.check(ell2 > 0, || "no ℓ = 2 vectors enumerated".into());
    s.info(format!("ℓ = 2 congruence: {ell2} vectors"));
    // Ψ on the sublattice and its invariants
    for _ in 0..n {
        let r = rng.gen_range(-6..=6);
        let v = mv(r, rng.gen_range(-8..=8) * e1(), with_parity(r, rng.gen_range(-8..=8)));
        let img = psi_image(&v);
        match img.vector {
            Some(pv) => {
                s.check(invariants_of(&pv) == psi_invariants(&v), || format!("Ψ{v} = {pv} has wrong invariants"));
                s.check(pv.square() == v.square(), || format!("Ψ changes ⟨v^2⟩ on {v}"));
                s.check(psi_invariants(&v).chi == (v.r() + v.s()) / 2, || format!("χ not preserved on {v}"));
            }
            None => s.check(false, || format!("Ψ undefined on sublattice vector {v}")),
        }
    }
    // reduction to ranks 2 and 4
    let mut reduced = 0;
    while reduced < n {
        let r = 2 * rng.gen_range(1..=4);
        let v = mv(r, rand_ns(&mut rng, 3), with_parity(r, rng.gen_range(-20..=20)));
        if !v.is_primitive() || v.square() < 0 || (v.ell() == 2 && v.square() % 8 != 0) {
            continue;
        }
        reduced += 1;
        if let Some(red) = s.ok(canonical_reduce(&v, None), || format!("reduce {v}")) {
            s.check(red.output.square() == v.square() && red.output.ell() == v.ell(), || format!("reduce {v}"));
            s.check(red.output.r() == 2 * v.ell(), || format!("reduce {v} landed in rank {}", red.output.r()));
        }
    }
    // find_pq: exactly one p in (0, r) with d p ≡ 1 mod r
    for r in 2..=40 as Int {
        for d in -40..=40 as Int {
            if r.gcd(&d) != 1 {
                continue;
            }
            let all: Vec<Int> = (1..r).filter(|p| (d * p - 1).rem_euclid(r) == 0).collect();
            let got = find_pq(r, d);
            s.check(
                all.len() == 1 && matches!(got, Ok((p, q, _)) if p == all[0] && d * p - r * q == 1),
                || format!("find_pq({r},{d}) = {got:?}, scan {all:?}"),
            );
        }
    }
    s.finish()
}

/// Vectors with `⟨v^2⟩ > 0` for the codimension checks, the exceptional
/// shapes `2 v0` with `⟨v0^2⟩ = 1` included.
pub fn strata_test_vectors() -> Vec<MukaiVector> {
    let bases = [NSClass::ZERO, e1(), e2(), e1() + e2(), e2() + NSClass::root(1), 2 * e1() + e2()];
    let mut out = Vec::new();
    for r in 1..=6 {
        for base in bases {
            for m in 0..=3 {
                if base == NSClass::ZERO && m > 0 {
                    continue;
                }
                for sv in -20..=20 {
                    if let Ok(v) = MukaiVector::new(r, m * base, sv) {
                        if v.square() > 0 && v.square() <= 32 {
                            out.push(v);
                        }
                    }
                }
            }
        }
    }
    for v0 in [mv(1, NSClass::ZERO, -1), mv(1, e1() + e2(), 1), mv(3, 2 * e1() + e2(), 1)] {
        let v = 2 * v0;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Codimension bounds at a height bound, the bilinearity ledger, the case A
/// cross-pairings and the fiber-block classification.
pub fn strata_suite(height_bound: Int) -> SuiteReport {
    let mut s = Suite::new("strata");
    let cfg = SurfaceConfig::default();
    let vectors = strata_test_vectors();
    let mut types = 0usize;
    let mut exceptional = 0usize;
    let mut hn_codim_one = 0usize;
    for v in &vectors {
        let Some(rep) = s.ok(verify_min_codim(v, height_bound, &cfg), || format!("verify_min_codim {v}")) else {
            continue;
        };
        types += rep.types_checked;
        exceptional += usize::from(rep.exceptional);
        s.check(rep.positive(), || format!("{v}: a stratum of codim {:?} above the threshold", rep.min()));
        s.check(rep.pss_dichotomy(), || {
            format!("{v}: pss codim {:?} with exceptional = {}", rep.pss_min, rep.exceptional)
        });
        if rep.above_threshold && !rep.exceptional && rep.hn_min == Some(1) {
            hn_codim_one += 1;
        }
        for kind in [StratumKind::HnSlope, StratumKind::HnSurface] {
            let Some(list) = s.ok(enumerate_hn_types(v, height_bound, kind, &cfg), || format!("types of {v}")) else {
                continue;
            };
            for t in list {
                let parts = t.surface_vectors();
                let total = parts.iter().fold(mv(0, NSClass::ZERO, 0), |a, b| a + *b);
                let mut ledger: Int = parts.iter().map(|p| p.square()).sum();
                let mut cross_ok = true;
                for i in 0..parts.len() {
                    for j in i + 1..parts.len() {
                        let p = parts[i].pair(&parts[j]);
                        ledger += 2 * p;
                        cross_ok &= p >= 1;
                    }
                }
                s.check(total.r() == v.r() && total.xi().coords == v.xi().coords && total.s() == v.s(), || {
                    format!("{v}: blocks {parts:?} do not sum to v")
                });
                s.check(ledger == v.square(), || format!("{v}: bilinearity ledger {ledger} ≠ {}", v.square()));
                if kind == StratumKind::HnSlope && rep.case == crate::existence::Case::A && v.r() >= 2 {
                    s.check(cross_ok, || format!("{v}: case A type {parts:?} has a cross-pairing below 1"));
                }
            }
        }
    }
    s.check(exceptional >= 3, || format!("only {exceptional} exceptional shapes tested"));
    s.info(format!(
        "{} vectors, {types} types at bound {height_bound}; {hn_codim_one} non-exceptional vectors have HN codim 1",
        vectors.len()
    ));
    // hn_stratum_dim on the exceptional split of (2,0,−1)
    let v0 = mv(1, NSClass::ZERO, -1);
    s.check(hn_stratum_dim(&[(v0, 1), (v0, 1)]) == Ok((3, 1)), || "(2,0,−1) split dim".into());
    let blocks = elliptic_low_codim_blocks(2, 1, 1);
    s.check(blocks == Ok(vec![(1, 1, 0), (1, 2, 0), (2, 1, 0)]), || format!("(2,1) blocks {blocks:?}"));
    for r in (2..=12).step_by(2) {
        for d in -12..=12 {
            if r.gcd(&d) != 1 {
                continue;
            }
            if let Some(ds) = s.ok(boundary_divisors(r, d), || format!("boundary ({r},{d})")) {
                let want = [1, 1, 2, 2];
                let got: Vec<Int> = ds.iter().map(|b| b.pairing).collect();
                s.check(got == want, || format!("boundary ({r},{d}) pairings {got:?}"));
            }
        }
    }
    for l2 in (2..=200).step_by(2) {
        let b = support_locus_bounds(l2);
        s.check(matches!(b, Ok(ref x) if x.codim_ok), || format!("support bounds at {l2}: {b:?}"));
    }
    s.finish()
}

/// The three listing vectors checked against the box-search oracle.
pub fn wall_oracle_vectors() -> [MukaiVector; 3] {
    [mv(2, NSClass::ZERO, 0), mv(2, e2(), 0), mv(2, NSClass::ZERO, -2)]
}

/// Listing against the oracle, soundness, determinism and chambers.
pub fn wall_suite(level: Level) -> SuiteReport {
    let mut s = Suite::new("walls");
    let cfg = WallConfig::default();
    for v in wall_oracle_vectors() {
        let (Some(fast), Some(slow)) = (
            s.ok(candidate_walls(&v, &cfg), || format!("walls of {v}")),
            s.ok(naive_walls(&v, &cfg), || format!("oracle walls of {v}")),
        ) else {
            continue;
        };
        s.check(!fast.is_empty() && fast == slow, || format!("{v}: {} walls, oracle {}", fast.len(), slow.len()));
        s.info(format!("{v}: {} walls", fast.len()));
        for w in &fast {
            let in_window = matches!(window_low(&v, w.r_f, &cfg), Ok(lo) if w.norm < 0 && w.norm >= lo);
            s.check(in_window, || format!("{v}: wall {} outside its window", w.eta));
            s.check((w.r_f * v.xi() - w.eta).div_exact(v.r()).is_some(), || format!("{v}: wall {} congruence", w.eta));
        }
        s.check(candidate_walls(&v, &cfg).as_ref() == Ok(&fast), || format!("{v}: listing not stable"));
    }
    let mut chamber = vec![MukaiVector::structure_sheaf(), mv(2, NSClass::ZERO, 0), mv(2, e2(), 0), mv(2, NSClass::ZERO, -2)];
    if level == Level::Full {
        chamber.extend([mv(2, e1() + e2(), 0), mv(3, e1() + NSClass::root(5), -1)]);
    }
    for v in chamber {
        if let Some(h) = s.ok(chamber_representative(&v, &cfg), || format!("chamber for {v}")) {
            s.check(h.square() > 0 && h.pair(&h0()) > 0, || format!("{v}: {h} outside the positive cone"));
            s.check(is_general(&h, &v, &cfg) == Ok(true), || format!("{v}: {h} is not general"));
        }
    }
    s.finish()
}

/// Verdict consistency of the existence oracle on random vectors.
pub fn existence_suite(level: Level) -> SuiteReport {
    let mut s = Suite::new("existence");
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let cfg = SurfaceConfig::default();
    let mut done = 0;
    while done < level.samples() {
        let r = rng.gen_range(1..=6);
        let v = mv(r, rand_ns(&mut rng, 3), with_parity(r, rng.gen_range(-20..=20)));
        if v.square() < 0 {
            continue;
        }
        done += 1;
        let Some(rep) = s.ok(mu_stable_exists(&v, None, &cfg), || format!("existence for {v}")) else { continue };
        s.check(rep.mu_stable_exists == (rep.square >= rep.threshold), || format!("{v}: verdict vs threshold"));
        let l2 = rep.slope.l * rep.slope.l;
        s.check([0, l2, 2 * l2].contains(&rep.threshold), || format!("{v}: threshold {}", rep.threshold));
        s.check(rep.mu_stable_locally_free_exists == (rep.mu_stable_exists && v.r() > 1), || format!("{v}: locally free"));
        if v.square() > 0 {
            s.check(rep.stack_dim.dim == Dimension::Exact(v.square()), || format!("{v}: dim {:?}", rep.stack_dim.dim));
        }
        let d = rand_ns(&mut rng, 2).numerical();
        if let Some(t) = s.ok(mu_stable_exists(&v.twist(&d), None, &cfg), || format!("existence for {v} twisted")) {
            s.check(t.mu_stable_exists == rep.mu_stable_exists && t.threshold == rep.threshold, || {
                format!("{v}: verdict changes under twist by {d}")
            });
        }
        let round = serde_json::from_str::<ExistenceReport>(&serde_json::to_string(&rep).expect("reports serialize"));
        s.check(round.ok().as_ref() == Some(&rep), || format!("{v}: JSON round trip"));
    }
    for (v, want) in [
        (mv(2, e2(), 0), Dimension::Exact(0)),
        (MukaiVector::rho(), Dimension::Exact(1)),
        (mv(4, 2 * e2(), 0), Dimension::AtMost(1)),
        (mv(4, NSClass::ZERO, 0), Dimension::AtMost(2)),
        (MukaiVector::structure_sheaf(), Dimension::Rigid),
    ] {
        let got = moduli_dim(&v, &v.xi()).map(|d| d.dim);
        s.check(got == Ok(want), || format!("moduli_dim{v} = {got:?}"));
    }
    s.finish()
}

/// All suites in order.
pub fn run(level: Level) -> Vec<SuiteReport> {
    vec![
        lattice_suite(),
        instance_suite(),
        reflection_suite(level),
        identity_suite(level),
        existence_suite(level),
        strata_suite(6),
        wall_suite(level),
    ]
}
