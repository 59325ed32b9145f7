//! The existence criterion for μ-stable sheaves and the structure of their
//! moduli: case A/B/C classification, thresholds, dimensions, normality and
//! irreducibility flags.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Int, NSClass};
use crate::mukai::{slope_decompose, MukaiVector, SlopeClass};

/// Which rigid object, if any, lives on the ray of `(r0, ξ0)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Case {
    /// No rigid stable sheaf.
    A,
    /// A rigid sheaf with `⟨v0^2⟩ = −1`.
    B,
    /// A rigid sheaf with `⟨v0^2⟩ = −2` supported by a nodal cycle.
    C,
}

impl Case {
    /// `t` in the threshold `t · l^2`.
    pub fn threshold_factor(self) -> Int {
        match self {
            Case::A => 0,
            Case::B => 1,
            Case::C => 2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CaseClassification {
    pub case: Case,
    /// The rigid vector `v0 = (r0, ξ0, a0)` for cases B and C.
    pub witness: Option<MukaiVector>,
    /// Whether the divisibility for case B resp. C holds, before any
    /// geometric input is consulted.
    pub arithmetic_b: bool,
    pub arithmetic_c: bool,
}

impl CaseClassification {
    /// `0`, `l^2` or `2 l^2`.
    pub fn threshold(&self, l: Int) -> Int {
        self.case.threshold_factor() * l * l
    }
}

/// A set of slope classes `(r0, ξ0)`, matched up to `ξ0 ↦ ξ0 + r0 D`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct SlopeTable(pub Vec<(Int, NSClass)>);

impl SlopeTable {
    pub fn contains(&self, r0: Int, xi0: &NSClass) -> bool {
        self.0.iter().any(|(r, x)| *r == r0 && (*xi0 - *x).div_exact(r0).is_some())
    }
}

/// Existence of a rigid `(−2)` sheaf, which depends on nodal curves the
/// lattice cannot see.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodalPredicate {
    #[default]
    Never,
    Always,
    Table(SlopeTable),
}

/// How the arithmetic condition of case B is turned into a verdict.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseBMode {
    /// Rigid `(−1)` sheaves exist whenever the arithmetic allows.
    #[default]
    Permissive,
    /// Only the listed slope classes are granted a rigid `(−1)` sheaf.
    Strict(SlopeTable),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SurfaceConfig {
    /// An unnodal surface has no `(−2)` curves; this overrides `nodal`.
    pub unnodal: bool,
    pub nodal: NodalPredicate,
    pub case_b: CaseBMode,
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        SurfaceConfig { unnodal: true, nodal: NodalPredicate::Never, case_b: CaseBMode::Permissive }
    }
}

impl SurfaceConfig {
    pub fn nodal_minus2_exists(&self, r0: Int, xi0: &NSClass) -> bool {
        if self.unnodal {
            return false;
        }
        match &self.nodal {
            NodalPredicate::Never => false,
            NodalPredicate::Always => true,
            NodalPredicate::Table(t) => t.contains(r0, xi0),
        }
    }

    pub fn minus1_granted(&self, r0: Int, xi0: &NSClass) -> bool {
        match &self.case_b {
            CaseBMode::Permissive => true,
            CaseBMode::Strict(t) => t.contains(r0, xi0),
        }
    }
}

/// Decides case A, B or C for the slope class `(r0, ξ0)`.
pub fn classify_case(r0: Int, xi0: &NSClass, cfg: &SurfaceConfig) -> Result<CaseClassification> {
    if r0 <= 0 {
        return Err(Error::pre("classification needs r0 > 0"));
    }
    if num_integer::gcd(r0, xi0.content()) != 1 {
        return Err(Error::pre(format!("gcd(r0, ξ0) must be 1 for r0 = {r0}, ξ0 = {xi0}")));
    }
    let x2 = xi0.square();
    let xi = xi0.numerical();
    let arithmetic_b = r0 % 2 == 1 && (x2 + 1) % r0 == 0;
    let arithmetic_c = r0 % 2 == 0 && (x2 / 2 + 1) % r0 == 0;
    let (case, witness) = if arithmetic_b && cfg.minus1_granted(r0, xi0) {
        let s0 = (x2 + 1) / r0;
        (Case::B, Some(MukaiVector::new(r0, xi, s0)?))
    } else if arithmetic_c && cfg.nodal_minus2_exists(r0, xi0) {
        let s0 = 2 * (x2 / 2 + 1) / r0;
        (Case::C, Some(MukaiVector::new(r0, xi, s0)?))
    } else {
        (Case::A, None)
    };
    Ok(CaseClassification { case, witness, arithmetic_b, arithmetic_c })
}

/// Stack dimension of the moduli of semistable sheaves.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Dimension {
    Exact(Int),
    AtMost(Int),
    /// A single rigid stable sheaf: stack dimension −1.
    Rigid,
}

impl Dimension {
    /// Largest value the dimension can take.
    pub fn upper(&self) -> Int {
        match *self {
            Dimension::Exact(d) | Dimension::AtMost(d) => d,
            Dimension::Rigid => -1,
        }
    }
}

/// Dimension data, possibly with the stable-locus verdict for `2 v0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DimensionReport {
    pub dim: Dimension,
    /// For `v = 2 v0` with `v0` primitive isotropic: whether stable sheaves exist.
    pub stable_locus_nonempty: Option<bool>,
}

/// Moduli dimension for a general polarization.
pub fn moduli_dim(v: &MukaiVector, l_class: &NSClass) -> Result<DimensionReport> {
    let sq = v.square();
    let (k, w) = v.primitive_part();
    if sq > 0 {
        return Ok(DimensionReport { dim: Dimension::Exact(sq), stable_locus_nonempty: None });
    }
    if sq == 0 {
        if v.is_zero() {
            return Err(Error::pre("the zero vector has no moduli"));
        }
        if k == 1 {
            let d = if v.ell() == 1 { 0 } else { 1 };
            return Ok(DimensionReport { dim: Dimension::Exact(d), stable_locus_nonempty: None });
        }
        let bound = if w.ell() == 1 { k / 2 } else { k };
        let stable = (k == 2).then(|| w.ell() == 1 && l_class.mod2().is_zero());
        return Ok(DimensionReport { dim: Dimension::AtMost(bound), stable_locus_nonempty: stable });
    }
    if k == 1 && (sq == -1 || sq == -2) {
        return Ok(DimensionReport { dim: Dimension::Rigid, stable_locus_nonempty: None });
    }
    Err(Error::pre(format!("⟨v^2⟩ = {sq} < 0 and v is not a rigid witness")))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructureFlags {
    pub reduced: bool,
    pub normal: bool,
    /// `None` means the question is outside what the criteria decide.
    pub connected: Option<bool>,
    pub irreducible: Option<bool>,
}

/// `v = 2 v0` with `⟨v0^2⟩ = 1`.
pub fn is_double_of_square_one(v: &MukaiVector) -> bool {
    let (k, w) = v.primitive_part();
    k == 2 && w.square() == 1
}

/// `L ≡ (r/2) K_X mod 2`, for even `r`.
pub fn congruent_half_rank_kx(r: Int, l_class: &NSClass) -> bool {
    let m = l_class.mod2();
    r % 2 == 0 && m.numerically_even() && (m.kx == 1) == ((r / 2) % 2 != 0)
}

fn two_divisible(l_class: &NSClass) -> bool {
    !l_class.kx && l_class.mod2().numerically_even()
}

/// Reducedness, normality, connectedness and irreducibility for `⟨v^2⟩ > 0`.
pub fn structure_flags(v: &MukaiVector, l_class: &NSClass, cfg: &SurfaceConfig) -> Result<(StructureFlags, Vec<String>)> {
    let sq = v.square();
    if sq <= 0 {
        return Err(Error::pre("structure flags need ⟨v^2⟩ > 0"));
    }
    let mut cites = vec![tags::REDUCED.to_string()];
    let (k, w) = v.primitive_part();
    let exc_i = is_double_of_square_one(v) && congruent_half_rank_kx(v.r(), l_class);
    let normal = !(exc_i || sq == 2);
    cites.push(tags::NORMAL.to_string());
    let irreducible = if is_double_of_square_one(v) {
        cites.push(tags::TWO_COMPONENTS.to_string());
        Some(false)
    } else if k == 1 {
        if cfg.unnodal || sq >= 4 {
            cites.push(tags::IRREDUCIBLE.to_string());
            Some(true)
        } else {
            None
        }
    } else if k == 2 && w.r() % 2 == 0 && w.ell() == 1 {
        cites.push(tags::IRREDUCIBLE_DOUBLE.to_string());
        Some(true)
    } else if (k & (k - 1)) == 0 && w.r() % 2 == 0 && !two_divisible(l_class) {
        cites.push(tags::IRREDUCIBLE_POWER_OF_TWO.to_string());
        Some(true)
    } else {
        None
    };
    let connected = if irreducible == Some(true) || k == 1 {
        cites.push(tags::CONNECTED.to_string());
        Some(true)
    } else {
        None
    };
    Ok((StructureFlags { reduced: true, normal, connected, irreducible }, cites))
}

/// String tags naming the criteria a verdict rests on.
pub mod tags {
    pub const CASE_A: &str = "Thm-existence-caseA-threshold";
    pub const CASE_B: &str = "Thm-existence-caseB-threshold";
    pub const CASE_C: &str = "Thm-existence-caseC-threshold";
    pub const LOCALLY_FREE: &str = "Thm-existence-locally-free";
    pub const RANK2_COMPONENT: &str = "Lemma-rank2-locally-free-component";
    pub const DIM_POSITIVE: &str = "Cor-dimension-positive-square";
    pub const DIM_ISOTROPIC: &str = "Lemma-isotropic-dimension";
    pub const DIM_MULTIPLE: &str = "Prop-isotropic-multiple-bound";
    pub const DIM_RIGID: &str = "Def-rigid-witness";
    pub const REDUCED: &str = "Cor-reduced";
    pub const NORMAL: &str = "Cor-normal-exceptions";
    pub const TWO_COMPONENTS: &str = "Remark-double-square-one-reducible";
    pub const IRREDUCIBLE: &str = "Thm-irreducible-primitive";
    pub const IRREDUCIBLE_DOUBLE: &str = "Remark-irreducible-double-even-rank";
    pub const IRREDUCIBLE_POWER_OF_TWO: &str = "Remark-irreducible-power-of-two";
    pub const CONNECTED: &str = "Thm-connected";
}

/// The full verdict for one `(v, L)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExistenceReport {
    pub v: MukaiVector,
    #[serde(rename = "L")]
    pub l_class: NSClass,
    pub square: Int,
    pub slope: SlopeClass,
    pub classification: CaseClassification,
    pub threshold: Int,
    pub mu_stable_exists: bool,
    pub mu_stable_locally_free_exists: bool,
    pub stack_dim: DimensionReport,
    pub reduced: Option<bool>,
    pub normal: Option<bool>,
    pub connected: Option<bool>,
    pub irreducible: Option<bool>,
    pub notes: Vec<String>,
    pub citations: Vec<String>,
}

/// Decides existence of μ-stable (locally free) sheaves and collects the
/// structural flags. `l_class` defaults to `ξ` with its torsion bit.
pub fn mu_stable_exists(v: &MukaiVector, l_class: Option<&NSClass>, cfg: &SurfaceConfig) -> Result<ExistenceReport> {
    if v.r() <= 0 {
        return Err(Error::pre(format!("rank must be positive, got {}", v.r())));
    }
    let sq = v.square();
    if sq < 0 {
        return Err(Error::pre(format!("⟨v^2⟩ = {sq} is negative")));
    }
    let l_class = *l_class.unwrap_or(&v.xi());
    if l_class.coords != v.xi().coords {
        return Err(Error::pre(format!("L = {l_class} does not reduce to ξ = {}", v.xi().numerical())));
    }
    let slope = slope_decompose(v)?;
    let classification = classify_case(slope.r0, &slope.xi0, cfg)?;
    let threshold = classification.threshold(slope.l);
    let exists = sq >= threshold;
    let mut citations = vec![match classification.case {
        Case::A => tags::CASE_A,
        Case::B => tags::CASE_B,
        Case::C => tags::CASE_C,
    }
    .to_string()];
    let mut notes = Vec::new();
    let locally_free = exists && v.r() > 1;
    if locally_free {
        citations.push(tags::LOCALLY_FREE.to_string());
    }
    if exists && v.r() == 2 && is_double_of_square_one(v) && congruent_half_rank_kx(2, &l_class) {
        citations.push(tags::RANK2_COMPONENT.to_string());
        notes.push(
            "moduli has a component of non-locally-free stable sheaves; another component contains μ-stable locally free sheaves"
                .to_string(),
        );
    }
    if matches!(classification.case, Case::A) && classification.arithmetic_c && !classification.arithmetic_b {
        notes.push("case C arithmetic holds but no nodal (−2) witness was supplied".to_string());
    }
    if let CaseBMode::Strict(_) = cfg.case_b {
        if classification.arithmetic_b && classification.case != Case::B {
            notes.push("case B arithmetic holds but strict mode withheld the rigid witness".to_string());
        }
    }
    let stack_dim = moduli_dim(v, &l_class)?;
    citations.push(
        match (sq > 0, v.is_primitive()) {
            (true, _) => tags::DIM_POSITIVE,
            (false, true) => tags::DIM_ISOTROPIC,
            (false, false) => tags::DIM_MULTIPLE,
        }
        .to_string(),
    );
    let (mut reduced, mut normal, mut connected, mut irreducible) = (None, None, None, None);
    if sq > 0 {
        let (flags, cites) = structure_flags(v, &l_class, cfg)?;
        reduced = Some(flags.reduced);
        normal = Some(flags.normal);
        connected = flags.connected;
        irreducible = flags.irreducible;
        citations.extend(cites);
    } else if v.is_primitive() && v.ell() == 1 {
        reduced = Some(true);
    }
    Ok(ExistenceReport {
        v: *v,
        l_class,
        square: sq,
        slope,
        classification,
        threshold,
        mu_stable_exists: exists,
        mu_stable_locally_free_exists: locally_free,
        stack_dim,
        reduced,
        normal,
        connected,
        irreducible,
        notes,
        citations,
    })
}
