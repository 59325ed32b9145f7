//! Exact arithmetic for Mukai lattices of Enriques surfaces.

pub mod error;
pub mod existence;
pub mod lattice;
pub mod mukai;
pub mod oracle;
pub mod selftest;
pub mod shortvec;
pub mod strata;
pub mod transforms;
pub mod walls;

pub use error::{Error, Result};
pub use existence::{
    classify_case, moduli_dim, mu_stable_exists, structure_flags, Case, CaseBMode, CaseClassification, Dimension,
    ExistenceReport, NodalPredicate, SlopeTable, StructureFlags, SurfaceConfig,
};
pub use lattice::{Int, LinearConstraint, Mod2Class, NSClass};
pub use mukai::{EllipticDecomposition, MukaiVector, SlopeClass};
pub use transforms::{
    canonical_reduce, find_pq, hilb_points, multiple_fiber_bound, psi_image, reflect, PqBranch, PsiImage,
    PsiInvariants, Reduction, ReflectionKind, ReflectionSpec,
};
pub use strata::{
    boundary_divisors, elliptic_codim, enumerate_hn_types, hn_stratum_dim, support_locus_bounds, verify_min_codim,
    Block, CodimReport, StratumKind, StratumType,
};
pub use walls::{candidate_walls, chamber_representative, is_general, PolarizationClass, WallClass, WallConfig};
