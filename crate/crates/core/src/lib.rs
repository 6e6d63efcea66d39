//! Geometry of the Riemann sphere, classical Schottky groups, conformal
//! moduli of annuli, and a combinatorial Belyi/dessin engine.
//!
//! The crate is organized in layers:
//!
//! * [`moebius`] / [`circle`] — fractional-linear maps, generalized circles
//!   (Hermitian triples), classification and incidence predicates.
//! * [`schottky`] — circle pairings, verification of the classical
//!   conditions, reduced-word enumeration, limit-point sampling.
//! * [`annulus`] — conformal moduli: closed forms for round/circular
//!   annuli, a discrete Dirichlet-energy estimator for sampled boundaries,
//!   the Grötzsch monotonicity harness, and the separating-circle search.
//! * [`belyi`] / [`dessin`] — monodromy triples, the degree-6 refinement
//!   operator via numeric path lifting, triangulations, and the disjoint
//!   homologically-independent covering-loop search.
//! * [`svg`] — deterministic SVG renderings for configurations and dessins.

pub mod annulus;
pub mod belyi;
pub mod circle;
pub mod dessin;
mod laplace;
mod lifting;
pub mod moebius;
pub mod rmap;
pub mod schottky;
pub mod svg;

pub use num_complex::Complex64;

/// Default tolerances. Geometric predicates sit one multiplication chain
/// above the algebraic identities, hence the looser default.
pub mod tol {
    /// Tolerance for geometric predicates (incidence, disjointness, clearance).
    pub const GEOMETRIC: f64 = 1e-9;
    /// Tolerance for algebraic identities (determinants, group laws).
    pub const ALGEBRAIC: f64 = 1e-12;
}

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is singular (determinant too close to zero)")]
    SingularMatrix,
    #[error("identity map has no well-defined fixed-point pair")]
    IdentityMap,
    #[error("degenerate circle: {0}")]
    DegenerateCircle(&'static str),
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("circles are not disjoint (relation: {0})")]
    CirclesNotDisjoint(&'static str),
    #[error("circles are not strictly nested")]
    CirclesNotNested,
    #[error("Schottky rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("configuration failed classical verification: {0}")]
    UnverifiedConfiguration(String),
    #[error("word enumeration exceeds the hard cap of {0} entries")]
    WordCapExceeded(usize),
    #[error("invalid annulus: {0}")]
    InvalidAnnulus(String),
    #[error("annulus modulus requires r > 1, got {0}")]
    DegenerateAnnulus(f64),
    #[error("grid step {h} fails to separate the boundaries")]
    GridTooCoarse { h: f64 },
    #[error("sub-annulus is not essential in the ambient annulus")]
    NotEssential,
    #[error("invalid permutation data: {0}")]
    InvalidPermutation(String),
    #[error("invalid monodromy triple: {0}")]
    InvalidTriple(String),
    #[error("numeric path lifting failed: {0}")]
    LiftingFailure(String),
    #[error("input is not a closed cycle in the dessin: {0}")]
    NotACycle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
