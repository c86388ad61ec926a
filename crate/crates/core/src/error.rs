use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("curve is degenerate: zero speed at node {node}")]
    DegenerateCurve { node: usize },

    #[error("curve self-intersects near nodes {first} and {second}")]
    SelfIntersection { first: usize, second: usize },

    #[error("hole {hole} is not contained in the outer curve")]
    HoleOutside { hole: usize },

    #[error("holes {first} and {second} overlap")]
    HolesOverlap { first: usize, second: usize },

    #[error("component role mismatch: {0}")]
    RoleMismatch(String),

    #[error("point ({x}, {y}) is too close to the curve (distance {distance:e})")]
    PointOnCurve { x: f64, y: f64, distance: f64 },

    #[error("point ({x}, {y}) is outside the domain")]
    PointOutside { x: f64, y: f64 },

    #[error("coincident points in kernel evaluation")]
    CoincidentPoints,

    #[error("operator or function belongs to a different domain")]
    DomainMismatch,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid Robin coefficient: {0}")]
    InvalidCoefficient(String),

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("condition number {cond:e} exceeds cap {cap:e}")]
    IllConditioned { cond: f64, cap: f64 },

    #[error("Neumann data violates the compatibility condition: total flux {flux:e}")]
    IncompatibleData { flux: f64 },

    #[error("numerical kernel dimension {found} differs from the expected {expected}")]
    KernelDimension { expected: usize, found: usize },

    #[error("solver check failed: {0}")]
    CheckFailed(String),

    #[error("oracle did not converge: {0}")]
    OracleNonConvergence(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("case {id}")]
    Case {
        id: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
