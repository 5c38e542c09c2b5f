use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands lie in different quadratic fields (sqrt({0}) vs sqrt({1}))")]
    MixedField(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("({0}, {1}, {2}) is not a Markov triple")]
    NotMarkov(String, String, String),
    #[error("zero vector")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a quadratic irrational")]
    NotQuadraticIrrational,
    #[error("rational input has no periodic continued fraction")]
    RationalInput,
    #[error("horocycle is centered at infinity")]
    HorocycleAtInfinity,
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("geodesic endpoints are not roots of a rational form")]
    IrrationalGeodesic,
    #[error("form is not definite")]
    NotDefinite,
    #[error("form is not indefinite")]
    NotIndefinite,
    #[error("form is degenerate (determinant 0)")]
    DegenerateForm,
    #[error("point lies on the Farey edge {edge:?}; adjacent triangles {left:?} and {right:?}")]
    OnEdge {
        edge: (String, String),
        left: Box<[String; 3]>,
        right: Box<[String; 3]>,
    },
    #[error("vertices do not match the triangle weights: {0}")]
    InconsistentVertices(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
