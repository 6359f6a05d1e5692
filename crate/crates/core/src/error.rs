use crate::ratpoly::Rational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("dimension must be at least 1")]
    InvalidDimension,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("expected {expected}, found {found}")]
    Grading { expected: String, found: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneousPoly,

    #[error("graph has {graph} vertices but {tuple} vertex contents were given")]
    Arity { graph: usize, tuple: usize },

    #[error("graph term has bi-grading ({vertices},{edges}), expected (n,2n-2)")]
    Bigrading { vertices: usize, edges: usize },

    #[error("field does not satisfy [[V,P]] = P (computed scale: {})", fmt_scale(.scale))]
    NotHomogeneous { scale: Option<Rational> },

    #[error("bivector is not Poisson: jacobiator has {terms} nonzero terms")]
    NotPoisson { terms: usize },

    #[error("bivector is not a Poisson cocycle: [[P,Q]] != 0")]
    NotCocycle,

    #[error("ansatz degree mismatch: {0}")]
    DegreeMismatch(String),
}

fn fmt_scale(s: &Option<Rational>) -> String {
    match s {
        Some(l) => l.to_string(),
        None => "none".to_string(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
