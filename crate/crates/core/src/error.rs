use thiserror::Error;

use crate::graph::EdgeId;

/// Errors raised by graph, cochain and classification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u32),
    #[error("cochain length {got} does not match {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("values on dart {dart} and its conjugate violate {kind} symmetry")]
    Symmetry { dart: usize, kind: &'static str },
    #[error("cochain is not in the image of delta")]
    NotInImage,
    #[error("boundary equation has no solution: total degree {0} is nonzero")]
    DegreeObstruction(u32),
    #[error("level {0} is not prime")]
    NotPrime(u32),
    #[error("{p} does not divide the level {ell}")]
    PrimeNotDividing { p: u32, ell: u32 },
    #[error("exponent {k} out of range 1..={max}")]
    ExponentOutOfRange { k: u32, max: u32 },
    #[error("decorated graph is not faithful: edge {0} has zero multiplicity")]
    NotFaithful(EdgeId),
    #[error("genus label missing on vertex {0}")]
    MissingGenus(usize),
    #[error("size bound exceeded: {what} ({size} > {bound})")]
    SizeBound {
        what: &'static str,
        size: u128,
        bound: u128,
    },
    #[error("parts do not cover edge {0}")]
    NotCovering(EdgeId),
    #[error("unsupported level {0} for classification")]
    UnsupportedLevel(u32),
    #[error("graph has a loop on edge {0}")]
    HasLoop(EdgeId),
    #[error("graph has a separating edge {0}")]
    HasBridge(EdgeId),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
