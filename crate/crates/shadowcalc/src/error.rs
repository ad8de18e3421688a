use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("validate first: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no free face: {0}")]
    NoFreeFace(String),
    #[error("region {0} is not a boundary region")]
    NotBoundary(usize),
    #[error("region {0} is a boundary region")]
    BoundaryRegion(usize),
    #[error("region {0} is not an internal region")]
    NotInternal(usize),
    #[error("no such region {0}")]
    NoRegion(usize),
    #[error("no such edge {0}")]
    NoEdge(usize),
    #[error("gleam missing on internal region {0}")]
    MissingGleam(usize),
    #[error("inadmissible gleam on region {region}: {half_units} half-units against z2 gleam {z2}")]
    Inadmissible { region: usize, half_units: i64, z2: u8 },
    #[error("non-disk region {0} needs declared topology")]
    UndeclaredTopology(usize),
    #[error("polyhedron is not special")]
    NotSpecial,
    #[error("incompatible site: {0}")]
    IncompatibleSite(String),
    #[error("inconsistent curve data: {0}")]
    Curve(String),
    #[error("precision exhausted at {bits} bits while deciding {what}")]
    PrecisionExhausted { what: String, bits: u32 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
