use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),

    #[error("table is not a Latin square: {axis} {index} repeats element {element}")]
    NotLatinSquare {
        axis: &'static str,
        index: usize,
        element: usize,
    },

    #[error("no two-sided identity element in the multiplication table")]
    NoIdentity,

    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("unknown element label `{0}`")]
    UnknownElement(String),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("{what} exceeds the supported bound ({actual} > {limit})")]
    BoundExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },

    #[error("enumeration of {needed} tuples exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("width {width} does not exceed the character degree {dim}")]
    WidthNotAboveDimension { width: usize, dim: u64 },

    #[error("character degree {dim} is smaller than the width {width}")]
    DimensionTooSmall { width: usize, dim: u64 },

    #[error("character {0} is the trivial character")]
    TrivialCharacter(usize),

    #[error("eta quotient has a fractional q-prefactor q^({0}/24)")]
    FractionalPower(i64),

    #[error("no Hauptmodul of level {0} in the catalog")]
    UnsupportedLevel(u64),

    #[error("class {class} has element order {order}, which has no catalog Hauptmodul")]
    UnsupportedOrder { class: usize, order: u64 },

    #[error("total multiplicity vanishes at grade {0}")]
    ZeroTotalMultiplicity(i64),

    #[error("coefficient of q^{exponent} is not rational")]
    NonRational { exponent: i64 },

    #[error("coefficient of q^{0} is not known at the available precision")]
    InsufficientPrecision(i64),

    #[error("series is not invertible: no nonzero coefficient in the known range")]
    NotInvertible,

    #[error("invalid character table: {0}")]
    InvalidCharacterTable(String),

    #[error("invalid module description: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
