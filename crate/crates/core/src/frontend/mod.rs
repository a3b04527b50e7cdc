//! Input parsing (SMT-LIB subset and a native line format), literal types,
//! and the encoding of a literal set into an initial configuration.

mod expr;
mod native;
mod sexpr;
mod smtlib;
mod split;
mod write;

use thiserror::Error;

pub use expr::{BinOp, Expression, Literal, ProblemInstance, Relation};
pub use native::parse_native;
pub use smtlib::parse_smtlib;
pub use split::split;
pub use write::{to_native, to_native_with_header, to_smt2, to_smt2_with_header};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error on line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("unsupported construct: {0}")]
    UnsupportedConstruct(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
}

/// Parses either format: text whose first significant character is `(` is
/// read as SMT-LIB, anything else as the native format.
pub fn parse(text: &str) -> Result<ProblemInstance, ParseError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with(';') && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with('(') => parse_smtlib(text),
        None if text.trim_start().starts_with(';') => parse_smtlib(text),
        _ => parse_native(text),
    }
}
