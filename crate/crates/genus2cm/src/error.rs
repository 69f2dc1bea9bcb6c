//! Error type shared by the library and the command-line front end.

use thiserror::Error;

/// Failure modes that cross the library boundary.
///
/// Each variant maps to a distinct process exit code so scripted callers can
/// tell configuration mistakes apart from genuine mathematical failures.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input: composite N, N not 3 mod 4, a triple
    /// that is not a valid form, an unreadable input file, and so on.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A floating-point coefficient could not be identified with an element
    /// of Q(sqrt(-N)) within tolerance, even after precision retries.
    #[error("recognition failure: {0}")]
    Recognition(String),

    /// The principal form was supplied where a non-principal one is required.
    /// Its polarization is a product, so it yields no genus 2 curve.
    #[error("principal form: {0}")]
    PrincipalForm(String),

    /// A Gram matrix that is not positive definite.
    #[error("indefinite Gram matrix: {0}")]
    IndefiniteGram(String),

    /// A curve expected to attain the Weil bound failed the check.
    #[error("maximality failure: {0}")]
    MaximalityFailure(String),
}

impl Error {
    /// Process exit code for the CLI: 2 invalid input, 3 recognition failure,
    /// 4 principal form, 5 indefinite Gram matrix, 6 maximality failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 2,
            Error::Recognition(_) => 3,
            Error::PrincipalForm(_) => 4,
            Error::IndefiniteGram(_) => 5,
            Error::MaximalityFailure(_) => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
