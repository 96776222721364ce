use std::fmt;

use thiserror::Error;

/// A single failed check on a parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `r_n = 0` for some `n < N`; `r` must lie in 𝒰.
    ZeroR(usize),
    /// `t_n = 0` for some `n < N`; `t` must lie in 𝒰.
    ZeroT(usize),
    /// `s_0 = 0`; `s` must lie in 𝒰₀.
    ZeroS0,
    /// A parameter window is shorter than the truncation order.
    Short {
        name: &'static str,
        len: usize,
        need: usize,
    },
    /// Truncation order `N = 0`.
    EmptyOrder,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroR(n) => write!(f, "r[{n}] = 0 (r must be nonzero everywhere, class U)"),
            Violation::ZeroT(n) => write!(f, "t[{n}] = 0 (t must be nonzero everywhere, class U)"),
            Violation::ZeroS0 => write!(f, "s[0] = 0 (s must have s_0 != 0, class U0)"),
            Violation::Short { name, len, need } => {
                write!(f, "{name} has {len} entries, need at least {need}")
            }
            Violation::EmptyOrder => write!(f, "truncation order must be positive"),
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix is singular: zero diagonal entry in row {row}")]
    Singular { row: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parameter validation failed: {}", join_violations(.0))]
    Validation(Vec<Violation>),
    #[error("{what} must have a zero tail{}", .row.map(|r| format!(" (row {r})")).unwrap_or_default())]
    NonZeroTail {
        what: &'static str,
        row: Option<usize>,
    },
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: i64, limit: usize },
    #[error("cannot extend {0} beyond its stored window")]
    CannotExtend(&'static str),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
