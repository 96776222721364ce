//! Finite windows onto infinite sequences and matrices.
//!
//! A window stores a finite prefix together with a tag declaring what lies
//! beyond it. Nothing downstream assumes more than the tag states.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Declared behaviour of a sequence beyond its stored prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqTail {
    /// `x_n = 0` for every `n` past the window (a finite sequence).
    Zero,
    Unknown,
}

/// Declared behaviour of a matrix beyond its stored rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixTail {
    /// All rows past the window are zero.
    Zero,
    /// Rows past the window follow the formula that generated the matrix.
    Structural,
    Unknown,
}

impl MatrixTail {
    /// Pessimistic combination: unknown dominates, structural needs both.
    pub fn combine(self, other: MatrixTail) -> MatrixTail {
        match (self, other) {
            (MatrixTail::Zero, MatrixTail::Zero) => MatrixTail::Zero,
            (MatrixTail::Structural, MatrixTail::Structural) => MatrixTail::Structural,
            _ => MatrixTail::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceLabel {
    C0,
    C,
    LInf,
}

impl SpaceLabel {
    pub fn name(self) -> &'static str {
        match self {
            SpaceLabel::C0 => "c0",
            SpaceLabel::C => "c",
            SpaceLabel::LInf => "l_inf",
        }
    }

    pub fn parse(text: &str) -> Option<SpaceLabel> {
        match text {
            "c0" | "c_0" => Some(SpaceLabel::C0),
            "c" => Some(SpaceLabel::C),
            "l_inf" | "linf" | "l_infty" | "l∞" => Some(SpaceLabel::LInf),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceWindow<S> {
    pub values: Vec<S>,
    pub tail: SeqTail,
    pub space: Option<SpaceLabel>,
}

impl<S: Scalar> SequenceWindow<S> {
    pub fn new(values: Vec<S>, tail: SeqTail) -> Self {
        SequenceWindow {
            values,
            tail,
            space: None,
        }
    }

    /// A finitely supported sequence.
    pub fn finite(values: Vec<S>) -> Self {
        Self::new(values, SeqTail::Zero)
    }

    pub fn zeros(len: usize) -> Self {
        Self::finite(vec![S::zero(); len])
    }

    /// The unit sequence `e_j`, truncated to `len` entries.
    pub fn unit(len: usize, j: usize) -> Self {
        let mut v = vec![S::zero(); len];
        if j < len {
            v[j] = S::one();
        }
        Self::finite(v)
    }

    /// The all-ones sequence `e`, truncated; the tail is not zero.
    pub fn ones(len: usize) -> Self {
        Self::new(vec![S::one(); len], SeqTail::Unknown)
    }

    pub fn with_space(mut self, space: SpaceLabel) -> Self {
        self.space = Some(space);
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry `n`, reading the declared zero tail past the window.
    pub fn get(&self, n: usize) -> Option<S> {
        match self.values.get(n) {
            Some(v) => Some(v.clone()),
            None if self.tail == SeqTail::Zero => Some(S::zero()),
            None => None,
        }
    }

    /// Index one past the last nonzero stored entry.
    pub fn support_len(&self, tol: f64) -> usize {
        self.values
            .iter()
            .rposition(|v| !v.is_negligible(tol))
            .map_or(0, |p| p + 1)
    }

    pub fn require_zero_tail(&self, what: &'static str) -> Result<()> {
        if self.tail == SeqTail::Zero {
            Ok(())
        } else {
            Err(Error::NonZeroTail { what, row: None })
        }
    }

    pub fn scaled_sum(&self, alpha: &S, other: &Self, beta: &S) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                context: "sequence combination",
                expected: self.len(),
                found: other.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| alpha.clone() * x.clone() + beta.clone() * y.clone())
            .collect();
        let tail = if self.tail == SeqTail::Zero && other.tail == SeqTail::Zero {
            SeqTail::Zero
        } else {
            SeqTail::Unknown
        };
        Ok(SequenceWindow::new(values, tail))
    }

    pub fn sup_norm(&self) -> (S, usize) {
        sup_abs(&self.values)
    }
}

/// Largest absolute value and the smallest index attaining it.
pub fn sup_abs<S: Scalar>(values: &[S]) -> (S, usize) {
    let mut best = S::zero();
    let mut at = 0;
    for (i, v) in values.iter().enumerate() {
        let a = v.abs();
        if a > best {
            best = a;
            at = i;
        }
    }
    (best, at)
}

/// Produces row `n` of a matrix past its stored window. Rows are finitely
/// supported; entries past the returned vector are zero.
pub type RowGenerator<S> = Arc<dyn Fn(usize) -> Result<Vec<S>> + Send + Sync>;

/// A finite set of rows of an infinite matrix.
///
/// Row `n` is stored as a prefix; when `row_support` is [`SeqTail::Zero`]
/// the entries past the prefix are zero. Rows past `rows.len()` follow
/// `tail`, and a structural tail may carry a generator for them.
#[derive(Clone)]
pub struct MatrixWindow<S> {
    pub rows: Vec<Vec<S>>,
    pub row_support: SeqTail,
    pub tail: MatrixTail,
    pub generator: Option<RowGenerator<S>>,
}

impl<S: fmt::Debug> fmt::Debug for MatrixWindow<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixWindow")
            .field("rows", &self.rows)
            .field("row_support", &self.row_support)
            .field("tail", &self.tail)
            .field("generator", &self.generator.as_ref().map(|_| "<fn>"))
            .finish()
    }
}

impl<S: Scalar> MatrixWindow<S> {
    /// Finitely many rows, each finitely supported.
    pub fn finite(rows: Vec<Vec<S>>) -> Self {
        MatrixWindow {
            rows,
            row_support: SeqTail::Zero,
            tail: MatrixTail::Zero,
            generator: None,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::finite(vec![vec![S::zero(); cols]; rows])
    }

    /// A structural matrix whose rows all come from `generator`; `rows`
    /// rows are materialized up front.
    pub fn structural(rows: usize, generator: RowGenerator<S>) -> Result<Self> {
        let stored = (0..rows)
            .map(|n| generator(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixWindow {
            rows: stored,
            row_support: SeqTail::Zero,
            tail: MatrixTail::Structural,
            generator: Some(generator),
        })
    }

    pub fn with_tail(mut self, tail: MatrixTail) -> Self {
        self.tail = tail;
        self
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Widest stored row.
    pub fn width(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn get(&self, n: usize, k: usize) -> S {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn require_row_support(&self, what: &'static str) -> Result<()> {
        if self.row_support == SeqTail::Zero {
            Ok(())
        } else {
            Err(Error::NonZeroTail { what, row: None })
        }
    }

    /// Row `n`, consulting the declared tail past the stored window.
    /// `Ok(None)` means the row is not determined by the declaration.
    pub fn row_at(&self, n: usize) -> Result<Option<Vec<S>>> {
        if let Some(r) = self.rows.get(n) {
            return Ok(Some(r.clone()));
        }
        match (self.tail, &self.generator) {
            (MatrixTail::Zero, _) => Ok(Some(Vec::new())),
            (MatrixTail::Structural, Some(g)) => g(n).map(Some),
            _ => Ok(None),
        }
    }

    /// The first `count` rows, generating past the window where declared.
    pub fn extended(&self, count: usize) -> Result<Option<MatrixWindow<S>>> {
        let mut rows = Vec::with_capacity(count);
        for n in 0..count {
            match self.row_at(n)? {
                Some(r) => rows.push(r),
                None => return Ok(None),
            }
        }
        Ok(Some(MatrixWindow {
            rows,
            row_support: self.row_support,
            tail: self.tail,
            generator: self.generator.clone(),
        }))
    }

    /// True when the tail is not zero but rows past the window can be produced.
    pub fn is_extendable(&self) -> bool {
        self.tail == MatrixTail::Structural && self.generator.is_some()
    }

    pub fn transposed_column(&self, k: usize) -> Vec<S> {
        (0..self.row_count()).map(|n| self.get(n, k)).collect()
    }
}

impl<S: Scalar> PartialEq for MatrixWindow<S> {
    fn eq(&self, other: &Self) -> bool {
        let w = self.width().max(other.width());
        self.row_count() == other.row_count()
            && self.tail == other.tail
            && self.row_support == other.row_support
            && (0..self.row_count()).all(|n| (0..w).all(|k| self.get(n, k) == other.get(n, k)))
    }
}
