//! Finite lower-triangular matrices.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::window::{MatrixTail, MatrixWindow, SeqTail, SequenceWindow};

/// An `N×N` lower-triangular truncation. Row `n` stores entries `0..=n`;
/// entries above the diagonal are zero by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMatrix<S> {
    rows: Vec<Vec<S>>,
    pub tail: MatrixTail,
}

impl<S: Scalar> TriangleMatrix<S> {
    /// Builds the matrix from `entry(n, k)` for `k <= n < order`.
    pub fn from_fn(
        order: usize,
        tail: MatrixTail,
        mut entry: impl FnMut(usize, usize) -> S,
    ) -> Self {
        let rows = (0..order)
            .map(|n| (0..=n).map(|k| entry(n, k)).collect())
            .collect();
        TriangleMatrix { rows, tail }
    }

    /// Takes dense rows, rejecting any nonzero entry above the diagonal.
    pub fn from_rows(rows: Vec<Vec<S>>, tail: MatrixTail) -> Result<Self> {
        let order = rows.len();
        let mut out = Vec::with_capacity(order);
        for (n, row) in rows.into_iter().enumerate() {
            if row.len() > order {
                return Err(Error::DimensionMismatch {
                    context: "triangle row length",
                    expected: order,
                    found: row.len(),
                });
            }
            if row.iter().skip(n + 1).any(|v| !v.is_zero()) {
                return Err(Error::InvalidParameter(format!(
                    "row {n} has a nonzero entry above the diagonal"
                )));
            }
            let mut r: Vec<S> = row.into_iter().take(n + 1).collect();
            r.resize(n + 1, S::zero());
            out.push(r);
        }
        Ok(TriangleMatrix { rows: out, tail })
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, MatrixTail::Structural, |n, k| {
            if n == k {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, MatrixTail::Zero, |_, _| S::zero())
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, n: usize, k: usize) -> S {
        if k > n {
            return S::zero();
        }
        self.rows[n][k].clone()
    }

    /// Row `n` without the implicit zeros above the diagonal.
    pub fn row(&self, n: usize) -> &[S] {
        &self.rows[n]
    }

    /// Column `k` from the diagonal down.
    pub fn column(&self, k: usize) -> Vec<S> {
        (0..self.order()).map(|n| self.get(n, k)).collect()
    }

    /// Dense `N×N` rows.
    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let order = self.order();
        (0..order)
            .map(|n| (0..order).map(|k| self.get(n, k)).collect())
            .collect()
    }

    pub fn to_window(&self) -> MatrixWindow<S> {
        MatrixWindow {
            rows: self.rows.clone(),
            row_support: SeqTail::Zero,
            tail: self.tail,
            generator: None,
        }
    }

    pub fn with_tail(mut self, tail: MatrixTail) -> Self {
        self.tail = tail;
        self
    }

    /// Leading `order×order` block.
    pub fn truncate(&self, order: usize) -> Self {
        TriangleMatrix {
            rows: self.rows.iter().take(order).cloned().collect(),
            tail: self.tail,
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (0..self.order()).all(|n| {
            (0..=n).all(|k| {
                let expect = if n == k { S::one() } else { S::zero() };
                self.get(n, k).approx_eq(&expect, tol)
            })
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.order() == other.order()
            && (0..self.order())
                .all(|n| (0..=n).all(|k| self.get(n, k).approx_eq(&other.get(n, k), tol)))
    }

    /// Largest absolute entrywise difference, as `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for n in 0..self.order().min(other.order()) {
            for k in 0..=n {
                worst = worst.max((self.get(n, k) - other.get(n, k)).abs().to_f64());
            }
        }
        worst
    }

    /// Returns the first zero diagonal entry, if any.
    pub fn zero_diagonal(&self) -> Option<usize> {
        (0..self.order()).find(|&n| self.rows[n][n].is_zero())
    }
}

/// Matrix product `left · right`.
pub fn compose<S: Scalar>(
    left: &TriangleMatrix<S>,
    right: &TriangleMatrix<S>,
) -> Result<TriangleMatrix<S>> {
    if left.order() != right.order() {
        return Err(Error::DimensionMismatch {
            context: "compose",
            expected: left.order(),
            found: right.order(),
        });
    }
    let tail = left.tail.combine(right.tail);
    Ok(TriangleMatrix::from_fn(left.order(), tail, |n, k| {
        (k..=n).fold(S::zero(), |acc, i| {
            acc + left.rows[n][i].clone() * right.rows[i][k].clone()
        })
    }))
}

/// The `M`-transform `(Mx)_n = Σ_{k≤n} m_{nk} x_k`.
pub fn apply<S: Scalar>(m: &TriangleMatrix<S>, x: &SequenceWindow<S>) -> Result<SequenceWindow<S>> {
    if m.order() != x.len() {
        return Err(Error::DimensionMismatch {
            context: "apply",
            expected: m.order(),
            found: x.len(),
        });
    }
    let values = (0..m.order())
        .map(|n| {
            m.rows[n]
                .iter()
                .zip(&x.values)
                .fold(S::zero(), |acc, (a, v)| acc + a.clone() * v.clone())
        })
        .collect();
    let tail = if m.tail == MatrixTail::Zero && x.tail == SeqTail::Zero {
        SeqTail::Zero
    } else {
        SeqTail::Unknown
    };
    Ok(SequenceWindow {
        values,
        tail,
        space: None,
    })
}

/// Inverse by forward substitution, one column at a time.
pub fn invert_triangle<S: Scalar>(m: &TriangleMatrix<S>) -> Result<TriangleMatrix<S>> {
    if let Some(row) = m.zero_diagonal() {
        return Err(Error::Singular { row });
    }
    let order = m.order();
    let mut inv: Vec<Vec<S>> = (0..order).map(|n| vec![S::zero(); n + 1]).collect();
    for k in 0..order {
        inv[k][k] = S::one() / m.rows[k][k].clone();
        for n in k + 1..order {
            let acc = (k..n).fold(S::zero(), |acc, i| {
                acc + m.rows[n][i].clone() * inv[i][k].clone()
            });
            inv[n][k] = -acc / m.rows[n][n].clone();
        }
    }
    let tail = match m.tail {
        MatrixTail::Unknown => MatrixTail::Unknown,
        _ => MatrixTail::Structural,
    };
    Ok(TriangleMatrix { rows: inv, tail })
}
