//! The operators of a space `X(r, s, t; Δ^(m))`.
//!
//! `A = A(r,s,t)` is the generalized-means triangle, `Δ^(m)` the `m`-th
//! difference, `T = A·Δ^(m)` the defining triangle of the space and
//! `S = T⁻¹`, all truncated to the order of the parameter set.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::params::ParameterTriple;
use crate::scalar::{binom_scalar, sign, Scalar};
use crate::toeplitz::{toeplitz_inverse_coeffs, CoeffWindow};
use crate::triangle::{apply, compose, TriangleMatrix};
use crate::window::{sup_abs, MatrixTail, MatrixWindow, SequenceWindow};

/// `D_0^(s) … D_{N-1}^(s)` for the parameter set.
pub fn d_coeffs<S: Scalar>(p: &ParameterTriple<S>) -> Result<CoeffWindow<S>> {
    toeplitz_inverse_coeffs(p.s(), p.order())
}

/// Generalized means: `a_nk = s_{n-k} t_k / r_n`.
pub fn build_a<S: Scalar>(p: &ParameterTriple<S>) -> TriangleMatrix<S> {
    let (r, s, t) = (p.r(), p.s(), p.t());
    TriangleMatrix::from_fn(p.order(), MatrixTail::Structural, |n, k| {
        s[n - k].clone() * t[k].clone() / r[n].clone()
    })
}

/// `Δ^(m)`: entries `(-1)^{n-k} binom(m, n-k)`.
pub fn build_delta<S: Scalar>(m: usize, order: usize) -> TriangleMatrix<S> {
    TriangleMatrix::from_fn(order, MatrixTail::Structural, |n, k| {
        sign::<S>(n - k) * binom_scalar(m as i64, n - k)
    })
}

/// `(Δ^(m))⁻¹`: entries `binom(m+n-k-1, n-k)`.
pub fn build_delta_inverse<S: Scalar>(m: usize, order: usize) -> TriangleMatrix<S> {
    TriangleMatrix::from_fn(order, MatrixTail::Structural, |n, k| {
        binom_scalar(m as i64 + (n - k) as i64 - 1, n - k)
    })
}

/// Closed-form inverse of `A`: `b_nk = (-1)^{n-k} D_{n-k} r_k / t_n`.
pub fn build_b<S: Scalar>(p: &ParameterTriple<S>) -> Result<TriangleMatrix<S>> {
    let d = d_coeffs(p)?;
    let (r, t) = (p.r(), p.t());
    Ok(TriangleMatrix::from_fn(
        p.order(),
        MatrixTail::Structural,
        |n, k| sign::<S>(n - k) * d.d(n - k).clone() * r[k].clone() / t[n].clone(),
    ))
}

/// `T = A · Δ^(m)`.
pub fn build_t<S: Scalar>(p: &ParameterTriple<S>) -> Result<TriangleMatrix<S>> {
    compose(&build_a(p), &build_delta(p.m(), p.order()))
}

/// `T` read off the expanded kernel
/// `t_nj = (1/r_n) Σ_{i=j}^{n} (-1)^{i-j} binom(m, i-j) s_{n-i} t_i`.
pub fn build_t_kernel<S: Scalar>(p: &ParameterTriple<S>) -> TriangleMatrix<S> {
    let rows = (0..p.order()).map(|n| t_row(p, n)).collect();
    TriangleMatrix::from_rows(rows, MatrixTail::Structural)
        .expect("kernel rows are lower triangular")
}

/// Entry `s_jk` of `S = T⁻¹`:
/// `Σ_{i=k}^{j} (-1)^{i-k} binom(m+j-i-1, j-i) D_{i-k} r_k / t_i`.
pub(crate) fn s_entry<S: Scalar>(
    p: &ParameterTriple<S>,
    d: &CoeffWindow<S>,
    j: usize,
    k: usize,
) -> S {
    if k > j {
        return S::zero();
    }
    let (r, t, m) = (p.r(), p.t(), p.m() as i64);
    let inner = (k..=j).fold(S::zero(), |acc, i| {
        acc + sign::<S>(i - k)
            * binom_scalar::<S>(m + (j - i) as i64 - 1, j - i)
            * d.d(i - k).clone()
            / t[i].clone()
    });
    inner * r[k].clone()
}

/// `S = T⁻¹` from its closed form.
pub fn build_s<S: Scalar>(p: &ParameterTriple<S>) -> Result<TriangleMatrix<S>> {
    let d = d_coeffs(p)?;
    Ok(TriangleMatrix::from_fn(
        p.order(),
        MatrixTail::Structural,
        |j, k| s_entry(p, &d, j, k),
    ))
}

/// Row `n` of `A`, with parameters of order at least `n + 1`.
fn a_row<S: Scalar>(p: &ParameterTriple<S>, n: usize) -> Vec<S> {
    let (r, s, t) = (p.r(), p.s(), p.t());
    (0..=n)
        .map(|k| s[n - k].clone() * t[k].clone() / r[n].clone())
        .collect()
}

/// Row `n` of `T`, with parameters of order at least `n + 1`.
fn t_row<S: Scalar>(p: &ParameterTriple<S>, n: usize) -> Vec<S> {
    let (r, s, t, m) = (p.r(), p.s(), p.t(), p.m() as i64);
    (0..=n)
        .map(|j| {
            let inner = (j..=n).fold(S::zero(), |acc, i| {
                acc + sign::<S>(i - j)
                    * binom_scalar::<S>(m, i - j)
                    * s[n - i].clone()
                    * t[i].clone()
            });
            inner / r[n].clone()
        })
        .collect()
}

fn structural_window<S: Scalar>(
    p: &ParameterTriple<S>,
    m: &TriangleMatrix<S>,
    row: fn(&ParameterTriple<S>, usize) -> Vec<S>,
) -> MatrixWindow<S> {
    let mut w = m.to_window();
    w.tail = MatrixTail::Structural;
    if p.with_order(p.order() + 1).is_ok() {
        let base = p.clone();
        w.generator = Some(Arc::new(move |n| Ok(row(&base.with_order(n + 1)?, n))));
    }
    w
}

/// `A` as a structural window; rows past the order are generated when the
/// parameters come from a preset that can be extended.
pub fn a_window<S: Scalar>(p: &ParameterTriple<S>) -> MatrixWindow<S> {
    structural_window(p, &build_a(p), a_row)
}

/// `T` as a structural window, extendable like [`a_window`].
pub fn t_window<S: Scalar>(p: &ParameterTriple<S>) -> Result<MatrixWindow<S>> {
    Ok(structural_window(p, &build_t(p)?, t_row))
}

fn check_len<S: Scalar>(
    p: &ParameterTriple<S>,
    x: &SequenceWindow<S>,
    context: &'static str,
) -> Result<()> {
    if x.len() != p.order() {
        return Err(Error::DimensionMismatch {
            context,
            expected: p.order(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `y = T x`, the coordinates of `x` in the underlying space `X`.
pub fn transform<S: Scalar>(
    p: &ParameterTriple<S>,
    x: &SequenceWindow<S>,
) -> Result<SequenceWindow<S>> {
    check_len(p, x, "transform")?;
    apply(&build_t(p)?, x)
}

/// `x = S y`, i.e.
/// `x_n = Σ_{j≤n} Σ_{k=j}^{n} (-1)^{k-j} binom(m+n-k-1, n-k) D_{k-j} r_j y_j / t_k`.
pub fn inverse_transform<S: Scalar>(
    p: &ParameterTriple<S>,
    y: &SequenceWindow<S>,
) -> Result<SequenceWindow<S>> {
    check_len(p, y, "inverse transform")?;
    apply(&build_s(p)?, y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormReport<S> {
    pub value: S,
    /// Smallest index attaining the supremum.
    pub argmax: usize,
    /// The supremum runs over all `n`; from a window it is only a lower bound.
    pub truncation_lower_bound: bool,
}

/// `‖x‖ = sup_n |(T x)_n|` over the window.
pub fn space_norm<S: Scalar>(
    p: &ParameterTriple<S>,
    x: &SequenceWindow<S>,
) -> Result<NormReport<S>> {
    let y = transform(p, x)?;
    let (value, argmax) = sup_abs(&y.values);
    Ok(NormReport {
        value,
        argmax,
        truncation_lower_bound: true,
    })
}
