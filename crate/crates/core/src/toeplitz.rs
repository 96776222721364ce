//! Coefficients `D_n^(s)` of the inverse lower-triangular Toeplitz matrix.
//!
//! With `c_n = (-1)^n D_n`, the sequence `c` is the reciprocal power series
//! of `s`: `Σ_{j≤n} s_j c_{n-j} = [n = 0]`.

use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};

/// Largest determinant order accepted by [`det_oracle_d`].
pub const DET_ORACLE_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffWindow<S> {
    values: Vec<S>,
}

impl<S: Scalar> CoeffWindow<S> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `D_n^(s)`.
    pub fn d(&self, n: usize) -> &S {
        &self.values[n]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// `c_n = (-1)^n D_n`, the reciprocal series coefficients.
    pub fn signed(&self, n: usize) -> S {
        sign::<S>(n) * self.values[n].clone()
    }
}

/// `D_0 … D_{count-1}` by the convolution recursion
/// `c_0 = 1/s_0`, `c_n = -(1/s_0) Σ_{j=1}^{n} s_j c_{n-j}`.
pub fn toeplitz_inverse_coeffs<S: Scalar>(s: &[S], count: usize) -> Result<CoeffWindow<S>> {
    if s.len() < count {
        return Err(Error::DimensionMismatch {
            context: "toeplitz coefficients",
            expected: count,
            found: s.len(),
        });
    }
    if count == 0 {
        return Ok(CoeffWindow { values: Vec::new() });
    }
    if s[0].is_zero() {
        return Err(Error::InvalidParameter("s_0 = 0".into()));
    }
    let inv0 = S::one() / s[0].clone();
    let mut c: Vec<S> = Vec::with_capacity(count);
    c.push(inv0.clone());
    for n in 1..count {
        let acc = (1..=n).fold(S::zero(), |acc, j| acc + s[j].clone() * c[n - j].clone());
        c.push(-(inv0.clone() * acc));
    }
    let values = c
        .into_iter()
        .enumerate()
        .map(|(n, v)| sign::<S>(n) * v)
        .collect();
    Ok(CoeffWindow { values })
}

/// `D_n^(s)` straight from its Hessenberg determinant, divided by `s_0^{n+1}`.
///
/// Row `i` (1-based) of the `n×n` determinant is `s_i, s_{i-1}, …, s_0, 0, …`.
/// Evaluated by cofactor expansion; only meant as a small-`n` cross-check.
pub fn det_oracle_d<S: Scalar>(s: &[S], n: usize) -> Result<S> {
    if n > DET_ORACLE_MAX {
        return Err(Error::Guard(format!(
            "determinant oracle limited to n <= {DET_ORACLE_MAX}, got {n}"
        )));
    }
    if s.len() <= n {
        return Err(Error::DimensionMismatch {
            context: "determinant oracle",
            expected: n + 1,
            found: s.len(),
        });
    }
    if s[0].is_zero() {
        return Err(Error::InvalidParameter("s_0 = 0".into()));
    }
    let matrix: Vec<Vec<S>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if j <= i + 1 {
                        s[i + 1 - j].clone()
                    } else {
                        S::zero()
                    }
                })
                .collect()
        })
        .collect();
    let det = cofactor_det(&matrix);
    let scale = (0..=n).fold(S::one(), |acc, _| acc * s[0].clone());
    Ok(det / scale)
}

fn cofactor_det<S: Scalar>(m: &[Vec<S>]) -> S {
    match m.len() {
        0 => S::one(),
        1 => m[0][0].clone(),
        size => {
            let mut acc = S::zero();
            for col in 0..size {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<S>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                acc = acc + sign::<S>(col) * m[0][col].clone() * cofactor_det(&minor);
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn constant_ones_give_one_one_then_zeros() {
        let d = toeplitz_inverse_coeffs(&ints(&[1; 10]), 10).unwrap();
        assert_eq!(d.values()[..2], ints(&[1, 1])[..]);
        assert!(d.values()[2..].iter().all(|v| *v == q(0, 1)));
    }

    #[test]
    fn delta_sequence_is_its_own_inverse() {
        let d = toeplitz_inverse_coeffs(&ints(&[1, 0, 0, 0]), 4).unwrap();
        assert_eq!(d.values(), &ints(&[1, 0, 0, 0])[..]);
    }

    #[test]
    fn small_example() {
        let s = ints(&[2, 1, 3]);
        let d = toeplitz_inverse_coeffs(&s, 3).unwrap();
        assert_eq!(*d.d(0), q(1, 2));
        assert_eq!(*d.d(1), q(1, 4));
        assert_eq!(*d.d(2), q(-5, 8));
        assert_eq!(det_oracle_d(&s, 2).unwrap(), q(-5, 8));
    }

    #[test]
    fn determinant_oracle_cases() {
        assert_eq!(det_oracle_d(&ints(&[3, 5]), 0).unwrap(), q(1, 3));
        assert_eq!(det_oracle_d(&ints(&[1, 1, 1]), 2).unwrap(), q(0, 1));
        assert!(matches!(
            det_oracle_d(&ints(&[1; 12]), 9),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn convolution_identity() {
        let s = ints(&[3, -1, 4, 1, -5, 9]);
        let d = toeplitz_inverse_coeffs(&s, 6).unwrap();
        for n in 0..6 {
            let conv = (0..=n).fold(q(0, 1), |acc, j| acc + s[j].clone() * d.signed(n - j));
            assert_eq!(conv, q(i64::from(n == 0), 1));
        }
    }

    #[test]
    fn zero_leading_term_rejected() {
        assert!(toeplitz_inverse_coeffs(&ints(&[0, 1]), 2).is_err());
        assert!(det_oracle_d(&ints(&[0, 1]), 1).is_err());
    }
}
