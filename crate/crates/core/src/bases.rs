//! Schauder bases of `c0(r,s,t;Δ^(m))` and `c(r,s,t;Δ^(m))`.
//!
//! `b^(j)` is column `j` of `S = T⁻¹`, so `T b^(j) = e_j`; `b^(-1)` is the row
//! sum of `S`, so `T b^(-1) = e`.

use std::fmt;

use crate::error::{Error, Result};
use crate::operators::{build_s, space_norm, transform, NormReport};
use crate::params::ParameterTriple;
use crate::scalar::Scalar;
use crate::triangle::TriangleMatrix;
use crate::window::{SeqTail, SequenceWindow, SpaceLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisIndex {
    /// `j = -1`: the extra vector needed for `c`.
    Limit,
    Coordinate(usize),
}

impl BasisIndex {
    pub fn from_signed(j: i64) -> Result<Self> {
        match j {
            -1 => Ok(BasisIndex::Limit),
            j if j >= 0 => Ok(BasisIndex::Coordinate(j as usize)),
            j => Err(Error::IndexOutOfRange { index: j, limit: 0 }),
        }
    }

    pub fn as_signed(self) -> i64 {
        match self {
            BasisIndex::Limit => -1,
            BasisIndex::Coordinate(j) => j as i64,
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_signed())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector<S> {
    pub index: BasisIndex,
    /// First `N` entries; the vector itself is not finitely supported.
    pub values: SequenceWindow<S>,
}

fn column<S: Scalar>(s: &TriangleMatrix<S>, j: usize) -> SequenceWindow<S> {
    SequenceWindow::new(s.column(j), SeqTail::Unknown)
}

fn row_sums<S: Scalar>(s: &TriangleMatrix<S>) -> SequenceWindow<S> {
    let values = (0..s.order())
        .map(|n| s.row(n).iter().fold(S::zero(), |acc, v| acc + v.clone()))
        .collect();
    SequenceWindow::new(values, SeqTail::Unknown)
}

fn basis_from<S: Scalar>(s: &TriangleMatrix<S>, index: BasisIndex) -> Result<BasisVector<S>> {
    let values = match index {
        BasisIndex::Limit => row_sums(s),
        BasisIndex::Coordinate(j) if j < s.order() => column(s, j),
        BasisIndex::Coordinate(j) => {
            return Err(Error::IndexOutOfRange {
                index: j as i64,
                limit: s.order(),
            })
        }
    };
    Ok(BasisVector { index, values })
}

/// `b^(j)` truncated to the order of `p`.
pub fn basis_vector<S: Scalar>(
    p: &ParameterTriple<S>,
    index: BasisIndex,
) -> Result<BasisVector<S>> {
    basis_from(&build_s(p)?, index)
}

/// All of `b^(-1), b^(0), …, b^(N-1)`.
pub fn basis<S: Scalar>(p: &ParameterTriple<S>) -> Result<Vec<BasisVector<S>>> {
    let s = build_s(p)?;
    std::iter::once(BasisIndex::Limit)
        .chain((0..p.order()).map(BasisIndex::Coordinate))
        .map(|i| basis_from(&s, i))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction<S> {
    pub partial: SequenceWindow<S>,
    /// `‖x - partial‖` in the space norm.
    pub residual: NormReport<S>,
    /// For `c`: the value used for `ℓ = lim (Tx)_n`, namely `y_{N-1}`.
    /// Finite data cannot observe the limit, so this is only a proxy.
    pub limit_proxy: Option<S>,
}

/// Partial basis expansion of `x` up to index `k`.
///
/// `c0`: `Σ_{j≤K} μ_j b^(j)` with `μ = Tx`.
/// `c`: `ℓ b^(-1) + Σ_{j≤K} (μ_j - ℓ) b^(j)`.
pub fn reconstruct<S: Scalar>(
    p: &ParameterTriple<S>,
    x: &SequenceWindow<S>,
    k: usize,
    space: SpaceLabel,
) -> Result<Reconstruction<S>> {
    let n = p.order();
    if k >= n {
        return Err(Error::IndexOutOfRange {
            index: k as i64,
            limit: n,
        });
    }
    let mu = transform(p, x)?;
    let s = build_s(p)?;
    let (mut acc, limit_proxy) = match space {
        SpaceLabel::C0 => (vec![S::zero(); n], None),
        SpaceLabel::C => {
            let ell = mu.values[n - 1].clone();
            let b = row_sums(&s);
            (
                b.values.into_iter().map(|v| v * ell.clone()).collect(),
                Some(ell),
            )
        }
        SpaceLabel::LInf => {
            return Err(Error::InvalidParameter(
                "l_inf has no Schauder basis".into(),
            ));
        }
    };
    let ell = limit_proxy.clone().unwrap_or_else(S::zero);
    for j in 0..=k {
        let coef = mu.values[j].clone() - ell.clone();
        if coef.is_zero() {
            continue;
        }
        for (i, slot) in acc.iter_mut().enumerate().skip(j) {
            *slot = slot.clone() + coef.clone() * s.get(i, j);
        }
    }
    let partial = SequenceWindow::new(acc, x.tail);
    let diff = x.scaled_sum(&S::one(), &partial, &(-S::one()))?;
    let residual = space_norm(p, &diff)?;
    Ok(Reconstruction {
        partial,
        residual,
        limit_proxy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{preset, PresetSpec, SeqSpec};
    use crate::scalar::{binom_scalar, sign, Rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn sample() -> ParameterTriple<Rational> {
        ParameterTriple::new(
            vec![q(2, 1), q(-1, 3), q(5, 2), q(1, 1), q(7, 4), q(3, 1)],
            vec![q(3, 2), q(1, 1), q(-2, 1), q(0, 1), q(1, 5), q(4, 1)],
            vec![q(1, 2), q(4, 1), q(-3, 1), q(2, 7), q(1, 1), q(-5, 3)],
            2,
            6,
        )
        .unwrap()
    }

    #[test]
    fn identity_preset_basis_is_unit_vectors() {
        let p = preset::<Rational>(&PresetSpec::Identity, 0, 5).unwrap();
        for j in 0..5 {
            let b = basis_vector(&p, BasisIndex::Coordinate(j)).unwrap();
            assert_eq!(
                b.values.values,
                SequenceWindow::<Rational>::unit(5, j).values
            );
        }
    }

    #[test]
    fn transforms_to_units_and_ones() {
        let p = sample();
        for b in basis(&p).unwrap() {
            let y = transform(&p, &b.values).unwrap();
            let expected = match b.index {
                BasisIndex::Limit => vec![q(1, 1); 6],
                BasisIndex::Coordinate(j) => SequenceWindow::<Rational>::unit(6, j).values,
            };
            assert_eq!(y.values, expected);
        }
    }

    #[test]
    fn uv_basis_matches_two_term_display() {
        let u: Vec<Rational> = vec![q(2, 1), q(1, 2), q(3, 1), q(1, 1), q(5, 4)];
        let v: Vec<Rational> = vec![q(1, 1), q(5, 1), q(1, 3), q(2, 1), q(3, 2)];
        let m = 2usize;
        let p = preset(
            &PresetSpec::Uv {
                u: SeqSpec::Explicit(u.clone()),
                v: SeqSpec::Explicit(v.clone()),
            },
            m,
            5,
        )
        .unwrap();
        for j in 0..5 {
            let b = basis_vector(&p, BasisIndex::Coordinate(j)).unwrap();
            for n in 0..5 {
                let expected = if n < j {
                    q(0, 1)
                } else {
                    (j..=(j + 1).min(n)).fold(q(0, 1), |acc, k| {
                        acc + sign::<Rational>(k - j)
                            * binom_scalar::<Rational>((m + n - k) as i64 - 1, n - k)
                            / (u[j].clone() * v[k].clone())
                    })
                };
                assert_eq!(b.values.values[n], expected, "b^({j})_{n}");
            }
        }
    }

    #[test]
    fn full_reconstruction_is_exact() {
        let p = sample();
        let x = SequenceWindow::finite(vec![q(1, 1), q(-2, 3), q(0, 1), q(5, 1), q(1, 7), q(2, 1)]);
        for space in [SpaceLabel::C0, SpaceLabel::C] {
            let r = reconstruct(&p, &x, 5, space).unwrap();
            assert_eq!(r.residual.value, q(0, 1));
            assert_eq!(r.partial.values, x.values);
        }
    }

    #[test]
    fn single_basis_vector_reconstructs() {
        let p = sample();
        let b = basis_vector(&p, BasisIndex::Coordinate(3)).unwrap();
        let r = reconstruct(&p, &b.values, 3, SpaceLabel::C0).unwrap();
        assert_eq!(r.residual.value, q(0, 1));
    }

    #[test]
    fn identity_first_term() {
        let p = preset::<Rational>(&PresetSpec::Identity, 0, 4).unwrap();
        let e0 = SequenceWindow::unit(4, 0);
        let r = reconstruct(&p, &e0, 0, SpaceLabel::C0).unwrap();
        assert_eq!(r.partial.values, e0.values);
    }

    #[test]
    fn out_of_range_indices() {
        let p = sample();
        assert!(basis_vector(&p, BasisIndex::Coordinate(6)).is_err());
        assert!(BasisIndex::from_signed(-2).is_err());
        let x = SequenceWindow::zeros(6);
        assert!(reconstruct(&p, &x, 6, SpaceLabel::C0).is_err());
    }
}
