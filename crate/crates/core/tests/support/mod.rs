//! Random instances shared by the integration tests.

#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use seqspace::{MatrixWindow, ParameterTriple, Rational, Scalar, SequenceWindow};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 9`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = small_rational(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_params(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ParameterTriple<Rational> {
    let r = (0..n).map(|_| nonzero_rational(rng)).collect();
    let t = (0..n).map(|_| nonzero_rational(rng)).collect();
    let mut s: Vec<Rational> = (0..n).map(|_| small_rational(rng)).collect();
    s[0] = nonzero_rational(rng);
    ParameterTriple::new(r, s, t, m, n).expect("nonzero r, t and s_0")
}

pub fn random_sequence(rng: &mut ChaCha8Rng, n: usize) -> SequenceWindow<Rational> {
    SequenceWindow::finite((0..n).map(|_| small_rational(rng)).collect())
}

/// A zero-tail sequence whose support is a random prefix of `0..n`.
pub fn random_finite(rng: &mut ChaCha8Rng, n: usize) -> SequenceWindow<Rational> {
    let support = rng.gen_range(0..=n);
    let values = (0..n)
        .map(|i| {
            if i < support {
                small_rational(rng)
            } else {
                q(0, 1)
            }
        })
        .collect();
    SequenceWindow::finite(values)
}

/// `rows` finitely supported rows of width at most `n`, zero afterwards.
pub fn random_finite_rank(rng: &mut ChaCha8Rng, rows: usize, n: usize) -> MatrixWindow<Rational> {
    MatrixWindow::finite(
        (0..rows)
            .map(|_| {
                let width = rng.gen_range(1..=n);
                (0..width).map(|_| small_rational(rng)).collect()
            })
            .collect(),
    )
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(q(0, 1), |acc, (x, y)| acc + x.clone() * y.clone())
}
