//! Seeded invariant suite on the rational backend.
//!
//! Every check is an identity that must hold bit-exactly; a single failure
//! marks the report inconsistent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqspace::{
    apply, associate_matrix, basis, build_a, build_b, build_s, build_t, chi_norm, compose,
    det_oracle_d, inverse_transform, reconstruct, space_norm, toeplitz_inverse_coeffs, transform,
    AssociateMatrix, Associates, BasisIndex, MatrixTail, MatrixWindow, ParameterTriple, Rational,
    Scalar, SequenceWindow, SpaceLabel, TrendConfig,
};
use serde_json::json;

use crate::error::CliError;
use crate::job::JobSpec;
use crate::report::{Cell, Status, Table};

const ORDER: usize = 12;

fn small(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = small(rng);
        if v != Rational::from_i64(0) {
            return v;
        }
    }
}

fn params(rng: &mut ChaCha8Rng, case: usize) -> ParameterTriple<Rational> {
    let r = (0..ORDER).map(|_| nonzero(rng)).collect();
    let t = (0..ORDER).map(|_| nonzero(rng)).collect();
    let mut s: Vec<Rational> = (0..ORDER).map(|_| small(rng)).collect();
    s[0] = nonzero(rng);
    ParameterTriple::new(r, s, t, case % 4, ORDER).expect("nonzero r, t and s_0")
}

fn sequence(rng: &mut ChaCha8Rng) -> SequenceWindow<Rational> {
    SequenceWindow::finite((0..ORDER).map(|_| small(rng)).collect())
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::from_i64(0), |acc, (x, y)| {
        acc + x.clone() * y.clone()
    })
}

type Check = fn(&mut ChaCha8Rng, usize) -> seqspace::Result<bool>;

fn inverses(rng: &mut ChaCha8Rng, case: usize) -> seqspace::Result<bool> {
    let p = params(rng, case);
    Ok(compose(&build_b(&p)?, &build_a(&p))?.is_identity(0.0)
        && compose(&build_s(&p)?, &build_t(&p)?)?.is_identity(0.0))
}

fn d_oracle(rng: &mut ChaCha8Rng, _: usize) -> seqspace::Result<bool> {
    let mut s: Vec<Rational> = (0..9).map(|_| small(rng)).collect();
    s[0] = nonzero(rng);
    let d = toeplitz_inverse_coeffs(&s, 9)?;
    for n in 0..=8 {
        if *d.d(n) != det_oracle_d(&s, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn round_trip(rng: &mut ChaCha8Rng, case: usize) -> seqspace::Result<bool> {
    let p = params(rng, case);
    let x = sequence(rng);
    Ok(inverse_transform(&p, &transform(&p, &x)?)?.values == x.values)
}

fn isometry(rng: &mut ChaCha8Rng, case: usize) -> seqspace::Result<bool> {
    let p = params(rng, case);
    let x = sequence(rng);
    Ok(space_norm(&p, &x)?.value == transform(&p, &x)?.sup_norm().0)
}

fn bases(rng: &mut ChaCha8Rng, case: usize) -> seqspace::Result<bool> {
    let p = params(rng, case);
    for b in basis(&p)? {
        let y = transform(&p, &b.values)?.values;
        let expected = match b.index {
            BasisIndex::Limit => SequenceWindow::ones(ORDER).values,
            BasisIndex::Coordinate(j) => SequenceWindow::unit(ORDER, j).values,
        };
        if y != expected {
            return Ok(false);
        }
    }
    let x = sequence(rng);
    for space in [SpaceLabel::C0, SpaceLabel::C] {
        if reconstruct(&p, &x, ORDER - 1, space)?.residual.value != Rational::from_i64(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn dualities(rng: &mut ChaCha8Rng, case: usize) -> seqspace::Result<bool> {
    let p = params(rng, case);
    let assoc = Associates::new(&p)?;
    let a = sequence(rng);
    let x = sequence(rng);
    let y = transform(&p, &x)?;
    let beta = dot(&a.values, &x.values) == dot(&assoc.associate_row(&a)?.values, &y.values);
    let cy = apply(&assoc.alpha_dual_matrix(&a)?, &y)?;
    let alpha = (0..ORDER).all(|n| cy.values[n] == a.values[n].clone() * x.values[n].clone());
    let ey = apply(&assoc.gamma_dual_matrix(&a, ORDER)?, &y)?;
    let gamma = (0..ORDER).all(|l| ey.values[l] == dot(&a.values[..=l], &x.values[..=l]));
    Ok(beta && alpha && gamma)
}

fn associate_identity(rng: &mut ChaCha8Rng, case: usize) -> seqspace::Result<bool> {
    let cfg = TrendConfig::default();
    let p = params(rng, case);
    let rows = (0..ORDER)
        .map(|_| (0..rng.gen_range(1..=ORDER)).map(|_| small(rng)).collect())
        .collect();
    let a = MatrixWindow::finite(rows);
    let x = sequence(rng);
    let y = transform(&p, &x)?;
    let at = associate_matrix(&p, &a, &cfg)?;
    let intertwines =
        (0..ORDER).all(|n| dot(&a.rows[n], &x.values) == dot(&at.matrix.rows[n], &y.values));
    let t = associate_matrix(&p, &build_t(&p)?.to_window(), &cfg)?;
    let identity = (0..ORDER)
        .all(|n| (0..ORDER).all(|k| t.matrix.get(n, k) == Rational::from_i64(i64::from(n == k))));
    Ok(intertwines && identity)
}

fn chi_identity(_: &mut ChaCha8Rng, _: usize) -> seqspace::Result<bool> {
    let cfg = TrendConfig::default();
    let rows = (0..ORDER)
        .map(|n| SequenceWindow::<Rational>::unit(n + 1, n).values)
        .collect();
    let id =
        AssociateMatrix::supplied(MatrixWindow::finite(rows).with_tail(MatrixTail::Structural));
    let one = Rational::from_i64(1);
    let c0 = chi_norm(&id, SpaceLabel::C0, &cfg)?;
    let c = chi_norm(&id, SpaceLabel::C, &cfg)?;
    let li = chi_norm(&id, SpaceLabel::LInf, &cfg)?;
    Ok(c0.lower == one
        && c0.upper == one
        && c.lower == Rational::from_ratio(1, 2)
        && c.upper == one
        && li.lower == Rational::from_i64(0)
        && li.upper == one)
}

const CHECKS: [(&str, Check); 8] = [
    ("inverse identities", inverses),
    ("d-coefficient oracle", d_oracle),
    ("transform round trip", round_trip),
    ("norm isometry", isometry),
    ("basis identities", bases),
    ("duality identities", dualities),
    ("associate-matrix identity", associate_identity),
    ("chi of identity", chi_identity),
];

pub fn run(job: &JobSpec) -> Result<(Status, serde_json::Value, Table), CliError> {
    let parse = |key: &str, default: u64| -> Result<u64, CliError> {
        job.option(key).map_or(Ok(default), |t| {
            t.parse()
                .map_err(|_| CliError::Validation(format!("--{key}: cannot parse {t:?}")))
        })
    };
    let seed = parse("seed", 2026)?;
    let cases = parse("cases", 20)? as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = Table::new(&["check", "cases", "failures"]);
    let mut checks = Vec::new();
    let mut total_failures = 0;
    for (name, check) in CHECKS {
        let mut failures = 0;
        let mut errors = Vec::new();
        for case in 0..cases {
            match check(&mut rng, case) {
                Ok(true) => {}
                Ok(false) => failures += 1,
                Err(e) => {
                    failures += 1;
                    errors.push(format!("case {case}: {e}"));
                }
            }
        }
        total_failures += failures;
        table.push(vec![
            Cell::text(name),
            Cell::Int(cases as i64),
            Cell::Int(failures),
        ]);
        checks
            .push(json!({ "check": name, "cases": cases, "failures": failures, "errors": errors }));
    }
    let status = if total_failures == 0 {
        Status::Ok
    } else {
        Status::Inconsistent
    };
    let result = json!({ "seed": seed, "order": ORDER, "checks": checks });
    Ok((status, result, table))
}
