//! One function per subcommand; each turns a job into a report.

use seqspace::{
    a_window, associate_matrix, associate_row, basis, basis_vector, chi_norm, classify_map,
    compactness_verdict, dual_membership, eval_condition, inverse_transform,
    linfty_source_autocompact_check, operator_norm, reconstruct, space_norm, t_window, transform,
    AssociateMatrix, AutoCompactOutcome, BasisIndex, ConditionId, ConditionResult, DualKind,
    EstimateStatus, MatrixWindow, Outcome, ParameterTriple, Provenance, Rational, Scalar, SeqTail,
    SpaceLabel,
};
use serde_json::{json, Value};

use crate::codec::{
    decode_matrix, decode_sequence, encode_estimate, encode_sequence, encode_values,
    encode_verdict, matrix_tail_name, Codec,
};
use crate::error::CliError;
use crate::job::{Command, JobSpec, ScalarChoice};
use crate::report::{Cell, Report, Status, Table};
use crate::selftest;

type Output = (Status, Value, Table);

pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    match job.scalar {
        ScalarChoice::Rational => run_with::<Rational>(job),
        ScalarChoice::F64 => run_with::<f64>(job),
    }
}

fn run_with<S: Codec>(job: &JobSpec) -> Result<Report, CliError> {
    let (status, result, table) = if job.command == Command::Selftest {
        selftest::run(job)?
    } else {
        let p = job.params::<S>()?;
        match job.command {
            Command::Transform => map_sequence(&p, job, false)?,
            Command::InverseTransform => map_sequence(&p, job, true)?,
            Command::Norm => norm(&p, job)?,
            Command::Basis => basis_cmd(&p, job)?,
            Command::Dual => dual(&p, job)?,
            Command::Matclass => matclass(&p, job)?,
            Command::Chi => chi(&p, job)?,
            Command::Selftest => unreachable!(),
        }
    };
    let backend = if job.command == Command::Selftest {
        Rational::BACKEND
    } else {
        S::BACKEND
    };
    Ok(Report::new(job, backend, status, result, table))
}

fn space(job: &JobSpec, key: &str, default: Option<SpaceLabel>) -> Result<SpaceLabel, CliError> {
    match job.option(key) {
        Some(text) => SpaceLabel::parse(text).ok_or_else(|| {
            CliError::Validation(format!("--{key}: unknown space {text:?} (c0, c or l_inf)"))
        }),
        None => default
            .ok_or_else(|| CliError::Validation(format!("{} needs --{key}", job.command.name()))),
    }
}

fn parsed<T: std::str::FromStr>(job: &JobSpec, key: &str) -> Result<Option<T>, CliError> {
    job.option(key)
        .map(|text| {
            text.parse()
                .map_err(|_| CliError::Validation(format!("--{key}: cannot parse {text:?}")))
        })
        .transpose()
}

fn flag(job: &JobSpec, key: &str) -> bool {
    job.option(key) == Some("true")
}

fn status_of(outcome: Outcome) -> Status {
    match outcome {
        Outcome::Indeterminate => Status::Indeterminate,
        _ => Status::Ok,
    }
}

fn map_sequence<S: Codec>(
    p: &ParameterTriple<S>,
    job: &JobSpec,
    inverse: bool,
) -> Result<Output, CliError> {
    let from = decode_sequence::<S>(job.input("input")?, "input")?;
    let to = if inverse {
        inverse_transform(p, &from)?
    } else {
        transform(p, &from)?
    };
    let (a, b) = if inverse { ("y", "x") } else { ("x", "y") };
    let mut table = Table::new(&["n", a, b]);
    for (n, (u, v)) in from.values.iter().zip(&to.values).enumerate() {
        table.push(vec![Cell::Int(n as i64), Cell::num(u), Cell::num(v)]);
    }
    let result = json!({ a: encode_sequence(&from), b: encode_sequence(&to) });
    Ok((Status::Ok, result, table))
}

fn norm<S: Codec>(p: &ParameterTriple<S>, job: &JobSpec) -> Result<Output, CliError> {
    let x = decode_sequence::<S>(job.input("input")?, "input")?;
    let report = space_norm(p, &x)?;
    let y = transform(p, &x)?;
    let mut table = Table::new(&["quantity", "value"]);
    table.push(vec![Cell::text("norm"), Cell::num(&report.value)]);
    table.push(vec![Cell::text("argmax"), Cell::Int(report.argmax as i64)]);
    let result = json!({
        "norm": report.value.encode(),
        "argmax": report.argmax,
        "truncation_lower_bound": report.truncation_lower_bound,
        "y": encode_sequence(&y),
    });
    Ok((Status::Ok, result, table))
}

fn basis_cmd<S: Codec>(p: &ParameterTriple<S>, job: &JobSpec) -> Result<Output, CliError> {
    if let Some(doc) = job.inputs.get("reconstruct") {
        let x = decode_sequence::<S>(doc, "reconstruct")?;
        let k = parsed::<usize>(job, "k")?.unwrap_or(p.order().saturating_sub(1));
        let space = space(job, "space", Some(SpaceLabel::C0))?;
        let rec = reconstruct(p, &x, k, space)?;
        let mut table = Table::new(&["n", "x", "partial"]);
        for (n, (u, v)) in x.values.iter().zip(&rec.partial.values).enumerate() {
            table.push(vec![Cell::Int(n as i64), Cell::num(u), Cell::num(v)]);
        }
        let result = json!({
            "k": k,
            "space": space.name(),
            "partial": encode_sequence(&rec.partial),
            "residual": { "norm": rec.residual.value.encode(), "argmax": rec.residual.argmax },
            "limit_proxy": rec.limit_proxy.as_ref().map(Codec::encode),
        });
        return Ok((Status::Ok, result, table));
    }
    let vectors = match parsed::<i64>(job, "index")? {
        Some(j) => vec![basis_vector(p, BasisIndex::from_signed(j)?)?],
        None => basis(p)?,
    };
    let mut columns = vec!["n".to_string()];
    columns.extend(vectors.iter().map(|b| format!("b({})", b.index)));
    let mut table = Table {
        columns,
        rows: Vec::new(),
    };
    for n in 0..p.order() {
        let mut row = vec![Cell::Int(n as i64)];
        row.extend(vectors.iter().map(|b| Cell::num(&b.values.values[n])));
        table.push(row);
    }
    let result = json!({
        "vectors": vectors.iter()
            .map(|b| json!({ "index": b.index.as_signed(), "values": encode_sequence(&b.values) }))
            .collect::<Vec<_>>(),
    });
    Ok((Status::Ok, result, table))
}

fn dual<S: Codec>(p: &ParameterTriple<S>, job: &JobSpec) -> Result<Output, CliError> {
    let a = decode_sequence::<S>(job.input("input")?, "input")?;
    let text = job.option("dual").unwrap_or("beta");
    let kind = DualKind::parse(text).ok_or_else(|| {
        CliError::Validation(format!(
            "--dual: unknown dual {text:?} (alpha, beta or gamma)"
        ))
    })?;
    let space = space(job, "space", Some(SpaceLabel::C0))?;
    let verdict = dual_membership(p, &a, kind, space, &job.trend_config())?;
    // The associate row is a finite sum only for finitely supported `a`.
    let row = if a.tail == SeqTail::Zero {
        let mut padded = a.clone();
        padded.values.resize(p.order(), S::zero());
        Some(associate_row(p, &padded)?.values)
    } else {
        None
    };
    let mut table = Table::new(&["k", "a", "R"]);
    for k in 0..a.len().max(row.as_ref().map_or(0, Vec::len)) {
        table.push(vec![
            Cell::Int(k as i64),
            a.values.get(k).map_or(Cell::Empty, Cell::num),
            row.as_ref()
                .and_then(|r| r.get(k))
                .map_or(Cell::Empty, Cell::num),
        ]);
    }
    let result = json!({
        "dual": kind.name(),
        "space": space.name(),
        "a": encode_sequence(&a),
        "associate_row": row.as_deref().map(encode_values),
        "verdict": encode_verdict(&verdict),
    });
    Ok((status_of(verdict.outcome), result, table))
}

fn matrix_arg<S: Codec>(
    p: &ParameterTriple<S>,
    job: &JobSpec,
) -> Result<MatrixWindow<S>, CliError> {
    match job.option("builtin") {
        Some("a") => Ok(a_window(p)),
        Some("t") => Ok(t_window(p)?),
        Some(other) => Err(CliError::Validation(format!(
            "--builtin: expected a or t, got {other:?}"
        ))),
        None => Ok(decode_matrix(job.input("matrix")?, "matrix")?),
    }
}

fn condition_json<S: Codec>(c: &ConditionResult<S>) -> Value {
    json!({
        "id": c.id.slug(),
        "outcome": c.outcome.name(),
        "estimate": encode_estimate(&c.estimate),
        "note": c.note,
    })
}

fn condition_rows<S: Codec>(conditions: &[ConditionResult<S>]) -> Table {
    let mut table = Table::new(&["condition", "outcome", "value", "upper", "status", "trend"]);
    for c in conditions {
        table.push(vec![
            Cell::text(c.id.slug()),
            Cell::text(c.outcome.name()),
            Cell::num(&c.estimate.value),
            c.estimate.upper.as_ref().map_or(Cell::Empty, Cell::num),
            Cell::text(c.estimate.status.name()),
            c.estimate
                .trend
                .map_or(Cell::Empty, |t| Cell::text(t.name())),
        ]);
    }
    table
}

fn matclass<S: Codec>(p: &ParameterTriple<S>, job: &JobSpec) -> Result<Output, CliError> {
    let a = matrix_arg(p, job)?;
    let cfg = job.trend_config();
    if let Some(list) = job.option("conditions") {
        let ids = list
            .split(',')
            .map(|slug| {
                ConditionId::parse(slug.trim()).ok_or_else(|| {
                    CliError::Validation(format!("--condition: unknown id {slug:?}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let conditions = ids
            .iter()
            .map(|&id| eval_condition(id, p, &a, &cfg))
            .collect::<seqspace::Result<Vec<_>>>()?;
        let undecided = conditions.iter().any(|c| {
            c.outcome == Outcome::Indeterminate
                || c.estimate.status == EstimateStatus::Indeterminate
        });
        let status = if undecided {
            Status::Indeterminate
        } else {
            Status::Ok
        };
        let result = json!({
            "matrix_tail": matrix_tail_name(a.tail),
            "conditions": conditions.iter().map(condition_json).collect::<Vec<_>>(),
        });
        return Ok((status, result, condition_rows(&conditions)));
    }
    let source = space(job, "source", None)?;
    let target = space(job, "target", None)?;
    let report = classify_map(p, &a, source, target, &cfg)?;
    let result = json!({
        "source": source.name(),
        "target": target.name(),
        "matrix_tail": matrix_tail_name(a.tail),
        "verdict": encode_verdict(&report.verdict),
        "reading": report.reading,
        "conditions": report.conditions.iter().map(condition_json).collect::<Vec<_>>(),
    });
    Ok((
        status_of(report.verdict.outcome),
        result,
        condition_rows(&report.conditions),
    ))
}

fn chi<S: Codec>(p: &ParameterTriple<S>, job: &JobSpec) -> Result<Output, CliError> {
    let a = matrix_arg(p, job)?;
    let cfg = job.trend_config();
    let target = space(job, "target", None)?;
    let assoc = if flag(job, "associate") {
        AssociateMatrix::supplied(a.clone())
    } else {
        associate_matrix(p, &a, &cfg)?
    };
    let est = chi_norm(&assoc, target, &cfg)?;
    let verdict = compactness_verdict(&assoc, target, &cfg)?;
    let norm = operator_norm(&assoc, &cfg)?;

    let mut status = if est.status == EstimateStatus::Indeterminate
        || verdict.outcome == Outcome::Indeterminate
    {
        Status::Indeterminate
    } else {
        Status::Ok
    };
    let corollary = if flag(job, "check_corollary") {
        if assoc.provenance != Provenance::ComputedFromA {
            return Err(CliError::Validation(
                "--check-corollary needs A itself, not a supplied associate matrix".into(),
            ));
        }
        let auto = linfty_source_autocompact_check(p, &a, target, &cfg)?;
        if auto.outcome == AutoCompactOutcome::Inconsistent {
            status = Status::Inconsistent;
        }
        Some(json!({
            "outcome": auto.outcome.name(),
            "class_verdict": encode_verdict(&auto.class_report.verdict),
            "compactness": auto.compactness.as_ref().map(encode_verdict),
        }))
    } else {
        None
    };

    let mut table = Table::new(&["quantity", "n", "value"]);
    table.push(vec![
        Cell::text("lower"),
        Cell::Empty,
        Cell::num(&est.lower),
    ]);
    table.push(vec![
        Cell::text("upper"),
        Cell::Empty,
        Cell::num(&est.upper),
    ]);
    table.push(vec![
        Cell::text("operator_norm"),
        Cell::Empty,
        Cell::num(&norm.value),
    ]);
    for (n, v) in est.limsup.window.iter().zip(&est.limsup.trace) {
        table.push(vec![
            Cell::text("trace"),
            Cell::Int(*n as i64),
            Cell::num(v),
        ]);
    }
    let result = json!({
        "target": target.name(),
        "provenance": match assoc.provenance {
            Provenance::ComputedFromA => "computed",
            Provenance::UserSupplied => "supplied",
        },
        "lower": est.lower.encode(),
        "upper": est.upper.encode(),
        "status": est.status.name(),
        "limsup": encode_estimate(&est.limsup),
        "alpha_tilde": est.alpha_tilde.as_ref()
            .map(|a| a.iter().map(encode_estimate).collect::<Vec<_>>()),
        "operator_norm": encode_estimate(&norm),
        "compact": encode_verdict(&verdict),
        "corollary": corollary,
    });
    Ok((status, result, table))
}
