//! JSON encoding of numbers, sequences, matrices and parameters.
//!
//! Every number is written as a string so that values survive any JSON
//! reader unchanged: rationals as `{"num": "5", "den": "8"}`, floats as
//! decimal strings. Decoding also accepts plain JSON numbers and strings such
//! as `"5/8"` or `"0.25"`, which is convenient for hand-written input.

use seqspace::{
    EstimateKind, LimitEstimate, MatrixTail, MatrixWindow, ParameterTriple, Rational,
    RawParameters, Scalar, SeqTail, SequenceWindow, Verdict,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

/// A document that does not match the expected shape.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct SchemaError {
    /// JSON path of the offending field, e.g. `matrix.rows[2][0]`.
    pub path: String,
    pub message: String,
}

pub fn schema(path: &str, message: impl Into<String>) -> SchemaError {
    SchemaError {
        path: path.to_string(),
        message: message.into(),
    }
}

/// A scalar backend with a JSON representation.
pub trait Codec: Scalar {
    fn encode(&self) -> Value;

    /// Canonical text of the value; CSV cells use it, and two emissions agree
    /// exactly when their canonical texts agree.
    fn canonical(&self) -> String;

    fn decode(v: &Value, path: &str) -> Result<Self, SchemaError> {
        let parsed = match v {
            Value::String(s) => Self::parse(s),
            Value::Number(n) => Self::parse(&n.to_string()),
            Value::Object(o) => {
                let num = string_field(o, "num", path)?;
                let den = string_field(o, "den", path)?;
                Self::parse(&format!("{num}/{den}"))
            }
            _ => return Err(schema(path, "expected a number")),
        };
        parsed.map_err(|e| schema(path, e.to_string()))
    }
}

fn string_field<'a>(
    o: &'a Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'a str, SchemaError> {
    match o.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(schema(&format!("{path}.{key}"), "expected a string")),
        None => Err(schema(path, format!("missing field \"{key}\""))),
    }
}

impl Codec for Rational {
    fn encode(&self) -> Value {
        json!({ "num": self.numer().to_string(), "den": self.denom().to_string() })
    }

    fn canonical(&self) -> String {
        self.to_string()
    }
}

impl Codec for f64 {
    fn encode(&self) -> Value {
        Value::String(self.canonical())
    }

    // `Display` for f64 is the shortest decimal that parses back exactly.
    fn canonical(&self) -> String {
        format!("{self}")
    }
}

pub fn encode_values<S: Codec>(values: &[S]) -> Value {
    Value::Array(values.iter().map(Codec::encode).collect())
}

fn decode_values<S: Codec>(v: &Value, path: &str) -> Result<Vec<S>, SchemaError> {
    let items = v
        .as_array()
        .ok_or_else(|| schema(path, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| S::decode(item, &format!("{path}[{i}]")))
        .collect()
}

fn seq_tail_name(tail: SeqTail) -> &'static str {
    match tail {
        SeqTail::Zero => "zero",
        SeqTail::Unknown => "unknown",
    }
}

fn decode_seq_tail(v: &Value, path: &str) -> Result<SeqTail, SchemaError> {
    match v.as_str() {
        Some("zero") => Ok(SeqTail::Zero),
        Some("unknown") => Ok(SeqTail::Unknown),
        _ => Err(schema(path, "expected \"zero\" or \"unknown\"")),
    }
}

pub fn matrix_tail_name(tail: MatrixTail) -> &'static str {
    match tail {
        MatrixTail::Zero => "zero",
        MatrixTail::Structural => "structural",
        MatrixTail::Unknown => "unknown",
    }
}

fn decode_matrix_tail(v: &Value, path: &str) -> Result<MatrixTail, SchemaError> {
    match v.as_str() {
        Some("zero") => Ok(MatrixTail::Zero),
        Some("structural") => Ok(MatrixTail::Structural),
        Some("unknown") => Ok(MatrixTail::Unknown),
        _ => Err(schema(
            path,
            "expected \"zero\", \"structural\" or \"unknown\"",
        )),
    }
}

/// `{"values": [...], "tail": "zero" | "unknown"}`.
pub fn encode_sequence<S: Codec>(x: &SequenceWindow<S>) -> Value {
    json!({ "values": encode_values(&x.values), "tail": seq_tail_name(x.tail) })
}

/// Accepts the object form, or a bare array as shorthand for a finite
/// (zero-tail) sequence.
pub fn decode_sequence<S: Codec>(v: &Value, path: &str) -> Result<SequenceWindow<S>, SchemaError> {
    match v {
        Value::Array(_) => Ok(SequenceWindow::finite(decode_values(v, path)?)),
        Value::Object(o) => {
            let values = o
                .get("values")
                .ok_or_else(|| schema(path, "missing field \"values\""))?;
            let tail = o
                .get("tail")
                .ok_or_else(|| schema(path, "missing field \"tail\""))?;
            Ok(SequenceWindow::new(
                decode_values(values, &format!("{path}.values"))?,
                decode_seq_tail(tail, &format!("{path}.tail"))?,
            ))
        }
        _ => Err(schema(path, "expected a sequence object or array")),
    }
}

/// Row-major `{"rows": [[...]], "tail": ..., "row_support": ...}`.
pub fn encode_matrix<S: Codec>(m: &MatrixWindow<S>) -> Value {
    json!({
        "rows": Value::Array(m.rows.iter().map(|r| encode_values(r)).collect()),
        "tail": matrix_tail_name(m.tail),
        "row_support": seq_tail_name(m.row_support),
    })
}

/// The `tail` field is mandatory: what lies past the stored rows changes
/// every verdict, so it is never defaulted. `row_support` defaults to
/// `"zero"` (rows are finitely supported).
pub fn decode_matrix<S: Codec>(v: &Value, path: &str) -> Result<MatrixWindow<S>, SchemaError> {
    let o = v
        .as_object()
        .ok_or_else(|| schema(path, "expected a matrix object with \"rows\" and \"tail\""))?;
    let rows = o
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(path, "missing array field \"rows\""))?;
    let tail = o
        .get("tail")
        .ok_or_else(|| schema(path, "missing field \"tail\" (zero, structural or unknown)"))?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(n, row)| decode_values(row, &format!("{path}.rows[{n}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut m =
        MatrixWindow::finite(rows).with_tail(decode_matrix_tail(tail, &format!("{path}.tail"))?);
    if let Some(support) = o.get("row_support") {
        m.row_support = decode_seq_tail(support, &format!("{path}.row_support"))?;
    }
    Ok(m)
}

pub fn encode_params<S: Codec>(p: &ParameterTriple<S>) -> Value {
    json!({
        "r": encode_values(p.r()),
        "s": encode_values(p.s()),
        "t": encode_values(p.t()),
        "m": p.m(),
        "n": p.order(),
    })
}

/// Decodes the raw windows; membership checks are left to
/// [`seqspace::validate_params`]. `n` defaults to the shortest window.
pub fn decode_params<S: Codec>(v: &Value, path: &str) -> Result<RawParameters<S>, SchemaError> {
    let o = v
        .as_object()
        .ok_or_else(|| schema(path, "expected a parameter object"))?;
    let window = |key: &str| -> Result<Vec<S>, SchemaError> {
        let field = o
            .get(key)
            .ok_or_else(|| schema(path, format!("missing field \"{key}\"")))?;
        decode_values(field, &format!("{path}.{key}"))
    };
    let (r, s, t) = (window("r")?, window("s")?, window("t")?);
    let count = |key: &str, default: usize| -> Result<usize, SchemaError> {
        match o.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| schema(&format!("{path}.{key}"), "expected a non-negative integer")),
        }
    };
    let m = count("m", 0)?;
    let n = count("n", r.len().min(s.len()).min(t.len()))?;
    Ok(RawParameters { r, s, t, m, n })
}

fn kind_name(kind: EstimateKind) -> &'static str {
    match kind {
        EstimateKind::Sup => "sup",
        EstimateKind::Lim => "lim",
        EstimateKind::Limsup => "limsup",
        EstimateKind::Exists => "exists",
    }
}

pub fn encode_estimate<S: Codec>(e: &LimitEstimate<S>) -> Value {
    json!({
        "kind": kind_name(e.kind),
        "value": e.value.encode(),
        "upper": e.upper.as_ref().map(Codec::encode),
        "status": e.status.name(),
        "trend": e.trend.map(|t| t.name()),
        "window": e.window,
        "trace": encode_values(&e.trace),
    })
}

pub fn encode_verdict(v: &Verdict) -> Value {
    json!({ "outcome": v.outcome.name(), "trace": v.trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rational_as_num_den_strings() {
        let v = q(5, 8).encode();
        assert_eq!(v, json!({ "num": "5", "den": "8" }));
        assert_eq!(Rational::decode(&v, "x").unwrap(), q(5, 8));
    }

    #[test]
    fn lenient_number_forms() {
        assert_eq!(Rational::decode(&json!("5/8"), "x").unwrap(), q(5, 8));
        assert_eq!(Rational::decode(&json!(0.625), "x").unwrap(), q(5, 8));
        assert_eq!(
            f64::decode(&json!({"num": "1", "den": "4"}), "x").unwrap(),
            0.25
        );
        assert!(Rational::decode(&json!(true), "x").is_err());
    }

    #[test]
    fn floats_round_trip_through_decimal_strings() {
        for x in [0.1, -3.5e-12, 1.0 / 3.0, 6.02e23] {
            let v = x.encode();
            assert!(v.is_string());
            assert_eq!(f64::decode(&v, "x").unwrap(), x);
        }
    }

    #[test]
    fn matrix_requires_tail() {
        let err = decode_matrix::<Rational>(&json!({ "rows": [["1"]] }), "matrix").unwrap_err();
        assert!(err.to_string().contains("\"tail\""), "{err}");
        let err = decode_matrix::<Rational>(&json!([["1"]]), "matrix").unwrap_err();
        assert!(err.to_string().contains("\"tail\""), "{err}");
    }

    #[test]
    fn bad_entry_reports_its_path() {
        let err = decode_matrix::<Rational>(
            &json!({ "rows": [["1"], ["1", "x"]], "tail": "zero" }),
            "matrix",
        )
        .unwrap_err();
        assert_eq!(err.path, "matrix.rows[1][1]");
    }

    #[test]
    fn matrix_round_trip() {
        let m = MatrixWindow::finite(vec![vec![q(1, 2)], vec![q(0, 1), q(-3, 7)]])
            .with_tail(MatrixTail::Unknown);
        let back = decode_matrix::<Rational>(&encode_matrix(&m), "m").unwrap();
        assert_eq!(back.rows, m.rows);
        assert_eq!(back.tail, MatrixTail::Unknown);
        assert_eq!(back.row_support, SeqTail::Zero);
    }

    #[test]
    fn sequence_round_trip() {
        let x = SequenceWindow::new(vec![q(1, 3), q(-2, 1)], SeqTail::Unknown);
        assert_eq!(
            decode_sequence::<Rational>(&encode_sequence(&x), "x").unwrap(),
            x
        );
        let bare = decode_sequence::<Rational>(&json!(["1", "2"]), "x").unwrap();
        assert_eq!(bare.tail, SeqTail::Zero);
    }

    #[test]
    fn params_round_trip() {
        let p = ParameterTriple::new(
            vec![q(1, 1), q(2, 3)],
            vec![q(1, 2), q(0, 1)],
            vec![q(3, 1), q(-1, 5)],
            2,
            2,
        )
        .unwrap();
        let raw = decode_params::<Rational>(&encode_params(&p), "params").unwrap();
        assert_eq!(seqspace::validate_params(raw).unwrap(), p);
    }
}
