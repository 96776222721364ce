//! Serializable job descriptions.
//!
//! A [`JobSpec`] holds everything that determines a report's numbers,
//! including the contents of input files, so a saved job replays exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use seqspace::{
    preset, validate_params, ParameterTriple, PresetSpec, SeqSpec, TrendConfig, DEFAULT_TOLERANCE,
};

use crate::codec::{decode_params, Codec, SchemaError};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Transform,
    #[serde(alias = "invert")]
    InverseTransform,
    Norm,
    Basis,
    Dual,
    Matclass,
    Chi,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Transform => "transform",
            Command::InverseTransform => "inverse-transform",
            Command::Norm => "norm",
            Command::Basis => "basis",
            Command::Dual => "dual",
            Command::Matclass => "matclass",
            Command::Chi => "chi",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScalarChoice {
    #[default]
    Rational,
    F64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Where the parameters come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamSource {
    /// A named preset; arguments are kept as the text the user gave.
    Preset {
        name: String,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        args: BTreeMap<String, String>,
    },
    /// An explicit `{"r", "s", "t", "m", "n"}` document.
    Explicit(Value),
    /// No parameters (selftest).
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    pub scalar: ScalarChoice,
    pub params: ParamSource,
    pub m: usize,
    pub n: usize,
    pub strict: bool,
    pub tolerance: f64,
    pub window: usize,
    /// Parsed contents of the input documents, keyed by role
    /// (`input`, `matrix`, `reconstruct`).
    #[serde(default)]
    pub inputs: BTreeMap<String, Value>,
    /// Command options such as `target`, `source`, `dual`, `index`.
    #[serde(default)]
    pub options: BTreeMap<String, String>,
    #[serde(default)]
    pub format: Format,
    /// Report destination; stdout when absent.
    #[serde(default)]
    pub output: Option<String>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            scalar: ScalarChoice::Rational,
            params: ParamSource::None,
            m: 0,
            n: 16,
            strict: false,
            tolerance: DEFAULT_TOLERANCE,
            window: TrendConfig::default().window,
            inputs: BTreeMap::new(),
            options: BTreeMap::new(),
            format: Format::Json,
            output: None,
        }
    }

    /// SHA-256 of the canonical JSON form, ignoring where and how the report
    /// is written: JSON and CSV emissions of one job share a hash.
    pub fn hash(&self) -> String {
        let mut core = self.clone();
        core.format = Format::Json;
        core.output = None;
        // `serde_json::Value` keeps object keys sorted, which makes this canonical.
        let canonical = serde_json::to_value(&core).expect("job specs always serialize");
        format!("{:x}", Sha256::digest(canonical.to_string().as_bytes()))
    }

    pub fn trend_config(&self) -> TrendConfig {
        TrendConfig {
            tolerance: self.tolerance,
            window: self.window,
            ..TrendConfig::default()
        }
    }

    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.get(key).map(String::as_str)
    }

    pub fn input(&self, key: &str) -> Result<&Value, CliError> {
        self.inputs
            .get(key)
            .ok_or_else(|| CliError::Validation(format!("{} needs --{key}", self.command.name())))
    }

    pub fn params<S: Codec>(&self) -> Result<ParameterTriple<S>, CliError> {
        match &self.params {
            ParamSource::Preset { name, args } => {
                Ok(preset(&preset_spec(name, args)?, self.m, self.n)?)
            }
            ParamSource::Explicit(doc) => {
                let mut raw = decode_params::<S>(doc, "params")?;
                // The command-line --m applies only when the document has no "m".
                if doc.get("m").is_none() {
                    raw.m = self.m;
                }
                Ok(validate_params(raw)?)
            }
            ParamSource::None => Err(CliError::Validation(format!(
                "{} needs parameters: give --preset or --params",
                self.command.name()
            ))),
        }
    }
}

fn arg<'a>(
    args: &'a BTreeMap<String, String>,
    key: &str,
    preset: &str,
) -> Result<&'a str, CliError> {
    args.get(key)
        .map(String::as_str)
        .ok_or_else(|| CliError::Validation(format!("preset {preset} needs --{key}")))
}

fn scalar<S: Codec>(text: &str, what: &str) -> Result<S, CliError> {
    S::decode(&Value::String(text.to_string()), what).map_err(CliError::from)
}

/// `ones`, `linear`, or a comma-separated list of numbers.
pub fn seq_spec<S: Codec>(text: &str, what: &str) -> Result<SeqSpec<S>, CliError> {
    match text.trim() {
        "ones" | "e" => Ok(SeqSpec::Ones),
        "linear" => Ok(SeqSpec::Linear),
        list => list
            .split(',')
            .enumerate()
            .map(|(i, item)| scalar(item.trim(), &format!("{what}[{i}]")))
            .collect::<Result<Vec<S>, _>>()
            .map(SeqSpec::Explicit),
    }
}

pub fn preset_spec<S: Codec>(
    name: &str,
    args: &BTreeMap<String, String>,
) -> Result<PresetSpec<S>, CliError> {
    Ok(match name {
        "identity" => PresetSpec::Identity,
        "euler" => PresetSpec::Euler {
            alpha: scalar(arg(args, "alpha", name)?, "alpha")?,
        },
        "aydin" => PresetSpec::Aydin {
            alpha: scalar(arg(args, "alpha", name)?, "alpha")?,
        },
        "uv" => PresetSpec::Uv {
            u: seq_spec(arg(args, "u", name)?, "u")?,
            v: seq_spec(arg(args, "v", name)?, "v")?,
        },
        "lambda" => PresetSpec::Lambda {
            lambda: seq_spec(arg(args, "lambda", name)?, "lambda")?,
        },
        other => {
            return Err(CliError::Validation(format!(
                "unknown preset {other:?} (expected identity, euler, aydin, uv or lambda)"
            )))
        }
    })
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use seqspace::{Rational, Scalar};

    #[test]
    fn hash_ignores_output_format() {
        let mut a = JobSpec::new(Command::Transform);
        a.params = ParamSource::Preset {
            name: "identity".into(),
            args: BTreeMap::new(),
        };
        let mut b = a.clone();
        b.format = Format::Csv;
        b.output = Some("y.csv".into());
        assert_eq!(a.hash(), b.hash());
        b.m = 3;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn job_round_trips_through_json() {
        let mut job = JobSpec::new(Command::Chi);
        job.options.insert("target".into(), "c0".into());
        job.inputs.insert(
            "matrix".into(),
            serde_json::json!({"rows": [], "tail": "zero"}),
        );
        let text = serde_json::to_string(&job).unwrap();
        assert_eq!(serde_json::from_str::<JobSpec>(&text).unwrap(), job);
    }

    #[test]
    fn invert_is_an_alias() {
        let c: Command = serde_json::from_str("\"invert\"").unwrap();
        assert_eq!(c, Command::InverseTransform);
    }

    #[test]
    fn preset_arguments() {
        let mut args = BTreeMap::new();
        args.insert("u".to_string(), "ones".to_string());
        args.insert("v".to_string(), "1, 1/2, 3".to_string());
        match preset_spec::<Rational>("uv", &args).unwrap() {
            PresetSpec::Uv { u, v } => {
                assert_eq!(u, SeqSpec::Ones);
                assert_eq!(
                    v,
                    SeqSpec::Explicit(vec![
                        Rational::from_ratio(1, 1),
                        Rational::from_ratio(1, 2),
                        Rational::from_ratio(3, 1)
                    ])
                );
            }
            other => panic!("{other:?}"),
        }
        assert!(preset_spec::<Rational>("euler", &BTreeMap::new()).is_err());
    }
}
