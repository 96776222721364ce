//! Command-line arguments and their translation into a [`JobSpec`].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::error::CliError;
use crate::job::{Command, Format, JobSpec, ParamSource, ScalarChoice};

#[derive(Debug, Parser)]
#[command(name = "seqspace", version)]
#[command(about = "Transforms, bases, duals, matrix classes and compactness for X(r,s,t;Δ^(m))")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Named parameter preset: identity, euler, aydin, uv, lambda
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Explicit parameters as a JSON document {"r", "s", "t", "m", "n"}
    #[arg(long, global = true, conflicts_with = "preset")]
    pub params: Option<PathBuf>,
    /// Truncation order N
    #[arg(long, global = true, default_value_t = 16)]
    pub n: usize,
    /// Difference order m
    #[arg(long, global = true, default_value_t = 0)]
    pub m: usize,
    #[arg(long, global = true, value_enum, default_value_t = ScalarChoice::Rational)]
    pub scalar: ScalarChoice,
    /// Exit with status 3 when a verdict is indeterminate
    #[arg(long, global = true)]
    pub strict: bool,
    /// Absolute tolerance for float comparisons and trend detection
    #[arg(long, global = true, default_value_t = seqspace::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Trailing window used for trend classification
    #[arg(long, global = true, default_value_t = 8)]
    pub window: usize,
    /// Preset argument (euler, aydin)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Preset sequence u (uv): ones, linear or a comma-separated list
    #[arg(long, global = true)]
    pub u: Option<String>,
    /// Preset sequence v (uv)
    #[arg(long, global = true)]
    pub v: Option<String>,
    /// Preset sequence λ (lambda)
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    /// Report path; stdout if omitted
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the job description, for `replay`
    #[arg(long, global = true)]
    pub save_job: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Matrix document {"rows": [[...]], "tail": "zero"|"structural"|"unknown"}
    #[arg(long, required_unless_present = "builtin")]
    pub matrix: Option<PathBuf>,
    /// Use the preset's own matrix instead: a = A(r,s,t), t = T
    #[arg(long, conflicts_with = "matrix")]
    pub builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// y = T x
    Transform {
        #[arg(long)]
        input: PathBuf,
    },
    /// x = S y
    #[command(alias = "invert")]
    InverseTransform {
        #[arg(long)]
        input: PathBuf,
    },
    /// ‖x‖ = sup_n |(T x)_n|
    Norm {
        #[arg(long)]
        input: PathBuf,
    },
    /// Basis vectors b^(j), or a partial reconstruction of a sequence
    Basis {
        /// Single index j ≥ -1; all vectors when omitted
        #[arg(long, allow_negative_numbers = true)]
        index: Option<i64>,
        /// Sequence to expand in the basis
        #[arg(long)]
        reconstruct: Option<PathBuf>,
        /// Last index of the partial expansion
        #[arg(long, requires = "reconstruct")]
        k: Option<usize>,
        #[arg(long, default_value = "c0")]
        space: String,
    },
    /// Associate row and dual membership of a finite sequence
    Dual {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "beta")]
        dual: String,
        #[arg(long, default_value = "c0")]
        space: String,
    },
    /// Decide A ∈ (X, Y), or evaluate individual conditions
    Matclass {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, required_unless_present = "condition")]
        source: Option<String>,
        #[arg(long, required_unless_present = "condition")]
        target: Option<String>,
        /// Condition id (repeatable); overrides source/target
        #[arg(long)]
        condition: Vec<String>,
    },
    /// Hausdorff measure of noncompactness bounds for L_A
    Chi {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        target: String,
        /// The matrix is the associate matrix Ã itself
        #[arg(long)]
        associate: bool,
        /// Also cross-check the automatic compactness for an l_inf source
        #[arg(long, conflicts_with = "associate")]
        check_corollary: bool,
    },
    /// Seeded rational invariant suite
    Selftest {
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
    /// Run a saved job description
    Replay {
        #[arg(long)]
        job: PathBuf,
    },
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: malformed JSON: {e}", path.display())))
}

impl Cli {
    /// Resolves files and flags into a self-contained job.
    pub fn into_job(self) -> Result<JobSpec, CliError> {
        let g = self.global;
        let (command, inputs, options) = match self.command {
            Sub::Replay { job } => {
                let doc = read_json(&job)?;
                let mut spec: JobSpec = serde_json::from_value(doc).map_err(|e| {
                    CliError::Validation(format!("{}: not a job description: {e}", job.display()))
                })?;
                if let Some(out) = g.output {
                    spec.output = Some(out.display().to_string());
                    spec.format = g.format;
                }
                return Ok(spec);
            }
            sub => split(sub)?,
        };
        let params = match (&g.preset, &g.params) {
            (Some(name), _) => {
                let args = [
                    ("alpha", &g.alpha),
                    ("u", &g.u),
                    ("v", &g.v),
                    ("lambda", &g.lambda),
                ]
                .into_iter()
                .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
                .collect();
                ParamSource::Preset {
                    name: name.clone(),
                    args,
                }
            }
            (None, Some(path)) => ParamSource::Explicit(read_json(path)?),
            (None, None) => ParamSource::None,
        };
        Ok(JobSpec {
            command,
            scalar: g.scalar,
            params,
            m: g.m,
            n: g.n,
            strict: g.strict,
            tolerance: g.tolerance,
            window: g.window,
            inputs,
            options,
            format: g.format,
            output: g.output.map(|p| p.display().to_string()),
        })
    }
}

type Parts = (Command, BTreeMap<String, Value>, BTreeMap<String, String>);

fn split(sub: Sub) -> Result<Parts, CliError> {
    let mut inputs = BTreeMap::new();
    let mut options = BTreeMap::new();
    let mut opt = |k: &str, v: String| {
        options.insert(k.to_string(), v);
    };
    let command = match sub {
        Sub::Transform { input } => {
            inputs.insert("input".into(), read_json(&input)?);
            Command::Transform
        }
        Sub::InverseTransform { input } => {
            inputs.insert("input".into(), read_json(&input)?);
            Command::InverseTransform
        }
        Sub::Norm { input } => {
            inputs.insert("input".into(), read_json(&input)?);
            Command::Norm
        }
        Sub::Basis {
            index,
            reconstruct,
            k,
            space,
        } => {
            if let Some(j) = index {
                opt("index", j.to_string());
            }
            if let Some(path) = reconstruct {
                inputs.insert("reconstruct".into(), read_json(&path)?);
                opt("space", space);
            }
            if let Some(k) = k {
                opt("k", k.to_string());
            }
            Command::Basis
        }
        Sub::Dual { input, dual, space } => {
            inputs.insert("input".into(), read_json(&input)?);
            opt("dual", dual);
            opt("space", space);
            Command::Dual
        }
        Sub::Matclass {
            matrix,
            source,
            target,
            condition,
        } => {
            matrix_options(matrix, &mut inputs, &mut opt)?;
            if condition.is_empty() {
                opt("source", source.unwrap_or_default());
                opt("target", target.unwrap_or_default());
            } else {
                opt("conditions", condition.join(","));
            }
            Command::Matclass
        }
        Sub::Chi {
            matrix,
            target,
            associate,
            check_corollary,
        } => {
            matrix_options(matrix, &mut inputs, &mut opt)?;
            opt("target", target);
            if associate {
                opt("associate", "true".into());
            }
            if check_corollary {
                opt("check_corollary", "true".into());
            }
            Command::Chi
        }
        Sub::Selftest { seed, cases } => {
            opt("seed", seed.to_string());
            opt("cases", cases.to_string());
            Command::Selftest
        }
        Sub::Replay { .. } => unreachable!("handled by into_job"),
    };
    Ok((command, inputs, options))
}

fn matrix_options(
    m: MatrixArgs,
    inputs: &mut BTreeMap<String, Value>,
    opt: &mut impl FnMut(&str, String),
) -> Result<(), CliError> {
    match (m.matrix, m.builtin) {
        (Some(path), _) => {
            inputs.insert("matrix".into(), read_json(&path)?);
        }
        (None, Some(b)) => opt("builtin", b),
        (None, None) => return Err(CliError::Validation("give --matrix or --builtin".into())),
    }
    Ok(())
}
