//! Operator norm and Hausdorff measure of noncompactness for `L_A`.
//!
//! Everything runs through the associate matrix `Ã = (R_k(A_n))`, for
//! which `Ax = Ã (Tx)`. The χ-norm of `L_A : X(r,s,t;Δ^(m)) → Y` is
//! `limsup_n ‖Ã_n‖₁` for `Y = c0`, lies in `[L/2, L]` with
//! `L = limsup_n Σ_k |ã_nk - α̃_k|` for `Y = c`, and in `[0, limsup_n ‖Ã_n‖₁]`
//! for `Y = l∞`.

use crate::error::{Error, Result};
use crate::limits::{
    judge_exists, judge_zero, EstimateStatus, LimitEstimate, ObservedRows, Outcome, TrendConfig,
    Verdict,
};
use crate::matclass::{classify_map, column_limits, l1_distance, ClassReport, TransformedSystem};
use crate::params::ParameterTriple;
use crate::scalar::{l1_norm, Scalar};
use crate::window::{MatrixWindow, SeqTail, SpaceLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ComputedFromA,
    UserSupplied,
}

#[derive(Debug, Clone)]
pub struct AssociateMatrix<S> {
    /// Rows of `Ã`; for a computed structural `A` these already include the
    /// rows generated past the window.
    pub matrix: MatrixWindow<S>,
    pub provenance: Provenance,
}

impl<S: Scalar> AssociateMatrix<S> {
    /// Uses `m` as `Ã` directly.
    pub fn supplied(m: MatrixWindow<S>) -> Self {
        AssociateMatrix {
            matrix: m,
            provenance: Provenance::UserSupplied,
        }
    }

    fn observe(&self, cfg: &TrendConfig) -> Result<ObservedRows<S>> {
        ObservedRows::observe(&self.matrix, cfg)
    }
}

/// `ã_nk = R_k(A_n)` for a matrix with finitely supported rows.
pub fn associate_matrix<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &MatrixWindow<S>,
    cfg: &TrendConfig,
) -> Result<AssociateMatrix<S>> {
    let sys = TransformedSystem::new(p, a, cfg)?;
    Ok(AssociateMatrix {
        matrix: MatrixWindow {
            rows: sys.assoc.rows,
            row_support: SeqTail::Zero,
            tail: a.tail,
            generator: None,
        },
        provenance: Provenance::ComputedFromA,
    })
}

/// `‖L_A‖ = sup_n Σ_k |ã_nk|`.
pub fn operator_norm<S: Scalar>(
    assoc: &AssociateMatrix<S>,
    cfg: &TrendConfig,
) -> Result<LimitEstimate<S>> {
    Ok(assoc.observe(cfg)?.per_row(l1_norm).sup_abs(cfg))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiEstimate<S> {
    pub target: SpaceLabel,
    pub lower: S,
    pub upper: S,
    /// `α̃_k = lim_n ã_nk` (target `c` only).
    pub alpha_tilde: Option<Vec<LimitEstimate<S>>>,
    pub status: EstimateStatus,
    /// The limsup the bounds are built from.
    pub limsup: LimitEstimate<S>,
}

fn non_negative<S: Scalar>(v: S) -> S {
    if v < S::zero() {
        S::zero()
    } else {
        v
    }
}

/// Bounds on `‖L_A‖_χ`.
pub fn chi_norm<S: Scalar>(
    assoc: &AssociateMatrix<S>,
    target: SpaceLabel,
    cfg: &TrendConfig,
) -> Result<ChiEstimate<S>> {
    let rows = assoc.observe(cfg)?;
    Ok(match target {
        SpaceLabel::C0 | SpaceLabel::LInf => {
            let limsup = rows.per_row(l1_norm).limsup(cfg);
            let value = non_negative(limsup.value.clone());
            let lower = if target == SpaceLabel::C0 {
                value.clone()
            } else {
                S::zero()
            };
            ChiEstimate {
                target,
                lower,
                upper: value,
                alpha_tilde: None,
                status: limsup.status,
                limsup,
            }
        }
        SpaceLabel::C => {
            let alpha = column_limits(&rows, cfg);
            let limsup = rows.per_row(|r| l1_distance(r, &alpha)).limsup(cfg);
            let status = alpha
                .iter()
                .map(|e| e.status)
                .fold(limsup.status, EstimateStatus::max);
            let l = non_negative(limsup.value.clone());
            ChiEstimate {
                target,
                lower: l.clone() / S::from_i64(2),
                upper: l,
                alpha_tilde: Some(alpha),
                status,
                limsup,
            }
        }
    })
}

/// `L_A` is compact iff `lim_n Σ_k |ã_nk| = 0` (targets `c0`, `l∞`) or
/// `lim_n Σ_k |ã_nk - α̃_k| = 0` (target `c`).
pub fn compactness_verdict<S: Scalar>(
    assoc: &AssociateMatrix<S>,
    target: SpaceLabel,
    cfg: &TrendConfig,
) -> Result<Verdict> {
    let rows = assoc.observe(cfg)?;
    Ok(match target {
        SpaceLabel::C0 | SpaceLabel::LInf => {
            let est = rows.per_row(l1_norm).lim(cfg);
            Verdict::new(
                judge_zero(&est, cfg),
                format!("lim_n Σ_k |ã_nk| = {} [{}]", est.value, est.status.name()),
            )
        }
        SpaceLabel::C => {
            let alpha = column_limits(&rows, cfg);
            let columns = alpha
                .iter()
                .fold(Outcome::Satisfied, |o, e| o.and(judge_exists(e)));
            let est = rows.per_row(|r| l1_distance(r, &alpha)).lim(cfg);
            Verdict::all([
                Verdict::new(
                    columns,
                    format!("α̃_k = lim_n ã_nk over {} columns", alpha.len()),
                ),
                Verdict::new(
                    judge_zero(&est, cfg),
                    format!(
                        "lim_n Σ_k |ã_nk - α̃_k| = {} [{}]",
                        est.value,
                        est.status.name()
                    ),
                ),
            ])
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutoCompactOutcome {
    /// `A` is not exactly known to map `l∞(r,s,t;Δ^(m))` into the target.
    NotApplicable,
    ConsistentCompact,
    /// The class holds exactly but compactness was not confirmed.
    Inconsistent,
}

impl AutoCompactOutcome {
    pub fn name(self) -> &'static str {
        match self {
            AutoCompactOutcome::NotApplicable => "not-applicable",
            AutoCompactOutcome::ConsistentCompact => "consistent-compact",
            AutoCompactOutcome::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AutoCompactReport<S> {
    pub outcome: AutoCompactOutcome,
    pub class_report: ClassReport<S>,
    pub compactness: Option<Verdict>,
}

/// Every `A ∈ (l∞(r,s,t;Δ^(m)), Y)` with `Y ∈ {c0, c}` induces a compact
/// operator. Checks that the two computations agree.
pub fn linfty_source_autocompact_check<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &MatrixWindow<S>,
    target: SpaceLabel,
    cfg: &TrendConfig,
) -> Result<AutoCompactReport<S>> {
    if target == SpaceLabel::LInf {
        return Err(Error::InvalidParameter(
            "automatic compactness holds for targets c0 and c only".into(),
        ));
    }
    let class_report = classify_map(p, a, SpaceLabel::LInf, target, cfg)?;
    let exact = class_report
        .conditions
        .iter()
        .all(|c| c.estimate.status == EstimateStatus::Exact);
    if class_report.verdict.outcome != Outcome::Satisfied || !exact {
        return Ok(AutoCompactReport {
            outcome: AutoCompactOutcome::NotApplicable,
            class_report,
            compactness: None,
        });
    }
    let assoc = associate_matrix(p, a, cfg)?;
    let verdict = compactness_verdict(&assoc, target, cfg)?;
    let outcome = if verdict.is_satisfied() {
        AutoCompactOutcome::ConsistentCompact
    } else {
        AutoCompactOutcome::Inconsistent
    };
    Ok(AutoCompactReport {
        outcome,
        class_report,
        compactness: Some(verdict),
    })
}
