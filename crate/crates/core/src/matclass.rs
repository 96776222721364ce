//! Matrix classes `(X(r,s,t;Δ^(m)), Y)` for `X, Y ∈ {c0, c, l∞}`.
//!
//! A matrix `A` maps the space into `Y` exactly when the associate matrix
//! `B^A = (R_k(A_n))` and every triangle `W^{A_n} = (Σ_{j≥p} a_nj s_jk)`
//! satisfy classical summability conditions. Those conditions are evaluated
//! here on declared-tail windows.

use std::cell::OnceCell;
use std::fmt;

use crate::duals::Associates;
use crate::error::{Error, Result};
use crate::limits::{
    classify, judge_exists, judge_finite, judge_zero, Continuation, EstimateKind, EstimateStatus,
    LimitEstimate, Observed, ObservedRows, Outcome, Trend, TrendConfig, Verdict,
};
use crate::params::ParameterTriple;
use crate::scalar::{l1_norm, Scalar};
use crate::triangle::TriangleMatrix;
use crate::window::{MatrixWindow, SpaceLabel};

/// Largest number of nonzero columns searched exhaustively for the
/// subset-sum condition.
pub const SUBSET_BRUTE_FORCE_MAX: usize = 12;

/// The summability conditions. The first eight apply to any matrix; the
/// rest are stated for `B^A` (`Assoc…`), the triangles `W^{A_n}` (`W…`), or
/// the shifted row sums `z_n = Σ_k R_k(A_n) - γ_n` (`Shifted…`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    /// `sup_K Σ_n |Σ_{k∈K} a_nk| < ∞` over finite `K`.
    SubsetSums,
    /// `sup_n Σ_k |a_nk| < ∞`.
    RowNormsBounded,
    /// `lim_n Σ_k |a_nk| = 0`.
    RowNormsVanish,
    /// `lim_n a_nk = 0` for all `k`.
    ColumnsVanish,
    /// `lim_n Σ_k a_nk = 0`.
    RowSumsVanish,
    /// `lim_n a_nk` exists for all `k`.
    ColumnsConverge,
    /// `lim_n Σ_k |a_nk - lim_n a_nk| = 0`.
    RowsConvergeInL1,
    /// `lim_n Σ_k a_nk` exists.
    RowSumsConverge,
    AssocRowNormsBounded,
    AssocColumnsVanish,
    /// `sup_p Σ_k |w_pk^{A_n}| < ∞` for all `n`.
    WRowNormsBounded,
    /// `lim_p w_pk^{A_n} = 0` for all `k, n`.
    WColumnsVanish,
    AssocColumnsConverge,
    AssocRowNormsVanish,
    /// `lim_p Σ_k |w_pk^{A_n}| = 0` for all `n`.
    WRowNormsVanish,
    AssocRowsConvergeInL1,
    /// `lim_p w_pk^{A_n}` exists for all `k, n`.
    WColumnsConverge,
    /// `lim_p Σ_k w_pk^{A_n}` exists for all `n`.
    WRowSumsConverge,
    /// `(z_n) ∈ c0`.
    ShiftedSumsVanish,
    /// `(z_n) ∈ l∞`.
    ShiftedSumsBounded,
    /// `(z_n) ∈ c`.
    ShiftedSumsConverge,
}

/// How the shifted-sum conditions are read; recorded in every report using them.
pub const SHIFTED_SUM_READING: &str =
    "R_k(A_n)e - (γ_n) is read as the sequence n ↦ Σ_k R_k(A_n) - γ_n with γ_n = lim_p Σ_(k≤p) w^(A_n)_pk";

impl ConditionId {
    pub const ALL: [ConditionId; 21] = [
        ConditionId::SubsetSums,
        ConditionId::RowNormsBounded,
        ConditionId::RowNormsVanish,
        ConditionId::ColumnsVanish,
        ConditionId::RowSumsVanish,
        ConditionId::ColumnsConverge,
        ConditionId::RowsConvergeInL1,
        ConditionId::RowSumsConverge,
        ConditionId::AssocRowNormsBounded,
        ConditionId::AssocColumnsVanish,
        ConditionId::WRowNormsBounded,
        ConditionId::WColumnsVanish,
        ConditionId::AssocColumnsConverge,
        ConditionId::AssocRowNormsVanish,
        ConditionId::WRowNormsVanish,
        ConditionId::AssocRowsConvergeInL1,
        ConditionId::WColumnsConverge,
        ConditionId::WRowSumsConverge,
        ConditionId::ShiftedSumsVanish,
        ConditionId::ShiftedSumsBounded,
        ConditionId::ShiftedSumsConverge,
    ];

    pub fn slug(self) -> &'static str {
        use ConditionId::*;
        match self {
            SubsetSums => "subset-sums",
            RowNormsBounded => "row-norms-bounded",
            RowNormsVanish => "row-norms-vanish",
            ColumnsVanish => "columns-vanish",
            RowSumsVanish => "row-sums-vanish",
            ColumnsConverge => "columns-converge",
            RowsConvergeInL1 => "rows-converge-in-l1",
            RowSumsConverge => "row-sums-converge",
            AssocRowNormsBounded => "assoc-row-norms-bounded",
            AssocColumnsVanish => "assoc-columns-vanish",
            WRowNormsBounded => "w-row-norms-bounded",
            WColumnsVanish => "w-columns-vanish",
            AssocColumnsConverge => "assoc-columns-converge",
            AssocRowNormsVanish => "assoc-row-norms-vanish",
            WRowNormsVanish => "w-row-norms-vanish",
            AssocRowsConvergeInL1 => "assoc-rows-converge-in-l1",
            WColumnsConverge => "w-columns-converge",
            WRowSumsConverge => "w-row-sums-converge",
            ShiftedSumsVanish => "shifted-sums-vanish",
            ShiftedSumsBounded => "shifted-sums-bounded",
            ShiftedSumsConverge => "shifted-sums-converge",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.slug() == text)
    }

    /// True for conditions on `B^A`, `W^{A_n}` or `z_n`, which need parameters.
    pub fn is_transformed(self) -> bool {
        self >= ConditionId::AssocRowNormsBounded
    }

    /// The plain condition a transformed condition applies to `B^A` or `W^{A_n}`.
    fn base(self) -> ConditionId {
        use ConditionId::*;
        match self {
            AssocRowNormsBounded | WRowNormsBounded => RowNormsBounded,
            AssocColumnsVanish | WColumnsVanish => ColumnsVanish,
            AssocColumnsConverge | WColumnsConverge => ColumnsConverge,
            AssocRowNormsVanish | WRowNormsVanish => RowNormsVanish,
            AssocRowsConvergeInL1 => RowsConvergeInL1,
            WRowSumsConverge => RowSumsConverge,
            other => other,
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionResult<S> {
    pub id: ConditionId,
    /// The condition's defining quantity.
    pub estimate: LimitEstimate<S>,
    pub outcome: Outcome,
    pub note: Option<String>,
}

fn result<S>(id: ConditionId, estimate: LimitEstimate<S>, outcome: Outcome) -> ConditionResult<S> {
    ConditionResult {
        id,
        estimate,
        outcome,
        note: None,
    }
}

/// Columns whose limit in `n` can be judged from the observed rows.
///
/// With formula-generated rows, column `k` is judged only when the trailing
/// window lies entirely below row `k`; later columns count as `0`, the only
/// value compatible with a summable limit sequence.
fn judged_columns<S: Scalar>(m: &ObservedRows<S>, cfg: &TrendConfig) -> usize {
    let width = m.width();
    match m.row_continuation() {
        Continuation::Formula => width.min(m.rows.len().saturating_sub(cfg.window)),
        _ => width,
    }
}

/// Per-column limits `α_k = lim_n a_nk` for the judged columns.
pub fn column_limits<S: Scalar>(m: &ObservedRows<S>, cfg: &TrendConfig) -> Vec<LimitEstimate<S>> {
    (0..judged_columns(m, cfg))
        .map(|k| m.column(k).lim(cfg))
        .collect()
}

/// Worst status, largest value, conjunction of outcomes.
fn aggregate<S: Scalar>(
    kind: EstimateKind,
    parts: Vec<(LimitEstimate<S>, Outcome)>,
    floor: EstimateStatus,
) -> (LimitEstimate<S>, Outcome) {
    let mut status = floor;
    let mut outcome = Outcome::Satisfied;
    let mut value = S::zero();
    let mut witness: Option<LimitEstimate<S>> = None;
    for (est, o) in parts {
        status = status.max(est.status);
        value = value.max_of(est.value.abs());
        if witness.is_none() || (o != Outcome::Satisfied && outcome == Outcome::Satisfied) {
            witness = Some(est.clone());
        }
        outcome = outcome.and(o);
    }
    let mut est = witness.unwrap_or_else(|| LimitEstimate::exact(kind, S::zero()));
    est.kind = kind;
    est.value = value;
    est.status = status;
    est.upper = None;
    if status == EstimateStatus::Indeterminate && outcome == Outcome::Satisfied {
        outcome = Outcome::Indeterminate;
    }
    (est, outcome)
}

fn row_sum<S: Scalar>(row: &[S]) -> S {
    row.iter().fold(S::zero(), |a, b| a + b.clone())
}

fn column_floor(c: Continuation) -> EstimateStatus {
    match c {
        Continuation::Zero => EstimateStatus::Exact,
        Continuation::Formula => EstimateStatus::Trend,
        Continuation::Unknown => EstimateStatus::Indeterminate,
    }
}

/// Evaluates one of the eight plain conditions on observed rows.
fn eval_plain<S: Scalar>(
    id: ConditionId,
    m: &ObservedRows<S>,
    cfg: &TrendConfig,
) -> ConditionResult<S> {
    use ConditionId::*;
    match id {
        SubsetSums => {
            let est = subset_sum_sup_observed(m, cfg);
            let outcome = judge_finite(&est);
            result(id, est, outcome)
        }
        RowNormsBounded => {
            let est = m.per_row(l1_norm).sup_abs(cfg);
            let outcome = judge_finite(&est);
            result(id, est, outcome)
        }
        RowNormsVanish => {
            let est = m.per_row(l1_norm).lim(cfg);
            let outcome = judge_zero(&est, cfg);
            result(id, est, outcome)
        }
        RowSumsVanish => {
            let est = m.per_row(row_sum).lim(cfg);
            let outcome = judge_zero(&est, cfg);
            result(id, est, outcome)
        }
        RowSumsConverge => {
            let mut est = m.per_row(row_sum).lim(cfg);
            est.kind = EstimateKind::Exists;
            let outcome = judge_exists(&est);
            result(id, est, outcome)
        }
        ColumnsVanish | ColumnsConverge => {
            let floor = column_floor(m.row_continuation());
            let parts = column_limits(m, cfg)
                .into_iter()
                .map(|est| {
                    let o = if id == ColumnsVanish {
                        judge_zero(&est, cfg)
                    } else {
                        judge_exists(&est)
                    };
                    (est, o)
                })
                .collect();
            let kind = if id == ColumnsVanish {
                EstimateKind::Lim
            } else {
                EstimateKind::Exists
            };
            let (est, outcome) = aggregate(kind, parts, floor);
            result(id, est, outcome)
        }
        RowsConvergeInL1 => {
            let alpha = column_limits(m, cfg);
            let columns_ok = alpha
                .iter()
                .fold(Outcome::Satisfied, |o, e| o.and(judge_exists(e)));
            let distances = m.per_row(|row| l1_distance(row, &alpha));
            let est = distances.lim(cfg);
            let outcome = judge_zero(&est, cfg).and(columns_ok);
            result(id, est, outcome)
        }
        _ => unreachable!("transformed conditions are dispatched through TransformedSystem"),
    }
}

/// `Σ_k |a_k - α_k|`, with `α_k = 0` past the judged columns.
pub(crate) fn l1_distance<S: Scalar>(row: &[S], alpha: &[LimitEstimate<S>]) -> S {
    let width = row.len().max(alpha.len());
    (0..width).fold(S::zero(), |acc, k| {
        let a = row.get(k).cloned().unwrap_or_else(S::zero);
        let al = alpha
            .get(k)
            .map(|e| e.value.clone())
            .unwrap_or_else(S::zero);
        acc + (a - al).abs()
    })
}

fn subset_value<S: Scalar>(rows: &[Vec<S>], cols: &[usize]) -> S {
    rows.iter().fold(S::zero(), |acc, row| {
        let s = cols.iter().fold(S::zero(), |s, &k| {
            s + row.get(k).cloned().unwrap_or_else(S::zero)
        });
        acc + s.abs()
    })
}

/// Best subset of the nonzero columns: exhaustive when small, greedy otherwise.
fn best_subset<S: Scalar>(rows: &[Vec<S>], nonzero: &[usize]) -> (Vec<usize>, S, bool) {
    if nonzero.is_empty() {
        return (Vec::new(), S::zero(), true);
    }
    if nonzero.len() <= SUBSET_BRUTE_FORCE_MAX {
        let mut best = (Vec::new(), S::zero());
        for mask in 1u32..(1u32 << nonzero.len()) {
            let cols: Vec<usize> = (0..nonzero.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| nonzero[i])
                .collect();
            let v = subset_value(rows, &cols);
            if v > best.1 {
                best = (cols, v);
            }
        }
        return (best.0, best.1, true);
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut value = S::zero();
    loop {
        let mut step: Option<(usize, S)> = None;
        for &k in nonzero.iter().filter(|k| !chosen.contains(k)) {
            let mut trial = chosen.clone();
            trial.push(k);
            let v = subset_value(rows, &trial);
            if v > value && step.as_ref().is_none_or(|(_, b)| v > *b) {
                step = Some((k, v));
            }
        }
        match step {
            Some((k, v)) => {
                chosen.push(k);
                value = v;
            }
            None => break,
        }
    }
    (chosen, value, false)
}

fn cumulative<S: Scalar>(values: impl Iterator<Item = S>) -> Vec<S> {
    values
        .scan(S::zero(), |acc, v| {
            *acc = acc.clone() + v;
            Some(acc.clone())
        })
        .collect()
}

fn subset_sum_sup_observed<S: Scalar>(m: &ObservedRows<S>, cfg: &TrendConfig) -> LimitEstimate<S> {
    let width = m.width();
    let nonzero: Vec<usize> = (0..width)
        .filter(|&k| {
            m.rows
                .iter()
                .any(|r| r.get(k).is_some_and(|v| !v.is_zero()))
        })
        .collect();
    let (cols, lower, exhaustive) = best_subset(&m.rows, &nonzero);
    let total = m.rows.iter().fold(S::zero(), |acc, r| acc + l1_norm(r));
    let mut est = LimitEstimate::exact(EstimateKind::Sup, lower);
    if !exhaustive {
        est.upper = Some(total.clone());
    }
    match m.row_continuation() {
        Continuation::Zero => est,
        Continuation::Unknown => {
            est.status = EstimateStatus::Indeterminate;
            est.upper = None;
            est
        }
        Continuation::Formula => {
            // Judge the series over n through partial sums of the best
            // subset (lower) and of the row norms (upper).
            let lower_partials = cumulative(m.rows.iter().map(|r| {
                cols.iter()
                    .fold(S::zero(), |s, &k| {
                        s + r.get(k).cloned().unwrap_or_else(S::zero)
                    })
                    .abs()
            }));
            let upper_partials = cumulative(m.rows.iter().map(|r| l1_norm(r)));
            let (lt, _) = classify(&lower_partials, cfg);
            let (ut, ulim) = classify(&upper_partials, cfg);
            est.status = EstimateStatus::Trend;
            est.upper = Some(total);
            est.trend = Some(if lt == Trend::Diverging {
                Trend::Diverging
            } else if matches!(
                ut,
                Trend::Constant | Trend::Converging | Trend::DecayingToZero
            ) {
                est.upper = Some(ulim);
                ut
            } else {
                est.status = EstimateStatus::Indeterminate;
                ut
            });
            est
        }
    }
}

/// The subset-sum quantity `sup_K Σ_n |Σ_{k∈K} a_nk|` of a matrix window.
///
/// Exact by brute force over the nonzero columns when there are at most
/// [`SUBSET_BRUTE_FORCE_MAX`] of them; otherwise `value` is a greedy lower
/// bound and `upper` is `Σ_n Σ_k |a_nk|`.
pub fn subset_sum_sup<S: Scalar>(m: &MatrixWindow<S>, cfg: &TrendConfig) -> LimitEstimate<S> {
    let observed = ObservedRows {
        rows: m.rows.clone(),
        continuation: Continuation::from_tail(m),
        rows_finite: m.row_support == crate::window::SeqTail::Zero,
    };
    subset_sum_sup_observed(&observed, cfg)
}

fn support(row: &[impl Scalar]) -> usize {
    row.iter().rposition(|v| !v.is_zero()).map_or(0, |p| p + 1)
}

/// `B^A` and the `W^{A_n}` for a matrix with finitely supported rows.
pub struct TransformedSystem<S> {
    /// Observed rows of `A` (extended through its generator when structural).
    pub source: ObservedRows<S>,
    /// Rows `R(A_n)` of `B^A`, same continuation as `A`.
    pub assoc: ObservedRows<S>,
    associates: Associates<S>,
    w: OnceCell<Result<Vec<TriangleMatrix<S>>>>,
    cfg: TrendConfig,
}

impl<S: Scalar> TransformedSystem<S> {
    pub fn new(p: &ParameterTriple<S>, a: &MatrixWindow<S>, cfg: &TrendConfig) -> Result<Self> {
        a.require_row_support("matrix rows")?;
        let mut source = ObservedRows::observe(a, cfg)?;
        let needed = source.rows.iter().map(|r| support(r)).max().unwrap_or(0);
        let params = if needed > p.order() {
            match p.with_order(needed) {
                Ok(q) => q,
                Err(_) => {
                    // Parameters stop at their window: keep the rows they cover.
                    if let Some(n) = a.rows.iter().position(|r| support(r) > p.order()) {
                        return Err(Error::DimensionMismatch {
                            context: "matrix row longer than the parameter window",
                            expected: p.order(),
                            found: support(&a.rows[n]),
                        });
                    }
                    let keep = source
                        .rows
                        .iter()
                        .position(|r| support(r) > p.order())
                        .unwrap_or(source.rows.len());
                    source.rows.truncate(keep);
                    p.clone()
                }
            }
        } else {
            p.clone()
        };
        let associates = Associates::new(&params)?;
        let rows = source
            .rows
            .iter()
            .enumerate()
            .map(|(n, r)| associates.checked_associate(&r[..support(r)], Some(n)))
            .collect::<Result<Vec<_>>>()?;
        let assoc = ObservedRows {
            rows,
            continuation: source.continuation,
            rows_finite: true,
        };
        Ok(TransformedSystem {
            source,
            assoc,
            associates,
            w: OnceCell::new(),
            cfg: *cfg,
        })
    }

    pub fn associates(&self) -> &Associates<S> {
        &self.associates
    }

    /// `W^{A_n}` for every observed row.
    pub fn w(&self) -> Result<&[TriangleMatrix<S>]> {
        let cell = self.w.get_or_init(|| {
            self.source
                .rows
                .iter()
                .map(|r| Ok(self.associates.w_by_definition(&r[..support(r)])))
                .collect()
        });
        match cell {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    fn w_observed(&self, n: usize) -> Result<ObservedRows<S>> {
        let w = &self.w()?[n];
        Ok(ObservedRows {
            rows: (0..w.order()).map(|p| w.row(p).to_vec()).collect(),
            continuation: Continuation::Zero,
            rows_finite: true,
        })
    }

    /// `γ_n = lim_p Σ_{k≤p} w^{A_n}_pk` for every observed row.
    pub fn gamma(&self) -> Result<Vec<LimitEstimate<S>>> {
        (0..self.source.rows.len())
            .map(|n| Ok(self.w_observed(n)?.per_row(row_sum).lim(&self.cfg)))
            .collect()
    }

    /// `z_n = Σ_k R_k(A_n) - γ_n`.
    pub fn shifted_sums(&self) -> Result<Observed<S>> {
        let gamma = self.gamma()?;
        let values = self
            .assoc
            .rows
            .iter()
            .zip(&gamma)
            .map(|(r, g)| row_sum(r) - g.value.clone())
            .collect();
        let gamma_floor = gamma
            .iter()
            .fold(Continuation::Zero, |c, g| match g.status {
                EstimateStatus::Indeterminate => Continuation::Unknown,
                _ => c,
            });
        Ok(Observed::new(
            values,
            self.assoc.row_continuation().meet(gamma_floor),
        ))
    }

    pub fn eval(&self, id: ConditionId) -> Result<ConditionResult<S>> {
        use ConditionId::*;
        let cfg = &self.cfg;
        Ok(match id {
            _ if !id.is_transformed() => eval_plain(id, &self.source, cfg),
            AssocRowNormsBounded
            | AssocColumnsVanish
            | AssocColumnsConverge
            | AssocRowNormsVanish
            | AssocRowsConvergeInL1 => {
                let mut r = eval_plain(id.base(), &self.assoc, cfg);
                r.id = id;
                r
            }
            WRowNormsBounded | WColumnsVanish | WRowNormsVanish | WColumnsConverge
            | WRowSumsConverge => {
                let parts = (0..self.source.rows.len())
                    .map(|n| {
                        let r = eval_plain(id.base(), &self.w_observed(n)?, cfg);
                        Ok((r.estimate, r.outcome))
                    })
                    .collect::<Result<Vec<_>>>()?;
                // "For all n" ranges over rows past the window too.
                let floor = column_floor(self.source.row_continuation());
                let kind = parts.first().map_or(EstimateKind::Sup, |(e, _)| e.kind);
                let (est, outcome) = aggregate(kind, parts, floor);
                result(id, est, outcome)
            }
            ShiftedSumsVanish | ShiftedSumsBounded | ShiftedSumsConverge => {
                let z = self.shifted_sums()?;
                let (est, outcome) = match id {
                    ShiftedSumsVanish => {
                        let e = z.lim(cfg);
                        let o = judge_zero(&e, cfg);
                        (e, o)
                    }
                    ShiftedSumsBounded => {
                        let e = z.sup_abs(cfg);
                        let o = judge_finite(&e);
                        (e, o)
                    }
                    _ => {
                        let mut e = z.lim(cfg);
                        e.kind = EstimateKind::Exists;
                        let o = judge_exists(&e);
                        (e, o)
                    }
                };
                ConditionResult {
                    id,
                    estimate: est,
                    outcome,
                    note: Some(SHIFTED_SUM_READING.to_string()),
                }
            }
            _ => unreachable!(),
        })
    }
}

/// `B^A` on the stored rows of `A`.
pub fn transformed_rows<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &MatrixWindow<S>,
) -> Result<MatrixWindow<S>> {
    a.require_row_support("matrix rows")?;
    let stored = MatrixWindow {
        rows: a.rows.clone(),
        row_support: a.row_support,
        tail: a.tail,
        generator: None,
    };
    let sys = TransformedSystem::new(p, &stored, &TrendConfig::default())?;
    Ok(MatrixWindow {
        rows: sys.assoc.rows,
        row_support: crate::window::SeqTail::Zero,
        tail: a.tail,
        generator: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WTensorEntry<S> {
    pub row: usize,
    pub w: TriangleMatrix<S>,
    pub gamma: LimitEstimate<S>,
}

/// `W^{A_n}` and `γ_n` for each stored row of `A`.
pub fn w_tensor<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &MatrixWindow<S>,
) -> Result<Vec<WTensorEntry<S>>> {
    a.require_row_support("matrix rows")?;
    let stored = MatrixWindow::finite(a.rows.clone());
    let sys = TransformedSystem::new(p, &stored, &TrendConfig::default())?;
    let gamma = sys.gamma()?;
    Ok(sys
        .w()?
        .iter()
        .cloned()
        .zip(gamma)
        .enumerate()
        .map(|(row, (w, gamma))| WTensorEntry { row, w, gamma })
        .collect())
}

/// Evaluates a single condition. Plain conditions read `a` directly;
/// transformed ones read it as `A` and go through `B^A` and `W^{A_n}`.
pub fn eval_condition<S: Scalar>(
    id: ConditionId,
    p: &ParameterTriple<S>,
    a: &MatrixWindow<S>,
    cfg: &TrendConfig,
) -> Result<ConditionResult<S>> {
    if id.is_transformed() {
        TransformedSystem::new(p, a, cfg)?.eval(id)
    } else {
        Ok(eval_plain(id, &ObservedRows::observe(a, cfg)?, cfg))
    }
}

/// Conditions characterizing `A ∈ (X(r,s,t;Δ^(m)), Y)`.
pub fn required_conditions(source: SpaceLabel, target: SpaceLabel) -> &'static [ConditionId] {
    use ConditionId::*;
    use SpaceLabel::*;
    match (source, target) {
        (C0, C0) => &[
            AssocRowNormsBounded,
            AssocColumnsVanish,
            WRowNormsBounded,
            WColumnsVanish,
        ],
        (C0, C) => &[
            AssocRowNormsBounded,
            WRowNormsBounded,
            WColumnsVanish,
            AssocColumnsConverge,
        ],
        (C0, LInf) => &[AssocRowNormsBounded, WRowNormsBounded, WColumnsVanish],
        (LInf, C0) => &[AssocRowNormsVanish, WRowNormsVanish],
        (LInf, C) => &[
            AssocRowNormsBounded,
            AssocColumnsConverge,
            WRowNormsVanish,
            AssocRowsConvergeInL1,
        ],
        (LInf, LInf) => &[AssocRowNormsBounded, WRowNormsVanish],
        (C, C0) => &[
            AssocRowNormsBounded,
            AssocColumnsVanish,
            WRowNormsBounded,
            WColumnsConverge,
            WRowSumsConverge,
            ShiftedSumsVanish,
        ],
        (C, C) => &[
            AssocRowNormsBounded,
            WRowNormsBounded,
            AssocColumnsConverge,
            WColumnsConverge,
            WRowSumsConverge,
            ShiftedSumsConverge,
        ],
        (C, LInf) => &[
            AssocRowNormsBounded,
            WRowNormsBounded,
            WColumnsConverge,
            WRowSumsConverge,
            ShiftedSumsBounded,
        ],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport<S> {
    pub source: SpaceLabel,
    pub target: SpaceLabel,
    pub conditions: Vec<ConditionResult<S>>,
    pub verdict: Verdict,
    /// Interpretive reading used for the shifted-sum conditions, if any.
    pub reading: Option<String>,
}

/// Decides `A ∈ (X(r,s,t;Δ^(m)), Y)` from the characterizing conditions.
///
/// Satisfied only if every condition is satisfied without an indeterminate
/// status; any indeterminate condition makes the whole report indeterminate.
pub fn classify_map<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &MatrixWindow<S>,
    source: SpaceLabel,
    target: SpaceLabel,
    cfg: &TrendConfig,
) -> Result<ClassReport<S>> {
    let sys = TransformedSystem::new(p, a, cfg)?;
    let conditions = required_conditions(source, target)
        .iter()
        .map(|&id| sys.eval(id))
        .collect::<Result<Vec<_>>>()?;
    let mut outcome = conditions
        .iter()
        .fold(Outcome::Satisfied, |o, c| o.and(c.outcome));
    if conditions.iter().any(|c| {
        c.outcome == Outcome::Indeterminate || c.estimate.status == EstimateStatus::Indeterminate
    }) {
        outcome = Outcome::Indeterminate;
    }
    let trace = conditions
        .iter()
        .map(|c| {
            format!(
                "{}: {} (value {}, {})",
                c.id,
                c.outcome,
                c.estimate.value,
                c.estimate.status.name()
            )
        })
        .collect();
    let reading = conditions.iter().find_map(|c| c.note.clone());
    Ok(ClassReport {
        source,
        target,
        conditions,
        verdict: Verdict { outcome, trace },
        reading,
    })
}
