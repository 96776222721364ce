//! Limits, suprema and limsups observed on finite data.
//!
//! An infinite-index quantity is computed exactly when a declared zero tail
//! makes the sequence eventually zero. When rows follow a generating formula
//! the sequence is observed on an extended window and classified by trend.
//! Anything else is reported as indeterminate, never guessed.

use std::fmt;

use crate::scalar::{Scalar, DEFAULT_TOLERANCE};
use crate::window::{MatrixTail, MatrixWindow, SeqTail};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendConfig {
    /// Absolute tolerance for float comparisons and trend spreads.
    pub tolerance: f64,
    /// Number of trailing values inspected for trend classification.
    pub window: usize,
    /// Structural rows are generated up to `extension * stored` rows.
    pub extension: usize,
}

impl Default for TrendConfig {
    fn default() -> Self {
        TrendConfig {
            tolerance: DEFAULT_TOLERANCE,
            window: 8,
            extension: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateKind {
    Sup,
    Lim,
    Limsup,
    Exists,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EstimateStatus {
    Exact,
    Trend,
    Indeterminate,
}

impl EstimateStatus {
    pub fn name(self) -> &'static str {
        match self {
            EstimateStatus::Exact => "exact",
            EstimateStatus::Trend => "trend",
            EstimateStatus::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    /// Trailing window varies by less than the tolerance.
    Constant,
    /// Monotone with shrinking increments; value is the extrapolated limit.
    Converging,
    /// Converging, and the extrapolated limit is indistinguishable from zero.
    DecayingToZero,
    /// Monotone increasing with non-shrinking increments.
    Diverging,
    /// Not monotone on the trailing window.
    Oscillating,
    /// Monotone decreasing with non-shrinking increments; no call is made.
    Unclear,
}

impl Trend {
    pub fn name(self) -> &'static str {
        match self {
            Trend::Constant => "constant",
            Trend::Converging => "converging",
            Trend::DecayingToZero => "decaying-to-zero",
            Trend::Diverging => "diverging",
            Trend::Oscillating => "oscillating",
            Trend::Unclear => "unclear",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate<S> {
    pub kind: EstimateKind,
    /// Best value: exact, extrapolated, or a window lower bound.
    pub value: S,
    /// Upper bound when only an interval `[value, upper]` is known.
    pub upper: Option<S>,
    pub status: EstimateStatus,
    pub trend: Option<Trend>,
    /// Indices of the observed trailing window.
    pub window: Vec<usize>,
    /// Values on that window.
    pub trace: Vec<S>,
}

impl<S: Scalar> LimitEstimate<S> {
    pub fn exact(kind: EstimateKind, value: S) -> Self {
        LimitEstimate {
            kind,
            value,
            upper: None,
            status: EstimateStatus::Exact,
            trend: None,
            window: Vec::new(),
            trace: Vec::new(),
        }
    }

    pub fn indeterminate(kind: EstimateKind, value: S) -> Self {
        LimitEstimate {
            status: EstimateStatus::Indeterminate,
            ..Self::exact(kind, value)
        }
    }

    pub fn diverges(&self) -> bool {
        self.trend == Some(Trend::Diverging)
    }

    fn with_trace(mut self, values: &[S], cfg: &TrendConfig) -> Self {
        let w = cfg.window.max(1).min(values.len());
        let start = values.len() - w;
        self.window = (start..values.len()).collect();
        self.trace = values[start..].to_vec();
        self
    }
}

/// How a sequence indexed by `n` continues past the observed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuation {
    /// Identically zero afterwards.
    Zero,
    /// Observed on a formula-generated window; judged by trend.
    Formula,
    Unknown,
}

impl Continuation {
    pub fn from_tail<S>(m: &MatrixWindow<S>) -> Continuation {
        match m.tail {
            MatrixTail::Zero => Continuation::Zero,
            MatrixTail::Structural => Continuation::Formula,
            MatrixTail::Unknown => Continuation::Unknown,
        }
    }

    /// The weaker of two continuations.
    pub fn meet(self, other: Continuation) -> Continuation {
        use Continuation::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (Formula, _) | (_, Formula) => Formula,
            _ => Zero,
        }
    }
}

/// A scalar sequence indexed by `n ≥ 0`: observed values plus continuation.
#[derive(Debug, Clone, PartialEq)]
pub struct Observed<S> {
    pub values: Vec<S>,
    pub continuation: Continuation,
}

impl<S: Scalar> Observed<S> {
    pub fn new(values: Vec<S>, continuation: Continuation) -> Self {
        Observed {
            values,
            continuation,
        }
    }

    /// `lim_n v_n`.
    pub fn lim(&self, cfg: &TrendConfig) -> LimitEstimate<S> {
        match self.continuation {
            Continuation::Zero => {
                LimitEstimate::exact(EstimateKind::Lim, S::zero()).with_trace(&self.values, cfg)
            }
            Continuation::Unknown => {
                let last = self.values.last().cloned().unwrap_or_else(S::zero);
                LimitEstimate::indeterminate(EstimateKind::Lim, last).with_trace(&self.values, cfg)
            }
            Continuation::Formula => {
                let (trend, value) = classify(&self.values, cfg);
                let status = if trend == Trend::Unclear {
                    EstimateStatus::Indeterminate
                } else {
                    EstimateStatus::Trend
                };
                LimitEstimate {
                    kind: EstimateKind::Lim,
                    value,
                    upper: None,
                    status,
                    trend: Some(trend),
                    window: Vec::new(),
                    trace: Vec::new(),
                }
                .with_trace(&self.values, cfg)
            }
        }
    }

    /// `sup_n |v_n|`.
    pub fn sup_abs(&self, cfg: &TrendConfig) -> LimitEstimate<S> {
        let observed = self
            .values
            .iter()
            .fold(S::zero(), |acc, v| acc.max_of(v.abs()));
        match self.continuation {
            Continuation::Zero => {
                LimitEstimate::exact(EstimateKind::Sup, observed).with_trace(&self.values, cfg)
            }
            Continuation::Unknown => LimitEstimate::indeterminate(EstimateKind::Sup, observed)
                .with_trace(&self.values, cfg),
            Continuation::Formula => {
                let abs: Vec<S> = self.values.iter().map(Scalar::abs).collect();
                let (trend, limit) = classify(&abs, cfg);
                let status = if trend == Trend::Unclear {
                    EstimateStatus::Indeterminate
                } else {
                    EstimateStatus::Trend
                };
                LimitEstimate {
                    kind: EstimateKind::Sup,
                    value: observed.max_of(limit),
                    upper: None,
                    status,
                    trend: Some(trend),
                    window: Vec::new(),
                    trace: Vec::new(),
                }
                .with_trace(&self.values, cfg)
            }
        }
    }

    /// `limsup_n v_n`.
    pub fn limsup(&self, cfg: &TrendConfig) -> LimitEstimate<S> {
        let mut est = self.lim(cfg);
        est.kind = EstimateKind::Limsup;
        if est.trend == Some(Trend::Oscillating) {
            est.value = est
                .trace
                .iter()
                .cloned()
                .fold(est.trace[0].clone(), S::max_of);
        }
        est
    }
}

/// Trend classification of a generated sequence, with its limit estimate.
///
/// Convergence is judged from geometric probes `v(M/8), v(M/4), v(M/2), v(M-1)`:
/// for `v_n ≈ L + C n^{-p}` consecutive probe gaps shrink by the ratio
/// `ρ = 2^{-p}` and `L = v(M-1) - d₂ ρ / (1 - ρ)`. Two overlapping probe
/// triples give two estimates; their gap measures the extrapolation error.
pub fn classify<S: Scalar>(values: &[S], cfg: &TrendConfig) -> (Trend, S) {
    let Some(last) = values.last() else {
        return (Trend::Constant, S::zero());
    };
    let w = cfg.window.max(2).min(values.len());
    let tail = &values[values.len() - w..];
    let lo = tail
        .iter()
        .cloned()
        .fold(tail[0].clone(), |a, b| if b < a { b } else { a });
    let hi = tail.iter().cloned().fold(tail[0].clone(), S::max_of);
    if (hi - lo).is_negligible(cfg.tolerance) {
        return (Trend::Constant, last.clone());
    }
    let f: Vec<f64> = values.iter().map(Scalar::to_f64).collect();
    let increasing = tail.windows(2).all(|p| p[1] >= p[0]);
    let decreasing = tail.windows(2).all(|p| p[1] <= p[0]);
    if !(increasing || decreasing) || f.len() < 16 {
        return (Trend::Oscillating, last.clone());
    }
    let m = f.len();
    let extrapolate = |a: usize, b: usize, c: usize| -> Option<f64> {
        let d1 = f[a] - f[b];
        let d2 = f[b] - f[c];
        if d1 == 0.0 {
            return None;
        }
        let rho = d2 / d1;
        (rho > 0.0 && rho < 1.0).then(|| f[c] - d2 * rho / (1.0 - rho))
    };
    let late = extrapolate(m / 4, m / 2, m - 1);
    let early = extrapolate(m / 8, m / 4, m / 2);
    match (late, early) {
        (Some(l), Some(e)) => {
            let slack = cfg.tolerance.max(2.0 * (l - e).abs());
            if l.abs() <= slack {
                (Trend::DecayingToZero, S::zero())
            } else {
                (Trend::Converging, S::from_f64(l))
            }
        }
        (Some(l), None) => (Trend::Converging, S::from_f64(l)),
        _ if increasing => (Trend::Diverging, last.clone()),
        _ => (Trend::Unclear, last.clone()),
    }
}

/// Rows of a matrix as seen on finite data.
#[derive(Debug, Clone)]
pub struct ObservedRows<S> {
    pub rows: Vec<Vec<S>>,
    pub continuation: Continuation,
    /// False when stored rows are truncations of longer rows.
    pub rows_finite: bool,
}

impl<S: Scalar> ObservedRows<S> {
    /// Stored rows, extended through the generator when the tail is structural.
    pub fn observe(m: &MatrixWindow<S>, cfg: &TrendConfig) -> crate::Result<Self> {
        let continuation = Continuation::from_tail(m);
        let rows = if m.is_extendable() {
            let target = (m.row_count() * cfg.extension).max(m.row_count());
            match m.extended(target)? {
                Some(ext) => ext.rows,
                None => m.rows.clone(),
            }
        } else {
            m.rows.clone()
        };
        Ok(ObservedRows {
            rows,
            continuation,
            rows_finite: m.row_support == SeqTail::Zero,
        })
    }

    pub fn width(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn get(&self, n: usize, k: usize) -> S {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Continuation of any per-row quantity derived from the rows.
    pub fn row_continuation(&self) -> Continuation {
        if self.rows_finite {
            self.continuation
        } else {
            Continuation::Unknown
        }
    }

    /// Per-row quantity `n ↦ f(row_n)`.
    pub fn per_row(&self, f: impl Fn(&[S]) -> S) -> Observed<S> {
        Observed::new(
            self.rows.iter().map(|r| f(r)).collect(),
            self.row_continuation(),
        )
    }

    /// Column `k` as a sequence in `n`.
    pub fn column(&self, k: usize) -> Observed<S> {
        Observed::new(
            (0..self.rows.len()).map(|n| self.get(n, k)).collect(),
            self.row_continuation(),
        )
    }
}

/// Outcome of a yes/no check on infinite data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Satisfied,
    Violated,
    Indeterminate,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Satisfied => "satisfied",
            Outcome::Violated => "violated",
            Outcome::Indeterminate => "indeterminate",
        }
    }

    /// Conjunction: any violation wins, then any indeterminate.
    pub fn and(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => Satisfied,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An outcome together with the trace that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub trace: Vec<String>,
}

impl Verdict {
    pub fn new(outcome: Outcome, line: impl Into<String>) -> Self {
        Verdict {
            outcome,
            trace: vec![line.into()],
        }
    }

    pub fn satisfied(line: impl Into<String>) -> Self {
        Self::new(Outcome::Satisfied, line)
    }

    pub fn is_satisfied(&self) -> bool {
        self.outcome == Outcome::Satisfied
    }

    pub fn all(parts: impl IntoIterator<Item = Verdict>) -> Verdict {
        parts.into_iter().fold(
            Verdict {
                outcome: Outcome::Satisfied,
                trace: Vec::new(),
            },
            |mut acc, v| {
                acc.outcome = acc.outcome.and(v.outcome);
                acc.trace.extend(v.trace);
                acc
            },
        )
    }
}

fn status_gate(est_status: EstimateStatus, decided: Outcome) -> Outcome {
    if est_status == EstimateStatus::Indeterminate {
        Outcome::Indeterminate
    } else {
        decided
    }
}

/// The quantity is finite (a `sup … < ∞` condition).
pub fn judge_finite<S: Scalar>(est: &LimitEstimate<S>) -> Outcome {
    status_gate(
        est.status,
        if est.diverges() {
            Outcome::Violated
        } else {
            Outcome::Satisfied
        },
    )
}

/// The limit is zero.
pub fn judge_zero<S: Scalar>(est: &LimitEstimate<S>, cfg: &TrendConfig) -> Outcome {
    let decided = match est.trend {
        Some(Trend::DecayingToZero) => Outcome::Satisfied,
        Some(Trend::Diverging) | Some(Trend::Oscillating) => Outcome::Violated,
        _ if est.value.is_negligible(cfg.tolerance) => Outcome::Satisfied,
        _ => Outcome::Violated,
    };
    status_gate(est.status, decided)
}

/// The limit exists (finite).
pub fn judge_exists<S: Scalar>(est: &LimitEstimate<S>) -> Outcome {
    let decided = match est.trend {
        Some(Trend::Diverging) | Some(Trend::Oscillating) => Outcome::Violated,
        _ => Outcome::Satisfied,
    };
    status_gate(est.status, decided)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> TrendConfig {
        TrendConfig::default()
    }

    fn seq(len: usize, f: impl Fn(usize) -> f64) -> Vec<f64> {
        (0..len).map(f).collect()
    }

    #[test]
    fn constant_sequences() {
        let (t, v) = classify(&seq(64, |_| 1.0), &cfg());
        assert_eq!(t, Trend::Constant);
        assert_eq!(v, 1.0);
    }

    #[test]
    fn harmonic_decays_to_zero() {
        let (t, v) = classify(&seq(64, |n| 1.0 / (n as f64 + 1.0)), &cfg());
        assert_eq!(t, Trend::DecayingToZero);
        assert!(v.abs() < 1e-2);
    }

    #[test]
    fn shifted_harmonic_converges_to_one() {
        let (t, v) = classify(&seq(64, |n| 1.0 + 1.0 / (n as f64 + 1.0)), &cfg());
        assert_eq!(t, Trend::Converging);
        assert!((v - 1.0).abs() < 1e-2);
    }

    #[test]
    fn geometric_decay_is_zero() {
        let (t, _) = classify(&seq(64, |n| 0.8f64.powi(n as i32)), &cfg());
        assert!(matches!(t, Trend::DecayingToZero | Trend::Constant));
    }

    #[test]
    fn linear_growth_diverges() {
        let (t, _) = classify(&seq(64, |n| n as f64), &cfg());
        assert_eq!(t, Trend::Diverging);
    }

    #[test]
    fn alternating_oscillates() {
        let (t, _) = classify(&seq(64, |n| if n % 2 == 0 { 1.0 } else { -1.0 }), &cfg());
        assert_eq!(t, Trend::Oscillating);
    }

    #[test]
    fn zero_continuation_is_exact() {
        let o = Observed::new(vec![3.0, -5.0, 1.0], Continuation::Zero);
        let sup = o.sup_abs(&cfg());
        assert_eq!(sup.status, EstimateStatus::Exact);
        assert_eq!(sup.value, 5.0);
        let lim = o.lim(&cfg());
        assert_eq!(lim.value, 0.0);
        assert_eq!(judge_zero(&lim, &cfg()), Outcome::Satisfied);
    }

    #[test]
    fn unknown_continuation_is_indeterminate() {
        let o = Observed::new(vec![0.0; 4], Continuation::Unknown);
        assert_eq!(judge_zero(&o.lim(&cfg()), &cfg()), Outcome::Indeterminate);
        assert_eq!(judge_finite(&o.sup_abs(&cfg())), Outcome::Indeterminate);
    }

    #[test]
    fn outcome_conjunction() {
        use Outcome::*;
        assert_eq!(Satisfied.and(Indeterminate), Indeterminate);
        assert_eq!(Indeterminate.and(Violated), Violated);
        assert_eq!(Satisfied.and(Satisfied), Satisfied);
    }
}
