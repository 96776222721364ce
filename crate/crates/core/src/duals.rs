//! Dual-space objects: the associate row `R(a)`, the triangle `W = (w_pk)`,
//! and the matrices `C` (α-dual) and `E` (γ-dual).
//!
//! All of these are infinite series in `a`. Inputs must be finitely
//! supported (zero tail), which turns every series into a finite sum.
//! Each quantity is computed from its definition `Σ_j a_j s_jk` and again
//! from the rearranged closed form; a mismatch is reported as
//! [`Error::Inconsistent`].

use crate::error::{Error, Result};
use crate::limits::{
    judge_exists, judge_finite, judge_zero, Continuation, Observed, Outcome, TrendConfig, Verdict,
};
use crate::operators::{build_s, d_coeffs};
use crate::params::ParameterTriple;
use crate::scalar::{binom_scalar, l1_norm, sign, Backend, Scalar, DEFAULT_TOLERANCE};
use crate::toeplitz::CoeffWindow;
use crate::triangle::TriangleMatrix;
use crate::window::{MatrixTail, SeqTail, SequenceWindow, SpaceLabel};

/// Largest support for which `w_pk` is also evaluated in closed form.
const W_CROSS_CHECK_MAX: usize = 32;

/// `S` and `D^(s)` for one parameter set, shared by every dual computation.
#[derive(Debug, Clone)]
pub struct Associates<S> {
    p: ParameterTriple<S>,
    d: CoeffWindow<S>,
    s: TriangleMatrix<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssociateRow<S> {
    pub source: SequenceWindow<S>,
    /// `R_0(a), …, R_{N-1}(a)`.
    pub values: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WMatrix<S> {
    pub source: SequenceWindow<S>,
    /// `w_pk` for `k ≤ p < N`; rows past the support of `a` vanish.
    pub entries: TriangleMatrix<S>,
}

fn check_inputs<S: Scalar>(order: usize, a: &SequenceWindow<S>, what: &'static str) -> Result<()> {
    a.require_zero_tail(what)?;
    if a.len() > order {
        return Err(Error::DimensionMismatch {
            context: what,
            expected: order,
            found: a.len(),
        });
    }
    Ok(())
}

impl<S: Scalar> Associates<S> {
    pub fn new(p: &ParameterTriple<S>) -> Result<Self> {
        Ok(Associates {
            p: p.clone(),
            d: d_coeffs(p)?,
            s: build_s(p)?,
        })
    }

    pub fn params(&self) -> &ParameterTriple<S> {
        &self.p
    }

    pub fn order(&self) -> usize {
        self.p.order()
    }

    /// `S = T⁻¹`.
    pub fn s(&self) -> &TriangleMatrix<S> {
        &self.s
    }

    /// `H_i = Σ_{j≥i} binom(m+j-i-1, j-i) a_j` over the support `j < len`.
    fn tail_sums(&self, a: &[S]) -> Vec<S> {
        let m = self.p.m() as i64;
        (0..a.len())
            .map(|i| {
                (i..a.len()).fold(S::zero(), |acc, j| {
                    acc + binom_scalar::<S>(m + (j - i) as i64 - 1, j - i) * a[j].clone()
                })
            })
            .collect()
    }

    /// `R_k(a) = Σ_{j≥k} a_j s_jk` from the definition.
    pub fn associate_by_definition(&self, a: &[S]) -> Vec<S> {
        let n = self.order();
        (0..n)
            .map(|k| {
                (k..a.len().min(n)).fold(S::zero(), |acc, j| acc + a[j].clone() * self.s.get(j, k))
            })
            .collect()
    }

    /// `R_k(a)` from the rearranged form
    /// `r_k [ a_k/(s_0 t_k) + Σ_{i=k}^{k+1} (-1)^{i-k} D_{i-k}/t_i Σ_{j≥k+1} binom(m+j-i-1, j-i) a_j
    ///        + Σ_{l≥2} (-1)^l D_l/t_{l+k} Σ_{j≥k+l} binom(m+j-k-l-1, j-k-l) a_j ]`,
    /// each series cut at the support of `a`.
    pub fn associate_closed_form(&self, a: &[S]) -> Vec<S> {
        let n = self.order();
        let (r, s, t) = (self.p.r(), self.p.s(), self.p.t());
        let len = a.len().min(n);
        let h = self.tail_sums(&a[..len]);
        (0..n)
            .map(|k| {
                if k >= len {
                    return S::zero();
                }
                let mut acc = a[k].clone() / (s[0].clone() * t[k].clone());
                // i = k: the j-series starts at k+1, i.e. H_k without its j = k term.
                acc = acc + self.d.d(0).clone() / t[k].clone() * (h[k].clone() - a[k].clone());
                if k + 1 < len {
                    acc = acc - self.d.d(1).clone() / t[k + 1].clone() * h[k + 1].clone();
                }
                for l in 2..len - k {
                    acc = acc
                        + sign::<S>(l) * self.d.d(l).clone() / t[l + k].clone() * h[k + l].clone();
                }
                r[k].clone() * acc
            })
            .collect()
    }

    /// `R(a)`, computed both ways and cross-checked.
    pub fn associate_row(&self, a: &SequenceWindow<S>) -> Result<AssociateRow<S>> {
        check_inputs(self.order(), a, "associate row")?;
        let values = self.checked_associate(&a.values, None)?;
        Ok(AssociateRow {
            source: a.clone(),
            values,
        })
    }

    pub(crate) fn checked_associate(&self, a: &[S], row: Option<usize>) -> Result<Vec<S>> {
        let def = self.associate_by_definition(a);
        let closed = self.associate_closed_form(a);
        let scale = l1_norm(&def).to_f64().max(1.0);
        for (k, (x, y)) in def.iter().zip(&closed).enumerate() {
            if !(x.clone() - y.clone()).is_negligible(DEFAULT_TOLERANCE * scale) {
                return Err(Error::Inconsistent(format!(
                    "R_{k}(a){}: definition {x} vs closed form {y}",
                    row.map(|n| format!(" for row {n}")).unwrap_or_default()
                )));
            }
        }
        Ok(def)
    }

    /// `w_pk = Σ_{j≥p} a_j s_jk` from the definition (suffix sums in `j`).
    pub fn w_by_definition(&self, a: &[S]) -> TriangleMatrix<S> {
        let n = self.order();
        let len = a.len().min(n);
        // suffix[p][k] accumulated from the bottom row up.
        let mut rows: Vec<Vec<S>> = (0..n).map(|p| vec![S::zero(); p + 1]).collect();
        let mut running = vec![S::zero(); n];
        for p in (0..len).rev() {
            for (k, slot) in running.iter_mut().enumerate().take(p + 1) {
                *slot = slot.clone() + a[p].clone() * self.s.get(p, k);
            }
            rows[p].clone_from_slice(&running[..=p]);
        }
        TriangleMatrix::from_rows(rows, MatrixTail::Zero).expect("rows are lower triangular")
    }

    /// `w_pk = r_k [ Σ_{i=k}^{p} (-1)^{i-k} D_{i-k}/t_i Σ_{j≥p} binom(m+j-i-1, j-i) a_j
    ///             + Σ_{i>p} (-1)^{i-k} D_{i-k}/t_i Σ_{j≥i} binom(m+j-i-1, j-i) a_j ]`.
    pub fn w_closed_form(&self, a: &[S]) -> TriangleMatrix<S> {
        let n = self.order();
        let len = a.len().min(n);
        let m = self.p.m() as i64;
        let (r, t) = (self.p.r(), self.p.t());
        let h = self.tail_sums(&a[..len]);
        TriangleMatrix::from_fn(n, MatrixTail::Zero, |p, k| {
            if p >= len {
                return S::zero();
            }
            let mut acc = S::zero();
            for i in k..=p {
                let g = (p..len).fold(S::zero(), |g, j| {
                    g + binom_scalar::<S>(m + (j - i) as i64 - 1, j - i) * a[j].clone()
                });
                acc = acc + sign::<S>(i - k) * self.d.d(i - k).clone() / t[i].clone() * g;
            }
            for i in p + 1..len {
                acc =
                    acc + sign::<S>(i - k) * self.d.d(i - k).clone() / t[i].clone() * h[i].clone();
            }
            r[k].clone() * acc
        })
    }

    /// The triangle `W` for `a`; cross-checked in closed form for small supports.
    pub fn w_matrix(&self, a: &SequenceWindow<S>) -> Result<WMatrix<S>> {
        check_inputs(self.order(), a, "w matrix")?;
        let entries = self.w_by_definition(&a.values);
        if a.support_len(0.0) <= W_CROSS_CHECK_MAX {
            let closed = self.w_closed_form(&a.values);
            let consistent = match S::BACKEND {
                Backend::Rational => entries == closed,
                Backend::Float => {
                    let scale = (0..entries.order())
                        .map(|p| l1_norm(entries.row(p)).to_f64())
                        .fold(1.0, f64::max);
                    entries.max_abs_diff(&closed) <= DEFAULT_TOLERANCE * scale
                }
            };
            if !consistent {
                return Err(Error::Inconsistent(format!(
                    "w_pk: definition and closed form differ by {:e}",
                    entries.max_abs_diff(&closed)
                )));
            }
        }
        Ok(WMatrix {
            source: a.clone(),
            entries,
        })
    }

    /// `c_nj = s_nj a_n`, so that `a_n x_n = (C y)_n` whenever `y = T x`.
    pub fn alpha_dual_matrix(&self, a: &SequenceWindow<S>) -> Result<TriangleMatrix<S>> {
        let n = self.order();
        if a.len() != n {
            return Err(Error::DimensionMismatch {
                context: "alpha dual",
                expected: n,
                found: a.len(),
            });
        }
        let tail = match a.tail {
            SeqTail::Zero => MatrixTail::Zero,
            SeqTail::Unknown => MatrixTail::Unknown,
        };
        Ok(TriangleMatrix::from_fn(n, tail, |row, j| {
            self.s.get(row, j) * a.values[row].clone()
        }))
    }

    /// `E = (e_ln)` for `l < order`:
    /// `e_ln = r_n [ a_n/(s_0 t_n) + Σ_{k=n}^{n+1} (-1)^{k-n} D_{k-n}/t_k Σ_{j=n+1}^{l} binom(m+j-k-1, j-k) a_j
    ///             + Σ_{k=n+2}^{l} (-1)^{k-n} D_{k-n}/t_k Σ_{j=k}^{l} binom(m+j-k-1, j-k) a_j ]`,
    /// so that `Σ_{n≤l} a_n x_n = (E y)_l`.
    pub fn gamma_dual_matrix(
        &self,
        a: &SequenceWindow<S>,
        order: usize,
    ) -> Result<TriangleMatrix<S>> {
        let n_max = self.order();
        if order > n_max || a.len() < order {
            return Err(Error::DimensionMismatch {
                context: "gamma dual",
                expected: order,
                found: a.len().min(n_max),
            });
        }
        let m = self.p.m() as i64;
        let (r, s, t) = (self.p.r(), self.p.s(), self.p.t());
        let av = &a.values;
        let binom_sum = |k: usize, from: usize, l: usize| -> S {
            (from..=l).fold(S::zero(), |acc, j| {
                acc + binom_scalar::<S>(m + j as i64 - k as i64 - 1, j - k) * av[j].clone()
            })
        };
        Ok(TriangleMatrix::from_fn(
            order,
            MatrixTail::Structural,
            |l, n| {
                let mut acc = av[n].clone() / (s[0].clone() * t[n].clone());
                if n < l {
                    for k in n..=n + 1 {
                        acc = acc
                            + sign::<S>(k - n) * self.d.d(k - n).clone() / t[k].clone()
                                * binom_sum(k, n + 1, l);
                    }
                    for k in n + 2..=l {
                        acc = acc
                            + sign::<S>(k - n) * self.d.d(k - n).clone() / t[k].clone()
                                * binom_sum(k, k, l);
                    }
                }
                r[n].clone() * acc
            },
        ))
    }
}

/// `R(a)` for finitely supported `a`.
pub fn associate_row<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &SequenceWindow<S>,
) -> Result<AssociateRow<S>> {
    Associates::new(p)?.associate_row(a)
}

pub fn w_matrix<S: Scalar>(p: &ParameterTriple<S>, a: &SequenceWindow<S>) -> Result<WMatrix<S>> {
    Associates::new(p)?.w_matrix(a)
}

pub fn alpha_dual_matrix<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &SequenceWindow<S>,
) -> Result<TriangleMatrix<S>> {
    Associates::new(p)?.alpha_dual_matrix(a)
}

pub fn gamma_dual_matrix<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &SequenceWindow<S>,
    order: usize,
) -> Result<TriangleMatrix<S>> {
    Associates::new(p)?.gamma_dual_matrix(a, order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualKind {
    Alpha,
    Beta,
    Gamma,
}

impl DualKind {
    pub fn name(self) -> &'static str {
        match self {
            DualKind::Alpha => "alpha",
            DualKind::Beta => "beta",
            DualKind::Gamma => "gamma",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "alpha" => Some(DualKind::Alpha),
            "beta" => Some(DualKind::Beta),
            "gamma" => Some(DualKind::Gamma),
            _ => None,
        }
    }
}

/// Membership of a finitely supported `a` in a dual of `X(r,s,t;Δ^(m))`.
///
/// α: `C ∈ (X, l1)`, i.e. the subset-sum condition on `C`.
/// γ: `sup_l Σ_{n≤l} |e_ln| < ∞`.
/// β: `B1∩B2∩B3` (c0), `B1∩B4` (l∞), `B1∩B3∩B5∩B6` (c).
///
/// For zero-tail `a` every limit involved is eventually constant and is
/// decided exactly; any other tail yields an indeterminate verdict.
pub fn dual_membership<S: Scalar>(
    p: &ParameterTriple<S>,
    a: &SequenceWindow<S>,
    dual: DualKind,
    space: SpaceLabel,
    cfg: &TrendConfig,
) -> Result<Verdict> {
    if a.tail != SeqTail::Zero {
        return Ok(Verdict::new(
            Outcome::Indeterminate,
            "a has a non-zero tail; the dual series are not finite sums and no convergence analysis is attempted",
        ));
    }
    let assoc = Associates::new(p)?;
    let n = assoc.order();
    if a.len() > n {
        return Err(Error::DimensionMismatch {
            context: "dual membership",
            expected: n,
            found: a.len(),
        });
    }
    let mut padded = a.clone();
    padded.values.resize(n, S::zero());
    match dual {
        DualKind::Alpha => {
            let c = assoc.alpha_dual_matrix(&padded)?;
            let est = crate::matclass::subset_sum_sup(&c.to_window(), cfg);
            let outcome = judge_finite(&est);
            Ok(Verdict::new(
                outcome,
                format!(
                    "subset sums of C: sup_K Σ_n |Σ_(k∈K) c_nk| = {} [{}]",
                    est.value,
                    est.status.name()
                ),
            ))
        }
        DualKind::Gamma => {
            // Rows of E stop changing once l passes the support of a.
            let e = assoc.gamma_dual_matrix(&padded, n)?;
            let sums: Vec<S> = (0..n).map(|l| l1_norm(e.row(l))).collect();
            let observed = sums.iter().cloned().fold(S::zero(), S::max_of);
            let trace = sums
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            Ok(Verdict::new(
                Outcome::Satisfied,
                format!("sup_l Σ_(n≤l) |e_ln| = {observed} (exact; rows constant past the support); trace [{trace}]"),
            ))
        }
        DualKind::Beta => {
            let r = assoc.associate_row(&padded)?;
            let w = assoc.w_matrix(&padded)?.entries;
            let b1 = l1_norm(&r.values);
            let rows: Vec<Observed<S>> = (0..n)
                .map(|k| Observed::new((k..n).map(|p| w.get(p, k)).collect(), Continuation::Zero))
                .collect();
            let row_abs = Observed::new(
                (0..n).map(|p| l1_norm(w.row(p))).collect(),
                Continuation::Zero,
            );
            let row_sum = Observed::new(
                (0..n)
                    .map(|p| w.row(p).iter().fold(S::zero(), |a, b| a + b.clone()))
                    .collect(),
                Continuation::Zero,
            );
            let mut parts = vec![Verdict::satisfied(format!(
                "B1: Σ_k |R_k(a)| = {b1} (finite sum)"
            ))];
            let b2 = rows.iter().fold(Outcome::Satisfied, |o, c| {
                o.and(judge_zero(&c.lim(cfg), cfg))
            });
            let b3 = row_abs.sup_abs(cfg);
            let b4 = row_abs.lim(cfg);
            let b5 = rows
                .iter()
                .fold(Outcome::Satisfied, |o, c| o.and(judge_exists(&c.lim(cfg))));
            let b6 = row_sum.lim(cfg);
            let b2v = Verdict::new(
                b2,
                "B2: lim_p w_pk = 0 for all k (w_pk vanishes past the support)",
            );
            let b3v = Verdict::new(
                judge_finite(&b3),
                format!("B3: sup_p Σ_k |w_pk| = {}", b3.value),
            );
            let b4v = Verdict::new(
                judge_zero(&b4, cfg),
                format!("B4: lim_p Σ_k |w_pk| = {}", b4.value),
            );
            let b5v = Verdict::new(b5, "B5: lim_p w_pk exists for all k");
            let b6v = Verdict::new(
                judge_exists(&b6),
                format!("B6: lim_p Σ_k w_pk = {}", b6.value),
            );
            match space {
                SpaceLabel::C0 => parts.extend([b2v, b3v]),
                SpaceLabel::LInf => parts.push(b4v),
                SpaceLabel::C => parts.extend([b3v, b5v, b6v]),
            }
            Ok(Verdict::all(parts))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::transform;
    use crate::params::{preset, PresetSpec};
    use crate::scalar::Rational;

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

    fn seq(v: &[(i64, i64)]) -> SequenceWindow<Rational> {
        SequenceWindow::finite(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn associate_of_first_unit() {
        let p = sample();
        let r = associate_row(&p, &SequenceWindow::unit(6, 0)).unwrap();
        let expected = p.r()[0].clone() / (p.s()[0].clone() * p.t()[0].clone());
        assert_eq!(r.values[0], expected);
        assert!(r.values[1..].iter().all(|v| *v == q(0, 1)));
    }

    #[test]
    fn identity_preset_associate_is_identity() {
        let p = preset::<Rational>(&PresetSpec::Identity, 0, 4).unwrap();
        let a = seq(&[(1, 2), (-3, 1), (0, 1), (7, 5)]);
        assert_eq!(associate_row(&p, &a).unwrap().values, a.values);
    }

    #[test]
    fn closed_form_matches_definition() {
        let p = sample();
        let a = seq(&[(1, 1), (-2, 3), (4, 1), (0, 1), (5, 7), (-1, 2)]);
        let assoc = Associates::new(&p).unwrap();
        assert_eq!(
            assoc.associate_closed_form(&a.values),
            assoc.associate_by_definition(&a.values)
        );
        assert_eq!(
            assoc.w_closed_form(&a.values),
            assoc.w_by_definition(&a.values)
        );
        let short = seq(&[(3, 1), (1, 1)]);
        assert_eq!(
            assoc.associate_closed_form(&short.values),
            assoc.associate_by_definition(&short.values)
        );
        assert_eq!(
            assoc.w_closed_form(&short.values),
            assoc.w_by_definition(&short.values)
        );
    }

    #[test]
    fn duality_identity() {
        let p = sample();
        let a = seq(&[(1, 1), (-2, 3), (4, 1), (0, 1), (5, 7), (-1, 2)]);
        let x = seq(&[(3, 1), (1, 4), (-1, 1), (2, 1), (0, 1), (9, 2)]);
        let r = associate_row(&p, &a).unwrap();
        let y = transform(&p, &x).unwrap();
        let lhs = a
            .values
            .iter()
            .zip(&x.values)
            .fold(q(0, 1), |s, (u, v)| s + u.clone() * v.clone());
        let rhs = r
            .values
            .iter()
            .zip(&y.values)
            .fold(q(0, 1), |s, (u, v)| s + u.clone() * v.clone());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn w_examples() {
        let p = sample();
        let w = w_matrix(&p, &SequenceWindow::unit(6, 1)).unwrap().entries;
        assert!(w.row(2).iter().all(|v| *v == q(0, 1)));
        let w2 = w_matrix(&p, &SequenceWindow::unit(6, 2)).unwrap().entries;
        let s = build_s(&p).unwrap();
        for pp in 0..=2 {
            for k in 0..=pp {
                assert_eq!(w2.get(pp, k), s.get(2, k));
            }
        }
        assert_eq!(
            w_matrix(&p, &SequenceWindow::zeros(6)).unwrap().entries,
            TriangleMatrix::zeros(6)
        );
    }

    #[test]
    fn alpha_and_gamma_identities() {
        let p = sample();
        let a = seq(&[(1, 1), (-2, 3), (4, 1), (0, 1), (5, 7), (-1, 2)]);
        let x = seq(&[(3, 1), (1, 4), (-1, 1), (2, 1), (0, 1), (9, 2)]);
        let y = transform(&p, &x).unwrap();
        let c = alpha_dual_matrix(&p, &a).unwrap();
        let cy = crate::triangle::apply(&c, &y).unwrap();
        for n in 0..6 {
            assert_eq!(cy.values[n], a.values[n].clone() * x.values[n].clone());
        }
        let e = gamma_dual_matrix(&p, &a, 6).unwrap();
        let ey = crate::triangle::apply(&e, &y).unwrap();
        let mut partial = q(0, 1);
        for l in 0..6 {
            partial += a.values[l].clone() * x.values[l].clone();
            assert_eq!(ey.values[l], partial, "l = {l}");
        }
    }

    #[test]
    fn identity_alpha_is_diagonal() {
        let p = preset::<Rational>(&PresetSpec::Identity, 0, 3).unwrap();
        let a = seq(&[(2, 1), (3, 1), (5, 1)]);
        let c = alpha_dual_matrix(&p, &a).unwrap();
        assert_eq!(
            c.to_dense(),
            vec![
                vec![q(2, 1), q(0, 1), q(0, 1)],
                vec![q(0, 1), q(3, 1), q(0, 1)],
                vec![q(0, 1), q(0, 1), q(5, 1)],
            ]
        );
    }

    #[test]
    fn non_zero_tail_is_rejected_or_indeterminate() {
        let p = sample();
        let ones = SequenceWindow::ones(6);
        assert!(matches!(
            associate_row(&p, &ones),
            Err(Error::NonZeroTail { .. })
        ));
        assert!(matches!(
            w_matrix(&p, &ones),
            Err(Error::NonZeroTail { .. })
        ));
        let v = dual_membership(
            &p,
            &ones,
            DualKind::Beta,
            SpaceLabel::C0,
            &TrendConfig::default(),
        )
        .unwrap();
        assert_eq!(v.outcome, Outcome::Indeterminate);
    }

    #[test]
    fn finite_sequences_belong_to_every_dual() {
        let p = sample();
        let cfg = TrendConfig::default();
        for a in [SequenceWindow::zeros(6), seq(&[(1, 1), (-2, 3), (4, 1)])] {
            for dual in [DualKind::Alpha, DualKind::Beta, DualKind::Gamma] {
                for space in [SpaceLabel::C0, SpaceLabel::C, SpaceLabel::LInf] {
                    let v = dual_membership(&p, &a, dual, space, &cfg).unwrap();
                    assert!(v.is_satisfied(), "{dual:?} {space:?}: {:?}", v.trace);
                }
            }
        }
    }
}
