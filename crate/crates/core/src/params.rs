//! Parameter sets `(r, s, t, m)` and the named reductions to known spaces.

use num_traits::{One, Zero};

use crate::error::{Error, Result, Violation};
use crate::scalar::{factorial, powi, Rational, Scalar};

/// A sequence argument of a preset.
#[derive(Debug, Clone, PartialEq)]
pub enum SeqSpec<S> {
    /// `e = (1, 1, 1, …)`.
    Ones,
    /// `n + 1`.
    Linear,
    Explicit(Vec<S>),
}

impl<S: Scalar> SeqSpec<S> {
    /// First `len` terms, or `None` if an explicit list is too short.
    pub fn take(&self, len: usize) -> Option<Vec<S>> {
        match self {
            SeqSpec::Ones => Some(vec![S::one(); len]),
            SeqSpec::Linear => Some((0..len).map(|n| S::from_i64(n as i64 + 1)).collect()),
            SeqSpec::Explicit(v) if v.len() >= len => Some(v[..len].to_vec()),
            SeqSpec::Explicit(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresetSpec<S> {
    /// `r_n = 1/u_n`, `t_n = v_n`, `s = e`.
    Uv { u: SeqSpec<S>, v: SeqSpec<S> },
    /// Euler means of order `α`: `r_n = 1/n!`, `t_n = α^n/n!`, `s_n = (1-α)^n/n!`.
    Euler { alpha: S },
    /// `r_n = n + 1`, `t_n = 1 + α^n`, `s = e`.
    Aydin { alpha: S },
    /// `r_n = λ_n`, `t_n = λ_n - λ_{n-1}` with `λ_{-1} = 0`, `s = e`, `m = 1`.
    Lambda { lambda: SeqSpec<S> },
    /// `s = (1, 0, 0, …)`, `r = t = e`, so that `A(r,s,t) = I`.
    Identity,
}

impl<S: Scalar> PresetSpec<S> {
    pub fn name(&self) -> &'static str {
        match self {
            PresetSpec::Uv { .. } => "uv",
            PresetSpec::Euler { .. } => "euler",
            PresetSpec::Aydin { .. } => "aydin",
            PresetSpec::Lambda { .. } => "lambda",
            PresetSpec::Identity => "identity",
        }
    }
}

/// Unchecked parameter data, as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq)]
pub struct RawParameters<S> {
    pub r: Vec<S>,
    pub s: Vec<S>,
    pub t: Vec<S>,
    pub m: usize,
    pub n: usize,
}

/// Validated `(r, s, t, m)` with truncation order `N`.
///
/// Guarantees `r_n ≠ 0`, `t_n ≠ 0` for `n < N` and `s_0 ≠ 0`, and that every
/// window holds at least `N` terms. `m = 0` means no differencing.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterTriple<S> {
    r: Vec<S>,
    s: Vec<S>,
    t: Vec<S>,
    m: usize,
    n: usize,
    origin: Option<PresetSpec<S>>,
}

/// Checks membership `r, t ∈ 𝒰`, `s ∈ 𝒰₀` on the first `N` terms and
/// reports every violation found.
pub fn validate_params<S: Scalar>(raw: RawParameters<S>) -> Result<ParameterTriple<S>> {
    let mut violations = Vec::new();
    let n = raw.n;
    if n == 0 {
        violations.push(Violation::EmptyOrder);
    }
    for (name, window) in [("r", &raw.r), ("s", &raw.s), ("t", &raw.t)] {
        if window.len() < n {
            violations.push(Violation::Short {
                name,
                len: window.len(),
                need: n,
            });
        }
    }
    violations.extend(
        raw.r
            .iter()
            .take(n)
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| Violation::ZeroR(i)),
    );
    violations.extend(
        raw.t
            .iter()
            .take(n)
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| Violation::ZeroT(i)),
    );
    if raw.s.first().is_some_and(|s0| s0.is_zero()) {
        violations.push(Violation::ZeroS0);
    }
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    Ok(ParameterTriple {
        r: raw.r,
        s: raw.s,
        t: raw.t,
        m: raw.m,
        n,
        origin: None,
    })
}

impl<S: Scalar> ParameterTriple<S> {
    pub fn new(r: Vec<S>, s: Vec<S>, t: Vec<S>, m: usize, n: usize) -> Result<Self> {
        validate_params(RawParameters { r, s, t, m, n })
    }

    pub fn r(&self) -> &[S] {
        &self.r[..self.n]
    }

    pub fn s(&self) -> &[S] {
        &self.s[..self.n]
    }

    pub fn t(&self) -> &[S] {
        &self.t[..self.n]
    }

    /// Difference order.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> Option<&PresetSpec<S>> {
        self.origin.as_ref()
    }

    pub fn to_raw(&self) -> RawParameters<S> {
        RawParameters {
            r: self.r().to_vec(),
            s: self.s().to_vec(),
            t: self.t().to_vec(),
            m: self.m,
            n: self.n,
        }
    }

    /// The same parameters at another truncation order. Works when the
    /// parameters came from a preset or the stored windows are long enough.
    pub fn with_order(&self, n: usize) -> Result<Self> {
        if let Some(spec) = &self.origin {
            if let Ok(p) = preset(spec, self.m, n) {
                return Ok(p);
            }
        }
        if self.r.len() >= n && self.s.len() >= n && self.t.len() >= n {
            let mut p = validate_params(RawParameters {
                r: self.r.clone(),
                s: self.s.clone(),
                t: self.t.clone(),
                m: self.m,
                n,
            })?;
            p.origin = self.origin.clone();
            return Ok(p);
        }
        Err(Error::CannotExtend("parameter windows"))
    }

    pub fn with_m(&self, m: usize) -> Self {
        ParameterTriple { m, ..self.clone() }
    }
}

fn alpha_in_unit_interval<S: Scalar>(alpha: &S) -> Result<Rational> {
    let a = alpha.to_rational();
    if a <= Rational::zero() || a >= Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(a)
}

fn short(name: &str, n: usize) -> Error {
    Error::InvalidParameter(format!("preset sequence {name} has fewer than {n} terms"))
}

/// Builds the parameters of one of the named reductions.
///
/// Quantities involving factorials are computed exactly and converted into
/// the backend afterwards. The lambda preset always uses `m = 1`.
pub fn preset<S: Scalar>(spec: &PresetSpec<S>, m: usize, n: usize) -> Result<ParameterTriple<S>> {
    let ones = || vec![S::one(); n];
    let (r, s, t, m) = match spec {
        PresetSpec::Uv { u, v } => {
            let u = u.take(n).ok_or_else(|| short("u", n))?;
            let v = v.take(n).ok_or_else(|| short("v", n))?;
            if let Some(i) = u.iter().position(|x| x.is_zero()) {
                return Err(Error::InvalidParameter(format!("u[{i}] = 0")));
            }
            let r = u.into_iter().map(|x| S::one() / x).collect();
            (r, ones(), v, m)
        }
        PresetSpec::Euler { alpha } => {
            let a = alpha_in_unit_interval(alpha)?;
            let b = Rational::one() - a.clone();
            let mut r = Vec::with_capacity(n);
            let mut s = Vec::with_capacity(n);
            let mut t = Vec::with_capacity(n);
            for k in 0..n {
                let fact = Rational::from_integer(factorial(k));
                r.push(S::from_rational(&(Rational::one() / fact.clone())));
                t.push(S::from_rational(&(powi(&a, k) / fact.clone())));
                s.push(S::from_rational(&(powi(&b, k) / fact)));
            }
            (r, s, t, m)
        }
        PresetSpec::Aydin { alpha } => {
            let a = alpha_in_unit_interval(alpha)?;
            let r = (0..n).map(|k| S::from_i64(k as i64 + 1)).collect();
            let t = (0..n)
                .map(|k| S::from_rational(&(Rational::one() + powi(&a, k))))
                .collect();
            (r, ones(), t, m)
        }
        PresetSpec::Lambda { lambda } => {
            let l = lambda.take(n).ok_or_else(|| short("lambda", n))?;
            if let Some(i) = l.iter().position(|x| x.is_zero()) {
                return Err(Error::InvalidParameter(format!("lambda[{i}] = 0")));
            }
            let increasing = l.windows(2).all(|w| w[1] > w[0]);
            let decreasing = l.windows(2).all(|w| w[1] < w[0]);
            if !(increasing || decreasing) {
                return Err(Error::InvalidParameter(
                    "lambda must be strictly monotone".into(),
                ));
            }
            let t = (0..n)
                .map(|k| {
                    if k == 0 {
                        l[0].clone()
                    } else {
                        l[k].clone() - l[k - 1].clone()
                    }
                })
                .collect();
            (l, ones(), t, 1)
        }
        PresetSpec::Identity => {
            let mut s = vec![S::zero(); n];
            if n > 0 {
                s[0] = S::one();
            }
            (ones(), s, ones(), m)
        }
    };
    let mut p = validate_params(RawParameters { r, s, t, m, n })?;
    p.origin = Some(spec.clone());
    Ok(p)
}
