//! Brjuno series `B_f^{(α)}(x) = Σ_{n≥0} β_{n−1} f(x_n)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::cf::{self, CfExpansion};
use crate::error::{Error, Result};
use crate::input::RealInput;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum SeriesFunction {
    /// `ln(1/x)`
    NegLog,
    /// `x^{−ν}`, `ν ≥ 0`
    Power(f64),
    /// `x^{−ν} |ln x|^μ`
    LogPower { nu: f64, mu: f64 },
    Custom {
        name: String,
        eval: Evaluator,
        /// `lim_{x→0⁺} f(x)` when it exists.
        at_zero: Option<f64>,
        /// Supremum over `(0, α]` when known.
        sup: Option<f64>,
    },
}

impl fmt::Debug for SeriesFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl SeriesFunction {
    pub fn power(nu: f64) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::Domain(format!("power exponent {nu} must be >= 0")));
        }
        Ok(SeriesFunction::Power(nu))
    }

    pub fn log_power(nu: f64, mu: f64) -> Result<Self> {
        if !(nu >= 0.0) || !nu.is_finite() || !mu.is_finite() {
            return Err(Error::Domain(format!("log_power({nu}, {mu}) not admissible")));
        }
        if mu < 0.0 && nu == 0.0 {
            return Err(Error::Domain("log_power with mu < 0 needs nu > 0".into()));
        }
        Ok(SeriesFunction::LogPower { nu, mu })
    }

    pub fn custom(name: &str, eval: impl Fn(f64) -> f64 + Send + Sync + 'static, at_zero: Option<f64>, sup: Option<f64>) -> Self {
        SeriesFunction::Custom {
            name: name.to_string(),
            eval: Arc::new(eval),
            at_zero,
            sup,
        }
    }

    pub fn name(&self) -> String {
        match self {
            SeriesFunction::NegLog => "neg_log".into(),
            SeriesFunction::Power(nu) => format!("power({nu})"),
            SeriesFunction::LogPower { nu, mu } => format!("log_power({nu},{mu})"),
            SeriesFunction::Custom { name, .. } => name.clone(),
        }
    }

    /// `f(x)` for `x ∈ (0, 1)`.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            SeriesFunction::NegLog => -x.ln(),
            SeriesFunction::Power(nu) => x.powf(-nu),
            SeriesFunction::LogPower { nu, mu } => x.powf(-nu) * x.ln().abs().powf(*mu),
            SeriesFunction::Custom { eval, .. } => eval(x),
        }
    }

    /// Finite limit at `0⁺`, if any.
    pub fn at_zero(&self) -> Option<f64> {
        match self {
            SeriesFunction::NegLog => None,
            SeriesFunction::Power(nu) => (*nu == 0.0).then_some(1.0),
            SeriesFunction::LogPower { nu, mu } => (*nu == 0.0 && *mu == 0.0).then_some(1.0),
            SeriesFunction::Custom { at_zero, .. } => *at_zero,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.at_zero().is_some()
    }

    fn known_sup(&self) -> Option<f64> {
        match self {
            SeriesFunction::Custom { sup, .. } => *sup,
            _ => self.at_zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    /// Summed in closed form over the detected period.
    Exact,
    /// `C₁λⁿ` envelope from the computed prefix.
    Heuristic,
    /// Series terminated; nothing beyond the partial sum.
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrjunoEval {
    pub value: f64,
    pub partial_sum: f64,
    pub tail_bound: f64,
    /// Uncertainty of `value` itself.
    pub error_bound: f64,
    pub depth: usize,
    #[serde(serialize_with = "ser_rational")]
    pub alpha: BigRational,
    pub diverged: bool,
    pub tail: TailKind,
    pub truncated: bool,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl BrjunoEval {
    pub fn is_finite(&self) -> bool {
        !self.diverged && self.value.is_finite()
    }
}

fn neumaier(terms: impl IntoIterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for t in terms {
        let u = s + t;
        if s.abs() >= t.abs() {
            c += (s - u) + t;
        } else {
            c += (t - u) + s;
        }
        s = u;
    }
    s + c
}

/// `β_{n−1}` with `β_{−1} = 1`.
fn beta_prev(e: &CfExpansion, n: usize) -> f64 {
    if n == 0 {
        1.0
    } else {
        e.beta[n - 1]
    }
}

/// Sums the series over a computed expansion.
pub fn series_from_expansion(e: &CfExpansion, f: &SeriesFunction) -> BrjunoEval {
    let mut out = BrjunoEval {
        value: 0.0,
        partial_sum: 0.0,
        tail_bound: 0.0,
        error_bound: 0.0,
        depth: e.depth(),
        alpha: e.alpha.clone(),
        diverged: false,
        tail: TailKind::None,
        truncated: e.truncated,
    };
    if let Some(t) = e.terminated_at {
        out.partial_sum = neumaier((0..t).map(|n| beta_prev(e, n) * f.eval(e.x[n])));
        match f.at_zero() {
            Some(f0) => {
                out.partial_sum += beta_prev(e, t) * f0;
                out.value = out.partial_sum;
                out.error_bound = 8.0 * f64::EPSILON * (t as f64 + 1.0) * out.value.abs();
            }
            None => {
                out.value = f64::INFINITY;
                out.tail_bound = f64::INFINITY;
                out.error_bound = f64::INFINITY;
                out.diverged = true;
            }
        }
        return out;
    }
    let n_max = e.depth();
    let terms: Vec<f64> = (0..=n_max).map(|n| beta_prev(e, n) * f.eval(e.x[n])).collect();
    out.partial_sum = neumaier(terms.iter().copied());
    let rounding = 8.0 * f64::EPSILON * (n_max as f64 + 1.0) * out.partial_sum.abs();

    if let Some((s, l)) = e.period.filter(|&(s, l)| s + l <= n_max) {
        let x_at = |n: usize| e.x[s + (n - s) % l];
        let period_product: f64 = (s..s + l).map(|i| e.x[i]).product();
        let mut b = e.beta[n_max];
        let mut block = Vec::with_capacity(l);
        for n in n_max + 1..=n_max + l {
            let xn = x_at(n);
            block.push(b * f.eval(xn));
            b *= xn;
        }
        let tail = neumaier(block) / (1.0 - period_product);
        out.value = out.partial_sum + tail;
        out.tail_bound = tail.abs() * (1.0 + 1e-12);
        out.error_bound = rounding + 8.0 * f64::EPSILON * (l as f64 + 2.0) * tail.abs() / (1.0 - period_product);
        out.tail = TailKind::Exact;
        return out;
    }

    let lam = cf::lambda(&e.alpha);
    let c1 = cf::beta_growth_check(e).map(|g| g.c1).unwrap_or(1.0);
    let observed = (0..=n_max).map(|n| f.eval(e.x[n])).fold(0.0f64, f64::max);
    let sup = f.known_sup().unwrap_or(observed).max(observed);
    let envelope = (c1 * lam.powi(n_max as i32)).max(e.beta[n_max]);
    out.tail_bound = envelope * sup / (1.0 - lam);
    out.value = out.partial_sum;
    out.error_bound = out.tail_bound + rounding;
    out.tail = TailKind::Heuristic;
    out
}

pub fn brjuno_series(x: &RealInput, f: &SeriesFunction, alpha: &BigRational, depth: usize) -> Result<BrjunoEval> {
    if depth < 1 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    let e = cf::expand(x, alpha, depth)?;
    Ok(series_from_expansion(&e, f))
}

/// `B(x)`: `α = 1`, `f = ln(1/x)`.
pub fn brjuno_b(x: &RealInput, depth: usize) -> Result<BrjunoEval> {
    brjuno_series(x, &SeriesFunction::NegLog, &BigRational::one(), depth)
}

/// `Bᵉ(x)`: `α = 1/2`, `f = ln(1/x)`.
pub fn brjuno_be(x: &RealInput, depth: usize) -> Result<BrjunoEval> {
    brjuno_series(x, &SeriesFunction::NegLog, &half(), depth)
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `B₋(x) = ½ x ln(1/x − 1)` on `(0, 1/2]`.
pub fn odd_part_closed_form(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 0.5) {
        return Err(Error::Domain(format!("odd part needs 0 < x <= 1/2, got {x}")));
    }
    Ok(0.5 * x * (1.0 / x - 1.0).ln())
}

/// Residuals of the even/odd decomposition of `B_f^{(1)}` at `x ∈ (0, 1/2]`.
#[derive(Clone, Debug, Serialize)]
pub struct EvenOddResiduals {
    /// `|B₋(x) − ½(f(x) − f(1−x) − (1−x) f(x/(1−x)))|`
    pub odd: f64,
    /// `|B₊(x) − x B₊(1/x) − ½G(x)|`
    pub even: f64,
    /// Sum of the tail bounds of every series involved.
    pub tail_bound: f64,
    /// Sum of the value uncertainties of every series involved.
    pub error_bound: f64,
}

pub fn even_odd_check(x: &RealInput, f: &SeriesFunction, depth: usize) -> Result<EvenOddResiduals> {
    let xv = x.to_f64();
    if !(xv > 0.0 && xv <= 0.5) {
        return Err(Error::Domain(format!("even/odd check needs 0 < x <= 1/2, got {xv}")));
    }
    let one = BigRational::one();
    let eval = |y: &RealInput| brjuno_series(y, f, &one, depth);
    let inv = x.recip()?;
    let bx = eval(x)?;
    let bmx = eval(&x.neg())?;
    let binv = eval(&inv)?;
    let bminv = eval(&inv.neg())?;
    let all = [&bx, &bmx, &binv, &bminv];
    if all.iter().any(|b| !b.is_finite()) {
        return Err(Error::Domain("even/odd check needs an irrational point".into()));
    }
    let fx = f.eval(xv);
    let f1 = f.eval(1.0 - xv);
    let fr = f.eval(x.x_over_one_minus_x()?.to_f64());
    let odd_pred = 0.5 * (fx - f1 - (1.0 - xv) * fr);
    let b_minus = 0.5 * (bx.value - bmx.value);
    let b_plus = 0.5 * (bx.value + bmx.value);
    let b_plus_inv = 0.5 * (binv.value + bminv.value);
    let b_minus_inv = 0.5 * (binv.value - bminv.value);
    let g = fx + f1 + (1.0 - xv) * fr + 2.0 * xv * b_minus_inv;
    Ok(EvenOddResiduals {
        odd: (b_minus - odd_pred).abs(),
        even: (b_plus - xv * b_plus_inv - 0.5 * g).abs(),
        tail_bound: all.iter().map(|b| b.tail_bound).sum(),
        error_bound: all.iter().map(|b| b.error_bound).sum::<f64>() + 64.0 * f64::EPSILON * (1.0 + fx.abs() + bx.value.abs()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BnuEval {
    pub eval: BrjunoEval,
    pub nu: f64,
    /// `Σ_{n≤N} q_n^{−1−ν} β_n^{−ν}` over the same indices.
    pub bracket: f64,
    /// Partial sum of `B_ν` over the same indices as `bracket`.
    pub partial: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// `B_ν(x) = Σ β_{n−1} x_n^{−ν}` with the convergent bracket.
pub fn bnu_series(x: &RealInput, nu: f64, depth: usize) -> Result<BnuEval> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("nu must be positive, got {nu}")));
    }
    let f = SeriesFunction::power(nu)?;
    let e = cf::expand(x, &BigRational::one(), depth)?;
    let eval = series_from_expansion(&e, &f);
    let last = match e.terminated_at {
        Some(t) => t.saturating_sub(1),
        None => e.depth(),
    };
    let has_terms = e.terminated_at != Some(0);
    let (bracket, partial) = if has_terms {
        let br = neumaier((0..=last).map(|n| (-(1.0 + nu) * cf::log_bigint(&e.q[n]) - nu * e.beta[n].ln()).exp()));
        let pa = neumaier((0..=last).map(|n| beta_prev(&e, n) * e.x[n].powf(-nu)));
        (br, pa)
    } else {
        (0.0, 0.0)
    };
    let slack = 1e-12 * bracket.abs();
    Ok(BnuEval {
        lower_ok: 2f64.powf(-nu) * bracket <= partial + slack,
        upper_ok: partial <= bracket + slack,
        eval,
        nu,
        bracket,
        partial,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DiophantineEstimate {
    pub tau_hat: f64,
    pub c_hat: f64,
    pub slope: f64,
    pub intercept: f64,
    /// `(n, ln β_n / ln β_{n−1} − 1)`
    pub tau_n: Vec<(usize, f64)>,
}

/// Least-squares fit of `ln β_n` against `ln β_{n−1}` over `n ≥ 2`.
pub fn diophantine_estimate(e: &CfExpansion) -> Result<DiophantineEstimate> {
    if e.alpha != BigRational::one() {
        return Err(Error::Domain("diophantine_estimate needs an alpha = 1 expansion".into()));
    }
    let pts: Vec<(usize, f64, f64)> = (2..=e.depth())
        .filter(|&n| e.beta[n] > 0.0 && e.beta[n - 1] > 0.0)
        .map(|n| (n, e.beta[n - 1].ln(), e.beta[n].ln()))
        .collect();
    if e.depth() < 5 || pts.len() < 2 {
        return Err(Error::InsufficientDepth { need: 5, have: e.depth() });
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.2).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.1 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.1 - mx) * (p.2 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 1.0 };
    let intercept = my - slope * mx;
    let tau_hat = (slope - 1.0).max(0.0);
    let c_hat = pts
        .iter()
        .map(|p| (p.2 - (1.0 + tau_hat) * p.1).exp())
        .fold(f64::INFINITY, f64::min);
    Ok(DiophantineEstimate {
        tau_hat,
        c_hat,
        slope,
        intercept,
        tau_n: pts.iter().map(|p| (p.0, p.2 / p.1 - 1.0)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::QuadraticSurd;

    fn golden() -> RealInput {
        RealInput::Surd(QuadraticSurd::golden())
    }

    #[test]
    fn golden_closed_forms() {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let b = brjuno_b(&golden(), 10).unwrap();
        assert_eq!(b.tail, TailKind::Exact);
        assert!((b.value - (1.0 / g).ln() / (1.0 - g)).abs() < 1e-14);
        assert!((b.value - 1.2598289).abs() < 1e-6);
        let be = brjuno_be(&golden(), 10).unwrap();
        assert!((be.value - 2.0 * (1.0 / g).ln() / (1.0 - g * g)).abs() < 1e-14);
        let bn = bnu_series(&golden(), 0.5, 30).unwrap();
        assert!((bn.eval.value - g.powf(-0.5) / (1.0 - g)).abs() < 1e-13);
        let s2 = RealInput::Surd(QuadraticSurd::metallic(2).unwrap());
        let b = brjuno_b(&s2, 10).unwrap();
        let r = 2f64.sqrt();
        assert!((b.value - (r + 1.0).ln() / (2.0 - r)).abs() < 1e-13);
    }

    #[test]
    fn rationals_diverge_under_neg_log() {
        for (p, q) in [(1, 2), (3, 7)] {
            let b = brjuno_b(&RealInput::rational(p, q), 20).unwrap();
            assert!(b.diverged && b.value.is_infinite());
        }
        assert!(brjuno_be(&RealInput::rational(2, 5), 20).unwrap().diverged);
        let one = SeriesFunction::power(0.0).unwrap();
        let b = brjuno_series(&RealInput::rational(3, 7), &one, &BigRational::one(), 20).unwrap();
        assert!(!b.diverged && b.value.is_finite());
        // 3/7 = [0; 2, 3]: 1 + 3/7 + (3/7)(1/3) = 11/7
        assert!((b.value - 11.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn odd_part_examples() {
        assert_eq!(odd_part_closed_form(0.5).unwrap(), 0.0);
        let g2 = (3.0 - 5f64.sqrt()) / 2.0;
        assert!((odd_part_closed_form(g2).unwrap() - 0.0919033).abs() < 1e-6);
        assert!(odd_part_closed_form(0.0).is_err());
        assert!(odd_part_closed_form(0.6).is_err());
        assert!(odd_part_closed_form(1e-12).unwrap() < 1e-10);
    }

    #[test]
    fn even_odd_golden_square() {
        let x = RealInput::parse("(3-sqrt(5))/2").unwrap();
        let r = even_odd_check(&x, &SeriesFunction::NegLog, 40).unwrap();
        assert!(r.odd < 1e-10 && r.even < 1e-10, "{r:?}");
        let one = SeriesFunction::power(0.0).unwrap();
        let r = even_odd_check(&x, &one, 40).unwrap();
        assert!(r.odd <= r.tail_bound + 1e-12 && r.even <= r.tail_bound + 1e-12);
    }

    #[test]
    fn diophantine_examples() {
        let e = cf::expand(&golden(), &BigRational::one(), 40).unwrap();
        let d = diophantine_estimate(&e).unwrap();
        assert!(d.tau_hat < 1e-6, "{d:?}");
        let short = cf::expand(&golden(), &BigRational::one(), 3).unwrap();
        assert!(matches!(diophantine_estimate(&short), Err(Error::InsufficientDepth { .. })));
    }
}
