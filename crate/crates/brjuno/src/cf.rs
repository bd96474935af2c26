//! α-continued fractions.
//!
//! For `α ∈ [1/2, 1]` the expansion is `x = a_0 + ε_0 x_0` and
//! `1/x_n = a_{n+1} + ε_{n+1} x_{n+1}` with `[y]_α = ⌊y − α + 1⌋`,
//! `{y}_α = y − [y]_α ∈ [α − 1, α)` and `x_n = |{1/x_{n−1}}_α|`.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::input::RealInput;
use crate::surd::QuadraticSurd;

/// Minimum number of significant bits a float remainder must keep.
pub const MIN_REMAINING_BITS: f64 = 8.0;

/// Number systems the Gauss map can run on.
pub trait CfField: Clone + Debug {
    fn floor_int(&self) -> BigInt;
    fn add_rational(&self, r: &BigRational) -> Self;
    fn add_integer(&self, k: &BigInt) -> Self;
    fn mul_integer(&self, k: &BigInt) -> Self;
    fn recip(&self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl CfField for BigRational {
    fn floor_int(&self) -> BigInt {
        self.floor().to_integer()
    }
    fn add_rational(&self, r: &BigRational) -> Self {
        self + r
    }
    fn add_integer(&self, k: &BigInt) -> Self {
        self + BigRational::from_integer(k.clone())
    }
    fn mul_integer(&self, k: &BigInt) -> Self {
        self * BigRational::from_integer(k.clone())
    }
    fn recip(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| num_rational::Ratio::recip(self))
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl CfField for QuadraticSurd {
    fn floor_int(&self) -> BigInt {
        self.floor()
    }
    fn add_rational(&self, r: &BigRational) -> Self {
        QuadraticSurd::add_rational(self, r)
    }
    fn add_integer(&self, k: &BigInt) -> Self {
        QuadraticSurd::add_integer(self, k)
    }
    fn mul_integer(&self, k: &BigInt) -> Self {
        QuadraticSurd::mul_integer(self, k)
    }
    fn recip(&self) -> Option<Self> {
        QuadraticSurd::recip(self).ok()
    }
    fn neg(&self) -> Self {
        QuadraticSurd::neg(self)
    }
    fn is_zero(&self) -> bool {
        QuadraticSurd::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        QuadraticSurd::is_negative(self)
    }
    fn to_f64(&self) -> f64 {
        QuadraticSurd::to_f64(self)
    }
}

impl CfField for f64 {
    fn floor_int(&self) -> BigInt {
        BigInt::from_f64(f64::floor(*self)).unwrap_or_default()
    }
    fn add_rational(&self, r: &BigRational) -> Self {
        self + ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn add_integer(&self, k: &BigInt) -> Self {
        self + ToPrimitive::to_f64(k).unwrap_or(f64::NAN)
    }
    fn mul_integer(&self, k: &BigInt) -> Self {
        self * ToPrimitive::to_f64(k).unwrap_or(f64::NAN)
    }
    fn recip(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// `α = p/q` after checking `α ∈ [1/2, 1]`.
pub fn alpha(p: i64, q: i64) -> Result<BigRational> {
    let a = BigRational::new(p.into(), q.into());
    check_alpha(&a)?;
    Ok(a)
}

pub fn check_alpha(alpha: &BigRational) -> Result<()> {
    let half = BigRational::new(1.into(), 2.into());
    if *alpha < half || *alpha > BigRational::one() {
        return Err(Error::Domain(format!("alpha = {alpha} outside [1/2, 1]")));
    }
    Ok(())
}

/// `([x]_α, {x}_α)`.
pub fn modified_parts<X: CfField>(x: &X, alpha: &BigRational) -> (BigInt, X) {
    let shift = BigRational::one() - alpha;
    let k = x.add_rational(&shift).floor_int();
    let frac = x.add_integer(&-&k);
    (k, frac)
}

/// One step of the map `A_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct Step<X> {
    pub a: BigInt,
    pub eps: i8,
    pub x_next: X,
}

/// `a = [1/x]_α`, `ε = sign {1/x}_α` (+1 at zero), `x_next = |{1/x}_α|`.
pub fn gauss_step<X: CfField>(x: &X, alpha: &BigRational) -> Result<Step<X>> {
    let inv = x
        .recip()
        .ok_or_else(|| Error::Domain("gauss_step at x = 0".into()))?;
    let (a, frac) = modified_parts(&inv, alpha);
    let eps = if frac.is_negative() { -1 } else { 1 };
    Ok(Step { a, eps, x_next: frac.abs() })
}

mod bigint_vec {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|n| n.to_string()))
    }
}

mod rational_str {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }
}

/// α-expansion record, indices `0..=N`.
#[derive(Clone, Debug, Serialize)]
pub struct CfExpansion {
    #[serde(serialize_with = "rational_str::serialize")]
    pub alpha: BigRational,
    #[serde(serialize_with = "bigint_vec::serialize")]
    pub a: Vec<BigInt>,
    pub eps: Vec<i8>,
    pub x: Vec<f64>,
    #[serde(serialize_with = "bigint_vec::serialize")]
    pub p: Vec<BigInt>,
    #[serde(serialize_with = "bigint_vec::serialize")]
    pub q: Vec<BigInt>,
    pub beta: Vec<f64>,
    pub terminated_at: Option<usize>,
    /// `(s, L)` with `x_{s+L} = x_s`, first recurrence of the exact remainder.
    pub period: Option<(usize, usize)>,
    /// Float input ran out of precision before the requested depth.
    pub truncated: bool,
    /// Significant bits left in each remainder (float inputs only).
    pub remaining_bits: Option<Vec<f64>>,
}

impl CfExpansion {
    /// Largest computed index.
    pub fn depth(&self) -> usize {
        self.a.len() - 1
    }

    pub fn convergent(&self, n: usize) -> BigRational {
        BigRational::new(self.p[n].clone(), self.q[n].clone())
    }

    fn p_prev(&self, n: usize) -> BigInt {
        if n == 0 {
            BigInt::one()
        } else {
            self.p[n - 1].clone()
        }
    }

    fn q_prev(&self, n: usize) -> BigInt {
        if n == 0 {
            BigInt::zero()
        } else {
            self.q[n - 1].clone()
        }
    }

    /// `(p_n + p_{n−1} ε_n x_n)/(q_n + q_{n−1} ε_n x_n)` in double precision.
    pub fn reconstruct(&self, n: usize) -> f64 {
        let t = self.eps[n] as f64 * self.x[n];
        let (pn, qn) = (self.p[n].to_f64().unwrap(), self.q[n].to_f64().unwrap());
        let (pm, qm) = (self.p_prev(n).to_f64().unwrap(), self.q_prev(n).to_f64().unwrap());
        (pn + pm * t) / (qn + qm * t)
    }

    /// Indices `n` with both `β_n > 0` and `q_{n+1}` computed.
    pub fn sandwich_indices(&self) -> std::ops::Range<usize> {
        0..self.terminated_at.unwrap_or(self.depth())
    }

    /// `β_n q_{n+1}`.
    pub fn beta_q_next(&self, n: usize) -> f64 {
        self.beta[n] * self.q[n + 1].to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Exact expansion over a field with hashable canonical remainders.
fn expand_exact<X>(x: &X, alpha: &BigRational, max_depth: usize, detect_period: bool) -> CfExpansion
where
    X: CfField + Eq + Hash,
{
    let (a0, frac) = modified_parts(x, alpha);
    let mut exp = CfExpansion {
        alpha: alpha.clone(),
        a: vec![a0.clone()],
        eps: vec![if frac.is_negative() { -1 } else { 1 }],
        x: vec![],
        p: vec![a0],
        q: vec![BigInt::one()],
        beta: vec![],
        terminated_at: None,
        period: None,
        truncated: false,
        remaining_bits: None,
    };
    let mut rem = frac.abs();
    exp.x.push(rem.to_f64());
    exp.beta.push(rem.to_f64());
    let mut seen: HashMap<X, usize> = HashMap::new();
    if detect_period {
        seen.insert(rem.clone(), 0);
    }
    if rem.is_zero() {
        exp.terminated_at = Some(0);
        return exp;
    }
    for n in 1..=max_depth {
        let step = gauss_step(&rem, alpha).expect("nonzero remainder");
        let eps_prev = BigInt::from(exp.eps[n - 1]);
        let pn = &step.a * &exp.p[n - 1] + &eps_prev * exp.p_prev(n - 1);
        let qn = &step.a * &exp.q[n - 1] + &eps_prev * exp.q_prev(n - 1);
        let beta = x.mul_integer(&qn).add_integer(&-&pn).abs().to_f64();
        exp.a.push(step.a);
        exp.eps.push(step.eps);
        exp.p.push(pn);
        exp.q.push(qn);
        exp.beta.push(beta);
        rem = step.x_next;
        exp.x.push(rem.to_f64());
        if rem.is_zero() {
            exp.terminated_at = Some(n);
            break;
        }
        if detect_period && exp.period.is_none() {
            if let Some(&s) = seen.get(&rem) {
                exp.period = Some((s, n - s));
            } else {
                seen.insert(rem.clone(), n);
            }
        }
    }
    exp
}

fn interval_bits(lo: &BigRational, hi: &BigRational, mid: &BigRational) -> f64 {
    let width = CfField::to_f64(&Signed::abs(&(hi - lo)));
    let m = CfField::to_f64(&Signed::abs(mid));
    if width == 0.0 {
        return f64::INFINITY;
    }
    if m == 0.0 {
        return 0.0;
    }
    (m / width).log2()
}

/// Lockstep expansion of the endpoints and midpoint of a rational interval.
/// A digit is accepted only when both endpoints produce it.
fn expand_interval(mid: &BigRational, radius: &BigRational, alpha: &BigRational, max_depth: usize) -> CfExpansion {
    let mut exp = expand_exact(mid, alpha, 0, false);
    exp.x.clear();
    exp.beta.clear();
    let lo0 = mid - radius;
    let hi0 = mid + radius;
    let (alo, flo) = modified_parts(&lo0, alpha);
    let (ahi, fhi) = modified_parts(&hi0, alpha);
    let (amid, fmid) = modified_parts(mid, alpha);
    let sign = |f: &BigRational| if Signed::is_negative(f) { -1i8 } else { 1 };
    let mut bits = vec![];
    if alo != ahi || sign(&flo) != sign(&fhi) || alo != amid {
        exp.truncated = true;
        exp.x.push(CfField::to_f64(&CfField::abs(&fmid)));
        exp.beta.push(CfField::to_f64(&CfField::abs(&fmid)));
        bits.push(0.0);
        exp.remaining_bits = Some(bits);
        return exp;
    }
    let (mut lo, mut hi, mut m) = (CfField::abs(&flo), CfField::abs(&fhi), CfField::abs(&fmid));
    exp.x.push(CfField::to_f64(&m));
    exp.beta.push(CfField::to_f64(&m));
    bits.push(interval_bits(&lo, &hi, &m));
    if Zero::is_zero(&m) {
        exp.terminated_at = Some(0);
        exp.remaining_bits = Some(bits);
        return exp;
    }
    for n in 1..=max_depth {
        if Zero::is_zero(&lo) || Zero::is_zero(&hi) {
            exp.truncated = true;
            break;
        }
        let (slo, shi, smid) = match (gauss_step(&lo, alpha), gauss_step(&hi, alpha), gauss_step(&m, alpha)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => {
                exp.truncated = true;
                break;
            }
        };
        let nb = interval_bits(&slo.x_next, &shi.x_next, &smid.x_next);
        if slo.a != shi.a || slo.eps != shi.eps || slo.a != smid.a || slo.eps != smid.eps || nb < MIN_REMAINING_BITS {
            exp.truncated = true;
            break;
        }
        let eps_prev = BigInt::from(exp.eps[n - 1]);
        let pn = &smid.a * &exp.p[n - 1] + &eps_prev * exp.p_prev(n - 1);
        let qn = &smid.a * &exp.q[n - 1] + &eps_prev * exp.q_prev(n - 1);
        let beta = CfField::to_f64(&CfField::abs(&(mid * BigRational::from_integer(qn.clone()) - BigRational::from_integer(pn.clone()))));
        exp.a.push(smid.a);
        exp.eps.push(smid.eps);
        exp.p.push(pn);
        exp.q.push(qn);
        exp.beta.push(beta);
        lo = slo.x_next;
        hi = shi.x_next;
        m = smid.x_next;
        exp.x.push(CfField::to_f64(&m));
        bits.push(nb);
        if Zero::is_zero(&m) {
            exp.terminated_at = Some(n);
            break;
        }
    }
    exp.remaining_bits = Some(bits);
    exp
}

/// α-expansion of `x` up to index `max_depth`.
pub fn expand(x: &RealInput, alpha: &BigRational, max_depth: usize) -> Result<CfExpansion> {
    check_alpha(alpha)?;
    if max_depth < 1 {
        return Err(Error::Domain("max_depth must be at least 1".into()));
    }
    Ok(match x {
        RealInput::Rational(r) => expand_exact(r, alpha, max_depth, false),
        RealInput::Surd(s) => expand_exact(s, alpha, max_depth, true),
        RealInput::Float { value, bits } => {
            let scale = BigRational::new(BigInt::one(), BigInt::one() << (*bits as usize));
            let mag = if Zero::is_zero(value) { BigRational::one() } else { Signed::abs(value) };
            expand_interval(value, &(mag * scale), alpha, max_depth)
        }
    })
}

/// `λ(α)`: `(√5 − 1)/2` for `α > (√5 − 1)/2`, else `√2 − 1`.
pub fn lambda(alpha: &BigRational) -> f64 {
    // α > (√5−1)/2  ⇔  (2p + q)² > 5q²
    let (p, q) = (alpha.numer(), alpha.denom());
    let lhs: BigInt = (BigInt::from(2) * p + q).pow(2);
    let rhs: BigInt = BigInt::from(5) * q * q;
    if lhs > rhs {
        (5f64.sqrt() - 1.0) / 2.0
    } else {
        2f64.sqrt() - 1.0
    }
}

/// Fitted constants of `β_n ≤ C₁λⁿ` and `q_n ≥ C₂λ⁻ⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub c1: f64,
    pub c2: f64,
    pub lambda_used: f64,
    pub ok: bool,
}

impl GrowthFit {
    /// `β_n ≤ C₁λⁿ` checked in the log domain with absolute slack `tol`.
    pub fn beta_bound_holds(&self, n: usize, beta: f64, tol: f64) -> bool {
        beta <= 0.0 || beta.ln() - n as f64 * self.lambda_used.ln() <= self.c1.ln() + tol
    }

    pub fn q_bound_holds(&self, n: usize, q: &BigInt, tol: f64) -> bool {
        log_bigint(q) + n as f64 * self.lambda_used.ln() >= self.c2.ln() - tol
    }
}

/// Natural logarithm of a positive big integer.
pub fn log_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift as usize).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Smallest constants consistent with the computed prefix.
pub fn beta_growth_check(e: &CfExpansion) -> Result<GrowthFit> {
    let lam = lambda(&e.alpha);
    if e.depth() < 2 && e.terminated_at.is_none() {
        return Err(Error::InsufficientDepth { need: 2, have: e.depth() });
    }
    let ll = lam.ln();
    let mut c1_log = f64::NEG_INFINITY;
    let mut c2_log = f64::INFINITY;
    for n in 0..=e.depth() {
        if e.beta[n] > 0.0 {
            c1_log = c1_log.max(e.beta[n].ln() - n as f64 * ll);
        }
        c2_log = c2_log.min(log_bigint(&e.q[n]) + n as f64 * ll);
    }
    let (c1, c2) = (c1_log.exp(), c2_log.exp());
    Ok(GrowthFit {
        c1,
        c2,
        lambda_used: lam,
        ok: c1.is_finite() && c2.is_finite() && c2 > 0.0,
    })
}

/// Folds `x = a_0 + ε_0/(a_1 + ε_1/(a_2 + …))` for a finite coefficient list.
pub fn fold_coefficients(a: &[BigInt], eps: &[i8]) -> Result<BigRational> {
    if a.is_empty() || eps.len() + 1 < a.len() {
        return Err(Error::Domain("need a_0..a_n and eps_0..eps_{n-1}".into()));
    }
    let mut acc = BigRational::from_integer(a[a.len() - 1].clone());
    for i in (0..a.len() - 1).rev() {
        if Zero::is_zero(&acc) {
            return Err(Error::Domain("zero partial denominator".into()));
        }
        acc = BigRational::from_integer(a[i].clone()) + BigRational::from_integer(eps[i].into()) / acc;
    }
    Ok(acc)
}

/// Regular continued fraction `[a_0; a_1, …]` folded to a rational.
pub fn from_regular_coefficients(a: &[u64]) -> BigRational {
    let a: Vec<BigInt> = a.iter().map(|&k| BigInt::from(k)).collect();
    let eps = vec![1i8; a.len()];
    fold_coefficients(&a, &eps).expect("positive coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn modified_parts_examples() {
        let one = alpha(1, 1).unwrap();
        let half = alpha(1, 2).unwrap();
        let (k, f) = modified_parts(&r(7, 10), &one);
        assert_eq!((k, f), (BigInt::zero(), r(7, 10)));
        let (k, f) = modified_parts(&r(2618, 1000), &half);
        assert_eq!(k, BigInt::from(3));
        assert_eq!(f, r(-382, 1000));
        let (k, f) = modified_parts(&r(-3, 10), &one);
        assert_eq!((k, f), (BigInt::from(-1), r(7, 10)));
        let (k, f) = modified_parts(&2.618f64, &half);
        assert_eq!(k, BigInt::from(3));
        assert!((f + 0.382).abs() < 1e-12);
    }

    #[test]
    fn gauss_step_examples() {
        let one = alpha(1, 1).unwrap();
        let half = alpha(1, 2).unwrap();
        let g = QuadraticSurd::golden();
        let s = gauss_step(&g, &one).unwrap();
        assert_eq!((s.a.clone(), s.eps), (BigInt::one(), 1));
        assert_eq!(s.x_next, g);
        let s = gauss_step(&g, &half).unwrap();
        assert_eq!((s.a.clone(), s.eps), (BigInt::from(2), -1));
        assert_eq!(s.x_next, QuadraticSurd::new(3, -1, 5, 2).unwrap());
        let s = gauss_step(&r(7, 10), &one).unwrap();
        assert_eq!((s.a.clone(), s.eps, s.x_next.clone()), (BigInt::one(), 1, r(3, 7)));
        assert!(gauss_step(&r(0, 1), &one).is_err());
    }

    #[test]
    fn expand_seven_tenths() {
        let e = expand(&RealInput::rational(7, 10), &alpha(1, 1).unwrap(), 10).unwrap();
        let a: Vec<i64> = e.a.iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(a, vec![0, 1, 2, 3]);
        assert_eq!(e.terminated_at, Some(3));
        assert_eq!(e.convergent(3), r(7, 10));
    }

    #[test]
    fn expand_golden_alpha_one() {
        let e = expand(&RealInput::Surd(QuadraticSurd::golden()), &alpha(1, 1).unwrap(), 50).unwrap();
        assert_eq!(e.depth(), 50);
        assert!(e.a[1..].iter().all(|v| v.is_one()));
        assert!(e.eps.iter().all(|&s| s == 1));
        assert_eq!(e.period, Some((0, 1)));
        let g = (5f64.sqrt() - 1.0) / 2.0;
        assert!(e.x.iter().all(|&v| (v - g).abs() < 1e-15));
    }

    #[test]
    fn expand_golden_alpha_half() {
        let e = expand(&RealInput::Surd(QuadraticSurd::golden()), &alpha(1, 2).unwrap(), 50).unwrap();
        assert_eq!(e.a[0], BigInt::one());
        assert!(e.a[1..].iter().all(|v| *v == BigInt::from(3)));
        assert!(e.eps.iter().all(|&s| s == -1));
        let g2 = (3.0 - 5f64.sqrt()) / 2.0;
        assert!(e.x.iter().all(|&v| (v - g2).abs() < 1e-15));
        assert_eq!(e.period, Some((0, 1)));
    }

    #[test]
    fn growth_check_golden() {
        let e = expand(&RealInput::Surd(QuadraticSurd::golden()), &alpha(1, 1).unwrap(), 40).unwrap();
        let fit = beta_growth_check(&e).unwrap();
        let g = (5f64.sqrt() - 1.0) / 2.0;
        assert!(fit.ok);
        assert!((fit.c1 - g).abs() < 1e-12);
        assert_eq!(fit.lambda_used, g);
        let e = expand(&RealInput::Surd(QuadraticSurd::golden()), &alpha(1, 2).unwrap(), 40).unwrap();
        let fit = beta_growth_check(&e).unwrap();
        assert!(fit.ok);
        assert_eq!(fit.lambda_used, 2f64.sqrt() - 1.0);
        let e = expand(&RealInput::rational(1, 2), &alpha(1, 1).unwrap(), 40).unwrap();
        assert!(beta_growth_check(&e).unwrap().ok);
    }

    #[test]
    fn float_expansion_truncates_honestly() {
        let x = RealInput::parse("0.6180339887498948482045868343656381177203@64").unwrap();
        let e = expand(&x, &alpha(1, 1).unwrap(), 200).unwrap();
        assert!(e.truncated);
        assert!(e.depth() > 20 && e.depth() < 50, "depth {}", e.depth());
        assert!(e.a[1..].iter().all(|v| v.is_one()));
        let bits = e.remaining_bits.as_ref().unwrap();
        assert!(bits.iter().all(|&b| b >= MIN_REMAINING_BITS));
        let more = RealInput::parse("0.6180339887498948482045868343656381177203@128").unwrap();
        let e2 = expand(&more, &alpha(1, 1).unwrap(), 200).unwrap();
        assert!(e2.depth() > e.depth() + 30);
    }

    #[test]
    fn lambda_thresholds() {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        assert_eq!(lambda(&r(1, 1)), g);
        assert_eq!(lambda(&r(7, 10)), g);
        assert_eq!(lambda(&r(618, 1000)), 2f64.sqrt() - 1.0);
        assert_eq!(lambda(&r(619, 1000)), g);
        assert_eq!(lambda(&r(1, 2)), 2f64.sqrt() - 1.0);
    }

    #[test]
    fn fold_round_trip() {
        let x = from_regular_coefficients(&[0, 1, 2, 3]);
        assert_eq!(x, r(7, 10));
    }
}
