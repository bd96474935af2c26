//! Lindstedt series of the semi-standard and standard maps.
//!
//! Both solve `u(φ + ρ) − 2u(φ) + u(φ − ρ) = K·g(φ + u(φ))` order by order
//! in `K`; the Fourier mode `ν` of the left side carries the small divisor
//! `γ_ν = 2(cos 2πνρ − 1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::input::RealInput;
use crate::scalar::Real;
use crate::series;

/// Complex number over a [`Real`] scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx { re: T::zero(), im: T::zero() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Cx::new(self.re.clone() + o.re.clone(), self.im.clone() + o.im.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Cx::new(self.re.clone() - o.re.clone(), self.im.clone() - o.im.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Cx::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Cx::new(self.re.clone() * s.clone(), self.im.clone() * s.clone())
    }

    /// Multiplication by `i·s`.
    pub fn mul_i(&self, s: &T) -> Self {
        Cx::new(-(self.im.clone() * s.clone()), self.re.clone() * s.clone())
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> T {
        (self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()).sqrt()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    SemiStandard,
    Standard,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SmallDivisor {
    pub nu: i64,
    pub value: f64,
}

/// `δ = νρ − round(νρ)`, or `None` when `νρ` is an integer (to the
/// precision of a float input).
fn nearest_offset<T: Real>(nu: i64, rho: &RealInput) -> Option<T> {
    let n = BigInt::from(nu);
    match rho {
        RealInput::Surd(s) => {
            let v = s.mul_integer(&n);
            let d = v.add_integer(&-v.round());
            if d.is_zero() {
                None
            } else {
                Some(d.to_real::<T>())
            }
        }
        RealInput::Rational(r) | RealInput::Float { value: r, .. } => {
            let v = r * BigRational::from_integer(n);
            let d = &v - v.round();
            let resolved = match rho {
                RealInput::Float { bits, .. } => {
                    // |νρ| 2^{-bits} is the uncertainty of νρ
                    let err = v.abs().to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(*bits as i32));
                    d.abs().to_f64().unwrap_or(0.0) > err
                }
                _ => !d.is_zero(),
            };
            if !resolved {
                return None;
            }
            Some(T::from_bigint(d.numer()) / T::from_bigint(d.denom()))
        }
    }
}

/// `2(cos 2πνρ − 1) = −4 sin²(πδ)` with `δ` the exact distance of `νρ` to
/// the nearest integer; `None` when it vanishes.
pub fn small_divisor_real<T: Real>(nu: i64, rho: &RealInput) -> Option<T> {
    let d = nearest_offset::<T>(nu, rho)?;
    let s = (T::pi() * d).sin();
    Some(-(T::from_i64(4) * s.clone() * s))
}

/// Small divisor evaluated at 128 bits and rounded.
pub fn small_divisor(nu: i64, rho: &RealInput) -> SmallDivisor {
    let value = small_divisor_real::<crate::Real128>(nu, rho).map(|v| v.to_f64()).unwrap_or(0.0);
    SmallDivisor { nu, value }
}

/// Semi-standard map series `u = Σ c_n wⁿ`, `w = K e^{2πiφ}`.
#[derive(Clone, Debug)]
pub struct SemiStandardSeries<T> {
    pub rho: RealInput,
    /// `c_1, …, c_K`.
    pub coeffs: Vec<Cx<T>>,
    /// `γ_1, …, γ_K`.
    pub divisors: Vec<T>,
}

/// Coefficients of `exp(A)` from those of `A` (`A_0 = 0`) through
/// `n E_n = Σ_{k=1}^{n} k A_k E_{n−k}`.
pub fn series_exp<T: Real>(a: &[Cx<T>], n_terms: usize) -> Vec<Cx<T>> {
    let mut e = vec![Cx::new(T::one(), T::zero())];
    for n in 1..n_terms {
        let mut s = Cx::zero();
        for k in 1..=n.min(a.len() - 1) {
            s = s.add(&a[k].mul(&e[n - k]).scale(&T::from_i64(k as i64)));
        }
        e.push(s.scale(&(T::one() / T::from_i64(n as i64))));
    }
    e
}

/// Solves `γ_n c_n = (4πi)⁻¹ [wⁿ](w exp(2πi Σ_{m<n} c_m w^m))`.
pub fn semi_standard_series<T: Real>(rho: &RealInput, order: usize) -> Result<SemiStandardSeries<T>> {
    if order < 1 {
        return Err(Error::Domain("order must be at least 1".into()));
    }
    let two_pi = T::from_i64(2) * T::pi();
    let inv_four_pi = T::one() / (T::from_i64(4) * T::pi());
    // A = 2πi S, E = exp(A), both indexed from w⁰
    let mut a: Vec<Cx<T>> = vec![Cx::zero()];
    let mut e: Vec<Cx<T>> = vec![Cx::new(T::one(), T::zero())];
    let mut coeffs = vec![];
    let mut divisors = vec![];
    for n in 1..=order {
        let gamma = small_divisor_real::<T>(n as i64, rho).ok_or(Error::SmallDivisorZero { order: n, mode: n as i64 })?;
        // E_{n−1}/(4πi γ_n) = −i E_{n−1}/(4π γ_n)
        let rhs = e[n - 1].mul_i(&-(inv_four_pi.clone() / gamma.clone()));
        a.push(rhs.mul_i(&two_pi));
        coeffs.push(rhs);
        divisors.push(gamma);
        // E_n = n⁻¹ Σ_{k=1}^{n} k A_k E_{n−k}
        let mut s = Cx::zero();
        for k in 1..=n {
            s = s.add(&a[k].mul(&e[n - k]).scale(&T::from_i64(k as i64)));
        }
        e.push(s.scale(&(T::one() / T::from_i64(n as i64))));
    }
    Ok(SemiStandardSeries { rho: rho.clone(), coeffs, divisors })
}

impl<T: Real> SemiStandardSeries<T> {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `ln|c_n|` for `n = 1..=K`.
    pub fn log_abs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm().ln().to_f64()).collect()
    }

    /// Root-test values `r_n = |c_n|^{−1/n}`.
    pub fn radius_estimates(&self) -> Vec<f64> {
        self.log_abs().iter().enumerate().map(|(i, l)| (-l / (i + 1) as f64).exp()).collect()
    }

    pub fn summary(&self) -> LindstedtSeries {
        LindstedtSeries {
            kind: MapKind::SemiStandard,
            rho: self.rho.to_string(),
            rho_value: self.rho.to_f64(),
            order: self.order(),
            bits: T::bits(),
            log_abs: self.log_abs(),
            radius_estimates: self.radius_estimates(),
        }
    }
}

/// Standard map series as a triangular table `u^{(k)}_ν`, `|ν| ≤ k`.
#[derive(Clone, Debug)]
pub struct StandardMapSeries<T> {
    pub rho: RealInput,
    /// `table[k − 1][ν + k]`.
    pub table: Vec<Vec<Cx<T>>>,
    /// Largest relative mode-0 right-hand side met.
    pub max_mode0: f64,
}

/// `(f ⋆ g)` for trigonometric polynomials stored as `[ν + deg]`.
fn convolve<T: Real>(f: &[Cx<T>], g: &[Cx<T>]) -> Vec<Cx<T>> {
    let mut out = vec![Cx::zero(); f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        if x.re.is_zero() && x.im.is_zero() {
            continue;
        }
        for (j, y) in g.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Order-by-order solution of the standard map conjugacy equation with
/// forcing `(2π)⁻¹ sin 2π(φ + u)`. The mode-0 right-hand side must vanish
/// within `tol` relative to the largest mode.
pub fn standard_map_series<T: Real>(rho: &RealInput, order: usize, tol: f64) -> Result<StandardMapSeries<T>> {
    if order < 1 {
        return Err(Error::Domain("order must be at least 1".into()));
    }
    let two_pi = T::from_i64(2) * T::pi();
    let one = Cx::new(T::one(), T::zero());
    // X = exp(2πiu), Y = exp(−2πiu), degree k stored with 2k + 1 modes
    let mut x: Vec<Vec<Cx<T>>> = vec![vec![one.clone()]];
    let mut y: Vec<Vec<Cx<T>>> = vec![vec![one]];
    let mut table: Vec<Vec<Cx<T>>> = vec![];
    let mut divisors: Vec<T> = vec![];
    let mut max_mode0 = 0.0f64;
    let scale = T::one() / (T::from_i64(2) * two_pi.clone());
    for k in 1..=order {
        let gamma = small_divisor_real::<T>(k as i64, rho).ok_or(Error::SmallDivisorZero { order: k, mode: k as i64 })?;
        divisors.push(gamma);
        // RHS_ν = (X_{ν−1} − Y_{ν+1})/(2i·2π), modes |ν| ≤ k
        let (xp, yp) = (&x[k - 1], &y[k - 1]);
        let deg = k - 1;
        let mut u = vec![Cx::zero(); 2 * k + 1];
        let mut rhs = vec![Cx::zero(); 2 * k + 1];
        for (nu, slot) in rhs.iter_mut().enumerate() {
            let nu = nu as i64 - k as i64;
            let xi = nu - 1 + deg as i64;
            let yi = nu + 1 + deg as i64;
            let xv = if xi >= 0 && (xi as usize) < xp.len() { xp[xi as usize].clone() } else { Cx::zero() };
            let yv = if yi >= 0 && (yi as usize) < yp.len() { yp[yi as usize].clone() } else { Cx::zero() };
            // (xv − yv)/(2i) = −i(xv − yv)/2
            *slot = xv.sub(&yv).mul_i(&-scale.clone());
        }
        let top = rhs.iter().map(|c| c.norm().to_f64()).fold(0.0, f64::max);
        let m0 = rhs[k].norm().to_f64();
        let rel = if top > 0.0 { m0 / top } else { 0.0 };
        max_mode0 = max_mode0.max(rel);
        if rel > tol {
            return Err(Error::SolvabilityViolation { order: k, value: rel });
        }
        for (idx, slot) in u.iter_mut().enumerate() {
            let nu = idx as i64 - k as i64;
            if nu == 0 || (rhs[idx].re.is_zero() && rhs[idx].im.is_zero()) {
                continue;
            }
            let g = divisors[nu.unsigned_abs() as usize - 1].clone();
            *slot = rhs[idx].scale(&(T::one() / g));
        }
        table.push(u);
        // k X^{(k)} = Σ_{j=1}^{k} j (2πi u^{(j)}) X^{(k−j)}, same for Y with −2πi
        let mut xs = vec![Cx::zero(); 2 * k + 1];
        let mut ys = vec![Cx::zero(); 2 * k + 1];
        for j in 1..=k {
            let w = T::from_i64(j as i64) * two_pi.clone();
            let uj: Vec<Cx<T>> = table[j - 1].iter().map(|c| c.mul_i(&w)).collect();
            let ujn: Vec<Cx<T>> = uj.iter().map(|c| Cx::new(-c.re.clone(), -c.im.clone())).collect();
            for (acc, part) in [(&mut xs, convolve(&uj, &x[k - j])), (&mut ys, convolve(&ujn, &y[k - j]))] {
                for (i, v) in part.into_iter().enumerate() {
                    acc[i] = acc[i].add(&v);
                }
            }
        }
        let inv_k = T::one() / T::from_i64(k as i64);
        x.push(xs.iter().map(|c| c.scale(&inv_k)).collect());
        y.push(ys.iter().map(|c| c.scale(&inv_k)).collect());
    }
    Ok(StandardMapSeries { rho: rho.clone(), table, max_mode0 })
}

impl<T: Real> StandardMapSeries<T> {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// `u^{(k)}_ν`, zero outside `|ν| ≤ k`.
    pub fn coeff(&self, k: usize, nu: i64) -> Cx<T> {
        if nu.unsigned_abs() as usize > k {
            return Cx::zero();
        }
        self.table[k - 1][(nu + k as i64) as usize].clone()
    }

    /// `u^{(k)}(φ)` at real `φ` as `(re, im)`.
    pub fn eval_order(&self, k: usize, phi: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (idx, c) in self.table[k - 1].iter().enumerate() {
            let nu = idx as f64 - k as f64;
            let (a, b) = c.to_f64();
            let (s, co) = (2.0 * std::f64::consts::PI * nu * phi).sin_cos();
            re += a * co - b * s;
            im += a * s + b * co;
        }
        (re, im)
    }

    /// `ln max_ν |u^{(k)}_ν|` for `k = 1..=K`.
    pub fn log_abs(&self) -> Vec<f64> {
        self.table
            .iter()
            .map(|row| row.iter().map(|c| c.norm().ln().to_f64()).fold(f64::NEG_INFINITY, f64::max))
            .collect()
    }

    pub fn summary(&self) -> LindstedtSeries {
        let log_abs = self.log_abs();
        let radius_estimates = log_abs.iter().enumerate().map(|(i, l)| (-l / (i + 1) as f64).exp()).collect();
        LindstedtSeries {
            kind: MapKind::Standard,
            rho: self.rho.to_string(),
            rho_value: self.rho.to_f64(),
            order: self.order(),
            bits: T::bits(),
            log_abs,
            radius_estimates,
        }
    }
}

/// Precision-independent view of a computed series.
#[derive(Clone, Debug, Serialize)]
pub struct LindstedtSeries {
    pub kind: MapKind,
    pub rho: String,
    pub rho_value: f64,
    pub order: usize,
    pub bits: u32,
    /// `ln|c_n|` (semi-standard) or `ln max_ν|u^{(n)}_ν|` (standard).
    pub log_abs: Vec<f64>,
    pub radius_estimates: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalEstimate {
    pub k_hat: f64,
    /// `2B(ρ)` with the Gauss map.
    pub two_b: f64,
    /// `ln(1/k̂) − 2B(ρ)`.
    pub delta: f64,
    /// Coefficient `b` in `ln r_n ≈ ln k̂ + b/n` along the envelope.
    pub slope: f64,
    /// RMS residual of the fit over the hull vertices.
    pub residual: f64,
    pub fit_from: usize,
    pub fit_to: usize,
}

/// Largest RMS residual of the envelope fit accepted as stable.
pub const MAX_FIT_RESIDUAL: f64 = 0.25;

/// Vertices of the upper concave hull, sorted by `x`.
fn upper_hull(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut p: Vec<(f64, f64)> = pts.to_vec();
    p.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut hull: Vec<(f64, f64)> = vec![];
    for q in p {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or below the chord a → q
            if (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    hull
}

/// Least-squares line `(slope, intercept)`.
fn fit_line(pts: &[(f64, f64)]) -> (f64, f64) {
    let m = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / m, a.1 + p.1 / m));
    let (sxx, sxy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + (p.0 - mx).powi(2), a.1 + (p.0 - mx) * (p.1 - my)));
    if sxx == 0.0 {
        return (0.0, my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Extrapolates `ln r_n` to `n → ∞` along the upper envelope of
/// `ln|c_n|/n` against `1/n` over orders `⌈K/3⌉..=K`: a least-squares line
/// through the upper hull vertices gives `ln|c_n|/n ≈ A + b/n`, `k̂ = e^{−A}`.
pub fn critical_constant_estimate(s: &LindstedtSeries, rho: &RealInput) -> Result<CriticalEstimate> {
    let k = s.order;
    if k < 10 {
        return Err(Error::Unstable(format!("order {k} is below 10")));
    }
    let from = k.div_ceil(3);
    // y_n = ln|c_n|/n against x = 1/n
    let pts: Vec<(f64, f64)> = (from..=k).map(|n| (1.0 / n as f64, s.log_abs[n - 1] / n as f64)).collect();
    if pts.iter().any(|p| !p.1.is_finite()) {
        return Err(Error::Unstable("non-finite root-test values".into()));
    }
    // hull vertices that are local maxima of y_n
    let y = |n: usize| s.log_abs[n - 1] / n as f64;
    let hull: Vec<(f64, f64)> = upper_hull(&pts)
        .into_iter()
        .filter(|p| {
            let n = (1.0 / p.0).round() as usize;
            (n == 1 || y(n) >= y(n - 1)) && (n == k || y(n) >= y(n + 1))
        })
        .collect();
    if hull.len() < 2 {
        return Err(Error::Unstable(format!("flat envelope over orders {from}..={k}")));
    }
    let (slope, intercept) = fit_line(&hull);
    let m = hull.len() as f64;
    let residual = (hull.iter().map(|p| (intercept + slope * p.0 - p.1).powi(2)).sum::<f64>() / m).sqrt();
    if residual > MAX_FIT_RESIDUAL {
        return Err(Error::Unstable(format!("envelope gap {residual:.3} over orders {from}..={k}")));
    }
    // ln r_n → −A, so ln k̂ = −A
    let intercept = -intercept;
    let slope = -slope;
    let b = series::brjuno_b(rho, 200)?;
    let two_b = 2.0 * b.value;
    Ok(CriticalEstimate {
        k_hat: intercept.exp(),
        two_b,
        delta: -intercept - two_b,
        slope,
        residual,
        fit_from: from,
        fit_to: k,
    })
}

/// Series plus estimate; rational `ρ` gives `k̂ = 0`.
pub fn critical_constant(rho: &RealInput, order: usize, kind: MapKind) -> Result<CriticalEstimate> {
    if rho.is_exact_rational() {
        return Ok(CriticalEstimate {
            k_hat: 0.0,
            two_b: f64::INFINITY,
            delta: f64::NAN,
            slope: f64::NAN,
            residual: 0.0,
            fit_from: 0,
            fit_to: 0,
        });
    }
    let summary = match kind {
        MapKind::SemiStandard => semi_standard_series::<crate::Real128>(rho, order)?.summary(),
        MapKind::Standard => standard_map_series::<f64>(rho, order, 1e-9)?.summary(),
    };
    critical_constant_estimate(&summary, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::QuadraticSurd;
    use crate::Real128;
    use std::f64::consts::PI;

    fn golden() -> RealInput {
        RealInput::Surd(QuadraticSurd::golden())
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(small_divisor(1, &RealInput::rational(1, 2)).value, -4.0);
        assert_eq!(small_divisor(2, &RealInput::rational(1, 2)).value, 0.0);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let v = small_divisor(1, &golden()).value;
        assert!((v - 2.0 * ((2.0 * PI * g).cos() - 1.0)).abs() < 1e-14);
        assert!((v + 3.474738).abs() < 1e-6);
    }

    #[test]
    fn first_coefficient() {
        let s = semi_standard_series::<f64>(&golden(), 3).unwrap();
        let g1 = s.divisors[0];
        // 1/(4πi γ₁) = −i/(4π γ₁)
        assert!(s.coeffs[0].re.abs() < 1e-18);
        assert!((s.coeffs[0].im + 1.0 / (4.0 * PI * g1)).abs() < 1e-15);
    }

    #[test]
    fn rational_rotation_hits_zero_divisor() {
        let e = semi_standard_series::<f64>(&RealInput::rational(1, 2), 5).unwrap_err();
        assert!(matches!(e, Error::SmallDivisorZero { order: 2, .. }));
        let e = standard_map_series::<f64>(&RealInput::rational(1, 3), 6, 1e-9).unwrap_err();
        assert!(matches!(e, Error::SmallDivisorZero { order: 3, mode: 3 }));
    }

    #[test]
    fn precisions_agree() {
        let a = semi_standard_series::<f64>(&golden(), 20).unwrap();
        let b = semi_standard_series::<Real128>(&golden(), 20).unwrap();
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            let (yr, yi) = y.to_f64();
            let scale = yr.hypot(yi);
            assert!((x.re - yr).hypot(x.im - yi) < 1e-9 * scale);
        }
    }

    #[test]
    fn standard_map_first_order() {
        let s = standard_map_series::<f64>(&golden(), 1, 1e-12).unwrap();
        let g1 = small_divisor(1, &golden()).value;
        // γ₁ u^{(1)}(φ) = sin(2πφ)/(2π)
        for phi in [0.1, 0.37, 0.8] {
            let (re, im) = s.eval_order(1, phi);
            assert!((re * g1 - (2.0 * PI * phi).sin() / (2.0 * PI)).abs() < 1e-15);
            assert!(im.abs() < 1e-15);
        }
    }

    #[test]
    fn standard_map_is_real_and_solvable() {
        let s = standard_map_series::<f64>(&golden(), 20, 1e-12).unwrap();
        assert!(s.max_mode0 < 1e-12);
        for k in 1..=20 {
            let mut top = 0.0f64;
            let mut imag = 0.0f64;
            for i in 0..32 {
                let (re, im) = s.eval_order(k, i as f64 / 32.0);
                top = top.max(re.abs());
                imag = imag.max(im.abs());
            }
            assert!(imag <= 1e-12 * top.max(1.0), "order {k}: {imag} vs {top}");
        }
    }

    #[test]
    fn golden_estimate_is_finite() {
        let est = critical_constant(&golden(), 60, MapKind::SemiStandard).unwrap();
        assert!(est.k_hat > 0.0 && est.delta.is_finite());
        let r = critical_constant(&RealInput::rational(2, 5), 60, MapKind::SemiStandard).unwrap();
        assert_eq!(r.k_hat, 0.0);
    }

    #[test]
    fn silver_close_to_golden() {
        let g = critical_constant(&golden(), 120, MapKind::SemiStandard).unwrap();
        let s = critical_constant(&RealInput::Surd(QuadraticSurd::metallic(2).unwrap()), 120, MapKind::SemiStandard).unwrap();
        assert!((g.delta - s.delta).abs() < 0.5, "{} vs {}", g.delta, s.delta);
    }

    #[test]
    fn divisor_minima_at_convergent_denominators() {
        let rho = golden();
        let mut best = f64::INFINITY;
        let mut records = vec![];
        for nu in 1..=200 {
            let v = small_divisor(nu, &rho).value.abs();
            if v < best {
                best = v;
                records.push(nu);
            }
        }
        assert_eq!(records, vec![1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
    }
}
