//! Grid discretization of `(T_α f)(x) = x f(1/x)` and the norms used to
//! study it.
//!
//! A grid function stores values at `x_j = jα/n`, `j = 0..=n`, and is
//! extended to ℝ by 1-periodicity and by `f(−x) = f(x)` on `(0, 1 − α)`.
//! Between nodes it is piecewise linear.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive};
use serde::Serialize;

use crate::cf::{check_alpha, CfExpansion};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<T> {
    pub values: Vec<T>,
    /// Right end of the fundamental domain `[0, α]`.
    pub alpha: T,
}

fn cast<T: Float>(v: f64) -> T {
    T::from(v).expect("representable")
}

impl<T: Float> GridFunction<T> {
    /// Samples `f` at the `n + 1` nodes of `[0, α]`.
    pub fn from_fn(n: usize, alpha: T, f: impl Fn(T) -> T) -> Self {
        let values = (0..=n).map(|j| f(Self::node_of(j, n, alpha))).collect();
        GridFunction { values, alpha }
    }

    pub fn constant(n: usize, alpha: T, c: T) -> Self {
        GridFunction { values: vec![c; n + 1], alpha }
    }

    /// `−ln x` with node 0 set to `ln(n/α) + 1`.
    pub fn neg_log(n: usize, alpha: T) -> Self {
        let mut g = Self::from_fn(n, alpha, |x| -x.ln());
        g.values[0] = (T::from(n).unwrap() / alpha).ln() + T::one();
        g
    }

    fn node_of(j: usize, n: usize, alpha: T) -> T {
        T::from(j).unwrap() * alpha / T::from(n).unwrap()
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> T {
        self.alpha / T::from(self.n()).unwrap()
    }

    pub fn node(&self, j: usize) -> T {
        Self::node_of(j, self.n(), self.alpha)
    }

    /// Reduces `x` into `[0, α]` using periodicity and parity.
    pub fn reduce(&self, x: T) -> T {
        // {x}_α ∈ [α − 1, α)
        let y = x - (x - self.alpha + T::one()).floor();
        if y < T::zero() {
            -y
        } else {
            y.min(self.alpha)
        }
    }

    /// Piecewise-linear evaluation on `[0, α]`.
    pub fn eval_reduced(&self, y: T) -> T {
        let n = self.n();
        let t = y / self.step();
        let j = t.floor().to_usize().unwrap_or(0).min(n - 1);
        let w = t - T::from(j).unwrap();
        if w == T::zero() {
            return self.values[j];
        }
        self.values[j] + w * (self.values[j + 1] - self.values[j])
    }

    pub fn eval(&self, x: T) -> T {
        self.eval_reduced(self.reduce(x))
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn sup_norm_interior(&self) -> T {
        self.values[1..].iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn add(&self, other: &Self) -> Self {
        GridFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| *a + *b).collect(),
            alpha: self.alpha,
        }
    }

    pub fn scale(&self, c: T) -> Self {
        GridFunction {
            values: self.values.iter().map(|v| *v * c).collect(),
            alpha: self.alpha,
        }
    }

    /// `(x_j, f(x_j))` pairs.
    pub fn rows(&self) -> Vec<(T, T)> {
        (0..=self.n()).map(|j| (self.node(j), self.values[j])).collect()
    }
}

/// `(T_α f)(x_j) = x_j f(1/x_j)`, with `(Tf)(0) = 0`.
pub fn apply_t<T: Float>(f: &GridFunction<T>, alpha: &BigRational) -> Result<GridFunction<T>> {
    check_alpha(alpha)?;
    let a: T = cast(alpha.to_f64().unwrap());
    if a != f.alpha {
        return Err(Error::Domain(format!("grid domain [0, {}] does not match alpha = {alpha}", f.alpha.to_f64().unwrap())));
    }
    let mut values = Vec::with_capacity(f.values.len());
    values.push(T::zero());
    for j in 1..=f.n() {
        let x = f.node(j);
        values.push(x * f.eval(x.recip()));
    }
    Ok(GridFunction { values, alpha: f.alpha })
}

#[derive(Clone, Debug)]
pub struct NeumannResult<T> {
    pub sum: GridFunction<T>,
    pub terms: usize,
    /// Sup norm of each term `T^k f`.
    pub term_norms: Vec<T>,
    /// Geometric mean of successive sup-norm ratios over the second half.
    pub decay_ratio: T,
}

pub const NEUMANN_MAX_TERMS: usize = 1000;

/// `Σ_{k≤K} T^k f`, stopping once the last term has sup norm `≤ tol`.
pub fn neumann_inverse<T: Float>(f: &GridFunction<T>, alpha: &BigRational, tol: T) -> Result<NeumannResult<T>> {
    if !(tol > T::zero()) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let mut term = f.clone();
    let mut sum = f.clone();
    let mut norms = vec![f.sup_norm()];
    while *norms.last().unwrap() > tol {
        if norms.len() >= NEUMANN_MAX_TERMS {
            return Err(Error::NoConvergence(norms.len()));
        }
        term = apply_t(&term, alpha)?;
        sum = sum.add(&term);
        norms.push(term.sup_norm());
    }
    let k = norms.len();
    let decay_ratio = if k < 3 {
        T::zero()
    } else {
        let from = k / 2;
        let (a, b) = (norms[from.max(1)], norms[k - 1]);
        let steps = T::from(k - 1 - from.max(1)).unwrap();
        if a > T::zero() && b > T::zero() && steps > T::zero() {
            (b / a).powf(steps.recip())
        } else {
            T::zero()
        }
    };
    Ok(NeumannResult { sum, terms: k, term_norms: norms, decay_ratio })
}

/// Interpolation error bound for a grid solution of `(1 − T_α)g = f` at an
/// irrational `x` with expansion `e`. Term `k` of the series is unresolved on
/// a grid of step `h` once `x` lies within `κh` of the endpoint of its
/// level-`k` cylinder, i.e. `β_{k−1}β_k ≤ κh`; each unresolved term may be
/// replaced by anything between `0` and `β_{k−1}(f(x_k) + f_0)`, where `f_0`
/// is the value stored at node 0.
pub fn unresolved_tail_bound(e: &CfExpansion, f: impl Fn(f64) -> f64, h: f64, f0: f64, kappa: f64) -> f64 {
    let mut u = 0.0;
    for k in 0..=e.depth() {
        let bp = if k == 0 { 1.0 } else { e.beta[k - 1] };
        if bp * e.beta[k] <= kappa * h {
            u += bp * (f(e.x[k]).abs() + f0.abs());
        }
    }
    u
}

/// `max_{i<j} |f_i − f_j| / |x_i − x_j|^γ` over all node pairs.
pub fn holder_seminorm<T: Float>(f: &GridFunction<T>, gamma: T) -> Result<T> {
    if !(gamma > T::zero() && gamma <= T::one()) {
        return Err(Error::Domain("gamma must lie in (0, 1]".into()));
    }
    let n = f.n();
    let h = f.step();
    let inv: Vec<T> = (0..=n).map(|k| (T::from(k).unwrap() * h).powf(gamma).recip()).collect();
    let v = &f.values;
    let mut best = T::zero();
    for i in 0..n {
        let vi = v[i];
        for (j, vj) in v.iter().enumerate().skip(i + 1) {
            let q = (vi - *vj).abs() * inv[j - i];
            if q > best {
                best = q;
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct HolderNorm<T> {
    pub gamma: T,
    pub seminorm: T,
    pub sup_norm: T,
    pub a: T,
    pub b: T,
    pub norm: T,
}

pub fn holder_norm<T: Float>(f: &GridFunction<T>, gamma: T, a: T, b: T) -> Result<HolderNorm<T>> {
    let seminorm = holder_seminorm(f, gamma)?;
    let sup_norm = f.sup_norm();
    Ok(HolderNorm { gamma, seminorm, sup_norm, a, b, norm: a * seminorm + b * sup_norm })
}

/// `(2^γ − 2^{−γ})^{−1}`, the lower limit on `B/A`.
pub fn weight_ratio_bound<T: Float>(gamma: T) -> T {
    let two = cast::<T>(2.0);
    (two.powf(gamma) - two.powf(-gamma)).recip()
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub slack: T,
    pub ok: bool,
}

/// `‖T_{1/2} f‖_γ ≤ 2^{2γ−1} ‖f‖_γ + 2h^{1−γ}|f|_∞`.
pub fn contraction_check<T: Float>(f: &GridFunction<T>, gamma: T, a: T, b: T) -> Result<ContractionCheck<T>> {
    let half = cast::<T>(0.5);
    if !(gamma > T::zero() && gamma <= half) {
        return Err(Error::Domain("contraction check needs 0 < gamma <= 1/2".into()));
    }
    if f.alpha != half {
        return Err(Error::Domain("contraction check runs on the alpha = 1/2 grid".into()));
    }
    let bound = weight_ratio_bound(gamma);
    let ratio = b / a;
    if !(a > T::zero() && ratio > bound) {
        return Err(Error::BadWeights { ratio: ratio.to_f64().unwrap(), bound: bound.to_f64().unwrap() });
    }
    let alpha = BigRational::new(BigInt::one(), BigInt::from(2));
    let tf = apply_t(f, &alpha)?;
    let lhs = holder_norm(&tf, gamma, a, b)?.norm;
    let norm = holder_norm(f, gamma, a, b)?;
    let two = cast::<T>(2.0);
    let rhs = two.powf(two * gamma - T::one()) * norm.norm;
    let slack = two * f.step().powf(T::one() - gamma) * norm.sup_norm;
    Ok(ContractionCheck { lhs, rhs, slack, ok: lhs <= rhs + slack })
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub x1: f64,
    pub y1: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// `1/x − round(1/x)` with remainder in `[−1/2, 1/2)`.
fn nearest_remainder(x: &BigRational) -> BigRational {
    let inv = x.recip();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    &inv - (&inv + half).floor()
}

/// `||x₁| − |y₁|| ≤ |x − y|/(xy)` for `0 < y < x ≤ 1/2`, decided exactly
/// on the binary values of `x` and `y`.
pub fn lemma_check(x: f64, y: f64) -> Result<LemmaCheck> {
    if !(0.0 < y && y < x && x <= 0.5) {
        return Err(Error::Domain(format!("lemma needs 0 < y < x <= 1/2, got x = {x}, y = {y}")));
    }
    let xr = BigRational::from_float(x).unwrap();
    let yr = BigRational::from_float(y).unwrap();
    let x1 = nearest_remainder(&xr);
    let y1 = nearest_remainder(&yr);
    let lhs = (x1.abs() - y1.abs()).abs();
    let rhs = (&xr - &yr).abs() / (&xr * &yr);
    let f = |r: &BigRational| r.to_f64().unwrap();
    Ok(LemmaCheck { x1: f(&x1), y1: f(&y1), lhs: f(&lhs), rhs: f(&rhs), ok: lhs <= rhs })
}

/// Supremum of `|I|⁻¹∫_I |f − f_I|` over dyadic `I ⊂ [0, 1]`, at most
/// `max_windows` windows (coarsest first).
pub fn bmo_seminorm<T: Float>(f: &GridFunction<T>, max_windows: usize) -> T {
    let target = (cast::<T>(1.0) / f.step()).to_usize().unwrap_or(1).max(2);
    let m = target.next_power_of_two();
    let mut samples: Vec<T> = (0..m)
        .map(|i| f.eval(T::from(i).unwrap() / T::from(m).unwrap()))
        .collect();
    // left limit at x = 1
    samples.push(if f.alpha == T::one() { f.values[f.n()] } else { samples[0] });
    let mut best = T::zero();
    let mut used = 0usize;
    let mut width = m;
    let half = cast::<T>(0.5);
    while width >= 1 && used < max_windows {
        for start in (0..m).step_by(width) {
            if used >= max_windows {
                break;
            }
            used += 1;
            let w = &samples[start..=start + width];
            let trap = |g: &dyn Fn(T) -> T| {
                let mut s = half * (g(w[0]) + g(w[width]));
                for v in &w[1..width] {
                    s = s + g(*v);
                }
                s / T::from(width).unwrap()
            };
            let mean = trap(&|v| v);
            let osc = trap(&|v| (v - mean).abs());
            best = best.max(osc);
        }
        width /= 2;
    }
    best
}

/// Largest oscillation of the grid values over the cells adjacent to `x`.
pub fn local_oscillation<T: Float>(f: &GridFunction<T>, x: T, radius: usize) -> T {
    let y = f.reduce(x);
    let j = (y / f.step()).floor().to_usize().unwrap_or(0).min(f.n());
    let lo = j.saturating_sub(radius);
    let hi = (j + 1 + radius).min(f.n());
    let w = &f.values[lo..=hi];
    let mx = w.iter().fold(T::neg_infinity(), |m, v| m.max(*v));
    let mn = w.iter().fold(T::infinity(), |m, v| m.min(*v));
    mx - mn
}

/// Piecewise-linear grid function through `(x_j, v_j)` knots at nodes
/// `idx`, used for random test functions.
pub fn piecewise_linear<T: Float + FromPrimitive>(n: usize, alpha: T, idx: &[usize], vals: &[T]) -> GridFunction<T> {
    let mut values = vec![T::zero(); n + 1];
    for j in 0..=n {
        let k = idx.partition_point(|&i| i <= j);
        values[j] = if k == 0 {
            vals[0]
        } else if k == idx.len() {
            vals[idx.len() - 1]
        } else {
            let (i0, i1) = (idx[k - 1], idx[k]);
            let w = T::from_usize(j - i0).unwrap() / T::from_usize(i1 - i0).unwrap();
            vals[k - 1] + w * (vals[k] - vals[k - 1])
        };
    }
    GridFunction { values, alpha }
}
