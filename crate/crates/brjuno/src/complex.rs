//! Complexified Brjuno function.
//!
//! `F(z) = π⁻¹∫₀¹ f(x)/(x − z) dx`, which for `f = ln(1/x)` is
//! `−π⁻¹Li₂(1/z)`; `𝓑(z) = Σ_k Σ_{g∈M⁺} (L_g F)(z + k)`.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::SeriesFunction;

pub type C64 = Complex64;

const PI2_6: f64 = PI * PI / 6.0;

/// `B_{2r}` for `r = 1..=20`.
const BERNOULLI_EVEN: [f64; 20] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `Σ B_n uⁿ⁺¹/(n+1)!` with `u = −ln(1 − z)`, valid for `|u| < 2π`.
fn dilog_bernoulli(z: C64) -> C64 {
    let u = -(c(1.0, 0.0) - z).ln();
    let u2 = u * u;
    let mut sum = u - u2 * 0.25;
    // u^{2r+1}/(2r+1)!
    let mut p = u;
    let mut fact = 1.0f64;
    for (r, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = 2 * r + 2;
        p *= u2;
        fact *= (k * (k + 1)) as f64;
        let term = p * (b / fact);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

fn dilog_inner(z: C64) -> C64 {
    if z == c(0.0, 0.0) {
        return z;
    }
    if z == c(1.0, 0.0) {
        return c(PI2_6, 0.0);
    }
    if z.norm_sqr() > 1.0 {
        let l = (-z).ln();
        return -PI2_6 - l * l * 0.5 - dilog_inner(z.inv());
    }
    if z.re > 0.5 {
        let one = c(1.0, 0.0);
        return PI2_6 - z.ln() * (one - z).ln() - dilog_bernoulli(one - z);
    }
    dilog_bernoulli(z)
}

/// Principal branch of `Li₂(z)`.
pub fn dilog(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::BranchCut(z.re));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("dilog of a non-finite argument".into()));
    }
    Ok(dilog_inner(z))
}

/// `F(w) = −π⁻¹ Li₂(1/w)`, the transform of `f = ln(1/x)`.
pub fn f_neglog(w: C64) -> C64 {
    -dilog_inner(w.inv()) / PI
}

/// `F′(w) = −ln(1 − 1/w)/(πw)`.
pub fn f_neglog_prime(w: C64) -> C64 {
    -(c(1.0, 0.0) - w.inv()).ln() / (w * PI)
}

fn on_slit(z: C64) -> bool {
    z.im == 0.0 && (0.0..=1.0).contains(&z.re)
}

/// `F(z) = π⁻¹∫₀¹ f(x)/(x − z) dx`; closed form for `neg_log`.
pub fn cauchy_f(f: &SeriesFunction, z: C64) -> Result<C64> {
    if on_slit(z) {
        return Err(Error::OnSlit);
    }
    match f {
        SeriesFunction::NegLog => Ok(f_neglog(z)),
        _ => cauchy_f_quadrature(f, z),
    }
}

/// Tanh-sinh quadrature of `∫_a^b g`, endpoint singularities allowed.
fn tanh_sinh(g: &dyn Fn(f64) -> C64, a: f64, b: f64) -> C64 {
    let half = 0.5 * (b - a);
    let h = 1.0 / 64.0;
    let mut sum = c(0.0, 0.0);
    let kmax = (6.5 / h) as i64;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let s = 0.5 * PI * t.sinh();
        let w = 0.5 * PI * t.cosh() / s.cosh().powi(2);
        // distance to the nearer endpoint, computed without cancellation
        let e = 1.0 / (s.exp() * s.cosh());
        let (x, ok) = if t >= 0.0 {
            (b - half * e, e > 0.0)
        } else {
            let e = 1.0 / ((-s).exp() * s.cosh());
            (a + half * e, e > 0.0)
        };
        if !ok || w == 0.0 || x <= a || x >= b {
            continue;
        }
        sum += g(x) * w;
    }
    sum * (half * h)
}

/// Quadrature route for `F`, split at `Re z` when it lies in `(0, 1)`.
pub fn cauchy_f_quadrature(f: &SeriesFunction, z: C64) -> Result<C64> {
    if on_slit(z) {
        return Err(Error::OnSlit);
    }
    let g = |x: f64| C64::from(f.eval(x)) / (c(x, 0.0) - z);
    let total = if z.re > 0.0 && z.re < 1.0 {
        tanh_sinh(&g, 0.0, z.re) + tanh_sinh(&g, z.re, 1.0)
    } else {
        tanh_sinh(&g, 0.0, 1.0)
    };
    Ok(total / PI)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Periodized {
    pub re: f64,
    pub im: f64,
    /// `|S(N) − S(N/2)|`, the size of the removed `1/N` term.
    pub tail_estimate: f64,
    pub n_max: usize,
}

impl Periodized {
    pub fn value(&self) -> C64 {
        c(self.re, self.im)
    }
}

/// `Σ_{|n|≤N} F(z + n)` with the `1/N` term removed by Richardson
/// extrapolation `2S(N) − S(N/2)`.
pub fn periodize(f: impl Fn(C64) -> C64, z: C64, n_max: usize) -> Result<Periodized> {
    if !(z.im > 0.0) {
        return Err(Error::Domain("periodize needs Im z > 0".into()));
    }
    if n_max < 2 {
        return Err(Error::Domain("n_max must be at least 2".into()));
    }
    let half = n_max / 2;
    let mut s = f(z);
    let mut s_half = s;
    for n in 1..=n_max {
        let pair = f(z + n as f64) + f(z - n as f64);
        s += pair;
        if n == half {
            s_half = s;
        }
    }
    // S(N) ≈ S∞ + A/N: the Richardson weights depend on the actual ratio
    let r = n_max as f64 / half as f64;
    let v = (s * r - s_half) / (r - 1.0);
    Ok(Periodized { re: v.re, im: v.im, tail_estimate: (s - s_half).norm(), n_max })
}

/// Element of `GL(2, ℤ)` with non-negative entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonoidElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl MonoidElement {
    pub const IDENTITY: MonoidElement = MonoidElement { a: 1, b: 0, c: 0, d: 1 };

    /// `(0 1; 1 m)`.
    pub fn generator(m: u64) -> Self {
        MonoidElement { a: 0, b: 1, c: 1, d: m }
    }

    pub fn det(&self) -> i64 {
        (self.a * self.d) as i64 - (self.b * self.c) as i64
    }

    pub fn mul(&self, o: &Self) -> Self {
        MonoidElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Identity, or `d ≥ c ≥ a ≥ 0`, `d ≥ b ≥ a ≥ 0` and `|ad − bc| = 1`.
    pub fn is_member(&self) -> bool {
        if *self == Self::IDENTITY {
            return true;
        }
        self.d >= self.c && self.c >= self.a && self.d >= self.b && self.b >= self.a && self.det().abs() == 1
    }

    /// Generator indices `m₁, m₂, …` with `g = G(m₁)G(m₂)⋯`.
    pub fn factor(&self) -> Option<Vec<u64>> {
        let mut g = *self;
        let mut out = vec![];
        while g != Self::IDENTITY {
            // right-multiplying by G(m)⁻¹ = (−m 1; 1 0)
            if g.c == 0 || g.d < g.c {
                return None;
            }
            // g = h·G(m) with h = (b − m a, a; d − m c, c)
            let m = g.d / g.c;
            let mut found = None;
            for mm in [m, m.saturating_sub(1)] {
                if mm >= 1 && g.b >= mm * g.a && g.d >= mm * g.c {
                    let h = MonoidElement { a: g.b - mm * g.a, b: g.a, c: g.d - mm * g.c, d: g.c };
                    if h == Self::IDENTITY || h.is_member() {
                        found = Some((mm, h));
                        break;
                    }
                }
            }
            let (mm, h) = found?;
            out.push(mm);
            g = h;
        }
        out.reverse();
        Some(out)
    }
}

/// All products of generators with `d ≤ q_max`, by breadth-first search over
/// right multiplication. Sorted.
pub fn monoid_enumerate(q_max: u64) -> Vec<MonoidElement> {
    let mut out = vec![MonoidElement::IDENTITY];
    let mut queue = VecDeque::from([MonoidElement::IDENTITY]);
    while let Some(g) = queue.pop_front() {
        // g·G(m) = (b, a + m b; d, c + m d)
        let mut m = 1;
        while g.c + m * g.d <= q_max {
            let h = g.mul(&MonoidElement::generator(m));
            out.push(h);
            queue.push_back(h);
            m += 1;
        }
    }
    out.sort_unstable();
    out
}

/// Same set from the inequality characterization.
pub fn monoid_filter(q_max: u64) -> Vec<MonoidElement> {
    let mut out = vec![MonoidElement::IDENTITY];
    for d in 1..=q_max {
        for cc in 1..=d {
            for a in 0..=cc {
                for det in [1i64, -1] {
                    // b c = a d − det
                    let num = (a * d) as i64 - det;
                    if num < 0 || num % cc as i64 != 0 {
                        continue;
                    }
                    let b = (num / cc as i64) as u64;
                    let g = MonoidElement { a, b, c: cc, d };
                    if g.is_member() {
                        out.push(g);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `(L_g F)(z)` for a general `F` with derivative `F′`.
pub fn lg_action(g: &MonoidElement, f: &dyn Fn(C64) -> C64, fp: &dyn Fn(C64) -> C64, z: C64) -> Result<C64> {
    if g.c == 0 {
        if g.a == 1 && g.d == 1 {
            return Ok(f(z + (g.b as f64)));
        }
        return Err(Error::Domain("c = 0 elements other than translations".into()));
    }
    let (a, b, cc, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
    let den = a - z * cc;
    if den.norm() < 1e-15 {
        return Err(Error::PoleProximity);
    }
    let w0 = c(-d / cc, 0.0);
    let eps = g.det() as f64;
    Ok(den * (f((z * d - b) / den) - f(w0)) - fp(w0) * (eps / cc))
}

/// `(L_g F)(z)` for `F = −π⁻¹Li₂(1/·)`.
pub fn lg_neglog(g: &MonoidElement, z: C64) -> Result<C64> {
    lg_action(g, &f_neglog, &f_neglog_prime, z)
}

/// `ψ(a)` by shifting to `|a| ≥ 20` and the asymptotic series.
pub fn digamma(a: C64) -> C64 {
    let mut a = a;
    let mut acc = c(0.0, 0.0);
    while a.norm() < 20.0 || a.re < 10.0 {
        acc -= a.inv();
        a += 1.0;
    }
    let inv = a.inv();
    let inv2 = inv * inv;
    let mut p = inv2;
    let mut s = a.ln() - inv * 0.5;
    for (r, b) in BERNOULLI_EVEN.iter().take(10).enumerate() {
        s -= p * (b / (2 * r + 2) as f64);
        p *= inv2;
    }
    s + acc
}

/// `ζ(m, a) = Σ_{k≥0} (a + k)^{−m}` for `m = 2..=m_max` (index `m`), by
/// direct summation up to `|a + M| ≥ 20` and Euler–Maclaurin beyond.
fn hurwitz_all(a: C64, m_max: usize, out: &mut [C64]) {
    for v in out.iter_mut().take(m_max + 1) {
        *v = c(0.0, 0.0);
    }
    let mut b = a;
    while b.norm() < 20.0 || b.re < 10.0 {
        let v = b.inv();
        let mut p = c(1.0, 0.0);
        for slot in out.iter_mut().take(m_max + 1).skip(1) {
            p *= v;
            *slot += p;
        }
        b += 1.0;
    }
    // tail at b
    let v = b.inv();
    let v2 = v * v;
    let mut bpow = v; // b^{1−m} for m = 2
    for m in 2..=m_max {
        let bm = bpow * v; // b^{−m}
        let mut s = bpow / (m - 1) as f64 + bm * 0.5;
        // Σ_r B_{2r}/(2r)! (m)_{2r−1} b^{−m−2r+1}
        let mut rising = m as f64; // (m)_{1}
        let mut fact = 2.0; // (2r)!
        let mut term_pow = bm * v; // b^{−m−1}
        for (r, bern) in BERNOULLI_EVEN.iter().take(8).enumerate() {
            let r1 = r + 1;
            if r1 > 1 {
                let k = (2 * r1 - 3) as f64;
                rising *= (m as f64 + k) * (m as f64 + k + 1.0);
                fact *= ((2 * r1 - 1) * (2 * r1)) as f64;
                term_pow *= v2;
            }
            s += term_pow * (bern / fact * rising);
        }
        out[m] += s;
        bpow *= v;
    }
}

/// Lattice sums `T_m = Σ_{|k|>K} (ζ + k)^{−m}` for `m = 1..=m_max`
/// (symmetric limit for `m = 1`).
fn lattice_tail(zeta: C64, k0: usize, m_max: usize, plus: &mut [C64], minus: &mut [C64], out: &mut [C64]) {
    let k1 = (k0 + 1) as f64;
    out[1] = digamma(k1 - zeta) - digamma(k1 + zeta);
    if m_max >= 2 {
        hurwitz_all(zeta + k1, m_max, plus);
        hurwitz_all(k1 - zeta, m_max, minus);
        for m in 2..=m_max {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            out[m] = plus[m] + minus[m] * sign;
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TruncationPolicy {
    /// Largest matrix entry `d` in the monoid sum.
    pub q_max: u64,
    /// Symmetric periodization range whose complement is reported as `k_tail`.
    pub n_max: usize,
    /// Relative cutoff for Laurent coefficients.
    pub series_tol: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { q_max: 200, n_max: 1000, series_tol: 1e-17 }
    }
}

/// Laurent data of one `L_g F` about its pole `a/c`:
/// `(L_gF)(center + u) = Σ_{m≥1} coeff[m−1] u^{−m}` for `|u| > radius`.
#[derive(Clone, Debug)]
struct Prepared {
    g: MonoidElement,
    center: f64,
    radius: f64,
    coeff: Vec<f64>,
}

/// `I_{m}(s)/π = π⁻¹∫₀¹ ln(1/x)(x + s)^{−m} dx` for `m = 2..=m_max+1`.
fn neglog_taylor(s: f64, j_max: usize) -> Vec<f64> {
    // F^{(j)}(−s)/j! = I_{j+1}(s)/π, I_m = K_{m−1}/(m−1),
    // K_{n+1} = (K_n + J_n)/s, J_0 = ln(1 + 1/s), J_i = s^{−i}(1 − (1+1/s)^{−i})/i
    let l = (1.0 / s).ln_1p();
    let mut k = 0.0f64; // K_0
    let mut out = vec![0.0; j_max + 1];
    for n in 0..=j_max {
        let jn = if n == 0 { l } else { -(-(n as f64) * l).exp_m1() * s.powi(-(n as i32)) / n as f64 };
        k = (k + jn) / s; // K_{n+1}
        // j = n + 1: a_j = I_{j+1}/π = K_j / (j π)
        let j = n + 1;
        if j <= j_max {
            out[j] = k / (j as f64 * PI);
        }
    }
    out
}

const J_MAX: usize = 40;

impl Prepared {
    fn identity(tol: f64) -> Self {
        let mut coeff = vec![];
        for m in 1..=J_MAX {
            let v = -1.0 / (PI * (m * m) as f64);
            coeff.push(v);
            if (m as f64).powi(-2) < tol * 1e3 {
                break;
            }
        }
        Prepared { g: MonoidElement::IDENTITY, center: 0.0, radius: 1.0, coeff }
    }

    fn new(g: MonoidElement, tol: f64) -> Self {
        let (cc, d) = (g.c as f64, g.d as f64);
        let s = d / cc;
        let eps = g.det() as f64;
        let taylor = neglog_taylor(s, J_MAX);
        let radius = 1.0 / (cc * d);
        // B_j = a_j (−c)(−ε/c²)^j, j ≥ 2, multiplies u^{1−j}
        let mut coeff = vec![];
        let base = -eps / (cc * cc);
        let mut pw = base;
        for aj in taylor.iter().take(J_MAX + 1).skip(1) {
            let bj = aj * (-cc) * pw;
            pw *= base;
            coeff.push(bj);
        }
        // coeff[0] corresponds to j = 1, which cancels against the F′ term
        coeff.remove(0);
        // drop terms below tolerance at |u| = 4·radius
        let lead = coeff[0].abs();
        let mut keep = coeff.len();
        let mut scale = 1.0;
        for (i, v) in coeff.iter().enumerate() {
            if i > 0 && v.abs() * scale < tol * lead {
                keep = i;
                break;
            }
            scale /= 4.0 * radius;
        }
        coeff.truncate(keep.max(1));
        Prepared { g, center: g.a as f64 / cc, radius, coeff }
    }

    fn laurent(&self, u: C64) -> C64 {
        let v = u.inv();
        let mut acc = c(0.0, 0.0);
        for b in self.coeff.iter().rev() {
            acc = (acc + *b) * v;
        }
        acc
    }

    fn direct(&self, z: C64) -> Result<C64> {
        if self.g == MonoidElement::IDENTITY {
            Ok(f_neglog(z))
        } else {
            lg_neglog(&self.g, z)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Shell {
    pub d_lo: u64,
    pub d_hi: u64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexEval {
    pub z_re: f64,
    pub z_im: f64,
    pub re: f64,
    pub im: f64,
    /// Part of the value coming from `|k| > n_max`.
    pub k_tail_re: f64,
    pub k_tail_im: f64,
    pub q_max: u64,
    pub n_max: usize,
    pub elements: usize,
    pub shells: Vec<Shell>,
    /// Ratio of the last two shell magnitudes.
    pub shell_decay: f64,
    /// Geometric extrapolation of the shells beyond `q_max`.
    pub tail_estimate: f64,
    /// Shell magnitudes were not decreasing.
    pub truncation_unreliable: bool,
}

impl ComplexEval {
    pub fn value(&self) -> C64 {
        c(self.re, self.im)
    }
}

/// Prepared monoid sum for `f = ln(1/x)`.
pub struct ComplexBrjuno {
    pub policy: TruncationPolicy,
    prepared: Vec<Prepared>,
}

impl ComplexBrjuno {
    pub fn new(policy: TruncationPolicy) -> Result<Self> {
        if policy.q_max < 1 || policy.n_max < 1 {
            return Err(Error::Domain("q_max and n_max must be at least 1".into()));
        }
        let mut prepared = vec![Prepared::identity(policy.series_tol)];
        for g in monoid_enumerate(policy.q_max) {
            if g != MonoidElement::IDENTITY {
                prepared.push(Prepared::new(g, policy.series_tol));
            }
        }
        Ok(ComplexBrjuno { policy, prepared })
    }

    pub fn elements(&self) -> usize {
        self.prepared.len()
    }

    /// `Σ_k (L_gF)(z + k)` for one element, plus the part from `|k| > n_max`.
    fn element_sum(&self, p: &Prepared, z: C64, buf: &mut [Vec<C64>; 3]) -> Result<(C64, C64)> {
        let zeta = z - p.center;
        let shift = (-zeta.re).round();
        let zp = zeta + shift;
        let near = (4.0 * p.radius + 0.5).ceil() as usize;
        let mut total = c(0.0, 0.0);
        for kk in -(near as i64)..=(near as i64) {
            let u = zp + kk as f64;
            total += if u.norm() >= 4.0 * p.radius {
                p.laurent(u)
            } else {
                p.direct(z + (shift + kk as f64))?
            };
        }
        let m_max = p.coeff.len();
        let [plus, minus, t] = buf;
        lattice_tail(zp, near, m_max, plus, minus, t);
        for m in 1..=m_max {
            total += t[m] * p.coeff[m - 1];
        }
        // |k| > n_max in the original index
        let n = self.policy.n_max;
        lattice_tail(zeta, n, m_max, plus, minus, t);
        let mut tail = c(0.0, 0.0);
        for m in 1..=m_max {
            tail += t[m] * p.coeff[m - 1];
        }
        Ok((total, tail))
    }

    /// `𝓑(z)` for `Im z > 0`.
    pub fn eval(&self, z: C64) -> Result<ComplexEval> {
        if !(z.im > 0.0) {
            return Err(Error::Domain("complex Brjuno function needs Im z > 0".into()));
        }
        let z = c(z.re - z.re.floor(), z.im);
        let mut buf = [vec![c(0.0, 0.0); J_MAX + 2], vec![c(0.0, 0.0); J_MAX + 2], vec![c(0.0, 0.0); J_MAX + 2]];
        let q_max = self.policy.q_max;
        let n_shells = 64 - q_max.leading_zeros() as usize;
        let mut shells = vec![c(0.0, 0.0); n_shells.max(1)];
        let mut total = c(0.0, 0.0);
        let mut ktail = c(0.0, 0.0);
        for p in &self.prepared {
            let (v, t) = self.element_sum(p, z, &mut buf)?;
            total += v;
            ktail += t;
            let sh = 63 - p.g.d.max(1).leading_zeros() as usize;
            shells[sh.min(n_shells - 1)] += v;
        }
        let mags: Vec<f64> = shells.iter().map(|s| s.norm()).collect();
        let k = mags.len();
        let (decay, tail_estimate, unreliable) = if k >= 3 {
            // the last shell is partial unless q_max + 1 is a power of two
            let full_last = if (q_max + 1).is_power_of_two() { k - 1 } else { k - 2 };
            let r = mags[full_last] / mags[full_last - 1];
            let unreliable = !(r < 1.0);
            let est = if unreliable { f64::INFINITY } else { mags[full_last] * r / (1.0 - r) };
            (r, est, unreliable)
        } else {
            (f64::NAN, f64::INFINITY, true)
        };
        Ok(ComplexEval {
            z_re: z.re,
            z_im: z.im,
            re: total.re,
            im: total.im,
            k_tail_re: ktail.re,
            k_tail_im: ktail.im,
            q_max,
            n_max: self.policy.n_max,
            elements: self.prepared.len(),
            shells: shells
                .iter()
                .enumerate()
                .map(|(i, s)| Shell { d_lo: 1 << i, d_hi: ((1u64 << (i + 1)) - 1).min(q_max), re: s.re, im: s.im })
                .collect(),
            shell_decay: decay,
            tail_estimate,
            truncation_unreliable: unreliable,
        })
    }
}

pub fn complex_brjuno(z: C64, policy: TruncationPolicy) -> Result<ComplexEval> {
    ComplexBrjuno::new(policy)?.eval(z)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub x: f64,
    pub eps: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct JumpEstimate {
    pub p: u64,
    pub q: u64,
    pub x: f64,
    pub eps: f64,
    /// Fitted size of the decrease of `Re 𝓑` across `p/q`.
    pub jump: f64,
    /// `π/q`.
    pub expected: f64,
    /// Local slope of the continuous part.
    pub slope: f64,
    pub residual: f64,
}

/// Fits `D(δ) = Re𝓑(x₀ − δ + iε) − Re𝓑(x₀ + δ + iε)` to
/// `J(1 − (2/π)atan(ε/δ)) − 2bδ` by least squares over `deltas`.
pub fn estimate_re_jump(cb: &ComplexBrjuno, p: u64, q: u64, eps: f64, deltas: &[f64]) -> Result<JumpEstimate> {
    if deltas.len() < 2 {
        return Err(Error::Domain("jump fit needs at least two offsets".into()));
    }
    let x0 = p as f64 / q as f64;
    let mut rows = vec![];
    for &dl in deltas {
        let lo = cb.eval(c(x0 - dl, eps))?;
        let hi = cb.eval(c(x0 + dl, eps))?;
        rows.push((dl, lo.re - hi.re));
    }
    // D = J·φ(δ) + b·ψ(δ) with φ = 1 − (2/π)atan(ε/δ), ψ = −2δ
    let (mut s11, mut s12, mut s22, mut y1, mut y2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(dl, dv) in &rows {
        let phi = 1.0 - 2.0 / PI * (eps / dl).atan();
        let psi = -2.0 * dl;
        s11 += phi * phi;
        s12 += phi * psi;
        s22 += psi * psi;
        y1 += phi * dv;
        y2 += psi * dv;
    }
    let det = s11 * s22 - s12 * s12;
    let (jump, slope) = if det.abs() > 1e-300 {
        ((y1 * s22 - y2 * s12) / det, (s11 * y2 - s12 * y1) / det)
    } else {
        (y1 / s11, 0.0)
    };
    let residual = rows
        .iter()
        .map(|&(dl, dv)| (dv - jump * (1.0 - 2.0 / PI * (eps / dl).atan()) + 2.0 * slope * dl).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(JumpEstimate { p, q, x: x0, eps, jump, expected: PI / q as f64, slope, residual })
}

/// Default offsets for the jump fit at height `eps`.
pub fn default_jump_offsets(eps: f64) -> Vec<f64> {
    (0..6).map(|i| eps * 10.0 * (1.5f64).powi(i)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryScan {
    pub rows: Vec<ScanRow>,
    pub jumps: Vec<JumpEstimate>,
}

/// Samples `𝓑(x + iε)` on `[x0, x1]` and fits the real-part jump at every
/// rational `p/q` in the window with `q ≤ q_jump`.
pub fn boundary_scan(cb: &ComplexBrjuno, x0: f64, x1: f64, eps: f64, samples: usize, q_jump: u64) -> Result<BoundaryScan> {
    if !(x1 > x0) || samples < 2 || !(eps > 0.0) {
        return Err(Error::Domain("scan needs x0 < x1, samples >= 2, eps > 0".into()));
    }
    let mut rows = vec![];
    for i in 0..samples {
        let x = x0 + (x1 - x0) * i as f64 / (samples - 1) as f64;
        let v = cb.eval(c(x, eps))?;
        rows.push(ScanRow { x, eps, re: v.re, im: v.im });
    }
    let mut jumps = vec![];
    let offsets = default_jump_offsets(eps);
    for q in 1..=q_jump {
        let p_lo = (x0 * q as f64).ceil() as i64;
        let p_hi = (x1 * q as f64).floor() as i64;
        for p in p_lo..=p_hi {
            if num_integer::gcd(p, q as i64) != 1 || p < 0 {
                continue;
            }
            jumps.push(estimate_re_jump(cb, p as u64, q, eps, &offsets)?);
        }
    }
    Ok(BoundaryScan { rows, jumps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    /// `Σ_{k≤N} zᵏ/k²` with an Euler–Maclaurin tail for `|z| = 1`.
    fn series_oracle(z: C64, n: usize) -> C64 {
        let mut s = c(0.0, 0.0);
        let mut p = c(1.0, 0.0);
        for k in 1..=n {
            p *= z;
            s += p / (k * k) as f64;
        }
        s
    }

    #[test]
    fn dilog_special_values() {
        assert_eq!(dilog(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((dilog(c(1.0, 0.0)).unwrap().re - PI2_6).abs() < 1e-15);
        let h = dilog(c(0.5, 0.0)).unwrap();
        let expected = PI * PI / 12.0 - 2f64.ln().powi(2) / 2.0;
        assert!((h.re - expected).abs() < 1e-15 && h.im.abs() < 1e-15);
        let m1 = dilog(c(-1.0, 0.0)).unwrap();
        assert!((m1.re + PI * PI / 12.0).abs() < 1e-15);
        assert!(matches!(dilog(c(2.0, 0.0)), Err(Error::BranchCut(_))));
    }

    #[test]
    fn dilog_matches_power_series_inside_disk() {
        for &(re, im) in &[(0.3, 0.2), (-0.5, 0.4), (0.1, -0.7), (0.6, 0.1), (-0.2, -0.2)] {
            let z = c(re, im);
            let s = series_oracle(z, 400);
            assert!(close(dilog(z).unwrap(), s, 1e-13), "{z}");
        }
    }

    #[test]
    fn f_boundary_values() {
        let v = f_neglog(c(0.5, 1e-9));
        assert!((v.im - 2f64.ln()).abs() < 1e-6);
        let w = f_neglog(c(2.0, 0.0));
        assert!(w.im.abs() < 1e-15);
        assert!((w.re + dilog(c(0.5, 0.0)).unwrap().re / PI).abs() < 1e-15);
    }

    #[test]
    fn quadrature_route_agrees_with_closed_form() {
        for &(re, im) in &[(2.0, 0.0), (0.5, 0.3), (-1.0, 0.5), (0.2, -0.05), (1.5, 2.0)] {
            let z = c(re, im);
            let q = cauchy_f_quadrature(&SeriesFunction::NegLog, z).unwrap();
            assert!(close(q, f_neglog(z), 1e-10), "{z}: {q} vs {}", f_neglog(z));
        }
        assert!(matches!(cauchy_f(&SeriesFunction::NegLog, c(0.3, 0.0)), Err(Error::OnSlit)));
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let w = c(-2.5, 0.0);
        let h = 1e-6;
        let fd = (f_neglog(w + h) - f_neglog(w - h)) / (2.0 * h);
        assert!(close(f_neglog_prime(w), fd, 1e-8));
    }

    #[test]
    fn monoid_small_cases() {
        let g1 = monoid_enumerate(1);
        assert_eq!(g1, vec![MonoidElement::generator(1), MonoidElement::IDENTITY].into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        let g2 = monoid_enumerate(2);
        assert_eq!(g2.len(), 4);
        assert!(g2.contains(&MonoidElement { a: 1, b: 1, c: 1, d: 2 }));
        assert!(g2.contains(&MonoidElement::generator(2)));
        for q in 1..=12 {
            assert_eq!(monoid_enumerate(q), monoid_filter(q));
        }
    }

    #[test]
    fn factorization_round_trip() {
        for g in monoid_enumerate(30) {
            let f = g.factor().expect("member factors");
            let back = f.iter().fold(MonoidElement::IDENTITY, |acc, &m| acc.mul(&MonoidElement::generator(m)));
            assert_eq!(back, g);
        }
    }

    #[test]
    fn lg_generator_matches_operator_term() {
        let z = c(0.3, 0.4);
        for m in 1..5u64 {
            let g = MonoidElement::generator(m);
            let lhs = lg_neglog(&g, z).unwrap();
            let mm = c(-(m as f64), 0.0);
            let rhs = -z * (f_neglog(z.inv() - m as f64) - f_neglog(mm)) + f_neglog_prime(mm);
            assert!(close(lhs, rhs, 1e-13));
        }
        assert_eq!(lg_neglog(&MonoidElement::IDENTITY, z).unwrap(), f_neglog(z));
    }

    #[test]
    fn laurent_matches_direct() {
        for g in monoid_enumerate(6).into_iter().filter(|g| *g != MonoidElement::IDENTITY) {
            let p = Prepared::new(g, 1e-17);
            for &(re, im) in &[(3.0, 0.5), (-2.0, 0.01), (0.2, 5.0)] {
                let u = c(re, im) * (4.0 * p.radius).max(1.0);
                let z = u + p.center;
                let d = lg_neglog(&g, z).unwrap();
                assert!(close(p.laurent(u), d, 1e-11), "{g:?} {u}: {} vs {d}", p.laurent(u));
            }
        }
        let id = Prepared::identity(1e-17);
        let u = c(4.0, 1.0);
        assert!(close(id.laurent(u), f_neglog(u), 1e-13));
    }

    #[test]
    fn lattice_sums_match_brute_force() {
        let zeta = c(0.3, 0.05);
        let k0 = 3;
        let (mut p, mut m, mut t) = (vec![C64::default(); 10], vec![C64::default(); 10], vec![C64::default(); 10]);
        lattice_tail(zeta, k0, 6, &mut p, &mut m, &mut t);
        for mm in 2..=6 {
            let mut s = c(0.0, 0.0);
            let n = 200_000;
            for k in (k0 as i64 + 1)..=n {
                s += (zeta + k as f64).powi(-(mm as i32)) + (zeta - k as f64).powi(-(mm as i32));
            }
            if mm % 2 == 0 {
                s += 2.0 * (n as f64 + 0.5).powi(1 - mm as i32) / (mm - 1) as f64;
            }
            assert!(close(t[mm], s, 1e-9), "m = {mm}: {} vs {s}", t[mm]);
        }
        let mut s = c(0.0, 0.0);
        for k in (k0 as i64 + 1)..2_000_000 {
            s += (zeta + k as f64).inv() + (zeta - k as f64).inv();
        }
        assert!((t[1] - s).norm() < 1e-5);
    }

    #[test]
    fn periodization_is_periodic() {
        let z = c(0.3, 0.5);
        let a = periodize(f_neglog, z, 1000).unwrap();
        let b = periodize(f_neglog, z + 1.0, 1000).unwrap();
        assert!((a.value() - b.value()).norm() <= a.tail_estimate + b.tail_estimate);
        let coarse = periodize(f_neglog, z, 500).unwrap();
        assert!(a.tail_estimate <= 0.55 * coarse.tail_estimate);
    }

    #[test]
    fn element_sums_match_direct_truncation() {
        let cb = ComplexBrjuno::new(TruncationPolicy { q_max: 4, n_max: 50, series_tol: 1e-17 }).unwrap();
        let z = c(0.37, 0.2);
        let mut buf = [vec![C64::default(); J_MAX + 2], vec![C64::default(); J_MAX + 2], vec![C64::default(); J_MAX + 2]];
        for p in &cb.prepared {
            let (v, tail) = cb.element_sum(p, z, &mut buf).unwrap();
            let mut direct = p.direct(z).unwrap();
            for k in 1..=50 {
                direct += p.direct(z + k as f64).unwrap() + p.direct(z - k as f64).unwrap();
            }
            assert!(close(v - tail, direct, 1e-10), "{:?}: {} vs {direct}", p.g, v - tail);
        }
    }

    fn gauss_b(t: f64) -> f64 {
        let mut t = t - t.floor();
        let (mut beta, mut s) = (1.0, 0.0);
        while t > 0.0 && beta > 1e-18 {
            s += beta * (1.0 / t).ln();
            beta *= t;
            t = 1.0 / t;
            t -= t.floor();
        }
        s
    }

    #[test]
    fn cocycle_is_strict() {
        let g1 = MonoidElement::generator(2);
        let g2 = MonoidElement { a: 1, b: 1, c: 1, d: 2 };
        let inner = |w: C64| lg_neglog(&g2, w).unwrap();
        let h = 1e-5;
        let inner_prime = |w: C64| (inner(w + h) - inner(w - h)) / (2.0 * h);
        for z in [c(0.3, 0.4), c(-0.7, 0.2), c(2.0, 1.5)] {
            let lhs = lg_action(&g1, &inner, &inner_prime, z).unwrap();
            let rhs = lg_neglog(&g1.mul(&g2), z).unwrap();
            assert!(close(lhs, rhs, 1e-8), "{z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn limit_at_infinity_is_mean_of_b() {
        let cb = ComplexBrjuno::new(TruncationPolicy { q_max: 60, ..Default::default() }).unwrap();
        let far = cb.eval(c(0.3, 1000.0)).unwrap();
        let mid = cb.eval(c(0.8, 10.0)).unwrap();
        assert!(far.re.abs() < 1e-9);
        assert!((far.im - mid.im).abs() < 1e-9);
        let n = 400_000;
        let mean = (0..n).map(|j| gauss_b((j as f64 + 0.5) / n as f64)).sum::<f64>() / n as f64;
        assert!((far.im - mean).abs() < far.tail_estimate + 1e-3, "{} vs {mean}", far.im);
    }

    #[test]
    fn imaginary_part_is_poisson_integral_of_b() {
        let cb = ComplexBrjuno::new(TruncationPolicy { q_max: 100, ..Default::default() }).unwrap();
        let (x, y) = (0.3, 0.2);
        let v = cb.eval(c(x, y)).unwrap();
        let (sh, ch) = ((2.0 * PI * y).sinh(), (2.0 * PI * y).cosh());
        let n = 400_000;
        let p = (0..n)
            .map(|j| {
                let t = (j as f64 + 0.5) / n as f64;
                gauss_b(t) * sh / (ch - (2.0 * PI * (x - t)).cos())
            })
            .sum::<f64>()
            / n as f64;
        assert!((v.im - p).abs() < v.tail_estimate + 1e-3, "{} vs {p}", v.im);
        assert!(!v.truncation_unreliable);
    }
}
