use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use brjuno::cf;
use brjuno::complex::{self, ComplexBrjuno, TruncationPolicy};
use brjuno::input::RealInput;
use brjuno::lindstedt::{self, LindstedtSeries};
use brjuno::operator::{self, GridFunction};
use brjuno::scalar::Real;
use brjuno::series::{self, SeriesFunction, TailKind};
use brjuno::{Real128, Real256};

use crate::output::{Cell, Report};
use crate::sweep::Var;
use crate::CliError;

pub struct Ctx {
    /// Default precision for decimal literals.
    pub bits: u32,
}

impl Ctx {
    fn real(&self, text: &str) -> Result<RealInput, CliError> {
        Ok(RealInput::parse_with_bits(text, self.bits)?)
    }
}

pub trait Command: Clone + Send + Sync {
    const NAME: &'static str;
    fn params(&self) -> Vec<(&'static str, String)>;
    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError>;
    fn run(&self, ctx: &Ctx) -> Result<Report, CliError>;

    fn param_map(&self) -> BTreeMap<String, String> {
        self.params().into_iter().filter(|(_, v)| !v.is_empty()).map(|(k, v)| (k.to_string(), v)).collect()
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::usage(format!("missing --{flag} (or sweep it)")))
}

fn opt(v: &Option<String>) -> String {
    v.clone().unwrap_or_default()
}

fn no_var(cmd: &str, var: Var) -> CliError {
    CliError::usage(format!("`{cmd}` has no sweepable parameter `{var}`"))
}

fn parse_f64(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim().parse().map_err(|_| CliError::usage(format!("bad {what} `{text}`")))
}

/// `p/q`, an integer, or a decimal, read exactly.
fn parse_alpha(text: &str) -> Result<BigRational, CliError> {
    let a = match RealInput::parse(text)? {
        RealInput::Rational(r) => r,
        RealInput::Float { value, .. } => value,
        RealInput::Surd(_) => return Err(CliError::usage(format!("alpha must be rational, got `{text}`"))),
    };
    cf::check_alpha(&a)?;
    Ok(a)
}

/// `neg_log`, `power:NU` or `log_power:NU:MU`.
fn parse_function(text: &str) -> Result<SeriesFunction, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    Ok(match parts.as_slice() {
        ["neg_log"] => SeriesFunction::NegLog,
        ["power", nu] => SeriesFunction::power(parse_f64(nu, "exponent")?)?,
        ["log_power", nu, mu] => SeriesFunction::log_power(parse_f64(nu, "exponent")?, parse_f64(mu, "exponent")?)?,
        _ => return Err(CliError::usage(format!("unknown function `{text}` (neg_log, power:NU, log_power:NU:MU)"))),
    })
}

fn input_bits(x: &RealInput) -> u32 {
    x.bits().unwrap_or(0)
}

fn tail_name(t: TailKind) -> &'static str {
    match t {
        TailKind::Exact => "exact",
        TailKind::Heuristic => "heuristic",
        TailKind::None => "none",
    }
}

// ---------------------------------------------------------------- cf

#[derive(Args, Clone, Debug)]
pub struct CfArgs {
    /// Number: `p/q`, `(a+b*sqrt(d))/c`, or a decimal with optional `@bits`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
}

impl Command for CfArgs {
    const NAME: &'static str = "cf";

    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("x", opt(&self.x)), ("alpha", self.alpha.clone()), ("depth", self.depth.to_string())]
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::X => self.x = Some(text.into()),
            Var::Alpha => self.alpha = text.into(),
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, ctx: &Ctx) -> Result<Report, CliError> {
        let x = ctx.real(required(&self.x, "x")?)?;
        let e = cf::expand(&x, &parse_alpha(&self.alpha)?, self.depth)?;
        let mut r = Report::new(&["n", "a", "eps", "x_n", "p", "q", "beta"], input_bits(&x).max(53));
        for n in 0..=e.depth() {
            r.row(vec![
                n.into(),
                e.a[n].to_string().into(),
                (e.eps[n] as i64).into(),
                e.x[n].into(),
                e.p[n].to_string().into(),
                e.q[n].to_string().into(),
                e.beta[n].into(),
            ]);
        }
        match e.period {
            Some((s, l)) => r.note("period", format!("({s},{l})")),
            None => r.note("period", "none"),
        }
        match e.terminated_at {
            Some(t) => r.note("terminated_at", t),
            None => r.note("terminated_at", "none"),
        }
        r.note("truncated", e.truncated);
        r.detail = Some(serde_json::to_value(&e).map_err(CliError::io)?);
        Ok(r)
    }
}

// ---------------------------------------------------------------- brjuno

#[derive(Args, Clone, Debug)]
pub struct BrjunoArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    /// `neg_log`, `power:NU` or `log_power:NU:MU`.
    #[arg(long, default_value = "neg_log")]
    pub f: String,
    #[arg(long, default_value_t = 60)]
    pub depth: usize,
}

impl Command for BrjunoArgs {
    const NAME: &'static str = "brjuno";

    fn params(&self) -> Vec<(&'static str, String)> {
        vec![
            ("x", opt(&self.x)),
            ("alpha", self.alpha.clone()),
            ("f", self.f.clone()),
            ("depth", self.depth.to_string()),
        ]
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::X => self.x = Some(text.into()),
            Var::Alpha => self.alpha = text.into(),
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, ctx: &Ctx) -> Result<Report, CliError> {
        let x = ctx.real(required(&self.x, "x")?)?;
        let f = parse_function(&self.f)?;
        let alpha = parse_alpha(&self.alpha)?;
        let e = series::brjuno_series(&x, &f, &alpha, self.depth)?;
        let mut r = Report::new(
            &["x", "alpha", "value", "partial_sum", "tail_bound", "error_bound", "depth", "tail", "diverged", "truncated"],
            input_bits(&x).max(53),
        );
        r.row(vec![
            x.to_f64().into(),
            alpha.to_f64().unwrap_or(f64::NAN).into(),
            e.value.into(),
            e.partial_sum.into(),
            e.tail_bound.into(),
            e.error_bound.into(),
            e.depth.into(),
            tail_name(e.tail).into(),
            e.diverged.into(),
            e.truncated.into(),
        ]);
        r.unreliable = e.truncated;
        r.detail = Some(serde_json::to_value(&e).map_err(CliError::io)?);
        Ok(r)
    }
}

// ---------------------------------------------------------------- bseries

#[derive(Args, Clone, Debug)]
pub struct BseriesArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Exponent of `B_ν = Σ β_{n−1} x_n^{−ν}`.
    #[arg(long)]
    pub nu: f64,
    #[arg(long, default_value_t = 60)]
    pub depth: usize,
}

impl Command for BseriesArgs {
    const NAME: &'static str = "bseries";

    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("x", opt(&self.x)), ("nu", format!("{:e}", self.nu)), ("depth", self.depth.to_string())]
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::X => self.x = Some(text.into()),
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, ctx: &Ctx) -> Result<Report, CliError> {
        let x = ctx.real(required(&self.x, "x")?)?;
        let b = series::bnu_series(&x, self.nu, self.depth)?;
        let mut r = Report::new(
            &["x", "nu", "value", "tail_bound", "partial", "bracket", "lower_ok", "upper_ok", "depth"],
            input_bits(&x).max(53),
        );
        r.row(vec![
            x.to_f64().into(),
            self.nu.into(),
            b.eval.value.into(),
            b.eval.tail_bound.into(),
            b.partial.into(),
            b.bracket.into(),
            b.lower_ok.into(),
            b.upper_ok.into(),
            b.eval.depth.into(),
        ]);
        r.unreliable = b.eval.truncated;
        Ok(r)
    }
}

// ---------------------------------------------------------------- dioph

#[derive(Args, Clone, Debug)]
pub struct DiophArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value_t = 60)]
    pub depth: usize,
}

impl Command for DiophArgs {
    const NAME: &'static str = "dioph";

    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("x", opt(&self.x)), ("alpha", self.alpha.clone()), ("depth", self.depth.to_string())]
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::X => self.x = Some(text.into()),
            Var::Alpha => self.alpha = text.into(),
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, ctx: &Ctx) -> Result<Report, CliError> {
        let x = ctx.real(required(&self.x, "x")?)?;
        let e = cf::expand(&x, &parse_alpha(&self.alpha)?, self.depth)?;
        let d = series::diophantine_estimate(&e)?;
        let mut r = Report::new(&["n", "tau_n"], input_bits(&x).max(53));
        for &(n, t) in &d.tau_n {
            r.row(vec![n.into(), t.into()]);
        }
        r.note("tau_hat", d.tau_hat);
        r.note("c_hat", d.c_hat);
        r.note("slope", d.slope);
        r.note("intercept", d.intercept);
        r.unreliable = e.truncated && e.depth() < 3;
        Ok(r)
    }
}

// ---------------------------------------------------------------- operator

#[derive(Args, Clone, Debug)]
pub struct OperatorArgs {
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    /// Number of grid intervals on `[0, α]`.
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    /// `neg_log`, `cos:K` (`2 + cos 2πKx`) or `const:C`.
    #[arg(long, default_value = "neg_log")]
    pub f: String,
    /// Hölder exponent for the summary seminorms.
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// One summary row instead of the nodal table.
    #[arg(long)]
    pub summary: bool,
}

impl OperatorArgs {
    fn grid(&self, alpha: f64) -> Result<GridFunction<f64>, CliError> {
        let parts: Vec<&str> = self.f.split(':').collect();
        Ok(match parts.as_slice() {
            ["neg_log"] => GridFunction::neg_log(self.n, alpha),
            ["cos", k] => {
                let k = parse_f64(k, "frequency")?;
                GridFunction::from_fn(self.n, alpha, |x| 2.0 + (2.0 * std::f64::consts::PI * k * x).cos())
            }
            ["const", c] => GridFunction::constant(self.n, alpha, parse_f64(c, "constant")?),
            _ => return Err(CliError::usage(format!("unknown grid function `{}` (neg_log, cos:K, const:C)", self.f))),
        })
    }
}

impl Command for OperatorArgs {
    const NAME: &'static str = "operator";

    fn params(&self) -> Vec<(&'static str, String)> {
        vec![
            ("alpha", self.alpha.clone()),
            ("n", self.n.to_string()),
            ("f", self.f.clone()),
            ("gamma", format!("{:e}", self.gamma)),
            ("tol", format!("{:e}", self.tol)),
            ("summary", self.summary.to_string()),
        ]
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::Alpha => self.alpha = text.into(),
            Var::Gamma => self.gamma = parse_f64(text, "gamma")?,
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, _ctx: &Ctx) -> Result<Report, CliError> {
        if self.n < 2 {
            return Err(CliError::domain("grid needs at least 2 intervals"));
        }
        let alpha = parse_alpha(&self.alpha)?;
        let a = alpha.to_f64().unwrap_or(f64::NAN);
        let f = self.grid(a)?;
        let tf = operator::apply_t(&f, &alpha)?;
        let inv = operator::neumann_inverse(&f, &alpha, self.tol);
        let mut r;
        if self.summary {
            r = Report::new(
                &["alpha", "n", "gamma", "sup_f", "sup_tf", "holder_tf", "bmo_f", "lambda", "neumann_terms", "decay_ratio"],
                53,
            );
            let (terms, ratio) = match &inv {
                Ok(v) => (v.terms as i64, v.decay_ratio),
                Err(_) => (-1, f64::NAN),
            };
            r.row(vec![
                a.into(),
                self.n.into(),
                self.gamma.into(),
                f.sup_norm().into(),
                tf.sup_norm().into(),
                operator::holder_seminorm(&tf, self.gamma)?.into(),
                operator::bmo_seminorm(&f, 64).into(),
                cf::lambda(&alpha).into(),
                terms.into(),
                ratio.into(),
            ]);
        } else {
            r = Report::new(&["x", "f", "tf", "inverse"], 53);
            let sum = inv.as_ref().ok().map(|v| &v.sum);
            for j in 0..=self.n {
                let s = sum.map_or(f64::NAN, |s| s.values[j]);
                r.row(vec![f.node(j).into(), f.values[j].into(), tf.values[j].into(), s.into()]);
            }
            if let Ok(v) = &inv {
                r.note("neumann_terms", v.terms);
                r.note("decay_ratio", v.decay_ratio);
            }
        }
        if let Err(e) = inv {
            r.note("neumann_error", e.to_string());
            r.unreliable = true;
        }
        Ok(r)
    }
}

// ---------------------------------------------------------------- complex

#[derive(Args, Clone, Debug)]
pub struct TruncationArgs {
    /// Largest matrix entry in the monoid sum.
    #[arg(long, default_value_t = 200)]
    pub q_max: u64,
    /// Explicit periodization range; the rest is summed in closed form.
    #[arg(long, default_value_t = 1000)]
    pub n_max: usize,
}

impl TruncationArgs {
    fn params(&self, out: &mut Vec<(&'static str, String)>) {
        out.push(("q_max", self.q_max.to_string()));
        out.push(("n_max", self.n_max.to_string()));
    }

    fn engine(&self) -> Result<Arc<ComplexBrjuno>, CliError> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<ComplexBrjuno>>>> = OnceLock::new();
        let key = (self.q_max, self.n_max);
        let cache = CACHE.get_or_init(Default::default);
        if let Some(cb) = cache.lock().expect("cache lock").get(&key) {
            return Ok(cb.clone());
        }
        let policy = TruncationPolicy { q_max: self.q_max, n_max: self.n_max, ..TruncationPolicy::default() };
        let cb = Arc::new(ComplexBrjuno::new(policy)?);
        Ok(cache.lock().expect("cache lock").entry(key).or_insert(cb).clone())
    }
}

#[derive(Args, Clone, Debug)]
pub struct ComplexArgs {
    /// Real part.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Imaginary part.
    #[arg(long, default_value_t = 1e-2)]
    pub eps: f64,
    #[command(flatten)]
    pub trunc: TruncationArgs,
}

impl Command for ComplexArgs {
    const NAME: &'static str = "complex";

    fn params(&self) -> Vec<(&'static str, String)> {
        let mut p = vec![("x", opt(&self.x)), ("eps", format!("{:e}", self.eps))];
        self.trunc.params(&mut p);
        p
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::X => self.x = Some(text.into()),
            Var::Eps => self.eps = parse_f64(text, "eps")?,
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, ctx: &Ctx) -> Result<Report, CliError> {
        let x = ctx.real(required(&self.x, "x")?)?.to_f64();
        let cb = self.trunc.engine()?;
        let v = cb.eval(Complex64::new(x, self.eps))?;
        let mut r = Report::new(
            &["x", "eps", "re", "im", "k_tail_re", "k_tail_im", "tail_estimate", "shell_decay", "elements", "q_max", "n_max"],
            53,
        );
        r.row(vec![
            x.into(),
            self.eps.into(),
            v.re.into(),
            v.im.into(),
            v.k_tail_re.into(),
            v.k_tail_im.into(),
            v.tail_estimate.into(),
            v.shell_decay.into(),
            v.elements.into(),
            (v.q_max as i64).into(),
            v.n_max.into(),
        ]);
        r.unreliable = v.truncation_unreliable;
        r.detail = Some(serde_json::to_value(&v).map_err(CliError::io)?);
        Ok(r)
    }
}

// ---------------------------------------------------------------- scan

#[derive(Args, Clone, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 0.0)]
    pub x0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub x1: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    /// Largest denominator whose real-part jump is estimated.
    #[arg(long, default_value_t = 5)]
    pub q_jump: u64,
    /// Emit the jump table instead of the samples.
    #[arg(long)]
    pub jumps: bool,
    #[command(flatten)]
    pub trunc: TruncationArgs,
}

impl Command for ScanArgs {
    const NAME: &'static str = "scan";

    fn params(&self) -> Vec<(&'static str, String)> {
        let mut p = vec![
            ("x0", format!("{:e}", self.x0)),
            ("x1", format!("{:e}", self.x1)),
            ("eps", format!("{:e}", self.eps)),
            ("samples", self.samples.to_string()),
            ("q_jump", self.q_jump.to_string()),
            ("jumps", self.jumps.to_string()),
        ];
        self.trunc.params(&mut p);
        p
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::Eps => self.eps = parse_f64(text, "eps")?,
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, _ctx: &Ctx) -> Result<Report, CliError> {
        let cb = self.trunc.engine()?;
        let s = complex::boundary_scan(&cb, self.x0, self.x1, self.eps, self.samples, self.q_jump)?;
        let mut r;
        if self.jumps {
            r = Report::new(&["p", "q", "x", "eps", "jump", "expected", "slope", "residual"], 53);
            for j in &s.jumps {
                r.row(vec![
                    (j.p as i64).into(),
                    (j.q as i64).into(),
                    j.x.into(),
                    j.eps.into(),
                    j.jump.into(),
                    j.expected.into(),
                    j.slope.into(),
                    j.residual.into(),
                ]);
            }
        } else {
            r = Report::new(&["x", "eps", "re", "im"], 53);
            for row in &s.rows {
                r.row(vec![row.x.into(), row.eps.into(), row.re.into(), row.im.into()]);
            }
        }
        Ok(r)
    }
}

// ---------------------------------------------------------------- lindstedt

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    SemiStandard,
    Standard,
}

impl MapArg {
    fn name(self) -> &'static str {
        match self {
            MapArg::SemiStandard => "semi_standard",
            MapArg::Standard => "standard",
        }
    }
}

const STANDARD_TOL: f64 = 1e-9;

fn semi<T: Real>(rho: &RealInput, order: usize) -> Result<LindstedtSeries, CliError> {
    Ok(lindstedt::semi_standard_series::<T>(rho, order)?.summary())
}

fn standard<T: Real>(rho: &RealInput, order: usize) -> Result<LindstedtSeries, CliError> {
    Ok(lindstedt::standard_map_series::<T>(rho, order, STANDARD_TOL)?.summary())
}

/// Semi-standard series never drop below 128 bits; the standard map runs in
/// `f64` unless more than 64 bits are requested.
fn lindstedt_series(rho: &RealInput, order: usize, map: MapArg, bits: u32) -> Result<LindstedtSeries, CliError> {
    match (map, bits) {
        (MapArg::SemiStandard, b) if b <= 128 => semi::<Real128>(rho, order),
        (MapArg::SemiStandard, _) => semi::<Real256>(rho, order),
        (MapArg::Standard, b) if b <= 64 => standard::<f64>(rho, order),
        (MapArg::Standard, b) if b <= 128 => standard::<Real128>(rho, order),
        (MapArg::Standard, _) => standard::<Real256>(rho, order),
    }
}

#[derive(Args, Clone, Debug)]
pub struct LindstedtArgs {
    /// Rotation number.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    #[arg(long, default_value_t = 40)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "semi-standard")]
    pub map: MapArg,
}

impl Command for LindstedtArgs {
    const NAME: &'static str = "lindstedt";

    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("rho", opt(&self.rho)), ("order", self.order.to_string()), ("map", self.map.name().into())]
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::Rho => self.rho = Some(text.into()),
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, ctx: &Ctx) -> Result<Report, CliError> {
        let rho = ctx.real(required(&self.rho, "rho")?)?;
        let s = lindstedt_series(&rho, self.order, self.map, ctx.bits)?;
        let mut r = Report::new(&["n", "abs_c", "ln_abs_c", "r"], s.bits);
        for (i, (l, rn)) in s.log_abs.iter().zip(&s.radius_estimates).enumerate() {
            r.row(vec![(i + 1).into(), l.exp().into(), (*l).into(), (*rn).into()]);
        }
        r.note("rho", s.rho.clone());
        r.note("order", s.order);
        match lindstedt::critical_constant_estimate(&s, &rho) {
            Ok(c) => {
                r.note("k_hat", c.k_hat);
                r.note("two_B", c.two_b);
                r.note("delta", c.delta);
                r.note("residual", c.residual);
            }
            Err(e) => {
                r.note("estimate_error", e.to_string());
                r.unreliable = true;
            }
        }
        Ok(r)
    }
}

// ---------------------------------------------------------------- compare

#[derive(Args, Clone, Debug)]
pub struct CompareArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "set")]
    pub rho: Option<String>,
    /// Shorthand for `--sweep rho=SET`, e.g. `noble:10`.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "semi-standard")]
    pub map: MapArg,
}

impl Command for CompareArgs {
    const NAME: &'static str = "compare";

    fn params(&self) -> Vec<(&'static str, String)> {
        vec![
            ("rho", opt(&self.rho)),
            ("set", opt(&self.set)),
            ("order", self.order.to_string()),
            ("map", self.map.name().into()),
        ]
    }

    fn set(&mut self, var: Var, text: &str) -> Result<(), CliError> {
        match var {
            Var::Rho => self.rho = Some(text.into()),
            _ => return Err(no_var(Self::NAME, var)),
        }
        Ok(())
    }

    fn run(&self, ctx: &Ctx) -> Result<Report, CliError> {
        let rho = ctx.real(required(&self.rho, "rho")?)?;
        let s = lindstedt_series(&rho, self.order, self.map, ctx.bits)?;
        let mut r = Report::new(&["rho_value", "ln_k_hat_inv", "two_B", "delta", "residual"], s.bits);
        match lindstedt::critical_constant_estimate(&s, &rho) {
            Ok(c) => r.row(vec![
                rho.to_f64().into(),
                (-c.k_hat.ln()).into(),
                c.two_b.into(),
                c.delta.into(),
                c.residual.into(),
            ]),
            Err(e) => {
                let nan = Cell::Num(f64::NAN);
                r.row(vec![rho.to_f64().into(), nan.clone(), nan.clone(), nan.clone(), nan]);
                r.note("estimate_error", e.to_string());
                r.unreliable = true;
            }
        }
        Ok(r)
    }
}
