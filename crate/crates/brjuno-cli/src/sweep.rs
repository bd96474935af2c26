//! `--sweep VAR=SPEC` grids.
//!
//! `SPEC` is one of
//! * a comma-separated list of literals,
//! * `start:stop:count`, an evenly spaced grid including both ends,
//! * `noble:N`, the surds `[0; m, 1, 1, 1, …]` for `m = 1..=N`,
//! * `metallic:N`, the surds `[0; m, m, m, …]` for `m = 1..=N`.

use std::fmt;

use brjuno::input::{parse_decimal, RealInput};
use brjuno::surd::QuadraticSurd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Rho,
    Alpha,
    Eps,
    Gamma,
}

impl Var {
    fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "x" => Var::X,
            "rho" => Var::Rho,
            "alpha" => Var::Alpha,
            "eps" => Var::Eps,
            "gamma" => Var::Gamma,
            _ => return Err(CliError::usage(format!("unknown sweep variable `{s}` (expected x, rho, alpha, eps or gamma)"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Rho => "rho",
            Var::Alpha => "alpha",
            Var::Eps => "eps",
            Var::Gamma => "gamma",
        }
    }

    /// Aggregate column name when the command already reports this variable.
    pub fn sweep_column(self) -> &'static str {
        match self {
            Var::X => "sweep_x",
            Var::Rho => "sweep_rho",
            Var::Alpha => "sweep_alpha",
            Var::Eps => "sweep_eps",
            Var::Gamma => "sweep_gamma",
        }
    }

    fn is_real_input(self) -> bool {
        matches!(self, Var::X | Var::Rho)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One sweep value: the literal handed to the command and its numeric sort key.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub text: String,
    pub key: f64,
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub var: Var,
    pub spec: String,
    pub points: Vec<Point>,
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.var, self.spec)
    }
}

pub fn noble(m: u64) -> Result<QuadraticSurd, CliError> {
    Ok(QuadraticSurd::from_periodic_cf(&[0, m], &[1])?)
}

pub fn metallic(m: u64) -> Result<QuadraticSurd, CliError> {
    Ok(QuadraticSurd::metallic(m)?)
}

fn exact(text: &str) -> Result<BigRational, CliError> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| CliError::usage(format!("bad number `{text}`")))?;
        let q: BigInt = q.trim().parse().map_err(|_| CliError::usage(format!("bad number `{text}`")))?;
        if q == BigInt::from(0) {
            return Err(CliError::usage(format!("zero denominator in `{text}`")));
        }
        return Ok(BigRational::new(p, q));
    }
    parse_decimal(t).ok_or_else(|| CliError::usage(format!("bad number `{text}`")))
}

fn key_of(var: Var, text: &str, bits: u32) -> Result<f64, CliError> {
    if var.is_real_input() {
        Ok(RealInput::parse_with_bits(text, bits)?.to_f64())
    } else {
        Ok(exact(text)?.to_f64().unwrap_or(f64::NAN))
    }
}

fn named(var: Var, kind: &str, n: &str) -> Result<Vec<Point>, CliError> {
    if !var.is_real_input() {
        return Err(CliError::usage(format!("named set `{kind}` only applies to x or rho")));
    }
    let n: u64 = n.parse().map_err(|_| CliError::usage(format!("bad set size `{n}`")))?;
    (1..=n)
        .map(|m| {
            let s = if kind == "noble" { noble(m)? } else { metallic(m)? };
            Ok(Point { text: s.to_string(), key: s.to_f64() })
        })
        .collect()
}

fn grid(var: Var, start: &str, stop: &str, count: &str) -> Result<Vec<Point>, CliError> {
    let a = exact(start)?;
    let b = exact(stop)?;
    let n: usize = count.trim().parse().map_err(|_| CliError::usage(format!("bad grid count `{count}`")))?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let t = if n == 1 { a.clone() } else { &a + (&b - &a) * BigRational::new(i.into(), (n - 1).into()) };
        let key = t.to_f64().unwrap_or(f64::NAN);
        let text = match var {
            Var::Alpha => t.to_string(),
            _ => format!("{key:e}"),
        };
        out.push(Point { text, key });
    }
    Ok(out)
}

impl Sweep {
    pub fn parse(s: &str, bits: u32) -> Result<Self, CliError> {
        let (var, spec) = s
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("sweep `{s}` is not of the form VAR=SPEC")))?;
        let var = Var::parse(var.trim())?;
        let spec = spec.trim().to_string();
        let parts: Vec<&str> = spec.split(':').collect();
        let mut points = match parts.as_slice() {
            [] | [""] => Vec::new(),
            [kind @ ("noble" | "metallic"), n] => named(var, kind, n)?,
            [a, b, n] => grid(var, a, b, n)?,
            [_] => spec
                .split(',')
                .map(|t| t.trim())
                .filter(|t| !t.is_empty())
                .map(|t| Ok(Point { text: t.to_string(), key: key_of(var, t, bits)? }))
                .collect::<Result<_, CliError>>()?,
            _ => return Err(CliError::usage(format!("cannot parse sweep spec `{spec}`"))),
        };
        points.sort_by(|p, q| p.key.total_cmp(&q.key).then_with(|| p.text.cmp(&q.text)));
        Ok(Sweep { var, spec, points })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_include_both_ends() {
        let s = Sweep::parse("eps=1e-2:1e-1:3", 64).unwrap();
        assert_eq!(s.points.len(), 3);
        assert_eq!(s.points[0].key, 1e-2);
        assert_eq!(s.points[2].key, 1e-1);
        let a = Sweep::parse("alpha=1/2:1:3", 64).unwrap();
        let texts: Vec<_> = a.points.iter().map(|p| p.text.as_str()).collect();
        assert_eq!(texts, ["1/2", "3/4", "1"]);
    }

    #[test]
    fn lists_are_sorted() {
        let s = Sweep::parse("alpha=1, 1/2, 0.618, 0.75", 64).unwrap();
        let texts: Vec<_> = s.points.iter().map(|p| p.text.as_str()).collect();
        assert_eq!(texts, ["1/2", "0.618", "0.75", "1"]);
    }

    #[test]
    fn empty_specs() {
        assert!(Sweep::parse("x=", 64).unwrap().points.is_empty());
        assert!(Sweep::parse("eps=0:1:0", 64).unwrap().points.is_empty());
    }

    #[test]
    fn named_sets() {
        let s = Sweep::parse("rho=noble:3", 64).unwrap();
        assert_eq!(s.points.len(), 3);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        assert!((s.points[2].key - g).abs() < 1e-15);
        for p in &s.points {
            let r = RealInput::parse(&p.text).unwrap();
            assert!(matches!(r, RealInput::Surd(_)));
        }
        let m = Sweep::parse("x=metallic:2", 64).unwrap();
        assert!((m.points[1].key - g).abs() < 1e-15);
        assert!(Sweep::parse("eps=noble:3", 64).is_err());
        assert!(Sweep::parse("zeta=1", 64).is_err());
    }
}
