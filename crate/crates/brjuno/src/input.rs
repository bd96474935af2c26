//! Real-number inputs: exact rationals, quadratic surds and finite-precision
//! decimals, together with the textual syntax accepted by the CLI.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::surd::QuadraticSurd;

/// Default significand precision for decimal literals without `@bits`.
pub const DEFAULT_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum RealInput {
    Rational(BigRational),
    Surd(QuadraticSurd),
    /// Decimal known to `bits` relative bits; `value` is the exact literal.
    Float { value: BigRational, bits: u32 },
}

impl RealInput {
    pub fn rational(p: i64, q: i64) -> Self {
        RealInput::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn float(value: BigRational, bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Domain(format!("float precision {bits} < 64 bits")));
        }
        Ok(RealInput::Float { value, bits })
    }

    /// Exact rational value of a finite double.
    pub fn from_f64_exact(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(RealInput::Rational)
            .ok_or_else(|| Error::Domain(format!("{x} is not finite")))
    }

    /// Surds with a rational value are demoted to `Rational`.
    pub fn from_surd(s: QuadraticSurd) -> Self {
        match s.to_rational() {
            Some(r) => RealInput::Rational(r),
            None => RealInput::Surd(s),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealInput::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            RealInput::Surd(s) => s.to_f64(),
            RealInput::Float { value, .. } => value.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn is_exact_rational(&self) -> bool {
        matches!(self, RealInput::Rational(_))
    }

    pub fn bits(&self) -> Option<u32> {
        match self {
            RealInput::Float { bits, .. } => Some(*bits),
            _ => None,
        }
    }

    fn map(&self, fr: impl Fn(&BigRational) -> Result<BigRational>, fs: impl Fn(&QuadraticSurd) -> Result<QuadraticSurd>) -> Result<Self> {
        Ok(match self {
            RealInput::Rational(r) => RealInput::Rational(fr(r)?),
            RealInput::Surd(s) => RealInput::from_surd(fs(s)?),
            RealInput::Float { value, bits } => RealInput::Float { value: fr(value)?, bits: *bits },
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|r| Ok(-r), |s| Ok(s.neg())).expect("negation is total")
    }

    pub fn recip(&self) -> Result<Self> {
        self.map(
            |r| {
                if r.is_zero() {
                    Err(Error::Domain("reciprocal of zero".into()))
                } else {
                    Ok(r.recip())
                }
            },
            |s| s.recip(),
        )
    }

    pub fn add_rational(&self, k: &BigRational) -> Self {
        self.map(|r| Ok(r + k), |s| Ok(s.add_rational(k))).expect("addition is total")
    }

    pub fn add_integer(&self, k: i64) -> Self {
        self.add_rational(&BigRational::from_integer(k.into()))
    }

    pub fn mul_rational(&self, k: &BigRational) -> Self {
        self.map(|r| Ok(r * k), |s| Ok(s.mul_rational(k))).expect("multiplication is total")
    }

    /// `x / (1 − x)`.
    pub fn x_over_one_minus_x(&self) -> Result<Self> {
        let one_minus = self.neg().add_integer(1);
        let inv = one_minus.recip()?;
        // x/(1-x) = 1/(1-x) - 1
        Ok(inv.add_integer(-1))
    }

    /// Parses `p/q`, `(a+b*sqrt(d))/c`, or a decimal with optional `@bits`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_bits(text, DEFAULT_BITS)
    }

    pub fn parse_with_bits(text: &str, default_bits: u32) -> Result<Self> {
        let cleaned: String = text
            .replace('\u{2212}', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let err = || Error::Parse(text.to_string());
        if cleaned.is_empty() {
            return Err(err());
        }
        if cleaned.contains("sqrt") {
            return parse_surd(&cleaned).map(RealInput::from_surd).ok_or_else(err);
        }
        if let Some((p, q)) = cleaned.split_once('/') {
            let p: BigInt = p.parse().map_err(|_| err())?;
            let q: BigInt = q.parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(Error::Domain("zero denominator".into()));
            }
            return Ok(RealInput::Rational(BigRational::new(p, q)));
        }
        let (lit, bits) = match cleaned.split_once('@') {
            Some((l, b)) => (l, Some(b.parse::<u32>().map_err(|_| err())?)),
            None => (cleaned.as_str(), None),
        };
        if bits.is_none() && lit.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '+') {
            let n: BigInt = lit.parse().map_err(|_| err())?;
            return Ok(RealInput::Rational(BigRational::from_integer(n)));
        }
        let value = parse_decimal(lit).ok_or_else(err)?;
        RealInput::float(value, bits.unwrap_or(default_bits))
    }
}

impl fmt::Display for RealInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealInput::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            RealInput::Surd(s) => write!(f, "{s}"),
            RealInput::Float { value, bits } => {
                write!(f, "{:e}@{bits}", value.to_f64().unwrap_or(f64::NAN))
            }
        }
    }
}

impl std::str::FromStr for RealInput {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RealInput::parse(s)
    }
}

/// Exact rational value of a decimal literal `[-]digits[.digits][e[-]digits]`.
pub fn parse_decimal(lit: &str) -> Option<BigRational> {
    let (mant, exp) = match lit.find(['e', 'E']) {
        Some(i) => (&lit[..i], lit[i + 1..].parse::<i32>().ok()?),
        None => (lit, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / BigInt::from(10);
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// `[sign]int`, `[sign][int*]sqrt(int)` terms, optionally `(…)/int`.
fn parse_surd(s: &str) -> Option<QuadraticSurd> {
    let (body, den) = if let Some(rest) = s.strip_prefix('(') {
        let close = rest.rfind(')')?;
        let after = &rest[close + 1..];
        let den: BigInt = if after.is_empty() {
            BigInt::one()
        } else {
            after.strip_prefix('/')?.parse().ok()?
        };
        (&rest[..close], den)
    } else {
        (s, BigInt::one())
    };
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let mut d: Option<u64> = None;
    let bytes = body.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &body[start..i];
        if term.is_empty() {
            return None;
        }
        if let Some(pos) = term.find("sqrt(") {
            let coef: BigInt = match &term[..pos] {
                "" => BigInt::one(),
                c => c.strip_suffix('*')?.parse().ok()?,
            };
            let inner = term[pos + 5..].strip_suffix(')')?;
            let rad: u64 = inner.parse().ok()?;
            if d.is_some_and(|old| old != rad) {
                return None;
            }
            d = Some(rad);
            b += sign * coef;
        } else {
            let n: BigInt = term.parse().ok()?;
            a += sign * n;
        }
    }
    if den.is_zero() {
        return None;
    }
    QuadraticSurd::new(a, b, d.unwrap_or(0), den).ok()
}
