//! Exact quadratic irrationals `(a + b√d)/c`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `(a + b√d)/c` in canonical form: `d` square-free, `gcd(a, b, c) = 1`,
/// `c > 0`, and `b = d = 0` for rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

fn square_free_part(d: u64) -> (u64, u64) {
    let mut rest = d;
    let mut root = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            root *= p;
        }
        p += 1;
    }
    (rest, root)
}

impl QuadraticSurd {
    /// Builds `(a + b√d)/c`, extracting square factors of `d` and reducing.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, d: u64, c: impl Into<BigInt>) -> Result<Self> {
        let (a, mut b, c) = (a.into(), b.into(), c.into());
        if c.is_zero() {
            return Err(Error::Domain("surd denominator is zero".into()));
        }
        let (sf, root) = square_free_part(d);
        b *= BigInt::from(root);
        let (a, b, d) = if sf == 1 {
            (a + b, BigInt::zero(), 0)
        } else if sf == 0 || b.is_zero() {
            (a, BigInt::zero(), 0)
        } else {
            (a, b, sf)
        };
        Ok(Self::reduce(a, b, c, d))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::reduce(n.into(), BigInt::zero(), BigInt::one(), 0)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::reduce(r.numer().clone(), BigInt::zero(), r.denom().clone(), 0)
    }

    /// The golden mean `(√5 − 1)/2`.
    pub fn golden() -> Self {
        Self::reduce(BigInt::from(-1), BigInt::one(), BigInt::from(2), 5)
    }

    /// `[0; m, m, m, …] = (√(m² + 4) − m)/2`.
    pub fn metallic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("metallic index must be positive".into()));
        }
        Self::new(-(m as i64), 1, m * m + 4, 2)
    }

    /// `[pre₀; pre₁, …, period, period, …]` for a non-empty period of positive
    /// quotients; an empty `pre` means `[0; period, period, …]`.
    pub fn from_periodic_cf(pre: &[u64], period: &[u64]) -> Result<Self> {
        if period.is_empty() || period.contains(&0) || pre.iter().skip(1).any(|&a| a == 0) {
            return Err(Error::Domain("partial quotients must be positive".into()));
        }
        // y = [a₁; …, a_k, y] solves Q y² + (Q′ − P) y − P′ = 0
        let (mut p, mut p_prev, mut q, mut q_prev) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for &a in period {
            let a = BigInt::from(a);
            let np = &a * &p + &p_prev;
            let nq = &a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, np);
            q_prev = std::mem::replace(&mut q, nq);
        }
        let lin = &p - &q_prev;
        let disc = &lin * &lin + BigInt::from(4) * &q * &p_prev;
        let disc = disc.to_u64().ok_or_else(|| Error::Domain("period too long for a u64 discriminant".into()))?;
        let mut v = Self::new(lin, 1, disc, BigInt::from(2) * q)?;
        for &a in pre.iter().rev() {
            v = v.recip()?.add_integer(&BigInt::from(a));
        }
        if pre.is_empty() {
            v = v.recip()?;
        }
        Ok(v)
    }

    fn reduce(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: u64) -> Self {
        let g = a.gcd(&b).gcd(&c);
        if !g.is_zero() && !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let d = if b.is_zero() { 0 } else { d };
        QuadraticSurd { a, b, c, d }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.a.clone(), self.c.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign of `a + b√d` decided exactly.
    fn numerator_sign(a: &BigInt, b: &BigInt, d: u64) -> Ordering {
        if b.is_zero() || d == 0 {
            return a.cmp(&BigInt::zero());
        }
        let sa = a.cmp(&BigInt::zero());
        let sb = b.cmp(&BigInt::zero());
        if sa == sb || sa == Ordering::Equal {
            return sb;
        }
        let lhs = a * a;
        let rhs = b * b * BigInt::from(d);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            _ => sb,
        }
    }

    pub fn signum(&self) -> Ordering {
        Self::numerator_sign(&self.a, &self.b, self.d)
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn neg(&self) -> Self {
        Self::reduce(-&self.a, -&self.b, self.c.clone(), self.d)
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add_integer(&self, k: &BigInt) -> Self {
        Self::reduce(&self.a + k * &self.c, self.b.clone(), self.c.clone(), self.d)
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        let (p, q) = (r.numer(), r.denom());
        Self::reduce(&self.a * q + p * &self.c, &self.b * q, &self.c * q, self.d)
    }

    pub fn mul_integer(&self, k: &BigInt) -> Self {
        Self::reduce(&self.a * k, &self.b * k, self.c.clone(), self.d)
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        Self::reduce(&self.a * r.numer(), &self.b * r.numer(), &self.c * r.denom(), self.d)
    }

    /// `1/x = c(a − b√d)/(a² − b²d)`.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        Ok(Self::reduce(&self.c * &self.a, -(&self.c * &self.b), norm, self.d))
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.div_floor(&self.c);
        }
        let m = (&self.b * &self.b * BigInt::from(self.d)).sqrt();
        if self.b.is_positive() {
            (&self.a + &m).div_floor(&self.c)
        } else {
            (&self.a - &m - BigInt::one()).div_floor(&self.c)
        }
    }

    /// Nearest integer, ties resolved upward.
    pub fn round(&self) -> BigInt {
        self.add_rational(&BigRational::new(BigInt::one(), BigInt::from(2))).floor()
    }

    /// Exact comparison; `None` when the two lie in different quadratic fields.
    pub fn cmp_surd(&self, other: &Self) -> Option<Ordering> {
        if self.d != other.d && !self.is_rational() && !other.is_rational() {
            return None;
        }
        let d = self.d.max(other.d);
        let a = &self.a * &other.c - &other.a * &self.c;
        let b = &self.b * &other.c - &other.b * &self.c;
        Some(Self::numerator_sign(&a, &b, d))
    }

    /// Value in `T`, using the conjugate form when `a` and `b√d` cancel.
    pub fn to_real<T: Real>(&self) -> T {
        let c = T::from_bigint(&self.c);
        if self.b.is_zero() {
            return T::from_bigint(&self.a) / c;
        }
        let root = T::from_i64(self.d as i64).sqrt();
        let a = T::from_bigint(&self.a);
        let b = T::from_bigint(&self.b);
        if self.a.is_positive() == self.b.is_positive() || self.a.is_zero() {
            (a + b * root) / c
        } else {
            let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
            T::from_bigint(&norm) / (c * (a - b * root))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return BigRational::new(self.a.clone(), self.c.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
        }
        self.to_real::<f64>()
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "({}{}{}*sqrt({}))/{}", self.a, sign, self.b.abs(), self.d, self.c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64, d: u64, c: i64) -> QuadraticSurd {
        QuadraticSurd::new(a, b, d, c).unwrap()
    }

    #[test]
    fn periodic_cf_constructor() {
        assert_eq!(QuadraticSurd::from_periodic_cf(&[], &[1]).unwrap(), QuadraticSurd::golden());
        assert_eq!(QuadraticSurd::from_periodic_cf(&[], &[3]).unwrap(), QuadraticSurd::metallic(3).unwrap());
        let r2 = QuadraticSurd::from_periodic_cf(&[1], &[2]).unwrap();
        assert!((r2.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        let r3 = QuadraticSurd::from_periodic_cf(&[1], &[1, 2]).unwrap();
        assert!((r3.to_f64() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn canonical_form() {
        let x = s(2, 2, 8, -4);
        assert_eq!(x.a(), &BigInt::from(-1));
        assert_eq!(x.b(), &BigInt::from(-2));
        assert_eq!(x.d(), 2);
        assert_eq!(x.c(), &BigInt::from(2));
        let r = s(1, 3, 9, 5);
        assert!(r.is_rational());
        assert_eq!(r.to_rational().unwrap(), BigRational::new(2.into(), 1.into()));
        assert_eq!(r.d(), 0);
    }

    #[test]
    fn floor_and_sign() {
        let g = QuadraticSurd::golden();
        assert_eq!(g.floor(), BigInt::zero());
        assert_eq!(g.neg().floor(), BigInt::from(-1));
        assert_eq!(g.recip().unwrap().floor(), BigInt::one());
        assert_eq!(s(0, -1, 2, 1).floor(), BigInt::from(-2));
        assert!(s(3, -1, 10, 1).is_negative());
        assert!(!s(4, -1, 15, 1).is_negative());
    }

    #[test]
    fn recip_stays_in_field() {
        let g = QuadraticSurd::golden();
        let inv = g.recip().unwrap();
        assert_eq!(inv, g.add_integer(&BigInt::one()));
        assert_eq!(inv.d(), 5);
    }

    #[test]
    fn conjugate_evaluation_is_accurate() {
        // 10^8 - sqrt(10^16 - 1) ~ 5e-9 suffers cancellation when evaluated naively.
        let x = QuadraticSurd::new(100_000_000i64, -1, 9_999_999_999_999_999, 1).unwrap();
        let v = x.to_f64();
        let expected = 1.0 / (1e8 + (1e16f64 - 1.0).sqrt());
        assert!((v / expected - 1.0).abs() < 1e-12, "{v} vs {expected}");
    }

    #[test]
    fn metallic_means() {
        let m2 = QuadraticSurd::metallic(2).unwrap();
        assert!((m2.to_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert_eq!(QuadraticSurd::metallic(1).unwrap(), QuadraticSurd::golden());
    }
}
