//! Scalar abstraction shared by the numerical modules.
//!
//! `Real` is implemented for `f32`, `f64` and for [`MpReal`], a fixed
//! precision binary float backed by `astro-float`.  `num_traits::Float`
//! cannot be used as the bound because it requires `Copy`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{Num, One, ToPrimitive, Zero};

/// Real scalar used by the generic algorithms.
pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
{
    /// Significand precision in bits.
    fn bits() -> u32;
    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn floor(&self) -> Self;
    fn abs(&self) -> Self;
    fn pi() -> Self;
    fn is_finite(&self) -> bool;

    /// Unit roundoff, `2^(1-bits)`.
    fn epsilon() -> Self {
        Self::from_f64(2f64.powi(1 - Self::bits() as i32))
    }

    fn ln_1p(&self) -> Self {
        (Self::one() + self.clone()).ln()
    }

    fn exp_m1(&self) -> Self {
        self.exp() - Self::one()
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut k = n.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        acc
    }

    fn atan2(&self, x: &Self) -> Self {
        let y = self;
        let zero = Self::zero();
        if *x > zero {
            (y.clone() / x.clone()).atan()
        } else if *x < zero {
            let base = (y.clone() / x.clone()).atan();
            if *y >= zero {
                base + Self::pi()
            } else {
                base - Self::pi()
            }
        } else if *y > zero {
            Self::pi() / Self::from_i64(2)
        } else if *y < zero {
            -(Self::pi() / Self::from_i64(2))
        } else {
            zero
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

macro_rules! impl_real_prim {
    ($t:ty, $bits:expr) => {
        impl Real for $t {
            fn bits() -> u32 {
                $bits
            }
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn from_bigint(n: &BigInt) -> Self {
                n.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn sin(&self) -> Self {
                <$t>::sin(*self)
            }
            fn cos(&self) -> Self {
                <$t>::cos(*self)
            }
            fn atan(&self) -> Self {
                <$t>::atan(*self)
            }
            fn floor(&self) -> Self {
                <$t>::floor(*self)
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn pi() -> Self {
                std::f64::consts::PI as $t
            }
            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
            fn epsilon() -> Self {
                <$t>::EPSILON
            }
            fn ln_1p(&self) -> Self {
                <$t>::ln_1p(*self)
            }
            fn exp_m1(&self) -> Self {
                <$t>::exp_m1(*self)
            }
            fn powi(&self, n: i32) -> Self {
                <$t>::powi(*self, n)
            }
            fn atan2(&self, x: &Self) -> Self {
                <$t>::atan2(*self, *x)
            }
        }
    };
}

impl_real_prim!(f32, 24);
impl_real_prim!(f64, 53);

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Binary floating point number with `BITS` bits of significand.
#[derive(Clone)]
pub struct MpReal<const BITS: usize>(BigFloat);

impl<const BITS: usize> MpReal<BITS> {
    pub fn from_big(x: BigFloat) -> Self {
        MpReal(x)
    }

    pub fn as_big(&self) -> &BigFloat {
        &self.0
    }

    /// Parses a decimal literal such as `-1.25e-3`.
    pub fn parse_decimal(s: &str) -> Option<Self> {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, BITS, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(MpReal(v))
        }
    }

    /// Decimal rendering with all significant digits.
    pub fn to_decimal_string(&self) -> String {
        with_consts(|cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    fn ldexp(mut v: f64, mut e: i64) -> f64 {
        while e > 1000 {
            v *= 2f64.powi(1000);
            e -= 1000;
        }
        while e < -1000 {
            v *= 2f64.powi(-1000);
            e += 1000;
        }
        v * 2f64.powi(e as i32)
    }
}

impl<const BITS: usize> fmt::Debug for MpReal<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

impl<const BITS: usize> fmt::Display for MpReal<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

impl<const BITS: usize> PartialEq for MpReal<BITS> {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl<const BITS: usize> PartialOrd for MpReal<BITS> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! mp_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:ident) => {
        impl<const BITS: usize> $tr for MpReal<BITS> {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                MpReal(self.0.$op(&rhs.0, BITS, RM))
            }
        }
        impl<'a, const BITS: usize> $tr<&'a MpReal<BITS>> for MpReal<BITS> {
            type Output = Self;
            fn $m(self, rhs: &'a Self) -> Self {
                MpReal(self.0.$op(&rhs.0, BITS, RM))
            }
        }
        impl<const BITS: usize> $atr for MpReal<BITS> {
            fn $am(&mut self, rhs: Self) {
                self.0 = self.0.$op(&rhs.0, BITS, RM);
            }
        }
    };
}

mp_binop!(Add, add, AddAssign, add_assign, add);
mp_binop!(Sub, sub, SubAssign, sub_assign, sub);
mp_binop!(Mul, mul, MulAssign, mul_assign, mul);
mp_binop!(Div, div, DivAssign, div_assign, div);

impl<const BITS: usize> Rem for MpReal<BITS> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        let q = MpReal(self.0.div(&rhs.0, BITS, RM).int());
        self - q * rhs
    }
}

impl<const BITS: usize> Neg for MpReal<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        MpReal(self.0.neg())
    }
}

impl<const BITS: usize> Zero for MpReal<BITS> {
    fn zero() -> Self {
        MpReal(BigFloat::from_word(0, BITS))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const BITS: usize> One for MpReal<BITS> {
    fn one() -> Self {
        MpReal(BigFloat::from_word(1, BITS))
    }
}

impl<const BITS: usize> Num for MpReal<BITS> {
    type FromStrRadixErr = &'static str;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err("only radix 10 is supported");
        }
        Self::parse_decimal(s).ok_or("invalid decimal literal")
    }
}

impl<const BITS: usize> Real for MpReal<BITS> {
    fn bits() -> u32 {
        BITS as u32
    }
    fn from_f64(x: f64) -> Self {
        MpReal(BigFloat::from_f64(x, BITS))
    }
    fn from_i64(n: i64) -> Self {
        MpReal(BigFloat::from_i64(n, BITS))
    }
    fn from_bigint(n: &BigInt) -> Self {
        let (sign, words) = n.to_u64_digits();
        let radix = BigFloat::from_u128(1u128 << 64, BITS);
        let mut acc = BigFloat::from_word(0, BITS);
        for w in words.iter().rev() {
            acc = acc
                .mul(&radix, BITS, RM)
                .add(&BigFloat::from_u64(*w, BITS), BITS, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        MpReal(acc)
    }
    fn to_f64(&self) -> f64 {
        let x = &self.0;
        if x.is_nan() {
            return f64::NAN;
        }
        if x.is_inf_pos() {
            return f64::INFINITY;
        }
        if x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if x.is_zero() {
            return 0.0;
        }
        let (m, _, s, e, _) = x.as_raw_parts().expect("finite value");
        let top = *m.last().expect("nonempty mantissa");
        let next = if m.len() > 1 { m[m.len() - 2] } else { 0 };
        let v = top as f64 + (next as f64) * 2f64.powi(-64);
        let v = Self::ldexp(v, e as i64 - 64);
        if s == Sign::Neg {
            -v
        } else {
            v
        }
    }
    fn sqrt(&self) -> Self {
        MpReal(self.0.sqrt(BITS, RM))
    }
    fn ln(&self) -> Self {
        MpReal(with_consts(|cc| self.0.ln(BITS, RM, cc)))
    }
    fn exp(&self) -> Self {
        MpReal(with_consts(|cc| self.0.exp(BITS, RM, cc)))
    }
    fn sin(&self) -> Self {
        MpReal(with_consts(|cc| self.0.sin(BITS, RM, cc)))
    }
    fn cos(&self) -> Self {
        MpReal(with_consts(|cc| self.0.cos(BITS, RM, cc)))
    }
    fn atan(&self) -> Self {
        MpReal(with_consts(|cc| self.0.atan(BITS, RM, cc)))
    }
    fn floor(&self) -> Self {
        MpReal(self.0.floor())
    }
    fn abs(&self) -> Self {
        MpReal(self.0.abs())
    }
    fn pi() -> Self {
        MpReal(with_consts(|cc| cc.pi(BITS, RM)))
    }
    fn is_finite(&self) -> bool {
        !(self.0.is_nan() || self.0.is_inf())
    }
    fn epsilon() -> Self {
        let mut e = BigFloat::from_word(1, BITS);
        e.set_exponent(2 - BITS as i32);
        MpReal(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type R128 = MpReal<128>;

    #[test]
    fn mp_round_trips_through_f64() {
        for &x in &[1.0, -0.3, 1e-300, 3.5e250, std::f64::consts::PI] {
            assert_eq!(R128::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn mp_pi_and_functions() {
        let pi = R128::pi();
        assert_eq!(pi.to_f64(), std::f64::consts::PI);
        let x = R128::from_f64(0.75);
        assert!((x.sin().to_f64() - 0.75f64.sin()).abs() < 1e-16);
        assert!((x.ln().to_f64() - 0.75f64.ln()).abs() < 1e-16);
        let y = R128::from_f64(-2.0).atan2(&R128::from_f64(-1.0));
        assert!((y.to_f64() - (-2.0f64).atan2(-1.0)).abs() < 1e-15);
    }

    #[test]
    fn mp_epsilon_is_tiny() {
        let e = R128::epsilon().to_f64();
        assert!(e > 0.0 && e < 1e-37);
        let one = R128::one();
        assert!(one.clone() + R128::epsilon() > one);
    }

    #[test]
    fn mp_from_bigint_large() {
        let n: BigInt = BigInt::from(3u8).pow(90);
        let v = R128::from_bigint(&n).to_f64();
        assert!((v / 3f64.powi(90) - 1.0).abs() < 1e-15);
        let neg = R128::from_bigint(&(-n)).to_f64();
        assert!(neg < 0.0);
    }

    #[test]
    fn mp_rem_and_cmp() {
        let a = R128::from_f64(7.5);
        let b = R128::from_f64(2.0);
        assert_eq!((a.clone() % b.clone()).to_f64(), 1.5);
        assert!(a > b);
        assert!(R128::parse_decimal("0.1").unwrap().to_f64() == 0.1);
    }
}
