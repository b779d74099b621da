use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational, always in lowest terms with positive denominator.
///
/// Serialized as the string `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalValue(BigRational);

impl RationalValue {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        RationalValue(BigRational::new(num.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        RationalValue(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
        RationalValue::new(
            BigInt::from_biguint(Sign::Plus, num.clone()),
            BigInt::from_biguint(Sign::Plus, den.clone()),
        )
    }

    pub fn zero() -> Self {
        RationalValue(BigRational::zero())
    }

    pub fn one() -> Self {
        RationalValue(BigRational::one())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    pub fn abs(&self) -> Self {
        RationalValue(self.0.abs())
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    pub fn pow(&self, k: i32) -> Self {
        RationalValue(num_traits::pow::Pow::pow(&self.0, k))
    }

    /// Decimal rendering with `digits` significant digits, rounded half up
    /// on the magnitude. Presentation only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.0.is_zero() {
            return "0".to_string();
        }
        let neg = self.0.is_negative();
        let num = self.0.numer().abs();
        let den = self.0.denom().clone();
        // exponent k with 10^k <= |x| < 10^{k+1}
        let mut k: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
        let ten = BigInt::from(10);
        let cmp_pow = |k: i64| -> std::cmp::Ordering {
            if k >= 0 {
                num.cmp(&(&den * num_traits::pow(ten.clone(), k as usize)))
            } else {
                (&num * num_traits::pow(ten.clone(), (-k) as usize)).cmp(&den)
            }
        };
        while cmp_pow(k) == std::cmp::Ordering::Less {
            k -= 1;
        }
        while cmp_pow(k + 1) != std::cmp::Ordering::Less {
            k += 1;
        }
        // scaled = round(|x| * 10^{digits-1-k})
        let shift = digits as i64 - 1 - k;
        let (sn, sd) = if shift >= 0 {
            (
                &num * num_traits::pow(ten.clone(), shift as usize),
                den.clone(),
            )
        } else {
            (
                num.clone(),
                &den * num_traits::pow(ten.clone(), (-shift) as usize),
            )
        };
        let (q, r) = sn.div_rem(&sd);
        let mut scaled = q;
        if &r * 2 >= sd {
            scaled += 1;
        }
        let mut s = scaled.to_string();
        if s.len() > digits {
            // rounding carried into a new digit
            s.truncate(digits);
            k += 1;
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if k >= 0 && (k as usize) < digits {
            let (int, frac) = s.split_at(k as usize + 1);
            out.push_str(int);
            let frac = frac.trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else if k < 0 && k > -8 {
            out.push_str("0.");
            out.push_str(&"0".repeat((-k - 1) as usize));
            out.push_str(s.trim_end_matches('0'));
        } else {
            let (lead, rest) = s.split_at(1);
            out.push_str(lead);
            let rest = rest.trim_end_matches('0');
            if !rest.is_empty() {
                out.push('.');
                out.push_str(rest);
            }
            out.push_str(&format!("e{k}"));
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for RationalValue {
    fn from(r: BigRational) -> Self {
        RationalValue(r)
    }
}

impl From<u64> for RationalValue {
    fn from(n: u64) -> Self {
        RationalValue::from_integer(n)
    }
}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for RationalValue {
    type Err = Error;

    /// Accepts `n`, `-n` or `n/d`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidRational(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            let t = t.trim();
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(RationalValue::new(n, d))
            }
            None => Ok(RationalValue::from_integer(parse_int(s)?)),
        }
    }
}

impl Serialize for RationalValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&RationalValue> for &RationalValue {
            type Output = RationalValue;
            fn $method(self, rhs: &RationalValue) -> RationalValue {
                RationalValue(std::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
        impl std::ops::$trait for RationalValue {
            type Output = RationalValue;
            fn $method(self, rhs: RationalValue) -> RationalValue {
                RationalValue(std::ops::$trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::ops::Neg for RationalValue {
    type Output = RationalValue;
    fn neg(self) -> RationalValue {
        RationalValue(-self.0)
    }
}

impl std::iter::Sum for RationalValue {
    fn sum<I: Iterator<Item = RationalValue>>(iter: I) -> Self {
        iter.fold(RationalValue::zero(), |a, b| a + b)
    }
}
