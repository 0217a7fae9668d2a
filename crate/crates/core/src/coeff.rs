//! Exact integer coefficients.
//!
//! Values that fit in an `i64` stay inline; anything larger is promoted to a
//! [`BigInt`]. Every arithmetic operation is checked, so no result is ever
//! rounded or wrapped.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Coefficient {
    Small(i64),
    Big(BigInt),
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Small(0)
    }

    pub fn one() -> Self {
        Coefficient::Small(1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Small(v) => *v == 0,
            Coefficient::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Small(v) => *v == 1,
            Coefficient::Big(b) => b.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Small(v) => *v < 0,
            Coefficient::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Coefficient {
        match self {
            Coefficient::Small(v) => match v.checked_abs() {
                Some(a) => Coefficient::Small(a),
                None => Coefficient::Big(BigInt::from(*v).abs()),
            },
            Coefficient::Big(b) => Coefficient::from_big(b.abs()),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Coefficient::Small(v) => BigInt::from(*v),
            Coefficient::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coefficient::Small(v) => Some(*v),
            Coefficient::Big(b) => b.to_i64(),
        }
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Coefficient::Small(v),
            None => Coefficient::Big(b),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn checked_div_exact(&self, divisor: i64) -> Option<Coefficient> {
        if divisor == 0 {
            return None;
        }
        match self {
            Coefficient::Small(v) => {
                if v % divisor == 0 {
                    v.checked_div(divisor)
                        .map(Coefficient::Small)
                        .or_else(|| Some(Coefficient::from_big(BigInt::from(*v) / divisor)))
                } else {
                    None
                }
            }
            Coefficient::Big(b) => {
                let (q, r) = b.div_rem(&BigInt::from(divisor));
                if r.is_zero() {
                    Some(Coefficient::from_big(q))
                } else {
                    None
                }
            }
        }
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::zero()
    }
}

impl From<i64> for Coefficient {
    fn from(v: i64) -> Self {
        Coefficient::Small(v)
    }
}

impl From<i32> for Coefficient {
    fn from(v: i32) -> Self {
        Coefficient::Small(v as i64)
    }
}

impl From<i128> for Coefficient {
    fn from(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(s) => Coefficient::Small(s),
            Err(_) => Coefficient::Big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Coefficient {
    fn from(b: BigInt) -> Self {
        Coefficient::from_big(b)
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coefficient::Small(a), Coefficient::Small(b)) => a == b,
            _ => self.to_bigint() == other.to_bigint(),
        }
    }
}

impl Eq for Coefficient {}

impl PartialOrd for Coefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coefficient {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coefficient::Small(a), Coefficient::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl std::hash::Hash for Coefficient {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Big values never fit in i64 (normalised on construction).
        match self {
            Coefficient::Small(v) => v.hash(state),
            Coefficient::Big(b) => b.hash(state),
        }
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        if let (Coefficient::Small(a), Coefficient::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Coefficient::Small(s);
            }
        }
        Coefficient::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        if let (Coefficient::Small(a), Coefficient::Small(b)) = (&*self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                *self = Coefficient::Small(s);
                return;
            }
        }
        *self = Coefficient::from_big(self.to_bigint() + rhs.to_bigint());
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if let (Coefficient::Small(a), Coefficient::Small(b)) = (self, rhs) {
            if let Some(p) = a.checked_mul(*b) {
                return Coefficient::Small(p);
            }
        }
        Coefficient::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Small(v) => match v.checked_neg() {
                Some(n) => Coefficient::Small(n),
                None => Coefficient::Big(-BigInt::from(*v)),
            },
            Coefficient::Big(b) => Coefficient::from_big(-b),
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Small(v) => write!(f, "{v}"),
            Coefficient::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Coefficient {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Coefficient::Small(v));
        }
        s.parse::<BigInt>().map(Coefficient::from_big)
    }
}
