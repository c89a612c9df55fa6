//! Ground fields and their elements.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ground field: a prime field `F_p` (with `p < 2^31`) or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Fp(u32),
    Q,
}

impl Field {
    /// Builds `F_p`, rejecting composite or oversized moduli.
    pub fn prime(p: u32) -> Result<Field> {
        if p < 2 || p >= (1u32 << 31) || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { v: 0, p },
            Field::Q => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { v: 1 % p, p },
            Field::Q => Scalar::Q(BigRational::one()),
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num/den` in this field; `None` when `den` vanishes.
    pub fn from_ratio(self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.from_i64(den).inv()?;
        Some(self.from_i64(num) * d)
    }

    /// Number of elements, `None` for `Q`.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Fp(p) => Some(p as u64),
            Field::Q => None,
        }
    }

    /// The `i`-th element in a fixed enumeration (used for exhaustive searches
    /// over small prime fields and for sampling over `Q`).
    pub fn element(self, i: u64) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp {
                v: (i % p as u64) as u32,
                p,
            },
            Field::Q => {
                // 0, 1, -1, 2, -2, ...
                let k = i.div_ceil(2) as i64;
                self.from_i64(if i % 2 == 1 { k } else { -k })
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            Field::Fp(p) => format!("F{p}"),
            Field::Q => "Q".to_string(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`]. `F_p` values are kept in `[0, p)`; rationals
/// are always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { v: u32, p: u32 },
    Q(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Fp(*p),
            Scalar::Q(_) => Field::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(q.recip()),
        })
    }

    /// Integer representative for `F_p`, numerator/denominator for `Q`.
    pub fn to_parts(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Fp { v, .. } => (BigInt::from(*v), BigInt::one()),
            Scalar::Q(q) => (q.numer().clone(), q.denom().clone()),
        }
    }

    /// True when the printed form needs no leading sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Fp { .. } => false,
            Scalar::Q(q) => q.is_negative(),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (*p - *v) % *p,
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(-q),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic_is_canonical() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, f.from_i64(6));
        assert_eq!(&a * &a, f.one());
        assert_eq!(f.from_i64(3).inv().unwrap() * f.from_i64(3), f.one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Q;
        let half = q.from_ratio(2, 4).unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(q.from_ratio(-3, -6).unwrap(), half);
        assert!((half.clone() - half).is_zero());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn element_enumeration_covers_small_fields() {
        let f = Field::Fp(3);
        let all: Vec<_> = (0..3).map(|i| f.element(i)).collect();
        assert_eq!(all, vec![f.from_i64(0), f.from_i64(1), f.from_i64(2)]);
    }
}
