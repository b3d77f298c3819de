//! Exact scalars over ℚ or a prime field F_p.
//!
//! Both backends sit behind one runtime tag, [`Field`], so the same matrix and
//! polynomial code runs over either. Rationals are arbitrary precision and
//! always in lowest terms; residues are stored in `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Default modulus for the fast backend.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Builds F_p, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn fp() -> Field {
        Field::Prime(DEFAULT_PRIME)
    }

    /// 0 for ℚ, p for F_p.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p as u64,
        }
    }

    /// Fails unless every integer in `1..=bound` is invertible.
    pub fn require_invertible_up_to(self, bound: usize) -> Result<()> {
        match self {
            Field::Prime(p) if (p as usize) <= bound => Err(Error::FieldTooSmall {
                p: p as u64,
                need: bound,
            }),
            _ => Ok(()),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Mod {
                    value: r.to_u32().expect("residue fits"),
                    p,
                }
            }
        }
    }

    /// `num / den` as an element of this field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                let inv = d.inv().ok_or(Error::DivisionByZero)?;
                Ok(&self.from_bigint(num) * &inv)
            }
        }
    }

    /// Parses `-3`, `7/2`, or for F_p any integer (reduced mod p).
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::Parse(format!("invalid coefficient `{t}`"));
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (
                BigInt::from_str(a.trim()).map_err(|_| bad())?,
                BigInt::from_str(b.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(t).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&num, &den)
    }

    /// Uniform sample: integers in `[-9, 9]` over ℚ, residues in `[0, p)` over F_p.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-9..=9)),
            Field::Prime(p) => Scalar::Mod {
                value: rng.gen_range(0..p),
                p,
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q`, `fp` (default prime) and `fp:<p>`.
    fn from_str(s: &str) -> Result<Field> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" | "qq" | "rational" => Ok(Field::Rational),
            "fp" => Ok(Field::fp()),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
                Field::prime(p)
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv().ok_or(Error::DivisionByZero)?)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Canonical text: lowest-terms fraction over ℚ, symmetric residue over F_p.
    pub fn signed_repr(&self) -> (bool, String) {
        match self {
            Scalar::Rat(r) => {
                let neg = r.is_negative();
                let a = r.abs();
                let s = if a.is_integer() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                };
                (neg, s)
            }
            Scalar::Mod { value, p } => {
                if *value > p / 2 {
                    (true, (p - value).to_string())
                } else {
                    (false, value.to_string())
                }
            }
        }
    }

    /// The numeric value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rat(_) => None,
            Scalar::Mod { .. } => {
                let (neg, s) = self.signed_repr();
                s.parse::<i64>().ok().map(|v| if neg { -v } else { v })
            }
        }
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!(
            "scalar field mismatch: {} vs {}",
            self.field(),
            other.field()
        )
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, s) = self.signed_repr();
        if neg {
            write!(f, "-{s}")
        } else {
            write!(f, "{s}")
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            _ => self.mismatch(rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            _ => self.mismatch(rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            _ => self.mismatch(rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (*p - *value) % *p,
                p: *p,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_construction() {
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(101).is_ok());
        assert_eq!(Field::prime(32001), Err(Error::NotPrime(32001)));
        assert_eq!(Field::prime(2), Err(Error::NotPrime(2)));
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rational;
        let x = q.parse_scalar("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        let y = q.parse_scalar("3/2").unwrap();
        assert!((x + y).is_zero());
    }

    #[test]
    fn residues_and_inverses() {
        let f = Field::prime(101).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Mod { value: 100, p: 101 });
        assert_eq!(a.to_string(), "-1");
        for v in 1..101 {
            let x = f.from_i64(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(51));
        assert!(f.parse_scalar("1/101").is_err());
    }

    #[test]
    fn field_round_trips_through_text() {
        for s in ["q", "fp:101", "fp:32003"] {
            assert_eq!(s.parse::<Field>().unwrap().to_string(), s);
        }
        assert_eq!("fp".parse::<Field>().unwrap(), Field::fp());
    }

    #[test]
    fn too_small_characteristic() {
        let f = Field::prime(5).unwrap();
        assert!(f.require_invertible_up_to(4).is_ok());
        assert!(f.require_invertible_up_to(6).is_err());
        assert!(Field::Rational.require_invertible_up_to(1000).is_ok());
    }
}
