//! Ground fields: a prime field `F_p` with a runtime modulus, or the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Default prime. Larger than every dimension that shows up at desk scale,
/// so the trace-form radical criterion is valid.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > (1 << 31) {
            return Err(Error::InvalidField(format!("{p} does not fit the word-size arithmetic")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `Q` or a prime number.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(Field::Rational);
        }
        let p: u32 = s
            .parse()
            .map_err(|_| Error::InvalidField(format!("expected a prime or Q, got `{s}`")))?;
        Field::prime(p)
    }

    /// Short tag used in reports and files.
    pub fn tag(&self) -> String {
        match self {
            Field::Prime(p) => p.to_string(),
            Field::Rational => "Q".to_string(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Fp { value: 0, p },
            Field::Rational => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Prime(p) => {
                let v = n.rem_euclid(p as i64) as u32;
                Scalar::Fp { value: v, p }
            }
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.from_i64(num) * inv)
    }

    /// `true` if the trace-form radical criterion is exact for algebras of dimension `dim`.
    pub fn supports_trace_radical(&self, dim: usize) -> bool {
        match *self {
            Field::Prime(p) => (p as usize) > dim,
            Field::Rational => true,
        }
    }

    /// A uniformly random element (prime field) or a small random integer (rationals).
    pub fn random<R: Rng>(&self, rng: &mut R) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Fp { value: rng.gen_range(0..p), p },
            Field::Rational => self.from_i64(rng.gen_range(-1_000_000..=1_000_000)),
        }
    }

    /// Enumerates the whole field when it is small enough; `None` for Q or large p.
    pub fn elements(&self, limit: u64) -> Option<Vec<Scalar>> {
        match *self {
            Field::Prime(p) if (p as u64) <= limit => {
                Some((0..p).map(|v| Scalar::Fp { value: v, p }).collect())
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { value: u32, p: u32 },
    Q(BigRational),
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Prime(*p),
            Scalar::Q(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Fp { value, p } => {
                if *value == 0 {
                    None
                } else {
                    let v = pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32;
                    Some(Scalar::Fp { value: v, p: *p })
                }
            }
            Scalar::Q(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(q.recip()))
                }
            }
        }
    }

    /// Signed integer representative for display: values above p/2 print negative.
    pub fn to_display_string(&self) -> String {
        self.to_string()
    }

    /// Integer value if this scalar is (the image of) a small integer.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Fp { value, p } => {
                let v = *value as i64;
                let p = *p as i64;
                Some(if v > p / 2 { v - p } else { v })
            }
            Scalar::Q(q) => {
                if q.is_integer() {
                    let n = q.to_integer();
                    i64::try_from(n).ok()
                } else {
                    None
                }
            }
        }
    }

    #[inline]
    fn check(&self, other: &Scalar) {
        debug_assert_eq!(self.field(), other.field(), "mixed field tags");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { .. } => write!(f, "{}", self.as_i64().unwrap_or(0)),
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

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, o: &'a Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => {
                let s = *a as u64 + *b as u64;
                let p64 = *p as u64;
                Scalar::Fp { value: (if s >= p64 { s - p64 } else { s }) as u32, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => panic!("mixed field tags in scalar addition"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn sub(self, o: &'a Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => {
                let v = if a >= b { a - b } else { p - (b - a) };
                Scalar::Fp { value: v, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => panic!("mixed field tags in scalar subtraction"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn mul(self, o: &'a Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => {
                Scalar::Fp { value: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => panic!("mixed field tags in scalar multiplication"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    #[inline]
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { value, p } => {
                Scalar::Fp { value: if *value == 0 { 0 } else { p - value }, p: *p }
            }
            Scalar::Q(a) => Scalar::Q(-a),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, o: &'a Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_arithmetic_is_reduced() {
        let f = Field::Prime(5);
        let a = f.from_i64(7);
        assert_eq!(a, Scalar::Fp { value: 2, p: 5 });
        assert_eq!(f.from_i64(-1), Scalar::Fp { value: 4, p: 5 });
        assert_eq!((a.clone() * a.inv().unwrap()), f.one());
        assert_eq!(f.from_i64(3) - f.from_i64(4), f.from_i64(4));
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let f = Field::Rational;
        let x = f.from_ratio(2, 4).unwrap();
        match &x {
            Scalar::Q(q) => {
                assert_eq!(q.numer(), &BigInt::from(1));
                assert_eq!(q.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
        let y = f.from_ratio(3, -6).unwrap();
        assert_eq!(x + y, f.zero());
    }

    #[test]
    fn parse_field() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("32003").unwrap(), Field::Prime(32003));
        assert!(Field::parse("12").is_err());
    }

    #[test]
    fn signed_display() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-2).to_string(), "-2");
    }
}
