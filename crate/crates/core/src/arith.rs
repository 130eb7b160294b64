//! Coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// A computable coefficient field, identified by its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coef {
        match self {
            Field::Rational => Coef::Q(BigRational::zero()),
            Field::Prime(p) => Coef::Fp(0, *p),
        }
    }

    pub fn one(&self) -> Coef {
        match self {
            Field::Rational => Coef::Q(BigRational::one()),
            Field::Prime(p) => Coef::Fp(1 % *p, *p),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coef {
        match self {
            Field::Rational => Coef::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coef::Fp(n.rem_euclid(*p as i64) as u32, *p),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coef {
        match self {
            Field::Rational => Coef::Q(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Coef::Fp(r.to_u32().expect("residue fits"), *p)
            }
        }
    }

    /// `num / den` in the field; `None` when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Coef> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(self.from_bigint(num) * d.inv())
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp({p})"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FromStr for Field {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rational);
        }
        let inner = t
            .strip_prefix("Fp(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F'));
        if let Some(num) = inner {
            let p: u32 = num
                .trim()
                .parse()
                .map_err(|_| ParseError::new(s, 0, "prime modulus"))?;
            if !is_prime(p) || p >= (1 << 31) {
                return Err(ParseError::new(s, 0, "a prime below 2^31"));
            }
            return Ok(Field::Prime(p));
        }
        Err(ParseError::new(s, 0, "`Q` or `Fp(<prime>)`"))
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A field element. Prime-field elements carry their modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coef {
    Q(BigRational),
    Fp(u32, u32),
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
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

impl Coef {
    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Q(q) => q.is_zero(),
            Coef::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coef::Q(q) => q.is_one(),
            Coef::Fp(v, _) => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Coef::Q(_) => Field::Rational,
            Coef::Fp(_, p) => Field::Prime(*p),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coef {
        match self {
            Coef::Q(q) => {
                assert!(!q.is_zero(), "inverse of zero");
                Coef::Q(q.recip())
            }
            Coef::Fp(v, p) => {
                assert!(*v != 0, "inverse of zero");
                Coef::Fp(pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32, *p)
            }
        }
    }

    /// Whether printing needs a leading minus (rationals only; prime-field
    /// elements print as their least nonnegative residue).
    pub fn is_negative(&self) -> bool {
        match self {
            Coef::Q(q) => q.is_negative(),
            Coef::Fp(..) => false,
        }
    }

    pub fn abs_string(&self) -> String {
        match self {
            Coef::Q(q) => q.abs().to_string(),
            Coef::Fp(v, _) => v.to_string(),
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Q(q) => write!(f, "{q}"),
            Coef::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

impl Add for &Coef {
    type Output = Coef;
    fn add(self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a + b),
            (Coef::Fp(a, p), Coef::Fp(b, q)) if p == q => {
                Coef::Fp(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            _ => panic!("mixed coefficient fields"),
        }
    }
}

impl Sub for &Coef {
    type Output = Coef;
    fn sub(self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a - b),
            (Coef::Fp(a, p), Coef::Fp(b, q)) if p == q => {
                Coef::Fp(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, *p)
            }
            _ => panic!("mixed coefficient fields"),
        }
    }
}

impl Mul for &Coef {
    type Output = Coef;
    fn mul(self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a * b),
            (Coef::Fp(a, p), Coef::Fp(b, q)) if p == q => {
                Coef::Fp(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            _ => panic!("mixed coefficient fields"),
        }
    }
}

impl Neg for &Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        match self {
            Coef::Q(a) => Coef::Q(-a),
            Coef::Fp(a, p) => Coef::Fp((*p - *a) % *p, *p),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Coef {
            type Output = Coef;
            fn $m(self, o: Coef) -> Coef {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        -(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(7);
        for n in 1..7 {
            let c = f.from_i64(n);
            assert!((&c * &c.inv()).is_one());
        }
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn parse_fields() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("Fp(5)".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("Fp(6)".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn ratio_in_prime_field() {
        let f = Field::Prime(5);
        let c = f.from_ratio(&BigInt::from(2), &BigInt::from(3)).unwrap();
        assert_eq!(&c * &f.from_i64(3), f.from_i64(2));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_none());
    }
}
