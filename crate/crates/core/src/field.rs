//! Exact field arithmetic: the rationals with arbitrary-precision integers,
//! and the prime fields GF(p).
//!
//! Every scalar knows its field; mixing fields in one operation is a bug and
//! panics. Entry points that accept user data check field compatibility up
//! front and report `Error::FieldMismatch` instead.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::Error;

/// A ground field: characteristic 0 means the rationals, otherwise GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::BadField(p));
        }
        if p >= 1 << 31 {
            return Err(Error::BadField(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::zero()),
            p => Scalar::Fp { p, val: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::one()),
            p => Scalar::Fp { p, val: 1 },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            p => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, val: m }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|s| s <= p).unwrap_or(false) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact scalar. Rational values are kept in lowest terms with positive
/// denominator (the `BigRational` normal form); GF(p) values live in [0, p).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::rationals(),
            Scalar::Fp { p, .. } => FieldSpec { characteristic: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Fp { p: *p, val: (a + b) % p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: if *val == 0 { 0 } else { p - val } },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Fp { p: *p, val: (a * b) % p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: inv_mod(*val, *p) },
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Serialize into a JSON value: rationals as canonical strings, GF(p)
    /// values as plain integers.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rat(r) => serde_json::Value::String(rational_string(r)),
            Scalar::Fp { val, .. } => serde_json::Value::Number((*val).into()),
        }
    }

    pub fn from_json(field: FieldSpec, v: &serde_json::Value) -> Result<Scalar, Error> {
        match field.characteristic() {
            0 => {
                let s = v
                    .as_str()
                    .ok_or_else(|| Error::Parse(format!("expected rational string, got {v}")))?;
                parse_rational(s)
            }
            p => {
                let n = v
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("expected GF({p}) integer, got {v}")))?;
                Ok(field.from_i64(n))
            }
        }
    }
}

/// Canonical "p/q" form in lowest terms with q > 0; integers print without
/// the "/1" suffix.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Scalar, Error> {
    let mk_err = || Error::Parse(format!("bad rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
    let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
    if d.is_zero() {
        return Err(mk_err());
    }
    Ok(Scalar::Rat(BigRational::new(n, d)))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended euclid on i128, p prime and a nonzero mod p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "not invertible");
    t0.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", rational_string(r)),
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = FieldSpec::rationals();
        let half = f.from_i64(1).div(&f.from_i64(2)).unwrap();
        let third = f.from_i64(1).div(&f.from_i64(3)).unwrap();
        let sum = half.add(&third);
        assert_eq!(sum, f.from_i64(5).div(&f.from_i64(6)).unwrap());
        assert_eq!(rational_string_of(&sum), "5/6");
    }

    fn rational_string_of(s: &Scalar) -> String {
        match s {
            Scalar::Rat(r) => rational_string(r),
            _ => panic!(),
        }
    }

    #[test]
    fn gf_p_inverses() {
        let f = FieldSpec::prime(7).unwrap();
        for v in 1..7 {
            let x = f.from_i64(v);
            let i = x.inv().unwrap();
            assert!(x.mul(&i).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(97).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(91).is_err());
    }

    #[test]
    fn scalar_json_round_trip() {
        let q = FieldSpec::rationals();
        let x = q.from_i64(-3).div(&q.from_i64(4)).unwrap();
        let j = x.to_json();
        assert_eq!(j, serde_json::json!("-3/4"));
        assert_eq!(Scalar::from_json(q, &j).unwrap(), x);

        let f5 = FieldSpec::prime(5).unwrap();
        let y = f5.from_i64(-1);
        assert_eq!(y.to_json(), serde_json::json!(4));
        assert_eq!(Scalar::from_json(f5, &y.to_json()).unwrap(), y);
    }
}
