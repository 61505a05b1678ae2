//! Ground fields and their elements.
//!
//! Two kinds of field are supported: the rationals, with arbitrary-precision
//! reduced fractions, and prime fields `GF(p)` with `p < 2^31`. A [`Scalar`]
//! carries its field with it; mixing fields in one arithmetic operation is an
//! invariant violation and panics. Containers ([`crate::ExactMatrix`] and
//! friends) check field agreement when they are built.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MODULUS_BOUND: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    /// Builds `GF(p)`, checking primality by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..MODULUS_BOUND).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p as u64),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Q(BigRational::from_integer(n.into()))),
            FieldSpec::Prime(p) => Scalar(Repr::Fp {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            }),
        }
    }

    /// `num / den`; panics if `den` vanishes in the field.
    pub fn fraction(&self, num: i64, den: i64) -> Scalar {
        &self.from_i64(num) / &self.from_i64(den)
    }

    /// Residue `value mod p`. Panics over the rationals.
    pub fn residue(&self, value: u64) -> Scalar {
        match *self {
            FieldSpec::Rationals => panic!("residue() called on the rationals"),
            FieldSpec::Prime(p) => Scalar(Repr::Fp {
                value: (value % p as u64) as u32,
                modulus: p,
            }),
        }
    }

    pub fn from_rational(&self, q: BigRational) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Q(q)),
            FieldSpec::Prime(_) => {
                let n = self.bigint_scalar(q.numer());
                let d = self.bigint_scalar(q.denom());
                &n / &d
            }
        }
    }

    fn bigint_scalar(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Q(BigRational::from_integer(n.clone()))),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                self.residue(r.to_u64().expect("reduced residue fits"))
            }
        }
    }

    /// Parses `a/b` or an integer over the rationals, and an integer over a
    /// prime field (reduced into `[0, p)`).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::ParseScalar(text.to_string());
        let t = text.trim();
        match *self {
            FieldSpec::Rationals => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (parse_int(n).ok_or_else(bad)?, parse_int(d).ok_or_else(bad)?),
                    None => (parse_int(t).ok_or_else(bad)?, BigInt::one()),
                };
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar(Repr::Q(BigRational::new(num, den))))
            }
            FieldSpec::Prime(_) => Ok(self.bigint_scalar(&parse_int(t).ok_or_else(bad)?)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

fn parse_int(t: &str) -> Option<BigInt> {
    let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    Fp { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Q(_) => FieldSpec::Rationals,
            Repr::Fp { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_zero(),
            Repr::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_one(),
            Repr::Fp { value, .. } => *value == 1,
        }
    }

    /// The residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Q(_) => None,
            Repr::Fp { value, .. } => Some(*value as u64),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Q(q) => Some(q),
            Repr::Fp { .. } => None,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Q(q) => Scalar(Repr::Q(q.recip())),
            Repr::Fp { value, modulus } => Scalar(Repr::Fp {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            }),
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Height of a rational (max of |numerator|, denominator bit lengths); 0 for residues.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Q(q) => q.numer().bits().max(q.denom().bits()),
            Repr::Fp { .. } => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_negative(),
            Repr::Fp { .. } => false,
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic sorting: rationals numerically,
/// residues by their representative in `[0, p)`.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => a.cmp(b),
            (Repr::Fp { value: a, modulus: p }, Repr::Fp { value: b, modulus: q }) => {
                p.cmp(q).then(a.cmp(b))
            }
            (Repr::Q(_), Repr::Fp { .. }) => Ordering::Less,
            (Repr::Fp { .. }, Repr::Q(_)) => Ordering::Greater,
        }
    }
}

fn mismatch() -> ! {
    panic!("mixed-field arithmetic")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a + b)),
            (Repr::Fp { value: a, modulus: p }, Repr::Fp { value: b, modulus: q }) if p == q => {
                Scalar(Repr::Fp {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a - b)),
            (Repr::Fp { value: a, modulus: p }, Repr::Fp { value: b, modulus: q }) if p == q => {
                Scalar(Repr::Fp {
                    value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a * b)),
            (Repr::Fp { value: a, modulus: p }, Repr::Fp { value: b, modulus: q }) if p == q => {
                Scalar(Repr::Fp {
                    value: (*a as u64 * *b as u64 % *p as u64) as u32,
                    modulus: *p,
                })
            }
            _ => mismatch(),
        }
    }
}

/// Panics on division by zero.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Q(a) => Scalar(Repr::Q(-a)),
            Repr::Fp { value, modulus } => Scalar(Repr::Fp {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
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
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_validation() {
        assert!(FieldSpec::prime(101).is_ok());
        assert!(FieldSpec::prime(2).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(Error::InvalidModulus(1)));
        assert_eq!(FieldSpec::prime(91), Err(Error::InvalidModulus(91)));
        assert_eq!(FieldSpec::prime(1 << 31), Err(Error::InvalidModulus(1 << 31)));
        assert!(FieldSpec::prime(2147483647).is_ok());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::Rationals;
        let a = q.parse_scalar("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = q.parse_scalar("3/2").unwrap();
        assert!((&a + &b).is_zero());
        assert_eq!((&b * &b).to_string(), "9/4");
        assert_eq!(q.parse_scalar("-7").unwrap().to_string(), "-7");
    }

    #[test]
    fn parse_rejects_garbage() {
        let q = FieldSpec::Rationals;
        for bad in ["", "1/0", "a", "1/", "/2", "1.5", "--1", "1/2/3"] {
            assert!(q.parse_scalar(bad).is_err(), "{bad:?}");
        }
        let f = FieldSpec::prime(7).unwrap();
        assert!(f.parse_scalar("1/2").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.parse_scalar("-1").unwrap().residue(), Some(6));
        assert_eq!(f.parse_scalar("100").unwrap().residue(), Some(2));
        let three = f.from_i64(3);
        let inv = three.inv().unwrap();
        assert!((&three * &inv).is_one());
        assert_eq!(inv.residue(), Some(5));
        assert!(f.zero().inv().is_none());
        assert_eq!((-&three).residue(), Some(4));
        assert_eq!(f.fraction(1, 2).residue(), Some(4));
    }

    #[test]
    fn rational_into_prime_field() {
        let f = FieldSpec::prime(11).unwrap();
        let q = BigRational::new((-3).into(), 4.into());
        let s = f.from_rational(q);
        assert_eq!((&s * &f.from_i64(4)).residue(), Some(8));
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixing_fields_panics() {
        let _ = &FieldSpec::Rationals.one() + &FieldSpec::prime(5).unwrap().one();
    }
}
