use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive); residues multiply inside `u64`.
pub const PRIME_BOUND: u64 = 1 << 31;

/// Descriptor of the base field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= PRIME_BOUND || !is_prime(p) {
            return Err(Error::Precondition(format!(
                "modulus {p} must be a prime below 2^31"
            )));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p as u64),
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        match *self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElem::Prime {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match *self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElem::Prime {
                    value: r.to_u32().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::Parse(format!("denominator {den} vanishes in {self}")));
        }
        Ok(&self.from_bigint(num) / &d)
    }

    /// Parses `"a"` or `"a/b"` with integer `a`, `b`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&num, &den)
    }

    /// Uniform element of `F_p`, or an integer in `[-bound, bound]` over Q.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElem {
        match *self {
            Field::Rational => self.from_i64(rng.gen_range(-bound..=bound)),
            Field::Prime(p) => FieldElem::Prime {
                value: rng.gen_range(0..p),
                modulus: p,
            },
        }
    }

    /// Maps an element of another field into this one (rationals reduce mod p).
    pub fn convert(&self, x: &FieldElem) -> Result<FieldElem> {
        match (self, x) {
            (_, FieldElem::Rational(q)) => self.from_ratio(q.numer(), q.denom()),
            (Field::Prime(p), FieldElem::Prime { modulus, .. }) if p == modulus => Ok(x.clone()),
            (_, other) => Err(Error::FieldMismatch(*self, other.field())),
        }
    }

    /// All elements of a prime field in increasing residue order.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) => Some(
                (0..p)
                    .map(|value| FieldElem::Prime { value, modulus: p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "p={p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "rational" | "rationals" => return Ok(Field::Rational),
            _ => {}
        }
        let digits = t
            .strip_prefix("p=")
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix("GF(").and_then(|x| x.strip_suffix(')')))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown field descriptor {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field descriptor {s:?}")))?;
        Field::prime(p)
    }
}

/// An exact scalar tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Prime { value: u32, modulus: u32 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Prime { value, .. } => *value == 1,
        }
    }

    /// Bit length of numerator plus denominator; 0 for prime-field values.
    /// Used only to pick cheap pivots over Q.
    pub fn height(&self) -> u64 {
        match self {
            FieldElem::Rational(q) => q.numer().bits() + q.denom().bits(),
            FieldElem::Prime { .. } => 0,
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Prime { value, modulus } => {
                let p = *modulus as i64;
                let (mut a, mut b) = (*value as i64, p);
                let (mut x0, mut x1) = (1i64, 0i64);
                while b != 0 {
                    let q = a / b;
                    (a, b) = (b, a - q * b);
                    (x0, x1) = (x1, x0 - q * x1);
                }
                FieldElem::Prime {
                    value: x0.rem_euclid(p) as u32,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn pow(&self, mut e: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer representative for Q values with denominator 1.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            FieldElem::Rational(q) if q.is_integer() => Some(q.numer().clone()),
            FieldElem::Rational(_) => None,
            FieldElem::Prime { value, .. } => Some(BigInt::from(*value)),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_negative(),
            FieldElem::Prime { .. } => false,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            FieldElem::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            FieldElem::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order over Q, residue order over `F_p`; rationals sort first.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => a.cmp(b),
            (
                FieldElem::Prime { value: a, modulus: p },
                FieldElem::Prime { value: b, modulus: q },
            ) => (p, a).cmp(&(q, b)),
            (FieldElem::Rational(_), _) => Ordering::Less,
            (_, FieldElem::Rational(_)) => Ordering::Greater,
        }
    }
}

#[inline]
fn same_modulus(a: u32, b: u32) -> u32 {
    assert_eq!(a, b, "field mismatch: F_{a} vs F_{b}");
    a
}

fn mismatch(a: &FieldElem, b: &FieldElem) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (
                FieldElem::Prime { value: a, modulus: p },
                FieldElem::Prime { value: b, modulus: q },
            ) => {
                let p = same_modulus(*p, *q);
                FieldElem::Prime {
                    value: ((*a as u64 + *b as u64) % p as u64) as u32,
                    modulus: p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a - b),
            (
                FieldElem::Prime { value: a, modulus: p },
                FieldElem::Prime { value: b, modulus: q },
            ) => {
                let p = same_modulus(*p, *q);
                FieldElem::Prime {
                    value: ((*a as u64 + p as u64 - *b as u64) % p as u64) as u32,
                    modulus: p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (
                FieldElem::Prime { value: a, modulus: p },
                FieldElem::Prime { value: b, modulus: q },
            ) => {
                let p = same_modulus(*p, *q);
                FieldElem::Prime {
                    value: ((*a as u64 * *b as u64) % p as u64) as u32,
                    modulus: p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Prime { value, modulus } => FieldElem::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}
