//! Field descriptors and exact scalars.
//!
//! A [`Scalar`] is either an arbitrary-precision rational (always in lowest
//! terms with positive denominator, courtesy of `num-rational`) or a residue
//! modulo a prime `p < 2^31`. Arithmetic between scalars of different fields
//! is a programming error and panics.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinError;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Prime field `F_p`; rejects composites and moduli outside `[2, 2^31)`.
    pub fn prime(p: u64) -> Result<Field, LinError> {
        if !(2..(1u64 << 31)).contains(&p) || !is_prime(p) {
            return Err(LinError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn is_prime(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    /// Field size for prime fields.
    pub fn order(&self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                v: v.rem_euclid(*p as i64) as u32,
                p: *p,
            },
        }
    }

    /// The image of the fraction `num/den`; `None` when `den` vanishes in the field.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match self {
            Field::Rational => {
                if den.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(BigRational::new(num.clone(), den.clone())))
                }
            }
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let n = num.mod_floor(&m).to_u32()?;
                let d = den.mod_floor(&m).to_u32()?;
                let d = Scalar::Mod { v: d, p: *p };
                d.inv().map(|d| Scalar::Mod { v: n, p: *p } * d)
            }
        }
    }

    /// All field elements in canonical order `0, 1, …, p-1` (prime fields only).
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar> + Clone> {
        let p = self.order()?;
        Some((0..p).map(move |v| Scalar::Mod { v, p }))
    }

    pub fn zeros(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    /// Standard basis vector `e_i` of length `n`.
    pub fn unit_vector(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u32, p: u32 },
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
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { v, p } => {
                let inv = (*v as i64).extended_gcd(&(*p as i64)).x.rem_euclid(*p as i64);
                Scalar::Mod { v: inv as u32, p: *p }
            }
        })
    }

    /// Numerator and denominator of the canonical representative.
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rat(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Mod { v, .. } => (BigInt::from(*v), BigInt::one()),
        }
    }

    /// Bit length of the numerator plus denominator; a coefficient-growth gauge.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rat(r) => r.numer().bits() + r.denom().bits(),
            Scalar::Mod { .. } => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("arithmetic between {} and {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => Scalar::Mod {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => Scalar::Mod {
                v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => Scalar::Mod {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: (*p - *v) % *p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

/// Dot product of two equal-length vectors; `zero` supplies the field.
pub fn dot(zero: &Scalar, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(zero.clone(), |acc, (x, y)| acc + x * y)
}
