//! Exact coefficient arithmetic: the rationals, or a prime field `F_p`.
//!
//! All linear algebra and rewriting in this crate runs over one of these two
//! fields.  There are no floating point numbers anywhere; equality of scalars
//! is structural equality of canonical forms.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// The coefficient field of a session: `Q` or `F_p` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers, with arbitrary-precision numerator/denominator.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} vanishes modulo p")]
    BadDenominator(i64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Construct `F_p`, rejecting composite moduli.
    pub fn fp(p: u64) -> Result<Field, ScalarError> {
        if is_prime(p) {
            Ok(Field::Fp(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
            Field::Fp(p) => Scalar::Fp {
                p,
                val: (n.rem_euclid(p as i64)) as u64,
            },
        }
    }

    /// `num/den` as a field element.  In `F_p` the denominator must be a unit.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            Field::Q => Ok(Scalar::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            Field::Fp(_) => {
                let d = self.from_i64(den);
                if d.is_zero() {
                    return Err(ScalarError::BadDenominator(den));
                }
                Ok(self.from_i64(num).mul(&d.inv().unwrap()))
            }
        }
    }
}

/// A single field element.  Mixed-field arithmetic is a bug and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Fp {
                    p: *p,
                    val: (a + b) % p,
                }
            }
            _ => panic!("mixed fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: (p - val) % p,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed moduli");
                // p < 2^32 is enforced nowhere, so widen before multiplying.
                Scalar::Fp {
                    p: *p,
                    val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                }
            }
            _ => panic!("mixed fields"),
        }
    }

    /// Multiplicative inverse; `Err` on zero.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { p, val } => {
                // Fermat: val^(p-2) mod p.
                let mut acc: u128 = 1;
                let mut base: u128 = *val as u128;
                let mut e = p - 2;
                let m = *p as u128;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Scalar::Fp {
                    p: *p,
                    val: acc as u64,
                }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{}", val),
        }
    }
}

impl Scalar {
    /// Signed display helper: `(sign, magnitude-string)` for pretty-printing
    /// polynomials as `a - b` rather than `a + -b`.
    pub fn display_signed(&self) -> (bool, String) {
        match self {
            Scalar::Q(r) => {
                if r.is_negative() {
                    (true, format!("{}", Scalar::Q(-r)))
                } else {
                    (false, format!("{}", self))
                }
            }
            Scalar::Fp { .. } => (false, format!("{}", self)),
        }
    }
}
