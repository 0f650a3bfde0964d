//! Exact coefficient arithmetic over the three ground domains: arbitrary
//! precision integers, rationals in lowest terms, and residues modulo a prime.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Coefficient domain tag. Every `Poly` and `AlgebraElement` carries one and
/// operations refuse to mix them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Arbitrary-precision integers.
    Int,
    /// Arbitrary-precision rationals, stored in lowest terms.
    Rat,
    /// Residues in `[0, p)` for a prime `p`.
    Mod(u64),
}

impl Domain {
    pub fn is_field(self) -> bool {
        matches!(self, Domain::Rat | Domain::Mod(_))
    }

    /// Field characteristic: 0 for `Int`/`Rat`, `p` for `Mod(p)`.
    pub fn characteristic(self) -> u64 {
        match self {
            Domain::Int | Domain::Rat => 0,
            Domain::Mod(p) => p,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Int => write!(f, "ZZ"),
            Domain::Rat => write!(f, "QQ"),
            Domain::Mod(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact scalar in one of the three domains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Int(BigInt),
    Rat(BigRational),
    Mod { val: u64, p: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "division by zero mod {p}");
    mod_pow(a, p - 2, p)
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    let digits = r.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

impl Coefficient {
    pub fn zero(domain: Domain) -> Self {
        Self::from_i64(domain, 0)
    }

    pub fn one(domain: Domain) -> Self {
        Self::from_i64(domain, 1)
    }

    pub fn from_i64(domain: Domain, v: i64) -> Self {
        match domain {
            Domain::Int => Coefficient::Int(BigInt::from(v)),
            Domain::Rat => Coefficient::Rat(BigRational::from(BigInt::from(v))),
            Domain::Mod(p) => Coefficient::Mod {
                val: bigint_mod(&BigInt::from(v), p),
                p,
            },
        }
    }

    pub fn from_bigint(domain: Domain, v: BigInt) -> Self {
        match domain {
            Domain::Int => Coefficient::Int(v),
            Domain::Rat => Coefficient::Rat(BigRational::from(v)),
            Domain::Mod(p) => Coefficient::Mod {
                val: bigint_mod(&v, p),
                p,
            },
        }
    }

    pub fn from_ratio(domain: Domain, num: BigInt, den: BigInt) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        match domain {
            Domain::Int => {
                let q = BigRational::new(num, den);
                if !q.denom().is_one() {
                    return Err(PolyError::NotAnInteger(q.to_string()));
                }
                Ok(Coefficient::Int(q.to_integer()))
            }
            Domain::Rat => Ok(Coefficient::Rat(BigRational::new(num, den))),
            Domain::Mod(p) => {
                let d = bigint_mod(&den, p);
                if d == 0 {
                    return Err(PolyError::BadDenominatorModP { p });
                }
                let n = bigint_mod(&num, p);
                Ok(Coefficient::Mod {
                    val: mod_mul(n, mod_inv(d, p), p),
                    p,
                })
            }
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Coefficient::Int(_) => Domain::Int,
            Coefficient::Rat(_) => Domain::Rat,
            Coefficient::Mod { p, .. } => Domain::Mod(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_zero(),
            Coefficient::Rat(v) => v.is_zero(),
            Coefficient::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_one(),
            Coefficient::Rat(v) => v.is_one(),
            Coefficient::Mod { val, p } => *val == 1 % *p,
        }
    }

    fn binop(
        &self,
        other: &Self,
        fi: impl Fn(&BigInt, &BigInt) -> BigInt,
        fr: impl Fn(&BigRational, &BigRational) -> BigRational,
        fm: impl Fn(u64, u64, u64) -> u64,
    ) -> Self {
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(fi(a, b)),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(fr(a, b)),
            (Coefficient::Mod { val: a, p }, Coefficient::Mod { val: b, p: q }) if p == q => {
                Coefficient::Mod {
                    val: fm(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!(
                "mixed coefficient domains: {} vs {}",
                self.domain(),
                other.domain()
            ),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.binop(other, |a, b| a + b, |a, b| a + b, mod_add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.binop(
            other,
            |a, b| a - b,
            |a, b| a - b,
            |a, b, p| mod_add(a, p - b % p, p),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.binop(other, |a, b| a * b, |a, b| a * b, mod_mul)
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Int(v) => Coefficient::Int(-v),
            Coefficient::Rat(v) => Coefficient::Rat(-v),
            Coefficient::Mod { val, p } => Coefficient::Mod {
                val: (p - val % p) % p,
                p: *p,
            },
        }
    }

    /// Multiplicative inverse. Errors on zero or on the non-field domain `Int`.
    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        match self {
            Coefficient::Int(_) => Err(PolyError::NotAField(Domain::Int)),
            Coefficient::Rat(v) => Ok(Coefficient::Rat(v.recip())),
            Coefficient::Mod { val, p } => Ok(Coefficient::Mod {
                val: mod_inv(*val, *p),
                p: *p,
            }),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Lift an integer coefficient into the rationals; identity on `Rat`.
    pub fn lift_to_rat(&self) -> Result<Self, PolyError> {
        match self {
            Coefficient::Int(v) => Ok(Coefficient::Rat(BigRational::from(v.clone()))),
            Coefficient::Rat(v) => Ok(Coefficient::Rat(v.clone())),
            Coefficient::Mod { .. } => Err(PolyError::DomainMismatch {
                left: self.domain(),
                right: Domain::Rat,
            }),
        }
    }

    /// Reduce an integer or rational coefficient modulo `p`. Fails when `p`
    /// divides the denominator of a rational.
    pub fn reduce_mod(&self, p: u64) -> Result<Self, PolyError> {
        match self {
            Coefficient::Int(v) => Ok(Coefficient::Mod {
                val: bigint_mod(v, p),
                p,
            }),
            Coefficient::Rat(v) => {
                let d = bigint_mod(v.denom(), p);
                if d == 0 {
                    return Err(PolyError::BadDenominatorModP { p });
                }
                let n = bigint_mod(v.numer(), p);
                Ok(Coefficient::Mod {
                    val: mod_mul(n, mod_inv(d, p), p),
                    p,
                })
            }
            Coefficient::Mod { .. } => Err(PolyError::DomainMismatch {
                left: self.domain(),
                right: Domain::Mod(p),
            }),
        }
    }

    /// Smallest positive integer `d` with `d * self` integral (1 for `Int`/`Mod`).
    pub fn denominator(&self) -> BigInt {
        match self {
            Coefficient::Rat(v) => v.denom().clone(),
            _ => BigInt::one(),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(v) => write!(f, "{v}"),
            Coefficient::Rat(v) => {
                if v.denom().is_one() {
                    write!(f, "{}", v.numer())
                } else if v.is_negative() {
                    write!(f, "-{}/{}", v.numer().magnitude(), v.denom())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Coefficient::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_normalization() {
        let c = Coefficient::from_ratio(Domain::Rat, BigInt::from(4), BigInt::from(-6)).unwrap();
        match &c {
            Coefficient::Rat(r) => {
                assert_eq!(r.numer(), &BigInt::from(-2));
                assert_eq!(r.denom(), &BigInt::from(3));
            }
            _ => panic!("expected rational"),
        }
    }

    #[test]
    fn mod_p_arithmetic() {
        let d = Domain::Mod(5);
        let a = Coefficient::from_i64(d, 7); // 2
        let b = Coefficient::from_i64(d, -1); // 4
        assert_eq!(a.add(&b), Coefficient::from_i64(d, 1));
        assert_eq!(a.mul(&b), Coefficient::from_i64(d, 3));
        assert_eq!(b.inv().unwrap(), Coefficient::from_i64(d, 4)); // 4*4 = 16 = 1
    }

    #[test]
    fn reduce_mod_rejects_bad_denominator() {
        let half = Coefficient::from_ratio(Domain::Rat, BigInt::from(1), BigInt::from(2)).unwrap();
        assert!(half.reduce_mod(2).is_err());
        assert_eq!(
            half.reduce_mod(5).unwrap(),
            Coefficient::from_i64(Domain::Mod(5), 3)
        );
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(1) && !is_prime(91));
    }
}
