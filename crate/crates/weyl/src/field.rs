//! Exact coefficient arithmetic over two backends: arbitrary-precision
//! rationals and odd prime fields.
//!
//! Every scalar carries enough information to perform arithmetic on its
//! own; mixing scalars from different fields is reported as
//! [`WeylError::FieldMismatch`] by the checked entry points and panics in
//! the operator impls (a programming error, like an out-of-bounds index).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Result, WeylError};

/// Largest supported prime-field modulus (exclusive).
///
/// Keeping moduli below 2^63 lets sums of two canonical residues fit in a
/// `u64` before reduction.
pub const MAX_MODULUS: u64 = 1 << 63;

/// Identifies a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// Arbitrary-precision rational numbers.
    Rational,
    /// Integers modulo the given prime.
    PrimeField(u64),
}

impl FieldDescriptor {
    /// Constructs a prime-field descriptor, checking primality.
    pub fn prime_field(modulus: u64) -> Result<Self> {
        if modulus >= MAX_MODULUS {
            return Err(WeylError::ModulusTooLarge(modulus));
        }
        if !modarith::is_prime_u64(modulus) {
            return Err(WeylError::NotPrime(modulus));
        }
        Ok(FieldDescriptor::PrimeField(modulus))
    }

    /// Succeeds iff the field characteristic is zero or exceeds `bound`.
    ///
    /// Callers on the fast multiplication paths pass `bound = 8*max(d, r)`,
    /// which dominates every factorial and point count those paths invert.
    pub fn characteristic_guard(&self, bound: u64) -> Result<()> {
        match self {
            FieldDescriptor::Rational => Ok(()),
            FieldDescriptor::PrimeField(p) => {
                if *p > bound {
                    Ok(())
                } else {
                    Err(WeylError::CharacteristicTooSmall {
                        modulus: *p,
                        required: bound,
                    })
                }
            }
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::zero(*self)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::one(*self)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "rational"),
            FieldDescriptor::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = WeylError;

    /// Parses a field selection string: `rational` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldDescriptor::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let modulus: u64 = p
                .parse()
                .map_err(|_| WeylError::Parse(format!("bad modulus in field string {s:?}")))?;
            return FieldDescriptor::prime_field(modulus);
        }
        Err(WeylError::Parse(format!(
            "unknown field {s:?}; expected `rational` or `fp:<p>`"
        )))
    }
}

/// An exact scalar: a reduced fraction or a canonical residue in
/// `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn zero(field: FieldDescriptor) -> Self {
        match field {
            FieldDescriptor::Rational => FieldElement::Rational(BigRational::zero()),
            FieldDescriptor::PrimeField(p) => FieldElement::Prime {
                value: 0,
                modulus: p,
            },
        }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        match field {
            FieldDescriptor::Rational => FieldElement::Rational(BigRational::one()),
            FieldDescriptor::PrimeField(p) => FieldElement::Prime {
                value: 1 % p,
                modulus: p,
            },
        }
    }

    /// Canonical image of an integer.
    pub fn from_integer(field: FieldDescriptor, n: i64) -> Self {
        match field {
            FieldDescriptor::Rational => {
                FieldElement::Rational(BigRational::from_integer(BigInt::from(n)))
            }
            FieldDescriptor::PrimeField(p) => {
                let v = (n as i128).rem_euclid(p as i128) as u64;
                FieldElement::Prime {
                    value: v,
                    modulus: p,
                }
            }
        }
    }

    /// Builds a rational from a numerator/denominator pair.
    pub fn rational(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(WeylError::DivisionByZero);
        }
        Ok(FieldElement::Rational(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldElement::Rational(_) => FieldDescriptor::Rational,
            FieldElement::Prime { modulus, .. } => FieldDescriptor::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime { value, modulus } => *value == 1 % *modulus,
        }
    }

    fn same_field(&self, rhs: &Self) -> Result<()> {
        let (a, b) = (self.descriptor(), rhs.descriptor());
        if a == b {
            Ok(())
        } else {
            Err(WeylError::FieldMismatch { left: a, right: b })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime {
                    value: modarith::add_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime {
                    value: modarith::sub_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime {
                    value: modarith::mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        self.checked_mul(&rhs.inv()?)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(WeylError::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: modarith::inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn negated(&self) -> Self {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Exponentiation by squaring; `pow(0)` is one.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one(self.descriptor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Parses a scalar in the textual form of the given field: `a/b`
    /// (reduced, `b` omitted when 1) for rationals, a decimal residue for
    /// prime fields. A leading minus sign is accepted in both backends.
    pub fn parse(s: &str, field: FieldDescriptor) -> Result<Self> {
        let s = s.trim();
        let bad = || WeylError::Parse(format!("bad scalar {s:?}"));
        let (numer_str, denom_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer = BigInt::from_str(numer_str.trim()).map_err(|_| bad())?;
        let denom = match denom_str {
            Some(d) => BigInt::from_str(d.trim()).map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(WeylError::DivisionByZero);
        }
        match field {
            FieldDescriptor::Rational => Ok(FieldElement::Rational(BigRational::new(numer, denom))),
            FieldDescriptor::PrimeField(p) => {
                let pb = BigInt::from(p);
                let n = ((&numer % &pb) + &pb) % &pb;
                let d = ((&denom % &pb) + &pb) % &pb;
                let n: u64 = n.try_into().map_err(|_| bad())?;
                let d: u64 = d.try_into().map_err(|_| bad())?;
                if d == 0 {
                    return Err(WeylError::DivisionByZero);
                }
                Ok(FieldElement::Prime {
                    value: modarith::mul_mod(n, modarith::inv_mod(d, p), p),
                    modulus: p,
                })
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negated()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negated()
    }
}

/// Table of factorials `0!..n!` and their inverses in a field.
#[derive(Debug, Clone)]
pub struct Factorials {
    fact: Vec<FieldElement>,
    inv_fact: Vec<FieldElement>,
}

impl Factorials {
    /// Builds the table; fails with [`WeylError::CharacteristicTooSmall`]
    /// when some `k <= n` vanishes in the field.
    pub fn new(n: usize, field: FieldDescriptor) -> Result<Self> {
        field.characteristic_guard(n as u64)?;
        let mut fact = Vec::with_capacity(n + 1);
        fact.push(FieldElement::one(field));
        for k in 1..=n {
            let kf = FieldElement::from_integer(field, k as i64);
            if kf.is_zero() {
                return Err(WeylError::CharacteristicTooSmall {
                    modulus: match field {
                        FieldDescriptor::PrimeField(p) => p,
                        FieldDescriptor::Rational => 0,
                    },
                    required: n as u64,
                });
            }
            let prev = fact.last().unwrap().clone();
            fact.push(&prev * &kf);
        }
        // inv((n)!) once, then walk down: inv(k!) = inv((k+1)!) * (k+1).
        let mut inv_fact = vec![FieldElement::one(field); n + 1];
        inv_fact[n] = fact[n].inv()?;
        for k in (0..n).rev() {
            let next = inv_fact[k + 1].clone();
            inv_fact[k] = &next * &FieldElement::from_integer(field, (k + 1) as i64);
        }
        Ok(Factorials { fact, inv_fact })
    }

    pub fn fact(&self, k: usize) -> &FieldElement {
        &self.fact[k]
    }

    pub fn inv_fact(&self, k: usize) -> &FieldElement {
        &self.inv_fact[k]
    }

    pub fn len(&self) -> usize {
        self.fact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fact.is_empty()
    }
}

/// Modular arithmetic on `u64` residues with moduli below 2^63.
pub(crate) mod modarith {
    #[inline]
    pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    #[inline]
    pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, p);
            }
            base = mul_mod(base, base, p);
            exp >>= 1;
        }
        acc
    }

    /// Inverse mod a prime via the extended Euclidean algorithm.
    /// Caller guarantees `a != 0 (mod p)`.
    pub fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut r0, mut r1) = (p as i128, (a % p) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "inverse of a non-unit");
        t0.rem_euclid(p as i128) as u64
    }

    /// Deterministic Miller-Rabin for `u64` (the 12-witness set is exact
    /// over the full range).
    pub fn is_prime_u64(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if n == q {
                return true;
            }
            if n % q == 0 {
                return false;
            }
        }
        let mut d = n - 1;
        let mut s = 0;
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = pow_mod(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 0..s - 1 {
                x = mul_mod(x, x, n);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }
}
