//! Exact commutative star-fields, their orders and places.

mod galois;
mod literal;
mod place;
mod poly;
mod quad;
mod ratfunc;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use galois::{Fp, Gf};
pub use literal::{parse_scalar, parse_vector};
pub use place::{
    common_scale, star_compatibility_check, star_compatibility_check_with, EpsilonPlace, IdentityPlace, PadicPlace,
    Place,
};
pub use poly::Poly;
pub use quad::Quad;
pub use ratfunc::RatFunc;

/// Errors from scalar arithmetic, parsing and places.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field {0} carries no order")]
    Unordered(FieldDescriptor),
    #[error("element is not in the valuation ring of the place")]
    NotInValuationRing,
    #[error("all coefficients are zero")]
    AllZero,
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarKind {
    Identity,
    Conjugation,
    FrobeniusHalf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    Rationals,
    QuadExt { d: i64, star: StarKind },
    GaloisField { p: u64, k: usize, star: StarKind },
    RatFunc,
}

impl FieldDescriptor {
    pub fn order_present(&self) -> bool {
        match *self {
            FieldDescriptor::Rationals | FieldDescriptor::RatFunc => true,
            FieldDescriptor::QuadExt { d, .. } => d > 0,
            FieldDescriptor::GaloisField { .. } => false,
        }
    }
}

impl Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::QuadExt { d, star } => write!(f, "Q(sqrt({d})) with {star:?} star"),
            FieldDescriptor::GaloisField { p, k, star } => write!(f, "GF({p}^{k}) with {star:?} star"),
            FieldDescriptor::RatFunc => write!(f, "Q(e)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn of_bigint(n: &BigInt) -> Sign {
        match n.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }

    pub fn of_rational(q: &BigRational) -> Sign {
        Sign::of_bigint(q.numer())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.to_i32() * rhs.to_i32() {
            0 => Sign::Zero,
            1 => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Position of an element of an ordered field relative to the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Magnitude {
    FiniteMedial,
    FiniteInfinitesimal,
    Infinite,
}

/// A commutative field with an involutive automorphism `star`.
pub trait StarField:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn descriptor() -> FieldDescriptor;

    fn checked_inv(&self) -> Result<Self, ScalarError>;

    fn star(&self) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    /// Symbol and value of the extra literal the parser accepts, if any.
    fn generator() -> Option<(char, Self)>;

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn sign(&self) -> Result<Sign, ScalarError> {
        Err(ScalarError::Unordered(Self::descriptor()))
    }

    /// Archimedean default: every nonzero element is medial.
    fn magnitude(&self) -> Result<Magnitude, ScalarError> {
        self.sign()?;
        Ok(if self.is_zero() {
            Magnitude::FiniteInfinitesimal
        } else {
            Magnitude::FiniteMedial
        })
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other.checked_inv()?)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn powi(&self, e: i64) -> Result<Self, ScalarError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.checked_inv()?.pow(e.unsigned_abs()))
        }
    }

    /// `sign(self - other)`.
    fn compare(&self, other: &Self) -> Result<Sign, ScalarError> {
        (self.clone() - other.clone()).sign()
    }

    fn abs(&self) -> Result<Self, ScalarError> {
        Ok(if self.sign()? == Sign::Negative {
            -self.clone()
        } else {
            self.clone()
        })
    }
}

/// Sample a nonzero element.
pub fn sample_nonzero<F: StarField, R: Rng + ?Sized>(rng: &mut R) -> F {
    loop {
        let a = F::sample(rng);
        if !a.is_zero() {
            return a;
        }
    }
}

pub(crate) fn small_rational<R: Rng + ?Sized>(rng: &mut R, span: i64) -> BigRational {
    let n = rng.gen_range(-span..=span);
    let d = rng.gen_range(1..=span.max(1));
    BigRational::new(n.into(), d.into())
}
