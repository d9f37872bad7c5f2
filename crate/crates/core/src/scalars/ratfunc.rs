use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{small_rational, FieldDescriptor, Magnitude, Poly, ScalarError, Sign, StarField};

/// Rational functions over the rationals in one variable `e`, ordered so
/// that `e` is a positive infinitesimal. Canonical form: coprime numerator
/// and monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = Poly::gcd(&num, &den);
        Ok(RatFunc::from_coprime(num.exact_div(&g), den.exact_div(&g)))
    }

    fn from_coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let lead = den.leading().expect("nonzero").recip();
        if lead.is_one() {
            return RatFunc { num, den };
        }
        RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn from_rational(q: BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(q))
    }

    pub fn epsilon() -> Self {
        RatFunc::from_poly(Poly::monomial(1))
    }

    /// `e^k` for any integer `k`.
    pub fn epsilon_pow(k: i64) -> Self {
        let m = Poly::monomial(k.unsigned_abs() as usize);
        if k >= 0 {
            RatFunc::from_poly(m)
        } else {
            RatFunc {
                num: Poly::one(),
                den: m,
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// The `e`-adic valuation; `None` for zero.
    pub fn order(&self) -> Option<i64> {
        let n = self.num.low_order()? as i64;
        Some(n - self.den.low_order().expect("nonzero denominator") as i64)
    }

    /// Value at `e = 0` of an element of order at least 0.
    pub fn value_at_zero(&self) -> Option<BigRational> {
        match self.order() {
            None => Some(BigRational::zero()),
            Some(o) if o > 0 => Some(BigRational::zero()),
            Some(0) => Some(self.num.value_at_zero() / self.den.value_at_zero()),
            Some(_) => None,
        }
    }

    /// `f(-e)`.
    pub fn reflect(&self) -> Self {
        RatFunc::new(self.num.reflect(), self.den.reflect()).expect("nonzero denominator")
    }

    /// `f(1/e)`.
    pub fn invert_variable(&self) -> Self {
        let d = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        RatFunc::new(self.num.reversed(d), self.den.reversed(d)).expect("nonzero denominator")
    }

    /// Substitute another rational function for `e`.
    pub fn substitute(&self, x: &RatFunc) -> Result<Self, ScalarError> {
        let eval = |p: &Poly| {
            p.coeffs().iter().rev().fold(RatFunc::zero(), |acc, c| {
                acc * x.clone() + RatFunc::from_rational(c.clone())
            })
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }
}

impl Add for RatFunc {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let g = Poly::gcd(&self.den, &o.den);
        let (a, b) = (self.den.exact_div(&g), o.den.exact_div(&g));
        let num = &(&self.num * &b) + &(&o.num * &a);
        let den = &self.den * &b;
        if g.is_one() {
            return RatFunc::from_coprime(num, den);
        }
        RatFunc::new(num, den).expect("nonzero")
    }
}

impl Sub for RatFunc {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for RatFunc {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        // cancel crosswise so that only small gcds are computed
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let num = &self.num.exact_div(&g1) * &o.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &o.den.exact_div(&g1);
        RatFunc::from_coprime(num, den)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let simple = |p: &Poly| p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if simple(&self.num) {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if simple(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl StarField for RatFunc {
    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::RatFunc
    }

    fn checked_inv(&self) -> Result<Self, ScalarError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    fn star(&self) -> Self {
        self.clone()
    }

    fn from_bigint(n: &BigInt) -> Self {
        RatFunc::from_rational(BigRational::from_integer(n.clone()))
    }

    fn generator() -> Option<(char, Self)> {
        Some(('e', RatFunc::epsilon()))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        // linear denominators with small integer coefficients keep sums cheap
        let deg = rng.gen_range(0..=2);
        let num = Poly::new((0..=deg).map(|_| small_rational(rng, 5)).collect());
        let den = loop {
            let d = Poly::from_ints(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
            if !d.is_zero() {
                break d;
            }
        };
        let shift = RatFunc::epsilon_pow(rng.gen_range(-2..=2));
        RatFunc::new(num, den).expect("nonzero") * shift
    }

    fn sign(&self) -> Result<Sign, ScalarError> {
        Ok(match self.num.low_coeff() {
            None => Sign::Zero,
            Some(c) => Sign::of_rational(c) * Sign::of_rational(self.den.low_coeff().expect("nonzero")),
        })
    }

    fn magnitude(&self) -> Result<Magnitude, ScalarError> {
        Ok(match self.order() {
            None => Magnitude::FiniteInfinitesimal,
            Some(0) => Magnitude::FiniteMedial,
            Some(o) if o > 0 => Magnitude::FiniteInfinitesimal,
            Some(_) => Magnitude::Infinite,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = rf(&[2, 2], &[-2, 0, 2]);
        assert_eq!(a, rf(&[1], &[-1, 1]));
        assert_eq!(a.denom().leading().unwrap(), &BigRational::one());
        let e = RatFunc::epsilon();
        let one = RatFunc::one();
        assert_eq!((one.clone() + e.clone()) * (one - e), rf(&[1, 0, -1], &[1]));
    }

    #[test]
    fn order_and_sign() {
        let e = RatFunc::epsilon();
        let one = RatFunc::one();
        assert_eq!(e.sign().unwrap(), Sign::Positive);
        assert_eq!((e.clone() - one).sign().unwrap(), Sign::Negative);
        let big = e.inv() - RatFunc::from_i64(1000);
        assert_eq!(big.sign().unwrap(), Sign::Positive);
        assert_eq!(e.magnitude().unwrap(), Magnitude::FiniteInfinitesimal);
        assert_eq!(rf(&[2, 1], &[1, -1]).magnitude().unwrap(), Magnitude::FiniteMedial);
        assert_eq!(RatFunc::epsilon_pow(-2).magnitude().unwrap(), Magnitude::Infinite);
        assert_eq!(RatFunc::zero().magnitude().unwrap(), Magnitude::FiniteInfinitesimal);
    }

    #[test]
    fn substitutions() {
        let a = rf(&[1, 2], &[3, 0, 1]);
        assert_eq!(a.reflect(), a.substitute(&-RatFunc::epsilon()).unwrap());
        assert_eq!(a.invert_variable(), a.substitute(&RatFunc::epsilon().inv()).unwrap());
        assert_eq!(a.invert_variable().invert_variable(), a);
        assert_eq!(RatFunc::epsilon().invert_variable(), RatFunc::epsilon_pow(-1));
    }

    #[test]
    fn display() {
        assert_eq!(rf(&[1, 1], &[1, -1]).to_string(), "(-1-e)/(-1+e)");
        assert_eq!(RatFunc::epsilon_pow(-2).to_string(), "1/e^2");
        assert_eq!(rf(&[0, 3], &[1]).to_string(), "3*e");
    }
}
