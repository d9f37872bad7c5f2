use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{small_rational, FieldDescriptor, ScalarError, Sign, StarField, StarKind};

const fn is_squarefree(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let m = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= m {
        if m.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `a + b·r` with `r² = D` over the rationals. `CONJ` selects the star
/// `r ↦ -r`; otherwise the star is the identity. Ordered iff `D > 0`, with
/// `r` the positive square root.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quad<const D: i64, const CONJ: bool> {
    a: BigRational,
    b: BigRational,
}

impl<const D: i64, const CONJ: bool> Quad<D, CONJ> {
    const VALID: () = assert!(is_squarefree(D), "D must be a squarefree integer other than 0 and 1");

    pub fn new(a: BigRational, b: BigRational) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        Quad { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn root() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn root_part(&self) -> &BigRational {
        &self.b
    }

    pub fn conjugate(&self) -> Self {
        Quad::new(self.a.clone(), -self.b.clone())
    }

    /// `a² - D·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(D.into()) * &self.b * &self.b
    }
}

impl<const D: i64, const C: bool> Add for Quad<D, C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quad::new(self.a + o.a, self.b + o.b)
    }
}

impl<const D: i64, const C: bool> Sub for Quad<D, C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quad::new(self.a - o.a, self.b - o.b)
    }
}

impl<const D: i64, const C: bool> Mul for Quad<D, C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = BigRational::from_integer(D.into());
        Quad::new(&self.a * &o.a + d * &self.b * &o.b, &self.a * &o.b + &self.b * &o.a)
    }
}

impl<const D: i64, const C: bool> Neg for Quad<D, C> {
    type Output = Self;
    fn neg(self) -> Self {
        Quad::new(-self.a, -self.b)
    }
}

impl<const D: i64, const C: bool> Zero for Quad<D, C> {
    fn zero() -> Self {
        Quad::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64, const C: bool> One for Quad<D, C> {
    fn one() -> Self {
        Quad::new(BigRational::one(), BigRational::zero())
    }
}

impl<const D: i64, const C: bool> fmt::Display for Quad<D, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = |f: &mut fmt::Formatter<'_>, b: &BigRational| {
            if b.is_one() {
                write!(f, "r")
            } else {
                write!(f, "{b}*r")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b == -BigRational::one() => write!(f, "-r"),
            (true, false) => root(f, &self.b),
            (false, false) => {
                write!(f, "{}", self.a)?;
                if self.b.is_negative() {
                    write!(f, "-")?;
                    root(f, &-self.b.clone())
                } else {
                    write!(f, "+")?;
                    root(f, &self.b)
                }
            }
        }
    }
}

impl<const D: i64, const CONJ: bool> StarField for Quad<D, CONJ> {
    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::QuadExt {
            d: D,
            star: if CONJ {
                StarKind::Conjugation
            } else {
                StarKind::Identity
            },
        }
    }

    fn checked_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Quad::new(&self.a / &n, -&self.b / &n))
    }

    fn star(&self) -> Self {
        if CONJ {
            self.conjugate()
        } else {
            self.clone()
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        Quad::new(BigRational::from_integer(n.clone()), BigRational::zero())
    }

    fn generator() -> Option<(char, Self)> {
        Some(('r', Self::root()))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Quad::new(small_rational(rng, 9), small_rational(rng, 9))
    }

    fn sign(&self) -> Result<Sign, ScalarError> {
        if D < 0 {
            return Err(ScalarError::Unordered(Self::descriptor()));
        }
        let sa = Sign::of_rational(&self.a);
        let sb = Sign::of_rational(&self.b);
        if sa == sb || sb == Sign::Zero {
            return Ok(sa);
        }
        if sa == Sign::Zero {
            return Ok(sb);
        }
        // Opposite signs: the larger of |a| and |b|·r wins.
        let db2 = BigRational::from_integer(D.into()) * &self.b * &self.b;
        Ok(if &self.a * &self.a > db2 { sa } else { sb })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q2 = Quad<2, true>;
    type QI = Quad<-1, true>;

    #[test]
    fn arithmetic() {
        let x = Q2::from_ints(3, 2);
        assert_eq!(x.star(), Q2::from_ints(3, -2));
        assert_eq!(x.clone() * x.star(), Q2::from_ints(1, 0));
        assert_eq!(x.inv(), Q2::from_ints(3, -2));
        assert_eq!(Q2::root() * Q2::root(), Q2::from_ints(2, 0));
        let i = QI::root();
        assert_eq!(i.clone() * i.star(), QI::one());
    }

    #[test]
    fn signs() {
        assert_eq!(Q2::from_ints(-1, 1).sign().unwrap(), Sign::Positive);
        assert_eq!(Q2::from_ints(2, -1).sign().unwrap(), Sign::Positive);
        assert_eq!(Q2::from_ints(1, -1).sign().unwrap(), Sign::Negative);
        assert_eq!(Q2::from_ints(-3, 2).sign().unwrap(), Sign::Negative);
        assert!(matches!(QI::root().sign(), Err(ScalarError::Unordered(_))));
    }

    #[test]
    fn display() {
        assert_eq!(Q2::from_ints(3, -2).to_string(), "3-2*r");
        assert_eq!(Q2::from_ints(0, -1).to_string(), "-r");
        assert_eq!(Q2::from_ints(1, 1).to_string(), "1+r");
        assert_eq!(Q2::from_ints(5, 0).to_string(), "5");
    }
}
