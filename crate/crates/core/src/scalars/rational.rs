use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::{small_rational, FieldDescriptor, ScalarError, Sign, StarField};

impl StarField for BigRational {
    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn checked_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn star(&self) -> Self {
        self.clone()
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn generator() -> Option<(char, Self)> {
        None
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        small_rational(rng, 12)
    }

    fn sign(&self) -> Result<Sign, ScalarError> {
        Ok(Sign::of_rational(self))
    }
}
