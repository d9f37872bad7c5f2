use std::marker::PhantomData;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Fp, RatFunc, ScalarError, StarField};

/// A place `ρ : F_K → K′` given by a discrete valuation on the source: the
/// valuation ring `F_K` is the set of elements of order at least 0, the
/// maximal ideal `I_K` those of positive order.
pub trait Place: Send + Sync {
    type Source: StarField;
    type Target: StarField;

    fn name(&self) -> String;

    /// Valuation of `a`; `None` for zero.
    fn order(&self, a: &Self::Source) -> Option<i64>;

    /// An element of order exactly `k`.
    fn scale_for_order(&self, k: i64) -> Self::Source;

    /// `ρ(a)` for `a` of order at least 0.
    fn reduce_unchecked(&self, a: &Self::Source) -> Self::Target;

    /// Elements that, with the generators of the target as images, witness
    /// properties that random samples may miss.
    fn special_elements(&self) -> Vec<Self::Source> {
        vec![Self::Source::one(), self.scale_for_order(1), self.scale_for_order(-1)]
    }

    fn apply(&self, a: &Self::Source) -> Result<Self::Target, ScalarError> {
        if self.in_valuation_ring(a) {
            Ok(self.reduce_unchecked(a))
        } else {
            Err(ScalarError::NotInValuationRing)
        }
    }

    fn in_valuation_ring(&self, a: &Self::Source) -> bool {
        self.order(a).is_none_or(|o| o >= 0)
    }

    fn in_maximal_ideal(&self, a: &Self::Source) -> bool {
        self.order(a).is_none_or(|o| o > 0)
    }

    fn is_unit(&self, a: &Self::Source) -> bool {
        self.order(a) == Some(0)
    }
}

/// Evaluation at `e = 0` on rational functions.
#[derive(Clone, Copy, Debug, Default)]
pub struct EpsilonPlace;

impl Place for EpsilonPlace {
    type Source = RatFunc;
    type Target = BigRational;

    fn name(&self) -> String {
        "e -> 0".into()
    }

    fn order(&self, a: &RatFunc) -> Option<i64> {
        a.order()
    }

    fn scale_for_order(&self, k: i64) -> RatFunc {
        RatFunc::epsilon_pow(k)
    }

    fn reduce_unchecked(&self, a: &RatFunc) -> BigRational {
        a.value_at_zero().expect("element of the valuation ring")
    }
}

/// Reduction modulo `P` on the rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct PadicPlace<const P: u64>;

fn multiplicity(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

impl<const P: u64> Place for PadicPlace<P> {
    type Source = BigRational;
    type Target = Fp<P>;

    fn name(&self) -> String {
        format!("{P}-adic")
    }

    fn order(&self, a: &BigRational) -> Option<i64> {
        if a.is_zero() {
            return None;
        }
        let p = BigInt::from(P);
        Some(multiplicity(a.numer(), &p) - multiplicity(a.denom(), &p))
    }

    fn scale_for_order(&self, k: i64) -> BigRational {
        BigRational::from_integer(P.into()).powi(k).expect("p is nonzero")
    }

    fn reduce_unchecked(&self, a: &BigRational) -> Fp<P> {
        Fp::<P>::from_bigint(a.numer()) * Fp::<P>::from_bigint(a.denom()).inv()
    }
}

/// The identity on a field, a place with trivial valuation.
#[derive(Clone, Copy, Debug)]
pub struct IdentityPlace<F>(PhantomData<fn() -> F>);

impl<F> Default for IdentityPlace<F> {
    fn default() -> Self {
        IdentityPlace(PhantomData)
    }
}

impl<F: StarField> Place for IdentityPlace<F> {
    type Source = F;
    type Target = F;

    fn name(&self) -> String {
        "identity".into()
    }

    fn order(&self, a: &F) -> Option<i64> {
        (!a.is_zero()).then_some(0)
    }

    fn scale_for_order(&self, _k: i64) -> F {
        F::one()
    }

    fn reduce_unchecked(&self, a: &F) -> F {
        a.clone()
    }
}

/// A scale `α` with every `α⁻¹·c` in the valuation ring and at least one a unit.
pub fn common_scale<P: Place>(place: &P, coeffs: &[P::Source]) -> Result<P::Source, ScalarError> {
    coeffs
        .iter()
        .filter_map(|c| place.order(c))
        .min()
        .map(|k| place.scale_for_order(k))
        .ok_or(ScalarError::AllZero)
}

/// `F_K` and `I_K` closed under star and `ρ(a⋆) = ρ(a)⋆`, checked on the
/// place's special elements and `samples` random elements.
pub fn star_compatibility_check<P: Place>(place: &P, samples: usize, seed: u64) -> bool {
    star_compatibility_check_with(place, |a| a.star(), |b| b.star(), samples, seed)
}

/// As [`star_compatibility_check`] with explicit stars on both fields.
pub fn star_compatibility_check_with<P, S, T>(place: &P, src_star: S, tgt_star: T, samples: usize, seed: u64) -> bool
where
    P: Place,
    S: Fn(&P::Source) -> P::Source,
    T: Fn(&P::Target) -> P::Target,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elems = place.special_elements();
    elems.extend((0..samples).map(|_| P::Source::sample(&mut rng)));
    elems.iter().all(|a| {
        let s = src_star(a);
        if place.in_valuation_ring(a) {
            if !place.in_valuation_ring(&s) {
                return false;
            }
            if place.in_maximal_ideal(a) != place.in_maximal_ideal(&s) {
                return false;
            }
            place.reduce_unchecked(&s) == tgt_star(&place.reduce_unchecked(a))
        } else {
            !place.in_valuation_ring(&s)
        }
    })
}
