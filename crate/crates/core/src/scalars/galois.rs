use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::{FieldDescriptor, ScalarError, StarField, StarKind};

const fn is_prime(p: u64) -> bool {
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

const fn order_fits(p: u64, k: usize) -> bool {
    let mut acc: u64 = 1;
    let mut i = 0;
    while i < k {
        match acc.checked_mul(p) {
            Some(v) => acc = v,
            None => return false,
        }
        i += 1;
    }
    true
}

/// The finite field with `P^K` elements, realized as `F_P[g]/(m)` for the
/// smallest monic irreducible `m` of degree `K` in the order of coefficient
/// vectors read as base-`P` numerals. `FROB` selects the star
/// `x ↦ x^(P^(K/2))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf<const P: u64, const K: usize, const FROB: bool> {
    c: [u64; K],
}

pub type Fp<const P: u64> = Gf<P, 1, false>;

type ModulusCache = RwLock<HashMap<(u64, usize), Arc<Vec<u64>>>>;

fn cache() -> &'static ModulusCache {
    static CACHE: OnceLock<ModulusCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    // b is monic
    let db = b.len() - 1;
    while a.len() > db {
        let t = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if t != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let v = (a[shift + j] + p - (t * bj) % p) % p;
                a[shift + j] = v;
            }
        }
        a.pop();
    }
    a
}

fn monic_of_degree(p: u64, deg: usize, mut code: u64) -> Vec<u64> {
    let mut v = vec![0u64; deg + 1];
    for slot in v.iter_mut().take(deg) {
        *slot = code % p;
        code /= p;
    }
    v[deg] = 1;
    v
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    for deg in 1..=k / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let g = monic_of_degree(p, deg, code);
            if poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn modulus(p: u64, k: usize) -> Arc<Vec<u64>> {
    if let Some(m) = cache().read().unwrap().get(&(p, k)) {
        return Arc::clone(m);
    }
    let count = p.pow(k as u32);
    let m = (0..count)
        .map(|code| monic_of_degree(p, k, code))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree");
    let m = Arc::new(m);
    cache().write().unwrap().insert((p, k), Arc::clone(&m));
    m
}

impl<const P: u64, const K: usize, const FROB: bool> Gf<P, K, FROB> {
    const VALID: () = {
        assert!(is_prime(P), "P must be prime");
        assert!(P < (1 << 31), "P must fit in 31 bits");
        assert!(K >= 1, "K must be positive");
        assert!(order_fits(P, K), "P^K must fit in 64 bits");
        assert!(!FROB || K.is_multiple_of(2), "the Frobenius star needs an even exponent");
    };

    pub const ORDER: u64 = P.pow(K as u32);

    pub fn from_coeffs(c: [u64; K]) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        Gf { c: c.map(|x| x % P) }
    }

    pub fn coeffs(&self) -> &[u64; K] {
        &self.c
    }

    /// The class of `g`. For `K = 1` the modulus is `g` itself, so this is 0.
    pub fn gen() -> Self {
        let mut c = [0u64; K];
        if K == 1 {
            let m = modulus(P, 1);
            c[0] = (P - m[0]) % P;
        } else {
            c[1] = 1;
        }
        Self::from_coeffs(c)
    }

    pub fn modulus() -> Vec<u64> {
        modulus(P, K).as_ref().clone()
    }

    /// All field elements in coefficient order.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..Self::ORDER).map(|mut code| {
            let mut c = [0u64; K];
            for slot in c.iter_mut() {
                *slot = code % P;
                code /= P;
            }
            Self::from_coeffs(c)
        })
    }
}

impl<const P: u64, const K: usize, const F: bool> Add for Gf<P, K, F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x = (*x + y) % P;
        }
        Gf { c }
    }
}

impl<const P: u64, const K: usize, const F: bool> Neg for Gf<P, K, F> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf {
            c: self.c.map(|x| (P - x) % P),
        }
    }
}

impl<const P: u64, const K: usize, const F: bool> Sub for Gf<P, K, F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64, const K: usize, const F: bool> Mul for Gf<P, K, F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut prod = vec![0u64; 2 * K - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % P;
            }
        }
        let r = if K == 1 {
            prod
        } else {
            poly_rem(prod, &modulus(P, K), P)
        };
        let mut c = [0u64; K];
        c[..r.len()].copy_from_slice(&r);
        Gf { c }
    }
}

impl<const P: u64, const K: usize, const F: bool> Zero for Gf<P, K, F> {
    fn zero() -> Self {
        Self::from_coeffs([0; K])
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl<const P: u64, const K: usize, const F: bool> One for Gf<P, K, F> {
    fn one() -> Self {
        let mut c = [0; K];
        c[0] = 1;
        Self::from_coeffs(c)
    }
}

impl<const P: u64, const K: usize, const F: bool> fmt::Display for Gf<P, K, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if K == 1 || self.is_zero() {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for i in (0..K).rev() {
            let x = self.c[i];
            if x == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, x) {
                (0, _) => write!(f, "{x}")?,
                (1, 1) => write!(f, "g")?,
                (1, _) => write!(f, "{x}*g")?,
                (_, 1) => write!(f, "g^{i}")?,
                _ => write!(f, "{x}*g^{i}")?,
            }
        }
        Ok(())
    }
}

impl<const P: u64, const K: usize, const FROB: bool> StarField for Gf<P, K, FROB> {
    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::GaloisField {
            p: P,
            k: K,
            star: if FROB {
                StarKind::FrobeniusHalf
            } else {
                StarKind::Identity
            },
        }
    }

    fn checked_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.pow(Self::ORDER - 2))
        }
    }

    fn star(&self) -> Self {
        if FROB {
            self.pow(P.pow((K / 2) as u32))
        } else {
            *self
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        let p = BigInt::from(P);
        let r = ((n % &p) + &p) % &p;
        let mut c = [0u64; K];
        c[0] = r.to_u64().expect("residue fits");
        Self::from_coeffs(c)
    }

    fn generator() -> Option<(char, Self)> {
        (K > 1).then(|| ('g', Self::gen()))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut c = [0u64; K];
        for slot in c.iter_mut() {
            *slot = rng.gen_range(0..P);
        }
        Self::from_coeffs(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F9 = Gf<3, 2, true>;
    type F5 = Fp<5>;

    #[test]
    fn moduli() {
        assert_eq!(F9::modulus(), vec![1, 0, 1]);
        assert_eq!(Gf::<2, 3, false>::modulus(), vec![1, 1, 0, 1]);
        assert_eq!(Gf::<2, 2, true>::modulus(), vec![1, 1, 1]);
    }

    #[test]
    fn field_structure() {
        let all: Vec<F9> = F9::elements().collect();
        assert_eq!(all.len(), 9);
        for a in &all {
            if !a.is_zero() {
                assert_eq!(*a * a.inv(), F9::one());
            }
            assert_eq!(a.star().star(), *a);
        }
        let g = F9::gen();
        assert_eq!(g.star(), g.pow(3));
        assert_eq!(g * g, -F9::one());
        let star_fixed = all.iter().filter(|a| a.star() == **a).count();
        assert_eq!(star_fixed, 3);
    }

    #[test]
    fn prime_field() {
        assert_eq!(F5::from_i64(4).inv(), F5::from_i64(4));
        assert_eq!(F5::from_i64(-1), F5::from_i64(4));
        assert_eq!(F5::from_i64(12).to_string(), "2");
        assert!(F5::generator().is_none());
    }

    #[test]
    fn display() {
        let g = F9::gen();
        assert_eq!((g * F9::from_i64(2) + F9::one()).to_string(), "2*g+1");
        assert_eq!(Gf::<2, 3, false>::gen().pow(2).to_string(), "g^2");
    }
}
