use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial over the rationals in the variable `e`, coefficients
/// from the constant term upward, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn constant(a: BigRational) -> Self {
        Poly::new(vec![a])
    }

    /// `e^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k];
        c.push(BigRational::one());
        Poly { c }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.c.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn low_coeff(&self) -> Option<&BigRational> {
        self.low_order().map(|i| &self.c[i])
    }

    /// `Some(k)` if this is `c·e^k`.
    pub fn monomial_degree(&self) -> Option<usize> {
        let k = self.low_order()?;
        (k + 1 == self.c.len()).then_some(k)
    }

    pub fn value_at_zero(&self) -> BigRational {
        self.c.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, a: &BigRational) -> Poly {
        Poly::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.c[dd].recip();
        let mut r = self.c.clone();
        let mut q = vec![BigRational::zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let t = r.last().unwrap() * &lead_inv;
            for (j, dj) in d.c.iter().enumerate() {
                r[shift + j] -= &t * dj;
            }
            q[shift] = t;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn exact_div(&self, d: &Poly) -> Poly {
        if d.degree() == Some(0) {
            return self.scale(&d.c[0].recip());
        }
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Poly::one();
        }
        for (m, other) in [(a, b), (b, a)] {
            if let Some(k) = m.monomial_degree() {
                return match other.low_order() {
                    Some(j) => Poly::monomial(j.min(k)),
                    None => Poly::monomial(k),
                };
            }
        }
        // monic remainders keep coefficient growth down
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = b;
            b = r;
        }
        a
    }

    /// `p(-e)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 1 { -x.clone() } else { x.clone() })
                .collect(),
        )
    }

    /// `e^deg · p(1/e)`.
    pub fn reversed(&self, deg: usize) -> Poly {
        let mut c = vec![BigRational::zero(); deg + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[deg - i] = x.clone();
        }
        Poly::new(c)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(BigRational::one())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Poly::new(c)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if x.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "e")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
