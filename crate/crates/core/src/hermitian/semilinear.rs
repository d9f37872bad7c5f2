use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{collinear, linalg, HResult, HermitianError, HermitianSpace, ProjPoint};
use crate::scalars::{common_scale, star_compatibility_check, Place, ScalarError, StarField};

/// `A(x) = M·ρ(x)` on the module `F_V` of vectors whose coordinates lie in
/// the valuation ring. Columns of `M` are the images of the basis vectors.
#[derive(Clone, Debug)]
pub struct GenSemilinearMap<P: Place> {
    place: P,
    matrix: Vec<Vec<P::Target>>,
    src: HermitianSpace<P::Source>,
    dst: HermitianSpace<P::Target>,
}

#[derive(Clone, Debug)]
pub struct SemiunitaryCertificate<P: Place> {
    pub lambda: P::Source,
    pub lambda_prime: P::Target,
}

impl<P: Place> PartialEq for SemiunitaryCertificate<P> {
    fn eq(&self, other: &Self) -> bool {
        self.lambda == other.lambda && self.lambda_prime == other.lambda_prime
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineationViolation {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineationReport {
    pub samples: usize,
    /// Triples whose `x` and `y` have equal images, for which (L1′) is vacuous.
    pub trivially_satisfied: usize,
    /// Triples touching a direction that violates condition (i).
    pub degenerate: usize,
    pub violations: Vec<LineationViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum L2Status {
    /// Every sampled line had at least three distinct image points.
    Evidenced { pairs: usize },
    /// Some lines showed three image points, some did not within the sample.
    Partial { evidenced: usize, pairs: usize },
    /// No sampled line showed three image points.
    NoEvidence { pairs: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondegeneracyReport {
    pub l3: bool,
    pub l2: L2Status,
}

fn strings<F: StarField>(v: &[F]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn sample_vector<F: StarField, R: Rng>(rng: &mut R, n: usize) -> Vec<F> {
    loop {
        let v: Vec<F> = (0..n).map(|_| F::sample(rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn add<F: StarField>(x: &[F], y: &[F]) -> Vec<F> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
}

fn scale<F: StarField>(c: &F, x: &[F]) -> Vec<F> {
    x.iter().map(|a| c.clone() * a.clone()).collect()
}

impl<P: Place> GenSemilinearMap<P> {
    pub fn new(
        place: P,
        matrix: Vec<Vec<P::Target>>,
        src: HermitianSpace<P::Source>,
        dst: HermitianSpace<P::Target>,
    ) -> HResult<Self> {
        if matrix.len() != dst.dim() {
            return Err(HermitianError::DimensionMismatch {
                expected: dst.dim(),
                got: matrix.len(),
            });
        }
        for row in &matrix {
            if row.len() != src.dim() {
                return Err(HermitianError::DimensionMismatch {
                    expected: src.dim(),
                    got: row.len(),
                });
            }
        }
        if (0..src.dim()).any(|j| matrix.iter().all(|row| row[j].is_zero())) {
            return Err(HermitianError::DegenerateDirection);
        }
        Ok(GenSemilinearMap {
            place,
            matrix,
            src,
            dst,
        })
    }

    /// Coordinatewise reduction between standard spaces of equal dimension.
    pub fn reduction(place: P, n: usize) -> HResult<Self> {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { P::Target::one() } else { P::Target::zero() })
                    .collect()
            })
            .collect();
        Self::new(place, matrix, HermitianSpace::standard(n), HermitianSpace::standard(n))
    }

    pub fn place(&self) -> &P {
        &self.place
    }

    pub fn matrix(&self) -> &[Vec<P::Target>] {
        &self.matrix
    }

    pub fn source(&self) -> &HermitianSpace<P::Source> {
        &self.src
    }

    pub fn target(&self) -> &HermitianSpace<P::Target> {
        &self.dst
    }

    pub fn in_module(&self, x: &[P::Source]) -> bool {
        x.iter().all(|c| self.place.in_valuation_ring(c))
    }

    pub fn semilinear_apply(&self, x: &[P::Source]) -> HResult<Vec<P::Target>> {
        if x.len() != self.src.dim() {
            return Err(HermitianError::DimensionMismatch {
                expected: self.src.dim(),
                got: x.len(),
            });
        }
        let mut r = Vec::with_capacity(x.len());
        for (i, c) in x.iter().enumerate() {
            r.push(self.place.apply(c).map_err(|_| HermitianError::NotInModuleFV(i))?);
        }
        Ok(self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&r)
                    .fold(P::Target::zero(), |acc, (m, v)| acc + m.clone() * v.clone())
            })
            .collect())
    }

    /// The representative of `⟨x⟩` in `F_V` with a unit coordinate.
    pub fn scale_into_module(&self, x: &[P::Source]) -> HResult<Vec<P::Source>> {
        let alpha = common_scale(&self.place, x).map_err(|e| match e {
            ScalarError::AllZero => HermitianError::ZeroVector,
            other => other.into(),
        })?;
        Ok(scale(&alpha.inv(), x))
    }

    pub fn image_of_vector(&self, x: &[P::Source]) -> HResult<ProjPoint<P::Target>> {
        let y = self.semilinear_apply(&self.scale_into_module(x)?)?;
        ProjPoint::new(y).map_err(|_| HermitianError::DegenerateDirection)
    }

    /// `⟨x⟩ ↦ ⟨A(x)⟩`. The unit-scaled representative generates
    /// `⟨x⟩ ∩ F_V` over `F_K`, so a zero image means every representative
    /// maps to zero.
    pub fn induced_projective_map(&self, p: &ProjPoint<P::Source>) -> HResult<ProjPoint<P::Target>> {
        self.image_of_vector(p.coords())
    }

    /// Condition (i) on the basis directions and `samples` random directions;
    /// returns the number of failing directions.
    pub fn check_condition_i(&self, samples: usize, seed: u64) -> usize {
        let n = self.src.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = (0..n).map(|j| {
            (0..n)
                .map(|i| if i == j { P::Source::one() } else { P::Source::zero() })
                .collect::<Vec<_>>()
        });
        let random: Vec<Vec<P::Source>> = (0..samples).map(|_| sample_vector(&mut rng, n)).collect();
        basis
            .chain(random)
            .filter(|x| matches!(self.image_of_vector(x), Err(HermitianError::DegenerateDirection)))
            .count()
    }

    /// Random collinear triples `x, y, z = αx + βy`: images must be collinear.
    pub fn check_lineation(&self, samples: usize, seed: u64) -> LineationReport {
        let n = self.src.dim();
        let outcomes: Vec<(bool, bool, Option<LineationViolation>)> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let x = sample_vector::<P::Source, _>(&mut rng, n);
                let y = sample_vector::<P::Source, _>(&mut rng, n);
                let z = loop {
                    let a = P::Source::sample(&mut rng);
                    let b = P::Source::sample(&mut rng);
                    let z = add(&scale(&a, &x), &scale(&b, &y));
                    if z.iter().any(|c| !c.is_zero()) {
                        break z;
                    }
                };
                let images = (self.image_of_vector(&x), self.image_of_vector(&y), self.image_of_vector(&z));
                match images {
                    (Ok(px), Ok(py), Ok(pz)) => {
                        if px == py {
                            (true, false, None)
                        } else if collinear(&px, &py, &pz) {
                            (false, false, None)
                        } else {
                            let v = LineationViolation {
                                x: strings(&x),
                                y: strings(&y),
                                z: strings(&z),
                            };
                            (false, false, Some(v))
                        }
                    }
                    _ => (false, true, None),
                }
            })
            .collect();
        LineationReport {
            samples,
            trivially_satisfied: outcomes.iter().filter(|o| o.0).count(),
            degenerate: outcomes.iter().filter(|o| o.1).count(),
            violations: outcomes.into_iter().filter_map(|o| o.2).collect(),
        }
    }

    /// (L3) exactly, from the rank of the basis images; (L2) from sampled
    /// lines, each probed at a fixed set of points.
    pub fn check_nondegeneracy(&self, samples: usize, seed: u64) -> NondegeneracyReport {
        let l3 = linalg::rank(&self.matrix) >= 3;
        let n = self.src.dim();
        if n < 2 {
            return NondegeneracyReport {
                l3,
                l2: L2Status::NoEvidence { pairs: 0 },
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs: Vec<P::Source> = [0i64, 1, -1, 2, -2, 3]
            .iter()
            .map(|&k| P::Source::from_i64(k))
            .collect();
        coeffs.extend(self.place.special_elements());
        let (mut evidenced, mut pairs) = (0, 0);
        while pairs < samples {
            let x = sample_vector::<P::Source, _>(&mut rng, n);
            let y = sample_vector::<P::Source, _>(&mut rng, n);
            if linalg::rank(&[x.clone(), y.clone()]) < 2 {
                continue;
            }
            pairs += 1;
            let mut seen: Vec<ProjPoint<P::Target>> = Vec::new();
            let line = std::iter::once(y.clone()).chain(coeffs.iter().map(|t| add(&x, &scale(t, &y))));
            for z in line {
                if let Ok(p) = self.image_of_vector(&z) {
                    if !seen.contains(&p) {
                        seen.push(p);
                    }
                }
                if seen.len() >= 3 {
                    evidenced += 1;
                    break;
                }
            }
        }
        let l2 = if evidenced == pairs {
            L2Status::Evidenced { pairs }
        } else if evidenced == 0 {
            L2Status::NoEvidence { pairs }
        } else {
            L2Status::Partial { evidenced, pairs }
        };
        NondegeneracyReport { l3, l2 }
    }

    /// `⟨x, x⟩⁻¹` and `⟨A(x), A(x)⟩` for the first vector of an orthogonal
    /// basis of equal-length vectors in `F_V ∖ I_V`.
    pub fn canonical_certificate(&self, basis: &[Vec<P::Source>]) -> HResult<SemiunitaryCertificate<P>> {
        let n = self.src.dim();
        if basis.len() != n || linalg::rank(basis) != n {
            return Err(HermitianError::BadBasis);
        }
        let len0 = self.src.inner(&basis[0], &basis[0])?;
        for (i, b) in basis.iter().enumerate() {
            let img = self.semilinear_apply(b).map_err(|_| HermitianError::BadBasis)?;
            if img.iter().all(|c| c.is_zero()) || self.src.inner(b, b)? != len0 {
                return Err(HermitianError::BadBasis);
            }
            for c in &basis[i + 1..] {
                if !self.src.inner(b, c)?.is_zero() {
                    return Err(HermitianError::BadBasis);
                }
            }
        }
        let u0 = self.semilinear_apply(&basis[0])?;
        Ok(SemiunitaryCertificate {
            lambda: len0.inv(),
            lambda_prime: self.dst.inner(&u0, &u0)?,
        })
    }

    /// `⟨A(x), A(y)⟩ = ρ(⟨x, y⟩λ)λ′` on the basis and on sampled pairs from
    /// `F_V`.
    pub fn semiunitary_check(&self, cert: &SemiunitaryCertificate<P>, samples: usize, seed: u64) -> HResult<bool> {
        if !star_compatibility_check(&self.place, 64, seed) {
            return Err(HermitianError::StarIncompatiblePlace);
        }
        let n = self.src.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vectors: Vec<Vec<P::Source>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { P::Source::one() } else { P::Source::zero() })
                    .collect()
            })
            .collect();
        for _ in 0..samples {
            let v = sample_vector::<P::Source, _>(&mut rng, n);
            let v = self.scale_into_module(&v)?;
            // Mix in infinitesimal multiples so that I_V is exercised too.
            let t = P::Source::sample(&mut rng);
            vectors.push(if self.place.in_valuation_ring(&t) { scale(&t, &v) } else { v });
        }
        for (k, x) in vectors.iter().enumerate() {
            let ux = self.semilinear_apply(x)?;
            let partner = &vectors[(k * 7 + 3) % vectors.len()];
            for y in [x, partner] {
                let uy = self.semilinear_apply(y)?;
                let lhs = self.dst.inner(&ux, &uy)?;
                let Ok(r) = self.place.apply(&(self.src.inner(x, y)? * cert.lambda.clone())) else {
                    return Ok(false);
                };
                if lhs != r * cert.lambda_prime.clone() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_vector, EpsilonPlace, Fp, IdentityPlace, PadicPlace, RatFunc};
    use num_rational::BigRational;

    type Q = BigRational;

    fn rv(s: &str) -> Vec<RatFunc> {
        parse_vector(s).unwrap()
    }

    fn qv(s: &str) -> Vec<Q> {
        parse_vector(s).unwrap()
    }

    #[test]
    fn apply_and_induce() {
        let m = GenSemilinearMap::reduction(EpsilonPlace, 3).unwrap();
        assert_eq!(m.semilinear_apply(&rv("1, e, 0")).unwrap(), qv("1,0,0"));
        assert_eq!(m.semilinear_apply(&rv("1/e, 1, 0")), Err(HermitianError::NotInModuleFV(0)));
        let p = ProjPoint::new(rv("1, e, 0")).unwrap();
        let p2 = ProjPoint::new(rv("1/e, 1, 0")).unwrap();
        assert_eq!(m.induced_projective_map(&p).unwrap(), ProjPoint::new(qv("1,0,0")).unwrap());
        assert_eq!(p, p2);
        assert_eq!(m.induced_projective_map(&p2).unwrap(), ProjPoint::new(qv("1,0,0")).unwrap());
        let p3 = ProjPoint::new(rv("1, 0, 0")).unwrap();
        assert_ne!(p, p3);
        assert_eq!(m.induced_projective_map(&p).unwrap(), m.induced_projective_map(&p3).unwrap());
    }

    #[test]
    fn identity_place_is_identity() {
        let m = GenSemilinearMap::reduction(IdentityPlace::<Q>::default(), 3).unwrap();
        let p = ProjPoint::new(qv("1, 2/3, -5")).unwrap();
        assert_eq!(m.induced_projective_map(&p).unwrap(), p);
    }

    #[test]
    fn degenerate_directions() {
        let src = HermitianSpace::<RatFunc>::standard(2);
        let dst = HermitianSpace::<Q>::standard(2);
        let zero_col = vec![qv("1,0"), qv("0,0")];
        assert_eq!(
            GenSemilinearMap::new(EpsilonPlace, zero_col, src.clone(), dst.clone()).unwrap_err(),
            HermitianError::DegenerateDirection
        );
        let singular = vec![qv("1,1"), qv("1,1")];
        let m = GenSemilinearMap::new(EpsilonPlace, singular, src, dst).unwrap();
        let bad = ProjPoint::new(rv("1,-1")).unwrap();
        assert_eq!(m.induced_projective_map(&bad), Err(HermitianError::DegenerateDirection));
        assert!(m.check_condition_i(0, 1) == 0);
    }

    #[test]
    fn lineation_and_nondegeneracy() {
        let m = GenSemilinearMap::reduction(EpsilonPlace, 3).unwrap();
        let r = m.check_lineation(200, 7);
        assert!(r.violations.is_empty());
        let nd = m.check_nondegeneracy(20, 7);
        assert!(nd.l3);
        assert!(matches!(nd.l2, L2Status::Evidenced { .. } | L2Status::Partial { .. }));

        let rank2 = vec![qv("1,0,0"), qv("0,1,0"), qv("0,0,0")];
        let src = HermitianSpace::<RatFunc>::standard(3);
        let m2 = GenSemilinearMap::new(EpsilonPlace, rank2, src.clone(), HermitianSpace::standard(3));
        assert!(m2.is_err());
        let rank2 = vec![qv("1,0,1"), qv("0,1,0"), qv("0,0,0")];
        let m2 = GenSemilinearMap::new(EpsilonPlace, rank2, src.clone(), HermitianSpace::standard(3)).unwrap();
        assert!(!m2.check_nondegeneracy(5, 1).l3);
        let rank1 = vec![qv("1,1,1"), qv("0,0,0"), qv("0,0,0")];
        let m1 = GenSemilinearMap::new(EpsilonPlace, rank1, src, HermitianSpace::standard(3)).unwrap();
        assert!(matches!(m1.check_nondegeneracy(10, 1).l2, L2Status::NoEvidence { .. }));
    }

    #[test]
    fn semiunitary() {
        let m = GenSemilinearMap::reduction(EpsilonPlace, 3).unwrap();
        let cert = SemiunitaryCertificate {
            lambda: RatFunc::one(),
            lambda_prime: Q::one(),
        };
        assert!(m.semiunitary_check(&cert, 50, 3).unwrap());
        let x = rv("1, e, 0");
        let y = rv("-e, 1, 0");
        assert!(m.source().inner(&x, &y).unwrap().is_zero());
        let (ux, uy) = (m.semilinear_apply(&x).unwrap(), m.semilinear_apply(&y).unwrap());
        assert!(m.target().inner(&ux, &uy).unwrap().is_zero());

        let id3: Vec<Vec<Q>> = vec![qv("1,0,0"), qv("0,1,0"), qv("0,0,1")];
        let scaled = GenSemilinearMap::new(
            EpsilonPlace,
            id3,
            HermitianSpace::standard(3),
            HermitianSpace::scaled_standard(3, Q::from_integer(2.into())),
        )
        .unwrap();
        let cert2 = SemiunitaryCertificate {
            lambda: RatFunc::one(),
            lambda_prime: Q::from_integer(2.into()),
        };
        assert!(scaled.semiunitary_check(&cert2, 50, 4).unwrap());
        assert!(!scaled.semiunitary_check(&cert, 50, 4).unwrap());
        let basis: Vec<Vec<RatFunc>> = vec![rv("1,0,0"), rv("0,1,0"), rv("0,0,1")];
        assert_eq!(scaled.canonical_certificate(&basis).unwrap(), cert2);
        let bad_basis = vec![rv("e,0,0"), rv("0,e,0"), rv("0,0,e")];
        assert_eq!(scaled.canonical_certificate(&bad_basis), Err(HermitianError::BadBasis));
    }

    #[test]
    fn padic_reduction() {
        let m = GenSemilinearMap::reduction(PadicPlace::<5>, 3).unwrap();
        assert_eq!(m.semilinear_apply(&qv("3/4, 5, 1")).unwrap(), vec![
            Fp::<5>::from_i64(2),
            Fp::<5>::zero(),
            Fp::<5>::one()
        ]);
        assert!(m.check_lineation(200, 9).violations.is_empty());
        let cert = m.canonical_certificate(&[qv("1,0,0"), qv("0,1,0"), qv("0,0,1")]).unwrap();
        assert!(m.semiunitary_check(&cert, 30, 2).unwrap());
    }
}
