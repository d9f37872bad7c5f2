//! The reduction demos: coordinatewise reduction `F³ → K′³` along a place,
//! with every check the semilinear layer offers run on seeded samples.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::hermitian::{GenSemilinearMap, HResult, LineationReport, NondegeneracyReport, ProjPoint};
use crate::scalars::{sample_nonzero, EpsilonPlace, PadicPlace, Place, StarField};

pub const DEMO_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    /// `e ↦ 0` on rational functions.
    RatFunc,
    /// Reduction of rationals modulo a small prime.
    Padic(u64),
}

pub const PADIC_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

impl fmt::Display for PlaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceKind::RatFunc => f.write_str("ratfunc"),
            PlaceKind::Padic(p) => write!(f, "padic {p}"),
        }
    }
}

impl FromStr for PlaceKind {
    type Err = Error;
    /// `ratfunc`, `padic` (p = 5) or `padic:P`.
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.split_once(':') {
            None if s == "ratfunc" => Ok(PlaceKind::RatFunc),
            None if s == "padic" => Ok(PlaceKind::Padic(5)),
            Some(("padic", p)) => p
                .parse()
                .map(PlaceKind::Padic)
                .map_err(|_| Error::BadParameter(format!("bad prime `{p}`"))),
            _ => Err(Error::BadParameter(format!("unknown place `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NonInjectivity {
    pub first: String,
    pub second: String,
    pub image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub place: String,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub condition_i_failures: usize,
    pub lineation: LineationReport,
    /// Sampled vectors whose image changed under rescaling by a unit or by an
    /// arbitrary nonzero scalar.
    pub representative_violations: usize,
    /// Sampled orthogonal pairs whose images are not orthogonal.
    pub orthogonality_violations: usize,
    pub nondegeneracy: NondegeneracyReport,
    pub lambda: String,
    pub lambda_prime: String,
    pub semiunitary: bool,
    pub non_injectivity: Option<NonInjectivity>,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.condition_i_failures == 0
            && self.lineation.violations.is_empty()
            && self.representative_violations == 0
            && self.orthogonality_violations == 0
            && self.nondegeneracy.l3
            && self.semiunitary
    }
}

fn unit<P: Place>(place: &P, a: P::Source) -> P::Source {
    let k = place.order(&a).unwrap_or(0);
    a * place.scale_for_order(-k)
}

fn rescaling_violations<P: Place>(m: &GenSemilinearMap<P>, samples: usize, seed: u64) -> HResult<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let x: Vec<P::Source> = loop {
            let v: Vec<P::Source> = (0..m.source().dim()).map(|_| P::Source::sample(&mut rng)).collect();
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        };
        let base = m.image_of_vector(&x)?;
        let u = unit(m.place(), sample_nonzero(&mut rng));
        let c: P::Source = sample_nonzero(&mut rng);
        for s in [u, c] {
            let y: Vec<P::Source> = x.iter().map(|a| s.clone() * a.clone()).collect();
            if m.image_of_vector(&y)? != base {
                bad += 1;
                break;
            }
        }
    }
    Ok(bad)
}

/// Pairs `x`, `y = x̄ × w`, orthogonal under the standard form of dimension 3.
fn orthogonality_violations<P: Place>(m: &GenSemilinearMap<P>, samples: usize, seed: u64) -> HResult<usize> {
    let h = m.source();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    let mut done = 0;
    while done < samples {
        let x: Vec<P::Source> = (0..DEMO_DIM).map(|_| P::Source::sample(&mut rng)).collect();
        let w: Vec<P::Source> = (0..DEMO_DIM).map(|_| P::Source::sample(&mut rng)).collect();
        let xs: Vec<P::Source> = x.iter().map(StarField::star).collect();
        let y: Vec<P::Source> = (0..DEMO_DIM)
            .map(|i| {
                let (j, k) = ((i + 1) % DEMO_DIM, (i + 2) % DEMO_DIM);
                xs[j].clone() * w[k].clone() - xs[k].clone() * w[j].clone()
            })
            .collect();
        if x.iter().all(Zero::is_zero) || y.iter().all(Zero::is_zero) {
            continue;
        }
        debug_assert!(h.inner(&y, &x)?.is_zero());
        done += 1;
        let (px, py) = (m.image_of_vector(&x)?, m.image_of_vector(&y)?);
        if !m.target().point_orth(&px, &py)? {
            bad += 1;
        }
    }
    Ok(bad)
}

fn basis<F: StarField>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|j| (0..n).map(|i| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

fn run<P: Place>(m: &GenSemilinearMap<P>, samples: usize, seed: u64) -> HResult<DemoReport> {
    let cert = m.canonical_certificate(&basis(m.source().dim()))?;
    Ok(DemoReport {
        place: m.place().name(),
        dim: m.source().dim(),
        samples,
        seed,
        condition_i_failures: m.check_condition_i(samples, seed),
        lineation: m.check_lineation(samples, seed),
        representative_violations: rescaling_violations(m, samples, seed ^ 0x5eed)?,
        orthogonality_violations: orthogonality_violations(m, samples, seed ^ 0x0c70)?,
        nondegeneracy: m.check_nondegeneracy(samples.min(200), seed),
        semiunitary: m.semiunitary_check(&cert, samples, seed)?,
        lambda: cert.lambda.to_string(),
        lambda_prime: cert.lambda_prime.to_string(),
        non_injectivity: None,
    })
}

fn padic<const P: u64>(samples: usize, seed: u64) -> HResult<DemoReport> {
    run(&GenSemilinearMap::reduction(PadicPlace::<P>, DEMO_DIM)?, samples, seed)
}

pub fn reduction_demo(kind: PlaceKind, samples: usize, seed: u64) -> Result<DemoReport, Error> {
    let internal = |e: crate::hermitian::HermitianError| Error::InternalInconsistency(e.to_string());
    match kind {
        PlaceKind::RatFunc => {
            let m = GenSemilinearMap::reduction(EpsilonPlace, DEMO_DIM).map_err(internal)?;
            let mut r = run(&m, samples, seed).map_err(internal)?;
            let eps = crate::scalars::RatFunc::epsilon();
            let o = crate::scalars::RatFunc::one();
            let z = crate::scalars::RatFunc::zero();
            let p = ProjPoint::new(vec![o.clone(), z.clone(), z.clone()]).map_err(internal)?;
            let q = ProjPoint::new(vec![o, eps, z]).map_err(internal)?;
            let (ip, iq) = (
                m.induced_projective_map(&p).map_err(internal)?,
                m.induced_projective_map(&q).map_err(internal)?,
            );
            if ip == iq && p != q {
                r.non_injectivity = Some(NonInjectivity {
                    first: p.to_string(),
                    second: q.to_string(),
                    image: ip.to_string(),
                });
            }
            Ok(r)
        }
        PlaceKind::Padic(p) => match p {
            2 => padic::<2>(samples, seed),
            3 => padic::<3>(samples, seed),
            5 => padic::<5>(samples, seed),
            7 => padic::<7>(samples, seed),
            11 => padic::<11>(samples, seed),
            13 => padic::<13>(samples, seed),
            _ => {
                return Err(Error::BadParameter(format!(
                    "p-adic demo supports p in {PADIC_PRIMES:?}"
                )))
            }
        }
        .map_err(internal),
    }
}
