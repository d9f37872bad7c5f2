//! Finite-dimensional Hermitian spaces over exact star-fields and the
//! orthogonality spaces carried by finite sets of their points.

pub mod linalg;
mod semilinear;

use thiserror::Error;

use crate::scalars::{FieldDescriptor, ScalarError, Sign, StarField};
use crate::space::OrthoSpace;

pub use semilinear::{
    GenSemilinearMap, L2Status, LineationReport, LineationViolation, NondegeneracyReport, SemiunitaryCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HermitianError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Gram matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("form is not positive definite: leading minor {0} is not positive")]
    NotPositiveDefinite(usize),
    #[error("a projective point needs a nonzero vector")]
    ZeroVector,
    #[error("the two points are equal")]
    EqualPoints,
    #[error("coordinate {0} is not in the valuation ring")]
    NotInModuleFV(usize),
    #[error("every representative of the direction maps to zero")]
    DegenerateDirection,
    #[error("vector {0} is isotropic")]
    IsotropicVector(usize),
    #[error("finite fields carry isotropic vectors in dimension {0}; points are not constructed there")]
    FiniteFieldPoints(usize),
    #[error("the place does not commute with the stars")]
    StarIncompatiblePlace,
    #[error("basis is not an orthogonal basis of equal-length vectors in F_V outside I_V")]
    BadBasis,
}

pub type HResult<T> = std::result::Result<T, HermitianError>;

/// `F^n` with the form `⟨x, y⟩ = Σ xᵢ gᵢⱼ yⱼ⋆`, linear in the first argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianSpace<F> {
    gram: Vec<Vec<F>>,
    positive_definite: bool,
}

impl<F: StarField> HermitianSpace<F> {
    pub fn new(gram: Vec<Vec<F>>) -> HResult<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(HermitianError::DimensionMismatch { expected: 1, got: 0 });
        }
        for row in &gram {
            if row.len() != n {
                return Err(HermitianError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in i..n {
                if gram[i][j] != gram[j][i].star() {
                    return Err(HermitianError::NotHermitian(i, j));
                }
            }
        }
        Ok(HermitianSpace {
            gram,
            positive_definite: false,
        })
    }

    /// A form declared positive definite; all leading principal minors are
    /// checked to be positive, so the field must be ordered.
    pub fn positive_definite(gram: Vec<Vec<F>>) -> HResult<Self> {
        let mut h = Self::new(gram)?;
        for k in 1..=h.dim() {
            let minor: Vec<Vec<F>> = h.gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if linalg::determinant(&minor).sign()? != Sign::Positive {
                return Err(HermitianError::NotPositiveDefinite(k));
            }
        }
        h.positive_definite = true;
        Ok(h)
    }

    /// The standard form; declared positive definite over ordered fields.
    pub fn standard(n: usize) -> Self {
        Self::scaled_standard(n, F::one())
    }

    pub fn scaled_standard(n: usize, c: F) -> Self {
        let gram: Vec<Vec<F>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { F::zero() }).collect())
            .collect();
        Self::positive_definite(gram.clone()).unwrap_or(HermitianSpace {
            gram,
            positive_definite: false,
        })
    }

    pub fn field() -> FieldDescriptor {
        F::descriptor()
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<F>] {
        &self.gram
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    fn check_dim(&self, x: &[F]) -> HResult<()> {
        if x.len() != self.dim() {
            return Err(HermitianError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn inner(&self, x: &[F], y: &[F]) -> HResult<F> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut acc = F::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    acc = acc + xi.clone() * self.gram[i][j].clone() * yj.star();
                }
            }
        }
        Ok(acc)
    }

    pub fn point_orth(&self, p: &ProjPoint<F>, q: &ProjPoint<F>) -> HResult<bool> {
        Ok(self.inner(p.coords(), q.coords())?.is_zero())
    }

    /// Row-reduced basis of the span.
    pub fn subspace_span(&self, vectors: &[Vec<F>]) -> HResult<Vec<Vec<F>>> {
        for v in vectors {
            self.check_dim(v)?;
        }
        Ok(linalg::rref(vectors.to_vec()).0)
    }

    /// Basis of `{y : ⟨b, y⟩ = 0 for every b}`.
    pub fn subspace_orthocomplement(&self, basis: &[Vec<F>]) -> HResult<Vec<Vec<F>>> {
        let n = self.dim();
        let mut rows = Vec::with_capacity(basis.len());
        for b in basis {
            self.check_dim(b)?;
            // ⟨b, y⟩ = 0 iff Σⱼ (Σᵢ bᵢ gᵢⱼ)⋆ yⱼ = 0
            rows.push(
                (0..n)
                    .map(|j| {
                        (0..n)
                            .fold(F::zero(), |acc, i| acc + b[i].clone() * self.gram[i][j].clone())
                            .star()
                    })
                    .collect::<Vec<F>>(),
            );
        }
        let ns = linalg::null_space(&rows, n);
        Ok(linalg::rref(ns).0)
    }

    /// Def. of linearity at the level of points: a `g` with `{e,f}⊥ = {e,g}⊥`
    /// and exactly one of `f`, `g` orthogonal to `e`.
    pub fn linearity_witness(&self, e: &ProjPoint<F>, f: &ProjPoint<F>) -> HResult<ProjPoint<F>> {
        if e == f {
            return Err(HermitianError::EqualPoints);
        }
        let fe = self.inner(f.coords(), e.coords())?;
        let g: Vec<F> = if fe.is_zero() {
            e.coords().iter().zip(f.coords()).map(|(a, b)| a.clone() + b.clone()).collect()
        } else {
            let ee = self.inner(e.coords(), e.coords())?;
            let c = fe.checked_div(&ee)?;
            f.coords()
                .iter()
                .zip(e.coords())
                .map(|(b, a)| b.clone() - a.clone() * c.clone())
                .collect()
        };
        ProjPoint::new(g)
    }

    pub fn verify_linearity_witness(&self, e: &ProjPoint<F>, f: &ProjPoint<F>, g: &ProjPoint<F>) -> HResult<bool> {
        let ef = self.subspace_orthocomplement(&[e.coords().to_vec(), f.coords().to_vec()])?;
        let eg = self.subspace_orthocomplement(&[e.coords().to_vec(), g.coords().to_vec()])?;
        let f_orth = self.point_orth(e, f)?;
        let g_orth = self.point_orth(e, g)?;
        Ok(linalg::same_span(&ef, &eg) && (f_orth != g_orth))
    }
}

/// A one-dimensional subspace, represented by the vector whose first
/// nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint<F> {
    coords: Vec<F>,
}

impl<F: StarField> ProjPoint<F> {
    pub fn new(v: Vec<F>) -> HResult<Self> {
        let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
            return Err(HermitianError::ZeroVector);
        };
        let inv = lead.inv();
        Ok(ProjPoint {
            coords: v.into_iter().map(|x| x * inv.clone()).collect(),
        })
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl<F: StarField> std::fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ">")
    }
}

pub fn collinear<F: StarField>(p: &ProjPoint<F>, q: &ProjPoint<F>, r: &ProjPoint<F>) -> bool {
    linalg::rank(&[p.coords.clone(), q.coords.clone(), r.coords.clone()]) <= 2
}

/// A finite set of points of a Hermitian space with the induced orthogonality.
#[derive(Clone, Debug)]
pub struct Fragment<F> {
    pub space: OrthoSpace,
    pub points: Vec<ProjPoint<F>>,
}

/// Distinct points in first-occurrence order, labelled `p0`, `p1`, ...
pub fn make_projective_fragment<F: StarField>(h: &HermitianSpace<F>, vectors: &[Vec<F>]) -> HResult<Fragment<F>> {
    if matches!(F::descriptor(), FieldDescriptor::GaloisField { .. }) && h.dim() >= 2 {
        return Err(HermitianError::FiniteFieldPoints(h.dim()));
    }
    let mut points: Vec<ProjPoint<F>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if h.inner(v, v)?.is_zero() {
            return Err(if v.iter().all(|x| x.is_zero()) {
                HermitianError::ZeroVector
            } else {
                HermitianError::IsotropicVector(i)
            });
        }
        let p = ProjPoint::new(v.clone())?;
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if h.point_orth(&points[i], &points[j])? {
                edges.push((i, j));
            }
        }
    }
    let labels = (0..points.len()).map(|i| format!("p{i}")).collect();
    let space = OrthoSpace::from_index_edges(labels, &edges).map_err(|_| HermitianError::ZeroVector)?;
    Ok(Fragment { space, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_vector, Fp, Quad};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Q = BigRational;

    fn v(s: &str) -> Vec<Q> {
        parse_vector(s).unwrap()
    }

    fn pt(s: &str) -> ProjPoint<Q> {
        ProjPoint::new(v(s)).unwrap()
    }

    #[test]
    fn inner_products() {
        let h = HermitianSpace::<Q>::standard(3);
        assert!(h.is_positive_definite());
        assert!(h.inner(&v("1,0,0"), &v("0,1,0")).unwrap().is_zero());
        assert_eq!(
            h.inner(&v("1,0"), &v("0,1,0")),
            Err(HermitianError::DimensionMismatch { expected: 3, got: 2 })
        );
        type QI = Quad<-1, true>;
        let hi = HermitianSpace::<QI>::standard(2);
        assert!(!hi.is_positive_definite());
        let gram = vec![vec![QI::from_ints(1, 0), QI::zero()], vec![QI::zero(), QI::from_ints(1, 0)]];
        assert!(matches!(
            HermitianSpace::positive_definite(gram),
            Err(HermitianError::Scalar(ScalarError::Unordered(_)))
        ));
        let x = vec![QI::from_ints(0, 1), QI::from_ints(1, 0)];
        assert_eq!(hi.inner(&x, &x).unwrap(), QI::from_ints(2, 0));
        let bad = vec![vec![QI::one(), QI::root()], vec![QI::root(), QI::one()]];
        assert_eq!(HermitianSpace::new(bad), Err(HermitianError::NotHermitian(0, 1)));
    }

    #[test]
    fn subspaces() {
        let h = HermitianSpace::<Q>::standard(3);
        let s = h.subspace_span(&[v("1,0,0")]).unwrap();
        let c = h.subspace_orthocomplement(&s).unwrap();
        assert!(linalg::same_span(&c, &[v("0,1,0"), v("0,0,1")]));
        let cc = h.subspace_orthocomplement(&c).unwrap();
        assert!(linalg::same_span(&cc, &s));
        assert_eq!(h.subspace_orthocomplement(&[]).unwrap().len(), 3);
        assert!(h.subspace_span(&[]).unwrap().is_empty());
    }

    #[test]
    fn points_and_lines() {
        assert_eq!(pt("2,4,0"), pt("1,2,0"));
        assert_eq!(ProjPoint::<Q>::new(v("0,0")), Err(HermitianError::ZeroVector));
        assert!(collinear(&pt("1,0,0"), &pt("0,1,0"), &pt("1,1,0")));
        assert!(!collinear(&pt("1,0,0"), &pt("0,1,0"), &pt("0,0,1")));
        assert!(collinear(&pt("1,0,0"), &pt("1,0,0"), &pt("0,0,1")));
    }

    #[test]
    fn linearity_witnesses() {
        let h = HermitianSpace::<Q>::standard(3);
        let (e, f) = (pt("1,0,0"), pt("1,1,0"));
        let g = h.linearity_witness(&e, &f).unwrap();
        assert_eq!(g, pt("0,1,0"));
        assert!(h.verify_linearity_witness(&e, &f, &g).unwrap());
        let g2 = h.linearity_witness(&e, &pt("0,1,0")).unwrap();
        assert_eq!(g2, pt("1,1,0"));
        assert!(h.verify_linearity_witness(&e, &pt("0,1,0"), &g2).unwrap());
        assert_eq!(h.linearity_witness(&e, &e), Err(HermitianError::EqualPoints));
    }

    #[test]
    fn fragments() {
        let h = HermitianSpace::<Q>::standard(3);
        let fr = make_projective_fragment(&h, &[v("1,0,0"), v("0,1,0"), v("0,0,1"), v("2,0,0")]).unwrap();
        assert_eq!(fr.space.len(), 3);
        assert_eq!(fr.space.edge_count(), 3);
        let ind = HermitianSpace::new(vec![v("1,0"), v("0,-1")]).unwrap();
        assert_eq!(
            make_projective_fragment(&ind, &[v("1,0"), v("1,1")]).unwrap_err(),
            HermitianError::IsotropicVector(1)
        );
        let hf = HermitianSpace::<Fp<5>>::standard(3);
        assert_eq!(
            make_projective_fragment(&hf, &[]).unwrap_err(),
            HermitianError::FiniteFieldPoints(3)
        );
    }
}
