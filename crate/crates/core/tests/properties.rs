use proptest::prelude::*;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orthospace::hermitian::HermitianSpace;
use orthospace::scalars::{EpsilonPlace, PadicPlace, Place};
use orthospace::scalars::{sample_nonzero, StarField};
use orthospace::{build_lattice, Gf9, Mask, OrthoSpace, Fp, Q, Q2, Q2c, QI, RatFunc};

// Random graph on n ≤ 8 vertices from a bit string over the upper triangle.
fn space() -> impl Strategy<Value = OrthoSpace> {
    (1usize..=8, any::<u64>()).prop_map(|(n, bits)| {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits >> (k % 64) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        OrthoSpace::from_edges(n, &edges).unwrap()
    })
}

fn space_and_sets() -> impl Strategy<Value = (OrthoSpace, Mask, Mask)> {
    (space(), any::<u64>(), any::<u64>()).prop_map(|(x, a, b)| {
        let n = x.len();
        let a = Mask::from_word(n, a & ((1u64 << n) - 1));
        let b = Mask::from_word(n, b & ((1u64 << n) - 1));
        (x, a, b)
    })
}

proptest! {
    #[test]
    fn closure_is_extensive_and_idempotent((x, a, _b) in space_and_sets()) {
        let c = x.closure_mask(&a);
        prop_assert!(a.is_subset(&c));
        prop_assert_eq!(x.closure_mask(&c), c.clone());
        prop_assert!(x.is_orthoclosed(&c));
    }

    #[test]
    fn triple_complement((x, a, _b) in space_and_sets()) {
        let p = x.complement_mask(&a);
        prop_assert_eq!(x.complement_mask(&x.complement_mask(&p)), p);
    }

    #[test]
    fn complement_reverses_inclusion((x, a, b) in space_and_sets()) {
        let ab = a.or(&b);
        prop_assert!(x.complement_mask(&ab).is_subset(&x.complement_mask(&a)));
        prop_assert!(x.closure_mask(&a).is_subset(&x.closure_mask(&ab)));
        // (A ∪ B)⊥ = A⊥ ∩ B⊥
        prop_assert_eq!(
            x.complement_mask(&ab),
            x.complement_mask(&a).and(&x.complement_mask(&b))
        );
    }

    #[test]
    fn lattice_de_morgan(x in space()) {
        let l = build_lattice(&x).unwrap();
        for a in 0..l.len() {
            prop_assert_eq!(l.orthocomplement(l.orthocomplement(a)), a);
            prop_assert_eq!(l.meet(a, l.orthocomplement(a)), l.bottom());
            prop_assert_eq!(l.join(a, l.orthocomplement(a)), l.top());
            for b in 0..l.len() {
                prop_assert_eq!(
                    l.orthocomplement(l.join(a, b)),
                    l.meet(l.orthocomplement(a), l.orthocomplement(b))
                );
                prop_assert_eq!(l.leq(a, b), l.leq(l.orthocomplement(b), l.orthocomplement(a)));
            }
        }
    }

    #[test]
    fn orthogonal_sets_extend_to_maximal(x in space()) {
        for m in x.maximal_orthogonal_masks() {
            prop_assert!(x.is_orthogonal_mask(&m));
            prop_assert!(m.count() <= x.rank());
            prop_assert!(x.complement_mask(&m).is_empty());
        }
    }
}

fn field_laws<F: StarField>(seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = F::sample(&mut rng);
    let b = F::sample(&mut rng);
    let c = F::sample(&mut rng);
    prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    prop_assert_eq!(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone()
    );
    prop_assert_eq!(a.clone() - a.clone(), F::zero());
    prop_assert_eq!(a.clone() * F::one(), a.clone());
    let nz: F = sample_nonzero(&mut rng);
    prop_assert_eq!(nz.clone() * nz.inv(), F::one());
    prop_assert!(F::zero().checked_inv().is_err());
    // star is an involutive automorphism
    prop_assert_eq!(a.star().star(), a.clone());
    prop_assert_eq!((a.clone() + b.clone()).star(), a.star() + b.star());
    prop_assert_eq!((a.clone() * b.clone()).star(), a.star() * b.star());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_are_a_field(seed in any::<u64>()) { field_laws::<Q>(seed)?; }

    #[test]
    fn quadratic_extensions_are_fields(seed in any::<u64>()) {
        field_laws::<Q2>(seed)?;
        field_laws::<Q2c>(seed)?;
        field_laws::<QI>(seed)?;
    }

    #[test]
    fn finite_fields_are_fields(seed in any::<u64>()) {
        field_laws::<Fp<5>>(seed)?;
        field_laws::<Fp<7>>(seed)?;
        field_laws::<Gf9>(seed)?;
    }

    #[test]
    fn rational_functions_are_a_field(seed in any::<u64>()) { field_laws::<RatFunc>(seed)?; }
}

fn place_laws<P: Place>(p: &P, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: P::Source = sample_nonzero(&mut rng);
    let b: P::Source = sample_nonzero(&mut rng);
    let (oa, ob) = (p.order(&a).unwrap(), p.order(&b).unwrap());
    prop_assert_eq!(p.order(&(a.clone() * b.clone())), Some(oa + ob));
    if let Some(s) = p.order(&(a.clone() + b.clone())) {
        prop_assert!(s >= oa.min(ob));
    }
    // bring both into the valuation ring
    let a = a * p.scale_for_order(-oa.min(0));
    let b = b * p.scale_for_order(-ob.min(0));
    prop_assert!(p.in_valuation_ring(&a) && p.in_valuation_ring(&b));
    let (ra, rb) = (p.apply(&a).unwrap(), p.apply(&b).unwrap());
    prop_assert_eq!(p.apply(&(a.clone() + b.clone())).unwrap(), ra.clone() + rb.clone());
    prop_assert_eq!(p.apply(&(a.clone() * b.clone())).unwrap(), ra.clone() * rb.clone());
    prop_assert_eq!(p.apply(&a.star()).unwrap(), ra.star());
    prop_assert!(p.apply(&p.scale_for_order(-1)).is_err());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn epsilon_place_is_a_homomorphism(seed in any::<u64>()) { place_laws(&EpsilonPlace, seed)?; }

    #[test]
    fn padic_places_are_homomorphisms(seed in any::<u64>()) {
        place_laws(&PadicPlace::<2>, seed)?;
        place_laws(&PadicPlace::<5>, seed)?;
        place_laws(&PadicPlace::<13>, seed)?;
    }
}

fn sesquilinear<F: StarField>(seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = HermitianSpace::<F>::standard(3);
    let v = |rng: &mut ChaCha8Rng| (0..3).map(|_| F::sample(rng)).collect::<Vec<F>>();
    let (x, y, z) = (v(&mut rng), v(&mut rng), v(&mut rng));
    let al = F::sample(&mut rng);
    let axy: Vec<F> = x.iter().zip(&y).map(|(a, b)| al.clone() * a.clone() + b.clone()).collect();
    prop_assert_eq!(
        h.inner(&axy, &z).unwrap(),
        al.clone() * h.inner(&x, &z).unwrap() + h.inner(&y, &z).unwrap()
    );
    prop_assert_eq!(
        h.inner(&z, &axy).unwrap(),
        al.star() * h.inner(&z, &x).unwrap() + h.inner(&z, &y).unwrap()
    );
    prop_assert_eq!(h.inner(&x, &y).unwrap().star(), h.inner(&y, &x).unwrap());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn standard_forms_are_hermitian(seed in any::<u64>()) {
        sesquilinear::<Q>(seed)?;
        sesquilinear::<Q2c>(seed)?;
        sesquilinear::<QI>(seed)?;
        sesquilinear::<RatFunc>(seed)?;
    }

    #[test]
    fn finite_field_forms_are_hermitian(seed in any::<u64>()) {
        sesquilinear::<Fp<5>>(seed)?;
        sesquilinear::<Gf9>(seed)?;
    }
}

fn reduction_laws<P: Place>(p: P, seed: u64) -> Result<(), TestCaseError> {
    use orthospace::hermitian::GenSemilinearMap;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = GenSemilinearMap::reduction(p, 3).unwrap();
    let v = |rng: &mut ChaCha8Rng| loop {
        let x: Vec<P::Source> = (0..3).map(|_| P::Source::sample(rng)).collect();
        if x.iter().any(|c| !c.is_zero()) {
            return x;
        }
    };
    let x = v(&mut rng);
    let al: P::Source = sample_nonzero(&mut rng);
    let ax: Vec<P::Source> = x.iter().map(|c| al.clone() * c.clone()).collect();
    prop_assert_eq!(m.image_of_vector(&x).unwrap(), m.image_of_vector(&ax).unwrap());

    // y = conj(x) × w is orthogonal to x under the standard form
    let w = v(&mut rng);
    let c: Vec<P::Source> = x.iter().map(|a| a.star()).collect();
    let y = vec![
        c[1].clone() * w[2].clone() - c[2].clone() * w[1].clone(),
        c[2].clone() * w[0].clone() - c[0].clone() * w[2].clone(),
        c[0].clone() * w[1].clone() - c[1].clone() * w[0].clone(),
    ];
    if y.iter().all(|a| a.is_zero()) {
        return Ok(());
    }
    prop_assert!(m.source().inner(&x, &y).unwrap().is_zero());
    let (px, py) = (m.image_of_vector(&x).unwrap(), m.image_of_vector(&y).unwrap());
    prop_assert!(m.target().point_orth(&px, &py).unwrap());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn epsilon_reduction_respects_rays_and_orthogonality(seed in any::<u64>()) {
        reduction_laws(EpsilonPlace, seed)?;
    }

    #[test]
    fn padic_reduction_respects_rays_and_orthogonality(seed in any::<u64>()) {
        reduction_laws(PadicPlace::<5>, seed)?;
        reduction_laws(PadicPlace::<3>, seed)?;
    }
}
