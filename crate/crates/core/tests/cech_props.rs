use std::sync::Arc;

use proptest::prelude::*;
use semicech_core::cech::{
    build_cech, chain_identity_everywhere, h0_global, refinement_morphism, vanishing_bound, CochainModel, Cover,
    SpaceSheaf, TupleSheaf,
};
use semicech_core::pm_complex::PmComplex;
use semicech_core::semimodule::{FiniteSemimodule, SemimoduleOps};
use semicech_core::semiring::SemiringTable;

fn table(idx: usize) -> Arc<SemiringTable> {
    Arc::new(match idx {
        0 => SemiringTable::boolean(),
        1 => SemiringTable::integers_mod(2).unwrap(),
        2 => SemiringTable::integers_mod(3).unwrap(),
        _ => SemiringTable::chain3(),
    })
}

fn cover() -> impl Strategy<Value = Cover> {
    (2usize..=4).prop_flat_map(|pts| {
        prop::collection::vec(1u64..(1 << pts), 2..=3).prop_map(move |opens| Cover::new(pts, opens).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Functions with values in `M` glue uniquely, so `Ȟ⁰ = M^{|⋃U|}`; each
    /// point sees a full simplex of opens, so higher groups vanish.
    #[test]
    fn function_sheaf_cohomology(c in cover(), idx in 0usize..4) {
        let ring = table(idx);
        let m = FiniteSemimodule::regular(ring.clone());
        let sheaf = SpaceSheaf::Functions(m.clone());
        let ts = TupleSheaf::from_space(&c, &sheaf).unwrap();
        let built = build_cech(&ts, c.len(), CochainModel::Ordered);
        prop_assume!(built.is_ok());
        let cech = built.unwrap();
        prop_assert!(chain_identity_everywhere(&cech));
        let covered = c.union().count_ones();
        let h0 = cech.cohomology(0, 1 << 20).unwrap();
        prop_assert_eq!(h0.module.size(), m.size().pow(covered));
        let glued = h0_global(&ts, &cech).unwrap();
        prop_assert_eq!(glued.global.size(), h0.module.size());
        for p in 1..c.len() {
            prop_assert_eq!(cech.cohomology(p, 1 << 20).unwrap().module.size(), 1, "degree {}", p);
        }
        for p in c.len()..=cech.complex.top_degree() {
            prop_assert!(vanishing_bound(&cech, p).unwrap());
        }
    }

    /// Relabelling the opens does not change cohomology sizes.
    #[test]
    fn cohomology_is_invariant_under_relabelling(c in cover(), idx in 0usize..3) {
        let sheaf = SpaceSheaf::Functions(FiniteSemimodule::regular(table(idx)));
        let perm: Vec<usize> = (0..c.len()).rev().collect();
        let sizes = |cv: &Cover| -> Option<Vec<usize>> {
            let ts = TupleSheaf::from_space(cv, &sheaf).unwrap();
            let cech = build_cech(&ts, cv.len(), CochainModel::Ordered).ok()?;
            Some((0..cv.len()).map(|p| cech.cohomology(p, 1 << 20).unwrap().module.size()).collect())
        };
        let before = sizes(&c);
        prop_assume!(before.is_some());
        prop_assert_eq!(before, sizes(&c.permuted(&perm)));
    }
}

#[test]
fn constant_coefficients_see_the_nerve() {
    for idx in [1, 2] {
        let m = FiniteSemimodule::regular(table(idx));
        for k in 1..=3 {
            // every open contains point 1, so the nerve is a full simplex
            let c = Cover::new(3, vec![0b011, 0b110, 0b111][..k].to_vec()).unwrap();
            let ts = TupleSheaf::from_space(&c, &SpaceSheaf::Constant(m.clone())).unwrap();
            let cech = build_cech(&ts, k, CochainModel::Ordered).unwrap();
            assert_eq!(cech.cohomology(0, 1 << 20).unwrap().module.size(), m.size());
            for p in 1..k {
                assert!(cech.cohomology(p, 1 << 20).unwrap().is_zero(), "k = {k}, p = {p}");
            }
        }
        // three opens with empty triple overlap: the nerve is a circle
        let c = Cover::new(3, vec![0b011, 0b110, 0b101]).unwrap();
        let ts = TupleSheaf::from_space(&c, &SpaceSheaf::Constant(m.clone())).unwrap();
        let cech = build_cech(&ts, 3, CochainModel::Ordered).unwrap();
        assert_eq!(cech.cohomology(1, 1 << 20).unwrap().module.size(), m.size());
    }
}

#[test]
fn refinement_induces_validated_morphism() {
    let sheaf = SpaceSheaf::Functions(FiniteSemimodule::regular(table(0)));
    let coarse_cover = Cover::from_sets(4, &[&[0, 1, 2], &[2, 3]]).unwrap();
    let fine_cover = Cover::from_sets(4, &[&[0, 1], &[1, 2], &[2, 3]]).unwrap();
    let coarse = build_cech(
        &TupleSheaf::from_space(&coarse_cover, &sheaf).unwrap(),
        2,
        CochainModel::NonDecreasing,
    )
    .unwrap();
    let fine = build_cech(&TupleSheaf::from_space(&fine_cover, &sheaf).unwrap(), 2, CochainModel::Ordered).unwrap();
    let sigma = [0, 0, 1];
    let mor = refinement_morphism(&fine_cover, &fine, &coarse_cover, &coarse, &sigma, &sheaf).unwrap();
    assert_eq!(mor.maps().len(), 3);
    assert!(refinement_morphism(&fine_cover, &fine, &coarse_cover, &coarse, &[1, 0, 1], &sheaf).is_err());
}
