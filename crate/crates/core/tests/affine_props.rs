use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semicech_core::affine::{
    cover_witness, detect_unit, is_prime_ideal, prime_ideals, AffineUnitCech, CoverOutcome, MonomialCover,
    MonomialLocalization,
};
use semicech_core::laurent::{ExponentVector, LaurentPoly};
use semicech_core::pm_complex::chain_identity_at;
use semicech_core::semiring::{QMax, Semiring, SemiringTable};
use semicech_core::Error;

fn q(n: i64) -> semicech_core::semiring::MaxPlus<num_rational::BigRational> {
    QMax::int(n)
}

fn mono(c: i64, e: &[i64]) -> LaurentPoly<QMax> {
    LaurentPoly::monomial(QMax, q(c), ExponentVector::new(e.to_vec()))
}

#[test]
fn prime_ideals_of_integers_mod_n() {
    for n in 2..=12usize {
        let t = SemiringTable::integers_mod(n).unwrap();
        let got: Vec<Vec<usize>> = prime_ideals(&t, 16).unwrap().iter().map(|p| p.elements().to_vec()).collect();
        let mut expected: Vec<Vec<usize>> = (2..=n)
            .filter(|&p| n % p == 0 && (2..p).all(|d| p % d != 0))
            .map(|p| (0..n).filter(|x| x % p == 0).collect())
            .collect();
        expected.sort_by_key(Vec::len);
        let mut got_sorted = got.clone();
        got_sorted.sort_by_key(Vec::len);
        assert_eq!(got_sorted.len(), expected.len(), "ℤ/{n}");
        for e in &expected {
            assert!(got.contains(e), "ℤ/{n} misses {e:?}");
        }
    }
}

#[test]
fn prime_ideals_of_small_idempotent_tables() {
    let b = SemiringTable::boolean();
    let ideals: Vec<Vec<usize>> = prime_ideals(&b, 16).unwrap().iter().map(|p| p.elements().to_vec()).collect();
    assert_eq!(ideals, vec![vec![0]]);
    // 𝔹 × 𝔹 has the two primes 𝔹 × {0} and {0} × 𝔹
    let b2 = SemiringTable::boolean_squared();
    let mut count = 0;
    for p in prime_ideals(&b2, 16).unwrap() {
        assert!(is_prime_ideal(&b2, p.elements()));
        count += 1;
        assert!(p.contains(b2.zero()) && !p.contains(b2.one()));
    }
    assert_eq!(count, 2);
    assert!(matches!(
        prime_ideals(&SemiringTable::integers_mod(40).unwrap(), 16),
        Err(Error::SizeGuard { .. })
    ));
}

#[test]
fn laurent_units_are_not_units_when_sums() {
    let a = MonomialLocalization::new(QMax, ExponentVector::new(vec![1, 1])).unwrap();
    let f = mono(0, &[-1, 1]).add(&mono(0, &[1, -1])).unwrap();
    assert!(a.contains(&f));
    assert!(a.unit_inverse(&f).is_none());
    assert!(matches!(detect_unit(&a, &[f.clone()]), Err(Error::Precondition(_))));
    let cert = detect_unit(&a, &[f, mono(2, &[1, -1])]).unwrap();
    assert_eq!(cert.index, 1);
    assert_eq!(cert.inverse, mono(-2, &[-1, 1]));
}

fn family() -> impl Strategy<Value = (Vec<i64>, Vec<Vec<(Vec<i64>, i64)>>)> {
    (
        prop::collection::vec(0i64..=1, 2),
        prop::collection::vec(prop::collection::vec((prop::collection::vec(-1i64..=1, 2), -3i64..=3), 1..=2), 1..=3),
    )
}

proptest! {
    /// Brute-force oracle: search `h` among monomials of `A` with small
    /// exponents for `Σ h_i f_i = 1`, one nonzero `h_i` at a time.
    #[test]
    fn cover_decision_matches_search((g, fs) in family()) {
        let a = MonomialLocalization::new(QMax, ExponentVector::new(g.clone())).unwrap();
        let fs: Vec<LaurentPoly<QMax>> = fs
            .into_iter()
            .map(|terms| {
                let terms: Vec<_> = terms
                    .into_iter()
                    .map(|(mut e, c)| {
                        for (x, gi) in e.iter_mut().zip(&g) {
                            if *gi == 0 {
                                *x = x.abs();
                            }
                        }
                        (ExponentVector::new(e), q(c))
                    })
                    .collect();
                LaurentPoly::from_terms(QMax, 2, terms).unwrap()
            })
            .collect();
        let one = LaurentPoly::one(QMax, 2);
        let mut found = false;
        for f in &fs {
            for e0 in -2..=2 {
                for e1 in -2..=2 {
                    for c in -6..=6 {
                        let h = mono(c, &[e0, e1]);
                        if a.contains(&h) && h.mul(f).unwrap() == one {
                            found = true;
                        }
                    }
                }
            }
        }
        let outcome = cover_witness(&a, &fs).unwrap();
        prop_assert_eq!(matches!(outcome, CoverOutcome::Found { .. }), found);
        if let CoverOutcome::Found { h, .. } = outcome {
            let total = h.iter().zip(&fs).fold(LaurentPoly::zero(QMax, 2), |acc, (hi, fi)| {
                acc.add(&hi.mul(fi).unwrap()).unwrap()
            });
            prop_assert_eq!(total, one);
        }
    }

    #[test]
    fn contraction_inverts_coboundary(seed in any::<u64>(), k in 2usize..=3, n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = MonomialLocalization::new(QMax, ExponentVector::new(vec![1, 0, 1])).unwrap();
        let full = rng.random_range(0..k);
        let fs: Vec<LaurentPoly<QMax>> = (0..k)
            .map(|i| {
                let y = if i == full { 0 } else { rng.random_range(1..=2) };
                mono(rng.random_range(-3..=3), &[rng.random_range(-2..=2), y, rng.random_range(-2..=2)])
            })
            .collect();
        let cover = MonomialCover::new(a, &fs).unwrap();
        prop_assert!(cover.is_full(full));
        let cech = AffineUnitCech::new(cover, 2).unwrap();
        let w = cech.random_cochain(&mut rng, n - 1, 3, |r| q(r.random_range(-5..=5))).unwrap();
        let y = cech.coboundary(n - 1, &w);
        prop_assert!(cech.is_classical_cocycle(n, &y));
        let x = cech.contract_unit_cocycle(full, n, &y).unwrap();
        prop_assert_eq!(&cech.coboundary(n - 1, &x), &y);
        // contracting again through the same chart reproduces x
        let x2 = cech.contract_unit_cocycle(full, n, &cech.coboundary(n - 1, &x)).unwrap();
        prop_assert_eq!(&x2, &x);
        prop_assert!(chain_identity_at(&cech, n - 1, &w));
    }
}

#[test]
fn contraction_rejects_partial_charts_and_non_cocycles() {
    let a = MonomialLocalization::new(QMax, ExponentVector::new(vec![1, 0])).unwrap();
    let fs = [mono(0, &[1, 0]), mono(0, &[0, 1])];
    let cover = MonomialCover::new(a, &fs).unwrap();
    assert_eq!(cover.full_charts(), vec![0]);
    let cech = AffineUnitCech::new(cover, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let w = cech.random_cochain(&mut rng, 0, 2, |r| q(r.random_range(-3..=3))).unwrap();
    let y = cech.coboundary(0, &w);
    assert!(matches!(cech.contract_unit_cocycle(1, 1, &y), Err(Error::Precondition(_))));
    let mut bad = y.clone();
    bad[1] = bad[1].mul(&semicech_core::laurent::UnitMonomial::new(QMax, q(1), ExponentVector::zeros(2)).unwrap());
    assert!(matches!(cech.contract_unit_cocycle(0, 1, &bad), Err(Error::NotCocycle(_))));
}

#[test]
fn covers_need_a_unit() {
    let a = MonomialLocalization::new(QMax, ExponentVector::new(vec![0, 0])).unwrap();
    let fs = [mono(0, &[1, 0]), mono(0, &[0, 1])];
    assert!(MonomialCover::new(a, &fs).is_err());
}
