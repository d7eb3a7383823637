//! Randomized properties over the fixture algebras.
//!
//! Strategies draw small complexes from the constructions the library
//! exposes and check the invariants the deterministic sweep in the
//! verification module asserts on its fixed family.

use arquiver::algebra::Alg;
use arquiver::ar::{
    ar_triangle_ending_at, distance_from_rim, is_on_rim, projective_chain_complex,
};
use arquiver::complex::{cone, presentation_complex, ChainMap, PerfectComplex};
use arquiver::fixtures::{a3, a5, n22};
use arquiver::forms::pairing_t;
use arquiver::homotopy::{
    complexes_isomorphic, decompose_complex, from_resolution, hom_space, minimize,
};
use arquiver::module::{self, ModuleRep};
use proptest::prelude::*;

fn algebra(ix: usize) -> Alg {
    match ix % 3 {
        0 => a3(),
        1 => a5(),
        _ => n22(),
    }
}

fn fixture_module(alg: &Alg, ix: usize) -> ModuleRep {
    if alg.n_simples() == 1 {
        module::uniserial(alg, 1 + ix % (alg.dim() - 1))
    } else {
        let p = ModuleRep::projective(alg, ix % alg.n_simples());
        let rad = p.radical_subspace();
        p.quotient(&rad).0
    }
}

/// One indecomposable complex per parameter tuple: a projective stalk, a
/// socle ladder, or a truncated resolution of a fixture module.
fn build_complex(alg: &Alg, kind: usize, s: usize, n: usize, shift: i64) -> PerfectComplex {
    let s = s % alg.n_simples();
    let c = match kind % 4 {
        0 => PerfectComplex::stalk(alg, s, 0),
        1 => projective_chain_complex(alg, s, n % 3).unwrap(),
        2 => presentation_complex(&fixture_module(alg, s + n)),
        _ => from_resolution(&fixture_module(alg, s + n), n % 3).unwrap(),
    };
    c.shift(shift)
}

/// The shift aligning two minimal complexes when one exists.
fn iso_shift(a: &PerfectComplex, b: &PerfectComplex) -> Option<i64> {
    let ((alo, ahi), (blo, bhi)) = (a.support()?, b.support()?);
    if ahi - alo != bhi - blo {
        return None;
    }
    let j = ahi - bhi;
    complexes_isomorphic(a, &b.shift(j), 0).unwrap().then_some(j)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stalk_hom_spaces_represent_homology(
        aix in 0usize..3,
        kind in 0usize..4,
        s in 0usize..2,
        n in 0usize..3,
        shift in -2i64..=2,
        deg in -5i64..=5,
    ) {
        let alg = algebra(aix);
        let c = build_complex(&alg, kind, s, n, shift);
        let stalk = PerfectComplex::regular_stalk(&alg, deg);
        prop_assert_eq!(
            hom_space(&stalk, &c).unwrap().stable_dim(),
            c.homology(deg).dim
        );
    }

    #[test]
    fn minimization_strips_contractible_padding(
        aix in 0usize..3,
        kind in 0usize..4,
        s in 0usize..2,
        n in 0usize..3,
        pad in -3i64..=3,
    ) {
        let alg = algebra(aix);
        let c = build_complex(&alg, kind, s, n, 0);
        let (padding, _, _) = cone(&ChainMap::identity(&c));
        let glued = c.direct_sum(&padding.shift(pad));
        let min = minimize(&glued);
        prop_assert_eq!(glued.homology_dims(), c.homology_dims());
        prop_assert_eq!(min.complex.homology_dims(), c.homology_dims());
        let again = minimize(&min.complex);
        prop_assert_eq!(again.complex.total_dim(), min.complex.total_dim());
        prop_assert_eq!(again.complex.degrees(), min.complex.degrees());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn decomposition_parts_retract_and_carry_certificates(
        aix in 0usize..3,
        ka in 0usize..4,
        kb in 0usize..4,
        s in 0usize..2,
        n in 0usize..3,
        shift in -2i64..=2,
        seed in 0u64..8,
    ) {
        let alg = algebra(aix);
        let a = build_complex(&alg, ka, s, n, 0);
        let b = build_complex(&alg, kb, s + 1, n, shift);
        let g = a.direct_sum(&b);
        let parts = decompose_complex(&g, seed).unwrap();
        prop_assert!(parts.len() >= 2);
        let total: usize = parts.iter().map(|p| p.complex.total_dim()).sum();
        prop_assert_eq!(total, minimize(&g).complex.total_dim());
        for p in &parts {
            let round = p.include.then(&p.project);
            prop_assert!(round.add(&ChainMap::identity(&p.complex).neg()).is_zero());
            prop_assert!(p.cert.end_dim >= 1);
            prop_assert_eq!(p.cert.eigenvalues.len(), p.cert.end_dim);
            prop_assert!(p.cert.nil_index >= 1);
        }
    }

    #[test]
    fn pairings_are_additive_and_shift_graded(
        aix in 0usize..3,
        ka in 0usize..4,
        kb in 0usize..4,
        kc in 0usize..4,
        s in 0usize..2,
        n in 0usize..3,
        j in -3i64..=3,
    ) {
        let alg = algebra(aix);
        let a = build_complex(&alg, ka, s, n, 0);
        let b = build_complex(&alg, kb, s + 1, n, 1);
        let c = build_complex(&alg, kc, s, n + 1, -1);
        let ab = a.direct_sum(&b);
        let left = pairing_t(&ab, &c).unwrap();
        let split = pairing_t(&a, &c).unwrap().add(&pairing_t(&b, &c).unwrap());
        prop_assert_eq!(&left, &split);
        let base = pairing_t(&a, &b).unwrap();
        prop_assert_eq!(pairing_t(&a.shift(j), &b).unwrap(), base.times_t_power(j));
        prop_assert_eq!(pairing_t(&a, &b.shift(j)).unwrap(), base.times_t_power(-j));
    }

    #[test]
    fn walks_stay_within_the_complex_length(
        aix in 0usize..3,
        kind in 0usize..4,
        s in 0usize..2,
        n in 0usize..3,
        shift in -2i64..=2,
    ) {
        let alg = algebra(aix);
        let c = build_complex(&alg, kind, s, n, shift);
        let dist = distance_from_rim(&c).unwrap();
        prop_assert!(dist + 1 <= c.degrees().len());
        prop_assert_eq!(is_on_rim(&c).unwrap(), dist == 0);
        if alg.loewy_length() >= 3 {
            // Nonzero homology comes in runs of at least dist + 1
            // consecutive degrees.
            let h = c.homology_dims();
            for &d in h.keys() {
                let mut run = 1usize;
                let mut k = d + 1;
                while h.contains_key(&k) {
                    run += 1;
                    k += 1;
                }
                let mut k = d - 1;
                while h.contains_key(&k) {
                    run += 1;
                    k -= 1;
                }
                prop_assert!(run >= dist + 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn triangles_satisfy_the_counting_lemma(
        aix in 0usize..3,
        kz in 0usize..3,
        kw in 0usize..4,
        s in 0usize..2,
        n in 0usize..2,
        shift in -2i64..=2,
    ) {
        let alg = algebra(aix);
        let z = build_complex(&alg, kz, s, n, 0);
        let w = build_complex(&alg, kw, s + 1, n, shift);
        let tri = ar_triangle_ending_at(&z).unwrap();
        let (wlo, whi) = w.support().unwrap();
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for c in [&tri.x, &tri.y, &tri.z] {
            if let Some((l, h)) = c.support() {
                lo = lo.min(wlo - h);
                hi = hi.max(whi - l);
            }
        }
        let mut total = 0i64;
        let mut all_zero = true;
        for d in lo..=hi {
            let dx = hom_space(&w, &tri.x.shift(d)).unwrap().stable_dim() as i64;
            let dy = hom_space(&w, &tri.y.shift(d)).unwrap().stable_dim() as i64;
            let dz = hom_space(&w, &tri.z.shift(d)).unwrap().stable_dim() as i64;
            let alt = dx - dy + dz;
            total += alt;
            if alt != 0 {
                all_zero = false;
            }
        }
        if iso_shift(&tri.z, &w).is_some() {
            prop_assert_eq!(total, 2);
        } else {
            prop_assert!(all_zero);
        }
    }
}
