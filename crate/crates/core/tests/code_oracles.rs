//! Evaluation codes against direct point counts.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hermsurf::codes::{build_code, min_distance_geometric, DEFAULT_CODEWORD_BUDGET};
use hermsurf::field::Elem;
use hermsurf::forms::{FormContext, HomogeneousForm};
use hermsurf::hermitian::HermitianSurface;
use hermsurf::linalg;
use hermsurf::poly::num_monomials;

fn surface(q: u32) -> Arc<HermitianSurface> {
    HermitianSurface::canonical_for_q(q).unwrap()
}

#[test]
fn codeword_weight_plus_zero_count_is_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for q in [2u32, 3] {
        let s = surface(q);
        let f = s.field();
        for d in 1..=q + 1 {
            let code = build_code(&s, d).unwrap();
            let ctx = FormContext::new(s.clone(), d).unwrap();
            for _ in 0..300 {
                let coeffs: Vec<Elem> = (0..num_monomials(d)).map(|_| Elem(rng.random_range(0..f.order()))).collect();
                let Ok(g) = HomogeneousForm::new(d, coeffs.clone()) else { continue };
                let word: Vec<Elem> = (0..code.n)
                    .map(|j| {
                        code.generator.iter().zip(&coeffs).fold(Elem::ZERO, |acc, (row, &c)| f.add(acc, f.mul(c, row[j])))
                    })
                    .collect();
                let weight = word.iter().filter(|x| !x.is_zero()).count();
                assert_eq!(weight + ctx.count_points(&g), code.n);
            }
        }
    }
}

#[test]
fn parameters_respect_elementary_bounds() {
    for q in [2u32, 3] {
        let s = surface(q);
        for d in 1..=q + 1 {
            let code = build_code(&s, d).unwrap();
            let rows = code.generator.len();
            assert_eq!(rows, num_monomials(d));
            assert!(code.k <= rows);
            let direct = linalg::rank(s.field(), &code.generator);
            assert_eq!(code.k, direct);
            // Only the Hermitian form itself is lost at degree q + 1.
            let expected = if d == q + 1 { rows - 1 } else { rows };
            assert_eq!(code.k, expected);
            let g = min_distance_geometric(q, d).unwrap();
            assert!(g.value as usize + code.k <= code.n + 1);
        }
    }
}

#[test]
fn small_codes_match_the_geometric_distance() {
    for (q, d) in [(2u32, 1u32), (2, 2), (3, 1)] {
        let s = surface(q);
        let code = build_code(&s, d).unwrap();
        let e = code.min_distance_enumerate(&s, DEFAULT_CODEWORD_BUDGET).unwrap();
        let g = min_distance_geometric(q, d).unwrap();
        assert!(!g.conditional);
        assert_eq!(e as u64, g.value);
    }
}

#[test]
fn weight_distribution_accounts_for_every_word() {
    let s = surface(2);
    let code = build_code(&s, 1).unwrap();
    let dist = code.weight_distribution(&s, DEFAULT_CODEWORD_BUDGET).unwrap();
    assert_eq!(dist.counts.iter().sum::<u64>(), 4u64.pow(4));
    assert_eq!(dist.counts[0], 1);
    // Tangent planes meet the surface in 13 points, the others in 9.
    assert_eq!(dist.counts[45 - 13], 45 * 3);
    assert_eq!(dist.counts[45 - 9], 40 * 3);
    assert_eq!(dist.counts.iter().filter(|&&c| c > 0).count(), 3);
}
