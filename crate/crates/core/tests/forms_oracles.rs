//! Intersection statistics against direct evaluation over rational points.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hermsurf::field::Elem;
use hermsurf::forms::{
    hermitian_divides, line_contained, plane_contained, restrict_to_line, FormContext, HomogeneousForm,
};
use hermsurf::hermitian::HermitianSurface;
use hermsurf::poly::{num_monomials, Mono};
use hermsurf::theorems::build_grid_example;
use hermsurf::theorems::extremal::grid_coefficients;

fn surface(q: u32) -> Arc<HermitianSurface> {
    static Q2: OnceLock<Arc<HermitianSurface>> = OnceLock::new();
    static Q3: OnceLock<Arc<HermitianSurface>> = OnceLock::new();
    let cell = if q == 2 { &Q2 } else { &Q3 };
    cell.get_or_init(|| HermitianSurface::canonical_for_q(q).unwrap()).clone()
}

fn lin(c: [u16; 4]) -> HomogeneousForm {
    HomogeneousForm::linear(c.map(Elem)).unwrap()
}

fn fermat(q: u32) -> HomogeneousForm {
    let s = surface(q);
    let e = q as u8 + 1;
    let terms: Vec<(Mono, Elem)> = (0..4)
        .map(|i| {
            let mut m = [0; 4];
            m[i] = e;
            (Mono(m), Elem::ONE)
        })
        .collect();
    HomogeneousForm::from_terms(s.field(), q + 1, &terms).unwrap()
}

fn random_form(q: u32, d: u32, rng: &mut ChaCha8Rng) -> HomogeneousForm {
    let order = surface(q).field().order();
    loop {
        let coeffs = (0..num_monomials(d)).map(|_| Elem(rng.random_range(0..order))).collect();
        if let Ok(g) = HomogeneousForm::new(d, coeffs) {
            return g;
        }
    }
}

#[test]
fn fermat_cubic_vanishes_on_the_surface_only() {
    let s = surface(2);
    let pg = s.pg();
    let g = fermat(2);
    let zeros: Vec<_> = pg.point_ids().filter(|&p| g.evaluate(s.field(), pg.coords(p)).is_zero()).collect();
    assert_eq!(zeros.len(), 45);
    assert_eq!(zeros, s.points());
    assert!(hermitian_divides(&g, &s));
}

#[test]
fn line_restriction_examples() {
    let s = surface(2);
    let pg = s.pg();
    let f = s.field();
    let id = |c: [u16; 4]| pg.id_of_raw(&c.map(Elem)).unwrap();
    let axis = pg.line_through(id([1, 0, 0, 0]), id([0, 1, 0, 0])).unwrap();
    let x2x3 = HomogeneousForm::product(f, &[lin([0, 0, 1, 0]), lin([0, 0, 0, 1])]).unwrap();
    assert!(line_contained(f, &x2x3, &axis));
    assert!(!line_contained(f, &lin([1, 0, 0, 0]), &axis));
    let g = pg.line_through(id([1, 1, 0, 0]), id([0, 0, 1, 1])).unwrap();
    assert!(restrict_to_line(f, &fermat(2), &g).iter().all(|c| c.is_zero()));
}

#[test]
fn restriction_agrees_with_pointwise_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let s = surface(3);
    let pg = s.pg();
    let f = s.field();
    let lines = pg.all_lines();
    for _ in 0..200 {
        let d = rng.random_range(1..=4);
        let g = random_form(3, d, &mut rng);
        let line = &lines[rng.random_range(0..lines.len())];
        let r = restrict_to_line(f, &g, line);
        let [p, q] = line.pair();
        for a in f.elements() {
            for b in f.elements() {
                let x = std::array::from_fn(|i| f.add(f.mul(a, p.coords[i]), f.mul(b, q.coords[i])));
                let binary = (0..=d as usize).fold(Elem::ZERO, |acc, i| {
                    let m = f.mul(f.pow(a, (d as usize - i) as u64), f.pow(b, i as u64));
                    f.add(acc, f.mul(r[i], m))
                });
                assert_eq!(binary, g.evaluate(f, &x));
            }
        }
    }
}

#[test]
fn plane_containment_matches_rational_vanishing() {
    // A nonzero ternary form of degree d <= q^2 cannot vanish on all of PG(2, q^2).
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let s = surface(2);
    let pg = s.pg();
    let f = s.field();
    let planes: Vec<_> = pg.plane_ids().collect();
    for _ in 0..200 {
        let d = rng.random_range(1..=4u32);
        let mut factors: Vec<HomogeneousForm> = (0..d)
            .map(|_| {
                let pl = planes[rng.random_range(0..planes.len())];
                HomogeneousForm::linear(pg.plane(pl).coeffs).unwrap()
            })
            .collect();
        if rng.random_bool(0.5) {
            factors[0] = random_form(2, 1, &mut rng);
        }
        let g = HomogeneousForm::product(f, &factors).unwrap();
        for &pl in &planes {
            let plane = pg.plane(pl);
            let vanishes = pg.plane_points(&plane).iter().all(|&p| g.evaluate(f, pg.coords(p)).is_zero());
            assert_eq!(plane_contained(pg, &g, &plane), vanishes);
        }
    }
}

#[test]
fn worked_intersection_examples() {
    let s = surface(2);
    let pg = s.pg();
    let f = s.field();
    let ctx1 = FormContext::new(s.clone(), 1).unwrap();

    let r = ctx1.intersection_stats(&lin([1, 0, 0, 0])).unwrap();
    assert_eq!((r.num_points(), r.num_generators(), r.delta), (9, 0, Some(3)));
    assert_eq!(r.x_min, None);
    assert_eq!((r.double_count.lhs, r.double_count.rhs), (27, 27));

    let r = ctx1.intersection_stats(&lin([0, 0, 1, 1])).unwrap();
    assert_eq!((r.num_points(), r.num_generators(), r.delta), (13, 3, Some(0)));
    let vertex = pg.id_of_raw(&[Elem(0), Elem(0), Elem(1), Elem(1)]).unwrap();
    assert_eq!(r.multiplicity(vertex), 3);

    let w = f.primitive().0;
    let ctx2 = FormContext::new(s.clone(), 2).unwrap();
    let pencil = HomogeneousForm::product(f, &[lin([0, 0, 1, 1]), lin([0, 0, 1, w])]).unwrap();
    let r = ctx2.intersection_stats(&pencil).unwrap();
    assert_eq!((r.num_points(), r.num_generators(), r.delta, r.x_min), (23, 6, Some(0), Some(3)));
    assert!(r.surrogate_empty());
    assert_eq!((r.double_count.lhs, r.double_count.rhs), (69, 69));
    assert!(r.identity_violations(&s).is_empty());
}

#[test]
fn grid_form_has_no_plane_and_no_hermitian_factor() {
    let s = surface(3);
    let g = build_grid_example(&s, grid_coefficients(&s)[0]).unwrap();
    assert!(!hermitian_divides(&g, &s));
    let pg = s.pg();
    assert!(pg.plane_ids().all(|pl| !plane_contained(pg, &g, &pg.plane(pl))));
}

#[test]
fn random_forms_satisfy_the_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for q in [2u32, 3] {
        let s = surface(q);
        let pg = s.pg();
        let f = s.field();
        for d in 1..=q + 1 {
            let ctx = FormContext::new(s.clone(), d).unwrap();
            for _ in 0..150 {
                let g = random_form(q, d, &mut rng);
                let r = ctx.intersection_stats(&g).unwrap();
                let direct = s.points().iter().filter(|&&p| g.evaluate(f, pg.coords(p)).is_zero()).count();
                assert_eq!(r.num_points(), direct);
                assert_eq!(r.double_count.lhs, r.double_count.rhs);
                if r.hermitian_component {
                    continue;
                }
                assert!(r.num_generators() as u32 <= d * (q + 1));
                // Containment over the closure equals rational vanishing while d <= q^2.
                let gens = s.generators().unwrap();
                let by_points: Vec<usize> = (0..gens.len())
                    .filter(|&i| gens[i].points().iter().all(|&p| g.evaluate(f, pg.coords(p)).is_zero()))
                    .collect();
                assert_eq!(r.generators, by_points);
                assert!(r.identity_violations(&s).is_empty(), "{:?}", r.identity_violations(&s));
            }
        }
    }
}

fn form_strategy() -> impl Strategy<Value = (Vec<u16>, u16, [u16; 4])> {
    (prop::collection::vec(0u16..4, 10), 1u16..4, prop::array::uniform4(0u16..4))
}

proptest! {
    #[test]
    fn evaluation_is_linear_in_the_coefficients((coeffs, lambda, x) in form_strategy()) {
        let s = surface(2);
        let f = s.field();
        let coeffs: Vec<Elem> = coeffs.into_iter().map(Elem).collect();
        prop_assume!(coeffs.iter().any(|c| !c.is_zero()));
        let g = HomogeneousForm::new(2, coeffs).unwrap();
        let x = x.map(Elem);
        let scaled = g.scale(f, Elem(lambda)).unwrap();
        prop_assert_eq!(scaled.evaluate(f, &x), f.mul(Elem(lambda), g.evaluate(f, &x)));
        prop_assert_eq!(scaled.normalized(f), g.normalized(f));
        prop_assert!(g.normalized(f).is_normalized());
    }

    #[test]
    fn products_evaluate_to_products(a in prop::array::uniform4(0u16..9), b in prop::array::uniform4(0u16..9), x in prop::array::uniform4(0u16..9)) {
        let s = surface(3);
        let f = s.field();
        prop_assume!(a.iter().any(|&c| c != 0) && b.iter().any(|&c| c != 0));
        let (la, lb) = (lin(a), lin(b));
        let g = HomogeneousForm::product(f, &[la.clone(), lb.clone()]).unwrap();
        let x = x.map(Elem);
        prop_assert_eq!(g.evaluate(f, &x), f.mul(la.evaluate(f, &x), lb.evaluate(f, &x)));
    }
}
