//! Maximization of `|V(F) ∩ V2|` over degree-`d` forms.
//!
//! Exhaustive search walks every scalar class of forms; random search draws
//! reproducible samples. Both check the unconditional bounds on every form
//! and report violations with the offending form.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bounds, check_theorems, BoundKind, Q};
use crate::classes::{chunks, ClassEnumerator};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::forms::{FormContext, FormRecord, HomogeneousForm, PointMask};
use crate::geometry::{Coords, PointId};
use crate::hermitian::{HermitianSurface, LineKind};
use crate::poly::{Mono, Poly};

pub const DEFAULT_CLASS_BUDGET: u128 = 10_000_000;
pub const DEFAULT_ARGMAX_CAP: usize = 10_000;
const PROGRESS_STEP: u64 = 1_000_000;
const CHUNK: u128 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    /// Uniform coefficient vectors.
    Random,
    /// Alternates uniform draws with products of linear forms biased toward
    /// tangent planes and secant pencils.
    Structured,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub class_budget: u128,
    pub argmax_cap: usize,
    pub progress: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { class_budget: DEFAULT_CLASS_BUDGET, argmax_cap: DEFAULT_ARGMAX_CAP, progress: true }
    }
}

/// A form breaking an applicable bound or a structural identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub form: FormRecord,
    pub observed: usize,
    /// `None` for a failed structural identity.
    pub bound: Option<BoundKind>,
    pub value: Option<Q>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub q: u16,
    pub d: u32,
    pub mode: SearchMode,
    /// Scalar classes visited, Hermitian multiples included.
    pub forms_examined: u64,
    pub hermitian_multiples_skipped: u64,
    pub max_points: usize,
    /// Maximizing forms, scalar-normalized, in class or sample order.
    pub argmax: Vec<FormRecord>,
    pub argmax_count: u64,
    pub argmax_truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub violations: Vec<Violation>,
}

impl SearchResult {
    pub fn argmax_forms(&self, s: &HermitianSurface) -> Result<Vec<HomogeneousForm>> {
        self.argmax.iter().map(|r| HomogeneousForm::from_record(s.field(), r)).collect()
    }
}

/// Per-chunk partial result.
#[derive(Default)]
struct Partial {
    max: usize,
    argmax: Vec<Vec<Elem>>,
    argmax_count: u64,
    skipped: u64,
    violations: Vec<Violation>,
}

impl Partial {
    fn offer(&mut self, count: usize, coeffs: &[Elem], cap: usize) {
        if count > self.max || self.argmax_count == 0 {
            self.max = count;
            self.argmax.clear();
            self.argmax_count = 0;
        }
        if count == self.max {
            self.argmax_count += 1;
            if self.argmax.len() < cap {
                self.argmax.push(coeffs.to_vec());
            }
        }
    }

    /// `other` covers later classes than `self`.
    fn merge(mut self, other: Partial, cap: usize) -> Partial {
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
        if other.argmax_count == 0 {
            return self;
        }
        if self.argmax_count == 0 || other.max > self.max {
            let (skipped, violations) = (self.skipped, std::mem::take(&mut self.violations));
            return Partial { skipped, violations, ..other };
        }
        if other.max == self.max {
            self.argmax_count += other.argmax_count;
            let room = cap.saturating_sub(self.argmax.len());
            self.argmax.extend(other.argmax.into_iter().take(room));
        }
        self
    }
}

/// Unconditional checks from the zero pattern alone. Containment of a
/// generator is read off rational points, exact while `d <= q^2` since a
/// line has `q^2 + 1` points.
struct FastChecker<'a> {
    ctx: &'a FormContext,
    q: i64,
    d: i64,
    n: usize,
    /// Counts at most this cannot break the defect bound for any defect.
    safe_count: i64,
    conjectured: Option<i64>,
}

impl<'a> FastChecker<'a> {
    fn new(ctx: &'a FormContext) -> FastChecker<'a> {
        let q = ctx.surface().q() as i64;
        let d = ctx.degree() as i64;
        let delta_max = d * (q + 1);
        let worst = bounds::defect(q, d, 0).min(bounds::defect(q, d, delta_max));
        FastChecker {
            ctx,
            q,
            d,
            n: ctx.surface().num_points(),
            safe_count: worst.floor().to_integer(),
            conjectured: (d <= q + 1).then(|| bounds::conjectured(q, d).to_integer()),
        }
    }

    fn check(&self, coeffs: &[Elem], vals: &[Elem], count: usize) -> Option<Violation> {
        let c = count as i64;
        let witness = |bound, value: Q, detail: String| {
            let form = HomogeneousForm::new(self.d as u32, coeffs.to_vec()).expect("nonzero class");
            Violation { form: form.record(self.q as u16), observed: count, bound: Some(bound), value: Some(value), detail }
        };
        if let Some(v) = self.conjectured {
            if c > v {
                return Some(witness(BoundKind::Conjectured, Q::from_integer(v), format!("{c} points > {v}")));
            }
        }
        if c <= self.safe_count {
            return None;
        }
        let jf = if self.d <= self.q * self.q {
            let mut mask = PointMask::new(self.n);
            for (i, v) in vals.iter().enumerate() {
                if v.is_zero() {
                    mask.set(i);
                }
            }
            self.ctx.generator_masks().iter().filter(|g| g.is_subset_of(&mask)).count()
        } else {
            let form = HomogeneousForm::new(self.d as u32, coeffs.to_vec()).expect("nonzero class");
            (0..self.ctx.generator_masks().len()).filter(|&gi| self.ctx.generator_contained(&form, gi)).count()
        };
        let delta = self.d * (self.q + 1) - jf as i64;
        let bound = bounds::defect(self.q, self.d, delta);
        (Q::from_integer(c) > bound)
            .then(|| witness(BoundKind::Defect, bound, format!("{c} points with defect {delta} exceed the bound")))
    }
}

/// Monomial values at the surface points: `M` rows of length `|V2|`.
fn surface_rows(ctx: &FormContext) -> Vec<Vec<Elem>> {
    let s = ctx.surface();
    let m = ctx.basis().len();
    let mut rows = vec![Vec::with_capacity(s.num_points()); m];
    for &p in s.points() {
        for (row, &v) in rows.iter_mut().zip(ctx.monomial_values(p)) {
            row.push(v);
        }
    }
    rows
}

/// Visits every scalar class of degree-`d` forms.
pub fn exhaustive_search(ctx: &FormContext, config: &SearchConfig) -> Result<SearchResult> {
    let s = ctx.surface();
    let f = ctx.field();
    let q = s.q();
    let d = ctx.degree();
    let rows = surface_rows(ctx);
    let too_large = || Error::BudgetExceeded {
        required: crate::classes::num_classes(f.order(), rows.len())
            .map_or_else(|| "more than 2^128".to_string(), |t| t.to_string()),
        budget: config.class_budget.min(u64::MAX as u128) as u64,
    };
    let en = ClassEnumerator::new(f, &rows).ok_or_else(too_large)?;
    let total = en.total();
    if total > config.class_budget {
        return Err(too_large());
    }
    let n = s.num_points();
    let check_multiples = d > q as u32;
    let checker = FastChecker::new(ctx);
    let stop = AtomicBool::new(false);
    let done = AtomicU64::new(0);
    let cap = config.argmax_cap;

    let partials: Vec<Partial> = chunks(total, CHUNK)
        .into_par_iter()
        .map(|(a, b)| {
            let mut part = Partial::default();
            if stop.load(Ordering::Relaxed) {
                return part;
            }
            let _ = en.walk(a, b, |_, coeffs, vals| {
                let count = vals.iter().filter(|v| v.is_zero()).count();
                if count == n && check_multiples {
                    let form = HomogeneousForm::new(d, coeffs.to_vec()).expect("nonzero class");
                    if ctx.hermitian_divides(&form) {
                        part.skipped += 1;
                        return ControlFlow::Continue(());
                    }
                }
                if let Some(v) = checker.check(coeffs, vals, count) {
                    part.violations.push(v);
                    stop.store(true, Ordering::Relaxed);
                    return ControlFlow::Break(());
                }
                part.offer(count, coeffs, cap);
                ControlFlow::Continue(())
            });
            let before = done.fetch_add((b - a) as u64, Ordering::Relaxed);
            let after = before + (b - a) as u64;
            if config.progress && before / PROGRESS_STEP != after / PROGRESS_STEP {
                eprintln!("progress: {after} / {total} classes (q = {q}, d = {d})");
            }
            part
        })
        .collect();

    let merged = partials.into_iter().fold(Partial::default(), |acc, p| acc.merge(p, cap));
    Ok(finish(q, d, SearchMode::Exhaustive, total as u64, merged, None, None, cap))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    q: u16,
    d: u32,
    mode: SearchMode,
    examined: u64,
    part: Partial,
    seed: Option<u64>,
    samples: Option<u64>,
    cap: usize,
) -> SearchResult {
    let argmax = part
        .argmax
        .into_iter()
        .map(|c| HomogeneousForm::new(d, c).expect("nonzero class").record(q))
        .collect();
    SearchResult {
        q,
        d,
        mode,
        forms_examined: examined,
        hermitian_multiples_skipped: part.skipped,
        max_points: part.max,
        argmax,
        argmax_count: part.argmax_count,
        argmax_truncated: part.argmax_count as usize > cap,
        seed,
        samples,
        violations: part.violations,
    }
}

/// Draws `samples` forms from a seeded distribution, checks every distinct
/// one against all bounds and identities, and reports the maximum. The
/// `i`-th sample depends only on `(seed, i)`.
pub fn random_search(
    ctx: &FormContext,
    mode: SearchMode,
    samples: u64,
    seed: u64,
    config: &SearchConfig,
) -> Result<SearchResult> {
    if samples == 0 {
        return Err(Error::OutOfRange { what: "samples", detail: "need at least one sample".into() });
    }
    if mode == SearchMode::Exhaustive {
        return Err(Error::OutOfRange { what: "mode", detail: "random search needs a sampling mode".into() });
    }
    let s = ctx.surface();
    let q = s.q();
    let d = ctx.degree();
    let sampler = Sampler::new(s, d);
    let drawn: Vec<HomogeneousForm> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let structured = mode == SearchMode::Structured && i % 2 == 1;
            let form = if structured { sampler.structured(&mut rng) } else { sampler.uniform(&mut rng) };
            form.normalized(s.field())
        })
        .collect();
    let mut seen = HashSet::with_capacity(drawn.len());
    let unique: Vec<HomogeneousForm> = drawn.into_iter().filter(|g| seen.insert(g.clone())).collect();

    let cap = config.argmax_cap;
    let check_multiples = d > q as u32;
    let outcomes: Vec<Result<Option<(usize, Vec<Violation>)>>> = unique
        .par_iter()
        .map(|form| {
            if check_multiples && ctx.hermitian_divides(form) {
                return Ok(None);
            }
            let (_, report) = check_theorems(ctx, form)?;
            let rec = || form.record(q);
            let mut violations: Vec<Violation> = report
                .verdicts
                .iter()
                .filter(|v| v.applicable && !v.satisfied)
                .map(|v| Violation {
                    form: rec(),
                    observed: report.observed,
                    bound: Some(v.bound),
                    value: v.value,
                    detail: format!("{} points exceed the bound", report.observed),
                })
                .collect();
            violations.extend(report.identity_violations.iter().map(|msg| Violation {
                form: rec(),
                observed: report.observed,
                bound: None,
                value: None,
                detail: msg.clone(),
            }));
            Ok(Some((report.observed, violations)))
        })
        .collect();

    let mut part = Partial::default();
    let mut examined = 0u64;
    for (form, outcome) in unique.iter().zip(outcomes) {
        match outcome? {
            None => part.skipped += 1,
            Some((count, violations)) => {
                examined += 1;
                part.violations.extend(violations);
                part.offer(count, form.coeffs(), cap);
            }
        }
    }
    Ok(finish(q, d, mode, examined, part, Some(seed), Some(samples), cap))
}

/// Reproducible form distributions on a fixed surface.
struct Sampler {
    surface: Arc<HermitianSurface>,
    d: u32,
}

impl Sampler {
    fn new(surface: &Arc<HermitianSurface>, d: u32) -> Sampler {
        Sampler { surface: surface.clone(), d }
    }

    fn elem(&self, rng: &mut ChaCha8Rng) -> Elem {
        Elem(rng.random_range(0..self.surface.field().order()))
    }

    fn nonzero_coords(&self, rng: &mut ChaCha8Rng) -> Coords {
        loop {
            let c: Coords = std::array::from_fn(|_| self.elem(rng));
            if c.iter().any(|x| !x.is_zero()) {
                return c;
            }
        }
    }

    fn uniform(&self, rng: &mut ChaCha8Rng) -> HomogeneousForm {
        let m = crate::poly::num_monomials(self.d);
        loop {
            let coeffs: Vec<Elem> = (0..m).map(|_| self.elem(rng)).collect();
            if let Ok(g) = HomogeneousForm::new(self.d, coeffs) {
                return g;
            }
        }
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> PointId {
        let pts = self.surface.points();
        pts[rng.random_range(0..pts.len())]
    }

    fn tangent_plane(&self, rng: &mut ChaCha8Rng) -> Coords {
        let p = self.random_point(rng);
        self.surface.tangent_plane(p).expect("non-degenerate").coeffs
    }

    /// Tangent planes through a random secant, in random order.
    fn secant_pencil(&self, rng: &mut ChaCha8Rng) -> Vec<Coords> {
        let s = &self.surface;
        let pg = s.pg();
        loop {
            let (a, b) = (self.random_point(rng), self.random_point(rng));
            if a == b {
                continue;
            }
            let line = pg.line_through(a, b).expect("distinct points");
            if s.classify_line(&line).expect("non-degenerate").kind != LineKind::Secant {
                continue;
            }
            let mut planes = super::secant_pencil_planes(s, &line);
            for i in (1..planes.len()).rev() {
                planes.swap(i, rng.random_range(0..=i));
            }
            return planes.into_iter().map(|pl| pg.plane(pl).coeffs).collect();
        }
    }

    fn structured(&self, rng: &mut ChaCha8Rng) -> HomogeneousForm {
        let f = self.surface.field();
        let d = self.d as usize;
        let q = self.surface.q() as usize;
        let linear: Vec<Coords> = match rng.random_range(0..5u8) {
            0 => (0..d).map(|_| self.nonzero_coords(rng)).collect(),
            1 => (0..d).map(|_| self.tangent_plane(rng)).collect(),
            2 => {
                let mut planes = self.secant_pencil(rng);
                planes.truncate(d);
                while planes.len() < d {
                    planes.push(self.nonzero_coords(rng));
                }
                planes
            }
            3 => {
                let k = rng.random_range(0..=d);
                (0..d).map(|i| if i < k { self.tangent_plane(rng) } else { self.nonzero_coords(rng) }).collect()
            }
            _ if d == q + 1 => return self.norm_form(rng),
            _ => (0..d).map(|_| self.nonzero_coords(rng)).collect(),
        };
        let factors: Vec<HomogeneousForm> =
            linear.into_iter().map(|c| HomogeneousForm::linear(c).expect("nonzero")).collect();
        HomogeneousForm::product(f, &factors).expect("product of nonzero forms")
    }

    /// `sum a_i x_i^{q+1}` with `a_i` in F_q, not all zero.
    fn norm_form(&self, rng: &mut ChaCha8Rng) -> HomogeneousForm {
        let f = self.surface.field();
        let sub = f.subfield_elements();
        let e = self.surface.q() as u8 + 1;
        loop {
            let terms: Vec<(Mono, Elem)> = (0..4)
                .map(|i| {
                    let mut m = [0u8; 4];
                    m[i] = e;
                    (Mono(m), sub[rng.random_range(0..sub.len())])
                })
                .collect();
            let p = Poly::from_terms(f, terms);
            if let Ok(g) = HomogeneousForm::from_poly(&p) {
                return g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet() -> SearchConfig {
        SearchConfig { progress: false, ..SearchConfig::default() }
    }

    #[test]
    fn planes_at_q2() {
        let s = HermitianSurface::canonical_for_q(2).unwrap();
        let ctx = FormContext::new(s, 1).unwrap();
        let r = exhaustive_search(&ctx, &quiet()).unwrap();
        assert_eq!(r.forms_examined, 85);
        assert_eq!(r.max_points, 13);
        assert_eq!(r.argmax_count, 45);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let s = HermitianSurface::canonical_for_q(2).unwrap();
        let ctx = FormContext::new(s, 3).unwrap();
        assert!(matches!(exhaustive_search(&ctx, &quiet()), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn random_search_is_reproducible() {
        let s = HermitianSurface::canonical_for_q(2).unwrap();
        let ctx = FormContext::new(s, 2).unwrap();
        let a = random_search(&ctx, SearchMode::Structured, 200, 42, &quiet()).unwrap();
        let b = random_search(&ctx, SearchMode::Structured, 200, 42, &quiet()).unwrap();
        assert_eq!(a, b);
        assert!(a.violations.is_empty());
        assert!(a.max_points <= 23);
        let c = random_search(&ctx, SearchMode::Structured, 200, 43, &quiet()).unwrap();
        assert_ne!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
    }

    #[test]
    fn inflated_counts_produce_witnesses() {
        let s = HermitianSurface::canonical_for_q(2).unwrap();
        let ctx = FormContext::new(s, 2).unwrap();
        let checker = FastChecker::new(&ctx);
        let coeffs = vec![Elem::ONE; ctx.basis().len()];
        let vals = vec![Elem::ONE; ctx.surface().num_points()];
        assert!(checker.check(&coeffs, &vals, 0).is_none());
        let v = checker.check(&coeffs, &vals, 24).unwrap();
        assert_eq!((v.observed, v.bound), (24, Some(BoundKind::Conjectured)));
        assert_eq!(v.form.terms.len(), coeffs.len());
        // No generator vanishes, so the defect is maximal.
        let v = checker.check(&coeffs, &vals, 23).unwrap();
        assert_eq!(v.bound, Some(BoundKind::Defect));
    }

    #[test]
    fn partial_merge_keeps_order() {
        let cap = 2;
        let mut a = Partial::default();
        a.offer(3, &[Elem(1)], cap);
        let mut b = Partial::default();
        b.offer(3, &[Elem(2)], cap);
        b.offer(3, &[Elem(3)], cap);
        let m = a.merge(b, cap);
        assert_eq!(m.argmax_count, 3);
        assert_eq!(m.argmax, vec![vec![Elem(1)], vec![Elem(2)]]);
    }
}
