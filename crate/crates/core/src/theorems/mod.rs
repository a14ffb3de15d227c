//! Upper bounds on `|V(F) ∩ V2|`, their hypotheses, extremal constructions
//! and searches for maximizing forms.

pub mod bounds;
pub mod extremal;
pub mod search;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{FormContext, HomogeneousForm, IntersectionReport};
use crate::geometry::PlaneId;
use crate::hermitian::HermitianSurface;
use crate::poly::Poly;

pub use bounds::Q;
pub use extremal::{build_extremal_pencil, build_grid_example, pencil_line, secant_pencil_planes};
pub use search::{exhaustive_search, random_search, SearchConfig, SearchMode, SearchResult, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Conjectured,
    ResidualCurve,
    Defect,
    MeetingLines,
    GeneratorCount,
    NoTangentPlane,
    NotTangentUnion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub bound: BoundKind,
    /// `None` when the bound's inputs are undefined (e.g. `X` with empty `J_F`).
    pub value: Option<Q>,
    pub applicable: bool,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub hermitian_component: bool,
    pub contains_tangent_plane: bool,
    pub surrogate_empty: bool,
    pub generators_empty: bool,
    /// `None` when not determined.
    pub union_of_tangent_planes: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u16,
    pub d: u32,
    pub observed: usize,
    pub delta: i64,
    pub x: Option<usize>,
    pub hypotheses: Hypotheses,
    pub verdicts: Vec<BoundVerdict>,
    pub identity_violations: Vec<String>,
}

impl BoundReport {
    pub fn verdict(&self, kind: BoundKind) -> &BoundVerdict {
        self.verdicts.iter().find(|v| v.bound == kind).expect("every bound has a verdict")
    }

    /// Applicable bounds that the observed count exceeds.
    pub fn violated(&self) -> Vec<BoundKind> {
        self.verdicts.iter().filter(|v| v.applicable && !v.satisfied).map(|v| v.bound).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.violated().is_empty() && self.identity_violations.is_empty()
    }
}

/// Evaluates every bound against a report. `union` says whether `F` is a
/// product of tangent-plane forms, if known.
pub fn evaluate_bounds(report: &IntersectionReport, union: Option<bool>) -> Result<BoundReport> {
    if report.hermitian_component {
        return Err(Error::HermitianComponent);
    }
    let q = report.q as i64;
    let d = report.degree as i64;
    let delta = report.delta.expect("set when the surface is not a component");
    let observed = report.num_points();
    let x = report.x_min.map(|x| x as i64);
    let tangent = report.contains_tangent_plane();
    let surrogate_empty = report.surrogate_empty();
    let jf_empty = report.generators.is_empty();
    let line_bounds_apply = !tangent && surrogate_empty && !jf_empty;

    let verdict = |bound, value: Option<Q>, applicable: bool| BoundVerdict {
        bound,
        applicable: applicable && value.is_some(),
        satisfied: value.is_none_or(|v| Q::from_integer(observed as i64) <= v),
        value,
    };
    let verdicts = vec![
        verdict(BoundKind::Conjectured, Some(bounds::conjectured(q, d)), d <= q + 1),
        verdict(BoundKind::ResidualCurve, Some(bounds::residual_curve(q, d)), !surrogate_empty),
        verdict(BoundKind::Defect, Some(bounds::defect(q, d, delta)), true),
        verdict(BoundKind::MeetingLines, x.map(|x| bounds::meeting_lines(q, d, x)), line_bounds_apply),
        verdict(BoundKind::GeneratorCount, x.map(|x| bounds::generator_count(q, d, delta, x)), line_bounds_apply),
        verdict(BoundKind::NoTangentPlane, Some(bounds::no_tangent_plane(q, d)), !tangent),
        verdict(BoundKind::NotTangentUnion, Some(bounds::no_tangent_plane(q, d)), union == Some(false) && d <= q),
    ];
    Ok(BoundReport {
        q: report.q,
        d: report.degree,
        observed,
        delta,
        x: report.x_min,
        hypotheses: Hypotheses {
            hermitian_component: false,
            contains_tangent_plane: tangent,
            surrogate_empty,
            generators_empty: jf_empty,
            union_of_tangent_planes: union,
        },
        verdicts,
        identity_violations: Vec::new(),
    })
}

/// Factors `F` into tangent-plane linear forms when it is such a product.
/// Candidates are the tangent planes contained in `V(F)`, tried in
/// ascending plane order; repeated factors appear repeatedly.
pub fn tangent_plane_factors(
    s: &HermitianSurface,
    form: &HomogeneousForm,
    contained: &[PlaneId],
) -> Option<Vec<PlaneId>> {
    let f = s.field();
    let pg = s.pg();
    let mut rest = form.to_poly(f);
    let mut factors = Vec::new();
    for &pl in contained {
        let lin = Poly::linear(&pg.plane(pl).coeffs);
        while let Some(quot) = rest.exact_div(f, &lin) {
            rest = quot;
            factors.push(pl);
        }
    }
    (rest.degree() == Some(0)).then_some(factors)
}

/// Intersection statistics, bound verdicts and identity checks for one form.
pub fn check_theorems(ctx: &FormContext, form: &HomogeneousForm) -> Result<(IntersectionReport, BoundReport)> {
    let report = ctx.intersection_stats(form)?;
    let union = tangent_plane_factors(ctx.surface(), form, &report.contained_tangent_planes).is_some();
    let mut bounds = evaluate_bounds(&report, Some(union))?;
    bounds.identity_violations = report.identity_violations(ctx.surface());
    Ok((report, bounds))
}

/// Whether `F` is a product of `d` tangent-plane forms whose planes all pass
/// through one common secant line.
pub fn is_secant_pencil(ctx: &FormContext, form: &HomogeneousForm) -> Result<bool> {
    let report = ctx.intersection_stats(form)?;
    if report.hermitian_component {
        return Ok(false);
    }
    let s = ctx.surface();
    let Some(planes) = tangent_plane_factors(s, form, &report.contained_tangent_planes) else {
        return Ok(false);
    };
    let pg = s.pg();
    if planes.len() == 1 {
        return Ok(true);
    }
    let mut distinct = planes.clone();
    distinct.dedup();
    if distinct.len() != planes.len() {
        return Ok(false);
    }
    let line = pg.plane_intersection(&pg.plane(planes[0]), &pg.plane(planes[1]))?;
    if s.classify_line(&line)?.kind != crate::hermitian::LineKind::Secant {
        return Ok(false);
    }
    Ok(planes.iter().all(|&pl| pg.line_in_plane(&line, &pg.plane(pl))))
}
