//! Combinatorial checks of a Hermitian surface against its closed-form
//! counts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use hermsurf::hermitian::{HermitianSurface, LineKind};
use hermsurf::Result;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &'static str, expected: impl std::fmt::Debug, observed: impl std::fmt::Debug) -> Check {
        let (expected, observed) = (format!("{expected:?}"), format!("{observed:?}"));
        Check { name, pass: expected == observed, expected, observed }
    }
}

#[derive(Debug, Serialize)]
pub struct CensusReport {
    pub q: u16,
    pub surface_points: usize,
    pub generators: usize,
    pub tangent_planes: usize,
    pub other_planes: usize,
    pub lines: BTreeMap<&'static str, usize>,
    pub checks: Vec<Check>,
}

impl CensusReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn kind_name(k: LineKind) -> &'static str {
    match k {
        LineKind::Generator => "generator",
        LineKind::Tangent => "tangent",
        LineKind::Secant => "secant",
    }
}

pub fn verify_counts(s: &HermitianSurface) -> Result<CensusReport> {
    let pg = s.pg();
    let q = s.q() as usize;
    let (q2, q3) = (q * q, q * q * q);
    let mut checks = Vec::new();

    let points = s.num_points();
    let generators = s.generators()?.len();
    checks.push(Check::new("surface_points", (q3 + 1) * (q2 + 1), points));
    checks.push(Check::new("generators", (q3 + 1) * (q + 1), generators));

    let sections: Vec<(usize, bool)> = pg
        .plane_ids()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&pl| {
            let size = pg.plane_points(&pg.plane(pl)).into_iter().filter(|&p| s.contains_id(p)).count();
            (size, s.tangency_point(pl).is_some())
        })
        .collect();
    let tangent_planes = sections.iter().filter(|&&(_, t)| t).count();
    let other_planes = sections.len() - tangent_planes;
    checks.push(Check::new("tangent_planes", points, tangent_planes));
    let bad_sections = sections
        .iter()
        .filter(|&&(size, t)| size != if t { q3 + q2 + 1 } else { q3 + 1 })
        .count();
    checks.push(Check::new("planar_sections", 0, bad_sections));

    let lines = pg.all_lines();
    let books: Vec<(LineKind, usize)> = lines
        .par_iter()
        .map(|l| s.classify_book(l).map(|b| (b.line_kind, b.tangent_plane_count)))
        .collect::<Result<_>>()?;
    let mut by_kind: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut bad_books = 0;
    for &(kind, tangent) in &books {
        *by_kind.entry(kind_name(kind)).or_default() += 1;
        let expected = match kind {
            LineKind::Generator => q2 + 1,
            LineKind::Tangent => 1,
            LineKind::Secant => q + 1,
        };
        bad_books += (tangent != expected) as usize;
    }
    let count = |k| by_kind.get(k).copied().unwrap_or(0);
    checks.push(Check::new("line_generators", generators, count("generator")));
    checks.push(Check::new("line_tangents", points * (q2 - q), count("tangent")));
    checks.push(Check::new("line_total", pg.num_lines(), lines.len()));
    checks.push(Check::new("books", 0, bad_books));

    let censuses: Vec<_> = s
        .points()
        .par_iter()
        .map(|&p| s.tangent_plane_line_census(p))
        .collect::<Result<_>>()?;
    let bad_census = censuses
        .iter()
        .filter(|c| {
            (
                c.generators_through_point,
                c.tangents_through_point,
                c.secants_through_point,
                c.generators_elsewhere,
                c.tangents_elsewhere,
                c.secants_elsewhere,
            ) != (q + 1, q2 - q, 0, 0, 0, q2 * q2)
        })
        .count();
    checks.push(Check::new("tangent_plane_lines", 0, bad_census));

    Ok(CensusReport {
        q: s.q(),
        surface_points: points,
        generators,
        tangent_planes,
        other_planes,
        lines: by_kind,
        checks,
    })
}
