//! Forms whose intersection with the surface is as large as the bounds allow.

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::forms::HomogeneousForm;
use crate::geometry::{PlaneId, ProjLine};
use crate::hermitian::{HermitianSurface, LineKind};
use crate::poly::Mono;

/// The secant carrying the extremal pencil: `{x2 = x3 = 0}` when that line
/// is secant, otherwise the first secant in line order.
pub fn pencil_line(s: &HermitianSurface) -> Result<ProjLine> {
    let pg = s.pg();
    let e0 = pg.id_of_raw(&[Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO])?;
    let e1 = pg.id_of_raw(&[Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO])?;
    let axis = pg.line_through(e0, e1)?;
    if s.classify_line(&axis)?.kind == LineKind::Secant {
        return Ok(axis);
    }
    for line in pg.all_lines() {
        if s.classify_line(&line)?.kind == LineKind::Secant {
            return Ok(line);
        }
    }
    unreachable!("a non-degenerate surface has secant lines")
}

/// The q + 1 tangent planes through a secant, ascending plane id.
pub fn secant_pencil_planes(s: &HermitianSurface, line: &ProjLine) -> Vec<PlaneId> {
    s.pg().book_of_planes(line).into_iter().filter(|&pl| s.tangency_point(pl).is_some()).collect()
}

/// Product of the first `d` tangent planes through [`pencil_line`];
/// requires `1 <= d <= q + 1`.
pub fn build_extremal_pencil(s: &HermitianSurface, d: u32) -> Result<HomogeneousForm> {
    let q = s.q() as u32;
    if d == 0 || d > q + 1 {
        return Err(Error::OutOfRange { what: "pencil degree", detail: format!("d = {d}, need 1 <= d <= {}", q + 1) });
    }
    let line = pencil_line(s)?;
    let planes = secant_pencil_planes(s, &line);
    assert_eq!(planes.len(), q as usize + 1, "a secant lies on exactly q + 1 tangent planes");
    let pg = s.pg();
    let factors: Vec<HomogeneousForm> = planes[..d as usize]
        .iter()
        .map(|&pl| HomogeneousForm::linear(pg.plane(pl).coeffs))
        .collect::<Result<_>>()?;
    HomogeneousForm::product(s.field(), &factors)
}

/// `alpha (x0^{q+1} + x1^{q+1}) + x2^{q+1} + x3^{q+1}` for `alpha` in
/// F_q \ {0, 1}; requires q > 2.
pub fn build_grid_example(s: &HermitianSurface, alpha: Elem) -> Result<HomogeneousForm> {
    let f = s.field();
    let q = s.q();
    if q == 2 {
        return Err(Error::OutOfRange { what: "grid example", detail: "needs q > 2".into() });
    }
    if alpha.0 >= f.order() || !f.in_subfield(alpha) || alpha.is_zero() || alpha == Elem::ONE {
        return Err(Error::OutOfRange {
            what: "grid coefficient",
            detail: format!("element {} is not in F_{q} \\ {{0, 1}}", alpha.0),
        });
    }
    let e = q as u8 + 1;
    let terms = [
        (Mono([e, 0, 0, 0]), alpha),
        (Mono([0, e, 0, 0]), alpha),
        (Mono([0, 0, e, 0]), Elem::ONE),
        (Mono([0, 0, 0, e]), Elem::ONE),
    ];
    HomogeneousForm::from_terms(f, e as u32, &terms)
}

/// Valid grid coefficients, ascending element index.
pub fn grid_coefficients(s: &HermitianSurface) -> Vec<Elem> {
    s.field().subfield_elements().into_iter().filter(|&a| !a.is_zero() && a != Elem::ONE).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormContext;

    #[test]
    fn pencil_counts_small() {
        let s = HermitianSurface::canonical_for_q(2).unwrap();
        for d in 1..=3u32 {
            let g = build_extremal_pencil(&s, d).unwrap();
            let ctx = FormContext::new(s.clone(), d).unwrap();
            assert_eq!(ctx.count_points(&g), (d * 10 + 3) as usize);
        }
        assert!(build_extremal_pencil(&s, 0).is_err());
        assert!(build_extremal_pencil(&s, 4).is_err());
    }

    #[test]
    fn pencil_line_is_the_axis_on_the_canonical_surface() {
        let s = HermitianSurface::canonical_for_q(2).unwrap();
        let line = pencil_line(&s).unwrap();
        let pg = s.pg();
        assert!(line.pair().iter().all(|p| p.coords[2].is_zero() && p.coords[3].is_zero()));
        assert_eq!(secant_pencil_planes(&s, &line).len(), 3);
        assert_eq!(pg.book_of_planes(&line).len(), 5);
    }

    #[test]
    fn grid_validation() {
        let s2 = HermitianSurface::canonical_for_q(2).unwrap();
        assert!(build_grid_example(&s2, Elem(1)).is_err());
        let s3 = HermitianSurface::canonical_for_q(3).unwrap();
        assert_eq!(grid_coefficients(&s3).len(), 1);
        assert!(build_grid_example(&s3, Elem::ONE).is_err());
        assert!(build_grid_example(&s3, Elem::ZERO).is_err());
        let not_in_subfield = s3.field().nonzero_elements().find(|&a| !s3.field().in_subfield(a)).unwrap();
        assert!(build_grid_example(&s3, not_in_subfield).is_err());
        assert!(build_grid_example(&s3, grid_coefficients(&s3)[0]).is_ok());
    }
}
