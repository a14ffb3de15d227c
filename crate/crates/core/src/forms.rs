//! Homogeneous forms over F_{q^2} and their intersection with a Hermitian
//! surface.
//!
//! For a form `F` of degree `d` the intersection `V(F) ∩ V2` is summarized
//! by an [`IntersectionReport`]: its rational points, the generators `J_F`
//! contained in `V(F)`, the defect `delta = d(q+1) - |J_F|`, the sets
//! `T(l)` of `J_F` lines meeting `l`, their distribution `a_{Π,l}` over the
//! book of planes around `l`, and the point multiplicities `r_P`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::geometry::{Coords, Pg3, PlaneId, PointId, ProjLine, ProjPlane, ProjPoint};
use crate::hermitian::HermitianSurface;
use crate::poly::{monomial_index, monomials, Mono, Poly};

/// A nonzero homogeneous polynomial stored densely over the degree-`d`
/// monomials in decreasing monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogeneousForm {
    degree: u32,
    coeffs: Vec<Elem>,
}

/// Serialized form: `(exponents, element index)` pairs in monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub q: u16,
    pub d: u32,
    pub terms: Vec<([u8; 4], u16)>,
}

impl HomogeneousForm {
    pub fn new(degree: u32, coeffs: Vec<Elem>) -> Result<HomogeneousForm> {
        if degree == 0 {
            return Err(Error::InvalidForm("degree must be at least 1".into()));
        }
        if coeffs.len() != crate::poly::num_monomials(degree) {
            return Err(Error::InvalidForm(format!(
                "expected {} coefficients for degree {degree}, got {}",
                crate::poly::num_monomials(degree),
                coeffs.len()
            )));
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidForm("zero form".into()));
        }
        Ok(HomogeneousForm { degree, coeffs })
    }

    pub fn from_poly(p: &Poly) -> Result<HomogeneousForm> {
        let degree = p.degree().ok_or_else(|| Error::InvalidForm("zero form".into()))?;
        if !p.is_homogeneous() {
            return Err(Error::InvalidForm("polynomial is not homogeneous".into()));
        }
        let basis = monomials(degree);
        let coeffs = basis.iter().map(|m| p.coeff(m)).collect();
        HomogeneousForm::new(degree, coeffs)
    }

    pub fn from_terms(f: &FieldSpec, degree: u32, terms: &[(Mono, Elem)]) -> Result<HomogeneousForm> {
        if terms.iter().any(|(m, _)| m.degree() != degree) {
            return Err(Error::InvalidForm(format!("term of the wrong degree (expected {degree})")));
        }
        let basis = monomials(degree);
        let mut coeffs = vec![Elem::ZERO; basis.len()];
        for (m, c) in terms {
            if c.0 >= f.order() {
                return Err(Error::ElementOutOfRange { index: c.0 as u32, order: f.order() });
            }
            let i = monomial_index(&basis, m).expect("degree checked");
            coeffs[i] = f.add(coeffs[i], *c);
        }
        HomogeneousForm::new(degree, coeffs)
    }

    pub fn linear(c: Coords) -> Result<HomogeneousForm> {
        HomogeneousForm::new(1, c.to_vec())
    }

    pub fn product(f: &FieldSpec, factors: &[HomogeneousForm]) -> Result<HomogeneousForm> {
        let p = factors
            .iter()
            .fold(Poly::constant(Elem::ONE), |acc, g| acc.mul(f, &g.to_poly(f)));
        HomogeneousForm::from_poly(&p)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dense coefficients over [`monomials`]`(degree)`.
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, Elem)> + '_ {
        monomials(self.degree)
            .into_iter()
            .zip(self.coeffs.iter().copied())
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn to_poly(&self, f: &FieldSpec) -> Poly {
        Poly::from_terms(f, self.terms())
    }

    pub fn scale(&self, f: &FieldSpec, c: Elem) -> Result<HomogeneousForm> {
        HomogeneousForm::new(self.degree, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    /// Scalar multiple with leading coefficient 1.
    pub fn normalized(&self, f: &FieldSpec) -> HomogeneousForm {
        let lead = self.coeffs.iter().copied().find(|c| !c.is_zero()).expect("nonzero form");
        let inv = f.inv(lead).expect("nonzero");
        HomogeneousForm { degree: self.degree, coeffs: self.coeffs.iter().map(|&x| f.mul(x, inv)).collect() }
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs.iter().find(|c| !c.is_zero()) == Some(&Elem::ONE)
    }

    pub fn evaluate(&self, f: &FieldSpec, x: &Coords) -> Elem {
        let d = self.degree as usize;
        let pows: Vec<Vec<Elem>> = x
            .iter()
            .map(|&v| {
                let mut row = Vec::with_capacity(d + 1);
                let mut acc = Elem::ONE;
                for _ in 0..=d {
                    row.push(acc);
                    acc = f.mul(acc, v);
                }
                row
            })
            .collect();
        monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .fold(Elem::ZERO, |acc, (m, &c)| {
                let v = (0..4).fold(c, |v, i| f.mul(v, pows[i][m.0[i] as usize]));
                f.add(acc, v)
            })
    }

    pub fn record(&self, q: u16) -> FormRecord {
        FormRecord {
            q,
            d: self.degree,
            terms: self.terms().map(|(m, c)| (m.0, c.0)).collect(),
        }
    }

    pub fn from_record(f: &FieldSpec, rec: &FormRecord) -> Result<HomogeneousForm> {
        if rec.q != f.q() {
            return Err(Error::InvalidForm(format!("form is over q = {}, field has q = {}", rec.q, f.q())));
        }
        let terms: Vec<(Mono, Elem)> = rec.terms.iter().map(|(e, c)| (Mono(*e), Elem(*c))).collect();
        HomogeneousForm::from_terms(f, rec.d, &terms)
    }
}

/// The binary form `F(aP + bQ)` of a line spanned by its canonical pair,
/// as coefficients of `a^d, a^{d-1} b, ..., b^d`.
pub fn restrict_to_line(f: &FieldSpec, form: &HomogeneousForm, line: &ProjLine) -> Vec<Elem> {
    let [p, q] = line.pair();
    let r = form.to_poly(f).restrict(f, &[p.coords, q.coords]);
    let d = form.degree() as u8;
    (0..=d).map(|i| r.coeff(&Mono([d - i, i, 0, 0]))).collect()
}

/// Whether the line lies in `V(F)` over the algebraic closure.
pub fn line_contained(f: &FieldSpec, form: &HomogeneousForm, line: &ProjLine) -> bool {
    restrict_to_line(f, form, line).iter().all(|c| c.is_zero())
}

/// Whether the plane lies in `V(F)`: the restricted ternary form vanishes.
pub fn plane_contained(pg: &Pg3, form: &HomogeneousForm, plane: &ProjPlane) -> bool {
    let basis = pg.plane_basis(plane);
    form.to_poly(pg.field()).restrict(pg.field(), &basis).is_zero()
}

/// `x^T A x^(q)` as a polynomial of degree q + 1.
pub fn hermitian_polynomial(s: &HermitianSurface) -> Poly {
    let f = s.field();
    let q = s.q() as u8;
    let a = s.matrix().entries();
    let mut p = Poly::zero();
    for i in 0..4 {
        for j in 0..4 {
            let mut e = [0u8; 4];
            e[i] += 1;
            e[j] += q;
            p.add_term(f, Mono(e), a[i][j]);
        }
    }
    p
}

/// Whether the surface's defining polynomial divides `F`, i.e. the surface is
/// a component of `V(F)`.
pub fn hermitian_divides(form: &HomogeneousForm, s: &HermitianSurface) -> bool {
    if form.degree() < s.q() as u32 + 1 {
        return false;
    }
    let (_, rem) = form.to_poly(s.field()).div_rem(s.field(), &hermitian_polynomial(s));
    rem.is_zero()
}

/// Bitset over the rational points of a surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointMask(pub Vec<u64>);

impl PointMask {
    pub fn new(n: usize) -> PointMask {
        PointMask(vec![0; n.div_ceil(64)])
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_subset_of(&self, other: &PointMask) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Per-degree caches on a fixed surface: monomial values at every point of
/// PG(3), monomial restrictions to every generator, and point masks.
pub struct FormContext {
    surface: Arc<HermitianSurface>,
    degree: u32,
    basis: Vec<Mono>,
    // num_points x M, row-major.
    values: Vec<Elem>,
    // |J| x M x (d+1).
    line_tables: Vec<Elem>,
    generator_masks: Vec<PointMask>,
    tangent_plane_points: Vec<Vec<PointId>>,
    hermitian: Poly,
}

impl std::fmt::Debug for FormContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FormContext(q = {}, d = {})", self.surface.q(), self.degree)
    }
}

impl FormContext {
    pub fn new(surface: Arc<HermitianSurface>, degree: u32) -> Result<FormContext> {
        if !surface.is_nondegenerate() {
            return Err(Error::Degenerate { rank: surface.rank() });
        }
        if degree == 0 {
            return Err(Error::InvalidForm("degree must be at least 1".into()));
        }
        let pg = surface.pg().clone();
        let f = pg.field().clone();
        let basis = monomials(degree);
        let m = basis.len();
        let d = degree as usize;

        let mut values = Vec::with_capacity(pg.num_points() * m);
        for c in pg.all_coords() {
            let pows: Vec<Vec<Elem>> = c.iter().map(|&v| (0..=d).map(|e| f.pow(v, e as u64)).collect()).collect();
            for mono in &basis {
                values.push((0..4).fold(Elem::ONE, |acc, i| f.mul(acc, pows[i][mono.0[i] as usize])));
            }
        }

        let gens = surface.generators()?;
        let mut line_tables = Vec::with_capacity(gens.len() * m * (d + 1));
        for g in gens {
            let [p, q] = g.pair();
            for mono in &basis {
                let r = Poly::constant(Elem::ONE).mul_term(&f, mono, Elem::ONE).restrict(&f, &[p.coords, q.coords]);
                for i in 0..=d {
                    line_tables.push(r.coeff(&Mono([(d - i) as u8, i as u8, 0, 0])));
                }
            }
        }

        let n = surface.num_points();
        let generator_masks = gens
            .iter()
            .map(|g| {
                let mut mask = PointMask::new(n);
                for &p in g.points() {
                    mask.set(surface.point_index(p).expect("generator lies on the surface"));
                }
                mask
            })
            .collect();

        let tangent_plane_points = surface
            .tangent_plane_ids()
            .iter()
            .map(|&pl| pg.plane_points(&pg.plane(pl)))
            .collect();

        let hermitian = hermitian_polynomial(&surface);
        Ok(FormContext { surface, degree, basis, values, line_tables, generator_masks, tangent_plane_points, hermitian })
    }

    pub fn surface(&self) -> &Arc<HermitianSurface> {
        &self.surface
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.surface.field()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    /// Monomial values at a point of PG(3).
    pub fn monomial_values(&self, p: PointId) -> &[Elem] {
        let m = self.basis.len();
        &self.values[p.0 as usize * m..(p.0 as usize + 1) * m]
    }

    pub fn generator_masks(&self) -> &[PointMask] {
        &self.generator_masks
    }

    fn check_degree(&self, form: &HomogeneousForm) -> Result<()> {
        if form.degree() != self.degree {
            return Err(Error::InvalidForm(format!(
                "form has degree {}, context is for degree {}",
                form.degree(),
                self.degree
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn eval_at(&self, form: &HomogeneousForm, p: PointId) -> Elem {
        self.field().dot(form.coeffs(), self.monomial_values(p))
    }

    /// Vanishing flags over all of PG(3).
    pub fn zero_set(&self, form: &HomogeneousForm) -> Vec<bool> {
        self.surface.pg().point_ids().map(|p| self.eval_at(form, p).is_zero()).collect()
    }

    /// Mask of the surface points where the form vanishes.
    pub fn surface_mask(&self, form: &HomogeneousForm) -> PointMask {
        let mut mask = PointMask::new(self.surface.num_points());
        for (i, &p) in self.surface.points().iter().enumerate() {
            if self.eval_at(form, p).is_zero() {
                mask.set(i);
            }
        }
        mask
    }

    /// Number of rational points of `V(F) ∩ V2`.
    pub fn count_points(&self, form: &HomogeneousForm) -> usize {
        self.surface.points().iter().filter(|&&p| self.eval_at(form, p).is_zero()).count()
    }

    /// Binary-form restriction of `F` to generator `gi`.
    pub fn generator_restriction(&self, form: &HomogeneousForm, gi: usize) -> Vec<Elem> {
        let f = self.field();
        let d = self.degree as usize;
        let m = self.basis.len();
        let table = &self.line_tables[gi * m * (d + 1)..(gi + 1) * m * (d + 1)];
        let mut out = vec![Elem::ZERO; d + 1];
        for (k, &c) in form.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..=d {
                out[i] = f.add(out[i], f.mul(c, table[k * (d + 1) + i]));
            }
        }
        out
    }

    pub fn generator_contained(&self, form: &HomogeneousForm, gi: usize) -> bool {
        self.generator_restriction(form, gi).iter().all(|c| c.is_zero())
    }

    pub fn hermitian_divides(&self, form: &HomogeneousForm) -> bool {
        if form.degree() < self.surface.q() as u32 + 1 {
            return false;
        }
        form.to_poly(self.field()).div_rem(self.field(), &self.hermitian).1.is_zero()
    }

    /// Tangent planes (by surface point index) contained in `V(F)`.
    fn contained_tangent_planes(&self, form: &HomogeneousForm, zero: &[bool]) -> Vec<usize> {
        let pg = self.surface.pg();
        (0..self.surface.num_points())
            .filter(|&i| {
                self.tangent_plane_points[i].iter().all(|p| zero[p.0 as usize])
                    && plane_contained(pg, form, &pg.plane(self.surface.tangent_plane_ids()[i]))
            })
            .collect()
    }

    /// `(|X(F_{q^2})| (q+1), sum over all generators of |l ∩ V(F)|)`.
    pub fn incidence_double_count(&self, form: &HomogeneousForm) -> Result<DoubleCount> {
        self.check_degree(form)?;
        let mask = self.surface_mask(form);
        let q = self.surface.q() as u64;
        let lhs = mask.count() as u64 * (q + 1);
        let rhs = self
            .surface
            .generators()?
            .iter()
            .map(|g| g.points().iter().filter(|&&p| mask.get(self.surface.point_index(p).unwrap())).count() as u64)
            .sum();
        Ok(DoubleCount { lhs, rhs })
    }

    pub fn intersection_stats(&self, form: &HomogeneousForm) -> Result<IntersectionReport> {
        self.check_degree(form)?;
        let s = &*self.surface;
        let pg = s.pg();
        let q = s.q() as usize;
        let d = self.degree as usize;
        let gens = s.generators()?;

        let zero = self.zero_set(form);
        let points: Vec<PointId> = s.points().iter().copied().filter(|p| zero[p.0 as usize]).collect();
        let double_count = self.incidence_double_count(form)?;

        let mut report = IntersectionReport {
            q: s.q(),
            degree: self.degree,
            form: form.clone(),
            hermitian_component: false,
            points,
            generators: Vec::new(),
            delta: None,
            surrogate_points: Vec::new(),
            t_sizes: Vec::new(),
            x_min: None,
            books: Vec::new(),
            multiplicities: Vec::new(),
            contained_tangent_planes: Vec::new(),
            double_count,
        };

        if self.hermitian_divides(form) {
            report.hermitian_component = true;
            return Ok(report);
        }

        report.contained_tangent_planes =
            self.contained_tangent_planes(form, &zero).into_iter().map(|i| s.tangent_plane_ids()[i]).collect();
        report.contained_tangent_planes.sort_unstable();

        let jf: Vec<usize> = (0..gens.len()).filter(|&gi| self.generator_contained(form, gi)).collect();
        report.delta = Some((d * (q + 1)) as i64 - jf.len() as i64);

        let mut on_jf = vec![0usize; pg.num_points()];
        for &gi in &jf {
            for &p in gens[gi].points() {
                on_jf[p.0 as usize] += 1;
            }
        }
        report.surrogate_points = report.points.iter().copied().filter(|p| on_jf[p.0 as usize] == 0).collect();
        report.multiplicities = pg
            .point_ids()
            .filter(|p| on_jf[p.0 as usize] > 0)
            .map(|p| (p, on_jf[p.0 as usize]))
            .collect();

        for &gi in &jf {
            let line = &gens[gi];
            let t: Vec<usize> = jf
                .iter()
                .copied()
                .filter(|&m| m != gi && gens[m].meet(line).is_some())
                .collect();
            let planes = pg.book_of_planes(line);
            let mut a = Vec::with_capacity(planes.len());
            let mut contained = Vec::with_capacity(planes.len());
            for &pl in &planes {
                let plane = pg.plane(pl);
                a.push(t.iter().filter(|&&m| gens[m].points().iter().all(|&x| pg.incident(&plane, x))).count());
                contained.push(report.contained_tangent_planes.binary_search(&pl).is_ok());
            }
            report.t_sizes.push(t.len());
            report.books.push(BookStats { planes, a, contained });
        }
        report.x_min = report.t_sizes.iter().copied().min();
        report.generators = jf;
        Ok(report)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCount {
    pub lhs: u64,
    pub rhs: u64,
}

/// `a_{Π,l}` over the book of planes of one `J_F` line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BookStats {
    pub planes: Vec<PlaneId>,
    pub a: Vec<usize>,
    /// Whether each plane lies in `V(F)`.
    pub contained: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct IntersectionReport {
    pub q: u16,
    pub degree: u32,
    pub form: HomogeneousForm,
    /// The surface is a component of `V(F)`; the line statistics below are
    /// then left empty and `delta` is `None`.
    pub hermitian_component: bool,
    /// Rational points of `V(F) ∩ V2`, ascending id.
    pub points: Vec<PointId>,
    /// `J_F` as indices into the surface's generator list.
    pub generators: Vec<usize>,
    pub delta: Option<i64>,
    /// Rational points of the intersection on no `J_F` line.
    pub surrogate_points: Vec<PointId>,
    /// `|T(l)|`, parallel to `generators`.
    pub t_sizes: Vec<usize>,
    /// `min |T(l)|`; `None` when `J_F` is empty.
    pub x_min: Option<usize>,
    /// Parallel to `generators`.
    pub books: Vec<BookStats>,
    /// `r_P` for every point on a `J_F` line, ascending id.
    pub multiplicities: Vec<(PointId, usize)>,
    /// Ascending plane id.
    pub contained_tangent_planes: Vec<PlaneId>,
    pub double_count: DoubleCount,
}

impl IntersectionReport {
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn contains_tangent_plane(&self) -> bool {
        !self.contained_tangent_planes.is_empty()
    }

    pub fn surrogate_empty(&self) -> bool {
        self.surrogate_points.is_empty()
    }

    pub fn multiplicity(&self, p: PointId) -> usize {
        self.multiplicities
            .binary_search_by_key(&p, |&(x, _)| x)
            .map(|i| self.multiplicities[i].1)
            .unwrap_or(0)
    }

    /// Checks the structural identities every report must satisfy and
    /// describes each failure.
    pub fn identity_violations(&self, s: &HermitianSurface) -> Vec<String> {
        let mut out = Vec::new();
        let q = self.q as i64;
        let d = self.degree as i64;
        if self.double_count.lhs != self.double_count.rhs {
            out.push(format!("incidence double count: {} != {}", self.double_count.lhs, self.double_count.rhs));
        }
        if self.hermitian_component {
            return out;
        }
        let delta = self.delta.expect("set when the surface is not a component");
        if delta < 0 {
            out.push(format!("delta = {delta} < 0"));
        }
        if !self.surrogate_points.is_empty() && delta < q + 1 {
            out.push(format!("surrogate residual has rational points but delta = {delta} < q + 1"));
        }
        let gens = s.generators().expect("non-degenerate");
        for (k, &gi) in self.generators.iter().enumerate() {
            let book = &self.books[k];
            let sum: usize = book.a.iter().sum();
            if sum != self.t_sizes[k] {
                out.push(format!("generator {gi}: |T| = {} but the book sums to {sum}", self.t_sizes[k]));
            }
            for (j, &a) in book.a.iter().enumerate() {
                if !book.contained[j] && a as i64 > d - 1 {
                    out.push(format!("generator {gi}: a = {a} > d - 1 on a plane not in V(F)"));
                }
            }
            for &p in gens[gi].points() {
                let tp = s.tangent_plane_ids()[s.point_index(p).expect("on surface")];
                let Some(j) = book.planes.iter().position(|&pl| pl == tp) else {
                    out.push(format!("generator {gi}: tangent plane at {p:?} is not in its book"));
                    continue;
                };
                let r = self.multiplicity(p);
                if r != book.a[j] + 1 {
                    out.push(format!("generator {gi}: r_P = {r} but a + 1 = {} at {p:?}", book.a[j] + 1));
                }
            }
        }
        out
    }

    pub fn summary(&self, pg: &Pg3, s: &HermitianSurface, verbose: bool) -> IntersectionSummary {
        let gens = s.generators().unwrap_or(&[]);
        IntersectionSummary {
            q: self.q,
            d: self.degree,
            form: self.form.record(self.q),
            num_points: self.points.len(),
            hermitian_component: self.hermitian_component,
            num_generators: self.generators.len(),
            delta: self.delta,
            surrogate_points: self.surrogate_points.len(),
            x: self.x_min,
            t_sizes: self.t_sizes.clone(),
            a_table: self.books.iter().map(|b| b.a.clone()).collect(),
            max_multiplicity: self.multiplicities.iter().map(|&(_, r)| r).max().unwrap_or(0),
            contains_tangent_plane: self.contains_tangent_plane(),
            contained_tangent_planes: self.contained_tangent_planes.iter().map(|&pl| pg.plane(pl)).collect(),
            double_count: self.double_count,
            point_list: verbose.then(|| self.points.iter().map(|&p| pg.point(p)).collect()),
            generator_list: verbose.then(|| self.generators.iter().map(|&gi| gens[gi].pair().to_vec()).collect()),
            multiplicity_list: verbose.then(|| self.multiplicities.iter().map(|&(p, r)| (pg.point(p), r)).collect()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionSummary {
    pub q: u16,
    pub d: u32,
    pub form: FormRecord,
    pub num_points: usize,
    pub hermitian_component: bool,
    pub num_generators: usize,
    pub delta: Option<i64>,
    pub surrogate_points: usize,
    pub x: Option<usize>,
    pub t_sizes: Vec<usize>,
    pub a_table: Vec<Vec<usize>>,
    pub max_multiplicity: usize,
    pub contains_tangent_plane: bool,
    pub contained_tangent_planes: Vec<ProjPlane>,
    pub double_count: DoubleCount,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_list: Option<Vec<ProjPoint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_list: Option<Vec<Vec<ProjPoint>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity_list: Option<Vec<(ProjPoint, usize)>>,
}
