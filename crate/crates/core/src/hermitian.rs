//! Hermitian matrices and surfaces in PG(3, q^2).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::geometry::{Coords, Pg3, PlaneId, PointId, ProjLine, ProjPlane};
use crate::linalg;

pub type Matrix4 = [[Elem; 4]; 4];

/// A nonzero 4x4 matrix with `A^T = A^(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HermitianMatrix(Matrix4);

impl HermitianMatrix {
    pub fn new(f: &FieldSpec, m: Matrix4) -> Result<HermitianMatrix> {
        if m.iter().flatten().all(|x| x.is_zero()) {
            return Err(Error::ZeroMatrix);
        }
        for i in 0..4 {
            for j in 0..4 {
                if m[i][j].0 >= f.order() {
                    return Err(Error::ElementOutOfRange { index: m[i][j].0 as u32, order: f.order() });
                }
                if m[j][i] != f.conj(m[i][j]) {
                    return Err(Error::NotHermitian);
                }
            }
        }
        Ok(HermitianMatrix(m))
    }

    pub fn identity() -> HermitianMatrix {
        let mut m = [[Elem::ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Elem::ONE;
        }
        HermitianMatrix(m)
    }

    pub fn diagonal(f: &FieldSpec, d: [Elem; 4]) -> Result<HermitianMatrix> {
        let mut m = [[Elem::ZERO; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        HermitianMatrix::new(f, m)
    }

    pub fn entries(&self) -> &Matrix4 {
        &self.0
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        let rows: Vec<Vec<Elem>> = self.0.iter().map(|r| r.to_vec()).collect();
        linalg::rank(f, &rows)
    }

    /// `x^T A y^(q)`.
    pub fn form(&self, f: &FieldSpec, x: &Coords, y: &Coords) -> Elem {
        let yq = y.map(|v| f.conj(v));
        let mut acc = Elem::ZERO;
        for i in 0..4 {
            if x[i].is_zero() {
                continue;
            }
            acc = f.add(acc, f.mul(x[i], f.dot(&self.0[i], &yq)));
        }
        acc
    }

    /// `T^T A T^(q)`.
    pub fn congruent(&self, f: &FieldSpec, t: &Matrix4) -> Matrix4 {
        let col = |j: usize| -> Coords { std::array::from_fn(|i| t[i][j]) };
        std::array::from_fn(|i| std::array::from_fn(|j| self.form(f, &col(i), &col(j))))
    }
}

/// Result of congruence diagonalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonicalization {
    /// Columns are the new basis vectors; `T^T A T^(q)` is `diag(1, .., 1, 0, .., 0)`.
    pub transform: Matrix4,
    pub rank: usize,
}

impl Canonicalization {
    /// Image of a canonical-coordinates vector in the original coordinates.
    pub fn apply(&self, f: &FieldSpec, y: &Coords) -> Coords {
        std::array::from_fn(|i| f.dot(&self.transform[i], y))
    }
}

/// Sesquilinear Gram-Schmidt: repeatedly split off a vector of Hermitian norm
/// 1 and continue on its orthogonal complement. A complement on which every
/// basis vector is isotropic but the form is nonzero yields a non-isotropic
/// vector `b_i + lambda b_j` from a hyperbolic pair.
pub fn canonicalize(f: &FieldSpec, a: &HermitianMatrix) -> Canonicalization {
    let h = |x: &Coords, y: &Coords| a.form(f, x, y);
    let mut basis: Vec<Coords> = (0..4)
        .map(|i| {
            let mut e = [Elem::ZERO; 4];
            e[i] = Elem::ONE;
            e
        })
        .collect();
    let mut found: Vec<Coords> = Vec::new();

    loop {
        let mut v = basis.iter().copied().find(|b| !h(b, b).is_zero());
        if v.is_none() {
            'pairs: for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    if h(&basis[i], &basis[j]).is_zero() {
                        continue;
                    }
                    for lambda in f.nonzero_elements() {
                        let w: Coords = std::array::from_fn(|c| f.add(basis[i][c], f.mul(lambda, basis[j][c])));
                        if !h(&w, &w).is_zero() {
                            v = Some(w);
                            break 'pairs;
                        }
                    }
                    unreachable!("the trace map is onto F_q");
                }
            }
        }
        let Some(v) = v else { break };

        let norm = h(&v, &v);
        debug_assert!(f.in_subfield(norm));
        let mu = f.norm_preimage(f.inv(norm).expect("nonzero")).expect("norm is onto F_q");
        let t = v.map(|x| f.mul(mu, x));
        debug_assert_eq!(h(&t, &t), Elem::ONE);

        let mut rest: Vec<Vec<Elem>> = basis
            .iter()
            .map(|w| {
                let c = h(w, &t);
                (0..4).map(|i| f.sub(w[i], f.mul(c, t[i]))).collect()
            })
            .collect();
        linalg::rref(f, &mut rest);
        basis = rest.iter().map(|r| [r[0], r[1], r[2], r[3]]).collect();
        found.push(t);
    }

    let rank = found.len();
    found.extend(basis);
    debug_assert_eq!(found.len(), 4);
    let transform = std::array::from_fn(|i| std::array::from_fn(|j| found[j][i]));
    Canonicalization { transform, rank }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    Tangent,
    Secant,
    Generator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineClass {
    pub kind: LineKind,
    /// Rational points of the line on the surface, ascending id.
    pub points: Vec<PointId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BookClass {
    pub line_kind: LineKind,
    pub tangent_plane_count: usize,
    /// Tangency points of the tangent planes in the book, in book order.
    pub tangency_points: Vec<PointId>,
}

/// Classification of the lines of a tangent plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TangentPlaneCensus {
    pub generators_through_point: usize,
    pub tangents_through_point: usize,
    pub secants_through_point: usize,
    pub generators_elsewhere: usize,
    pub tangents_elsewhere: usize,
    pub secants_elsewhere: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub q: u16,
    pub matrix: Vec<u16>,
}

const NOT_ON_SURFACE: u32 = u32::MAX;

/// A Hermitian surface with its rational points and, when non-degenerate, its
/// generators and tangent planes.
pub struct HermitianSurface {
    pg: Arc<Pg3>,
    matrix: HermitianMatrix,
    rank: usize,
    points: Vec<PointId>,
    // PG(3) point id -> position in `points`.
    index: Vec<u32>,
    tangent_planes: Vec<PlaneId>,
    // PG(3) plane id -> tangency point.
    tangency: Vec<Option<PointId>>,
    generators: Vec<ProjLine>,
    point_generators: Vec<Vec<u32>>,
}

impl std::fmt::Debug for HermitianSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HermitianSurface")
            .field("q", &self.q())
            .field("rank", &self.rank)
            .field("points", &self.points.len())
            .finish()
    }
}

impl HermitianSurface {
    pub fn new(pg: Arc<Pg3>, matrix: HermitianMatrix) -> HermitianSurface {
        let f = pg.field().clone();
        let rank = matrix.rank(&f);
        let mut index = vec![NOT_ON_SURFACE; pg.num_points()];
        let mut points = Vec::new();
        for id in pg.point_ids() {
            let c = pg.coords(id);
            if matrix.form(&f, c, c).is_zero() {
                index[id.0 as usize] = points.len() as u32;
                points.push(id);
            }
        }
        let mut s = HermitianSurface {
            pg,
            matrix,
            rank,
            points,
            index,
            tangent_planes: Vec::new(),
            tangency: Vec::new(),
            generators: Vec::new(),
            point_generators: Vec::new(),
        };
        if rank == 4 {
            s.build_tangent_structure();
        }
        s
    }

    /// The surface `x0^{q+1} + x1^{q+1} + x2^{q+1} + x3^{q+1} = 0`.
    pub fn canonical(pg: Arc<Pg3>) -> HermitianSurface {
        HermitianSurface::new(pg, HermitianMatrix::identity())
    }

    pub fn canonical_for_q(q: u32) -> Result<Arc<HermitianSurface>> {
        Ok(Arc::new(HermitianSurface::canonical(Pg3::for_q(q)?)))
    }

    fn build_tangent_structure(&mut self) {
        let pg = self.pg.clone();
        let q = self.q() as usize;
        let s = q * q;
        self.tangency = vec![None; pg.num_planes()];
        let mut tangent_planes = Vec::with_capacity(self.points.len());
        let mut lines: BTreeMap<(PointId, PointId), ProjLine> = BTreeMap::new();
        for &p in &self.points {
            let plane = self.tangent_plane_unchecked(p);
            let pid = pg.plane_id(&plane);
            assert!(self.tangency[pid.0 as usize].is_none(), "tangent planes of distinct points coincide");
            self.tangency[pid.0 as usize] = Some(p);
            tangent_planes.push(pid);

            let section: Vec<PointId> = pg.plane_points(&plane).into_iter().filter(|&x| self.contains_id(x)).collect();
            let mut covered = vec![false; section.len()];
            let mut groups = 0;
            for (i, &x) in section.iter().enumerate() {
                if x == p || covered[i] {
                    continue;
                }
                let line = pg.line_through(p, x).expect("distinct");
                assert!(
                    line.points().iter().all(|&y| self.contains_id(y)),
                    "tangent plane section is not a union of lines through the tangency point"
                );
                for &y in line.points() {
                    if let Ok(k) = section.binary_search(&y) {
                        covered[k] = true;
                    }
                }
                groups += 1;
                lines.entry(line.key()).or_insert(line);
            }
            assert_eq!(groups, q + 1, "tangent plane section must split into q+1 generators");
            assert_eq!(section.len(), q * q * q + s + 1);
        }
        self.tangent_planes = tangent_planes;
        self.generators = lines.into_values().collect();
        self.point_generators = vec![Vec::new(); self.points.len()];
        for (gi, g) in self.generators.iter().enumerate() {
            for &x in g.points() {
                self.point_generators[self.index[x.0 as usize] as usize].push(gi as u32);
            }
        }
    }

    pub fn pg(&self) -> &Arc<Pg3> {
        &self.pg
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.pg.field()
    }

    pub fn q(&self) -> u16 {
        self.pg.field().q()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank == 4
    }

    pub fn is_canonical(&self) -> bool {
        self.matrix == HermitianMatrix::identity()
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if self.is_nondegenerate() {
            Ok(())
        } else {
            Err(Error::Degenerate { rank: self.rank })
        }
    }

    /// Rational points, ascending id.
    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Position of a point in [`points`](Self::points).
    pub fn point_index(&self, p: PointId) -> Option<usize> {
        let i = self.index[p.0 as usize];
        (i != NOT_ON_SURFACE).then_some(i as usize)
    }

    #[inline]
    pub fn contains_id(&self, p: PointId) -> bool {
        self.index[p.0 as usize] != NOT_ON_SURFACE
    }

    /// `P^T A P^(q) = 0`, evaluated directly.
    pub fn contains(&self, p: &Coords) -> bool {
        self.matrix.form(self.field(), p, p).is_zero()
    }

    pub fn record(&self) -> SurfaceRecord {
        SurfaceRecord {
            q: self.q(),
            matrix: self.matrix.0.iter().flatten().map(|e| e.0).collect(),
        }
    }

    pub fn from_record(rec: &SurfaceRecord) -> Result<HermitianSurface> {
        let pg = Pg3::for_q(rec.q as u32)?;
        if rec.matrix.len() != 16 {
            return Err(Error::NotHermitian);
        }
        let m: Matrix4 = std::array::from_fn(|i| std::array::from_fn(|j| Elem(rec.matrix[4 * i + j])));
        let a = HermitianMatrix::new(pg.field(), m)?;
        Ok(HermitianSurface::new(pg, a))
    }

    fn tangent_plane_unchecked(&self, p: PointId) -> ProjPlane {
        let f = self.field();
        let c = self.pg.coords(p).map(|x| f.conj(x));
        let raw: Coords = std::array::from_fn(|i| f.dot(&self.matrix.0[i], &c));
        self.pg.normalize_plane(raw).expect("non-degenerate matrix has no singular points")
    }

    /// The plane with dual coordinates `A P^(q)`.
    pub fn tangent_plane(&self, p: PointId) -> Result<ProjPlane> {
        self.require_nondegenerate()?;
        if !self.contains_id(p) {
            return Err(Error::PointNotOnSurface);
        }
        Ok(self.tangent_plane_unchecked(p))
    }

    /// Tangent plane ids, parallel to [`points`](Self::points).
    pub fn tangent_plane_ids(&self) -> &[PlaneId] {
        &self.tangent_planes
    }

    /// The point at which `plane` is tangent, if it is a tangent plane.
    pub fn tangency_point(&self, plane: PlaneId) -> Option<PointId> {
        self.tangency.get(plane.0 as usize).copied().flatten()
    }

    pub fn classify_line(&self, line: &ProjLine) -> Result<LineClass> {
        self.require_nondegenerate()?;
        let points: Vec<PointId> = line.points().iter().copied().filter(|&p| self.contains_id(p)).collect();
        let q = self.q() as usize;
        let kind = match points.len() {
            1 => LineKind::Tangent,
            n if n == q + 1 => LineKind::Secant,
            n if n == q * q + 1 => LineKind::Generator,
            n => panic!("line meets the surface in {n} points; only 1, q+1, q^2+1 are possible"),
        };
        Ok(LineClass { kind, points })
    }

    /// All generators, sorted by line key.
    pub fn generators(&self) -> Result<&[ProjLine]> {
        self.require_nondegenerate()?;
        Ok(&self.generators)
    }

    /// Indices into [`generators`](Self::generators) of the generators through `p`.
    pub fn generators_through(&self, p: PointId) -> &[u32] {
        match self.point_index(p) {
            Some(i) if !self.point_generators.is_empty() => &self.point_generators[i],
            _ => &[],
        }
    }

    pub fn generator_index(&self, line: &ProjLine) -> Option<usize> {
        self.generators.binary_search(line).ok()
    }

    pub fn classify_book(&self, line: &ProjLine) -> Result<BookClass> {
        let class = self.classify_line(line)?;
        let tangency_points: Vec<PointId> = self
            .pg
            .book_of_planes(line)
            .into_iter()
            .filter_map(|pl| self.tangency_point(pl))
            .collect();
        Ok(BookClass {
            line_kind: class.kind,
            tangent_plane_count: tangency_points.len(),
            tangency_points,
        })
    }

    pub fn tangent_plane_line_census(&self, p: PointId) -> Result<TangentPlaneCensus> {
        let plane = self.tangent_plane(p)?;
        let mut c = TangentPlaneCensus::default();
        for line in self.pg.lines_in_plane(&plane) {
            let kind = self.classify_line(&line)?.kind;
            let slot = match (line.contains(p), kind) {
                (true, LineKind::Generator) => &mut c.generators_through_point,
                (true, LineKind::Tangent) => &mut c.tangents_through_point,
                (true, LineKind::Secant) => &mut c.secants_through_point,
                (false, LineKind::Generator) => &mut c.generators_elsewhere,
                (false, LineKind::Tangent) => &mut c.tangents_elsewhere,
                (false, LineKind::Secant) => &mut c.secants_elsewhere,
            };
            *slot += 1;
        }
        Ok(c)
    }
}
