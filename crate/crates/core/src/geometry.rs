//! Points, lines and planes of PG(3, q^2).
//!
//! Points are interned: the id of a point is its position in the lexicographic
//! order of normalized coordinate tuples (first nonzero coordinate 1, tuples
//! compared by element index). Planes use the same scheme on their dual
//! coordinates. A line is keyed by its two smallest point ids.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg;

pub type Coords = [Elem; 4];

/// Largest q^2 for which PG(3, q^2) is enumerated.
pub const MAX_GEOMETRY_ORDER: u16 = 81;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlaneId(pub u32);

/// A point with normalized coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    pub coords: Coords,
}

/// A plane `sum c_i x_i = 0` with normalized dual coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPlane {
    pub coeffs: Coords,
}

impl ProjPlane {
    pub fn contains(&self, f: &FieldSpec, p: &ProjPoint) -> bool {
        f.dot(&self.coeffs, &p.coords).is_zero()
    }
}

/// A line of PG(3, q^2) with all of its rational points.
#[derive(Clone)]
pub struct ProjLine {
    key: (PointId, PointId),
    pair: [ProjPoint; 2],
    points: Vec<PointId>,
}

impl ProjLine {
    /// The two smallest point ids on the line.
    pub fn key(&self) -> (PointId, PointId) {
        self.key
    }

    /// The canonical pair of points spanning the line.
    pub fn pair(&self) -> &[ProjPoint; 2] {
        &self.pair
    }

    /// All q^2 + 1 points, ascending id.
    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn meet(&self, other: &ProjLine) -> Option<PointId> {
        self.points.iter().copied().find(|&p| other.contains(p))
    }
}

impl PartialEq for ProjLine {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for ProjLine {}

impl std::hash::Hash for ProjLine {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for ProjLine {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjLine {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjLine({:?}, {:?})", self.pair[0].coords, self.pair[1].coords)
    }
}

impl Serialize for ProjLine {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.pair.serialize(serializer)
    }
}

/// Scales `raw` so its first nonzero entry is 1.
pub fn normalize_slice(f: &FieldSpec, raw: &[Elem]) -> Result<Vec<Elem>> {
    let lead = raw.iter().copied().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let inv = f.inv(lead)?;
    Ok(raw.iter().map(|&x| f.mul(x, inv)).collect())
}

fn normalize4(f: &FieldSpec, raw: &Coords) -> Result<Coords> {
    let lead = raw.iter().copied().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let inv = f.inv(lead)?;
    Ok(raw.map(|x| f.mul(x, inv)))
}

/// Position of a normalized tuple in the lexicographic enumeration of
/// PG(n-1, s).
pub fn rank_normalized(s: u32, c: &[Elem]) -> u32 {
    let n = c.len();
    let lead = c.iter().position(|x| !x.is_zero()).expect("normalized tuple is nonzero");
    debug_assert_eq!(c[lead], Elem::ONE);
    let mut offset = 0u32;
    let mut block = 1u32;
    for _ in lead + 1..n {
        offset += block;
        block *= s;
    }
    // offset = 1 + s + ... + s^{n-2-lead}: tuples with more leading zeros.
    let tail = c[lead + 1..].iter().fold(0u32, |acc, x| acc * s + x.0 as u32);
    offset + tail
}

/// Inverse of [`rank_normalized`].
pub fn unrank_normalized(s: u32, n: usize, mut id: u32) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; n];
    for lead in (0..n).rev() {
        let block = s.pow((n - 1 - lead) as u32);
        if id < block {
            out[lead] = Elem::ONE;
            let mut t = id;
            for slot in out[lead + 1..].iter_mut().rev() {
                *slot = Elem((t % s) as u16);
                t /= s;
            }
            return out;
        }
        id -= block;
    }
    panic!("id out of range");
}

/// All points of PG(dim, q^2) as normalized tuples, lexicographic order.
pub fn enumerate_points(f: &FieldSpec, dim: usize) -> Vec<Vec<Elem>> {
    let s = f.order() as u32;
    let n = dim + 1;
    let total = (s.pow(n as u32) - 1) / (s - 1);
    (0..total).map(|id| unrank_normalized(s, n, id)).collect()
}

/// PG(3, q^2) with its point set interned.
pub struct Pg3 {
    field: Arc<FieldSpec>,
    s: u32,
    points: Vec<Coords>,
}

impl fmt::Debug for Pg3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pg3(q^2 = {})", self.s)
    }
}

impl Pg3 {
    pub fn new(field: Arc<FieldSpec>) -> Result<Pg3> {
        if field.order() > MAX_GEOMETRY_ORDER {
            return Err(Error::GeometryTooLarge { order: field.order() });
        }
        let s = field.order() as u32;
        let points = enumerate_points(&field, 3)
            .into_iter()
            .map(|v| [v[0], v[1], v[2], v[3]])
            .collect();
        Ok(Pg3 { field, s, points })
    }

    pub fn for_q(q: u32) -> Result<Arc<Pg3>> {
        Ok(Arc::new(Pg3::new(Arc::new(FieldSpec::new(q)?))?))
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// q^2.
    pub fn order(&self) -> u32 {
        self.s
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_planes(&self) -> usize {
        self.points.len()
    }

    pub fn coords(&self, id: PointId) -> &Coords {
        &self.points[id.0 as usize]
    }

    pub fn point(&self, id: PointId) -> ProjPoint {
        ProjPoint { coords: self.points[id.0 as usize] }
    }

    pub fn point_ids(&self) -> impl Iterator<Item = PointId> {
        (0..self.points.len() as u32).map(PointId)
    }

    pub fn all_coords(&self) -> &[Coords] {
        &self.points
    }

    pub fn normalize(&self, raw: Coords) -> Result<ProjPoint> {
        Ok(ProjPoint { coords: normalize4(&self.field, &raw)? })
    }

    pub fn id(&self, p: &ProjPoint) -> PointId {
        PointId(rank_normalized(self.s, &p.coords))
    }

    /// Id of the point spanned by a nonzero raw vector.
    pub fn id_of_raw(&self, raw: &Coords) -> Result<PointId> {
        Ok(PointId(rank_normalized(self.s, &normalize4(&self.field, raw)?)))
    }

    pub fn normalize_plane(&self, raw: Coords) -> Result<ProjPlane> {
        Ok(ProjPlane { coeffs: normalize4(&self.field, &raw)? })
    }

    pub fn plane_id(&self, pl: &ProjPlane) -> PlaneId {
        PlaneId(rank_normalized(self.s, &pl.coeffs))
    }

    pub fn plane(&self, id: PlaneId) -> ProjPlane {
        ProjPlane { coeffs: self.points[id.0 as usize] }
    }

    pub fn plane_ids(&self) -> impl Iterator<Item = PlaneId> {
        (0..self.points.len() as u32).map(PlaneId)
    }

    pub fn incident(&self, plane: &ProjPlane, p: PointId) -> bool {
        self.field.dot(&plane.coeffs, self.coords(p)).is_zero()
    }

    fn line_from_vectors(&self, a: &Coords, b: &Coords) -> ProjLine {
        let f = &*self.field;
        let mut points: Vec<PointId> = Vec::with_capacity(self.s as usize + 1);
        points.push(self.id_of_raw(b).expect("nonzero"));
        for t in f.elements() {
            let raw: Coords = std::array::from_fn(|i| f.add(a[i], f.mul(t, b[i])));
            points.push(self.id_of_raw(&raw).expect("independent spanning vectors"));
        }
        points.sort_unstable();
        debug_assert!(points.windows(2).all(|w| w[0] != w[1]));
        let key = (points[0], points[1]);
        ProjLine { key, pair: [self.point(key.0), self.point(key.1)], points }
    }

    pub fn line_through(&self, p: PointId, q: PointId) -> Result<ProjLine> {
        if p == q {
            return Err(Error::CoincidentPoints);
        }
        Ok(self.line_from_vectors(self.coords(p), self.coords(q)))
    }

    pub fn line_through_points(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
        self.line_through(self.id(p), self.id(q))
    }

    pub fn num_lines(&self) -> usize {
        let s = self.s as usize;
        (s * s + 1) * (s * s + s + 1)
    }

    /// Every line of PG(3, q^2), sorted by key. Lines are generated from
    /// reduced row echelon bases so each appears once.
    pub fn all_lines(&self) -> Vec<ProjLine> {
        let elems: Vec<Elem> = self.field.elements().collect();
        let mut lines = Vec::with_capacity(self.num_lines());
        for i in 0..4 {
            for j in i + 1..4 {
                let free1: Vec<usize> = (i + 1..4).filter(|&c| c != j).collect();
                let free2: Vec<usize> = (j + 1..4).collect();
                let nfree = free1.len() + free2.len();
                let combos = (self.s as usize).pow(nfree as u32);
                for code in 0..combos {
                    let mut r1 = [Elem::ZERO; 4];
                    let mut r2 = [Elem::ZERO; 4];
                    r1[i] = Elem::ONE;
                    r2[j] = Elem::ONE;
                    let mut c = code;
                    for &col in free1.iter() {
                        r1[col] = elems[c % self.s as usize];
                        c /= self.s as usize;
                    }
                    for &col in free2.iter() {
                        r2[col] = elems[c % self.s as usize];
                        c /= self.s as usize;
                    }
                    lines.push(self.line_from_vectors(&r1, &r2));
                }
            }
        }
        lines.sort_unstable();
        lines
    }

    pub fn plane_through(&self, a: PointId, b: PointId, c: PointId) -> Result<ProjPlane> {
        let rows: Vec<Vec<Elem>> = [a, b, c].iter().map(|&p| self.coords(p).to_vec()).collect();
        let ns = linalg::nullspace(&self.field, &rows, 4);
        if ns.len() != 1 {
            return Err(Error::CollinearPoints);
        }
        self.normalize_plane([ns[0][0], ns[0][1], ns[0][2], ns[0][3]])
    }

    /// Plane spanned by a line and a point off it.
    pub fn plane_through_line(&self, line: &ProjLine, p: PointId) -> Result<ProjPlane> {
        self.plane_through(line.key.0, line.key.1, p)
    }

    /// Three independent vectors spanning the plane.
    pub fn plane_basis(&self, plane: &ProjPlane) -> [Coords; 3] {
        let ns = linalg::nullspace(&self.field, &[plane.coeffs.to_vec()], 4);
        std::array::from_fn(|i| [ns[i][0], ns[i][1], ns[i][2], ns[i][3]])
    }

    /// Points of a plane, ascending id.
    pub fn plane_points(&self, plane: &ProjPlane) -> Vec<PointId> {
        let f = &*self.field;
        let basis = self.plane_basis(plane);
        let mut out: Vec<PointId> = enumerate_points(f, 2)
            .iter()
            .map(|y| {
                let raw: Coords = std::array::from_fn(|i| {
                    (0..3).fold(Elem::ZERO, |acc, j| f.add(acc, f.mul(y[j], basis[j][i])))
                });
                self.id_of_raw(&raw).expect("basis is independent")
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The q^4 + q^2 + 1 lines of a plane, sorted by key.
    pub fn lines_in_plane(&self, plane: &ProjPlane) -> Vec<ProjLine> {
        let f = &*self.field;
        let basis = self.plane_basis(plane);
        let lift = |y: &[Elem]| -> Coords {
            std::array::from_fn(|i| (0..3).fold(Elem::ZERO, |acc, j| f.add(acc, f.mul(y[j], basis[j][i]))))
        };
        let mut lines: Vec<ProjLine> = enumerate_points(f, 2)
            .iter()
            .map(|u| {
                let ns = linalg::nullspace(f, &[u.clone()], 3);
                self.line_from_vectors(&lift(&ns[0]), &lift(&ns[1]))
            })
            .collect();
        lines.sort_unstable();
        lines
    }

    pub fn planes_through_point(&self, p: PointId) -> Vec<PlaneId> {
        let c = self.coords(p);
        self.plane_ids()
            .filter(|&id| self.field.dot(&self.points[id.0 as usize], c).is_zero())
            .collect()
    }

    pub fn line_in_plane(&self, line: &ProjLine, plane: &ProjPlane) -> bool {
        self.incident(plane, line.key.0) && self.incident(plane, line.key.1)
    }

    /// The q^2 + 1 planes containing `line`, ascending id.
    pub fn book_of_planes(&self, line: &ProjLine) -> Vec<PlaneId> {
        let f = &*self.field;
        let rows = vec![line.pair[0].coords.to_vec(), line.pair[1].coords.to_vec()];
        let ns = linalg::nullspace(f, &rows, 4);
        let mut out: Vec<PlaneId> = enumerate_points(f, 1)
            .iter()
            .map(|ab| {
                let raw: Coords = std::array::from_fn(|i| f.add(f.mul(ab[0], ns[0][i]), f.mul(ab[1], ns[1][i])));
                self.plane_id(&self.normalize_plane(raw).expect("independent"))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Common line of two distinct planes.
    pub fn plane_intersection(&self, a: &ProjPlane, b: &ProjPlane) -> Result<ProjLine> {
        let ns = linalg::nullspace(&self.field, &[a.coeffs.to_vec(), b.coeffs.to_vec()], 4);
        if ns.len() != 2 {
            return Err(Error::CoincidentPoints);
        }
        Ok(self.line_from_vectors(&[ns[0][0], ns[0][1], ns[0][2], ns[0][3]], &[ns[1][0], ns[1][1], ns[1][2], ns[1][3]]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(q: u32) -> Arc<Pg3> {
        Pg3::for_q(q).unwrap()
    }

    #[test]
    fn normalize_scales_by_inverse() {
        let g = pg(2);
        let f = g.field();
        let w = f.primitive();
        let p = g.normalize([Elem::ZERO, w, w, Elem::ZERO]).unwrap();
        assert_eq!(p.coords, [Elem::ZERO, Elem::ONE, Elem::ONE, Elem::ZERO]);
        let e0 = g.normalize([Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO]).unwrap();
        assert_eq!(e0.coords, [Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO]);
        assert_eq!(g.normalize([Elem::ZERO; 4]).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn point_counts() {
        assert_eq!(pg(2).num_points(), 85);
        assert_eq!(pg(3).num_points(), 820);
        let f = FieldSpec::new(2).unwrap();
        assert_eq!(enumerate_points(&f, 1).len(), 5);
        assert_eq!(enumerate_points(&f, 2).len(), 21);
    }

    #[test]
    fn rank_unrank_roundtrip() {
        let g = pg(3);
        for id in g.point_ids() {
            assert_eq!(g.id(&g.point(id)), id);
        }
        let all = g.all_coords();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn coordinate_line() {
        let g = pg(2);
        let e0 = g.id(&g.normalize([Elem(1), Elem(0), Elem(0), Elem(0)]).unwrap());
        let e1 = g.id(&g.normalize([Elem(0), Elem(1), Elem(0), Elem(0)]).unwrap());
        let l = g.line_through(e0, e1).unwrap();
        assert_eq!(l.points().len(), 5);
        for &p in l.points() {
            let c = g.coords(p);
            assert!(c[2].is_zero() && c[3].is_zero());
        }
        assert_eq!(g.line_through(e0, e0).unwrap_err(), Error::CoincidentPoints);
    }

    #[test]
    fn coordinate_plane() {
        let g = pg(2);
        let ids: Vec<PointId> = (0..3)
            .map(|i| {
                let mut c = [Elem::ZERO; 4];
                c[i] = Elem::ONE;
                g.id(&g.normalize(c).unwrap())
            })
            .collect();
        let pl = g.plane_through(ids[0], ids[1], ids[2]).unwrap();
        assert_eq!(pl.coeffs, [Elem(0), Elem(0), Elem(0), Elem(1)]);
        let l = g.line_through(ids[0], ids[1]).unwrap();
        let on_line = l.points()[2];
        assert_eq!(g.plane_through(ids[0], ids[1], on_line).unwrap_err(), Error::CollinearPoints);
    }

    #[test]
    fn coordinate_book() {
        let g = pg(2);
        let f = g.field().clone();
        let e0 = g.id(&g.normalize([Elem(1), Elem(0), Elem(0), Elem(0)]).unwrap());
        let e1 = g.id(&g.normalize([Elem(0), Elem(1), Elem(0), Elem(0)]).unwrap());
        let book = g.book_of_planes(&g.line_through(e0, e1).unwrap());
        assert_eq!(book.len(), 5);
        let mut expected: Vec<PlaneId> = enumerate_points(&f, 1)
            .iter()
            .map(|ab| g.plane_id(&ProjPlane { coeffs: [Elem(0), Elem(0), ab[0], ab[1]] }))
            .collect();
        expected.sort();
        assert_eq!(book, expected);
    }
}
