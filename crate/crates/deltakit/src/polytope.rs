//! Full-dimensional lattice polytopes in dimension 1..=3 with exact rational
//! vertex and facet data.
//!
//! Polytopes carry both representations: vertices and inequalities
//! `<a_i, u> >= b_i` with primitive integer inner normals `a_i`. Volumes and
//! moments are computed from a deterministic star triangulation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{dot, dot_iv, Rat, RatVec};

/// One inequality `<normal, u> >= offset` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<RatVec>,
    facets: Vec<Facet>,
}

/// A simplex of the star triangulation, stored as its vertex list.
#[derive(Debug, Clone)]
pub struct Simplex(pub Vec<RatVec>);

impl Simplex {
    /// n! times the Euclidean volume, always nonnegative.
    pub fn normalized_volume(&self) -> Rat {
        let n = self.0.len() - 1;
        let rows: Vec<RatVec> = (1..=n)
            .map(|i| {
                (0..n)
                    .map(|c| &self.0[i][c] - &self.0[0][c])
                    .collect::<RatVec>()
            })
            .collect();
        let d = linalg::det(&rows);
        if d.is_negative() {
            -d
        } else {
            d
        }
    }

    pub fn barycenter(&self) -> RatVec {
        let n = self.0[0].len();
        let k = Rat::from_integer(BigInt::from(self.0.len() as i64));
        (0..n)
            .map(|c| {
                let mut acc = Rat::zero();
                for v in &self.0 {
                    acc += &v[c];
                }
                acc / &k
            })
            .collect()
    }
}

impl LatticePolytope {
    /// Builds the polytope from the convex hull of `points`. Points that are
    /// not extreme are discarded; the facet description is derived exactly.
    pub fn from_points(dim: usize, points: Vec<RatVec>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGeometry(format!(
                "dimension {dim} outside supported range 1..=3"
            )));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidGeometry(
                "point with wrong coordinate count".into(),
            ));
        }
        if points.is_empty() {
            return Err(Error::InvalidGeometry("no points".into()));
        }
        let hull_dim = affine_rank(&points);
        if hull_dim != dim {
            return Err(Error::InvalidGeometry(format!(
                "not full-dimensional: affine hull has dimension {hull_dim} < {dim}"
            )));
        }
        let facets = enumerate_facets(dim, &points)?;
        let vertices = vertices_from_facets(dim, &facets)?;
        let poly = Self {
            dim,
            vertices,
            facets,
        };
        poly.validate()?;
        Ok(poly)
    }

    /// Builds the polytope from integer points, the common case for catalogs.
    pub fn from_lattice_points(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&x| Rat::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        Self::from_points(dim, pts)
    }

    /// Builds from an inequality description; vertices are enumerated exactly.
    pub fn from_inequalities(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGeometry(format!(
                "dimension {dim} outside supported range 1..=3"
            )));
        }
        let facets: Vec<Facet> = facets
            .into_iter()
            .map(|f| Facet {
                normal: linalg::primitive(&f.normal),
                offset: f.offset,
            })
            .collect();
        let vertices = vertices_from_facets(dim, &facets)?;
        if vertices.is_empty() {
            return Err(Error::InvalidGeometry("empty inequality system".into()));
        }
        // Re-derive facets from the vertex hull so redundant inequalities drop out.
        Self::from_points(dim, vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Checks both representations against each other.
    pub fn validate(&self) -> Result<()> {
        if affine_rank(&self.vertices) != self.dim {
            return Err(Error::InvalidGeometry("not full-dimensional".into()));
        }
        for f in &self.facets {
            if linalg::primitive(&f.normal) != f.normal {
                return Err(Error::InvalidGeometry(format!(
                    "facet normal {:?} is not primitive",
                    f.normal
                )));
            }
            let mut tight = 0usize;
            for v in &self.vertices {
                let val = dot_iv(&f.normal, v);
                match val.cmp(&f.offset) {
                    Ordering::Less => {
                        return Err(Error::InvalidGeometry(format!(
                            "vertex violates facet inequality {:?} >= {}",
                            f.normal, f.offset
                        )))
                    }
                    Ordering::Equal => tight += 1,
                    Ordering::Greater => {}
                }
            }
            if tight < self.dim {
                return Err(Error::InvalidGeometry(format!(
                    "facet {:?} supported by {} < n vertices",
                    f.normal, tight
                )));
            }
        }
        Ok(())
    }

    /// n! times the Euclidean volume.
    pub fn normalized_volume(&self) -> Rat {
        self.triangulate()
            .iter()
            .map(Simplex::normalized_volume)
            .fold(Rat::zero(), |acc, v| acc + v)
    }

    /// Euclidean volume.
    pub fn euclidean_volume(&self) -> Rat {
        let nf = (1..=self.dim as i64).product::<i64>();
        self.normalized_volume() / Rat::from_integer(BigInt::from(nf))
    }

    /// Mean of `<xi, .>` over the polytope, exact.
    ///
    /// Computed simplex by simplex: the average of a linear function over a
    /// simplex is its value at the barycenter.
    pub fn linear_moment(&self, xi: &[Rat]) -> Rat {
        let mut weighted = Rat::zero();
        let mut total = Rat::zero();
        for s in self.triangulate() {
            let vol = s.normalized_volume();
            weighted += &vol * dot(xi, &s.barycenter());
            total += vol;
        }
        weighted / total
    }

    /// (min, max) of `<xi, .>` over the polytope, attained at vertices.
    pub fn support_bounds(&self, xi: &[Rat]) -> (Rat, Rat) {
        let mut values = self.vertices.iter().map(|v| dot(xi, v));
        let first = values.next().expect("polytope has vertices");
        let mut lo = first.clone();
        let mut hi = first;
        for v in values {
            if v < lo {
                lo = v.clone();
            }
            if v > hi {
                hi = v;
            }
        }
        (lo, hi)
    }

    /// Integer points of the dilate `m P`.
    pub fn lattice_points(&self, m: u32) -> Vec<Vec<i64>> {
        assert!(m >= 1, "dilation factor must be positive");
        let m_rat = Rat::from_integer(BigInt::from(m));
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        for v in &self.vertices {
            for c in 0..self.dim {
                let scaled = &v[c] * &m_rat;
                lo[c] = lo[c].min(rat_floor(&scaled));
                hi[c] = hi[c].max(rat_ceil(&scaled));
            }
        }
        let mut out = Vec::new();
        let mut point = lo.clone();
        'scan: loop {
            let inside = self.facets.iter().all(|f| {
                let lhs: i64 = f.normal.iter().zip(&point).map(|(a, x)| a * x).sum();
                Rat::from_integer(BigInt::from(lhs)) >= &f.offset * &m_rat
            });
            if inside {
                out.push(point.clone());
            }
            for c in 0..self.dim {
                point[c] += 1;
                if point[c] <= hi[c] {
                    continue 'scan;
                }
                point[c] = lo[c];
            }
            break;
        }
        out.sort();
        out
    }

    /// Number of lattice points of `m P`.
    pub fn lattice_point_count(&self, m: u32) -> usize {
        self.lattice_points(m).len()
    }

    /// Star triangulation from the lexicographically smallest vertex.
    pub fn triangulate(&self) -> Vec<Simplex> {
        match self.dim {
            1 => {
                let (lo, hi) = self.support_bounds(&[Rat::from_integer(BigInt::from(1))]);
                vec![Simplex(vec![vec![lo], vec![hi]])]
            }
            2 => {
                let ordered = order_polygon(&self.vertices);
                let v0 = ordered[0].clone();
                (1..ordered.len() - 1)
                    .map(|i| Simplex(vec![v0.clone(), ordered[i].clone(), ordered[i + 1].clone()]))
                    .collect()
            }
            3 => {
                let apex = self
                    .vertices
                    .iter()
                    .min_by(|a, b| lex_cmp(a, b))
                    .expect("polytope has vertices")
                    .clone();
                let mut simplices = Vec::new();
                for f in &self.facets {
                    if dot_iv(&f.normal, &apex) == f.offset {
                        continue; // facet contains the apex, cone is flat
                    }
                    let face_pts: Vec<RatVec> = self
                        .vertices
                        .iter()
                        .filter(|v| dot_iv(&f.normal, v) == f.offset)
                        .cloned()
                        .collect();
                    let ordered = order_facet_polygon(&f.normal, &face_pts);
                    let w0 = ordered[0].clone();
                    for i in 1..ordered.len() - 1 {
                        simplices.push(Simplex(vec![
                            apex.clone(),
                            w0.clone(),
                            ordered[i].clone(),
                            ordered[i + 1].clone(),
                        ]));
                    }
                }
                simplices
            }
            _ => unreachable!(),
        }
    }

    /// Dilation by a positive integer.
    pub fn dilate(&self, c: i64) -> Self {
        assert!(c > 0);
        let c = Rat::from_integer(BigInt::from(c));
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * &c).collect())
            .collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: &f.offset * &c,
            })
            .collect();
        Self {
            dim: self.dim,
            vertices,
            facets,
        }
    }

    /// Translation by a rational vector.
    pub fn translate(&self, t: &[Rat]) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(x, s)| x + s).collect())
            .collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: &f.offset + dot_iv(&f.normal, t),
            })
            .collect();
        Self {
            dim: self.dim,
            vertices,
            facets,
        }
    }

    /// Lattice-normalized volume of each facet: (n-1)! times the Euclidean
    /// volume measured against the induced lattice of the facet hyperplane.
    pub fn facet_lattice_volumes(&self) -> Vec<Rat> {
        self.facets
            .iter()
            .map(|f| {
                let pts: Vec<RatVec> = self
                    .vertices
                    .iter()
                    .filter(|v| dot_iv(&f.normal, v) == f.offset)
                    .cloned()
                    .collect();
                facet_lattice_volume(self.dim, &f.normal, &pts)
            })
            .collect()
    }
}

fn rat_floor(r: &Rat) -> i64 {
    let f = r.floor();
    i64::try_from(f.numer()).expect("lattice bound exceeds i64")
}

fn rat_ceil(r: &Rat) -> i64 {
    let c = r.ceil();
    i64::try_from(c.numer()).expect("lattice bound exceeds i64")
}

fn lex_cmp(a: &RatVec, b: &RatVec) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn affine_rank(points: &[RatVec]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let rows: Vec<RatVec> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    linalg::rank(&rows)
}

/// Facet enumeration by scanning (dim)-subsets of points for supporting
/// hyperplanes. Quadratic-ish, fine for the small vertex counts used here.
fn enumerate_facets(dim: usize, points: &[RatVec]) -> Result<Vec<Facet>> {
    let mut facets: Vec<Facet> = Vec::new();
    let mut push_candidate = |normal: Vec<i64>, offset: Rat| {
        if normal.iter().all(|&x| x == 0) {
            return;
        }
        let f = Facet { normal, offset };
        if !facets.contains(&f) {
            facets.push(f);
        }
    };

    match dim {
        1 => {
            let vals: Vec<Rat> = points.iter().map(|p| p[0].clone()).collect();
            let lo = vals.iter().min().unwrap().clone();
            let hi = vals.iter().max().unwrap().clone();
            push_candidate(vec![1], lo);
            push_candidate(vec![-1], -hi);
        }
        2 => {
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let d: RatVec = (0..2).map(|c| &points[j][c] - &points[i][c]).collect();
                    if d.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let raw = vec![-d[1].clone(), d[0].clone()];
                    let n = linalg::primitive_from_rational(&raw);
                    for n in [n.clone(), n.iter().map(|x| -x).collect::<Vec<_>>()] {
                        let b = dot_iv(&n, &points[i]);
                        if points.iter().all(|p| dot_iv(&n, p) >= b) {
                            push_candidate(n, b);
                        }
                    }
                }
            }
        }
        3 => {
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    for k in j + 1..points.len() {
                        let u: RatVec = (0..3).map(|c| &points[j][c] - &points[i][c]).collect();
                        let w: RatVec = (0..3).map(|c| &points[k][c] - &points[i][c]).collect();
                        let raw = vec![
                            &u[1] * &w[2] - &u[2] * &w[1],
                            &u[2] * &w[0] - &u[0] * &w[2],
                            &u[0] * &w[1] - &u[1] * &w[0],
                        ];
                        if raw.iter().all(Zero::is_zero) {
                            continue;
                        }
                        let n = linalg::primitive_from_rational(&raw);
                        for n in [n.clone(), n.iter().map(|x| -x).collect::<Vec<_>>()] {
                            let b = dot_iv(&n, &points[i]);
                            if points.iter().all(|p| dot_iv(&n, p) >= b) {
                                push_candidate(n, b);
                            }
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    if facets.is_empty() {
        return Err(Error::InvalidGeometry("no supporting facets found".into()));
    }
    facets.sort_by(|a, b| {
        a.normal
            .cmp(&b.normal)
            .then_with(|| a.offset.cmp(&b.offset))
    });
    Ok(facets)
}

/// Vertex enumeration from inequalities: intersect each dim-subset of facet
/// hyperplanes and keep feasible, tight solutions.
fn vertices_from_facets(dim: usize, facets: &[Facet]) -> Result<Vec<RatVec>> {
    let k = facets.len();
    if k < dim + 1 {
        return Err(Error::InvalidGeometry(
            "fewer facets than required to bound a polytope".into(),
        ));
    }
    let mut verts: Vec<RatVec> = Vec::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    match dim {
        1 => subsets.extend((0..k).map(|i| vec![i])),
        2 => {
            for i in 0..k {
                for j in i + 1..k {
                    subsets.push(vec![i, j]);
                }
            }
        }
        3 => {
            for i in 0..k {
                for j in i + 1..k {
                    for l in j + 1..k {
                        subsets.push(vec![i, j, l]);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    for subset in subsets {
        let a: Vec<RatVec> = subset
            .iter()
            .map(|&i| {
                facets[i]
                    .normal
                    .iter()
                    .map(|&x| Rat::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let b: Vec<Rat> = subset.iter().map(|&i| facets[i].offset.clone()).collect();
        let Some(x) = linalg::solve(&a, &b) else {
            continue;
        };
        let feasible = facets.iter().all(|f| dot_iv(&f.normal, &x) >= f.offset);
        if feasible && !verts.contains(&x) {
            verts.push(x);
        }
    }
    verts.sort_by(lex_cmp);
    Ok(verts)
}

/// Orders vertices of a convex polygon counterclockwise around the centroid,
/// with exact sign comparisons.
fn order_polygon(points: &[RatVec]) -> Vec<RatVec> {
    let n = Rat::from_integer(BigInt::from(points.len() as i64));
    let cx: Rat = points
        .iter()
        .map(|p| p[0].clone())
        .fold(Rat::zero(), |a, b| a + b)
        / &n;
    let cy: Rat = points
        .iter()
        .map(|p| p[1].clone())
        .fold(Rat::zero(), |a, b| a + b)
        / &n;
    let mut pts = points.to_vec();
    let half = |dx: &Rat, dy: &Rat| -> u8 {
        // 0 for the upper half plane (including positive x-axis), 1 below.
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    pts.sort_by(|p, q| {
        let (px, py) = (&p[0] - &cx, &p[1] - &cy);
        let (qx, qy) = (&q[0] - &cx, &q[1] - &cy);
        let (hp, hq) = (half(&px, &py), half(&qx, &qy));
        if hp != hq {
            return hp.cmp(&hq);
        }
        // Same half plane: compare by cross product.
        let cross = &px * &qy - &py * &qx;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    pts
}

/// Orders the vertices of one facet of a 3-polytope cyclically inside its
/// supporting plane.
fn order_facet_polygon(normal: &[i64], points: &[RatVec]) -> Vec<RatVec> {
    let basis = linalg::kernel_lattice_basis(normal);
    let coords: Vec<RatVec> = points
        .iter()
        .map(|p| facet_plane_coords(&basis, p, &points[0]))
        .collect();
    let order = order_polygon(&coords);
    // Map the 2d ordering back to the original vertices.
    order
        .iter()
        .map(|c| {
            let idx = coords.iter().position(|x| x == c).expect("coord present");
            points[idx].clone()
        })
        .collect()
}

/// Coordinates of `p - origin` in the given (integer) plane basis.
fn facet_plane_coords(basis: &[Vec<i64>], p: &RatVec, origin: &RatVec) -> RatVec {
    let d: RatVec = p.iter().zip(origin).map(|(a, b)| a - b).collect();
    // Solve [basis^T] c = d restricted to the plane: use the 2x2 Gram system.
    let g: Vec<RatVec> = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for (bi, bj) in basis[i].iter().zip(&basis[j]) {
                        acc += Rat::from_integer(BigInt::from(bi * bj));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Rat> = (0..2).map(|i| dot_iv(&basis[i], &d)).collect();
    linalg::solve(&g, &rhs).expect("plane basis is independent")
}

/// Lattice-normalized facet volume for the slope computation.
fn facet_lattice_volume(dim: usize, normal: &[i64], pts: &[RatVec]) -> Rat {
    match dim {
        1 => Rat::from_integer(BigInt::from(1)),
        2 => {
            // Facet is a segment; lattice length of the direction.
            let basis = linalg::kernel_lattice_basis(normal);
            let coords: Vec<Rat> = pts
                .iter()
                .map(|p| facet_line_coord(&basis[0], p, &pts[0]))
                .collect();
            let lo = coords.iter().min().unwrap();
            let hi = coords.iter().max().unwrap();
            hi - lo
        }
        3 => {
            let basis = linalg::kernel_lattice_basis(normal);
            let coords: Vec<RatVec> = pts
                .iter()
                .map(|p| facet_plane_coords(&basis, p, &pts[0]))
                .collect();
            // 2! * area in lattice coordinates via the shoelace formula.
            let ordered = order_polygon(&coords);
            let mut twice_area = Rat::zero();
            for i in 0..ordered.len() {
                let j = (i + 1) % ordered.len();
                twice_area += &ordered[i][0] * &ordered[j][1] - &ordered[i][1] * &ordered[j][0];
            }
            if twice_area.is_negative() {
                -twice_area
            } else {
                twice_area
            }
        }
        _ => unreachable!(),
    }
}

fn facet_line_coord(dir: &[i64], p: &RatVec, origin: &RatVec) -> Rat {
    let d: RatVec = p.iter().zip(origin).map(|(a, b)| a - b).collect();
    let num = dot_iv(dir, &d);
    let den: i64 = dir.iter().map(|&x| x * x).sum();
    num / Rat::from_integer(BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint, rvec};

    pub fn unit_simplex() -> LatticePolytope {
        LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap()
    }

    pub fn unit_square() -> LatticePolytope {
        LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
            .unwrap()
    }

    fn interval(a: i64, b: i64) -> LatticePolytope {
        LatticePolytope::from_lattice_points(1, &[vec![a], vec![b]]).unwrap()
    }

    #[test]
    fn normalized_volume_matches_known_bodies() {
        assert_eq!(unit_simplex().normalized_volume(), rint(1));
        assert_eq!(unit_square().normalized_volume(), rint(2));
        assert_eq!(interval(0, 3).normalized_volume(), rint(3));
        let cube = LatticePolytope::from_lattice_points(
            3,
            &[
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![1, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(cube.normalized_volume(), rint(6));
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let err = LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![1, 1], vec![2, 2]])
            .unwrap_err();
        assert!(err.to_string().contains("not full-dimensional"), "{err}");
    }

    #[test]
    fn lattice_points_of_dilates() {
        let pts = interval(0, 1).lattice_points(3);
        assert_eq!(pts, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(unit_simplex().lattice_point_count(1), 3);
        assert_eq!(unit_square().lattice_point_count(2), 9);
    }

    #[test]
    fn linear_moment_examples() {
        assert_eq!(unit_square().linear_moment(&rvec(&[1, 0])), rat(1, 2));
        assert_eq!(unit_simplex().linear_moment(&rvec(&[1, 0])), rat(1, 3));
        assert_eq!(interval(0, 2).linear_moment(&rvec(&[1])), rint(1));
    }

    #[test]
    fn support_bounds_examples() {
        assert_eq!(
            unit_square().support_bounds(&rvec(&[1, 1])),
            (rint(0), rint(2))
        );
        assert_eq!(
            unit_simplex().support_bounds(&rvec(&[-1, -1])),
            (rint(-1), rint(0))
        );
        assert_eq!(
            interval(0, 3).support_bounds(&rvec(&[2])),
            (rint(0), rint(6))
        );
    }

    #[test]
    fn moment_lies_within_support_bounds() {
        let p = LatticePolytope::from_lattice_points(
            2,
            &[vec![0, 0], vec![3, 0], vec![0, 2], vec![2, 2]],
        )
        .unwrap();
        for xi in [[1, 0], [0, 1], [2, -3], [-1, -1], [5, 7]] {
            let xi = rvec(&xi);
            let (lo, hi) = p.support_bounds(&xi);
            let mean = p.linear_moment(&xi);
            assert!(lo <= mean && mean <= hi);
        }
    }

    #[test]
    fn dilation_scales_volume_and_translation_shifts_moment() {
        let p = unit_simplex();
        for c in [2i64, 3] {
            assert_eq!(
                p.dilate(c).normalized_volume(),
                p.normalized_volume() * rint(c * c)
            );
        }
        let t = rvec(&[4, -1]);
        let q = p.translate(&t);
        assert_eq!(q.normalized_volume(), p.normalized_volume());
        let xi = rvec(&[2, 5]);
        assert_eq!(q.linear_moment(&xi), p.linear_moment(&xi) + dot(&xi, &t));
    }

    #[test]
    fn facet_lattice_volumes_of_simplex_dilates() {
        // Unit simplex edges all have lattice length 1.
        let s = unit_simplex();
        let vols = s.facet_lattice_volumes();
        assert_eq!(vols.len(), 3);
        assert!(vols.iter().all(|v| *v == rint(1)));
        // The degree-3 dilate scales every lattice length to 3.
        let vols3 = s.dilate(3).facet_lattice_volumes();
        assert!(vols3.iter().all(|v| *v == rint(3)));
    }

    #[test]
    fn from_inequalities_round_trips_vertices() {
        let p = unit_square();
        let q = LatticePolytope::from_inequalities(2, p.facets().to_vec()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn interior_points_are_not_vertices() {
        let p = LatticePolytope::from_lattice_points(
            2,
            &[vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1], vec![2, 2]],
        )
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(!p.vertices().contains(&rvec(&[1, 1])));
    }
}
