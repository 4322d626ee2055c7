//! Complete rational fans: normal fans of polytopes, wall enumeration,
//! smoothness flags, and common-refinement ray sets.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::LatticePolytope;
use crate::rat::{dot_iv, Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanData {
    dim: usize,
    /// Primitive integer ray generators, sorted lexicographically.
    rays: Vec<Vec<i64>>,
    /// Maximal cones as sorted ray-index lists.
    max_cones: Vec<Vec<usize>>,
    /// Per-cone smoothness: exactly n rays forming a lattice basis.
    smooth: Vec<bool>,
}

/// A codimension-one wall between two maximal cones.
#[derive(Debug, Clone)]
pub struct Wall {
    /// Ray indices spanning the wall (n-1 of them).
    pub span: Vec<usize>,
    /// The two cones on either side and their off-wall ray (smooth fans).
    pub sides: [(usize, usize); 2],
}

impl FanData {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if rays.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidFan("ray with wrong coordinate count".into()));
        }
        for r in &rays {
            if r.iter().all(|&x| x == 0) {
                return Err(Error::InvalidFan("zero ray".into()));
            }
            if linalg::primitive(r) != *r {
                return Err(Error::InvalidFan(format!("ray {r:?} is not primitive")));
            }
        }
        let mut fan = Self {
            dim,
            rays,
            max_cones,
            smooth: Vec::new(),
        };
        fan.normalize();
        fan.smooth = fan
            .max_cones
            .iter()
            .map(|c| fan.cone_is_smooth(c))
            .collect();
        fan.validate()?;
        Ok(fan)
    }

    fn normalize(&mut self) {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].cmp(&self.rays[b]));
        let mut inverse = vec![0usize; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let rays: Vec<Vec<i64>> = order.iter().map(|&i| self.rays[i].clone()).collect();
        let mut cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut c: Vec<usize> = c.iter().map(|&i| inverse[i]).collect();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        cones.sort();
        cones.dedup();
        self.rays = rays;
        self.max_cones = cones;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone_smooth_flags(&self) -> &[bool] {
        &self.smooth
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth.iter().all(|&s| s)
    }

    fn cone_is_smooth(&self, cone: &[usize]) -> bool {
        if cone.len() != self.dim {
            return false;
        }
        let m: Vec<RatVec> = cone
            .iter()
            .map(|&i| {
                self.rays[i]
                    .iter()
                    .map(|&x| Rat::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let d = linalg::det(&m);
        d == Rat::from_integer(BigInt::from(1)) || d == Rat::from_integer(BigInt::from(-1))
    }

    fn validate(&self) -> Result<()> {
        if self.rays.is_empty() || self.max_cones.is_empty() {
            return Err(Error::InvalidFan("empty fan".into()));
        }
        for c in &self.max_cones {
            if c.iter().any(|&i| i >= self.rays.len()) {
                return Err(Error::InvalidFan("cone references unknown ray".into()));
            }
            if c.len() < self.dim {
                return Err(Error::InvalidFan(
                    "maximal cone with fewer rays than the dimension".into(),
                ));
            }
        }
        // Completeness proxy for a pure cone complex: every wall candidate is
        // shared by exactly two maximal cones (n = 1 pairs the two rays).
        if self.dim == 1 {
            if self.rays.len() != 2 || self.rays[0][0] * self.rays[1][0] >= 0 {
                return Err(Error::InvalidFan(
                    "complete 1-dimensional fan needs rays in both directions".into(),
                ));
            }
            return Ok(());
        }
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for drop in cone {
                let span: Vec<usize> = cone.iter().copied().filter(|i| i != drop).collect();
                if span.len() != self.dim - 1 {
                    continue;
                }
                let sharers = self
                    .max_cones
                    .iter()
                    .enumerate()
                    .filter(|(cj, other)| *cj != ci && span.iter().all(|i| other.contains(i)))
                    .count();
                if self.max_cones[ci].len() == self.dim && sharers != 1 {
                    return Err(Error::InvalidFan(format!(
                        "wall {span:?} of cone {ci} shared by {sharers} other cones; fan not complete"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Index of the ray equal to `v` (after primitive reduction), if present.
    pub fn ray_index(&self, v: &[i64]) -> Option<usize> {
        let p = linalg::primitive(v);
        self.rays.iter().position(|r| *r == p)
    }

    /// Walls of a smooth complete fan, each with its two incident cones and
    /// their off-wall rays. For n = 1 the single wall is the origin.
    pub fn walls(&self) -> Result<Vec<Wall>> {
        if !self.is_smooth() {
            return Err(Error::NonSmoothCone(
                "wall/curve enumeration requires a smooth fan".into(),
            ));
        }
        if self.dim == 1 {
            return Ok(vec![Wall {
                span: vec![],
                sides: [(0, 0), (1, 1)],
            }]);
        }
        let mut walls: Vec<Wall> = Vec::new();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for drop in cone {
                let span: Vec<usize> = cone.iter().copied().filter(|i| i != drop).collect();
                if seen.contains(&span) {
                    continue;
                }
                let other = self
                    .max_cones
                    .iter()
                    .enumerate()
                    .find(|(cj, oc)| *cj != ci && span.iter().all(|i| oc.contains(i)));
                let Some((cj, other_cone)) = other else {
                    return Err(Error::InvalidFan(format!(
                        "wall {span:?} has no opposite cone"
                    )));
                };
                let other_drop = *other_cone
                    .iter()
                    .find(|i| !span.contains(i))
                    .expect("opposite cone has an off-wall ray");
                walls.push(Wall {
                    span: span.clone(),
                    sides: [(ci, *drop), (cj, other_drop)],
                });
                seen.push(span);
            }
        }
        Ok(walls)
    }

    /// The maximal cone containing `xi`, by exact membership.
    pub fn containing_cone(&self, xi: &[i64]) -> Option<usize> {
        (0..self.max_cones.len()).find(|&ci| self.cone_contains(ci, xi))
    }

    pub fn cone_contains(&self, cone_idx: usize, xi: &[i64]) -> bool {
        let cone = &self.max_cones[cone_idx];
        if cone.len() == self.dim {
            let a: Vec<RatVec> = (0..self.dim)
                .map(|r| {
                    cone.iter()
                        .map(|&i| Rat::from_integer(BigInt::from(self.rays[i][r])))
                        .collect()
                })
                .collect();
            let b: Vec<Rat> = xi
                .iter()
                .map(|&x| Rat::from_integer(BigInt::from(x)))
                .collect();
            match linalg::solve(&a, &b) {
                Some(coeffs) => coeffs.iter().all(|c| !c.is_negative()),
                None => false,
            }
        } else {
            // Non-simplicial cones only arise as normal cones; membership is
            // settled against the dual description by the caller.
            false
        }
    }

    /// Coefficients of `xi` on the rays of a simplicial cone, exact.
    pub fn cone_coordinates(&self, cone_idx: usize, xi: &[i64]) -> Option<RatVec> {
        let cone = &self.max_cones[cone_idx];
        if cone.len() != self.dim {
            return None;
        }
        let a: Vec<RatVec> = (0..self.dim)
            .map(|r| {
                cone.iter()
                    .map(|&i| Rat::from_integer(BigInt::from(self.rays[i][r])))
                    .collect()
            })
            .collect();
        let b: Vec<Rat> = xi
            .iter()
            .map(|&x| Rat::from_integer(BigInt::from(x)))
            .collect();
        linalg::solve(&a, &b)
    }

    /// Fan with all rays negated (normal fan of the reflected polytope).
    pub fn negated(&self) -> Self {
        let rays: Vec<Vec<i64>> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        let mut fan = Self {
            dim: self.dim,
            rays,
            max_cones: self.max_cones.clone(),
            smooth: self.smooth.clone(),
        };
        fan.normalize();
        fan.smooth = fan
            .max_cones
            .iter()
            .map(|c| fan.cone_is_smooth(c))
            .collect();
        fan
    }

    /// 2-dimensional faces of maximal cones as ray-index pairs (n = 3 only).
    fn two_faces(&self) -> Vec<(usize, usize)> {
        let mut faces = Vec::new();
        for cone in &self.max_cones {
            for i in 0..cone.len() {
                for j in i + 1..cone.len() {
                    let pair = (cone[i].min(cone[j]), cone[i].max(cone[j]));
                    if !faces.contains(&pair) {
                        faces.push(pair);
                    }
                }
            }
        }
        faces
    }
}

/// The normal fan of a full-dimensional polytope: one maximal cone per
/// vertex, spanned by the inner normals of the facets through that vertex.
pub fn normal_fan(p: &LatticePolytope) -> FanData {
    let rays: Vec<Vec<i64>> = p.facets().iter().map(|f| f.normal.clone()).collect();
    let cones: Vec<Vec<usize>> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut idx: Vec<usize> = p
                .facets()
                .iter()
                .enumerate()
                .filter(|(_, f)| dot_iv(&f.normal, v) == f.offset)
                .map(|(i, _)| i)
                .collect();
            idx.sort_unstable();
            idx
        })
        .collect();
    FanData::new(p.dim(), rays, cones).expect("normal fan of a valid polytope is valid")
}

/// Rays of the common refinement of two complete fans: the union of both ray
/// sets, plus (in dimension 3) directions where 2-faces intersect.
pub fn refinement_rays(a: &FanData, b: &FanData) -> Vec<Vec<i64>> {
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut push = |r: Vec<i64>| {
        if r.iter().any(|&x| x != 0) && !rays.contains(&r) {
            rays.push(r);
        }
    };
    for r in a.rays() {
        push(r.clone());
    }
    for r in b.rays() {
        push(r.clone());
    }
    if a.dim() == 3 {
        for &(p, q) in &a.two_faces() {
            for &(r, s) in &b.two_faces() {
                let n1 = linalg::cross3(&a.rays()[p], &a.rays()[q]);
                let n2 = linalg::cross3(&b.rays()[r], &b.rays()[s]);
                let dir = linalg::cross3(&n1, &n2);
                if dir.iter().all(|&x| x == 0) {
                    continue;
                }
                for cand in [
                    linalg::primitive(&dir),
                    linalg::primitive(&dir.iter().map(|x| -x).collect::<Vec<_>>()),
                ] {
                    if in_two_face(a, p, q, &cand) && in_two_face(b, r, s, &cand) {
                        push(cand);
                    }
                }
            }
        }
    }
    rays.sort();
    rays
}

/// Membership of `xi` in the 2-dimensional cone spanned by rays `p`, `q`.
fn in_two_face(fan: &FanData, p: usize, q: usize, xi: &[i64]) -> bool {
    let u = &fan.rays()[p];
    let v = &fan.rays()[q];
    // Solve xi = alpha u + beta v in the plane they span.
    let g = |a: &[i64], b: &[i64]| -> Rat {
        Rat::from_integer(BigInt::from(
            a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>(),
        ))
    };
    let a = vec![vec![g(u, u), g(u, v)], vec![g(v, u), g(v, v)]];
    let rhs = vec![g(u, xi), g(v, xi)];
    let Some(c) = linalg::solve(&a, &rhs) else {
        return false;
    };
    // Residual must vanish: xi in span(u, v).
    for k in 0..3 {
        let recon = &c[0] * Rat::from_integer(BigInt::from(u[k]))
            + &c[1] * Rat::from_integer(BigInt::from(v[k]));
        if recon != Rat::from_integer(BigInt::from(xi[k])) {
            return false;
        }
    }
    !c[0].is_negative() && !c[1].is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::LatticePolytope;

    fn simplex2() -> LatticePolytope {
        LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn normal_fan_of_interval_and_simplex() {
        let seg = LatticePolytope::from_lattice_points(1, &[vec![0], vec![1]]).unwrap();
        let f = normal_fan(&seg);
        assert_eq!(f.rays(), &[vec![-1], vec![1]]);

        let f2 = normal_fan(&simplex2());
        assert_eq!(f2.rays(), &[vec![-1, -1], vec![0, 1], vec![1, 0]]);
        assert_eq!(f2.max_cones().len(), 3);
        assert!(f2.is_smooth());
    }

    #[test]
    fn normal_fan_of_square_is_the_coordinate_cross() {
        let sq = LatticePolytope::from_lattice_points(
            2,
            &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        let f = normal_fan(&sq);
        assert_eq!(
            f.rays(),
            &[vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]
        );
        assert!(f.is_smooth());
        assert_eq!(f.walls().unwrap().len(), 4);
    }

    #[test]
    fn rebuilding_from_normal_fan_offsets_recovers_polytope() {
        use crate::polytope::Facet;
        let p = LatticePolytope::from_lattice_points(
            2,
            &[vec![0, 0], vec![2, 0], vec![0, 1], vec![2, 1]],
        )
        .unwrap();
        let fan = normal_fan(&p);
        let facets: Vec<Facet> = fan
            .rays()
            .iter()
            .map(|r| {
                let xi: Vec<Rat> = r
                    .iter()
                    .map(|&x| Rat::from_integer(BigInt::from(x)))
                    .collect();
                let (lo, _) = p.support_bounds(&xi);
                Facet {
                    normal: r.clone(),
                    offset: lo,
                }
            })
            .collect();
        let q = LatticePolytope::from_inequalities(2, facets).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn cone_membership_and_coordinates() {
        let f = normal_fan(&simplex2());
        let idx = f.containing_cone(&[1, 1]).unwrap();
        let coords = f.cone_coordinates(idx, &[1, 1]).unwrap();
        assert!(coords.iter().all(|c| !c.is_negative()));
        assert!(f.containing_cone(&[-3, 1]).is_some());
    }

    #[test]
    fn refinement_rays_union_both_fans() {
        let f = normal_fan(&simplex2());
        let g = f.negated();
        let rays = refinement_rays(&f, &g);
        assert_eq!(rays.len(), 6);
        for r in f.rays() {
            assert!(rays.contains(r));
        }
        for r in g.rays() {
            assert!(rays.contains(r));
        }
    }

    #[test]
    fn refinement_rays_in_three_dimensions_include_face_intersections() {
        // Octahedron normal fan (cube fan) against its negation: rays agree,
        // but crossing the fan of the 3-simplex produces new directions.
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
        let simplex = LatticePolytope::from_lattice_points(
            3,
            &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let rays = refinement_rays(&normal_fan(&cube), &normal_fan(&simplex));
        // Union holds.
        for r in normal_fan(&cube).rays() {
            assert!(rays.contains(r));
        }
        for r in normal_fan(&simplex).rays() {
            assert!(rays.contains(r));
        }
        // Crossing walls of the two fans must contribute directions beyond
        // the plain ray union, e.g. span{e1, -1-1-1} meets span{-e2, -e3}
        // along (0,-1,-1).
        assert!(rays.contains(&vec![0, -1, -1]));
        assert!(rays.len() > 7);
    }
}
