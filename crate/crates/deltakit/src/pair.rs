//! Polarized toric pairs (X, L, theta) and toric valuations.
//!
//! The polarization is a full-dimensional lattice polytope, the variety is
//! its normal fan, and the twist is a boundary divisor with rational
//! coefficients below one on the fan rays.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{normal_fan, FanData};
use crate::linalg;
use crate::polytope::LatticePolytope;
use crate::rat::{dot_iv, Rat, RatVec};

#[derive(Debug, Clone, PartialEq)]
pub struct PolarizedToricPair {
    polytope: LatticePolytope,
    fan: FanData,
    /// Boundary coefficient per fan ray, each in [0, 1).
    boundary: Vec<Rat>,
}

/// A toric valuation: a primitive integer direction together with its cached
/// invariants on the pair.
#[derive(Debug, Clone)]
pub struct ToricValuation {
    pub xi: Vec<i64>,
    pub cone: usize,
    pub log_discrepancy: Rat,
    pub mean: Rat,
    pub min: Rat,
    pub max: Rat,
}

impl PolarizedToricPair {
    /// Pair with the normal fan and zero boundary.
    pub fn untwisted(polytope: LatticePolytope) -> Self {
        let fan = normal_fan(&polytope);
        let boundary = vec![Rat::zero(); fan.rays().len()];
        Self {
            polytope,
            fan,
            boundary,
        }
    }

    /// Pair with explicit boundary coefficients given as (ray, coefficient).
    pub fn new(
        polytope: LatticePolytope,
        fan: Option<FanData>,
        boundary: &[(Vec<i64>, Rat)],
    ) -> Result<Self> {
        let nf = normal_fan(&polytope);
        let fan = match fan {
            None => nf,
            Some(f) => {
                if f != nf {
                    return Err(Error::InvalidPair(
                        "fan incompatible with polytope: maximal cones must correspond to vertices"
                            .into(),
                    ));
                }
                f
            }
        };
        let mut coeffs = vec![Rat::zero(); fan.rays().len()];
        for (ray, c) in boundary {
            let idx = fan.ray_index(ray).ok_or_else(|| {
                Error::InvalidPair(format!("boundary ray {ray:?} is not a ray of the fan"))
            })?;
            if c.is_negative() || *c >= Rat::one() {
                return Err(Error::InvalidPair(format!(
                    "klt violated: coefficient {c} on ray {ray:?} outside [0, 1)"
                )));
            }
            coeffs[idx] = c.clone();
        }
        Ok(Self {
            polytope,
            fan,
            boundary: coeffs,
        })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn fan(&self) -> &FanData {
        &self.fan
    }

    pub fn boundary(&self) -> &[Rat] {
        &self.boundary
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn is_untwisted(&self) -> bool {
        self.boundary.iter().all(Zero::is_zero)
    }

    /// Boundary coefficient attached to a ray direction, zero if absent.
    pub fn boundary_coefficient(&self, ray: &[i64]) -> Rat {
        match self.fan.ray_index(ray) {
            Some(i) => self.boundary[i].clone(),
            None => Rat::zero(),
        }
    }

    /// Log discrepancy A_theta of the toric valuation in direction `xi`:
    /// write xi over the rays of its containing cone and sum the
    /// coefficients weighted by (1 - c_ray).
    pub fn log_discrepancy(&self, xi: &[i64]) -> Result<Rat> {
        let (cone, coords) = self.locate(xi)?;
        let cone_rays = &self.fan.max_cones()[cone];
        let mut a = Rat::zero();
        for (coeff, &ray_idx) in coords.iter().zip(cone_rays) {
            a += coeff * (Rat::one() - &self.boundary[ray_idx]);
        }
        if !a.is_positive() {
            return Err(Error::InvalidPair(format!(
                "log discrepancy of {xi:?} is not positive"
            )));
        }
        Ok(a)
    }

    /// Expected vanishing order S of the polarization along `xi`:
    /// mean minus min of `<xi, .>` over the polytope.
    pub fn expected_vanishing(&self, xi: &[i64]) -> Rat {
        let xi_rat: RatVec = xi
            .iter()
            .map(|&x| Rat::from_integer(BigInt::from(x)))
            .collect();
        let mean = self.polytope.linear_moment(&xi_rat);
        let (min, _) = self.polytope.support_bounds(&xi_rat);
        mean - min
    }

    /// Width T along `xi`: max minus min over the polytope.
    pub fn width(&self, xi: &[i64]) -> Rat {
        let xi_rat: RatVec = xi
            .iter()
            .map(|&x| Rat::from_integer(BigInt::from(x)))
            .collect();
        let (min, max) = self.polytope.support_bounds(&xi_rat);
        max - min
    }

    /// Finite-level expected vanishing order S_m from the lattice points of
    /// the m-th dilate.
    pub fn expected_vanishing_level(&self, xi: &[i64], m: u32) -> Rat {
        let points = self.polytope.lattice_points(m);
        self.expected_vanishing_level_with_points(xi, m, &points)
    }

    /// Same as `expected_vanishing_level` with precomputed lattice points.
    pub fn expected_vanishing_level_with_points(
        &self,
        xi: &[i64],
        m: u32,
        points: &[Vec<i64>],
    ) -> Rat {
        let d_m = points.len() as i64;
        assert!(d_m > 0);
        let mut sum: i128 = 0;
        for p in points {
            let v: i128 = xi.iter().zip(p).map(|(&a, &b)| a as i128 * b as i128).sum();
            sum += v;
        }
        let xi_rat: RatVec = xi
            .iter()
            .map(|&x| Rat::from_integer(BigInt::from(x)))
            .collect();
        let (min, _) = self.polytope.support_bounds(&xi_rat);
        // Each of the d_m points contributes m * min to the recentering, so
        // the sum telescopes to total/(m d_m) - min.
        let denom = Rat::from_integer(BigInt::from(m) * BigInt::from(d_m));
        Rat::from_integer(BigInt::from(sum)) / denom - min
    }

    /// Assembles the valuation record for a direction.
    pub fn valuation(&self, xi: &[i64]) -> Result<ToricValuation> {
        let xi = linalg::primitive(xi);
        let (cone, _) = self.locate(&xi)?;
        let xi_rat: RatVec = xi
            .iter()
            .map(|&x| Rat::from_integer(BigInt::from(x)))
            .collect();
        let (min, max) = self.polytope.support_bounds(&xi_rat);
        Ok(ToricValuation {
            log_discrepancy: self.log_discrepancy(&xi)?,
            mean: self.polytope.linear_moment(&xi_rat),
            min,
            max,
            cone,
            xi,
        })
    }

    /// Locates the containing maximal cone via the vertex minimizing
    /// `<xi, .>`, then expresses xi over the cone rays. Errors on non-smooth
    /// cones.
    fn locate(&self, xi: &[i64]) -> Result<(usize, RatVec)> {
        if xi.iter().all(|&x| x == 0) {
            return Err(Error::InvalidPair("zero direction".into()));
        }
        // Normal cone of a vertex v contains xi iff v minimizes <xi, .>.
        let v = self
            .polytope
            .vertices()
            .iter()
            .min_by(|a, b| dot_iv(xi, a).cmp(&dot_iv(xi, b)))
            .expect("polytope has vertices");
        let mut cone_rays: Vec<usize> = self
            .polytope
            .facets()
            .iter()
            .filter(|f| dot_iv(&f.normal, v) == f.offset)
            .map(|f| {
                self.fan
                    .ray_index(&f.normal)
                    .expect("facet normal is a fan ray")
            })
            .collect();
        cone_rays.sort_unstable();
        let cone = self
            .fan
            .max_cones()
            .iter()
            .position(|c| *c == cone_rays)
            .ok_or_else(|| Error::InvalidPair("fan does not match polytope vertices".into()))?;
        if !self.fan.cone_smooth_flags()[cone] {
            return Err(Error::NonSmoothCone(format!(
                "direction {xi:?} lies in a non-smooth cone"
            )));
        }
        let coords = self
            .fan
            .cone_coordinates(cone, xi)
            .ok_or_else(|| Error::InvalidPair("degenerate cone".into()))?;
        debug_assert!(coords.iter().all(|c| !c.is_negative()));
        Ok((cone, coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn p1(d: i64) -> PolarizedToricPair {
        PolarizedToricPair::untwisted(
            LatticePolytope::from_lattice_points(1, &[vec![0], vec![d]]).unwrap(),
        )
    }

    fn p2(d: i64) -> PolarizedToricPair {
        PolarizedToricPair::untwisted(
            LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![d, 0], vec![0, d]]).unwrap(),
        )
    }

    #[test]
    fn log_discrepancy_on_rays_and_interior_directions() {
        let pair = p2(1);
        assert_eq!(pair.log_discrepancy(&[1, 0]).unwrap(), rint(1));
        assert_eq!(pair.log_discrepancy(&[1, 1]).unwrap(), rint(2));
        let twisted = PolarizedToricPair::new(
            pair.polytope().clone(),
            None,
            &[(vec![1, 0], rat(1, 2)), (vec![0, 1], rat(1, 2))],
        )
        .unwrap();
        assert_eq!(twisted.log_discrepancy(&[1, 1]).unwrap(), rint(1));
    }

    #[test]
    fn klt_bound_is_enforced() {
        let pair = p1(2);
        let err = PolarizedToricPair::new(pair.polytope().clone(), None, &[(vec![1], rint(1))])
            .unwrap_err();
        assert!(err.to_string().contains("klt violated"), "{err}");
    }

    #[test]
    fn expected_vanishing_examples() {
        assert_eq!(p1(1).expected_vanishing(&[1]), rat(1, 2));
        assert_eq!(p1(2).expected_vanishing(&[1]), rint(1));
        assert_eq!(p2(1).expected_vanishing(&[1, 0]), rat(1, 3));
    }

    #[test]
    fn finite_level_vanishing_examples() {
        for m in 1..=6 {
            assert_eq!(p1(1).expected_vanishing_level(&[1], m), rat(1, 2));
            assert_eq!(p1(2).expected_vanishing_level(&[1], m), rint(1));
        }
        assert_eq!(p2(1).expected_vanishing_level(&[1, 0], 1), rat(1, 3));
    }

    #[test]
    fn width_examples() {
        assert_eq!(p1(2).width(&[1]), rint(2));
        assert_eq!(p2(3).width(&[1, 0]), rint(3));
    }
}
