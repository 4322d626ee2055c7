//! Exact stability thresholds on polarized toric pairs.
//!
//! Every threshold here is an infimum of a ratio of two piecewise linear
//! functions of the valuation direction. On each cone of the relevant fan
//! refinement both functions are linear, so the infimum is attained on the
//! finitely many extreme rays of the refinement; those rays form the
//! candidate set and the minimum is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::refinement_rays;
use crate::pair::PolarizedToricPair;
use crate::rat::{rat_serde, Rat};

/// How the expected vanishing order is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMode {
    /// The limit threshold, S from the moment integral.
    Limit,
    /// The finite-level threshold with basis sums at level m.
    Level(u32),
}

/// One candidate direction with its ratio.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Candidate {
    pub xi: Vec<i64>,
    #[serde(with = "rat_serde")]
    pub log_discrepancy: Rat,
    #[serde(with = "rat_serde")]
    pub denominator: Rat,
    #[serde(with = "rat_serde")]
    pub ratio: Rat,
}

/// Exact minimum of a discrepancy ratio over the candidate set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdReport {
    #[serde(with = "rat_serde")]
    pub value: Rat,
    pub minimizer: Vec<i64>,
    pub candidates: Vec<Candidate>,
}

impl ThresholdReport {
    fn from_candidates(candidates: Vec<Candidate>) -> Result<Self> {
        let best = candidates
            .iter()
            .min_by(|a, b| a.ratio.cmp(&b.ratio))
            .ok_or_else(|| Error::InvalidPair("empty candidate set".into()))?;
        Ok(Self {
            value: best.ratio.clone(),
            minimizer: best.xi.clone(),
            candidates,
        })
    }
}

/// Delta threshold: inf over toric valuations of A_theta / S (or S_m).
///
/// The denominator is linear on each maximal cone of the normal fan, so the
/// candidate set is the normal fan's rays.
pub fn delta_threshold(pair: &PolarizedToricPair, mode: DeltaMode) -> Result<ThresholdReport> {
    let points = match mode {
        DeltaMode::Limit => None,
        DeltaMode::Level(m) => Some((m, pair.polytope().lattice_points(m))),
    };
    let mut candidates = Vec::new();
    for xi in pair.fan().rays() {
        let a = pair.log_discrepancy(xi)?;
        let s = match &points {
            None => pair.expected_vanishing(xi),
            Some((m, pts)) => pair.expected_vanishing_level_with_points(xi, *m, pts),
        };
        if !s.is_positive() {
            return Err(Error::InvalidPair(format!(
                "expected vanishing order along {xi:?} is not positive"
            )));
        }
        candidates.push(Candidate {
            xi: xi.clone(),
            ratio: &a / &s,
            log_discrepancy: a,
            denominator: s,
        });
    }
    ThresholdReport::from_candidates(candidates)
}

/// Alpha threshold: inf of A_theta / T with T the width max - min.
///
/// The width is linear only on the common refinement of the normal fan and
/// its negation, so the candidate set is that refinement's rays.
pub fn alpha_threshold(pair: &PolarizedToricPair) -> Result<ThresholdReport> {
    let nf = pair.fan();
    let rays = refinement_rays(nf, &nf.negated());
    let mut candidates = Vec::new();
    for xi in &rays {
        let a = pair.log_discrepancy(xi)?;
        let t = pair.width(xi);
        if !t.is_positive() {
            return Err(Error::InvalidPair(format!(
                "width along {xi:?} is not positive"
            )));
        }
        candidates.push(Candidate {
            xi: xi.clone(),
            ratio: &a / &t,
            log_discrepancy: a,
            denominator: t,
        });
    }
    ThresholdReport::from_candidates(candidates)
}

/// Slope mu(L) = (-K_X . L^{n-1}) / L^n via lattice-normalized facet volumes.
pub fn slope_mu(pair: &PolarizedToricPair) -> Result<Rat> {
    if !pair.fan().is_smooth() {
        return Err(Error::NonSmoothCone("slope requires a smooth fan".into()));
    }
    let p = pair.polytope();
    let anti_canonical_degree: Rat = p
        .facet_lattice_volumes()
        .into_iter()
        .fold(Rat::zero(), |acc, v| acc + v);
    Ok(anti_canonical_degree / p.normalized_volume())
}

/// Nef threshold together with a positivity flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NefThreshold {
    #[serde(with = "rat_serde")]
    pub value: Rat,
    /// False when no positive multiple of L fits below -K_X; the value is
    /// then the (nonpositive) wall minimum.
    pub positive: bool,
}

/// Largest s with (-K_X - sL) nef, by exact intersection with every
/// torus-invariant curve (one per wall of the fan).
pub fn nef_threshold(pair: &PolarizedToricPair) -> Result<NefThreshold> {
    let ratios = wall_ratios(pair)?;
    let value = ratios
        .iter()
        .map(|(k, l)| k / l)
        .min()
        .ok_or_else(|| Error::InvalidFan("fan has no walls".into()))?;
    Ok(NefThreshold {
        positive: value.is_positive(),
        value,
    })
}

/// (-K_X . C, L . C) for every wall curve C of a smooth complete fan.
fn wall_ratios(pair: &PolarizedToricPair) -> Result<Vec<(Rat, Rat)>> {
    let fan = pair.fan();
    let walls = fan.walls()?;
    let l_coeffs = polarization_coefficients(pair);
    let mut out = Vec::new();
    for wall in &walls {
        let (_, u) = wall.sides[0];
        let (_, u_op) = wall.sides[1];
        // Wall relation u + u' + sum c_i v_i = 0 determines the curve class:
        // C . D_u = C . D_{u'} = 1 and C . D_{v_i} = c_i.
        let n = fan.dim();
        let coeffs: Vec<Rat> = if wall.span.is_empty() {
            vec![]
        } else {
            let a: Vec<Vec<Rat>> = (0..n)
                .map(|r| {
                    wall.span
                        .iter()
                        .map(|&i| Rat::from_integer(BigInt::from(fan.rays()[i][r])))
                        .collect()
                })
                .collect();
            let b: Vec<Rat> = (0..n)
                .map(|r| -Rat::from_integer(BigInt::from(fan.rays()[u][r] + fan.rays()[u_op][r])))
                .collect();
            crate::linalg::solve_rect(&a, &b)
                .ok_or_else(|| Error::InvalidFan("wall relation is inconsistent".into()))?
        };
        let curve_dot = |d: &[Rat]| -> Rat {
            let mut acc = &d[u] + &d[u_op];
            for (c, &v) in coeffs.iter().zip(&wall.span) {
                acc += c * &d[v];
            }
            acc
        };
        let k_coeffs: Vec<Rat> = vec![Rat::one(); fan.rays().len()];
        let k_dot = curve_dot(&k_coeffs);
        let l_dot = curve_dot(&l_coeffs);
        if !l_dot.is_positive() {
            return Err(Error::InvalidPair(
                "polarization is not ample: a wall curve has nonpositive degree".into(),
            ));
        }
        out.push((k_dot, l_dot));
    }
    Ok(out)
}

/// Divisor coefficients of the polarization on the fan rays: minus the
/// support value of the polytope on each ray.
fn polarization_coefficients(pair: &PolarizedToricPair) -> Vec<Rat> {
    pair.fan()
        .rays()
        .iter()
        .map(|r| {
            let xi: Vec<Rat> = r
                .iter()
                .map(|&x| Rat::from_integer(BigInt::from(x)))
                .collect();
            let (lo, _) = pair.polytope().support_bounds(&xi);
            -lo
        })
        .collect()
}

/// The computable existence criterion for constant scalar curvature metrics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CsckCriterion {
    #[serde(with = "rat_serde")]
    pub delta: Rat,
    #[serde(with = "rat_serde")]
    pub mu: Rat,
    #[serde(with = "rat_serde")]
    pub s: Rat,
    /// K_X + delta L ample on every wall curve.
    pub ample_check: bool,
    /// delta > n mu - (n-1) s.
    pub inequality_check: bool,
    pub verdict: bool,
}

/// Evaluates the criterion; defined for untwisted pairs only.
pub fn csck_criterion(pair: &PolarizedToricPair) -> Result<CsckCriterion> {
    if !pair.is_untwisted() {
        return Err(Error::InvalidPair("criterion defined for theta=0".into()));
    }
    let delta = delta_threshold(pair, DeltaMode::Limit)?.value;
    let mu = slope_mu(pair)?;
    let s = nef_threshold(pair)?.value;
    // K_X + delta L pairs with a wall curve as delta (L.C) - (-K.C).
    let ample_check = wall_ratios(pair)?
        .iter()
        .all(|(k, l)| (&delta * l - k).is_positive());
    let n = Rat::from_integer(BigInt::from(pair.dim() as i64));
    let bound = &n * &mu - (n - Rat::one()) * &s;
    let inequality_check = delta > bound;
    Ok(CsckCriterion {
        verdict: ample_check && inequality_check,
        delta,
        mu,
        s,
        ample_check,
        inequality_check,
    })
}

/// Stability summary: the limit threshold, a finite-level table, and the
/// uniform Ding stability verdict delta > 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilityReport {
    #[serde(with = "rat_serde")]
    pub delta: Rat,
    pub minimizer: Vec<i64>,
    pub delta_m: Vec<(u32, String)>,
    pub ding_stable: bool,
}

pub fn stability_report(pair: &PolarizedToricPair, m_range: &[u32]) -> Result<StabilityReport> {
    if m_range.is_empty() {
        return Err(Error::InvalidInput("empty m range".into()));
    }
    let limit = delta_threshold(pair, DeltaMode::Limit)?;
    let mut table = Vec::new();
    for &m in m_range {
        let r = delta_threshold(pair, DeltaMode::Level(m))?;
        table.push((m, crate::rat::rat_str(&r.value)));
    }
    Ok(StabilityReport {
        ding_stable: limit.value > Rat::one(),
        delta: limit.value,
        minimizer: limit.minimizer,
        delta_m: table,
    })
}
