//! Built-in geometries and metric profiles addressable by key.
//!
//! Pair keys follow `VARIETY:POLARIZATION` with an optional twist suffix,
//! e.g. `P2:O(1)`, `P1xP1:O(1,2)`, `P1:O(2):theta[0]=1/2`. Metric profiles
//! are `zero`, `bump`, `asymmetric`; a combined key like `P1:O(2):bump`
//! selects both the pair and a profile of the matching degree.

use crate::error::{Error, Result};
use crate::pair::PolarizedToricPair;
use crate::polytope::LatticePolytope;
use crate::radial::RadialMetric;
use crate::rat::{parse_rat, rat, Rat};

/// All pair keys shipped with the catalog.
pub const PAIR_KEYS: [&str; 11] = [
    "P1:O(1)",
    "P1:O(2)",
    "P1:O(3)",
    "P2:O(1)",
    "P2:O(3)",
    "P1xP1:O(1,1)",
    "P1xP1:O(1,2)",
    "F1:L(1,1)",
    "P1:O(2):theta[0]=1/2",
    "P1:O(2):theta[0]=1/4",
    "P2:O(3):theta[e1]=1/4",
];

pub const PROFILE_KEYS: [&str; 3] = ["zero", "bump", "asymmetric"];

fn segment(d: i64) -> LatticePolytope {
    LatticePolytope::from_lattice_points(1, &[vec![0], vec![d]]).unwrap()
}

fn simplex(d: i64) -> LatticePolytope {
    LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![d, 0], vec![0, d]]).unwrap()
}

fn rect(a: i64, b: i64) -> LatticePolytope {
    LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![a, 0], vec![0, b], vec![a, b]])
        .unwrap()
}

fn hirzebruch_trapezoid() -> LatticePolytope {
    LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![1, 0], vec![2, 1], vec![0, 1]])
        .unwrap()
}

/// Looks up a polarized pair by catalog key.
pub fn pair(key: &str) -> Result<PolarizedToricPair> {
    let p = match key {
        "P1:O(1)" => PolarizedToricPair::untwisted(segment(1)),
        "P1:O(2)" => PolarizedToricPair::untwisted(segment(2)),
        "P1:O(3)" => PolarizedToricPair::untwisted(segment(3)),
        "P2:O(1)" => PolarizedToricPair::untwisted(simplex(1)),
        "P2:O(3)" => PolarizedToricPair::untwisted(simplex(3)),
        "P1xP1:O(1,1)" => PolarizedToricPair::untwisted(rect(1, 1)),
        "P1xP1:O(1,2)" => PolarizedToricPair::untwisted(rect(1, 2)),
        "F1:L(1,1)" => PolarizedToricPair::untwisted(hirzebruch_trapezoid()),
        "P1:O(2):theta[0]=1/2" => {
            PolarizedToricPair::new(segment(2), None, &[(vec![1], rat(1, 2))])?
        }
        "P1:O(2):theta[0]=1/4" => {
            PolarizedToricPair::new(segment(2), None, &[(vec![1], rat(1, 4))])?
        }
        "P2:O(3):theta[e1]=1/4" => {
            PolarizedToricPair::new(simplex(3), None, &[(vec![1, 0], rat(1, 4))])?
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown catalog pair key {key:?}"
            )))
        }
    };
    Ok(p)
}

/// Stable sech via exponentials.
fn sech(u: f64) -> f64 {
    let e = (-u.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// Named radial profile of a given degree.
///
/// `bump` is an even profile 0.15 d sech^2(x/2); `asymmetric` is the kink
/// 0.15 d (tanh(x/2) + 1) with distinct asymptotic constants. Both keep the
/// curvature between 0.4 and 1.6 times the reference curvature, so
/// positivity holds with a uniform margin.
pub fn profile(name: &str, degree: u32) -> Result<RadialMetric> {
    let d = degree as f64;
    match name {
        "zero" => Ok(RadialMetric::zero(degree)),
        "bump" => {
            let beta = 0.15 * d;
            RadialMetric::from_profile(
                degree,
                move |x| beta * sech(x / 2.0).powi(2),
                move |x| {
                    let u = x / 2.0;
                    -beta * sech(u).powi(2) * u.tanh()
                },
                move |x| {
                    let u = x / 2.0;
                    let s2 = sech(u).powi(2);
                    -(beta / 2.0) * s2 * (s2 - 2.0 * u.tanh().powi(2))
                },
                0.0,
                0.0,
            )
        }
        "asymmetric" => {
            let beta = 0.3 * d;
            RadialMetric::from_profile(
                degree,
                move |x| 0.5 * beta * ((x / 2.0).tanh() + 1.0),
                move |x| 0.25 * beta * sech(x / 2.0).powi(2),
                move |x| {
                    let u = x / 2.0;
                    -0.25 * beta * sech(u).powi(2) * u.tanh()
                },
                0.0,
                beta,
            )
        }
        _ => Err(Error::InvalidInput(format!("unknown profile key {name:?}"))),
    }
}

/// Splits a combined key `PAIR` or `PAIR:PROFILE` into its parts.
pub fn split_key(key: &str) -> (String, Option<String>) {
    for p in PROFILE_KEYS {
        if let Some(stripped) = key.strip_suffix(&format!(":{p}")) {
            return (stripped.to_string(), Some(p.to_string()));
        }
    }
    if PROFILE_KEYS.contains(&key) {
        return (String::new(), Some(key.to_string()));
    }
    (key.to_string(), None)
}

/// Twist weights (c at z=0, c at z=infinity) of a degree-d pair on the line.
pub fn theta_weights(pair: &PolarizedToricPair) -> Result<(Rat, Rat)> {
    if pair.dim() != 1 {
        return Err(Error::InvalidPair(
            "theta weights are defined for one-dimensional pairs".into(),
        ));
    }
    Ok((
        pair.boundary_coefficient(&[1]),
        pair.boundary_coefficient(&[-1]),
    ))
}

/// Degree of a one-dimensional pair (the lattice length of its interval).
pub fn line_degree(pair: &PolarizedToricPair) -> Result<u32> {
    if pair.dim() != 1 {
        return Err(Error::InvalidPair("expected a one-dimensional pair".into()));
    }
    let len = pair.polytope().normalized_volume();
    let one = Rat::from_integer(1.into());
    if len.denom() != one.numer() {
        return Err(Error::InvalidPair(
            "polarization degree must be an integer".into(),
        ));
    }
    u32::try_from(
        i64::try_from(len.numer()).map_err(|_| {
            Error::InvalidPair("polarization degree exceeds supported range".into())
        })?,
    )
    .map_err(|_| Error::InvalidPair("polarization degree must be positive".into()))
}

/// Seeded pseudo-random admissible profile for property tests; keeps trying
/// lowered amplitudes until the curvature check passes.
pub fn random_profile(degree: u32, seed: u64) -> RadialMetric {
    // Small xorshift so the library does not need an RNG dependency.
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).max(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let d = degree as f64;
    let mut scale = 0.05 * d;
    loop {
        let amps: Vec<f64> = (0..3).map(|_| scale * (2.0 * next() - 1.0)).collect();
        let centers: Vec<f64> = (0..3).map(|_| 4.0 * (2.0 * next() - 1.0)).collect();
        let (a, c) = (amps.clone(), centers.clone());
        let trial = RadialMetric::from_profile(
            degree,
            {
                let (a, c) = (a.clone(), c.clone());
                move |x| {
                    a.iter()
                        .zip(&c)
                        .map(|(ak, ck)| ak * sech((x - ck) / 2.0).powi(2))
                        .sum()
                }
            },
            {
                let (a, c) = (a.clone(), c.clone());
                move |x| {
                    a.iter()
                        .zip(&c)
                        .map(|(ak, ck)| {
                            let u = (x - ck) / 2.0;
                            -ak * sech(u).powi(2) * u.tanh()
                        })
                        .sum()
                }
            },
            move |x| {
                a.iter()
                    .zip(&c)
                    .map(|(ak, ck)| {
                        let u = (x - ck) / 2.0;
                        let s2 = sech(u).powi(2);
                        -(ak / 2.0) * s2 * (s2 - 2.0 * u.tanh().powi(2))
                    })
                    .sum()
            },
            0.0,
            0.0,
        );
        match trial {
            Ok(m) => return m,
            Err(_) => scale *= 0.7,
        }
    }
}

/// Parses a twist suffix `theta[RAY]=COEFF` into a ray/coefficient pair for
/// file inputs that use the same shorthand as catalog keys.
pub fn parse_theta_suffix(s: &str) -> Result<(Vec<i64>, Rat)> {
    let body = s
        .strip_prefix("theta[")
        .and_then(|r| r.split_once("]="))
        .ok_or_else(|| Error::InvalidInput(format!("malformed twist spec {s:?}")))?;
    let (ray_txt, coeff_txt) = body;
    let ray = match ray_txt {
        "0" => vec![1],
        "inf" => vec![-1],
        "e1" => vec![1, 0],
        "e2" => vec![0, 1],
        other => other
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad ray component {t:?}")))
            })
            .collect::<Result<Vec<i64>>>()?,
    };
    Ok((ray, parse_rat(coeff_txt)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    #[test]
    fn every_catalog_key_parses_and_validates() {
        for key in PAIR_KEYS {
            let p = pair(key).unwrap();
            assert!(p.polytope().validate().is_ok(), "{key}");
        }
        for key in PROFILE_KEYS {
            profile(key, 1).unwrap();
            profile(key, 2).unwrap();
        }
    }

    #[test]
    fn unknown_keys_are_structured_errors() {
        assert!(pair("P5:O(1)").is_err());
        assert!(profile("wiggle", 1).is_err());
    }

    #[test]
    fn combined_keys_split() {
        assert_eq!(
            split_key("P1:O(2):bump"),
            ("P1:O(2)".into(), Some("bump".into()))
        );
        assert_eq!(split_key("P2:O(1)"), ("P2:O(1)".into(), None));
        assert_eq!(split_key("zero"), (String::new(), Some("zero".into())));
    }

    #[test]
    fn line_degree_and_theta_weights() {
        let p = pair("P1:O(2):theta[0]=1/2").unwrap();
        assert_eq!(line_degree(&p).unwrap(), 2);
        let (c0, cinf) = theta_weights(&p).unwrap();
        assert_eq!(c0, rat(1, 2));
        assert_eq!(cinf, rint(0));
    }

    #[test]
    fn random_profiles_are_admissible_and_seeded() {
        let a = random_profile(1, 7);
        let b = random_profile(1, 7);
        assert_eq!(a.value(0.3), b.value(0.3));
        for seed in 0..10 {
            let m = random_profile(2, seed);
            assert!(m.curvature(0.0) > 0.0);
        }
    }

    #[test]
    fn theta_suffix_parser() {
        let (ray, c) = parse_theta_suffix("theta[0]=1/2").unwrap();
        assert_eq!(ray, vec![1]);
        assert_eq!(c, rat(1, 2));
        let (ray, c) = parse_theta_suffix("theta[e1]=1/4").unwrap();
        assert_eq!(ray, vec![1, 0]);
        assert_eq!(c, rat(1, 4));
        assert!(parse_theta_suffix("theta{0}=1").is_err());
    }
}
