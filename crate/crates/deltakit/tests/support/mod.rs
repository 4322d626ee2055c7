//! Independent oracles shared by the integration suites.
//!
//! Everything here recomputes quantities of the library along a different
//! route: expected vanishing orders by exact slice integration (clipping
//! superlevel polygons), finite-level thresholds by brute-force search over
//! primitive directions with plain integer arithmetic, counting polynomials
//! by exact interpolation, and the energy by a Legendre-transform integral.

#![allow(dead_code)]

use deltakit::pair::PolarizedToricPair;
use deltakit::polytope::LatticePolytope;
use deltakit::radial::RadialMetric;
use deltakit::rat::{dot_iv, rat, rint, Rat, RatVec};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Exact area of a convex polygon given in cyclic order.
fn polygon_area(points: &[RatVec]) -> Rat {
    let n = points.len();
    if n < 3 {
        return Rat::zero();
    }
    let mut twice = Rat::zero();
    for i in 0..n {
        let j = (i + 1) % n;
        twice += &points[i][0] * &points[j][1] - &points[i][1] * &points[j][0];
    }
    let two = rint(2);
    if twice.is_negative() {
        -twice / two
    } else {
        twice / two
    }
}

/// Orders polygon vertices counterclockwise around their centroid.
fn cyclic_order(mut points: Vec<RatVec>) -> Vec<RatVec> {
    let n = rint(points.len() as i64);
    let cx = points
        .iter()
        .map(|p| p[0].clone())
        .fold(Rat::zero(), |a, b| a + b)
        / &n;
    let cy = points
        .iter()
        .map(|p| p[1].clone())
        .fold(Rat::zero(), |a, b| a + b)
        / &n;
    points.sort_by(|p, q| {
        let (px, py) = (&p[0] - &cx, &p[1] - &cy);
        let (qx, qy) = (&q[0] - &cx, &q[1] - &cy);
        let half = |x: &Rat, y: &Rat| -> u8 {
            if y.is_positive() || (y.is_zero() && x.is_positive()) {
                0
            } else {
                1
            }
        };
        let (hp, hq) = (half(&px, &py), half(&qx, &qy));
        if hp != hq {
            return hp.cmp(&hq);
        }
        let cross = &px * &qy - &py * &qx;
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    points
}

/// Clips a cyclically ordered polygon against <xi, u> >= c, exactly.
fn clip_halfplane(points: &[RatVec], xi: &[i64], c: &Rat) -> Vec<RatVec> {
    let n = points.len();
    let mut out: Vec<RatVec> = Vec::new();
    for i in 0..n {
        let a = &points[i];
        let b = &points[(i + 1) % n];
        let va = dot_iv(xi, a);
        let vb = dot_iv(xi, b);
        let a_in = va >= *c;
        let b_in = vb >= *c;
        if a_in {
            out.push(a.clone());
        }
        if a_in != b_in {
            // Intersection point at parameter t with v(a) + t (v(b)-v(a)) = c.
            let t = (c - &va) / (&vb - &va);
            let p: RatVec = (0..2).map(|k| &a[k] + (&b[k] - &a[k]) * &t).collect();
            out.push(p);
        }
    }
    out
}

/// Superlevel volume vol{u in P : <xi, u> >= c} in dimension 1 or 2.
fn superlevel_volume(p: &LatticePolytope, xi: &[i64], c: &Rat) -> Rat {
    match p.dim() {
        1 => {
            // Interval [a, b] with value xi * u.
            let vals: Vec<Rat> = p.vertices().iter().map(|v| dot_iv(xi, v)).collect();
            let lo = vals.iter().min().unwrap().clone();
            let hi = vals.iter().max().unwrap().clone();
            if *c <= lo {
                let den = rint(xi[0].abs());
                return (hi - lo) / den;
            }
            if *c >= hi {
                return Rat::zero();
            }
            let den = rint(xi[0].abs());
            (hi - c) / den
        }
        2 => {
            let ordered = cyclic_order(p.vertices().to_vec());
            let clipped = clip_halfplane(&ordered, xi, c);
            polygon_area(&clipped)
        }
        _ => panic!("slice oracle supports dimensions 1 and 2"),
    }
}

/// Expected vanishing order by slice integration: the volume of superlevel
/// sets of <xi, .> is piecewise quadratic between the sorted vertex values,
/// so Simpson on each piece integrates it exactly.
pub fn slice_vanishing_order(p: &LatticePolytope, xi: &[i64]) -> Rat {
    let mut values: Vec<Rat> = p.vertices().iter().map(|v| dot_iv(xi, v)).collect();
    values.sort();
    values.dedup();
    let total = p.euclidean_volume();
    let mut integral = Rat::zero();
    for w in values.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let mid = (a + b) / rint(2);
        let fa = superlevel_volume(p, xi, a);
        let fm = superlevel_volume(p, xi, &mid);
        let fb = superlevel_volume(p, xi, b);
        integral += (b - a) * (fa + rint(4) * fm + fb) / rint(6);
    }
    integral / total
}

/// Primitive directions with max-norm at most `bound` (dimension <= 2).
pub fn primitive_directions(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    match dim {
        1 => {
            out.push(vec![1]);
            out.push(vec![-1]);
        }
        2 => {
            for a in -bound..=bound {
                for b in -bound..=bound {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    if gcd(a.abs(), b.abs()) == 1 {
                        out.push(vec![a, b]);
                    }
                }
            }
        }
        _ => panic!("oracle supports dimensions 1 and 2"),
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact limit threshold by slice integration over a direction search.
pub fn delta_by_slices(pair: &PolarizedToricPair, bound: i64) -> Rat {
    let mut best: Option<Rat> = None;
    for xi in primitive_directions(pair.dim(), bound) {
        let a = pair.log_discrepancy(&xi).expect("smooth catalog cone");
        let s = slice_vanishing_order(pair.polytope(), &xi);
        let ratio = a / s;
        best = Some(match best {
            None => ratio,
            Some(b) => b.min(ratio),
        });
    }
    best.expect("nonempty direction set")
}

/// Finite-level threshold by brute-force lattice-point sums in plain
/// integer arithmetic, independent of the library's candidate reduction.
pub fn delta_level_brute_force(pair: &PolarizedToricPair, m: u32, bound: i64) -> Rat {
    let p = pair.polytope();
    let points = enumerate_lattice_points(p, m);
    let d_m = points.len() as i64;
    let mut best: Option<Rat> = None;
    for xi in primitive_directions(p.dim(), bound) {
        let a = pair.log_discrepancy(&xi).expect("smooth catalog cone");
        let dot_sum: i64 = points
            .iter()
            .map(|u| xi.iter().zip(u).map(|(x, y)| x * y).sum::<i64>())
            .sum();
        let vertex_min = p
            .vertices()
            .iter()
            .map(|v| dot_iv(&xi, v))
            .min()
            .expect("polytope has vertices");
        let s_m = rint(dot_sum) / rint(m as i64 * d_m) - vertex_min;
        assert!(s_m.is_positive(), "degenerate direction {xi:?}");
        let ratio = a / s_m;
        best = Some(match best {
            None => ratio,
            Some(b) => b.min(ratio),
        });
    }
    best.expect("nonempty direction set")
}

/// Plain box-scan lattice point enumeration against the facet inequalities.
pub fn enumerate_lattice_points(p: &LatticePolytope, m: u32) -> Vec<Vec<i64>> {
    let dim = p.dim();
    let m_rat = rint(m as i64);
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    for v in p.vertices() {
        for c in 0..dim {
            let scaled = &v[c] * &m_rat;
            let f = scaled.floor();
            let g = scaled.ceil();
            lo[c] = lo[c].min(i64::try_from(f.numer()).unwrap());
            hi[c] = hi[c].max(i64::try_from(g.numer()).unwrap());
        }
    }
    let mut out = Vec::new();
    let mut point = lo.clone();
    'scan: loop {
        let inside = p.facets().iter().all(|f| {
            let lhs: i64 = f.normal.iter().zip(&point).map(|(a, x)| a * x).sum();
            Rat::from_integer(BigInt::from(lhs)) >= &f.offset * &m_rat
        });
        if inside {
            out.push(point.clone());
        }
        for c in 0..dim {
            point[c] += 1;
            if point[c] <= hi[c] {
                continue 'scan;
            }
            point[c] = lo[c];
        }
        break;
    }
    out
}

/// Exact polynomial fit of the counting function on m = 1..n+1 evaluated at
/// larger m, by Lagrange interpolation.
pub fn ehrhart_prediction(counts: &[(u32, usize)], at: u32) -> Rat {
    let x = rint(at as i64);
    let mut acc = Rat::zero();
    for (i, &(mi, ci)) in counts.iter().enumerate() {
        let xi = rint(mi as i64);
        let mut term = rint(ci as i64);
        for (j, &(mj, _)) in counts.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = rint(mj as i64);
            term = term * (&x - &xj) / (&xi - &xj);
        }
        acc += term;
    }
    acc
}

/// Monge-Ampere energy through the Legendre transform: the mean of the
/// difference of symplectic potentials over the moment interval, computed
/// with composite Simpson in the stable logistic parameterization.
pub fn legendre_energy(phi: &RadialMetric) -> f64 {
    let d = phi.degree() as f64;
    let panels = 4000;
    let (y_lo, y_hi) = (-30.0_f64, 30.0_f64);
    let logistic = |y: f64| 1.0 / (1.0 + (-y).exp());
    let u_ref = |y: f64| {
        let sp = |t: f64| {
            if t > 0.0 {
                t + (-t).exp().ln_1p()
            } else {
                t.exp().ln_1p()
            }
        };
        -d * (logistic(y) * sp(-y) + logistic(-y) * sp(y))
    };
    let integrand = |y: f64| {
        let tau = d * logistic(y);
        // d tau = d s(y) s(-y) dy.
        let jac = d * logistic(y) * logistic(-y);
        (u_ref(y) - phi.symplectic_potential(tau)) * jac
    };
    let h = (y_hi - y_lo) / panels as f64;
    let mut acc = integrand(y_lo) + integrand(y_hi);
    for k in 1..panels {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * integrand(y_lo + k as f64 * h);
    }
    acc * h / 3.0 / d
}

/// Fixed catalog profile pairs used by the geodesic-based criteria.
pub fn catalog_profile_pairs(degree: u32) -> Vec<(RadialMetric, RadialMetric, String)> {
    let names = ["zero", "bump", "asymmetric"];
    let mut out = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            out.push((
                deltakit::catalog::profile(names[i], degree).unwrap(),
                deltakit::catalog::profile(names[j], degree).unwrap(),
                format!("{}-{} (d={degree})", names[i], names[j]),
            ));
        }
    }
    out
}

/// Succinct helper for rational equality assertions in tests.
pub fn assert_rat_eq(got: &Rat, num: i64, den: i64, context: &str) {
    assert_eq!(*got, rat(num, den), "{context}: got {got}");
}
