//! Torus-invariant metrics on the projective line with a polarization of
//! degree d, represented by radial potential profiles.
//!
//! A metric is the profile phi(x) in the logarithmic coordinate x = log|z|^2,
//! relative to the degree-d reference potential d*log(1+e^x). The full
//! potential Phi = d*log(1+e^x) + phi must be strictly convex (positive
//! curvature) and phi must tend to finite constants at both ends, so the
//! moment map image stays [0, d]. Profiles carry closures for the value and
//! the first two derivatives of the full potential; geodesics are built by
//! linear interpolation of Legendre transforms on the moment interval.

use std::sync::Arc;

use crate::error::{Error, Result};

pub type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// log(1 + e^x), overflow-safe.
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// 1 / (1 + e^{-x}), overflow-safe.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Density of the degree-d reference form in the x coordinate; total mass d.
pub fn reference_density(d: u32, x: f64) -> f64 {
    d as f64 * logistic(x) * logistic(-x)
}

/// Reference full potential d * log(1 + e^x).
pub fn reference_potential(d: u32, x: f64) -> f64 {
    d as f64 * softplus(x)
}

/// Guillemin potential of the reference metric on the moment interval,
/// parameterized by y with tau = d * logistic(y) for numerical stability.
pub fn reference_symplectic_stable(d: u32, y: f64) -> f64 {
    let d = d as f64;
    // u0(tau) = tau ln(tau/d) + (d - tau) ln(1 - tau/d) with tau = d s(y):
    // ln s(y) = -softplus(-y).
    -d * (logistic(y) * softplus(-y) + logistic(-y) * softplus(y))
}

#[derive(Clone)]
pub struct RadialMetric {
    degree: u32,
    /// Profile phi(x).
    value: ProfileFn,
    /// First derivative of the full potential, the moment coordinate.
    full_d1: ProfileFn,
    /// Second derivative of the full potential, the curvature density.
    full_d2: ProfileFn,
    c_minus: f64,
    c_plus: f64,
    sup: f64,
}

impl std::fmt::Debug for RadialMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialMetric")
            .field("degree", &self.degree)
            .field("c_minus", &self.c_minus)
            .field("c_plus", &self.c_plus)
            .field("sup", &self.sup)
            .finish()
    }
}

impl RadialMetric {
    /// Builds a metric from a profile and its two derivatives.
    pub fn from_profile<F, G, H>(
        degree: u32,
        phi: F,
        dphi: G,
        d2phi: H,
        c_minus: f64,
        c_plus: f64,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let d = degree as f64;
        let value: ProfileFn = Arc::new(phi);
        let full_d1: ProfileFn = Arc::new(move |x| d * logistic(x) + dphi(x));
        let full_d2: ProfileFn = Arc::new(move |x| d * logistic(x) * logistic(-x) + d2phi(x));
        Self::from_closures(
            degree,
            value,
            full_d1,
            full_d2,
            c_minus,
            c_plus,
            (-60.0, 60.0),
        )
    }

    /// Builds a metric from full-potential closures, validating positivity
    /// of the curvature and consistency of the derivative data.
    #[allow(clippy::too_many_arguments)]
    pub fn from_closures(
        degree: u32,
        value: ProfileFn,
        full_d1: ProfileFn,
        full_d2: ProfileFn,
        c_minus: f64,
        c_plus: f64,
        scan_range: (f64, f64),
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::NotAdmissible("degree must be positive".into()));
        }
        if !c_minus.is_finite() || !c_plus.is_finite() {
            return Err(Error::NotAdmissible(
                "asymptotic constants must be finite".into(),
            ));
        }
        let (lo, hi) = scan_range;
        let n = 1201;
        let mut sup = c_minus.max(c_plus);
        for k in 0..n {
            let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
            let v = value(x);
            let d2 = full_d2(x);
            if !v.is_finite() || !d2.is_finite() {
                return Err(Error::NotAdmissible(format!(
                    "profile not finite at x = {x}"
                )));
            }
            if d2 <= 0.0 {
                return Err(Error::NotAdmissible(format!(
                    "curvature not positive at x = {x} (got {d2:.3e})"
                )));
            }
            sup = sup.max(v);
        }
        // Light consistency check of the derivative closures against finite
        // differences of the value closure.
        let d = degree as f64;
        for &x in &[-3.0, -0.7, 0.4, 2.2] {
            let h = 1e-4;
            let full = |x: f64| d * softplus(x) + value(x);
            let fd = (full(x + h) - full(x - h)) / (2.0 * h);
            if (fd - full_d1(x)).abs() > 1e-5 * (1.0 + fd.abs()) {
                return Err(Error::NotAdmissible(format!(
                    "derivative closure inconsistent at x = {x}"
                )));
            }
        }
        // Refine the supremum around the best grid point.
        let mut metric = Self {
            degree,
            value,
            full_d1,
            full_d2,
            c_minus,
            c_plus,
            sup,
        };
        metric.sup = metric.refine_sup(lo, hi, n);
        Ok(metric)
    }

    fn refine_sup(&self, lo: f64, hi: f64, n: usize) -> f64 {
        let mut best_x = lo;
        let mut best = f64::NEG_INFINITY;
        for k in 0..n {
            let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
            let v = self.value(x);
            if v > best {
                best = v;
                best_x = x;
            }
        }
        // Golden-section refinement around the best sample.
        let step = (hi - lo) / (n - 1) as f64;
        let (mut a, mut b) = (best_x - step, best_x + step);
        let phi = 0.618_033_988_749_894_9;
        for _ in 0..80 {
            let c = b - phi * (b - a);
            let d = a + phi * (b - a);
            if self.value(c) >= self.value(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let interior = self.value(0.5 * (a + b));
        interior.max(self.c_minus).max(self.c_plus)
    }

    /// The constant-zero profile, the reference metric itself.
    pub fn zero(degree: u32) -> Self {
        Self::from_profile(degree, |_| 0.0, |_| 0.0, |_| 0.0, 0.0, 0.0)
            .expect("reference profile is admissible")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dimension of the space of sections at level m: m d + 1.
    pub fn section_dim(&self, m: u32) -> usize {
        (m * self.degree + 1) as usize
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    pub fn full_potential(&self, x: f64) -> f64 {
        reference_potential(self.degree, x) + (self.value)(x)
    }

    /// Moment coordinate Phi'(x), strictly increasing from 0 to d.
    pub fn moment(&self, x: f64) -> f64 {
        (self.full_d1)(x)
    }

    /// Curvature density Phi''(x) > 0.
    pub fn curvature(&self, x: f64) -> f64 {
        (self.full_d2)(x)
    }

    /// Profile derivative phi'(x) = Phi'(x) - d logistic(x).
    pub fn deriv(&self, x: f64) -> f64 {
        (self.full_d1)(x) - self.degree as f64 * logistic(x)
    }

    pub fn c_minus(&self) -> f64 {
        self.c_minus
    }

    pub fn c_plus(&self) -> f64 {
        self.c_plus
    }

    pub fn sup_phi(&self) -> f64 {
        self.sup
    }

    /// phi + c: same metric form, shifted potential.
    pub fn shift(&self, c: f64) -> Self {
        let value = self.value.clone();
        Self {
            degree: self.degree,
            value: Arc::new(move |x| value(x) + c),
            full_d1: self.full_d1.clone(),
            full_d2: self.full_d2.clone(),
            c_minus: self.c_minus + c,
            c_plus: self.c_plus + c,
            sup: self.sup + c,
        }
    }

    /// t * phi for t in (0, 1]; convexity is preserved because the result
    /// interpolates the reference potential and the full potential.
    pub fn scale(&self, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) || t == 0.0 {
            return Err(Error::NotAdmissible(format!(
                "scale factor {t} outside (0, 1]"
            )));
        }
        let d = self.degree as f64;
        let value = self.value.clone();
        let d1 = self.full_d1.clone();
        let d2 = self.full_d2.clone();
        Ok(Self {
            degree: self.degree,
            value: Arc::new(move |x| t * value(x)),
            full_d1: Arc::new(move |x| t * d1(x) + (1.0 - t) * d * logistic(x)),
            full_d2: Arc::new(move |x| t * d2(x) + (1.0 - t) * d * logistic(x) * logistic(-x)),
            c_minus: t * self.c_minus,
            c_plus: t * self.c_plus,
            sup: t * self.sup,
        })
    }

    /// Solves Phi'(x) = tau by bisection; tau must lie in (0, d).
    pub fn inverse_moment(&self, tau: f64) -> f64 {
        let d = self.degree as f64;
        assert!(tau > 0.0 && tau < d, "moment value outside (0, d)");
        // Outside a wide window the profile derivative is negligible and the
        // reference inverse is exact to machine precision.
        let y = (tau / (d - tau)).ln();
        if !(-55.0..=55.0).contains(&y) {
            return y;
        }
        let (mut lo, mut hi) = (y - 40.0, y + 40.0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if self.moment(mid) < tau {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Legendre transform u(tau) = tau x - Phi(x) at x = inverse_moment(tau).
    pub fn symplectic_potential(&self, tau: f64) -> f64 {
        let x = self.inverse_moment(tau);
        tau * x - self.full_potential(x)
    }
}

/// Window of the log coordinate y = ln(tau / (d - tau)) on which f64 can
/// still resolve the moment map away from its endpoint values.
const TABLE_EDGE: f64 = 29.5;

/// Monotone lookup table for the inverse moment map of one metric, used to
/// seed Newton polishing inside geodesic evaluation.
struct MomentTable {
    xs: Vec<f64>,
    taus: Vec<f64>,
}

impl MomentTable {
    fn build(metric: &RadialMetric, n: usize) -> Result<Self> {
        let (lo, hi) = (-TABLE_EDGE - 0.5, TABLE_EDGE + 0.5);
        let mut xs = Vec::with_capacity(n);
        let mut taus = Vec::with_capacity(n);
        for k in 0..n {
            let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
            xs.push(x);
            taus.push(metric.moment(x));
        }
        if taus.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::NotAdmissible(
                "moment map is not strictly increasing on the table grid".into(),
            ));
        }
        Ok(Self { xs, taus })
    }

    /// Seed for the inverse moment map at tau = d * logistic(y). Outside the
    /// window the profile derivative is far below the curvature scale and
    /// the reference inverse y is used; Legendre stationarity makes the
    /// downstream values second-order insensitive to that approximation.
    fn seed_y(&self, d: f64, y: f64) -> f64 {
        if y.abs() >= TABLE_EDGE {
            return y;
        }
        let tau = d * logistic(y);
        if tau <= self.taus[0] || tau >= *self.taus.last().unwrap() {
            return y;
        }
        let idx = self.taus.partition_point(|t| *t < tau);
        let (t0, t1) = (self.taus[idx - 1], self.taus[idx]);
        let (x0, x1) = (self.xs[idx - 1], self.xs[idx]);
        x0 + (x1 - x0) * (tau - t0) / (t1 - t0)
    }
}

/// One endpoint of a geodesic with its lookup table.
struct GeodesicEnd {
    metric: RadialMetric,
    table: MomentTable,
}

impl GeodesicEnd {
    /// Inverse moment x at tau = d * logistic(y), seeded from the table and
    /// polished by Newton iterations on the exact closures.
    fn inverse_y(&self, y: f64) -> f64 {
        let d = self.metric.degree() as f64;
        let mut x = self.table.seed_y(d, y);
        if y.abs() >= TABLE_EDGE {
            return x;
        }
        let tau = d * logistic(y);
        for _ in 0..3 {
            let r = self.metric.moment(x) - tau;
            let c = self.metric.curvature(x);
            if c <= 0.0 {
                break;
            }
            x -= (r / c).clamp(-2.0, 2.0);
        }
        x
    }
}

/// Geodesic between two metrics of the same degree: the symplectic potential
/// interpolates linearly, u_t = (1-t) u_0 + t u_1 on the moment interval.
pub struct ToricGeodesic {
    left: Arc<GeodesicEnd>,
    right: Arc<GeodesicEnd>,
    degree: u32,
}

struct GeoPoint {
    tau: f64,
    x0: f64,
    x1: f64,
}

impl ToricGeodesic {
    pub fn new(phi0: &RadialMetric, phi1: &RadialMetric) -> Result<Self> {
        if phi0.degree() != phi1.degree() {
            return Err(Error::LevelMismatch(format!(
                "geodesic endpoints have degrees {} and {}",
                phi0.degree(),
                phi1.degree()
            )));
        }
        let n = 2401;
        Ok(Self {
            degree: phi0.degree(),
            left: Arc::new(GeodesicEnd {
                metric: phi0.clone(),
                table: MomentTable::build(phi0, n)?,
            }),
            right: Arc::new(GeodesicEnd {
                metric: phi1.clone(),
                table: MomentTable::build(phi1, n)?,
            }),
        })
    }

    /// Solves (1-t) x_0(tau) + t x_1(tau) = x for tau, parameterized by
    /// y = ln(tau / (d - tau)) to keep endpoint resolution. Bisection runs
    /// on cheap table seeds; the root is then polished by Newton steps on
    /// the exact closures, where stationarity of the Legendre transform
    /// makes the final profile value second-order insensitive to the
    /// residual error.
    fn solve(&self, t: f64, x: f64) -> GeoPoint {
        let d = self.degree as f64;
        let g_seed = |y: f64| {
            (1.0 - t) * self.left.table.seed_y(d, y) + t * self.right.table.seed_y(d, y) - x
        };
        // x_i deviates from the reference inverse y by a bounded profile
        // term, so this bracket straddles the root.
        let (mut lo, mut hi) = (x - 80.0, x + 80.0);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if g_seed(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let y = 0.5 * (lo + hi);
        let mut tau = d * logistic(y);
        let mut x0 = self.left.inverse_y(y);
        let mut x1 = self.right.inverse_y(y);
        if y.abs() < TABLE_EDGE {
            for _ in 0..3 {
                let residual = (1.0 - t) * x0 + t * x1 - x;
                let slope = (1.0 - t) / self.left.metric.curvature(x0)
                    + t / self.right.metric.curvature(x1);
                let next = tau - residual / slope;
                if !(next > 0.0 && next < d) {
                    break;
                }
                tau = next;
                // One clamped Newton step each keeps the inverses in
                // lockstep with tau.
                let k0 = self.left.metric.curvature(x0);
                let k1 = self.right.metric.curvature(x1);
                x0 -= ((self.left.metric.moment(x0) - tau) / k0).clamp(-2.0, 2.0);
                x1 -= ((self.right.metric.moment(x1) - tau) / k1).clamp(-2.0, 2.0);
            }
        }
        GeoPoint { tau, x0, x1 }
    }

    /// The interpolated metric at time t in [0, 1].
    pub fn at(&self, t: f64) -> Result<RadialMetric> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::NotAdmissible(format!(
                "geodesic time {t} outside [0,1]"
            )));
        }
        if t == 0.0 {
            return Ok(self.left.metric.clone());
        }
        if t == 1.0 {
            return Ok(self.right.metric.clone());
        }
        let degree = self.degree;
        let d = degree as f64;
        let (l, r) = (self.left.clone(), self.right.clone());
        let me = ToricGeodesic {
            left: l,
            right: r,
            degree,
        };
        let me = Arc::new(me);
        let u_at = |end: &GeodesicEnd, tau: f64, x: f64| tau * x - end.metric.full_potential(x);

        let m0 = me.clone();
        let value: ProfileFn = Arc::new(move |x| {
            let p = m0.solve(t, x);
            let u = (1.0 - t) * u_at(&m0.left, p.tau, p.x0) + t * u_at(&m0.right, p.tau, p.x1);
            x * p.tau - u - d * softplus(x)
        });
        let m1 = me.clone();
        let full_d1: ProfileFn = Arc::new(move |x| m1.solve(t, x).tau);
        let m2 = me.clone();
        let full_d2: ProfileFn = Arc::new(move |x| {
            let p = m2.solve(t, x);
            let k0 = m2.left.metric.curvature(p.x0);
            let k1 = m2.right.metric.curvature(p.x1);
            1.0 / ((1.0 - t) / k0 + t / k1)
        });
        let c_minus = (1.0 - t) * self.left.metric.c_minus() + t * self.right.metric.c_minus();
        let c_plus = (1.0 - t) * self.left.metric.c_plus() + t * self.right.metric.c_plus();
        RadialMetric::from_closures(
            degree,
            value,
            full_d1,
            full_d2,
            c_minus,
            c_plus,
            (-60.0, 60.0),
        )
    }
}

/// Convenience wrapper returning the geodesic metric at one time.
pub fn toric_geodesic(phi0: &RadialMetric, phi1: &RadialMetric, t: f64) -> Result<RadialMetric> {
    ToricGeodesic::new(phi0, phi1)?.at(t)
}

/// Natural cubic spline through sampled profile points, for file input.
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::InvalidInput(
                "profile needs at least 4 sample points".into(),
            ));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidInput(
                "profile sample x values must be strictly increasing".into(),
            ));
        }
        let n = points.len();
        let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
        // Tridiagonal solve for natural boundary conditions.
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut r = vec![0.0; n];
        b[0] = 1.0;
        b[n - 1] = 1.0;
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            r[i] = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
        }
        for i in 1..n {
            let w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            r[i] -= w * r[i - 1];
        }
        let mut second = vec![0.0; n];
        second[n - 1] = r[n - 1] / b[n - 1];
        for i in (0..n - 1).rev() {
            second[i] = (r[i] - c[i] * second[i + 1]) / b[i];
        }
        Ok(Self { xs, ys, second })
    }

    fn segment(&self, x: f64) -> usize {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return 0;
        }
        if x >= self.xs[n - 1] {
            return n - 2;
        }
        self.xs.partition_point(|&t| t < x).saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h
                / 6.0
    }

    pub fn deriv(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] || x >= self.xs[n - 1] {
            return 0.0;
        }
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        (self.ys[i + 1] - self.ys[i]) / h
            + ((3.0 * b * b - 1.0) * self.second[i + 1] - (3.0 * a * a - 1.0) * self.second[i]) * h
                / 6.0
    }

    pub fn second_deriv(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] || x >= self.xs[n - 1] {
            return 0.0;
        }
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.second[i] + b * self.second[i + 1]
    }
}

/// Metric from sampled profile points plus declared asymptotic constants.
pub fn metric_from_samples(
    degree: u32,
    points: &[(f64, f64)],
    c_minus: f64,
    c_plus: f64,
) -> Result<RadialMetric> {
    let spline = Arc::new(CubicSpline::new(points)?);
    let (s1, s2, s3) = (spline.clone(), spline.clone(), spline);
    RadialMetric::from_profile(
        degree,
        move |x| s1.eval(x),
        move |x| s2.deriv(x),
        move |x| s3.second_deriv(x),
        c_minus,
        c_plus,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(d: u32) -> RadialMetric {
        crate::catalog::profile("bump", d).unwrap()
    }

    fn asym(d: u32) -> RadialMetric {
        crate::catalog::profile("asymmetric", d).unwrap()
    }

    #[test]
    fn reference_metric_has_expected_shape() {
        let m = RadialMetric::zero(2);
        assert_eq!(m.sup_phi(), 0.0);
        assert!((m.moment(0.0) - 1.0).abs() < 1e-14);
        assert!((m.curvature(0.0) - 0.5).abs() < 1e-14);
        assert!(m.moment(-30.0) < 1e-11);
        assert!((m.moment(30.0) - 2.0).abs() < 1e-11);
    }

    #[test]
    fn non_convex_profile_is_rejected() {
        // A profile steep enough to overpower the reference curvature.
        let err = RadialMetric::from_profile(
            1,
            |x: f64| -2.0 * (-x * x / 2.0).exp(),
            |x: f64| 2.0 * x * (-x * x / 2.0).exp(),
            |x: f64| (2.0 - 2.0 * x * x) * (-x * x / 2.0).exp(),
            0.0,
            0.0,
        )
        .unwrap_err();
        assert!(err.to_string().contains("not admissible"), "{err}");
    }

    #[test]
    fn inverse_moment_round_trips() {
        let m = bump(2);
        for tau in [0.02, 0.5, 1.0, 1.7, 1.99] {
            let x = m.inverse_moment(tau);
            assert!((m.moment(x) - tau).abs() < 1e-10, "tau {tau}");
        }
    }

    #[test]
    fn symplectic_potential_matches_reference_closed_form() {
        let m = RadialMetric::zero(3);
        for tau in [0.3_f64, 1.5, 2.9] {
            let d = 3.0_f64;
            let expected = tau * (tau / d).ln() + (d - tau) * (1.0 - tau / d).ln();
            assert!((m.symplectic_potential(tau) - expected).abs() < 1e-11);
        }
    }

    #[test]
    fn geodesic_endpoints_reproduce_inputs() {
        let (a, b) = (bump(1), asym(1));
        let geo = ToricGeodesic::new(&a, &b).unwrap();
        for x in [-7.0, -1.0, 0.0, 2.5, 6.0] {
            let g0 = geo.at(1e-12).unwrap();
            let g1 = geo.at(1.0 - 1e-12).unwrap();
            assert!((g0.value(x) - a.value(x)).abs() < 1e-9, "x {x}");
            assert!((g1.value(x) - b.value(x)).abs() < 1e-9, "x {x}");
        }
    }

    #[test]
    fn geodesic_between_equal_metrics_is_constant() {
        let a = bump(2);
        let g = toric_geodesic(&a, &a, 0.37).unwrap();
        for x in [-5.0, -0.3, 1.9, 8.0] {
            assert!((g.value(x) - a.value(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn geodesic_between_constant_shifts_is_affine() {
        let a = RadialMetric::zero(1);
        let b = a.shift(0.8);
        let g = toric_geodesic(&a, &b, 0.25).unwrap();
        for x in [-4.0, 0.0, 3.0] {
            assert!((g.value(x) - 0.2).abs() < 1e-10, "x {x} -> {}", g.value(x));
        }
        assert!((g.c_minus() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn geodesic_asymptotic_constants_interpolate() {
        let (a, b) = (bump(2), asym(2));
        let g = toric_geodesic(&a, &b, 0.5).unwrap();
        assert!((g.c_minus() - 0.5 * (a.c_minus() + b.c_minus())).abs() < 1e-12);
        assert!((g.c_plus() - 0.5 * (a.c_plus() + b.c_plus())).abs() < 1e-12);
    }

    #[test]
    fn spline_metric_reproduces_samples() {
        let pts: Vec<(f64, f64)> = (0..200)
            .map(|k| {
                let x = -20.0 + 40.0 * k as f64 / 199.0;
                (x, 0.1 * (-x * x / 8.0).exp())
            })
            .collect();
        let m = metric_from_samples(1, &pts, 0.0, 0.0).unwrap();
        for &(x, y) in pts.iter().step_by(17) {
            assert!((m.value(x) - y).abs() < 1e-12);
        }
        assert!(m.sup_phi() > 0.099 && m.sup_phi() < 0.101);
    }

    #[test]
    fn scaling_shrinks_profile_and_shift_translates() {
        let m = bump(2);
        let half = m.scale(0.5).unwrap();
        assert!((half.value(0.4) - 0.5 * m.value(0.4)).abs() < 1e-14);
        assert!((half.sup_phi() - 0.5 * m.sup_phi()).abs() < 1e-12);
        let up = m.shift(1.5);
        assert!((up.value(0.4) - m.value(0.4) - 1.5).abs() < 1e-14);
        assert!((up.sup_phi() - m.sup_phi() - 1.5).abs() < 1e-12);
    }
}
