//! Quantization of radial metrics: Hilbert forms on spaces of sections,
//! Fubini-Study projections, quantized energy, Bergman geodesics, and the
//! numerical checkers for the identities and inequalities relating the
//! quantized objects to their transcendental limits.
//!
//! Sections of the level-m polarization on the line are the monomials z^j,
//! j = 0..md, and for radial metrics every inner product is diagonal in this
//! basis with weights h_j = int exp(j x - m Phi(x)) rho(x) dx.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::QuadratureScheme;
use crate::radial::{logistic, reference_density, softplus, RadialMetric};

#[derive(Debug, Clone)]
pub enum FormData {
    /// Diagonal weights in the monomial basis, the radial case.
    Diagonal(Vec<f64>),
    /// A full symmetric positive-definite Gram matrix.
    Dense(DMatrix<f64>),
}

/// An inner product on the level-m sections of the degree-d polarization.
#[derive(Debug, Clone)]
pub struct HermitianForm {
    level: u32,
    degree: u32,
    data: FormData,
}

impl HermitianForm {
    pub fn diagonal(level: u32, degree: u32, weights: Vec<f64>) -> Result<Self> {
        let dim = (level * degree + 1) as usize;
        if weights.len() != dim {
            return Err(Error::LevelMismatch(format!(
                "expected {dim} weights at level {level}, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::NotAdmissible(
                "diagonal form has a nonpositive weight".into(),
            ));
        }
        Ok(Self {
            level,
            degree,
            data: FormData::Diagonal(weights),
        })
    }

    pub fn dense(level: u32, degree: u32, matrix: DMatrix<f64>) -> Result<Self> {
        let dim = (level * degree + 1) as usize;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::LevelMismatch(format!(
                "expected a {dim}x{dim} matrix at level {level}"
            )));
        }
        let sym_defect = (&matrix - matrix.transpose()).abs().max();
        if sym_defect > 1e-10 * matrix.abs().max().max(1.0) {
            return Err(Error::NotAdmissible("form matrix is not symmetric".into()));
        }
        if nalgebra::linalg::Cholesky::new(matrix.clone()).is_none() {
            return Err(Error::NotAdmissible(
                "form matrix is not positive-definite".into(),
            ));
        }
        Ok(Self {
            level,
            degree,
            data: FormData::Dense(matrix),
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        (self.level * self.degree + 1) as usize
    }

    pub fn data(&self) -> &FormData {
        &self.data
    }

    pub fn diagonal_weights(&self) -> Option<&[f64]> {
        match &self.data {
            FormData::Diagonal(w) => Some(w),
            FormData::Dense(_) => None,
        }
    }

    /// Log determinant, computed as a sum of logs to avoid overflow.
    pub fn log_det(&self) -> f64 {
        match &self.data {
            FormData::Diagonal(w) => w.iter().map(|h| h.ln()).sum(),
            FormData::Dense(m) => {
                let chol = nalgebra::linalg::Cholesky::new(m.clone())
                    .expect("validated positive-definite");
                2.0 * chol.l().diagonal().iter().map(|l| l.ln()).sum::<f64>()
            }
        }
    }

    /// Multiplies the form by a positive scalar.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::NotAdmissible("scale factor must be positive".into()));
        }
        let data = match &self.data {
            FormData::Diagonal(w) => FormData::Diagonal(w.iter().map(|h| h * factor).collect()),
            FormData::Dense(m) => FormData::Dense(m * factor),
        };
        Ok(Self {
            level: self.level,
            degree: self.degree,
            data,
        })
    }

    fn to_dense(&self) -> DMatrix<f64> {
        match &self.data {
            FormData::Diagonal(w) => {
                DMatrix::from_diagonal(&nalgebra::DVector::from_vec(w.clone()))
            }
            FormData::Dense(m) => m.clone(),
        }
    }
}

/// A metric in the level-m Bergman space together with its generating form.
#[derive(Debug, Clone)]
pub struct BergmanMetric {
    form: HermitianForm,
    metric: RadialMetric,
}

impl BergmanMetric {
    pub fn level(&self) -> u32 {
        self.form.level()
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn metric(&self) -> &RadialMetric {
        &self.metric
    }
}

/// The Hilbert form of a radial metric at level m: diagonal weights
/// h_j = int e^{j x - m Phi(x)} rho(x) dx with rho the reference density.
pub fn hilbert_form(
    phi: &RadialMetric,
    m: u32,
    scheme: &QuadratureScheme,
) -> Result<HermitianForm> {
    if m == 0 {
        return Err(Error::LevelMismatch("level must be positive".into()));
    }
    let d = phi.degree();
    let dim = phi.section_dim(m);
    let weights: Vec<f64> = (0..dim)
        .into_par_iter()
        .map(|j| {
            let tag = format!("hilbert[j={j},m={m}]");
            let q = scheme.integrate(&tag, |x| {
                let log_integrand =
                    j as f64 * x - m as f64 * phi.full_potential(x) + reference_density(d, x).ln();
                log_integrand.exp()
            })?;
            Ok(q.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    if weights.iter().any(|h| !h.is_finite() || *h <= 0.0) {
        return Err(Error::NotAdmissible(
            "profile not admissible: Hilbert weight overflowed or vanished".into(),
        ));
    }
    HermitianForm::diagonal(m, d, weights)
}

/// Fubini-Study potential of a diagonal form given by the logs of its
/// weights, usable directly when the weights themselves would underflow.
pub fn fs_metric_from_log_weights(m: u32, degree: u32, lw: Vec<f64>) -> Result<RadialMetric> {
    let dim = (m * degree + 1) as usize;
    if lw.len() != dim {
        return Err(Error::LevelMismatch(format!(
            "expected {dim} log weights at level {m}"
        )));
    }
    if lw.iter().any(|l| !l.is_finite()) {
        return Err(Error::NotAdmissible("log weight not finite".into()));
    }
    let mf = m as f64;
    let df = degree as f64;
    let c_minus = -lw[0] / mf;
    let c_plus = -lw[dim - 1] / mf;
    let lw1 = lw.clone();
    let lw2 = lw.clone();
    let lw3 = lw;
    let value = move |x: f64| {
        let mut best = f64::NEG_INFINITY;
        for (j, l) in lw1.iter().enumerate() {
            best = best.max(j as f64 * x - l);
        }
        let sum: f64 = lw1
            .iter()
            .enumerate()
            .map(|(j, l)| (j as f64 * x - l - best).exp())
            .sum();
        (best + sum.ln()) / mf - df * softplus(x)
    };
    // Two-pass softmax moments: the centered variance survives far from the
    // dominant monomial, where s2/z - mean^2 would cancel.
    let moments = move |lw: &[f64], x: f64| -> (f64, f64) {
        let mut best = f64::NEG_INFINITY;
        for (j, l) in lw.iter().enumerate() {
            best = best.max(j as f64 * x - l);
        }
        let (mut z, mut s1) = (0.0, 0.0);
        for (j, l) in lw.iter().enumerate() {
            let p = (j as f64 * x - l - best).exp();
            z += p;
            s1 += j as f64 * p;
        }
        let mean = s1 / z;
        let mut var = 0.0;
        for (j, l) in lw.iter().enumerate() {
            let p = (j as f64 * x - l - best).exp();
            var += (j as f64 - mean) * (j as f64 - mean) * p;
        }
        (mean, var / z)
    };
    let d1 = move |x: f64| moments(&lw2, x).0 / mf;
    let d2 = move |x: f64| moments(&lw3, x).1 / mf;
    RadialMetric::from_closures(
        degree,
        std::sync::Arc::new(value),
        std::sync::Arc::new(d1),
        std::sync::Arc::new(d2),
        c_minus,
        c_plus,
        (-60.0, 60.0),
    )
}

/// The Fubini-Study metric of a positive form: the Bergman-space potential
/// (1/m) log of the section-norm sum for any orthonormal basis.
pub fn fubini_study(form: &HermitianForm) -> Result<BergmanMetric> {
    let m = form.level();
    let d = form.degree();
    let mf = m as f64;
    let df = d as f64;
    let metric = match &form.data {
        FormData::Diagonal(w) => {
            let lw: Vec<f64> = w.iter().map(|h| h.ln()).collect();
            fs_metric_from_log_weights(m, d, lw)?
        }
        FormData::Dense(mat) => {
            let chol = nalgebra::linalg::Cholesky::new(mat.clone())
                .ok_or_else(|| Error::NotAdmissible("form is not positive-definite".into()))?;
            let inv = chol.inverse();
            let dim = form.dim();
            let c_minus = inv[(0, 0)].ln() / mf;
            let c_plus = inv[(dim - 1, dim - 1)].ln() / mf;
            let inv1 = inv.clone();
            let eval = move |inv: &DMatrix<f64>, x: f64| -> (f64, f64, f64) {
                // Scaled section vector u_j = exp((a_j - M)/2) with
                // a_j = j x - m d softplus(x).
                let base = -mf * df * softplus(x);
                let mut big = f64::NEG_INFINITY;
                for j in 0..dim {
                    big = big.max(j as f64 * x + base);
                }
                let u = nalgebra::DVector::from_iterator(
                    dim,
                    (0..dim).map(|j| (0.5 * (j as f64 * x + base - big)).exp()),
                );
                let au = inv * &u;
                let w = u.dot(&au);
                let slope: Vec<f64> = (0..dim).map(|j| j as f64 - mf * df * logistic(x)).collect();
                let curv = -mf * df * logistic(x) * logistic(-x);
                let q1 = nalgebra::DVector::from_iterator(dim, (0..dim).map(|j| u[j] * slope[j]));
                let g = big + w.ln();
                let g1 = q1.dot(&au) / w;
                // Centered second derivative: with c_j = a_j' - g1 the
                // mixed term <c_j + c_k> vanishes, avoiding the g1^2
                // cancellation far from the dominant monomial.
                let r =
                    nalgebra::DVector::from_iterator(dim, (0..dim).map(|j| u[j] * (slope[j] - g1)));
                let s = nalgebra::DVector::from_iterator(
                    dim,
                    (0..dim).map(|j| u[j] * (slope[j] - g1) * (slope[j] - g1)),
                );
                let ar = inv * &r;
                let g2 = (0.5 * s.dot(&au) + 0.5 * r.dot(&ar)) / w + curv;
                (g, g1, g2)
            };
            let inv2 = inv.clone();
            let inv3 = inv;
            let value = move |x: f64| eval(&inv1, x).0 / mf - df * softplus(x);
            let d1 = move |x: f64| {
                let (_, g1, _) = eval(&inv2, x);
                g1 / mf + df * logistic(x)
            };
            let d2 = move |x: f64| {
                let (_, _, g2) = eval(&inv3, x);
                g2 / mf + df * logistic(x) * logistic(-x)
            };
            RadialMetric::from_closures(
                d,
                std::sync::Arc::new(value),
                std::sync::Arc::new(d1),
                std::sync::Arc::new(d2),
                c_minus,
                c_plus,
                (-60.0, 60.0),
            )?
        }
    };
    Ok(BergmanMetric {
        form: form.clone(),
        metric,
    })
}

/// Quantized energy of a Bergman metric against a reference form at the same
/// level: the normalized log-determinant ratio.
pub fn quantized_energy(b: &BergmanMetric, reference: &HermitianForm) -> Result<f64> {
    if b.form.level() != reference.level() || b.form.degree() != reference.degree() {
        return Err(Error::LevelMismatch(format!(
            "form levels ({}, {}) or degrees ({}, {}) differ",
            b.form.level(),
            reference.level(),
            b.form.degree(),
            reference.degree()
        )));
    }
    let m = reference.level() as f64;
    let dm = reference.dim() as f64;
    Ok((reference.log_det() - b.form.log_det()) / (m * dm))
}

/// The geodesic of inner products: entrywise geometric interpolation for
/// diagonal forms, simultaneous diagonalization in general.
pub fn bergman_geodesic(h0: &HermitianForm, h1: &HermitianForm, t: f64) -> Result<HermitianForm> {
    if h0.level() != h1.level() || h0.degree() != h1.degree() {
        return Err(Error::LevelMismatch(
            "geodesic endpoints live at different levels".into(),
        ));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::NotAdmissible(format!(
            "geodesic time {t} outside [0,1]"
        )));
    }
    match (&h0.data, &h1.data) {
        (FormData::Diagonal(a), FormData::Diagonal(b)) => {
            let w = a
                .iter()
                .zip(b)
                .map(|(x, y)| x.powf(1.0 - t) * y.powf(t))
                .collect();
            HermitianForm::diagonal(h0.level(), h0.degree(), w)
        }
        _ => {
            let a = h0.to_dense();
            let b = h1.to_dense();
            let chol = nalgebra::linalg::Cholesky::new(a)
                .ok_or_else(|| Error::NotAdmissible("form is not positive-definite".into()))?;
            let l = chol.l();
            let l_inv = l
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::NotAdmissible("singular Cholesky factor".into()))?;
            let mid = &l_inv * b * l_inv.transpose();
            let sym = nalgebra::linalg::SymmetricEigen::new(mid);
            let powered = DMatrix::from_diagonal(&sym.eigenvalues.map(|ev| ev.powf(t)));
            let q = sym.eigenvectors;
            let result = &l * &q * powered * q.transpose() * l.transpose();
            // Symmetrize away rounding noise.
            let sym_result = (&result + result.transpose()) * 0.5;
            HermitianForm::dense(h0.level(), h0.degree(), sym_result)
        }
    }
}

/// Monge-Ampere energy of a radial metric, normalized so a constant shift
/// of the profile shifts the energy by the same constant.
pub fn ma_energy(phi: &RadialMetric, scheme: &QuadratureScheme) -> Result<f64> {
    let v = phi.degree() as f64;
    let d = phi.degree();
    let mean = scheme.integrate("energy[phi rho]", |x| {
        phi.value(x) * reference_density(d, x)
    })?;
    let dirichlet = scheme.integrate("energy[grad]", |x| {
        let g = phi.deriv(x);
        g * g
    })?;
    Ok((2.0 * mean.value - dirichlet.value) / (2.0 * v))
}

/// Relative defect of the section-count identity
/// int e^{m (FS(H_m(phi)) - phi)} rho dx = dim.
pub fn partition_identity_check(
    phi: &RadialMetric,
    m: u32,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    let form = hilbert_form(phi, m, scheme)?;
    let projected = fubini_study(&form)?;
    let d = phi.degree();
    let dm = phi.section_dim(m) as f64;
    let q = scheme.integrate("partition", |x| {
        let log_integrand =
            m as f64 * (projected.metric.value(x) - phi.value(x)) + reference_density(d, x).ln();
        log_integrand.exp()
    })?;
    Ok((q.value - dm).abs() / dm)
}

/// Entrywise margins of the quantized maximum principle along the geodesic
/// between two radial metrics: the Bergman geodesic of the endpoint Hilbert
/// forms stays below the Hilbert forms of the metric geodesic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaxPrincipleReport {
    pub level: u32,
    /// (t, min over entries of log Hilb_j(phi_t) - log geodesic_j(t)).
    pub per_t: Vec<(f64, f64)>,
    pub min_margin: f64,
}

pub fn max_principle_check(
    phi0: &RadialMetric,
    phi1: &RadialMetric,
    m: u32,
    t_grid: &[f64],
    scheme: &QuadratureScheme,
) -> Result<MaxPrincipleReport> {
    let h0 = hilbert_form(phi0, m, scheme)?;
    let h1 = hilbert_form(phi1, m, scheme)?;
    let lw0: Vec<f64> = h0
        .diagonal_weights()
        .unwrap()
        .iter()
        .map(|h| h.ln())
        .collect();
    let lw1: Vec<f64> = h1
        .diagonal_weights()
        .unwrap()
        .iter()
        .map(|h| h.ln())
        .collect();
    let geo = crate::radial::ToricGeodesic::new(phi0, phi1)?;
    let per_t: Vec<(f64, f64)> = t_grid
        .par_iter()
        .map(|&t| {
            let phi_t = geo.at(t)?;
            let ht = hilbert_form(&phi_t, m, scheme)?;
            let margin = ht
                .diagonal_weights()
                .unwrap()
                .iter()
                .zip(lw0.iter().zip(&lw1))
                .map(|(h, (l0, l1))| h.ln() - ((1.0 - t) * l0 + t * l1))
                .fold(f64::INFINITY, f64::min);
            Ok((t, margin))
        })
        .collect::<Result<Vec<_>>>()?;
    let min_margin = per_t.iter().map(|(_, m)| *m).fold(f64::INFINITY, f64::min);
    Ok(MaxPrincipleReport {
        level: m,
        per_t,
        min_margin,
    })
}

/// Margins of the two-sided comparison between the energy and the quantized
/// energy at one level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SandwichMargins {
    pub m: u32,
    /// E_m(((1-eps) phi)^(m)) + eps sup phi - E(phi), expected >= 0 for
    /// large m.
    pub lower: f64,
    /// (1-eps) E(psi) + eps sup psi + eps - E_m(psi) on the projection
    /// psi = phi^(m), expected >= 0 for large m.
    pub upper: f64,
}

pub fn energy_sandwich_check(
    phi: &RadialMetric,
    eps: f64,
    m: u32,
    scheme: &QuadratureScheme,
) -> Result<SandwichMargins> {
    if !(0.0 < eps && eps < 1.0) {
        return Err(Error::NotAdmissible(format!("epsilon {eps} outside (0,1)")));
    }
    let reference = hilbert_form(&RadialMetric::zero(phi.degree()), m, scheme)?;
    let energy = ma_energy(phi, scheme)?;

    let scaled = phi.scale(1.0 - eps)?;
    let lower_proj = fubini_study(&hilbert_form(&scaled, m, scheme)?)?;
    let em_lower = quantized_energy(&lower_proj, &reference)?;
    let lower = em_lower + eps * phi.sup_phi() - energy;

    let psi = fubini_study(&hilbert_form(phi, m, scheme)?)?;
    let em_psi = quantized_energy(&psi, &reference)?;
    let e_psi = ma_energy(psi.metric(), scheme)?;
    let upper = (1.0 - eps) * e_psi + eps * psi.metric().sup_phi() + eps - em_psi;

    Ok(SandwichMargins { m, lower, upper })
}

/// Sweep of the sandwich margins over levels, reporting the empirical
/// threshold above which both margins stay nonnegative.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SandwichReport {
    pub epsilon: f64,
    pub margins: Vec<SandwichMargins>,
    /// Smallest swept level from which on every margin clears -tolerance.
    pub empirical_m0: Option<u32>,
}

pub fn energy_sandwich_sweep(
    phi: &RadialMetric,
    eps: f64,
    ms: &[u32],
    scheme: &QuadratureScheme,
    tolerance: f64,
) -> Result<SandwichReport> {
    let margins: Vec<SandwichMargins> = ms
        .par_iter()
        .map(|&m| energy_sandwich_check(phi, eps, m, scheme))
        .collect::<Result<Vec<_>>>()?;
    let empirical_m0 = margins
        .iter()
        .enumerate()
        .find(|(i, _)| {
            margins[*i..]
                .iter()
                .all(|s| s.lower >= -tolerance && s.upper >= -tolerance)
        })
        .map(|(i, _)| margins[i].m);
    Ok(SandwichReport {
        epsilon: eps,
        margins,
        empirical_m0,
    })
}

/// Flatness of the normalized Bergman section density.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityReport {
    pub m: u32,
    /// sup over x of |rho_m(x)/d_m - 1/V|; tends to the curvature
    /// discrepancy sup |omega_phi/omega - 1| / V, zero exactly for the
    /// reference metric.
    pub sup_deviation: f64,
    /// sup over x of |rho_m(x)/d_m - (omega_phi/omega)(x)/V|, the defect of
    /// the first-order kernel expansion; decreases with the level.
    pub expansion_deviation: f64,
    /// |int rho_m rho dx - d_m| / d_m.
    pub mass_residual: f64,
}

pub fn bergman_density(
    phi: &RadialMetric,
    m: u32,
    scheme: &QuadratureScheme,
) -> Result<DensityReport> {
    let form = hilbert_form(phi, m, scheme)?;
    let lw: Vec<f64> = form
        .diagonal_weights()
        .unwrap()
        .iter()
        .map(|h| h.ln())
        .collect();
    let d = phi.degree();
    let v = d as f64;
    let dm = form.dim() as f64;
    let density = move |phi: &RadialMetric, lw: &[f64], x: f64| -> f64 {
        let mphi = m as f64 * phi.full_potential(x);
        lw.iter()
            .enumerate()
            .map(|(j, l)| (j as f64 * x - mphi - l).exp())
            .sum()
    };
    let mut sup_dev: f64 = 0.0;
    let mut exp_dev: f64 = 0.0;
    let n = 4001;
    for k in 0..n {
        let x = -44.0 + 88.0 * k as f64 / (n - 1) as f64;
        let value = density(phi, &lw, x) / dm;
        sup_dev = sup_dev.max((value - 1.0 / v).abs());
        let curvature_ratio = phi.curvature(x) / reference_density(d, x);
        exp_dev = exp_dev.max((value - curvature_ratio / v).abs());
    }
    let mass = scheme.integrate("bergman-density", |x| {
        density(phi, &lw, x) * reference_density(d, x)
    })?;
    Ok(DensityReport {
        m,
        sup_deviation: sup_dev,
        expansion_deviation: exp_dev,
        mass_residual: (mass.value - dm).abs() / dm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn scheme() -> QuadratureScheme {
        QuadratureScheme::default()
    }

    /// Closed-form reference weights: h_j = d B(j+1, md-j+1) for the zero
    /// profile of degree d at level m.
    fn beta_weights(d: u32, m: u32) -> Vec<f64> {
        let n = (m * d) as usize;
        (0..=n)
            .map(|j| {
                // d * j! (n-j)! / (n+1)!
                let mut ln = 0.0_f64;
                for k in 1..=j {
                    ln += (k as f64).ln();
                }
                for k in 1..=(n - j) {
                    ln += (k as f64).ln();
                }
                for k in 1..=(n + 1) {
                    ln -= (k as f64).ln();
                }
                d as f64 * ln.exp()
            })
            .collect()
    }

    #[test]
    fn hilbert_form_of_reference_metric_is_beta_integrals() {
        for (d, m) in [(1u32, 1u32), (1, 2), (2, 3)] {
            let phi = RadialMetric::zero(d);
            let h = hilbert_form(&phi, m, &scheme()).unwrap();
            let expected = beta_weights(d, m);
            for (got, want) in h.diagonal_weights().unwrap().iter().zip(&expected) {
                assert!((got - want).abs() < 1e-10 * want, "{got} vs {want}");
            }
        }
        // Degree 1, level 1: diag(1/2, 1/2).
        let h = hilbert_form(&RadialMetric::zero(1), 1, &scheme()).unwrap();
        for w in h.diagonal_weights().unwrap() {
            assert!((w - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn hilbert_form_shift_equivariance() {
        let phi = catalog::profile("bump", 1).unwrap();
        let m = 3;
        let h = hilbert_form(&phi, m, &scheme()).unwrap();
        let hc = hilbert_form(&phi.shift(0.7), m, &scheme()).unwrap();
        let factor = (-(m as f64) * 0.7).exp();
        for (a, b) in h
            .diagonal_weights()
            .unwrap()
            .iter()
            .zip(hc.diagonal_weights().unwrap())
        {
            assert!((b - a * factor).abs() < 1e-12 * a.max(*b));
        }
    }

    #[test]
    fn fubini_study_scaling_shifts_profile() {
        let phi = catalog::profile("asymmetric", 2).unwrap();
        let m = 2;
        let h = hilbert_form(&phi, m, &scheme()).unwrap();
        let c = 0.45;
        let scaled = h.scale((-(m as f64) * c).exp()).unwrap();
        let a = fubini_study(&h).unwrap();
        let b = fubini_study(&scaled).unwrap();
        for x in [-6.0, -1.0, 0.0, 2.0, 7.0] {
            assert!(
                (b.metric().value(x) - a.metric().value(x) - c).abs() < 1e-12,
                "x {x}"
            );
        }
    }

    #[test]
    fn fubini_study_is_basis_independent() {
        // Norm sums from two different orthonormal bases of the same form
        // agree pointwise: R = Q H^{-1/2} for any orthogonal Q.
        let phi = catalog::profile("bump", 1).unwrap();
        let m = 3;
        let h = hilbert_form(&phi, m, &scheme()).unwrap();
        let w = h.diagonal_weights().unwrap();
        let dim = w.len();
        // A deterministic orthogonal matrix from Givens rotations.
        let mut q = DMatrix::<f64>::identity(dim, dim);
        for i in 0..dim - 1 {
            let angle = 0.3 + 0.2 * i as f64;
            let mut g = DMatrix::<f64>::identity(dim, dim);
            g[(i, i)] = angle.cos();
            g[(i + 1, i + 1)] = angle.cos();
            g[(i, i + 1)] = -angle.sin();
            g[(i + 1, i)] = angle.sin();
            q *= g;
        }
        let r_rows: Vec<Vec<f64>> = (0..dim)
            .map(|i| (0..dim).map(|j| q[(i, j)] / w[j].sqrt()).collect())
            .collect();
        let d = 1u32;
        for x in [-3.0_f64, -0.5, 0.0, 1.2, 4.0] {
            let base = -(m as f64) * reference_potential_local(d, x);
            // Direct diagonal sum.
            let direct: f64 = (0..dim).map(|j| ((j as f64) * x + base).exp() / w[j]).sum();
            // Rotated orthonormal basis sum.
            let rotated: f64 = r_rows
                .iter()
                .map(|row| {
                    let s: f64 = row
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c * (0.5 * ((j as f64) * x + base)).exp())
                        .sum();
                    s * s
                })
                .sum();
            assert!(
                ((direct - rotated) / direct).abs() < 1e-12,
                "x {x}: {direct} vs {rotated}"
            );
        }
    }

    fn reference_potential_local(d: u32, x: f64) -> f64 {
        d as f64 * softplus(x)
    }

    #[test]
    fn quantized_energy_examples() {
        let phi = RadialMetric::zero(1);
        let m = 2;
        let h = hilbert_form(&phi, m, &scheme()).unwrap();
        let b = fubini_study(&h).unwrap();
        assert!(quantized_energy(&b, &h).unwrap().abs() < 1e-14);

        // Scaling the form by e^{-mc} shifts the energy by c.
        let c = 0.8;
        let scaled = fubini_study(&h.scale((-(m as f64) * c).exp()).unwrap()).unwrap();
        assert!((quantized_energy(&scaled, &h).unwrap() - c).abs() < 1e-12);

        // Explicit determinant check for h_j = e^{-j}.
        let dm = 3usize;
        let w: Vec<f64> = (0..dm).map(|j| (-(j as f64)).exp()).collect();
        let hd = HermitianForm::diagonal(m, 1, w).unwrap();
        let b = fubini_study(&hd).unwrap();
        let expected = (h.log_det() + 3.0) / (m as f64 * dm as f64);
        assert!((quantized_energy(&b, &h).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn bergman_geodesic_interpolates_geometrically() {
        let h0 = HermitianForm::diagonal(1, 1, vec![1.0, 1.0]).unwrap();
        let h1 = HermitianForm::diagonal(1, 1, vec![(2.0_f64).exp(), (4.0_f64).exp()]).unwrap();
        let mid = bergman_geodesic(&h0, &h1, 0.5).unwrap();
        let w = mid.diagonal_weights().unwrap();
        assert!((w[0] - 1.0_f64.exp()).abs() < 1e-12);
        assert!((w[1] - 2.0_f64.exp()).abs() < 1e-12);
        let start = bergman_geodesic(&h0, &h1, 0.0).unwrap();
        assert_eq!(start.diagonal_weights().unwrap(), &[1.0, 1.0]);
    }

    #[test]
    fn dense_and_diagonal_geodesics_agree() {
        let a = HermitianForm::diagonal(1, 2, vec![0.5, 1.5, 3.0]).unwrap();
        let b = HermitianForm::diagonal(1, 2, vec![2.0, 0.25, 1.0]).unwrap();
        let dense_a = HermitianForm::dense(1, 2, a.to_dense()).unwrap();
        let t = 0.3;
        let diag = bergman_geodesic(&a, &b, t).unwrap();
        let dense = bergman_geodesic(&dense_a, &b, t).unwrap();
        let m = dense.to_dense();
        for (i, w) in diag.diagonal_weights().unwrap().iter().enumerate() {
            assert!((m[(i, i)] - w).abs() < 1e-12);
        }
        // Off-diagonals stay zero.
        assert!(m[(0, 1)].abs() < 1e-12 && m[(0, 2)].abs() < 1e-12);
    }

    #[test]
    fn quantized_energy_is_affine_along_bergman_geodesics() {
        let phi0 = catalog::profile("bump", 2).unwrap();
        let phi1 = catalog::profile("asymmetric", 2).unwrap();
        let m = 4;
        let h0 = hilbert_form(&phi0, m, &scheme()).unwrap();
        let h1 = hilbert_form(&phi1, m, &scheme()).unwrap();
        let reference = hilbert_form(&RadialMetric::zero(2), m, &scheme()).unwrap();
        let em =
            |h: &HermitianForm| (reference.log_det() - h.log_det()) / (m as f64 * h.dim() as f64);
        let (ea, eb) = (em(&h0), em(&h1));
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let ht = bergman_geodesic(&h0, &h1, t).unwrap();
            let chord = (1.0 - t) * ea + t * eb;
            assert!((em(&ht) - chord).abs() < 1e-12, "t {t}");
        }
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let h1 = hilbert_form(&RadialMetric::zero(1), 1, &scheme()).unwrap();
        let h2 = hilbert_form(&RadialMetric::zero(1), 2, &scheme()).unwrap();
        assert!(bergman_geodesic(&h1, &h2, 0.5).is_err());
        let b = fubini_study(&h2).unwrap();
        assert!(quantized_energy(&b, &h1).is_err());
    }

    #[test]
    fn ma_energy_of_constants() {
        let q = scheme();
        assert!(ma_energy(&RadialMetric::zero(2), &q).unwrap().abs() < 1e-12);
        let c = 1.3;
        let shifted = RadialMetric::zero(2).shift(c);
        assert!((ma_energy(&shifted, &q).unwrap() - c).abs() < 1e-11);
        let bump = catalog::profile("bump", 1).unwrap();
        let e = ma_energy(&bump, &q).unwrap();
        let e_shift = ma_energy(&bump.shift(c), &q).unwrap();
        assert!((e_shift - e - c).abs() < 1e-11);
    }

    #[test]
    fn partition_identity_on_reference_and_shift_invariance() {
        let q = scheme();
        let phi = RadialMetric::zero(1);
        let r = partition_identity_check(&phi, 2, &q).unwrap();
        assert!(r < 1e-8, "residual {r}");
        let bump = catalog::profile("bump", 1).unwrap();
        let r1 = partition_identity_check(&bump, 4, &q).unwrap();
        let r2 = partition_identity_check(&bump.shift(0.9), 4, &q).unwrap();
        assert!(r1 < 1e-8 && r2 < 1e-8);
        assert!((r1 - r2).abs() < 1e-9);
    }

    #[test]
    fn form_monotonicity_reverses_under_fubini_study() {
        let phi = catalog::profile("bump", 1).unwrap();
        let m = 2;
        let h = hilbert_form(&phi, m, &scheme()).unwrap();
        let bigger = h.scale(1.5).unwrap();
        let a = fubini_study(&h).unwrap();
        let b = fubini_study(&bigger).unwrap();
        for x in [-4.0, 0.0, 3.0] {
            assert!(a.metric().value(x) >= b.metric().value(x));
        }
    }

    #[test]
    fn max_principle_margins_on_a_small_case() {
        let q = scheme();
        let phi0 = RadialMetric::zero(1);
        let phi1 = catalog::profile("bump", 1).unwrap();
        let r = max_principle_check(&phi0, &phi1, 2, &[0.0, 0.25, 0.5, 0.75, 1.0], &q).unwrap();
        assert!(r.min_margin >= -1e-9, "margin {}", r.min_margin);
        // Exact zeros at the endpoints.
        assert_eq!(r.per_t[0].1, 0.0);
        assert_eq!(r.per_t[4].1, 0.0);
        // Same metric twice: margin identically zero.
        let same = max_principle_check(&phi1, &phi1, 2, &[0.3, 0.6], &q).unwrap();
        assert!(same.min_margin.abs() < 1e-10);
    }

    #[test]
    fn sandwich_margins_for_constant_profiles_are_exact() {
        let q = scheme();
        let c = 0.6;
        let m = 2u32;
        let phi = RadialMetric::zero(1).shift(c);
        let s = energy_sandwich_check(&phi, 0.2, m, &q).unwrap();
        // Constants reduce both sides to translation bookkeeping: the lower
        // margin vanishes and the upper margin is epsilon plus the constant
        // value (1/m) ln(d_m / V) of the projected reference.
        let dm = (m + 1) as f64;
        let kappa = (dm / 1.0).ln() / m as f64;
        assert!(s.lower.abs() < 1e-10, "lower {}", s.lower);
        assert!((s.upper - 0.2 - kappa).abs() < 1e-10, "upper {}", s.upper);
        assert!(s.lower >= -1e-10 && s.upper >= 0.0);
    }

    #[test]
    fn bergman_density_is_flat_for_the_reference_metric() {
        let q = scheme();
        for m in [1u32, 4, 8] {
            let r = bergman_density(&RadialMetric::zero(1), m, &q).unwrap();
            assert!(r.sup_deviation < 1e-8, "m {m}: dev {}", r.sup_deviation);
            assert!(r.mass_residual < 1e-9, "m {m}: mass {}", r.mass_residual);
        }
    }

    #[test]
    fn idempotence_of_projection_at_fixed_level() {
        let q = scheme();
        let phi = catalog::profile("asymmetric", 1).unwrap();
        let m = 3;
        let b = fubini_study(&hilbert_form(&phi, m, &q).unwrap()).unwrap();
        let again = fubini_study(&hilbert_form(b.metric(), m, &q).unwrap()).unwrap();
        assert_eq!(again.form().dim(), b.form().dim());
        let r = partition_identity_check(b.metric(), m, &q).unwrap();
        assert!(r < 1e-8, "residual {r}");
    }
}
