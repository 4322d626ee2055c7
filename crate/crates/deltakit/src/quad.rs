//! Certified 1-d quadrature over the real line.
//!
//! Integrands here live in the logarithmic coordinate x = log|z|^2 and decay
//! exponentially at both ends, possibly with an integrable power weakening
//! from a klt weight. The line splits into a finite core and two tails; each
//! tail is compactified by the exponential substitution w = e^{kappa (x-a)}
//! matched to the decay exponent, so power-law endpoint behavior becomes a
//! bounded integrand on (0,1]. Every piece is integrated by a composite
//! Gauss-Legendre rule whose panel count doubles until two successive values
//! agree within tolerance; the final difference is the reported residual.

use crate::error::{Error, Result};

/// 10-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 10] = [
    -0.973_906_528_517_171_7,
    -0.865_063_366_688_984_5,
    -0.679_409_568_299_024_4,
    -0.433_395_394_129_247_2,
    -0.148_874_338_981_631_21,
    0.148_874_338_981_631_21,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL_WEIGHTS: [f64; 10] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
    0.295_524_224_714_752_87,
    0.269_266_719_309_996_35,
    0.219_086_362_515_982_04,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_14,
];

/// Integral value with its convergence residual.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct QuadratureScheme {
    /// Left end of the finite core; the left tail is substituted beyond it.
    pub x_lo: f64,
    pub x_hi: f64,
    /// Convergence tolerance, relative to max(1, |I|).
    pub tolerance: f64,
    /// Decay exponent at -infinity (1 - c for a klt weight of exponent c).
    pub kappa_lo: f64,
    pub kappa_hi: f64,
    pub init_panels: usize,
    pub max_doublings: u32,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        Self {
            x_lo: -44.0,
            x_hi: 44.0,
            tolerance: 1e-11,
            kappa_lo: 1.0,
            kappa_hi: 1.0,
            init_panels: 32,
            max_doublings: 12,
        }
    }
}

impl QuadratureScheme {
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        assert!(tol > 0.0, "tolerance must be positive");
        self.tolerance = tol;
        self
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        assert!(lo < hi);
        self.x_lo = lo;
        self.x_hi = hi;
        self
    }

    /// Tail exponents for integrals against a klt-weighted probability
    /// density with singularity exponents c0 at x = -inf and cinf at +inf.
    pub fn with_singularities(mut self, c0: f64, cinf: f64) -> Self {
        assert!((0.0..1.0).contains(&c0) && (0.0..1.0).contains(&cinf));
        self.kappa_lo = 1.0 - c0;
        self.kappa_hi = 1.0 - cinf;
        self
    }

    /// Slightly weakened tail exponents, for integrands carrying an extra
    /// slowly varying factor (a log term) on top of the exponential decay.
    pub fn with_tail_margin(mut self, factor: f64) -> Self {
        assert!(factor > 0.0 && factor <= 1.0);
        self.kappa_lo *= factor;
        self.kappa_hi *= factor;
        self
    }

    fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            let half = 0.5 * h;
            let mut local = 0.0;
            for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
                local += w * f(mid + half * x);
            }
            acc += local * half;
        }
        acc
    }

    fn adaptive<F: Fn(f64) -> f64>(&self, tag: &str, f: &F, a: f64, b: f64) -> Result<Quad> {
        let mut panels = self.init_panels;
        let mut prev = Self::composite(f, a, b, panels);
        for _ in 0..self.max_doublings {
            panels *= 2;
            let next = Self::composite(f, a, b, panels);
            let residual = (next - prev).abs();
            if residual <= self.tolerance * next.abs().max(1.0) {
                return Ok(Quad {
                    value: next,
                    residual,
                });
            }
            prev = next;
        }
        Err(Error::QuadratureFailure {
            tag: tag.to_string(),
            residual: (Self::composite(f, a, b, panels * 2) - prev).abs(),
        })
    }

    /// Integrates f over the whole line.
    pub fn integrate<F: Fn(f64) -> f64>(&self, tag: &str, f: F) -> Result<Quad> {
        let core = self.adaptive(&format!("{tag}[core]"), &f, self.x_lo, self.x_hi)?;
        let (k_lo, k_hi) = (self.kappa_lo, self.kappa_hi);
        let (x_lo, x_hi) = (self.x_lo, self.x_hi);
        // Left tail: x = x_lo + ln(w)/kappa, w in (0,1].
        let left = self.adaptive(
            &format!("{tag}[left-tail]"),
            &|w: f64| f(x_lo + w.ln() / k_lo) / (k_lo * w),
            0.0,
            1.0,
        )?;
        let right = self.adaptive(
            &format!("{tag}[right-tail]"),
            &|w: f64| f(x_hi - w.ln() / k_hi) / (k_hi * w),
            0.0,
            1.0,
        )?;
        Ok(Quad {
            value: core.value + left.value + right.value,
            residual: core.residual + left.residual + right.residual,
        })
    }

    /// Integrates over a finite interval only.
    pub fn integrate_interval<F: Fn(f64) -> f64>(
        &self,
        tag: &str,
        f: F,
        a: f64,
        b: f64,
    ) -> Result<Quad> {
        self.adaptive(tag, &f, a, b)
    }
}
