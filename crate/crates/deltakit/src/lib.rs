//! Exact stability thresholds for polarized toric pairs, together with a
//! quantization laboratory for torus-invariant metrics on the projective
//! line.
//!
//! The algebraic half works over arbitrary-precision rationals: lattice
//! polytopes, normal fans, log discrepancies, expected vanishing orders and
//! the induced thresholds (delta, finite-level delta, alpha, slope, nef
//! threshold, a cscK existence criterion). The analytic half runs certified
//! 1-d quadrature on radial metric profiles: Hilbert forms, Fubini-Study
//! projections, quantized energies, Bergman and toric geodesics, and ray
//! probes that bracket the optimal integrability exponent for comparison
//! against the exact thresholds.
//!
//! See the `examples/` directory for one runnable demonstration per
//! capability, and the `deltakit` binary for batch jobs.
//!
//! ```
//! use deltakit::{catalog, delta_threshold, DeltaMode};
//! use deltakit::rat::rat_str;
//!
//! let pair = catalog::pair("P2:O(1)")?;
//! let report = delta_threshold(&pair, DeltaMode::Limit)?;
//! assert_eq!(rat_str(&report.value), "3/1");
//! # Ok::<(), deltakit::Error>(())
//! ```

pub mod bergman;
pub mod catalog;
pub mod energy;
pub mod error;
pub mod fan;
pub mod job;
pub mod linalg;
pub mod pair;
pub mod polytope;
pub mod quad;
pub mod radial;
pub mod rat;
pub mod thresholds;

pub use error::{Error, Result};
pub use fan::{normal_fan, FanData};
pub use pair::{PolarizedToricPair, ToricValuation};
pub use polytope::LatticePolytope;
pub use rat::Rat;
pub use thresholds::{
    alpha_threshold, csck_criterion, delta_threshold, nef_threshold, slope_mu, stability_report,
    DeltaMode, ThresholdReport,
};
