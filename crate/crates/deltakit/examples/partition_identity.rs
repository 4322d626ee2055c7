//! The section-count identity and the Bergman density across levels: the
//! integral of e^{m (FS(H_m(phi)) - phi)} against the reference form equals
//! the section count, and the normalized density approaches the curvature
//! shape of the metric.

use deltakit::bergman::{bergman_density, partition_identity_check};
use deltakit::catalog;
use deltakit::quad::QuadratureScheme;

fn main() {
    let q = QuadratureScheme::default();
    for d in [1u32, 2] {
        for name in ["zero", "bump", "asymmetric"] {
            let phi = catalog::profile(name, d).unwrap();
            println!("profile {name}, degree {d}:");
            println!(
                "  {:>3} {:>14} {:>14} {:>14} {:>14}",
                "m", "partition", "mass", "dev(1/V)", "dev(expansion)"
            );
            for m in [2u32, 4, 8, 16] {
                let r = partition_identity_check(&phi, m, &q).unwrap();
                let dens = bergman_density(&phi, m, &q).unwrap();
                println!(
                    "  {:>3} {:>14.3e} {:>14.3e} {:>14.6} {:>14.6}",
                    m, r, dens.mass_residual, dens.sup_deviation, dens.expansion_deviation
                );
            }
        }
    }
}
