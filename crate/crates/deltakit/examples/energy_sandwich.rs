//! Two-sided comparison of the energy with its quantization over a sweep of
//! levels, reporting the empirical level from which both margins clear zero.

use deltakit::bergman::energy_sandwich_sweep;
use deltakit::catalog;
use deltakit::quad::QuadratureScheme;

fn main() {
    let q = QuadratureScheme::default();
    let eps = 0.2;
    let ms = [2u32, 4, 8, 16];
    for d in [1u32, 2] {
        for name in ["zero", "bump", "asymmetric"] {
            let phi = catalog::profile(name, d).unwrap();
            let sweep = energy_sandwich_sweep(&phi, eps, &ms, &q, 1e-6).unwrap();
            println!("profile {name}, degree {d} (epsilon = {eps}):");
            println!("  {:>3} {:>14} {:>14}", "m", "lower margin", "upper margin");
            for s in &sweep.margins {
                println!("  {:>3} {:>14.6e} {:>14.6e}", s.m, s.lower, s.upper);
            }
            match sweep.empirical_m0 {
                Some(m0) => println!("  empirical threshold: m0 = {m0}"),
                None => println!("  empirical threshold: not reached in sweep"),
            }
        }
    }
}
