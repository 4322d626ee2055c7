//! Entrywise margins of the quantized maximum principle: the geometric
//! interpolation of endpoint Hilbert forms stays below the Hilbert forms of
//! the metric geodesic, with exact equality at the endpoints.

use deltakit::bergman::max_principle_check;
use deltakit::catalog;
use deltakit::quad::QuadratureScheme;

fn main() {
    let q = QuadratureScheme::default();
    let t_grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    for d in [1u32, 2] {
        let phi0 = catalog::profile("zero", d).unwrap();
        let phi1 = catalog::profile("bump", d).unwrap();
        println!("zero vs bump, degree {d}:");
        for m in [2u32, 4, 8] {
            let report = max_principle_check(&phi0, &phi1, m, &t_grid, &q).unwrap();
            print!("  m = {m}: margins ");
            for (t, margin) in &report.per_t {
                print!("({t:.1}: {margin:+.2e}) ");
            }
            println!("\n         min = {:+.3e}", report.min_margin);
        }
    }
}
