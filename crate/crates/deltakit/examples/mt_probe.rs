//! Integrability-exponent probe: along destabilizing rays, the large-s slope
//! of the uniform-integrability functional changes sign at an exponent that
//! brackets the exact algebraic threshold of the targeted valuation.

use deltakit::catalog;
use deltakit::energy::{mt_probe, RayDirection, RayParams, ThetaWeights};
use deltakit::quad::QuadratureScheme;

fn main() {
    let q = QuadratureScheme::default().with_tolerance(1e-10);
    for key in ["P1:O(1)", "P1:O(2)", "P1:O(2):theta[0]=1/2"] {
        let pair = catalog::pair(key).unwrap();
        let d = catalog::line_degree(&pair).unwrap();
        let theta = ThetaWeights::from_pair(&pair).unwrap();
        let rays = [
            RayParams::probe_default(d, RayDirection::TowardZero),
            RayParams::probe_default(d, RayDirection::TowardInfinity),
        ];
        let min_ref = rays
            .iter()
            .map(|r| r.reference_ratio(d, &theta))
            .fold(f64::INFINITY, f64::min);
        let grid: Vec<f64> = (1..=10).map(|k| 2.0 * min_ref * k as f64 / 10.0).collect();
        let report = mt_probe(&pair, &rays, &grid, 40.0, &q).unwrap();
        println!("{key}: exact threshold {min_ref}");
        for ray in &report.rays {
            println!(
                "  ray {:?} kink {:.2}: reference {:.4}, bracket {:?}",
                ray.params.direction, ray.params.kink, ray.reference_ratio, ray.delta_hat
            );
            print!("    slopes:");
            for s in &ray.slopes {
                print!(" ({:.3}: {:+.4})", s.lambda, s.slope);
            }
            println!();
            println!(
                "    Ding coercivity fit: D >= {:.4} (sup - E) {:+.4}",
                ray.ding_coercivity_fit.0, ray.ding_coercivity_fit.1
            );
        }
        match report.delta_hat {
            Some((lo, hi)) => println!(
                "  combined bracket [{lo:.5}, {hi:.5}], comparison flag {:.3e}\n",
                report.comparison_flag.unwrap()
            ),
            None => println!("  inconclusive\n"),
        }
    }
}
