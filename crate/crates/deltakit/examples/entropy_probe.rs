//! Entropy coercivity probe: the ratio of the relative entropy to I - J
//! along a destabilizing ray converges to the targeted valuation's ratio up
//! to the exact geometric factor of the kink position.

use deltakit::catalog;
use deltakit::energy::{entropy_probe, RayDirection, RayParams};
use deltakit::quad::QuadratureScheme;

fn main() {
    let q = QuadratureScheme::default().with_tolerance(1e-10);
    let s_grid = [60.0, 90.0, 120.0, 160.0, 200.0];
    for key in ["P1:O(1)", "P1:O(2)", "P1:O(2):theta[0]=1/2"] {
        let pair = catalog::pair(key).unwrap();
        let d = catalog::line_degree(&pair).unwrap();
        println!("{key}:");
        for direction in [RayDirection::TowardZero, RayDirection::TowardInfinity] {
            let params = RayParams::probe_default(d, direction);
            let r = entropy_probe(&pair, params, &s_grid, &q).unwrap();
            print!("  {direction:?}: ratios");
            for (s, v) in &r.ratios {
                print!(" ({s:.0}: {v:.5})");
            }
            println!();
            println!(
                "    limit {:.5} (reference {:.5}), bracket [{:.5}, {:.5}]",
                r.limit, r.reference_ratio, r.delta_hat.0, r.delta_hat.1
            );
        }
        println!();
    }
}
