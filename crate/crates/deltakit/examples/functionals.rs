//! The comparison functionals on catalog metrics: energy, I, J, entropy,
//! the slope-twisted energy, the K-energy, and the Ding value, with and
//! without a klt twist.

use deltakit::catalog;
use deltakit::energy::{functionals, ThetaWeights};
use deltakit::quad::QuadratureScheme;

fn main() {
    let q = QuadratureScheme::default();
    let twists = [
        ("theta = 0", ThetaWeights::untwisted()),
        ("theta = (1/2)[0]", ThetaWeights::new(0.5, 0.0).unwrap()),
    ];
    for (label, theta) in twists {
        println!("{label}:");
        println!(
            "  {:<12} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
            "profile", "E", "I", "J", "H", "J-energy", "K", "D"
        );
        for name in ["zero", "bump", "asymmetric"] {
            let phi = catalog::profile(name, 2).unwrap();
            let r = functionals(&phi, &theta, &q).unwrap();
            println!(
                "  {:<12} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
                name,
                r.energy,
                r.i_functional,
                r.j_functional,
                r.entropy,
                r.j_energy,
                r.k_energy,
                r.ding
            );
        }
        println!();
    }
}
