//! Building a pair from raw data instead of the catalog: a twisted
//! polarization on the blown-up plane, plus the same geometry written to
//! and parsed back from the documented JSON input shape.

use deltakit::job::{pair_from_doc, serialize_pair};
use deltakit::polytope::LatticePolytope;
use deltakit::rat::{rat, rat_str};
use deltakit::thresholds::{alpha_threshold, delta_threshold, DeltaMode};
use deltakit::PolarizedToricPair;

fn main() {
    // The trapezoid conv{(0,0),(1,0),(2,1),(0,1)} polarizes the blown-up
    // plane; we twist along the exceptional ray (0,1).
    let polytope =
        LatticePolytope::from_lattice_points(2, &[vec![0, 0], vec![1, 0], vec![2, 1], vec![0, 1]])
            .unwrap();
    let pair = PolarizedToricPair::new(polytope, None, &[(vec![0, 1], rat(1, 4))]).unwrap();

    let delta = delta_threshold(&pair, DeltaMode::Limit).unwrap();
    let alpha = alpha_threshold(&pair).unwrap();
    println!(
        "twisted blow-up: delta = {} at {:?}, alpha = {}",
        rat_str(&delta.value),
        delta.minimizer,
        rat_str(&alpha.value)
    );
    println!("candidates:");
    for c in &delta.candidates {
        println!(
            "  xi {:?}: A = {}, S = {}, ratio = {}",
            c.xi,
            rat_str(&c.log_discrepancy),
            rat_str(&c.denominator),
            rat_str(&c.ratio)
        );
    }

    // Round trip through the input document schema.
    let doc = serialize_pair(&pair);
    let text = serde_json::to_string_pretty(&doc).unwrap();
    println!("\ninput document:\n{text}");
    let back = pair_from_doc(&doc).unwrap();
    assert_eq!(pair, back);
    println!("\nround trip: ok");
}
