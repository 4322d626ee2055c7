//! Finite-level thresholds delta_m alongside the limit value, level by
//! level, for a few catalog pairs.

use deltakit::catalog;
use deltakit::rat::{rat_str, to_f64};
use deltakit::thresholds::{delta_threshold, DeltaMode};

fn main() {
    let keys = [
        "P1:O(1)",
        "P2:O(1)",
        "P1xP1:O(1,2)",
        "F1:L(1,1)",
        "P1:O(2):theta[0]=1/2",
    ];
    for key in keys {
        let pair = catalog::pair(key).unwrap();
        let limit = delta_threshold(&pair, DeltaMode::Limit).unwrap();
        println!("{key}: delta = {}", rat_str(&limit.value));
        print!("  m:       ");
        for m in 1..=12u32 {
            print!("{m:>8}");
        }
        println!();
        print!("  delta_m: ");
        for m in 1..=12u32 {
            let level = delta_threshold(&pair, DeltaMode::Level(m)).unwrap();
            print!("{:>8.4}", to_f64(&level.value));
        }
        println!("\n");
    }
}
