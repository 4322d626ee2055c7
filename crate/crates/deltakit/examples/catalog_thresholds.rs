//! Exact stability thresholds across the built-in catalog: delta, alpha,
//! slope, nef threshold, the Ding verdict, and the cscK criterion.

use deltakit::catalog;
use deltakit::rat::rat_str;
use deltakit::thresholds::{
    alpha_threshold, csck_criterion, delta_threshold, nef_threshold, slope_mu, DeltaMode,
};

fn main() {
    println!(
        "{:<24} {:>8} {:>8} {:>8} {:>6} {:>6} {:>6}",
        "pair", "delta", "alpha", "mu", "s(L)", "Ding", "cscK"
    );
    for key in catalog::PAIR_KEYS {
        let pair = catalog::pair(key).unwrap();
        let delta = delta_threshold(&pair, DeltaMode::Limit).unwrap();
        let alpha = alpha_threshold(&pair).unwrap();
        let mu = slope_mu(&pair).unwrap();
        let nef = nef_threshold(&pair).unwrap();
        let ding = delta.value > deltakit::rat::rint(1);
        let csck = if pair.is_untwisted() {
            match csck_criterion(&pair) {
                Ok(c) => {
                    if c.verdict {
                        "yes"
                    } else {
                        "no"
                    }
                }
                Err(_) => "-",
            }
        } else {
            "-"
        };
        println!(
            "{:<24} {:>8} {:>8} {:>8} {:>6} {:>6} {:>6}",
            key,
            rat_str(&delta.value),
            rat_str(&alpha.value),
            rat_str(&mu),
            rat_str(&nef.value),
            if ding { "yes" } else { "no" },
            csck
        );
        println!("{:<24} minimizer {:?}", "", delta.minimizer);
    }
}
