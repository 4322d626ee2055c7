//! Affinity of the energies along their geodesics: the quantized energy
//! along the geometric interpolation of inner products, and the
//! transcendental energy along the symplectic-linear metric geodesic.

use deltakit::bergman::{
    bergman_geodesic, fubini_study, hilbert_form, ma_energy, quantized_energy,
};
use deltakit::catalog;
use deltakit::quad::QuadratureScheme;
use deltakit::radial::{toric_geodesic, RadialMetric};

fn main() {
    let q = QuadratureScheme::default();
    let d = 2u32;
    let phi0 = catalog::profile("bump", d).unwrap();
    let phi1 = catalog::profile("asymmetric", d).unwrap();

    let m = 4u32;
    let h0 = hilbert_form(&phi0, m, &q).unwrap();
    let h1 = hilbert_form(&phi1, m, &q).unwrap();
    let reference = hilbert_form(&RadialMetric::zero(d), m, &q).unwrap();
    let em = |h: &deltakit::bergman::HermitianForm| {
        quantized_energy(&fubini_study(h).unwrap(), &reference).unwrap()
    };
    let (e0, e1) = (em(&h0), em(&h1));
    println!("quantized energy along the form geodesic (m = {m}):");
    println!(
        "  {:>5} {:>14} {:>14} {:>12}",
        "t", "E_m", "chord", "deviation"
    );
    let mut worst_q = 0.0_f64;
    for k in 0..=10 {
        let t = k as f64 / 10.0;
        let ht = bergman_geodesic(&h0, &h1, t).unwrap();
        let v = em(&ht);
        let chord = (1.0 - t) * e0 + t * e1;
        worst_q = worst_q.max((v - chord).abs());
        println!("  {t:>5.2} {v:>14.10} {chord:>14.10} {:>12.3e}", v - chord);
    }

    let e0 = ma_energy(&phi0, &q).unwrap();
    let e1 = ma_energy(&phi1, &q).unwrap();
    println!("\nenergy along the metric geodesic:");
    println!(
        "  {:>5} {:>14} {:>14} {:>12}",
        "t", "E", "chord", "deviation"
    );
    let mut worst_t = 0.0_f64;
    for k in 0..=10 {
        let t = k as f64 / 10.0;
        let phi_t = toric_geodesic(&phi0, &phi1, t).unwrap();
        let v = ma_energy(&phi_t, &q).unwrap();
        let chord = (1.0 - t) * e0 + t * e1;
        worst_t = worst_t.max((v - chord).abs());
        println!("  {t:>5.2} {v:>14.10} {chord:>14.10} {:>12.3e}", v - chord);
    }
    println!("\nworst deviations: quantized {worst_q:.3e}, transcendental {worst_t:.3e}");
}
