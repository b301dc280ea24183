// Brute-force checks: depth by bisection, ball probes and the Weyl check,
// none of which use the closed forms they test.
//
// ```text
// cargo run --example verify_oracles
// ```

use std::f64::consts::FRAC_1_SQRT_2;

use circumcone::oracles::{self, T_MAX};
use circumcone::zoo::{self, ConeDescriptor};

pub fn run() -> circumcone::Result<()> {
    let soc = ConeDescriptor::Soc(3);
    let d = zoo::circum_direction(&soc)?.d;
    let w = [0.0, 0.0, 1.0];
    let member = |z: &[f64]| oracles::polar_member(&soc, z).unwrap_or(false);
    let bisected = oracles::depth_by_bisection(member, &d, &w, T_MAX)?;
    let formula = zoo::directional_depth_np(&soc, &w)?.value;
    println!("soc(3) depth along e₃: formula {formula}, bisection {bisected} (1/√2 = {FRAC_1_SQRT_2})");

    let psd = ConeDescriptor::Psd(3);
    let c = zoo::circum_direction(&psd)?;
    let excess = |z: &[f64]| oracles::polar_excess(&psd, z);
    let inside = oracles::ball_probe(excess, &c.d, 0.999 * c.norm_sq, 1000, 7)?;
    let dirs = zoo::sample_extremal(&psd, 20, 7);
    let outside = oracles::sharpness_probe(excess, &c.d, 1.001 * c.norm_sq, &dirs)?;
    println!("psd(3) ball at 0.999‖d‖²: {}/{} failures", inside.failures, inside.trials);
    println!("psd(3) extremal probes at 1.001‖d‖²: {}/{} stayed inside", outside.failures, outside.trials);

    for n in [2, 3, 5] {
        let r = oracles::weyl_check(n, 1000, 1)?;
        println!("{}: {} failures, smallest eigenvalue {:.3e}", r.label, r.failures, r.worst_margin);
    }
    for c in [ConeDescriptor::Orthant(4), ConeDescriptor::Soc(4), ConeDescriptor::Psd(2)] {
        let r = oracles::depth_agreement(&c, 100, 5, 1e-6)?;
        println!("{}: worst relative gap {:.2e} over {} directions", r.label, r.worst_margin, r.trials);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> circumcone::Result<()> {
    run()
}
