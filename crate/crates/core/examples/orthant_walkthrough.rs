// The two-dimensional orthant end to end: direction, exact admissible set,
// depth along the diagonal, contact points and the angular bound.
//
// ```text
// cargo run --example orthant_walkthrough
// ```

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use circumcone::admissible::{admissible_margin, angular_depth_bound, contact_points, directional_depth};
use circumcone::geometry::{aperture_axis, circum};
use circumcone::ConicBase;

pub fn run() -> circumcone::Result<()> {
    // generators are normalized on construction
    let base = ConicBase::new(vec![vec![2.0, 0.0], vec![0.0, 3.0]])?;
    let c = circum(&base);
    println!("d = {:?}, ‖d‖² = {}, route = {}", c.d, c.norm_sq, c.route.as_str());

    let (axis, theta) = aperture_axis(&c)?;
    println!("aperture θ = {theta:.6} rad around {axis:?}");

    for v in [[0.5, 0.0], [0.4, 0.4], [-10.0, -10.0], [0.6, 0.0]] {
        let m = admissible_margin(&base, c.norm_sq, &v)?;
        println!("v = {v:?}: margin {m:+.3} ({})", if m >= 0.0 { "admissible" } else { "outside" });
    }

    let diag = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
    let depth = directional_depth(&base, c.norm_sq, &diag)?;
    println!("depth along the diagonal: {} (the inscribed ball only gives {})", depth.value, c.norm_sq);
    println!("depth along (-1,-1): {}", directional_depth(&base, c.norm_sq, &[-1.0, -1.0])?.value);

    for p in contact_points(&base, c.norm_sq) {
        println!("contact point {p:?}");
    }
    for phi in [0.0, FRAC_PI_4] {
        println!("angular bound at φ = {phi:.4}: {}", angular_depth_bound(c.norm_sq, phi)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> circumcone::Result<()> {
    run()
}
