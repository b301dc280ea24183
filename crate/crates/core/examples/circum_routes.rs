// Three routes to the circumcentric direction, the spectral sandwich, and
// what happens when the base loses independence.
//
// ```text
// cargo run --example circum_routes
// ```

use circumcone::geometry::{circum, circum_via_gram, circum_via_projection, circum_via_system, spectral_bounds};
use circumcone::{linalg, sampling, ConicBase};

pub fn run() -> circumcone::Result<()> {
    let mut rng = sampling::rng(42);
    let raw = (0..4).map(|_| sampling::gaussian_vec(&mut rng, 6)).collect();
    let base = ConicBase::new(raw)?;

    let g = circum_via_gram(&base)?;
    let p = circum_via_projection(&base);
    let s = circum_via_system(&base)?;
    println!("‖d‖² = {:.15} (gram), weights {:?}", g.norm_sq, g.weights.as_deref().unwrap_or(&[]));
    println!("gram vs projection: {:.2e}", linalg::max_abs_diff(&g.d, &p.d));
    println!("gram vs system:     {:.2e}", linalg::max_abs_diff(&g.d, &s.d));
    println!("key identity residual: {:.2e}", g.key_identity_residual(&base));

    let (lo, hi) = spectral_bounds(&base.gram());
    println!("λ_min/p = {lo:.6} ≤ ‖d‖² = {:.6} ≤ λ_max/p = {hi:.6}", g.norm_sq);

    // four generators in ℝ³ cannot be linearly independent
    let s3 = 3f64.sqrt();
    let tet = ConicBase::new(vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0 / s3, 1.0 / s3, -1.0 / s3],
    ])?;
    match circum_via_gram(&tet) {
        Ok(_) => println!("unexpected: Gram route accepted a dependent base"),
        Err(e) => println!("gram route refuses: {e}"),
    }
    let c = circum(&tet);
    println!("fallback route {} gives ‖d‖² = {:.2e}: no inscribed ball", c.route.as_str(), c.norm_sq);
    Ok(())
}

#[allow(dead_code)]
fn main() -> circumcone::Result<()> {
    run()
}
