// Bregman directions for the three Legendre families and a few mirror
// steps along the corrected direction.
//
// ```text
// cargo run --example bregman_mirror
// ```

use circumcone::bregman::{self, Legendre};
use circumcone::linalg::{self, Matrix};
use circumcone::ConicBase;

pub fn run() -> circumcone::Result<()> {
    let base = ConicBase::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]])?;
    let families = [
        Legendre::Euclidean,
        Legendre::pnorm(4.0)?,
        Legendre::mahalanobis(Matrix::diag(&[2.0, 1.0]))?,
    ];
    for h in &families {
        let bd = bregman::bregman_direction(h, &base)?;
        println!("{:<12} c_h = {:?}, d_h = {:?}, κ = {:.6}", h.label(), bd.c_h, bd.d_h, bd.kappa);
    }

    // one step of minimizing ½‖x − (−1, −2)‖² over x ≤ 0 from the corner,
    // where both constraints are active: every family stays feasible
    let target = [-1.0, -2.0];
    let x = [0.0, 0.0];
    let g = linalg::sub(&x, &target);
    let f0 = 0.5 * linalg::norm_sq(&g);
    for h in &families {
        let bd = bregman::bregman_direction(h, &base)?;
        let bound = bregman::sigma_star_h(&bd, &base, &linalg::scale(&g, -1.0))?;
        let sigma = bound.finite().map_or(1.0, |b| 0.5 * b);
        let next = bregman::mirror_step(h, &bd, &base, &x, &g, sigma, 0.25)?;
        let f = 0.5 * linalg::norm_sq(&linalg::sub(&next, &target));
        println!("{:<12} σ = {sigma:.4}: x+ = [{:.4}, {:.4}], f {f0:.4} → {f:.4}", h.label(), next[0], next[1]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> circumcone::Result<()> {
    run()
}
