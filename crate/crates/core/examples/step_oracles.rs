// Active cones and the sharp interior step, including the L∞ and SOCP
// oracles.
//
// ```text
// cargo run --example step_oracles
// ```

use circumcone::linalg::Matrix;
use circumcone::step::{self, LinfProblem, SocConstraint, SocpProblem};

pub fn run() -> circumcone::Result<()> {
    let ac = step::build_active_cone(&[("x1".into(), vec![2.0, 0.0]), ("x2".into(), vec![0.0, 3.0])])?;
    let w = [0.3, 0.9];
    let sharp = step::sigma_star(&ac, &w)?;
    println!("σ*(w) = {sharp}, conservative = {:.4}", step::sigma_conservative(&ac, &w));
    println!("MFCQ witness: {:?}", step::mfcq_witness(&ac));
    let next = step::fcpg_step(&ac, &[1.0, 1.0], &w, 0.5 * sharp.to_f64(), 0.1)?;
    println!("x+ = {next:?}");
    if let Err(e) = step::fcpg_step(&ac, &[1.0, 1.0], &w, sharp.to_f64(), 0.1) {
        println!("at σ = σ*: {e}");
    }

    // least squares in the box |x_i| ≤ 1, sitting at the vertex (1, 1)
    let eye = Matrix::identity(2);
    let linf = LinfProblem::new(eye.clone(), vec![2.0, 3.0], eye.clone(), vec![0.0, 0.0], 1.0)?;
    let o = step::linf_oracle(&linf, &[1.0, 1.0])?;
    println!("L∞: active {:?}, w = {:?}, σ* = {}", o.active, o.w, o.sigma);

    // two unit balls meeting at the origin at 60 degrees
    let ball = |c: Vec<f64>| SocConstraint { a: eye.clone(), b: c, c: vec![0.0, 0.0], delta: 1.0 };
    let socp = SocpProblem::new(
        eye.clone(),
        vec![-1.0, -1.0],
        vec![ball(vec![-1.0, 0.0]), ball(vec![-0.5, -(0.75f64).sqrt()])],
    )?;
    let o = step::socp_oracle(&socp, &[0.0, 0.0])?;
    let cone = o.cone.as_ref().expect("both constraints are active");
    println!("SOCP: active {:?}, ‖d‖² = {} (= (1 + ρ)/2 with ρ = 0.5), σ* = {}", o.active, cone.norm_sq(), o.sigma);
    Ok(())
}

#[allow(dead_code)]
fn main() -> circumcone::Result<()> {
    run()
}
