// The feasibility-corrected projected-gradient driver on a random
// box-constrained least-squares problem and a small SOCP.
//
// ```text
// cargo run --example fcpg_driver
// ```

use circumcone::linalg::{self, Matrix};
use circumcone::sampling;
use circumcone::step::{run_fcpg, FcpgParams, LinfProblem, SocConstraint, SocpProblem};

fn gaussian_matrix(rng: &mut sampling::SeededRng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows(&(0..rows).map(|_| sampling::gaussian_vec(rng, cols)).collect::<Vec<_>>()).unwrap()
}

pub fn run() -> circumcone::Result<()> {
    let mut rng = sampling::rng(3);
    let a = gaussian_matrix(&mut rng, 10, 5);
    let b = linalg::scale(&sampling::gaussian_vec(&mut rng, 10), 10.0);
    let c = gaussian_matrix(&mut rng, 6, 5);
    let prob = LinfProblem::new(a, b, c, vec![0.0; 6], 1.0)?;
    let trace = run_fcpg(&prob, &[0.0; 5], &FcpgParams { max_iter: 30, ..Default::default() })?;
    let csv = trace.to_csv();
    for line in csv.lines().take(6) {
        println!("{line}");
    }
    let last = trace.records.last().unwrap();
    println!("... {} iterations, stop = {:?}, final objective {:.6}", last.iter, trace.stop, last.objective);

    let eye = Matrix::identity(2);
    let disc = SocConstraint { a: eye.clone(), b: vec![0.0, 0.0], c: vec![0.0, 0.0], delta: 1.0 };
    let socp = SocpProblem::new(eye, vec![-3.0, -1.0], vec![disc])?;
    let trace = run_fcpg(&socp, &[0.0, 0.0], &FcpgParams::default())?;
    println!("SOCP: x = {:?} after {} iterates ({:?})", trace.x, trace.records.len(), trace.stop);
    Ok(())
}

#[allow(dead_code)]
fn main() -> circumcone::Result<()> {
    run()
}
