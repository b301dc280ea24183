//! Brute-force verifiers.
//!
//! Nothing here calls the closed forms it is meant to check. Polar
//! membership is decided from the definition of each polar cone (the PSD
//! case by attempting a Cholesky factorization rather than through the
//! eigen-solver), depths come from bisection on that predicate, and ball
//! probes sample the sphere directly.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Cholesky, Matrix};
use crate::sampling;
use crate::zoo::{self, ConeDescriptor};
use crate::Extended;

/// Default cap separating "numerically infinite" from large finite depths.
pub const T_MAX: f64 = 1e6;
/// Final bracket width of [`depth_by_bisection`].
pub const BISECTION_WIDTH: f64 = 1e-9;
/// Slack of [`polar_member`].
pub const MEMBER_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub label: String,
    pub trials: usize,
    pub failures: usize,
    /// Worst value of the probed quantity: the largest polar excess for
    /// ball probes, the smallest eigenvalue for Weyl checks, the largest
    /// relative disagreement for depth comparisons.
    pub worst_margin: f64,
    pub seed: u64,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Largest `s` with `sI − Z` not positive definite, found by bisection on
/// Cholesky success. Equals `λ_max(Z)` to about `1e-15·‖Z‖_F`.
pub fn lambda_max_by_cholesky(z: &Matrix) -> f64 {
    let n = z.rows();
    let bound = z.frobenius_norm();
    let pd = |s: f64| {
        let shifted = Matrix::from_fn(n, n, |i, j| if i == j { s - z[(i, j)] } else { -z[(i, j)] });
        Cholesky::new(&shifted, 0.0).is_some()
    };
    let (mut lo, mut hi) = (-bound - 1e-300, bound + f64::EPSILON * (1.0 + bound));
    if pd(lo) {
        return lo;
    }
    while hi - lo > 1e-15 * (1.0 + bound) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pd(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn p_norm(x: &[f64], p: f64) -> f64 {
    x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

/// How far `z` is outside `K°`, from the definition of the polar:
/// `≤ 0` iff `z ∈ K°`.
pub fn polar_excess(c: &ConeDescriptor, z: &[f64]) -> Result<f64> {
    c.validate()?;
    check_dim(c.dim(), z.len())?;
    match c {
        // K° = −ℝⁿ₊
        ConeDescriptor::Orthant(_) => Ok(z.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        // the second-order cone is self-dual, so K° = −K
        ConeDescriptor::Soc(n) => {
            let (x, t) = z.split_at(n - 1);
            Ok(linalg::norm(x) + t[0])
        }
        // K° = negative semidefinite matrices
        ConeDescriptor::Psd(n) => Ok(lambda_max_by_cholesky(&zoo::smat(z, *n))),
        // Hölder: ⟨z, (x, t)⟩ ≤ 0 on ‖x‖_p ≤ t iff ‖z_x‖_q ≤ −z_t
        ConeDescriptor::PCone { n, p } => {
            let (x, t) = z.split_at(n - 1);
            Ok(p_norm(x, p / (p - 1.0)) + t[0])
        }
        ConeDescriptor::Polyhedral(base) => {
            let mut worst = f64::NEG_INFINITY;
            for u in base.vectors() {
                worst = worst.max(linalg::dot(u, z));
            }
            Ok(worst)
        }
        ConeDescriptor::Product(blocks) => {
            let mut worst = f64::NEG_INFINITY;
            let mut start = 0;
            for b in blocks {
                let end = start + b.dim();
                worst = worst.max(polar_excess(b, &z[start..end])?);
                start = end;
            }
            Ok(worst)
        }
        ConeDescriptor::Dnn(_) => Err(Error::UnsupportedExact(c.name())),
    }
}

pub fn polar_member(c: &ConeDescriptor, z: &[f64]) -> Result<bool> {
    Ok(polar_excess(c, z)? <= MEMBER_TOL)
}

/// Largest `t ∈ [0, t_max]` with `membership(d + t·w)`, to width
/// [`BISECTION_WIDTH`]; `+∞` when `d + t_max·w` is still a member.
pub fn depth_by_bisection<F>(membership: F, d: &[f64], w: &[f64], t_max: f64) -> Result<Extended>
where
    F: Fn(&[f64]) -> bool,
{
    check_dim(d.len(), w.len())?;
    if !membership(d) {
        return Err(Error::Contract("depth_by_bisection needs membership(d)"));
    }
    let at = |t: f64| {
        let mut z = d.to_vec();
        linalg::axpy(t, w, &mut z);
        membership(&z)
    };
    if at(t_max) {
        return Ok(Extended::Infinite);
    }
    let (mut lo, mut hi) = (0.0, t_max);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Extended::Finite(0.5 * (lo + hi)))
}

/// Samples `trials` points `d + v` with `v` uniform on the sphere of the
/// given radius and counts those with positive `excess` (beyond
/// [`MEMBER_TOL`]).
pub fn ball_probe<F>(excess: F, d: &[f64], radius: f64, trials: usize, seed: u64) -> Result<ProbeReport>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    if !(radius > 0.0) {
        return Err(Error::OutOfRange {
            value: radius,
            range: "radius > 0",
        });
    }
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..trials {
        let mut rng = sampling::rng(sampling::sub_seed(seed, i as u64));
        let mut z = d.to_vec();
        linalg::axpy(radius, &sampling::unit_vec(&mut rng, d.len()), &mut z);
        let e = excess(&z)?;
        worst = worst.max(e);
        if e > MEMBER_TOL {
            failures += 1;
        }
    }
    Ok(ProbeReport {
        label: "ball".into(),
        trials,
        failures,
        worst_margin: worst,
        seed,
    })
}

/// Probes `d + radius·u` along each of the given directions.
pub fn directed_probe<F>(excess: F, d: &[f64], radius: f64, directions: &[Vec<f64>]) -> Result<ProbeReport>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    for u in directions {
        check_dim(d.len(), u.len())?;
        let mut z = d.to_vec();
        linalg::axpy(radius / linalg::norm(u), u, &mut z);
        let e = excess(&z)?;
        worst = worst.max(e);
        if e > MEMBER_TOL {
            failures += 1;
        }
    }
    Ok(ProbeReport {
        label: "directed".into(),
        trials: directions.len(),
        failures,
        worst_margin: worst,
        seed: 0,
    })
}

/// The converse probe: every point `d + radius·u` along the given
/// directions should leave `K°`. A direction that stays inside counts as a
/// failure; `worst_margin` is the smallest excess seen.
pub fn sharpness_probe<F>(excess: F, d: &[f64], radius: f64, directions: &[Vec<f64>]) -> Result<ProbeReport>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let mut failures = 0;
    let mut worst = f64::INFINITY;
    for u in directions {
        check_dim(d.len(), u.len())?;
        let mut z = d.to_vec();
        linalg::axpy(radius / linalg::norm(u), u, &mut z);
        let e = excess(&z)?;
        worst = worst.min(e);
        if e <= MEMBER_TOL {
            failures += 1;
        }
    }
    Ok(ProbeReport {
        label: "sharpness".into(),
        trials: directions.len(),
        failures,
        worst_margin: worst,
        seed: 0,
    })
}

/// `λ_min(I/n − V) ≥ −1e-12` for random symmetric `V` with `‖V‖_F ≤ 1/n`.
pub fn weyl_check(n: usize, trials: usize, seed: u64) -> Result<ProbeReport> {
    if n < 2 {
        return Err(Error::OutOfRange {
            value: n as f64,
            range: "n >= 2",
        });
    }
    let k = n as f64;
    let mut failures = 0;
    let mut worst = f64::INFINITY;
    for i in 0..trials {
        let mut rng = sampling::rng(sampling::sub_seed(seed, i as u64));
        let g = sampling::gaussian_vec(&mut rng, n * n);
        let sym = Matrix::from_fn(n, n, |r, c| g[r * n + c] + g[c * n + r]);
        let fro = sym.frobenius_norm();
        // alternate between the sphere ‖V‖_F = 1/n and its interior
        let target = if i % 2 == 0 { 1.0 / k } else { rand::Rng::random::<f64>(&mut rng) / k };
        let s = if fro > 0.0 { target / fro } else { 0.0 };
        let m = Matrix::from_fn(n, n, |r, c| {
            let id = if r == c { 1.0 / k } else { 0.0 };
            id - s * sym[(r, c)]
        });
        let lmin = linalg::sym_eigen(&m).min();
        worst = worst.min(lmin);
        if lmin < -1e-12 {
            failures += 1;
        }
    }
    Ok(ProbeReport {
        label: format!("weyl n={n}"),
        trials,
        failures,
        worst_margin: worst,
        seed,
    })
}

/// Compares [`zoo::directional_depth_np`] with bisection on
/// [`polar_member`] along `trials` random unit directions.
pub fn depth_agreement(c: &ConeDescriptor, trials: usize, seed: u64, tol: f64) -> Result<ProbeReport> {
    let d = zoo::circum_direction(c)?.d;
    let member = |z: &[f64]| polar_member(c, z).unwrap_or(false);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for i in 0..trials {
        let mut rng = sampling::rng(sampling::sub_seed(seed, i as u64));
        let w = sampling::unit_vec(&mut rng, c.dim());
        let formula = zoo::directional_depth_np(c, &w)?.value;
        let oracle = depth_by_bisection(member, &d, &w, T_MAX)?;
        let gap = depth_gap(formula, oracle, T_MAX);
        worst = worst.max(gap);
        if gap > tol {
            failures += 1;
        }
    }
    Ok(ProbeReport {
        label: format!("depth {}", c.name()),
        trials,
        failures,
        worst_margin: worst,
        seed,
    })
}

/// Relative disagreement between a formula depth and a capped bisection.
pub fn depth_gap(formula: Extended, oracle: Extended, t_max: f64) -> f64 {
    match (formula, oracle) {
        (Extended::Infinite, Extended::Infinite) => 0.0,
        (Extended::Finite(a), Extended::Infinite) if a >= t_max * (1.0 - 1e-9) => 0.0,
        (Extended::Finite(a), Extended::Finite(b)) => (a - b).abs() / a.abs().max(1.0),
        _ => f64::INFINITY,
    }
}
