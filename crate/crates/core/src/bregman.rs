//! Bregman counterpart of the circumcentric direction.
//!
//! For a Legendre function `h` with `∇h(0) = 0`, the Bregman projection
//! `c_h` of the origin onto `aff(base)` satisfies `⟨∇h(c_h), uⁱ⟩ = κ_h` for
//! every generator, so `d_h = −∇h(c_h)` plays the role of `d` with the
//! Euclidean margin `κ_h = ⟨∇h(c_h), c_h⟩`.
//!
//! Three families have closed-form projections and ship here: the
//! Euclidean energy, `‖x‖ᵖ/p` for `p ≥ 2`, and Mahalanobis quadratics.

use crate::error::{check_dim, Error, Result};
use crate::geometry::{self, ConicBase};
use crate::linalg::{self, Cholesky, Matrix};
use crate::Extended;

/// Smallest eigenvalue accepted for a Mahalanobis matrix.
pub const PD_TOL: f64 = 1e-10;
/// `κ_h` at or below this is reported degenerate.
pub const KAPPA_TOL: f64 = 1e-12;
/// The origin counts as inside `aff(base)` below this distance.
pub const AFFINE_TOL: f64 = 1e-10;
/// Slack of the Bregman ball membership test.
pub const BALL_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub enum Legendre {
    /// `½‖x‖²`
    Euclidean,
    /// `‖x‖ᵖ/p`, `p ≥ 2`
    PNorm { p: f64 },
    /// `½xᵀAx`, `A ≻ 0`
    Mahalanobis { a: Matrix, chol: Cholesky },
}

impl Legendre {
    pub fn pnorm(p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 2.0) {
            return Err(Error::InvalidLegendre(format!("p = {p} must be >= 2")));
        }
        Ok(Legendre::PNorm { p })
    }

    pub fn mahalanobis(a: Matrix) -> Result<Self> {
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::InvalidLegendre("A must be square".into()));
        }
        if a.asymmetry() > 1e-12 {
            return Err(Error::InvalidLegendre("A must be symmetric".into()));
        }
        let min = linalg::sym_eigen(&a).min();
        if !(min > PD_TOL) {
            return Err(Error::InvalidLegendre(format!(
                "A is not positive definite (smallest eigenvalue {min:.3e})"
            )));
        }
        let chol = Cholesky::new(&a, 0.0)
            .ok_or_else(|| Error::InvalidLegendre("Cholesky factorization failed".into()))?;
        Ok(Legendre::Mahalanobis { a, chol })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Legendre::Euclidean => "euclidean",
            Legendre::PNorm { .. } => "pnorm",
            Legendre::Mahalanobis { .. } => "mahalanobis",
        }
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if let Legendre::Mahalanobis { a, .. } = self {
            check_dim(a.rows(), x.len())?;
        }
        Ok(())
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            Legendre::Euclidean => 0.5 * linalg::norm_sq(x),
            Legendre::PNorm { p } => linalg::norm(x).powf(*p) / p,
            Legendre::Mahalanobis { a, .. } => 0.5 * linalg::dot(x, &a.mul_vec(x)),
        }
    }

    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Legendre::Euclidean => x.to_vec(),
            Legendre::PNorm { p } => {
                let n = linalg::norm(x);
                if n == 0.0 {
                    vec![0.0; x.len()]
                } else {
                    linalg::scale(x, n.powf(p - 2.0))
                }
            }
            Legendre::Mahalanobis { a, .. } => a.mul_vec(x),
        }
    }

    /// `∇h* = (∇h)⁻¹`.
    pub fn grad_dual(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("dual point"));
        }
        self.check_point(y)?;
        let x = match self {
            Legendre::Euclidean => y.to_vec(),
            Legendre::PNorm { p } => {
                let n = linalg::norm(y);
                if n == 0.0 {
                    vec![0.0; y.len()]
                } else {
                    linalg::scale(y, n.powf((2.0 - p) / (p - 1.0)))
                }
            }
            Legendre::Mahalanobis { chol, .. } => chol.solve(y),
        };
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("primal point"));
        }
        Ok(x)
    }

    /// `D_h(x, y) = h(x) − h(y) − ⟨∇h(y), x − y⟩`
    pub fn divergence(&self, x: &[f64], y: &[f64]) -> f64 {
        self.value(x) - self.value(y) - linalg::dot(&self.grad(y), &linalg::sub(x, y))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BregmanDirection {
    /// Bregman projection of the origin onto `aff(base)`.
    pub c_h: Vec<f64>,
    /// `−∇h(c_h)`
    pub d_h: Vec<f64>,
    /// `⟨∇h(c_h), c_h⟩`
    pub kappa: f64,
}

/// `argmin_{x ∈ aff(base)} D_h(x, 0)`.
pub fn bregman_proj_affine(h: &Legendre, base: &ConicBase) -> Result<Vec<f64>> {
    h.check_point(base.generator(0))?;
    let euclid = geometry::affine_projection_of_origin(base.vectors());
    let distance = linalg::norm(&euclid);
    if distance <= AFFINE_TOL {
        return Err(Error::DegenerateAffine { distance });
    }
    match h {
        // D_h(x, 0) = h(x) is increasing in ‖x‖ for both families
        Legendre::Euclidean | Legendre::PNorm { .. } => Ok(euclid),
        Legendre::Mahalanobis { a, .. } => {
            let anchor = base.generator(0);
            let diffs: Vec<Vec<f64>> = base.vectors()[1..]
                .iter()
                .map(|u| linalg::sub(u, anchor))
                .collect();
            let mut x = anchor.to_vec();
            if diffs.is_empty() {
                return Ok(x);
            }
            let a_diffs: Vec<Vec<f64>> = diffs.iter().map(|v| a.mul_vec(v)).collect();
            let k = diffs.len();
            let g = Matrix::from_fn(k, k, |i, j| linalg::dot(&diffs[i], &a_diffs[j]));
            let rhs: Vec<f64> = a_diffs.iter().map(|av| -linalg::dot(av, anchor)).collect();
            let chol = Cholesky::new(&g, 1e-12).ok_or_else(|| Error::DependentBase {
                min_eigenvalue: linalg::sym_eigen(&g).min(),
            })?;
            let alpha = chol.solve(&rhs);
            for (al, v) in alpha.iter().zip(&diffs) {
                linalg::axpy(*al, v, &mut x);
            }
            Ok(x)
        }
    }
}

/// `c_h`, `d_h = −∇h(c_h)` and `κ_h`.
pub fn bregman_direction(h: &Legendre, base: &ConicBase) -> Result<BregmanDirection> {
    let c_h = bregman_proj_affine(h, base)?;
    let grad = h.grad(&c_h);
    let kappa = linalg::dot(&grad, &c_h);
    if !(kappa > KAPPA_TOL) {
        return Err(Error::DegenerateMargin { kappa });
    }
    Ok(BregmanDirection {
        c_h,
        d_h: linalg::scale(&grad, -1.0),
        kappa,
    })
}

/// `max_i ⟨d_h + v, uⁱ⟩ ≤ BALL_TOL`, i.e. `d_h + v ∈ K°`.
pub fn bregman_ball_check(bd: &BregmanDirection, base: &ConicBase, v: &[f64]) -> Result<bool> {
    check_dim(base.dim(), v.len())?;
    let z = linalg::add(&bd.d_h, v);
    Ok(base.max_inner(&z)?.0 <= BALL_TOL)
}

/// `κ_h / max_j ⟨w, uʲ⟩`, or `+∞` for nonpositive support.
pub fn sigma_star_h(bd: &BregmanDirection, base: &ConicBase, w: &[f64]) -> Result<Extended> {
    Ok(crate::admissible::directional_depth(base, bd.kappa, w)?.value)
}

/// Mirror step `∇h*(∇h(x̄) + η(d_h − σ∇f(x̄)))`.
///
/// When `∇f(x̄) ≠ 0` the step requires `0 < σ < σ*_h(−∇f(x̄))`.
pub fn mirror_step(
    h: &Legendre,
    bd: &BregmanDirection,
    base: &ConicBase,
    x: &[f64],
    grad_f: &[f64],
    sigma: f64,
    eta: f64,
) -> Result<Vec<f64>> {
    check_dim(base.dim(), x.len())?;
    check_dim(base.dim(), grad_f.len())?;
    if !(eta > 0.0) {
        return Err(Error::OutOfRange {
            value: eta,
            range: "eta > 0",
        });
    }
    if grad_f.iter().any(|g| *g != 0.0) {
        if !(sigma > 0.0) {
            return Err(Error::OutOfRange {
                value: sigma,
                range: "sigma > 0",
            });
        }
        let bound = sigma_star_h(bd, base, &linalg::scale(grad_f, -1.0))?;
        if let Extended::Finite(b) = bound {
            if sigma >= b {
                return Err(Error::StepTooLong { sigma, bound: b });
            }
        }
    }
    let mut y = h.grad(x);
    for ((yi, di), gi) in y.iter_mut().zip(&bd.d_h).zip(grad_f) {
        *yi += eta * (di - sigma * gi);
    }
    h.grad_dual(&y)
}
