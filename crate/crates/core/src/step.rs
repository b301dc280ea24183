//! Active cones, the sharp interior step and the feasibility-corrected
//! projected-gradient (FCPG) driver.
//!
//! At a feasible point `x̄` of `{g ≤ 0}` the normalized gradients of the
//! active constraints form a conic base. Its circumcentric direction `d` is
//! an interior feasible direction, and for any `w` the mix `d + σw` stays
//! interior exactly while `σ < σ*(w) = ‖d‖² / max_j ⟨w, uʲ⟩`.

use std::fmt::Write as _;

use crate::admissible::directional_depth;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{self, CircumDirection, ConicBase};
use crate::io::fmt_f64;
use crate::linalg::{self, Matrix};
use crate::Extended;

/// Relative activity tolerance; see [`activity_tol`].
pub const ACTIVITY_TOL: f64 = 1e-9;
/// Accepted iterates satisfy every `g_j ≤ FEASIBILITY_TOL`.
pub const FEASIBILITY_TOL: f64 = 1e-10;
pub const MAX_HALVINGS: usize = 60;
/// Residual norm below which an SOC constraint is at its apex.
pub const APEX_TOL: f64 = 1e-10;

/// `ACTIVITY_TOL · (1 + scale)` where `scale` is the magnitude of the terms
/// that cancel in `g_j(x̄)`.
pub fn activity_tol(scale: f64) -> f64 {
    ACTIVITY_TOL * (1.0 + scale)
}

/// A differentiable convex constraint `g(x) ≤ 0`.
pub trait SmoothConstraint {
    fn label(&self) -> String;

    /// `(g(x), ∇g(x))`
    fn eval(&self, x: &[f64]) -> (f64, Vec<f64>);

    /// Magnitude of the terms summed in `g(x)`, used to scale the activity
    /// tolerance.
    fn scale(&self, _x: &[f64]) -> f64 {
        0.0
    }
}

/// `⟨a, x⟩ − b ≤ 0`
#[derive(Clone, Debug)]
pub struct AffineConstraint {
    pub a: Vec<f64>,
    pub b: f64,
    pub label: String,
}

impl SmoothConstraint for AffineConstraint {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn eval(&self, x: &[f64]) -> (f64, Vec<f64>) {
        (linalg::dot(&self.a, x) - self.b, self.a.clone())
    }

    fn scale(&self, x: &[f64]) -> f64 {
        linalg::dot(&self.a, x).abs() + self.b.abs()
    }
}

/// `‖A x − b‖ ≤ cᵀx + δ`
#[derive(Clone, Debug)]
pub struct SocConstraint {
    pub a: Matrix,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub delta: f64,
}

impl SocConstraint {
    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        linalg::sub(&self.a.mul_vec(x), &self.b)
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        linalg::norm(&self.residual(x)) - linalg::dot(&self.c, x) - self.delta
    }

    /// `Aᵀ(Ax − b)/‖Ax − b‖ − c`, or `None` at the apex `Ax = b`.
    pub fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let r = self.residual(x);
        let rn = linalg::norm(&r);
        if rn <= APEX_TOL {
            return None;
        }
        let mut g = self.a.tr_mul_vec(&r);
        for (gi, ci) in g.iter_mut().zip(&self.c) {
            *gi = *gi / rn - ci;
        }
        Some(g)
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.a.cols() != n || self.c.len() != n || self.a.rows() != self.b.len() {
            return Err(Error::InvalidProblem(
                "SOC constraint blocks do not match the variable dimension".into(),
            ));
        }
        Ok(())
    }
}

impl SmoothConstraint for SocConstraint {
    fn label(&self) -> String {
        "soc".into()
    }

    fn eval(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let g = self.gradient(x).unwrap_or_else(|| linalg::scale(&self.c, -1.0));
        (self.value(x), g)
    }

    fn scale(&self, x: &[f64]) -> f64 {
        linalg::norm(&self.residual(x)) + linalg::dot(&self.c, x).abs() + self.delta.abs()
    }
}

/// Indices of constraints with `g_j(x̄) ≥ −tol_j`; fails if some
/// `g_j(x̄) > tol_j`, with `tol_j = tol · (1 + scale_j)`.
pub fn active_set(constraints: &[&dyn SmoothConstraint], x: &[f64], tol: f64) -> Result<Vec<usize>> {
    let mut active = Vec::new();
    for (j, c) in constraints.iter().enumerate() {
        let (value, _) = c.eval(x);
        let tj = tol * (1.0 + c.scale(x));
        if value > tj {
            return Err(Error::Infeasible {
                label: c.label(),
                value,
            });
        }
        if value >= -tj {
            active.push(j);
        }
    }
    Ok(active)
}

/// Normalized active gradients and their circumcentric direction.
#[derive(Clone, Debug, PartialEq)]
pub struct ActiveCone {
    pub labels: Vec<String>,
    pub base: ConicBase,
    pub circ: CircumDirection,
}

impl ActiveCone {
    pub fn d(&self) -> &[f64] {
        &self.circ.d
    }

    pub fn norm_sq(&self) -> f64 {
        self.circ.norm_sq
    }
}

/// Builds the active cone from labelled gradients. Repeated directions are
/// merged; the circumcentric direction comes from the Gram route with the
/// projection route as fallback.
pub fn build_active_cone(gradients: &[(String, Vec<f64>)]) -> Result<ActiveCone> {
    if gradients.is_empty() {
        return Err(Error::EmptyActiveSet);
    }
    for (label, g) in gradients {
        if g.iter().all(|x| *x == 0.0) {
            return Err(Error::ZeroGradient {
                label: label.clone(),
            });
        }
    }
    let base = ConicBase::new_dedup(gradients.iter().map(|(_, g)| g.clone()).collect())?;
    let circ = geometry::circum(&base);
    Ok(ActiveCone {
        labels: gradients.iter().map(|(l, _)| l.clone()).collect(),
        base,
        circ,
    })
}

/// Sharp interior step: the supremum of `σ ≥ 0` keeping `d + σw` interior.
pub fn sigma_star(ac: &ActiveCone, w: &[f64]) -> Result<Extended> {
    Ok(directional_depth(&ac.base, ac.norm_sq(), w)?.value)
}

/// Conservative step `‖d‖² / ‖w‖`, valid by Cauchy–Schwarz.
pub fn sigma_conservative(ac: &ActiveCone, w: &[f64]) -> f64 {
    ac.norm_sq() / linalg::norm(w)
}

/// `d` itself when nonzero: it has `⟨uʲ, d⟩ = −‖d‖² < 0` for every active
/// gradient and so certifies MFCQ.
pub fn mfcq_witness(ac: &ActiveCone) -> Option<Vec<f64>> {
    (!ac.circ.is_zero()).then(|| ac.circ.d.clone())
}

/// `x̄ + t(d + σw)`, refusing `σ ≥ σ*(w)`.
pub fn fcpg_step(ac: &ActiveCone, x: &[f64], w: &[f64], sigma: f64, t: f64) -> Result<Vec<f64>> {
    check_dim(ac.base.dim(), x.len())?;
    if !(t > 0.0) {
        return Err(Error::OutOfRange {
            value: t,
            range: "t > 0",
        });
    }
    if !(sigma > 0.0) {
        return Err(Error::OutOfRange {
            value: sigma,
            range: "sigma > 0",
        });
    }
    let bound = sigma_star(ac, w)?;
    if !Extended::Finite(sigma).le(bound, 0.0) || Extended::Finite(sigma) == bound {
        return Err(Error::StepTooLong {
            sigma,
            bound: bound.to_f64(),
        });
    }
    let mut dir = ac.circ.d.clone();
    linalg::axpy(sigma, w, &mut dir);
    let (margin, _) = ac.base.max_inner(&dir)?;
    if margin >= 0.0 {
        return Err(Error::StepTooLong {
            sigma,
            bound: bound.to_f64(),
        });
    }
    let mut out = x.to_vec();
    linalg::axpy(t, &dir, &mut out);
    Ok(out)
}

/// Output of a problem-specific step oracle at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleStep {
    pub active: Vec<String>,
    /// Absent at interior points.
    pub cone: Option<ActiveCone>,
    /// Descent direction `−∇f(x̄)`.
    pub w: Vec<f64>,
    pub sigma: Extended,
}

fn oracle_from_gradients(active: Vec<(String, Vec<f64>)>, w: Vec<f64>) -> Result<OracleStep> {
    if active.is_empty() {
        return Ok(OracleStep {
            active: Vec::new(),
            cone: None,
            w,
            sigma: Extended::Infinite,
        });
    }
    let cone = build_active_cone(&active)?;
    let sigma = if w.iter().all(|x| *x == 0.0) {
        Extended::Infinite
    } else {
        sigma_star(&cone, &w)?
    };
    Ok(OracleStep {
        active: cone.labels.clone(),
        cone: Some(cone),
        w,
        sigma,
    })
}

/// `min ½‖Ax − b‖²` subject to `‖Cx − dvec‖∞ ≤ τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinfProblem {
    pub a: Matrix,
    pub b: Vec<f64>,
    pub c: Matrix,
    pub dvec: Vec<f64>,
    pub tau: f64,
}

impl LinfProblem {
    pub fn new(a: Matrix, b: Vec<f64>, c: Matrix, dvec: Vec<f64>, tau: f64) -> Result<Self> {
        if !(tau > 0.0) {
            return Err(Error::InvalidProblem(format!("tau = {tau} must be positive")));
        }
        if a.rows() != b.len() || c.rows() != dvec.len() || a.cols() != c.cols() {
            return Err(Error::InvalidProblem("inconsistent dimensions".into()));
        }
        if let Some(j) = (0..c.rows()).find(|&j| c.row(j).iter().all(|x| *x == 0.0)) {
            return Err(Error::InvalidProblem(format!("row {j} of C is zero")));
        }
        Ok(Self { a, b, c, dvec, tau })
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    fn box_residual(&self, x: &[f64]) -> Vec<f64> {
        linalg::sub(&self.c.mul_vec(x), &self.dvec)
    }
}

/// Signed-active oracle for the L∞-constrained least-squares problem.
pub fn linf_oracle(prob: &LinfProblem, x: &[f64]) -> Result<OracleStep> {
    check_dim(prob.dim(), x.len())?;
    let r = prob.box_residual(x);
    let mut active = Vec::new();
    for (j, rj) in r.iter().enumerate() {
        let tol = activity_tol(linalg::dot(prob.c.row(j), x).abs() + prob.dvec[j].abs() + prob.tau);
        if rj.abs() > prob.tau + tol {
            return Err(Error::Infeasible {
                label: format!("row {j}"),
                value: rj.abs() - prob.tau,
            });
        }
        let upper = *rj >= prob.tau - tol;
        let lower = *rj <= -prob.tau + tol;
        match (upper, lower) {
            (true, true) => return Err(Error::DegenerateBox { row: j }),
            (true, false) => active.push((format!("row {j} +"), prob.c.row(j).to_vec())),
            (false, true) => active.push((format!("row {j} -"), linalg::scale(prob.c.row(j), -1.0))),
            (false, false) => {}
        }
    }
    oracle_from_gradients(active, prob.descent(x))
}

/// `min ½xᵀQx + qᵀx` subject to second-order cone constraints.
#[derive(Clone, Debug)]
pub struct SocpProblem {
    pub q_mat: Matrix,
    pub q: Vec<f64>,
    pub constraints: Vec<SocConstraint>,
}

impl SocpProblem {
    pub fn new(q_mat: Matrix, q: Vec<f64>, constraints: Vec<SocConstraint>) -> Result<Self> {
        let n = q.len();
        if q_mat.rows() != n || q_mat.cols() != n {
            return Err(Error::InvalidProblem("Q must be n x n".into()));
        }
        if q_mat.asymmetry() > 1e-10 {
            return Err(Error::InvalidProblem("Q is not symmetric".into()));
        }
        if n > 0 && linalg::sym_eigen(&q_mat).min() < -1e-10 {
            return Err(Error::InvalidProblem("Q is not positive semidefinite".into()));
        }
        for c in &constraints {
            c.validate(n)?;
        }
        Ok(Self {
            q_mat,
            q,
            constraints,
        })
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }
}

/// Active-gradient oracle for the SOCP, requiring apex-free activity.
pub fn socp_oracle(prob: &SocpProblem, x: &[f64]) -> Result<OracleStep> {
    check_dim(prob.dim(), x.len())?;
    let mut active = Vec::new();
    for (j, con) in prob.constraints.iter().enumerate() {
        let value = con.value(x);
        let tol = activity_tol(con.scale(x));
        if value > tol {
            return Err(Error::Infeasible {
                label: format!("soc {j}"),
                value,
            });
        }
        if value >= -tol {
            let g = con.gradient(x).ok_or_else(|| Error::Apex {
                index: j,
                residual: linalg::norm(&con.residual(x)),
            })?;
            active.push((format!("soc {j}"), g));
        }
    }
    oracle_from_gradients(active, prob.descent(x))
}

/// Problems the FCPG driver can run on.
pub trait FcpgProblem {
    fn dim(&self) -> usize;
    fn objective(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
    /// `max_j g_j(x)`; feasible iff `≤ 0`.
    fn max_violation(&self, x: &[f64]) -> f64;
    fn oracle(&self, x: &[f64]) -> Result<OracleStep>;

    fn descent(&self, x: &[f64]) -> Vec<f64> {
        linalg::scale(&self.gradient(x), -1.0)
    }
}

impl FcpgProblem for LinfProblem {
    fn dim(&self) -> usize {
        self.a.cols()
    }

    fn objective(&self, x: &[f64]) -> f64 {
        0.5 * linalg::norm_sq(&linalg::sub(&self.a.mul_vec(x), &self.b))
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.a.tr_mul_vec(&linalg::sub(&self.a.mul_vec(x), &self.b))
    }

    fn max_violation(&self, x: &[f64]) -> f64 {
        self.box_residual(x)
            .iter()
            .map(|r| r.abs() - self.tau)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn oracle(&self, x: &[f64]) -> Result<OracleStep> {
        linf_oracle(self, x)
    }
}

impl FcpgProblem for SocpProblem {
    fn dim(&self) -> usize {
        self.q.len()
    }

    fn objective(&self, x: &[f64]) -> f64 {
        0.5 * linalg::dot(x, &self.q_mat.mul_vec(x)) + linalg::dot(&self.q, x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        linalg::add(&self.q_mat.mul_vec(x), &self.q)
    }

    fn max_violation(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.value(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn oracle(&self, x: &[f64]) -> Result<OracleStep> {
        socp_oracle(self, x)
    }
}

/// How `σ` was picked at an iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaRule {
    /// `½σ*(w)`
    HalfSharp,
    /// `‖d‖²/‖w‖`
    Conservative,
}

#[derive(Clone, Debug)]
pub struct FcpgParams {
    pub max_iter: usize,
    /// Stop once `‖∇f‖` drops below this.
    pub tol: f64,
    /// Force the conservative rule even when `σ*` is finite.
    pub always_conservative: bool,
}

impl Default for FcpgParams {
    fn default() -> Self {
        Self {
            max_iter: 100,
            tol: 1e-8,
            always_conservative: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub iter: usize,
    pub objective: f64,
    /// `−max_j g_j(x)`
    pub margin: f64,
    pub active_count: usize,
    pub norm_sq: Option<f64>,
    /// The `σ` used to leave this iterate, if the active set was nonempty.
    pub sigma: Option<f64>,
    pub sigma_rule: Option<SigmaRule>,
    /// Accepted step length; `0` on the last record.
    pub t: f64,
    /// The iterate itself (not written to CSV).
    pub x: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    SmallGradient,
    MaxIter,
    /// Backtracking found feasible points but none that did not increase
    /// the objective.
    NoProgress,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
    pub stop: StopReason,
    pub x: Vec<f64>,
}

impl Trace {
    pub const CSV_HEADER: &'static str = "iter,objective,margin,active_count,norm_sq,sigma,t";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.iter,
                fmt_f64(r.objective),
                fmt_f64(r.margin),
                r.active_count,
                opt(r.norm_sq),
                opt(r.sigma),
                fmt_f64(r.t)
            );
        }
        out
    }
}

/// Feasibility-corrected projected gradient with backtracking on `t`.
///
/// Each iteration moves along `d + σw` (or `w` at interior points) and
/// halves `t` from 1 until the trial point is feasible and does not
/// increase the objective.
pub fn run_fcpg<P: FcpgProblem + ?Sized>(prob: &P, x0: &[f64], params: &FcpgParams) -> Result<Trace> {
    check_dim(prob.dim(), x0.len())?;
    let v0 = prob.max_violation(x0);
    if v0 > FEASIBILITY_TOL {
        return Err(Error::Infeasible {
            label: "x0".into(),
            value: v0,
        });
    }
    let mut x = x0.to_vec();
    let mut records = Vec::new();

    for iter in 0..=params.max_iter {
        let objective = prob.objective(&x);
        let margin = -prob.max_violation(&x);
        let oracle = prob.oracle(&x)?;
        let mut rec = TraceRecord {
            iter,
            objective,
            margin,
            active_count: oracle.active.len(),
            norm_sq: oracle.cone.as_ref().map(ActiveCone::norm_sq),
            sigma: None,
            sigma_rule: None,
            t: 0.0,
            x: x.clone(),
        };

        let grad_norm = linalg::norm(&oracle.w);
        if grad_norm < params.tol {
            records.push(rec);
            return Ok(Trace {
                records,
                stop: StopReason::SmallGradient,
                x,
            });
        }
        if iter == params.max_iter {
            records.push(rec);
            break;
        }

        let direction = match &oracle.cone {
            Some(cone) => {
                let (sigma, rule) = match oracle.sigma {
                    Extended::Finite(s) if !params.always_conservative => (0.5 * s, SigmaRule::HalfSharp),
                    _ => (sigma_conservative(cone, &oracle.w), SigmaRule::Conservative),
                };
                rec.sigma = Some(sigma);
                rec.sigma_rule = Some(rule);
                let mut dir = cone.circ.d.clone();
                linalg::axpy(sigma, &oracle.w, &mut dir);
                dir
            }
            None => oracle.w.clone(),
        };

        let mut t = 1.0;
        let mut saw_feasible = false;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let mut trial = x.clone();
            linalg::axpy(t, &direction, &mut trial);
            if prob.max_violation(&trial) <= FEASIBILITY_TOL {
                saw_feasible = true;
                if prob.objective(&trial) <= objective {
                    accepted = Some(trial);
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some(next) => {
                rec.t = t;
                records.push(rec);
                x = next;
            }
            None if saw_feasible => {
                records.push(rec);
                return Ok(Trace {
                    records,
                    stop: StopReason::NoProgress,
                    x,
                });
            }
            None => {
                return Err(Error::StepFailure {
                    halvings: MAX_HALVINGS,
                })
            }
        }
    }
    Ok(Trace {
        records,
        stop: StopReason::MaxIter,
        x,
    })
}
