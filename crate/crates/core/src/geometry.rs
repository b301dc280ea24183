//! Conic bases and the circumcentric direction.
//!
//! For a normalized base `u¹,…,uᵖ` the circumcentric direction is
//! `d = −proj_{aff(base)}(0)`. It satisfies `⟨d, uⁱ⟩ = −‖d‖²` for every
//! generator, which is what every downstream certificate relies on. Three
//! independent routes compute it:
//!
//! * [`circum_via_gram`]: the closed form through `M⁻¹1` for a linearly
//!   independent base, which also yields convex weights;
//! * [`circum_via_projection`]: least squares on the affine
//!   parametrization, valid for dependent bases and `p > n`;
//! * [`circum_via_system`]: the `(p−1)×(p−1)` equidistance system.

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Cholesky, Matrix, SymEigen};

/// Generators must be unit within this tolerance.
pub const UNIT_TOL: f64 = 1e-12;
/// Two normalized generators closer than this are duplicates.
pub const DUPLICATE_TOL: f64 = 1e-12;
/// Smallest Gram eigenvalue accepted as "linearly independent".
pub const INDEPENDENCE_TOL: f64 = 1e-10;
/// Below this smallest Gram eigenvalue [`circum`] prefers the projection route.
pub const WELL_CONDITIONED: f64 = 1e-6;
/// `‖d‖²` below this counts as the zero direction.
pub const ZERO_NORM_SQ: f64 = 1e-12;

const RANK_TOL: f64 = 1e-10;

/// Normalized generators of a polyhedral cone.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicBase {
    vectors: Vec<Vec<f64>>,
    dim: usize,
}

impl ConicBase {
    /// Normalizes raw generators and rejects zero vectors and duplicate
    /// directions.
    pub fn new(raw: Vec<Vec<f64>>) -> Result<Self> {
        let dim = raw.first().ok_or(Error::Empty("conic base"))?.len();
        if dim == 0 {
            return Err(Error::Empty("generator"));
        }
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(raw.len());
        for (index, v) in raw.into_iter().enumerate() {
            check_dim(dim, v.len())?;
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("generator"));
            }
            let n = linalg::norm(&v);
            if n == 0.0 {
                return Err(Error::ZeroGenerator { index });
            }
            let u = linalg::scale(&v, 1.0 / n);
            if let Some(first) = vectors
                .iter()
                .position(|w| linalg::distance(w, &u) <= DUPLICATE_TOL)
            {
                return Err(Error::DuplicateGenerator {
                    first,
                    second: index,
                });
            }
            vectors.push(u);
        }
        Ok(Self { vectors, dim })
    }

    /// Like [`ConicBase::new`] but silently drops repeated directions.
    pub fn new_dedup(raw: Vec<Vec<f64>>) -> Result<Self> {
        let mut kept: Vec<Vec<f64>> = Vec::with_capacity(raw.len());
        for (index, v) in raw.into_iter().enumerate() {
            let n = linalg::norm(&v);
            if n == 0.0 {
                return Err(Error::ZeroGenerator { index });
            }
            let u = linalg::scale(&v, 1.0 / n);
            if !kept
                .iter()
                .any(|w| w.len() == u.len() && linalg::distance(w, &u) <= DUPLICATE_TOL)
            {
                kept.push(u);
            }
        }
        Self::new(kept)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn generator(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    pub fn gram(&self) -> GramMatrix {
        GramMatrix(linalg::gram_of(&self.vectors))
    }

    /// `max_i ⟨v, uⁱ⟩` and the lowest index attaining it.
    pub fn max_inner(&self, v: &[f64]) -> Result<(f64, usize)> {
        check_dim(self.dim, v.len())?;
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, u) in self.vectors.iter().enumerate() {
            let s = linalg::dot(v, u);
            if s > best.0 {
                best = (s, i);
            }
        }
        Ok(best)
    }
}

/// `M_ij = ⟨uⁱ, uʲ⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix(Matrix);

impl GramMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn eigen(&self) -> SymEigen {
        linalg::sym_eigen(&self.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen().min()
    }
}

impl From<Matrix> for GramMatrix {
    fn from(m: Matrix) -> Self {
        GramMatrix(m)
    }
}

/// Which computation produced a [`CircumDirection`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Gram,
    Projection,
    System,
    /// Closed form for a canonical cone.
    ClosedForm,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Gram => "gram",
            Route::Projection => "proj",
            Route::System => "system",
            Route::ClosedForm => "closed-form",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircumDirection {
    pub d: Vec<f64>,
    /// `‖d‖²`
    pub norm_sq: f64,
    /// Convex weights of the circumcenter; only the Gram route has them.
    pub weights: Option<Vec<f64>>,
    /// Half-aperture `arccos‖d‖` in radians.
    pub aperture: f64,
    pub route: Route,
}

impl CircumDirection {
    pub(crate) fn from_direction(d: Vec<f64>, route: Route) -> Self {
        let norm_sq = linalg::norm_sq(&d);
        Self::with_norm_sq(d, norm_sq, None, route)
    }

    pub(crate) fn with_norm_sq(
        d: Vec<f64>,
        norm_sq: f64,
        weights: Option<Vec<f64>>,
        route: Route,
    ) -> Self {
        let aperture = norm_sq.sqrt().min(1.0).acos();
        Self {
            d,
            norm_sq,
            weights,
            aperture,
            route,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sq <= ZERO_NORM_SQ
    }

    /// `max_i |⟨d, uⁱ⟩ + ‖d‖²|` over the given base.
    pub fn key_identity_residual(&self, base: &ConicBase) -> f64 {
        base.vectors()
            .iter()
            .map(|u| (linalg::dot(&self.d, u) + self.norm_sq).abs())
            .fold(0.0, f64::max)
    }
}

/// Closed form through the Gram matrix. Requires a linearly independent
/// base (smallest Gram eigenvalue above [`INDEPENDENCE_TOL`]).
pub fn circum_via_gram(base: &ConicBase) -> Result<CircumDirection> {
    let gram = base.gram();
    let min_eigenvalue = gram.min_eigenvalue();
    if !(min_eigenvalue > INDEPENDENCE_TOL) {
        return Err(Error::DependentBase { min_eigenvalue });
    }
    let chol = Cholesky::new(gram.matrix(), 0.0)
        .ok_or(Error::DependentBase { min_eigenvalue })?;
    let m_inv_one = chol.solve(&vec![1.0; base.len()]);
    let total: f64 = m_inv_one.iter().sum();
    let weights: Vec<f64> = m_inv_one.iter().map(|x| x / total).collect();

    let mut d = vec![0.0; base.dim()];
    for (w, u) in weights.iter().zip(base.vectors()) {
        linalg::axpy(-w, u, &mut d);
    }
    Ok(CircumDirection::with_norm_sq(
        d,
        1.0 / total,
        Some(weights),
        Route::Gram,
    ))
}

/// Orthogonal projection of the origin onto the affine hull of `points`.
///
/// Solves the normal equations on the difference vectors when they are
/// independent, otherwise projects onto an orthonormal basis of their span.
pub fn affine_projection_of_origin(points: &[Vec<f64>]) -> Vec<f64> {
    let Some(anchor) = points.first() else {
        return Vec::new();
    };
    let diffs: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|u| linalg::sub(u, anchor))
        .collect();
    if diffs.is_empty() {
        return anchor.clone();
    }

    if diffs.len() <= anchor.len() {
        let g = linalg::gram_of(&diffs);
        if let Some(chol) = Cholesky::new(&g, RANK_TOL) {
            let rhs: Vec<f64> = diffs.iter().map(|v| -linalg::dot(v, anchor)).collect();
            let alpha = chol.solve(&rhs);
            let mut x = anchor.clone();
            for (a, v) in alpha.iter().zip(&diffs) {
                linalg::axpy(*a, v, &mut x);
            }
            return x;
        }
    }

    let basis = linalg::orthonormal_basis(&diffs, RANK_TOL);
    let mut x = anchor.clone();
    for q in &basis {
        let c = linalg::dot(q, anchor);
        linalg::axpy(-c, q, &mut x);
    }
    x
}

/// `d = −proj_{aff(base)}(0)`. Never fails; a zero direction is a valid
/// answer when the origin lies in the affine hull.
pub fn circum_via_projection(base: &ConicBase) -> CircumDirection {
    let x = affine_projection_of_origin(base.vectors());
    CircumDirection::from_direction(linalg::scale(&x, -1.0), Route::Projection)
}

/// Circumcenter from the equidistance system
/// `Σ_j α_j ⟨u^{j+1}−u¹, u^{i+1}−u¹⟩ = ½‖u^{i+1}−u¹‖²`.
pub fn circum_via_system(base: &ConicBase) -> Result<CircumDirection> {
    let anchor = base.generator(0);
    let diffs: Vec<Vec<f64>> = base.vectors()[1..]
        .iter()
        .map(|u| linalg::sub(u, anchor))
        .collect();
    let mut center = anchor.to_vec();
    if !diffs.is_empty() {
        let g = linalg::gram_of(&diffs);
        let rhs: Vec<f64> = diffs.iter().map(|v| 0.5 * linalg::norm_sq(v)).collect();
        let alpha = linalg::lu_solve(&g, &rhs, 1e-12).ok_or(Error::AffinelyDependent)?;
        for (a, v) in alpha.iter().zip(&diffs) {
            linalg::axpy(*a, v, &mut center);
        }
    }
    Ok(CircumDirection::from_direction(
        linalg::scale(&center, -1.0),
        Route::System,
    ))
}

/// Default route: Gram formula for well-conditioned bases, projection
/// otherwise.
pub fn circum(base: &ConicBase) -> CircumDirection {
    if base.gram().min_eigenvalue() > WELL_CONDITIONED {
        if let Ok(c) = circum_via_gram(base) {
            return c;
        }
    }
    circum_via_projection(base)
}

/// `(λ_min(M)/p, λ_max(M)/p)`.
pub fn spectral_bounds(m: &GramMatrix) -> (f64, f64) {
    let e = m.eigen();
    let p = m.size() as f64;
    (e.min() / p, e.max() / p)
}

/// Axis `−d/‖d‖` and half-aperture `arccos‖d‖`.
pub fn aperture_axis(c: &CircumDirection) -> Result<(Vec<f64>, f64)> {
    if c.is_zero() {
        return Err(Error::DegenerateDirection);
    }
    let n = linalg::norm(&c.d);
    Ok((linalg::scale(&c.d, -1.0 / n), n.min(1.0).acos()))
}
