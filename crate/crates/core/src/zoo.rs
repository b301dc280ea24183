//! Canonical cones beyond the polyhedral case.
//!
//! For a closed convex pointed cone the role of the conic base is played by
//! its extremal section `E_K`, the unit vectors along extreme rays. When the
//! closed affine hull of `E_K` avoids the origin, `d = −proj_{aff E_K}(0)`
//! has `⟨d, u⟩ = −‖d‖²` on all of `E_K` and the admissible set is cut out by
//! the extremal support `sup_{u ∈ E_K} ⟨w, u⟩`.
//!
//! Symmetric matrices are embedded in `ℝ^{n(n+1)/2}` row by row over the
//! upper triangle, off-diagonal entries scaled by `√2`, so the Euclidean
//! inner product of embeddings is the Frobenius inner product.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use crate::admissible::{ratio_depth, DepthResult};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{self, CircumDirection, ConicBase, Route};
use crate::linalg::{self, Matrix};
use crate::sampling;

/// Tolerance on the distance from the origin to the sampled affine hull.
pub const HYPOTHESIS_TOL: f64 = 1e-8;
/// Slack allowed by the exact polar-membership tests.
pub const POLAR_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum ConeDescriptor {
    /// `ℝⁿ₊`
    Orthant(usize),
    /// `{(x, t) ∈ ℝ^{n−1} × ℝ : ‖x‖ ≤ t}`
    Soc(usize),
    /// Positive semidefinite `n × n` matrices, embedded.
    Psd(usize),
    /// Doubly nonnegative `n × n` matrices, embedded.
    Dnn(usize),
    /// `{(x, t) : ‖x‖_p ≤ t}` in `ℝⁿ`.
    PCone { n: usize, p: f64 },
    Product(Vec<ConeDescriptor>),
    Polyhedral(ConicBase),
}

impl ConeDescriptor {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCone(msg));
        match self {
            ConeDescriptor::Orthant(n) | ConeDescriptor::Psd(n) | ConeDescriptor::Dnn(n) => {
                if *n == 0 {
                    return bad(format!("{} needs n >= 1", self.name()));
                }
            }
            ConeDescriptor::Soc(n) => {
                if *n < 2 {
                    return bad("soc needs n >= 2".into());
                }
            }
            ConeDescriptor::PCone { n, p } => {
                if *n < 2 {
                    return bad("pcone needs n >= 2".into());
                }
                if !(p.is_finite() && *p > 1.0) {
                    return bad(format!("pcone exponent {p} is not in (1, inf)"));
                }
            }
            ConeDescriptor::Product(blocks) => {
                if blocks.is_empty() {
                    return bad("empty product".into());
                }
                for b in blocks {
                    b.validate()?;
                }
            }
            ConeDescriptor::Polyhedral(_) => {}
        }
        Ok(())
    }

    /// Dimension of the ambient (embedded) space.
    pub fn dim(&self) -> usize {
        match self {
            ConeDescriptor::Orthant(n) | ConeDescriptor::Soc(n) => *n,
            ConeDescriptor::Psd(n) | ConeDescriptor::Dnn(n) => svec_len(*n),
            ConeDescriptor::PCone { n, .. } => *n,
            ConeDescriptor::Product(blocks) => blocks.iter().map(Self::dim).sum(),
            ConeDescriptor::Polyhedral(b) => b.dim(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ConeDescriptor::Orthant(n) => format!("orthant({n})"),
            ConeDescriptor::Soc(n) => format!("soc({n})"),
            ConeDescriptor::Psd(n) => format!("psd({n})"),
            ConeDescriptor::Dnn(n) => format!("dnn({n})"),
            ConeDescriptor::PCone { n, p } => format!("pcone({n}, {p})"),
            ConeDescriptor::Product(blocks) => {
                let inner: Vec<String> = blocks.iter().map(Self::name).collect();
                format!("product({})", inner.join(", "))
            }
            ConeDescriptor::Polyhedral(b) => format!("polyhedral({} generators)", b.len()),
        }
    }

    /// Splits a vector of the ambient space into block slices.
    fn blocks_of<'a>(blocks: &[ConeDescriptor], z: &'a [f64]) -> Vec<&'a [f64]> {
        let mut out = Vec::with_capacity(blocks.len());
        let mut start = 0;
        for b in blocks {
            let end = start + b.dim();
            out.push(&z[start..end]);
            start = end;
        }
        out
    }
}

/// Length of the half-vectorization of an `n × n` symmetric matrix.
pub fn svec_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Order `n` with `n(n+1)/2 == len`, if any.
pub fn svec_order(len: usize) -> Option<usize> {
    let n = ((((8 * len + 1) as f64).sqrt() - 1.0) / 2.0).round() as usize;
    (svec_len(n) == len).then_some(n)
}

/// Isometric embedding of a symmetric matrix.
pub fn svec(m: &Matrix) -> Vec<f64> {
    let n = m.rows();
    let mut out = Vec::with_capacity(svec_len(n));
    for i in 0..n {
        out.push(m[(i, i)]);
        for j in (i + 1)..n {
            out.push(SQRT_2 * 0.5 * (m[(i, j)] + m[(j, i)]));
        }
    }
    out
}

/// Inverse of [`svec`].
pub fn smat(v: &[f64], n: usize) -> Matrix {
    debug_assert_eq!(v.len(), svec_len(n));
    let mut m = Matrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        m[(i, i)] = v[k];
        k += 1;
        for j in (i + 1)..n {
            m[(i, j)] = v[k] * FRAC_1_SQRT_2;
            m[(j, i)] = m[(i, j)];
            k += 1;
        }
    }
    m
}

/// Embedded `v vᵀ`.
pub fn svec_outer(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut out = Vec::with_capacity(svec_len(n));
    for i in 0..n {
        out.push(v[i] * v[i]);
        for j in (i + 1)..n {
            out.push(SQRT_2 * v[i] * v[j]);
        }
    }
    out
}

fn closed_form(d: Vec<f64>, norm_sq: f64) -> CircumDirection {
    CircumDirection::with_norm_sq(d, norm_sq, None, Route::ClosedForm)
}

/// Circumcentric direction of a canonical cone.
pub fn circum_direction(c: &ConeDescriptor) -> Result<CircumDirection> {
    c.validate()?;
    match c {
        ConeDescriptor::Orthant(n) => {
            let k = *n as f64;
            Ok(closed_form(vec![-1.0 / k; *n], 1.0 / k))
        }
        ConeDescriptor::Soc(n) => {
            let mut d = vec![0.0; *n];
            d[n - 1] = -FRAC_1_SQRT_2;
            Ok(closed_form(d, 0.5))
        }
        ConeDescriptor::Psd(n) | ConeDescriptor::Dnn(n) => {
            let k = *n as f64;
            let d = svec(&Matrix::diag(&vec![-1.0 / k; *n]));
            Ok(closed_form(d, 1.0 / k))
        }
        ConeDescriptor::PCone { n, p } => {
            if *p == 2.0 {
                circum_direction(&ConeDescriptor::Soc(*n))
            } else {
                Err(Error::HypothesisFails {
                    variant: c.name(),
                    distance: 0.0,
                })
            }
        }
        ConeDescriptor::Product(blocks) => {
            let parts = blocks
                .iter()
                .map(circum_direction)
                .collect::<Result<Vec<_>>>()?;
            let inv_total: f64 = parts.iter().map(|b| 1.0 / b.norm_sq).sum();
            let mut d = Vec::with_capacity(c.dim());
            for part in &parts {
                // the block weight is (1/δ_ℓ) / Σ 1/δ
                let weight = (1.0 / part.norm_sq) / inv_total;
                d.extend(part.d.iter().map(|x| weight * x));
            }
            Ok(closed_form(d, 1.0 / inv_total))
        }
        ConeDescriptor::Polyhedral(base) => {
            let circ = geometry::circum(base);
            let distance = circ.norm_sq.sqrt();
            if distance <= HYPOTHESIS_TOL {
                return Err(Error::HypothesisFails {
                    variant: c.name(),
                    distance,
                });
            }
            Ok(circ)
        }
    }
}

/// Points of the extremal section, pseudo-random but seed-deterministic.
pub fn sample_extremal(c: &ConeDescriptor, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = sampling::rng(seed);
    match c {
        ConeDescriptor::Orthant(n) => (0..count.min(*n))
            .map(|i| {
                let mut e = vec![0.0; *n];
                e[i] = 1.0;
                e
            })
            .collect(),
        ConeDescriptor::Soc(n) => (0..count)
            .map(|_| {
                let mut u = linalg::scale(&sampling::unit_vec(&mut rng, n - 1), FRAC_1_SQRT_2);
                u.push(FRAC_1_SQRT_2);
                u
            })
            .collect(),
        ConeDescriptor::Psd(n) => (0..count)
            .map(|_| svec_outer(&sampling::unit_vec(&mut rng, *n)))
            .collect(),
        ConeDescriptor::Dnn(n) => (0..count)
            .map(|_| {
                let v: Vec<f64> = sampling::unit_vec(&mut rng, *n)
                    .into_iter()
                    .map(f64::abs)
                    .collect();
                svec_outer(&v)
            })
            .collect(),
        ConeDescriptor::PCone { n, p } => {
            let k = n - 1;
            let mut omegas: Vec<Vec<f64>> = Vec::new();
            if k >= 2 {
                let e = |i: usize, s: f64| {
                    let mut v = vec![0.0; k];
                    v[i] = s;
                    v
                };
                let mut diag = vec![0.0; k];
                diag[0] = FRAC_1_SQRT_2;
                diag[1] = FRAC_1_SQRT_2;
                omegas.extend([e(0, 1.0), e(0, -1.0), e(1, 1.0), e(1, -1.0), diag]);
            } else {
                omegas.extend([vec![1.0], vec![-1.0]]);
            }
            omegas.truncate(count);
            while omegas.len() < count {
                omegas.push(sampling::unit_vec(&mut rng, k));
            }
            omegas
                .into_iter()
                .map(|w| {
                    let t = p_norm(&w, *p);
                    let s = 1.0 / (1.0 + t * t).sqrt();
                    let mut u = linalg::scale(&w, s);
                    u.push(t * s);
                    u
                })
                .collect()
        }
        ConeDescriptor::Polyhedral(base) => base.vectors().to_vec(),
        ConeDescriptor::Product(blocks) => {
            let total = c.dim();
            let mut out = Vec::new();
            let mut offset = 0;
            for (l, b) in blocks.iter().enumerate() {
                for s in sample_extremal(b, count, sampling::sub_seed(seed, l as u64)) {
                    let mut u = vec![0.0; total];
                    u[offset..offset + s.len()].copy_from_slice(&s);
                    out.push(u);
                }
                offset += b.dim();
            }
            out
        }
    }
}

fn p_norm(x: &[f64], p: f64) -> f64 {
    x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Outcome of the affine-hull test on a sample of `E_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub holds: bool,
    /// Distance from the origin to the affine hull of the sample.
    pub distance: f64,
    /// The circumcentric direction, present exactly when `holds`.
    pub witness: Option<CircumDirection>,
}

/// Decides whether the affine hull of `samples` stays away from the origin.
pub fn hypothesis_check(samples: &[Vec<f64>]) -> Result<HypothesisReport> {
    if samples.is_empty() {
        return Err(Error::Empty("hypothesis sample"));
    }
    let dim = samples[0].len();
    for s in samples {
        check_dim(dim, s.len())?;
    }
    let x = geometry::affine_projection_of_origin(samples);
    let distance = linalg::norm(&x);
    let holds = distance > HYPOTHESIS_TOL;
    let witness = holds.then(|| {
        CircumDirection::with_norm_sq(
            linalg::scale(&x, -1.0),
            distance * distance,
            None,
            Route::Projection,
        )
    });
    Ok(HypothesisReport {
        holds,
        distance,
        witness,
    })
}

/// `sup_{u ∈ E_K} ⟨w, u⟩` in closed form.
pub fn support_on_extremal(c: &ConeDescriptor, w: &[f64]) -> Result<f64> {
    c.validate()?;
    check_dim(c.dim(), w.len())?;
    match c {
        ConeDescriptor::Orthant(_) => Ok(w.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        ConeDescriptor::Soc(n) => {
            let (x, t) = w.split_at(n - 1);
            Ok((linalg::norm(x) + t[0]) * FRAC_1_SQRT_2)
        }
        ConeDescriptor::Psd(n) => Ok(linalg::sym_eigen(&smat(w, *n)).max()),
        ConeDescriptor::Dnn(_) | ConeDescriptor::PCone { .. } => {
            Err(Error::UnsupportedExact(c.name()))
        }
        ConeDescriptor::Polyhedral(base) => Ok(base.max_inner(w)?.0),
        ConeDescriptor::Product(blocks) => {
            let mut best = f64::NEG_INFINITY;
            for (b, wb) in blocks.iter().zip(ConeDescriptor::blocks_of(blocks, w)) {
                best = best.max(support_on_extremal(b, wb)?);
            }
            Ok(best)
        }
    }
}

/// Lower bound on the extremal support from `sample_extremal`.
pub fn support_sampled(c: &ConeDescriptor, w: &[f64], count: usize, seed: u64) -> Result<f64> {
    check_dim(c.dim(), w.len())?;
    Ok(sample_extremal(c, count, seed)
        .iter()
        .map(|u| linalg::dot(w, u))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `‖d‖² / sup_{E_K} ⟨w, ·⟩`, or `+∞` for nonpositive support.
pub fn directional_depth_np(c: &ConeDescriptor, w: &[f64]) -> Result<DepthResult> {
    let circ = circum_direction(c)?;
    check_dim(c.dim(), w.len())?;
    if w.iter().all(|x| *x == 0.0) {
        return Err(Error::ZeroDirection);
    }
    if let ConeDescriptor::Polyhedral(base) = c {
        return crate::admissible::directional_depth(base, circ.norm_sq, w);
    }
    let value = ratio_depth(circ.norm_sq, support_on_extremal(c, w)?);
    Ok(DepthResult {
        value,
        binding: None,
    })
}

/// Signed violation of polar membership; `z ∈ K°` iff this is `≤ 0`
/// (up to [`POLAR_TOL`]).
pub fn polar_margin(c: &ConeDescriptor, z: &[f64]) -> Result<f64> {
    c.validate()?;
    check_dim(c.dim(), z.len())?;
    match c {
        ConeDescriptor::Orthant(_) => Ok(z.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        ConeDescriptor::Soc(n) => {
            let (x, t) = z.split_at(n - 1);
            Ok(linalg::norm(x) + t[0])
        }
        ConeDescriptor::Psd(n) => Ok(linalg::sym_eigen(&smat(z, *n)).max()),
        ConeDescriptor::PCone { n, p } => {
            // the polar is −(dual cone) with the conjugate exponent
            let q = p / (p - 1.0);
            let (x, t) = z.split_at(n - 1);
            Ok(p_norm(x, q) + t[0])
        }
        ConeDescriptor::Dnn(_) => Err(Error::UnsupportedExact(c.name())),
        ConeDescriptor::Polyhedral(base) => Ok(base.max_inner(z)?.0),
        ConeDescriptor::Product(blocks) => {
            let mut worst = f64::NEG_INFINITY;
            for (b, zb) in blocks.iter().zip(ConeDescriptor::blocks_of(blocks, z)) {
                worst = worst.max(polar_margin(b, zb)?);
            }
            Ok(worst)
        }
    }
}

pub fn polar_membership(c: &ConeDescriptor, z: &[f64]) -> Result<bool> {
    Ok(polar_margin(c, z)? <= POLAR_TOL)
}

/// Sampled falsification of `z ∈ K°`: a sampled extremal `u` with
/// `⟨z, u⟩ > POLAR_TOL`, if one turns up. Finding none proves nothing.
pub fn polar_violation_sampled(
    c: &ConeDescriptor,
    z: &[f64],
    count: usize,
    seed: u64,
) -> Result<Option<Vec<f64>>> {
    check_dim(c.dim(), z.len())?;
    Ok(sample_extremal(c, count, seed)
        .into_iter()
        .find(|u| linalg::dot(z, u) > POLAR_TOL))
}

/// `1/r` for the symmetric cones, `r` the Jordan rank.
pub fn jordan_value(c: &ConeDescriptor) -> Option<f64> {
    match c {
        ConeDescriptor::Orthant(n) | ConeDescriptor::Psd(n) if *n >= 1 => Some(1.0 / *n as f64),
        ConeDescriptor::Soc(n) if *n >= 2 => Some(0.5),
        _ => None,
    }
}
