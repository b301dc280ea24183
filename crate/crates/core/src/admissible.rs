//! Exact admissible set for polyhedral cones.
//!
//! `d + v ∈ K°` holds exactly when `max_i ⟨v, uⁱ⟩ ≤ ‖d‖²`. Everything in
//! this module reads off that inequality: pointwise margins, the depth
//! along a ray, and the points where the inscribed ball touches the
//! boundary.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geometry::ConicBase;
use crate::{linalg, Extended};

/// Directional depth together with the generator that binds it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepthResult {
    pub value: Extended,
    /// Absent when the depth is infinite, and for cones without an indexed
    /// generator list.
    pub binding: Option<usize>,
}

impl DepthResult {
    pub fn infinite() -> Self {
        Self {
            value: Extended::Infinite,
            binding: None,
        }
    }
}

/// `norm_sq / support` with `+∞` for nonpositive support.
pub(crate) fn ratio_depth(norm_sq: f64, support: f64) -> Extended {
    if support <= 0.0 {
        Extended::Infinite
    } else {
        Extended::Finite(norm_sq / support)
    }
}

/// `‖d‖² − max_i ⟨v, uⁱ⟩`: nonnegative iff `d + v ∈ K°`, positive iff
/// `d + v` is interior.
pub fn admissible_margin(base: &ConicBase, norm_sq: f64, v: &[f64]) -> Result<f64> {
    let (m, _) = base.max_inner(v)?;
    Ok(norm_sq - m)
}

/// Largest `t ≥ 0` with `d + t·w ∈ K°`.
pub fn directional_depth(base: &ConicBase, norm_sq: f64, w: &[f64]) -> Result<DepthResult> {
    let (support, index) = base.max_inner(w)?;
    if w.iter().all(|x| *x == 0.0) {
        return Err(Error::ZeroDirection);
    }
    let value = ratio_depth(norm_sq, support);
    Ok(DepthResult {
        value,
        binding: (!value.is_infinite()).then_some(index),
    })
}

/// Lower bound `cos²θ / [cos(φ − θ)]₊` on the depth along any unit
/// direction at angle `phi` from the aperture axis, where `cos θ = ‖d‖`.
pub fn angular_depth_bound(norm_sq: f64, phi: f64) -> Result<Extended> {
    // ‖d‖² of a single ray can round to just above 1
    if !(norm_sq > 0.0 && norm_sq <= 1.0 + 1e-12) {
        return Err(Error::OutOfRange {
            value: norm_sq,
            range: "(0, 1]",
        });
    }
    if !(0.0..=std::f64::consts::PI).contains(&phi) {
        return Err(Error::OutOfRange {
            value: phi,
            range: "[0, pi]",
        });
    }
    let theta = norm_sq.min(1.0).sqrt().acos();
    let c = (phi - theta).cos();
    if phi - theta >= FRAC_PI_2 || c <= 0.0 {
        return Ok(Extended::Infinite);
    }
    Ok(Extended::Finite(norm_sq / c))
}

/// Points where the ball of radius `‖d‖²` touches the admissible boundary:
/// `‖d‖²·uⁱ` for each generator.
pub fn contact_points(base: &ConicBase, norm_sq: f64) -> Vec<Vec<f64>> {
    base.vectors()
        .iter()
        .map(|u| linalg::scale(u, norm_sq))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::circum;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn orthant() -> ConicBase {
        ConicBase::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn margin_examples() {
        let b = orthant();
        assert_eq!(admissible_margin(&b, 0.5, &[0.5, 0.0]).unwrap(), 0.0);
        assert_eq!(admissible_margin(&b, 0.5, &[-10.0, -10.0]).unwrap(), 10.5);
        assert!((admissible_margin(&b, 0.5, &[0.6, 0.0]).unwrap() + 0.1).abs() < 1e-15);
        assert!(matches!(
            admissible_margin(&b, 0.5, &[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn depth_examples() {
        let b = orthant();
        let r = directional_depth(&b, 0.5, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        assert!((r.value.to_f64() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(r.binding, Some(0));

        let r = directional_depth(&b, 0.5, &[1.0, 0.0]).unwrap();
        assert_eq!(r.value, Extended::Finite(0.5));

        let r = directional_depth(&b, 0.5, &[-1.0, -1.0]).unwrap();
        assert_eq!(r, DepthResult::infinite());

        let r = directional_depth(&b, 0.5, &[0.2, 0.3]).unwrap();
        assert_eq!(r.binding, Some(1));

        assert_eq!(
            directional_depth(&b, 0.5, &[0.0, 0.0]),
            Err(Error::ZeroDirection)
        );
    }

    #[test]
    fn angular_examples() {
        let b = angular_depth_bound(0.5, 0.0).unwrap().to_f64();
        assert!((b - FRAC_1_SQRT_2).abs() < 1e-15);
        let b = angular_depth_bound(0.5, FRAC_PI_4).unwrap().to_f64();
        assert!((b - 0.5).abs() < 1e-15);
        assert_eq!(angular_depth_bound(0.5, PI).unwrap(), Extended::Infinite);
        assert!(angular_depth_bound(0.0, 0.1).is_err());
        assert!(angular_depth_bound(1.5, 0.1).is_err());
        assert!(angular_depth_bound(0.5, -0.1).is_err());
    }

    #[test]
    fn contact_examples() {
        let b = orthant();
        let c = circum(&b);
        let pts = contact_points(&b, c.norm_sq);
        assert_eq!(pts, vec![vec![0.5, 0.0], vec![0.0, 0.5]]);
        for p in &pts {
            assert!(admissible_margin(&b, c.norm_sq, p).unwrap().abs() < 1e-12);
            assert!((linalg::norm(p) - c.norm_sq).abs() < 1e-12);
        }

        let ray = ConicBase::new(vec![vec![0.6, 0.8]]).unwrap();
        assert_eq!(contact_points(&ray, 1.0), vec![vec![0.6, 0.8]]);

        let ortho = ConicBase::new(vec![
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        let c = circum(&ortho);
        for (p, u) in contact_points(&ortho, c.norm_sq).iter().zip(ortho.vectors()) {
            assert!(linalg::max_abs_diff(p, &linalg::scale(u, 1.0 / 3.0)) < 1e-15);
        }
    }

    #[test]
    fn sharpness_probe_on_orthant() {
        let b = orthant();
        let ns = 0.5;
        for u in b.vectors() {
            for r in [1.01, 1.1, 2.0] {
                let v = linalg::scale(u, r * ns);
                assert!(admissible_margin(&b, ns, &v).unwrap() < 0.0);
            }
        }
    }
}
