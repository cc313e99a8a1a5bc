//! Reverse triangle inequalities `0 ≤ ‖x‖ + ‖y‖ − ‖x + y‖ ≤ bound`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conditions::{self, ConditionReport, ScalarPair};
use crate::error::{IneqError, Result};
use crate::schwarz::Quantity;
use crate::space::{norm, SchwarzDefect, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleDefect {
    /// `‖x‖ + ‖y‖ − ‖x + y‖`
    pub defect: f64,
    pub bound: f64,
    pub admissibility: ConditionReport,
    /// Named intermediate quantities along the proof route.
    pub route: Vec<Quantity>,
}

impl TriangleDefect {
    pub fn slack(&self) -> f64 {
        self.bound - self.defect
    }
}

/// Norms and defect of the pair `(x, y)`.
pub(crate) struct TriangleParts {
    pub norm_x: f64,
    pub norm_y: f64,
    pub norm_sum: f64,
    pub defect: f64,
}

/// Evaluates `‖x‖ + ‖y‖ − ‖x+y‖` as `2(‖x‖‖y‖ − Re⟨x,y⟩) / (‖x‖ + ‖y‖ + ‖x+y‖)`,
/// avoiding the cancellation of the direct difference.
pub(crate) fn triangle_parts(x: &Vector, y: &Vector) -> Result<TriangleParts> {
    let d = SchwarzDefect::new(x, y)?;
    let norm_x = norm(x);
    let norm_y = norm(y);
    let norm_sum = norm(&x.add(y)?);
    let den = norm_x + norm_y + norm_sum;
    let defect = if den > 0.0 {
        (2.0 * d.real_gap(Complex64::new(1.0, 0.0)) / den).max(0.0)
    } else {
        0.0
    };
    Ok(TriangleParts {
        norm_x,
        norm_y,
        norm_sum,
        defect,
    })
}

/// `0 ≤ ‖x‖ + ‖a‖ − ‖x + a‖ ≤ r` for `‖x − a‖ ≤ r`.
pub fn triangle_reverse_ball(x: &Vector, a: &Vector, r: f64) -> Result<TriangleDefect> {
    let admissibility = conditions::in_closed_ball(x, a, r)?;
    let p = triangle_parts(x, a)?;
    let sum = p.norm_x + p.norm_y;
    let d = SchwarzDefect::new(x, a)?;
    // (‖x‖+‖a‖)² − ‖x+a‖² = 2(‖x‖‖a‖ − Re⟨x,a⟩)
    let sq_defect = 2.0 * d.real_gap(Complex64::new(1.0, 0.0));
    let root = (r * r + p.norm_sum * p.norm_sum).sqrt();
    Ok(TriangleDefect {
        defect: p.defect,
        bound: r,
        admissibility,
        route: vec![
            Quantity::new("sq_defect", sq_defect),
            Quantity::new("sq_bound", r * r),
            Quantity::new("norm_sum", sum),
            Quantity::new("root_bound", root),
            Quantity::new("linear_bound", r + p.norm_sum),
        ],
    })
}

pub(crate) fn check_m_pair(m: f64, big_m: f64) -> Result<()> {
    if !(m.is_finite() && big_m.is_finite() && m > 0.0 && big_m > m) {
        return Err(IneqError::InvalidParameter(format!(
            "need M > m > 0, got m={m}, M={big_m}"
        )));
    }
    Ok(())
}

/// `0 ≤ ‖x‖ + ‖y‖ − ‖x + y‖ ≤ (√2/2)·(M−m)/√(M+m)·‖y‖` under the two-sided
/// condition with real scalars `M > m > 0`.
pub fn triangle_reverse_pair(x: &Vector, y: &Vector, m: f64, big_m: f64) -> Result<TriangleDefect> {
    check_m_pair(m, big_m)?;
    let admissibility = conditions::two_sided_either(x, y, &ScalarPair::real(m, big_m))?;
    let p = triangle_parts(x, y)?;
    let bound = std::f64::consts::FRAC_1_SQRT_2 * (big_m - m) / (big_m + m).sqrt() * p.norm_y;
    let root = (0.5 * (big_m - m).powi(2) / (big_m + m) * p.norm_y * p.norm_y
        + p.norm_sum * p.norm_sum)
        .sqrt();
    Ok(TriangleDefect {
        defect: p.defect,
        bound,
        admissibility,
        route: vec![
            Quantity::new("norm_sum", p.norm_x + p.norm_y),
            Quantity::new("root_bound", root),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(c: &[f64]) -> Vector {
        Vector::real(c).unwrap()
    }

    #[test]
    fn ball_examples() {
        let a = v(&[1.0, 0.0]);
        let t = triangle_reverse_ball(&a, &a, 0.3).unwrap();
        assert_eq!(t.defect, 0.0);

        let t = triangle_reverse_ball(&v(&[1.0, 0.5]), &a, 0.5).unwrap();
        // mpmath: √1.25 + 1 − √4.25
        assert_abs_diff_eq!(t.defect, 0.05648117594106457, epsilon = 1e-14);
        assert_eq!(t.bound, 0.5);
        assert!(t.admissibility.holds);

        let t = triangle_reverse_ball(&v(&[-1.0, 0.0]), &a, 2.0).unwrap();
        assert_abs_diff_eq!(t.defect, 2.0, epsilon = 1e-15);
        assert_eq!(t.bound, 2.0);
        assert!(t.admissibility.holds);
    }

    #[test]
    fn ball_route_values() {
        let t = triangle_reverse_ball(&v(&[1.0, 0.5]), &v(&[1.0, 0.0]), 0.5).unwrap();
        let get = |l: &str| t.route.iter().find(|q| q.label == l).unwrap().value;
        let direct = (1.25f64.sqrt() + 1.0).powi(2) - 4.25;
        assert_abs_diff_eq!(get("sq_defect"), direct, epsilon = 1e-14);
        assert!(get("sq_defect") <= get("sq_bound"));
        assert!(get("norm_sum") <= get("root_bound"));
        assert!(get("root_bound") <= get("linear_bound"));
    }

    #[test]
    fn pair_examples() {
        let y = v(&[1.0, 1.0]);
        let t = triangle_reverse_pair(&v(&[2.0, 1.0]), &y, 1.0, 2.0).unwrap();
        assert!(t.admissibility.holds);
        assert_abs_diff_eq!(t.defect, 0.04473026440889545, epsilon = 1e-14);
        assert_abs_diff_eq!(t.bound, 0.5773502691896258, epsilon = 1e-15);

        let t = triangle_reverse_pair(&y, &y, 1.0, 2.0).unwrap();
        assert!(t.admissibility.holds);
        assert_eq!(t.defect, 0.0);

        let t = triangle_reverse_pair(&v(&[1.5, 0.0]), &v(&[1.0, 0.0]), 1.0, 2.0).unwrap();
        assert_eq!(t.defect, 0.0);
        assert_abs_diff_eq!(t.bound, 0.408248290463863, epsilon = 1e-15);
    }

    #[test]
    fn pair_rejects_bad_range() {
        let y = v(&[1.0, 1.0]);
        assert!(triangle_reverse_pair(&y, &y, 2.0, 2.0).is_err());
        assert!(triangle_reverse_pair(&y, &y, 0.0, 2.0).is_err());
        assert!(triangle_reverse_pair(&y, &y, 3.0, 2.0).is_err());
    }
}
