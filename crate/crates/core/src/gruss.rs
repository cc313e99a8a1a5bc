//! Grüss-type bounds for `|⟨x,y⟩ − ⟨x,e⟩⟨e,y⟩|` with a unit vector `e`.
//!
//! Every bound goes through the residual Schwarz step
//! `gap² ≤ (‖x‖² − |⟨x,e⟩|²)(‖y‖² − |⟨y,e⟩|²)` followed by a reverse
//! Schwarz estimate of each factor.

use serde::{Deserialize, Serialize};

use crate::conditions::{self, ConditionReport, ScalarPair};
use crate::error::{IneqError, Result};
use crate::schwarz::Quantity;
use crate::space::{gram_defect, inner, norm, Vector};

/// Allowed deviation of `‖e‖` from 1.
pub const UNIT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrussReport {
    pub gap: f64,
    /// One or two bounds in the order they are stated.
    pub bounds: Vec<Quantity>,
    pub intermediates: Vec<Quantity>,
    /// Conditions on `x` and on `y`.
    pub admissibility: [ConditionReport; 2],
}

impl GrussReport {
    pub fn admissible(&self) -> bool {
        self.admissibility.iter().all(|r| r.holds)
    }

    /// Tightest (first) bound.
    pub fn bound(&self) -> f64 {
        self.bounds[0].value
    }

    pub fn intermediate(&self, label: &str) -> Option<f64> {
        self.intermediates
            .iter()
            .find(|q| q.label == label)
            .map(|q| q.value)
    }

    pub fn require_admissible(self) -> Result<Self> {
        for r in self.admissibility {
            r.require()?;
        }
        Ok(self)
    }
}

pub(crate) fn check_unit(e: &Vector) -> Result<()> {
    let n = norm(e);
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(IneqError::NotUnit { norm: n });
    }
    Ok(())
}

/// `|⟨x,y⟩ − ⟨x,e⟩⟨e,y⟩|`.
pub fn gruss_gap(x: &Vector, y: &Vector, e: &Vector) -> Result<f64> {
    check_unit(e)?;
    Ok((inner(x, y)? - inner(x, e)? * inner(e, y)?).norm())
}

/// Per-vector data shared by all four bounds.
struct Side {
    norm: f64,
    /// `|⟨·,e⟩|`
    proj: f64,
    /// `‖·‖² − |⟨·,e⟩|²`
    residual: f64,
}

impl Side {
    fn new(v: &Vector, e: &Vector) -> Result<Self> {
        Ok(Self {
            norm: norm(v),
            proj: inner(v, e)?.norm(),
            residual: gram_defect(v, e)?,
        })
    }
}

struct Common {
    gap: f64,
    x: Side,
    y: Side,
}

fn common(x: &Vector, y: &Vector, e: &Vector) -> Result<Common> {
    Ok(Common {
        gap: gruss_gap(x, y, e)?,
        x: Side::new(x, e)?,
        y: Side::new(y, e)?,
    })
}

fn residuals(c: &Common) -> Vec<Quantity> {
    vec![
        Quantity::new("residual_x", c.x.residual),
        Quantity::new("residual_y", c.y.residual),
    ]
}

/// Bound under `‖x − e‖ ≤ r₁`, `‖y − e‖ ≤ r₂`:
/// `½r₁r₂√(‖x‖+|⟨x,e⟩|)√(‖y‖+|⟨y,e⟩|)`, followed by the coarser `r₁r₂‖x‖‖y‖`.
///
/// The intermediate `sqrt_norm_bound` is `r₁r₂√(‖x‖‖y‖)`, the quantity the
/// first bound is always dominated by; `r₁r₂‖x‖‖y‖` can be smaller than the
/// first bound when `‖x‖‖y‖ < 1`, so the two bounds are not ordered in general.
pub fn gruss_ball(x: &Vector, y: &Vector, e: &Vector, r1: f64, r2: f64) -> Result<GrussReport> {
    let admissibility = [
        conditions::in_closed_ball(x, e, r1)?,
        conditions::in_closed_ball(y, e, r2)?,
    ];
    let c = common(x, y, e)?;
    let first = 0.5 * r1 * r2 * (c.x.norm + c.x.proj).sqrt() * (c.y.norm + c.y.proj).sqrt();
    let mut intermediates = residuals(&c);
    intermediates.extend([
        Quantity::new("residual_bound_x", 0.5 * r1 * r1 * (c.x.norm + c.x.proj)),
        Quantity::new("residual_bound_y", 0.5 * r2 * r2 * (c.y.norm + c.y.proj)),
        Quantity::new("residual_coarse_x", r1 * r1 * c.x.norm),
        Quantity::new("residual_coarse_y", r2 * r2 * c.y.norm),
        Quantity::new("sqrt_norm_bound", r1 * r2 * (c.x.norm * c.y.norm).sqrt()),
    ]);
    Ok(GrussReport {
        gap: c.gap,
        bounds: vec![
            Quantity::new("bound", first),
            Quantity::new("norm_product_bound", r1 * r2 * c.x.norm * c.y.norm),
        ],
        intermediates,
        admissibility,
    })
}

/// `r₁r₂√(¼r₁² + |⟨x,e⟩|)√(¼r₂² + |⟨y,e⟩|)` under the same ball conditions.
pub fn gruss_ball_refined(
    x: &Vector,
    y: &Vector,
    e: &Vector,
    r1: f64,
    r2: f64,
) -> Result<GrussReport> {
    let admissibility = [
        conditions::in_closed_ball(x, e, r1)?,
        conditions::in_closed_ball(y, e, r2)?,
    ];
    let c = common(x, y, e)?;
    let fx = r1 * r1 * (0.25 * r1 * r1 + c.x.proj);
    let fy = r2 * r2 * (0.25 * r2 * r2 + c.y.proj);
    let mut intermediates = residuals(&c);
    intermediates.extend([
        Quantity::new("residual_bound_x", fx),
        Quantity::new("residual_bound_y", fy),
    ]);
    Ok(GrussReport {
        gap: c.gap,
        bounds: vec![Quantity::new("bound", (fx * fy).sqrt())],
        intermediates,
        admissibility,
    })
}

fn pair_setup(
    x: &Vector,
    y: &Vector,
    e: &Vector,
    pair_x: &ScalarPair,
    pair_y: &ScalarPair,
) -> Result<[ConditionReport; 2]> {
    pair_x.check_nondegenerate()?;
    pair_y.check_nondegenerate()?;
    check_unit(e)?;
    pair_x.check_field(e.field())?;
    pair_y.check_field(e.field())?;
    Ok([
        conditions::two_sided_either(x, e, pair_x)?,
        conditions::two_sided_either(y, e, pair_y)?,
    ])
}

/// `|A−a|² / |A+a|`
fn pair_ratio(p: &ScalarPair) -> f64 {
    p.diff_abs().powi(2) / p.sum_abs()
}

/// Bound under `Re⟨Ae − x, x − ae⟩ ≥ 0`, `Re⟨Be − y, y − be⟩ ≥ 0`:
/// `¼·|A−a||B−b|/√(|A+a||B+b|)·√(‖x‖+|⟨x,e⟩|)√(‖y‖+|⟨y,e⟩|)`, then
/// `½·|A−a||B−b|/√(|A+a||B+b|)·√(‖x‖‖y‖)`.
pub fn gruss_pair(
    x: &Vector,
    y: &Vector,
    e: &Vector,
    pair_x: &ScalarPair,
    pair_y: &ScalarPair,
) -> Result<GrussReport> {
    let admissibility = pair_setup(x, y, e, pair_x, pair_y)?;
    let c = common(x, y, e)?;
    let k = pair_x.diff_abs() * pair_y.diff_abs() / (pair_x.sum_abs() * pair_y.sum_abs()).sqrt();
    let first = 0.25 * k * (c.x.norm + c.x.proj).sqrt() * (c.y.norm + c.y.proj).sqrt();
    let second = 0.5 * k * (c.x.norm * c.y.norm).sqrt();
    let mut intermediates = residuals(&c);
    intermediates.extend([
        Quantity::new(
            "residual_bound_x",
            0.25 * pair_ratio(pair_x) * (c.x.norm + c.x.proj),
        ),
        Quantity::new(
            "residual_bound_y",
            0.25 * pair_ratio(pair_y) * (c.y.norm + c.y.proj),
        ),
        Quantity::new("residual_coarse_x", 0.5 * pair_ratio(pair_x) * c.x.norm),
        Quantity::new("residual_coarse_y", 0.5 * pair_ratio(pair_y) * c.y.norm),
    ]);
    Ok(GrussReport {
        gap: c.gap,
        bounds: vec![
            Quantity::new("bound", first),
            Quantity::new("sqrt_norm_bound", second),
        ],
        intermediates,
        admissibility,
    })
}

/// `½·|A−a||B−b|/√(|A+a||B+b|)·√(⅛|A−a|²/|A+a| + |⟨x,e⟩|)·√(⅛|B−b|²/|B+b| + |⟨y,e⟩|)`.
pub fn gruss_pair_refined(
    x: &Vector,
    y: &Vector,
    e: &Vector,
    pair_x: &ScalarPair,
    pair_y: &ScalarPair,
) -> Result<GrussReport> {
    let admissibility = pair_setup(x, y, e, pair_x, pair_y)?;
    let c = common(x, y, e)?;
    let (qx, qy) = (pair_ratio(pair_x), pair_ratio(pair_y));
    let fx = 0.5 * qx * (c.x.proj + 0.125 * qx);
    let fy = 0.5 * qy * (c.y.proj + 0.125 * qy);
    let mut intermediates = residuals(&c);
    intermediates.extend([
        Quantity::new("residual_bound_x", fx),
        Quantity::new("residual_bound_y", fy),
    ]);
    Ok(GrussReport {
        gap: c.gap,
        bounds: vec![Quantity::new("bound", (fx * fy).sqrt())],
        intermediates,
        admissibility,
    })
}
