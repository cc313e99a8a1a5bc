//! Admissibility predicates: closed-ball membership and the two-sided
//! conditions `Re⟨Z − x, x − z⟩ ≥ 0`, each in its real-part and ball form.
//!
//! A condition "holds" when its margin is at least `-BOUNDARY_TOL * scale`.
//! Ball-form margins are lengths and use `scale = 1 + ‖x‖ + ‖center‖ +
//! radius`; real-part margins are squared lengths and use
//! `scale = 1 + ‖x‖² + ‖Z‖² + ‖z‖²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{IneqError, Result};
use crate::space::{
    self, inner, norm, norm_sq, synthesize, CoefficientSequence, OrthonormalFamily, Scalar, Vector,
};

/// Relative boundary tolerance used to certify closed conditions.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Relative cutoff below which `|hi − lo|` or `|hi + lo|` count as zero.
pub const DEGENERATE_PAIR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionForm {
    Ball,
    RealPart,
    /// `m·g ≤ f ≤ M·g` for real functions.
    Range,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub margin: f64,
    pub form: ConditionForm,
    /// Absolute tolerance the margin was judged against.
    pub tolerance: f64,
}

impl ConditionReport {
    pub fn from_margin(margin: f64, form: ConditionForm, scale: f64) -> Self {
        let tolerance = BOUNDARY_TOL * scale;
        Self {
            holds: margin >= -tolerance,
            margin,
            form,
            tolerance,
        }
    }

    /// Turns a failing report into [`IneqError::ConditionViolated`].
    pub fn require(self) -> Result<Self> {
        if self.holds {
            Ok(self)
        } else {
            Err(IneqError::ConditionViolated(self))
        }
    }
}

/// Ordered pair of scalars `(lo, hi)` playing the roles `(γ, Γ)`, `(m, M)`,
/// `(a, A)` or `(φ, Φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarPair {
    #[serde(with = "crate::harness::wire::scalar")]
    pub lo: Scalar,
    #[serde(with = "crate::harness::wire::scalar")]
    pub hi: Scalar,
}

impl ScalarPair {
    pub fn new(lo: Scalar, hi: Scalar) -> Self {
        Self { lo, hi }
    }

    pub fn real(lo: f64, hi: f64) -> Self {
        Self::new(Complex64::new(lo, 0.0), Complex64::new(hi, 0.0))
    }

    /// `(lo + hi) / 2`
    pub fn center(&self) -> Scalar {
        (self.lo + self.hi) * 0.5
    }

    /// `|hi − lo| / 2`
    pub fn half_width(&self) -> f64 {
        (self.hi - self.lo).norm() * 0.5
    }

    pub fn diff_abs(&self) -> f64 {
        (self.hi - self.lo).norm()
    }

    pub fn sum_abs(&self) -> f64 {
        (self.hi + self.lo).norm()
    }

    /// Rejects pairs with `hi ≈ lo` or `hi ≈ −lo`.
    pub fn check_nondegenerate(&self) -> Result<()> {
        let diff = self.diff_abs();
        let sum = self.sum_abs();
        let cutoff = DEGENERATE_PAIR_TOL * (self.hi.norm() + self.lo.norm());
        if diff <= cutoff || sum <= cutoff {
            Err(IneqError::DegeneratePair { diff, sum })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_field(&self, field: space::FieldTag) -> Result<()> {
        space::check_scalar_field(field, self.lo, "pair.lo")?;
        space::check_scalar_field(field, self.hi, "pair.hi")
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(IneqError::NonPositiveRadius(r))
    }
}

/// `x ∈ B̄(a, r)`, margin `r − ‖x − a‖`.
pub fn in_closed_ball(x: &Vector, a: &Vector, r: f64) -> Result<ConditionReport> {
    check_radius(r)?;
    let dist = norm(&x.sub(a)?);
    let scale = 1.0 + norm(x) + norm(a) + r;
    Ok(ConditionReport::from_margin(
        r - dist,
        ConditionForm::Ball,
        scale,
    ))
}

/// `Re⟨Z − x, x − z⟩` for arbitrary endpoints `z`, `Z`.
pub fn realpart_form(x: &Vector, z: &Vector, big_z: &Vector) -> Result<ConditionReport> {
    let margin = inner(&big_z.sub(x)?, &x.sub(z)?)?.re;
    let scale = 1.0 + norm_sq(x) + norm_sq(big_z) + norm_sq(z);
    Ok(ConditionReport::from_margin(
        margin,
        ConditionForm::RealPart,
        scale,
    ))
}

/// `½‖Z − z‖ − ‖x − (z + Z)/2‖`.
pub fn ball_form(x: &Vector, z: &Vector, big_z: &Vector) -> Result<ConditionReport> {
    let radius = 0.5 * norm(&big_z.sub(z)?);
    let center = z.add(big_z)?.scale(Complex64::new(0.5, 0.0));
    let dist = norm(&x.sub(&center)?);
    let scale = 1.0 + norm(x) + norm(&center) + radius;
    Ok(ConditionReport::from_margin(
        radius - dist,
        ConditionForm::Ball,
        scale,
    ))
}

/// `Re⟨Γy − x, x − γy⟩ ≥ 0`.
pub fn two_sided_realpart(x: &Vector, y: &Vector, pair: &ScalarPair) -> Result<ConditionReport> {
    realpart_form(x, &y.scale(pair.lo), &y.scale(pair.hi))
}

/// `‖x − ((γ+Γ)/2) y‖ ≤ ½|Γ − γ| ‖y‖`.
pub fn two_sided_ball(x: &Vector, y: &Vector, pair: &ScalarPair) -> Result<ConditionReport> {
    let radius = pair.half_width() * norm(y);
    let center = y.scale(pair.center());
    let dist = norm(&x.sub(&center)?);
    let scale = 1.0 + norm(x) + norm(&center) + radius;
    Ok(ConditionReport::from_margin(
        radius - dist,
        ConditionForm::Ball,
        scale,
    ))
}

pub fn two_sided(
    x: &Vector,
    y: &Vector,
    pair: &ScalarPair,
    form: ConditionForm,
) -> Result<ConditionReport> {
    match form {
        ConditionForm::RealPart => two_sided_realpart(x, y, pair),
        _ => two_sided_ball(x, y, pair),
    }
}

/// Evaluates the real-part form and falls back to the ball form, so an
/// instance inside the tolerance band of either equivalent form is accepted.
pub fn two_sided_either(x: &Vector, y: &Vector, pair: &ScalarPair) -> Result<ConditionReport> {
    let rp = two_sided_realpart(x, y, pair)?;
    if rp.holds {
        return Ok(rp);
    }
    let ball = two_sided_ball(x, y, pair)?;
    Ok(if ball.holds { ball } else { rp })
}

/// Two-sided condition for an orthonormal family:
/// `‖x − Σ((Γ_i+γ_i)/2) e_i‖ ≤ ½(Σ|Γ_i − γ_i|²)^{1/2}` or
/// `Re⟨ΣΓ_i e_i − x, x − Σγ_i e_i⟩ ≥ 0`.
pub fn family_two_sided(
    x: &Vector,
    fam: &OrthonormalFamily,
    gammas: &CoefficientSequence,
    big_gammas: &CoefficientSequence,
    form: ConditionForm,
) -> Result<ConditionReport> {
    if gammas.len() != big_gammas.len() {
        return Err(IneqError::LengthMismatch {
            left: gammas.len(),
            right: big_gammas.len(),
        });
    }
    match form {
        ConditionForm::RealPart => {
            let z = synthesize(gammas, fam)?;
            let big_z = synthesize(big_gammas, fam)?;
            realpart_form(x, &z, &big_z)
        }
        _ => {
            let radius = 0.5 * big_gammas.difference(gammas)?.norm();
            let center = synthesize(&gammas.midpoint(big_gammas)?, fam)?;
            let dist = norm(&x.sub(&center)?);
            let scale = 1.0 + norm(x) + norm(&center) + radius;
            Ok(ConditionReport::from_margin(
                radius - dist,
                ConditionForm::Ball,
                scale,
            ))
        }
    }
}

pub(crate) fn family_two_sided_either(
    x: &Vector,
    fam: &OrthonormalFamily,
    gammas: &CoefficientSequence,
    big_gammas: &CoefficientSequence,
) -> Result<ConditionReport> {
    let ball = family_two_sided(x, fam, gammas, big_gammas, ConditionForm::Ball)?;
    if ball.holds {
        return Ok(ball);
    }
    let rp = family_two_sided(x, fam, gammas, big_gammas, ConditionForm::RealPart)?;
    Ok(if rp.holds { rp } else { ball })
}

/// `‖x − Σλ_i e_i‖ ≤ r`.
pub fn family_ball(
    x: &Vector,
    fam: &OrthonormalFamily,
    lam: &CoefficientSequence,
    r: f64,
) -> Result<ConditionReport> {
    in_closed_ball(x, &synthesize(lam, fam)?, r)
}
