//! Reverses of Bessel's inequality over finite orthonormal families, and the
//! Grüss-type bounds they induce for `|⟨x,y⟩ − Σ⟨x,e_i⟩⟨e_i,y⟩|`.

use serde::{Deserialize, Serialize};

use crate::conditions::{self, ConditionReport, DEGENERATE_PAIR_TOL};
use crate::error::{IneqError, Result};
use crate::gruss::GrussReport;
use crate::schwarz::{BoundChain, Quantity};
use crate::space::{
    fourier_coefficients, inner, inner_unchecked, norm, norm_sq, projection_residual,
    CoefficientSequence, OrthonormalFamily, Vector,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselReport {
    pub norm_x: f64,
    /// `(Σ|⟨x,e_i⟩|²)^{1/2}`
    pub coeff_norm: f64,
    /// `norm_x − coeff_norm`
    pub gap: f64,
    pub bound: f64,
    /// Squared form `[0, ‖x‖² − Σ|⟨x,e_i⟩|², …]`.
    pub additive_chain: Option<BoundChain>,
    /// Chains starting at `‖x‖²`.
    pub multiplicative_chain: Option<BoundChain>,
    pub admissibility: ConditionReport,
}

impl BesselReport {
    pub fn require_admissible(self) -> Result<Self> {
        self.admissibility.require()?;
        Ok(self)
    }
}

/// `x` split against a family.
pub(crate) struct Expansion {
    pub norm_x: f64,
    pub coeffs: CoefficientSequence,
    pub coeff_norm: f64,
    /// `‖x‖² − Σ|⟨x,e_i⟩|²`, computed as the squared norm of the residual.
    pub residual_sq: f64,
}

impl Expansion {
    pub fn new(x: &Vector, fam: &OrthonormalFamily) -> Result<Self> {
        let coeffs = fourier_coefficients(x, fam)?;
        let residual_sq = norm_sq(&projection_residual(x, fam)?);
        Ok(Self {
            norm_x: norm(x),
            coeff_norm: coeffs.norm(),
            coeffs,
            residual_sq,
        })
    }

    /// `‖x‖ − coeff_norm` as `residual_sq / (‖x‖ + coeff_norm)`.
    pub fn gap(&self) -> f64 {
        let den = self.norm_x + self.coeff_norm;
        if den > 0.0 {
            self.residual_sq / den
        } else {
            0.0
        }
    }
}

pub(crate) fn check_len(seq: &CoefficientSequence, fam: &OrthonormalFamily) -> Result<()> {
    if seq.len() != fam.len() {
        return Err(IneqError::LengthMismatch {
            left: seq.len(),
            right: fam.len(),
        });
    }
    Ok(())
}

/// `Σ|Γ_i − γ_i|²` and `Σ|Γ_i + γ_i|²`, rejecting `Γ ≈ ±γ`.
pub(crate) fn sequence_pair(
    fam: &OrthonormalFamily,
    gammas: &CoefficientSequence,
    big_gammas: &CoefficientSequence,
) -> Result<(f64, f64)> {
    check_len(gammas, fam)?;
    check_len(big_gammas, fam)?;
    let d = big_gammas.difference(gammas)?.sq_norm();
    let s = big_gammas.sum(gammas)?.sq_norm();
    let cutoff = DEGENERATE_PAIR_TOL * (big_gammas.norm() + gammas.norm());
    if d.sqrt() <= cutoff || s.sqrt() <= cutoff {
        return Err(IneqError::DegeneratePair {
            diff: d.sqrt(),
            sum: s.sqrt(),
        });
    }
    Ok((d, s))
}

pub(crate) fn nonzero(seq: &CoefficientSequence) -> Result<()> {
    if seq.sq_norm() > 0.0 {
        Ok(())
    } else {
        Err(IneqError::ZeroSequence)
    }
}

/// `0 ≤ ‖x‖ − (Σ|⟨x,e_i⟩|²)^{1/2} ≤ ½r² / (Σ|λ_i|²)^{1/2}` for
/// `‖x − Σλ_i e_i‖ ≤ r`.
pub fn bessel_reverse_ball(
    x: &Vector,
    fam: &OrthonormalFamily,
    lam: &CoefficientSequence,
    r: f64,
) -> Result<BesselReport> {
    check_len(lam, fam)?;
    nonzero(lam)?;
    let admissibility = conditions::family_ball(x, fam, lam, r)?;
    let ex = Expansion::new(x, fam)?;
    let root = lam.norm();
    let additive = BoundChain::new(
        &[
            ("zero", 0.0),
            ("residual", ex.residual_sq),
            (
                "residual_bound",
                0.5 * r * r * (ex.norm_x + ex.coeff_norm) / root,
            ),
            ("residual_coarse", r * r * ex.norm_x / root),
        ],
        admissibility,
    );
    Ok(BesselReport {
        norm_x: ex.norm_x,
        coeff_norm: ex.coeff_norm,
        gap: ex.gap(),
        bound: 0.5 * r * r / root,
        additive_chain: Some(additive),
        multiplicative_chain: None,
        admissibility,
    })
}

/// `0 ≤ ‖x‖ − (Σ|⟨x,e_i⟩|²)^{1/2} ≤ ¼·Σ|Γ_i−γ_i|² / (Σ|Γ_i+γ_i|²)^{1/2}` under
/// the family two-sided condition.
pub fn bessel_reverse_pair(
    x: &Vector,
    fam: &OrthonormalFamily,
    gammas: &CoefficientSequence,
    big_gammas: &CoefficientSequence,
) -> Result<BesselReport> {
    let (d, s) = sequence_pair(fam, gammas, big_gammas)?;
    let admissibility = conditions::family_two_sided_either(x, fam, gammas, big_gammas)?;
    let ex = Expansion::new(x, fam)?;
    let k = d / s.sqrt();
    let additive = BoundChain::new(
        &[
            ("zero", 0.0),
            ("residual", ex.residual_sq),
            ("residual_bound", 0.25 * k * (ex.norm_x + ex.coeff_norm)),
            ("residual_coarse", 0.5 * k * ex.norm_x),
        ],
        admissibility,
    );
    Ok(BesselReport {
        norm_x: ex.norm_x,
        coeff_norm: ex.coeff_norm,
        gap: ex.gap(),
        bound: 0.25 * k,
        additive_chain: Some(additive),
        multiplicative_chain: None,
        admissibility,
    })
}

/// `|⟨x,y⟩ − Σ⟨x,e_i⟩⟨e_i,y⟩|`.
pub fn gruss_orthonormal_gap(x: &Vector, y: &Vector, fam: &OrthonormalFamily) -> Result<f64> {
    let cx = fourier_coefficients(x, fam)?;
    let cy = fourier_coefficients(y, fam)?;
    Ok((inner(x, y)? - inner_unchecked(cx.entries(), cy.entries())).norm())
}

fn orthonormal_report(
    gap: f64,
    ex: &Expansion,
    ey: &Expansion,
    bounds: [(&str, f64); 2],
    residual_bounds: [f64; 2],
    admissibility: [ConditionReport; 2],
) -> GrussReport {
    GrussReport {
        gap,
        bounds: bounds.iter().map(|&(l, v)| Quantity::new(l, v)).collect(),
        intermediates: vec![
            Quantity::new("residual_x", ex.residual_sq),
            Quantity::new("residual_y", ey.residual_sq),
            Quantity::new("residual_bound_x", residual_bounds[0]),
            Quantity::new("residual_bound_y", residual_bounds[1]),
        ],
        admissibility,
    }
}

/// Bound under `‖x − Σλ_i e_i‖ ≤ r₁`, `‖y − Σμ_i e_i‖ ≤ r₂`.
pub fn gruss_orthonormal_ball(
    x: &Vector,
    y: &Vector,
    fam: &OrthonormalFamily,
    lam: &CoefficientSequence,
    mu: &CoefficientSequence,
    r1: f64,
    r2: f64,
) -> Result<GrussReport> {
    check_len(lam, fam)?;
    check_len(mu, fam)?;
    nonzero(lam)?;
    nonzero(mu)?;
    let admissibility = [
        conditions::family_ball(x, fam, lam, r1)?,
        conditions::family_ball(y, fam, mu, r2)?,
    ];
    let gap = gruss_orthonormal_gap(x, y, fam)?;
    let ex = Expansion::new(x, fam)?;
    let ey = Expansion::new(y, fam)?;
    let quarter = (lam.sq_norm() * mu.sq_norm()).powf(0.25);
    let first = 0.5 * r1 * r2 * ((ex.norm_x + ex.coeff_norm) * (ey.norm_x + ey.coeff_norm)).sqrt()
        / quarter;
    let second = r1 * r2 * (ex.norm_x * ey.norm_x).sqrt() / quarter;
    let rb = [
        0.5 * r1 * r1 * (ex.norm_x + ex.coeff_norm) / lam.norm(),
        0.5 * r2 * r2 * (ey.norm_x + ey.coeff_norm) / mu.norm(),
    ];
    Ok(orthonormal_report(
        gap,
        &ex,
        &ey,
        [("bound", first), ("sqrt_norm_bound", second)],
        rb,
        admissibility,
    ))
}

/// Bound under the family two-sided conditions with `(γ, Γ)` for `x` and
/// `(φ, Φ)` for `y`.
pub fn gruss_orthonormal_pair(
    x: &Vector,
    y: &Vector,
    fam: &OrthonormalFamily,
    gammas_x: &CoefficientSequence,
    big_gammas_x: &CoefficientSequence,
    phis_y: &CoefficientSequence,
    big_phis_y: &CoefficientSequence,
) -> Result<GrussReport> {
    let (dx, sx) = sequence_pair(fam, gammas_x, big_gammas_x)?;
    let (dy, sy) = sequence_pair(fam, phis_y, big_phis_y)?;
    let admissibility = [
        conditions::family_two_sided_either(x, fam, gammas_x, big_gammas_x)?,
        conditions::family_two_sided_either(y, fam, phis_y, big_phis_y)?,
    ];
    let gap = gruss_orthonormal_gap(x, y, fam)?;
    let ex = Expansion::new(x, fam)?;
    let ey = Expansion::new(y, fam)?;
    let k = (dx * dy).sqrt() / (sx * sy).powf(0.25);
    let first = 0.25 * k * ((ex.norm_x + ex.coeff_norm) * (ey.norm_x + ey.coeff_norm)).sqrt();
    let second = 0.5 * k * (ex.norm_x * ey.norm_x).sqrt();
    let rb = [
        0.25 * dx / sx.sqrt() * (ex.norm_x + ex.coeff_norm),
        0.25 * dy / sy.sqrt() * (ey.norm_x + ey.coeff_norm),
    ];
    Ok(orthonormal_report(
        gap,
        &ex,
        &ey,
        [("bound", first), ("sqrt_norm_bound", second)],
        rb,
        admissibility,
    ))
}
