//! Earlier reverse Schwarz, triangle, Grüss and Bessel bounds, kept so they
//! can be evaluated side by side with the newer ones on identical instances.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::{check_len, sequence_pair, BesselReport, Expansion};
use crate::conditions::{self, ScalarPair};
use crate::error::{IneqError, Result};
use crate::gruss::{check_unit, gruss_gap, GrussReport};
use crate::schwarz::{BoundChain, Quantity};
use crate::space::{
    gram_defect, inner, inner_unchecked, norm, norm_sq, CoefficientSequence, OrthonormalFamily,
    Vector,
};
use crate::triangle::{check_m_pair, triangle_parts, TriangleDefect};

/// `|⟨x,e⟩⟨e,y⟩|` must exceed this fraction of `‖x‖‖y‖` for the ratio form
/// of the two-sided Grüss bound to be reported.
pub const RATIO_FORM_CUTOFF: f64 = 1e-12;

/// `Re(Γ·conj(γ))`, required positive.
fn positive_real_product(p: &ScalarPair) -> Result<f64> {
    let v = (p.hi * p.lo.conj()).re;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(IneqError::InvalidParameter(format!(
            "Re(hi * conj(lo)) must be positive, got {v}"
        )))
    }
}

fn radius_below_norm(r: f64, a: &Vector) -> Result<f64> {
    conditions::check_radius(r)?;
    let na = norm(a);
    if r >= na {
        return Err(IneqError::InvalidParameter(format!(
            "radius {r} must be smaller than the center norm {na}"
        )));
    }
    Ok(na)
}

/// `0 ≤ ‖x‖²‖a‖² − |⟨x,a⟩|² ≤ ‖x‖²‖a‖² − (Re⟨x,a⟩)² ≤ r²‖x‖²` for
/// `‖x − a‖ ≤ r < ‖a‖`.
pub fn legacy_schwarz_ball(x: &Vector, a: &Vector, r: f64) -> Result<BoundChain> {
    radius_below_norm(r, a)?;
    let admissibility = conditions::in_closed_ball(x, a, r)?;
    let lagrange = gram_defect(x, a)?;
    let im = inner(x, a)?.im;
    Ok(BoundChain::new(
        &[
            ("zero", 0.0),
            ("sq_gap", lagrange),
            ("sq_real_gap", lagrange + im * im),
            ("bound", r * r * norm_sq(x)),
        ],
        admissibility,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegacySchwarzPair {
    /// `[‖x‖²‖y‖², ¼{Re[(Γ̄+γ̄)⟨x,y⟩]}²/Re(Γγ̄), ¼|Γ+γ|²/Re(Γγ̄)·|⟨x,y⟩|²]`
    pub multiplicative: BoundChain,
    /// `[0, ‖x‖²‖y‖² − |⟨x,y⟩|², ¼|Γ−γ|²/Re(Γγ̄)·|⟨x,y⟩|²]`
    pub additive: BoundChain,
}

/// Multiplicative and additive reverse Schwarz bounds under the two-sided
/// condition with `Re(Γγ̄) > 0`.
pub fn legacy_schwarz_pair(x: &Vector, y: &Vector, pair: &ScalarPair) -> Result<LegacySchwarzPair> {
    let p = positive_real_product(pair)?;
    pair.check_field(y.field())?;
    let admissibility = conditions::two_sided_either(x, y, pair)?;
    let ip = inner(x, y)?;
    let s = (pair.hi + pair.lo).conj();
    let multiplicative = BoundChain::new(
        &[
            ("norm_product_sq", norm_sq(x) * norm_sq(y)),
            ("real_form", 0.25 * (s * ip).re.powi(2) / p),
            ("abs_form", 0.25 * s.norm_sqr() / p * ip.norm_sqr()),
        ],
        admissibility,
    );
    let additive = BoundChain::new(
        &[
            ("zero", 0.0),
            ("sq_gap", gram_defect(x, y)?),
            (
                "bound",
                0.25 * (pair.hi - pair.lo).norm_sqr() / p * ip.norm_sqr(),
            ),
        ],
        admissibility,
    );
    Ok(LegacySchwarzPair {
        multiplicative,
        additive,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TriangleMode {
    Ball { r: f64 },
    Pair { m: f64, big_m: f64 },
}

fn nonnegative_real_inner(x: &Vector, y: &Vector) -> Result<f64> {
    let re = inner(x, y)?.re;
    if re < 0.0 {
        return Err(IneqError::InvalidParameter(format!(
            "Re<x, y> must be nonnegative, got {re}"
        )));
    }
    Ok(re)
}

/// Ball mode (`‖x − a‖ ≤ r < ‖a‖`):
/// `√2·r·√(Re⟨x,a⟩ / (√(‖a‖²−r²)(√(‖a‖²−r²)+‖a‖)))`.
/// Pair mode (`M > m > 0`): `(√M − √m)/(Mm)^{1/4}·√Re⟨x,y⟩`.
pub fn legacy_triangle(x: &Vector, y_or_a: &Vector, mode: TriangleMode) -> Result<TriangleDefect> {
    let (bound, admissibility) = match mode {
        TriangleMode::Ball { r } => {
            let na = radius_below_norm(r, y_or_a)?;
            let adm = conditions::in_closed_ball(x, y_or_a, r)?;
            let re = nonnegative_real_inner(x, y_or_a)?;
            let q = ((na - r) * (na + r)).sqrt();
            (2f64.sqrt() * r * (re / (q * (q + na))).sqrt(), adm)
        }
        TriangleMode::Pair { m, big_m } => {
            check_m_pair(m, big_m)?;
            let adm = conditions::two_sided_either(x, y_or_a, &ScalarPair::real(m, big_m))?;
            let re = nonnegative_real_inner(x, y_or_a)?;
            let k = (big_m.sqrt() - m.sqrt()) / (big_m * m).powf(0.25);
            (k * re.sqrt(), adm)
        }
    };
    Ok(TriangleDefect {
        defect: triangle_parts(x, y_or_a)?.defect,
        bound,
        admissibility,
        route: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GrussMode {
    Ball {
        r1: f64,
        r2: f64,
    },
    Pair {
        pair_x: ScalarPair,
        pair_y: ScalarPair,
    },
}

/// Ball mode (radii in `(0,1)`): `r₁r₂‖x‖‖y‖`.
/// Pair mode: `¼·|Γ−γ||Φ−φ|/√(Re(Γγ̄)Re(Φφ̄))·|⟨x,e⟩⟨e,y⟩|`, plus the ratio
/// form `|⟨x,y⟩/(⟨x,e⟩⟨e,y⟩) − 1|` as intermediates `ratio` / `ratio_bound`
/// when the product is not negligible.
pub fn legacy_gruss(x: &Vector, y: &Vector, e: &Vector, mode: GrussMode) -> Result<GrussReport> {
    check_unit(e)?;
    match mode {
        GrussMode::Ball { r1, r2 } => {
            for r in [r1, r2] {
                if !(r > 0.0 && r < 1.0) {
                    return Err(IneqError::InvalidParameter(format!(
                        "radii must lie in (0, 1), got {r}"
                    )));
                }
            }
            let admissibility = [
                conditions::in_closed_ball(x, e, r1)?,
                conditions::in_closed_ball(y, e, r2)?,
            ];
            Ok(GrussReport {
                gap: gruss_gap(x, y, e)?,
                bounds: vec![Quantity::new("bound", r1 * r2 * norm(x) * norm(y))],
                intermediates: Vec::new(),
                admissibility,
            })
        }
        GrussMode::Pair { pair_x, pair_y } => {
            let px = positive_real_product(&pair_x)?;
            let py = positive_real_product(&pair_y)?;
            pair_x.check_field(e.field())?;
            pair_y.check_field(e.field())?;
            let admissibility = [
                conditions::two_sided_either(x, e, &pair_x)?,
                conditions::two_sided_either(y, e, &pair_y)?,
            ];
            let k = 0.25 * pair_x.diff_abs() * pair_y.diff_abs() / (px * py).sqrt();
            let prod = inner(x, e)? * inner(e, y)?;
            let ip = inner(x, y)?;
            let mut intermediates = Vec::new();
            if prod.norm() > RATIO_FORM_CUTOFF * norm(x) * norm(y) {
                intermediates.push(Quantity::new("ratio", (ip / prod - 1.0).norm()));
                intermediates.push(Quantity::new("ratio_bound", k));
            }
            Ok(GrussReport {
                gap: (ip - prod).norm(),
                bounds: vec![Quantity::new("bound", k * prod.norm())],
                intermediates,
                admissibility,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BesselMode {
    Ball {
        lam: CoefficientSequence,
        r: f64,
    },
    Pair {
        gammas: CoefficientSequence,
        big_gammas: CoefficientSequence,
    },
}

/// Ball mode (`Σ|λ_i|² > r²`): multiplicative chain
/// `‖x‖² ≤ (ΣRe[λ̄_i⟨x,e_i⟩])²/(Σ|λ_i|²−r²) ≤ |Σλ̄_i⟨x,e_i⟩|²/(…) ≤ Σ|λ_i|²/(…)·Σ|⟨x,e_i⟩|²`
/// and additive chain `0 ≤ ‖x‖² − Σ|⟨x,e_i⟩|² ≤ r²/(Σ|λ_i|²−r²)·Σ|⟨x,e_i⟩|²`.
///
/// Pair mode (`ΣRe(Γ_iγ̄_i) > 0`): the analogous chains with
/// `¼·(Γ̄_i+γ̄_i)` in place of `λ̄_i` and `ΣRe(Γ_iγ̄_i)` in the denominator.
///
/// `gap`/`bound` carry the additive chain in unsquared form:
/// `‖x‖ − c ≤ √(c² + B) − c` where `B` is the additive bound.
pub fn legacy_bessel(
    x: &Vector,
    fam: &OrthonormalFamily,
    mode: &BesselMode,
) -> Result<BesselReport> {
    let (admissibility, ex, entries, additive_bound) = match mode {
        BesselMode::Ball { lam, r } => {
            check_len(lam, fam)?;
            conditions::check_radius(*r)?;
            let big = lam.sq_norm();
            let den = big - r * r;
            if den <= 0.0 {
                return Err(IneqError::InvalidParameter(format!(
                    "need sum |lambda_i|^2 > r^2, got {big} <= {}",
                    r * r
                )));
            }
            let adm = conditions::family_ball(x, fam, lam, *r)?;
            let ex = Expansion::new(x, fam)?;
            let s = inner_unchecked(ex.coeffs.entries(), lam.entries());
            let c2 = ex.coeffs.sq_norm();
            let entries = [s.re.powi(2) / den, s.norm_sqr() / den, big / den * c2];
            (adm, ex, entries, r * r / den * c2)
        }
        BesselMode::Pair { gammas, big_gammas } => {
            let (d, _) = sequence_pair(fam, gammas, big_gammas)?;
            let p: f64 = big_gammas
                .entries()
                .iter()
                .zip(gammas.entries())
                .map(|(g, l)| (g * l.conj()).re)
                .sum();
            if p <= 0.0 {
                return Err(IneqError::InvalidParameter(format!(
                    "sum Re(Gamma_i * conj(gamma_i)) must be positive, got {p}"
                )));
            }
            let adm = conditions::family_two_sided_either(x, fam, gammas, big_gammas)?;
            let ex = Expansion::new(x, fam)?;
            let sum = big_gammas.sum(gammas)?;
            let s: Complex64 = inner_unchecked(ex.coeffs.entries(), sum.entries());
            let c2 = ex.coeffs.sq_norm();
            let entries = [
                0.25 * s.re.powi(2) / p,
                0.25 * s.norm_sqr() / p,
                0.25 * sum.sq_norm() / p * c2,
            ];
            (adm, ex, entries, 0.25 * d / p * c2)
        }
    };
    let multiplicative = BoundChain::new(
        &[
            ("norm_sq", ex.norm_x * ex.norm_x),
            ("real_form", entries[0]),
            ("abs_form", entries[1]),
            ("coeff_form", entries[2]),
        ],
        admissibility,
    );
    let additive = BoundChain::new(
        &[
            ("zero", 0.0),
            ("residual", ex.residual_sq),
            ("bound", additive_bound),
        ],
        admissibility,
    );
    let c = ex.coeff_norm;
    let root = (c * c + additive_bound).sqrt();
    let bound = if root + c > 0.0 {
        additive_bound / (root + c)
    } else {
        0.0
    };
    Ok(BesselReport {
        norm_x: ex.norm_x,
        coeff_norm: c,
        gap: ex.gap(),
        bound,
        additive_chain: Some(additive),
        multiplicative_chain: Some(multiplicative),
        admissibility,
    })
}
