//! Additive reverses of the Schwarz inequality, returned as full monotone
//! chains `0 ≤ ‖x‖‖y‖ − |⟨x,y⟩| ≤ … ≤ bound`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conditions::{self, ConditionReport, ScalarPair};
use crate::error::Result;
use crate::space::{norm_sq, SchwarzDefect, Vector};

/// Relative slack used when checking that a chain is nondecreasing.
pub const CHAIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub label: String,
    pub value: f64,
}

impl Quantity {
    pub fn new(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value,
        }
    }
}

/// Labeled, ordered intermediate quantities of one inequality chain. The
/// last value is the bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundChain {
    pub labels: Vec<String>,
    pub values: Vec<f64>,
    pub bound: f64,
    /// `bound` minus the largest preceding term.
    pub slack: f64,
    pub admissibility: ConditionReport,
}

impl BoundChain {
    pub fn new(entries: &[(&str, f64)], admissibility: ConditionReport) -> Self {
        assert!(entries.len() >= 2, "a chain needs a gap and a bound");
        let labels = entries.iter().map(|(l, _)| l.to_string()).collect();
        let values: Vec<f64> = entries.iter().map(|&(_, v)| v).collect();
        let bound = *values.last().unwrap();
        let largest = values[..values.len() - 1]
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        Self {
            labels,
            values,
            bound,
            slack: bound - largest,
            admissibility,
        }
    }

    /// Largest quantity bounded by the chain (the term just before `bound`).
    pub fn gap(&self) -> f64 {
        self.values[self.values.len() - 2]
    }

    pub fn value(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.values[i])
    }

    /// Nondecreasing within `rel_tol · (1 + |bound|)`.
    pub fn is_monotone(&self, rel_tol: f64) -> bool {
        let slack = rel_tol * (1.0 + self.bound.abs());
        self.values.windows(2).all(|w| w[0] <= w[1] + slack)
    }

    pub fn require_admissible(self) -> Result<Self> {
        self.admissibility.require()?;
        Ok(self)
    }
}

/// Unimodular rotation `conj(Γ + γ) / |Γ + γ|`.
pub(crate) fn pair_rotation(pair: &ScalarPair) -> Complex64 {
    let s = pair.hi + pair.lo;
    s.conj() / s.norm()
}

/// Reverse Schwarz inequality on a closed ball `‖x − a‖ ≤ r`:
///
/// `0 ≤ ‖x‖‖a‖ − |⟨x,a⟩| ≤ ‖x‖‖a‖ − |Re⟨x,a⟩| ≤ ‖x‖‖a‖ − Re⟨x,a⟩ ≤ ½r²`.
///
/// The chain is computed even when `x` lies outside the ball; the
/// admissibility report then has `holds = false`.
pub fn reverse_schwarz_ball(x: &Vector, a: &Vector, r: f64) -> Result<BoundChain> {
    let admissibility = conditions::in_closed_ball(x, a, r)?;
    let d = SchwarzDefect::new(x, a)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(BoundChain::new(
        &[
            ("zero", 0.0),
            ("abs_gap", d.abs_gap()),
            ("abs_real_gap", d.abs_real_gap(one)),
            ("real_gap", d.real_gap(one)),
            ("bound", 0.5 * r * r),
        ],
        admissibility,
    ))
}

/// Reverse Schwarz inequality under `Re⟨Γy − x, x − γy⟩ ≥ 0`:
///
/// `… ≤ ‖x‖‖y‖ − Re[conj(Γ+γ)/|Γ+γ| · ⟨x,y⟩] ≤ ¼ |Γ−γ|²/|Γ+γ| · ‖y‖²`.
pub fn reverse_schwarz_pair(x: &Vector, y: &Vector, pair: &ScalarPair) -> Result<BoundChain> {
    pair.check_nondegenerate()?;
    pair.check_field(y.field())?;
    let admissibility = conditions::two_sided_either(x, y, pair)?;
    let d = SchwarzDefect::new(x, y)?;
    let u = pair_rotation(pair);
    let bound = 0.25 * pair.diff_abs().powi(2) / pair.sum_abs() * norm_sq(y);
    Ok(BoundChain::new(
        &[
            ("zero", 0.0),
            ("abs_gap", d.abs_gap()),
            ("abs_real_gap", d.abs_real_gap(u)),
            ("real_gap", d.real_gap(u)),
            ("bound", bound),
        ],
        admissibility,
    ))
}
