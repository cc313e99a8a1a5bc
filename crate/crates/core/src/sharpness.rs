//! Best-constant probing. The sweeps evaluate the library's own chains on
//! the limiting constructions `ε → 0+` whose gap/bound ratio tends to one,
//! then extrapolate the limit from the two smallest `ε`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conditions::ScalarPair;
use crate::error::{IneqError, Result};
use crate::harness::{evaluate, sample_admissible, TheoremId};
use crate::legacy::legacy_schwarz_ball;
use crate::schwarz::{reverse_schwarz_ball, reverse_schwarz_pair};
use crate::space::{FieldTag, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// `x = a + √ε·e`, `r = √ε`, ratio `(‖x‖‖a‖ − Re⟨x,a⟩)/(½r²)`.
    Thm21,
    /// `y = (1,1)`, `x = (1+ε, 1−ε)`, `(γ,Γ) = (1−ε, 1+ε)`.
    Thm22,
    /// `x = a + √ε·e`, `r = √ε`, ratio `(‖x‖²‖a‖² − (Re⟨x,a⟩)²)/(r²‖x‖²)`.
    Legacy11,
}

impl Construction {
    /// Exponent `p` of the leading error term `1 − ratio ≈ c·ε^p`.
    pub fn order(self) -> i32 {
        match self {
            Construction::Thm22 => 2,
            _ => 1,
        }
    }

    /// The ratio of the construction in closed form.
    pub fn closed_form(self, eps: f64) -> f64 {
        match self {
            // 2(√(1+ε) − 1)/ε, rationalized
            Construction::Thm21 => 2.0 / ((1.0 + eps).sqrt() + 1.0),
            Construction::Thm22 => 2.0 / ((1.0 + eps * eps).sqrt() + 1.0),
            Construction::Legacy11 => 1.0 / (1.0 + eps),
        }
    }

    fn check(self, eps: f64) -> Result<()> {
        let ok = match self {
            Construction::Thm21 => eps > 0.0 && eps.is_finite(),
            Construction::Thm22 | Construction::Legacy11 => eps > 0.0 && eps < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(IneqError::InvalidParameter(format!(
                "epsilon {eps} outside the range of the {self:?} construction"
            )))
        }
    }

    /// Evaluates the construction at `eps` through the library operation.
    pub fn ratio(self, eps: f64) -> Result<f64> {
        self.check(eps)?;
        match self {
            Construction::Thm21 | Construction::Legacy11 => {
                let s = eps.sqrt();
                let a = Vector::real(&[1.0, 0.0])?;
                let x = Vector::real(&[1.0, s])?;
                let chain = if self == Construction::Thm21 {
                    reverse_schwarz_ball(&x, &a, s)?
                } else {
                    legacy_schwarz_ball(&x, &a, s)?
                };
                chain.admissibility.require()?;
                let gap = chain
                    .value(if self == Construction::Thm21 {
                        "real_gap"
                    } else {
                        "sq_real_gap"
                    })
                    .expect("chain carries the real-part gap");
                Ok(gap / chain.bound)
            }
            Construction::Thm22 => {
                let (hi, lo) = (1.0 + eps, 1.0 - eps);
                let x = Vector::real(&[hi, lo])?;
                let y = Vector::real(&[1.0, 1.0])?;
                let chain = reverse_schwarz_pair(&x, &y, &ScalarPair::real(lo, hi))?;
                chain.admissibility.require()?;
                Ok(chain.value("abs_gap").expect("chain carries abs_gap") / chain.bound)
            }
        }
    }
}

impl std::str::FromStr for Construction {
    type Err = IneqError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "thm21" => Ok(Construction::Thm21),
            "thm22" => Ok(Construction::Thm22),
            "legacy11" => Ok(Construction::Legacy11),
            other => Err(IneqError::InvalidParameter(format!(
                "unknown construction `{other}` (expected thm21, thm22 or legacy11)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub construction: Construction,
    /// Strictly decreasing.
    pub epsilons: Vec<f64>,
    pub ratios: Vec<f64>,
    pub closed_form: Vec<f64>,
    pub extrapolated_limit: f64,
}

/// Eliminates the leading `c·ε^p` error term between two points.
pub fn richardson(eps1: f64, r1: f64, eps2: f64, r2: f64, order: i32) -> f64 {
    let (w1, w2) = (eps1.powi(order), eps2.powi(order));
    (w1 * r2 - w2 * r1) / (w1 - w2)
}

/// `count` points from `hi` down to `lo`, equally spaced in `log ε`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) || count == 0 {
        return Err(IneqError::InvalidParameter(format!(
            "grid needs 0 < lo <= hi and count >= 1, got {lo}:{hi}:{count}"
        )));
    }
    if count == 1 {
        return Ok(vec![hi]);
    }
    let (a, b) = (hi.ln(), lo.ln());
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                lo
            } else if i == 0 {
                hi
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect())
}

/// Parses `LO:HI:COUNT`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || IneqError::InvalidParameter(format!("expected LO:HI:COUNT, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    geometric_grid(lo, hi, count)
}

/// Evaluates `construction` on every `ε` (concurrently; results stay in grid
/// order) and extrapolates the limit from the last two points.
pub fn sweep(construction: Construction, epsilons: &[f64]) -> Result<SweepResult> {
    if epsilons.is_empty() {
        return Err(IneqError::InvalidParameter("empty epsilon grid".into()));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(IneqError::InvalidParameter(
            "epsilons must be strictly decreasing".into(),
        ));
    }
    let ratios = epsilons
        .par_iter()
        .map(|&e| construction.ratio(e))
        .collect::<Result<Vec<f64>>>()?;
    let n = ratios.len();
    let extrapolated_limit = if n >= 2 {
        richardson(
            epsilons[n - 2],
            ratios[n - 2],
            epsilons[n - 1],
            ratios[n - 1],
            construction.order(),
        )
    } else {
        ratios[0]
    };
    Ok(SweepResult {
        construction,
        epsilons: epsilons.to_vec(),
        closed_form: epsilons
            .iter()
            .map(|&e| construction.closed_form(e))
            .collect(),
        ratios,
        extrapolated_limit,
    })
}

pub fn sweep_thm21(epsilons: &[f64]) -> Result<SweepResult> {
    sweep(Construction::Thm21, epsilons)
}

pub fn sweep_thm22(epsilons: &[f64]) -> Result<SweepResult> {
    sweep(Construction::Thm22, epsilons)
}

pub fn sweep_legacy11(epsilons: &[f64]) -> Result<SweepResult> {
    sweep(Construction::Legacy11, epsilons)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub theorem: TheoremId,
    pub trials: usize,
    pub dim: usize,
    pub seed: u64,
    /// Largest `gap / bound` over the admissible samples.
    pub max_ratio: f64,
    /// Seed of the sample attaining `max_ratio`.
    pub argmax_seed: u64,
}

/// Largest observed gap/bound ratio over `trials` admissible samples,
/// alternating real and complex fields. Trial `i` uses seed `seed ^ i`.
pub fn random_probe(
    theorem: TheoremId,
    trials: usize,
    dim: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if trials == 0 {
        return Err(IneqError::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    let best = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let field = if i % 2 == 0 {
                FieldTag::Real
            } else {
                FieldTag::Complex
            };
            let s = seed ^ i;
            let ev = evaluate(&sample_admissible(theorem, field, dim, s)?)?;
            Ok((ev.ratio().unwrap_or(0.0), s))
        })
        .collect::<Result<Vec<(f64, u64)>>>()?
        .into_iter()
        .fold((f64::NEG_INFINITY, seed), |acc, cur| {
            if cur.0 > acc.0 {
                cur
            } else {
                acc
            }
        });
    Ok(ProbeReport {
        theorem,
        trials,
        dim,
        seed,
        max_ratio: best.0,
        argmax_seed: best.1,
    })
}
