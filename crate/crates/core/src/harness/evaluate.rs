//! Evaluates an instance with the matching library operation and turns the
//! result into a flat list of inequalities `lhs ≤ rhs` to check.

use serde::{Deserialize, Serialize};

use crate::bessel::{self, BesselReport};
use crate::conditions::ConditionReport;
use crate::error::Result;
use crate::gruss::{self, GrussReport};
use crate::integral::{self, DiscretizedFunction, WeightedDomain};
use crate::legacy::{self, BesselMode, GrussMode, TriangleMode};
use crate::schwarz::{self, BoundChain, Quantity};
use crate::triangle::{self, TriangleDefect};

use super::instance::InstanceSpec;
use super::theorem::TheoremId;

/// One inequality `lhs ≤ rhs`, judged as `lhs ≤ rhs + tol·scale`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub scale: f64,
}

impl Check {
    fn new(label: impl Into<String>, lhs: f64, rhs: f64, scale: f64) -> Self {
        Self {
            label: label.into(),
            lhs,
            rhs,
            scale,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol * self.scale
    }
}

/// Outcome of evaluating one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    /// Main defect of the theorem.
    pub gap: f64,
    /// Main (first) bound.
    pub bound: f64,
    /// Every stated bound, in order.
    pub bounds: Vec<Quantity>,
    pub admissibility: Vec<ConditionReport>,
    pub checks: Vec<Check>,
}

impl Evaluation {
    pub fn admissible(&self) -> bool {
        self.admissibility.iter().all(|r| r.holds)
    }

    pub fn failed_checks(&self, tol: f64) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passes(tol)).collect()
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.checks.iter().all(|c| c.passes(tol))
    }

    /// `gap / bound`, or `None` for a zero bound.
    pub fn ratio(&self) -> Option<f64> {
        (self.bound > 0.0).then(|| self.gap / self.bound)
    }

    pub fn slack(&self) -> f64 {
        self.bound - self.gap
    }
}

fn chain_checks(prefix: &str, chain: &BoundChain, out: &mut Vec<Check>) {
    let scale = 1.0 + chain.bound.abs();
    for i in 1..chain.values.len() {
        out.push(Check::new(
            format!("{prefix}{} <= {}", chain.labels[i - 1], chain.labels[i]),
            chain.values[i - 1],
            chain.values[i],
            scale,
        ));
    }
}

fn from_chain(chain: BoundChain) -> Evaluation {
    let mut checks = Vec::new();
    chain_checks("", &chain, &mut checks);
    Evaluation {
        gap: chain.gap(),
        bound: chain.bound,
        bounds: vec![Quantity::new("bound", chain.bound)],
        admissibility: vec![chain.admissibility],
        checks,
    }
}

fn quantity(list: &[Quantity], label: &str) -> Option<f64> {
    list.iter().find(|q| q.label == label).map(|q| q.value)
}

fn from_triangle(t: TriangleDefect) -> Evaluation {
    let mut checks = vec![Check::new(
        "defect <= bound",
        t.defect,
        t.bound,
        1.0 + t.bound.abs(),
    )];
    for (lo, hi) in [
        ("sq_defect", "sq_bound"),
        ("norm_sum", "root_bound"),
        ("root_bound", "linear_bound"),
    ] {
        if let (Some(l), Some(h)) = (quantity(&t.route, lo), quantity(&t.route, hi)) {
            checks.push(Check::new(format!("{lo} <= {hi}"), l, h, 1.0 + h.abs()));
        }
    }
    Evaluation {
        gap: t.defect,
        bound: t.bound,
        bounds: vec![Quantity::new("bound", t.bound)],
        admissibility: vec![t.admissibility],
        checks,
    }
}

fn from_gruss(rep: GrussReport) -> Evaluation {
    let mut checks = Vec::new();
    let last = rep.bounds.last().map_or(0.0, |q| q.value.abs());
    for b in &rep.bounds {
        checks.push(Check::new(
            format!("gap <= {}", b.label),
            rep.gap,
            b.value,
            1.0 + last,
        ));
    }
    for w in rep.bounds.windows(2) {
        // The printed last bound of the ball form is not above the first one
        // in general; the chain runs through `sqrt_norm_bound` instead.
        if w[1].label == "norm_product_bound" {
            continue;
        }
        checks.push(Check::new(
            format!("{} <= {}", w[0].label, w[1].label),
            w[0].value,
            w[1].value,
            1.0 + last,
        ));
    }
    if let Some(s) = rep.intermediate("sqrt_norm_bound") {
        checks.push(Check::new(
            "bound <= sqrt_norm_bound",
            rep.bound(),
            s,
            1.0 + s.abs(),
        ));
    }
    for side in ["x", "y"] {
        let steps: Vec<(String, f64)> = ["residual", "residual_bound", "residual_coarse"]
            .iter()
            .filter_map(|name| {
                let label = format!("{name}_{side}");
                rep.intermediate(&label).map(|v| (label, v))
            })
            .collect();
        for w in steps.windows(2) {
            checks.push(Check::new(
                format!("{} <= {}", w[0].0, w[1].0),
                w[0].1,
                w[1].1,
                1.0 + steps.last().unwrap().1.abs(),
            ));
        }
    }
    if let (Some(r), Some(b)) = (rep.intermediate("ratio"), rep.intermediate("ratio_bound")) {
        checks.push(Check::new("ratio <= ratio_bound", r, b, 1.0 + b.abs()));
    }
    Evaluation {
        gap: rep.gap,
        bound: rep.bound(),
        bounds: rep.bounds.clone(),
        admissibility: rep.admissibility.to_vec(),
        checks,
    }
}

fn from_bessel(rep: BesselReport) -> Evaluation {
    let mut checks = vec![Check::new(
        "gap <= bound",
        rep.gap,
        rep.bound,
        1.0 + rep.bound.abs(),
    )];
    if let Some(c) = &rep.additive_chain {
        chain_checks("additive: ", c, &mut checks);
    }
    if let Some(c) = &rep.multiplicative_chain {
        chain_checks("multiplicative: ", c, &mut checks);
    }
    Evaluation {
        gap: rep.gap,
        bound: rep.bound,
        bounds: vec![Quantity::new("bound", rep.bound)],
        admissibility: vec![rep.admissibility],
        checks,
    }
}

fn functions(
    spec: &InstanceSpec,
    names: &[&str],
) -> Result<(WeightedDomain, Vec<DiscretizedFunction>)> {
    let dom = spec.domain.clone().unwrap_or_default().build()?;
    let mut out = Vec::with_capacity(names.len());
    for &name in names {
        let slot = match name {
            "f" => &spec.f,
            "g" => &spec.g,
            _ => &spec.h,
        };
        out.push(spec.function(slot, name)?.discretize(&dom, spec.field)?);
    }
    Ok((dom, out))
}

/// Evaluates `spec` and lists every inequality its theorem asserts. Errors
/// are input errors (missing or malformed parameters, degenerate pairs,
/// violated side restrictions); a violated hypothesis is reported through
/// [`Evaluation::admissibility`] instead.
pub fn evaluate(spec: &InstanceSpec) -> Result<Evaluation> {
    use TheoremId::*;
    let s = spec;
    Ok(match s.theorem {
        SchwarzBall => from_chain(schwarz::reverse_schwarz_ball(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.a, "a")?,
            s.real(s.r, "r")?,
        )?),
        SchwarzPair => from_chain(schwarz::reverse_schwarz_pair(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.y, "y")?,
            &s.scalar_pair(&s.pair, "pair")?,
        )?),
        TriangleBall => from_triangle(triangle::triangle_reverse_ball(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.a, "a")?,
            s.real(s.r, "r")?,
        )?),
        TrianglePair => from_triangle(triangle::triangle_reverse_pair(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.y, "y")?,
            s.real(s.m, "m")?,
            s.real(s.big_m, "big_m")?,
        )?),
        GrussBall | GrussBallRefined => {
            let op = if s.theorem == GrussBall {
                gruss::gruss_ball
            } else {
                gruss::gruss_ball_refined
            };
            from_gruss(op(
                &s.vector(&s.x, "x")?,
                &s.vector(&s.y, "y")?,
                &s.vector(&s.e, "e")?,
                s.real(s.r1, "r1")?,
                s.real(s.r2, "r2")?,
            )?)
        }
        GrussPair | GrussPairRefined => {
            let op = if s.theorem == GrussPair {
                gruss::gruss_pair
            } else {
                gruss::gruss_pair_refined
            };
            from_gruss(op(
                &s.vector(&s.x, "x")?,
                &s.vector(&s.y, "y")?,
                &s.vector(&s.e, "e")?,
                &s.scalar_pair(&s.pair_x, "pair_x")?,
                &s.scalar_pair(&s.pair_y, "pair_y")?,
            )?)
        }
        BesselBall => from_bessel(bessel::bessel_reverse_ball(
            &s.vector(&s.x, "x")?,
            &s.orthonormal_family()?,
            &s.sequence(&s.lam, "lam")?,
            s.real(s.r, "r")?,
        )?),
        BesselPair => from_bessel(bessel::bessel_reverse_pair(
            &s.vector(&s.x, "x")?,
            &s.orthonormal_family()?,
            &s.sequence(&s.gammas, "gammas")?,
            &s.sequence(&s.big_gammas, "big_gammas")?,
        )?),
        OrthoGrussBall => from_gruss(bessel::gruss_orthonormal_ball(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.y, "y")?,
            &s.orthonormal_family()?,
            &s.sequence(&s.lam, "lam")?,
            &s.sequence(&s.mu, "mu")?,
            s.real(s.r1, "r1")?,
            s.real(s.r2, "r2")?,
        )?),
        OrthoGrussPair => from_gruss(bessel::gruss_orthonormal_pair(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.y, "y")?,
            &s.orthonormal_family()?,
            &s.sequence(&s.gammas, "gammas")?,
            &s.sequence(&s.big_gammas, "big_gammas")?,
            &s.sequence(&s.phis, "phis")?,
            &s.sequence(&s.big_phis, "big_phis")?,
        )?),
        LegacySchwarzBall => from_chain(legacy::legacy_schwarz_ball(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.a, "a")?,
            s.real(s.r, "r")?,
        )?),
        LegacySchwarzPair => {
            let rep = legacy::legacy_schwarz_pair(
                &s.vector(&s.x, "x")?,
                &s.vector(&s.y, "y")?,
                &s.scalar_pair(&s.pair, "pair")?,
            )?;
            let mut ev = from_chain(rep.additive);
            let mut mult = Vec::new();
            chain_checks("multiplicative: ", &rep.multiplicative, &mut mult);
            for c in ev.checks.iter_mut() {
                c.label = format!("additive: {}", c.label);
            }
            ev.checks.extend(mult);
            ev
        }
        LegacyTriangleBall => from_triangle(legacy::legacy_triangle(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.a, "a")?,
            TriangleMode::Ball {
                r: s.real(s.r, "r")?,
            },
        )?),
        LegacyTrianglePair => from_triangle(legacy::legacy_triangle(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.y, "y")?,
            TriangleMode::Pair {
                m: s.real(s.m, "m")?,
                big_m: s.real(s.big_m, "big_m")?,
            },
        )?),
        LegacyGrussBall => from_gruss(legacy::legacy_gruss(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.y, "y")?,
            &s.vector(&s.e, "e")?,
            GrussMode::Ball {
                r1: s.real(s.r1, "r1")?,
                r2: s.real(s.r2, "r2")?,
            },
        )?),
        LegacyGrussPair => from_gruss(legacy::legacy_gruss(
            &s.vector(&s.x, "x")?,
            &s.vector(&s.y, "y")?,
            &s.vector(&s.e, "e")?,
            GrussMode::Pair {
                pair_x: s.scalar_pair(&s.pair_x, "pair_x")?,
                pair_y: s.scalar_pair(&s.pair_y, "pair_y")?,
            },
        )?),
        LegacyBesselBall => from_bessel(legacy::legacy_bessel(
            &s.vector(&s.x, "x")?,
            &s.orthonormal_family()?,
            &BesselMode::Ball {
                lam: s.sequence(&s.lam, "lam")?,
                r: s.real(s.r, "r")?,
            },
        )?),
        LegacyBesselPair => from_bessel(legacy::legacy_bessel(
            &s.vector(&s.x, "x")?,
            &s.orthonormal_family()?,
            &BesselMode::Pair {
                gammas: s.sequence(&s.gammas, "gammas")?,
                big_gammas: s.sequence(&s.big_gammas, "big_gammas")?,
            },
        )?),
        IntegralSchwarzBall => {
            let (dom, fg) = functions(s, &["f", "g"])?;
            from_chain(integral::integral_schwarz_ball(
                &fg[0],
                &fg[1],
                &dom,
                s.real(s.r, "r")?,
            )?)
        }
        IntegralSchwarzPair => {
            let (dom, fg) = functions(s, &["f", "g"])?;
            from_chain(integral::integral_schwarz_pair(
                &fg[0],
                &fg[1],
                &dom,
                &s.scalar_pair(&s.pair, "pair")?,
            )?)
        }
        IntegralSchwarzRange => {
            let (dom, fg) = functions(s, &["f", "g"])?;
            from_chain(integral::integral_schwarz_range(
                &fg[0],
                &fg[1],
                &dom,
                s.real(s.m, "m")?,
                s.real(s.big_m, "big_m")?,
            )?)
        }
        IntegralTriangle => {
            let (dom, fg) = functions(s, &["f", "g"])?;
            from_triangle(integral::integral_triangle(
                &fg[0],
                &fg[1],
                &dom,
                s.real(s.m, "m")?,
                s.real(s.big_m, "big_m")?,
            )?)
        }
        IntegralGruss => {
            let (dom, fgh) = functions(s, &["f", "g", "h"])?;
            from_gruss(integral::integral_gruss(
                &fgh[0],
                &fgh[1],
                &fgh[2],
                &dom,
                &s.scalar_pair(&s.pair_x, "pair_x")?,
                &s.scalar_pair(&s.pair_y, "pair_y")?,
            )?)
        }
    })
}
