//! Weighted `L²` inner products on an interval, realized by quadrature, and
//! the integral forms of the reverse Schwarz, triangle and Grüss bounds.
//!
//! Hypotheses that hold "almost everywhere" are checked at the quadrature
//! nodes only. A discretized instance is itself a finite-dimensional
//! instance through the embedding `f ↦ (√w_i f(s_i))_i`, see [`embed`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conditions::{ConditionForm, ConditionReport, ScalarPair};
use crate::error::{IneqError, Result};
use crate::gruss::GrussReport;
use crate::schwarz::{pair_rotation, BoundChain, Quantity};
use crate::space::{gram_defect_weighted, FieldTag, Scalar, SchwarzDefect, Vector};
use crate::triangle::{check_m_pair, TriangleDefect};

/// Allowed deviation of `Σ w_i` and of `‖h‖` from 1.
pub const NORMALIZATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureRule {
    GaussLegendre(usize),
    /// `n` equally spaced nodes including both endpoints.
    Trapezoid(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDomain {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    normalization: f64,
    raw_mass: f64,
}

impl WeightedDomain {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Quadrature weights times `ρ(s_i)`, rescaled to sum to one.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_i` after rescaling.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// `Σ w_i` before rescaling, i.e. the quadrature value of `∫ρ`.
    pub fn raw_mass(&self) -> f64 {
        self.raw_mass
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f_i conj(g_i)`
    pub fn inner(&self, f: &DiscretizedFunction, g: &DiscretizedFunction) -> Result<Scalar> {
        self.check_pair(f, g)?;
        Ok(self
            .weights
            .iter()
            .zip(f.values.iter().zip(&g.values))
            .map(|(w, (a, b))| a * b.conj() * *w)
            .sum())
    }

    pub fn norm_sq(&self, f: &DiscretizedFunction) -> Result<f64> {
        self.check(f)?;
        Ok(self
            .weights
            .iter()
            .zip(&f.values)
            .map(|(w, a)| w * a.norm_sqr())
            .sum())
    }

    pub fn norm(&self, f: &DiscretizedFunction) -> Result<f64> {
        self.norm_sq(f).map(f64::sqrt)
    }

    fn check(&self, f: &DiscretizedFunction) -> Result<()> {
        if f.values.len() != self.len() {
            return Err(IneqError::LengthMismatch {
                left: f.values.len(),
                right: self.len(),
            });
        }
        Ok(())
    }

    fn check_pair(&self, f: &DiscretizedFunction, g: &DiscretizedFunction) -> Result<()> {
        self.check(f)?;
        self.check(g)?;
        if f.field != g.field {
            return Err(IneqError::FieldMismatch);
        }
        Ok(())
    }

    fn schwarz_defect(
        &self,
        f: &DiscretizedFunction,
        g: &DiscretizedFunction,
    ) -> Result<SchwarzDefect> {
        let ip = self.inner(f, g)?;
        let lagrange = gram_defect_weighted(&f.values, &g.values, Some(&self.weights));
        Ok(SchwarzDefect::from_parts(
            self.norm(f)? * self.norm(g)?,
            ip,
            lagrange,
        ))
    }
}

/// Nodes and weights on `[-1, 1]`.
type ReferenceRule = Arc<(Vec<f64>, Vec<f64>)>;

fn gauss_legendre_reference(n: usize) -> ReferenceRule {
    static CACHE: OnceLock<Mutex<HashMap<usize, ReferenceRule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let computed = Arc::new(compute_gauss_legendre(n));
    cache.lock().unwrap().insert(n, computed.clone());
    computed
}

/// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
            }
            dp = nf * (z * p1 - p2) / (z * z - 1.0);
            let step = p1 / dp;
            z -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Builds a weighted domain on `[a, b]` with weight `ρ`, then rescales the
/// weights so they sum to one.
pub fn build_domain(
    interval: [f64; 2],
    weight: &dyn Fn(f64) -> f64,
    rule: QuadratureRule,
) -> Result<WeightedDomain> {
    let [a, b] = interval;
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(IneqError::InvalidParameter(format!(
            "interval must satisfy a < b, got [{a}, {b}]"
        )));
    }
    let (nodes, base): (Vec<f64>, Vec<f64>) = match rule {
        QuadratureRule::GaussLegendre(n) | QuadratureRule::Trapezoid(n) if n < 2 => {
            return Err(IneqError::InvalidParameter(format!(
                "quadrature needs at least 2 nodes, got {n}"
            )))
        }
        QuadratureRule::GaussLegendre(n) => {
            let reference = gauss_legendre_reference(n);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            (
                reference.0.iter().map(|t| mid + half * t).collect(),
                reference.1.iter().map(|w| w * half).collect(),
            )
        }
        QuadratureRule::Trapezoid(n) => {
            let h = (b - a) / (n - 1) as f64;
            let nodes = (0..n).map(|i| a + h * i as f64).collect();
            let weights = (0..n)
                .map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h })
                .collect();
            (nodes, weights)
        }
    };
    let mut weights = Vec::with_capacity(nodes.len());
    for (i, (&s, &w)) in nodes.iter().zip(&base).enumerate() {
        let rho = weight(s);
        if !rho.is_finite() || rho < 0.0 {
            return Err(IneqError::InvalidParameter(format!(
                "weight function is {rho} at node {i} (s = {s})"
            )));
        }
        weights.push(w * rho);
    }
    let raw_mass: f64 = weights.iter().sum();
    if raw_mass <= 0.0 {
        return Err(IneqError::InvalidParameter(
            "weight function integrates to zero".into(),
        ));
    }
    for w in weights.iter_mut() {
        *w /= raw_mass;
    }
    let normalization = weights.iter().sum();
    Ok(WeightedDomain {
        nodes,
        weights,
        normalization,
        raw_mass,
    })
}

/// Polynomial `Σ c_k s^k` with scalar coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    #[serde(with = "crate::harness::wire::scalar_vec")]
    pub coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Self { coeffs }
    }

    pub fn real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn eval(&self, s: f64) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedFunction {
    field: FieldTag,
    values: Vec<Scalar>,
}

impl DiscretizedFunction {
    pub fn new(field: FieldTag, values: Vec<Scalar>) -> Result<Self> {
        // Same validation rules as vectors.
        let v = Vector::new(field, values)?;
        Ok(Self {
            field,
            values: v.into_coords(),
        })
    }

    pub fn real(values: &[f64]) -> Result<Self> {
        Self::new(
            FieldTag::Real,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn sample(
        dom: &WeightedDomain,
        field: FieldTag,
        f: impl Fn(f64) -> Scalar,
    ) -> Result<Self> {
        Self::new(field, dom.nodes.iter().map(|&s| f(s)).collect())
    }

    pub fn from_poly(dom: &WeightedDomain, field: FieldTag, p: &Polynomial) -> Result<Self> {
        Self::sample(dom, field, |s| p.eval(s))
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    fn add(&self, other: &DiscretizedFunction) -> Result<DiscretizedFunction> {
        if self.field != other.field {
            return Err(IneqError::FieldMismatch);
        }
        Ok(Self {
            field: self.field,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// `(√w_i f(s_i))_i`, so that the Euclidean inner product of embeddings is
/// the quadrature inner product.
pub fn embed(f: &DiscretizedFunction, dom: &WeightedDomain) -> Result<Vector> {
    dom.check(f)?;
    Vector::new(
        f.field,
        f.values
            .iter()
            .zip(&dom.weights)
            .map(|(v, w)| v * w.sqrt())
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointwiseKind {
    /// `|f(s) − g(s)| ≤ r`
    Ball(f64),
    /// `Re[(Γg(s) − f(s)) conj(f(s) − γg(s))] ≥ 0`
    Pair(ScalarPair),
    /// `m·g(s) ≤ f(s) ≤ M·g(s)` for real functions.
    Range { m: f64, big_m: f64 },
}

/// Worst node of a nodewise condition. The reported margin and tolerance are
/// those of the node with the smallest margin relative to its own scale.
pub fn pointwise_condition(
    f: &DiscretizedFunction,
    g: &DiscretizedFunction,
    kind: PointwiseKind,
) -> Result<ConditionReport> {
    if f.values.len() != g.values.len() {
        return Err(IneqError::LengthMismatch {
            left: f.values.len(),
            right: g.values.len(),
        });
    }
    if f.field != g.field {
        return Err(IneqError::FieldMismatch);
    }
    let form = match kind {
        PointwiseKind::Ball(r) => {
            crate::conditions::check_radius(r)?;
            ConditionForm::Ball
        }
        PointwiseKind::Pair(_) => ConditionForm::RealPart,
        PointwiseKind::Range { m, big_m } => {
            if f.values.iter().chain(&g.values).any(|v| v.im != 0.0) {
                return Err(IneqError::InvalidParameter(
                    "range condition needs real-valued functions".into(),
                ));
            }
            if !(m.is_finite() && big_m.is_finite() && big_m >= m) {
                return Err(IneqError::InvalidParameter(format!(
                    "range condition needs m <= M, got m={m}, M={big_m}"
                )));
            }
            ConditionForm::Range
        }
    };
    let mut worst: Option<(f64, f64, f64)> = None;
    for (&fv, &gv) in f.values.iter().zip(&g.values) {
        let (margin, scale) = match kind {
            PointwiseKind::Ball(r) => (r - (fv - gv).norm(), 1.0 + fv.norm() + gv.norm() + r),
            PointwiseKind::Pair(p) => {
                let hi = p.hi * gv;
                let lo = p.lo * gv;
                let m = ((hi - fv) * (fv - lo).conj()).re;
                (m, 1.0 + fv.norm_sqr() + hi.norm_sqr() + lo.norm_sqr())
            }
            PointwiseKind::Range { m, big_m } => {
                let (fr, gr) = (fv.re, gv.re);
                let margin = (fr - m * gr).min(big_m * gr - fr);
                (margin, 1.0 + fr.abs() + (big_m * gr).abs() + (m * gr).abs())
            }
        };
        let rel = margin / scale;
        if worst.is_none_or(|(r, _, _)| rel < r) {
            worst = Some((rel, margin, scale));
        }
    }
    let (_, margin, scale) = worst.expect("domains have at least two nodes");
    Ok(ConditionReport::from_margin(margin, form, scale))
}

/// Integral form of the ball reverse Schwarz chain, ending at `½r²`.
pub fn integral_schwarz_ball(
    f: &DiscretizedFunction,
    g: &DiscretizedFunction,
    dom: &WeightedDomain,
    r: f64,
) -> Result<BoundChain> {
    let admissibility = pointwise_condition(f, g, PointwiseKind::Ball(r))?;
    let d = dom.schwarz_defect(f, g)?;
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

/// Integral form of the two-sided reverse Schwarz chain, ending at
/// `¼|Γ−γ|²/|Γ+γ|·‖g‖²`.
pub fn integral_schwarz_pair(
    f: &DiscretizedFunction,
    g: &DiscretizedFunction,
    dom: &WeightedDomain,
    pair: &ScalarPair,
) -> Result<BoundChain> {
    pair.check_nondegenerate()?;
    crate::space::check_scalar_field(g.field, pair.lo, "pair.lo")?;
    crate::space::check_scalar_field(g.field, pair.hi, "pair.hi")?;
    let admissibility = pointwise_condition(f, g, PointwiseKind::Pair(*pair))?;
    let d = dom.schwarz_defect(f, g)?;
    let u = pair_rotation(pair);
    let bound = 0.25 * pair.diff_abs().powi(2) / pair.sum_abs() * dom.norm_sq(g)?;
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

/// `0 ≤ ‖f‖‖g‖ − |⟨f,g⟩| ≤ ¼(M−m)²/(M+m)·‖g‖²` under `m·g ≤ f ≤ M·g`.
pub fn integral_schwarz_range(
    f: &DiscretizedFunction,
    g: &DiscretizedFunction,
    dom: &WeightedDomain,
    m: f64,
    big_m: f64,
) -> Result<BoundChain> {
    check_m_pair(m, big_m)?;
    let admissibility = pointwise_condition(f, g, PointwiseKind::Range { m, big_m })?;
    let d = dom.schwarz_defect(f, g)?;
    let bound = 0.25 * (big_m - m).powi(2) / (big_m + m) * dom.norm_sq(g)?;
    Ok(BoundChain::new(
        &[("zero", 0.0), ("abs_gap", d.abs_gap()), ("bound", bound)],
        admissibility,
    ))
}

/// `0 ≤ ‖f‖ + ‖g‖ − ‖f + g‖ ≤ (√2/2)(M−m)/√(M+m)·‖g‖` under `m·g ≤ f ≤ M·g`.
pub fn integral_triangle(
    f: &DiscretizedFunction,
    g: &DiscretizedFunction,
    dom: &WeightedDomain,
    m: f64,
    big_m: f64,
) -> Result<TriangleDefect> {
    check_m_pair(m, big_m)?;
    let admissibility = pointwise_condition(f, g, PointwiseKind::Range { m, big_m })?;
    let d = dom.schwarz_defect(f, g)?;
    let nf = dom.norm(f)?;
    let ng = dom.norm(g)?;
    let nsum = dom.norm(&f.add(g)?)?;
    let den = nf + ng + nsum;
    let defect = if den > 0.0 {
        (2.0 * d.real_gap(Complex64::new(1.0, 0.0)) / den).max(0.0)
    } else {
        0.0
    };
    let bound = std::f64::consts::FRAC_1_SQRT_2 * (big_m - m) / (big_m + m).sqrt() * ng;
    let root = (0.5 * (big_m - m).powi(2) / (big_m + m) * ng * ng + nsum * nsum).sqrt();
    Ok(TriangleDefect {
        defect,
        bound,
        admissibility,
        route: vec![
            Quantity::new("norm_sum", nf + ng),
            Quantity::new("root_bound", root),
        ],
    })
}

/// `|⟨f,g⟩ − ⟨f,h⟩⟨h,g⟩| ≤ ¼·|A−a||B−b|/√(|A+a||B+b|)·√(‖f‖+|⟨f,h⟩|)·√(‖g‖+|⟨g,h⟩|)`
/// for `‖h‖ = 1` and nodewise two-sided conditions of `f`, `g` against `h`.
pub fn integral_gruss(
    f: &DiscretizedFunction,
    g: &DiscretizedFunction,
    h: &DiscretizedFunction,
    dom: &WeightedDomain,
    pair_f: &ScalarPair,
    pair_g: &ScalarPair,
) -> Result<GrussReport> {
    pair_f.check_nondegenerate()?;
    pair_g.check_nondegenerate()?;
    let nh = dom.norm(h)?;
    if (nh - 1.0).abs() > NORMALIZATION_TOL {
        return Err(IneqError::NotUnit { norm: nh });
    }
    for p in [pair_f, pair_g] {
        crate::space::check_scalar_field(h.field, p.lo, "pair.lo")?;
        crate::space::check_scalar_field(h.field, p.hi, "pair.hi")?;
    }
    let admissibility = [
        pointwise_condition(f, h, PointwiseKind::Pair(*pair_f))?,
        pointwise_condition(g, h, PointwiseKind::Pair(*pair_g))?,
    ];
    let fh = dom.inner(f, h)?;
    let hg = dom.inner(h, g)?;
    let gap = (dom.inner(f, g)? - fh * hg).norm();
    let (nf, ng) = (dom.norm(f)?, dom.norm(g)?);
    let (pf, pg) = (fh.norm(), hg.norm());
    let k = pair_f.diff_abs() * pair_g.diff_abs() / (pair_f.sum_abs() * pair_g.sum_abs()).sqrt();
    let rf = gram_defect_weighted(&f.values, &h.values, Some(&dom.weights));
    let rg = gram_defect_weighted(&g.values, &h.values, Some(&dom.weights));
    Ok(GrussReport {
        gap,
        bounds: vec![
            Quantity::new("bound", 0.25 * k * (nf + pf).sqrt() * (ng + pg).sqrt()),
            Quantity::new("sqrt_norm_bound", 0.5 * k * (nf * ng).sqrt()),
        ],
        intermediates: vec![
            Quantity::new("residual_x", rf),
            Quantity::new("residual_y", rg),
            Quantity::new(
                "residual_bound_x",
                0.25 * pair_f.diff_abs().powi(2) / pair_f.sum_abs() * (nf + pf),
            ),
            Quantity::new(
                "residual_bound_y",
                0.25 * pair_g.diff_abs().powi(2) / pair_g.sum_abs() * (ng + pg),
            ),
        ],
        admissibility,
    })
}

/// Serializable description of a weighted domain: interval, a real
/// polynomial weight (constant 1 when absent) and a quadrature rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub interval: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<f64>>,
    #[serde(default = "default_rule")]
    pub rule: QuadratureRule,
}

fn default_rule() -> QuadratureRule {
    QuadratureRule::GaussLegendre(64)
}

impl Default for DomainSpec {
    fn default() -> Self {
        Self {
            interval: [0.0, 1.0],
            weight: None,
            rule: default_rule(),
        }
    }
}

impl DomainSpec {
    pub fn build(&self) -> Result<WeightedDomain> {
        match &self.weight {
            None => build_domain(self.interval, &|_| 1.0, self.rule),
            Some(c) => {
                let p = Polynomial::real(c);
                build_domain(self.interval, &|s| p.eval(s).re, self.rule)
            }
        }
    }
}

/// A function given either by polynomial coefficients or by its values at
/// the domain nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionSpec {
    Poly(Polynomial),
    Values(#[serde(with = "crate::harness::wire::scalar_vec")] Vec<Scalar>),
}

impl FunctionSpec {
    pub fn discretize(&self, dom: &WeightedDomain, field: FieldTag) -> Result<DiscretizedFunction> {
        match self {
            FunctionSpec::Poly(p) => DiscretizedFunction::from_poly(dom, field, p),
            FunctionSpec::Values(v) => {
                let f = DiscretizedFunction::new(field, v.clone())?;
                dom.check(&f)?;
                Ok(f)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit() -> WeightedDomain {
        build_domain([0.0, 1.0], &|_| 1.0, QuadratureRule::GaussLegendre(64)).unwrap()
    }

    fn poly(dom: &WeightedDomain, c: &[f64]) -> DiscretizedFunction {
        DiscretizedFunction::from_poly(dom, FieldTag::Real, &Polynomial::real(c)).unwrap()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let dom = build_domain([0.0, 1.0], &|_| 1.0, QuadratureRule::GaussLegendre(16)).unwrap();
        let s = poly(&dom, &[0.0, 1.0]);
        let one = poly(&dom, &[1.0]);
        let sp1 = poly(&dom, &[1.0, 1.0]);
        assert_abs_diff_eq!(dom.inner(&s, &one).unwrap().re, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(
            dom.inner(&sp1, &sp1).unwrap().re,
            7.0 / 3.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(dom.normalization(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn weighted_domain_normalizes() {
        let dom =
            build_domain([0.0, 1.0], &|s| 2.0 * s, QuadratureRule::GaussLegendre(32)).unwrap();
        assert_abs_diff_eq!(dom.raw_mass(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(dom.normalization(), 1.0, epsilon = 1e-15);
        // ∫ 2s·s ds = 2/3
        let s = poly(&dom, &[0.0, 1.0]);
        let one = poly(&dom, &[1.0]);
        assert_abs_diff_eq!(dom.inner(&s, &one).unwrap().re, 2.0 / 3.0, epsilon = 1e-14);

        let dom = build_domain([0.0, 2.0], &|_| 3.0, QuadratureRule::GaussLegendre(8)).unwrap();
        assert_abs_diff_eq!(dom.raw_mass(), 6.0, epsilon = 1e-13);
        assert_abs_diff_eq!(dom.normalization(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn build_domain_rejects_bad_input() {
        assert!(build_domain([0.0, 1.0], &|s| s - 0.5, QuadratureRule::GaussLegendre(8)).is_err());
        assert!(build_domain([0.0, 1.0], &|_| 0.0, QuadratureRule::GaussLegendre(8)).is_err());
        assert!(build_domain([1.0, 0.0], &|_| 1.0, QuadratureRule::GaussLegendre(8)).is_err());
        assert!(build_domain([0.0, 1.0], &|_| 1.0, QuadratureRule::Trapezoid(1)).is_err());
    }

    #[test]
    fn trapezoid_converges_quadratically() {
        let err = |n: usize| {
            let dom = build_domain([0.0, 1.0], &|_| 1.0, QuadratureRule::Trapezoid(n)).unwrap();
            let f = poly(&dom, &[1.0, 1.0]);
            (dom.norm_sq(&f).unwrap() - 7.0 / 3.0).abs()
        };
        for n in [16, 32, 64] {
            let ratio = err(n) / err(2 * n);
            assert!((3.6..=4.4).contains(&ratio), "n={n} ratio={ratio}");
        }
    }

    #[test]
    fn pointwise_examples() {
        let dom = unit();
        let f = poly(&dom, &[1.0, 1.0]);
        let g = poly(&dom, &[1.0]);
        assert!(
            pointwise_condition(&f, &g, PointwiseKind::Ball(1.0))
                .unwrap()
                .holds
        );
        assert!(
            !pointwise_condition(&f, &g, PointwiseKind::Ball(0.5))
                .unwrap()
                .holds
        );
        assert!(
            pointwise_condition(&f, &g, PointwiseKind::Pair(ScalarPair::real(1.0, 2.0)))
                .unwrap()
                .holds
        );
        let range = PointwiseKind::Range { m: 1.0, big_m: 2.0 };
        assert!(pointwise_condition(&f, &g, range).unwrap().holds);

        // Trapezoid nodes include both endpoints, where the range is tight.
        let tdom = build_domain([0.0, 1.0], &|_| 1.0, QuadratureRule::Trapezoid(5)).unwrap();
        let rep =
            pointwise_condition(&poly(&tdom, &[1.0, 1.0]), &poly(&tdom, &[1.0]), range).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.margin, 0.0);
    }

    #[test]
    fn schwarz_examples() {
        let dom = unit();
        let f = poly(&dom, &[1.0, 1.0]);
        let g = poly(&dom, &[1.0]);
        let chain = integral_schwarz_ball(&f, &g, &dom, 1.0).unwrap();
        assert!(chain.admissibility.holds);
        assert_abs_diff_eq!(chain.gap(), 0.027525231651946669, epsilon = 1e-13);
        assert_eq!(chain.bound, 0.5);

        let chain = integral_schwarz_ball(&g, &g, &dom, 0.3).unwrap();
        assert!(chain.values[..4].iter().all(|v| *v == 0.0));

        let c = poly(&dom, &[1.5]);
        let chain = integral_schwarz_ball(&c, &g, &dom, 0.5).unwrap();
        assert_abs_diff_eq!(chain.gap(), 0.0, epsilon = 1e-15);

        let chain = integral_schwarz_pair(&f, &g, &dom, &ScalarPair::real(1.0, 2.0)).unwrap();
        assert!(chain.admissibility.holds);
        assert_abs_diff_eq!(chain.values[1], 0.027525231651946669, epsilon = 1e-13);
        assert_abs_diff_eq!(chain.bound, 1.0 / 12.0, epsilon = 1e-14);

        let chain = integral_schwarz_range(&f, &g, &dom, 1.0, 2.0).unwrap();
        assert!(chain.admissibility.holds);
        assert_abs_diff_eq!(chain.bound, 1.0 / 12.0, epsilon = 1e-14);
    }

    #[test]
    fn triangle_examples() {
        let dom = unit();
        let f = poly(&dom, &[1.0, 1.0]);
        let g = poly(&dom, &[1.0]);
        let t = integral_triangle(&f, &g, &dom, 1.0, 2.0).unwrap();
        assert!(t.admissibility.holds);
        assert_abs_diff_eq!(t.defect, 0.010913753228363436, epsilon = 1e-13);
        assert_abs_diff_eq!(t.bound, 0.408248290463863, epsilon = 1e-14);

        let t = integral_triangle(&poly(&dom, &[2.0]), &g, &dom, 1.0, 2.0).unwrap();
        assert_abs_diff_eq!(t.defect, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn gruss_examples() {
        let dom = unit();
        let h = poly(&dom, &[1.0]);
        let f = poly(&dom, &[1.0, 1.0]);
        let g = poly(&dom, &[1.0, -1.0]);
        let rep = integral_gruss(
            &f,
            &g,
            &h,
            &dom,
            &ScalarPair::real(1.0, 2.0),
            &ScalarPair::real(0.0, 1.0),
        )
        .unwrap();
        assert!(rep.admissible());
        assert_abs_diff_eq!(rep.gap, 1.0 / 12.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rep.bound(), 0.2606764087306732, epsilon = 1e-13);

        let rep = integral_gruss(
            &h,
            &h,
            &h,
            &dom,
            &ScalarPair::real(0.5, 2.0),
            &ScalarPair::real(0.5, 2.0),
        )
        .unwrap();
        assert_abs_diff_eq!(rep.gap, 0.0, epsilon = 1e-15);

        let two_h = poly(&dom, &[2.0]);
        assert!(matches!(
            integral_gruss(
                &f,
                &g,
                &two_h,
                &dom,
                &ScalarPair::real(1.0, 2.0),
                &ScalarPair::real(0.0, 1.0)
            ),
            Err(IneqError::NotUnit { .. })
        ));
    }

    #[test]
    fn embedding_reproduces_inner_product() {
        let dom = unit();
        let f = DiscretizedFunction::from_poly(
            &dom,
            FieldTag::Complex,
            &Polynomial::new(vec![Complex64::new(1.0, 0.5), Complex64::new(-0.3, 2.0)]),
        )
        .unwrap();
        let g = DiscretizedFunction::from_poly(
            &dom,
            FieldTag::Complex,
            &Polynomial::new(vec![Complex64::new(0.2, 0.0), Complex64::new(1.0, -1.0)]),
        )
        .unwrap();
        let direct = dom.inner(&f, &g).unwrap();
        let via =
            crate::space::inner(&embed(&f, &dom).unwrap(), &embed(&g, &dom).unwrap()).unwrap();
        assert!((direct - via).norm() <= 1e-14);
    }

    #[test]
    fn spec_serde_shapes() {
        let spec: DomainSpec =
            serde_json::from_str(r#"{"interval": [0, 1], "rule": {"trapezoid": 9}}"#).unwrap();
        assert_eq!(spec.rule, QuadratureRule::Trapezoid(9));
        assert_eq!(spec.build().unwrap().len(), 9);
        let f: FunctionSpec = serde_json::from_str(r#"{"poly": [1, [0, 1]]}"#).unwrap();
        assert_eq!(
            f,
            FunctionSpec::Poly(Polynomial::new(vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0)
            ]))
        );
    }
}
