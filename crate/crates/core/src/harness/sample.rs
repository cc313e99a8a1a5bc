//! Constructive instance generation. Admissible instances are built as
//! `center + radius·u·w` with `u ∈ (0, 1]` and `w` a unit direction, so the
//! hypothesis holds by construction and never by rejection. Adversarial
//! instances use the same recipe with `u ∈ [2, 50]`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::conditions::ScalarPair;
use crate::error::{IneqError, Result};
use crate::harness::evaluate::evaluate;
use crate::integral::{DomainSpec, FunctionSpec, Polynomial, WeightedDomain};
use crate::space::{gram_schmidt, FieldTag, Scalar, Vector};

use super::instance::{InstanceSpec, ScalarList};
use super::theorem::{Restriction, Shape, TheoremId};

/// Whether the sampled instance satisfies the theorem's hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Admissible,
    Adversarial,
}

/// Minimum relative separation `|Γ ∓ γ| ≥ PAIR_SEPARATION·(|Γ| + |γ|)`.
const PAIR_SEPARATION: f64 = 1e-3;

const ADVERSARIAL_ATTEMPTS: usize = 32;

struct Sampler {
    rng: ChaCha8Rng,
    field: FieldTag,
    mode: SampleMode,
}

impl Sampler {
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo.ln(), hi.ln()).exp()
    }

    fn scalar(&mut self) -> Scalar {
        let re = self.uniform(-2.0, 2.0);
        let im = match self.field {
            FieldTag::Real => 0.0,
            FieldTag::Complex => self.uniform(-2.0, 2.0),
        };
        Complex64::new(re, im)
    }

    fn scalars(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar()).collect()
    }

    fn nonzero_scalars(&mut self, n: usize) -> Vec<Scalar> {
        loop {
            let v = self.scalars(n);
            if v.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-12 {
                return v;
            }
        }
    }

    fn unit(&mut self, dim: usize) -> Vec<Scalar> {
        let v = self.nonzero_scalars(dim);
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        v.into_iter().map(|c| c / n).collect()
    }

    /// Multiplier of the radius: `(0, 1]` with an atom at exactly 1, or
    /// `[2, 50]` in adversarial mode.
    fn spread(&mut self) -> f64 {
        match self.mode {
            SampleMode::Admissible => {
                if self.rng.gen_bool(0.1) {
                    1.0
                } else {
                    1.0 - self.rng.gen::<f64>()
                }
            }
            SampleMode::Adversarial => self.uniform(2.0, 50.0),
        }
    }

    fn radius(&mut self) -> f64 {
        self.log_uniform(1e-3, 10.0)
    }

    /// `center + radius·spread·w`
    fn around(&mut self, center: &[Scalar], radius: f64) -> Vec<Scalar> {
        let step = radius * self.spread();
        let w = self.unit(center.len());
        center.iter().zip(w).map(|(c, d)| c + d * step).collect()
    }

    fn separated(lo: Scalar, hi: Scalar) -> bool {
        let cut = PAIR_SEPARATION * (lo.norm() + hi.norm());
        (hi - lo).norm() >= cut && (hi + lo).norm() >= cut && cut > 0.0
    }

    fn pair(&mut self, positive_product: bool) -> ScalarPair {
        loop {
            let lo = self.scalar();
            let hi = if positive_product {
                let t = Complex64::new(
                    self.uniform(1e-3, 2.0),
                    match self.field {
                        FieldTag::Real => 0.0,
                        FieldTag::Complex => self.uniform(-2.0, 2.0),
                    },
                );
                lo * t
            } else {
                self.scalar()
            };
            if Self::separated(lo, hi) {
                return ScalarPair::new(lo, hi);
            }
        }
    }

    fn range(&mut self) -> (f64, f64) {
        let m = self.log_uniform(1e-3, 10.0);
        (m, m * (1.0 + self.log_uniform(1e-3, 10.0)))
    }

    fn sequence_pair(&mut self, k: usize, positive_product: bool) -> (Vec<Scalar>, Vec<Scalar>) {
        loop {
            let lo = self.scalars(k);
            let hi: Vec<Scalar> = if positive_product {
                lo.iter()
                    .map(|&l| {
                        let t = Complex64::new(
                            self.uniform(1e-3, 2.0),
                            match self.field {
                                FieldTag::Real => 0.0,
                                FieldTag::Complex => self.uniform(-2.0, 2.0),
                            },
                        );
                        l * t
                    })
                    .collect()
            } else {
                self.scalars(k)
            };
            let nrm =
                |v: &mut dyn Iterator<Item = Scalar>| v.map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let d = nrm(&mut lo.iter().zip(&hi).map(|(l, h)| h - l));
            let s = nrm(&mut lo.iter().zip(&hi).map(|(l, h)| h + l));
            let cut =
                PAIR_SEPARATION * (nrm(&mut lo.iter().copied()) + nrm(&mut hi.iter().copied()));
            let product: f64 = lo.iter().zip(&hi).map(|(l, h)| (h * l.conj()).re).sum();
            if cut > 0.0 && d >= cut && s >= cut && (!positive_product || product > 0.0) {
                return (lo, hi);
            }
        }
    }

    /// A random orthonormal family of `1..=dim` members, as coordinate lists.
    fn family(&mut self, dim: usize) -> Result<Vec<Vec<Scalar>>> {
        let k = self.rng.gen_range(1..=dim);
        loop {
            let vs = (0..k)
                .map(|_| Vector::new(self.field, self.scalars(dim)))
                .collect::<Result<Vec<_>>>()?;
            match gram_schmidt(&vs, 1e-6) {
                Ok(fam) => {
                    return Ok(fam.members().iter().map(|m| m.coords().to_vec()).collect());
                }
                Err(IneqError::RankDeficient { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
    }

    fn unit_radius(&mut self) -> f64 {
        self.log_uniform(1e-3, 0.999)
    }
}

fn combine(family: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Complex64::new(0.0, 0.0); family[0].len()];
    for (e, c) in family.iter().zip(coeffs) {
        for (o, v) in out.iter_mut().zip(e) {
            *o += c * v;
        }
    }
    out
}

fn scale(v: &[Scalar], s: Scalar) -> Vec<Scalar> {
    v.iter().map(|c| c * s).collect()
}

fn list_norm(v: &[Scalar]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn poly_mul(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn poly_add(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let n = p.len().max(q.len());
    let zero = Complex64::new(0.0, 0.0);
    (0..n)
        .map(|i| p.get(i).copied().unwrap_or(zero) + q.get(i).copied().unwrap_or(zero))
        .collect()
}

/// Largest `|p(s)|` over the quadrature nodes.
fn node_max(p: &[Scalar], dom: &WeightedDomain) -> f64 {
    let poly = Polynomial::new(p.to_vec());
    dom.nodes()
        .iter()
        .map(|&s| poly.eval(s).norm())
        .fold(0.0, f64::max)
}

fn quad_norm(p: &[Scalar], dom: &WeightedDomain) -> f64 {
    let poly = Polynomial::new(p.to_vec());
    dom.nodes()
        .iter()
        .zip(dom.weights())
        .map(|(&s, w)| w * poly.eval(s).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

impl Sampler {
    fn poly(&mut self, n: usize, real: bool) -> Vec<Scalar> {
        let saved = self.field;
        if real {
            self.field = FieldTag::Real;
        }
        let p = self.nonzero_scalars(n);
        self.field = saved;
        p
    }

    /// A polynomial direction normalized to `max |q(s_i)| = 1` over the nodes.
    fn node_unit_poly(&mut self, n: usize, real: bool, dom: &WeightedDomain) -> Vec<Scalar> {
        loop {
            let q = self.poly(n, real);
            let m = node_max(&q, dom);
            if m > 1e-12 {
                return scale(&q, Complex64::new(1.0 / m, 0.0));
            }
        }
    }

    /// `f = c·g + ½|Γ−γ|·spread·q·g` with `|q| ≤ 1` at the nodes.
    fn pair_function(
        &mut self,
        g: &[Scalar],
        pair: &ScalarPair,
        n: usize,
        dom: &WeightedDomain,
    ) -> Vec<Scalar> {
        let q = self.node_unit_poly(n, false, dom);
        let step = 0.5 * pair.diff_abs() * self.spread();
        poly_add(
            &scale(g, pair.center()),
            &poly_mul(&scale(&q, Complex64::new(step, 0.0)), g),
        )
    }
}

fn list(v: Vec<Scalar>) -> Option<ScalarList> {
    Some(ScalarList(v))
}

fn poly_fn(v: Vec<Scalar>) -> Option<FunctionSpec> {
    Some(FunctionSpec::Poly(Polynomial::new(v)))
}

/// Builds an instance of `theorem` in `field`, dimension `dim`, from `seed`.
/// For integral theorems `dim` is the number of polynomial coefficients.
pub fn sample(
    theorem: TheoremId,
    field: FieldTag,
    dim: usize,
    seed: u64,
    mode: SampleMode,
) -> Result<InstanceSpec> {
    if dim == 0 {
        return Err(IneqError::InvalidParameter(
            "dimension must be at least 1".into(),
        ));
    }
    let mut s = Sampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
        field,
        mode,
    };
    if mode == SampleMode::Admissible {
        return draw(&mut s, theorem, dim, seed);
    }
    // A small-scale draw can land inside the boundary tolerance band of the
    // violated condition; keep drawing from the same stream until it is
    // outside.
    let mut spec = draw(&mut s, theorem, dim, seed)?;
    for _ in 1..ADVERSARIAL_ATTEMPTS {
        if matches!(evaluate(&spec), Ok(ev) if !ev.admissible()) {
            break;
        }
        spec = draw(&mut s, theorem, dim, seed)?;
    }
    Ok(spec)
}

fn draw(s: &mut Sampler, theorem: TheoremId, dim: usize, seed: u64) -> Result<InstanceSpec> {
    let field = s.field;
    let mut spec = InstanceSpec::new(theorem, field);
    spec.dim = Some(dim);
    spec.seed = Some(seed);
    let restriction = theorem.restriction();
    let positive = restriction == Restriction::PositiveProduct;
    let one = Complex64::new(1.0, 0.0);
    match theorem.shape() {
        Shape::Ball => {
            let a = s.nonzero_scalars(dim);
            let r = if restriction == Restriction::RadiusBelowCenter {
                list_norm(&a) * s.log_uniform(1e-3, 0.999)
            } else {
                s.radius()
            };
            spec.x = list(s.around(&a, r));
            spec.a = list(a);
            spec.r = Some(r);
        }
        Shape::Pair => {
            let y = s.nonzero_scalars(dim);
            let pair = s.pair(positive);
            let center = scale(&y, pair.center());
            spec.x = list(s.around(&center, pair.half_width() * list_norm(&y)));
            spec.y = list(y);
            spec.pair = Some(pair);
        }
        Shape::Range => {
            let y = s.nonzero_scalars(dim);
            let (m, big_m) = s.range();
            let center = scale(&y, Complex64::new(0.5 * (m + big_m), 0.0));
            spec.x = list(s.around(&center, 0.5 * (big_m - m) * list_norm(&y)));
            spec.y = list(y);
            spec.m = Some(m);
            spec.big_m = Some(big_m);
        }
        Shape::GrussBall => {
            let e = s.unit(dim);
            let (r1, r2) = if restriction == Restriction::UnitRadii {
                (s.unit_radius(), s.unit_radius())
            } else {
                (s.radius(), s.radius())
            };
            spec.x = list(s.around(&e, r1));
            spec.y = list(s.around(&e, r2));
            spec.e = list(e);
            spec.r1 = Some(r1);
            spec.r2 = Some(r2);
        }
        Shape::GrussPair => {
            let e = s.unit(dim);
            let (px, py) = (s.pair(positive), s.pair(positive));
            spec.x = list(s.around(&scale(&e, px.center()), px.half_width()));
            spec.y = list(s.around(&scale(&e, py.center()), py.half_width()));
            spec.e = list(e);
            spec.pair_x = Some(px);
            spec.pair_y = Some(py);
        }
        Shape::BesselBall | Shape::OrthoBall => {
            let fam = s.family(dim)?;
            let k = fam.len();
            let lam = s.nonzero_scalars(k);
            let r = if restriction == Restriction::RadiusBelowCenter {
                list_norm(&lam) * s.log_uniform(1e-3, 0.999)
            } else {
                s.radius()
            };
            spec.x = list(s.around(&combine(&fam, &lam), r));
            spec.lam = list(lam);
            if theorem.shape() == Shape::OrthoBall {
                let mu = s.nonzero_scalars(k);
                let r2 = s.radius();
                spec.y = list(s.around(&combine(&fam, &mu), r2));
                spec.mu = list(mu);
                spec.r1 = Some(r);
                spec.r2 = Some(r2);
            } else {
                spec.r = Some(r);
            }
            spec.family = Some(fam.into_iter().map(ScalarList).collect());
        }
        Shape::BesselPair | Shape::OrthoPair => {
            let fam = s.family(dim)?;
            let k = fam.len();
            let (lo, hi) = s.sequence_pair(k, positive);
            let mid: Vec<Scalar> = lo.iter().zip(&hi).map(|(l, h)| (l + h) * 0.5).collect();
            let half = 0.5 * list_norm(&lo.iter().zip(&hi).map(|(l, h)| h - l).collect::<Vec<_>>());
            spec.x = list(s.around(&combine(&fam, &mid), half));
            spec.gammas = list(lo);
            spec.big_gammas = list(hi);
            if theorem.shape() == Shape::OrthoPair {
                let (plo, phi) = s.sequence_pair(k, positive);
                let mid: Vec<Scalar> = plo.iter().zip(&phi).map(|(l, h)| (l + h) * 0.5).collect();
                let half =
                    0.5 * list_norm(&plo.iter().zip(&phi).map(|(l, h)| h - l).collect::<Vec<_>>());
                spec.y = list(s.around(&combine(&fam, &mid), half));
                spec.phis = list(plo);
                spec.big_phis = list(phi);
            }
            spec.family = Some(fam.into_iter().map(ScalarList).collect());
        }
        Shape::IntegralBall => {
            let dom = DomainSpec::default().build()?;
            let g = s.poly(dim, false);
            let q = s.node_unit_poly(dim, false, &dom);
            let r = s.radius();
            let step = r * s.spread();
            spec.f = poly_fn(poly_add(&g, &scale(&q, Complex64::new(step, 0.0))));
            spec.g = poly_fn(g);
            spec.r = Some(r);
        }
        Shape::IntegralPair => {
            let dom = DomainSpec::default().build()?;
            let g = s.poly(dim, false);
            let pair = s.pair(false);
            spec.f = poly_fn(s.pair_function(&g, &pair, dim, &dom));
            spec.g = poly_fn(g);
            spec.pair = Some(pair);
        }
        Shape::IntegralRange => {
            // g = c + p² > 0 and f = m·g + (M−m)·½(1 + spread·q)·g.
            let dom = DomainSpec::default().build()?;
            let p = s.poly(dim, true);
            let c = Complex64::new(s.uniform(0.1, 2.0), 0.0);
            let g = poly_add(&[c], &poly_mul(&p, &p));
            let (m, big_m) = s.range();
            let q = s.node_unit_poly(dim, true, &dom);
            let spread = s.spread();
            let t = poly_add(
                &[Complex64::new(0.5, 0.0)],
                &scale(&q, Complex64::new(0.5 * spread, 0.0)),
            );
            let f = poly_add(
                &scale(&g, Complex64::new(m, 0.0)),
                &poly_mul(&scale(&t, Complex64::new(big_m - m, 0.0)), &g),
            );
            spec.f = poly_fn(f);
            spec.g = poly_fn(g);
            spec.m = Some(m);
            spec.big_m = Some(big_m);
        }
        Shape::IntegralGruss => {
            let dom = DomainSpec::default().build()?;
            let k = s.poly(dim, false);
            let h = scale(&k, one / quad_norm(&k, &dom));
            let (px, py) = (s.pair(false), s.pair(false));
            spec.f = poly_fn(s.pair_function(&h, &px, dim, &dom));
            spec.g = poly_fn(s.pair_function(&h, &py, dim, &dom));
            spec.h = poly_fn(h);
            spec.pair_x = Some(px);
            spec.pair_y = Some(py);
        }
    }
    Ok(spec)
}

/// An instance satisfying the theorem's hypothesis by construction;
/// deterministic in `seed`.
pub fn sample_admissible(
    theorem: TheoremId,
    field: FieldTag,
    dim: usize,
    seed: u64,
) -> Result<InstanceSpec> {
    sample(theorem, field, dim, seed, SampleMode::Admissible)
}

/// An instance pushed outside the hypothesis (radius multiplier in `[2, 50]`),
/// redrawn while it still falls inside the boundary tolerance band.
pub fn sample_adversarial(
    theorem: TheoremId,
    field: FieldTag,
    dim: usize,
    seed: u64,
) -> Result<InstanceSpec> {
    sample(theorem, field, dim, seed, SampleMode::Adversarial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_admissible() {
        for t in TheoremId::all() {
            for field in [FieldTag::Real, FieldTag::Complex] {
                for dim in [1, 3] {
                    let a = sample_admissible(t, field, dim, 11).unwrap();
                    let b = sample_admissible(t, field, dim, 11).unwrap();
                    assert_eq!(a, b);
                    let ev = evaluate(&a).unwrap_or_else(|e| panic!("{t} {field} {dim}: {e}"));
                    assert!(ev.admissible(), "{t} {field} {dim}: {:?}", ev.admissibility);
                    assert!(
                        ev.passes(1e-9),
                        "{t} {field} {dim}: {:?}",
                        ev.failed_checks(1e-9)
                    );
                }
            }
        }
    }

    #[test]
    fn adversarial_leaves_hypothesis() {
        let ev =
            evaluate(&sample_adversarial(TheoremId::SchwarzBall, FieldTag::Real, 3, 5).unwrap())
                .unwrap();
        assert!(!ev.admissible());
    }
}
