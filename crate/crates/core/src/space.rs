//! Inner-product-space substrate: scalars, vectors, the sesquilinear form,
//! orthonormal families and coefficient sequences.
//!
//! Scalars are always stored as [`Complex64`]; a [`FieldTag`] on each vector
//! records whether the ambient space is real, in which case every imaginary
//! part is zero and operands from different fields are rejected.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{IneqError, Result};

pub type Scalar = Complex64;

/// Default absolute tolerance for orthonormality checks.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl FieldTag {
    /// Field needed to hold the product of a vector in `self` with `s`.
    fn promote(self, s: Scalar) -> FieldTag {
        if self == FieldTag::Real && s.im == 0.0 {
            FieldTag::Real
        } else {
            FieldTag::Complex
        }
    }

    fn join(self, other: FieldTag) -> Result<FieldTag> {
        if self == other {
            Ok(self)
        } else {
            Err(IneqError::FieldMismatch)
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Real => f.write_str("real"),
            FieldTag::Complex => f.write_str("complex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    field: FieldTag,
    coords: Vec<Scalar>,
}

impl Vector {
    /// Builds a vector, validating finiteness and (for real fields) that all
    /// imaginary parts vanish.
    pub fn new(field: FieldTag, coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(IneqError::EmptyVector);
        }
        for (index, c) in coords.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(IneqError::NonFinite { index });
            }
            if field == FieldTag::Real && c.im != 0.0 {
                return Err(IneqError::ImaginaryInReal { index });
            }
        }
        Ok(Self { field, coords })
    }

    pub fn real(coords: &[f64]) -> Result<Self> {
        Self::new(
            FieldTag::Real,
            coords.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn complex(coords: Vec<Scalar>) -> Result<Self> {
        Self::new(FieldTag::Complex, coords)
    }

    pub fn zeros(field: FieldTag, dim: usize) -> Self {
        Self {
            field,
            coords: vec![Complex64::new(0.0, 0.0); dim.max(1)],
        }
    }

    /// The `i`-th standard basis vector.
    pub fn basis(field: FieldTag, dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, dim);
        v.coords[i] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    /// Reinterprets a real vector as an element of the complexification.
    pub fn into_field(mut self, field: FieldTag) -> Result<Self> {
        if field == FieldTag::Real {
            if let Some(index) = self.coords.iter().position(|c| c.im != 0.0) {
                return Err(IneqError::ImaginaryInReal { index });
            }
        }
        self.field = field;
        Ok(self)
    }

    fn check_compatible(&self, other: &Vector) -> Result<FieldTag> {
        if self.dim() != other.dim() {
            return Err(IneqError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        self.field.join(other.field)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        let field = self.check_compatible(other)?;
        Ok(Vector {
            field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        let field = self.check_compatible(other)?;
        Ok(Vector {
            field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: Scalar) -> Vector {
        Vector {
            field: self.field.promote(s),
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: Scalar, other: &Vector) -> Result<Vector> {
        self.add(&other.scale(s))
    }
}

/// `⟨x, y⟩ = Σ x_i · conj(y_i)`, linear in the first argument.
pub fn inner(x: &Vector, y: &Vector) -> Result<Scalar> {
    x.check_compatible(y)?;
    Ok(inner_unchecked(x.coords(), y.coords()))
}

pub(crate) fn inner_unchecked(x: &[Scalar], y: &[Scalar]) -> Scalar {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm_sq(x: &Vector) -> f64 {
    x.coords.iter().map(|c| c.norm_sqr()).sum()
}

pub fn norm(x: &Vector) -> f64 {
    norm_sq(x).sqrt()
}

/// `‖x‖²‖y‖² − |⟨x,y⟩|²` through Lagrange's identity
/// `Σ_{i<j} |x_i y_j − x_j y_i|²`, which is nonnegative by construction and
/// free of the cancellation in the direct difference.
pub fn gram_defect(x: &Vector, y: &Vector) -> Result<f64> {
    x.check_compatible(y)?;
    Ok(gram_defect_weighted(x.coords(), y.coords(), None))
}

/// Weighted Lagrange identity:
/// `Σ_{i<j} w_i w_j |x_i y_j − x_j y_i|²`, equal to
/// `(Σ w|x|²)(Σ w|y|²) − |Σ w x conj(y)|²`.
pub(crate) fn gram_defect_weighted(x: &[Scalar], y: &[Scalar], weights: Option<&[f64]>) -> f64 {
    let n = x.len();
    let mut acc = 0.0;
    for i in 0..n {
        let wi = weights.map_or(1.0, |w| w[i]);
        let mut row = 0.0;
        for j in (i + 1)..n {
            let wj = weights.map_or(1.0, |w| w[j]);
            row += wj * (x[i] * y[j] - x[j] * y[i]).norm_sqr();
        }
        acc += wi * row;
    }
    acc
}

/// Defects of the Schwarz inequality between two vectors, evaluated in a
/// cancellation-free way.
///
/// For a unimodular `u`, `‖x‖‖y‖ − Re(u⟨x,y⟩)` is rewritten as
/// `(D + Im(u⟨x,y⟩)²) / (‖x‖‖y‖ + Re(u⟨x,y⟩))` when the real part is
/// positive, where `D` is the Lagrange defect.
#[derive(Debug, Clone, Copy)]
pub struct SchwarzDefect {
    /// `‖x‖‖y‖`
    pub norm_product: f64,
    pub inner: Scalar,
    /// `‖x‖²‖y‖² − |⟨x,y⟩|²`
    pub lagrange: f64,
}

impl SchwarzDefect {
    pub fn new(x: &Vector, y: &Vector) -> Result<Self> {
        let inner = inner(x, y)?;
        let lagrange = gram_defect(x, y)?;
        Ok(Self {
            norm_product: norm(x) * norm(y),
            inner,
            lagrange,
        })
    }

    pub(crate) fn from_parts(norm_product: f64, inner: Scalar, lagrange: f64) -> Self {
        Self {
            norm_product,
            inner,
            lagrange,
        }
    }

    /// `‖x‖‖y‖ − |⟨x,y⟩|`
    pub fn abs_gap(&self) -> f64 {
        let den = self.norm_product + self.inner.norm();
        if den > 0.0 {
            self.lagrange / den
        } else {
            0.0
        }
    }

    /// `‖x‖‖y‖ − |Re(u⟨x,y⟩)|`
    pub fn abs_real_gap(&self, u: Scalar) -> f64 {
        let z = u * self.inner;
        let den = self.norm_product + z.re.abs();
        if den > 0.0 {
            (self.lagrange + z.im * z.im) / den
        } else {
            0.0
        }
    }

    /// `‖x‖‖y‖ − Re(u⟨x,y⟩)`
    pub fn real_gap(&self, u: Scalar) -> f64 {
        let z = u * self.inner;
        if z.re > 0.0 {
            (self.lagrange + z.im * z.im) / (self.norm_product + z.re)
        } else {
            self.norm_product - z.re
        }
    }

    /// `‖x‖²‖y‖² − (Re(u⟨x,y⟩))²`
    pub fn real_sq_gap(&self, u: Scalar) -> f64 {
        let z = u * self.inner;
        self.lagrange + z.im * z.im
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFamily {
    members: Vec<Vector>,
    tol: f64,
}

impl OrthonormalFamily {
    /// Validates `members` as an orthonormal family at tolerance `tol`.
    pub fn new(members: Vec<Vector>, tol: f64) -> Result<Self> {
        if members.is_empty() {
            return Err(IneqError::InvalidParameter(
                "orthonormal family must have at least one member".into(),
            ));
        }
        let dim = members[0].dim();
        let field = members[0].field();
        for m in &members {
            if m.dim() != dim {
                return Err(IneqError::DimensionMismatch {
                    left: dim,
                    right: m.dim(),
                });
            }
            field.join(m.field())?;
        }
        if members.len() > dim {
            return Err(IneqError::InvalidParameter(format!(
                "{} members cannot be orthonormal in dimension {dim}",
                members.len()
            )));
        }
        for (i, ei) in members.iter().enumerate() {
            let n = norm(ei);
            if (n - 1.0).abs() > tol {
                return Err(IneqError::NotOrthonormal {
                    tol,
                    detail: format!("member {i} has norm {n}"),
                });
            }
            for (j, ej) in members.iter().enumerate().skip(i + 1) {
                let ip = inner_unchecked(ei.coords(), ej.coords()).norm();
                if ip > tol {
                    return Err(IneqError::NotOrthonormal {
                        tol,
                        detail: format!("|<e{i}, e{j}>| = {ip:e}"),
                    });
                }
            }
        }
        Ok(Self { members, tol })
    }

    /// The first `k` standard basis vectors of `K^dim`.
    pub fn standard(field: FieldTag, dim: usize, k: usize) -> Result<Self> {
        if k == 0 || k > dim {
            return Err(IneqError::InvalidParameter(format!(
                "standard family needs 1 <= k <= dim, got k={k}, dim={dim}"
            )));
        }
        Ok(Self {
            members: (0..k).map(|i| Vector::basis(field, dim, i)).collect(),
            tol: 0.0,
        })
    }

    pub fn members(&self) -> &[Vector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn field(&self) -> FieldTag {
        self.members[0].field()
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Sub-family made of the first `k` members.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.len() {
            return Err(IneqError::InvalidParameter(format!(
                "cannot truncate a family of {} members to {k}",
                self.len()
            )));
        }
        Ok(Self {
            members: self.members[..k].to_vec(),
            tol: self.tol,
        })
    }

    fn check_vector(&self, x: &Vector) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(IneqError::DimensionMismatch {
                left: x.dim(),
                right: self.dim(),
            });
        }
        x.field().join(self.field()).map(|_| ())
    }
}

/// Orthonormalizes `vs` with classical Gram–Schmidt plus one
/// re-orthogonalization pass.
pub fn gram_schmidt(vs: &[Vector], tol: f64) -> Result<OrthonormalFamily> {
    let mut out: Vec<Vector> = Vec::with_capacity(vs.len());
    for (index, v) in vs.iter().enumerate() {
        if let Some(first) = out.first() {
            first.check_compatible(v)?;
        }
        let scale = norm(v);
        let mut w = v.clone();
        for _pass in 0..2 {
            let projections: Vec<Scalar> = out
                .iter()
                .map(|e| inner_unchecked(w.coords(), e.coords()))
                .collect();
            for (e, p) in out.iter().zip(projections) {
                for (wc, ec) in w.coords.iter_mut().zip(e.coords()) {
                    *wc -= p * ec;
                }
            }
        }
        let residual = norm(&w);
        if scale == 0.0 || residual <= tol * scale {
            return Err(IneqError::RankDeficient { index, residual });
        }
        let inv = 1.0 / residual;
        for c in w.coords.iter_mut() {
            *c *= inv;
        }
        out.push(w);
    }
    OrthonormalFamily::new(out, tol.max(ORTHONORMAL_TOL))
}

/// Finite truncation of an ℓ² sequence with a cached squared norm.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    entries: Vec<Scalar>,
    sq_norm: f64,
}

impl CoefficientSequence {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if let Some(index) = entries
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(IneqError::NonFinite { index });
        }
        let sq_norm = entries.iter().map(|c| c.norm_sqr()).sum();
        Ok(Self { entries, sq_norm })
    }

    pub fn real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ |entries_i|²`
    pub fn sq_norm(&self) -> f64 {
        self.sq_norm
    }

    pub fn norm(&self) -> f64 {
        self.sq_norm.sqrt()
    }

    fn zip_with(
        &self,
        other: &CoefficientSequence,
        f: impl Fn(Scalar, Scalar) -> Scalar,
    ) -> Result<CoefficientSequence> {
        if self.len() != other.len() {
            return Err(IneqError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        CoefficientSequence::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    /// Entry-wise midpoint `(a_i + b_i) / 2`.
    pub fn midpoint(&self, other: &CoefficientSequence) -> Result<CoefficientSequence> {
        self.zip_with(other, |a, b| (a + b) * 0.5)
    }

    pub fn sum(&self, other: &CoefficientSequence) -> Result<CoefficientSequence> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn difference(&self, other: &CoefficientSequence) -> Result<CoefficientSequence> {
        self.zip_with(other, |a, b| a - b)
    }
}

/// `(⟨x, e_i⟩)_i`
pub fn fourier_coefficients(x: &Vector, fam: &OrthonormalFamily) -> Result<CoefficientSequence> {
    fam.check_vector(x)?;
    CoefficientSequence::new(
        fam.members()
            .iter()
            .map(|e| inner_unchecked(x.coords(), e.coords()))
            .collect(),
    )
}

/// `Σ λ_i e_i`
pub fn synthesize(coeffs: &CoefficientSequence, fam: &OrthonormalFamily) -> Result<Vector> {
    if coeffs.len() != fam.len() {
        return Err(IneqError::LengthMismatch {
            left: coeffs.len(),
            right: fam.len(),
        });
    }
    let field = coeffs
        .entries()
        .iter()
        .fold(fam.field(), |f, &c| f.promote(c));
    if field != fam.field() {
        return Err(IneqError::FieldMismatch);
    }
    let mut out = Vector::zeros(field, fam.dim());
    for (e, &c) in fam.members().iter().zip(coeffs.entries()) {
        for (o, ec) in out.coords.iter_mut().zip(e.coords()) {
            *o += c * ec;
        }
    }
    Ok(out)
}

/// `x − Σ⟨x,e_i⟩e_i`, the component of `x` orthogonal to the family span.
pub fn projection_residual(x: &Vector, fam: &OrthonormalFamily) -> Result<Vector> {
    let coeffs = fourier_coefficients(x, fam)?;
    x.sub(&synthesize(&coeffs, fam)?)
}

/// Checks that `lo`/`hi` style scalars belong to `field`.
pub(crate) fn check_scalar_field(field: FieldTag, s: Scalar, what: &str) -> Result<()> {
    if field == FieldTag::Real && s.im != 0.0 {
        return Err(IneqError::InvalidParameter(format!(
            "{what} must be real in a real space, got {s}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Scalar {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_examples() {
        let e1 = Vector::real(&[1.0, 0.0]).unwrap();
        let e2 = Vector::real(&[0.0, 1.0]).unwrap();
        assert_eq!(inner(&e1, &e2).unwrap(), c(0.0, 0.0));

        // direct summation: 2*1 + 1*1
        let x = Vector::real(&[2.0, 1.0]).unwrap();
        let y = Vector::real(&[1.0, 1.0]).unwrap();
        assert_eq!(inner(&x, &y).unwrap(), c(3.0, 0.0));

        let zi = Vector::complex(vec![c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let one = Vector::complex(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(inner(&zi, &one).unwrap(), c(0.0, 1.0));
        assert_eq!(inner(&one, &zi).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn inner_rejects_mismatches() {
        let x = Vector::real(&[1.0, 0.0]).unwrap();
        let y = Vector::real(&[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            inner(&x, &y),
            Err(IneqError::DimensionMismatch { left: 2, right: 3 })
        ));
        let z = Vector::complex(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(inner(&x, &z), Err(IneqError::FieldMismatch)));
    }

    #[test]
    fn vector_validation() {
        assert!(matches!(Vector::real(&[]), Err(IneqError::EmptyVector)));
        assert!(matches!(
            Vector::real(&[1.0, f64::NAN]),
            Err(IneqError::NonFinite { index: 1 })
        ));
        assert!(matches!(
            Vector::new(FieldTag::Real, vec![c(1.0, 0.5)]),
            Err(IneqError::ImaginaryInReal { index: 0 })
        ));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&Vector::real(&[0.0, 0.0]).unwrap()), 0.0);
        assert_abs_diff_eq!(
            norm(&Vector::real(&[1.0, 1.0]).unwrap()),
            std::f64::consts::SQRT_2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            norm(&Vector::real(&[2.0, 1.0]).unwrap()),
            5f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn gram_schmidt_examples() {
        let fam = gram_schmidt(
            &[
                Vector::real(&[1.0, 0.0, 0.0]).unwrap(),
                Vector::real(&[0.0, 1.0, 0.0]).unwrap(),
            ],
            1e-10,
        )
        .unwrap();
        assert_eq!(fam.members()[0], Vector::real(&[1.0, 0.0, 0.0]).unwrap());
        assert_eq!(fam.members()[1], Vector::real(&[0.0, 1.0, 0.0]).unwrap());

        let fam = gram_schmidt(
            &[
                Vector::real(&[1.0, 1.0, 0.0]).unwrap(),
                Vector::real(&[1.0, 0.0, 0.0]).unwrap(),
            ],
            1e-10,
        )
        .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [[h, h, 0.0], [h, -h, 0.0]];
        for (m, exp) in fam.members().iter().zip(expected) {
            for (got, want) in m.coords().iter().zip(exp) {
                assert_abs_diff_eq!(got.re, want, epsilon = 1e-15);
                assert_eq!(got.im, 0.0);
            }
        }

        let err = gram_schmidt(
            &[
                Vector::real(&[1.0, 0.0]).unwrap(),
                Vector::real(&[2.0, 0.0]).unwrap(),
            ],
            1e-10,
        )
        .unwrap_err();
        assert!(matches!(err, IneqError::RankDeficient { index: 1, .. }));
    }

    #[test]
    fn family_rejects_non_orthonormal() {
        let err = OrthonormalFamily::new(
            vec![
                Vector::real(&[1.0, 0.0]).unwrap(),
                Vector::real(&[1.0, 1e-6]).unwrap(),
            ],
            1e-10,
        )
        .unwrap_err();
        assert!(matches!(err, IneqError::NotOrthonormal { .. }));
    }

    #[test]
    fn fourier_and_synthesis_examples() {
        let fam = OrthonormalFamily::standard(FieldTag::Real, 3, 2).unwrap();
        let x = Vector::real(&[1.0, 1.0, 0.5]).unwrap();
        let coeffs = fourier_coefficients(&x, &fam).unwrap();
        assert_eq!(coeffs.entries(), &[c(1.0, 0.0), c(1.0, 0.0)]);

        let perp = Vector::real(&[0.0, 0.0, 3.0]).unwrap();
        let coeffs = fourier_coefficients(&perp, &fam).unwrap();
        assert!(coeffs.entries().iter().all(|v| v.norm() == 0.0));

        let e1 = fam.members()[0].clone();
        let coeffs = fourier_coefficients(&e1, &fam).unwrap();
        assert_eq!(coeffs.entries(), &[c(1.0, 0.0), c(0.0, 0.0)]);

        let lam = CoefficientSequence::real(&[1.0, 1.0]).unwrap();
        assert_eq!(
            synthesize(&lam, &fam).unwrap(),
            Vector::real(&[1.0, 1.0, 0.0]).unwrap()
        );
        let zero = CoefficientSequence::real(&[0.0, 0.0]).unwrap();
        assert_eq!(
            synthesize(&zero, &fam).unwrap(),
            Vector::real(&[0.0, 0.0, 0.0]).unwrap()
        );
        // Pythagoras: 3² + 4² = 5²
        let lam = CoefficientSequence::real(&[3.0, 4.0]).unwrap();
        assert_abs_diff_eq!(norm(&synthesize(&lam, &fam).unwrap()), 5.0, epsilon = 1e-15);

        let short = CoefficientSequence::real(&[1.0]).unwrap();
        assert!(matches!(
            synthesize(&short, &fam),
            Err(IneqError::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn lagrange_defect_matches_direct_difference() {
        let x = Vector::complex(vec![c(1.0, 2.0), c(-0.5, 0.25), c(0.0, 1.0)]).unwrap();
        let y = Vector::complex(vec![c(0.3, -1.0), c(2.0, 0.0), c(1.0, 1.0)]).unwrap();
        let direct = norm_sq(&x) * norm_sq(&y) - inner(&x, &y).unwrap().norm_sqr();
        assert_abs_diff_eq!(gram_defect(&x, &y).unwrap(), direct, epsilon = 1e-12);
    }

    #[test]
    fn schwarz_defect_forms_agree_with_naive() {
        let x = Vector::complex(vec![c(1.0, 2.0), c(-0.5, 0.25)]).unwrap();
        let y = Vector::complex(vec![c(0.3, -1.0), c(2.0, 0.0)]).unwrap();
        let d = SchwarzDefect::new(&x, &y).unwrap();
        let n = norm(&x) * norm(&y);
        let ip = inner(&x, &y).unwrap();
        let u = c(0.6, 0.8);
        assert_abs_diff_eq!(d.abs_gap(), n - ip.norm(), epsilon = 1e-13);
        assert_abs_diff_eq!(d.abs_real_gap(u), n - (u * ip).re.abs(), epsilon = 1e-13);
        assert_abs_diff_eq!(d.real_gap(u), n - (u * ip).re, epsilon = 1e-13);
        assert_abs_diff_eq!(d.real_gap(-u), n + (u * ip).re, epsilon = 1e-13);
    }
}
