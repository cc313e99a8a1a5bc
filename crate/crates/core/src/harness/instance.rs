use serde::{Deserialize, Serialize};

use crate::conditions::ScalarPair;
use crate::error::{IneqError, Result};
use crate::integral::{DomainSpec, FunctionSpec};
use crate::space::{
    CoefficientSequence, FieldTag, OrthonormalFamily, Scalar, Vector, ORTHONORMAL_TOL,
};

use super::theorem::TheoremId;

/// A list of scalars on the wire: bare numbers or `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScalarList(#[serde(with = "super::wire::scalar_vec")] pub Vec<Scalar>);

impl From<Vec<Scalar>> for ScalarList {
    fn from(v: Vec<Scalar>) -> Self {
        Self(v)
    }
}

/// One concrete instance of a theorem. Only the parameters the theorem uses
/// are present; see [`super::Shape`] for the layout per theorem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub theorem: TheoremId,
    pub field: FieldTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<ScalarPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_x: Option<ScalarPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_y: Option<ScalarPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub big_m: Option<f64>,
    /// Members of an orthonormal family, one coordinate list each.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<ScalarList>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lam: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gammas: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub big_gammas: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phis: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub big_phis: Option<ScalarList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<FunctionSpec>,
}

fn missing(name: &str) -> IneqError {
    IneqError::Malformed(format!("missing parameter `{name}`"))
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| missing(name))
}

impl InstanceSpec {
    pub fn new(theorem: TheoremId, field: FieldTag) -> Self {
        Self {
            theorem,
            field,
            dim: None,
            seed: None,
            x: None,
            y: None,
            a: None,
            e: None,
            r: None,
            r1: None,
            r2: None,
            pair: None,
            pair_x: None,
            pair_y: None,
            m: None,
            big_m: None,
            family: None,
            lam: None,
            mu: None,
            gammas: None,
            big_gammas: None,
            phis: None,
            big_phis: None,
            domain: None,
            f: None,
            g: None,
            h: None,
        }
    }

    pub(crate) fn vector(&self, v: &Option<ScalarList>, name: &str) -> Result<Vector> {
        let list = v.as_ref().ok_or_else(|| missing(name))?;
        Vector::new(self.field, list.0.clone())
            .map_err(|err| IneqError::Malformed(format!("`{name}`: {err}")))
    }

    pub(crate) fn sequence(
        &self,
        v: &Option<ScalarList>,
        name: &str,
    ) -> Result<CoefficientSequence> {
        let list = v.as_ref().ok_or_else(|| missing(name))?;
        CoefficientSequence::new(list.0.clone())
            .map_err(|err| IneqError::Malformed(format!("`{name}`: {err}")))
    }

    pub(crate) fn real(&self, v: Option<f64>, name: &str) -> Result<f64> {
        v.ok_or_else(|| missing(name))
    }

    pub(crate) fn scalar_pair(&self, v: &Option<ScalarPair>, name: &str) -> Result<ScalarPair> {
        need(v, name)
    }

    pub(crate) fn orthonormal_family(&self) -> Result<OrthonormalFamily> {
        let field = self.field;
        let members = self
            .family
            .as_ref()
            .ok_or_else(|| missing("family"))?
            .iter()
            .map(|m| Vector::new(field, m.0.clone()))
            .collect::<Result<Vec<_>>>()?;
        OrthonormalFamily::new(members, ORTHONORMAL_TOL)
    }

    pub(crate) fn function(&self, v: &Option<FunctionSpec>, name: &str) -> Result<FunctionSpec> {
        need(v, name)
    }

    /// Declared dimension, else the length of `x`.
    pub fn ambient_dim(&self) -> Option<usize> {
        self.dim.or_else(|| self.x.as_ref().map(|x| x.0.len()))
    }
}

/// Top-level instance document: `{"instances": [...]}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub instances: Vec<InstanceSpec>,
}
