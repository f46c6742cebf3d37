//! JSON input formats. Scalars are strings in the field's expression syntax;
//! elements are objects from basis names to coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use skewfield_core::algebra::{AlgElement, StructureTensor};
use skewfield_core::field::{EvalPoint, FieldSpec, Scalar};
use skewfield_core::lie::LiePresentation;

use crate::error::InputError;

/// Sparse element: basis name to coefficient; absent names are zero.
pub type ElementJson = BTreeMap<String, String>;

/// An associative algebra given by its multiplication table
/// `b_i b_j = Σ c b_k` over `F_p(base_vars)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub p: u32,
    #[serde(default)]
    pub base_vars: Vec<String>,
    pub dim: usize,
    pub unit: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub table: Vec<(usize, usize, usize, String)>,
}

/// A Lie algebra by its bracket table `[b_i, b_j] = Σ c b_k`, with an
/// optional p-map on the basis and an optional embedding into an ambient
/// algebra (one ambient element per basis vector).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub p: u32,
    #[serde(default)]
    pub base_vars: Vec<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub bracket: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Vec<ElementJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<ElementJson>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    /// Specialize the span of the generators.
    Subspace,
    /// Specialize the subfield the generators generate.
    Subfield,
}

/// Elements of `D(X)` for an algebra `D`, with `X` given by `ext_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsFile {
    pub ext_vars: Vec<String>,
    pub kind: GeneratorKind,
    pub generators: Vec<ElementJson>,
    /// Extra points, each a map from extension variable to a value in `Z`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<BTreeMap<String, String>>,
}

fn field_spec(p: u32, base_vars: &[String], ext_vars: &[String]) -> Result<FieldSpec, InputError> {
    FieldSpec::new(p, base_vars, ext_vars).map_err(InputError::core("field declaration"))
}

fn table(spec: &FieldSpec, rows: &[(usize, usize, usize, String)]) -> Result<Vec<(usize, usize, usize, Scalar)>, InputError> {
    rows.iter()
        .map(|(i, j, k, c)| {
            let c = spec.parse(c).map_err(InputError::core(format!("coefficient of entry ({i}, {j}, {k})")))?;
            Ok((*i, *j, *k, c))
        })
        .collect()
}

/// Dense coordinates of a sparse element against `names`.
pub fn parse_element(spec: &FieldSpec, names: &[String], e: &ElementJson) -> Result<Vec<Scalar>, InputError> {
    let p = spec.characteristic();
    let mut coords = vec![Scalar::zero(p); names.len()];
    for (name, c) in e {
        let i = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| InputError::Invalid(format!("unknown basis element {name:?}")))?;
        coords[i] = spec.parse(c).map_err(InputError::core(format!("coefficient of {name}")))?;
    }
    Ok(coords)
}

/// Sparse form of dense coordinates.
pub fn element_json(spec: &FieldSpec, names: &[String], coords: &[Scalar]) -> ElementJson {
    names
        .iter()
        .zip(coords)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n.clone(), spec.format(c)))
        .collect()
}

fn table_json(spec: &FieldSpec, entries: &[(usize, usize, usize, Scalar)]) -> Vec<(usize, usize, usize, String)> {
    entries.iter().map(|(i, j, k, c)| (*i, *j, *k, spec.format(c))).collect()
}

impl AlgebraFile {
    pub fn from_tensor(a: &StructureTensor) -> Self {
        let spec = a.spec();
        AlgebraFile {
            p: spec.characteristic(),
            base_vars: spec.base_vars().to_vec(),
            dim: a.dim(),
            unit: a.unit_index(),
            basis_names: Some(a.basis_names().to_vec()),
            table: table_json(spec, a.entries()),
        }
    }

    pub fn load(&self) -> Result<StructureTensor, InputError> {
        let spec = field_spec(self.p, &self.base_vars, &[])?;
        let entries = table(&spec, &self.table)?;
        let a = StructureTensor::new(spec, self.dim, self.unit, entries).map_err(InputError::core("algebra"))?;
        match &self.basis_names {
            Some(names) => a.with_basis_names(names.clone()).map_err(InputError::core("basis names")),
            None => Ok(a),
        }
    }
}

impl LieFile {
    pub fn from_presentation(g: &LiePresentation, embedding: Option<(&LiePresentation, &[Vec<Scalar>])>) -> Self {
        let spec = g.spec();
        let names = g.basis_names();
        LieFile {
            p: spec.characteristic(),
            base_vars: spec.base_vars().to_vec(),
            dim: g.dim(),
            basis_names: Some(names.to_vec()),
            bracket: table_json(spec, g.entries()),
            pmap: g.pmap().map(|m| m.iter().map(|v| element_json(spec, names, v)).collect()),
            embedding: embedding
                .map(|(amb, vs)| vs.iter().map(|v| element_json(amb.spec(), amb.basis_names(), v)).collect()),
        }
    }

    /// The presentation, with the Jacobi identity left unchecked.
    pub fn load_table(&self) -> Result<LiePresentation, InputError> {
        let spec = field_spec(self.p, &self.base_vars, &[])?;
        let entries = table(&spec, &self.bracket)?;
        let g = LiePresentation::from_table(spec, self.dim, entries).map_err(InputError::core("bracket table"))?;
        let g = match &self.basis_names {
            Some(names) => g.with_basis_names(names.clone()).map_err(InputError::core("basis names"))?,
            None => g,
        };
        match &self.pmap {
            None => Ok(g),
            Some(images) => {
                if images.len() != self.dim {
                    return Err(InputError::Invalid(format!("pmap has {} images for dimension {}", images.len(), self.dim)));
                }
                let images = images
                    .iter()
                    .map(|e| parse_element(g.spec(), g.basis_names(), e))
                    .collect::<Result<Vec<_>, _>>()?;
                g.with_pmap(images).map_err(InputError::core("pmap"))
            }
        }
    }

    /// The presentation, rejecting tables that violate the Jacobi identity.
    pub fn load(&self) -> Result<LiePresentation, InputError> {
        let g = self.load_table()?;
        if let Some((i, j, k)) = g.jacobi_check().witness {
            return Err(InputError::Invalid(format!("Jacobi identity fails at basis triple ({i}, {j}, {k})")));
        }
        Ok(g)
    }

    /// Embedding vectors in `ambient`, or the identity when none is given.
    pub fn embedding_in(&self, ambient: &LiePresentation) -> Result<Vec<Vec<Scalar>>, InputError> {
        match &self.embedding {
            Some(images) => {
                if images.len() != self.dim {
                    return Err(InputError::Invalid(format!(
                        "embedding has {} images for dimension {}",
                        images.len(),
                        self.dim
                    )));
                }
                images.iter().map(|e| parse_element(ambient.spec(), ambient.basis_names(), e)).collect()
            }
            None if ambient.dim() == self.dim => Ok((0..self.dim).map(|i| ambient.basis(i)).collect()),
            None => Err(InputError::Invalid("no embedding given and dimensions differ from the ambient".into())),
        }
    }
}

impl GeneratorsFile {
    /// The generators as elements of `D(X)` with `X` from `ext_vars`.
    pub fn elements(&self, spec: &FieldSpec, a: &StructureTensor) -> Result<Vec<AlgElement>, InputError> {
        self.generators
            .iter()
            .map(|g| Ok(AlgElement::from_coords(parse_element(spec, a.basis_names(), g)?)))
            .collect()
    }
}

/// A point from `name -> value` pairs; every extension variable must be set.
pub fn parse_point(spec: &FieldSpec, values: &BTreeMap<String, String>) -> Result<EvalPoint, InputError> {
    let base = spec.base();
    let mut out = Vec::new();
    for v in spec.ext_vars() {
        let src = values.get(v).ok_or_else(|| InputError::Invalid(format!("point does not set {v}")))?;
        out.push(base.parse(src).map_err(InputError::core(format!("value of {v}")))?);
    }
    if let Some(extra) = values.keys().find(|k| !spec.ext_vars().contains(k)) {
        return Err(InputError::Invalid(format!("{extra} is not an extension variable")));
    }
    EvalPoint::new(spec, out).map_err(InputError::core("point"))
}

/// Parses `u=0,w=s+1` style point assignments.
pub fn parse_point_arg(spec: &FieldSpec, src: &str) -> Result<EvalPoint, InputError> {
    let mut values = BTreeMap::new();
    for part in src.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| InputError::Invalid(format!("point assignment {part:?} lacks '='")))?;
        values.insert(k.trim().to_string(), v.trim().to_string());
    }
    parse_point(spec, &values)
}

pub fn point_json(spec: &FieldSpec, point: &EvalPoint) -> BTreeMap<String, String> {
    spec.ext_vars().iter().zip(point.values()).map(|(v, c)| (v.clone(), spec.format(c))).collect()
}

/// A torus generator: a basis name or a JSON element object.
pub fn parse_element_arg(a: &StructureTensor, src: &str) -> Result<AlgElement, InputError> {
    let src = src.trim();
    let e: ElementJson = if src.starts_with('{') {
        serde_json::from_str(src).map_err(|e| InputError::Invalid(format!("element {src:?}: {e}")))?
    } else {
        BTreeMap::from([(src.to_string(), "1".to_string())])
    };
    Ok(AlgElement::from_coords(parse_element(a.spec(), a.basis_names(), &e)?))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io(path.display().to_string(), e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| InputError::Invalid(format!("{}: {e}", path.display())))
}
