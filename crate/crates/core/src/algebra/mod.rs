//! Finite-dimensional associative algebras given by structure constants.
//!
//! A [`StructureTensor`] stores `b_i b_j = Σ_k c_ij^k b_k` over the field
//! declared by its [`FieldSpec`]. The constants always lie in the base
//! field `Z`; adding extension variables to the declaration (see
//! [`StructureTensor::with_field`]) gives `D(X) = D ⊗_Z Z(X)` on the same
//! table.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, FunctionField, Scalar};
use crate::linalg::{Matrix, Subspace};

mod constructors;
mod ops;

pub use constructors::{matrix_algebra, polynomial_quotient, symbol_algebra, symbol_index};
pub use ops::{GeneratedSubalgebra, UniPoly};

/// Subspaces of an algebra, as echelon bases of coordinate rows.
pub type AlgSubspace = Subspace<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgElement {
    coords: Vec<Scalar>,
}

impl AlgElement {
    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        AlgElement { coords }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTensor {
    spec: FieldSpec,
    dim: usize,
    unit: usize,
    entries: Vec<(usize, usize, usize, Scalar)>,
    products: Vec<Vec<(usize, Scalar)>>,
    names: Vec<String>,
}

impl StructureTensor {
    /// Validates ranges, nonzero coefficients, the unit and associativity.
    pub fn new(
        spec: FieldSpec,
        dim: usize,
        unit: usize,
        entries: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let t = Self::build(spec, dim, unit, entries)?;
        t.check_unit()?;
        if let Some((i, j, k)) = t.associativity_defect() {
            return Err(Error::NotAssociative(i, j, k));
        }
        Ok(t)
    }

    fn build(spec: FieldSpec, dim: usize, unit: usize, mut entries: Vec<(usize, usize, usize, Scalar)>) -> Result<Self> {
        if dim == 0 || unit >= dim {
            return Err(Error::InvalidParameters(format!("dimension {dim} with unit index {unit}")));
        }
        let p = spec.characteristic();
        entries.sort_by_key(|a| (a.0, a.1, a.2));
        let mut products = vec![Vec::new(); dim * dim];
        for (n, (i, j, k, c)) in entries.iter().enumerate() {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidParameters(format!("table entry ({i}, {j}, {k}) out of range")));
            }
            if c.is_zero() {
                return Err(Error::InvalidParameters(format!("zero coefficient at ({i}, {j}, {k})")));
            }
            if c.characteristic() != p || !spec.in_base(c) {
                return Err(Error::InvalidParameters(format!("coefficient at ({i}, {j}, {k}) is not in the base field")));
            }
            if n > 0 && (entries[n - 1].0, entries[n - 1].1, entries[n - 1].2) == (*i, *j, *k) {
                return Err(Error::InvalidParameters(format!("duplicate table entry ({i}, {j}, {k})")));
            }
            products[i * dim + j].push((*k, c.clone()));
        }
        let names = (0..dim).map(|i| format!("b{i}")).collect();
        Ok(StructureTensor { spec, dim, unit, entries, products, names })
    }

    fn check_unit(&self) -> Result<()> {
        let one = Scalar::one(self.spec.characteristic());
        for i in 0..self.dim {
            let expect = [(i, one.clone())];
            if self.products[self.unit * self.dim + i] != expect || self.products[i * self.dim + self.unit] != expect {
                return Err(Error::InvalidParameters(format!("basis element {} is not a two-sided unit", self.unit)));
            }
        }
        Ok(())
    }

    /// First basis triple with `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let bij = self.basis_product(i, j);
                for k in 0..self.dim {
                    let left = self.mul(&bij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.basis_product(j, k));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// The same table over a larger coefficient field: `Z(X)` when `spec`
    /// adds extension variables to the same base variables.
    pub fn with_field(&self, spec: FieldSpec) -> Result<Self> {
        if spec.characteristic() != self.spec.characteristic() || spec.base_vars() != self.spec.base_vars() {
            return Err(Error::InvalidParameters("field extension must keep p and the base variables".into()));
        }
        let mut t = self.clone();
        t.spec = spec;
        Ok(t)
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn field(&self) -> FunctionField {
        self.spec.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn entries(&self) -> &[(usize, usize, usize, Scalar)] {
        &self.entries
    }

    fn p(&self) -> u32 {
        self.spec.characteristic()
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement { coords: vec![Scalar::zero(self.p()); self.dim] }
    }

    pub fn one(&self) -> AlgElement {
        self.basis(self.unit)
    }

    pub fn basis(&self, i: usize) -> AlgElement {
        let mut e = self.zero();
        e.coords[i] = Scalar::one(self.p());
        e
    }

    pub fn scalar(&self, c: &Scalar) -> AlgElement {
        let mut e = self.zero();
        e.coords[self.unit] = c.clone();
        e
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<AlgElement> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: coords.len() });
        }
        if let Some(c) = coords.iter().find(|c| c.characteristic() != self.p() || !self.spec.is_declared(c)) {
            return Err(Error::InvalidParameters(format!(
                "coordinate {} lies outside the declared field",
                self.spec.format(c)
            )));
        }
        Ok(AlgElement { coords })
    }

    fn basis_product(&self, i: usize, j: usize) -> AlgElement {
        let mut e = self.zero();
        for (k, c) in &self.products[i * self.dim + j] {
            e.coords[*k] = c.clone();
        }
        e
    }

    /// Product via the table, checking both operands belong to this algebra.
    pub fn alg_mul(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
        for x in [a, b] {
            if x.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        let mut out = self.zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in &self.products[i * self.dim + j] {
                    out.coords[*k] = &out.coords[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        AlgElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        AlgElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &AlgElement) -> AlgElement {
        AlgElement { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, c: &Scalar, a: &AlgElement) -> AlgElement {
        AlgElement { coords: a.coords.iter().map(|x| c * x).collect() }
    }

    pub fn pow(&self, a: &AlgElement, mut e: u64) -> AlgElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn commute(&self, a: &AlgElement, b: &AlgElement) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Matrix of `v ↦ a v`; column `j` holds `a b_j`.
    pub fn left_mul_matrix(&self, a: &AlgElement) -> Matrix<Scalar> {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j)).coords).collect();
        Matrix::from_columns(&cols, self.dim)
    }

    /// Matrix of `ad a: v ↦ a v - v a`.
    pub fn ad_matrix(&self, a: &AlgElement) -> Matrix<Scalar> {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.commutator(a, &self.basis(j)).coords).collect();
        Matrix::from_columns(&cols, self.dim)
    }

    /// Element represented by a row of a subspace basis.
    pub fn from_row(&self, row: &[Scalar]) -> AlgElement {
        AlgElement { coords: row.to_vec() }
    }

    pub fn span(&self, elements: &[AlgElement]) -> AlgSubspace {
        let f = self.field();
        Subspace::span(&f, self.dim, elements.iter().map(|e| e.coords.clone()))
    }

    pub fn contains(&self, space: &AlgSubspace, a: &AlgElement) -> bool {
        space.contains(&self.field(), &a.coords)
    }

    /// Human-readable form `c_1*b_1 + ...` using the basis names.
    pub fn format_element(&self, a: &AlgElement) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.names[i];
            let cs = self.spec.format(c);
            if i == self.unit {
                parts.push(if cs.contains(' ') { format!("({cs})") } else { cs });
            } else if c.is_one() {
                parts.push(name.clone());
            } else if cs.contains(' ') || cs.contains('/') {
                parts.push(format!("({cs})*{name}"));
            } else {
                parts.push(format!("{cs}*{name}"));
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ")
    }

    pub(crate) fn f(&self) -> FunctionField {
        self.field()
    }
}

/// True when every row of `space` lies in the span of the unit over the
/// coefficient field, i.e. the space consists of scalars.
pub fn is_scalar_space(t: &StructureTensor, space: &AlgSubspace) -> bool {
    let f = t.field();
    let unit = t.scalar(&f.one());
    space.basis().iter().all(|r| {
        let unit_space = t.span(core::slice::from_ref(&unit));
        unit_space.contains(&f, r)
    })
}

#[cfg(test)]
mod tests;
