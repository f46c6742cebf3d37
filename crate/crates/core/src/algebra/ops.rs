//! Inverses, centralizers, minimal polynomials and generated subalgebras.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{AlgElement, AlgSubspace, StructureTensor};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{solve, Echelon, Matrix, Subspace};

/// A univariate polynomial `Σ c_i T^i` with scalar coefficients, lowest
/// degree first and no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.coeffs.get(i)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    /// Text form in the variable `var`, highest degree first, e.g. `T^3 + 2*T + 2*s`.
    pub fn format(&self, spec: &FieldSpec, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.into(),
                _ => format!("{var}^{i}"),
            };
            let cs = spec.format(c);
            let part = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if cs.contains(' ') || cs.contains('/') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(part);
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ")
    }
}

impl StructureTensor {
    /// Two-sided inverse, or [`Error::NotInvertible`] when left
    /// multiplication by `a` is singular.
    pub fn alg_inverse(&self, a: &AlgElement) -> Result<AlgElement> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: a.dim() });
        }
        let f = self.f();
        let lm = self.left_mul_matrix(a);
        let b = solve(&f, &lm, self.one().coords()).ok_or(Error::NotInvertible)?;
        let b = AlgElement::from_coords(b);
        if self.mul(&b, a) != self.one() {
            return Err(Error::NotInvertible);
        }
        Ok(b)
    }

    /// Elements commuting with every basis row of `s`.
    pub fn centralizer(&self, s: &AlgSubspace) -> AlgSubspace {
        let elems: Vec<AlgElement> = s.basis().iter().map(|r| self.from_row(r)).collect();
        self.centralizer_of(&elems)
    }

    pub fn centralizer_of(&self, elems: &[AlgElement]) -> AlgSubspace {
        let f = self.f();
        let n = self.dim();
        // [s_j, z] = 0 for all j: the null space of the stacked ad matrices.
        let mut constraints = Echelon::new(n);
        for s in elems {
            let ad = self.ad_matrix(s);
            for r in 0..n {
                constraints.insert(&f, ad.row(r).to_vec());
            }
            if constraints.dim() == n {
                break;
            }
        }
        Subspace::span(&f, n, constraints.kernel(&f))
    }

    pub fn centre(&self) -> AlgSubspace {
        let basis: Vec<AlgElement> = (0..self.dim()).map(|i| self.basis(i)).collect();
        self.centralizer_of(&basis)
    }

    /// Monic minimal polynomial of `a` over the coefficient field.
    pub fn min_poly(&self, a: &AlgElement) -> UniPoly {
        let f = self.f();
        let mut powers = vec![self.one()];
        let mut space = Echelon::new(self.dim());
        space.insert(&f, self.one().into_coords());
        loop {
            let next = self.mul(powers.last().expect("nonempty"), a);
            if space.contains(&f, next.coords()) {
                let cols: Vec<Vec<Scalar>> = powers.iter().map(|e| e.coords().to_vec()).collect();
                let m = Matrix::from_columns(&cols, self.dim());
                let c = solve(&f, &m, next.coords()).expect("power lies in the span");
                let mut coeffs: Vec<Scalar> = c.iter().map(|x| -x).collect();
                coeffs.push(Scalar::one(f.characteristic()));
                return UniPoly::new(coeffs);
            }
            space.insert(&f, next.coords().to_vec());
            powers.push(next);
        }
    }

    /// `P(a)` by Horner's rule.
    pub fn eval_poly(&self, poly: &UniPoly, a: &AlgElement) -> AlgElement {
        let mut acc = self.zero();
        for c in poly.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, a), &self.scalar(c));
        }
        acc
    }

    /// Smallest unital subalgebra containing the pairwise commuting `gens`.
    pub fn generate_subfield(&self, gens: &[AlgElement]) -> Result<GeneratedSubalgebra> {
        for g in gens {
            if g.dim() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), found: g.dim() });
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !self.commute(&gens[i], &gens[j]) {
                    return Err(Error::NotCommutative(i, j));
                }
            }
        }
        let f = self.f();
        let mut space = Echelon::new(self.dim());
        let mut spanning = vec![self.one()];
        space.insert(&f, self.one().into_coords());
        let mut next = 0;
        while next < spanning.len() {
            let e = spanning[next].clone();
            next += 1;
            for g in gens {
                let prod = self.mul(&e, g);
                if space.insert(&f, prod.coords().to_vec()) {
                    spanning.push(prod);
                }
            }
        }
        let is_field = spanning.iter().all(|e| self.alg_inverse(e).is_ok());
        Ok(GeneratedSubalgebra { space, spanning, is_field })
    }
}

/// The subalgebra `Z[gens]` found by closing `{1}` under multiplication
/// by the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedSubalgebra {
    /// Echelon basis of the subalgebra.
    pub space: AlgSubspace,
    /// Monomials in the generators spanning the subalgebra, starting with 1.
    pub spanning: Vec<AlgElement>,
    /// Commutative with every spanning monomial invertible.
    pub is_field: bool,
}

impl GeneratedSubalgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}
