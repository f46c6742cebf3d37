//! Specialization from `D(X)` to `D` along points `λ` of `X`.
//!
//! A [`RationalExtension`] pairs the tensor of `D` over `Z` with the same
//! tensor over `Z(X)`. Elements of `D[X]` are [`PolyAlgElement`]s: their
//! coordinates may have denominators in `Z` but not in the extension
//! variables, so `π_λ` never meets a pole.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgElement, AlgSubspace, StructureTensor, UniPoly};
use crate::error::{Error, Result};
use crate::field::poly::{content_in_vars_from, lcm, Poly};
use crate::field::spec::evaluate;
use crate::field::{EvalPoint, FieldSpec, Scalar};
use crate::linalg::{det, independent_subfamily, rref, Matrix};
use crate::torus::{galois_from_torus, is_toral, GaloisData, Torus};

/// An element of `D[X]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyAlgElement {
    coords: Vec<Scalar>,
}

impl PolyAlgElement {
    pub fn new(spec: &FieldSpec, coords: Vec<Scalar>) -> Result<Self> {
        let m = spec.num_base_vars();
        if let Some(c) = coords.iter().find(|c| !c.denominator().free_of_vars_from(m) || !spec.is_declared(c)) {
            return Err(Error::InvalidParameters(format!(
                "coordinate {} is not polynomial in the extension variables",
                spec.format(c)
            )));
        }
        Ok(PolyAlgElement { coords })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn to_element(&self) -> AlgElement {
        AlgElement::from_coords(self.coords.clone())
    }
}

/// `Z`-free part of a polynomial: divided by its content over `Z` and made monic.
fn ext_primitive_part(spec: &FieldSpec, f: &Poly) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    let content = content_in_vars_from(f, spec.num_base_vars());
    f.div_exact(&content).expect("content divides").monic()
}

/// A nonzero `f ∈ Z[X]` such that the claimed property holds wherever `λ(f) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecCertificate {
    pub poly: Scalar,
    /// Rows of the coefficient matrix (input elements) used by the minor.
    pub rows: Vec<usize>,
    /// Columns (basis indices) used by the minor.
    pub cols: Vec<usize>,
}

impl SpecCertificate {
    pub fn describe(&self, spec: &FieldSpec) -> String {
        format!("{} = minor on rows {:?}, columns {:?}", spec.format(&self.poly), self.rows, self.cols)
    }

    pub fn evaluate(&self, spec: &FieldSpec, point: &EvalPoint) -> Scalar {
        evaluate(spec, &self.poly, point).expect("certificates are polynomial")
    }

    /// True when `λ` lies in the open set `Ω_f`.
    pub fn holds_at(&self, spec: &FieldSpec, point: &EvalPoint) -> bool {
        !self.evaluate(spec, point).is_zero()
    }
}

/// `D` over `Z` together with `D(X)` over `Z(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalExtension {
    base: StructureTensor,
    ext: StructureTensor,
}

/// `K̄_λ` and its genericity certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedSubspace {
    /// The cleared basis of `V` in `D[X]`.
    pub cleared: Vec<PolyAlgElement>,
    pub space: AlgSubspace,
    pub preserved: bool,
    pub certificate: SpecCertificate,
    pub certificate_value: Scalar,
}

/// Clause 4: toral generators `t_i` specialize to `τ_i = λ(c)^{-1} π_λ(c t_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToralClause {
    pub rank: usize,
    pub c: Scalar,
    pub c_value: Scalar,
    pub taus: Vec<AlgElement>,
    /// `τ_i^p - τ_i` for each `τ_i`.
    pub witnesses: Vec<AlgElement>,
    pub all_toral: bool,
    /// `{1, τ_1, .., τ_r}` is independent over `Z`.
    pub independent: bool,
    /// `|Gal(Z(τ)/Z)|` from the conjugation construction, when the `τ_i` form a torus.
    pub group_order: Option<usize>,
    pub group: Option<String>,
}

/// Clause 3: purely inseparable of exponent `r` over `Z(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InseparableClause {
    pub exponent: u32,
    /// Exponent of `K̄_λ`, if every specialized basis vector has a central `p^k`-th power.
    pub specialized_exponent: Option<u32>,
    pub bound_holds: bool,
    /// Independence of `1, a, a^p, .., a^{p^{r-1}}` for a cleared generator `a`.
    pub certificate: SpecCertificate,
    pub certificate_value: Scalar,
    pub exponent_equal: bool,
}

/// Clause 2: `P_λ(T) = ∏ (T - λ(c)^{-1} π_λ(c α_i))` for the conjugates `α_i`
/// of a normal element `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisClause {
    pub primitive: AlgElement,
    pub c: Scalar,
    pub c_value: Scalar,
    /// `{π_λ(c α_i)}` is independent over `Z`.
    pub cleared_independent: bool,
    pub roots: Vec<AlgElement>,
    pub polynomial: Option<UniPoly>,
    pub distinct_roots: bool,
    pub central_coefficients: bool,
    /// The roots generate `K̄_λ`.
    pub splitting_field: bool,
}

impl GaloisClause {
    pub fn split_separable(&self) -> bool {
        self.distinct_roots && self.central_coefficients && self.splitting_field
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub dim: usize,
    pub specialized: SpecializedSubspace,
    pub multiplicatively_closed: bool,
    pub is_field: bool,
    /// `K̄_λ` equals its own centralizer in `D`.
    pub maximal: bool,
    pub toral: Option<ToralClause>,
    pub inseparable: Option<InseparableClause>,
    pub galois: Option<GaloisClause>,
}

/// `K ⊗_Z Z(X)` inside `D(X)` with its properties re-verified over `Z(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedField {
    pub generators: Vec<AlgElement>,
    pub space: AlgSubspace,
    pub dim: usize,
    pub maximal: bool,
    pub torus: Option<Torus>,
    pub galois_order: Option<usize>,
    pub inseparable_exponent: Option<u32>,
}

/// The least `r` with `a^{p^r}` a scalar, searched while `p^r <= bound`.
fn inseparable_exponent(t: &StructureTensor, a: &AlgElement, bound: usize) -> Option<u32> {
    let p = t.spec().characteristic() as u64;
    let unit = t.unit_index();
    let is_scalar = |e: &AlgElement| e.coords().iter().enumerate().all(|(i, c)| i == unit || c.is_zero());
    let mut power = a.clone();
    let mut r = 0u32;
    let mut q = 1usize;
    loop {
        if is_scalar(&power) {
            return Some(r);
        }
        q = q.saturating_mul(p as usize);
        if q > bound {
            return None;
        }
        power = t.pow(&power, p);
        r += 1;
    }
}

fn group_label(p: u32, rank: usize) -> String {
    match rank {
        0 => "trivial".into(),
        1 => format!("Z_{p}"),
        r => format!("Z_{p}^{r}"),
    }
}

/// `K` is a commutative field equal to its own centralizer.
fn is_maximal_field(t: &StructureTensor, space: &AlgSubspace) -> bool {
    let rows = space.basis();
    let commutative = rows
        .iter()
        .enumerate()
        .all(|(i, x)| rows[i + 1..].iter().all(|y| t.commute(&t.from_row(x), &t.from_row(y))));
    commutative && t.centralizer(space) == *space && rows.iter().all(|r| t.alg_inverse(&t.from_row(r)).is_ok())
}

impl RationalExtension {
    /// `D(X)` for `ext_vars = X`; the base tensor must not declare extension variables.
    pub fn new<S: AsRef<str>>(base: &StructureTensor, ext_vars: &[S]) -> Result<Self> {
        if base.spec().num_ext_vars() != 0 {
            return Err(Error::InvalidParameters("the base tensor already declares extension variables".into()));
        }
        let spec = base.spec().with_ext_vars(ext_vars)?;
        let ext = base.with_field(spec)?;
        Ok(RationalExtension { base: base.clone(), ext })
    }

    /// From a tensor whose spec declares the extension variables.
    pub fn from_tensor(ext: &StructureTensor) -> Result<Self> {
        let base = ext.with_field(ext.spec().base())?;
        Ok(RationalExtension { base, ext: ext.clone() })
    }

    pub fn base(&self) -> &StructureTensor {
        &self.base
    }

    pub fn ext(&self) -> &StructureTensor {
        &self.ext
    }

    pub fn spec(&self) -> &FieldSpec {
        self.ext.spec()
    }

    pub fn poly_element(&self, a: &AlgElement) -> Result<PolyAlgElement> {
        if a.dim() != self.ext.dim() {
            return Err(Error::DimensionMismatch { expected: self.ext.dim(), found: a.dim() });
        }
        PolyAlgElement::new(self.spec(), a.coords().to_vec())
    }

    /// `π_λ`, coordinatewise evaluation into `D`.
    pub fn pi_lambda(&self, a: &PolyAlgElement, point: &EvalPoint) -> Result<AlgElement> {
        let spec = self.spec();
        let coords = a.coords.iter().map(|c| evaluate(spec, c, point)).collect::<Result<Vec<_>>>()?;
        Ok(AlgElement::from_coords(coords))
    }

    /// `λ(f)` for a scalar of `Z(X)`.
    pub fn evaluate(&self, f: &Scalar, point: &EvalPoint) -> Result<Scalar> {
        evaluate(self.spec(), f, point)
    }

    /// Least common multiple `c` of the `X`-parts of all denominators,
    /// monic, with `c a_i ∈ D[X]` for every input.
    pub fn clear_denominators(&self, elements: &[AlgElement]) -> (Scalar, Vec<PolyAlgElement>) {
        let spec = self.spec();
        let p = spec.characteristic();
        let mut c = Poly::one(p);
        for a in elements {
            for x in a.coords() {
                c = lcm(&c, &ext_primitive_part(spec, x.denominator()));
            }
        }
        let c = Scalar::from_poly(c);
        let cleared = elements
            .iter()
            .map(|a| {
                let coords = a.coords().iter().map(|x| &c * x).collect();
                PolyAlgElement::new(spec, coords).expect("denominators cleared")
            })
            .collect();
        (c, cleared)
    }

    /// A nonzero maximal minor of the coefficient matrix of an independent family.
    pub fn independence_certificate(&self, elements: &[PolyAlgElement]) -> Result<SpecCertificate> {
        let f = self.ext.field();
        let n = self.ext.dim();
        let rows: Vec<Vec<Scalar>> = elements.iter().map(|e| e.coords.clone()).collect();
        let m = Matrix::from_rows(rows, n);
        let mut reduced = m.clone();
        let pivots = rref(&f, &mut reduced);
        if pivots.len() < elements.len() {
            return Err(Error::DependentInput);
        }
        let row_idx: Vec<usize> = (0..elements.len()).collect();
        let minor = det(&f, &m.submatrix(&row_idx, &pivots));
        let poly = Scalar::from_poly(ext_primitive_part(self.spec(), minor.numerator()));
        Ok(SpecCertificate { poly, rows: row_idx, cols: pivots })
    }

    /// `π_λ` of the `Z[X]`-span of a cleared basis of `span(V)`.
    pub fn specialize_subspace(&self, v: &[AlgElement], point: &EvalPoint) -> Result<SpecializedSubspace> {
        let f = self.ext.field();
        let vectors: Vec<Vec<Scalar>> = v.iter().map(|a| a.coords().to_vec()).collect();
        let basis: Vec<AlgElement> =
            independent_subfamily(&f, self.ext.dim(), &vectors).into_iter().map(|i| v[i].clone()).collect();
        let cleared: Vec<PolyAlgElement> = basis.iter().map(|a| self.clear_denominators(core::slice::from_ref(a)).1.remove(0)).collect();
        let certificate = self.independence_certificate(&cleared)?;
        let certificate_value = certificate.evaluate(self.spec(), point);
        let images = cleared.iter().map(|a| self.pi_lambda(a, point)).collect::<Result<Vec<_>>>()?;
        let space = self.base.span(&images);
        let preserved = space.dim() == cleared.len();
        Ok(SpecializedSubspace { cleared, space, preserved, certificate, certificate_value })
    }

    /// Checks each applicable clause of the reduction theorem for the
    /// subfield `K = Z(X)(gens)` of `D(X)` at `λ`. Clause 2 uses `galois`
    /// when supplied and the conjugation group of a toral generating set
    /// otherwise.
    pub fn verify_reduction(
        &self,
        gens: &[AlgElement],
        point: &EvalPoint,
        galois: Option<&GaloisData>,
    ) -> Result<ReductionReport> {
        let dx = &self.ext;
        let d = &self.base;
        let k = dx.generate_subfield(gens)?;
        if !k.is_field {
            return Err(Error::NotAField);
        }
        let specialized = self.specialize_subspace(&k.spanning, point)?;
        let kbar = &specialized.space;
        let f = d.field();
        let rows = kbar.basis();
        let multiplicatively_closed = rows.iter().all(|x| {
            rows.iter().all(|y| kbar.contains(&f, d.mul(&d.from_row(x), &d.from_row(y)).coords()))
        }) && d.contains(kbar, &d.one());
        let commutative = rows
            .iter()
            .enumerate()
            .all(|(i, x)| rows[i + 1..].iter().all(|y| d.commute(&d.from_row(x), &d.from_row(y))));
        let is_field = multiplicatively_closed
            && commutative
            && rows.iter().all(|r| d.alg_inverse(&d.from_row(r)).is_ok());
        let maximal = is_field && is_maximal_field(d, kbar);

        let torus = Torus::new(dx, gens.to_vec()).ok();
        let toral = match &torus {
            Some(t) if t.rank() > 0 => Some(self.toral_clause(t, point)?),
            _ => None,
        };
        let inseparable = self.inseparable_clause(gens, k.dim(), kbar, point)?;
        let derived;
        let group = match (galois, &torus) {
            (Some(g), _) => Some(g),
            (None, Some(t)) => {
                derived = galois_from_torus(dx, t)?;
                Some(&derived)
            }
            (None, None) => None,
        };
        let galois = match group {
            Some(g) => Some(self.galois_clause(&k.spanning, g, kbar, point)?),
            None => None,
        };
        Ok(ReductionReport {
            dim: k.dim(),
            specialized,
            multiplicatively_closed,
            is_field,
            maximal,
            toral,
            inseparable,
            galois,
        })
    }

    fn toral_clause(&self, torus: &Torus, point: &EvalPoint) -> Result<ToralClause> {
        let d = &self.base;
        let p = self.spec().characteristic();
        let (c, cleared) = self.clear_denominators(torus.generators());
        let c_value = self.evaluate(&c, point)?;
        let mut taus = Vec::new();
        let mut witnesses = Vec::new();
        let mut all_toral = false;
        let mut independent = false;
        let mut group_order = None;
        let mut group = None;
        if !c_value.is_zero() {
            let c_inv = c_value.inv()?;
            for a in &cleared {
                let tau = d.scale(&c_inv, &self.pi_lambda(a, point)?);
                witnesses.push(is_toral(d, &tau).defect);
                taus.push(tau);
            }
            all_toral = taus.iter().all(|t| is_toral(d, t).toral);
            let mut family = vec![d.one()];
            family.extend(taus.iter().cloned());
            independent = d.span(&family).dim() == family.len();
            if let Ok(t) = Torus::new(d, taus.clone()) {
                if let Ok(g) = galois_from_torus(d, &t) {
                    group_order = Some(g.order());
                    if g.order() == (p as usize).pow(t.rank() as u32) {
                        group = Some(group_label(p, t.rank()));
                    }
                }
            }
        }
        Ok(ToralClause {
            rank: torus.rank(),
            c,
            c_value,
            taus,
            witnesses,
            all_toral,
            independent,
            group_order,
            group,
        })
    }

    fn inseparable_clause(
        &self,
        gens: &[AlgElement],
        dim: usize,
        kbar: &AlgSubspace,
        point: &EvalPoint,
    ) -> Result<Option<InseparableClause>> {
        let dx = &self.ext;
        let d = &self.base;
        let p = self.spec().characteristic() as u64;
        let mut exponent = 0;
        let mut witness = None;
        for g in gens {
            match inseparable_exponent(dx, g, dim) {
                Some(r) if r > exponent || witness.is_none() => {
                    exponent = r;
                    witness = Some(g.clone());
                }
                Some(_) => {}
                None => return Ok(None),
            }
        }
        if dim > 1 && exponent == 0 {
            return Ok(None);
        }
        // Specialized exponent: the largest over a basis, by additivity of Frobenius.
        let mut specialized_exponent = Some(0u32);
        for row in kbar.basis() {
            match inseparable_exponent(d, &d.from_row(row), d.dim()) {
                Some(r) => specialized_exponent = specialized_exponent.map(|e| e.max(r)),
                None => specialized_exponent = None,
            }
        }
        let bound_holds = specialized_exponent.is_some_and(|e| e <= exponent);
        // Certificate: independence of 1, a, a^p, .., a^{p^{r-1}} for a cleared witness a.
        let mut family = vec![dx.one()];
        if let Some(w) = witness.filter(|_| exponent > 0) {
            let (_, cleared) = self.clear_denominators(core::slice::from_ref(&w));
            let mut power = cleared[0].to_element();
            for _ in 0..exponent {
                family.push(power.clone());
                power = dx.pow(&power, p);
            }
        }
        let cleared: Vec<PolyAlgElement> = family.iter().map(|a| self.poly_element(a)).collect::<Result<_>>()?;
        let certificate = self.independence_certificate(&cleared)?;
        let certificate_value = certificate.evaluate(self.spec(), point);
        let exponent_equal = specialized_exponent == Some(exponent);
        Ok(Some(InseparableClause {
            exponent,
            specialized_exponent,
            bound_holds,
            certificate,
            certificate_value,
            exponent_equal,
        }))
    }

    fn galois_clause(
        &self,
        spanning: &[AlgElement],
        group: &GaloisData,
        kbar: &AlgSubspace,
        point: &EvalPoint,
    ) -> Result<GaloisClause> {
        let dx = &self.ext;
        let d = &self.base;
        let n = spanning.len();
        if group.order() != n {
            return Err(Error::InvalidParameters("the Galois data does not match [K:Z(X)]".into()));
        }
        let (primitive, conjugates) = normal_element(dx, spanning, group).ok_or(Error::NoGenerator)?;
        let (c, cleared) = self.clear_denominators(&conjugates);
        let c_value = self.evaluate(&c, point)?;
        let images = cleared.iter().map(|a| self.pi_lambda(a, point)).collect::<Result<Vec<_>>>()?;
        let cleared_independent = !c_value.is_zero() && d.span(&images).dim() == n;
        let mut roots = Vec::new();
        let mut polynomial = None;
        let mut distinct_roots = false;
        let mut central_coefficients = false;
        let mut splitting_field = false;
        if !c_value.is_zero() {
            let c_inv = c_value.inv()?;
            roots = images.iter().map(|r| d.scale(&c_inv, r)).collect();
            distinct_roots = (0..n).all(|i| (i + 1..n).all(|j| roots[i] != roots[j]));
            // Expand ∏ (T - r_i) with coefficients in the commutative K̄_λ.
            let mut coeffs = vec![d.one()];
            for r in &roots {
                let mut next = vec![d.zero(); coeffs.len() + 1];
                for (i, a) in coeffs.iter().enumerate() {
                    next[i + 1] = d.add(&next[i + 1], a);
                    next[i] = d.sub(&next[i], &d.mul(a, r));
                }
                coeffs = next;
            }
            let unit = d.unit_index();
            central_coefficients =
                coeffs.iter().all(|e| e.coords().iter().enumerate().all(|(i, c)| i == unit || c.is_zero()));
            if central_coefficients {
                polynomial = Some(UniPoly::new(coeffs.iter().map(|e| e.coords()[unit].clone()).collect()));
            }
            splitting_field = match d.generate_subfield(&roots) {
                Ok(sub) => sub.space == *kbar,
                Err(_) => false,
            };
        }
        Ok(GaloisClause {
            primitive,
            c,
            c_value,
            cleared_independent,
            roots,
            polynomial,
            distinct_roots,
            central_coefficients,
            splitting_field,
        })
    }

    /// `K ⊗_Z Z(X)` for `K = Z(gens) ⊆ D`, with dimension, maximality,
    /// torus and inseparability re-verified over `Z(X)`.
    pub fn extend_scalars(&self, gens: &[AlgElement]) -> Result<ExtendedField> {
        let k = self.base.generate_subfield(gens)?;
        if !k.is_field {
            return Err(Error::NotAField);
        }
        let dx = &self.ext;
        let kx = dx.generate_subfield(gens)?;
        if !kx.is_field {
            return Err(Error::NotAField);
        }
        let maximal = is_maximal_field(dx, &kx.space);
        let torus = Torus::new(dx, gens.to_vec()).ok();
        let galois_order = match &torus {
            Some(t) => galois_from_torus(dx, t).ok().map(|g| g.order()),
            None => None,
        };
        let mut inseparable_exponent_max = Some(0u32);
        for g in gens {
            match inseparable_exponent(dx, g, kx.dim()) {
                Some(r) => inseparable_exponent_max = inseparable_exponent_max.map(|e| e.max(r)),
                None => inseparable_exponent_max = None,
            }
        }
        let inseparable_exponent = inseparable_exponent_max.filter(|&r| r > 0 || kx.dim() == 1);
        Ok(ExtendedField {
            generators: gens.to_vec(),
            dim: kx.dim(),
            space: kx.space,
            maximal,
            torus,
            galois_order,
            inseparable_exponent,
        })
    }
}

/// A normal element of `K`: its conjugates under `group` form a basis, so
/// it is primitive and the cleared conjugates are independent over `Z(X)`.
/// Candidates are `F_p`-combinations of the spanning set in lexicographic order.
fn normal_element(t: &StructureTensor, spanning: &[AlgElement], group: &GaloisData) -> Option<(AlgElement, Vec<AlgElement>)> {
    let n = spanning.len();
    let p = t.spec().characteristic();
    let mut coeffs = vec![0u32; n];
    let limit = 4096usize;
    for _ in 0..limit {
        // Advance the coefficient vector, skipping the zero vector.
        let mut k = 0;
        while k < n {
            coeffs[k] += 1;
            if coeffs[k] < p {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
        if k == n {
            return None;
        }
        let mut a = t.zero();
        for (c, e) in coeffs.iter().zip(spanning) {
            if *c != 0 {
                a = t.add(&a, &t.scale(&Scalar::from_int(p, *c as i64), e));
            }
        }
        let conjugates: Option<Vec<AlgElement>> = (0..group.order()).map(|i| group.apply(t, i, &a)).collect();
        let conjugates = conjugates?;
        if t.span(&conjugates).dim() == n {
            return Some((a, conjugates));
        }
    }
    None
}
