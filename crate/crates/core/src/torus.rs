//! Toral elements, tori, weight decompositions and the Galois theory of
//! torus-generated subfields.
//!
//! A torus is stored by its toral generators `t_1..t_d`; the unit `t_0 = 1`
//! is implicit and weights are recorded on `t_1..t_d` only, so a weight is
//! a vector in `F_p^d`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgElement, AlgSubspace, GeneratedSubalgebra, StructureTensor};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{solve, Echelon, Matrix, Subspace};

/// Outcome of [`is_toral`]: `defect = t^p - t` and whether it is central.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torality {
    pub toral: bool,
    pub defect: AlgElement,
}

impl Torality {
    /// The central value `c` with `t^p - t = c·1`, when the defect is a scalar.
    pub fn central_scalar(&self, a: &StructureTensor) -> Option<Scalar> {
        let u = a.unit_index();
        let scalar = self.defect.coords().iter().enumerate().all(|(i, c)| i == u || c.is_zero());
        (self.toral && scalar).then(|| self.defect.coords()[u].clone())
    }
}

pub fn is_toral(a: &StructureTensor, t: &AlgElement) -> Torality {
    let p = a.spec().characteristic() as u64;
    let defect = a.sub(&a.pow(t, p), t);
    let centre = a.centre();
    let toral = a.contains(&centre, &defect);
    Torality { toral, defect }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torus {
    generators: Vec<AlgElement>,
}

impl Torus {
    /// Validates that the generators are toral, commute pairwise and that
    /// `{1, t_1, .., t_d}` stays independent modulo the centre, so the rank
    /// is the number of generators.
    pub fn new(a: &StructureTensor, generators: Vec<AlgElement>) -> Result<Self> {
        let f = a.field();
        for (i, t) in generators.iter().enumerate() {
            if t.dim() != a.dim() {
                return Err(Error::DimensionMismatch { expected: a.dim(), found: t.dim() });
            }
            if !is_toral(a, t).toral {
                return Err(Error::InvalidTorus(format!("generator {i} is not toral")));
            }
            for (j, s) in generators.iter().enumerate().take(i) {
                if !a.commute(s, t) {
                    return Err(Error::InvalidTorus(format!("generators {j} and {i} do not commute")));
                }
            }
        }
        let mut span = a.centre();
        span.insert(&f, a.one().into_coords());
        for (i, t) in generators.iter().enumerate() {
            if !span.insert(&f, t.coords().to_vec()) {
                return Err(Error::InvalidTorus(format!("generator {i} depends on 1, the centre and earlier generators")));
            }
        }
        Ok(Torus { generators })
    }

    /// The torus `Z·1` of rank 0.
    pub fn trivial() -> Self {
        Torus { generators: Vec::new() }
    }

    pub fn generators(&self) -> &[AlgElement] {
        &self.generators
    }

    /// `t_0 = 1, t_1, .., t_d`.
    pub fn toral_basis(&self, a: &StructureTensor) -> Vec<AlgElement> {
        let mut out = vec![a.one()];
        out.extend(self.generators.iter().cloned());
        out
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The subfield `Z(T)`.
    pub fn subfield(&self, a: &StructureTensor) -> Result<GeneratedSubalgebra> {
        a.generate_subfield(&self.generators)
    }
}

/// Elements of `space` killed by the linear map `op`.
fn kernel_within(
    a: &StructureTensor,
    space: &AlgSubspace,
    op: impl Fn(&AlgElement) -> AlgElement,
) -> AlgSubspace {
    let f = a.field();
    let basis = space.basis();
    if basis.is_empty() {
        return Subspace::new(a.dim());
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|r| op(&a.from_row(r)).into_coords()).collect();
    let m = Matrix::from_columns(&cols, a.dim());
    let ker = crate::linalg::kernel(&f, &m);
    let vectors = ker.into_iter().map(|c| space.combine(&f, &c));
    Subspace::span(&f, a.dim(), vectors)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDecomposition {
    /// Weights in lexicographic order, each `(λ(t_1), .., λ(t_d))`.
    pub weights: Vec<Vec<u32>>,
    /// `spaces[k] = D_{weights[k]}`, all nonzero.
    pub spaces: Vec<AlgSubspace>,
}

impl WeightDecomposition {
    pub fn space(&self, weight: &[u32]) -> Option<&AlgSubspace> {
        self.weights.iter().position(|w| w == weight).map(|k| &self.spaces[k])
    }

    /// `D_0 = C_D(T)`.
    pub fn zero_space(&self) -> &AlgSubspace {
        let d = self.weights.first().map_or(0, Vec::len);
        self.space(&vec![0; d]).expect("the unit has weight zero")
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// True when the weight set is an additive subgroup of `F_p^d`.
    pub fn is_closed_under_addition(&self, p: u32) -> bool {
        self.weights.iter().all(|l| self.weights.iter().all(|m| self.space(&add_weights(l, m, p)).is_some()))
    }

    /// Rank over `F_p` of the weight vectors; equal to `d` exactly when the
    /// pairing between `T_p` and the weights is nondegenerate.
    pub fn weight_rank(&self, p: u32) -> usize {
        let f = crate::field::PrimeField::new(p).expect("prime");
        let vectors = self.weights.iter().cloned();
        Echelon::span(&f, self.weights.first().map_or(0, Vec::len), vectors).dim()
    }

    /// `D_λ · D_μ ⊆ D_{λ+μ}` for all weights.
    pub fn is_grading(&self, a: &StructureTensor) -> bool {
        let f = a.field();
        let p = a.spec().characteristic();
        for (l, dl) in self.weights.iter().zip(&self.spaces) {
            for (m, dm) in self.weights.iter().zip(&self.spaces) {
                let target = self.space(&add_weights(l, m, p));
                for x in dl.basis() {
                    for y in dm.basis() {
                        let xy = a.mul(&a.from_row(x), &a.from_row(y));
                        let ok = match target {
                            Some(t) => t.contains(&f, xy.coords()),
                            None => xy.is_zero(),
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

pub(crate) fn add_weights(l: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    l.iter().zip(m).map(|(a, b)| (a + b) % p).collect()
}

/// Simultaneous eigenspaces `D_λ = {x : [t_i, x] = λ_i x}` for `λ ∈ F_p^d`.
pub fn weight_decomposition(a: &StructureTensor, torus: &Torus) -> Result<WeightDecomposition> {
    let f = a.field();
    let p = a.spec().characteristic();
    let mut layers: Vec<(Vec<u32>, AlgSubspace)> = vec![(Vec::new(), Subspace::full(&f, a.dim()))];
    for t in torus.generators() {
        let mut next = Vec::new();
        for (w, space) in &layers {
            for ev in 0..p {
                let lam = Scalar::from_int(p, ev as i64);
                let eigen = kernel_within(a, space, |x| a.sub(&a.commutator(t, x), &a.scale(&lam, x)));
                if eigen.dim() > 0 {
                    let mut w2 = w.clone();
                    w2.push(ev);
                    next.push((w2, eigen));
                }
            }
        }
        layers = next;
    }
    let total: usize = layers.iter().map(|(_, s)| s.dim()).sum();
    if total != a.dim() {
        return Err(Error::NotSimultaneouslyDiagonalizable);
    }
    let (weights, spaces) = layers.into_iter().unzip();
    Ok(WeightDecomposition { weights, spaces })
}

/// An automorphism of a subfield `K`, as the matrix acting on coordinates
/// with respect to the echelon basis of `K` (column `j` is the image of
/// basis vector `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisElement {
    pub weight: Option<Vec<u32>>,
    pub conjugator: Option<AlgElement>,
    pub matrix: Matrix<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisData {
    pub subfield: AlgSubspace,
    pub rank: usize,
    pub elements: Vec<GaloisElement>,
}

impl GaloisData {
    /// Supplied group data: the claimed rank and automorphism matrices on
    /// the echelon basis of `subfield`.
    pub fn from_matrices(subfield: AlgSubspace, rank: usize, matrices: Vec<Matrix<Scalar>>) -> Self {
        let elements = matrices.into_iter().map(|matrix| GaloisElement { weight: None, conjugator: None, matrix }).collect();
        GaloisData { subfield, rank, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Image of `k ∈ K` under element `idx`.
    pub fn apply(&self, a: &StructureTensor, idx: usize, k: &AlgElement) -> Option<AlgElement> {
        let f = a.field();
        let c = self.subfield.coordinates(&f, k.coords())?;
        let image = self.elements[idx].matrix.mul_vec(&f, &c);
        Some(AlgElement::from_coords(self.subfield.combine(&f, &image)))
    }
}

/// Matrix of `k ↦ g k g^{-1}` on the echelon basis of `space`.
fn conjugation_matrix(a: &StructureTensor, space: &AlgSubspace, g: &AlgElement, g_inv: &AlgElement) -> Option<Matrix<Scalar>> {
    let f = a.field();
    let mut cols = Vec::new();
    for row in space.basis() {
        let image = a.mul(&a.mul(g, &a.from_row(row)), g_inv);
        cols.push(space.coordinates(&f, image.coords())?);
    }
    Some(Matrix::from_columns(&cols, space.dim()))
}

/// The group `{σ_λ : k ↦ x_λ k x_λ^{-1}}` acting on `Z(T)`, with `x_λ` the
/// first echelon vector of `D_λ`.
pub fn galois_from_torus(a: &StructureTensor, torus: &Torus) -> Result<GaloisData> {
    let f = a.field();
    let p = a.spec().characteristic();
    let wd = weight_decomposition(a, torus)?;
    let k = torus.subfield(a)?;
    let subfield = k.space;
    let mut elements = Vec::new();
    for (w, space) in wd.weights.iter().zip(&wd.spaces) {
        let x = a.from_row(&space.basis()[0]);
        let x_inv = a.alg_inverse(&x)?;
        let matrix = conjugation_matrix(a, &subfield, &x, &x_inv)
            .ok_or_else(|| Error::InvalidTorus("conjugation does not preserve Z(T)".into()))?;
        // σ_λ(t_i) = t_i - λ(t_i).
        for (t, l) in torus.generators().iter().zip(w) {
            let image = a.mul(&a.mul(&x, t), &x_inv);
            let expect = a.sub(t, &a.scalar(&Scalar::from_int(p, *l as i64)));
            if image != expect {
                return Err(Error::InvalidTorus("conjugator does not shift the torus by its weight".into()));
            }
        }
        elements.push(GaloisElement { weight: Some(w.clone()), conjugator: Some(x), matrix });
    }
    let data = GaloisData { subfield, rank: torus.rank(), elements };
    // λ ↦ σ_λ is an injective homomorphism onto a group of order [Z(T):Z].
    for (i, l) in wd.weights.iter().enumerate() {
        for (j, m) in wd.weights.iter().enumerate() {
            let sum = add_weights(l, m, p);
            let k = wd.weights.iter().position(|w| *w == sum).ok_or(Error::NotSimultaneouslyDiagonalizable)?;
            let prod = data.elements[i].matrix.mul(&f, &data.elements[j].matrix);
            if prod != data.elements[k].matrix || (i != j && data.elements[i].matrix == data.elements[j].matrix) {
                return Err(Error::InvalidTorus("weights do not act as a group of automorphisms".into()));
            }
        }
    }
    if data.order() != data.subfield.dim() || data.order() != (p as usize).pow(torus.rank() as u32) {
        return Err(Error::InvalidTorus("the group order differs from [Z(T):Z] or p^rank".into()));
    }
    Ok(data)
}

/// Index of `m` among the group matrices.
fn find_element(group: &GaloisData, m: &Matrix<Scalar>) -> Option<usize> {
    group.elements.iter().position(|g| g.matrix == *m)
}

/// Checks that the group is elementary abelian of order `p^rank`, and
/// returns the indices of a generating set of size `rank`.
fn elementary_abelian_basis(a: &StructureTensor, group: &GaloisData) -> Result<Vec<usize>> {
    let f = a.field();
    let p = a.spec().characteristic();
    let n = group.subfield.dim();
    let id = Matrix::identity(&f, n);
    if group.elements.is_empty() || find_element(group, &id).is_none() {
        return Err(Error::NotElementaryAbelian);
    }
    for g in &group.elements {
        if g.matrix.rows() != n || g.matrix.cols() != n || g.matrix.pow(&f, p as u64) != id {
            return Err(Error::NotElementaryAbelian);
        }
        for h in &group.elements {
            let gh = g.matrix.mul(&f, &h.matrix);
            if gh != h.matrix.mul(&f, &g.matrix) || find_element(group, &gh).is_none() {
                return Err(Error::NotElementaryAbelian);
            }
        }
    }
    if (p as usize).checked_pow(group.rank as u32) != Some(group.order()) {
        return Err(Error::NotElementaryAbelian);
    }
    // Greedy basis: add elements outside the subgroup generated so far.
    let mut span: Vec<usize> = vec![find_element(group, &id).expect("identity present")];
    let mut basis = Vec::new();
    for (idx, g) in group.elements.iter().enumerate() {
        if span.contains(&idx) {
            continue;
        }
        basis.push(idx);
        let mut grown = Vec::new();
        for &s in &span {
            let mut m = group.elements[s].matrix.clone();
            for _ in 0..p {
                let k = find_element(group, &m).expect("closed");
                if !grown.contains(&k) {
                    grown.push(k);
                }
                m = m.mul(&f, &g.matrix);
            }
        }
        span = grown;
    }
    debug_assert_eq!(basis.len(), group.rank);
    Ok(basis)
}

/// Artin–Schreier generators `t_1..t_d` of `K` from its elementary abelian
/// Galois group: for each basis element `σ_i` of the group, `t_i` lies in
/// the field fixed by the other basis elements and satisfies `σ_i(t_i) = t_i + 1`.
pub fn artin_schreier_from_galois(a: &StructureTensor, k: &AlgSubspace, group: &GaloisData) -> Result<Torus> {
    let f = a.field();
    if group.subfield != *k {
        return Err(Error::InvalidParameters("the Galois data acts on a different subfield".into()));
    }
    let basis = elementary_abelian_basis(a, group)?;
    if group.order() != k.dim() {
        return Err(Error::NoGenerator);
    }
    let n = k.dim();
    let id = Matrix::identity(&f, n);
    let one = k.coordinates(&f, a.one().coords()).ok_or(Error::NotASubalgebra)?;
    let mut generators = Vec::new();
    for (i, &gi) in basis.iter().enumerate() {
        // Fixed field of the other generators, in K-coordinates.
        let mut fixed = Subspace::full(&f, n);
        for (j, &gj) in basis.iter().enumerate() {
            if i != j {
                let m = group.elements[gj].matrix.sub(&f, &id);
                let cols: Vec<Vec<Scalar>> = fixed.basis().iter().map(|r| m.mul_vec(&f, r)).collect();
                let relation = Matrix::from_columns(&cols, n);
                let ker = crate::linalg::kernel(&f, &relation);
                fixed = Subspace::span(&f, n, ker.into_iter().map(|c| fixed.combine(&f, &c)));
            }
        }
        let m = group.elements[gi].matrix.sub(&f, &id);
        let cols: Vec<Vec<Scalar>> = fixed.basis().iter().map(|r| m.mul_vec(&f, r)).collect();
        let system = Matrix::from_columns(&cols, n);
        let c = solve(&f, &system, &one).ok_or(Error::NoGenerator)?;
        let t_coords = k.combine(&f, &fixed.combine(&f, &c));
        generators.push(AlgElement::from_coords(t_coords));
    }
    let torus = Torus::new(a, generators).map_err(|_| Error::NoGenerator)?;
    if torus.subfield(a)?.space != *k {
        return Err(Error::NoGenerator);
    }
    Ok(torus)
}

/// The six equivalent conditions of the maximality criterion for a torus
/// of rank `d` in an algebra of dimension `p^{2n}` over its centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaximalityReport {
    pub n: usize,
    pub rank: usize,
    /// `n = d`.
    pub rank_is_half_degree: bool,
    /// `Z(T)` is a maximal subfield.
    pub torus_field_maximal: bool,
    /// `D_0` is a maximal subfield.
    pub zero_space_maximal: bool,
    /// `D_0 = Z(T)`.
    pub zero_space_is_torus_field: bool,
    /// `D_0` is commutative.
    pub zero_space_commutative: bool,
    /// `|Λ| = p^n`.
    pub weight_count_full: bool,
}

impl MaximalityReport {
    pub fn conditions(&self) -> [bool; 6] {
        [
            self.rank_is_half_degree,
            self.torus_field_maximal,
            self.zero_space_maximal,
            self.zero_space_is_torus_field,
            self.zero_space_commutative,
            self.weight_count_full,
        ]
    }

    pub fn all_equal(&self) -> bool {
        let c = self.conditions();
        c.iter().all(|&b| b == c[0])
    }
}

fn is_commutative_space(a: &StructureTensor, space: &AlgSubspace) -> bool {
    let rows = space.basis();
    rows.iter().enumerate().all(|(i, x)| rows[i + 1..].iter().all(|y| a.commute(&a.from_row(x), &a.from_row(y))))
}

/// `space` is a commutative subalgebra equal to its own centralizer and
/// every nonzero basis vector is invertible.
fn is_maximal_subfield(a: &StructureTensor, space: &AlgSubspace) -> bool {
    is_commutative_space(a, space)
        && a.centralizer(space) == *space
        && space.basis().iter().all(|r| a.alg_inverse(&a.from_row(r)).is_ok())
}

pub fn maximality_report(a: &StructureTensor, torus: &Torus) -> Result<MaximalityReport> {
    let p = a.spec().characteristic() as usize;
    let centre_dim = a.centre().dim();
    if !a.dim().is_multiple_of(centre_dim) {
        return Err(Error::NotPPowerSquareDimension);
    }
    let degree = a.dim() / centre_dim;
    let mut n = 0;
    let mut q = 1usize;
    while q < degree {
        q *= p * p;
        n += 1;
    }
    if q != degree {
        return Err(Error::NotPPowerSquareDimension);
    }
    let wd = weight_decomposition(a, torus)?;
    let zt = torus.subfield(a)?;
    let d0 = wd.zero_space();
    Ok(MaximalityReport {
        n,
        rank: torus.rank(),
        rank_is_half_degree: n == torus.rank(),
        torus_field_maximal: zt.is_field && is_maximal_subfield(a, &zt.space),
        zero_space_maximal: is_maximal_subfield(a, d0),
        zero_space_is_torus_field: *d0 == zt.space,
        zero_space_commutative: is_commutative_space(a, d0),
        weight_count_full: Some(wd.len()) == p.checked_pow(n as u32),
    })
}
