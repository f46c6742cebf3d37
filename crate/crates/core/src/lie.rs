//! Lie algebras by structure constants, restricted structures and
//! p-envelope chains.
//!
//! Elements are coordinate vectors on the basis `b_0, .., b_{n-1}`. A p-map
//! is stored on the basis and extended to all elements by Jacobson's
//! formula, which is well defined exactly when `(ad b_i)^p = ad(b_i^{[p]})`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, FunctionField, Scalar};
use crate::linalg::{axpy, is_zero_vec, kernel, solve, unit_vector, Matrix, Subspace};

pub type LieSubspace = Subspace<Scalar>;

/// A Lie algebra `[b_i, b_j] = Σ_k c_ij^k b_k` with an optional p-map on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePresentation {
    spec: FieldSpec,
    dim: usize,
    /// Canonical entries `(i, j, k, c)` with `i < j`.
    entries: Vec<(usize, usize, usize, Scalar)>,
    /// Sparse `[b_i, b_j]` at index `i * dim + j`.
    table: Vec<Vec<(usize, Scalar)>>,
    pmap: Option<Vec<Vec<Scalar>>>,
    names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiCheck {
    pub holds: bool,
    /// First basis triple `i < j < k` on which the Jacobi sum is nonzero.
    pub witness: Option<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedSeries {
    /// `L ⊇ [L, L] ⊇ ..` up to and including the first repeated term.
    pub terms: Vec<LieSubspace>,
    pub solvable: bool,
}

impl DerivedSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }
}

/// Outcome of checking `(ad b_i)^p ∈ ad L` for each basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedCheck {
    pub has_pmap: bool,
    pub restricted: bool,
    /// `z_i` with `(ad b_i)^p = ad z_i`, when found or when the given p-map satisfies it.
    pub preimages: Vec<Option<Vec<Scalar>>>,
    /// For a basis index without preimage: a functional on `gl(L)`, as
    /// coefficients of row-major matrix entries, vanishing on `ad L` but
    /// not on `(ad b_i)^p`. Only produced when no p-map is given.
    pub obstructions: Vec<(usize, Vec<Scalar>)>,
}

impl RestrictedCheck {
    pub fn failures(&self) -> Vec<usize> {
        self.preimages.iter().enumerate().filter(|(_, z)| z.is_none()).map(|(i, _)| i).collect()
    }
}

fn canonical_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("b{i}")).collect()
}

impl LiePresentation {
    /// A bracket table that is antisymmetric by construction; the Jacobi
    /// identity is not checked. Entries may list `(i, j)` or `(j, i)` but
    /// must agree where both are given.
    pub fn from_table(spec: FieldSpec, dim: usize, entries: Vec<(usize, usize, usize, Scalar)>) -> Result<Self> {
        let p = spec.characteristic();
        let mut canonical: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidParameters(format!("bracket index out of range in ({i}, {j}, {k})")));
            }
            if c.characteristic() != p || !spec.in_base(&c) {
                return Err(Error::InvalidParameters(format!("coefficient of ({i}, {j}, {k}) is outside the base field")));
            }
            if c.is_zero() {
                continue;
            }
            if i == j {
                return Err(Error::InvalidParameters(format!("[b{i}, b{i}] must vanish")));
            }
            let (key, value) = if i < j { ((i, j, k), c) } else { ((j, i, k), -c) };
            if let Some(old) = canonical.get(&key) {
                if *old != value {
                    return Err(Error::InvalidParameters(format!(
                        "inconsistent entries for [b{}, b{}]",
                        key.0, key.1
                    )));
                }
            }
            canonical.insert(key, value);
        }
        let mut table = vec![Vec::new(); dim * dim];
        let mut canon = Vec::new();
        for ((i, j, k), c) in canonical {
            table[i * dim + j].push((k, c.clone()));
            table[j * dim + i].push((k, -&c));
            canon.push((i, j, k, c));
        }
        Ok(LiePresentation { spec, dim, entries: canon, table, pmap: None, names: canonical_names(dim) })
    }

    /// As [`LiePresentation::from_table`] and additionally requires the Jacobi identity.
    pub fn new(spec: FieldSpec, dim: usize, entries: Vec<(usize, usize, usize, Scalar)>) -> Result<Self> {
        let l = Self::from_table(spec, dim, entries)?;
        if let Some((i, j, k)) = l.jacobi_check().witness {
            return Err(Error::JacobiFailure(i, j, k));
        }
        Ok(l)
    }

    /// Attaches `b_i ↦ b_i^{[p]}` after checking `(ad b_i)^p = ad(b_i^{[p]})`.
    pub fn with_pmap(mut self, pmap: Vec<Vec<Scalar>>) -> Result<Self> {
        if pmap.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: pmap.len() });
        }
        for v in &pmap {
            self.check_len(v)?;
        }
        self.pmap = Some(pmap);
        let check = self.restricted_check();
        if let Some(&i) = check.failures().first() {
            return Err(Error::NotRestricted(format!("(ad b{i})^p differs from ad(b{i}^[p])")));
        }
        Ok(self)
    }

    pub fn without_pmap(mut self) -> Self {
        self.pmap = None;
        self
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: names.len() });
        }
        self.names = names;
        Ok(self)
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

    pub fn entries(&self) -> &[(usize, usize, usize, Scalar)] {
        &self.entries
    }

    pub fn pmap(&self) -> Option<&[Vec<Scalar>]> {
        self.pmap.as_deref()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.spec.characteristic()); self.dim]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        unit_vector(&self.field(), self.dim, i)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad a`; column `j` is `[a, b_j]`.
    pub fn ad_matrix(&self, a: &[Scalar]) -> Matrix<Scalar> {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.bracket(a, &self.basis(j))).collect();
        Matrix::from_columns(&cols, self.dim)
    }

    pub fn jacobi_check(&self) -> JacobiCheck {
        let f = self.field();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let (bi, bj, bk) = (self.basis(i), self.basis(j), self.basis(k));
                    let mut sum = self.bracket(&bi, &self.bracket(&bj, &bk));
                    axpy(&f, &mut sum, &f.one(), &self.bracket(&bj, &self.bracket(&bk, &bi)));
                    axpy(&f, &mut sum, &f.one(), &self.bracket(&bk, &self.bracket(&bi, &bj)));
                    if !is_zero_vec(&f, &sum) {
                        return JacobiCheck { holds: false, witness: Some((i, j, k)) };
                    }
                }
            }
        }
        JacobiCheck { holds: true, witness: None }
    }

    pub fn span(&self, vectors: &[Vec<Scalar>]) -> LieSubspace {
        Subspace::span(&self.field(), self.dim, vectors.iter().cloned())
    }

    pub fn full(&self) -> LieSubspace {
        Subspace::full(&self.field(), self.dim)
    }

    /// `[V, W]`.
    pub fn bracket_space(&self, v: &LieSubspace, w: &LieSubspace) -> LieSubspace {
        let mut out = Subspace::new(self.dim);
        let f = self.field();
        for a in v.basis() {
            for b in w.basis() {
                out.insert(&f, self.bracket(a, b));
            }
        }
        out
    }

    pub fn is_subalgebra(&self, v: &LieSubspace) -> bool {
        self.bracket_space(v, v).is_subspace_of(&self.field(), v)
    }

    /// `[W, I] ⊆ I`.
    pub fn is_ideal_in(&self, ideal: &LieSubspace, w: &LieSubspace) -> bool {
        let f = self.field();
        ideal.is_subspace_of(&f, w) && self.bracket_space(w, ideal).is_subspace_of(&f, ideal)
    }

    pub fn derived_series(&self) -> DerivedSeries {
        self.derived_series_of(&self.full())
    }

    /// Derived series of a subalgebra `v`.
    pub fn derived_series_of(&self, v: &LieSubspace) -> DerivedSeries {
        let mut terms = vec![v.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.dim() == 0 {
                return DerivedSeries { terms, solvable: true };
            }
            let next = self.bracket_space(last, last);
            if next.dim() == last.dim() {
                terms.push(next);
                return DerivedSeries { terms, solvable: false };
            }
            terms.push(next);
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.entries.is_empty()
    }

    /// With a p-map: checks `(ad b_i)^p = ad(b_i^{[p]})`. Without: solves
    /// `(ad b_i)^p = ad z` for each `i`.
    pub fn restricted_check(&self) -> RestrictedCheck {
        let f = self.field();
        let p = self.spec.characteristic() as u64;
        let powers: Vec<Matrix<Scalar>> = (0..self.dim).map(|i| self.ad_matrix(&self.basis(i)).pow(&f, p)).collect();
        if let Some(pmap) = &self.pmap {
            let preimages: Vec<Option<Vec<Scalar>>> = powers
                .iter()
                .zip(pmap)
                .map(|(m, z)| (*m == self.ad_matrix(z)).then(|| z.clone()))
                .collect();
            let restricted = preimages.iter().all(|z| z.is_some());
            return RestrictedCheck { has_pmap: true, restricted, preimages, obstructions: Vec::new() };
        }
        // Columns: ad b_j flattened row-major.
        let flat = |m: &Matrix<Scalar>| -> Vec<Scalar> { m.to_rows().into_iter().flatten().collect() };
        let ads: Vec<Vec<Scalar>> = (0..self.dim).map(|j| flat(&self.ad_matrix(&self.basis(j)))).collect();
        let system = Matrix::from_columns(&ads, self.dim * self.dim);
        // Functionals vanishing on ad L.
        let annihilator = kernel(&f, &system.transpose());
        let mut preimages = Vec::new();
        let mut obstructions = Vec::new();
        for (i, m) in powers.iter().enumerate() {
            let target = flat(m);
            match solve(&f, &system, &target) {
                Some(z) => preimages.push(Some(z)),
                None => {
                    preimages.push(None);
                    let phi = annihilator
                        .iter()
                        .find(|phi| !crate::linalg::dot(&f, phi, &target).is_zero())
                        .expect("an inconsistent system has a separating functional");
                    obstructions.push((i, phi.clone()));
                }
            }
        }
        let restricted = preimages.iter().all(|z| z.is_some());
        RestrictedCheck { has_pmap: false, restricted, preimages, obstructions }
    }

    /// The presentation with the p-map found by [`LiePresentation::restricted_check`].
    pub fn restrict(&self) -> Result<Self> {
        let check = self.restricted_check();
        if let Some(&i) = check.failures().first() {
            return Err(Error::NotRestricted(format!("(ad b{i})^p is not inner")));
        }
        let pmap = check.preimages.into_iter().map(|z| z.expect("restricted")).collect();
        self.clone().with_pmap(pmap)
    }

    /// `Σ_{i=1}^{p-1} s_i(a, b)`, where `Σ i s_i t^{i-1} = ad(t a + b)^{p-1}(a)`.
    fn jacobson_correction(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let p = self.spec.characteristic() as usize;
        // Coefficients of t^0, t^1, .. of the vector polynomial.
        let mut poly: Vec<Vec<Scalar>> = vec![a.to_vec()];
        for _ in 0..p - 1 {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (d, v) in poly.iter().enumerate() {
                if is_zero_vec(&f, v) {
                    continue;
                }
                axpy(&f, &mut next[d + 1], &f.one(), &self.bracket(a, v));
                axpy(&f, &mut next[d], &f.one(), &self.bracket(b, v));
            }
            poly = next;
        }
        let mut out = self.zero();
        for i in 1..p {
            if let Some(v) = poly.get(i - 1) {
                let inv = f.inv(&f.int(i as i64)).expect("i < p");
                axpy(&f, &mut out, &inv, v);
            }
        }
        out
    }

    /// `x^{[p]}` by p-semilinearity on the basis and Jacobson's formula.
    pub fn p_power(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        let pmap = self.pmap.as_ref().ok_or_else(|| Error::NotRestricted("no p-map given".into()))?;
        let f = self.field();
        let p = self.spec.characteristic();
        let mut acc = self.zero();
        let mut acc_p = self.zero();
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mut term = self.zero();
            term[i] = c.clone();
            let mut term_p = self.zero();
            axpy(&f, &mut term_p, &c.pow(p), &pmap[i]);
            let correction = self.jacobson_correction(&acc, &term);
            for k in 0..self.dim {
                acc_p[k] = &(&acc_p[k] + &term_p[k]) + &correction[k];
            }
            acc[i] = c.clone();
        }
        Ok(acc_p)
    }

    /// `[ad x ^ p - ad(x^{[p]})]` vanishes.
    pub fn satisfies_restricted_identity(&self, x: &[Scalar]) -> Result<bool> {
        let f = self.field();
        let xp = self.p_power(x)?;
        Ok(self.ad_matrix(x).pow(&f, self.spec.characteristic() as u64) == self.ad_matrix(&xp))
    }

    pub fn format_element(&self, v: &[Scalar]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.names[i].clone()
                } else {
                    let s = self.spec.format(c);
                    if s.contains(['+', '-', ' ']) {
                        format!("({s})*{}", self.names[i])
                    } else {
                        format!("{s}*{}", self.names[i])
                    }
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// One step `L_i = L_{i-1} + F x_i` with `x_i = y_{i-1}^{[p]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeStep {
    pub y: Vec<Scalar>,
    pub x: Vec<Scalar>,
}

/// `L = L_0 ⊆ L_1 ⊆ .. ⊆ L_q = L_(p)` inside a restricted ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeChain {
    pub chain: Vec<LieSubspace>,
    pub steps: Vec<EnvelopeStep>,
    /// Basis of `L_q` adapted to the chain: a basis of `L`, then `x_1, .., x_q`.
    pub basis: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCheck {
    pub increments_by_one: bool,
    pub witnesses_valid: bool,
    pub ideals: bool,
    pub closed_under_bracket: bool,
    pub closed_under_pmap: bool,
}

impl ChainCheck {
    pub fn all(&self) -> bool {
        self.increments_by_one && self.witnesses_valid && self.ideals && self.closed_under_bracket && self.closed_under_pmap
    }
}

impl EnvelopeChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn envelope(&self) -> &LieSubspace {
        self.chain.last().expect("chain starts with L")
    }

    pub fn check(&self, g: &LiePresentation) -> Result<ChainCheck> {
        let f = g.field();
        let top = self.envelope();
        let increments_by_one = self.chain.windows(2).all(|w| w[1].dim() == w[0].dim() + 1 && w[0].is_subspace_of(&f, &w[1]));
        let mut witnesses_valid = self.steps.len() + 1 == self.chain.len();
        for (i, s) in self.steps.iter().enumerate() {
            witnesses_valid &= self.chain[i].contains(&f, &s.y)
                && !self.chain[i].contains(&f, &s.x)
                && self.chain[i + 1].contains(&f, &s.x)
                && g.p_power(&s.y)? == s.x;
        }
        let ideals = self.chain.iter().all(|li| g.is_ideal_in(li, top));
        let closed_under_bracket = g.is_subalgebra(top);
        let mut closed_under_pmap = true;
        for b in top.basis() {
            closed_under_pmap &= top.contains(&f, &g.p_power(b)?);
        }
        Ok(ChainCheck { increments_by_one, witnesses_valid, ideals, closed_under_bracket, closed_under_pmap })
    }
}

/// The p-envelope of a subalgebra `l` of the restricted algebra `g`,
/// starting from the echelon basis of `l`.
pub fn p_closure_chain(g: &LiePresentation, l: &LieSubspace) -> Result<EnvelopeChain> {
    if l.ambient_dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: l.ambient_dim() });
    }
    p_closure_chain_from(g, l.basis())
}

/// The p-envelope of the subalgebra spanned by the independent family
/// `basis`, adjoining at each step `x = y^{[p]}` for the first adapted basis
/// vector `y` of the current space with `y^{[p]}` outside it.
pub fn p_closure_chain_from(g: &LiePresentation, basis: &[Vec<Scalar>]) -> Result<EnvelopeChain> {
    for v in basis {
        g.check_len(v)?;
    }
    if g.pmap().is_none() {
        return Err(Error::NotRestricted("the ambient algebra has no p-map".into()));
    }
    if !g.restricted_check().restricted {
        return Err(Error::NotRestricted("the ambient p-map fails the restricted identity".into()));
    }
    let l = g.span(basis);
    if l.dim() != basis.len() {
        return Err(Error::DependentInput);
    }
    if !g.is_subalgebra(&l) {
        return Err(Error::NotASubalgebra);
    }
    let f = g.field();
    let mut current = l.clone();
    let mut basis: Vec<Vec<Scalar>> = basis.to_vec();
    let mut chain = vec![current.clone()];
    let mut steps = Vec::new();
    // Basis p-powers inside a subalgebra make it restricted: the Jacobson
    // corrections are Lie words in elements of the subalgebra.
    loop {
        let mut next = None;
        for y in &basis {
            let x = g.p_power(y)?;
            if !current.contains(&f, &x) {
                next = Some((y.clone(), x));
                break;
            }
        }
        let Some((y, x)) = next else { break };
        current.insert(&f, x.clone());
        if !g.is_subalgebra(&current) {
            // Each L_{i-1} is an ideal of the envelope, so a correct p-map
            // never leaves the subalgebra.
            return Err(Error::NotRestricted("p-power closure left the subalgebra".into()));
        }
        steps.push(EnvelopeStep { y, x: x.clone() });
        basis.push(x);
        chain.push(current.clone());
    }
    Ok(EnvelopeChain { chain, steps, basis })
}

/// `C(n, k) mod p` by Lucas' theorem, with `C(n, k) = 0` for `k < 0` or
/// `k > n >= 0`; negative `n` uses `C(n, k) = (-1)^k C(k - n - 1, k)`.
pub fn binom_mod_p(n: i64, k: i64, p: u32) -> u32 {
    if k < 0 {
        return 0;
    }
    if n < 0 {
        let c = binom_mod_p(k - n - 1, k, p);
        return if k % 2 == 0 || c == 0 { c } else { p - c };
    }
    if k > n {
        return 0;
    }
    let p64 = p as i64;
    let (mut n, mut k) = (n, k);
    let mut acc: u64 = 1;
    while n > 0 || k > 0 {
        let (nd, kd) = ((n % p64) as u64, (k % p64) as u64);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p as u64) % p as u64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

/// `C(n, k) mod p` for `k <= n < p`.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * crate::field::prime::inv_mod(den as u32, p as u32) as u64 % p
}

/// `W(1, m)` on `e_{-1}, .., e_{p^m - 2}` (index `i + 1`), with
/// `[e_i, e_j] = (C(i+j+1, i) - C(i+j+1, j)) e_{i+j}` when `i + j` is in range.
pub fn zassenhaus(p: u32, m: u32) -> Result<LiePresentation> {
    if p <= 2 || !crate::field::is_prime(p) {
        return Err(Error::InvalidParameters(format!("Zassenhaus algebras need an odd prime, got {p}")));
    }
    if m == 0 {
        return Err(Error::InvalidParameters("m must be at least 1".into()));
    }
    let dim = (p as usize).checked_pow(m).ok_or_else(|| Error::InvalidParameters("p^m overflows".into()))?;
    let spec = FieldSpec::new(p, &[] as &[&str], &[] as &[&str])?;
    let top = dim as i64 - 2;
    let mut entries = Vec::new();
    for i in -1..=top {
        for j in i + 1..=top {
            let s = i + j;
            if s < -1 || s > top {
                continue;
            }
            let c = binom_mod_p(s + 1, i, p) as i64 - binom_mod_p(s + 1, j, p) as i64;
            entries.push(((i + 1) as usize, (j + 1) as usize, (s + 1) as usize, Scalar::from_int(p, c)));
        }
    }
    let names = (-1..=top).map(|i| format!("e{i}")).collect();
    LiePresentation::new(spec, dim, entries)?.with_basis_names(names)
}

/// `gl_n` on `E_ab` at index `a n + b`, with the matrix p-th power as p-map.
pub fn gl(spec: &FieldSpec, n: usize) -> Result<LiePresentation> {
    if n == 0 {
        return Err(Error::InvalidParameters("matrix size must be positive".into()));
    }
    let p = spec.characteristic();
    let idx = |a: usize, b: usize| a * n + b;
    let mut entries = Vec::new();
    // [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (i, j) = (idx(a, b), idx(c, d));
                    if i >= j {
                        continue;
                    }
                    let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
                    if b == c {
                        *terms.entry(idx(a, d)).or_default() += 1;
                    }
                    if d == a {
                        *terms.entry(idx(c, b)).or_default() -= 1;
                    }
                    for (k, v) in terms {
                        entries.push((i, j, k, Scalar::from_int(p, v)));
                    }
                }
            }
        }
    }
    let f = spec.field();
    let pmap = (0..n * n)
        .map(|i| if i / n == i % n { unit_vector(&f, n * n, i) } else { vec![Scalar::zero(p); n * n] })
        .collect();
    let names = (0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect();
    LiePresentation::new(spec.clone(), n * n, entries)?.with_basis_names(names)?.with_pmap(pmap)
}

/// Row-major coordinates of an `n × n` matrix in [`gl`].
pub fn gl_element(n: usize, entries: &[(usize, usize, Scalar)], p: u32) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(p); n * n];
    for (a, b, c) in entries {
        v[a * n + b] = &v[a * n + b] + c;
    }
    v
}

/// The abelian algebra of dimension `n` with zero p-map.
pub fn abelian(spec: &FieldSpec, n: usize) -> Result<LiePresentation> {
    let p = spec.characteristic();
    LiePresentation::new(spec.clone(), n, Vec::new())?.with_pmap(vec![vec![Scalar::zero(p); n]; n])
}

/// `⟨h, e⟩` with `[h, e] = e` and `h^{[p]} = h`, `e^{[p]} = 0`.
pub fn two_dim_solvable(spec: &FieldSpec) -> Result<LiePresentation> {
    let p = spec.characteristic();
    let f = spec.field();
    LiePresentation::new(spec.clone(), 2, vec![(0, 1, 1, Scalar::one(p))])?
        .with_basis_names(vec!["h".into(), "e".into()])?
        .with_pmap(vec![unit_vector(&f, 2, 0), vec![Scalar::zero(p); 2]])
}

/// Standard filiform algebra: `[e_1, e_i] = e_{i+1}` for `2 <= i < n`.
pub fn filiform(spec: &FieldSpec, n: usize) -> Result<LiePresentation> {
    if n < 2 {
        return Err(Error::InvalidParameters("filiform algebras need dimension at least 2".into()));
    }
    let p = spec.characteristic();
    let entries = (1..n - 1).map(|i| (0, i, i + 1, Scalar::one(p))).collect();
    let names = (1..=n).map(|i| format!("e{i}")).collect();
    LiePresentation::new(spec.clone(), n, entries)?.with_basis_names(names)
}

/// Faithful representation of [`filiform`] in `gl_{n+1}`:
/// `e_1 ↦ E_{1,0} + Σ_{i=1}^{n-1} E_{i+1,i}`, `e_j ↦ E_{j,0}`.
pub fn filiform_matrices(p: u32, n: usize) -> Vec<Vec<Scalar>> {
    let m = n + 1;
    let one = Scalar::one(p);
    let mut out = Vec::new();
    let mut e1 = vec![(1, 0, one.clone())];
    e1.extend((1..n).map(|i| (i + 1, i, one.clone())));
    out.push(gl_element(m, &e1, p));
    for j in 2..=n {
        out.push(gl_element(m, &[(j, 0, one.clone())], p));
    }
    out
}

#[cfg(test)]
mod tests;
