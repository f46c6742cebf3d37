//! Universal enveloping algebras in the PBW basis, p-centres, and the
//! central variables of a p-envelope chain.
//!
//! A [`PBWMonomial`] `b_0^{a_0} .. b_{n-1}^{a_{n-1}}` is ordered by total
//! degree, then lexicographically on exponent vectors. Products are
//! straightened by `b_k b_j = b_j b_k + [b_k, b_j]` for `k > j`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::algebra::{symbol_algebra, symbol_index, AlgElement, StructureTensor};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::lie::{EnvelopeChain, LiePresentation};
use crate::linalg::{solve, Matrix};
use crate::specialize::RationalExtension;
use crate::torus::{galois_from_torus, is_toral, Torus};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PBWMonomial {
    exps: Vec<u32>,
}

impl PBWMonomial {
    pub fn one(n: usize) -> Self {
        PBWMonomial { exps: vec![0; n] }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        PBWMonomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Largest index with a positive exponent.
    fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    fn with_delta(&self, i: usize, delta: i32) -> Self {
        let mut m = self.clone();
        m.exps[i] = (m.exps[i] as i32 + delta) as u32;
        m
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for PBWMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.exps.cmp(&o.exps))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All monomials in `n` variables of total degree at most `d`, in monomial order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<PBWMonomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<PBWMonomial>) {
        if i == cur.len() {
            out.push(PBWMonomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n], &mut out);
    out.sort();
    out
}

/// A straightened element of `U(L)`: no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UElement {
    n: usize,
    p: u32,
    terms: BTreeMap<PBWMonomial, Scalar>,
}

impl UElement {
    pub fn zero(n: usize, p: u32) -> Self {
        UElement { n, p, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut e = Self::zero(n, c.characteristic());
        e.add_term(PBWMonomial::one(n), c);
        e
    }

    pub fn one(n: usize, p: u32) -> Self {
        Self::constant(n, Scalar::one(p))
    }

    pub fn monomial(m: PBWMonomial, c: Scalar) -> Self {
        let mut e = Self::zero(m.len(), c.characteristic());
        e.add_term(m, c);
        e
    }

    pub fn generator(n: usize, i: usize, p: u32) -> Self {
        Self::monomial(PBWMonomial::generator(n, i), Scalar::one(p))
    }

    /// The Lie element `Σ c_i b_i`.
    pub fn from_lie(coords: &[Scalar], p: u32) -> Self {
        let n = coords.len();
        let mut e = Self::zero(n, p);
        for (i, c) in coords.iter().enumerate() {
            e.add_term(PBWMonomial::generator(n, i), c.clone());
        }
        e
    }

    /// Validated construction from explicit terms.
    pub fn from_terms(n: usize, p: u32, terms: Vec<(PBWMonomial, Scalar)>) -> Result<Self> {
        let mut e = Self::zero(n, p);
        for (m, c) in terms {
            if m.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.len() });
            }
            if c.characteristic() != p {
                return Err(Error::InvalidParameters("coefficient has the wrong characteristic".into()));
            }
            e.add_term(m, c);
        }
        Ok(e)
    }

    pub fn num_generators(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Greatest monomial with its coefficient.
    pub fn leading(&self) -> Option<(&PBWMonomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &UElement) -> UElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &UElement) -> UElement {
        self.add(&o.scale(&Scalar::from_int(self.p, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> UElement {
        let mut out = UElement::zero(self.n, self.p);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Lie coordinates if the element has degree at most one: `(constant, coords)`.
    pub fn as_affine_lie(&self) -> Option<(Scalar, Vec<Scalar>)> {
        if self.degree().unwrap_or(0) > 1 {
            return None;
        }
        let constant = self.coeff(&PBWMonomial::one(self.n));
        let coords = (0..self.n).map(|i| self.coeff(&PBWMonomial::generator(self.n, i))).collect();
        Some((constant, coords))
    }

    pub fn format(&self, spec: &FieldSpec, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono = m.format(names);
                if m.is_one() {
                    spec.format(c)
                } else if c.is_one() {
                    mono
                } else {
                    let s = spec.format(c);
                    if s.contains(['+', '-', ' ']) {
                        format!("({s})*{mono}")
                    } else {
                        format!("{s}*{mono}")
                    }
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// PBW straightening for a fixed Lie algebra, memoizing `monomial · b_j`.
#[derive(Debug, Clone)]
pub struct Straightener<'a> {
    lie: &'a LiePresentation,
    cache: BTreeMap<(PBWMonomial, usize), UElement>,
}

impl<'a> Straightener<'a> {
    pub fn new(lie: &'a LiePresentation) -> Self {
        Straightener { lie, cache: BTreeMap::new() }
    }

    pub fn lie(&self) -> &LiePresentation {
        self.lie
    }

    fn n(&self) -> usize {
        self.lie.dim()
    }

    fn p(&self) -> u32 {
        self.lie.spec().characteristic()
    }

    /// `m · b_j` in PBW form.
    fn monomial_times_generator(&mut self, m: &PBWMonomial, j: usize) -> UElement {
        let key = (m.clone(), j);
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let result = match m.last_var() {
            Some(k) if k > j => {
                // m = m' b_k and b_k b_j = b_j b_k + [b_k, b_j].
                let prefix = m.with_delta(k, -1);
                let moved = self.monomial_times_generator(&prefix, j);
                let mut out = self.element_times_generator(&moved, k);
                let br = self.lie.bracket(&self.lie.basis(k), &self.lie.basis(j));
                for (l, c) in br.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let t = self.monomial_times_generator(&prefix, l);
                    out = out.add(&t.scale(c));
                }
                out
            }
            _ => UElement::monomial(m.with_delta(j, 1), Scalar::one(self.p())),
        };
        self.cache.insert(key, result.clone());
        result
    }

    fn element_times_generator(&mut self, a: &UElement, j: usize) -> UElement {
        let mut out = UElement::zero(self.n(), self.p());
        for (m, c) in &a.terms {
            let t = self.monomial_times_generator(m, j);
            for (tm, tc) in t.terms {
                out.add_term(tm, &tc * c);
            }
        }
        out
    }

    fn element_times_monomial(&mut self, a: &UElement, m: &PBWMonomial) -> UElement {
        let mut acc = a.clone();
        for (j, &e) in m.exps.iter().enumerate() {
            for _ in 0..e {
                acc = self.element_times_generator(&acc, j);
            }
        }
        acc
    }

    pub fn mul(&mut self, a: &UElement, b: &UElement) -> UElement {
        let mut out = UElement::zero(self.n(), self.p());
        for (m, c) in &b.terms {
            let t = self.element_times_monomial(a, m);
            out = out.add(&t.scale(c));
        }
        out
    }

    pub fn pow(&mut self, a: &UElement, e: u32) -> UElement {
        let mut acc = UElement::one(self.n(), self.p());
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn commutator(&mut self, a: &UElement, b: &UElement) -> UElement {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        ab.sub(&ba)
    }

    /// `[a, b_j] = 0` for every basis element `b_j`.
    pub fn centrality_check(&mut self, a: &UElement) -> CentralityCheck {
        for j in 0..self.n() {
            let g = UElement::generator(self.n(), j, self.p());
            if !self.commutator(a, &g).is_zero() {
                return CentralityCheck { central: false, witness: Some(j) };
            }
        }
        CentralityCheck { central: true, witness: None }
    }
}

/// Straightened product in `U(L)`.
pub fn u_mul(lie: &LiePresentation, a: &UElement, b: &UElement) -> UElement {
    Straightener::new(lie).mul(a, b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralityCheck {
    pub central: bool,
    /// First basis element not commuting with the tested element.
    pub witness: Option<usize>,
}

pub fn centrality_check(lie: &LiePresentation, a: &UElement) -> CentralityCheck {
    Straightener::new(lie).centrality_check(a)
}

/// `b_i^p - b_i^{[p]}` for each basis element, each verified central.
pub fn p_centre_gens(lie: &LiePresentation) -> Result<Vec<UElement>> {
    let pmap = lie.pmap().ok_or_else(|| Error::NotRestricted("no p-map given".into()))?;
    if !lie.restricted_check().restricted {
        return Err(Error::NotRestricted("the p-map fails the restricted identity".into()));
    }
    let n = lie.dim();
    let p = lie.spec().characteristic();
    let mut s = Straightener::new(lie);
    let mut out = Vec::new();
    for (i, image) in pmap.iter().enumerate() {
        let z = s.pow(&UElement::generator(n, i, p), p).sub(&UElement::from_lie(image, p));
        if !s.centrality_check(&z).central {
            return Err(Error::CentralityFailure(i));
        }
        out.push(z);
    }
    Ok(out)
}

/// For `a` of degree at most one: whether `a^p - a` is central in `U(L)`.
pub fn toral_in_envelope(lie: &LiePresentation, a: &UElement) -> Result<bool> {
    if a.degree().unwrap_or(0) > 1 {
        return Err(Error::DegreeTooHigh);
    }
    let p = lie.spec().characteristic();
    let mut s = Straightener::new(lie);
    let z = s.pow(a, p).sub(a);
    Ok(s.centrality_check(&z).central)
}

/// `L_(p)` as an abstract restricted algebra on the chain's adapted basis:
/// the basis of `L` first (indices `0..l_dim`), then `x_1, .., x_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEnvelope {
    pub lie: LiePresentation,
    pub l_dim: usize,
    /// `y_{i-1}` in adapted coordinates.
    pub ys: Vec<Vec<Scalar>>,
}

impl ChainEnvelope {
    pub fn new(g: &LiePresentation, chain: &EnvelopeChain) -> Result<Self> {
        let f = g.field();
        let basis = &chain.basis;
        let n = basis.len();
        let q = chain.steps.len();
        let a = Matrix::from_columns(basis, g.dim());
        let coords = |v: &[Scalar]| solve(&f, &a, v).ok_or(Error::NotASubalgebra);
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in coords(&g.bracket(&basis[i], &basis[j]))?.into_iter().enumerate() {
                    entries.push((i, j, k, c));
                }
            }
        }
        let pmap = basis.iter().map(|b| coords(&g.p_power(b)?)).collect::<Result<Vec<_>>>()?;
        let mut names: Vec<String> = (0..n - q).map(|i| format!("l{}", i + 1)).collect();
        names.extend((1..=q).map(|i| format!("x{i}")));
        let lie = LiePresentation::new(g.spec().clone(), n, entries)?.with_basis_names(names)?.with_pmap(pmap)?;
        let ys = chain.steps.iter().map(|s| coords(&s.y)).collect::<Result<Vec<_>>>()?;
        Ok(ChainEnvelope { lie, l_dim: n - q, ys })
    }

    pub fn q(&self) -> usize {
        self.lie.dim() - self.l_dim
    }

    pub fn x_index(&self, i: usize) -> usize {
        self.l_dim + i
    }

    /// `u_i = x_i - y_{i-1}^p` in `U(L_(p))`, each verified central.
    pub fn central_u_variables(&self) -> Result<Vec<UElement>> {
        let n = self.lie.dim();
        let p = self.lie.spec().characteristic();
        let mut s = Straightener::new(&self.lie);
        let mut out = Vec::new();
        for (i, y) in self.ys.iter().enumerate() {
            let yp = s.pow(&UElement::from_lie(y, p), p);
            let u = UElement::generator(n, self.x_index(i), p).sub(&yp);
            if !s.centrality_check(&u).central {
                return Err(Error::CentralityFailure(i));
            }
            out.push(u);
        }
        Ok(out)
    }

    /// Linear independence of all `m · u^α` with `m` a PBW monomial of
    /// `U(L)` and `deg m + |α| <= bound`.
    pub fn freeness_check(&self, u_vars: &[UElement], bound: u32) -> Result<FreenessCheck> {
        let p = self.lie.spec().characteristic();
        if bound < p {
            return Err(Error::InvalidParameters(format!("degree bound {bound} is below p = {p}")));
        }
        if u_vars.len() != self.q() {
            return Err(Error::DimensionMismatch { expected: self.q(), found: u_vars.len() });
        }
        let n = self.lie.dim();
        let q = self.q();
        let mut s = Straightener::new(&self.lie);
        // u^α for |α| <= bound, built by multiplying up from lower powers.
        let mut u_powers: BTreeMap<PBWMonomial, UElement> = BTreeMap::new();
        for alpha in monomials_up_to(q, bound) {
            let value = match alpha.last_var() {
                None => UElement::one(n, p),
                Some(i) => {
                    let lower = u_powers[&alpha.with_delta(i, -1)].clone();
                    s.mul(&lower, &u_vars[i])
                }
            };
            u_powers.insert(alpha, value);
        }
        let mut rank = SparseRank::default();
        let mut products = 0;
        for m in monomials_up_to(self.l_dim, bound) {
            let mut full = m.exps.clone();
            full.resize(n, 0);
            let mono = UElement::monomial(PBWMonomial::from_exponents(full), Scalar::one(p));
            for (alpha, ua) in &u_powers {
                if m.degree() + alpha.degree() > bound {
                    continue;
                }
                products += 1;
                rank.insert(s.mul(&mono, ua));
            }
        }
        Ok(FreenessCheck { bound, products, rank: rank.rank(), free: rank.rank() == products })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessCheck {
    pub bound: u32,
    pub products: usize,
    pub rank: usize,
    pub free: bool,
}

/// Incremental rank of sparse vectors indexed by monomials.
#[derive(Debug, Default)]
struct SparseRank {
    /// Rows keyed by their leading monomial, normalized to leading coefficient 1.
    pivots: BTreeMap<PBWMonomial, UElement>,
}

impl SparseRank {
    fn insert(&mut self, mut v: UElement) -> bool {
        loop {
            let Some((lead, c)) = v.leading().map(|(m, c)| (m.clone(), c.clone())) else { return false };
            match self.pivots.get(&lead) {
                Some(row) => v = v.sub(&row.scale(&c)),
                None => {
                    let inv = c.inv().expect("nonzero leading coefficient");
                    self.pivots.insert(lead, v.scale(&inv));
                    return true;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Verdicts relating `U(⟨h, e⟩)`, `[h, e] = e`, to the symbol algebra over
/// `F_p(s, t)` with `x^p - x = -s`, `y^p = t`, via `x ↦ -h`, `y ↦ e`. Under
/// this map `y x = (x + 1) y` corresponds to `e h = (h - 1) e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvableBridge {
    pub h_p_centre_central: bool,
    pub e_p_central: bool,
    pub commutation_relation: bool,
    pub h_toral: bool,
    pub e_toral: bool,
    /// `φ(e) φ(h) = φ(h) φ(e) - φ(e)` in the symbol algebra.
    pub bracket_preserved: bool,
    /// `φ(h^p - h) = s` and `φ(e^p) = t`.
    pub centre_matches: bool,
    pub x_torus_galois_order: usize,
    pub x_field_maximal: bool,
    pub y_inseparable_exponent: Option<u32>,
    pub y_field_maximal: bool,
}

impl SolvableBridge {
    pub fn all_hold(&self, p: u32) -> bool {
        self.h_p_centre_central
            && self.e_p_central
            && self.commutation_relation
            && self.h_toral
            && !self.e_toral
            && self.bracket_preserved
            && self.centre_matches
            && self.x_torus_galois_order == p as usize
            && self.x_field_maximal
            && self.y_inseparable_exponent == Some(1)
            && self.y_field_maximal
    }
}

/// `φ(Σ c h^i e^j) = Σ c (-x)^i y^j` for the symbol algebra of [`solvable_bridge`].
pub fn bridge_image(d: &StructureTensor, a: &UElement) -> AlgElement {
    let p = d.spec().characteristic();
    let x = d.neg(&d.basis(symbol_index(p, 1, 0)));
    let y = d.basis(symbol_index(p, 0, 1));
    let mut out = d.zero();
    for (m, c) in a.terms() {
        let (i, j) = (m.exponents()[0], m.exponents()[1]);
        let term = d.mul(&d.pow(&x, i as u64), &d.pow(&y, j as u64));
        out = d.add(&out, &d.scale(c, &term));
    }
    out
}

/// The symbol algebra `(x^p - x = -s, y^p = t)` over `F_p(s, t)`.
pub fn bridge_symbol_algebra(p: u32) -> Result<StructureTensor> {
    let spec = FieldSpec::new(p, &["s", "t"], &[] as &[&str])?;
    symbol_algebra(&spec, &-spec.v("s"), &spec.v("t"))
}

pub fn solvable_bridge(p: u32) -> Result<SolvableBridge> {
    let fp = FieldSpec::new(p, &[] as &[&str], &[] as &[&str])?;
    let lie = crate::lie::two_dim_solvable(&fp)?;
    let mut s = Straightener::new(&lie);
    let h = UElement::generator(2, 0, p);
    let e = UElement::generator(2, 1, p);
    let hp = s.pow(&h, p).sub(&h);
    let ep = s.pow(&e, p);
    let eh = s.mul(&e, &h);
    let h_minus_one = h.sub(&UElement::one(2, p));
    let rhs = s.mul(&h_minus_one, &e);
    let d = bridge_symbol_algebra(p)?;
    let (ph, pe) = (bridge_image(&d, &h), bridge_image(&d, &e));
    let bracket_preserved = d.mul(&pe, &ph) == d.sub(&d.mul(&ph, &pe), &pe);
    let centre_matches = bridge_image(&d, &hp) == d.scalar(&d.spec().v("s"))
        && bridge_image(&d, &ep) == d.scalar(&d.spec().v("t"));
    let x = d.basis(symbol_index(p, 1, 0));
    let y = d.basis(symbol_index(p, 0, 1));
    let torus = Torus::new(&d, vec![x.clone()])?;
    let x_torus_galois_order = galois_from_torus(&d, &torus)?.order();
    let ext = RationalExtension::new(&d, &[] as &[&str])?;
    let kx = ext.extend_scalars(core::slice::from_ref(&x))?;
    let ky = ext.extend_scalars(core::slice::from_ref(&y))?;
    Ok(SolvableBridge {
        h_p_centre_central: s.centrality_check(&hp).central,
        e_p_central: s.centrality_check(&ep).central,
        commutation_relation: eh == rhs,
        h_toral: toral_in_envelope(&lie, &h)?,
        e_toral: toral_in_envelope(&lie, &e)?,
        bracket_preserved,
        centre_matches,
        x_torus_galois_order,
        x_field_maximal: kx.maximal && is_toral(&d, &x).toral,
        y_inseparable_exponent: ky.inseparable_exponent,
        y_field_maximal: ky.maximal,
    })
}
