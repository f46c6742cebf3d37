//! Sparse multivariate polynomials over `F_p`.
//!
//! Variables are plain indices; a monomial stores its exponent vector with
//! trailing zeros trimmed, so a polynomial in `k` variables embeds unchanged
//! into any ring with more variables. Terms are kept in strictly decreasing
//! graded-lexicographic order, which makes the representation canonical.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use smallvec::{smallvec, SmallVec};

use super::prime::{inv_mod, mul_mod};

type Exps = SmallVec<[u32; 4]>;

/// Exponent vector with trailing zeros trimmed; the total degree is cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    exps: Exps,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut exps: Exps = smallvec![0; index + 1];
        exps[index] = exp;
        Monomial { degree: exp, exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self::from_slice(&exps)
    }

    pub fn from_slice(exps: &[u32]) -> Self {
        let len = exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        Self::trimmed(Exps::from_slice(&exps[..len]))
    }

    fn trimmed(mut exps: Exps) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { degree: exps.iter().sum(), exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Largest variable index with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() { (self, other) } else { (other, self) };
        let mut exps = long.exps.clone();
        for (e, s) in exps.iter_mut().zip(&short.exps) {
            *e += s;
        }
        Monomial { degree: self.degree + other.degree, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = other.exps.clone();
        for (e, s) in exps.iter_mut().zip(&self.exps) {
            *e -= s;
        }
        Self::trimmed(exps)
    }

    fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() <= var {
            exps.resize(var + 1, 0);
        }
        exps[var] = exp;
        Self::trimmed(exps)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic, variable 0 most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero(p: u32) -> Self {
        Poly { p, terms: Vec::new() }
    }

    pub fn constant(p: u32, c: i64) -> Self {
        let c = c.rem_euclid(p as i64) as u32;
        if c == 0 {
            Self::zero(p)
        } else {
            Poly { p, terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn var(p: u32, index: usize) -> Self {
        Poly { p, terms: vec![(Monomial::var(index, 1), 1)] }
    }

    pub fn monomial(p: u32, m: Monomial, c: u32) -> Self {
        let c = c % p;
        if c == 0 {
            Self::zero(p)
        } else {
            Poly { p, terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = (*e + c % p) % p;
        }
        Self::from_map(p, acc)
    }

    fn from_map(p: u32, acc: BTreeMap<Monomial, u32>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| *c != 0).collect();
        Poly { p, terms }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.iter().filter_map(|(m, _)| m.max_var()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    /// True when no variable with index `>= from` occurs.
    pub fn free_of_vars_from(&self, from: usize) -> bool {
        self.max_var().is_none_or(|v| v < from)
    }

    pub fn neg(&self) -> Poly {
        let p = self.p;
        Poly { p, terms: self.terms.iter().map(|(m, c)| (m.clone(), (p - c) % p)).collect() }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let c = c % self.p;
        if c == 0 {
            return Poly::zero(self.p);
        }
        let p = self.p;
        Poly { p, terms: self.terms.iter().map(|(m, a)| (m.clone(), mul_mod(*a, c, p))).collect() }
    }

    pub fn mul_term(&self, mono: &Monomial, c: u32) -> Poly {
        let c = c % self.p;
        if c == 0 {
            return Poly::zero(self.p);
        }
        let p = self.p;
        // Multiplying by a monomial preserves the term order.
        Poly { p, terms: self.terms.iter().map(|(m, a)| (m.mul(mono), mul_mod(*a, c, p))).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let p = self.p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: u32| if negate { (p - c) % p } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), fix(*cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = (ca + fix(*cb)) % p;
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), fix(*c))));
        Poly { p, terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(c);
        }
        let p = self.p;
        let mut prods: Vec<(Monomial, u32)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), mul_mod(*ca, *cb, p)));
            }
        }
        prods.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, u32)> = Vec::with_capacity(prods.len());
        for (m, c) in prods {
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 = (last.1 + c) % p,
                _ => {
                    if terms.last().is_some_and(|t| t.1 == 0) {
                        terms.pop();
                    }
                    terms.push((m, c));
                }
            }
        }
        if terms.last().is_some_and(|t| t.1 == 0) {
            terms.pop();
        }
        Poly { p, terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(inv_mod(*c, self.p)),
        }
    }

    /// Exact quotient `self / d`; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(inv_mod(c, self.p)));
        }
        let p = self.p;
        let (dm, dc) = d.terms[0].clone();
        let dinv = inv_mod(dc, p);
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, u32)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quotient_of(&rm);
            let qc = mul_mod(rc, dinv, p);
            rem = rem.sub(&d.mul_term(&qm, qc));
            quot.push((qm, qc));
        }
        // Quotient terms are produced in decreasing order.
        Some(Poly { p, terms: quot })
    }

    /// Coefficients with respect to `var`, index = exponent of `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            parts[e].push((m.with_exp(var, 0), *c));
        }
        parts.into_iter().map(|t| Poly::from_terms(self.p, t)).collect()
    }

    pub fn from_univariate(p: u32, var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                terms.push((m.with_exp(var, e as u32), *a));
            }
        }
        Poly::from_terms(p, terms)
    }
}

/// Monic gcd of two multivariate polynomials.
///
/// Recursive primitive polynomial remainder sequence: the polynomials are
/// viewed as univariate in their largest variable over the ring of the
/// remaining ones. Coefficients live in `F_p`, so only degree growth needs
/// to be controlled, which content removal at every step does.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let p = a.p;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(p);
    }
    if a.terms.len() == 1 && b.terms.len() == 1 {
        let (ma, mb) = (&a.terms[0].0, &b.terms[0].0);
        let n = ma.exps.len().min(mb.exps.len());
        let e = (0..n).map(|i| ma.exp(i).min(mb.exp(i))).collect();
        return Poly::monomial(p, Monomial::from_exponents(e), 1);
    }
    if a == b {
        return a.monic();
    }
    let v = a.max_var().max(b.max_var()).expect("nonconstant");
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd(a, &content(&b.to_univariate(v)));
    }
    if db == 0 {
        return gcd(&content(&a.to_univariate(v)), b);
    }
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd(&ca, &cb);
    let pa = divide_coeffs(&ua, &ca);
    let pb = divide_coeffs(&ub, &cb);
    let g = primitive_prs(pa, pb);
    Poly::from_univariate(p, v, &g).mul(&c).monic()
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.p);
    }
    let g = gcd(a, b);
    a.div_exact(&g).expect("gcd divides").mul(b).monic()
}

/// Gcd of the coefficients of a univariate representation.
pub fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero(coeffs.first().map_or(2, |c| c.p));
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content with respect to the variables `>= from`: the gcd of the
/// coefficients, which only involve variables `< from`.
pub fn content_in_vars_from(a: &Poly, from: usize) -> Poly {
    if a.is_zero() {
        return Poly::zero(a.p);
    }
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in &a.terms {
        let head: Vec<u32> = m.exps.iter().take(from).copied().collect();
        let tail: Vec<u32> = m.exps.iter().enumerate().map(|(i, e)| if i < from { 0 } else { *e }).collect();
        groups
            .entry(Monomial::from_exponents(tail))
            .or_default()
            .push((Monomial::from_exponents(head), *c));
    }
    let coeffs: Vec<Poly> = groups.into_values().map(|t| Poly::from_terms(a.p, t)).collect();
    content(&coeffs)
}

fn divide_coeffs(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    coeffs.iter().map(|c| c.div_exact(d).expect("content divides")).collect()
}

fn trim(u: &mut Vec<Poly>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lc);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

fn primitive_prs(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    let p = a[0].p;
    loop {
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![Poly::one(p)];
        }
        let c = content(&r);
        a = b;
        b = divide_coeffs(&r, &c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![1, 1]);
        let c = Monomial::from_exponents(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::var(0, 1) > Monomial::var(1, 1));
    }

    #[test]
    fn characteristic_cancellation() {
        let a = x(0).add(&Poly::one(3));
        let b = x(0).scale(2).add(&Poly::constant(3, 2));
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1)).mul(&x(2));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.add(&Poly::one(3)).div_exact(&a).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = x(0).mul(&x(1)).add(&x(2)).add(&Poly::one(3));
        let a = g.mul(&x(0).add(&x(1).pow(2)));
        let b = g.mul(&x(2).sub(&Poly::constant(3, 1))).mul(&x(0));
        assert_eq!(gcd(&a, &b), g.monic());
        assert!(gcd(&x(0), &x(1)).is_one());
    }

    #[test]
    fn lcm_of_linear_factors() {
        let u = x(2);
        let u1 = x(2).add(&Poly::one(3));
        assert_eq!(lcm(&u, &u1), u.mul(&u1));
        assert_eq!(lcm(&u, &u.mul(&u1)), u.mul(&u1));
    }

    #[test]
    fn content_over_leading_vars() {
        // (s + t) * u^2 + (s + t) * s * u
        let st = x(0).add(&x(1));
        let a = st.mul(&x(2).pow(2)).add(&st.mul(&x(0)).mul(&x(2)));
        assert_eq!(content_in_vars_from(&a, 2), st);
    }
}
