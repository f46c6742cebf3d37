//! Field declarations, evaluation points and seeded sampling of points.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::poly::{Monomial, Poly};
use super::prime::is_prime;
use super::scalar::{FunctionField, Scalar};
use crate::error::{Error, Result};

/// Declares `Z = F_p(base_vars)` and the specialization variables `ext_vars`.
///
/// Variable indices are global: base variables come first, then the
/// extension variables, so `base_vars.len() + k` is the index of `u_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    base_vars: Vec<String>,
    ext_vars: Vec<String>,
}

impl FieldSpec {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(p: u32, base_vars: &[S], ext_vars: &[T]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameters(alloc::format!("{p} is not prime")));
        }
        let base_vars: Vec<String> = base_vars.iter().map(|s| s.as_ref().to_string()).collect();
        let ext_vars: Vec<String> = ext_vars.iter().map(|s| s.as_ref().to_string()).collect();
        let all: Vec<&String> = base_vars.iter().chain(&ext_vars).collect();
        for (i, a) in all.iter().enumerate() {
            if !is_identifier(a) {
                return Err(Error::InvalidParameters(alloc::format!("bad variable name {a:?}")));
            }
            if all[..i].contains(a) {
                return Err(Error::InvalidParameters(alloc::format!("duplicate variable {a}")));
            }
        }
        Ok(FieldSpec { p, base_vars, ext_vars })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn ext_vars(&self) -> &[String] {
        &self.ext_vars
    }

    pub fn num_base_vars(&self) -> usize {
        self.base_vars.len()
    }

    pub fn num_ext_vars(&self) -> usize {
        self.ext_vars.len()
    }

    pub fn var_names(&self) -> impl Iterator<Item = &str> {
        self.base_vars.iter().chain(&self.ext_vars).map(String::as_str)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names().position(|v| v == name)
    }

    pub fn ext_var_index(&self, k: usize) -> usize {
        self.base_vars.len() + k
    }

    pub fn field(&self) -> FunctionField {
        FunctionField::new(self.p)
    }

    /// The same base field without specialization variables.
    pub fn base(&self) -> FieldSpec {
        FieldSpec { p: self.p, base_vars: self.base_vars.clone(), ext_vars: Vec::new() }
    }

    pub fn with_ext_vars<S: AsRef<str>>(&self, ext: &[S]) -> Result<FieldSpec> {
        FieldSpec::new(self.p, &self.base_vars, &ext.iter().map(|s| s.as_ref()).collect::<Vec<_>>())
    }

    /// True when `a` lies in `Z`, i.e. involves no extension variable.
    pub fn in_base(&self, a: &Scalar) -> bool {
        a.free_of_vars_from(self.base_vars.len())
    }

    pub fn is_declared(&self, a: &Scalar) -> bool {
        a.free_of_vars_from(self.base_vars.len() + self.ext_vars.len())
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        Scalar::from_int(self.p, n)
    }

    /// Variable by name, panicking on undeclared names (test and corpus helper).
    pub fn v(&self, name: &str) -> Scalar {
        let i = self.var_index(name).unwrap_or_else(|| panic!("undeclared variable {name}"));
        Scalar::var(self.p, i)
    }

    pub fn parse(&self, src: &str) -> Result<Scalar> {
        super::parse::parse_scalar(self, src)
    }

    pub fn format(&self, a: &Scalar) -> String {
        super::parse::format_scalar(self, a)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A point `λ` of `X`: one value in `Z` for each extension variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvalPoint {
    values: Vec<Scalar>,
}

impl EvalPoint {
    pub fn new(spec: &FieldSpec, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != spec.num_ext_vars() {
            return Err(Error::DimensionMismatch { expected: spec.num_ext_vars(), found: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !spec.in_base(v)) {
            return Err(Error::InvalidParameters(alloc::format!(
                "value for {} involves extension variables",
                spec.ext_vars[i]
            )));
        }
        Ok(EvalPoint { values })
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Evaluates `f` at this point.
    pub fn evaluate(&self, spec: &FieldSpec, f: &Scalar) -> Result<Scalar> {
        evaluate(spec, f, self)
    }
}

fn eval_poly(spec: &FieldSpec, f: &Poly, point: &EvalPoint) -> Scalar {
    let p = spec.characteristic();
    let m = spec.num_base_vars();
    let mut acc = Scalar::zero(p);
    for (mono, c) in f.terms() {
        let exps = mono.exponents();
        let base = Monomial::from_exponents(exps.iter().take(m).copied().collect());
        let mut term = Scalar::from_poly(Poly::monomial(p, base, *c));
        for (k, &e) in exps.iter().enumerate().skip(m) {
            if e > 0 {
                term = &term * &point.values[k - m].pow(e);
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// The evaluation morphism `f(u_1..u_q) ↦ f(λ_1..λ_q)`.
pub fn evaluate(spec: &FieldSpec, f: &Scalar, point: &EvalPoint) -> Result<Scalar> {
    if spec.in_base(f) {
        return Ok(f.clone());
    }
    let den = eval_poly(spec, f.denominator(), point);
    if den.is_zero() {
        return Err(Error::PoleAtPoint);
    }
    let num = eval_poly(spec, f.numerator(), point);
    num.checked_div(&den)
}

fn monomials_up_to(nvars: usize, height: u32) -> Vec<Monomial> {
    fn rec(var: usize, nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == nvars {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(var + 1, nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, nvars, height, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Deterministic pseudo-random point whose coordinates are polynomials in
/// the base variables of total degree at most `height`, with coefficients
/// drawn uniformly from `F_p`.
pub fn sample_point(spec: &FieldSpec, seed: u64, height: u32) -> Result<EvalPoint> {
    if height == 0 {
        return Err(Error::InvalidParameters("height must be at least 1".to_string()));
    }
    let p = spec.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monos = monomials_up_to(spec.num_base_vars(), height);
    // Rejection bound removing the modulo bias.
    let zone = u32::MAX - u32::MAX % p;
    let mut draw = || loop {
        let r = rng.next_u32();
        if r < zone {
            return r % p;
        }
    };
    let values = (0..spec.num_ext_vars())
        .map(|_| Scalar::from_poly(Poly::from_terms(p, monos.iter().map(|m| (m.clone(), draw())))))
        .collect();
    EvalPoint::new(spec, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> FieldSpec {
        FieldSpec::new(3, &["s", "t"], &["u"]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(FieldSpec::new(4, &["s"], &[] as &[&str]).is_err());
        assert!(FieldSpec::new(3, &["s", "s"], &[] as &[&str]).is_err());
        assert!(FieldSpec::new(3, &["s"], &["s"]).is_err());
        assert!(FieldSpec::new(3, &["2x"], &[] as &[&str]).is_err());
    }

    #[test]
    fn evaluate_substitutes_mod_p() {
        let sp = spec();
        let u = sp.v("u");
        let f = &u.pow(2) + &u;
        let lam = EvalPoint::new(&sp, alloc::vec![sp.scalar(1)]).unwrap();
        assert_eq!(evaluate(&sp, &f, &lam).unwrap(), sp.scalar(2));
    }

    #[test]
    fn evaluate_at_zero_and_pole() {
        let sp = spec();
        let zero = EvalPoint::new(&sp, alloc::vec![sp.scalar(0)]).unwrap();
        let f = &sp.v("s") * &sp.v("u");
        assert!(evaluate(&sp, &f, &zero).unwrap().is_zero());
        let g = sp.scalar(1).checked_div(&sp.v("u")).unwrap();
        assert_eq!(evaluate(&sp, &g, &zero), Err(Error::PoleAtPoint));
    }

    #[test]
    fn point_values_must_lie_in_base() {
        let sp = spec();
        assert!(EvalPoint::new(&sp, alloc::vec![sp.v("u")]).is_err());
        assert!(EvalPoint::new(&sp, alloc::vec![]).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        let sp = spec();
        let a = sample_point(&sp, 0, 1).unwrap();
        let b = sample_point(&sp, 0, 1).unwrap();
        assert_eq!(a, b);
        for v in a.values() {
            assert!(v.numerator().total_degree() <= 1);
            assert!(v.is_polynomial());
        }
        assert!(sample_point(&sp, 0, 0).is_err());
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(m + h, h) monomials of degree <= h in m variables.
        assert_eq!(monomials_up_to(2, 1).len(), 3);
        assert_eq!(monomials_up_to(1, 2).len(), 3);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }
}
