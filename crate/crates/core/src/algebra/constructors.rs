//! Concrete tensors: symbol algebras, matrix algebras, polynomial quotients.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::StructureTensor;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Basis index of `x^i y^j` in [`symbol_algebra`].
pub fn symbol_index(p: u32, i: usize, j: usize) -> usize {
    i * p as usize + j
}

/// Binomial coefficients `C(n, 0..=n)` mod `p`.
fn binomial_row(n: usize, p: u64) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = (row[k - 1] + row[k]) % p;
        }
        row = next;
    }
    row
}

/// The algebra on `x, y` with `x^p - x = a`, `y^p = b`, `y x = (x + 1) y`,
/// with basis `x^i y^j` at index `i p + j`.
pub fn symbol_algebra(spec: &FieldSpec, a: &Scalar, b: &Scalar) -> Result<StructureTensor> {
    let p = spec.characteristic();
    if p < 3 {
        return Err(Error::InvalidParameters(format!("symbol algebras need p >= 3, got {p}")));
    }
    for (name, c) in [("a", a), ("b", b)] {
        if c.characteristic() != p || !spec.in_base(c) {
            return Err(Error::InvalidParameters(format!("parameter {name} must lie in the base field")));
        }
    }
    if b.is_zero() {
        return Err(Error::InvalidParameters("parameter b must be nonzero".into()));
    }
    let n = p as usize;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    // x^i (x + j)^k as a polynomial in x, reduced by x^p = x + a.
                    let mut xs = vec![Scalar::zero(p); 2 * n - 1];
                    let binom = binomial_row(k, p as u64);
                    for (r, c) in binom.iter().enumerate() {
                        let term = &spec.scalar(*c as i64) * &spec.scalar(j as i64).pow((k - r) as u32);
                        xs[i + r] = &xs[i + r] + &term;
                    }
                    for d in (n..2 * n - 1).rev() {
                        let c = core::mem::replace(&mut xs[d], Scalar::zero(p));
                        if !c.is_zero() {
                            xs[d - n + 1] = &xs[d - n + 1] + &c;
                            xs[d - n] = &xs[d - n] + &(&c * a);
                        }
                    }
                    let (ye, factor) = if j + l >= n { (j + l - n, b.clone()) } else { (j + l, Scalar::one(p)) };
                    for (r, c) in xs.iter().take(n).enumerate() {
                        let c = c * &factor;
                        if !c.is_zero() {
                            entries.push((symbol_index(p, i, j), symbol_index(p, k, l), symbol_index(p, r, ye), c));
                        }
                    }
                }
            }
        }
    }
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| monomial_name(&[("x", i), ("y", j)]))
        .collect();
    StructureTensor::new(spec.clone(), n * n, 0, entries)?.with_basis_names(names)
}

fn monomial_name(factors: &[(&str, usize)]) -> String {
    let parts: Vec<String> = factors
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { String::from(*v) } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `M_n(Z)` on the basis `1, E_ab` for `(a, b) ≠ (n-1, n-1)`; the identity
/// sits at index 0 and replaces the last diagonal unit.
pub fn matrix_algebra(spec: &FieldSpec, n: usize) -> Result<StructureTensor> {
    if n == 0 {
        return Err(Error::InvalidParameters("matrix size must be positive".into()));
    }
    let p = spec.characteristic();
    let last = n * n - 1;
    // Position of E_ab in the adapted basis.
    let slot = |a: usize, b: usize| if a * n + b == last { 0 } else { a * n + b + 1 };
    let matrix_of = |idx: usize| -> Vec<i64> {
        let mut m = vec![0i64; n * n];
        if idx == 0 {
            for a in 0..n {
                m[a * n + a] = 1;
            }
        } else {
            m[idx - 1] = 1;
        }
        m
    };
    // Coordinates of a matrix in the adapted basis.
    let coords_of = |m: &[i64]| -> Vec<i64> {
        let mut c = vec![0i64; n * n];
        let corner = m[last];
        c[0] = corner;
        for a in 0..n {
            for b in 0..n {
                if a * n + b == last {
                    continue;
                }
                c[slot(a, b)] = if a == b { m[a * n + b] - corner } else { m[a * n + b] };
            }
        }
        c
    };
    let mut entries = Vec::new();
    for i in 0..n * n {
        let mi = matrix_of(i);
        for j in 0..n * n {
            let mj = matrix_of(j);
            let mut prod = vec![0i64; n * n];
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        prod[a * n + c] += mi[a * n + b] * mj[b * n + c];
                    }
                }
            }
            for (k, c) in coords_of(&prod).into_iter().enumerate() {
                let c = Scalar::from_int(p, c);
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    let mut names = vec![String::from("1")];
    for idx in 0..last {
        names.push(format!("E{}{}", idx / n + 1, idx % n + 1));
    }
    StructureTensor::new(spec.clone(), n * n, 0, entries)?.with_basis_names(names)
}

/// `Z[x]/(f)` for monic `f = x^n + Σ_{i<n} c_i x^i`, given `c_0..c_{n-1}`.
pub fn polynomial_quotient(spec: &FieldSpec, lower_coeffs: &[Scalar]) -> Result<StructureTensor> {
    let n = lower_coeffs.len();
    if n == 0 {
        return Err(Error::InvalidParameters("modulus must have positive degree".into()));
    }
    let p = spec.characteristic();
    if lower_coeffs.iter().any(|c| c.characteristic() != p || !spec.in_base(c)) {
        return Err(Error::InvalidParameters("modulus coefficients must lie in the base field".into()));
    }
    // x^d reduced for d < 2n - 1.
    let mut reductions: Vec<Vec<Scalar>> = Vec::new();
    for d in 0..2 * n - 1 {
        let mut v = vec![Scalar::zero(p); n];
        if d < n {
            v[d] = Scalar::one(p);
        } else {
            let prev: &Vec<Scalar> = &reductions[d - 1];
            let top = prev[n - 1].clone();
            for k in (1..n).rev() {
                v[k] = &prev[k - 1] - &(&top * &lower_coeffs[k]);
            }
            v[0] = -&(&top * &lower_coeffs[0]);
        }
        reductions.push(v);
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in reductions[i + j].iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c.clone()));
                }
            }
        }
    }
    let names = (0..n).map(|i| monomial_name(&[("x", i)])).collect();
    StructureTensor::new(spec.clone(), n, 0, entries)?.with_basis_names(names)
}
