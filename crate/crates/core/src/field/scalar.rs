//! Elements of `F_p(v_1, .., v_k)` as reduced fractions.

use core::ops::{Add, Mul, Neg, Sub};

use super::poly::{gcd, Poly};
use super::prime::inv_mod;
use super::Field;
use crate::error::{Error, Result};

/// A reduced fraction `num / den` of polynomials over `F_p`.
///
/// Canonical form: `gcd(num, den) = 1`, the leading coefficient of `den`
/// (graded lex) is 1, and zero is `0/1`. Two scalars are equal as field
/// elements iff they are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero(p: u32) -> Self {
        Scalar { num: Poly::zero(p), den: Poly::one(p) }
    }

    pub fn one(p: u32) -> Self {
        Scalar { num: Poly::one(p), den: Poly::one(p) }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Scalar { num: Poly::constant(p, n), den: Poly::one(p) }
    }

    pub fn var(p: u32, index: usize) -> Self {
        Scalar { num: Poly::var(p, index), den: Poly::one(p) }
    }

    pub fn from_poly(num: Poly) -> Self {
        let p = num.characteristic();
        Scalar { num, den: Poly::one(p) }
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let p = num.characteristic();
        if num.is_zero() {
            return Self::zero(p);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading_coeff();
        if lc == 1 {
            Scalar { num, den }
        } else {
            let c = inv_mod(lc, p);
            Scalar { num: num.scale(c), den: den.scale(c) }
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.num.characteristic()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value in `F_p` if this scalar is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.num.max_var().max(self.den.max_var())
    }

    /// True when no variable with index `>= from` occurs in numerator or denominator.
    pub fn free_of_vars_from(&self, from: usize) -> bool {
        self.num.free_of_vars_from(from) && self.den.free_of_vars_from(from)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        // Powers of a reduced fraction stay reduced.
        let num = self.num.pow(e);
        let den = self.den.pow(e);
        Scalar { num, den }
    }

    /// Multiplication by an integer.
    pub fn scale(&self, c: i64) -> Scalar {
        let p = self.characteristic();
        let c = c.rem_euclid(p as i64) as u32;
        if c == 0 {
            return Scalar::zero(p);
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() || o.den.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Scalar { num, den: self.den.mul(&o.den) };
        }
        // With g = gcd(b, d): a/b + c/d = (a d' + c b') / (b' d' g), where
        // b = b' g, d = d' g; only g can share factors with the new numerator.
        let g = gcd(&self.den, &o.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return Scalar::zero(self.characteristic());
        }
        let g2 = gcd(&num, &g);
        let num = num.div_exact(&g2).expect("gcd divides");
        let den = b1.mul(&d1).mul(&g.div_exact(&g2).expect("gcd divides"));
        let c = inv_mod(den.leading_coeff(), self.characteristic());
        Scalar { num: num.scale(c), den: den.scale(c) }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero(self.characteristic());
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        // Cross-cancel before multiplying to keep the final gcd small.
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff();
        let c = inv_mod(lc, self.characteristic());
        Scalar { num: num.scale(c), den: den.scale(c) }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// `F_p(v_1, ..)` as a [`Field`] over [`Scalar`] elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionField {
    p: u32,
}

impl FunctionField {
    pub fn new(p: u32) -> Self {
        FunctionField { p }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
}

impl Field for FunctionField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero(self.p)
    }
    fn one(&self) -> Scalar {
        Scalar::one(self.p)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        a.inv().ok()
    }
    fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(self.p, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: usize) -> Scalar {
        Scalar::var(3, i)
    }

    #[test]
    fn inverse_pair() {
        let (s, t) = (v(0), v(1));
        let a = s.checked_div(&t).unwrap();
        let b = t.checked_div(&s).unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn char_three_cancellation() {
        let a = &v(0) + &Scalar::one(3);
        let b = &v(0).scale(2) + &Scalar::from_int(3, 2);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn opposite_denominators_cancel() {
        // Oracle: 1/(s-t) + 1/(t-s) = (t-s + s-t) / ((s-t)(t-s)) = 0.
        let one = Scalar::one(3);
        let st = &v(0) - &v(1);
        let ts = &v(1) - &v(0);
        let sum = &one.checked_div(&st).unwrap() + &one.checked_div(&ts).unwrap();
        assert_eq!(sum, Scalar::zero(3));
        assert_eq!(sum.denominator(), &Poly::one(3));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Scalar::one(3).checked_div(&Scalar::zero(3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn denominators_are_monic() {
        let a = Scalar::one(5).checked_div(&Scalar::var(5, 0).scale(3)).unwrap();
        assert_eq!(a.denominator().leading_coeff(), 1);
        assert_eq!(a.numerator().as_constant(), Some(2));
    }

    fn small_poly() -> impl Strategy<Value = Scalar> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..3), 0..4).prop_map(|ts| {
            let mut acc = Scalar::zero(3);
            for (c, a, b) in ts {
                let term = &(&v(0).pow(a) * &v(1).pow(b)) * &Scalar::from_int(3, c as i64);
                acc = &acc + &term;
            }
            acc
        })
    }

    fn small_frac() -> impl Strategy<Value = Scalar> {
        (small_poly(), small_poly()).prop_filter_map("nonzero den", |(n, d)| n.checked_div(&d).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in small_frac(), b in small_frac(), c in small_frac()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, Scalar::zero(3));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_forms_are_unique(a in small_frac(), b in small_frac(), c in small_frac()) {
            // (a*c)/(b*c) must be bit-identical to a/b once reduced.
            prop_assume!(!b.is_zero() && !c.is_zero());
            let lhs = (&a * &c).checked_div(&(&b * &c)).unwrap();
            let rhs = a.checked_div(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
