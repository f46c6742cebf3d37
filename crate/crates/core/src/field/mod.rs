//! Exact coefficient fields: `F_p`, and rational function fields
//! `F_p(v_1..v_m)` together with their extensions by specialization
//! variables `u_1..u_q`.

use core::fmt::Debug;

pub mod parse;
pub mod poly;
pub(crate) mod prime;
pub mod scalar;
pub mod spec;

pub use poly::{Monomial, Poly};
pub use prime::{is_prime, PrimeField};
pub use scalar::{FunctionField, Scalar};
pub use spec::{sample_point, EvalPoint, FieldSpec};

/// A field whose elements are plain values; the field object carries
/// whatever context the arithmetic needs.
pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn int(&self, n: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
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
}
