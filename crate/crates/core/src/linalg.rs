//! Exact linear algebra over any [`Field`]: dense matrices, reduced row
//! echelon forms, kernels, and subspaces kept in canonical echelon form.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![e; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    /// Builds a matrix from equal-length rows; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let cols = rows.first().map_or(cols, |row| row.len());
        let data: Vec<E> = rows.into_iter().inspect(|row| assert_eq!(row.len(), cols)).flatten().collect();
        Matrix { rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<E>], rows: usize) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !f.is_zero(b) {
                        let v = f.add(out.get(i, j), &f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| f.add(self.get(i, j), o.get(i, j)))
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| f.sub(self.get(i, j), o.get(i, j)))
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(f, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|e| f.is_zero(e))
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

pub fn axpy<F: Field>(f: &F, y: &mut [F::Elem], a: &F::Elem, x: &[F::Elem]) {
    if f.is_zero(a) {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !f.is_zero(xi) {
            *yi = f.add(yi, &f.mul(a, xi));
        }
    }
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|e| f.is_zero(e))
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if pr != r {
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..m.rows {
            if i != r && !f.is_zero(m.get(i, c)) {
                let factor = f.neg(m.get(i, c));
                let start = i * m.cols;
                axpy(f, &mut m.data[start..start + m.cols], &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    rref(f, &mut m).len()
}

/// Basis of `{x | m x = 0}`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut e = Echelon::new(m.cols);
    for i in 0..m.rows {
        e.insert(f, m.row(i).to_vec());
    }
    e.kernel(f)
}

/// One solution of `a x = b` (free variables set to zero), if consistent.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = Matrix::from_fn(a.rows, n + 1, |i, j| if j < n { a.get(i, j).clone() } else { b[i].clone() });
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, n).clone();
    }
    Some(x)
}

pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
            return f.zero();
        };
        if pr != c {
            for j in 0..n {
                a.data.swap(pr * n + j, c * n + j);
            }
            d = f.neg(&d);
        }
        let piv = a.get(c, c).clone();
        d = f.mul(&d, &piv);
        let inv = f.inv(&piv).expect("nonzero pivot");
        let prow = a.row(c).to_vec();
        for i in c + 1..n {
            if !f.is_zero(a.get(i, c)) {
                let factor = f.neg(&f.mul(a.get(i, c), &inv));
                let start = i * n;
                axpy(f, &mut a.data[start..start + n], &factor, &prow);
            }
        }
    }
    d
}

/// An incrementally maintained reduced row echelon basis.
///
/// This is the canonical representation of a subspace of `E^n`: two
/// echelon bases span the same space iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon<E> {
    ambient: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

pub type Subspace<E> = Echelon<E>;

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn new(ambient: usize) -> Self {
        Echelon { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| unit_vector(f, ambient, i)).collect();
        Echelon { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span<F: Field<Elem = E>>(f: &F, ambient: usize, vectors: impl IntoIterator<Item = Vec<E>>) -> Self {
        let mut e = Self::new(ambient);
        for v in vectors {
            e.insert(f, v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current basis; the residual is zero iff `v` is in the span.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &mut [E]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[c]) {
                let factor = f.neg(&v[c]);
                axpy(f, v, &factor, row);
            }
        }
    }

    /// Adds `v` to the span; returns `true` when the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, mut v: Vec<E>) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(f, &mut v);
        let Some(c) = v.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&v[c]).expect("nonzero");
        for e in v.iter_mut().skip(c) {
            if !f.is_zero(e) {
                *e = f.mul(e, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                axpy(f, row, &factor, &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v);
        true
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        is_zero_vec(f, &w)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// The vector with the given coordinates in the echelon basis.
    pub fn combine<F: Field<Elem = E>>(&self, f: &F, coords: &[E]) -> Vec<E> {
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            axpy(f, &mut out, c, row);
        }
        out
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(f, r))
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(f, r.clone());
        }
        out
    }

    pub fn intersection<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        // Solve sum a_i u_i - sum b_j w_j = 0 and map back through the u_i.
        let r = self.dim();
        let mut cols: Vec<Vec<E>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|w| w.iter().map(|e| f.neg(e)).collect()));
        let m = Matrix::from_columns(&cols, self.ambient);
        let ker = kernel(f, &m);
        Self::span(f, self.ambient, ker.into_iter().map(|k| self.combine(f, &k[..r])))
    }

    /// Basis of the solutions `x` of `row · x = 0` for every basis row.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut out = Vec::new();
        for j in 0..self.ambient {
            if self.pivots.binary_search(&j).is_ok() {
                continue;
            }
            let mut x = vec![f.zero(); self.ambient];
            x[j] = f.one();
            for (row, &c) in self.rows.iter().zip(&self.pivots) {
                x[c] = f.neg(&row[j]);
            }
            out.push(x);
        }
        out
    }
}

pub fn unit_vector<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// Pivot columns of the first independent rows, scanning in order: returns
/// the indices of a maximal independent subfamily.
pub fn independent_subfamily<F: Field>(f: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Vec<usize> {
    let mut e = Echelon::new(ambient);
    vectors
        .iter()
        .enumerate()
        .filter_map(|(i, v)| e.insert(f, v.clone()).then_some(i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn m(rows: &[&[u32]]) -> Matrix<u32> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), 0)
    }

    #[test]
    fn rref_and_rank() {
        let f = f5();
        let mut a = m(&[&[1, 0, 2], &[0, 1, 1], &[1, 1, 0]]);
        let piv = rref(&f, &mut a);
        assert_eq!(piv, vec![0, 1, 2]);
        assert_eq!(a, Matrix::identity(&f, 3));
        assert_eq!(rank(&f, &m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = f5();
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let ker = kernel(&f, &a);
        assert_eq!(ker.len(), 2);
        for k in ker {
            assert!(is_zero_vec(&f, &a.mul_vec(&f, &k)));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = f5();
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(solve(&f, &a, &[1, 2]).is_none());
        let x = solve(&f, &a, &[3, 3]).unwrap();
        assert_eq!(a.mul_vec(&f, &x), vec![3, 3]);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let f = f5();
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(det(&f, &a), 0);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&f, &b), 4);
    }

    #[test]
    fn subspace_operations() {
        let f = f5();
        let u = Echelon::span(&f, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Echelon::span(&f, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersection(&f, &w);
        assert_eq!(i, Echelon::span(&f, 3, [vec![0, 1, 0]]));
        assert_eq!(u.sum(&f, &w).dim(), 3);
        assert_eq!(u.coordinates(&f, &[2, 3, 0]), Some(vec![2, 3]));
        assert_eq!(u.coordinates(&f, &[2, 3, 1]), None);
    }

    proptest! {
        #[test]
        fn echelon_is_canonical(vs in prop::collection::vec(prop::collection::vec(0u32..5, 4), 1..5), perm in 0usize..24) {
            let f = f5();
            let a = Echelon::span(&f, 4, vs.clone());
            let mut ws = vs.clone();
            ws.rotate_left(perm % vs.len());
            let b = Echelon::span(&f, 4, ws.into_iter().map(|v| v.iter().map(|x| (x * 2) % 5).collect::<Vec<_>>()));
            prop_assert_eq!(&a, &b);
            let mut mat = Matrix::from_rows(vs.clone(), 4);
            let piv = rref(&f, &mut mat);
            prop_assert_eq!(piv.len(), a.dim());
            prop_assert_eq!(piv.as_slice(), a.pivots());
        }
    }
}
