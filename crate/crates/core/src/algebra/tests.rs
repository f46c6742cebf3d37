use super::*;
use proptest::prelude::*;

fn spec() -> FieldSpec {
    FieldSpec::new(3, &["s", "t"], &[] as &[&str]).unwrap()
}

fn sym() -> StructureTensor {
    let sp = spec();
    symbol_algebra(&sp, &sp.v("s"), &sp.v("t")).unwrap()
}

fn xy(t: &StructureTensor, i: usize, j: usize) -> AlgElement {
    t.basis(symbol_index(3, i, j))
}

/// Oracle for the symbol algebra: words in x, y rewritten with
/// y x -> x y + y, x^3 -> x + s, y^3 -> t, tracked as a map x^i y^j -> coeff.
fn rewrite_word(word: &[char]) -> Vec<((usize, usize), Scalar)> {
    let sp = spec();
    // Normal forms: list of (i, j, coeff) with i, j < 3.
    let mut acc: Vec<((usize, usize), Scalar)> = vec![((0, 0), sp.scalar(1))];
    for &c in word {
        let mut next: Vec<((usize, usize), Scalar)> = Vec::new();
        let push = |k: (usize, usize), v: Scalar, next: &mut Vec<((usize, usize), Scalar)>| {
            if let Some(e) = next.iter_mut().find(|e| e.0 == k) {
                e.1 = &e.1 + &v;
            } else {
                next.push((k, v));
            }
        };
        for ((i, j), coeff) in acc {
            match c {
                'y' => {
                    if j == 2 {
                        push((i, 0), &coeff * &sp.v("t"), &mut next);
                    } else {
                        push((i, j + 1), coeff, &mut next);
                    }
                }
                _ => {
                    // x^i y^j x = x^i (x + j) y^j
                    let js = sp.scalar(j as i64);
                    push((i, j), &coeff * &js, &mut next);
                    if i == 2 {
                        push((1, j), coeff.clone(), &mut next);
                        push((0, j), &coeff * &sp.v("s"), &mut next);
                    } else {
                        push((i + 1, j), coeff, &mut next);
                    }
                }
            }
        }
        acc = next;
    }
    acc.retain(|e| !e.1.is_zero());
    acc
}

fn word_element(t: &StructureTensor, word: &[char]) -> AlgElement {
    let mut e = t.zero();
    for ((i, j), c) in rewrite_word(word) {
        e = t.add(&e, &t.scale(&c, &xy(t, i, j)));
    }
    e
}

#[test]
fn symbol_relations() {
    let t = sym();
    let (x, y) = (xy(&t, 1, 0), xy(&t, 0, 1));
    assert_eq!(t.mul(&y, &x), t.add(&xy(&t, 1, 1), &y));
    assert_eq!(t.mul(&y, &xy(&t, 0, 2)), t.scalar(&spec().v("t")));
    assert_eq!(t.alg_mul(&t.one(), &x).unwrap(), x);
    assert_eq!(t.pow(&x, 3), t.add(&x, &t.scalar(&spec().v("s"))));
    assert!(t.alg_mul(&x, &AlgElement::from_coords(vec![])).is_err());
}

#[test]
fn table_matches_rewriting_oracle() {
    let t = sym();
    let words: [&[char]; 5] = [&['y', 'x'], &['y', 'y', 'x', 'x'], &['x', 'y', 'x', 'y', 'y'], &['y', 'x', 'x', 'x'], &['y', 'y', 'y', 'y', 'x']];
    for w in words {
        let mut prod = t.one();
        for &c in w {
            prod = t.mul(&prod, &if c == 'x' { xy(&t, 1, 0) } else { xy(&t, 0, 1) });
        }
        assert_eq!(prod, word_element(&t, w), "word {w:?}");
    }
}

#[test]
fn conjugation_shifts_x() {
    let t = sym();
    let (x, y) = (xy(&t, 1, 0), xy(&t, 0, 1));
    let yinv = t.alg_inverse(&y).unwrap();
    let conj = t.mul(&t.mul(&y, &x), &yinv);
    assert_eq!(conj, t.add(&x, &t.one()));
}

#[test]
fn inverses() {
    let t = sym();
    let sp = spec();
    assert_eq!(t.alg_inverse(&t.one()).unwrap(), t.one());
    let yinv = t.alg_inverse(&xy(&t, 0, 1)).unwrap();
    let expect = t.scale(&sp.scalar(1).checked_div(&sp.v("t")).unwrap(), &xy(&t, 0, 2));
    assert_eq!(yinv, expect);

    let m2 = matrix_algebra(&sp, 2).unwrap();
    let e11 = m2.basis(1);
    assert_eq!(m2.alg_inverse(&e11), Err(Error::NotInvertible));

    let split = symbol_algebra(&sp, &sp.scalar(0), &sp.scalar(1)).unwrap();
    assert_eq!(split.alg_inverse(&split.basis(symbol_index(3, 1, 0))), Err(Error::NotInvertible));
}

#[test]
fn centres() {
    let t = sym();
    let c = t.centre();
    assert_eq!(c.dim(), 1);
    assert!(t.contains(&c, &t.one()));

    let m2 = matrix_algebra(&spec(), 2).unwrap();
    let c2 = m2.centre();
    assert_eq!(c2.dim(), 1);
    assert!(m2.contains(&c2, &m2.one()));

    let sp = spec();
    let comm = polynomial_quotient(&sp, &[sp.v("s"), sp.scalar(0), sp.scalar(1)]).unwrap();
    assert_eq!(comm.centre().dim(), 3);
}

#[test]
fn centralizers() {
    let t = sym();
    let f = t.field();
    let x = xy(&t, 1, 0);
    let cx = t.centralizer(&t.span(core::slice::from_ref(&x)));
    let expect = t.span(&[t.one(), x.clone(), xy(&t, 2, 0)]);
    assert_eq!(cx, expect);
    let all = Subspace::full(&f, t.dim());
    assert_eq!(t.centralizer(&t.span(&[t.one()])), all);
    assert_eq!(t.centralizer(&all), t.centre());
    // Double centralizer contains the original space.
    let cc = t.centralizer(&cx);
    assert!(t.span(&[x]).is_subspace_of(&f, &cc));
}

#[test]
fn minimal_polynomials() {
    let t = sym();
    let sp = spec();
    let px = t.min_poly(&xy(&t, 1, 0));
    assert_eq!(px.coeffs(), &[-&sp.v("s"), sp.scalar(-1), sp.scalar(0), sp.scalar(1)]);
    assert_eq!(px.format(&sp, "T"), "T^3 + 2*T + 2*s");
    let py = t.min_poly(&xy(&t, 0, 1));
    assert_eq!(py.coeffs(), &[-&sp.v("t"), sp.scalar(0), sp.scalar(0), sp.scalar(1)]);
    let p1 = t.min_poly(&t.one());
    assert_eq!(p1.coeffs(), &[sp.scalar(-1), sp.scalar(1)]);
    let z = t.add(&xy(&t, 1, 1), &xy(&t, 2, 0));
    assert!(t.eval_poly(&t.min_poly(&z), &z).is_zero());
}

#[test]
fn generated_subfields() {
    let t = sym();
    let x = xy(&t, 1, 0);
    let k = t.generate_subfield(core::slice::from_ref(&x)).unwrap();
    assert_eq!(k.space, t.span(&[t.one(), x.clone(), xy(&t, 2, 0)]));
    assert!(k.is_field);
    assert_eq!(k.spanning.len(), 3);
    let one = t.generate_subfield(&[t.one()]).unwrap();
    assert_eq!(one.dim(), 1);
    assert_eq!(t.generate_subfield(&[x, xy(&t, 0, 1)]), Err(Error::NotCommutative(0, 1)));
}

#[test]
fn validation_rejects_bad_tables() {
    let sp = spec();
    let one = sp.scalar(1);
    // Missing b1*b1 is fine, a zero entry or a non-unit is not.
    assert!(StructureTensor::new(sp.clone(), 2, 0, vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone())]).is_ok());
    assert!(StructureTensor::new(sp.clone(), 2, 0, vec![(0, 0, 0, one.clone()), (0, 1, 1, sp.scalar(0))]).is_err());
    assert!(StructureTensor::new(sp.clone(), 2, 0, vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone())]).is_err());
    assert!(StructureTensor::new(sp.clone(), 2, 0, vec![(0, 0, 5, one.clone())]).is_err());
    // b1*b1 = b0 + b1 with b1*b0 shifted breaks associativity in a 3-dim table.
    let bad = vec![
        (0, 0, 0, one.clone()),
        (0, 1, 1, one.clone()),
        (1, 0, 1, one.clone()),
        (0, 2, 2, one.clone()),
        (2, 0, 2, one.clone()),
        (1, 1, 2, one.clone()),
        (1, 2, 1, one.clone()),
    ];
    assert!(matches!(StructureTensor::new(sp.clone(), 3, 0, bad), Err(Error::NotAssociative(..))));
    assert!(symbol_algebra(&sp, &sp.v("s"), &sp.scalar(0)).is_err());
    let ext = FieldSpec::new(3, &["s", "t"], &["u"]).unwrap();
    assert!(symbol_algebra(&ext, &ext.v("u"), &ext.v("t")).is_err());
}

#[test]
fn base_change_keeps_dimension() {
    let t = sym();
    let ext = spec().with_ext_vars(&["u"]).unwrap();
    let tx = t.with_field(ext.clone()).unwrap();
    assert_eq!(tx.dim(), 9);
    assert_eq!(tx.centre().dim(), 1);
    let w = tx.element({
        let mut c = vec![ext.scalar(0); 9];
        c[symbol_index(3, 1, 0)] = ext.v("u");
        c
    });
    assert!(w.is_ok());
    assert!(t.element(w.unwrap().into_coords()).is_err());
}

#[test]
fn every_constructor_is_associative() {
    let sp = FieldSpec::new(5, &["s", "t"], &[] as &[&str]).unwrap();
    let t = symbol_algebra(&sp, &sp.v("s"), &sp.v("t")).unwrap();
    assert_eq!(t.dim(), 25);
    assert_eq!(t.associativity_defect(), None);
    assert_eq!(matrix_algebra(&sp, 3).unwrap().associativity_defect(), None);
}

#[test]
fn element_formatting() {
    let t = sym();
    let e = t.add(&t.scale(&spec().v("s"), &xy(&t, 1, 0)), &xy(&t, 0, 2));
    assert_eq!(t.format_element(&e), "y^2 + s*x");
}

fn small_element() -> impl Strategy<Value = AlgElement> {
    prop::collection::vec((0usize..9, 1i64..3, 0usize..3), 1..4).prop_map(|cs| {
        let sp = spec();
        let mut coords = vec![sp.scalar(0); 9];
        for (k, c, v) in cs {
            coords[k] = match v {
                0 => sp.scalar(c),
                1 => &sp.scalar(c) * &sp.v("s"),
                _ => &sp.scalar(c) * &sp.v("t"),
            };
        }
        AlgElement::from_coords(coords)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn centralizers_contain_centre_and_min_polys_vanish(a in small_element(), b in small_element()) {
        let t = sym();
        let f = t.field();
        let c = t.centralizer(&t.span(&[a.clone(), b.clone()]));
        prop_assert!(t.centre().is_subspace_of(&f, &c));
        prop_assert!(t.eval_poly(&t.min_poly(&a), &a).is_zero());
        prop_assert_eq!(t.mul(&t.mul(&a, &b), &a), t.mul(&a, &t.mul(&b, &a)));
        if !a.is_zero() {
            let inv = t.alg_inverse(&a).unwrap();
            prop_assert_eq!(t.mul(&a, &inv), t.one());
        }
    }
}
