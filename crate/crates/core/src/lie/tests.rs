use super::*;
use crate::linalg::Subspace;
use proptest::prelude::*;

fn fp(p: u32) -> FieldSpec {
    FieldSpec::new(p, &[] as &[&str], &[] as &[&str]).unwrap()
}

fn c(p: u32, n: i64) -> Scalar {
    Scalar::from_int(p, n)
}

/// Row-major `n × n` product.
fn mat_mul(n: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let p = a[0].characteristic();
    let mut out = vec![Scalar::zero(p); n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = &out[i * n + j] + &(&a[i * n + k] * &b[k * n + j]);
            }
        }
    }
    out
}

fn mat_pow(n: usize, a: &[Scalar], e: u32) -> Vec<Scalar> {
    let p = a[0].characteristic();
    let mut acc = gl_element(n, &(0..n).map(|i| (i, i, Scalar::one(p))).collect::<Vec<_>>(), p);
    for _ in 0..e {
        acc = mat_mul(n, &acc, a);
    }
    acc
}

#[test]
fn binomials_match_exact_arithmetic() {
    let mut row: Vec<u128> = vec![1];
    for n in 0..=40i64 {
        for p in [3u32, 5, 7] {
            for k in 0..=n {
                assert_eq!(binom_mod_p(n, k, p) as u128, row[k as usize] % p as u128, "C({n},{k}) mod {p}");
            }
            assert_eq!(binom_mod_p(n, -1, p), 0);
            assert_eq!(binom_mod_p(n, n + 1, p), 0);
        }
        let mut next = vec![1u128; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    assert_eq!(binom_mod_p(4, 2, 3), 0);
    assert_eq!(binom_mod_p(7, 3, 5), 0);
    assert_eq!(binom_mod_p(9, 0, 5), 1);
    // C(-1, k) = (-1)^k.
    assert_eq!(binom_mod_p(-1, 3, 5), 4);
    assert_eq!(binom_mod_p(-1, 2, 5), 1);
}

#[test]
fn zassenhaus_brackets() {
    let w = zassenhaus(3, 1).unwrap();
    assert_eq!(w.dim(), 3);
    let e = |i: i64| w.basis((i + 1) as usize);
    assert_eq!(w.bracket(&e(0), &e(1)), w.basis(2).iter().map(|x| x.scale(2)).collect::<Vec<_>>());
    assert_eq!(w.bracket(&e(-1), &e(1)), w.basis(1).iter().map(|x| x.scale(2)).collect::<Vec<_>>());
    for i in -1..=1 {
        assert!(w.bracket(&e(i), &e(i)).iter().all(|x| x.is_zero()));
    }
    for (p, m) in [(3, 1), (5, 1), (3, 2), (7, 1)] {
        let w = zassenhaus(p, m).unwrap();
        assert_eq!(w.dim(), (p as usize).pow(m));
        assert!(w.jacobi_check().holds);
    }
    assert!(matches!(zassenhaus(2, 1), Err(Error::InvalidParameters(_))));
    assert!(matches!(zassenhaus(9, 1), Err(Error::InvalidParameters(_))));
    assert!(matches!(zassenhaus(3, 0), Err(Error::InvalidParameters(_))));
}

#[test]
fn jacobi_detects_perturbation() {
    let w = zassenhaus(5, 1).unwrap();
    let mut entries = w.entries().to_vec();
    let pos = entries.iter().position(|(i, j, _, _)| (*i, *j) == (1, 3)).unwrap();
    entries[pos].3 = -&entries[pos].3;
    let broken = LiePresentation::from_table(fp(5), 5, entries.clone()).unwrap();
    let check = broken.jacobi_check();
    assert!(!check.holds);
    let (i, j, k) = check.witness.unwrap();
    assert!(i < j && j < k);
    assert!(matches!(LiePresentation::new(fp(5), 5, entries), Err(Error::JacobiFailure(..))));
    assert!(abelian(&fp(3), 4).unwrap().jacobi_check().holds);
}

#[test]
fn table_validation() {
    let one = c(3, 1);
    assert!(LiePresentation::from_table(fp(3), 2, vec![(0, 0, 1, one.clone())]).is_err());
    assert!(LiePresentation::from_table(fp(3), 2, vec![(0, 2, 1, one.clone())]).is_err());
    let conflicting = vec![(0, 1, 1, one.clone()), (1, 0, 1, one.clone())];
    assert!(LiePresentation::from_table(fp(3), 2, conflicting).is_err());
    let consistent = vec![(0, 1, 1, one.clone()), (1, 0, 1, c(3, 2))];
    assert_eq!(
        LiePresentation::from_table(fp(3), 2, consistent).unwrap().entries(),
        &[(0, 1, 1, one)]
    );
}

#[test]
fn derived_series_examples() {
    let b = two_dim_solvable(&fp(3)).unwrap();
    let s = b.derived_series();
    assert_eq!(s.dims(), vec![2, 1, 0]);
    assert!(s.solvable);
    let w = zassenhaus(3, 1).unwrap();
    let s = w.derived_series();
    assert_eq!(s.dims(), vec![3, 3]);
    assert!(!s.solvable);
    for (p, m) in [(3, 1), (5, 1), (3, 2)] {
        let w = zassenhaus(p, m).unwrap();
        let h = w.span(&(1..w.dim()).map(|i| w.basis(i)).collect::<Vec<_>>());
        assert_eq!(h.dim(), w.dim() - 1);
        assert!(w.is_subalgebra(&h));
        assert!(w.derived_series_of(&h).solvable);
        assert!(!w.derived_series().solvable);
    }
}

#[test]
fn restricted_examples() {
    let b = two_dim_solvable(&fp(3)).unwrap();
    assert!(b.restricted_check().restricted);
    assert!(abelian(&fp(5), 3).unwrap().restricted_check().restricted);
    // A wrong p-map is rejected.
    let bad = b.clone().without_pmap().with_pmap(vec![b.zero(), b.zero()]);
    assert!(matches!(bad, Err(Error::NotRestricted(_))));
    // Without a p-map the preimages are found by solving.
    let found = b.without_pmap().restricted_check();
    assert!(found.restricted && !found.has_pmap);
    assert_eq!(found.preimages[1], Some(vec![c(3, 0), c(3, 0)]));
}

#[test]
fn filiform_is_not_restrictable() {
    let p = 3;
    let f5 = filiform(&fp(p), 5).unwrap();
    let check = f5.restricted_check();
    assert!(!check.restricted);
    // (ad e_1)^3 sends e_2 to e_5, while ad L only reaches e_5 from e_1.
    assert_eq!(check.failures(), vec![0]);
    let cube = f5.ad_matrix(&f5.basis(0)).pow(&f5.field(), 3);
    assert!(cube.get(4, 1).is_one());
    let (idx, phi) = &check.obstructions[0];
    assert_eq!(*idx, 0);
    let flat: Vec<Scalar> = cube.to_rows().into_iter().flatten().collect();
    assert!(!crate::linalg::dot(&f5.field(), phi, &flat).is_zero());
    for j in 0..5 {
        let ad: Vec<Scalar> = f5.ad_matrix(&f5.basis(j)).to_rows().into_iter().flatten().collect();
        assert!(crate::linalg::dot(&f5.field(), phi, &ad).is_zero());
    }
    assert!(matches!(f5.restrict(), Err(Error::NotRestricted(_))));
}

#[test]
fn zassenhaus_restrictability() {
    // W(1, 1) is restricted, W(1, 2) is not.
    let w = zassenhaus(3, 1).unwrap().restrict().unwrap();
    for i in 0..3 {
        assert!(w.satisfies_restricted_identity(&w.basis(i)).unwrap());
    }
    let sum: Vec<Scalar> = (0..3).map(|i| c(3, i as i64 + 1)).collect();
    assert!(w.satisfies_restricted_identity(&sum).unwrap());
    let w2 = zassenhaus(3, 2).unwrap();
    let check = w2.restricted_check();
    assert!(!check.restricted);
    assert!(check.failures().contains(&0));
}

#[test]
fn gl_p_map_is_the_matrix_power() {
    let p = 3;
    let g = gl(&fp(p), 2).unwrap();
    // m = [[0,1],[1,1]]: m^2 = m + I, so m^3 = m^2 + m = 2m + I.
    let m = gl_element(2, &[(0, 1, c(p, 1)), (1, 0, c(p, 1)), (1, 1, c(p, 1))], p);
    let cube = g.p_power(&m).unwrap();
    assert_eq!(cube, mat_pow(2, &m, 3));
    assert_eq!(cube, gl_element(2, &[(0, 0, c(p, 1)), (0, 1, c(p, 2)), (1, 0, c(p, 2)), (1, 1, c(p, 0))], p));
}

#[test]
fn chain_for_two_by_two() {
    let p = 3;
    let g = gl(&fp(p), 2).unwrap();
    let m = gl_element(2, &[(0, 1, c(p, 1)), (1, 0, c(p, 1)), (1, 1, c(p, 1))], p);
    let identity = gl_element(2, &[(0, 0, c(p, 1)), (1, 1, c(p, 1))], p);
    let l = g.span(core::slice::from_ref(&m));
    let chain = p_closure_chain(&g, &l).unwrap();
    assert_eq!(chain.len(), 1);
    let two_m_plus_i: Vec<Scalar> = m.iter().zip(&identity).map(|(a, b)| &a.scale(2) + b).collect();
    assert_eq!(chain.steps[0].x, two_m_plus_i);
    assert_eq!(*chain.envelope(), g.span(&[m, identity]));
    assert!(chain.check(&g).unwrap().all());

    let e12 = gl_element(2, &[(0, 1, c(p, 1))], p);
    let chain = p_closure_chain(&g, &g.span(&[e12])).unwrap();
    assert!(chain.is_empty());
    assert!(chain.check(&g).unwrap().all());
}

#[test]
fn chain_errors() {
    let p = 3;
    let g = gl(&fp(p), 2).unwrap();
    let e12 = gl_element(2, &[(0, 1, c(p, 1))], p);
    let e21 = gl_element(2, &[(1, 0, c(p, 1))], p);
    assert_eq!(p_closure_chain(&g, &g.span(&[e12, e21])), Err(Error::NotASubalgebra));
    let f5 = filiform(&fp(p), 5).unwrap();
    assert!(matches!(p_closure_chain(&f5, &f5.full()), Err(Error::NotRestricted(_))));
}

/// Oracle: the envelope is spanned by the iterated p-th powers of a basis,
/// computed with associative matrix arithmetic.
fn associative_envelope(n: usize, basis: &[Vec<Scalar>], p: u32) -> usize {
    let f = fp(p).field();
    let mut space = Subspace::new(n * n);
    for b in basis {
        let mut power = b.clone();
        while space.insert(&f, power.clone()) {
            power = mat_pow(n, &power, p);
        }
    }
    space.dim()
}

#[test]
fn filiform_envelope_in_gl6() {
    let p = 3;
    let g = gl(&fp(p), 6).unwrap();
    let images = filiform_matrices(p, 5);
    // The representation is a homomorphism.
    let f5 = filiform(&fp(p), 5).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            let lhs = g.bracket(&images[i], &images[j]);
            let br = f5.bracket(&f5.basis(i), &f5.basis(j));
            let mut rhs = g.zero();
            for (k, ck) in br.iter().enumerate() {
                axpy(&g.field(), &mut rhs, ck, &images[k]);
            }
            assert_eq!(lhs, rhs);
        }
    }
    let l = g.span(&images);
    assert_eq!(l.dim(), 5);
    let chain = p_closure_chain(&g, &l).unwrap();
    assert!(chain.check(&g).unwrap().all());
    assert_eq!(chain.envelope().dim(), associative_envelope(6, &images, p));
    // e_1 is a full shift, so e_1^[3] is the cube of the shift and the only new element.
    assert_eq!(chain.len(), 1);
    assert_eq!(chain.steps[0].x, mat_pow(6, &images[0], 3));
}

fn matrix_entries(p: u32, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(0..p as i64, n * n).prop_map(move |v| v.into_iter().map(|x| c(p, x)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobson_p_map_matches_matrix_power_f3(m in matrix_entries(3, 3)) {
        let g = gl(&fp(3), 3).unwrap();
        prop_assert_eq!(g.p_power(&m).unwrap(), mat_pow(3, &m, 3));
    }

    #[test]
    fn jacobson_p_map_matches_matrix_power_f5(m in matrix_entries(5, 2)) {
        let g = gl(&fp(5), 2).unwrap();
        prop_assert_eq!(g.p_power(&m).unwrap(), mat_pow(2, &m, 5));
    }

    #[test]
    fn p_map_is_semilinear_over_function_fields(m in matrix_entries(3, 2), k in 1i64..3, e in 0u32..3) {
        let spec = FieldSpec::new(3, &["s"], &[] as &[&str]).unwrap();
        let g = gl(&spec, 2).unwrap();
        let coeff = &spec.v("s").pow(e) * &spec.scalar(k);
        let scaled: Vec<Scalar> = m.iter().map(|x| x * &coeff).collect();
        prop_assert_eq!(g.p_power(&scaled).unwrap(), mat_pow(2, &scaled, 3));
    }

    #[test]
    fn constructed_presentations_satisfy_jacobi(p in prop::sample::select(vec![3u32, 5, 7]), n in 2usize..7) {
        prop_assert!(filiform(&fp(p), n).unwrap().jacobi_check().holds);
        prop_assert!(gl(&fp(p), 2).unwrap().jacobi_check().holds);
    }
}
