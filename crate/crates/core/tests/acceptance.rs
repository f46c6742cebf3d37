//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use skewfield_core::algebra::{symbol_algebra, symbol_index, AlgElement, StructureTensor};
use skewfield_core::field::{sample_point, EvalPoint, FieldSpec, Scalar};
use skewfield_core::lie::{
    filiform, filiform_matrices, gl, gl_element, p_closure_chain, p_closure_chain_from, zassenhaus, LiePresentation,
};
use skewfield_core::pbw::{centrality_check, solvable_bridge, toral_in_envelope, u_mul, ChainEnvelope, UElement};
use skewfield_core::specialize::RationalExtension;
use skewfield_core::torus::{
    artin_schreier_from_galois, galois_from_torus, is_toral, maximality_report, weight_decomposition, Torus,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fp(p: u32) -> FieldSpec {
    FieldSpec::new(p, &[] as &[&str], &[] as &[&str]).unwrap()
}

fn sym3() -> StructureTensor {
    let sp = FieldSpec::new(3, &["s", "t"], &[] as &[&str]).unwrap();
    symbol_algebra(&sp, &sp.v("s"), &sp.v("t")).unwrap()
}

fn xy(a: &StructureTensor, i: usize, j: usize) -> AlgElement {
    a.basis(symbol_index(a.spec().characteristic(), i, j))
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn zassenhaus_validity() -> Outcome {
    for (p, m) in [(3, 1), (3, 2), (5, 1), (7, 1)] {
        let w = zassenhaus(p, m).map_err(err)?;
        ensure!(w.jacobi_check().holds, "W({p},{m}) fails Jacobi");
        ensure!(w.dim() == (p as usize).pow(m), "W({p},{m}) has dimension {}", w.dim());
        let h = w.span(&(1..w.dim()).map(|i| w.basis(i)).collect::<Vec<_>>());
        ensure!(h.dim() + 1 == w.dim(), "H has codimension {}", w.dim() - h.dim());
        ensure!(w.is_subalgebra(&h), "H is not a subalgebra of W({p},{m})");
        ensure!(w.derived_series_of(&h).solvable, "H is not solvable in W({p},{m})");
    }
    Ok("W(1,m) for (3,1),(3,2),(5,1),(7,1): Jacobi exact, dim p^m, H solvable of codim 1".into())
}

fn torus_galois_correspondence() -> Outcome {
    let a = sym3();
    let torus = Torus::new(&a, vec![xy(&a, 1, 0)]).map_err(err)?;
    let wd = weight_decomposition(&a, &torus).map_err(err)?;
    ensure!(wd.len() == 3, "|Λ| = {}", wd.len());
    ensure!(wd.is_closed_under_addition(3), "Λ not closed under addition");
    let k = torus.subfield(&a).map_err(err)?;
    ensure!(k.dim() == 3, "[Z(T):Z] = {}", k.dim());
    let g = galois_from_torus(&a, &torus).map_err(err)?;
    ensure!(g.order() == 3, "|Gal| = {}", g.order());
    let f = a.field();
    let m1 = &g.elements[1].matrix;
    ensure!(m1.mul(&f, m1) == g.elements[2].matrix, "σ_1^2 ≠ σ_2");
    ensure!(m1.pow(&f, 3) == g.elements[0].matrix, "σ_1 has order ≠ 3");
    ensure!(g.elements[0].matrix != *m1, "σ_1 is trivial");
    let back = artin_schreier_from_galois(&a, &g.subfield, &g).map_err(err)?;
    ensure!(back.rank() == 1, "recovered rank {}", back.rank());
    ensure!(is_toral(&a, &back.generators()[0]).toral, "recovered generator not toral");
    ensure!(back.subfield(&a).map_err(err)?.space == g.subfield, "recovered subfield differs");
    Ok("|Λ|=3 closed, [Z(T):Z]=3, Gal ≅ Z_3 by conjugation, Artin-Schreier round trip".into())
}

fn maximality_conditions() -> Outcome {
    let a = sym3();
    let w = a.add(&a.one(), &xy(&a, 0, 1));
    let conj = a.mul(&a.mul(&w, &xy(&a, 1, 0)), &a.alg_inverse(&w).map_err(err)?);
    let sp5 = FieldSpec::new(5, &["s", "t"], &[] as &[&str]).unwrap();
    let a5 = symbol_algebra(&sp5, &sp5.v("s"), &sp5.v("t")).map_err(err)?;
    let pairs = [
        ("sym3, <1,x>", a.clone(), Torus::new(&a, vec![xy(&a, 1, 0)]).map_err(err)?),
        ("sym3, trivial", a.clone(), Torus::trivial()),
        ("sym3, conjugate of x", a.clone(), Torus::new(&a, vec![conj]).map_err(err)?),
        ("sym5, <1,x>", a5.clone(), Torus::new(&a5, vec![xy(&a5, 1, 0)]).map_err(err)?),
    ];
    let mut saw_true = false;
    let mut saw_false = false;
    let mut summary = Vec::new();
    for (name, alg, torus) in &pairs {
        let r = maximality_report(alg, torus).map_err(err)?;
        ensure!(r.all_equal(), "{name}: conditions disagree {:?}", r.conditions());
        let v = r.conditions()[0];
        saw_true |= v;
        saw_false |= !v;
        summary.push(format!("{name}={v}"));
    }
    ensure!(saw_true && saw_false, "need an all-true and an all-false instance");
    Ok(format!("six conditions agree on {} pairs ({})", pairs.len(), summary.join(", ")))
}

fn specialization_soundness() -> Outcome {
    let d = sym3();
    let r = RationalExtension::new(&d, &["u"]).map_err(err)?;
    let dx = r.ext();
    let sp = r.spec().clone();
    let u = sp.v("u");
    let (x, y) = (xy(dx, 1, 0), xy(dx, 0, 1));
    let toral_with_pole = dx.add(&x, &dx.scalar(&u.inv().unwrap()));
    let shifted = dx.add(&x, &dx.scalar(&(&u.pow(3) - &u)));
    let subspaces: Vec<(&str, Vec<AlgElement>)> = vec![
        ("span{1, x+u*y}", vec![dx.one(), dx.add(&x, &dx.scale(&u, &y))]),
        ("span{u*x}", vec![dx.scale(&u, &x)]),
        (
            "span{u*x+y, (u^2-s)*y+x*y, (u+t)*x}",
            vec![
                dx.add(&dx.scale(&u, &x), &y),
                dx.add(&dx.scale(&(&u * &u - sp.v("s")), &y), &xy(dx, 1, 1)),
                dx.scale(&(&u + &sp.v("t")), &x),
            ],
        ),
    ];
    let fields: Vec<(&str, Vec<AlgElement>)> = vec![
        ("Z(X)(y)", vec![y.clone()]),
        ("Z(X)(u*y)", vec![dx.scale(&u, &y)]),
        ("Z(X)(y+u)", vec![dx.add(&y, &dx.scalar(&u))]),
        ("Z(X)(x)", vec![x.clone()]),
        ("Z(X)(x+1/u)", vec![toral_with_pole]),
        ("Z(X)(x+u^3-u)", vec![shifted]),
    ];
    let points: Vec<EvalPoint> = (0..50).map(|seed| sample_point(&sp, seed, 1).unwrap()).collect();
    let mut checks = 0usize;
    for (name, v) in &subspaces {
        for (i, point) in points.iter().enumerate() {
            let s = r.specialize_subspace(v, point).map_err(err)?;
            ensure!(s.certificate_value.is_zero() || s.preserved, "{name}: point {i} certified but not preserved");
            checks += 1;
        }
    }
    let p = 3u64;
    for (name, gens) in &fields {
        for (i, point) in points.iter().enumerate() {
            let rep = r.verify_reduction(gens, point, None).map_err(err)?;
            ensure!(rep.specialized.certificate_value.is_zero() || rep.specialized.preserved, "{name}: point {i} lost dimension");
            if let Some(ins) = &rep.inseparable {
                ensure!(ins.bound_holds, "{name}: point {i} exponent bound fails");
                for row in rep.specialized.space.basis() {
                    let z = d.from_row(row);
                    let zp = d.pow(&z, p.pow(ins.exponent));
                    ensure!(d.contains(&d.span(&[d.one()]), &zp), "{name}: point {i} z^(p^r) not central");
                }
                ensure!(ins.certificate_value.is_zero() || ins.exponent_equal, "{name}: point {i} exponent drops on Ω_f");
            }
            if let Some(t) = &rep.toral {
                if !t.c_value.is_zero() {
                    ensure!(t.all_toral, "{name}: point {i} τ not toral");
                    for w in &t.witnesses {
                        ensure!(d.contains(&d.span(&[d.one()]), w), "{name}: point {i} τ^p - τ not central");
                    }
                }
            }
            if let Some(g) = &rep.galois {
                if g.cleared_independent {
                    ensure!(g.split_separable(), "{name}: point {i} P_λ not split separable");
                }
            }
            checks += 1;
        }
    }
    Ok(format!(
        "{} subspaces + {} subfields of D(u), 50 seeded points each, {checks} exact checks, zero exceptions",
        subspaces.len(),
        fields.len()
    ))
}

fn scalar_extension() -> Outcome {
    let d = sym3();
    let r = RationalExtension::new(&d, &["u"]).map_err(err)?;
    let kx = r.extend_scalars(&[xy(&d, 1, 0)]).map_err(err)?;
    ensure!(kx.dim == 3 && kx.maximal, "Z(X)(x): dim {} maximal {}", kx.dim, kx.maximal);
    ensure!(kx.galois_order == Some(3), "Z(X)(x): Galois order {:?}", kx.galois_order);
    let tx = kx.torus.as_ref().ok_or("Z(X)(x) lost its torus")?;
    let rep = maximality_report(r.ext(), tx).map_err(err)?;
    ensure!(rep.conditions() == [true; 6], "Z(X)(x): maximality report {:?}", rep.conditions());
    let g = galois_from_torus(r.ext(), tx).map_err(err)?;
    let back = artin_schreier_from_galois(r.ext(), &g.subfield, &g).map_err(err)?;
    ensure!(back.subfield(r.ext()).map_err(err)?.space == g.subfield, "Z(X)(x): Artin-Schreier round trip fails");
    let ky = r.extend_scalars(&[xy(&d, 0, 1)]).map_err(err)?;
    ensure!(ky.dim == 3 && ky.maximal, "Z(X)(y): dim {} maximal {}", ky.dim, ky.maximal);
    ensure!(ky.inseparable_exponent == Some(1), "Z(X)(y): exponent {:?}", ky.inseparable_exponent);
    ensure!(ky.torus.is_none(), "Z(X)(y) cannot be toral");
    Ok("Z(x) ⊗ Z(X) maximal, Galois Z_3, six conditions true; Z(y) ⊗ Z(X) maximal, inseparable exponent 1".into())
}

fn matrix_example() -> (LiePresentation, Vec<Scalar>) {
    let p = 3;
    let c = |n| Scalar::from_int(p, n);
    let g = gl(&fp(p), 2).unwrap();
    (g, gl_element(2, &[(0, 1, c(1)), (1, 0, c(1)), (1, 1, c(1))], p))
}

fn envelope_chain() -> Outcome {
    let (g, m) = matrix_example();
    let chain = p_closure_chain(&g, &g.span(&[m])).map_err(err)?;
    ensure!(chain.len() == 1, "matrix chain length {}", chain.len());
    let check = chain.check(&g).map_err(err)?;
    ensure!(check.all(), "matrix chain invariants {check:?}");
    let g6 = gl(&fp(3), 6).map_err(err)?;
    let fchain = p_closure_chain_from(&g6, &filiform_matrices(3, 5)).map_err(err)?;
    let fcheck = fchain.check(&g6).map_err(err)?;
    ensure!(fcheck.all(), "filiform chain invariants {fcheck:?}");
    ensure!(!fchain.is_empty(), "filiform chain is empty");
    let f5 = filiform(&fp(3), 5).map_err(err)?;
    let rc = f5.restricted_check();
    ensure!(!rc.restricted, "f_5 reported restrictable");
    Ok(format!(
        "matrix chain q=1, filiform chain q={} (dim {}), ideals and y^[p]=x verified; f_5 not restrictable at {:?}",
        fchain.len(),
        fchain.envelope().dim(),
        rc.failures()
    ))
}

fn polynomial_extension() -> Outcome {
    let bound = 3 + 1;
    let mut notes = Vec::new();
    let (g, m) = matrix_example();
    let g6 = gl(&fp(3), 6).map_err(err)?;
    let chains = [
        ("matrix", ChainEnvelope::new(&g, &p_closure_chain(&g, &g.span(&[m])).map_err(err)?).map_err(err)?),
        (
            "filiform",
            ChainEnvelope::new(&g6, &p_closure_chain_from(&g6, &filiform_matrices(3, 5)).map_err(err)?).map_err(err)?,
        ),
    ];
    for (name, env) in &chains {
        let start = Instant::now();
        let u = env.central_u_variables().map_err(err)?;
        for (i, ui) in u.iter().enumerate() {
            let c = centrality_check(&env.lie, ui);
            ensure!(c.central, "{name}: u_{} fails centrality at {:?}", i + 1, c.witness);
            for uj in &u {
                let comm = u_mul(&env.lie, ui, uj).sub(&u_mul(&env.lie, uj, ui));
                ensure!(comm.is_zero(), "{name}: u variables do not commute");
            }
        }
        let free = env.freeness_check(&u, bound).map_err(err)?;
        ensure!(free.free, "{name}: rank {} of {} products", free.rank, free.products);
        let secs = start.elapsed().as_secs_f64();
        ensure!(start.elapsed() < Duration::from_secs(60), "{name}: took {secs:.1}s");
        notes.push(format!("{name}: q={} central, {} products independent", u.len(), free.products));
    }
    Ok(format!("bound {bound}; {}", notes.join("; ")))
}

fn solvable_bridge_instance() -> Outcome {
    let p = 3;
    let b = solvable_bridge(p).map_err(err)?;
    ensure!(b.all_hold(p), "bridge verdicts {b:?}");
    // Direct restatement in U(<h, e>).
    let lie = skewfield_core::lie::two_dim_solvable(&fp(p)).map_err(err)?;
    let h = UElement::generator(2, 0, p);
    let e = UElement::generator(2, 1, p);
    let eh = u_mul(&lie, &e, &h);
    let rhs = u_mul(&lie, &h.sub(&UElement::one(2, p)), &e);
    ensure!(eh == rhs, "e h ≠ (h - 1) e");
    ensure!(toral_in_envelope(&lie, &h).map_err(err)?, "h not toral");
    ensure!(!toral_in_envelope(&lie, &e).map_err(err)?, "e toral");
    Ok("h^3-h, e^3 central; e h = (h-1) e; h toral, e not; symbol algebra via x=-h, y=e matches; C(h) Galois Z_3, C(e) inseparable exponent 1".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Zassenhaus validity", zassenhaus_validity),
        ("torus/Galois correspondence", torus_galois_correspondence),
        ("maximality conditions agree", maximality_conditions),
        ("specialization soundness", specialization_soundness),
        ("scalar extension", scalar_extension),
        ("p-envelope chain", envelope_chain),
        ("polynomial extension shadow", polynomial_extension),
        ("solvable bridge", solvable_bridge_instance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
