//! The subcommands as library functions returning reports.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};
use skewfield_core::algebra::{AlgElement, StructureTensor};
use skewfield_core::field::{sample_point, EvalPoint, FieldSpec, Scalar};
use skewfield_core::lie::{p_closure_chain_from, zassenhaus, LiePresentation};
use skewfield_core::pbw::{centrality_check, ChainEnvelope};
use skewfield_core::specialize::{GaloisClause, InseparableClause, RationalExtension, ReductionReport, ToralClause};
use skewfield_core::torus::{
    artin_schreier_from_galois, galois_from_torus, is_toral, maximality_report, weight_decomposition, Torus,
};
use skewfield_core::Error;

use crate::error::InputError;
use crate::format::{
    parse_element_arg, parse_point, parse_point_arg, point_json, read_json, AlgebraFile, GeneratorKind,
    GeneratorsFile, LieFile,
};
use crate::report::RunReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckTarget {
    Jacobi,
    Torus,
    Walrus,
    GaloisRoundtrip,
}

impl CheckTarget {
    pub fn name(self) -> &'static str {
        match self {
            CheckTarget::Jacobi => "jacobi",
            CheckTarget::Torus => "torus",
            CheckTarget::Walrus => "walrus",
            CheckTarget::GaloisRoundtrip => "galois-roundtrip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckSource {
    File(PathBuf),
    Zassenhaus(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckArgs {
    pub target: CheckTarget,
    pub source: CheckSource,
    /// Torus generators: basis names or JSON element objects.
    pub torus: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializeArgs {
    pub algebra: PathBuf,
    pub generators: PathBuf,
    pub seeds: u64,
    pub height: u32,
    pub seed: u64,
    /// Extra points as `u=value,...`.
    pub points: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeArgs {
    pub lie: PathBuf,
    pub ambient: PathBuf,
    /// Freeness degree bound; defaults to `p + 1`.
    pub degree: Option<u32>,
}

fn path_value(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

fn fmt_elem(a: &StructureTensor, e: &AlgElement) -> String {
    a.format_element(e)
}

pub fn check(args: &CheckArgs) -> Result<RunReport, InputError> {
    let mut report = RunReport::new(format!("check {}", args.target.name()));
    match &args.source {
        CheckSource::File(path) => report.input("file", path_value(path)),
        CheckSource::Zassenhaus(p, m) => report.input("zassenhaus", json!([p, m])),
    }
    if !args.torus.is_empty() {
        report.input("torus", json!(args.torus));
    }
    match args.target {
        CheckTarget::Jacobi => check_jacobi(&mut report, &args.source)?,
        target => {
            let CheckSource::File(path) = &args.source else {
                return Err(InputError::Invalid(format!("check {} needs --file with an algebra", target.name())));
            };
            let a = read_json::<AlgebraFile>(path)?.load()?;
            let gens = args.torus.iter().map(|s| parse_element_arg(&a, s)).collect::<Result<Vec<_>, _>>()?;
            let instance = instance_name(path, &a, &gens);
            let torus = match build_torus(&mut report, &a, gens, &instance) {
                Some(t) => t,
                None => return Ok(report),
            };
            match target {
                CheckTarget::Torus => check_torus(&mut report, &a, &torus, &instance)?,
                CheckTarget::Walrus => check_maximality(&mut report, &a, &torus, &instance)?,
                CheckTarget::GaloisRoundtrip => check_roundtrip(&mut report, &a, &torus, &instance)?,
                CheckTarget::Jacobi => unreachable!(),
            }
        }
    }
    Ok(report)
}

fn instance_name(path: &Path, a: &StructureTensor, gens: &[AlgElement]) -> String {
    let names: Vec<String> = gens.iter().map(|g| fmt_elem(a, g)).collect();
    format!("{} <1, {}>", path.display(), names.join(", "))
}

fn check_jacobi(report: &mut RunReport, source: &CheckSource) -> Result<(), InputError> {
    let (g, instance) = match source {
        CheckSource::File(path) => (read_json::<LieFile>(path)?.load_table()?, path.display().to_string()),
        CheckSource::Zassenhaus(p, m) => {
            let g = zassenhaus(*p, *m).map_err(InputError::core("zassenhaus"))?;
            (g, format!("W(1,{m}) over F_{p}"))
        }
    };
    let jc = g.jacobi_check();
    let witness = jc.witness.map(|(i, j, k)| {
        let n = g.basis_names();
        json!({ "indices": [i, j, k], "names": [n[i], n[j], n[k]] })
    });
    report.check("jacobi_check", &instance, "jacobi identity", json!({ "holds": jc.holds, "witness": witness }), jc.holds);
    report.value("jacobi_check", &instance, "dimension", g.dim());
    if let CheckSource::Zassenhaus(p, m) = source {
        let expected = (*p as usize).pow(*m);
        report.check("zassenhaus", &instance, "dimension is p^m", g.dim(), g.dim() == expected);
        if jc.holds {
            let h = g.span(&(1..g.dim()).map(|i| g.basis(i)).collect::<Vec<_>>());
            let sub = g.is_subalgebra(&h);
            let series = g.derived_series_of(&h);
            report.check(
                "derived_series",
                &instance,
                "span{e_i : i >= 0} is a solvable subalgebra of codimension 1",
                json!({ "codimension": g.dim() - h.dim(), "subalgebra": sub, "derived_dims": series.dims() }),
                sub && series.solvable && h.dim() + 1 == g.dim(),
            );
        }
    }
    Ok(())
}

fn build_torus(report: &mut RunReport, a: &StructureTensor, gens: Vec<AlgElement>, instance: &str) -> Option<Torus> {
    for g in &gens {
        let t = is_toral(a, g);
        report.check("is_toral", instance, &format!("{} is toral", fmt_elem(a, g)), t.toral, t.toral);
    }
    if gens.is_empty() {
        return Some(Torus::trivial());
    }
    match Torus::new(a, gens) {
        Ok(t) => Some(t),
        Err(e) => {
            report.check("torus", instance, "generators span a torus", format!("{e}"), false);
            None
        }
    }
}

fn analysis(r: skewfield_core::Result<()>) -> Result<(), InputError> {
    r.map_err(InputError::core("analysis"))
}

fn check_torus(report: &mut RunReport, a: &StructureTensor, torus: &Torus, instance: &str) -> Result<(), InputError> {
    let p = a.spec().characteristic();
    let rank = torus.rank();
    report.value("torus", instance, "rank", rank);
    let wd = match weight_decomposition(a, torus) {
        Ok(wd) => wd,
        Err(e) => {
            report.check("weight_decomposition", instance, "ad T diagonalizes", format!("{e}"), false);
            return Ok(());
        }
    };
    let expected = (p as usize).pow(rank as u32);
    let weights: Vec<Value> = wd.weights.iter().zip(&wd.spaces).map(|(w, s)| json!({ "weight": w, "dim": s.dim() })).collect();
    report.value("weight_decomposition", instance, "weights", weights);
    report.check("weight_decomposition", instance, "weight set closed under addition", wd.is_closed_under_addition(p), wd.is_closed_under_addition(p));
    report.check("weight_decomposition", instance, "weight group rank equals torus rank", wd.weight_rank(p), wd.weight_rank(p) == rank);
    report.check("weight_decomposition", instance, "decomposition is a grading", wd.is_grading(a), wd.is_grading(a));
    let k = torus.subfield(a).map_err(InputError::core("torus subfield"))?;
    report.check("subfield", instance, "[Z(T):Z] = p^rank", k.dim(), k.dim() == expected);
    match galois_from_torus(a, torus) {
        Ok(g) => report.check("galois_from_torus", instance, "Galois group order p^rank", g.order(), g.order() == expected),
        Err(e) => report.check("galois_from_torus", instance, "Galois group order p^rank", format!("{e}"), false),
    }
    Ok(())
}

fn check_maximality(report: &mut RunReport, a: &StructureTensor, torus: &Torus, instance: &str) -> Result<(), InputError> {
    let r = match maximality_report(a, torus) {
        Ok(r) => r,
        Err(e) => return analysis(Err(e)),
    };
    report.value("maximality_report", instance, "degree n", r.n);
    report.value("maximality_report", instance, "rank", r.rank);
    let names = [
        "rank equals n",
        "Z(T) is a maximal subfield",
        "D_0 is a maximal subfield",
        "D_0 = Z(T)",
        "D_0 is commutative",
        "p^n weights",
    ];
    for (name, v) in names.iter().zip(r.conditions()) {
        report.value("maximality_report", instance, name, v);
    }
    report.check("maximality_report", instance, "six conditions agree", json!(r.conditions()), r.all_equal());
    Ok(())
}

fn check_roundtrip(report: &mut RunReport, a: &StructureTensor, torus: &Torus, instance: &str) -> Result<(), InputError> {
    let p = a.spec().characteristic() as usize;
    let g = match galois_from_torus(a, torus) {
        Ok(g) => g,
        Err(e) => {
            report.check("galois_from_torus", instance, "conjugation group", format!("{e}"), false);
            return Ok(());
        }
    };
    let expected = p.pow(torus.rank() as u32);
    report.check("galois_from_torus", instance, "group order p^rank", g.order(), g.order() == expected);
    let f = a.field();
    let exponent_p = g.elements.iter().all(|e| e.matrix.pow(&f, p as u64) == g.elements[0].matrix);
    report.check("galois_from_torus", instance, "every element has order dividing p", exponent_p, exponent_p);
    let commutative = g
        .elements
        .iter()
        .all(|x| g.elements.iter().all(|y| x.matrix.mul(&f, &y.matrix) == y.matrix.mul(&f, &x.matrix)));
    report.check("galois_from_torus", instance, "group is abelian", commutative, commutative);
    match artin_schreier_from_galois(a, &g.subfield, &g) {
        Ok(back) => {
            let gens: Vec<String> = back.generators().iter().map(|t| fmt_elem(a, t)).collect();
            report.value("artin_schreier_from_galois", instance, "recovered generators", gens);
            let toral = back.generators().iter().all(|t| is_toral(a, t).toral);
            report.check("artin_schreier_from_galois", instance, "recovered generators are toral", toral, toral);
            let same = back.subfield(a).map(|k| k.space == g.subfield).unwrap_or(false);
            report.check("artin_schreier_from_galois", instance, "recovered subfield equals Z(T)", same, same);
        }
        Err(e) => report.check("artin_schreier_from_galois", instance, "recovery", format!("{e}"), false),
    }
    Ok(())
}

fn points(args: &SpecializeArgs, file: &GeneratorsFile, spec: &FieldSpec) -> Result<Vec<(String, EvalPoint)>, InputError> {
    let mut out = Vec::new();
    for (i, v) in file.points.iter().enumerate() {
        out.push((format!("file point {i}"), parse_point(spec, v)?));
    }
    for (i, s) in args.points.iter().enumerate() {
        out.push((format!("argument point {i}"), parse_point_arg(spec, s)?));
    }
    for k in 0..args.seeds {
        let seed = args.seed + k;
        let point = sample_point(spec, seed, args.height).map_err(InputError::core("sampling"))?;
        out.push((format!("seed {seed}"), point));
    }
    Ok(out)
}

pub fn specialize(args: &SpecializeArgs) -> Result<RunReport, InputError> {
    let mut report = RunReport::new("specialize");
    report.input("algebra", path_value(&args.algebra));
    report.input("generators", path_value(&args.generators));
    report.input("seeds", args.seeds);
    report.input("seed", args.seed);
    report.input("height", args.height);
    if !args.points.is_empty() {
        report.input("points", json!(args.points));
    }
    let a = read_json::<AlgebraFile>(&args.algebra)?.load()?;
    let file: GeneratorsFile = read_json(&args.generators)?;
    if file.generators.is_empty() {
        return Err(InputError::Invalid("the generator list is empty".into()));
    }
    let r = RationalExtension::new(&a, &file.ext_vars).map_err(InputError::core("extension"))?;
    let spec = r.spec().clone();
    let gens = file.elements(&spec, r.ext())?;
    let pts = points(args, &file, &spec)?;
    let (_, cleared) = r.clear_denominators(&gens);
    let cert = r.independence_certificate(&cleared).ok();
    let generic = r.ext().span(&gens).dim();
    let op = match file.kind {
        GeneratorKind::Subspace => "specialize_subspace",
        GeneratorKind::Subfield => "verify_reduction",
    };
    let names: Vec<String> = gens.iter().map(|g| r.ext().format_element(g)).collect();
    report.value(op, "generic", "generators", names);
    report.value(op, "generic", "dimension", generic);
    if let Some(c) = &cert {
        report.value(op, "generic", "certificate", c.describe(&spec));
    }
    let mut flagged = Vec::new();
    for (label, point) in &pts {
        let assignment: Vec<String> = point_json(&spec, point).iter().map(|(k, v)| format!("{k}={v}")).collect();
        let instance = format!("{label} ({})", assignment.join(", "));
        match file.kind {
            GeneratorKind::Subspace => {
                let s = r.specialize_subspace(&gens, point).map_err(InputError::core("specialization"))?;
                let certified = !s.certificate_value.is_zero();
                if !s.preserved {
                    flagged.push(instance.clone());
                }
                report.check(
                    op,
                    &instance,
                    "nonzero certificate preserves dimension",
                    json!({
                        "certificate_value": spec.format(&s.certificate_value),
                        "specialized_dim": s.space.dim(),
                        "preserved": s.preserved,
                    }),
                    !certified || s.preserved,
                );
            }
            GeneratorKind::Subfield => {
                let rep = r.verify_reduction(&gens, point, None).map_err(InputError::core("reduction"))?;
                if !rep.specialized.preserved {
                    flagged.push(instance.clone());
                }
                record_reduction(&mut report, &spec, (&a, r.ext()), &rep, &instance);
            }
        }
    }
    report.value(op, "all points", "points where dimension drops", flagged);
    Ok(report)
}

/// `algebras` is `(D, D(X))`: specialized data lives in `D`, generic data in `D(X)`.
fn record_reduction(
    report: &mut RunReport,
    spec: &FieldSpec,
    algebras: (&StructureTensor, &StructureTensor),
    rep: &ReductionReport,
    instance: &str,
) {
    let (d, dx) = algebras;
    let op = "verify_reduction";
    let s = &rep.specialized;
    report.check(
        op,
        instance,
        "nonzero certificate preserves dimension",
        json!({
            "generic_dim": rep.dim,
            "specialized_dim": s.space.dim(),
            "certificate_value": spec.format(&s.certificate_value),
            "preserved": s.preserved,
            "is_field": rep.is_field,
            "maximal": rep.maximal,
        }),
        s.certificate_value.is_zero() || s.preserved,
    );
    if let Some(c) = &rep.inseparable {
        record_inseparable(report, spec, c, instance);
    }
    if let Some(c) = &rep.toral {
        record_toral(report, spec, d, c, instance);
    }
    if let Some(c) = &rep.galois {
        record_galois(report, spec, dx, c, instance);
    }
}

fn record_inseparable(report: &mut RunReport, spec: &FieldSpec, c: &InseparableClause, instance: &str) {
    report.check(
        "verify_reduction",
        instance,
        "purely inseparable exponent bound",
        json!({
            "exponent": c.exponent,
            "specialized_exponent": c.specialized_exponent,
            "certificate_value": spec.format(&c.certificate_value),
            "exponent_equal": c.exponent_equal,
        }),
        c.bound_holds && (c.certificate_value.is_zero() || c.exponent_equal),
    );
}

fn record_toral(report: &mut RunReport, spec: &FieldSpec, d: &StructureTensor, c: &ToralClause, instance: &str) {
    let applies = !c.c_value.is_zero();
    report.check(
        "verify_reduction",
        instance,
        "toral basis specializes to a torus",
        json!({
            "c": spec.format(&c.c),
            "c_value": spec.format(&c.c_value),
            "taus": c.taus.iter().map(|t| d.format_element(t)).collect::<Vec<_>>(),
            "witnesses": c.witnesses.iter().map(|t| d.format_element(t)).collect::<Vec<_>>(),
            "all_toral": c.all_toral,
            "group": c.group,
        }),
        !applies || c.all_toral,
    );
}

fn record_galois(report: &mut RunReport, spec: &FieldSpec, dx: &StructureTensor, c: &GaloisClause, instance: &str) {
    report.check(
        "verify_reduction",
        instance,
        "Galois input specializes to a split separable polynomial",
        json!({
            "primitive": dx.format_element(&c.primitive),
            "c_value": spec.format(&c.c_value),
            "cleared_independent": c.cleared_independent,
            "polynomial": c.polynomial.as_ref().map(|q| q.format(&spec.base(), "T")),
            "split_separable": c.split_separable(),
        }),
        !c.cleared_independent || c.split_separable(),
    );
}

fn embeds(l: &LiePresentation, g: &LiePresentation, images: &[Vec<Scalar>]) -> Option<(usize, usize)> {
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            let lhs = g.bracket(&images[i], &images[j]);
            let mut rhs = g.zero();
            for (k, c) in l.bracket(&l.basis(i), &l.basis(j)).iter().enumerate() {
                if !c.is_zero() {
                    for (r, v) in rhs.iter_mut().zip(&images[k]) {
                        *r = &*r + &(c * v);
                    }
                }
            }
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn envelope(args: &EnvelopeArgs, timings: bool) -> Result<RunReport, InputError> {
    let mut report = RunReport::new("envelope");
    report.input("lie", path_value(&args.lie));
    report.input("ambient", path_value(&args.ambient));
    let lie_file: LieFile = read_json(&args.lie)?;
    let l = lie_file.load()?;
    let g = read_json::<LieFile>(&args.ambient)?.load()?;
    if g.pmap().is_none() {
        return Err(InputError::Invalid(format!("ambient {} has no p-map", args.ambient.display())));
    }
    let p = g.spec().characteristic();
    let degree = args.degree.unwrap_or(p + 1);
    report.input("degree", degree);
    let images = lie_file.embedding_in(&g)?;
    if let Some((i, j)) = embeds(&l, &g, &images) {
        return Err(InputError::Invalid(format!("embedding does not preserve the bracket of basis pair ({i}, {j})")));
    }
    let instance = format!("{} in {}", args.lie.display(), args.ambient.display());
    let rc = l.restricted_check();
    report.value("restricted_check", &instance, "L carries a p-map", rc.has_pmap);
    report.value("restricted_check", &instance, "L is restrictable", rc.restricted);

    let start = Instant::now();
    let chain = p_closure_chain_from(&g, &images).map_err(InputError::core("p-envelope chain"))?;
    report.value("p_closure_chain", &instance, "chain length q", chain.len());
    report.value("p_closure_chain", &instance, "dim L_(p)", chain.envelope().dim());
    for (i, step) in chain.steps.iter().enumerate() {
        report.value(
            "p_closure_chain",
            &instance,
            &format!("step {}", i + 1),
            json!({ "y": g.format_element(&step.y), "x": g.format_element(&step.x) }),
        );
    }
    let cc = chain.check(&g).map_err(InputError::core("chain check"))?;
    report.check(
        "p_closure_chain",
        &instance,
        "ideal chain with y^[p] = x at every step",
        json!({
            "increments_by_one": cc.increments_by_one,
            "witnesses_valid": cc.witnesses_valid,
            "ideals": cc.ideals,
            "closed_under_bracket": cc.closed_under_bracket,
            "closed_under_pmap": cc.closed_under_pmap,
        }),
        cc.all(),
    );
    if timings {
        report.time("chain", start.elapsed().as_secs_f64());
    }

    let start = Instant::now();
    let env = ChainEnvelope::new(&g, &chain).map_err(InputError::core("adapted envelope"))?;
    let names = env.lie.basis_names().to_vec();
    let u = match env.central_u_variables() {
        Ok(u) => u,
        Err(Error::CentralityFailure(i)) => {
            report.check("central_u_variables", &instance, "u variables are central", json!({ "failed": i + 1 }), false);
            return Ok(report);
        }
        Err(e) => return Err(InputError::core("u variables")(e)),
    };
    let forms: Vec<String> = u.iter().map(|x| x.format(env.lie.spec(), &names)).collect();
    report.value("central_u_variables", &instance, "u variables", forms);
    let central = u.iter().all(|x| centrality_check(&env.lie, x).central);
    report.check("centrality_check", &instance, "u variables are central", central, central);
    let free = env.freeness_check(&u, degree).map_err(InputError::core("freeness"))?;
    report.check(
        "freeness_check",
        &instance,
        "U(L) u-monomials independent up to the degree bound",
        json!({ "bound": free.bound, "products": free.products, "rank": free.rank }),
        free.free,
    );
    if timings {
        report.time("envelope", start.elapsed().as_secs_f64());
    }
    Ok(report)
}
