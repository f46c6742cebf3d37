//! Built-in instances, generated from the core constructors.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use skewfield_core::algebra::{symbol_algebra, StructureTensor};
use skewfield_core::field::{FieldSpec, Scalar};
use skewfield_core::lie::{filiform, filiform_matrices, gl, gl_element, two_dim_solvable, zassenhaus, LiePresentation};

use crate::format::{AlgebraFile, ElementJson, GeneratorKind, GeneratorsFile, LieFile};

pub struct CorpusEntry {
    /// File name, also the lookup key.
    pub name: &'static str,
    pub about: &'static str,
    build: fn() -> String,
}

impl CorpusEntry {
    /// Pretty JSON with a trailing newline.
    pub fn contents(&self) -> String {
        (self.build)()
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("corpus serializes");
    s.push('\n');
    s
}

fn fp(p: u32) -> FieldSpec {
    FieldSpec::new(p, &[] as &[&str], &[] as &[&str]).expect("prime field")
}

fn symbol(p: u32) -> StructureTensor {
    let sp = FieldSpec::new(p, &["s", "t"], &[] as &[&str]).expect("F_p(s, t)");
    symbol_algebra(&sp, &sp.v("s"), &sp.v("t")).expect("symbol algebra")
}

fn element(pairs: &[(&str, &str)]) -> ElementJson {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn generators(kind: GeneratorKind, gens: &[&[(&str, &str)]], points: &[&str]) -> String {
    json(&GeneratorsFile {
        ext_vars: vec!["u".into()],
        kind,
        generators: gens.iter().map(|g| element(g)).collect(),
        points: points.iter().map(|v| BTreeMap::from([("u".to_string(), v.to_string())])).collect(),
    })
}

/// `W(1, 2)` over `F_3` with one bracket coefficient doubled.
fn corrupted() -> LiePresentation {
    let w = zassenhaus(3, 2).expect("W(1, 2)");
    let mut entries = w.entries().to_vec();
    let (_, _, _, c) = entries.iter_mut().find(|(i, j, _, _)| (*i, *j) == (1, 3)).expect("entry [e0, e2]");
    *c = &*c + &*c;
    LiePresentation::from_table(w.spec().clone(), w.dim(), entries)
        .and_then(|g| g.with_basis_names(w.basis_names().to_vec()))
        .expect("antisymmetric table")
}

fn matrix_m() -> String {
    let p = 3;
    let c = |n| Scalar::from_int(p, n);
    let l = LiePresentation::new(fp(p), 1, Vec::new())
        .and_then(|g| g.with_basis_names(vec!["m".into()]))
        .expect("one-dimensional algebra");
    let g = gl(&fp(p), 2).expect("gl_2");
    let m = gl_element(2, &[(0, 1, c(1)), (1, 0, c(1)), (1, 1, c(1))], p);
    json(&LieFile::from_presentation(&l, Some((&g, &[m]))))
}

fn filiform5() -> String {
    let l = filiform(&fp(3), 5).expect("f_5");
    let g = gl(&fp(3), 6).expect("gl_6");
    json(&LieFile::from_presentation(&l, Some((&g, &filiform_matrices(3, 5)))))
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "symbol3.json",
        about: "symbol algebra x^3 - x = s, y^3 = t, yx = (x+1)y over F_3(s,t)",
        build: || json(&AlgebraFile::from_tensor(&symbol(3))),
    },
    CorpusEntry {
        name: "symbol5.json",
        about: "symbol algebra x^5 - x = s, y^5 = t, yx = (x+1)y over F_5(s,t)",
        build: || json(&AlgebraFile::from_tensor(&symbol(5))),
    },
    CorpusEntry {
        name: "zassenhaus-3-2.json",
        about: "Zassenhaus algebra W(1,2) over F_3",
        build: || json(&LieFile::from_presentation(&zassenhaus(3, 2).expect("W(1, 2)"), None)),
    },
    CorpusEntry {
        name: "corrupted.json",
        about: "W(1,2) over F_3 with [e0, e2] doubled; violates the Jacobi identity",
        build: || json(&LieFile::from_presentation(&corrupted(), None)),
    },
    CorpusEntry {
        name: "gl2.json",
        about: "restricted gl_2 over F_3 with the matrix p-map",
        build: || json(&LieFile::from_presentation(&gl(&fp(3), 2).expect("gl_2"), None)),
    },
    CorpusEntry {
        name: "gl6.json",
        about: "restricted gl_6 over F_3 with the matrix p-map",
        build: || json(&LieFile::from_presentation(&gl(&fp(3), 6).expect("gl_6"), None)),
    },
    CorpusEntry {
        name: "matrix-m.json",
        about: "span of m = E12 + E21 + E22 in gl_2 over F_3",
        build: matrix_m,
    },
    CorpusEntry {
        name: "filiform5.json",
        about: "filiform f_5 over F_3 embedded in gl_6",
        build: filiform5,
    },
    CorpusEntry {
        name: "solvable2.json",
        about: "restricted <h, e> with [h, e] = e, h^[3] = h, e^[3] = 0 over F_3",
        build: || json(&LieFile::from_presentation(&two_dim_solvable(&fp(3)).expect("<h, e>"), None)),
    },
    CorpusEntry {
        name: "span-ux.json",
        about: "span{u x} in symbol3(u), with the point u = 0",
        build: || generators(GeneratorKind::Subspace, &[&[("x", "u")]], &["0"]),
    },
    CorpusEntry {
        name: "span-1-x-uy.json",
        about: "span{1, x + u y} in symbol3(u)",
        build: || generators(GeneratorKind::Subspace, &[&[("1", "1")], &[("x", "1"), ("y", "u")]], &["0"]),
    },
    CorpusEntry {
        name: "field-y.json",
        about: "Z(u)(y) in symbol3(u)",
        build: || generators(GeneratorKind::Subfield, &[&[("y", "1")]], &[]),
    },
    CorpusEntry {
        name: "field-uy.json",
        about: "Z(u)(u y) in symbol3(u), with the point u = 0",
        build: || generators(GeneratorKind::Subfield, &[&[("y", "u")]], &["0"]),
    },
    CorpusEntry {
        name: "field-x.json",
        about: "Z(u)(x) in symbol3(u)",
        build: || generators(GeneratorKind::Subfield, &[&[("x", "1")]], &[]),
    },
    CorpusEntry {
        name: "field-x-pole.json",
        about: "Z(u)(x + 1/u) in symbol3(u)",
        build: || generators(GeneratorKind::Subfield, &[&[("x", "1"), ("1", "1/u")]], &["1"]),
    },
];

pub fn get(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// Writes every entry into `dir`, returning the paths written.
pub fn write_all(dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    ENTRIES
        .iter()
        .map(|e| {
            let path = dir.join(e.name);
            std::fs::write(&path, e.contents())?;
            Ok(path)
        })
        .collect()
}
