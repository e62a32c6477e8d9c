//! Typed objects of a workspace document over a concrete field.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use trimat_core::algebra::{build_triangular, same_algebra, validate_algebra, Algebra, Triangular};
use trimat_core::exactlin::{Field, FieldSpec, Matrix};
use trimat_core::modrep::{Bimodule, Module, ModuleMap};
use trimat_core::recollement::{Category, Obj};
use trimat_core::report::{CheckRecord, CheckReport, Status, WitnessValue};
use trimat_core::triplecat::{validate_triple_map, Triple, TripleMap};

use crate::format::{AlgebraDoc, MapDoc, MatrixDoc, ModuleDoc, TripleDoc, WorkspaceDoc};

/// A structural problem with a named object of the workspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for ValidationError {}

fn invalid(path: impl Into<String>, message: impl fmt::Display) -> ValidationError {
    ValidationError { path: path.into(), message: message.to_string() }
}

pub fn field_spec(doc: &WorkspaceDoc) -> Result<FieldSpec, ValidationError> {
    doc.field.parse().map_err(|e: String| invalid("field", e))
}

fn scalar<F: Field>(f: &F, s: &str, path: &str) -> Result<F::Elem, ValidationError> {
    f.parse(s).ok_or_else(|| invalid(path, format!("`{s}` is not a canonical element of {}", f.spec())))
}

fn vector<F: Field>(f: &F, s: &str, len: usize, path: &str) -> Result<Vec<F::Elem>, ValidationError> {
    let v = s.split_whitespace().map(|t| scalar(f, t, path)).collect::<Result<Vec<_>, _>>()?;
    if v.len() != len {
        return Err(invalid(path, format!("expected {len} entries, found {}", v.len())));
    }
    Ok(v)
}

pub fn format_vector<F: Field>(f: &F, v: &[F::Elem]) -> String {
    v.iter().map(|e| f.format(e)).collect::<Vec<_>>().join(" ")
}

pub fn matrix<F: Field>(f: &F, m: &MatrixDoc, path: &str) -> Result<Matrix<F>, ValidationError> {
    if m.data.len() != m.rows {
        return Err(invalid(path, format!("`rows` is {} but {} rows are given", m.rows, m.data.len())));
    }
    let mut data = Vec::with_capacity(m.rows * m.cols);
    for (r, row) in m.data.iter().enumerate() {
        data.extend(vector(f, row, m.cols, &format!("{path} row {r}"))?);
    }
    Ok(Matrix::from_vec(f, m.rows, m.cols, data))
}

pub fn matrix_doc<F: Field>(m: &Matrix<F>) -> MatrixDoc {
    let f = m.field();
    MatrixDoc { cols: m.cols(), data: (0..m.rows()).map(|r| format_vector(f, m.row(r))).collect(), rows: m.rows() }
}

fn square_shape(m: &Matrix<impl Field>, n: usize, path: &str) -> Result<(), ValidationError> {
    if m.shape() != (n, n) {
        return Err(invalid(path, format!("expected a {n}x{n} matrix, found {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

fn algebra<F: Field>(f: &F, a: &AlgebraDoc, path: &str) -> Result<Algebra<F>, ValidationError> {
    let n = a.dim;
    if a.products.len() != n || a.products.iter().any(|r| r.len() != n) {
        return Err(invalid(path, format!("`products` must be a {n}x{n} table")));
    }
    let mut s = Vec::with_capacity(n * n * n);
    for (i, row) in a.products.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            s.extend(vector(f, p, n, &format!("{path}.products[{i}][{j}]"))?);
        }
    }
    let unit = vector(f, &a.unit, n, &format!("{path}.unit"))?;
    Algebra::new_unchecked(f, n, s, unit).map_err(|e| invalid(path, e))
}

pub fn algebra_doc<F: Field>(a: &Algebra<F>) -> AlgebraDoc {
    let f = a.field();
    let n = a.dim();
    AlgebraDoc {
        dim: n,
        products: (0..n).map(|i| (0..n).map(|j| format_vector(f, &a.basis_product(i, j))).collect()).collect(),
        unit: format_vector(f, a.unit()),
    }
}

pub fn module_doc<F: Field>(m: &Module<F>, algebra: &str) -> ModuleDoc {
    ModuleDoc { action: m.actions().iter().map(matrix_doc).collect(), algebra: algebra.to_string(), dim: m.dim() }
}

/// A map of the workspace.
#[derive(Debug, Clone)]
pub enum WsMap<F: Field> {
    Module(ModuleMap<F>),
    Triple(TripleMap<F>),
}

/// A workspace with every object built over the field `F`.
///
/// Built objects share the `Arc`s of their algebras, so `same_algebra`
/// holds along every cross-reference.
#[derive(Debug, Clone)]
pub struct Workspace<F: Field> {
    pub field: F,
    pub algebras: BTreeMap<String, Arc<Algebra<F>>>,
    pub bimodules: BTreeMap<String, Bimodule<F>>,
    pub modules: BTreeMap<String, Module<F>>,
    pub triangulars: BTreeMap<String, Arc<Triangular<F>>>,
    pub triples: BTreeMap<String, Triple<F>>,
    pub maps: BTreeMap<String, WsMap<F>>,
    pub injdims: BTreeMap<String, usize>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &str, path: &str) -> Result<&'a T, ValidationError> {
    map.get(name).ok_or_else(|| invalid(path, format!("unknown {kind} `{name}`")))
}

impl<F: Field> Workspace<F> {
    /// Builds every object, checking shapes and cross-references but not
    /// the algebraic axioms; see [`Workspace::validate`].
    pub fn build(field: F, doc: &WorkspaceDoc) -> Result<Self, ValidationError> {
        let f = &field;
        let mut algebras = BTreeMap::new();
        for (name, a) in &doc.algebras {
            algebras.insert(name.clone(), Arc::new(algebra(f, a, &format!("algebras.{name}"))?));
        }
        let mut bimodules = BTreeMap::new();
        for (name, b) in &doc.bimodules {
            let path = format!("bimodules.{name}");
            let l = lookup(&algebras, &b.left, "algebra", &path)?.clone();
            let r = lookup(&algebras, &b.right, "algebra", &path)?.clone();
            let la = b
                .left_action
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let p = format!("{path}.left_action[{i}]");
                    let m = matrix(f, m, &p)?;
                    square_shape(&m, b.dim, &p).map(|_| m)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let ra = b
                .right_action
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let p = format!("{path}.right_action[{i}]");
                    let m = matrix(f, m, &p)?;
                    square_shape(&m, b.dim, &p).map(|_| m)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let bm = Bimodule::new_unchecked(l, r, la, ra).map_err(|e| invalid(&path, e))?;
            if bm.dim() != b.dim {
                return Err(invalid(&path, "`dim` disagrees with the action matrices"));
            }
            bimodules.insert(name.clone(), bm);
        }
        let mut modules = BTreeMap::new();
        for (name, m) in &doc.modules {
            let path = format!("modules.{name}");
            modules.insert(name.clone(), build_module(f, &algebras, m, &path)?);
        }
        let mut triangulars = BTreeMap::new();
        for (name, t) in &doc.triangulars {
            let path = format!("triangulars.{name}");
            let a = lookup(&algebras, &t.a, "algebra", &path)?;
            let b = lookup(&algebras, &t.b, "algebra", &path)?;
            let m = lookup(&bimodules, &t.m, "bimodule", &path)?;
            if !same_algebra(m.left_algebra(), a) || !same_algebra(m.right_algebra(), b) {
                return Err(invalid(&path, format!("bimodule `{}` is not an `{}`-`{}`-bimodule", t.m, t.a, t.b)));
            }
            m.validate().map_err(|e| invalid(format!("bimodules.{}", t.m), e))?;
            let tri = build_triangular(a, b, m).map_err(|e| invalid(&path, e))?;
            triangulars.insert(name.clone(), Arc::new(tri));
        }
        let mut triples = BTreeMap::new();
        for (name, t) in &doc.triples {
            let path = format!("triples.{name}");
            triples.insert(name.clone(), build_triple(f, &triangulars, &modules, doc, t, &path)?);
        }
        let mut maps = BTreeMap::new();
        for (name, m) in &doc.maps {
            let path = format!("maps.{name}");
            maps.insert(name.clone(), build_map(f, &modules, &triples, m, &path)?);
        }
        for name in modules.keys() {
            if triples.contains_key(name) {
                return Err(invalid(format!("modules.{name}"), "name is also used by a triple"));
            }
        }
        Ok(Workspace {
            field,
            algebras,
            bimodules,
            modules,
            triangulars,
            triples,
            maps,
            injdims: doc.injdims.clone(),
        })
    }

    /// Runs the axiom validators on every object, one record per object.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new(None);
        for (name, a) in &self.algebras {
            for mut r in validate_algebra(a).records {
                r.name = format!("algebras.{name}");
                report.push(r);
            }
        }
        let push = |report: &mut CheckReport, name: String, anchor: &str, out: trimat_core::Result<()>| {
            let rec = match out {
                Ok(()) => CheckRecord::new(name, anchor, Status::Pass),
                Err(e) => CheckRecord::new(name, anchor, Status::Fail).with("error", WitnessValue::Text(e.to_string())),
            };
            report.push(rec);
        };
        for (name, b) in &self.bimodules {
            push(&mut report, format!("bimodules.{name}"), "(am)b = a(mb), actions are representations", b.validate());
        }
        for (name, m) in &self.modules {
            push(&mut report, format!("modules.{name}"), "L(e_i)L(e_j) = L(e_i e_j), L(1) = id", m.validate());
        }
        for (name, t) in &self.triples {
            push(&mut report, format!("triples.{name}"), "φ: M ⊗_B Y → X is A-linear", t.validate());
        }
        for (name, m) in &self.maps {
            match m {
                WsMap::Module(g) => {
                    let ok = if g.intertwines() {
                        Ok(())
                    } else {
                        Err(trimat_core::Error::Validation("map is not linear over the algebra".into()))
                    };
                    push(&mut report, format!("maps.{name}"), "g(a·x) = a·g(x)", ok);
                }
                WsMap::Triple(u) => {
                    for mut r in validate_triple_map(u).records {
                        r.name = format!("maps.{name}");
                        report.push(r);
                    }
                }
            }
        }
        report
    }

    /// The name of a registered algebra equal to `a`.
    pub fn algebra_name(&self, a: &Arc<Algebra<F>>) -> Option<&str> {
        self.algebras.iter().find(|(_, b)| same_algebra(a, b)).map(|(n, _)| n.as_str())
    }

    /// The only triangular context, or the named one.
    pub fn context(&self, name: Option<&str>) -> Result<(String, Arc<Triangular<F>>), ValidationError> {
        match name {
            Some(n) => Ok((n.to_string(), lookup(&self.triangulars, n, "triangular context", "--context")?.clone())),
            None if self.triangulars.len() == 1 => {
                let (n, t) = self.triangulars.iter().next().expect("one entry");
                Ok((n.clone(), t.clone()))
            }
            None => Err(invalid("--context", format!("{} contexts registered; name one", self.triangulars.len()))),
        }
    }

    /// A named module or triple as an object of `A`-mod, `B`-mod or `Λ`-mod.
    /// `want` settles modules over an algebra that is both `A` and `B`.
    pub fn object(&self, ctx: &Triangular<F>, name: &str, want: Option<Category>) -> Result<Obj<F>, ValidationError> {
        if let Some(t) = self.triples.get(name) {
            return Ok(Obj::Lambda(t.clone()));
        }
        let m = lookup(&self.modules, name, "module or triple", "input")?;
        let over_a = same_algebra(m.algebra(), &ctx.a);
        let over_b = same_algebra(m.algebra(), &ctx.b);
        match (over_a, over_b, want) {
            (true, true, Some(Category::B)) | (false, true, _) => Ok(Obj::B(m.clone())),
            (true, _, _) => Ok(Obj::A(m.clone())),
            _ => Err(invalid(format!("modules.{name}"), "module is over neither A nor B of the context")),
        }
    }
}

fn build_module<F: Field>(
    f: &F,
    algebras: &BTreeMap<String, Arc<Algebra<F>>>,
    m: &ModuleDoc,
    path: &str,
) -> Result<Module<F>, ValidationError> {
    let a = lookup(algebras, &m.algebra, "algebra", path)?;
    if m.action.len() != a.dim() {
        return Err(invalid(path, format!("expected {} action matrices, found {}", a.dim(), m.action.len())));
    }
    let action = m
        .action
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let p = format!("{path}.action[{i}]");
            let x = matrix(f, x, &p)?;
            square_shape(&x, m.dim, &p).map(|_| x)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Module::new_unchecked(a.clone(), action))
}

fn build_triple<F: Field>(
    f: &F,
    triangulars: &BTreeMap<String, Arc<Triangular<F>>>,
    modules: &BTreeMap<String, Module<F>>,
    doc: &WorkspaceDoc,
    t: &TripleDoc,
    path: &str,
) -> Result<Triple<F>, ValidationError> {
    let ctx = lookup(triangulars, &t.context, "triangular context", path)?;
    let x = lookup(modules, &t.x, "module", path)?;
    let y = lookup(modules, &t.y, "module", path)?;
    let names = &doc.triangulars[&t.context];
    if !same_algebra(x.algebra(), &ctx.a) {
        return Err(invalid(path, format!("`{}` is not a module over `{}`", t.x, names.a)));
    }
    if !same_algebra(y.algebra(), &ctx.b) {
        return Err(invalid(path, format!("`{}` is not a module over `{}`", t.y, names.b)));
    }
    let phi = matrix(f, &t.phi, &format!("{path}.phi"))?;
    Triple::new_unchecked(ctx, x.clone(), y.clone(), phi).map_err(|e| invalid(path, e))
}

fn build_map<F: Field>(
    f: &F,
    modules: &BTreeMap<String, Module<F>>,
    triples: &BTreeMap<String, Triple<F>>,
    m: &MapDoc,
    path: &str,
) -> Result<WsMap<F>, ValidationError> {
    let shape = |x: &Matrix<F>, rows: usize, cols: usize, p: &str| {
        if x.shape() != (rows, cols) {
            Err(invalid(p, format!("expected {rows}x{cols}, found {}x{}", x.rows(), x.cols())))
        } else {
            Ok(())
        }
    };
    if let (Some(s), Some(t)) = (triples.get(&m.source), triples.get(&m.target)) {
        let (Some(fd), Some(gd), None) = (&m.f, &m.g, &m.matrix) else {
            return Err(invalid(path, "a map of triples needs `f` and `g` and no `matrix`"));
        };
        let fm = matrix(f, fd, &format!("{path}.f"))?;
        let gm = matrix(f, gd, &format!("{path}.g"))?;
        shape(&fm, t.x().dim(), s.x().dim(), &format!("{path}.f"))?;
        shape(&gm, t.y().dim(), s.y().dim(), &format!("{path}.g"))?;
        if !Arc::ptr_eq(s.context(), t.context()) {
            return Err(invalid(path, "source and target live over different contexts"));
        }
        return Ok(WsMap::Triple(TripleMap::new_unchecked(s, t, fm, gm)));
    }
    let s = lookup(modules, &m.source, "module or triple", path)?;
    let t = lookup(modules, &m.target, "module or triple", path)?;
    let (Some(md), None, None) = (&m.matrix, &m.f, &m.g) else {
        return Err(invalid(path, "a module map needs `matrix` and no `f`, `g`"));
    };
    if !same_algebra(s.algebra(), t.algebra()) {
        return Err(invalid(path, "source and target are modules over different algebras"));
    }
    let x = matrix(f, md, &format!("{path}.matrix"))?;
    shape(&x, t.dim(), s.dim(), &format!("{path}.matrix"))?;
    Ok(WsMap::Module(ModuleMap::new_unchecked(s.clone(), t.clone(), x)))
}

/// Rewrites every scalar of `doc` in lowest terms.
pub fn canonicalize<F: Field>(f: &F, doc: &WorkspaceDoc) -> Result<WorkspaceDoc, ValidationError> {
    let ws = Workspace::build(f.clone(), doc)?;
    let mut out = doc.clone();
    for (name, a) in &ws.algebras {
        out.algebras.insert(name.clone(), algebra_doc(a));
    }
    for (name, m) in &ws.modules {
        out.modules.insert(name.clone(), module_doc(m, &doc.modules[name].algebra));
    }
    for (name, b) in &ws.bimodules {
        let d = out.bimodules.get_mut(name).expect("same keys");
        d.left_action = b.left_actions().iter().map(matrix_doc).collect();
        d.right_action = b.right_actions().iter().map(matrix_doc).collect();
    }
    for (name, t) in &ws.triples {
        out.triples.get_mut(name).expect("same keys").phi = matrix_doc(t.phi().matrix());
    }
    for (name, m) in &ws.maps {
        let d = out.maps.get_mut(name).expect("same keys");
        match m {
            WsMap::Module(g) => d.matrix = Some(matrix_doc(g.matrix())),
            WsMap::Triple(u) => {
                d.f = Some(matrix_doc(u.f().matrix()));
                d.g = Some(matrix_doc(u.g().matrix()));
            }
        }
    }
    Ok(out)
}

/// Adds `m` to `doc` under `name`, registering no new algebra.
pub fn add_module<F: Field>(
    ws: &Workspace<F>,
    doc: &mut WorkspaceDoc,
    name: &str,
    m: &Module<F>,
) -> Result<(), ValidationError> {
    let alg = ws.algebra_name(m.algebra()).ok_or_else(|| invalid(name, "module over an unregistered algebra"))?;
    doc.modules.insert(name.to_string(), module_doc(m, alg));
    Ok(())
}

/// Adds `t` to `doc` with its modules named `<name>.x` and `<name>.y`.
pub fn add_triple<F: Field>(
    ws: &Workspace<F>,
    doc: &mut WorkspaceDoc,
    context: &str,
    name: &str,
    t: &Triple<F>,
) -> Result<(), ValidationError> {
    let (xn, yn) = (format!("{name}.x"), format!("{name}.y"));
    add_module(ws, doc, &xn, t.x())?;
    add_module(ws, doc, &yn, t.y())?;
    doc.triples.insert(
        name.to_string(),
        TripleDoc { context: context.to_string(), phi: matrix_doc(t.phi().matrix()), x: xn, y: yn },
    );
    Ok(())
}

/// Adds an object of any category.
pub fn add_object<F: Field>(
    ws: &Workspace<F>,
    doc: &mut WorkspaceDoc,
    context: &str,
    name: &str,
    o: &Obj<F>,
) -> Result<Category, ValidationError> {
    match o {
        Obj::A(m) | Obj::B(m) => add_module(ws, doc, name, m)?,
        Obj::Lambda(t) => add_triple(ws, doc, context, name, t)?,
    }
    Ok(o.category())
}
