//! The subcommands, independent of argument parsing.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::json;
use trimat_core::algebra::regular_module;
use trimat_core::exactlin::{Field, FieldSpec, PrimeField, Rationals};
use trimat_core::gorenstein::{injective_dimension, is_gproj_perp, is_gproj_triple, GorensteinContext, InjDim};
use trimat_core::modrep::{seeded_rng, Limits, Module};
use trimat_core::recollement::{
    check_abelian_recollement, upper_symmetry_witnesses, Category, FunctorTag, Obj, Samples,
};
use trimat_core::report::{CheckRecord, CheckReport, Clock, NoClock, Status, WitnessValue};
use trimat_core::stablecat::{
    certify_triple, check_stable_recollement, stable_apply, StableContext, StableHomSpace, StableObj, StableSamples,
};
use trimat_core::triplecat::from_triple;

use crate::format::{self, ParseError, TriangularDoc, WorkspaceDoc};
use crate::report::{render, WallClock};
use crate::workspace::{add_object, algebra_doc, canonicalize, field_spec, ValidationError, Workspace};

/// Exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const VALIDATION: u8 = 3;
    pub const CHECK_FAILED: u8 = 4;
    pub const INCONCLUSIVE: u8 = 5;
    pub const RESOURCE: u8 = 6;
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(ParseError),
    Validation(String),
    Inconclusive(String),
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => exit::IO,
            CliError::Parse(_) => exit::PARSE,
            CliError::Validation(_) => exit::VALIDATION,
            CliError::Inconclusive(_) => exit::INCONCLUSIVE,
            CliError::Resource(_) => exit::RESOURCE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Inconclusive(m) => write!(f, "inconclusive: {m}"),
            CliError::Resource(m) => write!(f, "resource cap: {m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<trimat_core::Error> for CliError {
    fn from(e: trimat_core::Error) -> Self {
        use trimat_core::Error as E;
        match e {
            E::ResourceCap { .. } => CliError::Resource(e.to_string()),
            E::InconclusiveContext | E::UnsupportedCharacteristic { .. } => CliError::Inconclusive(e.to_string()),
            e => CliError::Validation(e.to_string()),
        }
    }
}

/// What a successful command prints and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: exit::OK }
    }

    /// `0` when every record passes, `4` on failures, `5` on
    /// inconclusive records.
    fn of_report(stdout: String, r: &CheckReport) -> Self {
        let code = if r.has_failures() {
            exit::CHECK_FAILED
        } else if r.count(Status::Inconclusive) > 0 {
            exit::INCONCLUSIVE
        } else {
            exit::OK
        };
        Outcome { stdout, code }
    }
}

/// Resource caps, read from `TRIMAT_MAX_DIM`, `TRIMAT_MAX_LENGTH` and
/// `TRIMAT_INJDIM_CAP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub limits: Limits,
    pub injdim_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { limits: Limits::default(), injdim_cap: trimat_core::gorenstein::DEFAULT_INJDIM_CAP }
    }
}

impl Caps {
    pub fn from_env() -> Result<Self, CliError> {
        let mut caps = Caps::default();
        let read = |var: &str| -> Result<Option<usize>, CliError> {
            match std::env::var(var) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| CliError::Validation(format!("{var} must be a non-negative integer"))),
                Err(_) => Ok(None),
            }
        };
        if let Some(v) = read("TRIMAT_MAX_DIM")? {
            caps.limits.max_dim = v;
        }
        if let Some(v) = read("TRIMAT_MAX_LENGTH")? {
            caps.limits.max_length = v;
        }
        if let Some(v) = read("TRIMAT_INJDIM_CAP")? {
            caps.injdim_cap = v;
        }
        Ok(caps)
    }
}

pub fn read_doc(path: &Path) -> Result<WorkspaceDoc, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(format::parse(&text)?)
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| CliError::Io(format!("{} is not a file path", path.display())))?;
    let tmp: PathBuf = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

fn deliver(out: Option<&Path>, text: String) -> Result<String, CliError> {
    match out {
        Some(p) => {
            write_atomic(p, &text)?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text),
    }
}

/// A computation generic over the field of the workspace.
pub trait FieldTask {
    fn run<F: Field>(self, ws: Workspace<F>, doc: WorkspaceDoc) -> Result<Outcome, CliError>;
}

fn dispatch<T: FieldTask>(doc: WorkspaceDoc, task: T) -> Result<Outcome, CliError> {
    match field_spec(&doc)? {
        FieldSpec::Rationals => {
            let ws = Workspace::build(Rationals, &doc)?;
            task.run(ws, doc)
        }
        FieldSpec::PrimeField(p) => {
            let f = PrimeField::new(p).ok_or_else(|| CliError::Validation(format!("{p} is not prime")))?;
            let ws = Workspace::build(f, &doc)?;
            task.run(ws, doc)
        }
    }
}

/// Fails with the first failing validator unless the workspace is valid.
fn require_valid<F: Field>(ws: &Workspace<F>) -> Result<(), CliError> {
    let r = ws.validate();
    let first = r.failures().next().map(|rec| {
        let detail: Vec<String> = rec.witnesses.iter().map(|(k, v)| format!("{k} = {v:?}")).collect();
        format!("{}: {} fails ({})", rec.name, rec.anchor, detail.join(", "))
    });
    match first {
        None => Ok(()),
        Some(m) => Err(CliError::Validation(m)),
    }
}

fn run_on_file<T: FieldTask>(path: &Path, task: T) -> Result<Outcome, CliError> {
    dispatch(read_doc(path)?, task)
}

// validate

struct Validate;

impl FieldTask for Validate {
    fn run<F: Field>(self, ws: Workspace<F>, _: WorkspaceDoc) -> Result<Outcome, CliError> {
        let r = ws.validate();
        let code = if r.has_failures() { exit::VALIDATION } else { exit::OK };
        Ok(Outcome { stdout: render(&r), code })
    }
}

pub fn validate(path: &Path) -> Result<Outcome, CliError> {
    run_on_file(path, Validate)
}

// fmt

struct Fmt<'a> {
    out: Option<&'a Path>,
}

impl FieldTask for Fmt<'_> {
    fn run<F: Field>(self, ws: Workspace<F>, doc: WorkspaceDoc) -> Result<Outcome, CliError> {
        let c = canonicalize(&ws.field, &doc)?;
        Ok(Outcome::ok(deliver(self.out, format::emit(&c))?))
    }
}

pub fn fmt_file(path: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
    run_on_file(path, Fmt { out })
}

// build-lambda

struct BuildLambda<'a> {
    a: &'a str,
    b: &'a str,
    m: &'a str,
    name: &'a str,
    out: Option<&'a Path>,
}

impl FieldTask for BuildLambda<'_> {
    fn run<F: Field>(self, ws: Workspace<F>, mut doc: WorkspaceDoc) -> Result<Outcome, CliError> {
        require_valid(&ws)?;
        if doc.triangulars.contains_key(self.name) {
            return Err(CliError::Validation(format!("triangulars.{}: already registered", self.name)));
        }
        doc.triangulars.insert(
            self.name.to_string(),
            TriangularDoc { a: self.a.to_string(), b: self.b.to_string(), m: self.m.to_string() },
        );
        let ws = Workspace::build(ws.field.clone(), &doc)?;
        let (_, tri) = ws.context(Some(self.name))?;
        let lambda = format!("{}.lambda", self.name);
        doc.algebras.insert(lambda, algebra_doc(&tri.lambda));
        Ok(Outcome::ok(deliver(self.out, format::emit(&doc))?))
    }
}

pub fn build_lambda(path: &Path, a: &str, b: &str, m: &str, name: &str, out: Option<&Path>) -> Result<Outcome, CliError> {
    run_on_file(path, BuildLambda { a, b, m, name, out })
}

// Gorenstein contexts

/// The context of algebra `key`: `--injdim` first, then a declared value
/// in the workspace, then the computed injective dimension.
fn gorenstein<F: Field>(
    ws: &Workspace<F>,
    key: &str,
    a: &std::sync::Arc<trimat_core::algebra::Algebra<F>>,
    injdim: Option<usize>,
    caps: &Caps,
) -> Result<GorensteinContext<F>, CliError> {
    let mut ctx = match injdim.or_else(|| ws.injdims.get(key).copied()) {
        Some(d) => GorensteinContext::declared(a, d),
        None => injective_dimension(a, caps.injdim_cap, &caps.limits)?,
    };
    ctx.limits = caps.limits;
    Ok(ctx)
}

fn injdim_value(d: InjDim) -> serde_json::Value {
    match d {
        InjDim::Computed(d) => json!({ "computed": d }),
        InjDim::UserDeclared(d) => json!({ "declared": d }),
        InjDim::Inconclusive { cap } => json!({ "inconclusive_above": cap }),
    }
}

fn stable_context<F: Field>(
    ws: &Workspace<F>,
    doc: &WorkspaceDoc,
    name: &str,
    tri: &std::sync::Arc<trimat_core::algebra::Triangular<F>>,
    injdim: Option<usize>,
    caps: &Caps,
) -> Result<StableContext<F>, CliError> {
    let names = &doc.triangulars[name];
    let ga = gorenstein(ws, &names.a, &tri.a, injdim, caps)?;
    let gb = gorenstein(ws, &names.b, &tri.b, injdim, caps)?;
    Ok(StableContext::new(tri, ga, gb)?)
}

// injdim

struct InjDimTask<'a> {
    algebra: &'a str,
    caps: Caps,
}

impl FieldTask for InjDimTask<'_> {
    fn run<F: Field>(self, ws: Workspace<F>, _: WorkspaceDoc) -> Result<Outcome, CliError> {
        require_valid(&ws)?;
        let a = match ws.algebras.get(self.algebra) {
            Some(a) => a.clone(),
            None => ws.context(Some(self.algebra))?.1.lambda.clone(),
        };
        let ctx = gorenstein(&ws, self.algebra, &a, None, &self.caps)?;
        let v = json!({
            "algebra": self.algebra,
            "gorenstein": ctx.is_gorenstein(),
            "left": injdim_value(ctx.left),
            "right": injdim_value(ctx.right),
        });
        let code = if ctx.is_gorenstein() { exit::OK } else { exit::INCONCLUSIVE };
        Ok(Outcome { stdout: pretty(&v), code })
    }
}

pub fn injdim(path: &Path, algebra: &str, caps: Caps) -> Result<Outcome, CliError> {
    run_on_file(path, InjDimTask { algebra, caps })
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

// gproj

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Perp,
    Triple,
    Both,
}

struct Gproj<'a> {
    method: Method,
    injdim: Option<usize>,
    context: Option<&'a str>,
    inputs: &'a [String],
    caps: Caps,
}

impl FieldTask for Gproj<'_> {
    fn run<F: Field>(self, ws: Workspace<F>, doc: WorkspaceDoc) -> Result<Outcome, CliError> {
        require_valid(&ws)?;
        let (cname, tri) = ws.context(self.context)?;
        let names: Vec<String> = if self.inputs.is_empty() {
            ws.triples.iter().filter(|(_, t)| std::sync::Arc::ptr_eq(t.context(), &tri)).map(|(n, _)| n.clone()).collect()
        } else {
            self.inputs.to_vec()
        };
        let needs_triple = self.method != Method::Perp;
        let needs_perp = self.method != Method::Triple;
        let sc = if needs_triple { Some(stable_context(&ws, &doc, &cname, &tri, self.injdim, &self.caps)?) } else { None };
        let gl = if needs_perp { Some(gorenstein(&ws, &cname, &tri.lambda, self.injdim, &self.caps)?) } else { None };
        let mut report = CheckReport::new(None);
        report.add_samples("objects", names.len());
        for name in &names {
            let t = match ws.object(&tri, name, Some(Category::Lambda))? {
                Obj::Lambda(t) => t,
                _ => return Err(CliError::Validation(format!("{name}: expected a triple"))),
            };
            let mut rec = CheckRecord::new(
                format!("gproj.{name}"),
                "T Gorenstein-projective ⟺ φ monic, X, Coker φ, Y Gorenstein-projective",
                Status::Pass,
            );
            let perp = match &gl {
                Some(g) => Some(is_gproj_perp(&from_triple(&t), g)?),
                None => None,
            };
            let crit = match &sc {
                Some(sc) => Some(is_gproj_triple(&t, &sc.ga, &sc.gb)?),
                None => None,
            };
            if let Some(p) = &perp {
                rec.witness("perp", WitnessValue::Bool(p.gproj));
                rec.witness("ext_dims", WitnessValue::dims(&p.ext_dims));
            }
            if let Some(c) = &crit {
                rec.witness("triple", WitnessValue::Bool(c.gproj));
                rec.witness("phi_monic", WitnessValue::Bool(c.phi_monic));
            }
            if let (Some(p), Some(c)) = (&perp, &crit) {
                rec.witness("agree", WitnessValue::Bool(p.gproj == c.gproj));
                rec.status = Status::from_bool(p.gproj == c.gproj);
            }
            let conditional = perp.as_ref().is_some_and(|p| p.conditional)
                || crit.as_ref().is_some_and(|c| c.x.conditional || c.y.conditional);
            if conditional {
                rec.witness("conditional", WitnessValue::Bool(true));
            }
            report.push(rec);
        }
        if let Some(sc) = &sc {
            if sc.m_projective != (true, true) {
                report.notes.push("M is not projective on both sides; the triple criterion assumes it is.".into());
            }
        }
        Ok(Outcome::of_report(render(&report), &report))
    }
}

pub fn gproj(
    path: &Path,
    method: Method,
    injdim: Option<usize>,
    context: Option<&str>,
    inputs: &[String],
    caps: Caps,
) -> Result<Outcome, CliError> {
    run_on_file(path, Gproj { method, injdim, context, inputs, caps })
}

// apply

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Abelian,
    Stable,
}

pub struct ApplyArgs<'a> {
    pub functor: FunctorTag,
    pub level: Level,
    pub input: &'a str,
    pub context: Option<&'a str>,
    pub name: Option<&'a str>,
    pub injdim: Option<usize>,
    pub out: Option<&'a Path>,
    pub caps: Caps,
}

struct Apply<'a>(ApplyArgs<'a>);

impl FieldTask for Apply<'_> {
    fn run<F: Field>(self, ws: Workspace<F>, mut doc: WorkspaceDoc) -> Result<Outcome, CliError> {
        let a = self.0;
        require_valid(&ws)?;
        let (cname, tri) = ws.context(a.context)?;
        let input = ws.object(&tri, a.input, Some(a.functor.domain()))?;
        let out = match a.level {
            Level::Abelian => trimat_core::recollement::Functors::new(&tri).apply(a.functor, &input)?,
            Level::Stable => {
                let sc = stable_context(&ws, &doc, &cname, &tri, a.injdim, &a.caps)?;
                let x = StableObj::certify(&sc, &input)?;
                stable_apply(&sc, a.functor, &x)?.obj()
            }
        };
        let name = a.name.map(str::to_string).unwrap_or_else(|| format!("{}.{}", a.functor.as_str(), a.input));
        if doc.modules.contains_key(&name) || doc.triples.contains_key(&name) {
            return Err(CliError::Validation(format!("`{name}` already exists; pass --name")));
        }
        add_object(&ws, &mut doc, &cname, &name, &out)?;
        Ok(Outcome::ok(deliver(a.out, format::emit(&doc))?))
    }
}

pub fn apply(path: &Path, args: ApplyArgs<'_>) -> Result<Outcome, CliError> {
    run_on_file(path, Apply(args))
}

// stable-hom

struct StableHom<'a> {
    x: &'a str,
    y: &'a str,
}

fn as_module<F: Field>(ws: &Workspace<F>, name: &str) -> Result<Module<F>, CliError> {
    if let Some(t) = ws.triples.get(name) {
        return Ok(from_triple(t));
    }
    ws.modules.get(name).cloned().ok_or_else(|| CliError::Validation(format!("unknown module or triple `{name}`")))
}

impl FieldTask for StableHom<'_> {
    fn run<F: Field>(self, ws: Workspace<F>, _: WorkspaceDoc) -> Result<Outcome, CliError> {
        require_valid(&ws)?;
        let (x, y) = (as_module(&ws, self.x)?, as_module(&ws, self.y)?);
        if !trimat_core::algebra::same_algebra(x.algebra(), y.algebra()) {
            return Err(CliError::Validation(format!("`{}` and `{}` are over different algebras", self.x, self.y)));
        }
        let s = StableHomSpace::new(&x, &y)?;
        let v = json!({
            "hom": s.hom_dim(),
            "projective": s.projective_dim(),
            "source": self.x,
            "stable": s.dim(),
            "target": self.y,
        });
        Ok(Outcome::ok(pretty(&v)))
    }
}

pub fn stable_hom(path: &Path, x: &str, y: &str) -> Result<Outcome, CliError> {
    run_on_file(path, StableHom { x, y })
}

// check-recollement

pub struct CheckArgs<'a> {
    pub level: Level,
    pub samples: usize,
    pub seed: u64,
    pub context: Option<&'a str>,
    pub injdim: Option<usize>,
    pub report: Option<&'a Path>,
    pub stable_output: bool,
    pub caps: Caps,
}

struct Check<'a>(CheckArgs<'a>);

impl FieldTask for Check<'_> {
    fn run<F: Field>(self, ws: Workspace<F>, doc: WorkspaceDoc) -> Result<Outcome, CliError> {
        let a = self.0;
        require_valid(&ws)?;
        let (cname, tri) = ws.context(a.context)?;
        let curated: Vec<_> =
            ws.triples.values().filter(|t| std::sync::Arc::ptr_eq(t.context(), &tri)).cloned().collect();
        let mut rng = seeded_rng(a.seed);
        let wall = WallClock::new();
        let clock: &dyn Clock = if a.stable_output { &NoClock } else { &wall };
        let mut report = match a.level {
            Level::Abelian => {
                let s = Samples::generate(&tri, curated, a.samples, a.samples, &mut rng)?;
                check_abelian_recollement(&tri, &s, Some(a.seed), clock)
            }
            Level::Stable => {
                let sc = stable_context(&ws, &doc, &cname, &tri, a.injdim, &a.caps)?;
                let mut kept = Vec::new();
                let mut skipped = 0;
                for t in curated {
                    match certify_triple(&t, &sc) {
                        Ok(_) => kept.push(t),
                        Err(trimat_core::Error::NotGorensteinProjective) => skipped += 1,
                        Err(e) => return Err(e.into()),
                    }
                }
                let s = StableSamples::generate(&sc, kept, a.samples, a.samples, &mut rng)?;
                let mut r = check_stable_recollement(&sc, &s, Some(a.seed), clock);
                if skipped > 0 {
                    r.notes.push(format!("{skipped} workspace triples are not Gorenstein-projective and were skipped."));
                }
                if s.triples.len() < a.samples {
                    r.notes.push(format!("only {} certified random samples were found", s.triples.len()));
                }
                r
            }
        };
        if a.stable_output {
            report.strip_timing();
        }
        let text = render(&report);
        let stdout = match a.report {
            Some(p) => {
                write_atomic(p, &text)?;
                format!(
                    "{} records: {} pass, {} fail, {} inconclusive, {} no-witness; report written to {}\n",
                    report.records.len(),
                    report.count(Status::Pass),
                    report.count(Status::Fail),
                    report.count(Status::Inconclusive),
                    report.count(Status::NoWitness),
                    p.display()
                )
            }
            None => text,
        };
        Ok(Outcome::of_report(stdout, &report))
    }
}

pub fn check_recollement(path: &Path, args: CheckArgs<'_>) -> Result<Outcome, CliError> {
    run_on_file(path, Check(args))
}

// witness

/// The statements that fail for triangular recollements in general.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// `Ker i^* ⊆ Im j_!`, `i^!j_! = 0` and monic counits `j_!j^*T → T`.
    UpperSymmetry,
}

struct Witness<'a> {
    context: Option<&'a str>,
}

impl FieldTask for Witness<'_> {
    fn run<F: Field>(self, ws: Workspace<F>, _: WorkspaceDoc) -> Result<Outcome, CliError> {
        require_valid(&ws)?;
        let (_, tri) = ws.context(self.context)?;
        let extra: Vec<Module<F>> = ws
            .modules
            .values()
            .filter(|m| trimat_core::algebra::same_algebra(m.algebra(), &tri.b))
            .cloned()
            .chain(std::iter::once(regular_module(&tri.b)))
            .collect();
        let r = upper_symmetry_witnesses(&tri, &extra);
        Ok(Outcome::of_report(render(&r), &r))
    }
}

pub fn witness(path: &Path, _kind: WitnessKind, context: Option<&str>) -> Result<Outcome, CliError> {
    run_on_file(path, Witness { context })
}
