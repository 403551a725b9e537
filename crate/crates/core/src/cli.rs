//! Command-line front end: input parsing, report building and output.
//!
//! Every report is canonical JSON (sorted keys, elements in canonical order),
//! so repeated runs on the same input are byte-identical.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bicyclic::{self, BicyclicElement, DEFAULT_ESCAPE_CAP};
use crate::brandt::{BrandtElement, BrandtSemigroup};
use crate::error::{Error, ErrorKind, Result};
use crate::finite::{greens, maximal_subgroup, FiniteInvSemigroup, GreensData, PartialInjection};
use crate::howson;
use crate::monogenic::{self, Presentation, Quotient};

/// Environment variable consulted for the default bound.
pub const BOUND_ENV: &str = "INVSEMI_BOUND";
pub const DEFAULT_BOUND: u64 = 100;

#[derive(Debug, Parser)]
#[command(name = "invsemi", version, about = "Exact computations in inverse semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Coordinate or size bound for certified results [default: $INVSEMI_BOUND or 100]
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Escape cap: bounded closures may pass through sizes up to cap·bound
    #[arg(long, global = true, default_value_t = DEFAULT_ESCAPE_CAP)]
    pub cap: u64,
    /// Span cap for saturation in monogenic quotients [default: depends on the presentation]
    #[arg(long, global = true)]
    pub span_cap: Option<i64>,
    /// Write the report to this file (atomically) instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the inverse semigroup generated by partial injections
    Closure {
        #[arg(long)]
        semigroup: String,
    },
    /// Green's relations, J-order and maximal subgroups
    Greens {
        #[arg(long)]
        semigroup: String,
    },
    /// Egg-box diagram of the D-classes
    Eggbox {
        #[arg(long)]
        semigroup: String,
    },
    /// Generating set of the intersection of two inverse subsemigroups
    Intersect {
        #[arg(long, conflicts_with = "brandt", required_unless_present = "brandt")]
        semigroup: Option<String>,
        #[arg(long)]
        brandt: Option<String>,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Per-J-class generating sets for U, V and their intersection
    Howson {
        #[arg(long)]
        semigroup: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Structure of an inverse subsemigroup of the bicyclic monoid
    BicyclicSummary {
        #[arg(long)]
        gens: String,
    },
    /// Generating set of an intersection in the bicyclic monoid
    BicyclicIntersect {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Decide equality of two words in a monogenic inverse semigroup
    MonogenicEq {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Generating set of an intersection in a monogenic inverse semigroup
    MonogenicIntersect {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err.kind() {
        ErrorKind::Parse => 1,
        ErrorKind::Precondition | ErrorKind::Invariant => 2,
        ErrorKind::Certification => 3,
    }
}

/// Parses arguments (including the program name) and runs the job.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let env_bound = std::env::var(BOUND_ENV).ok();
    match execute(&cli, env_bound.as_deref()) {
        Ok(text) => match &cli.options.out {
            Some(path) => match write_atomic(path, &text) {
                Ok(()) => Outcome { code: 0, stdout: String::new(), stderr: String::new() },
                Err(e) => failure(&e),
            },
            None => Outcome { code: 0, stdout: text, stderr: String::new() },
        },
        Err(e) => failure(&e),
    }
}

fn failure(e: &Error) -> Outcome {
    Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Error::Precondition(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Where the bound came from; echoed in every bounded report.
struct Bound {
    value: u64,
    source: String,
}

fn resolve_bound(flag: Option<u64>, file: Option<u64>, env: Option<&str>) -> Result<Bound> {
    let (value, source) = if let Some(b) = flag {
        (b, "flag".to_string())
    } else if let Some(b) = file {
        (b, "input".to_string())
    } else if let Some(raw) = env {
        let b = raw.trim().parse::<u64>().map_err(|e| Error::Parse {
            path: format!("${BOUND_ENV}"),
            message: format!("{raw:?} is not a nonnegative integer: {e}"),
        })?;
        (b, format!("env {BOUND_ENV}={raw}"))
    } else {
        (DEFAULT_BOUND, "default".to_string())
    };
    if value == 0 {
        return Err(Error::Precondition("bound must be positive".into()));
    }
    Ok(Bound { value, source })
}

/// Reads an argument as inline JSON when it looks like JSON, else as a file path.
fn load_text(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') || trimmed.starts_with('"') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse { path: arg.to_string(), message: e.to_string() })
    }
}

/// Deserializes with a JSON path in error messages; `what` names the input.
pub fn parse_json<T: DeserializeOwned>(what: &str, text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse { path: format!("{what}: {path}"), message: e.into_inner().to_string() }
    })
}

fn load<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T> {
    parse_json(what, &load_text(arg)?)
}

/// Semigroup file: `{"degree": n, "generators": [element, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    pub degree: usize,
    pub generators: Vec<PartialInjection>,
}

impl SemigroupFile {
    pub fn build(&self) -> Result<FiniteInvSemigroup> {
        if let Some(g) = self.generators.iter().find(|g| g.degree() != self.degree) {
            return Err(Error::DegreeMismatch { left: self.degree, right: g.degree() });
        }
        FiniteInvSemigroup::closure(&self.generators)
    }
}

/// Bicyclic generator file: `{"gens": [[a, b], ...], "bound": N}`, or a bare list.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicyclicFile {
    pub gens: Vec<BicyclicElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

fn load_bicyclic(what: &str, arg: &str) -> Result<BicyclicFile> {
    let text = load_text(arg)?;
    if text.trim_start().starts_with('[') {
        Ok(BicyclicFile { gens: parse_json(what, &text)?, bound: None })
    } else {
        parse_json(what, &text)
    }
}

fn load_words(what: &str, arg: &str) -> Result<Vec<String>> {
    let text = load_text(arg)?;
    if text.trim_start().starts_with('[') {
        parse_json(what, &text)
    } else {
        let word: String = parse_json(what, &text)?;
        Ok(vec![word])
    }
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn require_json(format: Format, command: &str) -> Result<()> {
    if format != Format::Json {
        return Err(Error::Precondition(format!("--format {format:?} is not available for {command}").to_lowercase()));
    }
    Ok(())
}

pub fn execute(cli: &Cli, env_bound: Option<&str>) -> Result<String> {
    let opts = &cli.options;
    match &cli.command {
        Command::Closure { semigroup } => {
            let s = load::<SemigroupFile>("semigroup", semigroup)?.build()?;
            match opts.format {
                Format::Json => Ok(render(&closure_report(&s))),
                Format::Text => Ok(closure_text(&s)),
                Format::Dot => require_json(opts.format, "closure").map(|_| String::new()),
            }
        }
        Command::Greens { semigroup } => {
            let s = load::<SemigroupFile>("semigroup", semigroup)?.build()?;
            let g = greens(&s)?;
            match opts.format {
                Format::Json => Ok(render(&greens_report(&s, &g)?)),
                Format::Text => Ok(eggbox_text(&s, &g)),
                Format::Dot => Ok(eggbox_dot(&s, &g)),
            }
        }
        Command::Eggbox { semigroup } => {
            let s = load::<SemigroupFile>("semigroup", semigroup)?.build()?;
            let g = greens(&s)?;
            match opts.format {
                Format::Dot => Ok(eggbox_dot(&s, &g)),
                Format::Text => Ok(eggbox_text(&s, &g)),
                Format::Json => Ok(render(&greens_report(&s, &g)?)),
            }
        }
        Command::Intersect { semigroup, brandt, u, v } => {
            require_json(opts.format, "intersect")?;
            if let Some(b) = brandt {
                let b: BrandtSemigroup = load("brandt", b)?;
                let u: Vec<BrandtElement> = load("u", u)?;
                let v: Vec<BrandtElement> = load("v", v)?;
                Ok(render(&brandt_intersect_report(&b, &u, &v)?))
            } else {
                let file: SemigroupFile = load("semigroup", semigroup.as_deref().expect("clap enforces one input"))?;
                let s = file.build()?;
                let u = s.indices_of(&load::<Vec<PartialInjection>>("u", u)?)?;
                let v = s.indices_of(&load::<Vec<PartialInjection>>("v", v)?)?;
                let g = greens(&s)?;
                let out = howson::intersect_fg(&s, &g, &u, &v)?;
                let size = s.subclosure(&u).intersection(&s.subclosure(&v)).count();
                Ok(render(&json!({
                    "command": "intersect",
                    "empty": out.empty,
                    "generators": out.generators.iter().map(|&i| s.element(i)).collect::<Vec<_>>(),
                    "intersection_size": size,
                })))
            }
        }
        Command::Howson { semigroup, u, v } => {
            require_json(opts.format, "howson")?;
            let s = load::<SemigroupFile>("semigroup", semigroup)?.build()?;
            let u = s.indices_of(&load::<Vec<PartialInjection>>("u", u)?)?;
            let v = s.indices_of(&load::<Vec<PartialInjection>>("v", v)?)?;
            Ok(render(&howson_report(&s, &u, &v)?))
        }
        Command::BicyclicSummary { gens } => {
            require_json(opts.format, "bicyclic-summary")?;
            let file = load_bicyclic("gens", gens)?;
            let bound = resolve_bound(opts.bound, file.bound, env_bound)?;
            let summary = bicyclic::structural_summary(&file.gens, bound.value, opts.cap)?;
            let fgs = if summary.has_nonidempotent {
                Some(bicyclic::finite_generating_set(&file.gens, bound.value, opts.cap)?)
            } else {
                None
            };
            Ok(render(&json!({
                "command": "bicyclic-summary",
                "gens": file.gens,
                "summary": summary,
                "finite_generating_set": fgs,
                "bound": bound.value,
                "bound_source": bound.source,
                "escape_cap": opts.cap,
            })))
        }
        Command::BicyclicIntersect { u, v } => {
            require_json(opts.format, "bicyclic-intersect")?;
            let u = load_bicyclic("u", u)?;
            let v = load_bicyclic("v", v)?;
            let bound = resolve_bound(opts.bound, u.bound.max(v.bound), env_bound)?;
            let out = bicyclic::intersect(&u.gens, &v.gens, bound.value, opts.cap)?;
            Ok(render(&json!({
                "command": "bicyclic-intersect",
                "u": u.gens,
                "v": v.gens,
                "result": out,
                "bound_source": bound.source,
                "certified_up_to": bound.value,
            })))
        }
        Command::MonogenicEq { presentation, lhs, rhs } => {
            require_json(opts.format, "monogenic-eq")?;
            let p: Presentation = load("presentation", presentation)?;
            let q = Quotient::new(p, opts.span_cap)?;
            let side = |w: &str| -> Result<Value> {
                let triple = monogenic::eval_word(w)?;
                Ok(json!({ "word": w, "triple": triple, "class": q.project(triple) }))
            };
            Ok(render(&json!({
                "command": "monogenic-eq",
                "presentation": p,
                "lhs": side(lhs)?,
                "rhs": side(rhs)?,
                "equal": q.equal(lhs, rhs)?,
                "span_cap": q.cap(),
            })))
        }
        Command::MonogenicIntersect { presentation, u, v } => {
            require_json(opts.format, "monogenic-intersect")?;
            let p: Presentation = load("presentation", presentation)?;
            let u = load_words("u", u)?;
            let v = load_words("v", v)?;
            let bound = resolve_bound(opts.bound, None, env_bound)?;
            let out = monogenic::intersect_fg(p, &u, &v, bound.value, opts.cap, opts.span_cap)?;
            Ok(render(&json!({
                "command": "monogenic-intersect",
                "presentation": p,
                "u": u,
                "v": v,
                "result": out,
                "bound_source": bound.source,
            })))
        }
    }
}

pub fn closure_report(s: &FiniteInvSemigroup) -> Value {
    let elements: Vec<Value> = (0..s.len())
        .map(|i| json!({ "element": s.element(i), "word": s.word(i).to_string(), "idempotent": s.is_idempotent(i) }))
        .collect();
    json!({
        "command": "closure",
        "degree": s.degree(),
        "generators": s.generators(),
        "size": s.len(),
        "elements": elements,
    })
}

fn closure_text(s: &FiniteInvSemigroup) -> String {
    let mut out = format!("degree {}, {} elements\n", s.degree(), s.len());
    for i in 0..s.len() {
        let mark = if s.is_idempotent(i) { " *" } else { "" };
        out.push_str(&format!("{:>4}  {}  {}{}\n", i, s.element(i), s.word(i), mark));
    }
    out
}

pub fn greens_report(s: &FiniteInvSemigroup, g: &GreensData) -> Result<Value> {
    let order = g.d_classes_top_down();
    let rank_of = |d: usize| order.iter().position(|&x| x == d).expect("every class is ordered");
    let mut classes = Vec::new();
    for &d in &order {
        let rows = g.r_classes_in(d);
        let cols = g.l_classes_in(d);
        let grid: Vec<Vec<Vec<usize>>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&l| g.h_class_at(r, l).map(|h| g.h_classes[h].clone()).unwrap_or_default())
                    .collect()
            })
            .collect();
        let e = g.d_classes[d].iter().copied().find(|&a| s.is_idempotent(a)).expect("D-class has an idempotent");
        classes.push(json!({
            "id": rank_of(d),
            "elements": g.d_classes[d],
            "rows": rows.len(),
            "columns": cols.len(),
            "h_grid": grid,
            "idempotents": g.d_classes[d].iter().copied().filter(|&a| s.is_idempotent(a)).collect::<Vec<_>>(),
            "maximal_subgroup_order": maximal_subgroup(s, e)?.group.order(),
            "is_kernel": g.kernel == Some(d),
        }));
    }
    let covers: Vec<[usize; 2]> = {
        let mut c: Vec<[usize; 2]> = g.j_covers().into_iter().map(|(a, b)| [rank_of(a), rank_of(b)]).collect();
        c.sort_unstable();
        c
    };
    Ok(json!({
        "command": "greens",
        "size": s.len(),
        "elements": s.elements(),
        "d_classes": classes,
        "j_covers": covers,
        "kernel": g.kernel.map(rank_of),
        "idempotent_count": g.idempotents.len(),
    }))
}

/// One cluster per D-class (top-down), an R × L grid per cluster, group
/// H-classes shaded and starred, and J-order covers as edges.
pub fn eggbox_dot(s: &FiniteInvSemigroup, g: &GreensData) -> String {
    let order = g.d_classes_top_down();
    let mut out = String::from("digraph eggbox {\n  rankdir=TB;\n  node [shape=plaintext];\n");
    for (rank, &d) in order.iter().enumerate() {
        let rows = g.r_classes_in(d);
        let cols = g.l_classes_in(d);
        out.push_str(&format!("  subgraph cluster_d{rank} {{\n    label=\"D{rank} (size {})\";\n", g.d_classes[d].len()));
        out.push_str(&format!("    d{rank} [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">\n"));
        for &r in &rows {
            out.push_str("      <tr>");
            for &l in &cols {
                let members: Vec<usize> = g.h_class_at(r, l).map(|h| g.h_classes[h].clone()).unwrap_or_default();
                let group = members.iter().any(|&a| s.is_idempotent(a));
                let text: Vec<String> = members.iter().map(|&a| escape_html(&s.element(a).to_string())).collect();
                let label = text.join("<br/>");
                if group {
                    out.push_str(&format!("<td bgcolor=\"lightgrey\">* {label}</td>"));
                } else {
                    out.push_str(&format!("<td>{label}</td>"));
                }
            }
            out.push_str("</tr>\n");
        }
        out.push_str("    </table>>];\n  }\n");
    }
    let rank_of = |d: usize| order.iter().position(|&x| x == d).expect("ordered");
    let mut covers: Vec<(usize, usize)> = g.j_covers().into_iter().map(|(a, b)| (rank_of(a), rank_of(b))).collect();
    covers.sort_unstable();
    for (a, b) in covers {
        out.push_str(&format!("  d{a} -> d{b};\n"));
    }
    out.push_str("}\n");
    out
}

fn escape_html(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn eggbox_text(s: &FiniteInvSemigroup, g: &GreensData) -> String {
    let mut out = String::new();
    for (rank, d) in g.d_classes_top_down().into_iter().enumerate() {
        let kernel = if g.kernel == Some(d) { ", kernel" } else { "" };
        out.push_str(&format!("D{rank} (size {}{kernel})\n", g.d_classes[d].len()));
        for r in g.r_classes_in(d) {
            let cells: Vec<String> = g
                .l_classes_in(d)
                .into_iter()
                .map(|l| {
                    let members: Vec<usize> = g.h_class_at(r, l).map(|h| g.h_classes[h].clone()).unwrap_or_default();
                    let star = if members.iter().any(|&a| s.is_idempotent(a)) { "*" } else { "" };
                    let names: Vec<String> = members.iter().map(|&a| s.element(a).to_string()).collect();
                    format!("{star}{}", names.join(" "))
                })
                .collect();
            out.push_str(&format!("  | {} |\n", cells.join(" | ")));
        }
    }
    out
}

fn brandt_intersect_report(b: &BrandtSemigroup, u: &[BrandtElement], v: &[BrandtElement]) -> Result<Value> {
    let out = b.intersect(u, v)?;
    let factors: Vec<Value> = out
        .decomposition
        .factors
        .iter()
        .map(|f| {
            json!({
                "rows": f.rows,
                "base_row": f.base_row,
                "subgroup": f.subgroup,
                "transversal": f.transversal,
                "size": f.elements.len(),
            })
        })
        .collect();
    Ok(json!({
        "command": "intersect",
        "empty": out.empty,
        "contains_zero": out.decomposition.contains_zero,
        "generators": out.generators,
        "factors": factors,
    }))
}

fn element_entry(s: &FiniteInvSemigroup, i: usize) -> Value {
    json!({ "element": s.element(i), "word": s.word(i).to_string() })
}

fn assembly_report(s: &FiniteInvSemigroup, g: &GreensData, x: &[usize], rank_of: &dyn Fn(usize) -> usize) -> Result<Value> {
    let a = howson::assemble(s, g, x)?;
    let blocks: Vec<Value> = a
        .blocks
        .iter()
        .map(|b| {
            let gens: Vec<Value> = b
                .generators
                .iter()
                .zip(&b.provenance)
                .map(|(&i, &(e, letter))| {
                    let mut entry = element_entry(s, i);
                    entry["provenance"] = json!({
                        "idempotent": s.element(e),
                        "letter": crate::finite::Word(vec![letter]).to_string(),
                    });
                    entry
                })
                .collect();
            json!({ "class": rank_of(b.class), "is_kernel": g.kernel == Some(b.class), "generators": gens })
        })
        .collect();
    Ok(json!({ "size": s.subclosure(x).len(), "blocks": blocks }))
}

pub fn howson_report(s: &FiniteInvSemigroup, u: &[usize], v: &[usize]) -> Result<Value> {
    let g = greens(s)?;
    let order = g.d_classes_top_down();
    let rank_of = |d: usize| order.iter().position(|&x| x == d).expect("ordered");
    let inter = howson::intersect_fg(s, &g, u, v)?;
    let blocks: Vec<Value> = inter
        .blocks
        .iter()
        .map(|b| {
            json!({
                "class": rank_of(b.class),
                "is_kernel": b.is_kernel,
                "generators": b.generators.iter().map(|&i| element_entry(s, i)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let meet: BTreeSet<usize> = s.subclosure(u).intersection(&s.subclosure(v)).copied().collect();
    Ok(json!({
        "command": "howson",
        "ambient_size": s.len(),
        "u": assembly_report(s, &g, u, &rank_of)?,
        "v": assembly_report(s, &g, v, &rank_of)?,
        "intersection": {
            "empty": inter.empty,
            "size": meet.len(),
            "blocks": blocks,
            "generators": inter.generators.iter().map(|&i| element_entry(s, i)).collect::<Vec<_>>(),
        },
    }))
}
