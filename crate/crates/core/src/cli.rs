//! Command-line surface. The `gradedrep` binary is a thin wrapper around
//! [`main_with_args`].
//!
//! Exit codes: 0 success, 1 mathematical refusal (a precondition failed, a
//! window was too small, or a verification did not pass), 2 input error.

use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::artheory::{
    almost_split_sequence, ar_formula_check, nakayama, tau, tau_inverse, transpose, verify_almost_split,
    AlmostSplitSequence, Certificate, Direction,
};
use crate::criteria::{existence_report, simple_dimensions, Caps};
use crate::error::{Error, Result};
use crate::gmodule::GradedModule;
use crate::homs::{ext1, ghom, is_strongly_indecomposable_with, DEFAULT_BUDGET};
use crate::io::{
    canonical, module_to_json, morphism_to_json, parse_module, parse_morphism, pmap_to_json, summands_to_json,
    write_atomic, ModuleSpec, Problem, Task,
};
use crate::presentations::{
    injective_envelope, minimal_copresentation_in, minimal_presentation_in, projective_cover, GradedDim, Kind,
    DEFAULT_PAD,
};

/// Environment variable naming a directory for outputs.
pub const OUT_DIR_VAR: &str = "GRADEDREP_OUT";

#[derive(Parser, Debug)]
#[command(name = "gradedrep", version, about = "Graded representations of bound quivers")]
pub struct Cli {
    /// Problem file (JSON).
    #[arg(long, global = true)]
    pub problem: Option<PathBuf>,
    /// Degree window `lo:hi` for realizing modules.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Degree / resolution-length cap.
    #[arg(long, global = true, default_value_t = 10)]
    pub cap: usize,
    /// Seed for randomized searches (indecomposability candidates).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON (canonical, sorted keys).
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,
    /// Emit a human-readable table (the default).
    #[arg(long, global = true)]
    pub table: bool,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct One {
    #[arg(long)]
    pub module: String,
}

#[derive(Args, Debug, Clone)]
pub struct Two {
    #[arg(long)]
    pub module: String,
    #[arg(long)]
    pub other: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DirectionArg {
    Ending,
    Starting,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Parse the problem and check every module against the relations.
    Validate,
    /// Graded dimensions of a module.
    Dims(One),
    /// Basis of degree-zero homomorphisms.
    Hom(Two),
    /// `Ext¹(module, other)`.
    Ext1(Two),
    /// Radical `JM` and its inclusion
    Rad(One),
    /// Top `M/JM` with a top basis
    Top(One),
    /// Socle with a socle basis
    Soc(One),
    /// Projective cover.
    Cover(One),
    /// Injective envelope.
    Envelope(One),
    /// Minimal projective presentation.
    Present(One),
    /// Minimal injective copresentation.
    Copresent(One),
    /// Transpose over the opposite algebra.
    Transpose(One),
    /// Nakayama functor applied to the minimal presentation.
    Nakayama(One),
    /// Auslander-Reiten translate.
    Tau(One),
    /// Inverse Auslander-Reiten translate.
    TauInv(One),
    /// Construct an almost split sequence.
    Ars {
        #[arg(long)]
        module: String,
        #[arg(long, value_enum, default_value = "ending")]
        direction: DirectionArg,
    },
    /// Verify a sequence file written by `ars --json`.
    VerifyArs {
        #[arg(long)]
        sequence: PathBuf,
    },
    /// Both AR-formula dimension identities for a pair.
    ArFormula(Two),
    /// Graded projective and injective dimensions of simples.
    Pd {
        /// A vertex label, or `all`.
        #[arg(long, default_value = "all")]
        simple: String,
    },
    /// Existence report for almost split sequences and triangles.
    Criteria,
    /// Cycle analysis and boundedness of the quiver.
    AnalyzeQuiver,
    /// Run every task listed in the problem file, one output file per task.
    Tasks,
}

/// Result of one command: JSON, a table, and the exit code it implies.
pub struct Output {
    pub json: Value,
    pub table: String,
    pub code: i32,
}

impl Output {
    fn ok(json: Value, table: String) -> Output {
        Output { json, table, code: 0 }
    }
}

struct Ctx<'a> {
    problem: Option<&'a Problem>,
    window: Option<(i64, i64)>,
    cap: usize,
    seed: u64,
}

impl Ctx<'_> {
    fn problem(&self) -> Result<&Problem> {
        self.problem.ok_or_else(|| Error::parse("--problem", "this command needs a problem file"))
    }

    fn module(&self, name: &str) -> Result<GradedModule> {
        let p = self.problem()?;
        match (p.modules.get(name), self.window) {
            (Some(ModuleSpec::Standard(s)), Some(w)) => {
                let mut s = s.clone();
                s.window = Some(w);
                let mut q = Problem::new(p.algebra.clone());
                q.modules.insert(name.into(), ModuleSpec::Standard(s));
                q.module(name)
            }
            (Some(ModuleSpec::Data(m)), Some((lo, hi))) => Ok(m.restrict(lo, hi)),
            _ => p.module(name),
        }
    }
}

pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::parse("--window", format!("expected lo:hi, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn dims_table(m: &GradedModule) -> String {
    let q = m.algebra().quiver();
    let (lo, hi) = m.window();
    let (below, above) = m.edges();
    let mut s = format!("window [{lo}, {hi}] below={below:?} above={above:?}\n");
    for (i, x, d) in m.dims_list() {
        s.push_str(&format!("  ({i},{}) {d}\n", q.label(x)));
    }
    if m.dims_list().is_empty() {
        s.push_str("  zero module\n");
    }
    s
}

fn summands_str(m: &GradedModule, kind: &str, s: &[(usize, i64)]) -> String {
    if s.is_empty() {
        return "0".into();
    }
    let q = m.algebra().quiver();
    s.iter().map(|&(a, t)| format!("{kind}_{}<{t}>", q.label(a))).collect::<Vec<_>>().join(" + ")
}

fn module_output(m: &GradedModule, extra: Map<String, Value>, title: &str) -> Output {
    let mut j = Map::new();
    j.insert("module".into(), module_to_json(m));
    j.extend(extra);
    Output::ok(Value::Object(j), format!("{title}\n{}", dims_table(m)))
}

fn dim_json(d: &GradedDim) -> Value {
    serde_json::to_value(d).expect("graded dimension")
}

fn sequence_json(seq: &AlmostSplitSequence) -> Value {
    json!({
        "left": module_to_json(&seq.left),
        "middle": module_to_json(&seq.middle),
        "right": module_to_json(&seq.right),
        "f": morphism_to_json(&seq.f),
        "g": morphism_to_json(&seq.g),
        "certificate": certificate_json(&seq.certificate),
    })
}

fn certificate_json(c: &Certificate) -> Value {
    let mut v = serde_json::to_value(c).expect("certificate");
    v["pass"] = json!(c.pass());
    v
}

fn certificate_table(c: &Certificate) -> String {
    format!(
        "exact: {}\nclass: [{}]\nnonsplit: {}\nsocle: {:?}\nleft is tau: {}\nindecomposable ends: {} / {}\nverdict: {}\n",
        c.exact,
        c.class.join(", "),
        c.nonsplit,
        c.socle,
        c.left_is_tau,
        c.indecomposable_ends.0,
        c.indecomposable_ends.1,
        if c.pass() { "pass".to_string() } else { format!("fail({})", c.failures.join(", ")) }
    )
}

fn run(cmd: &Command, ctx: &Ctx) -> Result<Output> {
    let pad = DEFAULT_PAD;
    match cmd {
        Command::Validate => {
            let p = ctx.problem()?;
            let mut report = Map::new();
            let mut table = String::new();
            let mut bad = false;
            for name in p.modules.keys() {
                let m = p.module(name)?;
                let status = match m.validate() {
                    Ok(()) => json!("ok"),
                    Err(v) => {
                        bad = true;
                        json!({"relation": v.relation, "degree": v.degree})
                    }
                };
                table.push_str(&format!("{name}: {status}\n"));
                report.insert(name.clone(), status);
            }
            table.push_str(&format!("{} relations, {} tasks\n", p.algebra.relations().len(), p.tasks.len()));
            Ok(Output { json: json!({"modules": report, "valid": !bad}), table, code: if bad { 2 } else { 0 } })
        }
        Command::Dims(a) => {
            let m = ctx.module(&a.module)?;
            let mut extra = Map::new();
            let mut title = a.module.clone();
            if m.is_exact() && !m.is_zero() {
                let v = is_strongly_indecomposable_with(&m, DEFAULT_BUDGET, ctx.seed)?;
                extra.insert("indecomposable".into(), json!(v.label()));
                title.push_str(&format!(" (indecomposable: {})", v.label()));
            }
            Ok(module_output(&m, extra, &title))
        }
        Command::Hom(a) => {
            let (m, n) = (ctx.module(&a.module)?, ctx.module(&a.other)?);
            let h = ghom(&m, &n)?;
            let basis: Vec<Value> = h.basis.iter().map(morphism_to_json).collect();
            Ok(Output::ok(json!({"dim": h.dim(), "basis": basis}), format!("dim GHom({}, {}) = {}\n", a.module, a.other, h.dim())))
        }
        Command::Ext1(a) => {
            let (m, n) = (ctx.module(&a.module)?, ctx.module(&a.other)?);
            let e = ext1(&m, &n)?;
            Ok(Output::ok(
                json!({"dim": e.dim(), "syzygy": module_to_json(e.syzygy()), "cover": summands_to_json(m.algebra(), &e.cover.summands)}),
                format!("dim Ext1({}, {}) = {}\n", a.module, a.other, e.dim()),
            ))
        }
        Command::Rad(a) => {
            let (r, _) = ctx.module(&a.module)?.radical()?;
            Ok(module_output(&r, Map::new(), &format!("rad {}", a.module)))
        }
        Command::Top(a) => {
            let t = ctx.module(&a.module)?.top()?;
            Ok(module_output(&t.module, Map::new(), &format!("top {}", a.module)))
        }
        Command::Soc(a) => {
            let (s, _) = ctx.module(&a.module)?.socle()?;
            Ok(module_output(&s, Map::new(), &format!("soc {}", a.module)))
        }
        Command::Cover(a) => {
            let m = ctx.module(&a.module)?;
            let c = projective_cover(&m, ctx.window)?;
            let minimal = c.kernel_in_radical()?;
            let mut extra = Map::new();
            extra.insert("summands".into(), summands_to_json(m.algebra(), &c.summands));
            extra.insert("kernel".into(), module_to_json(&c.kernel));
            extra.insert("kernel_in_radical".into(), json!(minimal));
            let title = format!("cover {} -> {}\nkernel in radical: {minimal}\nkernel:", summands_str(&m, "P", &c.summands), a.module);
            Ok(module_output(&c.module, extra, &title).with_table_suffix(&dims_table(&c.kernel)))
        }
        Command::Envelope(a) => {
            let m = ctx.module(&a.module)?;
            let e = injective_envelope(&m, ctx.window)?;
            let ok = e.socle_in_image()?;
            let mut extra = Map::new();
            extra.insert("summands".into(), summands_to_json(m.algebra(), &e.summands));
            extra.insert("cokernel".into(), module_to_json(&e.cokernel));
            extra.insert("socle_in_image".into(), json!(ok));
            let title = format!("envelope {} -> {}\nsocle in image: {ok}\ncokernel:", a.module, summands_str(&m, "I", &e.summands));
            Ok(module_output(&e.module, extra, &title).with_table_suffix(&dims_table(&e.cokernel)))
        }
        Command::Present(a) => {
            let m = ctx.module(&a.module)?;
            let p = minimal_presentation_in(&m, ctx.window, pad)?;
            let j = json!({
                "p0": summands_to_json(m.algebra(), &p.p0),
                "p1": summands_to_json(m.algebra(), &p.p1),
                "d": pmap_to_json(&p.d),
                "exact": p.exact,
                "minimal": p.is_minimal(),
            });
            let t = format!(
                "{} -> {} -> {} -> 0\nminimal: {}\n",
                summands_str(&m, "P", &p.p1),
                summands_str(&m, "P", &p.p0),
                a.module,
                p.is_minimal()
            );
            Ok(Output::ok(j, t))
        }
        Command::Copresent(a) => {
            let m = ctx.module(&a.module)?;
            let c = minimal_copresentation_in(&m, ctx.window, pad)?;
            let j = json!({
                "i0": summands_to_json(m.algebra(), &c.i0),
                "i1": summands_to_json(m.algebra(), &c.i1),
                "d": pmap_to_json(&c.d.data),
                "minimal": c.is_minimal(),
            });
            let t = format!(
                "0 -> {} -> {} -> {}\nminimal: {}\n",
                a.module,
                summands_str(&m, "I", &c.i0),
                summands_str(&m, "I", &c.i1),
                c.is_minimal()
            );
            Ok(Output::ok(j, t))
        }
        Command::Transpose(a) => {
            let m = ctx.module(&a.module)?;
            let t = transpose(&m)?;
            let mut extra = Map::new();
            extra.insert("presentation".into(), pmap_to_json(&t.presentation));
            Ok(module_output(&t.module, extra, &format!("Tr {} (over the opposite algebra)", a.module)))
        }
        Command::Nakayama(a) => {
            let m = ctx.module(&a.module)?;
            let p = minimal_presentation_in(&m, ctx.window, pad)?;
            let i = nakayama(&p.d);
            let mut j = json!({"p_map": pmap_to_json(&p.d), "i_map": pmap_to_json(&i.data)});
            let mut t = format!(
                "nu: {} -> {}\n",
                summands_str(&m, "I", &i.data.source),
                summands_str(&m, "I", &i.data.target)
            );
            if !p.p1.is_empty() {
                let degs: Vec<i64> = p.p1.iter().chain(&p.p0).map(|&(_, s)| -s).collect();
                let lo = degs.iter().min().copied().unwrap_or(0);
                let hi = degs.iter().max().copied().unwrap_or(0);
                let w = ctx.window.unwrap_or((lo - ctx.cap as i64 - pad, hi + pad));
                let f = i.realize(w)?;
                let (k, _) = f.kernel()?;
                j["kernel"] = module_to_json(&k);
                t.push_str(&format!("kernel of nu(d):\n{}", dims_table(&k)));
            }
            Ok(Output::ok(j, t))
        }
        Command::Tau(a) | Command::TauInv(a) => {
            let m = ctx.module(&a.module)?;
            let (t, name) = match cmd {
                Command::Tau(_) => (tau(&m)?, "tau"),
                _ => (tau_inverse(&m)?, "tau-inv"),
            };
            let mut extra = Map::new();
            if let Some(w) = &t.warning {
                extra.insert("warning".into(), json!(w));
            }
            let title = match &t.warning {
                Some(w) => format!("{name} {}\nwarning: {w}", a.module),
                None => format!("{name} {}", a.module),
            };
            Ok(module_output(&t.module, extra, &title))
        }
        Command::Ars { module, direction } => {
            let m = ctx.module(module)?;
            let dir = match direction {
                DirectionArg::Ending => Direction::Ending,
                DirectionArg::Starting => Direction::Starting,
            };
            let seq = almost_split_sequence(&m, dir)?;
            let t = format!(
                "left:\n{}middle:\n{}right:\n{}{}",
                dims_table(&seq.left),
                dims_table(&seq.middle),
                dims_table(&seq.right),
                certificate_table(&seq.certificate)
            );
            let code = if seq.certificate.pass() { 0 } else { 1 };
            Ok(Output { json: sequence_json(&seq), table: t, code })
        }
        Command::VerifyArs { sequence } => {
            let p = ctx.problem()?;
            let text = std::fs::read_to_string(sequence)?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Error::parse(format!("{}: line {}", sequence.display(), e.line()), e.to_string()))?;
            let get = |k: &str| v.get(k).ok_or_else(|| Error::parse(k, "missing"));
            let left = parse_module(&p.algebra, get("left")?)?;
            let middle = parse_module(&p.algebra, get("middle")?)?;
            let right = parse_module(&p.algebra, get("right")?)?;
            let f = parse_morphism(&left, &middle, get("f")?)?;
            let g = parse_morphism(&middle, &right, get("g")?)?;
            let seq = AlmostSplitSequence { left, middle, right, f, g, certificate: Certificate::default() };
            let c = verify_almost_split(&seq);
            let code = if c.pass() { 0 } else { 1 };
            Ok(Output { json: certificate_json(&c), table: certificate_table(&c), code })
        }
        Command::ArFormula(a) => {
            let (m, x) = (ctx.module(&a.module)?, ctx.module(&a.other)?);
            let r = ar_formula_check(&m, &x)?;
            let mut j = serde_json::to_value(&r).expect("report");
            j["first_holds"] = json!(r.first_holds());
            j["second_holds"] = json!(r.second_holds());
            let t = format!(
                "dim stable Hom(M,X) = {}  dim Ext1(X, tau M) = {}  {}\ndim costable Hom(X,M) = {}  dim Ext1(tau^- M, X) = {}  {}\n",
                r.stable_hom_mx,
                r.ext_x_tau_m,
                if r.first_holds() { "ok" } else { "MISMATCH" },
                r.costable_hom_xm,
                r.ext_tau_inv_m_x,
                if r.second_holds() { "ok" } else { "MISMATCH" }
            );
            let code = if r.first_holds() && r.second_holds() { 0 } else { 1 };
            Ok(Output { json: j, table: t, code })
        }
        Command::Pd { simple } => {
            let p = ctx.problem()?;
            let alg = &p.algebra;
            let (pds, ids) = rayon::join(
                || simple_dimensions(alg, Kind::Proj, ctx.cap),
                || simple_dimensions(alg, Kind::Inj, ctx.cap),
            );
            let (pds, ids) = (pds?, ids?);
            if simple != "all" {
                alg.quiver().vertex(simple)?;
            }
            let mut j = Map::new();
            let mut t = format!("{:<8} {:<28} {}\n", "simple", "graded pd", "graded id");
            for ((x, pd), (_, id)) in pds.iter().zip(&ids) {
                if simple != "all" && simple != x {
                    continue;
                }
                j.insert(x.clone(), json!({"pd": dim_json(pd), "id": dim_json(id)}));
                t.push_str(&format!("S_{x:<6} {:<28} {id}\n", pd.to_string()));
            }
            Ok(Output::ok(json!({"cap": ctx.cap, "simples": j}), t))
        }
        Command::Criteria => {
            let p = ctx.problem()?;
            let r = existence_report(&p.algebra, Caps::uniform(ctx.cap), p.assumes("locally_bounded"))?;
            Ok(Output::ok(serde_json::to_value(&r).expect("report"), r.table()))
        }
        Command::AnalyzeQuiver => {
            let p = ctx.problem()?;
            let a = p.algebra.quiver().analyze();
            let b = p.algebra.boundedness(ctx.cap.max(1))?;
            let t = format!(
                "acyclic: {}\ninfinite path with a starting point: {}\ninfinite path with an end point: {}\nstrongly locally finite: {}\nleft bounded: {}\nright bounded: {}\nnote: {}\n",
                a.acyclic,
                a.infinite_forward_path,
                a.infinite_backward_path,
                a.strongly_locally_finite,
                b.left_bounded(),
                b.right_bounded(),
                a.caveat
            );
            Ok(Output::ok(json!({"analysis": a, "boundedness": b}), t))
        }
        Command::Tasks => Err(Error::Internal("task lists are dispatched by the caller".into())),
    }
}

impl Output {
    fn with_table_suffix(mut self, s: &str) -> Output {
        self.table.push_str(s);
        self
    }
}

/// Translate a task entry into a command line understood by [`Cli`].
fn task_argv(t: &Task) -> Vec<String> {
    let mut argv = vec!["gradedrep".to_string(), t.command.clone()];
    for (k, v) in &t.args {
        argv.push(format!("--{k}"));
        argv.push(match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        });
    }
    argv
}

fn exit_code(e: &Error) -> i32 {
    if e.is_refusal() {
        1
    } else {
        2
    }
}

fn resolve_out(out: Option<&FsPath>, default_name: Option<&str>) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_VAR).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => default_name.map(|n| d.join(n)),
        (None, None) => None,
    }
}

fn render(o: &Output, json_mode: bool) -> String {
    if json_mode {
        canonical(&o.json)
    } else {
        o.table.clone()
    }
}

/// Run one parsed command line; returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    match execute_inner(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute_inner(cli: &Cli) -> Result<i32> {
    let window = cli.window.as_deref().map(parse_window).transpose()?;
    let problem = cli.problem.as_ref().map(Problem::load).transpose()?;
    let ctx = Ctx { problem: problem.as_ref(), window, cap: cli.cap, seed: cli.seed };
    if let Command::Tasks = cli.command {
        return run_tasks(cli, &ctx);
    }
    let o = run(&cli.command, &ctx)?;
    let text = render(&o, cli.json);
    match resolve_out(cli.out.as_deref(), None) {
        Some(path) => write_atomic(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(o.code)
}

fn run_tasks(cli: &Cli, ctx: &Ctx) -> Result<i32> {
    let p = ctx.problem()?;
    let results: Vec<(String, Result<Output>)> = p
        .tasks
        .par_iter()
        .map(|t| {
            let res = Cli::try_parse_from(task_argv(t))
                .map_err(|e| Error::parse(format!("task {}", t.name), e.to_string()))
                .and_then(|sub| run(&sub.command, ctx));
            (t.name.clone(), res)
        })
        .collect();
    let mut worst = 0;
    let mut summary = String::new();
    for (name, res) in results {
        let (text, code) = match res {
            Ok(o) => (render(&o, cli.json), o.code),
            Err(e) => (format!("error: {e}\n"), exit_code(&e)),
        };
        worst = worst.max(code);
        let ext = if cli.json { "json" } else { "txt" };
        match resolve_out(cli.out.as_deref().map(|d| d.join(format!("{name}.{ext}"))).as_deref(), Some(&format!("{name}.{ext}"))) {
            Some(path) => {
                write_atomic(&path, &text)?;
                summary.push_str(&format!("{name}: exit {code} -> {}\n", path.display()));
            }
            None => summary.push_str(&format!("== {name} (exit {code})\n{text}")),
        }
    }
    print!("{summary}");
    Ok(worst)
}

/// Parse `args` (including the program name) and run.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_flag() {
        assert_eq!(parse_window("-2:3").unwrap(), (-2, 3));
        assert!(parse_window("3:1").is_err());
        assert!(parse_window("x").is_err());
    }

    #[test]
    fn clap_accepts_every_command() {
        for c in crate::io::COMMANDS {
            let mut argv = vec!["gradedrep", c];
            match *c {
                "hom" | "ext1" | "ar-formula" => argv.extend(["--module", "M", "--other", "N"]),
                "dims" | "rad" | "top" | "soc" | "cover" | "envelope" | "present" | "copresent" | "transpose"
                | "nakayama" | "tau" | "tau-inv" | "ars" => argv.extend(["--module", "M"]),
                "verify-ars" => argv.extend(["--sequence", "s.json"]),
                _ => {}
            }
            Cli::try_parse_from(&argv).unwrap_or_else(|e| panic!("{c}: {e}"));
        }
    }

    #[test]
    fn missing_problem_is_input_error() {
        assert_eq!(main_with_args(["gradedrep", "criteria"]), 2);
        assert_eq!(main_with_args(["gradedrep", "bogus"]), 2);
    }
}
