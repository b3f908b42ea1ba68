//! The `silt` command line tool.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::Algebra;
use crate::ar::ar_report;
use crate::complex::{bongartz_complete, is_presilting, ChainMap, ProjComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures;
use crate::format::{emit_complex, emit_structure_constants, parse_algebra, parse_complex, ComplexFile};
use crate::report::{Check, Report};
use crate::theorem::{module_battery, theorem_report, BatteryOptions, SiltingContext, TorsionPair};

#[derive(Parser, Debug)]
#[command(name = "silt", version, about = "Exact computations with 2-term silting complexes")]
pub struct Cli {
    /// Field override: a prime p or Q.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub report: Format,
    /// Write outputs into this directory instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Presilting, silting and tilting verdicts.
    Check(Input),
    /// Bongartz completion of a presilting complex.
    Complete(Input),
    /// Endomorphism algebra B, its Gabriel quiver, and the complex Q over B.
    Endo(Input),
    /// Battery-level verification of the silting theorem.
    Theorem(BatteryInput),
    /// Connecting sequences, splitting and separating checks.
    Ar(BatteryInput),
    /// Lists the module battery of an algebra.
    Battery(BatteryInput),
}

#[derive(Args, Debug)]
pub struct Input {
    /// Algebra file, or `@name` for a bundled fixture (then the complex is implied).
    pub alg: String,
    /// Complex file.
    pub cpx: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BatteryInput {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, default_value_t = 16)]
    pub battery_max_dim: usize,
    #[arg(long, default_value_t = 40)]
    pub battery_cap: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl BatteryInput {
    fn options(&self) -> BatteryOptions {
        BatteryOptions { max_dim: self.battery_max_dim, cap: self.battery_cap, seed: self.seed, ..Default::default() }
    }
}

struct Loaded {
    name: String,
    alg: Arc<Algebra>,
    complex: Option<ComplexFile>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn load(input: &Input, field: Option<Field>, need_complex: bool) -> Result<Loaded> {
    if let Some(name) = input.alg.strip_prefix('@') {
        let fx = fixtures::fixture(name).ok_or_else(|| Error::Io(format!("unknown fixture `{name}`")))?;
        let alg = fx.algebra(field)?;
        let complex = match &input.cpx {
            Some(p) => parse_complex(&read(p)?, &alg)?,
            None => parse_complex(fx.complex, &alg)?,
        };
        return Ok(Loaded { name: name.to_string(), alg, complex: Some(complex) });
    }
    let alg = Arc::new(parse_algebra(&read(Path::new(&input.alg))?)?.build(field)?);
    let complex = match &input.cpx {
        Some(p) => Some(parse_complex(&read(p)?, &alg)?),
        None if need_complex => return Err(Error::Io("missing complex file".into())),
        None => None,
    };
    let stem = input.cpx.as_deref().unwrap_or(Path::new(&input.alg));
    let name = stem.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(Loaded { name, alg, complex })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn format_map(m: &ChainMap, x: &ProjComplex, y: &ProjComplex) -> String {
    let alg = x.algebra();
    let mut parts = Vec::new();
    if let Some((lo, hi)) = x.support() {
        for d in lo..=hi {
            let c = m.comp(d, x, y);
            if !c.is_zero() {
                parts.push(format!("deg {d}: {}", c.format(alg)));
            }
        }
    }
    parts.join("; ")
}

/// What a command produced: named files for `--out`, else concatenated to stdout.
struct Output {
    files: Vec<(String, String)>,
    code: i32,
}

impl Output {
    fn one(name: &str, body: String) -> Output {
        Output { files: vec![(name.to_string(), body)], code: 0 }
    }
}

fn report_output(r: &Report, fmt: Format) -> Output {
    let (name, body) = match fmt {
        Format::Json => ("report.json", r.to_json()),
        Format::Text => ("report.txt", r.to_text()),
    };
    Output { files: vec![(name.to_string(), body)], code: if r.passed() { 0 } else { 3 } }
}

fn cmd_check(l: &Loaded, fmt: Format) -> Result<Output> {
    let c = l.complex.as_ref().expect("complex loaded");
    let v = is_presilting(&c.total)?;
    let p = &c.total;
    let mut r = Report::new(&l.name, l.alg.field().tag());
    r.push(Check::pass_if("two-term", v.two_term));
    let mut pre = Check::pass_if("presilting", v.presilting).dim("hom_p_p1", v.hom_shift_plus);
    if let Some(w) = &v.presilting_witness {
        pre = pre.witness(format!("Hom(P, P[1]) ∋ {}", format_map(w, p, &p.shift(1))));
    }
    r.push(pre);
    r.push(Check::pass_if("silting", v.silting).dim("classes", v.classes).dim("simples", v.simples));
    let mut til = Check::pass_if("tilting", v.tilting).dim("hom_p_pm1", v.hom_shift_minus);
    if let Some(w) = &v.tilting_witness {
        til = til.witness(format!("Hom(P, P[-1]) ∋ {}", format_map(w, p, &p.shift(-1))));
    }
    r.push(til);
    if fmt == Format::Json {
        return Ok(Output::one("check.json", r.to_json()));
    }
    let mut s = format!("complex: {}\n", l.name);
    s.push_str(&format!("two-term: {}\n", yes(v.two_term)));
    s.push_str(&format!("summand classes: {} of {}\n", v.classes, v.simples));
    s.push_str(&format!("presilting: {}\n", yes(v.presilting)));
    s.push_str(&format!("silting: {}\n", yes(v.silting)));
    s.push_str(&format!("tilting: {}\n", yes(v.tilting)));
    for c in &r.checks {
        if let Some(w) = &c.witness {
            s.push_str(&format!("witness: {w}\n"));
        }
    }
    Ok(Output::one("check.txt", s))
}

fn cmd_complete(l: &Loaded) -> Result<Output> {
    let c = l.complex.as_ref().expect("complex loaded");
    let b = bongartz_complete(&c.total)?;
    Ok(Output::one(&format!("{}_completed.cpx", l.name), emit_complex(&format!("{}_completed", c.name), &b.summands)))
}

fn context(l: &Loaded) -> Result<SiltingContext> {
    SiltingContext::new(&l.complex.as_ref().expect("complex loaded").summands)
}

fn cmd_endo(l: &Loaded, fmt: Format) -> Result<Output> {
    let ctx = context(l)?;
    let b = ctx.b();
    let g = b.gabriel_quiver()?;
    let mut arrows = Vec::new();
    for (i, row) in g.arrows.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            if k > 0 {
                arrows.push((i + 1, j + 1, k));
            }
        }
    }
    let b_file = emit_structure_constants(b);
    let q_file = emit_complex("Q", std::slice::from_ref(&ctx.q));
    if fmt == Format::Json {
        let v = json!({
            "fixture": l.name,
            "dim": b.dim(),
            "vertices": g.vertices,
            "arrows": arrows.iter().map(|(i, j, k)| json!({"from": i, "to": j, "count": k})).collect::<Vec<_>>(),
            "structure_constants": b_file,
            "q": q_file,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("json");
        s.push('\n');
        return Ok(Output::one("endo.json", s));
    }
    let mut gab = format!("# Gabriel quiver of B: {} vertices, {} arrows\n", g.vertices, g.arrow_count());
    for (i, j, k) in &arrows {
        gab.push_str(&format!("#   {i} -> {j}{}\n", if *k > 1 { format!(" (x{k})") } else { String::new() }));
    }
    Ok(Output {
        files: vec![
            ("gabriel.txt".into(), gab),
            (format!("{}_endo.alg", l.name), b_file),
            (format!("{}_q.cpx", l.name), q_file),
        ],
        code: 0,
    })
}

fn cmd_battery(l: &Loaded, bi: &BatteryInput, fmt: Format) -> Result<Output> {
    let bat = module_battery(&l.alg, &[], &bi.options())?;
    let tp = match &l.complex {
        Some(c) if is_presilting(&c.total)?.silting => Some(TorsionPair::new(&c.total)?),
        _ => None,
    };
    let mut rows = Vec::new();
    for (i, m) in bat.modules.iter().enumerate() {
        let class = match &tp {
            Some(tp) => Some(if tp.in_torsion(m)? {
                "T"
            } else if tp.in_free(m)? {
                "F"
            } else {
                "neither"
            }),
            None => None,
        };
        rows.push((bat.label(i), m.dim(), class));
    }
    if fmt == Format::Json {
        let v = json!({
            "algebra": l.name,
            "complete": bat.complete,
            "modules": rows.iter().map(|(label, d, c)| {
                let mut o = json!({"label": label, "dim": d});
                if let Some(c) = c { o["class"] = json!(c); }
                o
            }).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("json");
        s.push('\n');
        return Ok(Output::one("battery.json", s));
    }
    let mut s = format!("{} indecomposables, {}\n", bat.len(), if bat.complete { "complete" } else { "not known to be complete" });
    for (label, d, c) in rows {
        s.push_str(&format!("{label:<16} dim {d:<3}{}\n", c.map(|c| format!(" {c}")).unwrap_or_default()));
    }
    Ok(Output::one("battery.txt", s))
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let field = cli.field.as_deref().map(Field::parse).transpose()?;
    match &cli.command {
        Command::Check(i) => cmd_check(&load(i, field, true)?, cli.report),
        Command::Complete(i) => cmd_complete(&load(i, field, true)?),
        Command::Endo(i) => cmd_endo(&load(i, field, true)?, cli.report),
        Command::Theorem(bi) => {
            let l = load(&bi.input, field, true)?;
            Ok(report_output(&theorem_report(&context(&l)?, &l.name, &bi.options())?, cli.report))
        }
        Command::Ar(bi) => {
            let l = load(&bi.input, field, true)?;
            Ok(report_output(&ar_report(&context(&l)?, &l.name, &bi.options())?, cli.report))
        }
        Command::Battery(bi) => cmd_battery(&load(&bi.input, field, false)?, bi, cli.report),
    }
}

/// Runs the tool; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let o = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    if let Some(dir) = &cli.out {
        if let Err(e) = std::fs::create_dir_all(dir) {
            let _ = writeln!(err, "error: cannot create {}: {e}", dir.display());
            return 1;
        }
        for (name, body) in &o.files {
            let path = dir.join(name);
            if let Err(e) = std::fs::write(&path, body) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 1;
            }
            let _ = writeln!(out, "{}", path.display());
        }
    } else {
        for (_, body) in &o.files {
            let _ = out.write_all(body.as_bytes());
        }
    }
    o.code
}
