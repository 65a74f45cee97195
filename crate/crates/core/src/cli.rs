//! The `plucker` command-line driver.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 over budget, 3 a
//! verification suite ran and at least one assertion failed.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::codes::{
    build_generator, closed_forms, verify_identity_table, verify_string_section, verify_suite, weight_distribution,
    CodeSpec, Kernel, SweepOptions, DEFAULT_BUDGET, SUITES,
};
use crate::error::{Error, Result};
use crate::exterior::{functional_to_wedge, functional_to_wedge_unsigned, DualFunctional};
use crate::gf::{Elem, Field, FieldSpec};
use crate::grassmann::strings;
use crate::linalg;
use crate::qcombin::{e_bound, e_prime_bound, GrassmannParams, IndexTuple};

pub const BUDGET_ENV: &str = "PLUCKER_BUDGET";
pub const EXIT_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "plucker", version, about = "Grassmann and Schubert codes over small finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print n, k, d, d2, e and e' for C(l, m) or C_alpha(l, m).
    Params(ParamsArgs),
    /// Compute the complete weight distribution by a full sweep.
    Wdist(WdistArgs),
    /// Run a verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Decide whether the hyperplane F = 0 is decomposable.
    Decompose(DecomposeArgs),
    /// Dump the string partition of G(l, V_m).
    Strings(StringsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Grid {
    /// Field order, "p" or "p^e".
    #[arg(short = 'q', long, default_value = "2")]
    pub q: String,
    #[arg(short = 'l', long = "ell")]
    pub ell: usize,
    #[arg(short = 'm', long)]
    pub m: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
pub struct Resources {
    /// Worker threads (default: all cores).
    #[arg(short = 'j', long)]
    pub jobs: Option<usize>,
    /// Operation budget; overrides PLUCKER_BUDGET.
    #[arg(long)]
    pub budget: Option<u128>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelArg {
    Auto,
    Parity,
    Generic,
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub grid: Grid,
    /// Schubert index tuple, e.g. "1,4".
    #[arg(long)]
    pub alpha: Option<String>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct WdistArgs {
    #[command(flatten)]
    pub grid: Grid,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub kernel: KernelArg,
    #[command(flatten)]
    pub out: Output,
    #[command(flatten)]
    pub res: Resources,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(short = 'q', long, default_value = "2")]
    pub q: String,
    #[arg(short = 'l', long = "ell", required_unless_present = "config")]
    pub ell: Option<usize>,
    #[arg(short = 'm', long, required_unless_present = "config")]
    pub m: Option<usize>,
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// TOML file listing runs; see the README for the layout.
    #[arg(long, conflicts_with_all = ["ell", "m"])]
    pub config: Option<PathBuf>,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub res: Resources,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub grid: Grid,
    /// "X:1,4 + 2*X:2,3" or a JSON object {"1,4": "1", ...}.
    #[arg(short = 'f', long)]
    pub functional: String,
    /// Also report the verdict under the unsigned identification.
    #[arg(long)]
    pub debug: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct StringsArgs {
    #[command(flatten)]
    pub grid: Grid,
    /// Check the section correspondence for this functional instead.
    #[arg(short = 'f', long)]
    pub functional: Option<String>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Matrix {
    run: Vec<Run>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Run {
    q: Vec<String>,
    ell: Option<usize>,
    m: Option<usize>,
    #[serde(default)]
    suites: Vec<String>,
    /// For the identity table: every 1 <= l <= m <= max_m.
    max_m: Option<usize>,
}

fn field(q: &str) -> Result<Field> {
    Ok(Field::new(q.parse::<FieldSpec>()?))
}

fn grassmann(q: &str, ell: usize, m: usize) -> Result<GrassmannParams> {
    GrassmannParams::new(ell, m, field(q)?)
}

impl Grid {
    fn params(&self) -> Result<GrassmannParams> {
        grassmann(&self.q, self.ell, self.m)
    }
}

impl Resources {
    fn options(&self, kernel: Kernel) -> Result<SweepOptions> {
        let budget = match self.budget {
            Some(b) => b,
            None => match std::env::var(BUDGET_ENV) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Error::usage(format!("{BUDGET_ENV}={s} is not a nonnegative integer")))?,
                Err(_) => DEFAULT_BUDGET,
            },
        };
        if self.jobs == Some(0) {
            return Err(Error::usage("-j must be at least 1"));
        }
        Ok(SweepOptions {
            threads: self.jobs,
            budget,
            kernel,
        })
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::usage(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::usage(format!("cannot write to stdout: {e}"))),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn spec_of(params: &GrassmannParams, alpha: Option<&str>) -> Result<CodeSpec> {
    match alpha {
        None => CodeSpec::grassmann(params),
        Some(a) => CodeSpec::schubert(params, &IndexTuple::parse(a, params.m)?),
    }
}

fn cmd_params(a: &ParamsArgs) -> Result<i32> {
    let params = a.grid.params()?;
    let spec = spec_of(&params, a.alpha.as_deref())?;
    let mut rows: Vec<(String, String)> = vec![
        ("q".into(), params.field.spec().to_string()),
        ("ell".into(), params.ell.to_string()),
        ("m".into(), params.m.to_string()),
    ];
    if let Some(alpha) = spec.alpha() {
        rows.push(("alpha".into(), alpha.to_string()));
        rows.push(("delta".into(), alpha.delta().to_string()));
    }
    rows.push(("n".into(), spec.n().to_string()));
    rows.push(("k".into(), spec.k().to_string()));
    for c in closed_forms(&spec, None) {
        let name = match c.name {
            "min_distance" => "d",
            "second_min_weight" => "d2",
            other => other,
        };
        rows.push((name.into(), c.value.to_string()));
    }
    if spec.alpha().is_none() && params.ell >= 1 && params.ell < params.m {
        rows.push(("e".into(), e_bound(params.ell, params.m, params.q())?.to_string()));
        if let Ok(e2) = e_prime_bound(params.ell, params.m, params.q()) {
            rows.push(("e_prime".into(), e2.to_string()));
        }
    }
    let text = match a.out.format.unwrap_or(Format::Text) {
        Format::Text => rows.iter().map(|(k, v)| format!("{k:<8}{v}")).collect::<Vec<_>>().join("\n"),
        Format::Json => pretty(&Value::Object(
            rows.into_iter().map(|(k, v)| (k, Value::String(v))).collect::<Map<_, _>>(),
        )),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in &rows {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
        }
    };
    emit(a.out.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_wdist(a: &WdistArgs) -> Result<i32> {
    let params = a.grid.params()?;
    let spec = spec_of(&params, a.alpha.as_deref())?;
    let kernel = match a.kernel {
        KernelArg::Auto => Kernel::Auto,
        KernelArg::Parity => Kernel::PointParity,
        KernelArg::Generic => Kernel::Generic,
    };
    let opts = a.res.options(kernel)?;
    let dist = weight_distribution(&build_generator(&spec)?, &opts)?;
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Csv => dist.to_csv(),
        Format::Json => pretty(&dist.to_json()),
        Format::Text => dist
            .counts
            .iter()
            .map(|(w, c)| format!("{w:>8} {c}"))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(a.out.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let opts = a.res.options(Kernel::Auto)?;
    let reports = match &a.config {
        None => {
            let params = grassmann(&a.q, a.ell.unwrap(), a.m.unwrap())?;
            vec![verify_suite(&a.suite, &params, &opts)?]
        }
        Some(path) => run_matrix(path, &opts)?,
    };
    let pass = reports.iter().all(|r| r.pass);
    let value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])
    } else {
        serde_json::to_value(&reports)
    }
    .expect("reports serialize");
    emit(a.output.as_deref(), &pretty(&value))?;
    if !pass {
        for r in &reports {
            for f in r.failures() {
                eprintln!("FAILED {}/{}", r.suite, f.name);
            }
        }
    }
    Ok(if pass { 0 } else { EXIT_FAILED })
}

fn run_matrix(path: &Path, opts: &SweepOptions) -> Result<Vec<crate::report::Report>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
    let matrix: Matrix = toml::from_str(&text).map_err(|e| Error::usage(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for run in &matrix.run {
        if let Some(max_m) = run.max_m {
            let qs: Vec<u64> = run.q.iter().map(|q| field(q).map(|f| f.order() as u64)).collect::<Result<_>>()?;
            out.push(verify_identity_table(max_m, &qs)?);
            continue;
        }
        let (Some(ell), Some(m)) = (run.ell, run.m) else {
            return Err(Error::usage("each [[run]] needs ell and m, or max_m"));
        };
        let suites = if run.suites.is_empty() { vec!["all".to_string()] } else { run.suites.clone() };
        for q in &run.q {
            let params = grassmann(q, ell, m)?;
            for s in &suites {
                out.push(verify_suite(s, &params, opts)?);
            }
        }
    }
    Ok(out)
}

fn combination(field: &Field, x: &[Elem]) -> String {
    let terms: Vec<String> = x
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, &c)| {
            if c == Elem::ONE {
                format!("v{}", j + 1)
            } else {
                format!("{}*v{}", field.format(c), j + 1)
            }
        })
        .collect();
    terms.join(" + ")
}

fn cmd_decompose(a: &DecomposeArgs) -> Result<i32> {
    let params = a.grid.params()?;
    let f = DualFunctional::parse(&params, &a.functional)?;
    let z = functional_to_wedge(&f);
    let mut basis = z.annihilator()?;
    linalg::rref(&params.field, &mut basis);
    basis.retain(|r| r.iter().any(|x| !x.is_zero()));
    let decomposable = basis.len() == z.degree();
    let mut v = json!({
        "functional": f.to_string(),
        "wedge": z.to_string(),
        "verdict": if decomposable { "decomposable" } else { "nondecomposable" },
        "annihilator_dim": basis.len().to_string(),
        "annihilator_basis": basis.iter().map(|x| combination(&params.field, x)).collect::<Vec<_>>(),
    });
    if a.debug {
        let u = functional_to_wedge_unsigned(&f);
        v["unsigned_wedge"] = json!(u.to_string());
        v["unsigned_verdict"] = json!(if u.is_decomposable()? { "decomposable" } else { "nondecomposable" });
    }
    let text = match a.out.format.unwrap_or(Format::Text) {
        Format::Json => pretty(&v),
        _ => {
            let obj = v.as_object().unwrap();
            obj.iter()
                .map(|(k, x)| match x {
                    Value::Array(items) => {
                        let items: Vec<&str> = items.iter().filter_map(Value::as_str).collect();
                        format!("{k}: {{{}}}", items.join(", "))
                    }
                    other => format!("{k}: {}", other.as_str().unwrap_or_default()),
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
    };
    emit(a.out.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_strings(a: &StringsArgs) -> Result<i32> {
    let params = a.grid.params()?;
    if params.ell == 0 || params.ell >= params.m {
        return Err(Error::domain("the string partition needs 1 <= l < m"));
    }
    if let Some(f) = &a.functional {
        let r = verify_string_section(&DualFunctional::parse(&params, f)?)?;
        emit(a.out.output.as_deref(), &r.to_json())?;
        return Ok(if r.pass { 0 } else { EXIT_FAILED });
    }
    let field = &params.field;
    let part = strings::partition(&params)?;
    let fmt = |pts: &[crate::grassmann::EchelonMatrix]| pts.iter().map(|x| x.format(field)).collect::<Vec<_>>();
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&json!({
            "q": field.spec().to_string(),
            "ell": params.ell.to_string(),
            "m": params.m.to_string(),
            "hyperplane": fmt(&part.hyperplane),
            "strings": part.strings.iter().map(|(nu, pts)| json!({
                "nu": nu.format(field),
                "points": fmt(pts),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["part", "point"]).expect("in-memory write");
            for x in fmt(&part.hyperplane) {
                w.write_record(["hyperplane", &x]).expect("in-memory write");
            }
            for (nu, pts) in &part.strings {
                for x in fmt(pts) {
                    w.write_record([&nu.format(field), &x]).expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
        }
    };
    emit(a.out.output.as_deref(), &text)?;
    Ok(0)
}

pub fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Params(a) => cmd_params(a),
        Command::Wdist(a) => cmd_wdist(a),
        Command::Verify(a) => {
            if !SUITES.contains(&a.suite.as_str()) {
                return Err(Error::usage(format!(
                    "unknown suite '{}'; expected one of {}",
                    a.suite,
                    SUITES.join(", ")
                )));
            }
            cmd_verify(a)
        }
        Command::Decompose(a) => cmd_decompose(a),
        Command::Strings(a) => cmd_strings(a),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code. Errors go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("plucker: {e}");
            e.exit_code()
        }
    }
}
