//! `ogq`: command-line front end to the OG(n) quantum engine.

mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use ogq_core::counting::count_float;
use ogq_core::quantum::{float_to_integer, gw_invariant_float};
use ogq_core::verify::{self, Suite};
use ogq_core::{
    count, gw_invariant, n_tilde, trace_invariant, AlphaPolynomial, CountReport, Error, GWQuery,
    NQuery, QuantumElement, StrictPartition, StructureTable,
};
use serde_json::{json, Value};

const FLOAT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "ogq",
    version,
    about = "Quantum cohomology of OG(n) and isotropic subbundle counts"
)]
struct Cli {
    /// Arithmetic: exact cyclotomic, or double precision with an integrality check.
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Where structure-constant tables are stored.
    #[arg(long, env = "OGQ_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Include the slow verification cases.
    #[arg(long, global = true)]
    slow: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A genus-g invariant <λ1, …, λk>_{g,d}.
    Gw {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        d: i64,
        /// Partitions separated by ';', each in comma syntax ("2,1;1").
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        insertions: String,
        /// Also evaluate through the trace formula and compare.
        #[arg(long)]
        trace: bool,
    },
    /// Maximal isotropic subbundle count N(g, rank, ℓ).
    Count {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long)]
        rank: u32,
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
    },
    /// Builds the structure-constant table for n and stores it in the cache.
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_d: Option<u32>,
    },
    /// Quantum product of two classes.
    Qmul {
        #[arg(long)]
        n: u32,
        /// A partition ("2,1") or an element ("2*q*t[1] + t[]").
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// The intersection number Ñ(Q; u) on the space of subsheaves.
    Ntilde {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, default_value_t = 0)]
        u: u32,
        /// Polynomial in a1, …, am, e.g. "2*a2 + a1^2".
        #[arg(long = "Q", default_value = "1")]
        q: String,
    },
    /// Runs the invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// A failed command: exit status plus the JSON written to stderr.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn new(code: u8, kind: &str, message: impl Into<String>) -> Self {
        Failure {
            code,
            body: json!({ "error": kind, "message": message.into() }),
        }
    }

    fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        let mut f = Self::new(4, "Io", err.to_string());
        f.body["path"] = json!(path.display().to_string());
        f
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotApplicable(_) | Error::NotCovered { .. } | Error::OddEllUnsupported(_) => 3,
            Error::InvalidPartition(_)
            | Error::NegativeDegree(_)
            | Error::UnsupportedRank(_)
            | Error::GenusTooSmall(_)
            | Error::OddDegreeUnsupported(_)
            | Error::Parse(_) => 2,
            _ => 1,
        };
        let mut f = Self::new(code, e.kind(), e.to_string());
        if let Error::NotCovered { e0, diagnostic } = &e {
            f.body["e0"] = json!(e0);
            f.body["diagnostic"] = json!(diagnostic);
        }
        f
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// What a command printed on success, and in which shape.
struct Printer {
    format: Format,
}

impl Printer {
    fn emit(&self, json: &Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(json).expect("json renders")
            ),
            Format::Text => println!("{}", text()),
        }
    }
}

fn parse_insertions(text: &str) -> Result<Vec<StrictPartition>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';').map(StrictPartition::parse).collect()
}

fn parse_class(text: &str) -> Result<QuantumElement, Error> {
    if text.contains("t[") {
        QuantumElement::parse(text)
    } else {
        Ok(QuantumElement::basis(StrictPartition::parse(text)?))
    }
}

/// The float value rounded to an integer, or a failure carrying both numbers.
fn checked_float(v: Complex64) -> Result<f64, Failure> {
    float_to_integer(v, FLOAT_TOL).ok_or_else(|| {
        let mut f = Failure::new(
            1,
            "FloatDisagreement",
            "float value is not within 1e-6 of an integer",
        );
        f.body["float"] = json!({ "re": v.re, "im": v.im });
        f.body["nearest"] = json!(v.re.round());
        f
    })
}

fn float_json(v: Complex64, rounded: f64) -> Value {
    json!({ "float": { "re": v.re, "im": v.im }, "nearest": format!("{rounded:.0}") })
}

fn cmd_gw(
    cli: &Cli,
    p: &Printer,
    n: u32,
    g: u32,
    d: i64,
    insertions: &str,
    trace: bool,
) -> Outcome {
    let q = GWQuery::new(n, g, d, parse_insertions(insertions)?);
    q.validate()?;
    let names: Vec<String> = q.insertions.iter().map(ToString::to_string).collect();
    let mut out =
        json!({ "n": n, "g": g, "d": d, "insertions": names, "degree_ok": q.degree_ok() });
    let value = match cli.mode {
        Mode::Exact => {
            let v = gw_invariant(&q)?;
            out["value"] = json!(v.to_string());
            v.to_string()
        }
        Mode::Float => {
            let v = gw_invariant_float(&q)?;
            let r = checked_float(v)?;
            out["value"] = json!(format!("{r:.0}"));
            out["float"] = float_json(v, r)["float"].clone();
            format!("{r:.0}")
        }
    };
    let mut text = value.clone();
    if trace {
        let t = trace_invariant(&q)?.to_string();
        let agree = t == value;
        out["trace"] = json!({ "value": t, "agree": agree });
        text = format!("direct {value}\ntrace  {t}\nagree  {agree}");
        if !agree {
            p.emit(&out, || text.clone());
            return Err(Failure::new(
                1,
                "CrossCheckFailed",
                format!("direct {value} but trace {t}"),
            ));
        }
    }
    p.emit(&out, || text);
    Ok(out)
}

fn report_text(r: &CountReport) -> String {
    let mut lines = Vec::new();
    match &r.value {
        Some(v) => lines.push(format!("N = {v}")),
        None => lines.push(format!(
            "no count: {}",
            r.reason.as_deref().unwrap_or("unavailable")
        )),
    }
    if let Some(e0) = r.e0 {
        lines.push(format!("e0 = {e0}"));
    }
    if let Some(d) = &r.decomposition {
        lines.push(format!(
            "decomposition: {}",
            serde_json::to_string(d).expect("json renders")
        ));
    }
    lines.extend(r.notes.iter().map(|n| format!("note: {n}")));
    lines.join("\n")
}

fn cmd_count(cli: &Cli, p: &Printer, g: i64, rank: u32, ell: i64) -> Outcome {
    match count(g, rank, ell) {
        Ok(r) => {
            let mut out = r.to_json();
            if cli.mode == Mode::Float {
                let v = count_float(g, rank, ell)?;
                let rounded = checked_float(v)?;
                let exact = r
                    .value
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                out["float"] = float_json(v, rounded);
                if format!("{rounded:.0}") != exact {
                    let mut f =
                        Failure::new(1, "FloatDisagreement", "float and exact counts differ");
                    f.body["float"] = out["float"].clone();
                    f.body["exact"] = json!(exact);
                    return Err(f);
                }
            }
            p.emit(&out, || match cli.mode {
                Mode::Float => format!(
                    "{}\nfloat = {}",
                    report_text(&r),
                    out["float"]["float"]["re"]
                ),
                Mode::Exact => report_text(&r),
            });
            Ok(out)
        }
        Err(
            e @ (Error::NotApplicable(_) | Error::NotCovered { .. } | Error::OddEllUnsupported(_)),
        ) => {
            let r = CountReport::unavailable(g, rank, ell, &e);
            let out = r.to_json();
            p.emit(&out, || report_text(&r));
            let mut f = Failure::from(e);
            f.body["report"] = out;
            Err(f)
        }
        Err(e) => Err(e.into()),
    }
}

/// The table for `n` from the cache, or freshly built if absent or stale.
fn load_or_build(
    dir: &std::path::Path,
    n: u32,
    max_d: Option<u32>,
) -> Result<(StructureTable, &'static str), Failure> {
    let path = dir.join(cache::file_name(n, max_d));
    match cache::lookup(&path, max_d).map_err(|e| Failure::io(&path, e))? {
        cache::Lookup::Fresh(t, _) => Ok((t, "cached")),
        cache::Lookup::Stale(why) => {
            warn_stale(&path, &why);
            Ok((StructureTable::build(n, max_d)?, "built"))
        }
        cache::Lookup::Missing => Ok((StructureTable::build(n, max_d)?, "built")),
    }
}

fn warn_stale(path: &std::path::Path, why: &str) {
    eprintln!(
        "{}",
        json!({ "warning": "StaleCache", "path": path.display().to_string(), "message": why })
    );
}

fn cmd_table(cli: &Cli, p: &Printer, n: u32, max_d: Option<u32>) -> Outcome {
    if n < 2 {
        return Err(Error::UnsupportedRank(n as i64).into());
    }
    let dir = cli.cache_dir.clone().unwrap_or_else(cache::default_dir);
    let path = dir.join(cache::file_name(n, max_d));
    let existing = cache::lookup(&path, max_d).map_err(|e| Failure::io(&path, e))?;
    let table = StructureTable::build(n, max_d)?;
    let text = table.to_json();
    let status = match existing {
        cache::Lookup::Fresh(_, old) if old == text => "unchanged",
        cache::Lookup::Stale(why) => {
            warn_stale(&path, &why);
            "replaced"
        }
        _ => "written",
    };
    if status != "unchanged" {
        cache::store(&path, &text).map_err(|e| Failure::io(&path, e))?;
    }
    let out = json!({
        "path": path.display().to_string(),
        "n": n,
        "max_d": max_d,
        "entries": table.entries().len(),
        "status": status,
    });
    p.emit(&out, || {
        format!(
            "{status} {} ({} entries)",
            path.display(),
            table.entries().len()
        )
    });
    Ok(out)
}

fn cmd_qmul(cli: &Cli, p: &Printer, n: u32, a: &str, b: &str) -> Outcome {
    if n < 2 {
        return Err(Error::UnsupportedRank(n as i64).into());
    }
    let (x, y) = (parse_class(a)?, parse_class(b)?);
    for (nu, _, _) in x.terms().chain(y.terms()) {
        nu.check(n - 1)?;
    }
    let dir = cli.cache_dir.clone().unwrap_or_else(cache::default_dir);
    let (table, source) = load_or_build(&dir, n, None)?;
    let mut prod = QuantumElement::zero();
    for (lam, da, ca) in x.terms() {
        for (mu, db, cb) in y.terms() {
            prod = prod.add(&table.product(lam, mu).shift(da + db).scale(&(ca * cb)));
        }
    }
    let out = json!({ "n": n, "a": x.to_string(), "b": y.to_string(), "product": prod.to_string(), "table": source });
    p.emit(&out, || prod.to_string());
    Ok(out)
}

fn cmd_ntilde(p: &Printer, q: NQuery) -> Outcome {
    let r = n_tilde(&q)?;
    let out = json!({
        "g": q.g,
        "n": q.n,
        "ell": q.ell,
        "e": q.e,
        "u": q.u,
        "Q": q.q.to_string(),
        "value": r.value.to_string(),
        "decomposition": r.decomposition,
        "diagnostic": r.diagnostic,
    });
    p.emit(&out, || match &r.diagnostic {
        Some(d) => format!("{}\nnote: {d}", r.value),
        None => r.value.to_string(),
    });
    Ok(out)
}

fn cmd_verify(cli: &Cli, p: &Printer, suite: &str) -> Outcome {
    let suite: Suite = suite.parse()?;
    let reports = verify::run(suite, cli.slow);
    let ok = reports.iter().all(|r| r.passed());
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "suite": r.name,
                "checks": r.checks,
                "passed": r.passed(),
                "seconds": r.elapsed.as_secs_f64(),
                "failures": r.failures,
            })
        })
        .collect();
    let out = json!({ "passed": ok, "suites": rows });
    p.emit(&out, || {
        let mut lines: Vec<String> = reports
            .iter()
            .map(|r| {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                format!(
                    "{tag} {} ({} checks, {:.2}s)",
                    r.name,
                    r.checks,
                    r.elapsed.as_secs_f64()
                )
            })
            .collect();
        for r in &reports {
            lines.extend(r.failures.iter().map(|f| format!("  {}: {f}", r.name)));
        }
        lines.join("\n")
    });
    if ok {
        Ok(out)
    } else {
        Err(Failure {
            code: 1,
            body: json!({ "error": "VerificationFailed", "report": out }),
        })
    }
}

fn run(cli: &Cli) -> Outcome {
    let p = Printer { format: cli.format };
    match &cli.command {
        Command::Gw {
            n,
            g,
            d,
            insertions,
            trace,
        } => cmd_gw(cli, &p, *n, *g, *d, insertions, *trace),
        Command::Count { g, rank, ell } => cmd_count(cli, &p, *g, *rank, *ell),
        Command::Table { n, max_d } => cmd_table(cli, &p, *n, *max_d),
        Command::Qmul { n, a, b } => cmd_qmul(cli, &p, *n, a, b),
        Command::Ntilde { g, n, ell, e, u, q } => {
            let q = AlphaPolynomial::parse(q)?;
            cmd_ntilde(
                &p,
                NQuery {
                    g: *g,
                    n: *n,
                    ell: *ell,
                    e: *e,
                    u: *u,
                    q,
                },
            )
        }
        Command::Verify { suite } => cmd_verify(cli, &p, suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", serde_json::to_string(&f.body).expect("json renders"));
            ExitCode::from(f.code)
        }
    }
}
