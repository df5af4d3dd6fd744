use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gl2pv::counting::{
    coeff_sum_report, count_with_main_term, fourier_coeff, fourier_coeff_oracle,
    fourier_expansion_residual, naive_box_count, ps_bound, ps_char_sum_scan_prefixes,
    ps_shifted_generator_count,
};
use gl2pv::fourier::{pv_scan, DIRECT_MAX_POINTS};
use gl2pv::gauss::{GaussTable, TraceProfile};
use gl2pv::verify::{verify_prime, Status};
use gl2pv::{CharacterTable, ComplexValue, Gl2, IntMat2, IrrepLabel, SetKind};
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(
    name = "gl2pv",
    version,
    about = "Characters, matrix Gauss sums and box counts for GL(2, F_p)"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    out: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,
    /// Worker threads (GL2_WORKERS overrides).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Cells,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Character table, or one row of it.
    CharTable {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        rep: Option<IrrepLabel>,
    },
    /// Trace of the matrix Gauss sum G(rho, A).
    GaussSum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        rep: IrrepLabel,
        /// Matrix literal "a11,a12;a21,a22".
        #[arg(long)]
        matrix: IntMat2,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Omit elapsed time, for reproducible output.
        #[arg(long)]
        no_timing: bool,
    },
    /// Box character sums against the PV bound for every nontrivial irrep.
    PvScan {
        #[arg(long)]
        p: u64,
        /// Largest half-width (default p - 1).
        #[arg(long)]
        xmax: Option<u64>,
        /// Box budget for shifted boxes.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Box centre "a11,a12;a21,a22".
        #[arg(long)]
        offset: Option<IntMat2>,
    },
    /// Exact count over [-x, x]^4 with main term.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        set: SetKind,
        /// Cross-check against naive enumeration and the Fourier expansion.
        #[arg(long)]
        compare: bool,
    },
    /// Fourier coefficients of the primitive-set indicator.
    FourierCoeffs {
        #[arg(long)]
        p: u64,
    },
    /// Shifted generators theta + m of F_{p^2}^*, 0 <= m <= x.
    PsCount {
        #[arg(long)]
        p: u64,
        /// "t0,t1" for theta = t0 + t1 sqrt(tau).
        #[arg(long)]
        theta: String,
        #[arg(long)]
        x: Option<u64>,
    },
    /// Full verification suite for one prime.
    Verify {
        #[arg(long)]
        p: u64,
    },
}

struct Report {
    json: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    /// Failed assertion, named by the statement it certifies.
    violation: Option<String>,
}

enum CliError {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn round12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return if v == 0.0 { 0.0 } else { v };
    }
    let r: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn num(v: f64) -> Value {
    json!(round12(v))
}

/// Drops float noise far below the other component.
fn clean(z: ComplexValue) -> ComplexValue {
    let eps = 1e-10 * z.norm().max(1.0);
    let snap = |v: f64| if v.abs() < eps { 0.0 } else { v };
    ComplexValue::new(snap(z.re), snap(z.im))
}

fn cx(z: ComplexValue) -> Value {
    let z = clean(z);
    json!({ "re": round12(z.re), "im": round12(z.im) })
}

fn cx_str(z: ComplexValue) -> String {
    let z = clean(z);
    let (re, im) = (round12(z.re), round12(z.im));
    if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn round_all(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap()),
        Value::Array(a) => Value::Array(a.into_iter().map(round_all).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_all(v))).collect()),
        v => v,
    }
}

fn char_table(p: u64, rep: Option<IrrepLabel>) -> Result<Report, CliError> {
    let t = CharacterTable::new(Gl2::new(p)?);
    let rows: Vec<usize> = match rep {
        Some(r) => vec![t.irrep_index(&r)?],
        None => (0..t.irreps().len()).collect(),
    };
    let classes: Vec<Value> = t
        .group()
        .classes()
        .iter()
        .map(|c| json!({ "label": c.label.to_string(), "size": c.size, "representative": c.representative.to_string() }))
        .collect();
    let mut csv = Vec::new();
    let irreps: Vec<Value> = rows
        .iter()
        .map(|&ri| {
            let label = t.irreps()[ri];
            for (ci, c) in t.group().classes().iter().enumerate() {
                let v = t.value(ri, ci);
                let v = clean(v);
                csv.push(vec![
                    label.to_string(),
                    c.label.to_string(),
                    round12(v.re).to_string(),
                    round12(v.im).to_string(),
                ]);
            }
            json!({
                "label": label.to_string(),
                "dim": t.dims()[ri],
                "values": t.row(ri).iter().map(|&z| cx(z)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Report {
        json: json!({ "p": p, "num_classes": t.num_classes(), "classes": classes, "irreps": irreps }),
        table: Some((vec!["irrep", "class", "re", "im"], csv)),
        violation: None,
    })
}

fn gauss_sum(
    p: u64,
    rep: IrrepLabel,
    m: IntMat2,
    method: Method,
    no_timing: bool,
) -> Result<Report, CliError> {
    let t = CharacterTable::new(Gl2::new(p)?);
    let ri = t.irrep_index(&rep)?;
    let a = m.reduce(t.p());
    let t0 = Instant::now();
    let mut out = Map::new();
    out.insert("p".into(), json!(p));
    out.insert("rep".into(), json!(t.irreps()[ri].to_string()));
    out.insert("matrix".into(), json!(a.to_string()));
    let value = match method {
        Method::Closed => {
            out.insert("method".into(), json!("closed"));
            let gt = GaussTable::new(&t);
            out.insert("g".into(), cx(gt.g(ri)));
            gt.trace(ri, &a)
        }
        Method::Brute | Method::Cells => {
            let prof = TraceProfile::new(t.group(), &a)?;
            if let Method::Cells = method {
                out.insert("method".into(), json!("cells"));
                let (g1, g2) = prof.cells(&t, ri);
                out.insert("g1".into(), cx(g1));
                out.insert("g2".into(), cx(g2));
            } else {
                out.insert("method".into(), json!("brute"));
            }
            prof.total(&t, ri)
        }
    };
    out.insert("value".into(), cx(value));
    if !no_timing {
        out.insert("elapsed_ms".into(), json!(t0.elapsed().as_millis() as u64));
    }
    let value = clean(value);
    let row = vec![
        p.to_string(),
        rep.to_string(),
        a.to_string(),
        round12(value.re).to_string(),
        round12(value.im).to_string(),
    ];
    Ok(Report {
        json: Value::Object(out),
        table: Some((vec!["p", "rep", "matrix", "re", "im"], vec![row])),
        violation: None,
    })
}

fn pv(p: u64, xmax: Option<u64>, c: f64, offset: Option<IntMat2>) -> Result<Report, CliError> {
    let t = CharacterTable::new(Gl2::new(p)?);
    let gt = GaussTable::new(&t);
    let xmax = xmax.unwrap_or(p - 1);
    if xmax == 0 {
        return Err(CliError::Usage("--xmax must be at least 1".into()));
    }
    if c.is_nan() || c <= 0.0 {
        return Err(CliError::Usage("--c must be positive".into()));
    }
    let xs: Vec<u64> = (1..=xmax).collect();
    let rep = pv_scan(&gt, &xs, offset.as_ref(), c);
    let rows = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.irrep.to_string(),
                r.dim.to_string(),
                r.x.to_string(),
                round12(r.abs_sum).to_string(),
                round12(r.ratio).to_string(),
            ]
        })
        .collect();
    let violation = (!rep.holds).then(|| {
        format!(
            "PV bound |S| <= {} d p^2 (log p)^4: max ratio {}",
            rep.constant,
            round12(rep.max_ratio)
        )
    });
    Ok(Report {
        json: round_all(serde_json::to_value(&rep)?),
        table: Some((vec!["p", "irrep", "dim", "x", "abs_sum", "ratio"], rows)),
        violation,
    })
}

fn count(p: u64, x: u64, set: SetKind, compare: bool) -> Result<Report, CliError> {
    let gl2 = Gl2::new(p)?;
    let r = count_with_main_term(&gl2, x, &set)?;
    let mut out = serde_json::to_value(&r)?;
    let mut violation = None;
    if compare {
        let cmp = out.as_object_mut().unwrap();
        let points = ((2 * x + 1) as u128).pow(4);
        if points <= DIRECT_MAX_POINTS {
            let pu = gl2.p();
            let naive = naive_box_count(pu, x, |e| {
                gl2.set_membership(&gl2pv::Mat2::new(pu, e.map(i64::from)), &set)
                    .unwrap_or(false)
            });
            cmp.insert("naive_count".into(), json!(naive));
            if naive != r.exact_count {
                violation = Some(format!(
                    "residue count {} differs from naive {naive}",
                    r.exact_count
                ));
            }
        }
        if set == SetKind::Primitive && p <= 13 {
            let t = CharacterTable::new(gl2.clone());
            let res = fourier_expansion_residual(&t, x)?;
            cmp.insert("fourier_residual".into(), json!(res));
            if res > 1e-4 {
                violation = Some(format!(
                    "Fourier expansion of the primitive indicator: residual {res}"
                ));
            }
        }
        cmp.insert("density".into(), json!(r.density()));
    }
    let row = vec![
        r.p.to_string(),
        r.x.to_string(),
        r.set_kind.clone(),
        r.exact_count.to_string(),
        round12(r.main_term).to_string(),
        round12(r.normalized_residual).to_string(),
    ];
    Ok(Report {
        json: round_all(out),
        table: Some((
            vec![
                "p",
                "x",
                "set_kind",
                "exact_count",
                "main_term",
                "normalized_residual",
            ],
            vec![row],
        )),
        violation,
    })
}

fn coeffs(p: u64) -> Result<Report, CliError> {
    let t = CharacterTable::new(Gl2::new(p)?);
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut worst: f64 = 0.0;
    for r in t.irreps() {
        let c = fourier_coeff(t.p(), r)?;
        let o = fourier_coeff_oracle(&t, r)?;
        worst = worst.max((o - ComplexValue::new(c, 0.0)).norm());
        rows.push(vec![
            r.to_string(),
            round12(c).to_string(),
            round12(o.re).to_string(),
            round12(o.im).to_string(),
        ]);
        items.push(json!({ "irrep": r.to_string(), "closed": num(c), "oracle": cx(o) }));
    }
    let sums = coeff_sum_report(t.p())?;
    let mut violation = None;
    if worst > 1e-9 {
        violation = Some(format!(
            "Fourier coefficient closed forms: max deviation {worst:e}"
        ));
    } else if !sums.holds() {
        violation = Some("family sums of |c_rho| <= tau(p^2-1)".to_string());
    }
    Ok(Report {
        json: json!({
            "p": p,
            "coefficients": items,
            "max_deviation": num(worst),
            "family_sums": round_all(serde_json::to_value(&sums)?),
        }),
        table: Some((vec!["irrep", "closed", "oracle_re", "oracle_im"], rows)),
        violation,
    })
}

fn ps(p: u64, theta: &str, x: Option<u64>) -> Result<Report, CliError> {
    let gl2 = Gl2::new(p)?;
    let parts: Vec<u32> = theta
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()?;
    let [t0, t1] = parts[..] else {
        return Err(CliError::Usage(format!(
            "theta must be \"t0,t1\", got {theta:?}"
        )));
    };
    let x = x.unwrap_or(p);
    let f = gl2.field();
    let r = ps_shifted_generator_count(f, (t0, t1), x)?;
    let max = ps_char_sum_scan_prefixes(f, (t0, t1), x)?;
    let bound = ps_bound(gl2.p());
    let asserted = x <= p;
    let mut out = serde_json::to_value(&r)?;
    let o = out.as_object_mut().unwrap();
    o.insert("max_char_sum".into(), json!(max));
    o.insert("bound".into(), json!(bound));
    o.insert("asserted".into(), json!(asserted));
    let violation = (asserted && max > bound)
        .then(|| format!("shifted character sums <= 2 sqrt(p) log p: {max} > {bound}"));
    let row = vec![
        p.to_string(),
        theta.to_string(),
        x.to_string(),
        r.exact_count.to_string(),
        round12(max).to_string(),
        round12(bound).to_string(),
    ];
    Ok(Report {
        json: round_all(out),
        table: Some((
            vec!["p", "theta", "x", "exact_count", "max_char_sum", "bound"],
            vec![row],
        )),
        violation,
    })
}

fn verify(p: u64) -> Result<Report, CliError> {
    let r = verify_prime(p)?;
    let rows = r
        .checks
        .iter()
        .map(|c| {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            vec![
                c.name.to_string(),
                status.to_string(),
                c.anchor.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    let violation = r
        .failures()
        .map(|c| format!("{} ({}): {}", c.name, c.anchor, c.detail))
        .reduce(|a, b| format!("{a}; {b}"));
    let mut json = serde_json::to_value(&r)?;
    for c in json["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("elapsed_ms");
    }
    json["passed"] = json!(r.passed());
    Ok(Report {
        json,
        table: Some((vec!["check", "status", "anchor", "detail"], rows)),
        violation,
    })
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                match v {
                    Value::Object(m)
                        if m.len() == 2 && m.contains_key("re") && m.contains_key("im") =>
                    {
                        let z = ComplexValue::new(
                            m["re"].as_f64().unwrap_or(0.0),
                            m["im"].as_f64().unwrap_or(0.0),
                        );
                        out.push_str(&format!("{pad}{k}: {}\n", cx_str(z)));
                    }
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 2, out);
                    }
                    Value::String(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    v => out.push_str(&format!("{pad}{k}: {v}\n")),
                }
            }
        }
        Value::Array(a) => {
            for item in a {
                match item {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 2, out);
                    }
                    v => out.push_str(&format!("{pad}- {v}\n")),
                }
            }
        }
        v => out.push_str(&format!("{pad}{v}\n")),
    }
}

fn render(report: &Report, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json)?;
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            render_text(&report.json, 0, &mut s);
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some((header, rows)) = &report.table {
                w.write_record(header)?;
                for r in rows {
                    w.write_record(r)?;
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)?
        }
    })
}

fn workers(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let n = match std::env::var("GL2_WORKERS") {
        Ok(s) if !s.trim().is_empty() => Some(s.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!("GL2_WORKERS must be a positive integer, got {s:?}"))
        })?),
        _ => flag,
    };
    if n == Some(0) {
        return Err(CliError::Usage("worker count must be at least 1".into()));
    }
    Ok(n)
}

fn run(cli: Cli) -> Result<Report, CliError> {
    if let Some(n) = workers(cli.workers)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    match cli.cmd {
        Cmd::CharTable { p, rep } => char_table(p, rep),
        Cmd::GaussSum {
            p,
            rep,
            matrix,
            method,
            no_timing,
        } => gauss_sum(p, rep, matrix, method, no_timing),
        Cmd::PvScan { p, xmax, c, offset } => pv(p, xmax, c, offset),
        Cmd::Count { p, x, set, compare } => count(p, x, set, compare),
        Cmd::FourierCoeffs { p } => coeffs(p),
        Cmd::PsCount { p, theta, x } => ps(p, &theta, x),
        Cmd::Verify { p } => verify(p),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, path) = (cli.out, cli.output.clone());
    let report = match run(cli) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = match render(&report, format) {
        Ok(t) => t,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &path {
        Some(path) => fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match report.violation {
        Some(v) => {
            eprintln!("assertion failed: {v}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
