//! `locus` command line: subcommands render a report object as JSON, CSV or
//! text, wrapped with a provenance block.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use locus_core::algebra::levy::{self, Family};
use locus_core::algebra::CurvatureReport;
use locus_core::cpn;
use locus_core::haar::experiment::{self, collect_band_samples};
use locus_core::haar::SamplerConfig;
use locus_core::reproduce::{self, ReproduceConfig};
use locus_core::roots::build_root_system;
use locus_core::volumes::{self, group_volume};
use locus_core::{MatrixGroup, Series, SeriesTag};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "locus",
    version,
    about = "Volumes, curvature and Haar concentration of the classical compact groups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for sampling.
    #[arg(long, global = true, env = "LOCUS_WORKERS", default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simple roots, positive roots, coroots and degrees.
    Roots(SeriesArgs),
    /// Group volume from the Macdonald formula.
    Volume(VolumeArgs),
    /// Volume ratio exponent against its asymptote.
    Ratio(RatioArgs),
    /// Killing form, chi and Ricci tensor of su(n), so(n) or usp(2n).
    Curvature(CurvatureArgs),
    /// Geometry of CP^n.
    Cpn(CpnArgs),
    /// Haar sampling and band masses.
    Sample(SampleArgs),
    /// Ricci lower bounds along a family and the rescaled Levy check.
    Levy(LevyArgs),
    /// Run the acceptance sweep.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    /// a|su, b|spin-odd, c|usp, d|spin-even.
    #[arg(long)]
    pub series: String,
    #[arg(long)]
    pub n: u32,
}

#[derive(Args, Debug)]
pub struct VolumeArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Order of the central subgroup to quotient by (default: trivial).
    #[arg(long, default_value_t = 1)]
    pub gamma: u32,
    /// Only the exact value.
    #[arg(long, conflicts_with = "log")]
    pub exact: bool,
    /// Only the log-space value.
    #[arg(long)]
    pub log: bool,
}

#[derive(Args, Debug)]
pub struct RatioArgs {
    #[arg(long)]
    pub series: String,
    /// Single n, or the start of a range with --to.
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub to: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CurvatureArgs {
    /// su, so or usp.
    #[arg(long)]
    pub series: String,
    /// Matrix size for su and so, half the size for usp.
    #[arg(long)]
    pub n: usize,
    /// Same as --format.
    #[arg(long, value_enum)]
    pub report: Option<Format>,
    /// Include the Killing and Ricci matrices.
    #[arg(long)]
    pub matrices: bool,
}

#[derive(Args, Debug)]
pub struct CpnArgs {
    #[arg(long)]
    pub n: usize,
    #[command(subcommand)]
    pub action: CpnAction,
}

#[derive(Subcommand, Debug)]
pub enum CpnAction {
    /// Vielbein density, metric pullback and structure equation at random points.
    CheckMetric {
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mass of the eps-band around the hyperplane at infinity.
    BandMass {
        #[arg(long)]
        eps: f64,
    },
    /// Integral of the invariant density against the volume quotient.
    Calibrate,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum HistKind {
    /// `ξ` of SU samples.
    Ksi,
    /// Distance to the equator of the first base sphere.
    Dist,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// su, so or usp.
    #[arg(long)]
    pub series: String,
    /// Matrix size for su and so, half the size for usp.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    /// Band radius; repeat for several.
    #[arg(long, required_unless_present = "hist")]
    pub r: Vec<f64>,
    #[arg(long)]
    pub seed: u64,
    /// Emit a histogram as CSV instead of band reports.
    #[arg(long, value_enum)]
    pub hist: Option<HistKind>,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
}

#[derive(Args, Debug)]
pub struct LevyArgs {
    /// su, so or usp.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 3)]
    pub from: u32,
    #[arg(long, default_value_t = 40)]
    pub to: u32,
    /// Coroot length for the SU entries.
    #[arg(long)]
    pub coroot_length: Option<f64>,
    /// Lower bound the Ricci sequence must eventually respect.
    #[arg(long, default_value_t = 0.25)]
    pub floor: f64,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Smaller Monte Carlo runs.
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub seed: u64,
    /// Write the JSON report here as well.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct Provenance {
    version: &'static str,
    seed: Option<u64>,
    config: Value,
}

struct Outcome {
    seed: Option<u64>,
    config: Value,
    result: Value,
    /// Exit 1 despite a rendered report.
    failed: bool,
}

fn ok(seed: Option<u64>, config: Value, result: impl Serialize) -> anyhow::Result<Outcome> {
    Ok(Outcome {
        seed,
        config,
        result: serde_json::to_value(result)?,
        failed: false,
    })
}

fn matrix_group(series: &str, n: usize) -> anyhow::Result<MatrixGroup> {
    Ok(MatrixGroup::parse(series, n)?)
}

fn series(args: &SeriesArgs) -> anyhow::Result<Series> {
    let tag: SeriesTag = args.series.parse()?;
    Ok(Series::new(tag, args.n)?)
}

fn roots(args: &SeriesArgs) -> anyhow::Result<Outcome> {
    let s = series(args)?;
    let rs = build_root_system(s);
    let cartan = rs.cartan_matrix();
    let mut value = serde_json::to_value(&rs)?;
    value["cartan_matrix"] = serde_json::to_value(cartan)?;
    ok(None, json!({"series": args.series, "n": args.n}), value)
}

fn volume(args: &VolumeArgs) -> anyhow::Result<Outcome> {
    let s = series(&args.series)?;
    let v = group_volume(s, args.gamma)?;
    let mut out = Map::new();
    out.insert("group".into(), json!(v.group));
    out.insert("dim".into(), json!(v.dim));
    out.insert("center_order".into(), json!(v.center_order));
    if !args.log {
        match &v.exact {
            Some(e) => {
                out.insert("exact".into(), json!(e.to_string()));
                out.insert("exact_parts".into(), serde_json::to_value(e)?);
                out.insert("decimal".into(), json!(e.decimal()));
                out.insert("value".into(), json!(e.to_f64()));
            }
            None => {
                out.insert(
                    "exact".into(),
                    json!(format!(
                        "not computed above n = {}",
                        volumes::EXACT_RANK_LIMIT
                    )),
                );
            }
        }
    }
    if !args.exact {
        out.insert("log_value".into(), json!(v.log_value));
    }
    if s.tag == SeriesTag::C {
        out.insert("note".into(), json!("dim USp(2n) = 2n^2 + n"));
    }
    ok(
        None,
        json!({"series": args.series.series, "n": args.series.n, "gamma": args.gamma}),
        Value::Object(out),
    )
}

#[derive(Serialize)]
struct RatioRow {
    n: u32,
    ratio: f64,
    asymptote: f64,
    quotient: f64,
}

fn ratio(args: &RatioArgs) -> anyhow::Result<Outcome> {
    let tag: SeriesTag = args.series.parse()?;
    let to = args.to.unwrap_or(args.n);
    if to < args.n {
        return Err(anyhow!("--to must be >= --n"));
    }
    let rows = (args.n..=to)
        .map(|n| {
            let s = Series::new(tag, n)?;
            let ratio = volumes::ratio_exponent(s);
            let asymptote = volumes::ratio_asymptote(s);
            Ok(RatioRow {
                n,
                ratio,
                asymptote,
                quotient: ratio / asymptote,
            })
        })
        .collect::<locus_core::Result<Vec<_>>>()?;
    ok(
        None,
        json!({"series": args.series, "n": args.n, "to": to}),
        rows,
    )
}

fn curvature(args: &CurvatureArgs) -> anyhow::Result<Outcome> {
    let g = matrix_group(&args.series, args.n)?;
    let rep = CurvatureReport::compute(g)?;
    let mut value = serde_json::to_value(&rep)?;
    if !args.matrices {
        let obj = value.as_object_mut().expect("report is an object");
        obj.remove("killing_matrix");
        obj.remove("ricci_matrix");
    }
    value["comparison"] = json!({
        "computed_chi": rep.chi,
        "tabulated_chi": rep.tabulated_chi,
        "agrees": rep.chi_matches_tabulated,
    });
    ok(None, json!({"series": args.series, "n": args.n}), value)
}

fn cpn_cmd(args: &CpnArgs) -> anyhow::Result<Outcome> {
    let n = args.n;
    match &args.action {
        CpnAction::CheckMetric { points, tol, seed } => {
            let vielbein = cpn::vielbein_check(n, *points, *seed)?;
            let pullback = cpn::pullback_check(n, *points, *seed)?;
            let structure = cpn::structure_check(n, (*points).min(20), *seed)?;
            let passed = vielbein.max_residual < *tol
                && pullback.max_residual < *tol
                && structure.max_residual < locus_core::tolerances::MAURER_CARTAN_STRUCTURE;
            let mut o = ok(
                Some(*seed),
                json!({"n": n, "points": points, "tol": tol}),
                json!({
                    "vielbein_density": vielbein,
                    "fs_pullback": pullback,
                    "structure_equation": structure,
                    "structure_tolerance": locus_core::tolerances::MAURER_CARTAN_STRUCTURE,
                    "passed": passed,
                }),
            )?;
            o.failed = !passed;
            Ok(o)
        }
        CpnAction::BandMass { eps } => {
            let b = cpn::band_mass(n as u32, *eps)?;
            ok(None, json!({"n": n, "eps": eps}), b)
        }
        CpnAction::Calibrate => {
            let cal = cpn::calibrate()?;
            let check = cpn::calibration_check(n, &cpn::CALIBRATED)?;
            ok(
                None,
                json!({"n": n}),
                json!({"calibration": cal, "check": check}),
            )
        }
    }
}

fn sample(args: &SampleArgs, workers: usize) -> anyhow::Result<Outcome> {
    let g = matrix_group(&args.series, args.n)?;
    let cfg = SamplerConfig::new(g, args.count, args.seed).with_workers(workers);
    let config = json!({
        "series": args.series,
        "n": args.n,
        "group": g.name(),
        "count": args.count,
        "r": args.r,
    });
    if let Some(kind) = args.hist {
        let values = match kind {
            HistKind::Ksi => experiment::xi_values(&cfg)?,
            HistKind::Dist => collect_band_samples(&cfg)?
                .distances
                .into_iter()
                .map(|d| d[0])
                .collect(),
        };
        let bins = experiment::histogram(&values, args.bins, 0.0, std::f64::consts::FRAC_PI_2)?;
        return ok(Some(args.seed), config, bins);
    }
    let samples = collect_band_samples(&cfg)?;
    let reports = args
        .r
        .iter()
        .map(|&r| samples.report(r))
        .collect::<locus_core::Result<Vec<_>>>()?;
    ok(Some(args.seed), config, reports)
}

fn levy_cmd(args: &LevyArgs) -> anyhow::Result<Outcome> {
    let family: Family = args.family.parse()?;
    if args.to <= args.from {
        return Err(anyhow!("--to must exceed --from"));
    }
    let r = levy::ricci_bound_sequence(family, args.from..=args.to, args.coroot_length);
    let c: Vec<f64> = (args.from..=args.to).map(|i| i as f64).collect();
    let check = levy::rescaled_levy_check(&r, &c, args.floor, levy::DEFAULT_DIVERGENCE_MARGIN)?;
    ok(
        None,
        json!({"family": args.family, "from": args.from, "to": args.to, "floor": args.floor}),
        json!({"ricci_bounds": r, "rescaling": c, "check": check}),
    )
}

fn reproduce_cmd(args: &ReproduceArgs, workers: usize) -> anyhow::Result<Outcome> {
    let cfg = if args.quick {
        ReproduceConfig::quick(args.seed, workers)
    } else {
        ReproduceConfig::full(args.seed, workers)
    };
    let report = reproduce::reproduce(&cfg);
    let failed = !report.passed;
    let mut o = ok(
        Some(args.seed),
        json!({"quick": args.quick, "workers": workers}),
        report,
    )?;
    o.failed = failed;
    Ok(o)
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Roots(a) => roots(a),
        Command::Volume(a) => volume(a),
        Command::Ratio(a) => ratio(a),
        Command::Curvature(a) => curvature(a),
        Command::Cpn(a) => cpn_cmd(a),
        Command::Sample(a) => sample(a, cli.workers),
        Command::Levy(a) => levy_cmd(a),
        Command::Reproduce(a) => reproduce_cmd(a, cli.workers),
    }
}

fn document(o: &Outcome) -> Value {
    json!({
        "provenance": Provenance {
            version: VERSION,
            seed: o.seed,
            config: o.config.clone(),
        },
        "result": o.result,
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::Array(a) => out.push((
            prefix.to_string(),
            a.iter().map(scalar).collect::<Vec<_>>().join(" "),
        )),
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Arrays of objects become one row per element, anything else `key,value`.
pub fn render_csv(result: &Value) -> String {
    let mut s = String::new();
    if let Value::Array(rows) = result {
        if !rows.is_empty() && rows.iter().all(Value::is_object) {
            let flat: Vec<Vec<(String, String)>> = rows
                .iter()
                .map(|r| {
                    let mut out = Vec::new();
                    flatten("", r, &mut out);
                    out
                })
                .collect();
            let header: Vec<String> = flat[0].iter().map(|(k, _)| csv_field(k)).collect();
            s.push_str(&header.join(","));
            s.push('\n');
            for row in &flat {
                let cells: Vec<String> = row.iter().map(|(_, v)| csv_field(v)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            return s;
        }
    }
    let mut out = Vec::new();
    flatten("", result, &mut out);
    s.push_str("key,value\n");
    for (k, v) in out {
        s.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
    }
    s
}

pub fn render_text(doc: &Value) -> String {
    let mut out = Vec::new();
    flatten("", doc, &mut out);
    let width = out.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    out.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn format_of(cli: &Cli) -> Format {
    if cli.json {
        return Format::Json;
    }
    match &cli.command {
        Command::Curvature(CurvatureArgs {
            report: Some(f), ..
        }) => *f,
        Command::Sample(SampleArgs { hist: Some(_), .. }) if cli.format == Format::Text => {
            Format::Csv
        }
        _ => cli.format,
    }
}

fn write_output(cli: &Cli, o: &Outcome, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let doc = document(o);
    if let Command::Reproduce(ReproduceArgs {
        output: Some(path), ..
    }) = &cli.command
    {
        let text = serde_json::to_string_pretty(&doc)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let text = match format_of(cli) {
        Format::Json => serde_json::to_string_pretty(&doc)? + "\n",
        Format::Csv => render_csv(&o.result),
        Format::Text => render_text(&doc),
    };
    stdout.write_all(text.as_bytes())?;
    Ok(())
}

/// Runs the CLI and returns the exit code: 0 success, 1 computation error,
/// 2 usage error.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    if cli.workers == 0 {
        let _ = writeln!(stderr, "error: --workers must be >= 1");
        return 2;
    }
    match execute(&cli).and_then(|o| write_output(&cli, &o, stdout).map(|_| o.failed)) {
        Ok(false) => 0,
        Ok(true) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}
