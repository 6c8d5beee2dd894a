//! Subcommand bodies. Each returns the exit code on success.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use racah::analysis::{
    bench as bench_sizes, max_size_search_with, moments_2d, nmse, orthogonality_error, psnr,
    reconstruct_2d, restriction_from_matrix, SearchConfig, SearchOutcome,
};
use racah::baselines::{self, Algorithm};
use racah::imst::{self, quarter_split, StabilizationReport};
use racah::{PolyMatrix, RacahParams};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::matrix_csv::{read_matrix, write_matrix};
use crate::pgm::{read_pgm, write_pgm};
use crate::random::random_image;
use crate::{
    BenchArgs, CheckArgs, CompareArgs, GenArgs, Generator, ImstArgs, MaxsizeArgs, ReconstructArgs,
    RestrictArgs,
};

/// Exit code after an interrupt, as a shell reports SIGINT.
const INTERRUPTED: i32 = 130;

/// Fixture directory: `RACAH_FIXTURES`, else the one bundled with the sources.
pub fn fixture_dir() -> PathBuf {
    std::env::var_os("RACAH_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

/// `path` itself when it exists; otherwise the same relative path under the fixture directory.
pub fn resolve_input(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    let alt = fixture_dir().join(path);
    if alt.exists() {
        alt
    } else {
        path.to_path_buf()
    }
}

fn read_input(path: &Path) -> CliResult<Vec<u8>> {
    let p = resolve_input(path);
    fs::read(&p).map_err(|e| CliError::input(format!("{}: {e}", p.display())))
}

fn write_output(path: &Path, data: &[u8]) -> CliResult<()> {
    fs::write(path, data).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes") + "\n"
}

/// Writes JSON to `path`, or to standard output.
fn emit_json(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write_output(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Rows `0..=ord` by `g`, with the stabilization report when ImSt produced them.
pub fn generate_with(
    g: Generator,
    p: &RacahParams,
    imst_args: &ImstArgs,
    max_order: Option<usize>,
) -> CliResult<(PolyMatrix, Option<StabilizationReport>)> {
    let ord = max_order.unwrap_or(p.n_size - 1);
    if ord >= p.n_size {
        return Err(CliError::input(format!(
            "max order {ord} must be below N = {}",
            p.n_size
        )));
    }
    Ok(match g {
        Generator::Imst => {
            let (m, r) = imst::generate(p, &imst_args.config(Some(ord)))?;
            (m, Some(r))
        }
        Generator::ImstGeneral => {
            let (m, r) = imst::generate_general(p, &imst_args.config(Some(ord)))?;
            (m, Some(r))
        }
        other => (baselines::generate(other.algorithm(), p, ord)?, None),
    })
}

pub fn gen(args: &GenArgs) -> CliResult<u8> {
    let p = args.params.params()?;
    let (mut m, report) = generate_with(args.alg, &p, &args.imst, args.max_order)?;
    if args.gsop {
        m = baselines::gsop_refine(&m)?;
    }
    let e = orthogonality_error(&m);
    write_output(&args.output, write_matrix(&m, args.alg.name()).as_bytes())?;
    let report_path = args
        .report
        .clone()
        .unwrap_or_else(|| args.output.with_extension("json"));
    let body = json!({
        "algorithm": args.alg.name(),
        "gsop": args.gsop,
        "params": p,
        "max_order": m.max_order(),
        "orthogonality_error": e,
        "stabilization": report,
    });
    write_output(&report_path, to_json(&body).as_bytes())?;
    eprintln!("{}: N = {}, E = {e:e}", args.alg.name(), p.n_size);
    Ok(0)
}

pub fn check(args: &CheckArgs) -> CliResult<u8> {
    let bytes = read_input(&args.input)?;
    let text = String::from_utf8(bytes).map_err(|_| CliError::input("matrix file is not UTF-8"))?;
    let file = read_matrix(&text)?;
    let e = orthogonality_error(&file.matrix);
    println!("{e:e}");
    Ok(if e <= args.threshold { 0 } else { 1 })
}

#[derive(Debug, Serialize)]
struct Comparison {
    left: String,
    right: String,
    params: RacahParams,
    ns: usize,
    max_abs: f64,
    rms: f64,
    parts: PartDiffs,
}

/// Largest absolute difference inside each region of the matrix.
#[derive(Debug, Serialize, Default)]
struct PartDiffs {
    /// Rows 0 and 1.
    rows01: f64,
    first_column: f64,
    last_column: f64,
    /// Columns `x >= ns`, other than the border rows and columns.
    right: f64,
    /// Columns `x < ns`, other than the border rows and columns.
    left: f64,
}

fn compare_matrices(l: &PolyMatrix, r: &PolyMatrix, ns: usize) -> CliResult<(f64, f64, PartDiffs)> {
    let max_abs = l.max_abs_diff(r)?;
    let (lv, rv) = (l.values(), r.values());
    let cols = lv.ncols();
    let mut parts = PartDiffs::default();
    let mut sq = 0.0;
    for ((n, x), a) in lv.indexed_iter() {
        let d = (a - rv[[n, x]]).abs();
        sq += d * d;
        let slot = if n < 2 {
            &mut parts.rows01
        } else if x == 0 {
            &mut parts.first_column
        } else if x + 1 == cols {
            &mut parts.last_column
        } else if x >= ns {
            &mut parts.right
        } else {
            &mut parts.left
        };
        *slot = slot.max(d);
    }
    Ok((max_abs, (sq / lv.len() as f64).sqrt(), parts))
}

pub fn compare(args: &CompareArgs) -> CliResult<u8> {
    let (left, right, lname, rname, report) = match &args.files {
        Some(files) => {
            let load = |p: &Path| -> CliResult<crate::matrix_csv::MatrixFile> {
                let text = String::from_utf8(read_input(p)?)
                    .map_err(|_| CliError::input("matrix file is not UTF-8"))?;
                read_matrix(&text)
            };
            let (l, r) = (load(&files[0])?, load(&files[1])?);
            let ln = format!("{} ({})", files[0].display(), l.alg);
            let rn = format!("{} ({})", files[1].display(), r.alg);
            (l.matrix, r.matrix, ln, rn, None)
        }
        None => {
            let p = args.params.params()?;
            let (l, lr) = generate_with(args.alg, &p, &args.imst, None)?;
            let (r, rr) = generate_with(args.against, &p, &args.imst, None)?;
            (
                l,
                r,
                args.alg.name().to_string(),
                args.against.name().to_string(),
                lr.or(rr),
            )
        }
    };
    if left.params() != right.params() {
        return Err(CliError::input(
            "the two matrices have different parameters",
        ));
    }
    let ns = report
        .map(|r| r.ns)
        .unwrap_or_else(|| quarter_split(left.n_size()));
    let (max_abs, rms, parts) = compare_matrices(&left, &right, ns)?;
    let out = Comparison {
        left: lname,
        right: rname,
        params: *left.params(),
        ns,
        max_abs,
        rms,
        parts,
    };
    print!("{}", to_json(&out));
    Ok(0)
}

/// Installs an interrupt handler that writes the rendered snapshot to `path`
/// (or standard output) and exits.
fn with_interrupt_flush<S>(
    path: Option<PathBuf>,
    snapshot: Arc<Mutex<S>>,
    render: fn(&S) -> String,
) -> CliResult<()>
where
    S: Send + 'static,
{
    ctrlc::set_handler(move || {
        let text = snapshot.lock().map(|s| render(&s)).unwrap_or_default();
        match &path {
            Some(p) => {
                let _ = fs::write(p, text);
            }
            None => {
                let mut out = std::io::stdout().lock();
                let _ = out.write_all(text.as_bytes());
                let _ = out.flush();
            }
        }
        eprintln!("interrupted; partial results written");
        std::process::exit(INTERRUPTED);
    })
    .map_err(|e| CliError::input(format!("cannot install the interrupt handler: {e}")))
}

#[derive(Debug, Serialize)]
struct BenchOutput {
    rule: &'static str,
    complete: bool,
    records: Vec<racah::analysis::BenchRecord>,
}

fn render_bench(b: &BenchOutput) -> String {
    to_json(b)
}

pub fn bench(args: &BenchArgs) -> CliResult<u8> {
    if args.sizes.contains(&0) {
        return Err(CliError::input("sizes must be positive"));
    }
    let alg = Algorithm {
        id: args.alg.algorithm(),
        gsop_post: args.gsop,
    };
    if args.alg == Generator::ImstGeneral {
        return Err(CliError::input(
            "bench times the dispatching generator; use --alg imst",
        ));
    }
    let rule = args.rule.rule();
    let state = Arc::new(Mutex::new(BenchOutput {
        rule: rule.name(),
        complete: false,
        records: Vec::new(),
    }));
    with_interrupt_flush(args.output.clone(), Arc::clone(&state), render_bench)?;
    for &n in &args.sizes {
        let rec = bench_sizes(&alg, &[n], &rule, args.repeats, args.budget)?;
        for r in &rec {
            eprintln!(
                "{} N = {n}: {:.6e} s over {} runs, E = {}",
                alg.id,
                r.mean_seconds,
                r.repeats,
                r.ortho_error.map_or("n/a".into(), |e| format!("{e:e}"))
            );
        }
        state
            .lock()
            .expect("no panics while held")
            .records
            .extend(rec);
    }
    let mut s = state.lock().expect("no panics while held");
    s.complete = true;
    emit_json(args.output.as_deref(), &render_bench(&s))?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct MaxsizeOutput {
    algorithm: &'static str,
    gsop: bool,
    rule: &'static str,
    config: SearchConfig,
    complete: bool,
    outcome: Option<SearchOutcome>,
    trials_so_far: Vec<racah::analysis::Trial>,
}

fn render_maxsize(m: &MaxsizeOutput) -> String {
    to_json(m)
}

pub fn maxsize(args: &MaxsizeArgs) -> CliResult<u8> {
    if args.alg == Generator::ImstGeneral {
        return Err(CliError::input(
            "the search uses the dispatching generator; use --alg imst",
        ));
    }
    if args.start == 0 || args.start > args.ceiling {
        return Err(CliError::input("need 1 <= start <= ceiling"));
    }
    let alg = Algorithm {
        id: args.alg.algorithm(),
        gsop_post: args.gsop,
    };
    let rule = args.rule.rule();
    let cfg = SearchConfig {
        e_max: args.e_max,
        trial_budget_s: args.budget,
        start: args.start,
        ceiling: args.ceiling,
        verify_window: args.verify_window,
    };
    let state = Arc::new(Mutex::new(MaxsizeOutput {
        algorithm: args.alg.name(),
        gsop: args.gsop,
        rule: rule.name(),
        config: cfg,
        complete: false,
        outcome: None,
        trials_so_far: Vec::new(),
    }));
    with_interrupt_flush(args.output.clone(), Arc::clone(&state), render_maxsize)?;
    let outcome = max_size_search_with(&alg, &rule, &cfg, |t| {
        eprintln!(
            "N = {}: {} in {:.3} s{}",
            t.n,
            if t.passed() { "pass" } else { "fail" },
            t.seconds,
            t.error.map_or(String::new(), |e| format!(", E = {e:e}"))
        );
        state
            .lock()
            .expect("no panics while held")
            .trials_so_far
            .push(t.clone());
    });
    eprintln!("max N = {}", outcome.max_n);
    let mut s = state.lock().expect("no panics while held");
    s.complete = true;
    s.trials_so_far.clear();
    s.outcome = Some(outcome);
    emit_json(args.output.as_deref(), &render_maxsize(&s))?;
    Ok(0)
}

pub fn restrict(args: &RestrictArgs) -> CliResult<u8> {
    let p = args.params.params()?;
    let (m, _) = generate_with(args.alg, &p, &ImstArgs::default_args(), None)?;
    let study = restriction_from_matrix(&m, args.rho)?;
    let csv = study.to_csv();
    match &args.output {
        Some(path) => write_output(path, csv.as_bytes())?,
        None => print!("{csv}"),
    }
    Ok(0)
}

#[derive(Debug, Serialize)]
struct ReconstructionMetric {
    order: usize,
    nmse: f64,
    /// `null` when the reconstruction is exact.
    psnr: Option<f64>,
}

pub fn reconstruct(args: &ReconstructArgs) -> CliResult<u8> {
    let img = match (&args.input, &args.random) {
        (Some(path), _) => read_pgm(&read_input(path)?)?,
        (None, Some(dims)) => {
            let (rows, cols) = (dims[0], dims[1]);
            if rows == 0 || cols == 0 {
                return Err(CliError::input("random image dimensions must be positive"));
            }
            random_image(rows, cols, args.seed)
        }
        (None, None) => return Err(CliError::input("need --input or --random")),
    };
    let (rows, cols) = img.dim();
    let px = RacahParams::with_size(args.a, rows, args.alpha, args.beta)?;
    let py = RacahParams::with_size(args.a, cols, args.alpha, args.beta)?;
    let imst_args = ImstArgs::default_args();
    let (rx, _) = generate_with(args.alg, &px, &imst_args, None)?;
    let (ry, _) = generate_with(args.alg, &py, &imst_args, None)?;
    let mom = moments_2d(&img, &rx, &ry)?;
    let full = rows.max(cols);
    let orders = if args.orders.is_empty() {
        vec![full]
    } else {
        args.orders.clone()
    };
    let mut metrics = Vec::with_capacity(orders.len());
    let mut last = None;
    for &order in &orders {
        let rec = reconstruct_2d(&mom, &rx, &ry, order)?;
        let e = nmse(&img, &rec)?;
        let q = psnr(&img, &rec, args.psnr_log())?;
        eprintln!("order {order}: nmse = {e:e}, psnr = {q}");
        metrics.push(ReconstructionMetric {
            order,
            nmse: e,
            psnr: q.is_finite().then_some(q),
        });
        if last.as_ref().is_none_or(|(o, _)| order >= *o) {
            last = Some((order, rec));
        }
    }
    if let (Some(path), Some((_, rec))) = (&args.output, &last) {
        write_output(path, &write_pgm(rec))?;
    }
    emit_json(args.metrics.as_deref(), &to_json(&metrics))?;
    Ok(0)
}

impl ImstArgs {
    /// Default stabilization settings, for commands without ImSt flags.
    pub fn default_args() -> Self {
        Self {
            theta: imst::DEFAULT_THRESHOLD,
            ns_strategy: crate::NsChoice::Auto,
            part3_guard: crate::GuardChoice::SmallEarlier,
        }
    }
}
