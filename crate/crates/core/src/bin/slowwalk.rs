use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use slow_walks::characterization::{s_oracle_bruteforce, s_oracle_diophantine, DEFAULT_BRUTE_CAP};
use slow_walks::density::{default_c_grid, density_curve_from, theory_density, DensityJob};
use slow_walks::extremal::{
    check_bounds, extremal_witness, infinitely_max_iff, k_t_report, max_attainments, max_p_bound,
    recurrent_p_value, s_bounds, s_lower_chicken,
};
use slow_walks::io::{self as sio, DENSITY_HEADER, SERIES_HEADER, SLOWEST_HEADER};
use slow_walks::selftest::{self, Scale};
use slow_walks::slowest::{default_r, series, ss_and_s, SeriesKind, ValidSet};
use slow_walks::{characterize, enumerate_good_pairs, Error, Params, Result, Walk};

#[derive(Parser)]
#[command(
    name = "slowwalk",
    version,
    about = "Slow (alpha, beta)-walks from the command line"
)]
struct Cli {
    /// Worker threads for range scans (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Coeffs {
    #[arg(long)]
    alpha: u64,
    #[arg(long)]
    beta: u64,
}

impl Coeffs {
    fn params(&self) -> Result<Params> {
        Params::new(self.alpha, self.beta)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    I,
    E,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certificate (s, t, a, b) and every n-good pair.
    Pairs {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        n: BigInt,
        /// Cross-check against the Diophantine oracle (and brute force for small n).
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Terms w_1..w_k of the walk seeded with (b, a).
    Walk {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        b: BigInt,
        #[arg(long)]
        a: BigInt,
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
    /// Number of n-good pairs.
    P {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        n: BigInt,
    },
    /// s(n) against its logarithmic envelope and the chicken lower bound.
    Bounds {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        n: BigInt,
    },
    /// Extremal witnesses, the maximal pair counts and k_t.
    Extremal {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, default_value_t = 12)]
        t_max: u32,
        /// Also count where the maximum is attained in [1, scan].
        #[arg(long)]
        scan: Option<u64>,
        #[arg(long, default_value_t = 10)]
        windows: u64,
    },
    /// Empirical density of S_p at n_{c,r} over a grid of c.
    Density {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        r: u32,
        /// Number of evenly spaced c in [1, gamma^2].
        #[arg(long, default_value_t = 17)]
        grid: usize,
        /// Explicit c values, overriding --grid.
        #[arg(long, value_delimiter = ',')]
        c: Vec<f64>,
        /// Require the closed form at every grid point; fail if outside its regime.
        #[arg(long)]
        theory: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Continue an interrupted run in --out.
        #[arg(long)]
        resume: bool,
    },
    /// ss_T(n) and the pairs attaining it.
    Slowest {
        #[arg(long)]
        n: BigInt,
        /// Pair set such as 1:6,2:3 (default R).
        #[arg(long = "T")]
        set: Option<ValidSet>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Inclusive (i) or exclusive (e) achiever series over [2, nmax].
    SlowestScan {
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        target: Params,
        #[arg(long, default_value_t = 100)]
        stride: u64,
        #[arg(long, value_enum, default_value_t = Kind::I)]
        series: Kind,
        #[arg(long = "T")]
        set: Option<ValidSet>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        resume: bool,
    },
    /// Run the invariant suites; exit 0 iff all pass.
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be >= 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}

fn positive_n(n: &BigInt) -> Result<()> {
    if *n < BigInt::from(1) {
        return Err(Error::InvalidArgument(format!("n must be >= 1, got {n}")));
    }
    Ok(())
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match cmd {
        Cmd::Pairs {
            coeffs,
            n,
            verify,
            json,
        } => pairs(&mut out, &coeffs.params()?, &n, verify, json)?,
        Cmd::Walk { coeffs, b, a, k } => {
            let params = coeffs.params()?;
            if b < BigInt::from(1) || a < BigInt::from(1) {
                return Err(Error::InvalidArgument("seed terms must be positive".into()));
            }
            let mut walk = Walk::new(&params, b, a);
            for i in 1..=k {
                writeln!(out, "{i} {}", walk.term(i))?;
            }
        }
        Cmd::P { coeffs, n } => {
            positive_n(&n)?;
            writeln!(out, "{}", characterize(&coeffs.params()?, &n).pair_count())?;
        }
        Cmd::Bounds { coeffs, n } => bounds(&mut out, &coeffs.params()?, &n)?,
        Cmd::Extremal {
            coeffs,
            t_max,
            scan,
            windows,
        } => extremal(&mut out, &coeffs.params()?, t_max, scan, windows)?,
        Cmd::Density {
            coeffs,
            p,
            r,
            grid,
            c,
            theory,
            out: path,
            format,
            resume,
        } => {
            let params = coeffs.params()?;
            let grid = if c.is_empty() {
                default_c_grid(&params, grid)
            } else {
                c
            };
            let job = DensityJob::new(&params, p, r, grid)?;
            if theory {
                for &c in &job.c_grid {
                    theory_density(&params, p, c)?;
                }
            }
            density(&mut out, &job, path, format, resume)?;
        }
        Cmd::Slowest { n, set, format } => {
            let set = set.unwrap_or_else(default_r);
            let report = ss_and_s(&n, &set)?;
            emit(
                &mut out,
                &SLOWEST_HEADER,
                &[sio::slowest_record(&report)],
                format,
            )?;
        }
        Cmd::SlowestScan {
            nmax,
            target,
            stride,
            series: kind,
            set,
            out: path,
            format,
            resume,
        } => {
            let kind = match kind {
                Kind::I => SeriesKind::Inclusive,
                Kind::E => SeriesKind::Exclusive,
            };
            let set = set.unwrap_or_else(default_r);
            slowest_scan(
                &mut out, &set, &target, kind, nmax, stride, path, format, resume,
            )?;
        }
        Cmd::Selftest { quick } => {
            let scale = if quick { Scale::quick() } else { Scale::full() };
            let results = selftest::run(scale);
            for r in &results {
                match &r.outcome {
                    Ok(()) => writeln!(out, "PASS {} ({:.1}s)", r.label, r.elapsed.as_secs_f64())?,
                    Err(why) => writeln!(
                        out,
                        "FAIL {} ({:.1}s): {why}",
                        r.label,
                        r.elapsed.as_secs_f64()
                    )?,
                }
            }
            let failed: Vec<&str> = results
                .iter()
                .filter(|r| !r.passed())
                .map(|r| r.label)
                .collect();
            if !failed.is_empty() {
                eprintln!("failing suites: {}", failed.join(", "));
                return Ok(ExitCode::from(3));
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn pairs(
    out: &mut impl Write,
    params: &Params,
    n: &BigInt,
    verify: bool,
    as_json: bool,
) -> Result<()> {
    positive_n(n)?;
    let cert = characterize(params, n);
    let family = match cert.triple {
        Some(_) => enumerate_good_pairs(&cert)?.pairs,
        None => Vec::new(),
    };
    let mut verdict = None;
    if verify {
        let small = n
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("--verify needs n < 2^64, got {n}")))?;
        let oracle = s_oracle_diophantine(params, small);
        let ours: Vec<(u64, u64)> = family
            .iter()
            .map(|(b, a)| (b.to_u64().unwrap(), a.to_u64().unwrap()))
            .collect();
        if oracle.s != cert.s || (!cert.is_degenerate() && oracle.pairs != ours) {
            return Err(Error::Inconsistency(format!(
                "oracle gives s={} with pairs {:?}, characterization gives s={} with {ours:?}",
                oracle.s, oracle.pairs, cert.s
            )));
        }
        let mut what = "diophantine oracle agrees".to_string();
        if small <= DEFAULT_BRUTE_CAP {
            let brute = s_oracle_bruteforce(params, small, DEFAULT_BRUTE_CAP)?;
            if brute.s != cert.s || (!cert.is_degenerate() && brute.pairs != ours) {
                return Err(Error::Inconsistency(format!(
                    "brute force gives s={}, characterization gives s={}",
                    brute.s, cert.s
                )));
            }
            what.push_str("; brute force agrees");
        }
        verdict = Some(what);
    }
    if as_json {
        let triple = cert
            .triple
            .as_ref()
            .map(|tr| json!({"t": tr.t, "a": tr.a.to_string(), "b": tr.b.to_string()}));
        let list: Vec<_> = family
            .iter()
            .map(|(b, a)| json!([b.to_string(), a.to_string()]))
            .collect();
        let v = json!({
            "alpha": params.alpha(),
            "beta": params.beta(),
            "n": n.to_string(),
            "s": cert.s,
            "triple": triple,
            "p": cert.pair_count().to_string(),
            "pairs": list,
            "verify": verdict,
        });
        serde_json::to_writer_pretty(&mut *out, &v)?;
        writeln!(out)?;
        return Ok(());
    }
    writeln!(out, "alpha={} beta={} n={n}", params.alpha(), params.beta())?;
    match &cert.triple {
        None => writeln!(out, "s=2 degenerate: (x, n) is n-good for every x >= 1")?,
        Some(tr) => {
            writeln!(out, "s={} t={} a={} b={}", cert.s, tr.t, tr.a, tr.b)?;
            writeln!(out, "p={}", family.len())?;
            writeln!(out, "pairs (b, a):")?;
            for (b, a) in &family {
                writeln!(out, "  ({b}, {a})")?;
            }
        }
    }
    if let Some(v) = verdict {
        writeln!(out, "verify: {v}")?;
    }
    Ok(())
}

fn bounds(out: &mut impl Write, params: &Params, n: &BigInt) -> Result<()> {
    positive_n(n)?;
    let cert = characterize(params, n);
    writeln!(out, "s={}", cert.s)?;
    writeln!(out, "chicken_lower={}", s_lower_chicken(params, n))?;
    if cert.is_degenerate() {
        writeln!(out, "envelope: not applicable (s = 2)")?;
        return Ok(());
    }
    let env = s_bounds(params, n)?;
    writeln!(
        out,
        "envelope_lower={:.6} envelope_upper={:.6}",
        env.lower, env.upper
    )?;
    let check = check_bounds(params, n, cert.s);
    writeln!(
        out,
        "exact: upper={} lower={} chicken={}",
        check.upper, check.lower, check.chicken
    )?;
    if !check.all() {
        return Err(Error::Inconsistency(format!(
            "bounds fail for n={n}: {check:?}"
        )));
    }
    Ok(())
}

fn extremal(
    out: &mut impl Write,
    params: &Params,
    t_max: u32,
    scan: Option<u64>,
    windows: u64,
) -> Result<()> {
    writeln!(out, "max_p={}", max_p_bound(params))?;
    writeln!(out, "recurrent_p={}", recurrent_p_value(params)?)?;
    writeln!(out, "max_p_infinitely_often={}", infinitely_max_iff(params))?;
    writeln!(out, "t,n_t,a_t,b_t,p")?;
    for t in 2..=t_max.max(2) {
        let w = extremal_witness(params, t)?;
        let p = characterize(params, &w.n).pair_count();
        writeln!(out, "{t},{},{},{},{p}", w.n, w.a, w.b)?;
    }
    let kt = k_t_report(params, t_max.max(2));
    let onset = kt.onset.map_or("none".to_string(), |t| t.to_string());
    writeln!(out, "k_t limit={} onset={onset}", kt.limit)?;
    for (t, k) in &kt.values {
        writeln!(out, "  k_{t}={k}")?;
    }
    if let Some(n_scan) = scan {
        if n_scan == 0 || n_scan as i128 >= 1i128 << 40 {
            return Err(Error::InvalidArgument(format!(
                "--scan must be in [1, 2^40), got {n_scan}"
            )));
        }
        writeln!(out, "lo,hi,max_p_count")?;
        for w in max_attainments(params, n_scan, windows) {
            writeln!(out, "{},{},{}", w.lo, w.hi, w.count)?;
        }
    }
    Ok(())
}

fn emit(out: &mut impl Write, header: &[&str], rows: &[Vec<String>], format: Format) -> Result<()> {
    match format {
        Format::Csv => sio::write_csv(out, header, rows, false),
        Format::Json => sio::write_json(out, header, rows),
    }
}

/// Resolves where rows go and which rows already exist.
fn prepare(
    path: &Option<PathBuf>,
    header: &[&str],
    format: Format,
    resume: bool,
) -> Result<Vec<Vec<String>>> {
    if !resume {
        return Ok(Vec::new());
    }
    let Some(path) = path else {
        return Err(Error::InvalidArgument("--resume needs --out".into()));
    };
    if matches!(format, Format::Json) {
        return Err(Error::InvalidArgument(
            "--resume works on CSV output only".into(),
        ));
    }
    Ok(sio::resume_rows(path, header)?.unwrap_or_default())
}

fn write_rows(
    out: &mut impl Write,
    path: Option<PathBuf>,
    header: &[&str],
    rows: &[Vec<String>],
    format: Format,
    appending: bool,
) -> Result<()> {
    match path {
        None => emit(out, header, rows, format),
        Some(path) => {
            let file = sio::open_output(&path, appending)?;
            match format {
                Format::Csv => sio::write_csv(file, header, rows, appending),
                Format::Json => sio::write_json(file, header, rows),
            }
        }
    }
}

fn density(
    out: &mut impl Write,
    job: &DensityJob,
    path: Option<PathBuf>,
    format: Format,
    resume: bool,
) -> Result<()> {
    let done = prepare(&path, &DENSITY_HEADER, format, resume)?;
    if done.len() > job.c_grid.len() {
        return Err(Error::InvalidArgument(
            "existing file has more rows than the grid".into(),
        ));
    }
    for (i, rec) in done.iter().enumerate() {
        let row = sio::parse_density_row(rec)?;
        let same = (row.alpha, row.beta, row.p, row.r)
            == (job.params.alpha(), job.params.beta(), job.p, job.r)
            && rec[4] == sio::fmt_sig10(job.c_grid[i]);
        if !same {
            return Err(Error::InvalidArgument(format!(
                "row {} of the existing file belongs to a different job",
                i + 1
            )));
        }
    }
    let rows: Vec<Vec<String>> = density_curve_from(job, done.len())?
        .iter()
        .map(sio::density_record)
        .collect();
    write_rows(out, path, &DENSITY_HEADER, &rows, format, !done.is_empty())
}

#[allow(clippy::too_many_arguments)]
fn slowest_scan(
    out: &mut impl Write,
    set: &ValidSet,
    target: &Params,
    kind: SeriesKind,
    nmax: u64,
    stride: u64,
    path: Option<PathBuf>,
    format: Format,
    resume: bool,
) -> Result<()> {
    if nmax < 2 {
        return Err(Error::InvalidArgument(format!(
            "--nmax must be >= 2, got {nmax}"
        )));
    }
    let done = prepare(&path, &SERIES_HEADER, format, resume)?;
    let last = match done.last() {
        Some(rec) => Some(sio::parse_series_row(rec, kind)?),
        None => None,
    };
    if let Some(row) = last {
        if row.n > nmax || (row.n % stride != 0 && row.n != nmax) {
            return Err(Error::InvalidArgument(format!(
                "existing file ends at n={} which does not fit --nmax {nmax} --stride {stride}",
                row.n
            )));
        }
    }
    let rows: Vec<Vec<String>> = series(set, target, kind, nmax, stride, last)?
        .iter()
        .map(|r| sio::series_record(r, kind))
        .collect();
    write_rows(out, path, &SERIES_HEADER, &rows, format, !done.is_empty())
}
