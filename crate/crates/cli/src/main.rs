//! `critlocus` command-line front end.

mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use critlocus::io::{fmt_f64, parse_alpha, parse_domain, parse_lattice, parse_q, read_domain_file, write_domain_file};
use critlocus::{
    box_dimension_locus, box_dimension_param, build_construction, critical_search, delta_preserved,
    dirichlet_solvable, flow_trajectory, locus_parameterize, verify_locus, BoxCountSeries,
    ConvexDomain, CriticalArc, Error, Lattice2, LocusOptions, PsiFamily, SearchOptions,
};

use render::{render_svg, RenderSpec};

#[derive(Parser, Debug)]
#[command(name = "critlocus", version, about = "Critical determinants and critical loci of planar convex domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Critical determinant of a domain
    Delta {
        /// Domain specification, e.g. disc, lp:p=3, composite:file=k.domain
        spec: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// CSV samples of the critical locus: t, p.x, p.y, q.x, q.y, covolume
    Locus {
        spec: String,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Treat the domain as irreducible
        #[arg(long)]
        assume_irreducible: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the tangent-triangle domain for a parameter set and write it to a file
    Construct {
        #[arg(long, default_value = "disc")]
        base: String,
        /// Parameter set: cantor:depth=N, full, endpoints or gaps:a,b;c,d
        #[arg(long)]
        q: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare admissibility along the locus with membership in the parameter set
    Verify {
        /// Domain file written by `construct`
        #[arg(long)]
        domain: String,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        /// Also check that the critical determinant equals that of the base
        #[arg(long)]
        delta: bool,
    },
    /// Box-counting dimension, CSV: epsilon, count; final line: slope, r2
    Dimension {
        /// Parameter set (box counts in [0, 1])
        #[arg(long, conflicts_with = "domain", required_unless_present = "domain")]
        q: Option<String>,
        /// Constructed domain (box counts of the locus in lattice space)
        #[arg(long)]
        domain: Option<String>,
        #[arg(long, default_value_t = 6561)]
        samples: usize,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG figure of a domain and optionally a lattice
    Render {
        /// Domain specification or domain file
        #[arg(long)]
        domain: String,
        /// t=<value> for a locus lattice, or lattice:v1x,v1y,v2x,v2y
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solvability of |qα − p| ≤ ψ(T), 1 ≤ q ≤ T; CSV: T, solvable, p, q, min_dist
    Dirichlet {
        /// sqrt2, golden, pi or a decimal
        #[arg(long)]
        alpha: String,
        /// c/T or 1/(TlogT)
        #[arg(long, default_value = "c/T")]
        psi: String,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// start:end:log or start:end:lin
        #[arg(long, default_value = "1:1e6:log")]
        t_range: String,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagonal flow of the lattice u_α ℤ²; CSV: t, lambda1_sup, v.x, v.y
    Flow {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 20.0)]
        tmax: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quick invariant checks
    Selftest,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 720)]
    grid: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions { grid_n: self.grid, refine_tol: self.tol, ..SearchOptions::default() }
    }
}

/// Failure of a command: library errors keep their case name.
#[derive(Debug)]
enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            other => Failure::Domain(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(Error::Io(e))
    }
}

type CmdResult = Result<(), Failure>;

/// A domain given either as a specification string or as a domain file.
fn load_domain(arg: &str) -> Result<ConvexDomain, Failure> {
    if Path::new(arg).is_file() {
        Ok(read_domain_file(arg)?)
    } else {
        Ok(parse_domain(arg)?)
    }
}

/// Writes to the named file, or to stdout.
fn emit(out: &Option<PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn csv_row(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

fn cmd_delta(spec: &str, search: &SearchArgs) -> CmdResult {
    let domain = load_domain(spec)?;
    let start = Instant::now();
    let r = critical_search(&domain, &search.options())?;
    log::info!("search took {:.3} s", start.elapsed().as_secs_f64());
    println!("delta_est: {}", fmt_f64(r.delta_est));
    println!("minimizers: {}", r.clusters.len());
    println!("distinct_up_to_symmetry: {}", r.distinct_up_to_symmetry);
    println!("minkowski_ratio: {}", fmt_f64(r.minkowski_ratio(domain.area())));
    if r.parallelogram_warning {
        println!("warning: ParallelogramWarning (minimizers form shear families; representatives only)");
    }
    if r.clusters.iter().any(|c| c.continuum) {
        println!("note: minimizers form a continuous family");
    }
    if r.failed_candidates > 0 {
        println!("note: {} grid points had no admissible candidate", r.failed_candidates);
    }
    Ok(())
}

fn cmd_locus(spec: &str, samples: usize, assume: bool, search: &SearchArgs, out: &Option<PathBuf>) -> CmdResult {
    let domain = load_domain(spec)?;
    let opts = LocusOptions { assume_irreducible: assume, search: search.options(), ..LocusOptions::default() };
    let curve = locus_parameterize(&domain, samples, &opts)?;
    let mut text = csv_row(&["t", "p.x", "p.y", "q.x", "q.y", "covolume"].map(String::from));
    for pt in &curve.points {
        text += &csv_row(&[
            fmt_f64(pt.t),
            fmt_f64(pt.p.x),
            fmt_f64(pt.p.y),
            fmt_f64(pt.q.x),
            fmt_f64(pt.q.y),
            fmt_f64(pt.lattice.covolume()),
        ]);
    }
    if !curve.closes {
        log::warn!("the locus does not close up: the lattice at t = 1 differs from t = 0");
    }
    emit(out, &text)
}

fn cmd_construct(base: &str, q: &str, out: &Path) -> CmdResult {
    let base = load_domain(base)?;
    let q = parse_q(q)?;
    let k = build_construction(&base, &q)?;
    write_domain_file(out, &k)?;
    println!("triangles: {}", k.triangles().len());
    if !k.dropped_gaps().is_empty() {
        println!("dropped_gaps: {}", k.dropped_gaps().len());
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn composite(domain: &ConvexDomain) -> Result<&critlocus::CompositeDomain, Failure> {
    domain
        .as_composite()
        .ok_or_else(|| Failure::Usage("expected a constructed domain (file written by `construct`)".into()))
}

fn cmd_verify(domain: &str, grid: usize, delta: bool) -> CmdResult {
    let k = load_domain(domain)?;
    let q = composite(&k)?.q().clone();
    let r = verify_locus(&k, &q, grid)?;
    println!("agreement_fraction: {}", fmt_f64(r.agreement_fraction));
    println!("scored: {} of {}", r.scored, r.samples);
    for t in r.mismatches.iter().take(20) {
        println!("mismatch: t = {}", fmt_f64(*t));
    }
    if delta {
        let c = delta_preserved(&k, &SearchOptions::default())?;
        println!("delta_k: {}", fmt_f64(c.delta_k));
        println!("delta_h: {}", fmt_f64(c.delta_h));
        println!("delta_preserved: {}", c.preserved && c.monotone);
    }
    Ok(())
}

fn series_csv(s: &BoxCountSeries) -> String {
    let mut text = csv_row(&["epsilon".into(), "count".into()]);
    for (e, n) in s.scales.iter().zip(&s.counts) {
        text += &csv_row(&[fmt_f64(*e), n.to_string()]);
    }
    text += &csv_row(&[fmt_f64(s.slope), fmt_f64(s.r_squared)]);
    text
}

fn cmd_dimension(q: &Option<String>, domain: &Option<String>, samples: usize, kmax: Option<u32>, out: &Option<PathBuf>) -> CmdResult {
    let series = match (q, domain) {
        (Some(q), _) => {
            let q = parse_q(q)?;
            let k = kmax.unwrap_or_else(|| q.resolution().map_or(8, |r| (-r.ln() / 3f64.ln()).round() as u32));
            box_dimension_param(&q, k)?
        }
        (None, Some(d)) => {
            let k = load_domain(d)?;
            let comp = composite(&k)?;
            let kmax = kmax.unwrap_or_else(|| critlocus::analysis::default_locus_kmax(comp.q(), samples));
            box_dimension_locus(comp, comp.q(), samples, kmax)?
        }
        (None, None) => return Err(Failure::Usage("one of --q or --domain is required".into())),
    };
    emit(out, &series_csv(&series))
}

fn render_lattice(domain: &ConvexDomain, arg: &str) -> Result<Lattice2, Failure> {
    if let Some(t) = arg.strip_prefix("t=") {
        let t: f64 = t.trim().parse().map_err(|_| Failure::Usage(format!("bad parameter {arg:?}")))?;
        let lattice = match domain.as_composite() {
            Some(c) => c.locus_lattice(t)?,
            None => CriticalArc::for_domain(domain, &SearchOptions::default())?.lattice(t)?,
        };
        Ok(lattice)
    } else {
        Ok(parse_lattice(arg)?)
    }
}

fn cmd_render(domain: &str, lattice: &Option<String>, width: u32, height: u32, out: &Path) -> CmdResult {
    let k = load_domain(domain)?;
    let l = lattice.as_deref().map(|a| render_lattice(&k, a)).transpose()?;
    let spec = RenderSpec { width, height, ..RenderSpec::default() };
    std::fs::write(out, render_svg(&k, l.as_ref(), &spec)?)?;
    Ok(())
}

fn parse_psi(psi: &str, c: f64) -> Result<PsiFamily, Failure> {
    match psi.replace(' ', "").as_str() {
        "c/T" => Ok(PsiFamily::Linear { c }),
        "1/(TlogT)" | "1/TlogT" => Ok(PsiFamily::LogLinear),
        other => Err(Failure::Usage(format!("unknown psi family {other:?}; expected c/T or 1/(TlogT)"))),
    }
}

fn parse_t_range(s: &str, points: usize) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("bad T range {s:?}; expected start:end:log or start:end:lin"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 || points == 0 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    if !(a >= 1.0 && b >= a && b.is_finite()) {
        return Err(bad());
    }
    let frac = |i: usize| if points == 1 { 0.0 } else { i as f64 / (points - 1) as f64 };
    match parts[2].trim() {
        "log" => Ok((0..points).map(|i| (a.ln() + frac(i) * (b.ln() - a.ln())).exp()).collect()),
        "lin" => Ok((0..points).map(|i| a + frac(i) * (b - a)).collect()),
        _ => Err(bad()),
    }
}

fn cmd_dirichlet(alpha: &str, psi: &str, c: f64, t_range: &str, points: usize, out: &Option<PathBuf>) -> CmdResult {
    let alpha = parse_alpha(alpha)?;
    let family = parse_psi(psi, c)?;
    let mut text = csv_row(&["T", "solvable", "p", "q", "min_dist"].map(String::from));
    for t in parse_t_range(t_range, points)? {
        let r = dirichlet_solvable(alpha, family.eval(t), t);
        let (p, q) = r.witness.map_or((String::new(), String::new()), |(p, q)| (p.to_string(), q.to_string()));
        text += &csv_row(&[fmt_f64(t), r.solvable.to_string(), p, q, fmt_f64(r.min_distance)]);
    }
    emit(out, &text)
}

fn cmd_flow(alpha: &str, tmax: f64, dt: f64, out: &Option<PathBuf>) -> CmdResult {
    if !(dt > 0.0 && tmax >= 0.0 && tmax.is_finite()) {
        return Err(Failure::Usage("need dt > 0 and a finite tmax ≥ 0".into()));
    }
    let alpha = parse_alpha(alpha)?;
    let mut text = csv_row(&["t", "lambda1_sup", "v.x", "v.y"].map(String::from));
    for s in flow_trajectory(alpha, tmax, dt)? {
        text += &csv_row(&[fmt_f64(s.t), fmt_f64(s.lambda1_sup), fmt_f64(s.vector.x), fmt_f64(s.vector.y)]);
    }
    emit(out, &text)
}

fn cmd_selftest() -> CmdResult {
    let checks = critlocus::selftest::run();
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed > 0 {
        return Err(Failure::Domain(Error::InvalidDomain(format!("{failed} self-test checks failed"))));
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Delta { spec, search } => cmd_delta(spec, search),
        Command::Locus { spec, samples, assume_irreducible, search, out } => {
            cmd_locus(spec, *samples, *assume_irreducible, search, out)
        }
        Command::Construct { base, q, out } => cmd_construct(base, q, out),
        Command::Verify { domain, grid, delta } => cmd_verify(domain, *grid, *delta),
        Command::Dimension { q, domain, samples, kmax, out } => cmd_dimension(q, domain, *samples, *kmax, out),
        Command::Render { domain, lattice, width, height, out } => cmd_render(domain, lattice, *width, *height, out),
        Command::Dirichlet { alpha, psi, c, t_range, points, out } => cmd_dirichlet(alpha, psi, *c, t_range, *points, out),
        Command::Flow { alpha, tmax, dt, out } => cmd_flow(alpha, *tmax, *dt, out),
        Command::Selftest => cmd_selftest(),
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("CRITLOCUS_THREADS") else { return };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size the thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring CRITLOCUS_THREADS={v:?}"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error [{}]: {e}", e.kind_name());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_range_log_endpoints() {
        let ts = parse_t_range("1:1e6:log", 50).unwrap();
        assert_eq!(ts.len(), 50);
        assert_eq!(ts[0], 1.0);
        assert!((ts[49] - 1e6).abs() < 1e-6);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn t_range_rejects_garbage() {
        assert!(parse_t_range("1:1e6", 10).is_err());
        assert!(parse_t_range("5:1:log", 10).is_err());
        assert!(parse_t_range("1:10:cubic", 10).is_err());
    }

    #[test]
    fn psi_families() {
        assert!(matches!(parse_psi("c/T", 0.9), Ok(PsiFamily::Linear { c }) if c == 0.9));
        assert!(matches!(parse_psi("1/(T log T)", 1.0), Ok(PsiFamily::LogLinear)));
        assert!(parse_psi("T^2", 1.0).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
