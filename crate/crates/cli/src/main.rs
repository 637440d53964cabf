//! `dunkl`: evaluate dihedral Dunkl kernels and intertwining images, sweep
//! parameter grids to CSV, and run the verification suites.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use dihedral_dunkl::kernels;
use dihedral_dunkl::poly2::{format_g17, parse_poly};
use dihedral_dunkl::transform;
use dihedral_dunkl::verify::{self, Suite};
use dihedral_dunkl::{Config, DihedralGroup, DunklContext, Error, Intertwiner, Multiplicity, PlanePoint};

#[derive(Parser, Debug)]
#[command(name = "dunkl", version, about = "Dunkl kernels and intertwining operators for dihedral groups")]
struct Cli {
    /// Config file with `key = value` lines
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one config key (repeatable), e.g. `--set uv_order=24`
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Dihedral group, e.g. I4
    #[arg(long)]
    group: String,
    /// Multiplicities `alpha[,beta]`
    #[arg(long)]
    kappa: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dunkl kernel E(z, w) or generalized Bessel function J(z, w)
    EvalKernel {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        bessel: bool,
        #[arg(long)]
        json: bool,
    },
    /// Laplace transform in t of t^{k'gamma} E(t z, w)
    Laplace {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        json: bool,
    },
    /// V p at z by the closed forms, next to the exact oracle
    Intertwine {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Evaluate on the line r e^{i q pi / k}, r = |z| (odd groups)
        #[arg(long = "xu-line", value_name = "Q")]
        xu_line: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Sweep one coordinate and write CSV
    Table {
        #[command(flatten)]
        group: GroupArgs,
        /// `var=start:stop:step`, var one of z.r, z.phi, w.r, w.phi
        #[arg(long)]
        sweep: String,
        #[arg(long, default_value = "1,0.3", allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "0.4,0.6", allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        bessel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dunkl transform of a built-in input at y
    Transform {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = Input::Gaussian)]
        input: Input,
        /// Truncation radius (default from config)
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Run invariant suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Input {
    /// e^{-|x|^2/2}
    Gaussian,
}

/// Failures after argument parsing: usage problems exit 2, the rest 1.
enum Failure {
    Usage(String),
    Runtime(String),
    Suite(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Poly(_) | Error::InvalidGroup(_) | Error::Precondition(_) | Error::Config(_) => {
                Failure::Usage(e.to_string())
            }
            Error::IllConditioned { .. } | Error::NonConvergence { .. } => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Suite(failed)) => {
            eprintln!("failed properties:");
            for f in failed {
                eprintln!("  {f}");
            }
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("DUNKL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("DUNKL_THREADS must be a positive integer, got '{raw}'"))?;
    if n == 0 {
        return Err("DUNKL_THREADS must be a positive integer, got 0".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn load_config(cli: &Cli) -> Result<Config, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Config::from_text(&text)?
        }
        None => Config::default(),
    };
    for item in &cli.overrides {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--set expects KEY=VALUE, got '{item}'")))?;
        cfg.set(key.trim(), value.trim())?;
    }
    Ok(cfg)
}

fn parse_pair(name: &str, text: &str) -> Result<[f64; 2], Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Failure::Usage(format!("--{name} expects x1,x2, got '{text}'"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    if !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok([a, b])
}

fn parse_point(name: &str, text: &str) -> Result<PlanePoint, Failure> {
    let [a, b] = parse_pair(name, text)?;
    Ok(PlanePoint::new(a, b))
}

fn parse_group(args: &GroupArgs) -> Result<DihedralGroup, Failure> {
    let parts: Vec<&str> = args.kappa.split(',').map(str::trim).collect();
    let bad = || Failure::Usage(format!("--kappa expects alpha[,beta], got '{}'", args.kappa));
    let values: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let kappa = match values.as_slice() {
        [a] => Multiplicity::uniform(*a),
        [a, b] => Multiplicity::new(*a, *b),
        _ => return Err(bad()),
    };
    let g = DihedralGroup::from_spec(&args.group, kappa)?;
    if !g.is_even() && kappa.beta != kappa.alpha {
        return Err(Failure::Usage(format!(
            "{} has one root orbit; give a single multiplicity",
            g.name()
        )));
    }
    Ok(g)
}

fn g17(x: f64) -> String {
    format_g17(x)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Runtime(e.to_string()))?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct GroupEcho {
    group: String,
    alpha: f64,
    beta: f64,
}

impl GroupEcho {
    fn new(g: &DihedralGroup) -> Self {
        GroupEcho {
            group: g.name(),
            alpha: g.kappa().alpha,
            beta: g.kappa().beta,
        }
    }
}

#[derive(Serialize)]
struct Tolerances {
    uv_order: usize,
    simplex_order: usize,
    humbert_method: String,
}

impl Tolerances {
    fn new(cfg: &Config) -> Self {
        Tolerances {
            uv_order: cfg.uv_order,
            simplex_order: cfg.simplex_order,
            humbert_method: format!("{:?}", cfg.humbert_method).to_lowercase(),
        }
    }
}

#[derive(Serialize)]
struct KernelReport {
    command: &'static str,
    #[serde(flatten)]
    group: GroupEcho,
    z: [f64; 2],
    w: [f64; 2],
    function: &'static str,
    value: f64,
    method: &'static str,
    tolerances: Tolerances,
}

#[derive(Serialize)]
struct LaplaceReport {
    command: &'static str,
    #[serde(flatten)]
    group: GroupEcho,
    z: [f64; 2],
    w: [f64; 2],
    s: f64,
    value: f64,
    method: &'static str,
    tolerances: Tolerances,
}

#[derive(Serialize)]
struct IntertwineReport {
    command: &'static str,
    #[serde(flatten)]
    group: GroupEcho,
    poly: String,
    z: [f64; 2],
    xu_line: Option<usize>,
    value: f64,
    oracle: f64,
    diff: f64,
    method: &'static str,
    tolerances: Tolerances,
}

#[derive(Serialize)]
struct TransformReport {
    command: &'static str,
    #[serde(flatten)]
    group: GroupEcho,
    y: [f64; 2],
    input: &'static str,
    radius: f64,
    re: f64,
    im: f64,
    method: &'static str,
    tolerances: Tolerances,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = load_config(&cli)?;
    match &cli.command {
        Command::EvalKernel { group, z, w, bessel, json } => {
            let g = parse_group(group)?;
            let (z, w) = (parse_point("z", z)?, parse_point("w", w)?);
            let (value, function) = if *bessel {
                (kernels::generalized_bessel(&g, &z, &w, &cfg)?, "generalized_bessel")
            } else {
                (kernels::dunkl_kernel(&g, &z, &w, &cfg)?, "dunkl_kernel")
            };
            if *json {
                print_json(&KernelReport {
                    command: "eval-kernel",
                    group: GroupEcho::new(&g),
                    z: z.coords(),
                    w: w.coords(),
                    function,
                    value,
                    method: kernel_method(&g, *bessel),
                    tolerances: Tolerances::new(&cfg),
                })?;
            } else {
                println!("{}", g17(value));
            }
        }
        Command::Laplace { group, z, w, s, json } => {
            let g = parse_group(group)?;
            let (z, w) = (parse_point("z", z)?, parse_point("w", w)?);
            let value = kernels::dunkl_kernel_laplace(&g, &z, &w, *s, &cfg)?;
            if *json {
                print_json(&LaplaceReport {
                    command: "laplace",
                    group: GroupEcho::new(&g),
                    z: z.coords(),
                    w: w.coords(),
                    s: *s,
                    value,
                    method: "beta-measure quadrature of the factored Laplace-domain kernel",
                    tolerances: Tolerances::new(&cfg),
                })?;
            } else {
                println!("{}", g17(value));
            }
        }
        Command::Intertwine { group, poly, z, xu_line, json } => {
            let g = parse_group(group)?;
            let p = parse_poly(poly).map_err(Error::from)?;
            let z = parse_point("z", z)?;
            let (value, at, method) = match xu_line {
                Some(q) => {
                    let k = g.k() as f64;
                    let at = PlanePoint::from_polar(z.r(), *q as f64 * std::f64::consts::PI / k);
                    (kernels::xu_line(&g, &p, z.r(), *q, &cfg)?, at, "simplex integral on a special line")
                }
                None => (
                    kernels::intertwine_general(&g, &p, &z, &cfg)?,
                    z,
                    "reproducing kernels of P_n over powers of linear forms",
                ),
            };
            let oracle = dihedral_dunkl::oracle::v_apply(&DunklContext::new(g.clone()), &p)?.eval_at(&at);
            let diff = (value - oracle).abs();
            if *json {
                print_json(&IntertwineReport {
                    command: "intertwine",
                    group: GroupEcho::new(&g),
                    poly: p.to_string(),
                    z: at.coords(),
                    xu_line: *xu_line,
                    value,
                    oracle,
                    diff,
                    method,
                    tolerances: Tolerances::new(&cfg),
                })?;
            } else {
                println!("value  {}", g17(value));
                println!("oracle {}", g17(oracle));
                println!("diff   {}", g17(diff));
            }
        }
        Command::Table { group, sweep, z, w, bessel, out } => {
            let g = parse_group(group)?;
            let (z, w) = (parse_point("z", z)?, parse_point("w", w)?);
            let csv = table(&g, sweep, z, w, *bessel, &cfg)?;
            match out {
                Some(path) => fs::write(path, csv)?,
                None => io::stdout().write_all(csv.as_bytes())?,
            }
        }
        Command::Transform { group, y, input, radius, json } => {
            let g = parse_group(group)?;
            let y = parse_point("y", y)?;
            let radius = radius.unwrap_or(cfg.transform_radius);
            let f = match input {
                Input::Gaussian => |x: &PlanePoint| (-0.5 * x.r() * x.r()).exp(),
            };
            let v = transform::dunkl_transform(&g, f, &y, radius, &cfg)?;
            if *json {
                print_json(&TransformReport {
                    command: "transform",
                    group: GroupEcho::new(&g),
                    y: y.coords(),
                    input: "gaussian",
                    radius,
                    re: v.re,
                    im: v.im,
                    method: "polar quadrature with sectored Gauss-Jacobi angular rule",
                    tolerances: Tolerances::new(&cfg),
                })?;
            } else {
                println!("{} {}", g17(v.re), g17(v.im));
            }
        }
        Command::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let checks = verify::run_suite(suite, *seed, &cfg);
            let mut failed = Vec::new();
            for c in &checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                match &c.error {
                    Some(e) => println!("{status} {}/{}: {e}", c.suite, c.name),
                    None => println!(
                        "{status} {}/{}: worst {:.3e} (tol {:.0e})",
                        c.suite, c.name, c.worst, c.tol
                    ),
                }
                if !c.passed() {
                    failed.push(format!("{}/{}", c.suite, c.name));
                }
            }
            let passed = checks.len() - failed.len();
            println!("{passed}/{} properties passed (seed {seed})", checks.len());
            if !failed.is_empty() {
                return Err(Failure::Suite(failed));
            }
        }
    }
    Ok(())
}

fn kernel_method(g: &DihedralGroup, bessel: bool) -> &'static str {
    if g.kappa().is_zero() {
        "exponential (zero multiplicity)"
    } else if g.k() == 2 {
        "double beta integral"
    } else if bessel && !g.is_even() {
        "group average of the Dunkl kernel"
    } else {
        "beta-measure quadrature of simplex integrals"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SweepVar {
    ZR,
    ZPhi,
    WR,
    WPhi,
}

fn parse_sweep(text: &str) -> Result<(SweepVar, Vec<f64>), Failure> {
    let bad = || Failure::Usage(format!("--sweep expects var=start:stop:step, got '{text}'"));
    let (var, range) = text.split_once('=').ok_or_else(bad)?;
    let var = match var.trim() {
        "z.r" => SweepVar::ZR,
        "z.phi" => SweepVar::ZPhi,
        "w.r" => SweepVar::WR,
        "w.phi" => SweepVar::WPhi,
        other => {
            return Err(Failure::Usage(format!(
                "unknown sweep variable '{other}' (expected z.r, z.phi, w.r or w.phi)"
            )))
        }
    };
    let nums: Vec<f64> = range
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [start, stop, step] = nums.as_slice() else {
        return Err(bad());
    };
    if !(step.is_finite() && *step > 0.0 && start.is_finite() && stop.is_finite() && stop >= start) {
        return Err(Failure::Usage(format!(
            "--sweep needs finite start <= stop and step > 0, got '{text}'"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(Failure::Usage(format!("--sweep produces {count} rows; the limit is 100000")));
    }
    Ok((var, (0..count).map(|i| start + i as f64 * step).collect()))
}

fn table(g: &DihedralGroup, sweep: &str, z: PlanePoint, w: PlanePoint, bessel: bool, cfg: &Config) -> Result<String, Failure> {
    let (var, values) = parse_sweep(sweep)?;
    let n = cfg.series_degree;
    let oracle = Intertwiner::with_condition_limit(DunklContext::new(g.clone()), n, cfg.max_condition)?;
    let elements = g.elements();
    let rows: Vec<String> = values
        .par_iter()
        .map(|&t| -> Result<String, Error> {
            let (z, w) = match var {
                SweepVar::ZR => (PlanePoint::from_polar(t, z.phi()), w),
                SweepVar::ZPhi => (PlanePoint::from_polar(z.r(), t), w),
                SweepVar::WR => (z, PlanePoint::from_polar(t, w.phi())),
                SweepVar::WPhi => (z, PlanePoint::from_polar(w.r(), t)),
            };
            let (value, exact) = if bessel {
                let avg = elements
                    .iter()
                    .map(|e| oracle.kernel_series(&z, &w.transform(e), n))
                    .sum::<f64>()
                    / elements.len() as f64;
                (kernels::generalized_bessel(g, &z, &w, cfg)?, avg)
            } else {
                (kernels::dunkl_kernel(g, &z, &w, cfg)?, oracle.kernel_series(&z, &w, n))
            };
            let kappa = g.kappa();
            let fields = [
                g17(kappa.alpha),
                g17(kappa.beta),
                g17(z.x1()),
                g17(z.x2()),
                g17(w.x1()),
                g17(w.x2()),
                g17(value),
                g17(exact),
                g17((value - exact).abs()),
            ];
            Ok(format!("{},{}\n", g.name(), fields.join(",")))
        })
        .collect::<Result<_, _>>()?;
    let mut csv = String::from("group,alpha,beta,z1,z2,w1,w2,value,oracle,abs_err\n");
    for r in rows {
        csv.push_str(&r);
    }
    Ok(csv)
}
