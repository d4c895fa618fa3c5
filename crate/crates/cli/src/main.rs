mod output;
mod svg;

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cheeger_core::checks::{
    bounds_certificate, classification_certificate, height_criterion, rolling_ball_check, t_sign_for_candidate,
    CertificateReport,
};
use cheeger_core::delaunay::{classify, profile_extrema, t_max, CurvePoint, DelaunayClass, DelaunayParams};
use cheeger_core::domains::{build_domain, DomainSpec, Family};
use cheeger_core::numerics::sweep::{hourglass_sweep, SweepConfig};
use cheeger_core::numerics::{cheeger, CheegerConfig, CheegerResult, Tolerances};
use cheeger_core::reference;
use cheeger_core::revolve::{DelaunayArc, RevolveOptions};

use output::{CheegerReport, Row};

const EXIT_USAGE: u8 = 1;
const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Cheeger constants of rotationally invariant domains.
#[derive(Parser, Debug)]
#[command(name = "cheeger", version)]
struct Cli {
    /// Output format; tables default to CSV, everything else to JSON.
    #[arg(long, global = true)]
    format: Option<Format>,

    /// Quadrature tolerance; the root and minimization tolerances scale
    /// with it.
    #[arg(long, global = true, env = "CHEEGER_TOL")]
    tol: Option<f64>,

    /// Worker threads for sweeps and tables (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type of the Delaunay surface with parameters (n, H, T).
    Classify(DelaunayArgs),
    /// Samples of a Delaunay generating curve started at its crest.
    Profile {
        #[command(flatten)]
        params: DelaunayArgs,
        /// Arclength on each side of the crest [default: 2π/H, or up to the
        /// axis for a sphere].
        #[arg(long)]
        span: Option<f64>,
        /// Number of points (odd counts include the crest).
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Cheeger constant and optimal candidate of one domain.
    Cheeger {
        #[command(subcommand)]
        domain: DomainArgs,
    },
    /// Recomputes every reference value with its deviation.
    Tables,
    /// Sweeps the hourglass depth D and locates structure changes.
    Sweep(SweepArgs),
    /// Writes an SVG of an optimal candidate or of Delaunay curves.
    Plot {
        #[arg(long, short)]
        out: PathBuf,
        /// Pixels per unit length.
        #[arg(long, default_value_t = 120.0)]
        scale: f64,
        #[command(subcommand)]
        target: PlotTarget,
    },
    /// Runs every applicable certificate on the optimum of a domain.
    Check {
        #[command(subcommand)]
        domain: DomainArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct DelaunayArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Mean curvature.
    #[arg(long = "H", allow_negative_numbers = true)]
    big_h: f64,
    /// First integral.
    #[arg(long = "T", allow_negative_numbers = true)]
    t: f64,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
struct Angle {
    /// Angle in radians.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    theta_deg: Option<f64>,
    /// Angle given by its sine, e.g. 0.8 for arcsin(4/5).
    #[arg(long, allow_negative_numbers = true)]
    theta_arcsin: Option<f64>,
}

impl Angle {
    fn radians(&self) -> f64 {
        match (self.theta, self.theta_deg, self.theta_arcsin) {
            (Some(t), _, _) => t,
            (_, Some(d), _) => d * PI / 180.0,
            (_, _, Some(s)) => s.asin(),
            _ => unreachable!("clap requires one angle"),
        }
    }
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum DomainArgs {
    /// Cylinder of length l and radius r
    Cylinder {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
    },
    /// Cone of axial length l whose side meets the axis at angle theta
    Cone {
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
        #[command(flatten)]
        angle: Angle,
    },
    /// Cones of axial lengths l and r joined at their base; theta is the left angle
    DoubleCone {
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[command(flatten)]
        angle: Angle,
    },
    /// Profile of height B at x = 0 and |x| = A, dipping linearly to D at |x| = C
    Hourglass {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
    },
    /// Ball of the given radius
    Ball {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        radius: f64,
    },
}

impl DomainArgs {
    fn spec(&self) -> cheeger_core::Result<DomainSpec> {
        let (family, n) = match *self {
            DomainArgs::Cylinder { n, l, r } => (Family::Cylinder { l, r }, n),
            DomainArgs::Cone { l, angle } => (Family::Cone { l, theta: angle.radians() }, 3),
            DomainArgs::DoubleCone { l, r, angle } => (
                Family::DoubleCone {
                    l,
                    r,
                    theta: angle.radians(),
                },
                3,
            ),
            DomainArgs::Hourglass { a, b, c, d } => (Family::Hourglass { a, b, c, d }, 3),
            DomainArgs::Ball { n, radius } => (Family::Ball { radius }, n),
        };
        build_domain(family, n)
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 3.0)]
    a: f64,
    #[arg(long, default_value_t = 2.0)]
    b: f64,
    #[arg(long, default_value_t = 0.3)]
    c: f64,
    #[arg(long, default_value_t = 0.05)]
    from: f64,
    #[arg(long, default_value_t = 1.95)]
    to: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    /// Also write the grid as CSV to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum PlotTarget {
    #[command(flatten)]
    Domain(DomainArgs),
    /// Delaunay generating curves for several first integrals.
    Delaunay {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "H", default_value_t = 1.0)]
        big_h: f64,
        /// Comma-separated first integrals.
        #[arg(long = "T", value_delimiter = ',', allow_negative_numbers = true, required = true)]
        t: Vec<f64>,
        /// Arclength on each side of the crest.
        #[arg(long)]
        span: Option<f64>,
    },
}

enum Failure {
    Usage(String),
    Core(cheeger_core::Error),
    Io(String),
    /// The reader of stdout went away; not an error for a pipeline.
    ClosedOutput,
}

impl From<cheeger_core::Error> for Failure {
    fn from(e: cheeger_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Failure::ClosedOutput
        } else {
            Failure::Io(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) | Err(Failure::ClosedOutput) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INADMISSIBLE)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn config(cli: &Cli) -> Result<CheegerConfig, Failure> {
    let mut cfg = CheegerConfig::default();
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(Failure::Usage(format!("tolerance must lie in (0, 1), got {t}")));
        }
        cfg.tol = Tolerances::default().scaled(t / Tolerances::default().quad);
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Outcome {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let cfg = config(cli)?;
    let json = cli.format != Some(Format::Csv);
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Classify(a) => {
            let p = a.params()?;
            let class = classify(&p)?;
            let extrema = profile_extrema(&p).ok();
            if json {
                let v = serde_json::json!({
                    "n": p.n, "H": p.h, "T": p.t,
                    "class": class,
                    "t_max": t_max(p.n, p.h).ok(),
                    "extrema": extrema,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
            } else {
                writeln!(out, "n,H,T,class,y_min,y_max")?;
                let (lo, hi) = extrema.map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
                writeln!(out, "{},{},{},{class},{lo},{hi}", p.n, p.h, p.t)?;
            }
        }
        Command::Profile { params, span, samples } => {
            let p = params.params()?;
            let pts = symmetric_profile(&p, *span, *samples)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&pts).expect("serializable"))?;
            } else {
                writeln!(out, "s,x,y,sigma")?;
                for q in &pts {
                    writeln!(out, "{},{},{},{}", q.s, q.x, q.y, q.sigma)?;
                }
            }
        }
        Command::Cheeger { domain } => {
            let r = cheeger(&domain.spec()?, &cfg)?;
            let report = CheegerReport::new(&r, certificates(&r)?);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
            } else {
                writeln!(out, "{}", Row::HEADER)?;
                writeln!(out, "{}", Row::from_report(&report).csv())?;
            }
        }
        Command::Check { domain } => {
            let r = cheeger(&domain.spec()?, &cfg)?;
            let certs = certificates(&r)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&certs).expect("serializable"))?;
            } else {
                writeln!(out, "name,status,max_residual,threshold")?;
                for c in &certs {
                    writeln!(out, "{},{:?},{},{}", c.name, c.status, c.max_residual, c.threshold)?;
                }
            }
        }
        Command::Tables => tables(&cfg, cli.format != Some(Format::Json), &mut out)?,
        Command::Sweep(a) => sweep(a, &cfg, &mut out)?,
        Command::Plot { out: path, scale, target } => plot(target, path, *scale, &cfg)?,
    }
    Ok(())
}

impl DelaunayArgs {
    fn params(&self) -> Result<DelaunayParams, Failure> {
        if self.n < 3 {
            return Err(Failure::Usage(format!("dimension must be at least 3, got {}", self.n)));
        }
        Ok(DelaunayParams::new(self.n, self.big_h, self.t)?)
    }
}

fn certificates(r: &CheegerResult) -> Result<Vec<CertificateReport>, Failure> {
    let mut v = vec![
        t_sign_for_candidate(&r.candidate, r.h)?,
        classification_certificate(r)?,
        bounds_certificate(r)?,
        height_criterion(&r.domain, r.h)?,
    ];
    if let Family::Cone { l, theta } = r.domain.family {
        v.push(rolling_ball_check(l, theta, r.h));
    }
    Ok(v)
}

/// `count` points of the profile through the crest `(0, y_max)`, evenly
/// spaced in arclength over `[-span, span]`.
fn symmetric_profile(p: &DelaunayParams, span: Option<f64>, count: usize) -> Result<Vec<CurvePoint>, Failure> {
    let class = classify(p)?;
    let (_, y_max) = profile_extrema(p)?;
    let span = match (span, class) {
        (Some(s), _) if s > 0.0 => s,
        (Some(s), _) => return Err(Failure::Usage(format!("span must be positive, got {s}"))),
        (None, DelaunayClass::Sphere) => 0.5 * PI / p.h,
        (None, _) => 2.0 * PI / p.h,
    };
    let start = CurvePoint::new(0.0, 0.0, y_max, 0.0);
    let piece = DelaunayArc::profile(*p, start, span, &RevolveOptions::default())?;
    let right = piece.sample((count.max(3) - 1) / 2, &RevolveOptions::default())?;
    let mut pts: Vec<CurvePoint> = right
        .iter()
        .rev()
        .map(|q| CurvePoint::new(-q.s, -q.x, q.y, -q.sigma))
        .collect();
    pts.extend(right.into_iter().skip(1));
    Ok(pts)
}

fn tables(cfg: &CheegerConfig, csv: bool, out: &mut impl Write) -> Outcome {
    use rayon::prelude::*;
    let entries = reference::entries();
    let rows: Vec<Row> = entries
        .par_iter()
        .map(|e| -> Result<Row, Failure> {
            let r = cheeger(&build_domain(e.family, e.n)?, cfg)?;
            let report = CheegerReport::new(&r, certificates(&r)?);
            Ok(Row::from_report(&report).with_reference(e))
        })
        .collect::<Result<_, _>>()?;
    if csv {
        writeln!(out, "{}", Row::TABLE_HEADER)?;
        for r in &rows {
            writeln!(out, "{}", r.table_csv())?;
        }
    } else {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable"))?;
    }
    Ok(())
}

fn sweep(a: &SweepArgs, cfg: &CheegerConfig, out: &mut impl Write) -> Outcome {
    if !(a.step > 0.0) || !(a.from <= a.to) || !(a.from > 0.0 && a.to < a.b) {
        return Err(Failure::Usage(format!(
            "empty or invalid range: from {} to {} step {} (D must lie in (0, {}))",
            a.from, a.to, a.step, a.b
        )));
    }
    let mut sc = SweepConfig::uniform(a.from, a.to, a.step);
    sc.cheeger.tol = cfg.tol;
    let r = hourglass_sweep(a.a, a.b, a.c, &sc)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializable"))?;
    if let Some(path) = &a.csv {
        let mut s = String::from("D,h,H_opt,structure,regime,middle_B,middle_class\n");
        for p in &r.points {
            let b = p.middle_b.map(|v| v.to_string()).unwrap_or_default();
            let c = p.middle_class.map(|v| v.to_string()).unwrap_or_default();
            s.push_str(&format!("{},{},{},{},{:?},{b},{c}\n", p.d, p.h, p.h_opt, p.structure, p.regime));
        }
        write_file(path, &s)?;
    }
    Ok(())
}

fn plot(target: &PlotTarget, path: &Path, scale: f64, cfg: &CheegerConfig) -> Outcome {
    if !(scale > 0.0) {
        return Err(Failure::Usage(format!("scale must be positive, got {scale}")));
    }
    let doc = match target {
        PlotTarget::Domain(d) => {
            let r = cheeger(&d.spec()?, cfg)?;
            svg::candidate(&r, scale)?
        }
        PlotTarget::Delaunay { n, big_h, t, span } => {
            let mut curves = Vec::new();
            for &ti in t {
                let p = DelaunayArgs { n: *n, big_h: *big_h, t: ti }.params()?;
                curves.push((ti, symmetric_profile(&p, *span, 801)?));
            }
            svg::delaunay_family(&curves, scale)
        }
    };
    write_file(path, &doc)
}

fn write_file(path: &Path, s: &str) -> Outcome {
    std::fs::write(path, s).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}
