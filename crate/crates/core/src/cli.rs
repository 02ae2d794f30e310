//! The `linkprobe` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::degree::{find_preimages, winding_number, Disk, PlanarCatalog};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::harness::{
    load_toml, parse_list, run_axisym_check, run_coarea_check, run_good_set, run_property_l, run_weak_limit, to_json,
    write_csv, write_jsonl, AxisymCheck, Fibration, GoodSetConfig, GoodSetStatus, ProfileFile, PropertyLConfig,
    SequenceTag, WeakLimitConfig,
};
use crate::linking::{linking_crossings_auto, linking_gauss, sample_curve, ClosedPolyline3, LinkResult};
use crate::torus::{mu_a, nu_b, LinkParamA, LinkParamB};

/// Environment variable overriding `--threads`.
pub const THREADS_ENV: &str = "LINKPROBE_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "linkprobe",
    version,
    about = "Linking numbers, planar degree and axisymmetric map experiments"
)]
pub struct Cli {
    /// Seed for every random stream; overrides the seed in config files.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; LINKPROBE_THREADS takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit JSON (JSON-lines for sweeps).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV (sweeps only).
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LinkMethod {
    Gauss,
    Crossings,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DegreeMethod {
    Winding,
    Preimage,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linking number of two curve files (one `x y z` vertex per line).
    Link {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = LinkMethod::Both)]
        method: LinkMethod,
    },
    /// Linking number of the torus circles mu_a and nu_b.
    Canonical {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, value_enum, default_value_t = LinkMethod::Both)]
        method: LinkMethod,
    },
    /// Degree of a catalog planar map on a circle about a point.
    Degree {
        /// identity, square, reflection, shear[:k], wave[:amp]
        #[arg(long)]
        map: String,
        /// cx,cy,radius
        #[arg(long, allow_hyphen_values = true)]
        circle: String,
        /// px,py
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value_t = DegreeMethod::Winding)]
        method: DegreeMethod,
        /// Boundary samples (winding) or grid cells per side (preimage).
        #[arg(long, default_value_t = 256)]
        n: usize,
    },
    /// Checks on an axisymmetric profile file.
    AxisymCheck {
        #[arg(long)]
        profile: PathBuf,
        /// Comma-separated subset of jacobian,divergence,injectivity,halfplane.
        #[arg(long, default_value = "jacobian,divergence,injectivity,halfplane")]
        checks: String,
    },
    /// Property (L) sweep from a TOML config.
    PropertyL {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chart-rescaled estimates along a catalog sequence with a known limit.
    WeakLimit {
        /// oscillation, constant, amplitude-decay
        #[arg(long)]
        sequence: String,
        /// Base point r,theta,z.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        /// Comma-separated radii; default the first three of the family ladder.
        #[arg(long)]
        radii: Option<String>,
        /// Comma-separated sequence indices.
        #[arg(long)]
        j: Option<String>,
        #[arg(long, default_value_t = 32)]
        quad_n: usize,
        #[arg(long, default_value_t = 0.2)]
        delta: f64,
    },
    /// Good-set statistics from a TOML config.
    GoodSet {
        #[arg(long)]
        config: PathBuf,
    },
    /// Both sides of the coarea formula.
    Coarea {
        #[arg(long)]
        fibration: String,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Default,
    Json,
    Csv,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| dispatch(&cli, &mut buf));
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_CONFIG;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Configuration-type errors exit with 2, numerical failures with 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::Io(_)
        | Error::Parse { .. }
        | Error::InvalidParameter(_)
        | Error::InvalidCurve(_)
        | Error::UnknownCatalog(_)
        | Error::UnknownSequence(_) => EXIT_CONFIG,
        _ => EXIT_ASSERTION,
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a thread count, got `{v}`"))),
        _ => Ok(flag),
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<i32> {
    let format = match (cli.json, cli.csv) {
        (true, _) => Format::Json,
        (_, true) => Format::Csv,
        _ => Format::Default,
    };
    let seed = cli.seed.unwrap_or(0);
    if format == Format::Csv && !matches!(cli.command, Command::PropertyL { .. }) {
        return Err(Error::Config("--csv applies to property-l only".into()));
    }
    match &cli.command {
        Command::Link { a, b, method } => {
            let c1 = ClosedPolyline3::read(a)?;
            let c2 = ClosedPolyline3::read(b)?;
            emit_link(&c1, &c2, *method, seed, format, out)
        }
        Command::Canonical { a, b, n, method } => {
            let a = pair(a)?;
            let b = pair(b)?;
            let a = LinkParamA::new(a.x, a.y)?;
            let b = if b == Point2::new(1.0, 0.0) {
                LinkParamB::canonical()
            } else {
                LinkParamB::new(b.x, b.y)?
            };
            let c1 = sample_curve(|t| mu_a(a, t), *n)?;
            let c2 = sample_curve(|t| nu_b(b, t), *n)?;
            emit_link(&c1, &c2, *method, seed, format, out)
        }
        Command::Degree {
            map,
            circle,
            point,
            method,
            n,
        } => {
            let w: PlanarCatalog = map.parse()?;
            let c = parse_list(circle)?;
            if c.len() != 3 {
                return Err(Error::Config(format!("--circle needs cx,cy,radius, got `{circle}`")));
            }
            let disk = Disk::new(Point2::new(c[0], c[1]), c[2])?;
            let y = pair(point)?;
            let (result, body) = match method {
                DegreeMethod::Winding => {
                    let r = winding_number(&w, disk, y, *n)?;
                    (r, to_json(&r)?)
                }
                DegreeMethod::Preimage => {
                    let r = find_preimages(&w, disk, y, *n)?;
                    (r.degree, to_json(&r)?)
                }
            };
            match format {
                Format::Json => writeln!(out, "{body}")?,
                _ if result.defined => writeln!(out, "degree: {}", result.value)?,
                _ => writeln!(
                    out,
                    "degree: undefined (boundary clearance {:e})",
                    result.boundary_clearance
                )?,
            }
            Ok(if result.defined { EXIT_OK } else { EXIT_ASSERTION })
        }
        Command::AxisymCheck { profile, checks } => {
            let file: ProfileFile = load_toml(profile)?;
            let profile = file.resolve()?;
            let checks = checks
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<AxisymCheck>>>()?;
            let rep = run_axisym_check(&profile, &checks, seed)?;
            match format {
                Format::Json => writeln!(out, "{}", to_json(&rep)?)?,
                _ => {
                    for o in &rep.outcomes {
                        let status = if o.passed { "pass" } else { "FAIL" };
                        writeln!(
                            out,
                            "{}: {status} ({:e}; {})",
                            to_json(&o.check)?.trim_matches('"'),
                            o.value,
                            o.detail
                        )?;
                    }
                }
            }
            Ok(if rep.passed { EXIT_OK } else { EXIT_ASSERTION })
        }
        Command::PropertyL { config, out: path } => {
            let mut cfg: PropertyLConfig = load_toml(config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            let rep = run_property_l(&cfg)?;
            let mut buf = Vec::new();
            if format == Format::Csv {
                write_csv(&rep, &mut buf)?;
            } else {
                write_jsonl(&rep, &mut buf)?;
            }
            match path {
                Some(p) => std::fs::write(p, &buf)?,
                None => out.write_all(&buf)?,
            }
            let agg = &rep.aggregate;
            Ok(if agg.zero_negatives && agg.disagreements == 0 {
                EXIT_OK
            } else {
                EXIT_ASSERTION
            })
        }
        Command::WeakLimit {
            sequence,
            x0,
            radii,
            j,
            quad_n,
            delta,
        } => {
            let tag: SequenceTag = sequence.parse()?;
            let mut cfg = WeakLimitConfig::new(tag);
            if let Some(x0) = x0 {
                let v = parse_list(x0)?;
                if v.len() != 3 {
                    return Err(Error::Config(format!("--x0 needs r,theta,z, got `{x0}`")));
                }
                cfg.x0 = [v[0], v[1], v[2]];
            }
            if let Some(r) = radii {
                cfg.radii = parse_list(r)?;
            }
            if let Some(j) = j {
                cfg.j_ladder = j
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Config(format!("`{t}` is not an index")))
                    })
                    .collect::<Result<_>>()?;
            }
            cfg.quad_n = *quad_n;
            cfg.delta = *delta;
            let rep = run_weak_limit(&cfg)?;
            match format {
                Format::Json => writeln!(out, "{}", to_json(&rep)?)?,
                _ => {
                    writeln!(out, "radius,j,estimate,below")?;
                    for row in &rep.rows {
                        writeln!(out, "{},{},{:.6e},{}", row.radius, row.j, row.estimate, row.below)?;
                    }
                    for s in &rep.summaries {
                        let j0 = s.j0.map_or("none".to_string(), |j| j.to_string());
                        writeln!(out, "radius {}: j0 {j0}, limit term {:.6e}", s.radius, s.limit_term)?;
                    }
                    writeln!(out, "threshold delta^3: {:.6e}", rep.threshold)?;
                    writeln!(out, "limit jacobian min: {:.6e}", rep.limit_jacobian_min)?;
                }
            }
            Ok(if rep.passed { EXIT_OK } else { EXIT_ASSERTION })
        }
        Command::GoodSet { config } => {
            let mut cfg: GoodSetConfig = load_toml(config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            let rep = run_good_set(&cfg)?;
            writeln!(out, "{}", to_json(&rep)?)?;
            Ok(if rep.status == GoodSetStatus::Fail {
                EXIT_ASSERTION
            } else {
                EXIT_OK
            })
        }
        Command::Coarea { fibration, resolution } => {
            let f: Fibration = fibration.parse()?;
            let rep = run_coarea_check(f, *resolution)?;
            writeln!(out, "{}", to_json(&rep)?)?;
            Ok(if rep.passed { EXIT_OK } else { EXIT_ASSERTION })
        }
    }
}

fn emit_link(
    c1: &ClosedPolyline3,
    c2: &ClosedPolyline3,
    method: LinkMethod,
    seed: u64,
    format: Format,
    out: &mut Vec<u8>,
) -> Result<i32> {
    let gauss = matches!(method, LinkMethod::Gauss | LinkMethod::Both).then(|| linking_gauss(c1, c2));
    let crossings = match method {
        LinkMethod::Crossings | LinkMethod::Both => Some(linking_crossings_auto(c1, c2, seed)?),
        LinkMethod::Gauss => None,
    };
    let results: Vec<LinkResult> = gauss.iter().chain(crossings.iter()).copied().collect();
    let defined = results.iter().all(|r| r.defined);
    let agree = results.windows(2).all(|w| w[0].value == w[1].value);
    let value = results[0].value;
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "linking": defined.then_some(value), "gauss": gauss, "crossings": crossings, "agree": agree })
        )?,
        _ if defined && agree => writeln!(out, "linking: {value}")?,
        _ if !defined => writeln!(out, "linking: undefined")?,
        _ => writeln!(
            out,
            "linking: methods disagree ({:?})",
            results.iter().map(|r| r.value).collect::<Vec<_>>()
        )?,
    }
    Ok(if defined && agree { EXIT_OK } else { EXIT_ASSERTION })
}

fn pair(s: &str) -> Result<Point2> {
    let v = parse_list(s)?;
    if v.len() != 2 {
        return Err(Error::Config(format!(
            "expected two comma-separated numbers, got `{s}`"
        )));
    }
    Ok(Point2::new(v[0], v[1]))
}
