//! The `circumcone` command.
//!
//! Exit status: 0 on success, 1 for a domain error (the message carries the
//! error's name), 2 for usage and parse errors. `verify` exits 1 when any
//! probe fails. `CIRCUMCONE_SEED` overrides `--seed` when set.

use std::ffi::OsString;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::admissible;
use crate::bregman;
use crate::error::{Error, Result};
use crate::geometry::{self, ConicBase};
use crate::io::{self, fmt_f64, Problem};
use crate::linalg;
use crate::oracles::{self, ProbeReport};
use crate::sampling;
use crate::step::{self, FcpgParams, FcpgProblem};
use crate::zoo::{self, ConeDescriptor};

pub const SEED_ENV: &str = "CIRCUMCONE_SEED";

#[derive(Debug, Parser)]
#[command(name = "circumcone", version, about = "Circumcentric directions, polar certificates and step oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Circumcentric direction of a polyhedral cone.
    Circum {
        #[arg(long, help = "Base JSON: {\"n\", \"vectors\"}")]
        base: PathBuf,
        /// Force a route; by default the Gram route is used when the base is
        /// well conditioned.
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
    },
    /// Directional depth along a direction.
    Depth(DepthArgs),
    /// Active cone and sharp step at a feasible point.
    Step {
        #[arg(long, help = "Problem JSON tagged by \"kind\": linf | socp")]
        problem: PathBuf,
        #[arg(long, allow_hyphen_values = true, help = "Feasible point, comma separated")]
        point: String,
    },
    /// Closed-form data and the hypothesis check for a canonical cone.
    Zoo {
        #[arg(long, help = "Cone JSON: {\"variant\", ...}")]
        cone: PathBuf,
        #[arg(long, help = "Also check the hypothesis on sampled extremal sections")]
        hypothesis: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0, help = "Sampling seed; CIRCUMCONE_SEED overrides")]
        seed: u64,
    },
    /// Bregman projection, direction and margin.
    Bregman {
        #[arg(long, help = "Legendre JSON: euclidean | pnorm | mahalanobis")]
        h: PathBuf,
        #[arg(long, help = "Base JSON")]
        base: PathBuf,
    },
    /// Feasibility-corrected projected gradient; prints a CSV trace.
    Fcpg {
        #[arg(long, help = "Problem JSON tagged by \"kind\": linf | socp")]
        problem: PathBuf,
        #[arg(long, allow_hyphen_values = true, help = "Feasible starting point, comma separated")]
        x0: String,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-8, help = "Stop once the gradient norm drops below this")]
        tol: f64,
        /// Always use σ = ‖d‖²/‖w‖.
        #[arg(long)]
        conservative: bool,
    },
    /// Brute-force verification against independent oracles.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0, help = "Sampling seed; CIRCUMCONE_SEED overrides")]
        seed: u64,
    },
    /// CSV point sets for the orthant and second-order cone pictures.
    Figure {
        #[arg(long, value_enum)]
        name: FigureName,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["base", "cone"])))]
pub struct DepthArgs {
    #[arg(long, help = "Base JSON")]
    pub base: Option<PathBuf>,
    #[arg(long, help = "Cone JSON")]
    pub cone: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, help = "Direction, comma separated")]
    pub dir: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Gram,
    Proj,
    System,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Depth,
    Ball,
    Weyl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Orthant,
    Soc,
}

/// Result of a dispatched command: text to emit and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, status: 0 })
}

fn seed_override(seed: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEED_ENV}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(seed),
    }
}

/// Runs one parsed command.
pub fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Circum { base, route } => {
            let base = io::read_json::<io::BaseFile>(base)?.to_base()?;
            ok(io::to_json(&circum_output(&base, *route)?))
        }
        Command::Depth(args) => {
            let w = io::parse_vector(&args.dir)?;
            let r = match (&args.base, &args.cone) {
                (Some(path), _) => {
                    let base = io::read_json::<io::BaseFile>(path)?.to_base()?;
                    let circ = geometry::circum(&base);
                    if circ.is_zero() {
                        return Err(Error::DegenerateDirection);
                    }
                    admissible::directional_depth(&base, circ.norm_sq, &w)?
                }
                (None, Some(path)) => {
                    let cone = io::read_json::<io::ConeFile>(path)?.to_cone()?;
                    zoo::directional_depth_np(&cone, &w)?
                }
                (None, None) => unreachable!("clap enforces the group"),
            };
            let (rho, infinite) = io::split_extended(r.value);
            ok(io::to_json(&io::DepthOutput {
                rho,
                infinite,
                binding: r.binding,
            }))
        }
        Command::Step { problem, point } => {
            let x = io::parse_vector(point)?;
            let oracle = match io::read_json::<io::ProblemFile>(problem)?.to_problem()? {
                Problem::Linf(p) => step::linf_oracle(&p, &x)?,
                Problem::Socp(p) => step::socp_oracle(&p, &x)?,
            };
            let (sigma, sigma_infinite) = io::split_extended(oracle.sigma);
            ok(io::to_json(&io::StepOutput {
                active: oracle.active,
                d: oracle.cone.as_ref().map(|c| c.d().to_vec()),
                norm_sq: oracle.cone.as_ref().map(|c| c.norm_sq()),
                w: oracle.w,
                sigma,
                sigma_infinite,
            }))
        }
        Command::Zoo {
            cone,
            hypothesis,
            samples,
            seed,
        } => {
            let file = io::read_json::<io::ConeFile>(cone)?;
            let c = file.to_cone()?;
            let seed = seed_override(*seed)?;
            let circ = match zoo::circum_direction(&c) {
                Ok(circ) => Some(circ),
                Err(Error::HypothesisFails { .. }) => None,
                Err(e) => return Err(e),
            };
            let hypothesis = if *hypothesis {
                let report = zoo::hypothesis_check(&zoo::sample_extremal(&c, *samples, seed))?;
                Some(io::HypothesisOutput {
                    samples: *samples,
                    seed,
                    holds: report.holds,
                    distance: report.distance,
                })
            } else {
                None
            };
            ok(io::to_json(&io::ZooOutput {
                cone: io::ConeFile::from_cone(&c),
                dim: c.dim(),
                d: circ.as_ref().map(|c| c.d.clone()),
                norm_sq: circ.as_ref().map(|c| c.norm_sq),
                jordan_value: zoo::jordan_value(&c),
                hypothesis,
            }))
        }
        Command::Bregman { h, base } => {
            let h = io::read_json::<io::LegendreFile>(h)?.to_legendre()?;
            let base = io::read_json::<io::BaseFile>(base)?.to_base()?;
            let bd = bregman::bregman_direction(&h, &base)?;
            ok(io::to_json(&io::BregmanOutput::from(&bd)))
        }
        Command::Fcpg {
            problem,
            x0,
            max_iter,
            tol,
            conservative,
        } => {
            let x0 = io::parse_vector(x0)?;
            let params = FcpgParams {
                max_iter: *max_iter,
                tol: *tol,
                always_conservative: *conservative,
            };
            let prob = io::read_json::<io::ProblemFile>(problem)?.to_problem()?;
            let p: &dyn FcpgProblem = match &prob {
                Problem::Linf(p) => p,
                Problem::Socp(p) => p,
            };
            ok(step::run_fcpg(p, &x0, &params)?.to_csv())
        }
        Command::Verify { suite, seed } => {
            let seed = seed_override(*seed)?;
            let out = verify(*suite, seed)?;
            let status = if out.passed { 0 } else { 1 };
            Ok(Outcome {
                text: io::to_json(&out),
                status,
            })
        }
        Command::Figure { name } => ok(match name {
            FigureName::Orthant => figure_orthant()?,
            FigureName::Soc => figure_soc()?,
        }),
    }
}

pub fn circum_output(base: &ConicBase, route: Option<RouteArg>) -> Result<io::CircumOutput> {
    let circ = match route {
        None => geometry::circum(base),
        Some(RouteArg::Gram) => geometry::circum_via_gram(base)?,
        Some(RouteArg::Proj) => geometry::circum_via_projection(base),
        Some(RouteArg::System) => geometry::circum_via_system(base)?,
    };
    let (lo, hi) = geometry::spectral_bounds(&base.gram());
    Ok(io::CircumOutput {
        d: circ.d,
        norm_sq: circ.norm_sq,
        weights: circ.weights,
        aperture: circ.aperture,
        spectral_lo: lo,
        spectral_hi: hi,
        route: circ.route.as_str().into(),
    })
}

const DEPTH_TRIALS: usize = 200;
const BALL_TRIALS: usize = 1000;
const WEYL_TRIALS: usize = 1000;

fn verify_cones(seed: u64) -> Result<Vec<ConeDescriptor>> {
    let mut rng = sampling::rng(sampling::sub_seed(seed, 1 << 32));
    let raw: Vec<Vec<f64>> = (0..3).map(|_| sampling::gaussian_vec(&mut rng, 4)).collect();
    Ok(vec![
        ConeDescriptor::Orthant(3),
        ConeDescriptor::Soc(4),
        ConeDescriptor::Psd(3),
        ConeDescriptor::Polyhedral(ConicBase::new(raw)?),
        ConeDescriptor::Product(vec![ConeDescriptor::Orthant(2), ConeDescriptor::Soc(3)]),
    ])
}

/// Runs a verification suite.
pub fn verify(suite: Suite, seed: u64) -> Result<io::VerifyOutput> {
    let mut reports: Vec<ProbeReport> = Vec::new();
    let cones = verify_cones(seed)?;
    if matches!(suite, Suite::All | Suite::Depth) {
        for (k, c) in cones.iter().enumerate() {
            reports.push(oracles::depth_agreement(
                c,
                DEPTH_TRIALS,
                sampling::sub_seed(seed, k as u64),
                1e-6,
            )?);
        }
    }
    if matches!(suite, Suite::All | Suite::Ball) {
        for (k, c) in cones.iter().enumerate() {
            let circ = zoo::circum_direction(c)?;
            let excess = |z: &[f64]| oracles::polar_excess(c, z);
            let s = sampling::sub_seed(seed, 100 + k as u64);
            let mut r = oracles::ball_probe(excess, &circ.d, 0.999 * circ.norm_sq, BALL_TRIALS, s)?;
            r.label = format!("ball {}", c.name());
            reports.push(r);
            let dirs = zoo::sample_extremal(c, 50, s);
            let mut r = oracles::sharpness_probe(excess, &circ.d, 1.001 * circ.norm_sq, &dirs)?;
            r.label = format!("sharpness {}", c.name());
            r.seed = s;
            reports.push(r);
        }
    }
    if matches!(suite, Suite::All | Suite::Weyl) {
        for (k, n) in [2usize, 3, 5].into_iter().enumerate() {
            reports.push(oracles::weyl_check(n, WEYL_TRIALS, sampling::sub_seed(seed, 200 + k as u64))?);
        }
    }
    Ok(io::VerifyOutput {
        suite: format!("{suite:?}").to_lowercase(),
        seed,
        passed: reports.iter().all(ProbeReport::passed),
        reports,
    })
}

fn push_row(out: &mut String, series: &str, index: usize, coords: &[f64]) {
    let _ = write!(out, "{series},{index}");
    for c in coords {
        let _ = write!(out, ",{}", fmt_f64(*c));
    }
    out.push('\n');
}

const FIGURE_EXTENT: f64 = 2.0;
const CIRCLE_POINTS: usize = 128;

/// Orthant picture in perturbation coordinates `v` (so `d + v ∈ K°` iff
/// `v ∈ P`): boundary of `P`, the inscribed disc, contact points, the ball
/// and depth arrows along the diagonal, and the recession half-line.
pub fn figure_orthant() -> Result<String> {
    let base = ConicBase::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]])?;
    let circ = geometry::circum(&base);
    let r = circ.norm_sq;
    let mut out = String::from("series,index,x,y\n");

    for (i, p) in [[r, -FIGURE_EXTENT], [r, r], [-FIGURE_EXTENT, r]].iter().enumerate() {
        push_row(&mut out, "admissible_boundary", i, p);
    }
    for i in 0..=CIRCLE_POINTS {
        let a = 2.0 * PI * i as f64 / CIRCLE_POINTS as f64;
        push_row(&mut out, "inscribed_ball", i, &[r * a.cos(), r * a.sin()]);
    }
    for (i, p) in admissible::contact_points(&base, r).iter().enumerate() {
        push_row(&mut out, "contact", i, p);
    }
    let w = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
    let depth = admissible::directional_depth(&base, r, &w)?.value.to_f64();
    push_row(&mut out, "ball_arrow", 0, &[0.0, 0.0]);
    push_row(&mut out, "ball_arrow", 1, &linalg::scale(&w, r));
    push_row(&mut out, "depth_arrow", 0, &[0.0, 0.0]);
    push_row(&mut out, "depth_arrow", 1, &linalg::scale(&w, depth));
    for i in 0..=8 {
        let t = FIGURE_EXTENT * i as f64 / 8.0;
        push_row(&mut out, "recession", i, &[-t, -t]);
    }
    Ok(out)
}

/// Second-order cone picture for `n = 3` in ambient coordinates: generator
/// lines of `K` and `K°`, the extremal circle, `d`, the inscribed ball's
/// equator and the contact circle.
pub fn figure_soc() -> Result<String> {
    let cone = ConeDescriptor::Soc(3);
    let circ = zoo::circum_direction(&cone)?;
    let r = circ.norm_sq;
    let d = circ.d.clone();
    let mut out = String::from("series,index,x,y,z\n");

    let ring = |a: f64| [FRAC_1_SQRT_2 * a.cos(), FRAC_1_SQRT_2 * a.sin(), FRAC_1_SQRT_2];
    for k in 0..8 {
        let u = ring(2.0 * PI * k as f64 / 8.0);
        let name = format!("cone_ray_{k}");
        push_row(&mut out, &name, 0, &[0.0, 0.0, 0.0]);
        push_row(&mut out, &name, 1, &linalg::scale(&u, FIGURE_EXTENT));
        let name = format!("polar_ray_{k}");
        push_row(&mut out, &name, 0, &[0.0, 0.0, 0.0]);
        push_row(&mut out, &name, 1, &linalg::scale(&u, -FIGURE_EXTENT));
    }
    for i in 0..=CIRCLE_POINTS {
        let a = 2.0 * PI * i as f64 / CIRCLE_POINTS as f64;
        let u = ring(a);
        push_row(&mut out, "extremal_circle", i, &u);
        push_row(&mut out, "ball_equator", i, &[r * a.cos(), r * a.sin(), d[2]]);
        // contact set d + ‖d‖²·u for u on the extremal circle
        let mut c = d.clone();
        linalg::axpy(r, &u, &mut c);
        push_row(&mut out, "contact_circle", i, &c);
    }
    push_row(&mut out, "d", 0, &d);
    Ok(out)
}

/// Parses `args`, runs the command and writes to `out`/`err`. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if status == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return status;
        }
    };
    match dispatch(&cli.command) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &outcome.text),
                None => out.write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return 1;
            }
            outcome.status
        }
        Err(e @ Error::Parse(_)) => {
            let _ = writeln!(err, "{}: {e}", e.name());
            2
        }
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", e.name());
            1
        }
    }
}
