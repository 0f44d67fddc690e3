// SPDX-License-Identifier: Apache-2.0

//! `shadowfold` command-line frontend.
//!
//! Reports are `key=value` lines on stdout. Exit status is 0 on success, 1
//! when a checked assertion fails and 2 on usage or validation errors.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shadowfold::bundled::{self, SpaceBundle};
use shadowfold::cone::GeodesicKind;
use shadowfold::demo::{no_ray_profile, quadrant_demo, DEMO_RADII};
use shadowfold::export::{limit_log_table, render_svg, write_angle_demo_csv, write_limit_log_csv, write_witnesses_csv};
use shadowfold::frechet::{frechet_mean_grid, frechet_mean_sturm, shadow_drag_experiment, WeightedConfiguration};
use shadowfold::hull::{check_hull_subcommute, hull, DEFAULT_DELTA};
use shadowfold::limitlog::{check_contraction, check_isometry, classify, in_shadow, limit_log, Shadow};
use shadowfold::suite::{run_suite, run_trial, Suite, TrialOutcome, STURM_ITERATIONS};
use shadowfold::syntax::{
    format_cone_vector, format_graph_point, format_page, format_tangent, parse_cone_vector, parse_tangent,
};
use shadowfold::tangent::{
    angle_at, exp_at, log_at, parallel_distance_profile, parallel_pair_profile, parallel_ray_from, radial_transport,
    radial_transport_from_apex,
};
use shadowfold::{Cone, ConeVector, Error, MetricGraph};

#[derive(Parser)]
#[command(name = "shadowfold", version, about = "Euclidean cones over metric graphs: shadows and limit log maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpaceArg {
    /// Space file, or the name of a bundled space.
    space: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a space and report its girth and CAT(1) verdict.
    Validate(SpaceArg),
    /// List the bundled spaces.
    Spaces,
    /// Distance between two cone vectors.
    Dist {
        #[command(flatten)]
        space: SpaceArg,
        v: String,
        w: String,
    },
    /// Angle at the apex between two cone vectors, or between two tangent
    /// vectors at a common base.
    Angle {
        #[command(flatten)]
        space: SpaceArg,
        a: String,
        b: String,
    },
    /// Points along the geodesic between two cone vectors.
    Geodesic {
        #[command(flatten)]
        space: SpaceArg,
        v: String,
        w: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    /// Tangent vector at `z` pointing to `w`.
    Log {
        #[command(flatten)]
        space: SpaceArg,
        z: String,
        w: String,
    },
    /// Endpoint of the geodesic with initial tangent vector `u`.
    Exp {
        #[command(flatten)]
        space: SpaceArg,
        u: String,
    },
    /// Radial transport of a tangent vector, or of a vector at the apex, to `--to`.
    Transport {
        #[command(flatten)]
        space: SpaceArg,
        u: String,
        #[arg(long)]
        to: String,
    },
    /// Distance profile of the ray from `z` parallel to the ray through `v`.
    Parallel {
        #[command(flatten)]
        space: SpaceArg,
        z: String,
        v: String,
        /// Compare against the parallel ray from this point instead of `t ↦ tV`.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Shadow arcs of `z`.
    Shadow {
        #[command(flatten)]
        space: SpaceArg,
        z: String,
    },
    /// Limit log images of vectors in the tangent cone at `z`.
    Limitlog {
        #[command(flatten)]
        space: SpaceArg,
        z: String,
        #[arg(required = true)]
        v: Vec<String>,
    },
    /// How the geodesic from `v` to `w` meets the shadow of `z`.
    Classify {
        #[command(flatten)]
        space: SpaceArg,
        z: String,
        v: String,
        w: String,
    },
    /// Convex hull of a set of cone vectors, optionally checked against the limit log at `--z`.
    Hull {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(required = true)]
        points: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[arg(long)]
        z: Option<String>,
    },
    /// Weighted Fréchet mean of the `m` records in a configuration file.
    Frechet {
        #[arg(long)]
        config: PathBuf,
        /// Also run the grid oracle at this resolution and compare.
        #[arg(long)]
        oracle: Option<f64>,
        #[arg(long, default_value_t = STURM_ITERATIONS)]
        iterations: usize,
        #[arg(long, env = "SHADOWFOLD_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Add mass in the shadow of the mean and recompute it.
    Drag {
        #[arg(long)]
        config: PathBuf,
        /// `<conevector>,<weight>`
        #[arg(long)]
        add: String,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Run a seeded verification suite.
    Check(CheckArgs),
    /// SVG of the directions, the shadow of `z` and the limit log images.
    ExportSvg(ExportArgs),
    /// CSV table of limit log images of sampled directions.
    ExportCsv(ExportArgs),
    /// Reproducible demo tables.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    suite: String,
    /// Space file or bundled name; all bundled spaces when omitted.
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, env = "SHADOWFOLD_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol: Option<f64>,
    /// Re-run a single trial, typically a reported witness.
    #[arg(long)]
    replay: Option<u64>,
    /// Write failure witnesses as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    space: SpaceArg,
    z: String,
    #[arg(long, default_value_t = 64)]
    per_edge: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoKind {
    /// Angle between parallel rays on the quadrant plane as the basepoint reaches the apex.
    Angle,
    /// Non-constant distance between parallel rays on the 3π kale.
    NoRay,
}

/// `Ok(true)` when every checked assertion holds.
type Outcome = Result<bool, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(arg: &SpaceArg) -> Result<SpaceBundle, Error> {
    bundled::load(&arg.space)
}

fn cone(arg: &SpaceArg) -> Result<Cone, Error> {
    Ok(Cone::new(load(arg)?.graph))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate(space) => validate(&space),
        Command::Spaces => {
            for b in bundled::all() {
                let verdict = b.graph.validate_cat1();
                println!(
                    "space={} girth={:?} cat1={} description={}",
                    b.name,
                    verdict.girth,
                    pass_fail(verdict.pass),
                    b.description
                );
            }
            Ok(true)
        }
        Command::Dist { space, v, w } => {
            let cone = cone(&space)?;
            let (v, w) = (vector(&cone, &v)?, vector(&cone, &w)?);
            println!("distance={:?}", cone.distance(&v, &w));
            Ok(true)
        }
        Command::Angle { space, a, b } => {
            let cone = cone(&space)?;
            let graph = cone.graph();
            let angle = if a.contains('|') || b.contains('|') {
                angle_at(&parse_tangent(graph, &a)?, &parse_tangent(graph, &b)?)?
            } else {
                cone.angle_at_apex(&vector(&cone, &a)?, &vector(&cone, &b)?)?
            };
            println!("angle={angle:?}");
            Ok(true)
        }
        Command::Geodesic { space, v, w, steps } => {
            let cone = cone(&space)?;
            let graph = cone.graph();
            let g = cone.geodesic(&vector(&cone, &v)?, &vector(&cone, &w)?);
            let kind = match g.kind {
                GeodesicKind::Straight { .. } => "straight",
                GeodesicKind::ThroughApex => "through-apex",
                GeodesicKind::Radial => "radial",
            };
            println!("kind={kind}");
            println!("length={:?}", g.length);
            let steps = steps.max(1);
            for i in 0..=steps {
                let t = i as f64 / steps as f64;
                println!("t={t:?} point={}", format_cone_vector(graph, &g.eval(graph, t)));
            }
            Ok(true)
        }
        Command::Log { space, z, w } => {
            let cone = cone(&space)?;
            let (z, w) = (vector(&cone, &z)?, vector(&cone, &w)?);
            if z.is_apex() {
                println!("log={}", format_cone_vector(cone.graph(), &cone.log_apex(&w)));
            } else {
                println!("log={}", format_tangent(cone.graph(), &log_at(&cone, &z, &w)?));
            }
            Ok(true)
        }
        Command::Exp { space, u } => {
            let cone = cone(&space)?;
            let graph = cone.graph();
            let end = if u.contains('|') {
                exp_at(&cone, &parse_tangent(graph, &u)?)?
            } else {
                cone.exp_apex(&vector(&cone, &u)?)
            };
            println!("exp={}", format_cone_vector(graph, &end));
            Ok(true)
        }
        Command::Transport { space, u, to } => {
            let cone = cone(&space)?;
            let graph = cone.graph();
            let z = vector(&cone, &to)?;
            let moved = if u.contains('|') {
                let u = parse_tangent(graph, &u)?;
                radial_transport(graph, u.base(), &z, &u)?
            } else {
                radial_transport_from_apex(graph, &z, &vector(&cone, &u)?)?
            };
            println!("transport={}", format_tangent(graph, &moved));
            Ok(true)
        }
        Command::Parallel {
            space,
            z,
            v,
            pair,
            t_max,
            samples,
        } => {
            let cone = cone(&space)?;
            let (z, v) = (vector(&cone, &z)?, vector(&cone, &v)?);
            let ray = parallel_ray_from(&cone, &z, &v)?;
            println!("through_apex={}", ray.passes_through_apex());
            let profile = match pair {
                Some(q) => parallel_pair_profile(&cone, &z, &vector(&cone, &q)?, &v, t_max, samples)?,
                None => parallel_distance_profile(&cone, &z, &v, t_max, samples)?,
            };
            println!("min={:?}", profile.min);
            println!("max={:?}", profile.max);
            println!("spread={:?}", profile.spread());
            println!("constant={}", profile.is_constant());
            for (t, d) in &profile.samples {
                println!("t={t:?} distance={d:?}");
            }
            Ok(true)
        }
        Command::Shadow { space, z } => {
            let cone = cone(&space)?;
            let graph = cone.graph();
            let shadow = Shadow::new(graph, &vector(&cone, &z)?)?;
            println!("empty={}", shadow.is_empty());
            println!("measure={:?}", shadow.measure());
            for arc in shadow.regions() {
                println!("arc edge={} lo={:?} hi={:?}", graph.edge(arc.edge).id, arc.lo, arc.hi);
            }
            for (p, germ) in shadow.boundary(graph) {
                println!(
                    "boundary point={} exit={}",
                    format_graph_point(graph, &p),
                    format_page(graph, &shadowfold::tangent::Page::Germ(germ))
                );
            }
            Ok(true)
        }
        Command::Limitlog { space, z, v } => {
            let cone = cone(&space)?;
            let graph = cone.graph();
            let z = vector(&cone, &z)?;
            for text in &v {
                let v = vector(&cone, text)?;
                let image = limit_log(graph, &z, &v)?;
                println!(
                    "v={} in_shadow={} page={} phi={:?} magnitude={:?}",
                    format_cone_vector(graph, &v),
                    !v.is_apex() && in_shadow(graph, &v, &z)?,
                    format_page(graph, &image.page),
                    image.phi,
                    image.magnitude
                );
            }
            Ok(true)
        }
        Command::Classify { space, z, v, w } => {
            let cone = cone(&space)?;
            let (z, v, w) = (vector(&cone, &z)?, vector(&cone, &v)?, vector(&cone, &w)?);
            let shadow = Shadow::new(cone.graph(), &z)?;
            println!("contact={}", classify(&cone, &shadow, &v, &w)?.name());
            let c = check_contraction(&cone, &v, &w, &z)?;
            println!("angle_before={:?}", c.angle_before);
            println!("angle_after={:?}", c.angle_after);
            println!("distance_before={:?}", c.distance_before);
            println!("distance_after={:?}", c.distance_after);
            match check_isometry(&cone, &v, &w, &z) {
                Ok(iso) => println!("isometry_error={:?}", iso.error()),
                Err(Error::Hypothesis(reason)) => println!("isometry=not-applicable reason={reason}"),
                Err(e) => return Err(e),
            }
            Ok(true)
        }
        Command::Hull { space, points, delta, z } => {
            let cone = cone(&space)?;
            let graph = cone.graph();
            let points = points.iter().map(|p| vector(&cone, p)).collect::<Result<Vec<_>, _>>()?;
            let h = hull(&cone, &points, delta)?;
            println!("trivial={}", h.is_trivial());
            println!("measure={:?}", h.measure());
            println!("rounds={}", h.rounds());
            for arc in h.arcs() {
                println!("arc edge={} lo={:?} hi={:?}", graph.edge(arc.edge).id, arc.lo, arc.hi);
            }
            match z {
                Some(z) => {
                    let check = check_hull_subcommute(&cone, &points, &vector(&cone, &z)?, delta)?;
                    println!("samples_checked={}", check.samples_checked);
                    println!("max_gap={:?}", check.max_gap);
                    println!("tolerance={:?}", check.tolerance());
                    println!("result={}", pass_fail(check.passes()));
                    Ok(check.passes())
                }
                None => Ok(true),
            }
        }
        Command::Frechet {
            config,
            oracle,
            iterations,
            seed,
        } => {
            let (cone, cfg) = configuration(&config)?;
            let graph = cone.graph();
            let sturm = frechet_mean_sturm(&cone, &cfg, iterations, seed)?;
            println!("mean={}", format_cone_vector(graph, &sturm.mean));
            println!("objective={:?}", sturm.objective);
            println!("iterations={}", sturm.iterations);
            match oracle {
                Some(delta) => {
                    let grid = frechet_mean_grid(&cone, &cfg, delta)?;
                    let gap = cone.distance(&sturm.mean, &grid.mean);
                    println!("oracle_mean={}", format_cone_vector(graph, &grid.mean));
                    println!("oracle_objective={:?}", grid.objective);
                    println!("gap={gap:?}");
                    println!("tolerance={:?}", 2.0 * delta);
                    println!("result={}", pass_fail(gap <= 2.0 * delta));
                    Ok(gap <= 2.0 * delta)
                }
                None => Ok(true),
            }
        }
        Command::Drag { config, add, delta } => {
            let (cone, cfg) = configuration(&config)?;
            let graph = cone.graph();
            let (v, w) = add
                .rsplit_once(',')
                .ok_or_else(|| Error::InvalidConfiguration(format!("expected `<conevector>,<weight>`, got `{add}`")))?;
            let v = parse_cone_vector(graph, v)?;
            let w: f64 = w
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfiguration(format!("cannot parse weight `{w}`")))?;
            let delta = delta.unwrap_or_else(|| cfg.default_delta(&cone));
            let report = shadow_drag_experiment(&cone, &cfg, &v, w, delta)?;
            println!("old_mean={}", format_cone_vector(graph, &report.old_mean));
            println!("new_mean={}", format_cone_vector(graph, &report.new_mean));
            println!("old_radius={:?}", report.old_mean.norm());
            println!("new_radius={:?}", report.new_mean.norm());
            println!("deviation={:?}", report.deviation);
            println!("resolution={:?}", report.resolution);
            println!("result={}", pass_fail(report.passes()));
            Ok(report.passes())
        }
        Command::Check(args) => check(args),
        Command::ExportSvg(args) => {
            let cone = cone(&args.space)?;
            let svg = render_svg(cone.graph(), &vector(&cone, &args.z)?, args.per_edge)?;
            let mut out = output(args.output.as_ref())?;
            out.write_all(svg.as_bytes()).map_err(io_error)?;
            Ok(true)
        }
        Command::ExportCsv(args) => {
            let cone = cone(&args.space)?;
            let rows = limit_log_table(cone.graph(), &vector(&cone, &args.z)?, args.per_edge)?;
            write_limit_log_csv(cone.graph(), &rows, output(args.output.as_ref())?)?;
            Ok(true)
        }
        Command::Demo { which, csv } => demo(which, csv),
    }
}

fn vector(cone: &Cone, text: &str) -> Result<ConeVector, Error> {
    if text == "apex" || text == "apex@0" {
        return Ok(ConeVector::APEX);
    }
    parse_cone_vector(cone.graph(), text)
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn io_error(e: io::Error) -> Error {
    Error::Io(e.to_string())
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).map_err(io_error)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn configuration(path: &PathBuf) -> Result<(Cone, WeightedConfiguration), Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let graph = MetricGraph::parse(&text)?;
    let cfg = WeightedConfiguration::parse(&graph, &text)?;
    Ok((Cone::new(graph), cfg))
}

fn validate(space: &SpaceArg) -> Outcome {
    let b = load(space)?;
    let report = b.graph.validate_cat1();
    println!("space={}", b.name);
    println!("vertices={}", b.graph.vertex_count());
    println!("edges={}", b.graph.edges().len());
    println!("total_length={:?}", b.graph.total_length());
    println!("girth={:?}", report.girth);
    println!("girth_over_pi={:?}", report.girth / std::f64::consts::PI);
    println!("cat1={}", pass_fail(report.pass));
    if let Some(expect) = b.expect_cat0 {
        println!("expect={}", if expect { "cat0" } else { "not-cat0" });
        println!("matches_expectation={}", b.verdict_matches());
    }
    Ok(report.pass)
}

fn check(args: CheckArgs) -> Outcome {
    let suite: Suite = args.suite.parse()?;
    let spaces = match &args.space {
        Some(s) => vec![bundled::load(s)?],
        None => bundled::all(),
    };
    let tol = args.tol.unwrap_or_else(|| suite.default_tolerance());
    if let Some(trial) = args.replay {
        let mut ok = true;
        for space in &spaces {
            let outcome = run_trial(suite, &Cone::new(space.graph.clone()), args.seed, trial, tol);
            let line = match &outcome {
                TrialOutcome::Pass { error } => format!("outcome=pass error={error:?}"),
                TrialOutcome::Skip { reason } => format!("outcome=skip reason={reason}"),
                TrialOutcome::Fail { error, detail } => format!("outcome=fail error={error:?} {detail}"),
            };
            println!("suite={suite} space={} seed={} trial={trial} {line}", space.name, args.seed);
            ok &= !matches!(outcome, TrialOutcome::Fail { .. });
        }
        return Ok(ok);
    }
    let trials = args.trials.unwrap_or_else(|| suite.default_trials());
    let mut csv = match &args.csv {
        Some(p) => Some(File::create(p).map_err(io_error)?),
        None => None,
    };
    let mut ok = true;
    for space in &spaces {
        let r = run_suite(suite, space, trials, args.seed, tol);
        println!(
            "suite={} space={} trials={} seed={} tol={:?} checked={} skipped={} max_error={:?} failures={} elapsed_ms={} result={}",
            r.suite,
            r.space,
            r.trials,
            r.seed,
            r.tolerance,
            r.checked,
            r.skipped(),
            r.max_error,
            r.failures.len(),
            r.elapsed.as_millis(),
            pass_fail(r.passes())
        );
        for w in r.failures.iter().take(10) {
            println!("witness space={} trial={} error={:?} {}", r.space, w.trial, w.error, w.detail);
        }
        if let Some(file) = csv.as_mut() {
            write_witnesses_csv(&r, file)?;
        }
        ok &= r.passes();
    }
    Ok(ok)
}

fn demo(which: DemoKind, csv: Option<PathBuf>) -> Outcome {
    match which {
        DemoKind::Angle => {
            let cone = Cone::new(bundled::get("quadrantplane")?.graph);
            let demo = quadrant_demo(&cone)?;
            let graph = cone.graph();
            println!("basepoint={}", format_graph_point(graph, &demo.basepoint));
            for row in &demo.rows {
                match row.radius {
                    Some(r) => println!("radius={r:?} angle={:?}", row.angle),
                    None => println!("radius=apex angle={:?}", row.angle),
                }
            }
            println!("apex_angle={:?}", demo.apex_angle());
            println!("jump={:?}", demo.jump());
            if let Some(path) = csv {
                write_angle_demo_csv(&demo, File::create(path).map_err(io_error)?)?;
            }
            let half = std::f64::consts::FRAC_PI_2;
            let ok = demo.rows.len() == DEMO_RADII.len() + 1
                && demo
                    .rows
                    .iter()
                    .filter(|r| r.radius.is_some())
                    .all(|r| (r.angle - half).abs() <= 1e-9)
                && demo.apex_angle() == std::f64::consts::PI;
            println!("result={}", pass_fail(ok));
            Ok(ok)
        }
        DemoKind::NoRay => {
            if csv.is_some() {
                return Err(Error::InvalidConfiguration("--csv is only available for the angle demo".into()));
            }
            let cone = Cone::new(bundled::get("kale3pi")?.graph);
            let profile = no_ray_profile(&cone, 10.0, 101)?;
            println!("min={:?}", profile.min);
            println!("max={:?}", profile.max);
            println!("spread={:?}", profile.spread());
            for (t, d) in &profile.samples {
                println!("t={t:?} distance={d:?}");
            }
            let ok = profile.spread() > 1e-3 && profile.max <= profile.samples[0].1 + 1e-12;
            println!("result={}", pass_fail(ok));
            Ok(ok)
        }
    }
}
