use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use miquel_core::{Point, Tolerance, Vertex};
use miquel_cli::check::{self, MARGIN};
use miquel_cli::report::construct;
use miquel_cli::scene::{parse_scene, Scene};
use miquel_cli::svg::{try_render_svg, diagnostic, FigureKind, RenderOptions};
use miquel_cli::sweep::{sweep, SweepSpec};

/// Miquel point constructions, loci, property checks and figures.
#[derive(Parser)]
#[command(name = "miquel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SceneArgs {
    /// Scene file.
    #[arg(long)]
    scene: PathBuf,
    /// Overrides the scene's distinguished vertex.
    #[arg(long)]
    vertex: Option<Vertex>,
    /// Overrides the relative tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Report the Miquel configuration of a scene.
    Construct {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the analytic locus with the inverse map on sampled points.
    Sweep {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Clearance from the locus boundary, as a fraction of the diameter.
        #[arg(long, default_value_t = MARGIN)]
        margin: f64,
        /// Defaults to the scene's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Sampling box `xmin,ymin,xmax,ymax`; defaults to a square about the circumcircle.
        #[arg(long, value_parser = parse_box)]
        bbox: Option<(Point, Point)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite, or replay one scene against it.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Replay this scene instead of generating samples.
        #[arg(long)]
        scene: Option<PathBuf>,
    },
    /// Draw an SVG figure of a scene.
    Render {
        #[command(flatten)]
        scene: SceneArgs,
        /// Defaults by payload: construction, center or isogonal.
        #[arg(long)]
        figure: Option<FigureKind>,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_box(s: &str) -> Result<(Point, Point), String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x0, y0, x1, y1] => Ok((Point::new(x0, y0), Point::new(x1, y1))),
        _ => Err("expected xmin,ymin,xmax,ymax".into()),
    }
}

/// Failure classes and their exit codes.
enum Failure {
    Input(anyhow::Error),
    Construction(String),
    Property,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn load(args: &SceneArgs) -> Result<Scene, Failure> {
    let text = std::fs::read_to_string(&args.scene)
        .with_context(|| format!("reading {}", args.scene.display()))?;
    let mut scene = parse_scene(&text).map_err(anyhow::Error::from)?;
    if let Some(v) = args.vertex {
        scene.vertex = v;
    }
    if let Some(rel) = args.tolerance {
        let tol = Tolerance::new(scene.tolerance.absolute_eps, rel).map_err(|e| anyhow::anyhow!("--tolerance: {e}"))?;
        scene.tolerance = tol;
        scene.triangle = miquel_core::Triangle::with_tolerance(scene.triangle.a(), scene.triangle.b(), scene.triangle.c(), tol)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
    }
    Ok(scene)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { scene, out } => {
            let scene = load(&scene)?;
            let report = construct(&scene).map_err(|e| Failure::Construction(e.to_string()))?;
            emit(out.as_deref(), &report.to_string())
        }
        Command::Sweep {
            scene,
            samples,
            margin,
            seed,
            bbox,
            out,
        } => {
            let scene = load(&scene)?;
            let tri = &scene.triangle;
            let mut spec = SweepSpec::around(tri, samples, margin, seed.unwrap_or(scene.seed));
            if let Some((lo, hi)) = bbox {
                spec.min = lo;
                spec.max = hi;
            }
            spec.validate().map_err(|e| anyhow::anyhow!(e))?;
            let result = sweep(tri, scene.vertex, &spec, scene.tolerance).map_err(|e| Failure::Construction(e.to_string()))?;
            emit(out.as_deref(), &result.to_csv())
        }
        Command::Check {
            suite,
            seed,
            samples,
            scene,
        } => {
            if let Some(path) = scene {
                let scene = load(&SceneArgs {
                    scene: path,
                    vertex: None,
                    tolerance: None,
                })?;
                let rows = check::replay(&suite, &scene).map_err(anyhow::Error::from)?;
                let mut ok = true;
                for (name, passed, outcome) in rows {
                    println!("{} {name}: {outcome:?}", if passed { "PASS" } else { "FAIL" });
                    ok &= passed;
                }
                return if ok { Ok(()) } else { Err(Failure::Property) };
            }
            let results = check::run_suite(&suite, seed, samples).map_err(anyhow::Error::from)?;
            let mut ok = true;
            for r in &results {
                println!("{r}");
                if let Some((scene, reason)) = &r.failing {
                    println!("  first failure: {reason}");
                    for line in scene.to_text().lines() {
                        println!("    {line}");
                    }
                }
                ok &= r.passed();
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Property)
            }
        }
        Command::Render {
            scene,
            figure,
            width,
            out,
        } => {
            let scene = load(&scene)?;
            if !(width.is_finite() && width > 0.0) {
                return Err(anyhow::anyhow!("--width must be positive").into());
            }
            let opts = RenderOptions { figure, width };
            match try_render_svg(&scene, &opts) {
                Ok(svg) => emit(out.as_deref(), &svg),
                Err(e) => {
                    emit(out.as_deref(), &diagnostic(&e.to_string()))?;
                    Err(Failure::Construction(e.to_string()))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("{e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Construction(name)) => {
            eprintln!("{name}");
            ExitCode::from(3)
        }
        Err(Failure::Property) => ExitCode::from(4),
    }
}
