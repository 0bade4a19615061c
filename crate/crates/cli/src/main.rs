use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbibound::algebraic::{mahler_estimate, IntPolynomial};
use orbibound::complex::{manifold_count_check, read_complex, validate_good_triangulation, write_complex, MarkedSingularSet};
use orbibound::embed::{
    fiber_complexity, gromov_guth_evaluate, slice_search, thick_embed_detailed, tube_volume_with, verify_thickness,
    EmbedError, EmbedOptions, EmbeddedComplex, Graph, TubeMethod,
};
use orbibound::hypgeom::{delaunay_with, epsilon_net, format_points, parse_points, BallDomain, DelaunayOptions};
use orbibound::pipeline::{covolume_bound, end_to_end_demo, DemoInput, PipelineConfig, PipelineError};
use orbibound::spectral::{cheeger_buser_report, coarea_check, parse_vertex_function, CheegerMode, WeightedGraph};
use serde_json::{json, Value};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(name = "orbibound", version, about = "Covolume-bound toolkit for arithmetic hyperbolic 3-orbifolds")]
struct Cli {
    /// Plain `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every randomised stage; overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mahler measure of an integer polynomial, constant term first.
    Mahler {
        #[arg(required = true, allow_negative_numbers = true)]
        coeffs: Vec<i64>,
        #[arg(long, default_value_t = 1e-10)]
        precision: f64,
    },
    /// The covolume-bound chain from the configuration.
    Bounds {
        /// Volume at which the intermediate bounds are evaluated.
        #[arg(long)]
        volume: Option<f64>,
    },
    /// Maximal ε-separated set in a hyperbolic ball about the origin.
    Net {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        epsilon: f64,
        /// Write the points, one hyperboloid point per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hyperbolic Delaunay triangulation of a point file.
    Delaunay {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simplicial complex tools.
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
    /// Spectral gap and Cheeger sandwich of a weighted graph.
    Spectral {
        #[arg(long)]
        graph: PathBuf,
        /// Exact Cheeger constant by subset enumeration (small graphs).
        #[arg(long)]
        exact: bool,
        /// Vertex function for the coarea identity, one value per line.
        #[arg(long)]
        function: Option<PathBuf>,
    },
    /// Thickness-1 straight-line embedding of a graph.
    Embed {
        #[arg(long)]
        graph: PathBuf,
        /// Ambient dimension; defaults to the configured `n`.
        #[arg(long)]
        dim: Option<usize>,
        /// Vertex sequence of a base cycle, space separated; repeatable.
        #[arg(long = "base-cycle")]
        base_cycles: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo volume of the T-neighbourhood of an embedding.
    Tube {
        #[command(flatten)]
        target: EmbeddingArgs,
        /// Defaults to the configured `tube_samples`.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Direction with small maximal hyperplane cross-section.
    Slice {
        #[command(flatten)]
        target: EmbeddingArgs,
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
    /// Evaluate (λ₁ V)^{n/(n−1)} ≤ c_n T^{−n} V_T.
    GgCheck {
        #[arg(long)]
        lambda1: f64,
        #[arg(long)]
        v_hyp: f64,
        #[arg(long, default_value_t = 1.0)]
        thickness: f64,
        #[arg(long)]
        v_t: f64,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        cn: f64,
    },
    /// End-to-end run: net, Delaunay, checks, embedding, tube, bound.
    Pipeline {
        /// Start from this graph instead of a generated triangulation.
        #[arg(long, conflicts_with = "complex")]
        graph: Option<PathBuf>,
        /// Start from this complex instead of a generated triangulation.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long, requires = "complex")]
        marking: Option<PathBuf>,
        /// Directory for the intermediate files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ComplexAction {
    /// Counts, closure, Euler characteristic and good-triangulation check.
    Check {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        marking: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EmbeddingArgs {
    /// Embedding file as written by `embed --out`.
    #[arg(long)]
    embedding: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    thickness: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    BoundingBox,
    KarpLuby,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn precondition(message: impl ToString) -> Self {
        Self {
            code: EXIT_PRECONDITION,
            message: message.to_string(),
        }
    }

    fn nonconvergence(message: impl ToString) -> Self {
        Self {
            code: EXIT_NONCONVERGENCE,
            message: message.to_string(),
        }
    }
}

impl From<EmbedError> for Failure {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::Construction(_) => Self::nonconvergence(e),
            _ => Self::precondition(e),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        if e.nonconvergence {
            Self::nonconvergence(e)
        } else {
            Self::precondition(e)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn load_config(cli: &Cli) -> Result<PipelineConfig, Failure> {
    let mut config = match &cli.config {
        Some(path) => PipelineConfig::parse(&read(path)?)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.set("seed", &seed.to_string())?;
    }
    Ok(config)
}

fn load_embedding(args: &EmbeddingArgs) -> Result<EmbeddedComplex, Failure> {
    Ok(EmbeddedComplex::parse(&read(&args.embedding)?)?)
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let config = load_config(cli)?;
    let seed = config.seed;
    match &cli.command {
        Command::Mahler { coeffs, precision } => {
            let p = IntPolynomial::new(coeffs.clone()).map_err(Failure::precondition)?;
            let est = mahler_estimate(&p, *precision).map_err(|e| {
                if e.is_nonconvergence() {
                    Failure::nonconvergence(e)
                } else {
                    Failure::precondition(e)
                }
            })?;
            Ok(json!({ "polynomial": p.to_string(), "degree": p.degree(), "mahler": to_json(&est) }))
        }
        Command::Bounds { volume } => {
            let mut config = config;
            if let Some(v) = volume {
                config.set("reference_volume", &v.to_string())?;
            }
            Ok(to_json(&covolume_bound(&config)?))
        }
        Command::Net { radius, epsilon, out } => {
            let domain = BallDomain::centered(*radius).map_err(Failure::precondition)?;
            let net = epsilon_net(&domain, *epsilon, &[], seed).map_err(Failure::precondition)?;
            if let Some(path) = out {
                write(path, &format_points(&net.points))?;
            }
            Ok(json!({
                "points": net.points.len(),
                "epsilon": net.epsilon,
                "declared_maximal": net.declared_maximal,
                "candidates_examined": net.candidates_examined,
                "shell_additions": net.shell_additions,
                "seed": seed,
            }))
        }
        Command::Delaunay { points, out } => {
            let pts = parse_points(&read(points)?).map_err(Failure::precondition)?;
            let options = DelaunayOptions {
                jitter_seed: seed,
                ..DelaunayOptions::default()
            };
            let d = delaunay_with(&pts, &options).map_err(Failure::precondition)?;
            if let Some(path) = out {
                write(path, &write_complex(&d.complex))?;
            }
            let [v, e, f, t] = d.complex.counts();
            Ok(json!({
                "vertices": v, "edges": e, "triangles": f, "tetrahedra": t,
                "jitter": to_json(&d.jitter),
            }))
        }
        Command::Complex {
            action: ComplexAction::Check { complex, marking },
        } => {
            let k = read_complex(&read(complex)?).map_err(Failure::precondition)?;
            let counts = manifold_count_check(&k).map_err(Failure::precondition)?;
            let good = match marking {
                Some(path) => {
                    let m = MarkedSingularSet::parse(&read(path)?).map_err(Failure::precondition)?;
                    Some(validate_good_triangulation(&k, &m).map_err(Failure::precondition)?)
                }
                None => None,
            };
            Ok(json!({ "counts": to_json(&counts), "good_triangulation": to_json(&good) }))
        }
        Command::Spectral { graph, exact, function } => {
            let g = WeightedGraph::parse(&read(graph)?).map_err(Failure::precondition)?;
            let mode = if *exact { CheegerMode::Exact } else { CheegerMode::Sweep };
            let report = cheeger_buser_report(&g, mode).map_err(Failure::precondition)?;
            let coarea = match function {
                Some(path) => {
                    let f = parse_vertex_function(&read(path)?).map_err(Failure::precondition)?;
                    Some(coarea_check(&g, &f).map_err(Failure::precondition)?)
                }
                None => None,
            };
            Ok(json!({ "sandwich": to_json(&report), "coarea": to_json(&coarea) }))
        }
        Command::Embed { graph, dim, base_cycles, out } => {
            let g = Graph::parse(&read(graph)?)?;
            let cycles = base_cycles
                .iter()
                .map(|c| {
                    c.split_whitespace()
                        .map(|t| t.parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| Failure::precondition(format!("base cycle {c:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let options = EmbedOptions {
                seed,
                ..EmbedOptions::default()
            };
            let n = dim.unwrap_or(config.n);
            let out_embedding = thick_embed_detailed(&g, n, &cycles, &options)?;
            let check = verify_thickness(&out_embedding.embedding, 1.0);
            if let Some(path) = out {
                write(path, &out_embedding.embedding.to_text())?;
            }
            Ok(json!({
                "dimension": n,
                "vertices": g.vertex_count(),
                "edges": g.edges().len(),
                "layout": to_json(&out_embedding.layout),
                "required_dimension": out_embedding.required_dimension,
                "thickness": to_json(&check),
            }))
        }
        Command::Tube { target, samples, method } => {
            let e = load_embedding(target)?;
            let method = match method {
                MethodArg::Auto => TubeMethod::Auto,
                MethodArg::BoundingBox => TubeMethod::BoundingBox,
                MethodArg::KarpLuby => TubeMethod::KarpLuby,
            };
            let samples = samples.unwrap_or(config.tube_samples);
            Ok(to_json(&tube_volume_with(&e, target.thickness, samples, seed, method)?))
        }
        Command::Slice { target, budget } => {
            let e = load_embedding(target)?;
            let r = slice_search(&e, target.thickness, *budget, seed)?;
            let fibers = fiber_complexity(&e, &r.direction, target.thickness)?;
            Ok(json!({ "slice": to_json(&r), "fiber_complexity": fibers }))
        }
        Command::GgCheck { lambda1, v_hyp, thickness, v_t, dim, cn } => {
            Ok(to_json(&gromov_guth_evaluate(*lambda1, *v_hyp, *thickness, *v_t, *dim, *cn)?))
        }
        Command::Pipeline { graph, complex, marking, out_dir } => {
            let input = match (graph, complex) {
                (Some(path), _) => DemoInput::Graph(Graph::parse(&read(path)?)?),
                (None, Some(path)) => {
                    let complex = read_complex(&read(path)?).map_err(Failure::precondition)?;
                    let marking = match marking {
                        Some(m) => MarkedSingularSet::parse(&read(m)?).map_err(Failure::precondition)?,
                        None => MarkedSingularSet::empty(),
                    };
                    DemoInput::Complex { complex, marking }
                }
                (None, None) => DemoInput::Generate,
            };
            let out = end_to_end_demo(&config, input)?;
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).map_err(|e| Failure::precondition(format!("{}: {e}", dir.display())))?;
                for (name, text) in &out.artifacts {
                    write(&dir.join(name), text)?;
                }
            }
            Ok(to_json(&out.report))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|v| {
        let mut text = serde_json::to_string_pretty(&v).expect("json value serializes");
        text.push('\n');
        if let Some(path) = &cli.json_out {
            write(path, &text)?;
        }
        Ok(text)
    });
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let body: BTreeMap<&str, Value> = BTreeMap::from([("error", json!(f.message)), ("exit_code", json!(f.code))]);
            eprintln!("error: {}", f.message);
            if let Some(path) = &cli.json_out {
                let _ = fs::write(path, serde_json::to_string_pretty(&body).expect("json value serializes"));
            }
            ExitCode::from(f.code)
        }
    }
}
