mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use planar_rigidity::constructions::{
    certify, find_reduction, k4_rigid_placement, realize, replay, sweep, MoveSequence,
    DEFAULT_EPSILON, DEFAULT_GRID,
};
use planar_rigidity::rigidity::{
    certified_rank, classify_framework, flex_space, random_well_positioned_placement,
    rigidity_matrix, stress_space, trivial_motion_dim, Framework, DEFAULT_ATTEMPTS,
};
use planar_rigidity::sparsity::{
    decide_rigidity, edge_connectivity, pebble_game, tree_decomposition, NormClass,
};
use planar_rigidity::{Error, Graph, Norm};

#[derive(Parser)]
#[command(
    name = "planar-rigidity",
    version,
    about = "Rigidity of bar-joint frameworks in normed planes"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Relative singular-value tolerance for numeric ranks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for every randomised step.
    #[arg(long, global = true, env = "PLANAR_RIGIDITY_SEED", default_value_t = 0)]
    seed: u64,
    /// Output format; verdict commands default to text, data commands to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Euclidean,
    NonEuclidean,
}

impl From<Class> for NormClass {
    fn from(c: Class) -> Self {
        match c {
            Class::Euclidean => NormClass::Euclidean,
            Class::NonEuclidean => NormClass::NonEuclidean,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// (2,l)-sparsity by the pebble game.
    Sparsity {
        #[command(flatten)]
        input: GraphInput,
        /// The l of (2,l)-sparsity, at most 3.
        #[arg(long, default_value_t = 2)]
        l: usize,
    },
    /// Combinatorial rigidity, optionally cross-checked at a random placement.
    Rigidity {
        #[command(flatten)]
        input: GraphInput,
        /// Norm class; defaults to that of --numeric, else non-euclidean.
        #[arg(long, value_enum)]
        class: Option<Class>,
        /// Norm spec for a numeric rank check at a random placement.
        #[arg(long)]
        numeric: Option<Norm>,
    },
    /// Rigidity matrix and its rank.
    Matrix {
        /// Framework JSON file.
        #[arg(long)]
        framework: PathBuf,
    },
    /// Infinitesimal flexes and stresses.
    Flexes {
        /// Framework JSON file.
        #[arg(long)]
        framework: PathBuf,
    },
    /// An independent placement of K4 with its rank certificate.
    K4 {
        /// Norm spec; any non-Euclidean norm.
        #[arg(long)]
        norm: Norm,
    },
    /// Replays a move sequence, and places it geometrically given a norm.
    Moves {
        /// Move sequence JSON file.
        #[arg(long)]
        sequence: PathBuf,
        /// Norm spec for the geometric placement.
        #[arg(long)]
        norm: Option<Norm>,
    },
    /// A move sequence building a (2,2)-tight graph from K1.
    Reduce {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Two edge-disjoint spanning trees of a (2,2)-tight graph.
    Trees {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Edge connectivity.
    Connectivity {
        #[command(flatten)]
        input: GraphInput,
    },
    /// SVG of a framework, or of the ‖v4‖ trace along the K4 path (--trace).
    Svg {
        /// Framework JSON file.
        #[arg(long, required_unless_present = "trace")]
        framework: Option<PathBuf>,
        /// Leave out the unit ball.
        #[arg(long)]
        no_unit_ball: bool,
        /// Plot ‖v4‖ along the K4 path instead of a framework.
        #[arg(long, requires = "norm")]
        trace: bool,
        /// Norm spec: with --trace the swept norm, otherwise a replacement for the framework's.
        #[arg(long)]
        norm: Option<Norm>,
        /// Distance ‖v2 − v3‖ along the K4 path, in (0, 2).
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Number of samples along the K4 path.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Directory of graph JSON files, each evaluated on its own.
    #[arg(long)]
    batch: Option<PathBuf>,
}

/// Outcome of one evaluation.
enum Verdict {
    Positive,
    Negative,
}

struct Report {
    json: Value,
    text: String,
    verdict: Verdict,
}

impl Report {
    fn new(json: Value, text: impl Into<String>, positive: bool) -> Self {
        Report {
            json,
            text: text.into(),
            verdict: if positive {
                Verdict::Positive
            } else {
                Verdict::Negative
            },
        }
    }
}

/// Input and usage problems (exit 2) versus numeric failures (exit 3).
enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Numerical(m) => m,
        }
    }
}

type Outcome = Result<Report, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serialises")
}

fn edge_names(g: &Graph, ids: &[usize]) -> Vec<[String; 2]> {
    ids.iter()
        .map(|&k| {
            let (a, b) = g.edge_names(g.edges()[k]);
            [a, b]
        })
        .collect()
}

fn sparsity(g: &Graph, l: usize) -> Outcome {
    let r = pebble_game(g, l)?;
    let text = format!(
        "sparse: {}\ntight: {}\nbasis size: {}",
        r.sparse, r.tight, r.basis_size
    );
    Ok(Report::new(to_value(&r), text, r.tight))
}

fn rigidity(g: &Graph, class: Option<Class>, numeric: Option<&Norm>, common: &Common) -> Outcome {
    let class: NormClass = match (class, numeric) {
        (Some(c), _) => c.into(),
        (None, Some(n)) if n.is_euclidean() => NormClass::Euclidean,
        _ => NormClass::NonEuclidean,
    };
    let d = decide_rigidity(g, class);
    let l = if class == NormClass::Euclidean { 3 } else { 2 };
    let mut text = if d.rigid {
        "rigid: true".to_string()
    } else {
        format!("rigid: false (no (2,{l})-tight spanning subgraph)")
    };
    let mut json = to_value(&d);
    if let Some(norm) = numeric {
        if norm.is_euclidean() != (class == NormClass::Euclidean) {
            return Err(Failure::Input(
                "--class does not match the norm given to --numeric".into(),
            ));
        }
        let fw = random_well_positioned_placement(g, norm, common.seed, DEFAULT_ATTEMPTS)?;
        let class = classify_framework(&fw, common.tol)?;
        let rank = certified_rank(&rigidity_matrix(&fw)?, common.tol)?;
        let target = (2 * g.vertex_count()).saturating_sub(trivial_motion_dim(norm));
        let agrees = class.rigid == d.rigid;
        text.push_str(&format!(
            "\nnumeric rank: {} of {target} in {norm} ({})",
            rank.rank,
            if agrees { "agrees" } else { "disagrees" }
        ));
        json["numeric"] = json!({ "norm": norm.to_string(), "rank": rank, "rigid": class.rigid, "agrees": agrees });
        if !agrees {
            return Err(Failure::Numerical(format!(
                "numeric rank {} at seed {} disagrees with the combinatorial verdict",
                rank.rank, common.seed
            )));
        }
    }
    Ok(Report::new(json, text, d.rigid))
}

fn matrix(fw: &Framework, tol: f64) -> Outcome {
    let m = rigidity_matrix(fw)?;
    let rank = certified_rank(&m, tol)?;
    let g = fw.graph();
    let edges: Vec<usize> = (0..g.edge_count()).collect();
    let mut json = json!({
        "vertices": g.names(),
        "edges": edge_names(g, &edges),
        "rows": m.to_rows(),
        "rank": rank,
    });
    if let Some(exact) = m.exact() {
        let rows: Vec<Vec<String>> = exact
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        json["exact_rows"] = to_value(&rows);
    }
    let mut text = String::new();
    for (row, [a, b]) in m.to_rows().iter().zip(edge_names(g, &edges)) {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>9.4}", v + 0.0)).collect();
        text.push_str(&format!("{a}-{b}: {}\n", cells.join(" ")));
    }
    text.push_str(&format!("rank: {} ({:?})", rank.rank, rank.method).to_lowercase());
    Ok(Report::new(json, text, true))
}

fn flexes(fw: &Framework, tol: f64) -> Outcome {
    let class = classify_framework(fw, tol)?;
    let f = flex_space(fw, tol)?;
    let s = stress_space(fw, tol)?;
    let trivial = trivial_motion_dim(fw.norm()).min(2 * fw.graph().vertex_count());
    let text = format!(
        "flex dimension: {} ({} trivial)\nstress dimension: {}\nrigid: {}\nindependent: {}\nisostatic: {}",
        f.vectors.len(),
        trivial,
        s.vectors.len(),
        class.rigid,
        class.independent,
        class.isostatic
    );
    let json = json!({ "class": class, "flexes": f, "stresses": s });
    Ok(Report::new(json, text, class.rigid))
}

fn k4(norm: &Norm, common: &Common) -> Outcome {
    let fw = k4_rigid_placement(norm, common.seed)?;
    let c = certify(&fw, common.tol)?;
    let mut text = format!(
        "rank: {} ({:?}), flex dimension {}",
        c.rank, c.method, c.flex_dim
    )
    .to_lowercase();
    for (name, p) in fw.graph().names().iter().zip(fw.placement()) {
        text.push_str(&format!("\n{name}: ({:.6}, {:.6})", p.x, p.y));
    }
    let json = json!({ "framework": fw, "certificate": c });
    Ok(Report::new(json, text, c.rank == 6))
}

fn moves(path: &Path, norm: Option<&Norm>, common: &Common) -> Outcome {
    let ms: MoveSequence = read_json(path)?;
    let g = replay(&ms)?;
    let tight = planar_rigidity::sparsity::is_tight(&g);
    let mut text = format!(
        "vertices: {}\nedges: {}\ntight: {tight}",
        g.vertex_count(),
        g.edge_count()
    );
    let mut json = json!({ "graph": g, "tight": tight });
    let mut positive = tight;
    if let Some(norm) = norm {
        let fw = realize(&ms, norm, common.seed)?;
        let c = certify(&fw, common.tol)?;
        text.push_str(&format!("\nrank: {} of {} edges", c.rank, g.edge_count()));
        positive &= c.rank == g.edge_count();
        json["framework"] = to_value(&fw);
        json["certificate"] = to_value(&c);
    }
    Ok(Report::new(json, text, positive))
}

fn reduce(g: &Graph) -> Outcome {
    match find_reduction(g) {
        Ok(ms) => {
            let kinds: Vec<&str> = ms.moves.iter().map(|m| m.kind()).collect();
            let text = format!("{} moves from K1: {}", kinds.len(), kinds.join(", "));
            Ok(Report::new(to_value(&ms), text, true))
        }
        Err(Error::NotTight) => Ok(Report::new(
            json!({ "tight": false }),
            "not (2,2)-tight: no reduction to K1",
            false,
        )),
        Err(e) => Err(e.into()),
    }
}

fn trees(g: &Graph) -> Outcome {
    match tree_decomposition(g) {
        Ok(d) => {
            let named: Vec<Vec<[String; 2]>> = d.trees.iter().map(|t| edge_names(g, t)).collect();
            let mut text = String::new();
            for (i, t) in named.iter().enumerate() {
                let edges: Vec<String> = t.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                text.push_str(&format!("tree {}: {}\n", i + 1, edges.join(" ")));
            }
            Ok(Report::new(
                json!({ "trees": named }),
                text.trim_end(),
                true,
            ))
        }
        Err(Error::NotTight) => Ok(Report::new(
            json!({ "tight": false }),
            "not (2,2)-tight: no decomposition into two spanning trees",
            false,
        )),
        Err(e) => Err(e.into()),
    }
}

fn connectivity(g: &Graph) -> Outcome {
    let k = edge_connectivity(g);
    Ok(Report::new(json!(k), k.to_string(), true))
}

/// Runs a graph command on one file or on every `.json` file of a directory.
fn on_graphs(input: &GraphInput, f: impl Fn(&Graph) -> Outcome) -> Outcome {
    if let Some(path) = &input.graph {
        return f(&read_json(path)?);
    }
    let dir = input.batch.as_ref().expect("clap requires one input");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut json = serde_json::Map::new();
    let mut text = Vec::new();
    let (mut worst, mut positive) = (0u8, true);
    for path in &files {
        let name = path
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        match read_json(path).and_then(|g: Graph| f(&g)) {
            Ok(r) => {
                positive &= matches!(r.verdict, Verdict::Positive);
                text.push(format!("{name}: {}", r.text.replace('\n', "; ")));
                json.insert(name, r.json);
            }
            Err(e) => {
                worst = worst.max(e.code());
                text.push(format!("{name}: error: {}", e.message()));
                json.insert(name, json!({ "error": e.message() }));
            }
        }
    }
    match worst {
        2 => Err(Failure::Input(format!(
            "batch had input errors\n{}",
            text.join("\n")
        ))),
        3 => Err(Failure::Numerical(format!(
            "batch had numerical failures\n{}",
            text.join("\n")
        ))),
        _ => Ok(Report::new(Value::Object(json), text.join("\n"), positive)),
    }
}

fn run(cli: &Cli) -> Result<(Report, Format), Failure> {
    let common = &cli.common;
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(Failure::Input("--tol must be positive".into()));
    }
    let (report, default) = match &cli.command {
        Command::Sparsity { input, l } => (on_graphs(input, |g| sparsity(g, *l))?, Format::Text),
        Command::Rigidity {
            input,
            class,
            numeric,
        } => (
            on_graphs(input, |g| rigidity(g, *class, numeric.as_ref(), common))?,
            Format::Text,
        ),
        Command::Matrix { framework } => {
            (matrix(&read_json(framework)?, common.tol)?, Format::Json)
        }
        Command::Flexes { framework } => {
            (flexes(&read_json(framework)?, common.tol)?, Format::Json)
        }
        Command::K4 { norm } => (k4(norm, common)?, Format::Json),
        Command::Moves { sequence, norm } => {
            (moves(sequence, norm.as_ref(), common)?, Format::Json)
        }
        Command::Reduce { input } => (on_graphs(input, reduce)?, Format::Json),
        Command::Trees { input } => (on_graphs(input, trees)?, Format::Json),
        Command::Connectivity { input } => (on_graphs(input, connectivity)?, Format::Text),
        Command::Svg {
            framework,
            no_unit_ball,
            trace,
            norm,
            epsilon,
            grid,
        } => {
            let text = if *trace {
                let norm = norm.as_ref().expect("clap requires --norm with --trace");
                let samples = sweep(norm, *epsilon, *grid)?;
                svg::trace_svg(&samples, &format!("norm {norm}, epsilon {epsilon}"))
            } else {
                let path = framework.as_ref().expect("clap requires --framework");
                let mut fw: Framework = read_json(path)?;
                if let Some(n) = norm {
                    fw = fw.with_norm(n.clone());
                }
                svg::framework_svg(&fw, !no_unit_ball)
            };
            // the figure itself is the output in either format
            return Ok((
                Report::new(Value::String(text.clone()), text, true),
                Format::Text,
            ));
        }
    };
    Ok((report, common.format.unwrap_or(default)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = std::panic::catch_unwind(|| run(&cli)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(Failure::Numerical(format!("internal error: {msg}")))
    });
    match result {
        Ok((report, format)) => {
            let mut body = match format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("valid JSON"),
                Format::Text => report.text,
            };
            if !body.ends_with('\n') {
                body.push('\n');
            }
            match &cli.common.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(match report.verdict {
                Verdict::Positive => 0,
                Verdict::Negative => 1,
            })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
