use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cdindex::arrangements::{
    build_q, cd_index_chainsum, cd_index_main, complement_euler, spherical_cd_index, stratify, toric_cd_index,
    ArrangementData, ArrangementError, IntersectionPoset,
};
use cdindex::flagenum::{ab_index, cd_index, flag_f_vector, flag_h_vector, zaslavsky_z, zaslavsky_zm, FlagError, FlagVector};
use cdindex::geometry::{intersection_lattice, spherize, torify, GeometryError, SubspaceArrangement, ToricMode};
use cdindex::io::{from_json, to_json};
use cdindex::ncpoly::{coproduct, collapse_to_cd, expand_cd, AbPolynomial, CdPolynomial};
use cdindex::operators::{apply_named, OperatorOutput};
use cdindex::poset::{PosetData, PosetError, QuasiGradedPoset};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cdindex", version, about = "ab-index and cd-index of quasi-graded posets and arrangements")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Main,
    Chainsum,
    Q,
    All,
}

#[derive(Subcommand)]
enum Verb {
    /// ab-index of a poset or arrangement file
    AbIndex { file: PathBuf },
    /// cd-index of an Eulerian poset or arrangement file
    CdIndex { file: PathBuf },
    /// Flag f- and h-vectors
    FlagVectors { file: PathBuf },
    /// Report whether every interval is Eulerian
    Eulerian { file: PathBuf },
    /// Σ μ̄(0̂, x)·μ̄(x, 1̂) over the poset
    Zaslavsky { file: PathBuf },
    /// Zaslavsky sum weighted by the Euler characteristics of an arrangement
    Zm { file: PathBuf },
    /// Euler characteristic of the complement of an arrangement
    ComplementEuler { file: PathBuf },
    /// The face poset Q of an arrangement, as a poset file
    BuildQ {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        manifold_euler: Option<i64>,
    },
    /// cd-index of the induced stratification
    Stratify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Route::All)]
        route: Route,
        #[arg(long, allow_hyphen_values = true)]
        manifold_euler: Option<i64>,
    },
    /// Closed formula for spherical arrangements
    Spherical { file: PathBuf },
    /// Closed formula for toric arrangements
    Toric { file: PathBuf },
    /// Intersection poset of an affine subspace file
    Lattice { file: PathBuf },
    /// Intersection poset on the unit sphere of a central subspace file
    Spherize { file: PathBuf },
    /// Intersection poset on the torus of a rational subspace file
    Torify {
        file: PathBuf,
        /// One element per connected component
        #[arg(long)]
        per_component: bool,
    },
    /// Apply an operator to a polynomial
    Op {
        /// kappa, lambda, eta, phi, omega, g, h-prime, star, expand, collapse, coproduct
        operator: String,
        poly: String,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Invalid(Vec<String>),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "error: {m}"),
            Failure::Invalid(v) => {
                write!(f, "error: validation failed")?;
                for line in v {
                    write!(f, "\n  {line}")?;
                }
                Ok(())
            }
            Failure::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::Invalid(v) => Failure::Invalid(v.iter().map(|x| x.to_string()).collect()),
            e => Failure::Invalid(vec![e.to_string()]),
        }
    }
}

impl From<FlagError> for Failure {
    fn from(e: FlagError) -> Self {
        match e {
            FlagError::Internal(_) => Failure::Internal(e.to_string()),
            e => Failure::Invalid(vec![e.to_string()]),
        }
    }
}

impl From<ArrangementError> for Failure {
    fn from(e: ArrangementError) -> Self {
        if e.is_internal() {
            return Failure::Internal(e.to_string());
        }
        match e {
            ArrangementError::Invalid(v) => Failure::Invalid(v.iter().map(|x| x.to_string()).collect()),
            ArrangementError::Poset(e) => e.into(),
            ArrangementError::Flag(e) => e.into(),
            e => Failure::Invalid(vec![e.to_string()]),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Arrangement(e) => e.into(),
            e => Failure::Invalid(vec![e.to_string()]),
        }
    }
}

enum Input {
    Poset(QuasiGradedPoset),
    Arrangement(IntersectionPoset),
}

impl Input {
    fn poset(&self) -> &QuasiGradedPoset {
        match self {
            Input::Poset(p) => p,
            Input::Arrangement(a) => a.poset(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    from_json(text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

/// Poset files and arrangement files are told apart by `carrier_dim`.
fn load_input(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let value: Value = parse(path, &text)?;
    if value.get("carrier_dim").is_some() {
        let data: ArrangementData = parse(path, &text)?;
        Ok(Input::Arrangement(data.build()?))
    } else {
        let data: PosetData = parse(path, &text)?;
        Ok(Input::Poset(data.build()?))
    }
}

fn load_arrangement(path: &Path) -> Result<IntersectionPoset, Failure> {
    match load_input(path)? {
        Input::Arrangement(a) => Ok(a),
        Input::Poset(_) => Err(Failure::Parse(format!(
            "{}: expected an arrangement file (no carrier_dim)",
            path.display()
        ))),
    }
}

fn load_subspaces(path: &Path) -> Result<SubspaceArrangement, Failure> {
    let text = read(path)?;
    parse(path, &text)
}

fn with_chi(p: IntersectionPoset, chi: Option<i64>) -> IntersectionPoset {
    match chi {
        Some(c) => p.with_manifold_euler(c),
        None => p,
    }
}

/// One printed result: text lines, or a JSON document.
enum Output {
    Text(String),
    Json(Value),
    /// Already a file format; printed the same way in both modes.
    Document(String),
}

fn value(format: Format, key: &str, text: String) -> Output {
    match format {
        Format::Text => Output::Text(text),
        Format::Json => Output::Json(json!({ key: text })),
    }
}

fn flag_vectors(p: &QuasiGradedPoset, format: Format) -> Output {
    let f = flag_f_vector(p);
    let h = flag_h_vector(p);
    let show = |s: &[usize]| format!("{{{}}}", s.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","));
    match format {
        Format::Text => {
            let mut out = String::new();
            for mask in 0..f.entries.len() {
                let s = FlagVector::subset(mask);
                out.push_str(&format!("{} f={} h={}\n", show(&s), f.entries[mask], h.entries[mask]));
            }
            out.pop();
            Output::Text(out)
        }
        Format::Json => {
            let entries: Vec<Value> = (0..f.entries.len())
                .map(|mask| {
                    json!({
                        "ranks": FlagVector::subset(mask),
                        "f": f.entries[mask].to_string(),
                        "h": h.entries[mask].to_string(),
                    })
                })
                .collect();
            Output::Json(json!({ "rank": p.poset_rank(), "entries": entries }))
        }
    }
}

fn run_stratify(p: &IntersectionPoset, route: Route, format: Format) -> Result<Output, Failure> {
    let chi = None;
    let routes: Vec<(&str, CdPolynomial)> = match route {
        Route::All => {
            let r = stratify(p, chi)?;
            vec![("main", r.main), ("chainsum", r.chainsum), ("q", r.q_route)]
        }
        Route::Main => vec![("main", cd_index_main(p, chi)?)],
        Route::Chainsum => vec![("chainsum", cd_index_chainsum(p, chi)?)],
        Route::Q => {
            let q = build_q(p, chi)?;
            vec![("q", cd_index(&q)?)]
        }
    };
    Ok(match format {
        Format::Text => Output::Text(
            routes
                .iter()
                .map(|(name, cd)| format!("{name}: {cd}"))
                .collect::<Vec<_>>()
                .join("\n"),
        ),
        Format::Json => {
            let mut by_route = serde_json::Map::new();
            for (name, cd) in &routes {
                by_route.insert(name.to_string(), json!(cd.to_string()));
            }
            Output::Json(json!({ "cd_index": routes[0].1.to_string(), "routes": by_route }))
        }
    })
}

fn run_op(operator: &str, poly: &str, format: Format) -> Result<Output, Failure> {
    let bad = |e: &dyn fmt::Display| Failure::Parse(format!("bad polynomial '{poly}': {e}"));
    let text = match operator {
        "expand" => {
            let p: CdPolynomial = poly.parse().map_err(|e| bad(&e))?;
            expand_cd(&p).to_string()
        }
        _ => {
            let p: AbPolynomial = poly.parse().map_err(|e| bad(&e))?;
            match operator {
                "collapse" => collapse_to_cd(&p)
                    .map_err(|e| Failure::Invalid(vec![e.to_string()]))?
                    .to_string(),
                "coproduct" => coproduct(&p).to_string(),
                name => match apply_named(name, &p) {
                    Some(OperatorOutput::Ab(q)) => q.to_string(),
                    Some(OperatorOutput::Cd(q)) => q.to_string(),
                    None => return Err(Failure::Parse(format!("unknown operator '{name}'"))),
                },
            }
        }
    };
    Ok(value(format, "result", text))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let format = cli.format;
    Ok(match cli.verb {
        Verb::AbIndex { file } => value(format, "ab_index", ab_index(load_input(&file)?.poset()).to_string()),
        Verb::CdIndex { file } => value(format, "cd_index", cd_index(load_input(&file)?.poset())?.to_string()),
        Verb::FlagVectors { file } => flag_vectors(load_input(&file)?.poset(), format),
        Verb::Eulerian { file } => {
            let report = load_input(&file)?.poset().eulerian_check();
            match (format, report.failure) {
                (Format::Text, None) => Output::Text("eulerian".into()),
                (Format::Text, Some(f)) => Output::Text(format!(
                    "not eulerian: interval [{}, {}] sums to {}",
                    f.lower, f.upper, f.sum
                )),
                (Format::Json, None) => Output::Json(json!({ "eulerian": true })),
                (Format::Json, Some(f)) => Output::Json(json!({
                    "eulerian": false,
                    "failure": { "lower": f.lower, "upper": f.upper, "sum": f.sum.to_string() },
                })),
            }
        }
        Verb::Zaslavsky { file } => value(format, "zaslavsky", zaslavsky_z(load_input(&file)?.poset()).to_string()),
        Verb::Zm { file } => {
            let a = load_arrangement(&file)?;
            value(format, "zm", zaslavsky_zm(a.poset(), a.euler_data())?.to_string())
        }
        Verb::ComplementEuler { file } => {
            value(format, "complement_euler", complement_euler(&load_arrangement(&file)?).to_string())
        }
        Verb::BuildQ { file, manifold_euler } => {
            let a = with_chi(load_arrangement(&file)?, manifold_euler);
            Output::Document(to_json(&build_q(&a, None)?.to_data()))
        }
        Verb::Stratify {
            file,
            route,
            manifold_euler,
        } => run_stratify(&with_chi(load_arrangement(&file)?, manifold_euler), route, format)?,
        Verb::Spherical { file } => {
            value(format, "cd_index", spherical_cd_index(&load_arrangement(&file)?)?.to_string())
        }
        Verb::Toric { file } => value(format, "cd_index", toric_cd_index(&load_arrangement(&file)?)?.to_string()),
        Verb::Lattice { file } => Output::Document(to_json(&intersection_lattice(&load_subspaces(&file)?)?.to_data())),
        Verb::Spherize { file } => Output::Document(to_json(&spherize(&load_subspaces(&file)?)?.to_data())),
        Verb::Torify { file, per_component } => {
            let mode = if per_component {
                ToricMode::PerComponent
            } else {
                ToricMode::Grouped
            };
            Output::Document(to_json(&torify(&load_subspaces(&file)?, mode)?.to_data()))
        }
        Verb::Op { operator, poly } => run_op(&operator, &poly, format)?,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Output::Text(s)) => println!("{s}"),
        Ok(Output::Json(v)) => println!("{}", serde_json::to_string_pretty(&v).expect("serializable")),
        Ok(Output::Document(s)) => print!("{s}"),
        Err(f) => {
            eprintln!("{f}");
            return ExitCode::from(f.code());
        }
    }
    ExitCode::SUCCESS
}
