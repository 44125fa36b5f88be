//! The `gaussnet` command line.
//!
//! Every verb produces a human-readable report and, with `--json`, a JSON
//! document carrying `"schema": 1`. Exit status: 0 on success, 1 on domain
//! errors (bad input, wrong graph shape, a polynomial that does not
//! vanish under `verify`), 2 on usage errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use gaussnet_core::graph::describe_set;
use gaussnet_core::hidden::{
    construct_classical_graph, hidden_tree_generators, schubert_generators, upstream_degree, ClassicalKind,
    Grade, HiddenError, PartialPermutation, UpstreamGrading, SCHUBERT_MAX_N,
};
use gaussnet_core::markov::{ci_minor_polynomials, d_separated, enumerate_ci_statements};
use gaussnet_core::tetrad::{all_vanishing_tetrads, choke_points, Side};
use gaussnet_core::toric::{polytope_system, polytope_vertex_oracle, tree_degree, tree_ideal_generators, ToricError};
use gaussnet_core::trek::{
    enumerate_treks, model_covariance, recover_parameters, sample_omega, ParameterAssignment, Trek, TrekError,
    TrekRule,
};
use gaussnet_core::{AlgebraError, Dag, GraphError, Poly, VertexPartition};
use serde_json::{json, Value};

use crate::formats::{
    matrix_from_json, matrix_to_json, parse_dag, parse_pairs, parse_poly, parse_set, print_dag, rational_string,
    FormatError,
};

#[derive(Debug, Parser)]
#[command(name = "gaussnet", version, about = "Exact algebra of Gaussian Bayesian networks")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A DAG file; `-` or nothing reads standard input.
#[derive(Debug, clap::Args)]
pub struct DagArg {
    pub dag: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the treks between two vertices.
    Treks {
        #[command(flatten)]
        input: DagArg,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Print the trek-rule image of every covariance entry.
    Param {
        #[command(flatten)]
        input: DagArg,
    },
    /// Draw parameters from Ω and print them with the model covariance.
    Sample {
        #[command(flatten)]
        input: DagArg,
        #[arg(long)]
        seed: u64,
    },
    /// Recover parameters from a covariance matrix (JSON of "num/den"
    /// strings), or round-trip a seeded sample.
    #[command(group(ArgGroup::new("source").required(true).args(["sigma", "seed"])))]
    Identify {
        #[command(flatten)]
        input: DagArg,
        #[arg(long)]
        sigma: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide whether C d-separates A from B.
    Dsep {
        #[command(flatten)]
        input: DagArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "")]
        c: String,
    },
    /// Enumerate d-separation statements and their determinantal constraints.
    CiIdeal {
        #[command(flatten)]
        input: DagArg,
        #[arg(long, default_value_t = 2)]
        amax: usize,
        #[arg(long, default_value_t = 3)]
        cmax: usize,
    },
    /// Choke points between two vertex sets.
    Choke {
        #[command(flatten)]
        input: DagArg,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
    },
    /// All vanishing tetrads.
    Tetrads {
        #[command(flatten)]
        input: DagArg,
    },
    /// Decide whether a polynomial in the s(i,j) vanishes on the model.
    Verify {
        #[command(flatten)]
        input: DagArg,
        /// Polynomial file; `-` or nothing reads standard input.
        #[arg(long)]
        poly: Option<PathBuf>,
    },
    /// Generators of the ideal of a tree.
    TreeGens {
        #[command(flatten)]
        input: DagArg,
    },
    /// The inequality description of the polytope of a tree.
    Facets {
        #[command(flatten)]
        input: DagArg,
    },
    /// Degree of the toric ideal of a downward directed forest.
    TreeDegree {
        #[command(flatten)]
        input: DagArg,
    },
    /// Vertices and normalized volume of the polytope of a small tree.
    PolytopeOracle {
        #[command(flatten)]
        input: DagArg,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Upstream bidegree of a polynomial, or of every covariance entry.
    Grade {
        #[command(flatten)]
        input: DagArg,
        #[arg(long)]
        hidden: String,
        #[arg(long)]
        poly: Option<PathBuf>,
    },
    /// Tetrad generators of a rooted tree observed at its leaves.
    HiddenTreeGens {
        #[command(flatten)]
        input: DagArg,
    },
    /// Constraints of the matrix Schubert graph G(w).
    Schubert {
        /// Positions of the ones, e.g. "(1,1),(2,2)".
        #[arg(long)]
        w: String,
        #[arg(long)]
        n: usize,
    },
    /// Build a factor analysis model or a doubled tree; with --poly, decide
    /// whether a polynomial in the observed labels vanishes on it.
    Classical {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        poly: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Kind {
    FactorAnalysis,
    DoubledCaterpillar,
    DoubledSnowflake,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Trek(#[from] TrekError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Hidden(#[from] HiddenError),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// What a verb produced: text, its JSON form and the exit status.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

/// Parses arguments, runs the command and writes its report; returns the
/// exit status.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match run(&cli.command, stdin) {
        Ok(report) => {
            let written = if cli.json {
                let mut doc = report.json;
                if let Value::Object(map) = &mut doc {
                    map.insert("schema".into(), json!(1));
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"))
            } else {
                out.write_all(report.text.as_bytes())
            };
            if written.is_err() {
                return 1;
            }
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_source(path: Option<&Path>, stdin: &mut dyn Read) -> Result<(String, String), CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            let name = p.display().to_string();
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: name.clone(), source })?;
            Ok((name, text))
        }
        _ => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok(("<stdin>".into(), text))
        }
    }
}

fn is_stdin(p: Option<&PathBuf>) -> bool {
    p.is_none_or(|p| p.as_path() == Path::new("-"))
}

fn load_dag(input: &DagArg, stdin: &mut dyn Read) -> Result<Dag, CliError> {
    let (path, text) = read_source(input.dag.as_deref(), stdin)?;
    parse_dag(&text).map_err(|source| CliError::Format { path, source })
}

fn load_poly(path: Option<&Path>, stdin: &mut dyn Read) -> Result<Poly, CliError> {
    let (path, text) = read_source(path, stdin)?;
    let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    parse_poly(&body).map_err(|source| CliError::Format { path, source })
}

fn usage(e: FormatError) -> CliError {
    CliError::Usage(e.to_string())
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| format!("{}\n", x.to_string())).collect()
}

fn trek_path(t: &Trek) -> String {
    let mut s = String::new();
    for (k, v) in t.left.iter().rev().enumerate() {
        if k > 0 {
            s.push_str(" <- ");
        }
        let _ = write!(s, "{v}");
    }
    for v in &t.right[1..] {
        let _ = write!(s, " -> {v}");
    }
    s
}

fn parameters_text(theta: &ParameterAssignment) -> String {
    let mut s = String::new();
    for (k, a) in theta.a.iter().enumerate() {
        let _ = writeln!(s, "a{} = {a}", k + 1);
    }
    for ((i, j), l) in &theta.lambda {
        let _ = writeln!(s, "l({i},{j}) = {l}");
    }
    for (k, p) in theta.psi2.iter().enumerate() {
        let _ = writeln!(s, "psi2({}) = {p}", k + 1);
    }
    s
}

fn parameters_json(theta: &ParameterAssignment) -> Value {
    json!({
        "a": theta.a.iter().map(rational_string).collect::<Vec<_>>(),
        "lambda": theta.lambda.iter().map(|(&(i, j), l)| json!({"edge": [i, j], "value": rational_string(l)})).collect::<Vec<_>>(),
        "psi2": theta.psi2.iter().map(rational_string).collect::<Vec<_>>(),
    })
}

fn matrix_text(m: &gaussnet_core::RationalMatrix) -> String {
    m.to_rows()
        .iter()
        .map(|row| format!("[{}]\n", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect()
}

fn verdict(vanishes: bool, rule_image: Option<&Poly>) -> Report {
    let text = match (vanishes, rule_image) {
        (true, _) => "vanishes\n".to_string(),
        (false, Some(img)) => format!("does not vanish: its image has {} terms\n", img.len()),
        (false, None) => "does not vanish\n".to_string(),
    };
    Report { text, json: json!({ "vanishes": vanishes }), code: i32::from(!vanishes) }
}

fn check_poly(rule: &TrekRule, p: &Poly) -> Result<Report, CliError> {
    let image = rule.apply(p)?;
    Ok(verdict(image.is_zero(), Some(&image)))
}

fn poly_list(key: &str, ps: &[Poly]) -> Report {
    Report::ok(lines(ps), json!({ key: strings(ps) }))
}

/// Runs one command.
pub fn run(cmd: &Command, stdin: &mut dyn Read) -> Result<Report, CliError> {
    match cmd {
        Command::Treks { input, i, j } => {
            let g = load_dag(input, stdin)?;
            let treks = enumerate_treks(&g, *i, *j)?;
            let mut text = String::new();
            for t in &treks {
                let _ = writeln!(text, "{}  {}", trek_path(t), t.monomial());
            }
            if treks.is_empty() {
                let _ = writeln!(text, "no treks between {i} and {j}");
            }
            let list: Vec<Value> = treks
                .iter()
                .map(|t| json!({"top": t.top, "left": t.left, "right": t.right, "monomial": t.monomial().to_string()}))
                .collect();
            Ok(Report::ok(text, json!({"i": i, "j": j, "treks": list})))
        }
        Command::Param { input } => {
            let g = load_dag(input, stdin)?;
            let rule = TrekRule::new(&g);
            let mut text = String::new();
            let mut images = Vec::new();
            for i in g.vertices() {
                for j in i..=g.n() {
                    let p = rule.image(i, j);
                    let _ = writeln!(text, "s({i},{j}) = {p}");
                    images.push(json!({"i": i, "j": j, "image": p.to_string()}));
                }
            }
            Ok(Report::ok(text, json!({"n": g.n(), "images": images})))
        }
        Command::Sample { input, seed } => {
            let g = load_dag(input, stdin)?;
            let theta = sample_omega(&g, *seed);
            let sigma = model_covariance(&g, &theta)?;
            let text = format!("{}sigma =\n{}", parameters_text(&theta), matrix_text(&sigma));
            let mut doc = parameters_json(&theta);
            doc["seed"] = json!(seed);
            doc["sigma"] = matrix_to_json(&sigma);
            Ok(Report::ok(text, doc))
        }
        Command::Identify { input, sigma, seed } => {
            if is_stdin(input.dag.as_ref()) && sigma.as_ref().is_some_and(|p| is_stdin(Some(p))) {
                return Err(CliError::Usage("the DAG and the covariance cannot both come from stdin".into()));
            }
            let g = load_dag(input, stdin)?;
            let (matrix, theta) = match (sigma, seed) {
                (Some(path), _) => {
                    let (name, text) = read_source(Some(path), stdin)?;
                    let value: Value = serde_json::from_str(&text)
                        .map_err(|e| CliError::Format { path: name.clone(), source: FormatError::Syntax(e.to_string()) })?;
                    let m = matrix_from_json(&value).map_err(|source| CliError::Format { path: name, source })?;
                    (m, None)
                }
                (None, Some(s)) => {
                    let theta = sample_omega(&g, *s);
                    (model_covariance(&g, &theta)?, Some(theta))
                }
                (None, None) => unreachable!("clap requires --sigma or --seed"),
            };
            let recovered = recover_parameters(&g, &matrix)?;
            let mut text = parameters_text(&recovered);
            let mut doc = parameters_json(&recovered);
            let mut code = 0;
            if let Some(theta) = theta {
                let exact = theta == recovered;
                let _ = writeln!(text, "round trip: {}", if exact { "exact" } else { "MISMATCH" });
                doc["round_trip_exact"] = json!(exact);
                code = i32::from(!exact);
            }
            Ok(Report { text, json: doc, code })
        }
        Command::Dsep { input, a, b, c } => {
            let g = load_dag(input, stdin)?;
            let (a, b, c) = (parse_set(a).map_err(usage)?, parse_set(b).map_err(usage)?, parse_set(c).map_err(usage)?);
            if a.is_empty() || b.is_empty() {
                return Err(CliError::Usage("--a and --b must be nonempty".into()));
            }
            let sep = d_separated(&g, &a, &b, &c)?;
            let text = format!(
                "{} and {} are {}d-separated given {}\n",
                describe_set(&a),
                describe_set(&b),
                if sep { "" } else { "not " },
                describe_set(&c)
            );
            Ok(Report::ok(text, json!({"a": a, "b": b, "c": c, "separated": sep})))
        }
        Command::CiIdeal { input, amax, cmax } => {
            if *amax == 0 {
                return Err(CliError::Usage("--amax must be at least 1".into()));
            }
            let g = load_dag(input, stdin)?;
            let stmts = enumerate_ci_statements(&g, *amax, *cmax);
            let mut text = String::new();
            let mut list = Vec::new();
            let mut minors = 0;
            for s in &stmts {
                let ms = ci_minor_polynomials(s);
                minors += ms.len();
                let _ = writeln!(text, "{s}");
                for m in &ms {
                    let _ = writeln!(text, "  {m}");
                }
                list.push(json!({"a": s.a(), "b": s.b(), "c": s.c(), "minors": strings(&ms)}));
            }
            let _ = writeln!(text, "{} statements, {minors} minors", stmts.len());
            Ok(Report::ok(text, json!({"amax": amax, "cmax": cmax, "statements": list})))
        }
        Command::Choke { input, i, j } => {
            let g = load_dag(input, stdin)?;
            let (iset, jset) = (parse_set(i).map_err(usage)?, parse_set(j).map_err(usage)?);
            if iset.is_empty() || jset.is_empty() {
                return Err(CliError::Usage("--i and --j must be nonempty".into()));
            }
            let report = choke_points(&g, &iset, &jset)?;
            let side = |s: Side| match s {
                Side::ISide => "I-side",
                Side::JSide => "J-side",
                Side::Both => "both sides",
            };
            let mut text = String::new();
            if report.trivially_vanishing {
                let _ = writeln!(text, "no treks between {} and {}", describe_set(&iset), describe_set(&jset));
            } else if report.points.is_empty() {
                let _ = writeln!(text, "no choke points");
            }
            for &(v, s) in &report.points {
                let _ = writeln!(text, "{v} {}", side(s));
            }
            let points: Vec<Value> = report.points.iter().map(|&(v, s)| json!({"vertex": v, "side": side(s)})).collect();
            Ok(Report::ok(text, json!({"points": points, "trivially_vanishing": report.trivially_vanishing})))
        }
        Command::Tetrads { input } => {
            let g = load_dag(input, stdin)?;
            Ok(poly_list("tetrads", &all_vanishing_tetrads(&g)))
        }
        Command::Verify { input, poly } => {
            if is_stdin(input.dag.as_ref()) && is_stdin(poly.as_ref()) {
                return Err(CliError::Usage("the DAG and the polynomial cannot both come from stdin".into()));
            }
            let g = load_dag(input, stdin)?;
            let p = load_poly(poly.as_deref(), stdin)?;
            check_poly(&TrekRule::new(&g), &p)
        }
        Command::TreeGens { input } => {
            let g = load_dag(input, stdin)?;
            let gens = tree_ideal_generators(&g)?;
            let text = format!("linear:\n{}quadratic:\n{}", indent(&gens.linear), indent(&gens.quadratic));
            Ok(Report::ok(text, json!({"linear": strings(&gens.linear), "quadratic": strings(&gens.quadratic)})))
        }
        Command::Facets { input } => {
            let g = load_dag(input, stdin)?;
            let sys = polytope_system(&g)?;
            // nonnegativity rows come first, then the equality, then the rest
            let nonneg = sys.coordinates.len();
            let mut text = format!("coordinates: {}\n", sys.coordinates.join(" "));
            for (c, r) in &sys.inequalities[..nonneg] {
                let _ = writeln!(text, "{}", sys.render_row(c, ">=", *r));
            }
            for (c, r) in &sys.equalities {
                let _ = writeln!(text, "{}", sys.render_row(c, "=", *r));
            }
            for (c, r) in &sys.inequalities[nonneg..] {
                let _ = writeln!(text, "{}", sys.render_row(c, ">=", *r));
            }
            let rows = |rs: &[(Vec<i64>, i64)]| -> Vec<Value> {
                rs.iter().map(|(c, r)| json!({"coefficients": c, "rhs": r})).collect()
            };
            let doc = json!({
                "coordinates": sys.coordinates,
                "equalities": rows(&sys.equalities),
                "inequalities": rows(&sys.inequalities),
            });
            Ok(Report::ok(text, doc))
        }
        Command::TreeDegree { input } => {
            let g = load_dag(input, stdin)?;
            let d = tree_degree(&g)?;
            Ok(Report::ok(format!("{d}\n"), json!({"degree": d.to_string()})))
        }
        Command::PolytopeOracle { input, max_n } => {
            let g = load_dag(input, stdin)?;
            if g.n() > *max_n {
                return Err(CliError::Domain(format!("tree has {} vertices, above --max-n {max_n}", g.n())));
            }
            let sys = polytope_system(&g)?;
            let o = polytope_vertex_oracle(&g)?;
            let mut text = format!("coordinates: {}\n", sys.coordinates.join(" "));
            for v in &o.vertices {
                let _ = writeln!(text, "vertex {}", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
            let _ = writeln!(text, "dimension {}", o.dimension);
            let _ = writeln!(text, "normalized volume {}", o.normalized_volume);
            let vertices: Vec<Vec<String>> = o.vertices.iter().map(|v| v.iter().map(rational_string).collect()).collect();
            let doc = json!({
                "coordinates": sys.coordinates,
                "vertices": vertices,
                "dimension": o.dimension,
                "normalized_volume": o.normalized_volume.to_string(),
                "simplices": o.simplices,
            });
            Ok(Report::ok(text, doc))
        }
        Command::Grade { input, hidden, poly } => {
            if is_stdin(input.dag.as_ref()) && poly.as_ref().is_some_and(|p| is_stdin(Some(p))) {
                return Err(CliError::Usage("the DAG and the polynomial cannot both come from stdin".into()));
            }
            let g = load_dag(input, stdin)?;
            let h = parse_set(hidden).map_err(usage)?;
            let grading = UpstreamGrading::new(&g, VertexPartition::new(g.n(), &h)?)?;
            let show = |d: &Grade| match d {
                Grade::Homogeneous((a, b)) => json!([a, b]),
                Grade::Zero => json!("zero"),
                other => json!(other.to_string()),
            };
            if let Some(path) = poly {
                let p = load_poly(Some(path), stdin)?;
                let d = upstream_degree(&grading, &p)?;
                let code = i32::from(matches!(d, Grade::Mixed { .. }));
                return Ok(Report { text: format!("{d}\n"), json: json!({"hidden": h, "degree": show(&d)}), code });
            }
            let rule = TrekRule::new(&g);
            let mut text = String::new();
            let mut rows = Vec::new();
            for i in g.vertices() {
                for j in i..=g.n() {
                    let own = upstream_degree(&grading, &Poly::sigma(i, j))?;
                    let image = upstream_degree(&grading, rule.image(i, j))?;
                    let _ = writeln!(text, "s({i},{j}) {own} image {image}");
                    rows.push(json!({"i": i, "j": j, "degree": show(&own), "image": show(&image)}));
                }
            }
            Ok(Report::ok(text, json!({"hidden": h, "entries": rows})))
        }
        Command::HiddenTreeGens { input } => {
            let g = load_dag(input, stdin)?;
            Ok(poly_list("tetrads", &hidden_tree_generators(&g)?))
        }
        Command::Schubert { w, n } => {
            if *n > SCHUBERT_MAX_N {
                return Err(CliError::Domain(format!("--n {n} exceeds the supported maximum {SCHUBERT_MAX_N}")));
            }
            let ones = parse_pairs(w).map_err(usage)?;
            let w = PartialPermutation::new(*n, &ones)?;
            let (sg, gens) = schubert_generators(&w)?;
            let labels: Vec<String> = sg.dag.vertices().map(|v| format!("{v}={}", sg.dag.label(v))).collect();
            let text = format!("# vertices {}\n{}", labels.join(" "), lines(&gens));
            let doc = json!({
                "n": n,
                "ones": ones,
                "labels": sg.dag.vertices().map(|v| sg.dag.label(v)).collect::<Vec<_>>(),
                "hidden": sg.hidden,
                "edges": sg.dag.edges(),
                "generators": strings(&gens),
            });
            Ok(Report::ok(text, doc))
        }
        Command::Classical { kind, p, m, poly } => {
            let kind = match kind {
                Kind::FactorAnalysis => match (p, m) {
                    (Some(p), Some(m)) => ClassicalKind::FactorAnalysis { p: *p, m: *m },
                    _ => return Err(CliError::Usage("factor_analysis needs --p and --m".into())),
                },
                Kind::DoubledCaterpillar | Kind::DoubledSnowflake if p.is_some() || m.is_some() => {
                    return Err(CliError::Usage("--p and --m only apply to factor_analysis".into()))
                }
                Kind::DoubledCaterpillar => ClassicalKind::DoubledCaterpillar,
                Kind::DoubledSnowflake => ClassicalKind::DoubledSnowflake,
            };
            let model = construct_classical_graph(kind)?;
            if let Some(path) = poly {
                let q = load_poly(Some(path), stdin)?;
                let q = model.in_vertex_ids(&q).ok_or_else(|| {
                    CliError::Domain("the polynomial uses an index that is not an observed label".into())
                })?;
                return check_poly(&TrekRule::new(&model.dag), &q);
            }
            let text = format!("{}# hidden {}\n", print_dag(&model.dag), describe_set(model.partition.hidden()));
            let doc = json!({
                "labels": model.dag.vertices().map(|v| model.dag.label(v)).collect::<Vec<_>>(),
                "edges": model.dag.edges(),
                "hidden": model.partition.hidden(),
                "hidden_blocks": model.hidden_blocks,
            });
            Ok(Report::ok(text, doc))
        }
    }
}

fn indent(ps: &[Poly]) -> String {
    ps.iter().map(|p| format!("  {p}\n")).collect()
}
