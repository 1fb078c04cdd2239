//! Command-line front end. [`run`] parses an argument vector and returns the
//! exit status with everything that would be printed, so tests can drive it
//! without spawning a process.
//!
//! Exit status 0 carries the result on stdout, 2 a usage error on stderr, and
//! 1 a domain error as `{"error": code, "detail": message}` on stdout.

use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use hypermatch::baranyai::{decompose, uniform_cross_edges};
use hypermatch::bounds::{eval_bound, solve_a_k, BoundParams, Formula};
use hypermatch::combinatorics::{fmt_rational, parse_rational, ratio};
use hypermatch::constructions::{build_h_prime, build_h_s};
use hypermatch::fractional::{
    check_duality, max_fractional_matching, min_fractional_cover, transform_cover, FractionalCover,
};
use hypermatch::matching::{has_matching_of_size, max_matching, Matching};
use hypermatch::thresholds::{threshold_exact, ThresholdQuery, DEFAULT_EDGE_CAP};
use hypermatch::{Error, Hypergraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "hypermatch",
    version,
    about = "Exact matchings in k-uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a construction in hypergraph text format
    Gen(GenArgs),
    /// Maximum fractional or integer matching
    Match(MatchArgs),
    /// Minimum fractional vertex cover
    Cover { file: String },
    /// Compare the fractional matching and cover optima
    Duality { file: String },
    /// Partition all l-subsets of 0..n into perfect matchings
    Baranyai {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
    },
    /// Cross edges at S = {0, .., s-size−1} with a uniform count per vertex
    Crossedges {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        s_size: usize,
        #[arg(long, value_parser = rational)]
        eta: BigRational,
    },
    /// Evaluate a threshold formula
    Bounds(BoundsArgs),
    /// Root a_k of the defining equation on (0, 1/(k+1))
    Ak {
        #[arg(long)]
        k: u64,
        #[arg(long, value_parser = rational, default_value = "1/1000000000000")]
        tol: BigRational,
    },
    /// Exact degree threshold by exhaustive search
    Threshold(ThresholdArgs),
    /// Shift a fractional cover onto the link of a vertex set
    Transform(TransformArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Hs,
    Hprime,
    Complete,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: Construction,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Matching size excluded by H(s)
    #[arg(long, required_if_eq("kind", "hs"))]
    s: Option<usize>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["frac", "int"])))]
struct MatchArgs {
    file: String,
    #[arg(long)]
    frac: bool,
    #[arg(long)]
    int: bool,
    /// Stop once a matching of this size is found
    #[arg(long, conflicts_with = "frac")]
    target: Option<usize>,
}

#[derive(Args)]
struct BoundsArgs {
    /// conj11, thm12, mr, hps, eq1, conj15_m0, thm14_m0, conj12, thm18, thm19, base_k2, xi
    #[arg(long)]
    formula: String,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, conflicts_with = "a")]
    s: Option<u64>,
    #[arg(long, value_parser = rational)]
    a: Option<BigRational>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// integer matching
    M,
    /// fractional matching
    F,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    s: usize,
    /// Fractional target size; defaults to s
    #[arg(long, value_parser = rational)]
    frac_target: Option<BigRational>,
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
    edge_cap: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct TransformArgs {
    file: String,
    /// Vertices of L, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    l: Vec<usize>,
    /// Cover weights per vertex, comma separated; defaults to a minimum cover
    #[arg(long, value_delimiter = ',', value_parser = rational)]
    weights: Option<Vec<BigRational>>,
}

fn rational(text: &str) -> Result<BigRational, String> {
    parse_rational(text).ok_or_else(|| format!("`{text}` is not a rational of the form p/q"))
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Output = Result<String, Failure>;

fn q(x: &BigRational) -> Value {
    Value::String(fmt_rational(x))
}

fn load(path: &str) -> Result<Hypergraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    Ok(Hypergraph::parse(&text)?)
}

fn pretty(v: Value) -> Output {
    Ok(format!("{v}\n"))
}

fn cover_json(w: &FractionalCover) -> Value {
    let weights: Map<String, Value> = w
        .weights()
        .iter()
        .enumerate()
        .map(|(v, x)| (v.to_string(), q(x)))
        .collect();
    json!({ "size": q(w.size()), "weights": weights })
}

fn matching_edges(g: &Hypergraph, m: &Matching) -> Value {
    json!(m.edges(g).collect::<Vec<_>>())
}

fn gen(a: GenArgs) -> Output {
    let g = match a.kind {
        Construction::Hs => build_h_s(a.n, a.k, a.s.expect("required by clap"))?,
        Construction::Hprime => build_h_prime(a.n, a.k)?,
        Construction::Complete => Hypergraph::complete(a.n, a.k)?,
    };
    Ok(g.serialize())
}

fn matching(a: MatchArgs) -> Output {
    let g = load(&a.file)?;
    if a.frac {
        let f = max_fractional_matching(&g);
        let weights: Vec<Value> = (0..g.edge_count())
            .map(|i| json!({ "edge": g.edge(i), "weight": q(f.weight(i)) }))
            .collect();
        return pretty(json!({ "size": q(f.size()), "weights": weights }));
    }
    match a.target {
        None => {
            let m = max_matching(&g);
            pretty(json!({ "size": m.size(), "edges": matching_edges(&g, &m), "optimal": true }))
        }
        Some(s) => match has_matching_of_size(&g, s) {
            Some(m) => pretty(json!({
                "size": m.size(),
                "edges": matching_edges(&g, &m),
                "optimal": false,
                "target_met": true,
            })),
            None => {
                let m = max_matching(&g);
                pretty(json!({
                    "size": m.size(),
                    "edges": matching_edges(&g, &m),
                    "optimal": true,
                    "target_met": false,
                }))
            }
        },
    }
}

fn bounds(a: BoundsArgs) -> Output {
    let formula: Formula = a.formula.parse()?;
    let mut p = BoundParams::new(a.k, a.d);
    if let Some(n) = a.n {
        p = p.with_n(n);
    }
    if let Some(s) = a.s {
        p = p.with_size(s);
    }
    if let Some(x) = a.a {
        p = p.with_fraction(x);
    }
    let v = eval_bound(formula, &p)?;
    let mut out = json!({ "formula": formula.id(), "coefficient": q(&v.coefficient) });
    if let Some(abs) = &v.absolute {
        out["absolute"] = q(abs);
    }
    pretty(out)
}

fn threshold(a: ThresholdArgs) -> Output {
    let query = match a.kind {
        Kind::M => {
            if a.frac_target.is_some() {
                return Err(
                    Error::Domain("--frac-target applies only to `threshold f`".into()).into(),
                );
            }
            ThresholdQuery::integer(a.k, a.n, a.d, a.s)
        }
        Kind::F => {
            let t = a.frac_target.unwrap_or_else(|| ratio(a.s as i64, 1));
            ThresholdQuery::fractional(a.k, a.n, a.d, t)
        }
    }
    .edge_cap(a.edge_cap)
    .workers(a.workers);
    let start = Instant::now();
    let r = threshold_exact(&query)?;
    let runtime_ms = start.elapsed().as_millis() as u64;
    pretty(json!({
        "value": r.value,
        "witness": r.witness.map(|h| h.serialize()),
        "checked_count": r.checked_count,
        "runtime_ms": runtime_ms,
    }))
}

fn transform(a: TransformArgs) -> Output {
    let g = load(&a.file)?;
    let w = match a.weights {
        Some(weights) => FractionalCover::new(&g, weights)?,
        None => min_fractional_cover(&g),
    };
    let t = transform_cover(&g, &w, &VertexSet::new(a.l))?;
    let weights: Map<String, Value> = t
        .index_map
        .iter()
        .zip(t.cover.weights())
        .map(|(old, x)| (old.to_string(), q(x)))
        .collect();
    pretty(json!({
        "input_size": q(w.size()),
        "link_weight": q(&t.link_weight),
        "size": q(t.cover.size()),
        "weights": weights,
        "closure_link_edges": t.closure_link.edge_count(),
        "feasible": t.feasible,
    }))
}

fn dispatch(command: Command) -> Output {
    match command {
        Command::Gen(a) => gen(a),
        Command::Match(a) => matching(a),
        Command::Cover { file } => pretty(cover_json(&min_fractional_cover(&load(&file)?))),
        Command::Duality { file } => {
            let r = check_duality(&load(&file)?);
            pretty(json!({ "primal": q(&r.primal), "dual": q(&r.dual), "equal": r.equal }))
        }
        Command::Baranyai { n, l } => {
            let dec = decompose(n, l)?;
            dec.verify()?;
            pretty(json!(dec.matchings))
        }
        Command::Crossedges {
            n,
            k,
            l,
            s_size,
            eta,
        } => {
            let s = VertexSet::new(0..s_size);
            let set = uniform_cross_edges(n, k, l, &s, &eta)?;
            let counts = set.per_vertex_counts(&s);
            pretty(json!({ "target": set.target, "per_vertex_counts": counts, "edges": set.edges }))
        }
        Command::Bounds(a) => bounds(a),
        Command::Ak { k, tol } => {
            let r = solve_a_k(k, &tol)?;
            pretty(json!({
                "k": k,
                "a_k": r.a_f64(),
                "k_a_k": r.k_a_f64(),
                "bracket": [q(&r.lo), q(&r.hi)],
                "iterations": r.iterations,
            }))
        }
        Command::Threshold(a) => threshold(a),
        Command::Transform(a) => transform(a),
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(failure) => {
            let (code, detail) = match failure {
                Failure::Domain(e) => (e.code(), e.to_string()),
                Failure::Io(detail) => ("io", detail),
            };
            Outcome {
                code: 1,
                stdout: format!("{}\n", json!({ "error": code, "detail": detail })),
                stderr: String::new(),
            }
        }
    }
}
