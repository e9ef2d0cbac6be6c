//! `lctpoly`: batch front end for the exact LCT-polytope toolkit.
//! JSON in, JSON/tables/SVG out; every randomized command takes an
//! explicit seed and output bytes are a function of (input, seed, caps).

mod io;
mod plot;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lctpoly_core::chainlab::{
    is_increasing, line_stabilization, union_closedness_check, unstable_points, LineQuery,
    ParametricChain,
};
use lctpoly_core::coeffsets::{
    check_idempotence, derived_set, script_d, script_d_inverse, sum_closure_probe,
    trivial_decompositions, Caps, FnFamily, SetExpr,
};
use lctpoly_core::error::{ChainError, GeomError, LctError, ParseError, SetError};
use lctpoly_core::exactgeom::HPolytope;
use lctpoly_core::lctcore::{
    build_lct_polytope, classify_facets, lct_along_ray, lct_segment, local_vertex_function,
    ResolutionDatum, SegmentProblem,
};
use lctpoly_core::rational::{parse_rat, rat_to_string, Interval, Rat};
use lctpoly_core::toricgen::{oracle_stability, toric_datum, MonomialDivisorSet};

use io::*;

/// Error category determines the exit code: schema errors exit 2,
/// precondition violations exit 3.
#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Precondition(String),
}

impl CliError {
    pub fn schema(e: impl std::fmt::Display) -> Self {
        CliError::Schema(e.to_string())
    }

    pub fn precondition(e: impl std::fmt::Display) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<LctError> for CliError {
    fn from(e: LctError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<SetError> for CliError {
    fn from(e: SetError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Svg,
}

#[derive(Parser)]
#[command(name = "lctpoly", version, about = "exact LCT-polytope toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file; stdout when omitted.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Output format (plot always emits SVG).
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Clone)]
struct CapsArgs {
    /// Largest denominator m in derived-set enumerations.
    #[arg(long, default_value_t = 6)]
    m_cap: u64,
    /// Largest number of expanded terms in sum enumerations.
    #[arg(long, default_value_t = 6)]
    term_cap: usize,
}

impl CapsArgs {
    fn caps(&self) -> Caps {
        Caps {
            m_cap: self.m_cap,
            term_cap: self.term_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// LCT-polytope construction and inspection.
    Polytope {
        #[command(subcommand)]
        cmd: PolytopeCmd,
    },
    /// Thresholds along rays and segments.
    Lct {
        #[command(subcommand)]
        cmd: LctCmd,
    },
    /// Coefficient-set algebra.
    Sets {
        #[command(subcommand)]
        cmd: SetsCmd,
    },
    /// Monomial-divisor ground truth generator.
    Toric {
        /// Divisor exponent vectors, e.g. "2,0;0,3".
        #[arg(long)]
        exponents: String,
        /// Weight-sum bound for the enumerated toric valuations.
        #[arg(long, default_value_t = 10)]
        bound: u32,
        /// Also report polytope stability over these bounds, e.g. "1,2,4,8".
        #[arg(long)]
        stability: Option<String>,
    },
    /// Parametric chain analysis.
    Chain {
        #[command(subcommand)]
        cmd: ChainCmd,
    },
    /// Randomized exact verification of the convex-geometry lemmas.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Deterministic SVG rendering of 2-d polytopes and chain snapshots.
    Plot {
        #[arg(short, long)]
        input: PathBuf,
        /// Chain snapshots to overlay, e.g. "1,2,5".
        #[arg(long)]
        snapshots: Option<String>,
        /// Marker points "x,y" (repeatable).
        #[arg(long)]
        marker: Vec<String>,
    },
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Builds the LCT-polytope of a resolution datum.
    Build {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Labels every facet as LCT facet or coordinate facet.
    Facets {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Exact coordinate projection dropping one axis.
    Project {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        axis: usize,
    },
    /// Exact V-representation.
    Vertices {
        #[arg(short, long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum LctCmd {
    /// Threshold along a ray from a base point.
    Ray {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Piecewise-linear threshold along a coefficient segment.
    Segment {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// First linear piece of the local vertex function.
    Local {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        lambda0: String,
    },
}

#[derive(Subcommand)]
enum SetsCmd {
    /// Descending chain condition with certificate.
    Dcc {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Ascending chain condition with certificate.
    Acc {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Least element of a DCC set.
    Min {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Finite sums under a value bound.
    Sum {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        value_bound: String,
        #[arg(long, default_value_t = 6)]
        term_bound: usize,
        #[arg(long, default_value_t = 50)]
        m_cap: u64,
    },
    /// Derived set D(F,[a,c]) at a cut, or its union over a grid.
    Derived {
        #[arg(short, long)]
        input: PathBuf,
        /// Single cut c in (a, b].
        #[arg(long, conflicts_with = "grid")]
        cut: Option<String>,
        /// Comma-separated cut grid for the union over subintervals.
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Inverse image of a finite subset of the derived set.
    Dinv {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Multisets of derived values summing identically to K.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        k: String,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Capped idempotence check of the derived-set operator.
    Idem {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        caps: CapsArgs,
    },
}

#[derive(Subcommand)]
enum ChainCmd {
    /// Inclusion monotonicity over an m range.
    Analyze {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        m_start: u64,
        #[arg(long, default_value_t = 50)]
        m_end: u64,
    },
    /// Stabilization verdict for a line query.
    Stabilize {
        #[arg(short, long)]
        input: PathBuf,
        /// Base point "x1,x2,...".
        #[arg(long)]
        base: String,
        /// Direction "d1,d2,...".
        #[arg(long)]
        direction: String,
        #[arg(long, default_value_t = 1)]
        m_start: u64,
        #[arg(long, default_value_t = 50)]
        m_end: u64,
    },
    /// Exact unstable points with certificates.
    Unstable {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        m_start: u64,
        #[arg(long, default_value_t = 50)]
        m_end: u64,
        #[arg(long, default_value_t = 3)]
        resolution: u32,
    },
    /// Ray-sampling closedness check for the union of the chain.
    UnionCheck {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        rays: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        m_start: u64,
        #[arg(long, default_value_t = 60)]
        m_end: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Escaping-ray construction on randomized decreasing chains.
    ConeLemma {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Facet-cone identity on randomized datums.
    FacetCone {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

enum Output {
    Json(Value),
    Svg(String),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|e| CliError::Schema(format!("bad integer {p:?}: {e}")))
        })
        .collect()
}

fn parse_grid(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|p| parse_rat(p.trim()).map_err(CliError::schema))
        .collect()
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Polytope { cmd } => match cmd {
            PolytopeCmd::Build { input } => {
                let datum: ResolutionDatum = read_json(input)?;
                Ok(Output::Json(polytope_json(&build_lct_polytope(&datum))))
            }
            PolytopeCmd::Facets { input } => {
                let p: HPolytope = read_json(input)?;
                Ok(Output::Json(facets_json(&classify_facets(&p)?)))
            }
            PolytopeCmd::Project { input, axis } => {
                let p: HPolytope = read_json(input)?;
                Ok(Output::Json(polytope_json(&p.project(*axis)?)))
            }
            PolytopeCmd::Vertices { input } => {
                let p: HPolytope = read_json(input)?;
                let v = p.vertex_enumerate()?;
                Ok(Output::Json(vrep_json(p.dim_ambient(), v)))
            }
        },
        Command::Lct { cmd } => match cmd {
            LctCmd::Ray { input } => {
                #[derive(serde::Deserialize)]
                struct RayInput {
                    datum: ResolutionDatum,
                    direction: Vec<String>,
                    #[serde(default)]
                    base: Option<Vec<String>>,
                }
                let inp: RayInput = read_json(input)?;
                let dir = parse_vec_strings(&inp.direction)?;
                let base = match &inp.base {
                    Some(b) => parse_vec_strings(b)?,
                    None => lctpoly_core::exactgeom::QVector::zero(inp.datum.s()),
                };
                let t = lct_along_ray(&inp.datum, &dir, &base)?;
                Ok(Output::Json(json!({
                    "threshold": threshold_json(&t),
                })))
            }
            LctCmd::Segment { input } => {
                let prob = read_segment_problem(input)?;
                let seg = lct_segment(&prob)?;
                Ok(Output::Json(segment_json(&seg)))
            }
            LctCmd::Local { input, lambda0 } => {
                let prob = read_segment_problem(input)?;
                let lambda0 = parse_rat_arg(lambda0)?;
                let (t_fn, c) = local_vertex_function(&prob, &lambda0)?;
                Ok(Output::Json(json!({
                    "t_of_lambda": affine_with_domain_json(&t_fn),
                    "c": rat_to_string(&c),
                })))
            }
        },
        Command::Sets { cmd } => run_sets(cmd),
        Command::Toric {
            exponents,
            bound,
            stability,
        } => {
            let mds = parse_monomial_set(exponents)?;
            let datum = toric_datum(&mds, *bound);
            match stability {
                None => Ok(Output::Json(
                    serde_json::to_value(&datum).map_err(CliError::schema)?,
                )),
                Some(raw) => {
                    let bounds: Vec<u32> = parse_u64_list(raw)?
                        .into_iter()
                        .map(|b| b as u32)
                        .collect();
                    let report = oracle_stability(&mds, &bounds)?;
                    Ok(Output::Json(json!({
                        "datum": serde_json::to_value(&datum).map_err(CliError::schema)?,
                        "stability": {
                            "bounds": report.bounds,
                            "changed_at": report.changed_at,
                            "stabilized_at": report.stabilized_at,
                            "final_polytope": polytope_json(&report.final_polytope),
                        },
                    })))
                }
            }
        }
        Command::Chain { cmd } => run_chain(cmd),
        Command::Verify { cmd } => match cmd {
            VerifyCmd::ConeLemma { trials, seed } => {
                Ok(Output::Json(verify::cone_lemma(*trials, *seed)?))
            }
            VerifyCmd::FacetCone { trials, seed } => {
                Ok(Output::Json(verify::facet_cone(*trials, *seed)?))
            }
        },
        Command::Plot {
            input,
            snapshots,
            marker,
        } => {
            let raw = std::fs::read_to_string(input)
                .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", input.display())))?;
            let markers: Result<Vec<_>, _> = marker.iter().map(|m| parse_vector_arg(m)).collect();
            let markers = markers?;
            // chain inputs carry alpha/beta rows; polytopes carry ineqs
            if raw.contains("\"ineqs\"") {
                let p: HPolytope = serde_json::from_str(&raw).map_err(CliError::schema)?;
                Ok(Output::Svg(plot::plot_polytope(&p, &markers)?))
            } else {
                let chain: ParametricChain =
                    serde_json::from_str(&raw).map_err(CliError::schema)?;
                let snaps = match snapshots {
                    Some(s) => parse_u64_list(s)?,
                    None => vec![1, 2, 5],
                };
                Ok(Output::Svg(plot::plot_chain(&chain, &snaps, &markers)?))
            }
        }
    }
}

fn read_segment_problem(path: &PathBuf) -> Result<SegmentProblem, CliError> {
    #[derive(serde::Deserialize)]
    struct SegmentInput {
        datum: ResolutionDatum,
        base_coeffs: Vec<FnWire>,
        test_column: usize,
        interval: [String; 2],
    }
    let inp: SegmentInput = read_json(path)?;
    let interval = Interval::new(
        parse_rat(&inp.interval[0]).map_err(CliError::schema)?,
        parse_rat(&inp.interval[1]).map_err(CliError::schema)?,
    )
    .map_err(CliError::schema)?;
    let base: Result<Vec<_>, _> = inp
        .base_coeffs
        .iter()
        .map(|f| f.to_affine(&interval))
        .collect();
    Ok(SegmentProblem::new(
        inp.datum,
        base?,
        inp.test_column,
        interval,
    )?)
}

fn parse_monomial_set(exponents: &str) -> Result<MonomialDivisorSet, CliError> {
    let divisors: Result<Vec<Vec<u32>>, CliError> = exponents
        .split(';')
        .map(|d| {
            d.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u32>()
                        .map_err(|err| CliError::Schema(format!("bad exponent {e:?}: {err}")))
                })
                .collect()
        })
        .collect();
    let divisors = divisors?;
    let n = divisors.first().map_or(0, |d| d.len());
    Ok(MonomialDivisorSet::new(n, divisors)?)
}

fn run_sets(cmd: &SetsCmd) -> Result<Output, CliError> {
    match cmd {
        SetsCmd::Dcc { input } | SetsCmd::Acc { input } => {
            let e: SetExpr = read_json(input)?;
            e.validate()?;
            let (key, v) = match cmd {
                SetsCmd::Dcc { .. } => ("dcc", e.is_dcc()),
                _ => ("acc", e.is_acc()),
            };
            let witness = match &v.certificate {
                lctpoly_core::coeffsets::ChainCertificate::Witness { chain, .. } => {
                    Some(chain.iter().map(rat_to_string).collect::<Vec<_>>())
                }
                _ => None,
            };
            Ok(Output::Json(json!({ key: v.holds, "witness": witness })))
        }
        SetsCmd::Min { input } => {
            let e: SetExpr = read_json(input)?;
            e.validate()?;
            Ok(Output::Json(json!({
                "min": rat_to_string(&e.min_element()?),
            })))
        }
        SetsCmd::Sum {
            input,
            value_bound,
            term_bound,
            m_cap,
        } => {
            let e: SetExpr = read_json(input)?;
            e.validate()?;
            let bound = parse_rat_arg(value_bound)?;
            let probe = sum_closure_probe(&e, &bound, *term_bound, *m_cap)?;
            Ok(Output::Json(json!({
                "values": probe.values.iter().map(rat_to_string).collect::<Vec<_>>(),
                "complete": probe.complete,
            })))
        }
        SetsCmd::Derived {
            input,
            cut,
            grid,
            caps,
        } => {
            let family: FnFamily = read_json(input)?;
            let result = match (cut, grid) {
                (Some(c), None) => derived_set(&family, &parse_rat_arg(c)?, &caps.caps())?,
                (None, Some(g)) => script_d(&family, &parse_grid(g)?, &caps.caps())?,
                (None, None) => {
                    let hi = family.interval().hi.clone();
                    derived_set(&family, &hi, &caps.caps())?
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            Ok(Output::Json(derived_json(&result)))
        }
        SetsCmd::Dinv { input, caps } => {
            #[derive(serde::Deserialize)]
            struct DinvInput {
                family: FnFamily,
                d0: Vec<FnWire>,
            }
            let inp: DinvInput = read_json(input)?;
            let interval = inp.family.interval().clone();
            let d0: Result<Vec<_>, _> = inp.d0.iter().map(|f| f.to_affine(&interval)).collect();
            let members = script_d_inverse(&d0?, &inp.family, &caps.caps())?;
            Ok(Output::Json(inverse_json(&members)))
        }
        SetsCmd::Decompose { input, k, caps } => {
            let family: FnFamily = read_json(input)?;
            let k = parse_rat_arg(k)?;
            let decs = trivial_decompositions(&k, &family, &caps.caps())?;
            let complete = family.parametric().is_empty();
            Ok(Output::Json(decompositions_json(&k, &decs, complete)))
        }
        SetsCmd::Idem { input, grid, caps } => {
            let family: FnFamily = read_json(input)?;
            let grid = match grid {
                Some(g) => parse_grid(g)?,
                None => vec![family.interval().hi.clone()],
            };
            let report = check_idempotence(&family, &caps.caps(), &grid)?;
            Ok(Output::Json(
                serde_json::to_value(&report).map_err(CliError::schema)?,
            ))
        }
    }
}

fn run_chain(cmd: &ChainCmd) -> Result<Output, CliError> {
    match cmd {
        ChainCmd::Analyze {
            input,
            m_start,
            m_end,
        } => {
            let chain: ParametricChain = read_json(input)?;
            let report = is_increasing(&chain, *m_start..=*m_end)?;
            Ok(Output::Json(
                serde_json::to_value(&report).map_err(CliError::schema)?,
            ))
        }
        ChainCmd::Stabilize {
            input,
            base,
            direction,
            m_start,
            m_end,
        } => {
            let chain: ParametricChain = read_json(input)?;
            let query = LineQuery::new(parse_vector_arg(base)?, parse_vector_arg(direction)?)?;
            let verdict = line_stabilization(&chain, &query, *m_start..=*m_end)?;
            Ok(Output::Json(json!({
                "base": vector_json(&query.base),
                "direction": vector_json(&query.direction),
                "verdict": serde_json::to_value(&verdict).map_err(CliError::schema)?,
            })))
        }
        ChainCmd::Unstable {
            input,
            m_start,
            m_end,
            resolution,
        } => {
            let chain: ParametricChain = read_json(input)?;
            let report = unstable_points(&chain, *m_start..=*m_end, *resolution)?;
            Ok(Output::Json(
                serde_json::to_value(&report).map_err(CliError::schema)?,
            ))
        }
        ChainCmd::UnionCheck {
            input,
            rays,
            seed,
            m_start,
            m_end,
        } => {
            let chain: ParametricChain = read_json(input)?;
            let report = union_closedness_check(&chain, *rays, *seed, *m_start..=*m_end)?;
            Ok(Output::Json(
                serde_json::to_value(&report).map_err(CliError::schema)?,
            ))
        }
    }
}

fn main() -> ExitCode {
    // LCTPOLY_THREADS caps internal parallelism; validation failures are
    // schema errors.
    if let Ok(raw) = std::env::var("LCTPOLY_THREADS") {
        match raw.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: LCTPOLY_THREADS must be a positive integer, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let bytes = match (&output, cli.format) {
                (Output::Svg(svg), _) => svg.clone().into_bytes(),
                (Output::Json(v), Format::Json) => {
                    let mut s = serde_json::to_string_pretty(v).expect("serializable");
                    s.push('\n');
                    s.into_bytes()
                }
                (Output::Json(v), Format::Table) => io::to_table(v).into_bytes(),
                (Output::Json(_), Format::Svg) => {
                    eprintln!("error: svg format is only available for plot");
                    return ExitCode::from(2);
                }
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, bytes) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(&bytes).expect("stdout");
                }
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Schema(msg)) => {
            eprintln!("error (schema): {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Precondition(msg)) => {
            eprintln!("error (precondition): {msg}");
            ExitCode::from(3)
        }
    }
}
