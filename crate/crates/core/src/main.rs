//! Command-line front end: decomposition trees, rectangle tensoring, the
//! multiplicity oracle, Q-system evaluation/checks/witnesses, growth
//! analysis, and Kostka numbers, with reproducible text/JSON/DOT output.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error (non-simply-laced
//! tree request, inexact division, bad input data), 4 search budget
//! exhausted.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;

use krchar::growth::{max_growth, GrowthError};
use krchar::kr::{admissible_configs, kr_multiplicity, FactorList, Support};
use krchar::lie::{AlgebraSpec, CartanData, Weight};
use krchar::qsystem::{kr_initial_data, perturb_initial, QError, QSystem, Witness};
use krchar::rect::{kostka, rect_decompose, Rectangle};
use krchar::render;
use krchar::ring::{Character, ReprRing, RingError};
use krchar::tree::{build_tree, TreeError};

#[derive(Parser)]
#[command(
    name = "krchar",
    about = "Exact decompositions of Kirillov-Reshetikhin-type modules and Q-system characters",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decomposition tree of a tensor product of KR-type modules
    /// (simply-laced algebras).
    Decompose(DecomposeArgs),
    /// Decompose a tensor product of rectangular sl_n representations.
    TensorRect(TensorRectArgs),
    /// Tensor two irreducible characters in the representation ring.
    Tensor(TensorArgs),
    /// Brute-force multiplicity from the raw fermionic sum (all types).
    Oracle(OracleArgs),
    /// Evaluate a Q-system character Q_m(l).
    Qsystem(QsystemArgs),
    /// Verify the Q-system relations up to a level.
    QsystemCheck(QsystemCheckArgs),
    /// Perturb KR initial data and search for a negative-coefficient witness.
    QsystemWitness(QsystemWitnessArgs),
    /// Maximal path-type growth exponent and dimension degree for T(l).
    Growth(GrowthArgs),
    /// Kostka number from tensoring single columns.
    Kostka(KostkaArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    algebra: String,
    /// Node index l of the fundamental weight (single factor W_m(l)).
    #[arg(long, conflicts_with = "factors")]
    weight: Option<usize>,
    /// Coefficient m for the single factor.
    #[arg(long, requires = "weight")]
    m: Option<i64>,
    /// Multi-factor form: `4x2,2x1` for W_2(4) (x) W_1(2).
    #[arg(long)]
    factors: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    max_depth: Option<usize>,
}

#[derive(Args)]
struct TensorRectArgs {
    /// Rectangles as `rows x cols`, e.g. `3x2,2x1,1x1`.
    #[arg(long)]
    rects: String,
    /// Interpret the result in sl_n; omit for the stable large-n answer.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TensorArgs {
    #[arg(long)]
    algebra: String,
    /// Left highest weight, omega coordinates `1,0,0`.
    #[arg(long)]
    left: String,
    /// Right highest weight, omega coordinates.
    #[arg(long)]
    right: String,
    /// `klimyk` (any type) or `cn-column` (type C, right factor fundamental).
    #[arg(long, default_value = "klimyk")]
    rule: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    factors: String,
    /// Target dominant weight, omega coordinates.
    #[arg(long, conflicts_with = "all")]
    lambda: Option<String>,
    /// Sweep every dominant weight under the top weight.
    #[arg(long)]
    all: bool,
    /// Also list the admissible configurations.
    #[arg(long)]
    configs: bool,
}

#[derive(Args)]
struct QsystemArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    m: i64,
    /// `kr` or a path to a JSON file of initial characters
    /// (array of character objects, one per node).
    #[arg(long, default_value = "kr")]
    init: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct QsystemCheckArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, default_value = "3")]
    max_m: i64,
    #[arg(long, default_value = "kr")]
    init: String,
}

#[derive(Args)]
struct QsystemWitnessArgs {
    #[arg(long)]
    algebra: String,
    /// Which multiplicity to flip, e.g. `a=2,b=0`.
    #[arg(long)]
    flip: String,
    /// Size of the flip (any nonzero integer).
    #[arg(long, default_value = "1")]
    delta: i64,
    #[arg(long, default_value = "3")]
    max_m: i64,
}

#[derive(Args)]
struct GrowthArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    l: usize,
    /// Cap on search-state evaluations.
    #[arg(long, default_value = "10000000")]
    budget: u64,
}

#[derive(Args)]
struct KostkaArgs {
    /// Shape lambda as row lengths, e.g. `3,2,1`.
    #[arg(long)]
    lambda: String,
    /// Column heights of mu, e.g. `3,2,1`.
    #[arg(long)]
    mu: String,
}

/// Errors carrying the process exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn domain(message: impl fmt::Display) -> Self {
        CliError {
            code: 3,
            message: message.to_string(),
        }
    }

    fn usage(message: impl fmt::Display) -> Self {
        CliError {
            code: 2,
            message: message.to_string(),
        }
    }

    fn budget(message: impl fmt::Display) -> Self {
        CliError {
            code: 4,
            message: message.to_string(),
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        CliError::domain(e)
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::domain(e)
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        CliError::domain(e)
    }
}

impl From<GrowthError> for CliError {
    fn from(e: GrowthError) -> Self {
        CliError::domain(e)
    }
}

impl From<render::RenderError> for CliError {
    fn from(e: render::RenderError) -> Self {
        CliError::domain(e)
    }
}

fn parse_algebra(s: &str) -> Result<AlgebraSpec, CliError> {
    AlgebraSpec::parse(s).map_err(CliError::usage)
}

fn parse_coords(s: &str, rank: usize) -> Result<Vec<i64>, CliError> {
    let coords: Result<Vec<i64>, _> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|_| CliError::usage(format!("cannot parse coordinates `{s}`")))?;
    if coords.len() != rank {
        return Err(CliError::usage(format!(
            "expected {rank} coordinates, got {}",
            coords.len()
        )));
    }
    Ok(coords)
}

fn load_initial(
    spec: AlgebraSpec,
    init: &str,
) -> Result<std::collections::BTreeMap<usize, Character>, CliError> {
    if init == "kr" {
        return Ok(kr_initial_data(spec)?);
    }
    let text = std::fs::read_to_string(init)
        .map_err(|e| CliError::usage(format!("cannot read {init}: {e}")))?;
    let docs: Vec<serde_json::Value> =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("bad init JSON: {e}")))?;
    let mut out = std::collections::BTreeMap::new();
    for (i, doc) in docs.iter().enumerate() {
        let ch = render::parse_character_json(&doc.to_string())?;
        if ch.spec != spec {
            return Err(CliError::usage(format!(
                "initial character {i} belongs to {}, expected {}",
                ch.spec.name(),
                spec.name()
            )));
        }
        out.insert(i + 1, ch);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Decompose(args) => {
            let spec = parse_algebra(&args.algebra)?;
            let data = CartanData::new(spec);
            let factors = match (&args.factors, args.weight) {
                (Some(list), None) => {
                    FactorList::parse(spec, list).map_err(CliError::usage)?
                }
                (None, Some(node)) => {
                    let m = args.m.unwrap_or(1);
                    FactorList::single(spec, node, m).map_err(CliError::usage)?
                }
                _ => {
                    return Err(CliError::usage(
                        "give either --weight L [--m M] or --factors LxM,...",
                    ))
                }
            };
            let tree = build_tree(&data, &factors, args.max_depth)?;
            match args.format {
                Format::Text => print!("{}", render::tree_text(&tree)),
                Format::Json => print!("{}", render::tree_json(&tree)?),
                Format::Dot => print!("{}", render::tree_dot(&tree)),
            }
        }
        Command::TensorRect(args) => {
            let rects = Rectangle::parse_list(&args.rects).map_err(CliError::usage)?;
            let tree = rect_decompose(&rects).map_err(CliError::domain)?;
            match args.format {
                Format::Text => {
                    print!("{}", render::rect_text(&tree));
                    if let Some(n) = args.n {
                        println!("# aggregated sl_{n} multiplicities");
                        for (w, m) in tree.aggregate_sln(n) {
                            println!("{m}·V[{}]", w.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                        }
                    }
                }
                Format::Json => print!("{}", render::rect_json(&tree)?),
                Format::Dot => print!("{}", render::rect_dot(&tree)),
            }
        }
        Command::Tensor(args) => {
            let spec = parse_algebra(&args.algebra)?;
            let ring = ReprRing::new(spec);
            let left = Weight(parse_coords(&args.left, spec.rank)?);
            let right = Weight(parse_coords(&args.right, spec.rank)?);
            if !left.is_dominant() || !right.is_dominant() {
                return Err(CliError::usage("tensor factors must be dominant"));
            }
            let result = match args.rule.as_str() {
                "klimyk" => ring.tensor_irreducibles(&left, &right),
                "cn-column" => {
                    let k = right
                        .0
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i + 1, c))
                        .collect::<Vec<_>>();
                    match k.as_slice() {
                        [(node, 1)] => {
                            let base = Character::irreducible(spec, left);
                            ring.cn_column_tensor(&base, *node)?
                        }
                        _ => {
                            return Err(CliError::usage(
                                "cn-column needs the right factor to be a fundamental weight",
                            ))
                        }
                    }
                }
                other => return Err(CliError::usage(format!("unknown rule `{other}`"))),
            };
            match args.format {
                Format::Text => print!("{}", render::character_text(&result)),
                Format::Json => print!("{}", render::character_json(&result)?),
                Format::Dot => return Err(CliError::usage("characters have no DOT form")),
            }
        }
        Command::Oracle(args) => {
            let spec = parse_algebra(&args.algebra)?;
            let data = CartanData::new(spec);
            let factors = FactorList::parse(spec, &args.factors).map_err(CliError::usage)?;
            let report = |lam: &Weight| -> String {
                match kr_multiplicity(&data, &factors, lam) {
                    Support::Outside => "0 (outside support)".to_string(),
                    Support::Inside(m) => m.to_string(),
                }
            };
            if args.all {
                let top = factors.omega_max(spec.rank);
                for mu in data.dominant_weights_under(&top) {
                    let m = kr_multiplicity(&data, &factors, &mu);
                    if let Support::Inside(m) = m {
                        if !m.is_zero() {
                            println!(
                                "V[{}]: {m}",
                                mu.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                            );
                        }
                    }
                }
            } else {
                let lam = Weight(parse_coords(
                    args.lambda
                        .as_deref()
                        .ok_or_else(|| CliError::usage("give --lambda or --all"))?,
                    spec.rank,
                )?);
                println!("multiplicity {}", report(&lam));
                if args.configs {
                    if let Support::Inside(cfgs) = admissible_configs(&data, &factors, &lam) {
                        for (i, cfg) in cfgs.iter().enumerate() {
                            println!("config {i}: {:?}", cfg.partitions);
                        }
                    }
                }
            }
        }
        Command::Qsystem(args) => {
            let spec = parse_algebra(&args.algebra)?;
            let initial = load_initial(spec, &args.init)?;
            let mut q = QSystem::new(ReprRing::new(spec), initial)?;
            let ch = q.q_character(args.m, args.l)?;
            match args.format {
                Format::Text => print!("{}", render::character_text(&ch)),
                Format::Json => print!("{}", render::character_json(&ch)?),
                Format::Dot => return Err(CliError::usage("characters have no DOT form")),
            }
        }
        Command::QsystemCheck(args) => {
            let spec = parse_algebra(&args.algebra)?;
            let initial = load_initial(spec, &args.init)?;
            let mut q = QSystem::new(ReprRing::new(spec), initial)?;
            let report = q.check_relations(args.max_m)?;
            let mut all_zero = true;
            for ((m, l), residual) in &report {
                if residual.is_zero() {
                    println!("residual m={m} l={l}: 0");
                } else {
                    all_zero = false;
                    println!("residual m={m} l={l}: {residual}");
                }
            }
            println!(
                "{}",
                if all_zero {
                    "all residuals vanish"
                } else {
                    "NONZERO residuals found"
                }
            );
        }
        Command::QsystemWitness(args) => {
            let spec = parse_algebra(&args.algebra)?;
            let mut a = None;
            let mut b = None;
            for part in args.flip.split(',') {
                match part.trim().split_once('=') {
                    Some(("a", v)) => a = v.trim().parse::<usize>().ok(),
                    Some(("b", v)) => b = v.trim().parse::<usize>().ok(),
                    _ => return Err(CliError::usage(format!("cannot parse --flip `{}`", args.flip))),
                }
            }
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(CliError::usage("--flip needs both a= and b=")),
            };
            if args.delta == 0 {
                return Err(CliError::usage("--delta must be nonzero"));
            }
            let mut initial = kr_initial_data(spec)?;
            if !initial.contains_key(&a) {
                return Err(CliError::usage(format!("node a={a} has no initial character")));
            }
            perturb_initial(&mut initial, spec, a, b, args.delta);
            if initial[&a].has_negative() {
                return Err(CliError::usage(
                    "flip makes an initial multiplicity negative",
                ));
            }
            let mut q = QSystem::new(ReprRing::new(spec), initial)?;
            match q.negative_witness(args.max_m) {
                Some(Witness::Negative { m, l, weight, coeff }) => {
                    println!(
                        "witness: coefficient {coeff} of V[{}] in Q_{m}({l})",
                        weight.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    );
                }
                Some(Witness::Inexact { m, l, detail }) => {
                    println!("witness: inexact division at Q_{m}({l}) ({detail})");
                }
                None => println!("no witness up to m = {}", args.max_m),
            }
        }
        Command::Growth(args) => {
            let spec = parse_algebra(&args.algebra)?;
            let data = CartanData::new(spec);
            let res = max_growth(&data, args.l, args.budget)?;
            println!("g = {}", res.g);
            match &res.witness {
                None => println!("witness: empty path-type"),
                Some(pt) => {
                    let steps: Vec<String> = pt
                        .deltas
                        .iter()
                        .map(|d| format!("({})", d.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                        .collect();
                    println!("witness: {}", steps.join(" > "));
                }
            }
            println!("perp = {}", res.perp);
            println!("degree = {}", res.degree);
            if !res.complete {
                return Err(CliError::budget(format!(
                    "search budget {} exhausted; raise --budget",
                    args.budget
                )));
            }
        }
        Command::Kostka(args) => {
            let lam: Vec<i64> = args
                .lambda
                .split(',')
                .map(|p| p.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::usage("cannot parse --lambda"))?;
            let mu: Vec<usize> = args
                .mu
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::usage("cannot parse --mu"))?;
            let k = kostka(&lam, &mu).map_err(CliError::domain)?;
            println!("{k}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::error::ErrorKind;

    #[test]
    fn parses_decompose() {
        let cli = Cli::try_parse_from([
            "krchar",
            "decompose",
            "--algebra",
            "E6",
            "--weight",
            "4",
            "--m",
            "2",
            "--format",
            "dot",
        ])
        .unwrap();
        match cli.command {
            Command::Decompose(args) => {
                assert_eq!(args.algebra, "E6");
                assert_eq!(args.weight, Some(4));
                assert_eq!(args.m, Some(2));
                assert!(args.format == Format::Dot);
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn parses_tensor_rect() {
        let cli =
            Cli::try_parse_from(["krchar", "tensor-rect", "--rects", "3x2,2x1,1x1"]).unwrap();
        match cli.command {
            Command::TensorRect(args) => assert_eq!(args.rects, "3x2,2x1,1x1"),
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn rejects_unknown_flag() {
        let err = Cli::try_parse_from(["krchar", "growth", "--bogus", "1"]).unwrap_err();
        assert!(matches!(
            err.kind(),
            ErrorKind::UnknownArgument | ErrorKind::InvalidValue
        ));
    }

    #[test]
    fn non_simply_laced_decompose_is_domain_error() {
        let cli = Cli::try_parse_from([
            "krchar",
            "decompose",
            "--algebra",
            "B3",
            "--weight",
            "1",
            "--m",
            "2",
        ])
        .unwrap();
        let err = run(cli).unwrap_err();
        assert_eq!(err.code, 3);
        assert!(err.message.contains("oracle"));
    }
}
