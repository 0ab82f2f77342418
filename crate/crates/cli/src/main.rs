use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schubert_core::ci::{decompose_ci, parse_statements, suggest_relabeling};
use schubert_core::enumerate::{brute_count, sigma_count, x_count, y_count};
use schubert_core::export::{export, Format, TERM_BUDGET};
use schubert_core::gaussian_graph::{
    is_generalized_markov_chain, t_separation_array, vanishing_ideal,
};
use schubert_core::param::{verify_rank_array, RankReport, RationalMatrix, Sampler};
use schubert_core::perm::parse_one_line;
use schubert_core::rank_array::{primary_decomposition_with, DecomposeOptions, SplitOrder};
use schubert_core::schubert::{decompose_sum, ideal_spec};
use schubert_core::{CIStatement, Error, Flavor, MinorSpec, MixedGraph, Permutation, RankArray};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Primary decomposition of Schubert determinantal and Gaussian CI ideals"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a sum of Schubert determinantal ideals.
    Decompose {
        #[arg(long, value_enum, default_value = "sym")]
        flavor: FlavorArg,
        /// Permutations in one-line notation (e.g. 15234 or 10,1,2,...).
        #[arg(required = true)]
        perms: Vec<String>,
    },
    /// Conditional independence statements.
    Ci {
        #[command(subcommand)]
        command: CiCommand,
    },
    /// Mixed graphs.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Count strata, by formula and optionally by brute force.
    Count {
        #[arg(long, value_enum)]
        space: FlavorArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        brute_force: bool,
    },
    /// Exact rational sample points.
    Param {
        #[command(subcommand)]
        command: ParamCommand,
    },
    /// Generators of Schubert determinantal ideals.
    Ideal {
        #[command(subcommand)]
        command: IdealCommand,
    },
    /// Rank arrays.
    RankArray {
        #[command(subcommand)]
        command: RankArrayCommand,
    },
}

#[derive(Subcommand)]
enum CiCommand {
    /// Decompose the sum of the CI ideals of the given statements.
    Decompose {
        /// Statements such as "1 _||_ 3; 1 _||_ 3 | 2".
        statements: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// JSON file with a list of statements instead.
        #[arg(long, conflicts_with = "statements")]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// T-separation ranks and, for generalized Markov chains, the vanishing ideal.
    Analyze { file: PathBuf },
}

#[derive(Subcommand)]
enum ParamCommand {
    /// Sample points of a variety (`--perm`) or of a graphical model (`--graph`).
    Sample(SampleArgs),
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum, default_value = "sym")]
    flavor: FlavorArg,
    #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
    perm: Option<String>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum IdealCommand {
    /// Essential minors of J_flavor(w).
    Gens {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Largest number of determinant terms written out in scripts.
        #[arg(long, default_value_t = TERM_BUDGET)]
        term_budget: usize,
    },
}

#[derive(Subcommand)]
enum RankArrayCommand {
    /// Decompose the ideal of a rank array given as JSON.
    Decompose {
        file: PathBuf,
        /// Pair replacements with their type C partners.
        #[arg(long)]
        type_c: bool,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "row-major")]
        order: OrderArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Full,
    Sym,
    Up,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Full => Flavor::Full,
            FlavorArg::Sym => Flavor::Sym,
            FlavorArg::Up => Flavor::Up,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    M2,
    Singular,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::M2 => Format::M2,
            FormatArg::Singular => Format::Singular,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum OrderArg {
    RowMajor,
    ReverseRowMajor,
    ColumnMajor,
}

impl From<OrderArg> for SplitOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::RowMajor => SplitOrder::RowMajor,
            OrderArg::ReverseRowMajor => SplitOrder::ReverseRowMajor,
            OrderArg::ColumnMajor => SplitOrder::ColumnMajor,
        }
    }
}

enum Failure {
    Input(String),
    Breach(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantBreach(_) => Failure::Breach(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult = Result<String, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn perm_list(perms: &[Permutation]) -> String {
    perms
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn minor_line(g: &MinorSpec) -> String {
    let list = |v: &[usize]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "{}-minors of rows {{{}}} x cols {{{}}}",
        g.size,
        list(&g.rows),
        list(&g.cols)
    )
}

fn run_decompose(json: bool, flavor: Flavor, perms: &[String]) -> CliResult {
    let ws = perms
        .iter()
        .map(|s| parse_one_line(s))
        .collect::<schubert_core::Result<Vec<_>>>()?;
    let comps = decompose_sum(flavor, &ws)?;
    if json {
        return Ok(pretty(
            &json!({ "flavor": flavor, "inputs": ws, "components": comps }),
        ));
    }
    Ok(format!(
        "{} component(s): {}",
        comps.len(),
        perm_list(&comps)
    ))
}

fn run_ci(
    json: bool,
    statements: Option<String>,
    n: Option<usize>,
    file: Option<PathBuf>,
) -> CliResult {
    let statements: Vec<CIStatement> = match (statements, file) {
        (_, Some(path)) => read_json(&path)?,
        (Some(text), None) => {
            let n =
                n.ok_or_else(|| Failure::Input("--n is required with inline statements".into()))?;
            parse_statements(&text, n)?
        }
        (None, None) => {
            return Err(Failure::Input(
                "give statements inline or with --file".into(),
            ))
        }
    };
    let comps = match decompose_ci(&statements) {
        Err(Error::NotSchubertStatement(msg)) => {
            let hint = match suggest_relabeling(&statements) {
                Ok(Some(sigma)) => {
                    format!("; relabeling by {sigma} makes every statement Schubert")
                }
                _ => String::new(),
            };
            return Err(Failure::Input(format!(
                "not a Schubert CI statement: {msg}{hint}"
            )));
        }
        other => other?,
    };
    if json {
        return Ok(pretty(
            &json!({ "statements": statements, "components": comps }),
        ));
    }
    let mut out = format!("{} component(s)", comps.len());
    for c in &comps {
        let rendering = match &c.rendering {
            Some(parts) => parts
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" + "),
            None => "not a sum of CI ideals".to_string(),
        };
        let _ = write!(out, "\n{}: {rendering}", c.permutation);
    }
    Ok(out)
}

fn run_graph(json: bool, path: &Path) -> CliResult {
    let g: MixedGraph = read_json(path)?;
    let array = t_separation_array(&g)?;
    let gmc = is_generalized_markov_chain(&g);
    let ideal = if gmc {
        Some(vanishing_ideal(&g)?)
    } else {
        None
    };
    if json {
        return Ok(pretty(&json!({
            "graph": g,
            "generalized_markov_chain": gmc,
            "t_separation_array": array,
            "vanishing_ideal": ideal,
        })));
    }
    let mut out = format!(
        "generalized Markov chain: {}\nt-separation ranks:\n{array}",
        if gmc { "yes" } else { "no" }
    );
    match ideal {
        Some(v) => {
            let _ = write!(out, "\nvanishing ideal: J_sym({})", v.permutation);
            for gen in &v.ideal.generators {
                let _ = write!(out, "\n  {}", minor_line(gen));
            }
        }
        None => out.push_str(
            "\nno vanishing ideal claim for graphs that are not generalized Markov chains",
        ),
    }
    Ok(out)
}

fn run_count(json: bool, flavor: Flavor, n: usize, brute: bool) -> CliResult {
    let formula = match flavor {
        Flavor::Full => x_count(n),
        Flavor::Sym => sigma_count(n),
        Flavor::Up => y_count(n),
    };
    let oracle = if brute {
        Some(brute_count(flavor, n)?)
    } else {
        None
    };
    if json {
        return Ok(pretty(&json!({
            "space": flavor,
            "n": n,
            "formula": formula.to_string(),
            "brute_force": oracle.as_ref().map(ToString::to_string),
        })));
    }
    let mut out = format!("formula: {formula}");
    if let Some(b) = oracle {
        let _ = write!(out, "\nbrute force: {b}");
    }
    Ok(out)
}

fn sample_text(k: usize, m: &RationalMatrix, report: &RankReport) -> String {
    let status = if report.pass { "pass" } else { "FAIL" };
    let generic = if report.generic() {
        "all attained"
    } else {
        "some slack"
    };
    format!("sample {k}:\n{m}\nrank bounds: {status}; essential ranks: {generic}")
}

fn run_param(json: bool, args: &SampleArgs) -> CliResult {
    let mut sampler = Sampler::new(args.seed);
    let mut samples = Vec::with_capacity(args.samples);
    let flavor: Flavor = args.flavor.into();
    let (label, bound) = match (&args.perm, &args.graph) {
        (Some(text), _) => {
            let w = parse_one_line(text)?;
            if flavor == Flavor::Full {
                return Err(Failure::Input(
                    "sampling supports the up and sym flavors".into(),
                ));
            }
            for _ in 0..args.samples {
                let m = if flavor == Flavor::Up {
                    sampler.up_point(&w)
                } else {
                    sampler.sym_point(&w)
                };
                let report = schubert_core::param::verify_permutation(&m, &w, flavor)?;
                samples.push((m, report));
            }
            (
                json!({ "flavor": flavor, "permutation": w }),
                None::<RankArray>,
            )
        }
        (None, Some(path)) => {
            let g: MixedGraph = read_json(path)?;
            let array = t_separation_array(&g)?;
            for _ in 0..args.samples {
                let m = sampler.graph_point(&g);
                let report = verify_rank_array(&m, &array, Flavor::Sym)?;
                samples.push((m, report));
            }
            (json!({ "graph": g }), Some(array))
        }
        (None, None) => return Err(Failure::Input("give --perm or --graph".into())),
    };
    if json {
        let list: Vec<Value> = samples
            .iter()
            .map(|(m, r)| json!({ "matrix": m, "report": r }))
            .collect();
        return Ok(pretty(
            &json!({ "source": label, "seed": args.seed, "bound": bound, "samples": list }),
        ));
    }
    let texts: Vec<String> = samples
        .iter()
        .enumerate()
        .map(|(k, (m, r))| sample_text(k + 1, m, r))
        .collect();
    Ok(texts.join("\n\n"))
}

fn run_ideal(flavor: Flavor, perm: &str, format: Format, budget: usize) -> CliResult {
    let w = parse_one_line(perm)?;
    let out = export(&ideal_spec(flavor, &w), format, budget);
    Ok(out.trim_end().to_string())
}

fn run_rank_array(
    json: bool,
    path: &Path,
    type_c: bool,
    trace: bool,
    order: SplitOrder,
) -> CliResult {
    let r: RankArray = read_json(path)?;
    let d = primary_decomposition_with(
        &r,
        &DecomposeOptions {
            type_c,
            order,
            trace,
        },
    )?;
    if json {
        return Ok(pretty(
            &serde_json::to_value(&d).expect("results serialize"),
        ));
    }
    let mut out = if d.unit {
        "unit ideal".to_string()
    } else {
        format!(
            "{} component(s): {}",
            d.components.len(),
            perm_list(&d.components)
        )
    };
    for w in &d.warnings {
        let _ = write!(out, "\nwarning: {w}");
    }
    if let Some(steps) = &d.trace {
        for step in steps {
            let _ = write!(
                out,
                "\n{}",
                serde_json::to_string(step).expect("steps serialize")
            );
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> CliResult {
    let json = cli.json;
    match cli.command {
        Command::Decompose { flavor, perms } => run_decompose(json, flavor.into(), &perms),
        Command::Ci {
            command:
                CiCommand::Decompose {
                    statements,
                    n,
                    file,
                },
        } => run_ci(json, statements, n, file),
        Command::Graph {
            command: GraphCommand::Analyze { file },
        } => run_graph(json, &file),
        Command::Count {
            space,
            n,
            brute_force,
        } => run_count(json, space.into(), n, brute_force),
        Command::Param {
            command: ParamCommand::Sample(args),
        } => run_param(json, &args),
        Command::Ideal {
            command:
                IdealCommand::Gens {
                    flavor,
                    perm,
                    format,
                    term_budget,
                },
        } => {
            let format = if json { Format::Json } else { format.into() };
            run_ideal(flavor.into(), &perm, format, term_budget)
        }
        Command::RankArray {
            command:
                RankArrayCommand::Decompose {
                    file,
                    type_c,
                    trace,
                    order,
                },
        } => run_rank_array(json, &file, type_c, trace, order.into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Breach(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}
