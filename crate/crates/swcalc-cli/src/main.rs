//! `swcalc`: exact mod-2 characteristic-class calculations on the command
//! line. Every subcommand is deterministic — identical invocations print
//! byte-identical output — and supports a `--json` form.
//!
//! Exit codes: 0 on success, 2 on usage errors (bad flags or malformed
//! input), 1 on domain errors (well-formed requests outside a pipeline's
//! mathematical range).

mod parse;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use swcalc_core::charseries::{
    catalog_entry, chi_series, closure_series, dold_reduce, hat_w, StratumKey,
};
use swcalc_core::locus::{aluffi_matrix, analyze_sigma, euler_sigma2_case_a, LocusReport};
use swcalc_core::obstruction::{bound_report, SingularityFamily};
use swcalc_core::restriction::restriction_demo;
use swcalc_core::rings::ManifoldModel;
use swcalc_core::segre::ssw_sigma;
use swcalc_core::symfun::{
    lowering, poly_to_schur, schur_to_poly, steenrod_sq, steenrod_sq_schur, Mod2Poly, SchurCombo,
};

// ---------------------------------------------------------------------
// Argument grammar
// ---------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "swcalc",
    version,
    about = "Exact mod-2 characteristic-class obstructions to singularity-avoiding maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal-vanishing bounds (tau and kappa) for one projective space.
    Bounds(BoundsArgs),
    /// Both bounds over a range of dimensions, with case subscripts.
    Table(TableArgs),
    /// The graded corank-r locus series at a given unfolding level.
    SswSigma(SswSigmaArgs),
    /// Evaluate a Schur class or polynomial at a model's dual class.
    Eval(EvalArgs),
    /// Euler-characteristic parity of a singularity locus.
    Euler(EulerArgs),
    /// Stiefel-Whitney-number series of a catalogued stratum.
    ChiSeries(ChiSeriesArgs),
    /// Apply the lowering operator to a class.
    Lower(LowerArgs),
    /// Apply a Steenrod square to a class.
    Sq(SqArgs),
    /// The slice transform matrix of projective n-space.
    Aluffi(AluffiArgs),
    /// The three-equation rational restriction system and its solution.
    RestrictionDemo(RestrictionDemoArgs),
}

/// Families accepted by `bounds` and `table`.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FoldFamily {
    A2,
    Sigma2,
}

impl FoldFamily {
    fn to_core(self) -> SingularityFamily {
        match self {
            FoldFamily::A2 => SingularityFamily::A2,
            FoldFamily::Sigma2 => SingularityFamily::SIGMA2,
        }
    }
}

/// Families accepted by `euler` (corank strata only).
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RankFamily {
    Sigma1,
    Sigma2,
}

impl RankFamily {
    fn corank(self) -> u32 {
        match self {
            RankFamily::Sigma1 => 1,
            RankFamily::Sigma2 => 2,
        }
    }
}

#[derive(Args)]
struct BoundsArgs {
    /// Dimension of the projective space.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    n: u32,
    /// Singularity family.
    #[arg(long, value_enum)]
    sing: FoldFamily,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Args)]
struct TableArgs {
    /// First dimension of the range.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64), required_unless_present = "seed_file", conflicts_with = "seed_file")]
    min: Option<u32>,
    /// Last dimension of the range.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64), required_unless_present = "seed_file", conflicts_with = "seed_file")]
    max: Option<u32>,
    /// Singularity family.
    #[arg(long, value_enum)]
    sing: FoldFamily,
    /// Output layout.
    #[arg(long, value_enum, default_value = "text")]
    format: TableFormat,
    /// CSV file of dimensions to process in order: each row `N` or `MIN,MAX`.
    #[arg(long)]
    seed_file: Option<std::path::PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SswSigmaArgs {
    /// Corank of the stratum.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
    r: u32,
    /// Unfolding level (level -1 is supported for corank 2).
    #[arg(long, allow_negative_numbers = true)]
    l: i64,
    /// Truncation degree of the series.
    #[arg(long)]
    max_degree: u32,
    /// Use the closed-stratum (closure) series instead of the open one.
    #[arg(long)]
    closed: bool,
    /// Render each degree in the Schur basis (the default).
    #[arg(long, conflicts_with = "poly")]
    schur: bool,
    /// Render each degree as a polynomial in the w variables.
    #[arg(long)]
    poly: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Model descriptor: `rp:N`, a product `rp:A,rp:B`, or `wu`.
    #[arg(long)]
    space: String,
    /// Schur class to evaluate, as a partition like "[11,9]".
    #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
    schur: Option<String>,
    /// Polynomial to evaluate, like "w2*w3+w1*w4".
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EulerArgs {
    /// Dimension of the projective space.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    n: u32,
    /// Corank stratum.
    #[arg(long, value_enum)]
    sing: RankFamily,
    /// Unfolding level; omit with sigma2 to use the level determined by
    /// the dimension's binary-digit case (requires case a).
    #[arg(long, allow_negative_numbers = true)]
    l: Option<i64>,
    /// Use the closed-stratum series.
    #[arg(long)]
    closed: bool,
    /// Also print the parities of generic linear slices.
    #[arg(long)]
    slices: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ChiSeriesArgs {
    /// Catalogued stratum (A2, A3, A4, A5, I22, Sigma1, Sigma2).
    #[arg(long, value_parser = parse_stratum, required_unless_present = "closure", conflicts_with = "closure")]
    sing: Option<StratumKey>,
    /// Sum the series of the listed strata (a closure as a union).
    #[arg(long, value_delimiter = ',', value_parser = parse_stratum)]
    closure: Option<Vec<StratumKey>>,
    /// Truncation degree (the catalogue is tabulated through degree 6).
    #[arg(long)]
    max_degree: u32,
    /// Normalize with the tabulated relations between number classes.
    #[arg(long, conflicts_with = "closure")]
    reduce: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LowerArgs {
    /// Which coefficient of the substitution parameter to take.
    #[arg(long)]
    j: u32,
    /// Input as a single Schur class, as a partition like "[2,2]".
    #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
    schur: Option<String>,
    /// Input as a polynomial in the w variables.
    #[arg(long)]
    poly: Option<String>,
    /// Also convert the result back to the Schur basis.
    #[arg(long)]
    to_schur: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SqArgs {
    /// Degree of the Steenrod square.
    #[arg(long)]
    k: u32,
    /// Input as a single Schur class; the result stays in the Schur basis.
    #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
    schur: Option<String>,
    /// Input as a polynomial in the w variables.
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AluffiArgs {
    /// Dimension of the ambient projective space.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=127))]
    n: u32,
    /// Print the inverse matrix instead.
    #[arg(long)]
    inverse: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RestrictionDemoArgs {
    #[arg(long)]
    json: bool,
}

fn parse_stratum(s: &str) -> Result<StratumKey, String> {
    s.parse::<StratumKey>().map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------
// Failure plumbing
// ---------------------------------------------------------------------

/// A runtime failure with its exit class. Malformed input that clap cannot
/// see (descriptor strings, inconsistent flag combinations) is a usage
/// error; mathematically out-of-range requests are domain errors.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<swcalc_core::error::Error> for Failure {
    fn from(e: swcalc_core::error::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Table(args) => cmd_table(args),
        Command::SswSigma(args) => cmd_ssw_sigma(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Euler(args) => cmd_euler(args),
        Command::ChiSeries(args) => cmd_chi_series(args),
        Command::Lower(args) => cmd_lower(args),
        Command::Sq(args) => cmd_sq(args),
        Command::Aluffi(args) => cmd_aluffi(args),
        Command::RestrictionDemo(args) => cmd_restriction_demo(args),
    }
}

// ---------------------------------------------------------------------
// bounds / table
// ---------------------------------------------------------------------

fn cmd_bounds(args: BoundsArgs) -> Result<(), Failure> {
    let report = bound_report(args.n, args.sing.to_core());
    if args.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
        return Ok(());
    }
    println!("n: {}", report.n);
    println!("family: {}", report.family);
    println!("tau: {}", report.tau);
    println!("kappa: {}", report.kappa);
    if let Some(closed) = report.kappa_closed {
        println!("kappa (closed form): {closed}");
    }
    println!(
        "case: {} (binary digits {}, valuation {})",
        report.case.label, report.case.digits, report.case.valuation
    );
    if let Some(d) = report.case.decomposition {
        println!("decomposition: a={}, u={}, b={}", d.a, d.u, d.b);
    }
    for w in &report.witnesses {
        println!(
            "surviving ideal members at level {}: {}",
            w.level,
            w.partitions.len()
        );
    }
    Ok(())
}

/// One `table` row.
struct TableRow {
    n: u32,
    tau: i64,
    kappa: i64,
    case: char,
}

fn table_row(n: u32, family: SingularityFamily) -> TableRow {
    let report = bound_report(n, family);
    TableRow {
        n,
        tau: report.tau,
        kappa: report.kappa,
        case: match report.case.label.to_string().chars().next() {
            Some(c) => c,
            None => unreachable!("case labels are single letters"),
        },
    }
}

fn seed_dimensions(path: &std::path::Path) -> Result<Vec<u32>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut ns = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let first: u32 = fields
            .next()
            .unwrap_or("")
            .parse()
            .map_err(|_| Failure::Usage(format!("bad dimension on line {}", idx + 1)))?;
        match fields.next() {
            None => ns.push(first),
            Some(second) => {
                let last: u32 = second
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad range on line {}", idx + 1)))?;
                if fields.next().is_some() {
                    return usage(format!("too many fields on line {}", idx + 1));
                }
                if first > last {
                    return usage(format!("empty range on line {}", idx + 1));
                }
                ns.extend(first..=last);
            }
        }
        if ns.iter().any(|&n| n == 0 || n > 64) {
            return usage(format!("dimensions must be 1..=64 (line {})", idx + 1));
        }
    }
    if ns.is_empty() {
        return usage("seed file lists no dimensions");
    }
    Ok(ns)
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    let ns: Vec<u32> = match &args.seed_file {
        Some(path) => seed_dimensions(path)?,
        None => {
            let (min, max) = match (args.min, args.max) {
                (Some(min), Some(max)) => (min, max),
                _ => unreachable!("clap requires min/max without a seed file"),
            };
            if min > max {
                return usage("--min must not exceed --max");
            }
            (min..=max).collect()
        }
    };
    let family = args.sing.to_core();
    let rows: Vec<TableRow> = ns.iter().map(|&n| table_row(n, family)).collect();
    if args.json {
        let items: Vec<serde_json::Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "tau": r.tau,
                    "kappa": r.kappa,
                    "case": r.case.to_string(),
                })
            })
            .collect();
        println!("{}", serde_json::Value::Array(items));
        return Ok(());
    }
    match args.format {
        TableFormat::Csv => {
            println!("n,tau,kappa,case");
            for r in &rows {
                println!("{},{},{},{}", r.n, r.tau, r.kappa, r.case);
            }
        }
        TableFormat::Text => {
            let cells: Vec<(String, String, String)> = rows
                .iter()
                .map(|r| {
                    (
                        r.n.to_string(),
                        r.tau.to_string(),
                        format!("{}{}", r.kappa, r.case),
                    )
                })
                .collect();
            let widths: Vec<usize> = cells
                .iter()
                .map(|(a, b, c)| a.len().max(b.len()).max(c.len()))
                .collect();
            for (label, pick) in [
                ("n", 0usize),
                ("tau", 1),
                ("kappa", 2),
            ] {
                let mut line = format!("{label:<5} |");
                for (cell, width) in cells.iter().zip(&widths) {
                    let text = match pick {
                        0 => &cell.0,
                        1 => &cell.1,
                        _ => &cell.2,
                    };
                    let _ = write!(line, " {text:<width$}");
                }
                println!("{}", line.trim_end());
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// ssw-sigma / eval
// ---------------------------------------------------------------------

fn cmd_ssw_sigma(args: SswSigmaArgs) -> Result<(), Failure> {
    let family = SingularityFamily::SigmaI { i: args.r };
    if !family.supports_level(args.l) {
        return usage(format!(
            "{family} supports levels from {} (got {})",
            family.min_level(),
            args.l
        ));
    }
    let series = ssw_sigma(args.r, args.l, args.max_degree, args.closed);
    // Schur rendering is the default; the explicit flag exists so scripts
    // can state the choice.
    let as_poly = args.poly && !args.schur;
    if args.json {
        let value = if as_poly {
            let by_degree: BTreeMap<String, String> = series
                .parts()
                .map(|(d, combo)| (d.to_string(), combo.to_poly().to_string()))
                .collect();
            json!({
                "r": args.r,
                "l": args.l,
                "max_degree": args.max_degree,
                "closed": args.closed,
                "by_degree": by_degree,
            })
        } else {
            serde_json::to_value(&series).expect("series serializes")
        };
        println!("{value}");
        return Ok(());
    }
    if as_poly {
        let mut first = true;
        for (d, combo) in series.parts() {
            if !first {
                println!();
            }
            first = false;
            print!("deg {d}: {}", combo.to_poly());
        }
        if first {
            print!("0");
        }
        println!();
    } else {
        println!("{series}");
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<(), Failure> {
    let model = parse::space(&args.space).map_err(Failure::Usage)?;
    let assignment = model.wbar_assignment();
    let (input_text, value) = match (&args.schur, &args.poly) {
        (Some(schur), None) => {
            let partition = parse::partition(schur).map_err(Failure::Usage)?;
            let rendered = SchurCombo::singleton(partition.clone()).to_string();
            (rendered, assignment.evaluate_schur(&partition))
        }
        (None, Some(poly)) => {
            let parsed = parse::poly(poly).map_err(Failure::Usage)?;
            (parsed.to_string(), assignment.evaluate_poly(&parsed))
        }
        _ => unreachable!("clap enforces exactly one input"),
    };
    if args.json {
        println!(
            "{}",
            json!({
                "space": model.name(),
                "input": input_text,
                "value": serde_json::to_value(&value).expect("value serializes"),
            })
        );
    } else {
        println!("{value}");
    }
    Ok(())
}

// ---------------------------------------------------------------------
// euler / chi-series
// ---------------------------------------------------------------------

fn cmd_euler(args: EulerArgs) -> Result<(), Failure> {
    let mut report: LocusReport = match (args.sing, args.l) {
        (RankFamily::Sigma1, None) => {
            return usage("--l is required with --sing sigma1");
        }
        (RankFamily::Sigma2, None) => euler_sigma2_case_a(args.n)?,
        (family, Some(l)) => {
            let core_family = SingularityFamily::SigmaI { i: family.corank() };
            if !core_family.supports_level(l) {
                return usage(format!(
                    "{core_family} supports levels from {} (got {})",
                    core_family.min_level(),
                    l
                ));
            }
            analyze_sigma(
                &ManifoldModel::rp(args.n),
                family.corank(),
                l,
                args.closed,
            )
        }
    };
    if !args.slices {
        report.slices = None;
    }
    if args.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
        return Ok(());
    }
    println!("{report}");
    if let Some(slices) = &report.slices {
        println!("slice parities:");
        for (i, parity) in slices {
            println!("i={i}: {}", u8::from(*parity));
        }
    }
    Ok(())
}

fn cmd_chi_series(args: ChiSeriesArgs) -> Result<(), Failure> {
    if let Some(keys) = &args.closure {
        let closed = closure_series(keys, args.max_degree)?;
        if args.json {
            println!("{}", serde_json::to_string(&closed).expect("series serializes"));
        } else {
            println!("{closed}");
        }
        return Ok(());
    }
    let key = match args.sing {
        Some(key) => key,
        None => unreachable!("clap requires --sing or --closure"),
    };
    let entry = catalog_entry(key);
    if args.max_degree > entry.max_degree {
        return Err(swcalc_core::error::Error::DegreeOutOfRange {
            requested: args.max_degree,
            max: entry.max_degree,
            what: "stratum series (catalogue truncation)",
        }
        .into());
    }
    let series = chi_series(&hat_w(&entry.ssw, args.max_degree));
    let series = if args.reduce { dold_reduce(&series) } else { series };
    if args.json {
        let value = json!({
            "stratum": key.to_string(),
            "name": entry.name.clone(),
            "max_degree": args.max_degree,
            "reduced": args.reduce,
            "series": serde_json::to_value(&series).expect("series serializes"),
        });
        println!("{value}");
    } else {
        println!("stratum: {}", entry.name);
        println!("{series}");
    }
    Ok(())
}

// ---------------------------------------------------------------------
// lower / sq
// ---------------------------------------------------------------------

/// Reads the `--schur`/`--poly` input pair shared by `lower` and `sq`.
fn class_input(
    schur: &Option<String>,
    poly: &Option<String>,
) -> Result<(Mod2Poly, bool), Failure> {
    match (schur, poly) {
        (Some(text), None) => {
            let partition = parse::partition(text).map_err(Failure::Usage)?;
            Ok((schur_to_poly(&partition), true))
        }
        (None, Some(text)) => Ok((parse::poly(text).map_err(Failure::Usage)?, false)),
        _ => unreachable!("clap enforces exactly one input"),
    }
}

fn cmd_lower(args: LowerArgs) -> Result<(), Failure> {
    let (input, _) = class_input(&args.schur, &args.poly)?;
    let lowered = lowering(&input, args.j);
    let schur_form = if args.to_schur {
        Some(poly_to_schur(&lowered)?)
    } else {
        None
    };
    if args.json {
        let value = json!({
            "j": args.j,
            "input": input.to_string(),
            "poly": lowered.to_string(),
            "schur": schur_form.as_ref().map(|c| c.to_string()),
        });
        println!("{value}");
        return Ok(());
    }
    println!("poly: {lowered}");
    if let Some(combo) = schur_form {
        println!("schur: {combo}");
    }
    Ok(())
}

fn cmd_sq(args: SqArgs) -> Result<(), Failure> {
    match (&args.schur, &args.poly) {
        (Some(text), None) => {
            let partition = parse::partition(text).map_err(Failure::Usage)?;
            let result = steenrod_sq_schur(args.k, &SchurCombo::singleton(partition.clone()))?;
            if args.json {
                println!(
                    "{}",
                    json!({
                        "k": args.k,
                        "input": SchurCombo::singleton(partition).to_string(),
                        "schur": result.to_string(),
                    })
                );
            } else {
                println!("{result}");
            }
        }
        (None, Some(text)) => {
            let input = parse::poly(text).map_err(Failure::Usage)?;
            let result = steenrod_sq(args.k, &input);
            if args.json {
                println!(
                    "{}",
                    json!({
                        "k": args.k,
                        "input": input.to_string(),
                        "poly": result.to_string(),
                    })
                );
            } else {
                println!("{result}");
            }
        }
        _ => unreachable!("clap enforces exactly one input"),
    }
    Ok(())
}

// ---------------------------------------------------------------------
// aluffi / restriction-demo
// ---------------------------------------------------------------------

fn cmd_aluffi(args: AluffiArgs) -> Result<(), Failure> {
    let transform = aluffi_matrix(args.n);
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&transform).expect("transform serializes")
        );
        return Ok(());
    }
    if args.inverse {
        println!("{}", transform.inverse);
    } else {
        println!("{}", transform.matrix);
    }
    Ok(())
}

fn cmd_restriction_demo(args: RestrictionDemoArgs) -> Result<(), Failure> {
    let demo = restriction_demo()?;
    if args.json {
        println!("{}", serde_json::to_string(&demo).expect("demo serializes"));
        return Ok(());
    }
    println!("system:");
    println!("{}", demo.system);
    let labels = demo.system.labels();
    let assignments: Vec<String> = labels
        .iter()
        .zip(&demo.solution)
        .map(|(label, value)| format!("{label} = {value}"))
        .collect();
    println!("solution: {}", assignments.join(", "));
    println!("class: {}", demo.answer);
    println!("mod 2, degree 2: {}", demo.degree2_mod2);
    println!("mod 2, degree 3: {}", demo.degree3_mod2);
    Ok(())
}
