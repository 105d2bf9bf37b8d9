//! `torsorlab`: evaluate structure maps, enumerate carriers and run theorem suites
//! on finite groups.

mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use torsorlab::engine::{Engine, Mutation};
use torsorlab::subset::{grassmannian, left_transversal_set, right_transversal_set};
use torsorlab::suites::{run_checks, Config};
use torsorlab::{structure, symmetry, torsor, FiniteGroup, Subset};

use render::Listing;

#[derive(Parser)]
#[command(name = "torsorlab", version, about = "Structure maps, torsors and their laws on the power set of a finite group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Γ(x,a,y,b,z), or Γ̌ with --opposite.
    Gamma(GammaArgs),
    /// Evaluate Σ(b,x,y,z), or Σ̌ with --opposite.
    Sigma(SigmaArgs),
    /// Run the registered checks and write a report.
    ///
    /// CSV columns: check_id, instance, status, mode, checked, group, witness, note, statement.
    Suite(SuiteArgs),
    /// List subgroups, sections of a subgroup, or the elements of a torsor carrier.
    Enumerate {
        #[command(subcommand)]
        what: Enumerate,
    },
    /// Re-derive the 24 sign vectors of the symmetry table on a group.
    ///
    /// CSV columns: permutation, letters, printed, printed_holds, checked_vector, status, derived.
    Signtable(SigntableArgs),
}

#[derive(Args)]
struct GroupArg {
    /// Builtin name (z<n>, s<n>, d<n>, q8, k4, products like z2xz4) or a JSON group file.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct GammaArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    x: String,
    #[arg(long)]
    a: String,
    #[arg(long)]
    y: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    z: String,
    #[arg(long)]
    opposite: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SigmaArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    b: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long)]
    z: String,
    #[arg(long)]
    opposite: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanMode {
    /// Exhaustive below the thresholds, seeded above.
    Auto,
    /// Exhaustive wherever the group is small enough to list subsets at all. Can be slow.
    Exhaustive,
    /// Seeded everywhere.
    Random,
}

#[derive(Args)]
struct SuiteArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long, env = "TORSORLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ScanMode::Auto)]
    mode: ScanMode,
    /// Subset-triple scans are exhaustive iff 2^n is at most this.
    #[arg(long, default_value_t = Config::default().threshold_subsets)]
    threshold_subsets: u64,
    /// Subgroup-tuple scans are exhaustive iff the group has at most this many subgroups.
    #[arg(long, default_value_t = Config::default().threshold_subgroups)]
    threshold_subgroups: usize,
    /// Samples per seeded check.
    #[arg(long, default_value_t = Config::default().samples)]
    samples: u64,
    /// Only run checks whose id starts with this prefix, e.g. "lattice" or "torsor.u-b".
    #[arg(long)]
    only: Option<String>,
    /// Corrupt the engine on purpose, to confirm the checks notice.
    #[arg(long, hide = true, value_parser = parse_mutation)]
    mutation: Option<Mutation>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Enumerate {
    /// All subgroups.
    Grassmannian {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sections x ⊤ b (with --b) or a ⊤ x (with --a).
    Transversals {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, conflicts_with = "a", required_unless_present = "a")]
        b: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Elements of U_ab, Ǔ_ab, U_b or Ǔ_b.
    Carrier {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum)]
        kind: CarrierKind,
        /// Required for uab and uab-check.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CarrierKind {
    Uab,
    UabCheck,
    Ub,
    UbCheck,
}

#[derive(Args)]
struct SigntableArgs {
    #[command(flatten)]
    group: GroupArg,
    #[command(flatten)]
    output: OutputArgs,
}

/// A usage or validation error: exit code 2.
struct Invalid(String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(e: E) -> Self {
        Invalid(e.to_string())
    }
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    Mutation::from_name(s).ok_or_else(|| format!("unknown mutation {s:?}"))
}

fn load_group(spec: &str) -> Result<FiniteGroup, Invalid> {
    if let Some(path) = spec.strip_prefix("file:") {
        return load_group_file(Path::new(path));
    }
    match FiniteGroup::builtin(spec) {
        Ok(g) => Ok(g),
        Err(e) if Path::new(spec).is_file() => load_group_file(Path::new(spec)).map_err(|f| Invalid(format!("{e}; {}", f.0))),
        Err(e) => Err(e.into()),
    }
}

fn load_group_file(path: &Path) -> Result<FiniteGroup, Invalid> {
    let text = std::fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    FiniteGroup::from_json(&text).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

fn subset(g: &FiniteGroup, literal: &str) -> Result<Subset, Invalid> {
    Ok(g.parse_subset(literal)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Invalid> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Invalid(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Invalid> {
    match cli.command {
        Command::Gamma(args) => {
            let g = load_group(&args.group.group)?;
            let [x, a, y, b, z] = [&args.x, &args.a, &args.y, &args.b, &args.z].map(|s| subset(&g, s));
            let (x, a, y, b, z) = (x?, a?, y?, b?, z?);
            let (name, value) = if args.opposite {
                ("gamma_check", structure::gamma_check(&g, &x, &a, &y, &b, &z)?)
            } else {
                ("gamma", structure::gamma(&g, &x, &a, &y, &b, &z)?)
            };
            emit(args.output.out.as_deref(), &render::map_value(args.output.format, &g, name, &value)?)?;
        }
        Command::Sigma(args) => {
            let g = load_group(&args.group.group)?;
            let [b, x, y, z] = [&args.b, &args.x, &args.y, &args.z].map(|s| subset(&g, s));
            let (b, x, y, z) = (b?, x?, y?, z?);
            let (name, value) = if args.opposite {
                ("sigma_check", structure::sigma_check(&g, &b, &x, &y, &z)?)
            } else {
                ("sigma", structure::sigma(&g, &b, &x, &y, &z)?)
            };
            emit(args.output.out.as_deref(), &render::map_value(args.output.format, &g, name, &value)?)?;
        }
        Command::Suite(args) => return suite(args),
        Command::Enumerate { what } => enumerate(what)?,
        Command::Signtable(args) => return signtable(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn suite(args: SuiteArgs) -> Result<ExitCode, Invalid> {
    let g = load_group(&args.group.group)?;
    let (threshold_subsets, threshold_subgroups) = match args.mode {
        ScanMode::Auto => (args.threshold_subsets, args.threshold_subgroups),
        ScanMode::Exhaustive => (u64::MAX, usize::MAX),
        ScanMode::Random => (0, 0),
    };
    let config = Config {
        seed: args.seed,
        threshold_subsets,
        threshold_subgroups,
        samples: args.samples,
        mutation: args.mutation,
    };
    let prefix = args.only.unwrap_or_default();
    let report = run_checks(&g, &config, |e| e.id.starts_with(&prefix));
    if report.checks.is_empty() {
        return Err(Invalid(format!("no check id starts with {prefix:?}")));
    }
    emit(args.out.as_deref(), &render::report(args.format, &report)?)?;
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn enumerate(what: Enumerate) -> Result<(), Invalid> {
    let (listing, output) = match what {
        Enumerate::Grassmannian { group, output } => {
            let g = load_group(&group.group)?;
            (Listing::new(&g, "grassmannian", "subgroups", grassmannian(&g)?), output)
        }
        Enumerate::Transversals { group, b, a, output } => {
            let g = load_group(&group.group)?;
            let items = match (b, a) {
                (Some(b), _) => left_transversal_set(&g, &subset(&g, &b)?)?,
                (None, Some(a)) => right_transversal_set(&g, &subset(&g, &a)?)?,
                (None, None) => return Err(Invalid("pass --b or --a".into())),
            };
            (Listing::new(&g, "transversals", "sections", items), output)
        }
        Enumerate::Carrier { group, kind, a, b, output } => {
            let g = load_group(&group.group)?;
            let e = Engine::new(&g);
            let b = subset(&g, &b)?;
            let a = match (kind, a) {
                (CarrierKind::Uab | CarrierKind::UabCheck, Some(a)) => Some(subset(&g, &a)?),
                (CarrierKind::Uab | CarrierKind::UabCheck, None) => return Err(Invalid("--a is required for this kind".into())),
                (_, _) => None,
            };
            let carrier = match (kind, a) {
                (CarrierKind::Uab, Some(a)) => torsor::carrier_u_ab(e, &a, &b)?,
                (CarrierKind::UabCheck, Some(a)) => torsor::carrier_u_ab_check(e, &a, &b)?,
                (CarrierKind::Ub, _) => torsor::carrier_u_b(e, &b)?,
                (_, _) => torsor::carrier_u_b_check(e, &b)?,
            };
            let label = carrier.label.clone();
            (Listing::new(&g, &label, "elements", carrier.elements), output)
        }
    };
    emit(output.out.as_deref(), &render::listing(output.format, &listing)?)
}

fn signtable(args: SigntableArgs) -> Result<ExitCode, Invalid> {
    let g = load_group(&args.group.group)?;
    let rows = symmetry::verify_sign_table(&g)?;
    emit(args.output.out.as_deref(), &render::sign_rows(args.output.format, &g, &rows)?)?;
    Ok(if rows.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
