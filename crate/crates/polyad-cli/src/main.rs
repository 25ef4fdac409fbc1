use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod common;
mod pgf;

use common::{CliError, Ctx};

/// Construct, verify and analyze finite n-ary groups.
#[derive(Parser)]
#[command(name = "polyad", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of tuples an exhaustive check may visit.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    eval_budget: u64,
    /// Maximum number of entries in a materialized operation table.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    table_cap: u64,
    /// Accepted for compatibility. Computation is single-threaded, so output never depends on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// PGF document, or `-` for stdin.
    #[arg(default_value = "-")]
    file: String,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CenterKindArg {
    Standard,
    Weak,
    T,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity and solvability; exit 1 with a counterexample on failure.
    Verify(Input),
    /// Summary of a group.
    Info(Input),
    /// Skew element of each element.
    Skew {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        element: Option<String>,
    },
    /// n-adic orders.
    Order {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        element: Option<String>,
    },
    /// The n-adic power a^[s].
    Power {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        element: String,
        #[arg(long, short = 's', allow_negative_numbers = true)]
        exp: i64,
    },
    /// The units subgroup E(A).
    Units(Input),
    /// The idempotent set I(A).
    Idempotents(Input),
    /// Centers, m-semicenters and semicentralizers.
    Center {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "standard")]
        kind: CenterKindArg,
        /// Only this m (m-1 must divide n-1).
        #[arg(long)]
        m: Option<usize>,
        /// Centralize this subset instead of the whole group.
        #[arg(long)]
        subset: Option<String>,
    },
    /// m-seminormalizers of a subgroup.
    Normalizer {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Every normality predicate for a subgroup.
    Normality {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subset: String,
    },
    /// All subgroups, by order.
    Subgroups(Input),
    /// Coset decomposition by a subgroup.
    Cosets {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Factor group by a semi-invariant subgroup.
    Factor {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subset: String,
        /// Print the factor group as a PGF document.
        #[arg(long)]
        pgf: bool,
    },
    /// Conjugacy and semiconjugacy of two subgroups.
    Conjugate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        to: String,
    },
    /// The Post covering group as a PGF table with grade annotations.
    PostCover(Input),
    /// The retract at an anchor as a Gluskin PGF document.
    Retract {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        anchor: Option<String>,
    },
    /// Cyclicity, commutativity and solvability.
    Classify(Input),
    /// Sylow decompositions at idempotent anchors.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        anchor: Option<String>,
    },
    /// Axiom systems on one groupoid, or the equivalence audit.
    Axioms {
        /// PGF document; not needed with --audit.
        file: Option<String>,
        /// Only these systems, e.g. POST2 or DIAG(1,2).
        #[arg(long)]
        system: Vec<String>,
        #[arg(long)]
        audit: bool,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Random semigroup-derived groupoids added to the audit corpus.
        #[arg(long, default_value_t = 200)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The group of n-ary permutations of a q-set.
    PermGroup {
        #[arg(short)]
        q: usize,
        #[arg(short)]
        n: usize,
        /// Twist on n-1 positions in cycle notation; defaults to (1 2 .. n-1).
        #[arg(long)]
        sigma: Option<String>,
        /// Arity of the group; defaults to ord(sigma)+1.
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Direct product of groups of equal arity.
    Product {
        #[arg(required = true, num_args = 1..)]
        files: Vec<String>,
    },
    /// A named example group as PGF.
    Example {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Solve an equation with one unknown, written with `_` for the hole.
    Solve {
        #[command(flatten)]
        input: Input,
        /// Space-separated letters, e.g. "a _ b".
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        rhs: String,
    },
}

fn run(cli: Cli) -> Result<common::Output, CliError> {
    let ctx = Ctx { limits: polyad::Limits { eval_budget: cli.eval_budget, table_cap: cli.table_cap } };
    let _ = cli.threads;
    use commands as c;
    match cli.command {
        Command::Verify(i) => c::verify(&ctx, &i.file),
        Command::Info(i) => c::info(&ctx, &i.file),
        Command::Skew { input, element } => c::skew(&ctx, &input.file, element.as_deref()),
        Command::Order { input, element } => c::order(&ctx, &input.file, element.as_deref()),
        Command::Power { input, element, exp } => c::power(&ctx, &input.file, &element, exp),
        Command::Units(i) => c::units(&ctx, &i.file),
        Command::Idempotents(i) => c::idempotents(&ctx, &i.file),
        Command::Center { input, kind, m, subset } => c::center(&ctx, &input.file, kind, m, subset.as_deref()),
        Command::Normalizer { input, subset, m } => c::normalizer(&ctx, &input.file, &subset, m),
        Command::Normality { input, subset } => c::normality(&ctx, &input.file, &subset),
        Command::Subgroups(i) => c::subgroups(&ctx, &i.file),
        Command::Cosets { input, subset, side } => c::cosets(&ctx, &input.file, &subset, side),
        Command::Factor { input, subset, pgf } => c::factor(&ctx, &input.file, &subset, pgf),
        Command::Conjugate { input, subset, to } => c::conjugate(&ctx, &input.file, &subset, &to),
        Command::PostCover(i) => c::post_cover(&ctx, &i.file),
        Command::Retract { input, anchor } => c::retract(&ctx, &input.file, anchor.as_deref()),
        Command::Classify(i) => c::classify(&ctx, &i.file),
        Command::Decompose { input, anchor } => c::decompose(&ctx, &input.file, anchor.as_deref()),
        Command::Axioms { file, system, audit, max_k, max_n, random, seed } => {
            if audit {
                c::axioms_audit(&ctx, max_k, max_n, random, seed)
            } else {
                c::axioms(&ctx, file.as_deref().unwrap_or("-"), &system)
            }
        }
        Command::PermGroup { q, n, sigma, arity } => c::perm_group(&ctx, q, n, sigma.as_deref(), arity),
        Command::Product { files } => c::product(&ctx, &files),
        Command::Example { name, list } => c::example(name.as_deref(), list),
        Command::Solve { input, pattern, rhs } => c::solve(&ctx, &input.file, &pattern, &rhs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    let result = run(cli);
    let mut out = std::io::stdout().lock();
    match result {
        Ok(o) => {
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                write!(out, "{}", o.text)
            };
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                let v = serde_json::json!({ "error": e.message(), "exit_code": e.exit_code() });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else if let CliError::Verification(m) = &e {
                let _ = writeln!(out, "verification failed");
                let _ = writeln!(out, "{m}");
            }
            if let CliError::Input(m) = &e {
                eprintln!("error: {m}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
