//! The `frattini` command line: dimension tables, group-law verification,
//! submodule analysis, single constructions and table reproduction.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frattini_cli::{
    cmd_construct, cmd_decompose, cmd_gamma_verify, cmd_table2, cmd_witt, CmdOutput, Format,
    GammaVerifyArgs, SpecArgs,
};

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "frattini",
    version,
    about = "Builds small exponent-p groups whose automorphism group induces a prescribed \
             maximal linear group on the Frattini quotient, and verifies the certificates."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct SpecOpts {
    /// Odd prime modulus (the construction itself needs p >= 5)
    #[arg(long)]
    p: u64,
    /// Dimension of the natural module
    #[arg(long)]
    d: usize,
    /// Aschbacher class tag: C1, C2, C3, C4, C7 or C8
    #[arg(long)]
    class: String,
    /// Class parameters as comma-separated key=value pairs,
    /// e.g. r=2 | d1=2,d2=3 | t=2,r=3 | form=symplectic
    #[arg(long, default_value = "")]
    param: String,
    /// Seed for every randomised strategy (identical seeds give identical output)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Line budget of the exhaustive submodule strategy
    #[arg(long = "exhaustive-bound")]
    exhaustive_bound: Option<u64>,
    /// Structure-constant cache directory (default: $FRATTINI_CACHE_DIR or .cache/frattini)
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

impl From<&SpecOpts> for SpecArgs {
    fn from(o: &SpecOpts) -> SpecArgs {
        SpecArgs {
            p: o.p,
            d: o.d,
            class: o.class.clone(),
            params: o.param.clone(),
            seed: o.seed,
            exhaustive_bound: o.exhaustive_bound,
            cache_dir: o.cache_dir.clone(),
            format: o.format.into(),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions of the Lie, alternating and symmetric powers of V
    Witt {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        #[arg(long = "max-n")]
        max_n: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Group-law verification suites for the Lie n-tuple groups
    Gamma {
        #[command(subcommand)]
        cmd: GammaCmd,
    },
    /// Minimal/maximal submodules of a Lie power under a maximal subgroup
    Decompose {
        #[command(flatten)]
        spec: SpecOpts,
        /// Which Lie power to analyse (1..=4)
        #[arg(long)]
        power: usize,
        /// Exit 0 instead of 3 when the randomised strategy ran
        #[arg(long = "accept-non-exhaustive", default_value_t = false)]
        accept_non_exhaustive: bool,
    },
    /// Build one group G, verify its certificate and emit the report
    Construct {
        #[command(flatten)]
        spec: SpecOpts,
        /// Write the JSON report here (in addition to stdout output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce every implemented table row with d <= d-max
    Table2 {
        #[arg(long)]
        p: u64,
        #[arg(long = "d-max")]
        d_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "exhaustive-bound")]
        exhaustive_bound: Option<u64>,
        #[arg(long = "cache-dir")]
        cache_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum GammaCmd {
    /// Associativity, exponent and commutator-identity suites
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Random trials per suite (deterministic checks always run)
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "cache-dir")]
        cache_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
}

fn emit(out: CmdOutput) -> ExitCode {
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Witt { p, d, max_n, format } => emit(cmd_witt(p, d, max_n, format.into())),
        Cmd::Gamma { cmd: GammaCmd::Verify { p, d, n, trials, seed, cache_dir, format } } => {
            emit(cmd_gamma_verify(GammaVerifyArgs {
                p,
                d,
                n,
                trials,
                seed,
                cache_dir,
                format: format.into(),
            }))
        }
        Cmd::Decompose { spec, power, accept_non_exhaustive } => {
            emit(cmd_decompose(&(&spec).into(), power, accept_non_exhaustive))
        }
        Cmd::Construct { spec, out } => emit(cmd_construct(&(&spec).into(), out.as_deref())),
        Cmd::Table2 { p, d_max, seed, exhaustive_bound, cache_dir, format } => {
            emit(cmd_table2(p, d_max, seed, exhaustive_bound, cache_dir, format.into()))
        }
    }
}
