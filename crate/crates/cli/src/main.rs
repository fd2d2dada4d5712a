//! `hquat`: inspect quaternion rings over Galois rings, their homogeneous weights,
//! and one-sided codes over them.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hquat::search::Objective;
use hquat::Side;

#[derive(Debug, Parser)]
#[command(name = "hquat", version, about = "Quaternion rings, homogeneous weights and quaternion codes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Ring descriptor, e.g. '{"p":2,"r":2,"m":2}'; with --quat also "a" and "b".
    #[arg(long)]
    ring: String,

    /// Use the quaternion ring over the given Galois ring.
    #[arg(long)]
    quat: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightMethod {
    /// Closed form for the ring family.
    Closed,
    /// Character sum over units.
    Character,
    /// Möbius function of the principal-ideal poset.
    Mobius,
    /// All three, which must agree.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Hamming,
    Hom,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Hamming => Objective::Hamming,
            ObjectiveArg::Hom => Objective::Homogeneous,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, characteristic, unit count and average weight of a ring.
    RingInfo(RingArgs),

    /// Homogeneous weight table.
    Weights {
        #[command(flatten)]
        ring: RingArgs,
        /// Average value Γ as "num/den"; defaults to 1 for quaternion rings
        /// and to the natural value for Galois rings.
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, value_enum, default_value_t = WeightMethod::Closed)]
        method: WeightMethod,
        /// Only print the distinct weights and their multiplicities.
        #[arg(long)]
        summary: bool,
    },

    /// Principal ideals, Möbius values, minimal ideals and the generating character.
    Structure {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Check the closed-form minimal ideal of large rings against every element.
        #[arg(long)]
        long_running: bool,
        /// Random generators checked when not running exhaustively.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },

    /// Span a generator matrix file and report its distances.
    CodeAnalyze {
        file: PathBuf,
        /// Overrides the side given in the file.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },

    /// Coordinate image of a code over the base ring.
    Image {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },

    /// Exhaustive search over a generator-matrix template.
    Search {
        /// Quaternion ring descriptor.
        #[arg(long)]
        ring: String,
        /// Built-in template name (qc-2x6) or a template file.
        #[arg(long, default_value = "qc-2x6")]
        template: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Hamming)]
        objective: ObjectiveArg,
        /// Worker threads.
        #[arg(long, env = "HQUAT_JOBS")]
        jobs: Option<usize>,
        /// Maximum (assignment, message) pairs before stopping with a resume token.
        #[arg(long)]
        budget: Option<u128>,
        /// Restrict variables to units.
        #[arg(long)]
        units_only: bool,
        /// Also score codes that are not free.
        #[arg(long)]
        allow_non_free: bool,
        /// Maximizers analyzed in full.
        #[arg(long, default_value_t = 8)]
        report_limit: usize,
        /// Continue from the output of a run that ran out of budget.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::RingInfo(ring) => commands::ring_info(&ring),
        Command::Weights { ring, gamma, method, summary } => commands::weights(&ring, gamma.as_deref(), method, summary),
        Command::Structure { ring, side, long_running, samples } => {
            commands::structure(&ring, side.into(), long_running, samples)
        }
        Command::CodeAnalyze { file, side } => commands::code_analyze(&file, side.map(Into::into)),
        Command::Image { file, side } => commands::image(&file, side.map(Into::into)),
        Command::Search {
            ring,
            template,
            side,
            objective,
            jobs,
            budget,
            units_only,
            allow_non_free,
            report_limit,
            resume,
            out,
        } => {
            let opts = commands::SearchOpts {
                ring,
                template,
                side: side.into(),
                objective: objective.into(),
                jobs,
                budget,
                units_only,
                allow_non_free,
                report_limit,
                resume,
            };
            return output::finish_to(commands::search(&opts), cli.format, out.as_deref());
        }
    };
    output::finish_to(result, cli.format, None)
}
