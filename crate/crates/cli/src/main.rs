mod commands;
mod fuzz;

use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Free groups, unitriangular automorphisms and the HNN witness.
///
/// Exit codes: 0 success, 1 relation failure, 2 input error, 3 nontrivial.
#[derive(Debug, Parser)]
#[command(name = "unitri", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Rank of the free group (for HNN words, of the base group).
    #[arg(long, global = true)]
    pub rank: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long = "max-length", global = true, default_value_t = 12)]
    pub max_length: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Comma-separated relation groups or fuzz properties.
    #[arg(long, global = true, value_delimiter = ',')]
    pub only: Vec<String>,
}

impl Global {
    pub fn rank_or(&self, default: u32) -> u32 {
        self.rank.unwrap_or(default)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Freely reduce a word.
    Reduce { input: String },
    /// Apply an automorphism word to a free-group word.
    Apply {
        #[arg(long)]
        auto: String,
        #[arg(long)]
        word: String,
    },
    /// Compose two automorphisms, left one first.
    Compose {
        left: String,
        right: String,
        /// Read both operands as λ-words and print a unitriangular tuple.
        #[arg(long)]
        ut: bool,
    },
    /// Invert a word, a unitriangular element or an automorphism.
    Invert {
        #[arg(long, group = "what")]
        ut: Option<String>,
        #[arg(long, group = "what")]
        word: Option<String>,
        #[arg(long, group = "what")]
        auto: Option<String>,
    },
    /// Recognize an automorphism given by basis images as unitriangular.
    UtFromImages {
        #[arg(required = true)]
        images: Vec<String>,
    },
    /// Run the relation catalog.
    CheckRelations {
        /// Largest index of the Nielsen generators to check.
        #[arg(long, default_value_t = 6)]
        limit: u32,
        #[arg(long, hide = true)]
        corrupt_table: bool,
    },
    /// Britton-reduce an HNN word.
    Britton {
        input: String,
        #[arg(long)]
        check_trivial: bool,
    },
    /// Image of an HNN word over F_2 in U_4.
    FpImage { input: String },
    /// Run the property catalog.
    Fuzz {
        /// JSONL corpus: replayed first, new failures are appended.
        #[arg(long, default_value = "fuzz-failures.jsonl")]
        corpus: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Time free reduction and check linear scaling.
    Bench {
        #[arg(long, value_delimiter = ',',
              default_values_t = [100_000usize, 1_000_000, 10_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    RelationFailure,
    Nontrivial,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::RelationFailure => 1,
            Status::Nontrivial => 3,
        }
    }
}

/// Any failure caused by the input; always exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Reads the argument, or all of stdin when it is `-`.
pub fn read_input(arg: &str) -> Result<String, InputError> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(arg.to_owned())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
