use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use quadmod::Bundle;
use quadmod_cli::{run_command, Format, Options, Outcome, EXIT_USAGE, VERBS};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

/// Construct and verify quadratic modules stored in bundle files.
#[derive(Debug, Parser)]
#[command(name = "quadmod", version)]
struct Cli {
    /// One of: verify, classify, from-nil2, to-crossed-complex, pullback-nil2,
    /// pullback-quad, induce-nil2, induce-quad, cokernel, tensor, homs,
    /// adjunction-check
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(VERBS))]
    verb: String,
    /// Input bundle, or `-` for standard input
    bundle: PathBuf,
    /// Names of the objects the verb operates on
    names: Vec<String>,
    /// Write the result bundle here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Largest group order admitted by exhaustive hom searches
    #[arg(long)]
    max_order: Option<usize>,
    /// Coset table cap (default: QUADMOD_MAX_COSETS or 20000)
    #[arg(long)]
    max_cosets: Option<usize>,
    /// Number of random samples for word-level law checks
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let defaults = Options::default();
    let opts = Options {
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        },
        max_order: cli.max_order.unwrap_or(defaults.max_order),
        max_cosets: cli.max_cosets.unwrap_or(defaults.max_cosets),
        samples: cli.samples.unwrap_or(defaults.samples),
        seed: cli.seed.unwrap_or(defaults.seed),
    };
    let mut outcome = match read_input(&cli.bundle) {
        Err(e) => Outcome::usage(&cli.verb, &format!("cannot read {}: {e}", cli.bundle.display())),
        Ok(text) => match Bundle::parse(&text) {
            Err(e) => Outcome::from_error(&cli.verb, &e, EXIT_USAGE),
            Ok(bundle) => run_command(&cli.verb, &cli.names, &bundle, &opts),
        },
    };
    if let (Some(path), Some(b)) = (&cli.out, &outcome.bundle) {
        if let Err(e) = std::fs::write(path, b.to_canonical_string()) {
            outcome = Outcome::usage(&cli.verb, &format!("cannot write {}: {e}", path.display()));
        }
    }
    let text = outcome.render(opts.format, cli.out.is_none());
    print!("{text}");
    if outcome.status != 0 {
        eprintln!("quadmod {}: exit {}", outcome.verb, outcome.status);
    }
    ExitCode::from(outcome.status as u8)
}
