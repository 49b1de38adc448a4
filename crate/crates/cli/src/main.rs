use std::path::PathBuf;
use std::process::ExitCode;

use bhclass::tables::GroupTable;
use bhclass_cli::catalog::{adhoc_record, parse_gram, Catalog, Entry};
use bhclass_cli::commands::parse_class;
use bhclass_cli::{
    cmd_ahss, cmd_bh_image, cmd_classify, cmd_embed6, cmd_pi3, cmd_tables, exit, CliError, ClassifyOptions, Format,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Embeddings of closed 4-manifolds in R^7: BH image, isotopy counts,
/// complement invariants, tables and spectral-sequence checks.
#[derive(Parser)]
#[command(name = "bhclass", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,

    /// Group table file (defaults to the built-in table).
    #[arg(long, global = true)]
    table: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Args)]
struct Input {
    /// Manifold catalog (defaults to the built-in catalog).
    #[arg(long)]
    catalog: Option<PathBuf>,

    /// Select catalog entries by name (repeatable; default: all).
    #[arg(long = "name")]
    names: Vec<String>,

    /// Ad hoc simply-connected manifold given by its Gram matrix, e.g. "[[0,1],[1,0]]".
    #[arg(long, conflicts_with_all = ["catalog", "names"])]
    gram: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification report per manifold.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Box bound for indefinite enumerations.
        #[arg(long, default_value_t = 10)]
        bound: u64,
        /// Query a single BH class, e.g. "(1,0)".
        #[arg(long)]
        class: Option<String>,
        /// Use the opposite orientation (negates the form and σ).
        #[arg(long)]
        reverse_orientation: bool,
    },
    /// Enumerate im BH (characteristic classes of square σ).
    BhImage {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10)]
        bound: u64,
        /// Enumerate characteristic classes of this square instead of σ.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<i64>,
    },
    /// π_3 and homology of the complement model for a BH class.
    Pi3 {
        /// The class, e.g. "(2,0)".
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Embeddability in R^6 with the equivalent conditions.
    Embed6 {
        #[command(flatten)]
        input: Input,
    },
    /// Table lookup: a key such as "E7 S4", "t35 <n>", or "list".
    Tables {
        #[arg(required = true, num_args = 1..)]
        query: Vec<String>,
    },
    /// Spectral-sequence report for Ω_*(X × BO⟨5⟩).
    Ahss {
        /// S2, CPinf, CP<n>, S<k>, pt.
        space: String,
        #[arg(long, default_value_t = 7)]
        degree: u32,
        /// Coefficient row: bordism or fiber.
        #[arg(long, default_value = "bordism")]
        row: String,
    },
}

fn entries(input: &Input) -> Result<Vec<Entry>, CliError> {
    if let Some(g) = &input.gram {
        let record = adhoc_record(parse_gram(g)?);
        let catalog = Catalog {
            manifold: vec![record],
        };
        return catalog.entries(&[]);
    }
    let catalog = match &input.catalog {
        Some(p) => Catalog::load(p)?,
        None => Catalog::builtin(),
    };
    catalog.entries(&input.names)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let table = match &cli.table {
        Some(p) => GroupTable::load(p)?,
        None => GroupTable::builtin(),
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Machine => Format::Machine,
    };
    let rendered = match &cli.command {
        Command::Classify {
            input,
            bound,
            class,
            reverse_orientation,
        } => {
            let opts = ClassifyOptions {
                bound: *bound,
                class: class.as_deref().map(parse_class).transpose()?,
                reverse_orientation: *reverse_orientation,
                table,
            };
            cmd_classify(&entries(input)?, &opts)?
        }
        Command::BhImage { input, bound, target } => cmd_bh_image(&entries(input)?, *bound, *target)?,
        Command::Pi3 { class } => cmd_pi3(&parse_class(class)?)?,
        Command::Embed6 { input } => cmd_embed6(&entries(input)?)?,
        Command::Tables { query } => cmd_tables(&table, &query.join(" "))?,
        Command::Ahss { space, degree, row } => cmd_ahss(&table, space, *degree, row)?,
    };
    Ok(rendered.render(format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::from(exit::OK)
        }
        Err(e) => {
            eprintln!("bhclass: {e}");
            ExitCode::from(e.code)
        }
    }
}
