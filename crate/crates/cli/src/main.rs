use std::path::{Path, PathBuf};
use std::process::ExitCode;

use charlab::lab::Scope;
use charlab_cli::cache::TableCache;
use charlab_cli::corpus::{default_manifest_path, Manifest};
use charlab_cli::groupfile::read_group_file;
use charlab_cli::report::{render_aggregate, render_text, to_json};
use charlab_cli::run::{self, Checker, Options};
use charlab_cli::{exit, CliError};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "charlab", version, about = "Character conductors, p-rationality levels and principal blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cache directory; overrides $CHARLAB_CACHE.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Compute every table from scratch.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Include wall-clock timings (reports are then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rationality profile of one group.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Run checkers on one group; exit 1 if any verdict is false.
    Check {
        file: PathBuf,
        #[arg(long)]
        p: u64,
        /// Comma-separated: continuity, continuity-all, conjb, conjb-ppal,
        /// mckay, exponent, audit. Default: all.
        #[arg(long, value_delimiter = ',')]
        checker: Vec<String>,
        /// Scope of a bare `continuity`.
        #[arg(long, value_enum, default_value_t = ScopeArg::B0)]
        scope: ScopeArg,
    },
    /// Every checker and audit on every corpus group and prime.
    Sweep {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        p: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScopeArg {
    All,
    B0,
}

fn file_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::INPUT_ERROR as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cache = if cli.no_cache {
        None
    } else {
        TableCache::resolve_dir(cli.cache_dir.as_deref()).map(TableCache::new)
    };
    let opts = Options {
        cache,
        timing: cli.timing,
    };
    let emit_report = |r: &charlab_cli::report::Report| match cli.format {
        Format::Json => print!("{}", to_json(r)),
        Format::Text => print!("{}", render_text(r)),
    };
    match &cli.command {
        Command::Analyze { file, p } => {
            run::validate_prime(*p)?;
            let gf = read_group_file(file)?;
            let r = run::analyze(&file_id(file), &gf, *p, &opts)?;
            emit_report(&r);
            Ok(exit::OK)
        }
        Command::Check {
            file,
            p,
            checker,
            scope,
        } => {
            run::validate_prime(*p)?;
            let scope = match scope {
                ScopeArg::All => Scope::All,
                ScopeArg::B0 => Scope::B0,
            };
            let checkers: Vec<Checker> = if checker.is_empty() {
                Checker::ALL.to_vec()
            } else {
                checker
                    .iter()
                    .map(|s| {
                        let c: Checker = s.parse()?;
                        Ok(if s == "continuity" { c.with_scope(scope) } else { c })
                    })
                    .collect::<Result<_, CliError>>()?
            };
            let gf = read_group_file(file)?;
            let r = run::check(&file_id(file), &gf, *p, &checkers, &opts)?;
            emit_report(&r);
            Ok(run::report_exit_code(&r))
        }
        Command::Sweep { corpus, p, jobs } => {
            let path = corpus.clone().unwrap_or_else(default_manifest_path);
            let m = Manifest::load(&path)?;
            let a = run::sweep(&m, p, (*jobs).max(1), &opts)?;
            match cli.format {
                Format::Json => print!("{}", to_json(&a)),
                Format::Text => print!("{}", render_aggregate(&a)),
            }
            Ok(run::aggregate_exit_code(&a))
        }
    }
}
