use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cellmac_core::{builtins, CellComplex, ComplexDescription, Error, Field};
use clap::{ArgGroup, Parser, ValueEnum};

mod report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Validate,
    Cm,
    Homology,
    Hexagon,
    Resolve,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "cellmac", version, about = "Cohen-Macaulay and hexagon reports for regular cell complexes")]
#[command(group(ArgGroup::new("input").required(true).args(["builtin", "file"])))]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Name of a built-in complex
    #[arg(long)]
    builtin: Option<String>,
    /// JSON complex description
    #[arg(long)]
    file: Option<PathBuf>,
    /// Characteristic of the coefficient field; 0 means the rationals
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
}

enum Failure {
    Invalid(String),
    Io(String),
    Precondition(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Io(_) => 3,
            Failure::Precondition(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Io(m) | Failure::Precondition(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let m = e.to_string();
        match e {
            Error::IntersectionPropertyViolation(..)
            | Error::NonGraded { .. }
            | Error::BoundaryNotSphere(_)
            | Error::MalformedSpec(_)
            | Error::NotPrime(_)
            | Error::TooManyVertices { .. }
            | Error::UnknownBuiltin(_) => Failure::Invalid(m),
            _ => Failure::Precondition(m),
        }
    }
}

fn load(args: &Args, field: Field) -> Result<CellComplex, Failure> {
    if let Some(name) = &args.builtin {
        let complex = builtins::builtin(name)?;
        if field != Field::Rational {
            // rebuild so the sphere checks also run over the chosen field
            return Ok(CellComplex::build(&complex.description(), field)?);
        }
        return Ok(complex);
    }
    let path = args.file.as_ref().expect("clap enforces one input");
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let desc = ComplexDescription::from_json(&text)?;
    Ok(CellComplex::build(&desc, field)?)
}

#[cfg(feature = "parallel")]
fn set_jobs(jobs: Option<u32>) {
    if let Some(n) = jobs {
        // fails only if a global pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn set_jobs(_jobs: Option<u32>) {}

fn run(args: &Args) -> Result<String, Failure> {
    let field = Field::from_characteristic(args.characteristic)?;
    set_jobs(args.jobs);
    let complex = load(args, field)?;
    let f = args.format;
    Ok(match args.command {
        Command::Validate => report::validate(&complex, field, f),
        Command::Cm => report::cm(&complex, field, f),
        Command::Homology => report::homology(&complex, field, f),
        Command::Hexagon => report::hexagon(&complex, field, f),
        Command::Resolve => report::resolve(&complex, field, f),
        Command::Table => report::table(&complex, field, f)?,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
