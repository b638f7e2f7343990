mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Output;

#[derive(Parser, Debug)]
#[command(name = "ngrpd", version, about = "Finite n-groupoids, hypercovers and graph-cover Galois checks")]
struct Cli {
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for commands that run independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit Δ^k, its boundary or a horn as a simplicial set.
    Delta(DeltaArgs),
    /// Check a simplicial object or morphism for a matching-map property.
    Check(CheckArgs),
    /// Factor a morphism through its mapping path object.
    Factorize(FactorizeArgs),
    /// Audit the fibrant-object axioms on a directory of simplicial objects.
    AuditCfo(SampleArgs),
    /// Audit the site axioms on every small object of a site.
    AuditSite(AuditSiteArgs),
    /// The monodromy action of a graph cover.
    Fiber(FiberArgs),
    /// The graph cover of a free-group action.
    BuildCover(BuildCoverArgs),
    /// Galois round trips and exactness on a directory of covers.
    GaloisAudit(GaloisAuditArgs),
    /// The marked category of small n-groupoids over a site.
    Localize(LocalizeArgs),
    /// Enumerate hammocks between two objects of a marked category.
    Hammocks(HammocksArgs),
    /// Compare span and hammock components of a marked category.
    CompareModels(CompareArgs),
    /// Run the bundled acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct DeltaArgs {
    #[arg(long)]
    pub k: usize,
    /// Truncation level.
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, conflicts_with = "horn")]
    pub boundary: bool,
    /// Index of the omitted face.
    #[arg(long)]
    pub horn: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Groupoid,
    Fibration,
    Hypercover,
    WeakEquivalence,
    Classify,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub kind: CheckKind,
    /// A natural number or `inf`.
    #[arg(long, default_value = "inf")]
    pub n: String,
    /// Simplicial object, for `groupoid`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Simplicial morphism, for the other kinds.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FactorizeArgs {
    #[arg(long)]
    pub map: PathBuf,
    /// Write `<prefix>middle.json`, `<prefix>r.json` and `<prefix>q.json`.
    #[arg(long)]
    pub out_prefix: Option<String>,
    /// Glue along the other endpoint of the path object.
    #[arg(long)]
    pub mirrored: bool,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub sample: PathBuf,
}

#[derive(Args, Debug)]
pub struct AuditSiteArgs {
    /// `finsets`, `z2`, `s3`, `figure-eight` or a site JSON file.
    #[arg(long)]
    pub site: String,
    #[arg(long, default_value_t = 3)]
    pub bound: usize,
    /// Leave out the empty object, whose map to the terminal object is
    /// never a surjection.
    #[arg(long)]
    pub nonempty: bool,
}

#[derive(Args, Debug)]
pub struct FiberArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub cover: PathBuf,
}

#[derive(Args, Debug)]
pub struct BuildCoverArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub action: PathBuf,
}

#[derive(Args, Debug)]
pub struct GaloisAuditArgs {
    /// Directory with `base.json` and any number of cover files.
    #[arg(long)]
    pub sample: PathBuf,
    /// Truncation of the lifted objects.
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct LocalizeArgs {
    /// `finsets`, `z2`, `s3`, `figure-eight` or a site JSON file.
    #[arg(long)]
    pub site: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub bound: usize,
    #[arg(long)]
    pub truncation: Option<usize>,
    /// Cover class deciding which morphisms are hypercovers.
    #[arg(long)]
    pub hypercover_class: Option<String>,
}

#[derive(Args, Debug)]
pub struct HammocksArgs {
    #[arg(long)]
    pub cat: PathBuf,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    /// Row length.
    #[arg(short = 'n', long = "length")]
    pub n: usize,
    /// Height.
    #[arg(short = 'k', long = "height", default_value_t = 0)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub cat: PathBuf,
    /// Compare a single pair; all pairs when omitted.
    #[arg(long, requires = "to")]
    pub from: Option<String>,
    #[arg(long, requires = "from")]
    pub to: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub max_length: usize,
    /// Hammocks up to this height are also enumerated and checked.
    #[arg(long, default_value_t = 1)]
    pub max_height: usize,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Criterion id, name fragment or module.
    #[arg(long)]
    pub filter: Option<String>,
    /// Directory whose fixture files replace the bundled ones.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Delta(a) => commands::delta(a),
        Command::Check(a) => commands::check(a),
        Command::Factorize(a) => commands::factorize(a),
        Command::AuditCfo(a) => commands::audit_cfo(a),
        Command::AuditSite(a) => commands::audit_site(a),
        Command::Fiber(a) => commands::fiber(a),
        Command::BuildCover(a) => commands::build_cover(a),
        Command::GaloisAudit(a) => commands::galois_audit(a),
        Command::Localize(a) => commands::localize(a),
        Command::Hammocks(a) => commands::hammocks(a),
        Command::CompareModels(a) => commands::compare_models(a),
        Command::Selftest(a) => commands::selftest(a, cli.jobs),
    };
    match result.and_then(|out| emit(&cli, out)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, out: Output) -> ngrpd::Result<u8> {
    let mut json = out.json;
    if out.is_report {
        let argv: Vec<String> = std::env::args().skip(1).collect();
        json["command"] = serde_json::json!(argv);
        json["status"] = serde_json::json!(out.status.name());
    }
    let text = ngrpd::report::to_sorted_json(&json)?;
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| ngrpd::Error::Format(format!("{}: {e}", path.display())))?;
    }
    let mut stdout = std::io::stdout().lock();
    let written = match cli.format {
        Format::Json => writeln!(stdout, "{text}"),
        Format::Text => std::iter::once(format!("status: {}", out.status.name()))
            .chain(out.text.iter().cloned())
            .try_for_each(|line| writeln!(stdout, "{line}")),
    };
    match written.and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(ngrpd::Error::Format(format!("stdout: {e}"))),
        _ => Ok(out.status.exit_code() as u8),
    }
}
