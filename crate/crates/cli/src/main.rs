//! `tropgrass`: command line front end. Every run prints one report; the
//! exit status is 0 for ok, 1 for a failed property and 2 for bad input.

mod commands;
mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{RunReport, Status};

#[derive(Parser, Debug)]
#[command(name = "tropgrass", version, about = "Matroid subdivisions, thin Schubert cells and tropical Grassmannian fans")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub args: Args,
}

#[derive(clap::Args, Debug, Default)]
pub struct Args {
    /// Weight vector JSON: {"d":3,"n":7,"entries":{"124":"1",…}}
    #[arg(long, global = true)]
    pub weight: Option<PathBuf>,
    /// Matroid JSON: {"n":7,"d":3,"bases":[[1,2,4],…]}
    #[arg(long, global = true, conflicts_with = "named")]
    pub matroid: Option<PathBuf>,
    /// Named matroid, e.g. fano, c_intro, m_124, uniform(3,7), table(6.3)
    #[arg(long, global = true)]
    pub named: Option<String>,
    /// Basis for the affine chart, e.g. 1,2,3
    #[arg(long, global = true)]
    pub basis: Option<String>,
    /// Flat whose face is reported, e.g. 1,2,4
    #[arg(long, global = true)]
    pub facet_flat: Option<String>,
    /// Matrix over k[t] JSON: {"char":2,"rows":[["1","t",…],…]}
    #[arg(long, global = true)]
    pub matrix: Option<PathBuf>,
    /// Fan JSON with rays and cones
    #[arg(long, global = true)]
    pub fan: Option<PathBuf>,
    /// Cone of the fan as ray indices in the fan's own convention
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub cone: Option<String>,
    /// Tree JSON: {"n":4,"edges":[{"a":"v1","b":"leaf1","w":"0"},…]}
    #[arg(long, global = true)]
    pub tree: Option<PathBuf>,
    #[arg(long, global = true)]
    pub d: Option<usize>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Target index convention for convert-fan
    #[arg(long, global = true, value_parser = ["lex1", "website0"])]
    pub to: Option<String>,
    /// Largest number of basis minors in a unit certificate
    #[arg(long, global = true, default_value_t = 3)]
    pub max_factors: usize,
    /// Worker threads for parallel pipelines (default: all cores)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Regular subdivision of a matroid polytope (default: the hypersimplex) by --weight
    Subdivide,
    /// Dual graph of the subdivision induced by --weight, with its center and leaves
    DualGraph,
    /// Facets of the matroid polytope; with --facet-flat, the face of that flat
    Facets,
    /// Tree metrics
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Thin Schubert cell generators of a matroid, or limit generators of --weight
    Relations,
    /// Initial forms of the generators of a matroid (default: uniform) under --weight
    InitialForm,
    /// Affine chart of a matroid at --basis and its trimmed presentation
    Chart,
    /// Jacobian minors of the chart presentation with unit certificates
    Jacobian,
    /// Coordinatewise t-adic valuation of the Plücker vector of --matrix
    Valuation,
    /// Line test over the star of --cone in --fan
    StarScan,
    /// Cone counts and orbit counts of --fan under its symmetry generators
    OrbitFvector,
    /// Isomorphism classes of rank --d matroids on --n elements (n <= 6)
    Enumerate,
    /// Rewrites --fan in the --to index convention
    ConvertFan,
    /// Prints the matroid called --named, or lists the accepted names
    Named,
}

#[derive(Subcommand, Debug, Clone)]
pub enum TreeCommand {
    /// Four-point condition on a d = 2 --weight
    Check,
    /// Reconstructs the tree of a tree metric --weight
    FromMetric,
    /// Leaf-to-leaf distances of --tree
    Distance,
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Subdivide => "subdivide".into(),
            Command::DualGraph => "dual-graph".into(),
            Command::Facets => "facets".into(),
            Command::Tree(TreeCommand::Check) => "tree check".into(),
            Command::Tree(TreeCommand::FromMetric) => "tree from-metric".into(),
            Command::Tree(TreeCommand::Distance) => "tree distance".into(),
            Command::Relations => "relations".into(),
            Command::InitialForm => "initial-form".into(),
            Command::Chart => "chart".into(),
            Command::Jacobian => "jacobian".into(),
            Command::Valuation => "valuation".into(),
            Command::StarScan => "star-scan".into(),
            Command::OrbitFvector => "orbit-fvector".into(),
            Command::Enumerate => "enumerate".into(),
            Command::ConvertFan => "convert-fan".into(),
            Command::Named => "named".into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(w) = cli.args.workers {
        if w == 0 || rayon::ThreadPoolBuilder::new().num_threads(w).build_global().is_err() {
            eprintln!("error: --workers must be a positive integer");
            std::process::exit(2);
        }
    }
    let start = Instant::now();
    let mut inputs = BTreeMap::new();
    let outcome = commands::run(&cli.command, &cli.args, &mut inputs);
    let (status, outcome, error) = match outcome {
        Ok(o) if o.witness.is_some() => (Status::PropertyFailed, o, None),
        Ok(o) => (Status::Ok, o, None),
        Err(e) => (Status::InputError, report::Outcome::ok(serde_json::Value::Null, ""), Some(e)),
    };
    let report = RunReport {
        subcommand: cli.command.name(),
        inputs,
        status,
        result: outcome.result,
        witness: outcome.witness,
        error,
        text: outcome.text,
        elapsed: start.elapsed(),
    };
    let bytes = match cli.args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let written = match &cli.args.out {
        Some(path) => std::fs::write(path, bytes.as_bytes()),
        None => std::io::stdout().write_all(bytes.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        std::process::exit(2);
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    std::process::exit(report.status.exit_code());
}
