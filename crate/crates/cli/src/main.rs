use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rgdual_core::polynomial::DEFAULT_MAX_EDGES;
use rgdual_core::random::DEFAULT_SEED;
use rgdual_core::{
    check_duality_properties, parse_map_file, partial_dual, pd_genus_polynomial, random_map,
    write_flagmap, write_rotation, EdgeSet, FlagMap, GenusMode, MapFile, PolynomialError,
    PolynomialOptions, RotationSystem, SubsetBudget,
};

/// Ribbon graphs: partial duals, genus invariants and the partial-dual genus polynomial.
#[derive(Debug, Parser)]
#[command(name = "rgdual", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a flagmap or rotation file.
    Validate { file: PathBuf },
    /// Print v, e, f, c, Euler genus and orientability.
    Metrics { file: PathBuf },
    /// Partial dual with respect to a set of edges; writes a flagmap file.
    Dual {
        file: PathBuf,
        #[command(flatten)]
        edges: EdgeChoice,
    },
    /// Partial-dual genus polynomial.
    Poly {
        file: PathBuf,
        /// Exponent is the orientable genus.
        #[arg(long, conflicts_with = "euler")]
        genus: bool,
        /// Exponent is the Euler genus.
        #[arg(long)]
        euler: bool,
        /// Split the subset enumeration across threads.
        #[arg(long)]
        parallel: bool,
        /// Print `exponent,count` lines instead of the polynomial.
        #[arg(long)]
        csv: bool,
        /// Recompute every exponent by direct dualization.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
    },
    /// Convert between flagmap and rotation files.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Graphviz DOT rendering of the gem.
    Gem { file: PathBuf },
    /// Exit 0 if the two maps are isomorphic, 1 otherwise.
    Iso { first: PathBuf, second: PathBuf },
    /// Check the partial-duality identities on a map.
    Check {
        file: PathBuf,
        /// `all` enumerates every subset.
        #[arg(long, value_parser = ["all"], conflicts_with = "samples")]
        subsets: Option<String>,
        /// Number of seeded subset samples.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Seeded random map; writes a flagmap file.
    Random {
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        twists: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct EdgeChoice {
    /// Comma-separated edge labels.
    #[arg(long, value_delimiter = ',')]
    edges: Option<Vec<String>>,
    /// Dualize every edge.
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Rotation,
    Flagmap,
}

/// A failed command: exit status and message for stderr.
struct Failure(u8, String);

impl Failure {
    fn invalid(e: impl Display) -> Self {
        Failure(2, e.to_string())
    }

    fn precondition(e: impl Display) -> Self {
        Failure(3, e.to_string())
    }
}

const SAMPLES_DEFAULT: usize = 256;
const EXHAUSTIVE_CHECK_EDGES: usize = 8;

fn read(path: &Path) -> Result<MapFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_map_file(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn read_flag_map(path: &Path) -> Result<FlagMap, Failure> {
    read(path).map(MapFile::into_flag_map)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { file } => {
            match read(&file)? {
                MapFile::Flag(m) => println!(
                    "ok flagmap flags={} edges={}",
                    m.flag_count(),
                    m.edge_count()
                ),
                MapFile::Rotation(rs) => {
                    println!(
                        "ok rotation halfedges={} edges={}",
                        rs.half_edges(),
                        rs.half_edges() / 2
                    )
                }
            }
            Ok(0)
        }
        Command::Metrics { file } => {
            println!("{}", read_flag_map(&file)?.metrics());
            Ok(0)
        }
        Command::Dual { file, edges } => {
            let m = read_flag_map(&file)?;
            let set = match edges.edges {
                Some(labels) => EdgeSet::resolve(&m, labels).map_err(Failure::invalid)?,
                None => EdgeSet::all(&m),
            };
            let d = partial_dual(&m, &set).map_err(Failure::invalid)?;
            print!("{}", write_flagmap(&d));
            Ok(0)
        }
        Command::Poly {
            file,
            genus,
            euler,
            parallel,
            csv,
            verify,
            max_edges,
        } => {
            let m = read_flag_map(&file)?;
            let mode = match (genus, euler) {
                (true, _) => Some(GenusMode::Genus),
                (_, true) => Some(GenusMode::EulerGenus),
                _ => None,
            };
            let options = PolynomialOptions {
                mode,
                max_edges,
                verify,
                parallel,
            };
            let p = pd_genus_polynomial(&m, &options).map_err(|e| match e {
                PolynomialError::OracleMismatch { .. } => Failure(1, e.to_string()),
                _ => Failure::precondition(e),
            })?;
            if csv {
                print!("{}", p.to_csv());
            } else {
                println!("{p}");
            }
            Ok(0)
        }
        Command::Convert { file, to } => {
            let m = read_flag_map(&file)?;
            match to {
                Target::Flagmap => print!("{}", write_flagmap(&m)),
                Target::Rotation => {
                    let rs = RotationSystem::from_flag_map(&m).map_err(Failure::precondition)?;
                    print!("{}", write_rotation(&rs));
                }
            }
            Ok(0)
        }
        Command::Gem { file } => {
            print!("{}", read_flag_map(&file)?.gem_dot());
            Ok(0)
        }
        Command::Iso { first, second } => {
            let a = read_flag_map(&first)?;
            let b = read_flag_map(&second)?;
            if a.is_isomorphic(&b) {
                println!("isomorphic");
                Ok(0)
            } else {
                println!("not isomorphic");
                Ok(1)
            }
        }
        Command::Check {
            file,
            subsets,
            samples,
            seed,
        } => {
            let m = read_flag_map(&file)?;
            let budget = match (subsets, samples) {
                (Some(_), _) => SubsetBudget::All,
                (None, Some(count)) => SubsetBudget::Samples { count, seed },
                (None, None) if m.edge_count() <= EXHAUSTIVE_CHECK_EDGES => SubsetBudget::All,
                (None, None) => SubsetBudget::Samples {
                    count: SAMPLES_DEFAULT,
                    seed,
                },
            };
            if budget == SubsetBudget::All && m.edge_count() > 20 {
                return Err(Failure::precondition(format!(
                    "{} edges is too many for --subsets all",
                    m.edge_count()
                )));
            }
            let report = check_duality_properties(&m, &budget);
            print!("{report}");
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Random {
            edges,
            twists,
            seed,
        } => {
            let m = random_map(edges, twists, seed).map_err(Failure::invalid)?;
            print!("{}", write_flagmap(&m));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("rgdual: {msg}");
            ExitCode::from(code)
        }
    }
}
