use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use partcat::analyzer::{analyze, in_s0, ZData};
use partcat::closure::{closure, detect_case, ClosureOptions};
use partcat::ops::{self, ConsecutiveSet, Conventions, Corner, Turn};
use partcat::partition::{enumerate_partitions, DEFAULT_ENUM_CAP};
use partcat::qspace::{classify, consistent_rows, QTuple};
use partcat::verify::{run_all, Budget, CheckId, Config, Status};
use partcat::{Partition, PointRef};

mod render;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {source}")]
    Line { path: PathBuf, line: usize, source: partcat::Error },
    #[error("`{literal}`: {source}")]
    Literal { literal: String, source: partcat::Error },
    #[error(transparent)]
    Domain(#[from] partcat::Error),
    #[error("{0}")]
    Failed(String),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "partcat", version, about = "Workbench for categories of two-colored partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a file of partition literals and print them canonically.
    Parse { file: PathBuf },
    /// Draw a partition.
    Show {
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    /// Apply one category operation.
    Op {
        #[command(subcommand)]
        op: Op,
    },
    /// Print the analyzer data of a file of partitions.
    Analyze {
        file: PathBuf,
        /// Append the color-refined K and X tables.
        #[arg(long)]
        refined: bool,
    },
    /// Bounded closure of a generator file.
    Closure {
        #[arg(long = "gen")]
        generators: PathBuf,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        rounds: Option<usize>,
        /// Write the members, one literal per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a six-tuple, or list the rows consistent with analyzer data.
    Classify {
        #[arg(long, required_unless_present = "zdata", conflicts_with = "zdata", allow_hyphen_values = true)]
        tuple: Option<String>,
        #[arg(long)]
        zdata: Option<PathBuf>,
        /// Extra room above the observed values when searching `m`.
        #[arg(long, default_value_t = 2)]
        slack: i64,
    },
    /// Run the check catalog.
    Verify {
        /// Check name or number; all checks when absent.
        #[arg(long)]
        check: Option<CheckId>,
        /// For example `points=5,caps=4..5,samples=100`.
        #[arg(long)]
        budget: Option<Budget>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mutation hook: rotations keep colors instead of inverting them.
        #[arg(long)]
        flip_rotation_colors: bool,
        /// Also write a key/value report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print every partition with the given row lengths.
    Enumerate {
        #[arg(long)]
        lower: usize,
        #[arg(long, default_value_t = 0)]
        upper: usize,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    /// Only blocks of size two.
    P2,
    /// Neutral pairs with zero inner distance.
    S0,
    All,
}

#[derive(Subcommand)]
enum Op {
    Tensor {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Glue the upper row of BOTTOM to the lower row of TOP.
    Compose {
        #[arg(allow_hyphen_values = true)]
        bottom: String,
        #[arg(allow_hyphen_values = true)]
        top: String,
    },
    Invol {
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    /// Basic rotation at a corner, or a cyclic shift by `--steps`.
    Rotate {
        #[arg(long, required_unless_present = "steps", conflicts_with = "steps")]
        corner: Option<Corner>,
        #[arg(long, allow_hyphen_values = true)]
        steps: Option<i64>,
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    Reflect {
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    /// Erase a turn given as two points, e.g. `l1,l2`.
    Erase {
        #[arg(long)]
        turn: String,
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    /// Projection onto a consecutive set, e.g. `l2,l3`.
    Project {
        #[arg(long)]
        set: String,
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    Disconnect {
        #[arg(long)]
        point: String,
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    Connect {
        #[arg(long)]
        turn: String,
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
}

fn literal(s: &str) -> Result<Partition> {
    s.parse().map_err(|source| CliError::Literal { literal: s.to_string(), source })
}

fn points(s: &str) -> Result<Vec<PointRef>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<PointRef>().map_err(|source| CliError::Literal { literal: x.to_string(), source }))
        .collect()
}

fn turn(p: &Partition, s: &str) -> Result<Turn> {
    match points(s)?.as_slice() {
        [a, b] => Ok(Turn::new(p, *a, *b)?),
        _ => Err(CliError::Failed(format!("a turn needs two points, got `{s}`"))),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Partition literals, one per line; blank lines and `#` comments skipped.
fn read_partitions(path: &Path) -> Result<Vec<Partition>> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = line.parse().map_err(|source| CliError::Line { path: path.to_path_buf(), line: i + 1, source })?;
        out.push(p);
    }
    Ok(out)
}

fn run_op(op: Op) -> Result<Partition> {
    Ok(match op {
        Op::Tensor { left, right } => ops::tensor(&literal(&left)?, &literal(&right)?),
        Op::Compose { bottom, top } => ops::compose(&literal(&bottom)?, &literal(&top)?)?,
        Op::Invol { literal: l } => ops::involution(&literal(&l)?),
        Op::Rotate { corner, steps, literal: l } => {
            let p = literal(&l)?;
            match (corner, steps) {
                (Some(c), _) => ops::rotate(&p, c)?,
                (None, Some(k)) => ops::rotate_cyclic(&p, k),
                (None, None) => unreachable!("clap requires one of them"),
            }
        }
        Op::Reflect { literal: l } => ops::verticolor_reflect(&literal(&l)?),
        Op::Erase { turn: t, literal: l } => {
            let p = literal(&l)?;
            ops::erase_turn(&p, &turn(&p, &t)?)?
        }
        Op::Project { set, literal: l } => {
            let p = literal(&l)?;
            ops::project(&p, &ConsecutiveSet::new(&p, &points(&set)?)?)
        }
        Op::Disconnect { point, literal: l } => {
            let p = literal(&l)?;
            let pt = point.parse().map_err(|source| CliError::Literal { literal: point.clone(), source })?;
            ops::disconnect_point(&p, pt)?
        }
        Op::Connect { turn: t, literal: l } => {
            let p = literal(&l)?;
            ops::connect_turn(&p, &turn(&p, &t)?)?
        }
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Parse { file } => {
            for p in read_partitions(&file)? {
                println!("{p}");
            }
        }
        Command::Show { literal: l } => print!("{}", render::render(&literal(&l)?)),
        Command::Op { op } => println!("{}", run_op(op)?),
        Command::Analyze { file, refined } => print!("{}", analyze(&read_partitions(&file)?).report(refined)),
        Command::Closure { generators, cap, rounds, out } => {
            let gens = read_partitions(&generators)?;
            let mut opts = ClosureOptions::new(cap);
            if let Some(r) = rounds {
                opts.max_rounds = r;
            }
            let c = closure(&gens, opts)?;
            if let Some(path) = out {
                write(&path, &c.dump())?;
            }
            println!("members = {}", c.members.len());
            println!("rounds = {}", c.rounds);
            println!("outcome = {}", c.outcome);
            for (op, n) in &c.stats {
                println!("{op} = {n}");
            }
            println!("case = {}", detect_case(&c.members));
        }
        Command::Classify { tuple, zdata, slack } => {
            if let Some(t) = tuple {
                let t: QTuple = t.parse()?;
                match classify(&t) {
                    Some(q) => println!("{q}"),
                    None => return Err(CliError::Failed(format!("{t} is not in any row"))),
                }
            } else if let Some(path) = zdata {
                let z: ZData = read(&path)?.parse()?;
                let rows = consistent_rows(&z, slack);
                if rows.is_empty() {
                    return Err(CliError::Failed("no row is consistent with the data".into()));
                }
                for q in rows {
                    println!("{q}");
                }
            }
        }
        Command::Verify { check, budget, seed, flip_rotation_colors, report } => {
            let conv = if flip_rotation_colors { Conventions::FLIPPED } else { Conventions::STANDARD };
            let cfg = Config { budget: budget.unwrap_or_default(), seed, conv };
            let checks: Vec<CheckId> = check.map_or_else(|| CheckId::ALL.to_vec(), |c| vec![c]);
            let reports = run_all(&checks, &cfg);
            for r in &reports {
                println!("{r}");
            }
            if let Some(path) = report {
                let doc: Vec<String> = reports.iter().map(|r| r.key_values()).collect();
                write(&path, &doc.join("\n"))?;
            }
            let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} check(s) failed")));
            }
        }
        Command::Enumerate { lower, upper, filter } => {
            for p in enumerate_partitions(upper, lower, DEFAULT_ENUM_CAP)? {
                let keep = match filter {
                    Filter::All => true,
                    Filter::P2 => p.block_sizes().iter().all(|&s| s == 2),
                    Filter::S0 => in_s0(&p),
                };
                if keep {
                    println!("{p}");
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
