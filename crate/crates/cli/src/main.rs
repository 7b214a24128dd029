//! `cylradon`: projection generation, reconstruction and growth/convergence
//! studies for the cylinder Radon operator.
//!
//! Exit status: 0 success, 1 usage, 2 data error, 3 I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cylradon_core::analysis::strictly_decreasing;
use cylradon_core::output::{write_convergence_csv, write_grid_csv, write_growth_csv};
use cylradon_core::phantom::CATALOG;
use cylradon_core::{
    collect_projections, convergence_experiment, growth_check, read_dataset, write_dataset, Error,
    EvaluationGrid, GridSpec, Phantom, Polynomial3, Reconstructor,
};

#[derive(Debug, Parser)]
#[command(
    name = "cylradon",
    version,
    about = "Cylinder Radon reconstruction studies"
)]
struct Cli {
    /// Worker threads; 0 uses the available parallelism. Never changes results.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample Radon projections of a phantom into a dataset file.
    Project {
        #[command(flatten)]
        phantom: PhantomArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Gauss–Legendre order per chord (default depends on the phantom).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the reconstruction from a dataset on a polar grid.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        /// Grid counts `nr,ntheta,nz`.
        #[arg(long, value_parser = parse_grid, default_value = "12,24,16")]
        grid: GridSpec,
        /// Output CSV (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate Lebesgue constants for a list of m.
    Lebesgue {
        #[arg(long, value_parser = parse_ms)]
        ms: MList,
        #[arg(long, value_parser = parse_grid, default_value = "12,24,16")]
        grid: GridSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure uniform reconstruction errors of a phantom for a list of m.
    Converge {
        #[command(flatten)]
        phantom: PhantomArgs,
        #[arg(long, value_parser = parse_ms)]
        ms: MList,
        /// Polar grid `nr,ntheta,nz`; defaults to 200 scattered points.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<GridSpec>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the phantom catalog.
    Phantoms,
}

#[derive(Debug, Args)]
struct PhantomArgs {
    #[arg(long)]
    phantom: String,
    /// Comma-separated phantom parameters.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    params: Vec<f64>,
    /// `a,b,c,coeff` rows for the `poly` phantom.
    #[arg(long)]
    coeffs: Option<PathBuf>,
}

#[derive(Debug, Clone)]
struct MList(Vec<usize>);

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let counts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    match counts[..] {
        [nr, ntheta, nz] if nr >= 1 && ntheta >= 1 && nz >= 1 => Ok(GridSpec { nr, ntheta, nz }),
        [_, _, _] => Err("grid counts must be at least 1".into()),
        _ => Err("expected nr,ntheta,nz".into()),
    }
}

fn parse_ms(s: &str) -> Result<MList, String> {
    if s.trim().is_empty() {
        return Err("list of m values is empty".into());
    }
    let ms = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if ms.contains(&0) {
        return Err("m values must be positive".into());
    }
    if ms.windows(2).any(|w| w[0] >= w[1]) {
        return Err("m values must be strictly increasing".into());
    }
    Ok(MList(ms))
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(e) if e.is_io() => 3,
            Failure::Core(Error::InvalidArgument(_) | Error::EmptyGrid) => 1,
            Failure::Core(_) => 2,
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Core(Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn load_phantom(args: &PhantomArgs) -> Result<Phantom, Failure> {
    if args.phantom == "poly" {
        let path = args
            .coeffs
            .as_ref()
            .ok_or_else(|| Failure::Usage("phantom `poly` requires --coeffs".into()))?;
        return Ok(Phantom::Polynomial(Polynomial3::read(path)?));
    }
    Ok(Phantom::from_catalog(&args.phantom, &args.params)?)
}

/// Runs `write` against `path`, or stdout when no path is given.
fn emit(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| io_failure(p, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(|e| io_failure(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w).map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Project {
            phantom,
            m,
            order,
            out,
        } => {
            let f = load_phantom(&phantom)?;
            let m = m as usize;
            let data = collect_projections(&f, m, order.unwrap_or_else(|| f.default_order()))?;
            write_dataset(&data, &out)?;
            println!(
                "wrote {} rows (m = {m}) to {}",
                data.values().len(),
                out.display()
            );
        }
        Command::Reconstruct { input, grid, out } => {
            let data = read_dataset(&input)?;
            let result = Reconstructor::new(data.m())?.evaluate_grid(&data, &grid.grid()?)?;
            emit(out.as_deref(), |w| write_grid_csv(&result, w))?;
        }
        Command::Lebesgue { ms, grid, out } => {
            let report = growth_check(&ms.0, grid)?;
            emit(out.as_deref(), |w| write_growth_csv(&report, w))?;
            eprintln!(
                "normalized band ratio {:.3} ({})",
                report.band_ratio,
                if report.within_band {
                    "within band"
                } else {
                    "outside band"
                }
            );
        }
        Command::Converge {
            phantom,
            ms,
            grid,
            order,
            out,
        } => {
            let f = load_phantom(&phantom)?;
            let grid = match grid {
                Some(g) => g.grid()?,
                None => EvaluationGrid::scattered(200),
            };
            let order = order.unwrap_or_else(|| f.default_order());
            let records = convergence_experiment(&f, &ms.0, &grid, order)?;
            emit(out.as_deref(), |w| write_convergence_csv(&records, w))?;
            eprintln!(
                "errors {}",
                if strictly_decreasing(&records) {
                    "decrease monotonically"
                } else {
                    "are not monotone decreasing"
                }
            );
        }
        Command::Phantoms => {
            for (id, description) in CATALOG {
                println!("{id:<10} {description}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Core(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
