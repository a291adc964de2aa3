use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dtt_bench::commands::{prune_masks_csv, prune_summary_csv, BENCH_COLUMNS};
use dtt_bench::{cmd_bench, cmd_design, cmd_prune_sim, cmd_verify, BenchConfig, BlockSource, FilterSpec, Graph, Method};
use dtt_filters::dtt::DttKind;
use dtt_filters::pruning::{CorpusConfig, TAU1, TAU2};

#[derive(Parser)]
#[command(name = "dtt-bench", version, about = "Sparse DTT graph operator and filter experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check eigen-relations, sparsity, entry values and commutation of the
    /// operator families. Exits non-zero if any check fails.
    #[command(after_help = "CSV columns: kind,n,operators,max_residual,max_nnz,max_commutator,bad_values,status")]
    Verify {
        /// Transform kinds, e.g. DCT-II,DST-IV (default: all 16)
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 6, 8, 16, 32])]
        sizes: Vec<usize>,
        /// Print every operator in gallery text form after the report
        #[arg(long)]
        dump: bool,
        /// Perturb Z^(1) of each family before checking (negative control)
        #[arg(long)]
        inject_fault: bool,
    },
    /// Design one filter and print its coefficients and frequency response.
    #[command(after_help = "Response CSV columns: index,lambda,target,response,weight")]
    Design {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value = "pgf-ls")]
        method: Method,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Design file path (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Response CSV path (default: not written)
        #[arg(long)]
        response: Option<PathBuf>,
    },
    /// Time vertex-domain filtering of random signals for each method, and
    /// report the response error. PGF methods run at every `--degree`, MPGF
    /// methods at `--mpgf-degree`.
    #[command(after_help = "CSV columns: method,params,graph,filter,terms,multiply_adds,runtime_ns,rel_error,max_error\n  \
terms          number of coefficients (rows of the dense matrix for exact-dense)\n  \
multiply_adds  sparse multiply-adds for one application\n  \
runtime_ns     median over 10 groups of the mean time per application, first 10% of trials discarded\n  \
rel_error      ||h - h*|| / ||h*|| over the graph frequencies\n  \
max_error      max_i rho_i |h_i - h*_i|")]
    Bench {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, value_delimiter = ',', default_values_t = [Method::PgfLs])]
        method: Vec<Method>,
        #[arg(long, value_delimiter = ',', default_values_t = [3usize])]
        degree: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        mpgf_degree: usize,
        #[arg(long, default_value_t = 20000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Leave the runtime column empty so output is reproducible
        #[arg(long)]
        no_timing: bool,
    },
    /// Transform pruning on a synthetic block corpus or a raw frame.
    #[command(after_help = "Summary CSV columns: class,blocks,prune_rate,prune_rate_exact,mean_kept,best_agreement,pair_agreement,mask_agreement\n  \
prune_rate      mean fraction of the 16 combinations pruned with the proxy DCT cost\n  \
prune_rate_exact  same with the exact DCT cost\n  \
best_agreement  fraction of blocks where proxy and exact costs pick the same cheapest combination\n  \
pair_agreement  mean fraction of combination pairs ordered alike\n  \
mask_agreement  fraction of blocks with identical proxy and exact masks\n\
Mask CSV columns: block,class,rows,cols,kept,mask (16 flags, (col,row) over U,V,JV,I)\n\
Frame files: ASCII header `width height 255`, one whitespace byte, then row-major 8-bit pixels")]
    PruneSim {
        /// Raw 8-bit grayscale frame; synthetic corpus if omitted
        #[arg(long)]
        frame: Option<PathBuf>,
        /// Tile size for frame input
        #[arg(long, default_value_t = 8)]
        tile: usize,
        #[arg(long, default_value_t = TAU1)]
        tau1: f64,
        #[arg(long, default_value_t = TAU2)]
        tau2: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        blocks_per_class: usize,
        /// Per-block mask CSV path
        #[arg(long)]
        masks: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Problem {
    /// line:N or grid:HxW
    #[arg(long, default_value = "line:64")]
    graph: Graph,
    /// tikhonov[:mu], bandpass-exp[:gamma[:center]] or ideal-lowpass[:cutoff]
    #[arg(long, default_value = "bandpass-exp")]
    filter: FilterSpec,
}

fn parse_kinds(names: &[String]) -> Result<Vec<DttKind>, String> {
    if names.is_empty() {
        return Ok(DttKind::ALL.to_vec());
    }
    names.iter().map(|s| s.parse::<DttKind>().map_err(|e| e.to_string())).collect()
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify { kinds, sizes, dump, inject_fault } => {
            let kinds = parse_kinds(&kinds)?;
            let report = cmd_verify(&kinds, &sizes, inject_fault, dump).map_err(|e| e.to_string())?;
            print!("{}", report.to_csv());
            if dump {
                print!("{}", report.dumps);
            }
            Ok(report.passed())
        }
        Command::Design { problem, method, degree, out, response } => {
            let config = BenchConfig { graph: problem.graph, filter: problem.filter, method, degree, trials: 1, seed: 0 };
            let result = cmd_design(&config).map_err(|e| e.to_string())?;
            if let Some(text) = &result.design {
                write_or_print(out.as_ref(), text)?;
            }
            if let Some(p) = &response {
                write_or_print(Some(p), &result.response_csv)?;
            }
            eprintln!(
                "rmse {} relative {} max_weighted {}",
                result.rmse, result.relative_error, result.max_weighted_error
            );
            Ok(true)
        }
        Command::Bench { problem, method, degree, mpgf_degree, trials, seed, no_timing } => {
            let rows =
                cmd_bench(problem.graph, problem.filter, &method, &degree, mpgf_degree, trials, seed).map_err(|e| e.to_string())?;
            println!("{BENCH_COLUMNS}");
            for r in rows {
                println!("{}", r.to_csv(!no_timing));
            }
            Ok(true)
        }
        Command::PruneSim { frame, tile, tau1, tau2, seed, blocks_per_class, masks } => {
            let source = match frame {
                Some(p) => {
                    let bytes = std::fs::read(&p).map_err(|e| format!("{}: {e}", p.display()))?;
                    BlockSource::Frame { bytes, tile }
                }
                None => BlockSource::Synthetic(CorpusConfig { seed, blocks_per_class, ..CorpusConfig::default() }),
            };
            let report = cmd_prune_sim(&source, tau1, tau2).map_err(|e| e.to_string())?;
            print!("{}", prune_summary_csv(&report));
            if let Some(p) = &masks {
                write_or_print(Some(p), &prune_masks_csv(&report))?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
