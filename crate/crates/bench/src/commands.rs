//! Subcommand implementations. Each returns its text output so the binary
//! only handles I/O.

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use dtt_filters::design::write_design;
use dtt_filters::dtt::{basis_matrix, operator_eigenvalues, DttKind};
use dtt_filters::eval::CostModel;
use dtt_filters::operators::{build_dct2_reflection, build_operator, commutator_norm, eigen_residual, write_gallery, SparseOperator};
use dtt_filters::pruning::{simulate, synthetic_corpus, Block, CorpusConfig, Frame, SimReport};
use dtt_filters::{NoCount, Result, WorkCounter};

use crate::config::{BenchConfig, Graph, Method};
use crate::setup::{response_errors, Experiment, Filter};

const RESIDUAL_TOL: f64 = 1e-9;
const COMMUTATOR_TOL: f64 = 1e-9;

/// Values an operator entry may take.
const ALLOWED: [f64; 5] = [-2.0, -1.0, 1.0, std::f64::consts::SQRT_2, 2.0];

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub kind: DttKind,
    pub n: usize,
    pub operators: usize,
    pub max_residual: f64,
    pub max_nnz: usize,
    pub max_commutator: f64,
    pub bad_values: usize,
}

impl VerifyRow {
    pub fn passed(&self) -> bool {
        self.max_residual < RESIDUAL_TOL
            && self.max_nnz <= 2 * self.n
            && self.max_commutator < COMMUTATOR_TOL
            && self.bad_values == 0
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub dumps: String,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(VerifyRow::passed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,n,operators,max_residual,max_nnz,max_commutator,bad_values,status\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:e},{},{:e},{},{}",
                r.kind,
                r.n,
                r.operators,
                r.max_residual,
                r.max_nnz,
                r.max_commutator,
                r.bad_values,
                if r.passed() { "pass" } else { "FAIL" }
            );
        }
        out
    }
}

fn perturb(op: &SparseOperator<f64>) -> Result<SparseOperator<f64>> {
    let mut d = op.to_dense();
    d[(0, 0)] += 0.5;
    SparseOperator::from_dense(&d)
}

/// Eigen-relation, sparsity, entry-value and commutation checks for every
/// `(kind, n)`. `inject_fault` perturbs `Z^(1)` before checking.
pub fn cmd_verify(kinds: &[DttKind], sizes: &[usize], inject_fault: bool, dump: bool) -> Result<VerifyReport> {
    let mut rows = Vec::new();
    let mut dumps = String::new();
    for &kind in kinds {
        for &n in sizes {
            let phi = basis_matrix::<f64>(kind, n)?;
            let mut ops = Vec::with_capacity(n - 1);
            for ell in 1..n {
                let op = build_operator::<f64>(kind, n, ell)?;
                ops.push(if inject_fault && ell == 1 { perturb(&op)? } else { op });
            }
            let mut row = VerifyRow {
                kind,
                n,
                operators: ops.len(),
                max_residual: 0.0,
                max_nnz: 0,
                max_commutator: 0.0,
                bad_values: 0,
            };
            for (i, op) in ops.iter().enumerate() {
                let lam = operator_eigenvalues::<f64>(kind, n, i + 1)?;
                row.max_residual = row.max_residual.max(eigen_residual(op, &phi, lam.values())?);
                row.max_nnz = row.max_nnz.max(op.nnz());
                row.bad_values += op.values().filter(|v| !ALLOWED.iter().any(|a| (a - v).abs() < 1e-12)).count();
                for other in &ops[i + 1..] {
                    row.max_commutator = row.max_commutator.max(commutator_norm(op, other)?);
                }
                if dump {
                    dumps.push_str(&write_gallery(kind, i + 1, op));
                }
            }
            if dump && kind == DttKind::Dct2 {
                dumps.push_str(&write_gallery(kind, n, &build_dct2_reflection::<f64>(n)?));
            }
            rows.push(row);
        }
    }
    Ok(VerifyReport { rows, dumps })
}

pub fn transform_label(graph: Graph) -> String {
    match graph {
        Graph::Line(_) => DttKind::Dct2.to_string(),
        Graph::Grid(..) => format!("{0}x{0}", DttKind::Dct2),
    }
}

#[derive(Debug, Clone)]
pub struct DesignOutput {
    /// Design file text; `None` for `exact-dense`.
    pub design: Option<String>,
    /// `index,lambda,target,response,weight`
    pub response_csv: String,
    pub rmse: f64,
    pub relative_error: f64,
    pub max_weighted_error: f64,
}

pub fn cmd_design(config: &BenchConfig) -> Result<DesignOutput> {
    config.validate().map_err(dtt_filters::Error::InvalidArgument)?;
    let exp = Experiment::new(config.graph, config.filter)?;
    let filter = exp.build(config.method, config.degree)?;
    let h = filter.response(&exp)?;
    let errors = response_errors(&exp, &h);
    let mut csv = String::from("index,lambda,target,response,weight\n");
    for j in 0..exp.n() {
        let _ = writeln!(csv, "{},{},{},{},{}", j, exp.lambda[j], exp.target[j], h[j], exp.weights[j]);
    }
    let design = match &filter {
        Filter::Pgf(d) | Filter::Mpgf(d) => {
            let mut text = write_design(&transform_label(config.graph), exp.n(), config.degree, d);
            let _ = writeln!(text, "# method {} filter {} graph {}", config.method, config.filter, config.graph);
            if matches!(filter, Filter::Pgf(_)) {
                text.push_str("# operator 1 is the graph Laplacian\n");
            } else {
                let mut used: Vec<usize> = d.terms().iter().flat_map(|t| t.ops.iter().copied()).collect();
                used.sort_unstable();
                used.dedup();
                for i in used {
                    let _ = writeln!(text, "# operator {} is {}", i + 1, exp.pool_labels[i]);
                }
            }
            Some(text)
        }
        Filter::Chebyshev(c) => {
            let mut text = format!("# chebyshev coefficients on [0, {}]\n", exp.lambda_max);
            for (k, v) in c.iter().enumerate() {
                let _ = writeln!(text, "{k} : {v}");
            }
            Some(text)
        }
        Filter::Dense(_) => None,
    };
    Ok(DesignOutput {
        design,
        response_csv: csv,
        rmse: errors.rmse,
        relative_error: errors.relative,
        max_weighted_error: errors.max_weighted,
    })
}

/// Column names of [`cmd_bench`] output.
pub const BENCH_COLUMNS: &str = "method,params,graph,filter,terms,multiply_adds,runtime_ns,rel_error,max_error";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub method: Method,
    pub degree: usize,
    pub graph: Graph,
    pub filter: String,
    pub terms: usize,
    pub multiply_adds: usize,
    pub runtime_ns: f64,
    pub rel_error: f64,
    pub max_error: f64,
}

impl BenchRow {
    pub fn params(&self) -> String {
        match self.method {
            Method::ExactDense => String::new(),
            Method::MpgfOmp(r) | Method::MpgfMinimax(r) => format!("R={r};K={}", self.degree),
            Method::MpgfLs => format!("R=all;K={}", self.degree),
            _ => format!("K={}", self.degree),
        }
    }

    /// One CSV line; `timing = false` blanks the runtime column.
    pub fn to_csv(&self, timing: bool) -> String {
        let rt = if timing { format!("{:.1}", self.runtime_ns) } else { String::new() };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.method,
            self.params(),
            self.graph,
            self.filter,
            self.terms,
            self.multiply_adds,
            rt,
            self.rel_error,
            self.max_error
        )
    }
}

/// Median over groups of the mean time per application, after discarding
/// the first 10% of trials as warmup.
fn median_of_means(mut run: impl FnMut() -> Result<()>, trials: usize) -> Result<f64> {
    let warmup = trials / 10;
    for _ in 0..warmup {
        run()?;
    }
    let timed = (trials - warmup).max(1);
    let groups = timed.clamp(1, 10);
    let mut means = Vec::with_capacity(groups);
    for g in 0..groups {
        let count = timed / groups + usize::from(g < timed % groups);
        let start = Instant::now();
        for _ in 0..count {
            run()?;
        }
        means.push(start.elapsed().as_nanos() as f64 / count.max(1) as f64);
    }
    means.sort_by(f64::total_cmp);
    let mid = means.len() / 2;
    Ok(if means.len() % 2 == 1 { means[mid] } else { 0.5 * (means[mid - 1] + means[mid]) })
}

/// Runs every PGF method at each of `degrees` and every MPGF method at
/// `mpgf_degree` on one graph and target. `exact-dense` runs once.
pub fn cmd_bench(
    graph: Graph,
    filter: crate::config::FilterSpec,
    methods: &[Method],
    degrees: &[usize],
    mpgf_degree: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    let exp = Experiment::new(graph, filter)?;
    let n = exp.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool_len = trials.clamp(1, 256);
    let signals: Vec<Vec<f64>> =
        (0..pool_len).map(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()).collect();
    let mut rows = Vec::new();
    for &method in methods {
        let ds: Vec<usize> = match method {
            Method::ExactDense => vec![0],
            m if m.is_mpgf() => vec![mpgf_degree],
            _ => degrees.to_vec(),
        };
        for degree in ds {
            let config = BenchConfig { graph, filter, method, degree, trials, seed };
            config.validate().map_err(dtt_filters::Error::InvalidArgument)?;
            let f = exp.build(method, degree)?;
            let errors = response_errors(&exp, &f.response(&exp)?);
            let mut wc = WorkCounter::default();
            f.apply(&exp, &signals[0], &mut wc)?;
            let mut i = 0;
            let runtime_ns = median_of_means(
                || {
                    let y = f.apply(&exp, &signals[i % pool_len], &mut NoCount)?;
                    std::hint::black_box(y);
                    i += 1;
                    Ok(())
                },
                trials,
            )?;
            rows.push(BenchRow {
                method,
                degree,
                graph,
                filter: filter.to_string(),
                terms: f.terms(),
                multiply_adds: wc.multiply_adds,
                runtime_ns,
                rel_error: errors.relative,
                max_error: errors.max_weighted,
            });
        }
    }
    Ok(rows)
}

/// Block source for [`cmd_prune_sim`].
#[derive(Debug, Clone)]
pub enum BlockSource {
    Synthetic(CorpusConfig),
    Frame { bytes: Vec<u8>, tile: usize },
}

pub fn load_blocks(source: &BlockSource) -> Result<Vec<Block>> {
    match source {
        BlockSource::Synthetic(c) => synthetic_corpus(c),
        BlockSource::Frame { bytes, tile } => Frame::parse(bytes)?.blocks(*tile),
    }
}

pub fn cmd_prune_sim(source: &BlockSource, tau1: f64, tau2: f64) -> Result<SimReport> {
    let blocks = load_blocks(source)?;
    if blocks.is_empty() {
        return Err(dtt_filters::Error::InvalidInput("no blocks to simulate".into()));
    }
    let model = CostModel::new()?;
    simulate(&model, &blocks, tau1, tau2)
}

/// Column names of the prune-sim summary.
pub const PRUNE_COLUMNS: &str =
    "class,blocks,prune_rate,prune_rate_exact,mean_kept,best_agreement,pair_agreement,mask_agreement";

pub fn prune_summary_csv(report: &SimReport) -> String {
    let mut out = format!("{PRUNE_COLUMNS}\n");
    let rows = report.classes.iter().map(|(c, s)| (c.label(), s)).chain([("all", &report.overall)]);
    for (label, s) in rows {
        let _ = writeln!(
            out,
            "{label},{},{},{},{},{},{},{}",
            s.blocks, s.prune_rate, s.prune_rate_exact, s.mean_kept, s.best_agreement, s.pair_agreement, s.mask_agreement
        );
    }
    out
}

/// One line per block: index, class, size and the 16 keep flags in
/// `(col, row)` order over `U, V, JV, I`.
pub fn prune_masks_csv(report: &SimReport) -> String {
    let mut out = String::from("block,class,rows,cols,kept,mask\n");
    for (i, r) in report.records.iter().enumerate() {
        let bits: String = r.proxy_mask.flags().iter().map(|&k| if k { '1' } else { '0' }).collect();
        let _ = writeln!(out, "{i},{},{},{},{},{bits}", r.class, r.rows, r.cols, r.proxy_mask.kept());
    }
    out
}
