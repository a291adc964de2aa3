use std::process::{Command, Output};

use dtt_bench::commands::{cmd_design, cmd_prune_sim, prune_summary_csv};
use dtt_bench::{cmd_bench, cmd_verify, BenchConfig, BlockSource, FilterSpec, Graph, Method};
use dtt_filters::dtt::DttKind;
use dtt_filters::pruning::{CorpusConfig, TAU1, TAU2};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtt-bench")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_passes_and_detects_fault() {
    let ok = run(&["verify", "--sizes", "4,6,8"]);
    assert!(ok.status.success(), "{}", stdout(&ok));
    assert_eq!(stdout(&ok).lines().count(), 1 + 16 * 3);
    let bad = run(&["verify", "--kinds", "DST-VI", "--sizes", "6", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn verify_dump_length_four_dct2() {
    let out = run(&["verify", "--kinds", "DCT-II", "--sizes", "4", "--dump"]);
    let text = stdout(&out);
    let dumps = &text[text.find("DCT-II 4 1").unwrap()..];
    let expect = "DCT-II 4 1\n1:1 2:1\n1:1 3:1\n2:1 4:1\n3:1 4:1\n\
                  DCT-II 4 2\n2:1 3:1\n1:1 4:1\n1:1 4:1\n2:1 3:1\n\
                  DCT-II 4 3\n3:1 4:1\n2:1 4:1\n1:1 3:1\n1:1 2:1\n\
                  DCT-II 4 4\n4:2\n3:2\n2:2\n1:2\n";
    assert_eq!(dumps, expect);
}

#[test]
fn verify_report_all_kinds_to_32() {
    let report = cmd_verify(&DttKind::ALL, &[5, 16, 32], false, false).unwrap();
    assert!(report.passed());
    assert!(report.rows.iter().all(|r| r.max_nnz <= 2 * r.n));
}

#[test]
fn tikhonov_line_64_matches_dense_fit() {
    let config = BenchConfig {
        graph: Graph::Line(64),
        filter: FilterSpec::Tikhonov { mu: 0.25 },
        method: Method::PgfLs,
        degree: 2,
        trials: 1,
        seed: 0,
    };
    let out = cmd_design(&config).unwrap();
    // independent dense least-squares fit
    assert!((out.relative_error - 0.007034499134324775).abs() < 1e-12);
    let design = out.design.unwrap();
    assert!(design.starts_with("DCT-II 64 2 ls\n"));
    assert_eq!(out.response_csv.lines().count(), 65);
}

#[test]
fn lowpass_minimax_beats_ls_on_max_error() {
    let base = BenchConfig {
        graph: Graph::Line(24),
        filter: FilterSpec::IdealLowpass { cutoff: None },
        method: Method::PgfLs,
        degree: 4,
        trials: 1,
        seed: 0,
    };
    let ls = cmd_design(&base).unwrap();
    let mm = cmd_design(&BenchConfig { method: Method::PgfMinimax, ..base.clone() }).unwrap();
    assert!(mm.max_weighted_error <= ls.max_weighted_error);
    assert!(mm.design.unwrap().contains("# epsilon"));
}

#[test]
fn bandpass_length12_design_file() {
    let out = run(&["design", "--graph", "line:12", "--filter", "bandpass-exp:4:1", "--method", "mpgf-omp:3", "--degree", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("DCT-II 12 1 omp:3\n"));
    let (_, design) = dtt_filters::design::parse_design(&text).unwrap();
    assert_eq!(design.len(), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rmse 0.15680536822965"));
}

#[test]
fn exact_dense_error_is_zero() {
    for filter in [
        FilterSpec::Tikhonov { mu: 0.25 },
        FilterSpec::BandpassExp { gamma: 1.0, center: None },
        FilterSpec::IdealLowpass { cutoff: None },
    ] {
        let rows = cmd_bench(Graph::Grid(4, 4), filter, &[Method::ExactDense], &[1], 1, 10, 3).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].rel_error.abs() < 1e-12 && rows[0].max_error.abs() < 1e-12);
    }
}

#[test]
fn bench_csv_is_reproducible() {
    let args = [
        "bench",
        "--graph",
        "line:32",
        "--filter",
        "bandpass-exp",
        "--method",
        "pgf-ls,pgf-cheb,mpgf-omp:3,mpgf-minimax:3,exact-dense",
        "--degree",
        "2,4",
        "--trials",
        "50",
        "--no-timing",
    ];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert!(text.starts_with("method,params,graph,filter,terms,multiply_adds,runtime_ns,rel_error,max_error\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 2 + 2 + 1);
}

#[test]
fn bench_pgf_work_and_mpgf_accuracy() {
    let rows = cmd_bench(
        Graph::Line(64),
        FilterSpec::BandpassExp { gamma: 1.0, center: None },
        &[Method::PgfLs, Method::MpgfOmp(8)],
        &[1, 5],
        1,
        20,
        1,
    )
    .unwrap();
    let nnz_l = 64 + 2 * 63;
    let pgf5 = rows.iter().find(|r| r.method == Method::PgfLs && r.degree == 5).unwrap();
    assert_eq!(pgf5.multiply_adds, 5 * nnz_l);
    let pgf1 = rows.iter().find(|r| r.method == Method::PgfLs && r.degree == 1).unwrap();
    assert_eq!(pgf1.multiply_adds, nnz_l);
    let mpgf = rows.iter().find(|r| r.method == Method::MpgfOmp(8) && r.degree == 1).unwrap();
    assert!(mpgf.rel_error < pgf5.rel_error);
}

#[test]
fn bench_rejects_bad_config() {
    assert!(cmd_bench(Graph::Line(8), FilterSpec::Tikhonov { mu: 0.25 }, &[Method::PgfLs], &[0], 1, 10, 1).is_err());
    assert!(cmd_bench(Graph::Line(8), FilterSpec::Tikhonov { mu: 0.25 }, &[Method::PgfLs], &[1], 1, 0, 1).is_err());
    let out = run(&["bench", "--graph", "ring:4"]);
    assert!(!out.status.success());
}

/// Recorded on the first run of the default seeded corpus.
const GOLDEN_PRUNE_RATES: [(&str, f64); 4] =
    [("smooth", 0.561875), ("piecewise", 0.5484375), ("ar1", 0.5484375), ("all", 0.5529166666666666)];

#[test]
fn prune_sim_golden_rates() {
    let report = cmd_prune_sim(&BlockSource::Synthetic(CorpusConfig::default()), TAU1, TAU2).unwrap();
    let csv = prune_summary_csv(&report);
    for (line, (class, rate)) in csv.lines().skip(1).zip(GOLDEN_PRUNE_RATES) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], class);
        assert_eq!(fields[2].parse::<f64>().unwrap(), rate, "{class}");
    }
    let cli = run(&["prune-sim"]);
    assert_eq!(stdout(&cli), csv);
}

#[test]
fn prune_sim_infinite_thresholds() {
    let out = run(&["prune-sim", "--tau1", "inf", "--tau2", "inf", "--blocks-per-class", "20"]);
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[2], "0");
        assert_eq!(fields[4], "16");
    }
}

#[test]
fn prune_sim_frame_input() {
    let dir = std::env::temp_dir().join(format!("dtt-bench-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("frame.raw");
    let (w, h) = (32usize, 16usize);
    let mut bytes = format!("{w} {h} 255\n").into_bytes();
    bytes.extend((0..w * h).map(|i| ((i % w) * 7 + (i / w) * 3) as u8));
    std::fs::write(&good, &bytes).unwrap();
    let masks = dir.join("masks.csv");
    let out = run(&["prune-sim", "--frame", good.to_str().unwrap(), "--masks", masks.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).lines().nth(1).unwrap().starts_with("frame,8,"));
    assert_eq!(std::fs::read_to_string(&masks).unwrap().lines().count(), 9);

    let bad = dir.join("bad.raw");
    std::fs::write(&bad, b"32 16 255\nshort").unwrap();
    let out = run(&["prune-sim", "--frame", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pixel bytes"));
    std::fs::remove_dir_all(&dir).ok();
}
