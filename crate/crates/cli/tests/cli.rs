use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use localcc_cli::report::RunReport;
use localcc_core::graph::{agreement_vector, disagreement_vector, evaluate_objective, LocalObjective, Sign};
use localcc_core::io::{parse_clustering, parse_graph};
use tempfile::TempDir;

fn localcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localcc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path_str(&path)]);
    let o = localcc(&full);
    assert!(o.status.success(), "gen failed: {}", String::from_utf8_lossy(&o.stderr));
    path.to_str().unwrap().to_string()
}

/// Solves, then recomputes every value in the report from the clustering file.
fn solve_and_recompute(dir: &TempDir, graph: &str, extra: &[&str]) -> RunReport {
    let cpath = dir.path().join("out.clustering");
    let mut args = vec!["solve"];
    args.extend_from_slice(extra);
    args.extend_from_slice(&[graph, "-c", path_str(&cpath)]);
    let o = localcc(&args);
    assert!(o.status.success(), "solve failed: {}", String::from_utf8_lossy(&o.stderr));
    let report = RunReport::parse(&stdout(&o)).unwrap();
    let g = parse_graph(&fs::read_to_string(graph).unwrap()).unwrap();
    let c = parse_clustering(&fs::read_to_string(&cpath).unwrap(), g.n()).unwrap();
    assert_eq!(report.get_f64("n"), Some(g.n() as f64));
    assert_eq!(report.get_f64("m"), Some(g.m() as f64));
    assert_eq!(report.get_f64("clusters"), Some(c.num_clusters() as f64));
    let obj: LocalObjective = report.get("objective").unwrap().parse().unwrap();
    let vector = match report.get("vector_kind").unwrap() {
        "disagree" => disagreement_vector(&g, &c),
        "agree" => agreement_vector(&g, &c),
        other => panic!("unknown vector kind {other}"),
    };
    assert_eq!(report.get_vector("vector").unwrap(), vector);
    assert_eq!(report.get_f64("value").unwrap(), evaluate_objective(obj, &vector));
    report
}

#[test]
fn gapdemo_prints_gap_values() {
    let o = localcc(&["gapdemo", "--n", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "disagree: lp=0.2 int=1 ratio=5.0\nagree: lp=1.8 int=1 ratio=0.5556\n");
}

#[test]
fn gen_gap_cycle_has_n_edges() {
    let o = localcc(&["gen", "gap-cycle", "10"]);
    let g = parse_graph(&stdout(&o)).unwrap();
    assert_eq!(g.m(), 10);
    assert_eq!(g.count_sign(Sign::Minus), 1);
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "random", "9", "--plus", "0.3", "--max-weight", "5", "--seed", "77"];
    assert_eq!(localcc(&args).stdout, localcc(&args).stdout);
    let other = ["gen", "random", "9", "--plus", "0.3", "--max-weight", "5", "--seed", "78"];
    assert_ne!(localcc(&args).stdout, localcc(&other).stdout);
}

#[test]
fn minmax_general_report_round_trips() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, "gap10.txt", &["gap-cycle", "10"]);
    let r = solve_and_recompute(&dir, &g, &["minmax-general", "--oracle"]);
    let v = r.get_f64("value").unwrap();
    assert!(v >= 1.0 && v <= 49.0 * 10f64.sqrt());
    assert!((r.get_f64("lp_bound").unwrap() - 0.2).abs() < 1e-6);
    assert_eq!(r.get_f64("oracle_value"), Some(1.0));
}

#[test]
fn minmax_general_jobs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, "w.txt", &["random", "8", "--max-weight", "4", "--seed", "5"]);
    let a = solve_and_recompute(&dir, &g, &["minmax-general"]);
    let b = solve_and_recompute(&dir, &g, &["minmax-general", "--jobs", "3"]);
    assert_eq!(a.get("vector"), b.get("vector"));
    assert_eq!(a.get("cmax"), b.get("cmax"));
}

#[test]
fn local_complete_within_seven_of_lp() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, "k6.txt", &["complete", "6", "--seed", "11"]);
    for obj in ["max", "sum"] {
        let r = solve_and_recompute(&dir, &g, &["local-complete", "--objective", obj]);
        assert_eq!(r.get("seven_bound_holds"), Some("true"));
        assert!(r.get_f64("value").unwrap() <= 7.0 * r.get_f64("lp_bound").unwrap() + 1e-6);
    }
}

#[test]
fn local_bipartite_with_explicit_sides() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, "b.txt", &["bipartite", "3", "4", "--seed", "2"]);
    let r = solve_and_recompute(&dir, &g, &["local-bipartite", "--left-size", "3"]);
    assert_eq!(r.get("seven_bound_holds"), Some("true"));
    assert_eq!(r.get_f64("left_size"), Some(3.0));
}

#[test]
fn maxmin_agree_meets_threshold() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, "gap10.txt", &["gap-cycle", "10"]);
    let trace = dir.path().join("trace.txt");
    let r = solve_and_recompute(&dir, &g, &["maxmin-agree", "--eps", "0.5", "--trace", path_str(&trace)]);
    let c_star = r.get_f64("c_star").unwrap();
    assert!(r.get_f64("value").unwrap() >= 0.4 * c_star);
    assert_eq!(r.get_f64("value"), Some(1.0));
    assert!(trace.exists());
}

#[test]
fn convert_adds_heavy_separator() {
    let dir = TempDir::new().unwrap();
    let st = dir.path().join("st.txt");
    fs::write(&st, "st 0 2\n3 2\n0 1 1.5\n1 2 2\n").unwrap();
    let o = localcc(&["convert", path_str(&st)]);
    assert!(o.status.success());
    let g = parse_graph(&stdout(&o)).unwrap();
    let minus: Vec<_> = g.edges().iter().filter(|e| e.sign == Sign::Minus).collect();
    assert_eq!(minus.len(), 1);
    assert_eq!(minus[0].weight, 4.5);
}

#[test]
fn oracle_cut_and_disagree() {
    let dir = TempDir::new().unwrap();
    let st = dir.path().join("st.txt");
    fs::write(&st, "st 0 2\n3 2\n0 1 1\n1 2 1\n").unwrap();
    let r = RunReport::parse(&stdout(&localcc(&["oracle", "cut", path_str(&st)]))).unwrap();
    assert_eq!(r.get_f64("value"), Some(1.0));
    let g = generate(&dir, "gap10.txt", &["gap-cycle", "10"]);
    let r = RunReport::parse(&stdout(&localcc(&["oracle", "disagree", &g]))).unwrap();
    assert_eq!(r.get_f64("value"), Some(1.0));
    let r = RunReport::parse(&stdout(&localcc(&["oracle", "agree", &g]))).unwrap();
    assert_eq!(r.get_f64("value"), Some(1.0));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 1\n0 1 1 *\n").unwrap();
    assert_eq!(localcc(&["solve", "minmax-general", path_str(&bad)]).status.code(), Some(2));
    assert_eq!(localcc(&["solve", "minmax-general", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(localcc(&["solve", "no-such-algorithm", "x"]).status.code(), Some(2));
    let g = generate(&dir, "gap6.txt", &["gap-cycle", "6"]);
    assert_eq!(localcc(&["solve", "local-bipartite", &g]).status.code(), Some(3));
    assert_eq!(localcc(&["solve", "local-complete", &g]).status.code(), Some(3));
    assert_eq!(localcc(&["solve", "minmax-general", &g, "--objective", "sum"]).status.code(), Some(3));
    assert_eq!(localcc(&["solve", "maxmin-agree", &g, "--eps", "0"]).status.code(), Some(3));
    assert_eq!(localcc(&["gen", "gap-cycle", "2"]).status.code(), Some(3));
}
