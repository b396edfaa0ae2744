use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperrank"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_dataset(root: &Path, name: &str, simplices: &[&[u64]]) -> PathBuf {
    let dir = root.join(name);
    fs::create_dir_all(&dir).unwrap();
    let nverts: String = simplices.iter().map(|s| format!("{}\n", s.len())).collect();
    let ids: String = simplices.iter().flat_map(|s| s.iter()).map(|v| format!("{v}\n")).collect();
    fs::write(dir.join(format!("{name}-nverts.txt")), nverts).unwrap();
    fs::write(dir.join(format!("{name}-simplices.txt")), ids).unwrap();
    dir
}

fn small_mixed(root: &Path) -> PathBuf {
    write_dataset(root, "small_mixed", &[&[1, 2, 3], &[2, 4], &[3, 5]])
}

fn scores(path: &Path) -> Vec<(String, f64)> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.to_string(), b.parse().unwrap())
        })
        .collect()
}

fn score(rows: &[(String, f64)], label: &str) -> f64 {
    rows.iter().find(|(l, _)| l == label).unwrap().1
}

#[test]
fn stats_of_small_mixed() {
    let tmp = TempDir::new().unwrap();
    small_mixed(tmp.path());
    let o = run(tmp.path(), &["stats", "--input", "small_mixed"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "order,nodes,edges,lcc_nodes,lcc_edges,lcc_fraction\n2,4,2,2,1,0.5\n3,3,1,3,1,1\nall,5,3,5,3,1\n"
    );
}

#[test]
fn uphec2_on_six_node_example() {
    let tmp = TempDir::new().unwrap();
    write_dataset(tmp.path(), "six", &[&[1, 2], &[2, 3, 4, 5], &[4, 5, 6]]);
    let o = run(
        tmp.path(),
        &["centrality", "--input", "six", "--method", "uphec", "--p", "2", "--root", "order", "--out", "u2.csv"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = scores(&tmp.path().join("u2.csv"));
    for (label, want) in [("1", 0.0929), ("2", 0.1802), ("3", 0.1690), ("4", 0.2084), ("5", 0.2084), ("6", 0.1412)] {
        assert!((score(&rows, label) - want).abs() < 5e-4, "{label}: {}", score(&rows, label));
    }
    // rows are sorted by descending score
    assert!(rows.windows(2).all(|w| w[0].1 >= w[1].1));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("u2.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["result"]["converged"], true);
    assert_eq!(manifest["spec"]["p"], 2);
    assert_eq!(manifest["preprocessing"]["edges"], 3);
    assert_eq!(manifest["preprocessing"]["nodes"], 6);
}

#[test]
fn zec_uplift_of_path() {
    let tmp = TempDir::new().unwrap();
    write_dataset(tmp.path(), "path", &[&[1, 2], &[2, 3]]);
    let o = run(
        tmp.path(),
        &["centrality", "--input", "path", "--method", "zec-uplift", "--multiplicities", "1,2", "--out", "z.csv"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = scores(&tmp.path().join("z.csv"));
    assert_eq!(rows.len(), 5);
    let total: f64 = rows.iter().map(|r| r.1).sum();
    assert!((total - 1.0).abs() < 1e-9);
    // the end nodes of the path are symmetric
    assert!((score(&rows, "1") - score(&rows, "3")).abs() < 1e-9);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("z.csv.manifest.json")).unwrap()).unwrap();
    // (3 + 1)! / (1! 2!) = 12
    assert_eq!(manifest["result"]["omega"], 12);
    assert_eq!(manifest["result"]["aux_scores"].as_array().unwrap().len(), 2);
}

#[test]
fn compare_writes_all_tables() {
    let tmp = TempDir::new().unwrap();
    small_mixed(tmp.path());
    let o = run(tmp.path(), &["compare", "--input", "small_mixed", "--methods", "u2,u3,u2,a3", "--out-dir", "out"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = tmp.path().join("out");
    for f in ["scores.csv", "heatmap.csv", "topk.csv", "topk_filtered.csv", "manifest.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let heat = fs::read_to_string(out.join("heatmap.csv")).unwrap();
    assert!(heat.starts_with("method,u2,u3,u2#2,a3\n"));
    assert!(heat.contains("\nu2,1,1,1,1\n"));
    let topk = fs::read_to_string(out.join("topk.csv")).unwrap();
    assert!(topk.starts_with("method_a,method_b,K,size,tau\n"));
    // 4 methods give 12 ordered pairs at the single K = 5
    assert_eq!(topk.lines().count(), 13);
}

#[test]
fn compare_rejects_oversized_k() {
    let tmp = TempDir::new().unwrap();
    small_mixed(tmp.path());
    let o = run(tmp.path(), &["compare", "--input", "small_mixed", "--methods", "u2,u3", "--ks", "3,9", "--out-dir", "out"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    small_mixed(tmp.path());
    // usage: unknown flag, missing order, unknown method tag
    assert_eq!(code(&run(tmp.path(), &["centrality", "--bogus"])), 1);
    assert_eq!(code(&run(tmp.path(), &["centrality", "--input", "small_mixed", "--method", "hec", "--out", "x.csv"])), 1);
    assert_eq!(code(&run(tmp.path(), &["compare", "--input", "small_mixed", "--methods", "q7", "--out-dir", "o"])), 1);
    assert_eq!(code(&run(tmp.path(), &["--help"])), 0);
    // data: missing files, non-uplift structure, disconnected input
    assert_eq!(code(&run(tmp.path(), &["stats", "--input", "nowhere"])), 2);
    assert_eq!(
        code(&run(tmp.path(), &["centrality", "--input", "small_mixed", "--method", "zec-uplift", "--out", "z.csv"])),
        2
    );
    write_dataset(tmp.path(), "split", &[&[1, 2, 3], &[4, 5, 6]]);
    let o = run(tmp.path(), &["centrality", "--input", "split", "--method", "uphec", "--p", "3", "--out", "s.csv"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--lcc"));
    let o = run(
        tmp.path(),
        &["centrality", "--input", "split", "--method", "uphec", "--p", "3", "--lcc", "--out", "s.csv"],
    );
    assert_eq!(code(&o), 0);
    // convergence: still writes the partial result
    let o = run(
        tmp.path(),
        &["centrality", "--input", "small_mixed", "--method", "uphec", "--p", "3", "--max-iter", "2", "--out", "c.csv"],
    );
    assert_eq!(code(&o), 3);
    assert!(tmp.path().join("c.csv").exists());
}

#[test]
fn bad_token_is_a_data_error() {
    let tmp = TempDir::new().unwrap();
    let dir = write_dataset(tmp.path(), "bad", &[&[1, 2]]);
    fs::write(dir.join("bad-simplices.txt"), "1\nzwei\n").unwrap();
    let o = run(tmp.path(), &["stats", "--input", "bad"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("zwei"));
}

#[test]
fn outputs_are_deterministic_across_threads() {
    let tmp = TempDir::new().unwrap();
    write_dataset(
        tmp.path(),
        "mixed",
        &[&[1, 2, 3], &[2, 4], &[3, 5], &[4, 5, 6, 7], &[1, 6], &[2, 7, 8], &[8, 9], &[1, 9, 5]],
    );
    let mut outs = Vec::new();
    for threads in ["1", "4"] {
        let name = format!("u3_{threads}.csv");
        let o = bin()
            .current_dir(tmp.path())
            .env("HYPERRANK_THREADS", threads)
            .args(["centrality", "--input", "mixed", "--method", "uphec", "--p", "3", "--seed", "7", "--out", &name])
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        outs.push(fs::read(tmp.path().join(name)).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn replay_reproduces_output() {
    let tmp = TempDir::new().unwrap();
    small_mixed(tmp.path());
    let o = run(
        tmp.path(),
        &["centrality", "--input", "small_mixed", "--method", "alt", "--order", "4", "--out", "a4.csv"],
    );
    assert_eq!(code(&o), 0);
    let o = run(tmp.path(), &["replay", "--manifest", "a4.csv.manifest.json", "--out", "again.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read(tmp.path().join("a4.csv")).unwrap(), fs::read(tmp.path().join("again.csv")).unwrap());
}
