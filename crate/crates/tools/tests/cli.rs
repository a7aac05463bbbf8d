use std::process::{Command, Output};

use rigidity_core::Graph;
use rigidity_tools::edgelist::write_edge_list;
use rigidity_tools::table::Table;
use tempfile::TempDir;

fn rigid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigid"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_graph(dir: &TempDir, name: &str, g: &Graph) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, write_edge_list(g, &[])).unwrap();
    p.to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_reports_rigid_and_flexible() {
    let dir = TempDir::new().unwrap();
    let k4 = write_graph(&dir, "k4.txt", &Graph::complete(4));
    let c4 = write_graph(&dir, "c4.txt", &Graph::cycle(4));
    let o = rigid(&["check", &k4, "--d", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rigid"], true);
    assert_eq!(v["rank"], 5);
    let o = rigid(&["check", &c4, "--d", "2"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rigid"], false);
    assert_eq!(v["error_bound"], 0.0);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3 2\n0 1\n0 1\n");
    let o = rigid(&["check", &bad, "--d", "2"]);
    assert_eq!(code(&o), 2);
    assert!(
        stderr(&o).contains("line 3") && stderr(&o).contains("duplicate"),
        "{}",
        stderr(&o)
    );

    let o = rigid(&["check", "/nonexistent/graph.txt", "--d", "2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("/nonexistent/graph.txt"));

    let k4 = write_graph(&dir, "k4.txt", &Graph::complete(4));
    assert_eq!(code(&rigid(&["check", &k4, "--d", "0"])), 2);
    assert_eq!(code(&rigid(&["check", &k4])), 2);
    assert_eq!(
        code(&rigid(&["threshold", "--p-grid", "1.5", "--n", "10"])),
        2
    );
    assert_eq!(
        code(&rigid(&[
            "connector",
            "--n",
            "10",
            "--p",
            "0.5",
            "--m",
            "2",
            "--k",
            "1",
            "--eta",
            "x"
        ])),
        2
    );
}

#[test]
fn generated_graphs_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.txt");
    let o = rigid(&[
        "generate",
        "regular",
        "--n",
        "12",
        "--r",
        "4",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(
        text.starts_with("# model: regular, n = 12, r = 4\n# master seed = 3, stream = 0\n12 24\n")
    );
    let o = rigid(&["check", out.to_str().unwrap(), "--d", "1"]);
    assert!(code(&o) <= 1, "{}", stderr(&o));
}

#[test]
fn partition_certificates() {
    let dir = TempDir::new().unwrap();
    let k6 = write_graph(&dir, "k6.txt", &Graph::complete(6));
    let spec = write(
        &dir,
        "s.json",
        r#"{"kind": "strong", "partition": {"blocks": [[0, 1, 2], [3, 4, 5]]}}"#,
    );
    let o = rigid(&["certify-partition", &k6, &spec, "--d", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["accepted"], true);
    assert!(v["witness"]["q_graphs"].is_array());

    // Two triangles joined by one edge: the blocks see each other through a
    // single vertex pair only.
    let bridge = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
    let bridge = write_graph(&dir, "bridge.txt", &bridge);
    let o = rigid(&["certify-partition", &bridge, &spec, "--d", "2"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failing_obligation"]["kind"], "q-not-connected");

    let broken = write(
        &dir,
        "b.json",
        r#"{"kind": "strong", "partition": {"blocks": [[0, 1], [1, 2]]}}"#,
    );
    assert_eq!(
        code(&rigid(&["certify-partition", &k6, &broken, "--d", "1"])),
        2
    );
}

#[test]
fn connector_on_a_file() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "k15.txt", &Graph::complete(15));
    let p = write(
        &dir,
        "p.json",
        r#"{"blocks": [[0,1,2,3,4], [5,6,7,8,9], [10,11,12,13,14]]}"#,
    );
    let o = rigid(&["connector", &g, "--partition", &p, "--k", "1", "--eta", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d"], 1);
    assert_eq!(v["trace"]["residual"].as_array().unwrap().len(), 15);

    // Blocks of 5 are too small for k = 2.
    let o = rigid(&["connector", &g, "--partition", &p, "--k", "2", "--eta", "1"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "c.json",
        r#"{"n": 20, "d": 1, "trials": 3, "seed": 9, "p_grid": [0.2, 0.4]}"#,
    );
    let o = rigid(&["threshold", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = Table::from_csv(&stdout(&o)).unwrap();
    assert_eq!(t.rows.len(), 2);
    assert!(t
        .comments
        .iter()
        .any(|c| c.contains("n = 20") && c.contains("master seed = 9")));
    assert!(t.comments.iter().any(|c| c.contains("desk-scale")));

    let o = rigid(&["threshold", "--config", &cfg, "--n", "25", "--trials", "2"]);
    let t = Table::from_csv(&stdout(&o)).unwrap();
    let n = t.column("n").unwrap();
    let trials = t.column("n_trials").unwrap();
    assert_eq!(t.rows[0][n], "25");
    assert_eq!(t.rows[0][trials], "2");
    assert_eq!(t.rows[1][t.column("trial_start").unwrap()], "2");

    let bad = write(&dir, "bad.json", r#"{"n": "twenty"}"#);
    assert_eq!(code(&rigid(&["threshold", "--config", &bad])), 2);
}

#[test]
fn default_threshold_grid_has_seven_points() {
    let o = rigid(&["threshold", "--n", "30", "--trials", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(Table::from_csv(&stdout(&o)).unwrap().rows.len(), 7);
}

#[test]
fn plot_writes_svg() {
    let dir = TempDir::new().unwrap();
    let csv = write(&dir, "t.csv", "# note\nx,y,z\n1,0.5,2\n2,0.7,1\n");
    let out = dir.path().join("t.svg");
    let o = rigid(&[
        "plot",
        &csv,
        "--x",
        "x",
        "--y",
        "y,z",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains("<polyline") && svg.contains(">z</text>"));
    assert_eq!(code(&rigid(&["plot", &csv, "--x", "w", "--y", "y"])), 2);
}

#[test]
fn experiment_tables_have_provenance_columns() {
    let o = rigid(&[
        "giant", "--n", "72", "--p", "0.95", "--m", "6", "--k", "2", "--eta", "5/6", "--trials",
        "2",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = Table::from_csv(&stdout(&o)).unwrap();
    for col in [
        "status",
        "seed",
        "graph_stream",
        "partition_stream",
        "absorbed_size",
        "d_asymptotic",
    ] {
        assert!(t.column(col).is_some(), "{col}");
    }
    assert!(t.comments.iter().any(|c| c.contains("251")));

    let o = rigid(&["codegree", "--model", "cliques", "--k-grid", "1,2"]);
    let t = Table::from_csv(&stdout(&o)).unwrap();
    let at = t.column("rigid_at_codegree").unwrap();
    let above = t.column("rigid_above_codegree").unwrap();
    for r in &t.rows {
        assert_eq!((r[at].as_str(), r[above].as_str()), ("true", "false"));
    }
}
