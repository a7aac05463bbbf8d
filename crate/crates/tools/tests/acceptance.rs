//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Pass criterion numbers as arguments to
//! run a subset, e.g. `cargo test -p rigidity-tools --test acceptance -- 3 5`.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rigidity_core::certify::{
    assemble_limit_framework, certify_double_partition, certify_generalized_partition,
    certify_strong_partition, color_points, is_d_anchored, ColoredEdge, ColoredMultigraph,
    DoublePartitionSpec, FailingObligation, GeneralizedPartitionSpec,
};
use rigidity_core::connector::{connector_certify, ConnectorConfig};
use rigidity_core::graph::{vertex_set, vertex_split, zero_extension, SplitMode};
use rigidity_core::oracles::{connected, laman_rigid, tree_packing_count, Multigraph};
use rigidity_core::randgraph::{gnp, random_equipartition, RngSpec};
use rigidity_core::rigidity::{is_d_rigid, is_limit_inf_rigid};
use rigidity_core::{Graph, Partition};
use rigidity_tools::experiments::{
    codegree_trials, connector_trials, equipartition_codegree, regular_outcomes, threshold_points,
    CodegreeConfig, CodegreeModel, ConnectorExperiment, EquipartitionConfig, RegularConfig,
    ThresholdConfig,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::new(
        n,
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e),
    )
    .unwrap()
}

fn c1_one_dimension() -> Outcome {
    let mut bad = 0;
    for mask in 0..1u64 << 15 {
        let g = graph_from_mask(6, mask);
        if is_d_rigid(&g, 1, mask, 2).rigid != connected(&g) {
            bad += 1;
        }
    }
    ensure(bad == 0, || format!("{bad} disagreements"))?;
    Ok("32768 graphs on 6 vertices agree with connectivity".into())
}

fn c2_two_dimensions() -> Outcome {
    let mut count = 0;
    let mut check = |g: &Graph, seed: u64| -> Result<(), String> {
        let v = is_d_rigid(g, 2, seed, 2);
        let l = laman_rigid(g).map_err(|e| e.to_string())?;
        count += 1;
        ensure(v.rigid == l, || format!("disagreement on {:?}", g.edges()))?;
        ensure(v.error_bound < 1e-12, || {
            format!("error bound {}", v.error_bound)
        })
    };
    // The pebble game is defined from two vertices up.
    for n in 2..=6usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            check(&graph_from_mask(n, mask), mask)?;
        }
    }
    let mut rng = StdRng::seed_from_u64(2);
    for t in 0..10_000u64 {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.1..0.9);
        check(&gnp(n, p, RngSpec::new(2, t)).unwrap(), t)?;
    }
    Ok(format!("{count} graphs agree with the pebble game"))
}

fn c3_sharpness() -> Outcome {
    for k in 1..=4 {
        let g = Graph::overlapping_cliques(k + 4, k);
        ensure(is_d_rigid(&g, k, 3, 2).rigid, || {
            format!("k = {k}: not {k}-rigid")
        })?;
        ensure(!is_d_rigid(&g, k + 1, 3, 2).rigid, || {
            format!("k = {k}: {}-rigid", k + 1)
        })?;
    }
    Ok("k = 1..4 rigid at k, flexible at k + 1".into())
}

fn rigid_seed(rng: &mut StdRng, d: usize) -> Graph {
    loop {
        let n = rng.gen_range(d + 2..=20);
        let p = rng.gen_range(0.5..0.95);
        let g = gnp(n, p, RngSpec::new(rng.gen(), 0)).unwrap();
        if is_d_rigid(&g, d, rng.gen(), 2).rigid {
            return g;
        }
    }
}

fn c4_moves() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut failures = 0;
    for _ in 0..1000 {
        let d = rng.gen_range(1..=4);
        let g = rigid_seed(&mut rng, d);
        let mut vs: Vec<usize> = (0..g.n()).collect();
        vs.shuffle(&mut rng);
        let s = vertex_set(g.n(), vs[..d].iter().copied()).unwrap();
        let h = zero_extension(&g, &s).unwrap();
        failures += usize::from(!is_d_rigid(&h, d, rng.gen(), 2).rigid);
    }
    let mut splits = 0;
    while splits < 1000 {
        let d = rng.gen_range(1..=4);
        let g = rigid_seed(&mut rng, d);
        let mode = if rng.gen() {
            SplitMode::WithEdge
        } else {
            SplitMode::WithoutEdge
        };
        let need = match mode {
            SplitMode::WithEdge => d - 1,
            SplitMode::WithoutEdge => d,
        };
        let v = rng.gen_range(0..g.n());
        let mut nbrs: Vec<usize> = g.neighbors(v).ones().collect();
        if nbrs.len() < need {
            continue;
        }
        nbrs.shuffle(&mut rng);
        let overlap = rng.gen_range(need..=nbrs.len());
        let (mut nx, mut ny) = (nbrs[..overlap].to_vec(), nbrs[..overlap].to_vec());
        for &w in &nbrs[overlap..] {
            if rng.gen() {
                nx.push(w);
            } else {
                ny.push(w);
            }
        }
        let nx = vertex_set(g.n(), nx).unwrap();
        let ny = vertex_set(g.n(), ny).unwrap();
        let (h, _, _) = vertex_split(&g, v, &nx, &ny, mode).unwrap();
        failures += usize::from(!is_d_rigid(&h, d, rng.gen(), 2).rigid);
        splits += 1;
    }
    ensure(failures == 0, || format!("{failures} non-rigid outputs"))?;
    Ok("1000 0-extensions and 1000 vertex splits stay rigid".into())
}

fn multisets(
    pairs: usize,
    max: usize,
    start: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    out.push(cur.clone());
    if cur.len() == max {
        return;
    }
    for p in start..pairs {
        cur.push(p);
        multisets(pairs, max, p, cur, out);
        cur.pop();
    }
}

fn c5_frames() -> Outcome {
    let mut checked = 0;
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut all = Vec::new();
        multisets(pairs.len(), 8, 0, &mut Vec::new(), &mut all);
        for sel in all {
            let edges: Vec<(usize, usize)> = sel.iter().map(|&i| pairs[i]).collect();
            let mg = Multigraph::new(n, edges.clone()).unwrap();
            if !mg.is_connected() {
                continue;
            }
            let h = ColoredMultigraph::new(
                n,
                edges
                    .iter()
                    .enumerate()
                    .map(|(c, &(u, v))| ColoredEdge { u, v, color: c })
                    .collect(),
            )
            .unwrap();
            let packing = tree_packing_count(&mg).unwrap();
            for d in 1..=2 {
                checked += 1;
                let anchored = is_d_anchored(&h, d, checked as u64);
                ensure(anchored == (packing >= d), || {
                    format!("d = {d}, edges {edges:?}: anchored {anchored}, packing {packing}")
                })?;
            }
        }
    }
    let e = |u, v, color| ColoredEdge { u, v, color };
    let h =
        ColoredMultigraph::new(3, vec![e(0, 1, 0), e(0, 2, 0), e(1, 2, 1), e(1, 2, 2)]).unwrap();
    ensure(!is_d_anchored(&h, 2, 5), || {
        "counterexample is 2-anchored".into()
    })?;
    let mg = Multigraph::new(3, h.edges.iter().map(|e| (e.u, e.v)).collect()).unwrap();
    let packing = tree_packing_count(&mg).unwrap();
    ensure(packing == 2, || {
        format!("counterexample packs {packing} trees")
    })?;
    for c in 0..3 {
        let class: Vec<(usize, usize)> = h
            .edges
            .iter()
            .filter(|e| e.color == c)
            .map(|e| (e.u, e.v))
            .collect();
        let mut uf: Vec<usize> = (0..3).collect();
        for (u, v) in class {
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            ensure(a != b, || format!("color {c} has a cycle"))?;
            uf[a] = b;
        }
    }
    Ok(format!(
        "{checked} colored multigraphs agree; counterexample confirmed"
    ))
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    uf[x] = r;
    r
}

fn strong_instance(rng: &mut StdRng) -> (Graph, Partition, usize, bool) {
    let d = rng.gen_range(1..=3);
    let m = rng.gen_range(d + 1..=6);
    let n = rng.gen_range(3 * m..=40);
    let p = rng.gen_range(0.35..0.9);
    let g = gnp(n, p, RngSpec::new(rng.gen(), 0)).unwrap();
    let part = random_equipartition(n, m, RngSpec::new(rng.gen(), 1)).unwrap();
    (g, part, d, rng.gen())
}

fn double_instance(rng: &mut StdRng) -> (Graph, DoublePartitionSpec, usize) {
    let d = rng.gen_range(1..=2);
    let m = rng.gen_range(d + 1..=5);
    let n = m * rng.gen_range(4..=8);
    let p = rng.gen_range(0.5..0.95);
    let g = gnp(n, p, RngSpec::new(rng.gen(), 0)).unwrap();
    let part = random_equipartition(n, m, RngSpec::new(rng.gen(), 1)).unwrap();
    let mut sub_blocks = Vec::new();
    let mut forests = Vec::new();
    for i in 0..m {
        let mut block = part.block(i).to_vec();
        block.shuffle(rng);
        let mut subs: Vec<Vec<usize>> = Vec::new();
        let mut rest = &block[..];
        while !rest.is_empty() {
            let take = rng.gen_range(1..=2.min(rest.len()));
            subs.push(rest[..take].to_vec());
            rest = &rest[take..];
        }
        let mut candidates: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| part.block_of(u) == i && part.block_of(v) == i)
            .collect();
        candidates.shuffle(rng);
        let mut uf: Vec<usize> = (0..n).collect();
        let mut forest = Vec::new();
        for (u, v) in candidates {
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            if a != b {
                uf[a] = b;
                forest.push((u, v));
            }
        }
        sub_blocks.push(subs);
        forests.push(forest);
    }
    (
        g,
        DoublePartitionSpec {
            partition: part,
            sub_blocks,
            forests,
        },
        d,
    )
}

const SOUNDNESS_TARGET: usize = 500;
const SOUNDNESS_ATTEMPTS: usize = 20_000;

fn soundness<F>(name: &str, mut attempt: F) -> Result<String, String>
where
    F: FnMut(&mut StdRng) -> Option<(Graph, usize)>,
{
    let mut rng = StdRng::seed_from_u64(6);
    let (mut accepted, mut tries) = (0, 0);
    while accepted < SOUNDNESS_TARGET && tries < SOUNDNESS_ATTEMPTS {
        tries += 1;
        if let Some((g, d)) = attempt(&mut rng) {
            ensure(g.n() * d <= 3000, || format!("{name}: instance too large"))?;
            accepted += 1;
            ensure(is_d_rigid(&g, d, rng.gen(), 3).rigid, || {
                format!("{name}: unsound acceptance at d = {d}, n = {}", g.n())
            })?;
        }
    }
    ensure(accepted == SOUNDNESS_TARGET, || {
        format!("{name}: only {accepted} acceptances in {tries} attempts")
    })?;
    Ok(format!("{name} {accepted}/{tries}"))
}

fn c6_soundness() -> Outcome {
    let strong = soundness("strong", |rng| {
        let (g, p, d, allow_self) = strong_instance(rng);
        let v = certify_strong_partition(&g, &p, d, allow_self, rng.gen()).unwrap();
        v.accepted.then_some((g, d))
    })?;
    let generalized = soundness("generalized", |rng| {
        let (g, spec, d) = if rng.gen() {
            let (g, p, d, _) = strong_instance(rng);
            let spec = GeneralizedPartitionSpec::from_strong(&g, &p).unwrap();
            (g, spec, d)
        } else {
            let (g, dspec, d) = double_instance(rng);
            let spec = GeneralizedPartitionSpec::from_double(&g, &dspec).unwrap();
            (g, spec, d)
        };
        let v = certify_generalized_partition(&g, &spec, d, rng.gen()).unwrap();
        v.accepted.then_some((g, d))
    })?;
    let double = soundness("double", |rng| {
        let (g, spec, d) = double_instance(rng);
        let v = certify_double_partition(&g, &spec, d, rng.gen()).unwrap();
        v.accepted.then_some((g, d))
    })?;
    let connector = soundness("connector", |rng| {
        let n = rng.gen_range(72..=96);
        let p = rng.gen_range(0.9..0.98);
        let g = gnp(n, p, RngSpec::new(rng.gen(), 0)).unwrap();
        let part = random_equipartition(n, 6, RngSpec::new(rng.gen(), 1)).unwrap();
        let cfg = ConnectorConfig::new(2, Ratio::new(5, 6), rng.gen()).unwrap();
        let out = connector_certify(&g, &part, &cfg).ok()?;
        if !out.accepted() {
            return None;
        }
        let w = vertex_set(n, out.trace.unwrap().residual).unwrap();
        Some((g.induced_subgraph(&w).0, out.d))
    })?;
    Ok(format!("{strong}, {generalized}, {double}, {connector}"))
}

fn c7_connector_pipeline() -> Outcome {
    let cfg = ConnectorExperiment {
        n: 600,
        p: 0.1,
        m: 10,
        k: 3,
        eta: Ratio::new(9, 10),
        trials: 50,
        seed: 7,
        threads: 0,
        absorb: false,
    };
    let rows = connector_trials(&cfg).map_err(|e| e.to_string())?;
    let mut good = 0;
    let mut statuses = std::collections::BTreeMap::new();
    for r in &rows {
        *statuses.entry(r.status()).or_insert(0usize) += 1;
        let ok = r.accepted()
            && r.independent_rank_check == Some(true)
            && matches!(&r.outcome, Ok(o) if o.d == 4 && o.rank_check.as_ref().is_some_and(|v| v.rigid))
            && r.max_removed_per_block.is_some_and(|x| x <= 12);
        good += usize::from(ok);
    }
    let first_reason = rows.iter().find_map(|r| match &r.outcome {
        Ok(o) => match &o.certificate.failing_obligation {
            Some(FailingObligation::HypothesisViolated { reason }) => Some(reason.clone()),
            _ => None,
        },
        Err(_) => None,
    });
    let mut detail =
        format!("{good}/50 seeds accepted with a verified 4-rigid core; statuses {statuses:?}");
    if let Some(reason) = first_reason {
        detail.push_str(&format!("; seed 0: {reason}"));
    }
    ensure(good * 100 >= 95 * 50, || detail.clone())?;
    Ok(detail)
}

fn c8_threshold() -> Outcome {
    let n = 150;
    let cfg = ThresholdConfig {
        n,
        d: 2,
        grid: rigidity_tools::experiments::default_threshold_grid(n),
        trials: 200,
        seed: 8,
        threads: 0,
    };
    let pts = threshold_points(&cfg).map_err(|e| e.to_string())?;
    let t = cfg.trials as f64;
    let mut worst: f64 = 0.0;
    for pt in &pts {
        let gap = (pt.rigid as f64 - pt.min_degree_ok as f64).abs() / t;
        worst = worst.max(gap);
        ensure(gap <= 0.1, || format!("p = {:.5}: gap {gap:.3}", pt.p))?;
    }
    for w in pts.windows(2) {
        let (a, b) = (w[0].rigid as f64 / t, w[1].rigid as f64 / t);
        let sigma = ((a * (1.0 - a) + b * (1.0 - b)) / t).sqrt();
        ensure(b >= a - 3.0 * sigma, || {
            format!("drop from {a:.3} to {b:.3} at p = {:.5}", w[1].p)
        })?;
    }
    let fr: Vec<String> = pts
        .iter()
        .map(|p| format!("{:.3}", p.rigid as f64 / t))
        .collect();
    Ok(format!(
        "max gap {worst:.3}; rigid fractions [{}]",
        fr.join(", ")
    ))
}

fn c9_regular() -> Outcome {
    let cfg = RegularConfig {
        n: 200,
        r: 20,
        d: 2,
        trials: 100,
        seed: 9,
        threads: 0,
    };
    let rigid = regular_outcomes(&cfg)
        .map_err(|e| e.to_string())?
        .iter()
        .filter(|&&r| r)
        .count();
    ensure(rigid >= 95, || format!("{rigid}/100 rigid"))?;
    Ok(format!("{rigid}/100 rigid"))
}

fn c10_codegree() -> Outcome {
    let cfg = CodegreeConfig {
        n: 300,
        model: CodegreeModel::Gnp,
        k_grid: vec![],
        trials: 50,
        seed: 10,
        threads: 0,
    };
    let rows = codegree_trials(&cfg).map_err(|e| e.to_string())?;
    let rigid = rows
        .iter()
        .filter(|r| r.rigid_relaxed == Some(true))
        .count();
    let min_c = rows.iter().map(|r| r.codegree).min().unwrap();
    ensure(rigid == 50, || {
        format!("{rigid}/50 rigid at d = floor(codegree / 40)")
    })?;
    let eq = equipartition_codegree(&EquipartitionConfig {
        n: 400,
        samples: 200,
        seed: 10,
    })
    .map_err(|e| e.to_string())?;
    ensure(eq.fraction_at_least_7m_8 >= 0.95, || {
        format!(
            "equipartitions: fraction {} with m = {}",
            eq.fraction_at_least_7m_8, eq.m
        )
    })?;
    Ok(format!(
        "50/50 rigid (min codegree {min_c}); equipartitions m = {}, fraction {:.3}",
        eq.m, eq.fraction_at_least_7m_8
    ))
}

fn c11_limit() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let (mut done, mut tries) = (0, 0);
    while done < 100 && tries < 20_000 {
        tries += 1;
        let (g, p, d, _) = strong_instance(&mut rng);
        let seed: u64 = rng.gen();
        if !certify_strong_partition(&g, &p, d, true, seed)
            .unwrap()
            .accepted
        {
            continue;
        }
        let spec = GeneralizedPartitionSpec::from_strong(&g, &p).unwrap();
        let v = certify_generalized_partition(&g, &spec, d, seed).unwrap();
        let trees = v
            .witness
            .ok_or_else(|| "generalized certificate has no witness".to_string())?
            .comb_trees;
        ensure(v.accepted, || {
            format!(
                "strong accepted but generalized rejected: {:?}",
                v.failing_obligation
            )
        })?;
        let colors = spec.bounds.iter().copied().max().unwrap_or(0);
        let l = assemble_limit_framework(&spec, &trees, &color_points(colors, d, seed))
            .map_err(|e| e.to_string())?;
        ensure(
            is_limit_inf_rigid(&l, seed)
                .map_err(|e| e.to_string())?
                .rigid,
            || format!("limit framework flexible, n = {}, d = {d}", g.n()),
        )?;
        done += 1;
    }
    ensure(done == 100, || {
        format!("only {done} accepted instances in {tries} attempts")
    })?;
    Ok(format!(
        "100 accepted instances ({tries} attempts) give rigid limit frameworks"
    ))
}

fn rigid(args: &[&str], out: &PathBuf) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_rigid"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || {
        format!("rigid {args:?} exited with {status}")
    })?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn c12_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("rigid-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let runs: [&[&str]; 6] = [
        &[
            "threshold",
            "--n",
            "40",
            "--d",
            "2",
            "--trials",
            "20",
            "--seed",
            "5",
        ],
        &[
            "regular", "--n", "30", "--r", "6", "--d", "2", "--trials", "10", "--seed", "5",
        ],
        &["codegree", "--n", "60", "--trials", "4", "--seed", "5"],
        &[
            "equipartition",
            "--n",
            "200",
            "--samples",
            "10",
            "--seed",
            "5",
        ],
        &[
            "connector",
            "--n",
            "72",
            "--p",
            "0.95",
            "--m",
            "6",
            "--k",
            "2",
            "--eta",
            "5/6",
            "--trials",
            "4",
            "--seed",
            "5",
        ],
        &[
            "giant", "--n", "72", "--p", "0.95", "--m", "6", "--k", "2", "--eta", "5/6",
            "--trials", "4", "--seed", "5",
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let a = dir.join(format!("{i}a.csv"));
        let b = dir.join(format!("{i}b.csv"));
        let first = rigid(args, &a)?;
        let mut single = args.to_vec();
        single.extend(["--threads", "1"]);
        let second = rigid(&single, &b)?;
        ensure(first == second, || {
            format!("{} differs between runs", args[0])
        })?;
        let (sa, sb) = (dir.join(format!("{i}a.svg")), dir.join(format!("{i}b.svg")));
        if i == 0 {
            let plot = |out: &PathBuf| {
                rigid(
                    &[
                        "plot",
                        a.to_str().unwrap(),
                        "--x",
                        "p",
                        "--y",
                        "frac_rigid,frac_mindeg",
                    ],
                    out,
                )
            };
            ensure(plot(&sa)? == plot(&sb)?, || {
                "SVG differs between runs".into()
            })?;
        }
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok("6 experiments and 1 plot byte-identical across reruns and thread counts".into())
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 12] = [
        (1, "d = 1 equals connectivity", c1_one_dimension),
        (2, "d = 2 equals the pebble game", c2_two_dimensions),
        (3, "overlapping cliques are sharp", c3_sharpness),
        (4, "0-extensions and vertex splits", c4_moves),
        (5, "anchoring equals tree packing", c5_frames),
        (6, "certifier soundness", c6_soundness),
        (
            7,
            "connector pipeline on G(600, 0.1)",
            c7_connector_pipeline,
        ),
        (8, "threshold coincidence", c8_threshold),
        (9, "random regular graphs", c9_regular),
        (10, "codegree and equipartitions", c10_codegree),
        (11, "limit frameworks agree", c11_limit),
        (12, "determinism", c12_determinism),
    ];
    let selected: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS [{secs:7.1}s] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{secs:7.1}s] {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
