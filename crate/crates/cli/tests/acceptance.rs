//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed; the
//! process fails if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path as FsPath, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grint::algebra::{ideal_invariance_check, verify_interaction_axioms, Core};
use grint::arith::{smith_normal_form, IntMatrix};
use grint::dynamics::periodic_orbits;
use grint::graph::samples::{
    chain3, chain_with_extra_source, loop_with_sink_exit, point, random_graph, random_graph_with, rose,
    single_edge, two_chain_family, two_cycle,
};
use grint::ktheory::{k_groups, pv_oracle_level, pv_truncated_oracle};
use grint::rep::{ck_full_space_check, ck_window_check, oracle_check_VH, powers_via_rep};
use grint::structure::{
    all_hereditary_saturated, condition_K, condition_L, cstar_horizon, is_cstar_dynamical, powers_via_matrix,
    powers_via_paths, simple_loops, VertexSet, DEFAULT_LATTICE_BOUND,
};
use grint::Graph;

/// The randomized fixtures are `random_graph(seed, 6, 12)` for these seeds:
/// the first five, all of whose path spaces up to length 6 fit the
/// truncated representation used by the operator criterion.
const RANDOM_SEEDS: [u64; 5] = [0, 1, 2, 3, 4];

type Check = Result<(), String>;

struct Fixture {
    name: String,
    graph: Graph,
}

fn fixture(name: impl Into<String>, graph: Graph) -> Fixture {
    Fixture {
        name: name.into(),
        graph,
    }
}

/// The fixture set of the axiom suite.
fn axiom_fixtures() -> Vec<Fixture> {
    let mut out: Vec<Fixture> = (1..=4).map(|n| fixture(format!("rose({n})"), rose(n))).collect();
    out.push(fixture("two_cycle", two_cycle()));
    out.push(fixture("chain u->v->w", chain3()));
    out.push(fixture("edge v->w", single_edge()));
    out.push(fixture("family(2)", two_chain_family(2)));
    out.push(fixture("family(3)", two_chain_family(3)));
    for seed in RANDOM_SEEDS {
        out.push(fixture(format!("random(seed {seed})"), random_graph(seed, 6, 12)));
    }
    out
}

/// The axiom fixtures plus the remaining named samples.
fn all_fixtures() -> Vec<Fixture> {
    let mut out = axiom_fixtures();
    out.push(fixture("loop_with_sink_exit", loop_with_sink_exit()));
    out.push(fixture("chain_with_extra_source", chain_with_extra_source()));
    out.push(fixture("point", point()));
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    for f in axiom_fixtures() {
        let core = Core::new(&f.graph);
        for level in 1..=3 {
            let r = verify_interaction_axioms(&core, level).map_err(|e| format!("{}: {e}", f.name))?;
            ensure(r.passed(), || {
                format!("{} level {level}: {} violation(s), first {:?}", f.name, r.violation_count, r.violations.first())
            })?;
        }
    }
    Ok(())
}

fn criterion_2() -> Check {
    for f in all_fixtures() {
        let g = &f.graph;
        for (level, depth) in [(0, 2), (1, 3), (2, 4)] {
            let r = oracle_check_VH(g, level, depth).map_err(|e| format!("{}: {e}", f.name))?;
            ensure(r.passed(), || format!("{} at (N, L) = ({level}, {depth}): {r:?}", f.name))?;
            for c in ck_window_check(g, depth).map_err(|e| e.to_string())? {
                ensure(c.passed(), || format!("{} depth {depth}: {c:?}", f.name))?;
            }
            let defect = ck_full_space_check(g, depth)
                .map_err(|e| e.to_string())?
                .iter()
                .any(|c| !c.passed());
            ensure(defect == (g.edge_count() > 0), || {
                format!("{} depth {depth}: boundary defect observed = {defect}", f.name)
            })?;
        }
    }
    Ok(())
}

fn criterion_3(bin: &FsPath, dir: &FsPath) -> Check {
    for f in all_fixtures() {
        let g = &f.graph;
        let m = powers_via_matrix(g, 6).map_err(|e| e.to_string())?;
        let p = powers_via_paths(g, 6);
        let o = powers_via_rep(g, 6).map_err(|e| format!("{}: {e}", f.name))?;
        ensure(m == p && p == o, || format!("{}: matrix {m:?}, paths {p:?}, operator {o:?}", f.name))?;
    }
    for f in [fixture("rose(2)", rose(2)), fixture("family(3)", two_chain_family(3))] {
        let file = write_graph(dir, &f);
        let honest = Command::new(bin).arg("powers").arg(&file).output().map_err(|e| e.to_string())?;
        ensure(honest.status.code() == Some(0), || format!("{}: powers exited {:?}", f.name, honest.status))?;
        let faulty = Command::new(bin)
            .args(["powers", "--inject-fault"])
            .arg(&file)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(faulty.status.code() == Some(3), || {
            format!("{}: disagreement exited {:?}", f.name, faulty.status)
        })?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    for f in all_fixtures() {
        let g = &f.graph;
        let core = Core::new(g);
        let central = core
            .centrality_check(&core.H_power_unit(1), 3)
            .map_err(|e| e.to_string())?;
        let dynamical = is_cstar_dynamical(g);
        let max_power = 6.max(cstar_horizon(g) + 1);
        let full = powers_via_matrix(g, max_power).map_err(|e| e.to_string())?.len() == max_power;
        ensure(central == dynamical && dynamical == full, || {
            format!("{}: H(1) central {central}, path condition {dynamical}, full powers {full}", f.name)
        })?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let expect = |name: &str, g: &Graph, k0: &str, k1: &str| -> Check {
        let (a, b) = k_groups(g);
        ensure(a.to_string() == k0 && b.to_string() == k1, || {
            format!("{name}: K0 = {a}, K1 = {b}; expected {k0}, {k1}")
        })
    };
    // Hand-computed: Δ of the n-rose is the 1x1 matrix (n - 1).
    for (n, k0) in [(2, "0"), (3, "Z/2"), (4, "Z/3"), (5, "Z/4")] {
        expect(&format!("rose({n})"), &rose(n), k0, "0")?;
    }
    expect("two_cycle", &two_cycle(), "Z", "Z")?;
    expect("chain u->v->w", &chain3(), "Z", "0")?;
    expect("edge v->w", &single_edge(), "Z", "0")?;
    expect("point", &point(), "Z", "0")?;
    expect("chain_with_extra_source", &chain_with_extra_source(), "Z", "0")?;
    expect("family(2)", &two_chain_family(2), "Z", "0")?;
    expect("family(3)", &two_chain_family(3), "Z", "0")?;
    for f in all_fixtures() {
        let g = &f.graph;
        if simple_loops(g).is_empty() {
            let (a, b) = k_groups(g);
            let sinks = g.sinks().len();
            ensure(a.free_rank == sinks && a.torsion.is_empty() && b.is_trivial(), || {
                format!("{} (acyclic, {sinks} sinks): K0 = {a}, K1 = {b}", f.name)
            })?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    for f in all_fixtures() {
        let g = &f.graph;
        let pv = pv_truncated_oracle(g, pv_oracle_level(g)).map_err(|e| e.to_string())?;
        let (k0, k1) = k_groups(g);
        ensure(pv.stabilized && pv.k0 == k0 && pv.k1 == k1, || {
            format!("{}: truncated {pv:?} vs K0 = {k0}, K1 = {k1}", f.name)
        })?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    for (name, g, l, k) in [
        ("rose(1)", rose(1), false, false),
        ("rose(2)", rose(2), true, true),
        ("loop_with_sink_exit", loop_with_sink_exit(), true, false),
    ] {
        let (gl, gk) = (condition_L(&g), condition_K(&g).map_err(|e| e.to_string())?);
        ensure(gl == l && gk == k, || format!("{name}: L = {gl}, K = {gk}; expected {l}, {k}"))?;
    }
    for f in all_fixtures() {
        let g = &f.graph;
        let orbits = periodic_orbits(g).map_err(|e| e.to_string())?;
        ensure(orbits.is_empty() == condition_L(g), || {
            format!("{}: {} periodic orbit(s), L = {}", f.name, orbits.len(), condition_L(g))
        })?;
        for o in &orbits {
            ensure(o.len() == o.generating_loop.len(), || {
                format!("{}: orbit of size {} from a loop of length {}", f.name, o.len(), o.generating_loop.len())
            })?;
        }
    }
    Ok(())
}

fn brute_force_lattice(g: &Graph) -> BTreeSet<VertexSet> {
    let n = g.vertex_count();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|v| mask >> v & 1 == 1).collect::<VertexSet>())
        .filter(|set| {
            let hereditary = g.edges().iter().all(|e| !set.contains(&e.src) || set.contains(&e.dst));
            let saturated = (0..n).all(|v| {
                set.contains(&v) || g.is_sink(v) || g.out_edges(v).iter().any(|&e| !set.contains(&g.dst(e)))
            });
            hereditary && saturated
        })
        .collect()
}

fn criterion_8() -> Check {
    let mut graphs: Vec<Fixture> = all_fixtures()
        .into_iter()
        .filter(|f| f.graph.vertex_count() <= 5)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..200 {
        let (nv, ne) = (rng.gen_range(1..=5), rng.gen_range(0..=8));
        graphs.push(fixture(format!("lattice sample {k}"), random_graph_with(&mut rng, nv, ne)));
    }
    for f in &graphs {
        let g = &f.graph;
        let lattice = all_hereditary_saturated(g, DEFAULT_LATTICE_BOUND).map_err(|e| e.to_string())?;
        let got: BTreeSet<VertexSet> = lattice.iter().cloned().collect();
        ensure(got.len() == lattice.len() && got == brute_force_lattice(g), || {
            format!("{}: lattice {lattice:?}", f.name)
        })?;
    }
    for f in all_fixtures() {
        let g = &f.graph;
        let core = Core::new(g);
        for hs in all_hereditary_saturated(g, DEFAULT_LATTICE_BOUND).map_err(|e| e.to_string())? {
            let ok = ideal_invariance_check(&core, &hs, 3).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{}: ideal of {hs:?} not invariant at N = 3", f.name))?;
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..500 {
        let (rows, cols) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = IntMatrix::from_rows(&data, cols);
        smith_normal_form(&m)
            .verify(&m)
            .map_err(|e| format!("matrix {k}: {e}\n{m}"))?;
    }
    Ok(())
}

fn criterion_10(bin: &FsPath, dir: &FsPath) -> Check {
    for f in all_fixtures() {
        let file = write_graph(dir, &f);
        let run = || {
            Command::new(bin)
                .args(["analyze", "--json"])
                .arg(&file)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.code() == Some(0), || {
            format!("{}: analyze exited {:?}: {}", f.name, a.status, String::from_utf8_lossy(&a.stderr))
        })?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || format!("{}: outputs differ", f.name))?;
    }
    Ok(())
}

fn write_graph(dir: &FsPath, f: &Fixture) -> PathBuf {
    let slug: String = f
        .name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let path = dir.join(format!("{slug}.graph"));
    std::fs::write(&path, f.graph.to_text()).expect("write fixture");
    path
}

fn main() {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_grint"));
    let dir = tempfile::tempdir().expect("temporary directory");
    let criteria: Vec<(usize, Box<dyn Fn() -> Check>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(|| criterion_3(&bin, dir.path()))),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
        (10, Box::new(|| criterion_10(&bin, dir.path()))),
    ];
    let mut failed = 0;
    for (n, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("criterion {n}: PASS ({:.1?})", start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("criterion {n}: FAIL ({:.1?}) {e}", start.elapsed());
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criterion/criteria failed");
        std::process::exit(1);
    }
}
