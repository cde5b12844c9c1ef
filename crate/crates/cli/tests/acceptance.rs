//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion marked `unproven` could not be settled within its pinned
//! time budget; the suite still exits successfully for those, but any
//! counterexample or mismatch fails the run.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use acyc::args::{CheckerList, GenArgs, NumList};
use acyc::run::{cmd_run, SolverSpec, Status};
use acyclic_cnf::checkers::{encode, formula_size, Checker, EncodeOptions};
use acyclic_cnf::circuit::matrix::{strassen_product, strassen_width, Matrix};
use acyclic_cnf::circuit::{Circuit, CircuitOptions, GateBuilder, Wire};
use acyclic_cnf::cnf::{Assignment, CnfFormula, EdgeVarMap, Lit, Role, Var, VarAllocator};
use acyclic_cnf::engine::{enumerate_models, solve, solve_with_order, Propagator};
use acyclic_cnf::families::{
    atleast_seq, atmost_seq, digraph_realizable, encode_no_sink, pigeonhole_bounds, FamilyKind,
};
use acyclic_cnf::graph::DegreeBounds;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_MAX_SECONDS: f64 = 300.0;
const INTERNAL_MAX_N: usize = 6;
/// Largest n the internal search (no clause learning) refutes in seconds.
fn internal_max_n(c: Checker) -> usize {
    match c {
        Checker::Bin => 5,
        Checker::Unr | Checker::Ss => 4,
        _ => INTERNAL_MAX_N,
    }
}
const EXTERNAL_MAX_N: usize = 12;
const EXTERNAL_TIMEOUT_SECS: f64 = 10.0;
const UP_GRAPHS_PER_N: usize = 200;
const BIN_SEARCH_MAX_N: usize = 8;
const SIZE_SLOPE_NS: [usize; 5] = [4, 8, 16, 32, 64];
const CUBIC_SLOPE: f64 = 3.0;
const BIN_SLOPE: f64 = 2.0;
const SLOPE_TOLERANCE: f64 = 0.3;
const SS_SLOPE_BAND: (f64, f64) = (2.5, 3.1);
const SIZE_COMPARISON_N: usize = 100;
const STRASSEN_MAX_N: usize = 8;
const STRASSEN_SAMPLES: usize = 1000;
const CARDINALITY_MAX_LITS: usize = 8;
const REALIZABILITY_EXHAUSTIVE_N: usize = 3;
const REALIZABILITY_RANDOM_N: usize = 4;
const REALIZABILITY_RANDOM_VECTORS: usize = 500;
const GT_INSTANCES: usize = 49;
const SUPERVISOR_INSTANCES: usize = 441;
/// Sizes regenerated to check that output is reproducible.
const RERUN_SIZES: &str = "2..20";
const E2E_MAX_N: usize = 15;
const E2E_TIMEOUT_SECS: f64 = 10.0;
const SEED: u64 = 0x5eed_acc;

enum Verdict {
    Pass(String),
    Fail(String),
    /// No counterexample, but part of the claim was not settled in budget.
    Unproven(String),
}

// ---------------------------------------------------------------------------
// Independent oracles

/// Acyclicity of the graph whose edge `ij` is bit `i*n + j` (0-based), by
/// repeatedly deleting vertices without incoming edges.
fn oracle_acyclic(n: usize, mask: u64) -> bool {
    let mut alive = vec![true; n];
    for _ in 0..n {
        let source = (0..n).find(|&j| alive[j] && !(0..n).any(|i| alive[i] && mask >> (i * n + j) & 1 == 1));
        match source {
            Some(j) => alive[j] = false,
            None => return false,
        }
    }
    true
}

fn oracle_degrees(n: usize, mask: u64) -> (Vec<usize>, Vec<usize>) {
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            if mask >> (i * n + j) & 1 == 1 {
                outdeg[i] += 1;
                indeg[j] += 1;
            }
        }
    }
    (indeg, outdeg)
}

/// Is there a graph meeting `(max_in, min_out)` per vertex?
fn oracle_realizable(bounds: &[(usize, usize)], allow_self_loops: bool) -> bool {
    let n = bounds.len();
    (0u64..1 << (n * n)).any(|mask| {
        if !allow_self_loops && (0..n).any(|i| mask >> (i * n + i) & 1 == 1) {
            return false;
        }
        let (indeg, outdeg) = oracle_degrees(n, mask);
        (0..n).all(|i| indeg[i] <= bounds[i].0 && outdeg[i] >= bounds[i].1)
    })
}

/// Projection order for an edge map, with the oracle bit of each variable.
fn edge_projection(edges: &EdgeVarMap) -> (Vec<Var>, Vec<usize>) {
    let n = edges.n();
    edges.iter().map(|(i, j, v)| (v, (i - 1) * n + (j - 1))).unzip()
}

fn oracle_mask(model_mask: u32, bits: &[usize]) -> u64 {
    bits.iter().enumerate().filter(|(k, _)| model_mask >> k & 1 == 1).map(|(_, &b)| 1u64 << b).sum()
}

fn build(c: Checker, n: usize) -> (CnfFormula, EdgeVarMap, VarAllocator, acyclic_cnf::cnf::VarMap) {
    let mut alloc = VarAllocator::new();
    let edges = EdgeVarMap::allocate(n, &mut alloc);
    let r = encode(c, &edges, &mut alloc, &EncodeOptions::default()).expect("encode");
    (r.formula, edges, alloc, r.varmap)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> u64 {
    // a DAG under a random order, sometimes with a few arbitrary extra edges
    let mut order: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        order.swap(k, rng.random_range(0..=k));
    }
    let q: f64 = rng.random();
    let mut mask = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(q) {
                mask |= 1 << (order[a] * n + order[b]);
            }
        }
    }
    if rng.random_bool(0.5) {
        for _ in 0..rng.random_range(1..=3) {
            mask |= 1 << rng.random_range(0..n * n);
        }
    }
    mask
}

fn fixed_edges(p: &mut Propagator, edges: &EdgeVarMap, mask: u64) -> bool {
    let n = edges.n();
    p.new_level();
    for (i, j, v) in edges.iter() {
        let l = v.lit(mask >> ((i - 1) * n + (j - 1)) & 1 == 1);
        match p.value(l) {
            Some(true) => {}
            Some(false) => return true,
            None => {
                p.enqueue(l, None);
                if p.propagate().is_some() {
                    return true;
                }
            }
        }
    }
    false
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

// ---------------------------------------------------------------------------
// Criteria

fn c1_oracle() -> Verdict {
    let start = Instant::now();
    let mut cases = Vec::new();
    for c in [Checker::Tc1, Checker::Tc2, Checker::Bin, Checker::Unr, Checker::Fw, Checker::Mm, Checker::Ss] {
        for n in 1..=3 {
            cases.push((c, n));
        }
    }
    for c in [Checker::Tc1, Checker::Tc2, Checker::Bin, Checker::Unr, Checker::Fw] {
        cases.push((c, 4));
    }
    let mut checked = 0;
    for &(c, n) in &cases {
        let (f, edges, _, _) = build(c, n);
        let (vars, bits) = edge_projection(&edges);
        let models: BTreeSet<u64> =
            enumerate_models(&f, &vars).expect("projection").masks.iter().map(|&m| oracle_mask(m, &bits)).collect();
        let acyclic: BTreeSet<u64> = (0u64..1 << (n * n)).filter(|&m| oracle_acyclic(n, m)).collect();
        if models != acyclic {
            let extra = models.difference(&acyclic).next();
            let missing = acyclic.difference(&models).next();
            return Verdict::Fail(format!("{c} n={n}: extra model {extra:?}, missing acyclic graph {missing:?}"));
        }
        checked += 1;
    }
    // tc3 reuses the edge variables: its models are the transitive acyclic
    // graphs, and every acyclic graph must lie below one of them
    for n in 1..=4 {
        let (f, edges, _, _) = build(Checker::Tc3, n);
        let (vars, bits) = edge_projection(&edges);
        let models: Vec<u64> =
            enumerate_models(&f, &vars).expect("projection").masks.iter().map(|&m| oracle_mask(m, &bits)).collect();
        if let Some(m) = models.iter().find(|&&m| !oracle_acyclic(n, m)) {
            return Verdict::Fail(format!("tc3 n={n}: cyclic model {m:#x}"));
        }
        for g in (0u64..1 << (n * n)).filter(|&m| oracle_acyclic(n, m)) {
            if !models.iter().any(|&m| g & !m == 0) {
                return Verdict::Fail(format!("tc3 n={n}: acyclic graph {g:#x} lies below no model"));
            }
        }
        checked += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > ORACLE_MAX_SECONDS {
        return Verdict::Fail(format!("{checked} cases matched but took {secs:.1} s > {ORACLE_MAX_SECONDS} s"));
    }
    Verdict::Pass(format!("{checked} (checker, n) cases match the acyclic graphs exactly, tc3 by downward closure ({secs:.1} s)"))
}

fn no_sink_and(c: Checker, n: usize) -> (CnfFormula, EdgeVarMap) {
    let (mut f, edges, _, _) = build(c, n);
    f.extend(encode_no_sink(&edges));
    (f, edges)
}

fn c2_ordering_principle(refsat: &Path) -> Verdict {
    let mut unproven = Vec::new();
    let mut internal = 0;
    for c in Checker::ALL {
        for n in 1..=INTERNAL_MAX_N {
            if n > internal_max_n(c) {
                unproven.push(format!("internal {c} n={n}"));
                continue;
            }
            let (f, edges) = no_sink_and(c, n);
            let model = if c.is_circuit() {
                solve_with_order(&f, &Assignment::new(), edges.vars())
            } else {
                solve(&f, &Assignment::new())
            };
            if let Some(m) = model {
                let g: Vec<(usize, usize)> = edges.iter().filter(|&(_, _, v)| m.get(v) == Some(true)).map(|(i, j, _)| (i, j)).collect();
                return Verdict::Fail(format!("internal: no-sink({n}) /\\ {c} has a model, edges {g:?}"));
            }
            internal += 1;
        }
    }
    let template = std::env::var(acyc::args::SOLVER_ENV).unwrap_or_else(|_| format!("'{}' {{input}}", refsat.display()));
    let spec = SolverSpec::new(None, &template, EXTERNAL_TIMEOUT_SECS, 0).expect("solver spec");
    let mut external = 0;
    for c in Checker::ALL {
        for n in 2..=EXTERNAL_MAX_N {
            let dir = tempfile::tempdir().expect("tempdir");
            let args = gen_args(FamilyKind::NoSink, vec![n as u64], vec![], Some(vec![c]), dir.path());
            acyc::gen::cmd_gen(&args, &mut std::io::sink()).expect("gen");
            let out = cmd_run(dir.path(), &spec, 1, None).expect("run");
            let r = &out.records[0];
            match r.status {
                Status::Unsat => external += 1,
                Status::Sat => {
                    return Verdict::Fail(format!("external: {} reports no-sink({n}) /\\ {c} satisfiable", spec.label))
                }
                s => {
                    unproven.push(format!("external {c} n={n}..{EXTERNAL_MAX_N} ({s} at n={n})"));
                    break;
                }
            }
        }
    }
    let msg = format!("{internal} internal and {external} external refutations, no models");
    if unproven.is_empty() {
        Verdict::Pass(msg)
    } else {
        Verdict::Unproven(format!(
            "{msg}; not settled within budget ({EXTERNAL_TIMEOUT_SECS} s per external run): {}",
            unproven.join(", ")
        ))
    }
}

fn c3_up_decides() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut total = 0;
    for c in [Checker::Tc1, Checker::Tc2, Checker::Fw, Checker::Mm, Checker::Ss] {
        for n in 3..=8 {
            let (f, edges, _, _) = build(c, n);
            let mut p = Propagator::new(&f);
            if p.root_conflict().is_some() {
                return Verdict::Fail(format!("{c} n={n}: conflict with no edges fixed"));
            }
            for _ in 0..UP_GRAPHS_PER_N {
                let mask = random_graph(&mut rng, n);
                let conflict = fixed_edges(&mut p, &edges, mask);
                let cyclic = !oracle_acyclic(n, mask);
                if conflict != cyclic {
                    return Verdict::Fail(format!("{c} n={n} graph {mask:#x}: cyclic={cyclic} but UP conflict={conflict}"));
                }
                if !conflict {
                    let mut a = p.assignment();
                    for v in 1..=f.num_vars() {
                        let v = Var::new(v).unwrap();
                        if a.get(v).is_none() {
                            a.set(v, false);
                        }
                    }
                    if !f.is_satisfied_by(&a) {
                        return Verdict::Fail(format!("{c} n={n} graph {mask:#x}: UP fixpoint does not extend to a model"));
                    }
                }
                p.backtrack(0);
                total += 1;
            }
        }
    }
    Verdict::Pass(format!("{total} full edge assignments, UP conflict iff cyclic in every case"))
}

fn c4_bin_counterexample() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    for n in 2..=BIN_SEARCH_MAX_N {
        let (f, edges, _, _) = build(Checker::Bin, n);
        let mut p = Propagator::new(&f);
        let simple_cycles = (2..=n).map(|len| (0..len).map(|k| 1u64 << (k * n + (k + 1) % len)).sum::<u64>());
        let random = (0..2000).map(|_| random_graph(&mut rng, n));
        for mask in simple_cycles.chain(random).filter(|&m| !oracle_acyclic(n, m)) {
            let conflict = fixed_edges(&mut p, &edges, mask);
            p.backtrack(0);
            if !conflict {
                let es: Vec<String> = (0..n * n).filter(|b| mask >> b & 1 == 1).map(|b| format!("{}{}", b / n + 1, b % n + 1)).collect();
                return Verdict::Pass(format!("n={n}, cyclic graph {{{}}} reaches a UP fixpoint", es.join(",")));
            }
        }
    }
    Verdict::Fail(format!("no cyclic assignment escapes UP on bin for n <= {BIN_SEARCH_MAX_N}"))
}

fn c5_unr_top_witness() -> Verdict {
    let mut gadgets = 0;
    for n in 3..=6 {
        let (mut f, edges, _, varmap) = build(Checker::Unr, n);
        f.extend(encode_no_sink(&edges));
        let mut p = Propagator::new(&f);
        for (i, j, _) in edges.iter() {
            let u = varmap.get(&Role::UnaryWitness { i, j, pos: n - 1 }).expect("top witness");
            p.new_level();
            p.enqueue(u.pos(), None);
            let conflict = p.propagate().is_some();
            p.backtrack(0);
            if !conflict {
                return Verdict::Fail(format!("n={n}: asserting u_{} of pair {i}{j} propagates without conflict", n - 1));
            }
            gadgets += 1;
        }
    }
    Verdict::Pass(format!("all {gadgets} pair gadgets for n = 3..6 conflict under UP"))
}

fn c6_sizes() -> Verdict {
    let expected = [(Checker::Tc1, 48), (Checker::Tc2, 48), (Checker::Tc3, 36), (Checker::Fw, 72), (Checker::Unr, 36)];
    for (c, want) in expected {
        let got = formula_size(c, 2, None).expect("size");
        if got != want {
            return Verdict::Fail(format!("{c} size at n=2 is {got}, expected {want}"));
        }
    }
    let xs: Vec<f64> = SIZE_SLOPE_NS.iter().map(|&n| (n as f64).ln()).collect();
    let mut report = Vec::new();
    let mut failures = Vec::new();
    for c in Checker::ALL {
        let (_, log_power) = c.size_class().exponents();
        let sizes: Vec<f64> = SIZE_SLOPE_NS.iter().map(|&n| formula_size(c, n, None).expect("size") as f64).collect();
        let raw: Vec<f64> = sizes.iter().map(|s| s.ln()).collect();
        let norm: Vec<f64> =
            sizes.iter().zip(&SIZE_SLOPE_NS).map(|(s, &n)| (s / (n as f64).log2().powi(log_power as i32)).ln()).collect();
        let (raw_slope, slope_norm) = (slope(&xs, &raw), slope(&xs, &norm));
        report.push(format!("{c} {raw_slope:.2}/{slope_norm:.2}"));
        let ok = match c {
            Checker::Tc1 | Checker::Tc2 | Checker::Unr | Checker::Fw => (slope_norm - CUBIC_SLOPE).abs() <= SLOPE_TOLERANCE,
            Checker::Bin => (slope_norm - BIN_SLOPE).abs() <= SLOPE_TOLERANCE,
            Checker::Ss => (SS_SLOPE_BAND.0..=SS_SLOPE_BAND.1).contains(&slope_norm),
            Checker::Tc3 | Checker::Mm => true,
        };
        if !ok {
            failures.push(format!("{c} slope {slope_norm:.3}"));
        }
    }
    let n = SIZE_COMPARISON_N;
    let bin = formula_size(Checker::Bin, n, None).expect("bin size");
    let budget = bin.div_ceil(10) + 1;
    for c in Checker::ALL.into_iter().filter(|&c| c != Checker::Bin) {
        let bigger = match formula_size(c, n, Some(budget)) {
            Ok(s) => s > bin,
            Err(acyclic_cnf::Error::GateBudget { .. }) => true,
            Err(e) => return Verdict::Fail(format!("{c} at n={n}: {e}")),
        };
        if !bigger {
            failures.push(format!("{c} not larger than bin at n={n}"));
        }
    }
    let summary = format!("n=2 counts exact; slopes raw/normalized {}; bin smallest at n={n} ({bin})", report.join(", "));
    if failures.is_empty() {
        Verdict::Pass(summary)
    } else {
        Verdict::Fail(format!("{}; {summary}", failures.join(", ")))
    }
}

fn c7_strassen() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut entries = 0;
    let per_n = STRASSEN_SAMPLES / STRASSEN_MAX_N;
    for n in 1..=STRASSEN_MAX_N {
        for square in [false, true] {
            let mut c = Circuit::new(CircuitOptions::default());
            let mut alloc = VarAllocator::new();
            let av: Vec<Var> = alloc.fresh_vec(n * n);
            let bv: Vec<Var> = if square { av.clone() } else { alloc.fresh_vec(n * n) };
            let aw: Vec<Wire> = av.iter().map(|&v| c.input(v)).collect();
            let bw: Vec<Wire> = bv.iter().map(|&v| c.input(v)).collect();
            let am = Matrix::from_fn(n, |i, j| aw[i * n + j]);
            let bm = Matrix::from_fn(n, |i, j| bw[i * n + j]);
            let prod = strassen_product(&mut c, &am, &bm, square, strassen_width(n)).expect("strassen");
            let samples = if square { per_n / 2 } else { per_n - per_n / 2 };
            for _ in 0..samples {
                let a: Vec<bool> = (0..n * n).map(|_| rng.random()).collect();
                let b: Vec<bool> = if square { a.clone() } else { (0..n * n).map(|_| rng.random()).collect() };
                let mut asg = Assignment::new();
                for k in 0..n * n {
                    asg.set(av[k], a[k]);
                    asg.set(bv[k], b[k]);
                }
                let values = c.evaluate(&asg).expect("evaluate");
                for i in 0..n {
                    for j in 0..n {
                        let want = (0..n).filter(|&k| a[i * n + k] && b[k * n + j]).count() as i64;
                        let got = prod.get(i, j).value(&values);
                        if got != want {
                            return Verdict::Fail(format!("n={n} square={square}: entry ({i},{j}) is {got}, expected {want}"));
                        }
                        entries += 1;
                    }
                }
            }
        }
    }
    Verdict::Pass(format!("{STRASSEN_SAMPLES} random products up to {STRASSEN_MAX_N}x{STRASSEN_MAX_N}, {entries} entries exact"))
}

fn c8_cardinality() -> Verdict {
    let mut cases = 0;
    for m in 0..=CARDINALITY_MAX_LITS {
        for k in 0..=m + 1 {
            for atleast in [false, true] {
                let mut alloc = VarAllocator::new();
                let vars = alloc.fresh_vec(m);
                // alternate polarities so negative literals are covered
                let lits: Vec<Lit> = vars.iter().enumerate().map(|(t, v)| v.lit(t % 3 != 1)).collect();
                let f = if atleast { atleast_seq(k, &lits, &mut alloc) } else { atmost_seq(k, &lits, &mut alloc) };
                let models = enumerate_models(&f, &vars).expect("projection");
                for mask in 0u32..1 << m {
                    let count = lits.iter().enumerate().filter(|&(t, l)| (mask >> t & 1 == 1) == l.is_positive()).count();
                    let want = if atleast { count >= k } else { count <= k };
                    if models.contains_mask(mask) != want {
                        let kind = if atleast { "atleast" } else { "atmost" };
                        return Verdict::Fail(format!("{kind}({k}) over {m} literals wrong at {mask:#b}"));
                    }
                }
                cases += 1;
            }
        }
    }
    Verdict::Pass(format!("{cases} (kind, m, k) cases with m <= {CARDINALITY_MAX_LITS} match counting exactly"))
}

fn c9_realizability() -> Verdict {
    let mut checked = 0;
    for loops in [true, false] {
        for n in 1..=REALIZABILITY_EXHAUSTIVE_N {
            let per = (n + 1) * (n + 1);
            for code in 0..per.pow(n as u32) {
                let pairs: Vec<(usize, usize)> =
                    (0..n).map(|i| code / per.pow(i as u32) % per).map(|c| (c / (n + 1), c % (n + 1))).collect();
                let got = digraph_realizable(&DegreeBounds::new(pairs.clone()), loops);
                if got != oracle_realizable(&pairs, loops) {
                    return Verdict::Fail(format!("bounds {pairs:?} self-loops={loops}: filter says {got}"));
                }
                checked += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
        let n = REALIZABILITY_RANDOM_N;
        for _ in 0..REALIZABILITY_RANDOM_VECTORS {
            let pairs: Vec<(usize, usize)> = (0..n).map(|_| (rng.random_range(0..=n), rng.random_range(0..=n))).collect();
            let got = digraph_realizable(&DegreeBounds::new(pairs.clone()), loops);
            if got != oracle_realizable(&pairs, loops) {
                return Verdict::Fail(format!("bounds {pairs:?} self-loops={loops}: filter says {got}"));
            }
            checked += 1;
        }
    }
    for k1 in 1..=6 {
        for k2 in 0..k1 {
            if digraph_realizable(&pigeonhole_bounds(k1, k2), true) {
                return Verdict::Fail(format!("pigeonhole({k1},{k2}) reported realizable"));
            }
        }
    }
    Verdict::Pass(format!("{checked} bound vectors agree with brute force; pigeonhole k1 > k2 unrealizable"))
}

fn gen_args(family: FamilyKind, n: Vec<u64>, p: Vec<u64>, checker: Option<Vec<Checker>>, outdir: &Path) -> GenArgs {
    GenArgs {
        family,
        n: NumList(n),
        p: NumList(if p.is_empty() { (10..=90).step_by(10).collect() } else { p }),
        seed: SEED,
        checker: checker.map(CheckerList),
        outdir: outdir.to_path_buf(),
        simplify: false,
        skip_degenerate: false,
        no_self_loops: false,
        dry_run: false,
        jobs: 1,
    }
}

fn manifest_counts(acyc_bin: &Path, family: &str, extra: &[&str]) -> Result<Vec<(String, usize)>, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = Command::new(acyc_bin)
        .args(["gen", "--family", family, "--n", "2..50", "--seed", "7", "--dry-run", "--outdir"])
        .arg(dir.path())
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let mut counts: Vec<(String, usize)> = Vec::new();
    for line in text.lines().skip(1) {
        let checker = line.split(',').nth(1).unwrap_or_default().to_string();
        match counts.iter_mut().find(|(c, _)| *c == checker) {
            Some((_, k)) => *k += 1,
            None => counts.push((checker, 1)),
        }
    }
    Ok(counts)
}

fn c10_suite_shape(acyc_bin: &Path) -> Verdict {
    let gt = match manifest_counts(acyc_bin, "no-sink", &[]) {
        Ok(c) => c,
        Err(e) => return Verdict::Fail(format!("gen no-sink: {e}")),
    };
    let sup = match manifest_counts(acyc_bin, "supervisor", &["--p", "10..90:10"]) {
        Ok(c) => c,
        Err(e) => return Verdict::Fail(format!("gen supervisor: {e}")),
    };
    if gt.len() != 8 || gt.iter().any(|&(_, k)| k != GT_INSTANCES) {
        return Verdict::Fail(format!("no-sink manifest {gt:?}"));
    }
    if sup.len() != 7 || sup.iter().any(|&(_, k)| k != SUPERVISOR_INSTANCES) {
        return Verdict::Fail(format!("supervisor manifest {sup:?}"));
    }
    // real files for one checker; a second run over a prefix of the sizes
    // must reproduce the same bytes
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for (d, sizes) in dirs.iter().zip(["2..50", RERUN_SIZES]) {
        for family in ["no-sink", "supervisor"] {
            let st = Command::new(acyc_bin)
                .args(["gen", "--family", family, "--n", sizes, "--checker", "bin", "--seed", "7", "--outdir"])
                .arg(d.path())
                .status()
                .expect("spawn acyc");
            if !st.success() {
                return Verdict::Fail(format!("gen {family} --n {sizes} failed"));
            }
        }
    }
    let listing = |d: &Path| -> Vec<(String, Vec<u8>)> {
        let mut v: Vec<(String, Vec<u8>)> = std::fs::read_dir(d)
            .unwrap()
            .map(|e| e.unwrap().path())
            .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
            .collect();
        v.sort();
        v
    };
    let (full, rerun) = (listing(dirs[0].path()), listing(dirs[1].path()));
    let cnfs = full.iter().filter(|(n, _)| n.ends_with(".cnf")).count();
    if cnfs != GT_INSTANCES + SUPERVISOR_INSTANCES {
        return Verdict::Fail(format!("{cnfs} CNF files written"));
    }
    if rerun.is_empty() || !rerun.iter().all(|f| full.binary_search(f).is_ok()) {
        return Verdict::Fail("a rerun with the same seed wrote different bytes".into());
    }
    let refused = Command::new(acyc_bin)
        .args(["gen", "--family", "supervisor", "--n", "3", "--checker", "tc3", "--dry-run", "--outdir", "/nonexistent"])
        .output()
        .expect("spawn acyc");
    if refused.status.success() {
        return Verdict::Fail("tc3 accepted for the supervisor family".into());
    }
    Verdict::Pass(format!(
        "{GT_INSTANCES} no-sink x 8 checkers, {SUPERVISOR_INSTANCES} supervisor x 7 checkers; rerun over n={RERUN_SIZES} byte-identical"
    ))
}

fn c11_end_to_end(acyc_bin: &Path, refsat: &Path) -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let checkers = "tc1,tc2,bin,unr,fw,mm";
    let st = Command::new(acyc_bin)
        .args(["gen", "--family", "supervisor", "--n", &format!("2..{E2E_MAX_N}"), "--checker", checkers, "--seed", "11"])
        .arg("--outdir")
        .arg(dir.path())
        .status()
        .expect("spawn acyc");
    if !st.success() {
        return Verdict::Fail("gen failed".into());
    }
    let small = tempfile::tempdir().unwrap();
    let st = Command::new(acyc_bin)
        .args(["gen", "--family", "supervisor", "--n", "2..6", "--checker", "ss", "--seed", "11", "--outdir"])
        .arg(small.path())
        .status()
        .expect("spawn acyc");
    if !st.success() {
        return Verdict::Fail("gen ss failed".into());
    }
    let solver = std::env::var(acyc::args::SOLVER_ENV).unwrap_or_else(|_| format!("'{}' {{input}}", refsat.display()));
    let mut records = Vec::new();
    for suite in [dir.path(), small.path()] {
        let csv = suite.join("records.csv");
        let out = Command::new(acyc_bin)
            .args(["run", "--timeout", &E2E_TIMEOUT_SECS.to_string(), "--solver-cmd", &solver, "--suite"])
            .arg(suite)
            .arg("--out")
            .arg(&csv)
            .output()
            .expect("spawn acyc");
        if !out.status.success() {
            return Verdict::Fail(format!("run failed: {}", String::from_utf8_lossy(&out.stderr)));
        }
        records.extend(acyc::report::read_records(std::fs::File::open(&csv).unwrap()).unwrap());
        let table = Command::new(acyc_bin).arg("table").arg(&csv).output().expect("spawn acyc");
        if !table.status.success() {
            return Verdict::Fail("table failed".into());
        }
    }
    let sat = records.iter().filter(|r| r.status == Status::Sat).count();
    let unsat = records.iter().filter(|r| r.status == Status::Unsat).count();
    let bad = records.iter().filter(|r| r.status == Status::Sat && r.verified != Some(true)).count();
    let other = records.len() - sat - unsat;
    if bad > 0 || sat == 0 {
        return Verdict::Fail(format!("{sat} SAT answers, {bad} unverified"));
    }
    Verdict::Pass(format!(
        "{} runs: {sat} SAT all verified, {unsat} UNSAT, {other} unsolved in {E2E_TIMEOUT_SECS} s",
        records.len()
    ))
}

fn main() {
    let acyc_bin = PathBuf::from(env!("CARGO_BIN_EXE_acyc"));
    let refsat = PathBuf::from(env!("CARGO_BIN_EXE_acyc-refsat"));
    let list: Vec<(u32, &str, Box<dyn Fn() -> Verdict>)> = vec![
        (1, "oracle equivalence", Box::new(c1_oracle)),
        (2, "ordering principle", Box::new(|| c2_ordering_principle(&refsat))),
        (3, "UP decisiveness", Box::new(c3_up_decides)),
        (4, "bin counterexample", Box::new(c4_bin_counterexample)),
        (5, "unr failed literal", Box::new(c5_unr_top_witness)),
        (6, "size metrics", Box::new(c6_sizes)),
        (7, "Strassen correctness", Box::new(c7_strassen)),
        (8, "cardinality encodings", Box::new(c8_cardinality)),
        (9, "realizability filter", Box::new(c9_realizability)),
        (10, "suite shape", Box::new(|| c10_suite_shape(&acyc_bin))),
        (11, "end-to-end run and verify", Box::new(|| c11_end_to_end(&acyc_bin, &refsat))),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut hard_failures = 0;
    for (k, name, check) in &list {
        if only.is_some_and(|o| o != *k) {
            continue;
        }
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Verdict::Fail("panicked".into()));
        let secs = Duration::as_secs_f64(&start.elapsed());
        let line = match verdict {
            Verdict::Pass(d) => format!("PASS {k:>2} {name}: {d}"),
            Verdict::Unproven(d) => format!("FAIL {k:>2} {name} (unproven, no counterexample): {d}"),
            Verdict::Fail(d) => {
                hard_failures += 1;
                format!("FAIL {k:>2} {name}: {d}")
            }
        };
        println!("{line} [{secs:.1} s]");
    }
    if hard_failures > 0 {
        std::process::exit(1);
    }
}
