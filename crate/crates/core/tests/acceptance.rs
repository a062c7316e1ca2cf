//! End-to-end acceptance checks, one line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use dinterval::bounds::{
    find_heavy_point, greedy_edge_coloring, round_cover, total_size_matching, weighted_turan_bound,
    directed_turan_bound,
};
use dinterval::exact::{chi_e, nu, nu_w, tau, tau_w};
use dinterval::generators::{gen_length_threshold, gen_random, gen_walecki, RandomFamilySpec};
use dinterval::graph::{Digraph, Graph};
use dinterval::harness::{load_store, replay_witness};
use dinterval::lp::{tau_star, tau_star_w};
use dinterval::rational::{ceil_u64, display, from_int, ratio};
use dinterval::{Rational, SearchBudget, WeightSystem};
use rand::Rng;

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let t = start.elapsed();
    if t > Duration::from_secs(limit) {
        Err(format!("took {:.1}s, limit {limit}s", t.as_secs_f64()))
    } else {
        Ok(())
    }
}

fn gallai() -> Result<String, String> {
    let start = Instant::now();
    let mut r = rng(101);
    for i in 0..200 {
        let spec = RandomFamilySpec::new(1, false, r.gen_range(6..=20), r.gen_range(1..=12), r.gen())
            .with_max_component_len(r.gen_range(1..=6));
        let (h, _) = gen_random(&spec).map_err(|e| e.to_string())?;
        let t = tau(&h, &budget()).map_err(|e| e.to_string())?.0;
        let n = nu(&h, &budget()).map_err(|e| e.to_string())?.0;
        ensure!(t == n, "instance {i}: tau {t} != nu {n}");
    }
    within(start, 30)?;
    Ok("200 interval families, tau = nu".into())
}

fn lp_duality() -> Result<String, String> {
    let mut r = rng(202);
    for i in 0..200 {
        let d = r.gen_range(1..=3);
        let separated = r.gen_bool(0.5);
        let len = r.gen_range(4..=8) * if separated { 1 } else { d as u64 };
        let spec = RandomFamilySpec::new(d, separated, len, r.gen_range(1..=10), r.gen())
            .with_max_component_len(3)
            .with_weights(1, r.gen_range(1..=6));
        let (h, w) = gen_random(&spec).map_err(|e| e.to_string())?;
        let s = tau_star_w(&h, &w).map_err(|e| e.to_string())?;
        let sets: Vec<BTreeSet<_>> = h.edges.iter().map(point_set).collect();
        for p in ground(&h) {
            let load: Rational =
                sets.iter().zip(&s.matching.values).filter(|(e, _)| e.contains(&p)).map(|(_, f)| f.clone()).sum();
            ensure!(load <= from_int(1), "instance {i}: matching overloads {p}");
        }
        for (set, &we) in sets.iter().zip(&w.0) {
            let mass: Rational = s.cover.values.iter().filter(|(p, _)| set.contains(p)).map(|(_, v)| v.clone()).sum();
            ensure!(mass >= from_int(we), "instance {i}: cover misses an edge");
        }
        ensure!(s.cover.values.values().all(|v| *v >= from_int(0)), "negative cover value");
        ensure!(s.matching.values.iter().all(|v| *v >= from_int(0)), "negative matching value");
        let cover: Rational = s.cover.values.values().cloned().sum();
        let matching: Rational = s.matching.values.iter().zip(&w.0).map(|(f, &x)| f * from_int(x)).sum();
        ensure!(cover == matching, "instance {i}: {} != {}", display(&cover), display(&matching));
        let lo = from_int(nu_w(&h, &w, &budget()).map_err(|e| e.to_string())?.0);
        let hi = from_int(tau_w(&h, &w, &budget()).map_err(|e| e.to_string())?.0);
        ensure!(lo <= cover && cover <= hi, "instance {i}: sandwich fails");
    }
    Ok("200 instances, cover = matching objective, nu_w <= tau*_w <= tau_w".into())
}

fn walecki() -> Result<String, String> {
    let start = Instant::now();
    for d in 2..=5usize {
        let h = gen_walecki(d).map_err(|e| e.to_string())?;
        let n = nu(&h, &budget()).map_err(|e| e.to_string())?.0;
        let t = tau(&h, &budget()).map_err(|e| e.to_string())?.0;
        let ts = tau_star(&h).map_err(|e| e.to_string())?.value;
        let c = chi_e(&h, &budget()).map_err(|e| e.to_string())?.colors;
        ensure!(n == 1, "d={d}: nu = {n}");
        ensure!(t == d as u64, "d={d}: tau = {t}");
        ensure!(ts == from_int(d as u64), "d={d}: tau* = {}", display(&ts));
        ensure!(c == 2 * d, "d={d}: chi_e = {c}");
    }
    within(start, 60)?;
    Ok("d = 2..5: nu = 1, tau = tau* = d, chi_e = 2d".into())
}

fn rounding() -> Result<String, String> {
    for (i, inst) in corpus(404, 100).iter().enumerate() {
        let (h, w) = (&inst.family, inst.weights_or_unit());
        let s = tau_star_w(h, &w).map_err(|e| e.to_string())?;
        let c = round_cover(h, &w, &s.cover).map_err(|e| e.to_string())?;
        let sets: Vec<BTreeSet<_>> = h.edges.iter().map(point_set).collect();
        for (k, (set, &we)) in sets.iter().zip(&w.0).enumerate() {
            let got: u64 = c.values.iter().filter(|(p, _)| set.contains(p)).map(|(_, n)| *n).sum();
            ensure!(got >= we, "instance {i}: edge {k} covered {got} < {we}");
        }
        let size = from_int(c.values.values().sum::<u64>());
        ensure!(size <= from_int(h.d as u64) * &s.value, "instance {i}: |Q| > d tau*_w");
    }
    Ok("rounded covers feasible with size <= d tau*_w".into())
}

fn fractional_bounds() -> Result<String, String> {
    for (i, inst) in corpus(404, 100).iter().enumerate() {
        let (h, w) = (&inst.family, inst.weights_or_unit());
        if h.is_empty() {
            continue;
        }
        let d = from_int(h.d as u64);
        let nw = from_int(nu_w(h, &w, &budget()).map_err(|e| e.to_string())?.0);
        let ts = tau_star_w(h, &w).map_err(|e| e.to_string())?.value;
        let tw = from_int(tau_w(h, &w, &budget()).map_err(|e| e.to_string())?.0);
        ensure!(ts <= from_int(2) * &d * &nw, "instance {i}: tau*_w > 2d nu_w");
        ensure!(tw <= from_int(2) * &d * &d * &nw, "instance {i}: tau_w > 2d^2 nu_w");
        let hp = find_heavy_point(h, &w, &budget()).map_err(|e| e.to_string())?;
        let need = ceil_u64(&ratio(w.total() as i64, (2 * h.d as u64 * naive_nu_w(h, &w.0)) as i64)).unwrap();
        let through = h.edges.iter().filter(|e| point_set(e).contains(&hp.point)).count() as u64;
        ensure!(through == hp.pierced_edge_count, "instance {i}: reported count {} != {through}", hp.pierced_edge_count);
        ensure!(through >= need, "instance {i}: heavy point in {through} edges < {need}");
    }
    Ok("tau*_w <= 2d nu_w, tau_w <= 2d^2 nu_w, heavy point meets ceil(W/2dK)".into())
}

fn turan() -> Result<String, String> {
    let mut r = rng(606);
    for i in 0..300 {
        let n = r.gen_range(1..=12);
        let p = r.gen_range(0.0..1.0);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if r.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges);
        let w: Vec<u64> = (0..n).map(|_| r.gen_range(1..=9)).collect();
        let a = weighted_turan_bound(&g, &w, &budget()).map_err(|e| e.to_string())?;
        let b = directed_turan_bound(&Digraph::doubled(&g), &w, &budget()).map_err(|e| e.to_string())?;
        let lhs: u64 = edges.iter().map(|&(u, v)| w[u] + w[v]).sum();
        ensure!(a.lhs == lhs && b.lhs == lhs, "graph {i}: lhs mismatch");
        ensure!(a.holds && b.holds, "graph {i}: Turán inequality fails");
    }
    let single = weighted_turan_bound(&Graph::empty(1), &[7], &budget()).map_err(|e| e.to_string())?;
    ensure!(from_int(single.lhs) == single.rhs, "single vertex not tight");
    for n in 1..=12 {
        let k = weighted_turan_bound(&Graph::complete(n), &vec![1; n], &budget()).map_err(|e| e.to_string())?;
        ensure!(from_int(k.lhs) == k.rhs, "K_{n} not tight");
        let dk = directed_turan_bound(&Digraph::doubled(&Graph::complete(n)), &vec![1; n], &budget())
            .map_err(|e| e.to_string())?;
        ensure!(from_int(dk.lhs) == dk.rhs, "doubled K_{n} not tight");
    }
    Ok("300 graphs and doubled digraphs; equality on K_1 and unit K_n".into())
}

fn cover_ratios() -> Result<String, String> {
    let mut separated = 0;
    for (i, inst) in corpus(707, 120).iter().enumerate() {
        let h = &inst.family;
        let d = h.d as i64;
        let n = from_int(nu(h, &budget()).map_err(|e| e.to_string())?.0);
        let t = from_int(tau(h, &budget()).map_err(|e| e.to_string())?.0);
        let ts = tau_star(h).map_err(|e| e.to_string())?.value;
        ensure!(t <= from_int(d * d - d + 1) * &n, "instance {i}: tau > (d^2-d+1) nu");
        if h.separated && d >= 2 {
            separated += 1;
            ensure!(t <= from_int(d * d - d) * &n, "instance {i}: tau > (d^2-d) nu");
        }
        ensure!(ts <= (from_int(4 * d - 6) + ratio(3, d)) * &n, "instance {i}: tau* > (4d-6+3/d) nu");
    }
    Ok(format!("corpus holds; {separated} separated instances with d >= 2"))
}

fn greedy_coloring() -> Result<String, String> {
    let mut checked = 0;
    for (i, inst) in corpus(808, 120).iter().enumerate() {
        let h = &inst.family;
        let g = greedy_edge_coloring(h);
        let sets: Vec<BTreeSet<_>> = h.edges.iter().map(point_set).collect();
        for a in 0..h.len() {
            for b in a + 1..h.len() {
                ensure!(
                    sets[a].is_disjoint(&sets[b]) || g.assignment[a] != g.assignment[b],
                    "instance {i}: edges {a}, {b} share color"
                );
            }
        }
        let delta = naive_max_degree(h) as u64;
        ensure!(g.max_degree as u64 == delta, "instance {i}: wrong Delta");
        if delta >= 2 {
            checked += 1;
            let bound = 2 * h.d as u64 * (delta - 1);
            ensure!(g.colors_used as u64 <= bound, "instance {i}: {} colors > {bound}", g.colors_used);
        }
        let exact = chi_e(h, &budget()).map_err(|e| e.to_string())?.colors;
        ensure!(exact <= g.colors_used, "instance {i}: chi_e above greedy");
    }
    Ok(format!("proper, within 2d(Delta-1) on {checked} instances with Delta >= 2"))
}

fn total_size() -> Result<String, String> {
    let mut balanced = 0;
    for (i, inst) in corpus(909, 120).iter().enumerate() {
        let h = &inst.family;
        let s = total_size_matching(h, &budget()).map_err(|e| e.to_string())?;
        if !s.balanced {
            continue;
        }
        balanced += 1;
        let k = ground(h).len() as i64;
        ensure!(s.ground_size as i64 == k, "instance {i}: ground size {} != {k}", s.ground_size);
        let sets: Vec<BTreeSet<_>> = h.edges.iter().map(point_set).collect();
        let size: usize = s.matching.edge_indices.iter().map(|&e| sets[e].len()).sum();
        ensure!(size as u64 == s.value, "instance {i}: matching size mismatch");
        ensure!(from_int(s.value) >= ratio(k, 2 * h.d as i64), "instance {i}: nu_l < k/2d");
    }
    ensure!(balanced > 0, "no balanced instance in the corpus");
    Ok(format!("{balanced} balanced instances, nu_l >= k/(2d)"))
}

fn threshold() -> Result<String, String> {
    let h = gen_length_threshold(2, 2, 8).map_err(|e| e.to_string())?;
    let ns = tau_star(&h).map_err(|e| e.to_string())?.value;
    let t = from_int(tau(&h, &budget()).map_err(|e| e.to_string())?.0);
    ensure!(ns <= from_int(4), "nu* = {} > nd = 4", display(&ns));
    let r = &t / &ns;
    ensure!(r >= from_int(1), "tau / nu* = {} < d - 1", display(&r));
    Ok(format!("{} edges, nu* = {}, tau = {}, tau/nu* = {}", h.len(), display(&ns), display(&t), display(&r)))
}

fn oracle_equivalence() -> Result<String, String> {
    let mut r = rng(1111);
    let cases = 150;
    for i in 0..cases {
        let (h, w) = small_family(&mut r, 8, 10);
        let unit = WeightSystem::unit(h.len());
        for (name, ws) in [("unit", &unit), ("weighted", &w)] {
            let a = nu_w(&h, ws, &budget()).map_err(|e| e.to_string())?.0;
            ensure!(a == naive_nu_w(&h, &ws.0), "case {i} {name}: nu_w");
            let b = tau_w(&h, ws, &budget()).map_err(|e| e.to_string())?.0;
            ensure!(b == naive_tau_w(&h, &ws.0), "case {i} {name}: tau_w");
        }
        let c = chi_e(&h, &budget()).map_err(|e| e.to_string())?.colors;
        ensure!(c == naive_chi_e(&h), "case {i}: chi_e");
    }
    Ok(format!("{cases} cases match full enumeration"))
}

fn conjecture_search() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut report = Vec::new();
    for (k, target) in ["tau_star/nu", "tau_star_w/nu_w", "tau_w/nu_w", "chi_e/(d*Delta)"].iter().enumerate() {
        let cfg = dir.path().join(format!("c{k}.json"));
        let store = dir.path().join(format!("s{k}"));
        let body = format!(
            r#"{{"target": "{target}", "d": {{"min": 1, "max": 3}}, "edges": {{"min": 1, "max": 8}},
                "line_length": {{"min": 3, "max": 7}}, "max_component_len": 3, "weight_max": 5,
                "iterations": 1000, "top_k": 8, "seed": {}, "include_walecki": true}}"#,
            1200 + k
        );
        std::fs::write(&cfg, body).map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_dinterval"))
            .args(["search", "--json", "--config"])
            .arg(&cfg)
            .arg("--store")
            .arg(&store)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(out.status.code() == Some(0), "{target}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
        let s: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        ensure!(s["evaluated"].as_u64() >= Some(1000), "{target}: evaluated {}", s["evaluated"]);
        ensure!(s["theorem_violations"].as_array().is_some_and(|v| v.is_empty()), "{target}: theorem violation");
        ensure!(s["errors"] == 0, "{target}: solver errors");
        let stored = load_store(&store).map_err(|e| e.to_string())?;
        ensure!(!stored.is_empty(), "{target}: nothing persisted");
        for (path, w) in &stored {
            let r = replay_witness(w, &budget());
            ensure!(r.matches(), "{target}: {} does not replay: {:?}", path.display(), r.mismatches);
        }
        report.push(format!("{target} max {}", s["max_ratio"].as_str().unwrap_or("-")));
    }
    Ok(report.join(", "))
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 12] = [
        ("Gallai equality on intervals", gallai),
        ("LP duality and sandwich", lp_duality),
        ("Walecki family invariants", walecki),
        ("Cover rounding tau_w <= d tau*_w", rounding),
        ("Fractional bounds and heavy point", fractional_bounds),
        ("Weighted Turan inequalities", turan),
        ("Cover/matching ratio bounds", cover_ratios),
        ("Greedy edge coloring bound", greedy_coloring),
        ("Total-size matching on balanced families", total_size),
        ("Length-threshold family", threshold),
        ("Oracle equivalence", oracle_equivalence),
        ("Conjecture monitoring search", conjecture_search),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| name.to_lowercase().contains(&f.to_lowercase()) || *f == n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {e} ({secs:.2}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
