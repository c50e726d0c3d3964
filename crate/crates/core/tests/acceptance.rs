//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails. Seeds, corpus sizes and tolerances are
//! fixed below.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pwtri::augmenter::{add_apex, biconnect, connect, split_by_component};
use pwtri::embed::embed;
use pwtri::generate::{
    cycle, is_three_connected, path, random_block_tree, random_outerplanar, random_planar_2conn, random_planar_3conn,
    random_planar_connected, star,
};
use pwtri::io::emit_decomposition;
use pwtri::multi_triangulator::multi_triangulate;
use pwtri::oracle::{exact_pathwidth, is_maximal_outerplanar, structural_cut_pairs};
use pwtri::pipeline::{self, DecompositionSource, Mode, PipelineOptions, PipelineResult};
use pwtri::planar::{components, cut_components, is_biconnected};
use pwtri::simplifier::{simplify, SimplifyOptions};
use pwtri::{fixtures, EmbeddedMultigraph, PathDecomposition, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_3CONN: usize = 200;
const CORPUS_2CONN: usize = 500;
const CORPUS_GENERAL: usize = 500;
const CORPUS_OUTERPLANAR: usize = 500;
const CRITERION1_TIME_LIMIT: Duration = Duration::from_secs(300);
const EXHAUSTIVE_MAX_N: usize = 8;
/// Unlabeled planar graphs on 1..=8 vertices.
const PLANAR_GRAPH_COUNTS: [usize; 8] = [1, 2, 4, 11, 33, 142, 822, 6966];
/// Polyhedral (3-connected planar) graphs on 4..=8 vertices: 1 + 2 + 7 + 34 + 257.
const POLYHEDRA_UP_TO_8: usize = 301;
const CONCAT_TRIALS_PER_L: usize = 40;

struct Suite {
    failed: usize,
}

impl Suite {
    fn line(&mut self, id: &str, name: &str, pass: bool, detail: String) {
        if !pass {
            self.failed += 1;
        }
        println!("{} criterion {id} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pw(g: &EmbeddedMultigraph) -> PathDecomposition {
    exact_pathwidth(g).expect("corpus graphs are below the solver cap").witness
}

fn run(g: &EmbeddedMultigraph, mode: Mode) -> PipelineResult {
    let p = pw(g);
    let opts = PipelineOptions { mode, debug_tokens: true, source: DecompositionSource::Oracle, oracle_widths: false };
    pipeline::run(g, &p, opts).unwrap_or_else(|e| panic!("pipeline failed in {mode} mode: {e}"))
}

fn n_in(i: usize, lo: usize, hi: usize) -> usize {
    lo + i % (hi - lo + 1)
}

fn corpus_3conn() -> Vec<EmbeddedMultigraph> {
    let mut r = rng(101);
    let mut out: Vec<_> = (0..CORPUS_3CONN).map(|i| random_planar_3conn(n_in(i, 4, 14), &mut r)).collect();
    out.push(fixtures::octahedron());
    out.push(fixtures::icosahedron());
    out
}

fn corpus_2conn() -> Vec<EmbeddedMultigraph> {
    let mut r = rng(202);
    (0..CORPUS_2CONN).map(|i| random_planar_2conn(n_in(i, 4, 14), &mut r)).collect()
}

fn corpus_general() -> Vec<EmbeddedMultigraph> {
    let mut r = rng(303);
    (0..CORPUS_GENERAL)
        .map(|i| {
            let n = n_in(i, 3, 14);
            if i % 2 == 0 {
                random_block_tree(n, &mut r)
            } else {
                random_planar_connected(n, &mut r)
            }
        })
        .collect()
}

fn corpus_outerplanar() -> Vec<EmbeddedMultigraph> {
    let mut r = rng(404);
    (0..CORPUS_OUTERPLANAR).map(|i| random_outerplanar(n_in(i, 3, 16), &mut r)).collect()
}

/// Structural checks after multi-triangulation and after simplification,
/// starting from a 2-connected embedded graph and a decomposition of it.
#[derive(Default)]
struct Structure {
    runs: usize,
    frozen_bags: usize,
    chords_in_bags: usize,
    multi_eq_structural: usize,
    multiplicity_eq_components: usize,
    alternation: usize,
    simple_after: usize,
    no_structural_after: usize,
    first_failure: Option<String>,
}

impl Structure {
    fn check(&mut self, tag: &str, mut g: EmbeddedMultigraph, mut p: PathDecomposition) {
        self.runs += 1;
        let before = emit_decomposition(&p, g.vertex_bound());
        let chords = multi_triangulate(&mut g, &p).expect("multi_triangulate");
        let fail = |what: &str, s: &mut Option<String>| {
            if s.is_none() {
                *s = Some(format!("{tag}: {what}"));
            }
        };
        if emit_decomposition(&p, g.vertex_bound()) == before {
            self.frozen_bags += 1;
        } else {
            fail("bags changed", &mut self.first_failure);
        }
        if chords.iter().all(|c| p.shares_bag(c.a, c.b)) {
            self.chords_in_bags += 1;
        } else {
            fail("chord without a common bag", &mut self.first_failure);
        }
        let multi: BTreeMap<(VertexId, VertexId), usize> = g.multi_edges().into_iter().collect();
        let structural: BTreeSet<(VertexId, VertexId)> = structural_cut_pairs(&g).into_iter().collect();
        if multi.keys().copied().collect::<BTreeSet<_>>() == structural {
            self.multi_eq_structural += 1;
        } else {
            fail("multi-edges differ from cutting pairs", &mut self.first_failure);
        }
        let mut counts = true;
        let mut alternates = true;
        for (&(u, v), &m) in &multi {
            let cc = cut_components(&g, &[u, v]);
            counts &= cc.len() == m;
            alternates &= cc.alternates;
        }
        if counts {
            self.multiplicity_eq_components += 1;
        } else {
            fail("multiplicity differs from component count", &mut self.first_failure);
        }
        if alternates {
            self.alternation += 1;
        } else {
            fail("rotation does not alternate", &mut self.first_failure);
        }
        simplify(&mut g, &mut p, SimplifyOptions::default()).expect("simplify");
        if g.multi_edges().is_empty() {
            self.simple_after += 1;
        } else {
            fail("multi-edges after simplify", &mut self.first_failure);
        }
        if structural_cut_pairs(&g).is_empty() {
            self.no_structural_after += 1;
        } else {
            fail("cutting pairs after simplify", &mut self.first_failure);
        }
    }

    fn ok(&self) -> bool {
        let r = self.runs;
        [
            self.frozen_bags,
            self.chords_in_bags,
            self.multi_eq_structural,
            self.multiplicity_eq_components,
            self.alternation,
            self.simple_after,
            self.no_structural_after,
        ]
        .iter()
        .all(|&c| c == r)
    }
}

/// The 2-connected graph multi-triangulation runs on inside each pipeline.
fn prepared(g: &EmbeddedMultigraph, mode: Mode) -> (EmbeddedMultigraph, PathDecomposition) {
    let mut h = g.clone();
    let mut p = pw(g);
    match mode {
        Mode::General => {
            biconnect(&mut h, &mut p).expect("biconnect");
        }
        Mode::Outerplanar => {
            add_apex(&mut h, &mut p).expect("apex");
        }
        _ => {}
    }
    (h, p)
}

#[derive(Default)]
struct Ledger {
    runs: usize,
    held: usize,
    init_ok: usize,
    starved: usize,
    growth_ok: usize,
    path_overlaps: usize,
    example: Option<String>,
}

impl Ledger {
    fn record(&mut self, res: &PipelineResult) {
        let Some(s) = &res.report.simplify else { return };
        self.runs += 1;
        if s.growth_within_budget {
            self.growth_ok += 1;
        }
        let Some(l) = &res.report.ledger else {
            self.held += 1;
            self.init_ok += 1;
            return;
        };
        if !l.warnings.is_empty() {
            self.path_overlaps += 1;
        }
        if l.invariant_held {
            self.held += 1;
        } else if self.example.is_none() {
            self.example = l.violations.first().or(l.starved.first()).cloned();
        }
        if !l.violations.iter().any(|v| v.starts_with("initial assignment")) {
            self.init_ok += 1;
        }
        if !l.starved.is_empty() {
            self.starved += 1;
        }
    }
}

/// Bitmask adjacency of a graph on at most eight vertices.
type Adj = Vec<u8>;

fn refine(adj: &Adj) -> Vec<usize> {
    let n = adj.len();
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        colour = sig.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

fn permutations(items: &[usize], out: &mut Vec<Vec<usize>>) {
    if items.len() <= 1 {
        out.push(items.to_vec());
        return;
    }
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        let mut tails = Vec::new();
        permutations(&rest, &mut tails);
        out.extend(tails.into_iter().map(|mut t| {
            t.insert(0, x);
            t
        }));
    }
}

/// Least adjacency code over orderings that respect the refined colouring.
fn canonical(adj: &Adj) -> u64 {
    let n = adj.len();
    let colour = refine(adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for c in 0..n {
        let cell: Vec<usize> = (0..n).filter(|&v| colour[v] == c).collect();
        if !cell.is_empty() {
            cells.push(cell);
        }
    }
    let perms: Vec<Vec<Vec<usize>>> = cells
        .iter()
        .map(|c| {
            let mut out = Vec::new();
            permutations(c, &mut out);
            out
        })
        .collect();
    let mut best = u64::MAX;
    let mut idx = vec![0usize; perms.len()];
    loop {
        let order: Vec<usize> = idx.iter().enumerate().flat_map(|(k, &i)| perms[k][i].iter().copied()).collect();
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                code = code << 1 | u64::from(adj[order[i]] >> order[j] & 1);
            }
        }
        best = best.min(code);
        let mut k = 0;
        loop {
            if k == idx.len() {
                return best;
            }
            idx[k] += 1;
            if idx[k] < perms[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn edge_list(adj: &Adj) -> Vec<(VertexId, VertexId)> {
    let n = adj.len();
    (0..n).flat_map(|a| (a + 1..n).filter(move |&b| adj[a] >> b & 1 == 1).map(move |b| (VertexId(a), VertexId(b)))).collect()
}

/// Every unlabeled planar graph on `1..=max_n` vertices, one embedding each,
/// grown one vertex at a time and deduplicated by canonical code.
fn all_planar_graphs(max_n: usize) -> Vec<Vec<EmbeddedMultigraph>> {
    let mut levels: Vec<Vec<(Adj, EmbeddedMultigraph)>> = vec![vec![(vec![0], EmbeddedMultigraph::new(1))]];
    for n in 2..=max_n {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut next = Vec::new();
        for (adj, _) in levels.last().unwrap() {
            for s in 0u16..1 << (n - 1) {
                let mut a = adj.clone();
                a.push(s as u8);
                for (v, row) in a.iter_mut().enumerate().take(n - 1) {
                    if s >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                let edges = edge_list(&a);
                if n >= 3 && edges.len() > 3 * n - 6 {
                    continue;
                }
                if !seen.insert(canonical(&a)) {
                    continue;
                }
                if let Ok(g) = embed(n, &edges) {
                    next.push((a, g));
                }
            }
        }
        levels.push(next);
    }
    levels.into_iter().map(|l| l.into_iter().map(|(_, g)| g).collect()).collect()
}

fn disjoint_union(parts: &[EmbeddedMultigraph]) -> EmbeddedMultigraph {
    let mut edges = Vec::new();
    let mut rotation = Vec::new();
    let (mut vo, mut doff) = (0, 0);
    for g in parts {
        let mut g = g.clone();
        g.compact();
        edges.extend(g.edges().into_iter().map(|(a, b)| (VertexId(a.0 + vo), VertexId(b.0 + vo))));
        for v in g.vertices() {
            rotation.push(g.rotation(v).into_iter().map(|d| pwtri::DartId(d.0 + doff)).collect::<Vec<_>>());
        }
        vo += g.vertex_bound();
        doff += g.dart_bound();
    }
    EmbeddedMultigraph::from_parts(vo, &edges, &rotation).expect("union of embeddings")
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: 0 };
    let mut structure = Structure::default();
    let mut ledger = Ledger::default();
    let started = Instant::now();

    // 1. 3-connected inputs keep their optimal width.
    let t = Instant::now();
    let corpus = corpus_3conn();
    let mut good = 0;
    let mut first_bad = None;
    for (i, g) in corpus.iter().enumerate() {
        let res = run(g, Mode::ThreeConn);
        let w_in = exact_pathwidth(g).unwrap().width;
        let w_out = exact_pathwidth(&res.graph).unwrap().width;
        let ok = w_in == w_out && res.report.simple && res.report.triangulated == Some(true);
        if ok {
            good += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("instance {i}: {w_in} -> {w_out}"));
        }
        structure.check(&format!("3conn #{i}"), g.clone(), pw(g));
    }
    let elapsed = t.elapsed();

    // Every 3-connected planar graph on at most eight vertices as well.
    let t = Instant::now();
    let levels = all_planar_graphs(EXHAUSTIVE_MAX_N);
    let enumeration_time = t.elapsed();
    let small: Vec<&EmbeddedMultigraph> =
        levels.iter().flatten().filter(|g| g.vertex_count() >= 4 && is_three_connected(g)).collect();
    let mut small_good = 0;
    for (i, g) in small.iter().enumerate() {
        let res = run(g, Mode::ThreeConn);
        let w_in = exact_pathwidth(g).unwrap().width;
        let w_out = exact_pathwidth(&res.graph).unwrap().width;
        if w_in == w_out && res.report.simple && res.report.triangulated == Some(true) {
            small_good += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("exhaustive instance {i}: {w_in} -> {w_out}"));
        }
    }
    suite.line(
        "1",
        "3-connected width preserved",
        good == corpus.len()
            && small.len() == POLYHEDRA_UP_TO_8
            && small_good == small.len()
            && elapsed < CRITERION1_TIME_LIMIT,
        format!(
            "{good}/{} random exact in {:.1}s, {small_good}/{} exhaustive (n <= {EXHAUSTIVE_MAX_N}) exact{}",
            corpus.len(),
            elapsed.as_secs_f64(),
            small.len(),
            tail(&first_bad)
        ),
    );

    // 2. 2-connected inputs stay within 8w - 5.
    let corpus = corpus_2conn();
    let mut good = 0;
    let mut worst = 0usize;
    let mut first_bad = None;
    for (i, g) in corpus.iter().enumerate() {
        let w = exact_pathwidth(g).unwrap().width;
        let res = run(g, Mode::TwoConn);
        let out = res.decomposition.width();
        let ok = res.report.simple && res.report.triangulated == Some(true) && out + 5 <= 8 * w && res.decomposition.validate(&res.graph);
        worst = worst.max(out);
        if ok {
            good += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("instance {i}: w {w}, out {out}"));
        }
        ledger.record(&res);
        structure.check(&format!("2conn #{i}"), g.clone(), pw(g));
    }
    suite.line(
        "2",
        "2-connected bound 8w-5",
        good == corpus.len(),
        format!("{good}/{} within bound, widest output {worst}{}", corpus.len(), tail(&first_bad)),
    );

    // 3. Connected inputs stay within 16w + 3 and keep vertices and edges.
    let corpus = corpus_general();
    let mut good = 0;
    let mut with_cuts = 0;
    let mut first_bad = None;
    for (i, g) in corpus.iter().enumerate() {
        let w = exact_pathwidth(g).unwrap().width;
        let res = run(g, Mode::General);
        let r = &res.report;
        let out = res.decomposition.width();
        let ok = r.simple
            && r.triangulated == Some(true)
            && out <= 16 * w + 3
            && r.vertex_set_preserved
            && r.input_edges_preserved
            && res.decomposition.validate(&res.graph);
        if ok {
            good += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("instance {i}: w {w}, out {out}"));
        }
        if !is_biconnected(g) {
            with_cuts += 1;
        }
        ledger.record(&res);
        let (h, p) = prepared(g, Mode::General);
        structure.check(&format!("general #{i}"), h, p);
    }
    suite.line(
        "3",
        "connected bound 16w+3",
        good == corpus.len(),
        format!("{good}/{} within bound, {with_cuts} with cut vertices{}", corpus.len(), tail(&first_bad)),
    );

    // 4. Outer-planar inputs become maximal outer-planar within 4w + 4.
    let corpus = corpus_outerplanar();
    let mut good = 0;
    let mut first_bad = None;
    for (i, g) in corpus.iter().enumerate() {
        let w = exact_pathwidth(g).unwrap().width;
        let res = run(g, Mode::Outerplanar);
        let out = res.decomposition.width();
        let ok = is_maximal_outerplanar(&res.graph)
            && out <= 4 * w + 4
            && res.report.input_edges_preserved
            && res.decomposition.validate(&res.graph);
        if ok {
            good += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("instance {i}: w {w}, out {out}"));
        }
        ledger.record(&res);
        let (h, p) = prepared(g, Mode::Outerplanar);
        structure.check(&format!("outerplanar #{i}"), h, p);
    }
    let c4 = run(&cycle(4), Mode::Outerplanar);
    let c4_width = c4.decomposition.width();
    let star5 = run(&star(4), Mode::Outerplanar);
    let fan = &star5.graph;
    let fan_width = exact_pathwidth(fan).unwrap().width;
    let is_fan = is_maximal_outerplanar(fan) && fan.degree(VertexId(0)) == 4 && fan.edge_count() == 7;
    let specifics = c4_width <= 12 && is_maximal_outerplanar(&c4.graph) && is_fan && fan_width == 2 && star5.decomposition.width() <= 8;
    suite.line(
        "4",
        "outer-planar bound 4w+4",
        good == corpus.len() && specifics,
        format!(
            "{good}/{} maximal within bound; C4 output width {c4_width} (limit 12); STAR5 fan {is_fan}, oracle width {fan_width}, decomposition width {}{}",
            corpus.len(),
            star5.decomposition.width(),
            tail(&first_bad)
        ),
    );

    // 5. Known values.
    let pw_c4 = exact_pathwidth(&cycle(4)).unwrap().width;
    let pw_k4 = exact_pathwidth(&fixtures::complete4()).unwrap().width;
    let out = run(&cycle(4), Mode::TwoConn).graph;
    let is_k4 = out.vertex_count() == 4 && out.edge_count() == 6 && out.is_simple();
    suite.line(
        "5",
        "known values",
        pw_c4 == 2 && pw_k4 == 3 && is_k4,
        format!("pw(C4) = {pw_c4}, pw(K4) = {pw_k4}, C4 in 2conn mode gives K4: {is_k4}"),
    );

    // 7 (exhaustive part). Every 2-connected planar graph on at most eight vertices.
    let t = Instant::now();
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let enumeration_ok = counts == PLANAR_GRAPH_COUNTS[..EXHAUSTIVE_MAX_N];
    let mut exhaustive = Structure::default();
    for level in &levels {
        for g in level.iter().filter(|g| g.vertex_count() >= 3 && is_biconnected(g)) {
            exhaustive.check(&format!("exhaustive n={}", g.vertex_count()), g.clone(), pw(g));
        }
    }
    let exhaustive_time = t.elapsed() + enumeration_time;

    // 6. Bags are untouched by multi-triangulation.
    let frozen = structure.frozen_bags + exhaustive.frozen_bags;
    let frozen_runs = structure.runs + exhaustive.runs;
    let chords_ok = structure.chords_in_bags + exhaustive.chords_in_bags == frozen_runs;
    suite.line(
        "6",
        "multi-triangulation leaves bags unchanged",
        frozen == frozen_runs && chords_ok,
        format!("{frozen}/{frozen_runs} runs byte-identical, every chord inside a bag: {chords_ok}"),
    );

    // 7. Structural invariants.
    let first = structure.first_failure.clone().or(exhaustive.first_failure.clone());
    suite.line(
        "7",
        "cutting-pair structure",
        structure.ok() && exhaustive.ok() && enumeration_ok,
        format!(
            "{} corpus runs, {} exhaustive runs over {} planar graphs (counts {counts:?}), {:.1}s{}",
            structure.runs,
            exhaustive.runs,
            counts.iter().sum::<usize>(),
            exhaustive_time.as_secs_f64(),
            tail(&first)
        ),
    );

    // 8. Token ledger on corpora 2-4.
    suite.line(
        "8",
        "token ledger",
        ledger.held == ledger.runs
            && ledger.init_ok == ledger.runs
            && ledger.growth_ok == ledger.runs,
        format!(
            "invariant held throughout {}/{} runs, after initialization {}/{}, runs with an unpaid widening {}, growth within |X|+2c {}/{}, runs with overlapping token paths {}{}",
            ledger.held,
            ledger.runs,
            ledger.init_ok,
            ledger.runs,
            ledger.starved,
            ledger.growth_ok,
            ledger.runs,
            ledger.path_overlaps,
            tail(&ledger.example)
        ),
    );

    // 9. Joining components does not raise the width beyond max(w, 1).
    let mut r = rng(909);
    let mut good = 0;
    let mut total = 0;
    let mut first_bad = None;
    for l in 2..=6 {
        for _ in 0..CONCAT_TRIALS_PER_L {
            total += 1;
            let parts: Vec<EmbeddedMultigraph> = (0..l)
                .map(|_| match r.gen_range(0..4) {
                    0 => EmbeddedMultigraph::new(1),
                    1 => path(r.gen_range(2..=3)),
                    _ => random_planar_connected(r.gen_range(3..=4), &mut r),
                })
                .collect();
            let mut g = disjoint_union(&parts);
            let p = pw(&g);
            let w_max = parts.iter().map(|h| exact_pathwidth(h).unwrap().width).max().unwrap();
            let split = split_by_component(&g, &p);
            let (joined, _) = connect(&mut g, &split).expect("connect");
            let want = w_max.max(1);
            let ok = joined.width() == want
                && joined.validate(&g)
                && components(&g).len() == 1
                && g.is_planar_embedding()
                && exact_pathwidth(&g).unwrap().width == want;
            if ok {
                good += 1;
            } else if first_bad.is_none() {
                first_bad = Some(format!("L = {l}, w_max {w_max}, joined width {}", joined.width()));
            }
        }
    }
    suite.line(
        "9",
        "joining components",
        good == total,
        format!("{good}/{total} joins of 2 to 6 components at width max(w, 1){}", tail(&first_bad)),
    );

    println!(
        "acceptance: {} of 9 criteria failed, {:.1}s",
        suite.failed,
        started.elapsed().as_secs_f64()
    );
    if suite.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn tail(s: &Option<String>) -> String {
    s.as_ref().map(|s| format!("; first failure: {s}")).unwrap_or_default()
}
