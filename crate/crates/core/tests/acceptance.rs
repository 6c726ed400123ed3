//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Pass criterion numbers as arguments to run a subset.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crossing_critical::canon::{canonical_code, Code};
use crossing_critical::crossing::{
    crossing_number, crossing_number_bruteforce, drawing_with_cost, is_crossing_critical, planarize, Crossing, CrossingResult, Drawing,
    Verdict,
};
use crossing_critical::enumerate::{census_bruteforce, census_by_edge_augmentation, enumerate_critical, Catalog, Template};
use crossing_critical::graph::families;
use crossing_critical::planarity::planarity_embed;
use crossing_critical::qtype::{
    build_qtype_semigroup, compute_qtype, interval_graph, label_c, label_l, label_r, linking_paths,
    uniformize_decomposition, LabelledPlaneMultigraph,
};
use crossing_critical::semigroup::{build_factorization_tree, FactorizationTree, FiniteSemigroup};
use crossing_critical::structures::{locate_band, tiles_of, verify_nest_depth_bound, Band};
use crossing_critical::surgery::{
    expand, make_flat, necklace_of_thread, reduce_expansion, reduce_necklace, reduce_threads, splice, ExpansionSpec,
    Replacement,
};
use crossing_critical::{EmbeddedMultigraph, Multigraph};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let only: BTreeSet<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [(usize, &str, fn() -> Outcome); 8] = [
        (1, "crossing numbers of the classics", crossing_numbers),
        (2, "criticality of the classics", classic_criticality),
        (3, "one-crossing census by three generators", one_crossing_census),
        (4, "factorization forests", factorization_forests),
        (5, "nest depth bound over the census", nest_depth_bound),
        (6, "reduction and expansion round trips", round_trips),
        (7, "make_flat and splice never add crossings", surgery_monotone),
        (8, "q-type suite", qtype_suite),
    ];
    let mut failed = 0;
    for (k, name, run) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {k} PASS  {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {k} FAIL  {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn exact_witness(g: &Multigraph) -> (usize, Drawing) {
    match crossing_number(g, None) {
        CrossingResult::Exact { cr, witness } => (cr, *witness),
        CrossingResult::UnknownAboveBudget { .. } => unreachable!("no budget given"),
    }
}

fn crossing_numbers() -> Outcome {
    let t = Instant::now();
    let cases = [
        ("K4", families::complete(4), 0),
        ("K5", families::complete(5), 1),
        ("K3,3", families::complete_bipartite(3, 3), 1),
        ("Petersen", families::petersen(), 2),
        ("K6", families::complete(6), 3),
    ];
    for (name, g, want) in &cases {
        let (cr, witness) = exact_witness(g);
        ensure!(cr == *want, "cr({name}) = {cr}, expected {want}");
        ensure!(witness.crossing_count() == cr && witness.validate().is_ok(), "bad witness for {name}");
        let oracle = crossing_number_bruteforce(g, *want);
        ensure!(oracle == Some(*want), "oracle gives {oracle:?} for {name}");
    }
    ensure!(t.elapsed() < Duration::from_secs(300), "took {:?}", t.elapsed());
    Ok(format!("{} graphs agree with the oracle", cases.len()))
}

fn classic_criticality() -> Outcome {
    let cases = [
        ("K5", families::complete(5), 1),
        ("K3,3", families::complete_bipartite(3, 3), 1),
        ("K6", families::complete(6), 3),
    ];
    let mut deletions = 0;
    for (name, g, c) in &cases {
        let r = is_crossing_critical(g, *c).map_err(|e| e.to_string())?;
        ensure!(r.verdict == Verdict::Critical, "{name} is not {c}-critical: {:?}", r.verdict);
        for e in 0..g.m() {
            let r = is_crossing_critical(&g.without_edge(e), *c).map_err(|e| e.to_string())?;
            ensure!(matches!(r.verdict, Verdict::NotCritical(_)), "{name} - e{e} verdict {:?}", r.verdict);
            deletions += 1;
        }
    }
    Ok(format!("3 critical, {deletions} deletions non-critical"))
}

fn kuratowski() -> Vec<Multigraph> {
    vec![families::complete(5), families::complete_bipartite(3, 3)]
}

fn one_crossing_census() -> Outcome {
    let t = Instant::now();
    let mut sizes = Vec::new();
    for n in 5..=7 {
        let grown = enumerate_critical(1, n, &kuratowski(), &[Template::Subdivision]).map_err(|e| e.to_string())?;
        let census = census_bruteforce(1, n).map_err(|e| e.to_string())?;
        let second = census_by_edge_augmentation(n).map_err(|e| e.to_string())?;
        ensure!(grown.codes() == census.codes(), "n <= {n}: enumeration and census differ");
        ensure!(second == census.codes(), "n <= {n}: edge augmentation disagrees");
        sizes.push(census.len());
    }
    ensure!(sizes[0] == 1 && sizes[1] == 3, "counts {sizes:?}");
    ensure!(t.elapsed() < Duration::from_secs(600), "took {:?}", t.elapsed());
    Ok(format!("counts for n <= 5, 6, 7: {sizes:?}"))
}

fn random_semigroup(rng: &mut ChaCha8Rng) -> FiniteSemigroup {
    loop {
        let k = rng.gen_range(2..=3);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2)).map(|_| (0..k).map(|_| rng.gen_range(0..k)).collect()).collect();
        if let Ok(s) = FiniteSemigroup::from_transformations(&gens, 6) {
            return s;
        }
    }
}

fn forest_errors(a: &FiniteSemigroup, t: &FactorizationTree, out: &mut Vec<usize>) -> Option<String> {
    match t {
        FactorizationTree::Leaf { letter } => {
            out.push(*letter);
            None
        }
        FactorizationTree::Node { value, children } => {
            let vals: Vec<usize> = children.iter().map(|c| c.value()).collect();
            let prod = vals.iter().skip(1).fold(vals[0], |x, &y| a.table()[x][y]);
            if prod != *value {
                return Some(format!("node {value} has product {prod}"));
            }
            if children.len() > 2 && !(a.table()[*value][*value] == *value && vals.iter().all(|v| v == value)) {
                return Some("wide node is not idempotent-uniform".into());
            }
            children.iter().find_map(|c| forest_errors(a, c, out))
        }
    }
}

fn factorization_forests() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let fixed = [
        FiniteSemigroup::cyclic_group(6),
        FiniteSemigroup::cyclic_group(5),
        FiniteSemigroup::boolean(),
        FiniteSemigroup::full_transformations_2(),
    ];
    let mut deepest = 0.0f64;
    for i in 0..10_000 {
        let a = if i % 2 == 0 { fixed[i / 2 % fixed.len()].clone() } else { random_semigroup(&mut rng) };
        ensure!(a.size() <= 6, "semigroup of size {}", a.size());
        let len = rng.gen_range(1..=200);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..a.size())).collect();
        let t = build_factorization_tree(&a, &word).map_err(|e| e.to_string())?;
        let mut leaves = Vec::new();
        if let Some(e) = forest_errors(&a, &t, &mut leaves) {
            return Err(format!("string {i}: {e}"));
        }
        ensure!(leaves == word, "string {i}: leaves differ from the input");
        ensure!(t.depth() <= 3 * a.size(), "string {i}: depth {} above {}", t.depth(), 3 * a.size());
        deepest = deepest.max(t.depth() as f64 / a.size() as f64);
    }
    Ok(format!("10000 strings, max depth/|A| = {deepest:.2}"))
}

/// Census for `c`; the `c = 3` list is read from the checked-in catalog
/// when present, since generating it takes a long time on one core.
fn census(c: usize) -> Result<Catalog, String> {
    if c == 3 {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/census-c3-n8.catalog");
        if let Ok(text) = std::fs::read_to_string(path) {
            return Catalog::parse(&text).map_err(|e| e.to_string());
        }
    }
    census_bruteforce(c, 8).map_err(|e| e.to_string())
}

fn nest_depth_bound() -> Outcome {
    let mut detail = Vec::new();
    for c in 1..=3usize {
        let cat = census(c)?;
        ensure!(cat.c == c && cat.max_n == 8, "catalog is for c={} n<={}", cat.c, cat.max_n);
        let (mut face, mut degenerate, mut graphs) = (0, 0, 0);
        for e in &cat.entries {
            if !e.graph.is_two_connected() {
                continue;
            }
            ensure!(canonical_code(&e.graph) == e.code, "catalog entry does not match its code");
            let cr = e.cr.exact().ok_or("census entry without an exact crossing number")?;
            ensure!(cr >= c, "census graph with cr {cr} < {c}");
            let d = drawing_with_cost(&e.graph, cr).ok_or("no drawing at the recorded crossing number")?;
            ensure!(d.crossing_count() == cr, "witness has {} crossings, not {cr}", d.crossing_count());
            let r = verify_nest_depth_bound(&d.planarization, c as u64);
            ensure!(r.within_bound, "c={c}: depths {} {} above {}", r.max_face_nest, r.max_degenerate_nest, r.bound);
            face = face.max(r.max_face_nest);
            degenerate = degenerate.max(r.max_degenerate_nest);
            graphs += 1;
        }
        detail.push(format!("c={c}: {graphs} graphs, max depths {face}/{degenerate}"));
    }
    Ok(detail.join("; "))
}

/// `CL_k` with its spoke band.
fn spoke_band(k: usize) -> (EmbeddedMultigraph, Band) {
    let host = planarity_embed(&families::circular_ladder(k)).unwrap();
    let b = locate_band(&host, (0..k).map(|i| vec![i, k + i]).collect(), false)
        .or_else(|| locate_band(&host, (0..k).rev().map(|i| vec![i, k + i]).collect(), false))
        .unwrap();
    (host, b)
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bases = kuratowski();
    bases.push(families::petersen());
    bases.push(families::complete(6));
    let mut thick = families::complete_bipartite(3, 3);
    for e in 0..4 {
        let (a, b) = thick.endpoints(e);
        thick.add_edge(a, b).unwrap();
    }
    bases.push(thick);
    let ladders: Vec<(EmbeddedMultigraph, Band)> = (8..=14).map(spoke_band).collect();
    let mut kinds = [0usize; 3];
    for case in 0..200 {
        let kind = case % 3;
        let (g, x) = if kind == 2 {
            let (host, b) = &ladders[rng.gen_range(0..ladders.len())];
            let from = rng.gen_range(0..b.len() - 3);
            let to = rng.gen_range(from + 1..=b.len() - 2);
            let spec = ExpansionSpec::DupBand { band: 0, from, to };
            (host.graph.clone(), expand(&host.graph, &spec, Some((host, std::slice::from_ref(b)))))
        } else {
            let g = bases[rng.gen_range(0..bases.len())].clone();
            let edge = rng.gen_range(0..g.m());
            let (a, b) = g.endpoints(edge);
            let spec = if kind == 0 {
                ExpansionSpec::Subdivide { edge, k: rng.gen_range(1..=5) }
            } else {
                ExpansionSpec::Paths { edge, p: g.multiplicity(a, b) }
            };
            let x = expand(&g, &spec, None);
            (g, x)
        };
        let x = x.map_err(|e| format!("case {case}: {e}"))?;
        let back = reduce_expansion(&x).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(canonical_code(&back) == canonical_code(&g), "case {case}: reduce(expand(g)) != g");
        kinds[kind] += 1;
    }

    let mut seen: BTreeSet<Code> = BTreeSet::new();
    for c in 1..=2 {
        let census = census_bruteforce(c, 7).map_err(|e| e.to_string())?;
        for entry in &census.entries {
            for e in 0..entry.graph.m() {
                let s = entry.graph.subdivide(e, 1);
                if !seen.insert(canonical_code(&s)) {
                    continue;
                }
                let r = is_crossing_critical(&s, c).map_err(|e| e.to_string())?;
                ensure!(r.verdict == Verdict::Critical, "subdividing e{e} of a c={c} census graph breaks criticality");
            }
        }
    }

    let g = families::complete(5).subdivide(0, 50);
    let d = (1..10)
        .flat_map(|e| (e + 1..10).map(move |f| (e, f)))
        .find_map(|(e, f)| planarize(&g, &[Crossing { edge_a: e, edge_b: f, pos_a: 0, pos_b: 0 }]).ok())
        .ok_or("no one-crossing drawing of subdivided K5")?;
    let thread: Vec<usize> = [0].into_iter().chain(5..55).chain([1]).collect();
    let neck = necklace_of_thread(&d, &thread).map_err(|e| e.to_string())?;
    let r = reduce_necklace(&d, &neck).map_err(|e| e.to_string())?;
    let k5 = canonical_code(&families::complete(5));
    ensure!(canonical_code(&r.graph) == k5, "necklace reduction did not give K5");
    ensure!(canonical_code(&reduce_threads(&g).map_err(|e| e.to_string())?) == k5, "thread reduction did not give K5");
    let v = is_crossing_critical(&r.graph, 1).map_err(|e| e.to_string())?.verdict;
    ensure!(v == Verdict::Critical, "reduced K5 not certified: {v:?}");
    Ok(format!(
        "200 round trips ({} subdivide, {} paths, {} dup-band), {} subdivisions critical, necklace gives K5",
        kinds[0],
        kinds[1],
        kinds[2],
        seen.len()
    ))
}

/// `CL_k` with a hub inside each listed square, every drawing that pulls the
/// hubs out across the neighbouring rails, and the spoke band.
fn wheel_drawings(k: usize, squares: &[usize]) -> (Drawing, Vec<Drawing>, Band, Vec<usize>) {
    let mut g = families::circular_ladder(k);
    let mut hubs = Vec::new();
    for &i in squares {
        let w = g.add_vertex();
        for v in [i, i + 1, k + i, k + i + 1] {
            g.add_edge(w, v).unwrap();
        }
        hubs.push(w);
    }
    let reference = Drawing::from_plane(&planarity_embed(&g).unwrap());
    let mut options = vec![Vec::new()];
    for (t, &i) in squares.iter().enumerate() {
        let base = 3 * k + 4 * t;
        let mut next = Vec::new();
        for cs in &options {
            for (r1, r2) in [(i - 1, i + 1), (k + i - 1, k + i + 1)] {
                for (pa, pb) in [(0, 0), (1, 0), (0, 1)] {
                    let mut c: Vec<Crossing> = cs.clone();
                    let (e1, e2) = if r1 < k { (base + 2, base + 3) } else { (base, base + 1) };
                    c.push(Crossing { edge_a: r1, edge_b: e1, pos_a: 0, pos_b: pa });
                    c.push(Crossing { edge_a: r2, edge_b: e2, pos_a: 0, pos_b: pb });
                    c.sort();
                    next.push(c);
                }
            }
        }
        options = next;
    }
    let drawings: Vec<Drawing> = options.iter().filter_map(|cs| planarize(&g, cs).ok()).collect();
    let host = &reference.planarization;
    let b = locate_band(host, (0..k).map(|i| vec![i, k + i]).collect(), false).unwrap();
    let tiles = tiles_of(host, &b).unwrap();
    let ts = hubs.iter().map(|w| tiles.iter().position(|t| t.vertices.contains(w)).unwrap() + 1).collect();
    (reference, drawings, b, ts)
}

fn ordered(b: &Band, s1: usize, s2: usize) -> (usize, usize) {
    let at = |s: usize| b.paths.iter().position(|p| p[0] == s).unwrap();
    (at(s1).min(at(s2)), at(s1).max(at(s2)))
}

fn surgery_monotone() -> Outcome {
    let mut flat_runs = 0;
    for (k, squares) in [(8, vec![3]), (9, vec![4]), (10, vec![2, 6]), (12, vec![2, 5, 9])] {
        let (reference, drawings, b, ts) = wheel_drawings(k, &squares);
        ensure!(!drawings.is_empty(), "no gadget drawings for CL{k}");
        for d in drawings.iter().chain([&reference]) {
            for take in 1..=ts.len() {
                let r = make_flat(&reference, &b, &ts[..take], d).map_err(|e| format!("make_flat on CL{k}: {e}"))?;
                ensure!(r.after <= r.before, "make_flat went from {} to {} crossings", r.before, r.after);
                ensure!(r.before == d.crossing_count() && r.drawing.crossing_count() == r.after, "miscounted crossings");
                flat_runs += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut splice_runs, mut constructed) = (0, 0);
    let k = 16;
    let g = families::circular_ladder(k);
    let reference = Drawing::from_plane(&planarity_embed(&g).unwrap());
    let host = &reference.planarization;
    let b = locate_band(host, (0..k).map(|i| vec![i, k + i]).collect(), false).unwrap();
    let mut drawings = vec![reference.clone()];
    while drawings.len() < 25 {
        // a random edge rerouted across one or two others
        let e = rng.gen_range(0..g.m());
        let mut cs: Vec<Crossing> = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let f = rng.gen_range(0..g.m());
            let (a, bb) = g.endpoints(e);
            let (c, d) = g.endpoints(f);
            if f == e || [a, bb].iter().any(|v| *v == c || *v == d) || cs.iter().any(|x| x.edge_a == f || x.edge_b == f) {
                continue;
            }
            let pos = cs.len();
            cs.push(if e < f {
                Crossing { edge_a: e, edge_b: f, pos_a: pos, pos_b: 0 }
            } else {
                Crossing { edge_a: f, edge_b: e, pos_a: 0, pos_b: pos }
            });
        }
        if let Ok(d) = planarize(&g, &cs) {
            drawings.push(d);
        }
    }
    for d1 in &drawings {
        for (s1, s2) in [(2, 8), (4, 10), (6, 12), (3, 11)] {
            let (lo, hi) = ordered(&b, s1, s2);
            for len in 2..=hi - lo {
                let h = Replacement::from_subband(host, &b, lo, lo + len).map_err(|e| e.to_string())?;
                if let Ok(r) = splice(&reference, &b, lo, hi, d1, &h) {
                    ensure!(r.after <= r.before, "splice went from {} to {} crossings", r.before, r.after);
                    ensure!(r.drawing.validate().is_ok(), "splice produced an invalid drawing");
                    splice_runs += 1;
                    constructed += r.constructed as usize;
                }
            }
        }
    }
    ensure!(splice_runs >= 50, "only {splice_runs} splices applied");
    Ok(format!("{flat_runs} make_flat runs, {splice_runs} splices ({constructed} by rerouting)"))
}

fn qtype_suite() -> Outcome {
    let mut tested = 0;
    let mut k4 = LabelledPlaneMultigraph::unlabelled(planarity_embed(&families::complete(4)).unwrap());
    k4.labels[0] = Some(label_c(0));
    let edge = LabelledPlaneMultigraph::new(
        planarity_embed(&Multigraph::from_edges(2, &[(0, 1)]).unwrap()).unwrap(),
        vec![Some(label_l(0)), Some(label_r(0))],
    )
    .map_err(|e| e.to_string())?;
    let mut samples = vec![(k4, 2), (edge, 1)];
    for k in [6, 8] {
        let g = planarity_embed(&families::ladder(k)).unwrap();
        let d = crossing_critical::pathdec::families::ladder(k);
        let paths = linking_paths(&g.graph, &d).map_err(|e| e.to_string())?;
        samples.push((interval_graph(&g, &d, &paths, 2, 3).map_err(|e| e.to_string())?, 1));
    }
    for (g, q) in &samples {
        let t = compute_qtype(g, *q);
        ensure!(!t.inconclusive, "inconclusive q-type");
        for e in 0..g.graph().m() {
            ensure!(compute_qtype(&g.subdivide(e), *q) == t, "subdividing e{e} changes the q-type");
            tested += 1;
        }
    }

    let mut checks = 0;
    for (g, d) in [
        (families::ladder(12), crossing_critical::pathdec::families::ladder(12)),
        (families::circular_ladder(12), crossing_critical::pathdec::families::circular_ladder(12)),
    ] {
        let emb = planarity_embed(&g).unwrap();
        for q in 0..=1 {
            let sg = build_qtype_semigroup(&emb, &d, q).map_err(|e| e.to_string())?;
            let eps = sg.epsilon;
            for x in 0..=eps {
                ensure!(sg.semigroup.mul(x, eps) == eps && sg.semigroup.mul(eps, x) == eps, "ε does not absorb {x}");
            }
            ensure!(sg.well_defined(), "product depends on the witnesses");
            ensure!(sg.checks.iter().all(|c| c.witness_pairs >= 2), "check with a single witness pair");
            checks += sg.checks.len();
        }
    }

    let k = 60;
    let g = planarity_embed(&families::circular_ladder(k)).unwrap();
    let d = crossing_critical::pathdec::families::circular_ladder(k);
    let u = uniformize_decomposition(&g, &d, 1, &|_| 3).map_err(|e| e.to_string())?;
    let out = &u.decomposition;
    let interior = out.order() - 2;
    ensure!(interior >= 10, "only {interior} interior nodes");
    ensure!(u.verified(), "uniformized node types differ");
    let paths = linking_paths(&g.graph, out).map_err(|e| e.to_string())?;
    for x in 1..out.order() - 1 {
        let t = compute_qtype(&interval_graph(&g, out, &paths, x, x).map_err(|e| e.to_string())?, 1);
        ensure!(t == u.qtype, "node {x} recomputes to another q-type");
    }
    let square = compute_qtype(&interval_graph(&g, out, &paths, 1, 2).map_err(|e| e.to_string())?, 1);
    ensure!(square == u.qtype, "the common q-type is not idempotent");
    Ok(format!("{tested} subdivisions invariant, {checks} products well defined, CL60 gives {interior} uniform nodes"))
}
