use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use crossing_critical::canon::{canonical_code, Code};
use crossing_critical::crossing::{crossing_number, crossing_number_bruteforce, CrossingResult};
use crossing_critical::enumerate::census_bruteforce;
use crossing_critical::flow::max_edge_disjoint_paths;
use crossing_critical::graph::families;
use crossing_critical::pathdec::{self, refine_to_linked, PathDecomposition};
use crossing_critical::planarity::planarity_embed;
use crossing_critical::semigroup::{build_factorization_tree, FiniteSemigroup};
use crossing_critical::structures::{locate_band, support, tiles_of};
use crossing_critical::Multigraph;

/// Simple graph on `lo..=hi` vertices, each pair present with probability 1/2
/// before the edge count is capped.
fn simple_graph(lo: usize, hi: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (lo..=hi).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let k = pairs.len();
        (proptest::collection::vec(any::<bool>(), k), Just(pairs), Just(n)).prop_map(move |(keep, pairs, n)| {
            let edges: Vec<(usize, usize)> =
                pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).take(max_m).collect();
            Multigraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn exact(g: &Multigraph) -> usize {
    match crossing_number(g, None) {
        CrossingResult::Exact { cr, witness } => {
            assert_eq!(witness.crossing_count(), cr);
            witness.validate().unwrap();
            cr
        }
        CrossingResult::UnknownAboveBudget { .. } => unreachable!(),
    }
}

/// Topological containment of K5 or K3,3 by deleting edges and smoothing,
/// memoized on canonical codes.
fn has_kuratowski_subdivision(g: &Multigraph, memo: &mut HashMap<Code, bool>) -> bool {
    let g = trim(g);
    if g.m() < 9 {
        return false;
    }
    let code = canonical_code(&g);
    if let Some(&r) = memo.get(&code) {
        return r;
    }
    let k5 = canonical_code(&families::complete(5));
    let k33 = canonical_code(&families::complete_bipartite(3, 3));
    let r = code == k5 || code == k33 || (0..g.m()).any(|e| has_kuratowski_subdivision(&g.without_edge(e), memo));
    memo.insert(code, r);
    r
}

/// Drops vertices of degree at most one, smooths degree-two vertices and
/// removes parallel copies, until nothing changes.
fn trim(g: &Multigraph) -> Multigraph {
    let mut edges: BTreeSet<(usize, usize)> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    loop {
        let mut deg: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for &(a, b) in &edges {
            deg.entry(a).or_default().push((a, b));
            deg.entry(b).or_default().push((a, b));
        }
        let Some((&v, inc)) = deg.iter().find(|(_, inc)| inc.len() <= 2) else { break };
        for e in inc {
            edges.remove(e);
        }
        if inc.len() == 2 {
            let other = |&(a, b): &(usize, usize)| if a == v { b } else { a };
            let (x, y) = (other(&inc[0]), other(&inc[1]));
            if x != y {
                edges.insert((x.min(y), x.max(y)));
            }
        }
    }
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let index: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let list: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (index[a], index[b])).collect();
    Multigraph::from_edges(verts.len(), &list).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn euler_formula_on_plane_embeddings(g in simple_graph(1, 9, 20)) {
        prop_assume!(g.m() > 0 && g.is_connected());
        if let Some(emb) = planarity_embed(&g) {
            prop_assert!(emb.is_plane());
            prop_assert_eq!(emb.faces().len() + g.n(), 2 + g.m());
        }
    }

    #[test]
    fn planarity_matches_kuratowski(g in simple_graph(5, 7, 21)) {
        let mut memo = HashMap::new();
        prop_assert_eq!(planarity_embed(&g).is_none(), has_kuratowski_subdivision(&g, &mut memo));
    }

    #[test]
    fn canonical_code_is_label_free(g in simple_graph(1, 9, 30), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_code(&g), canonical_code(&g.relabel(&perm)));
    }

    #[test]
    fn canonical_code_separates_degree_sequences(a in simple_graph(4, 8, 30), b in simple_graph(4, 8, 30)) {
        let degs = |g: &Multigraph| {
            let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
            d.sort();
            d
        };
        if degs(&a) != degs(&b) {
            prop_assert_ne!(canonical_code(&a), canonical_code(&b));
        }
    }

    #[test]
    fn menger_certificate(g in simple_graph(2, 9, 25), s in 0usize..9, t in 0usize..9) {
        let (s, t) = (s % g.n(), t % g.n());
        prop_assume!(s != t);
        let r = max_edge_disjoint_paths(&g, &BTreeSet::from([s]), &BTreeSet::from([t]), &BTreeSet::new()).unwrap();
        prop_assert_eq!(r.paths.len(), r.count);
        prop_assert_eq!(r.cut.len(), r.count);
        let used: Vec<usize> = r.path_edges.iter().flatten().copied().collect();
        prop_assert_eq!(used.iter().collect::<BTreeSet<_>>().len(), used.len());
        for p in &r.paths {
            prop_assert_eq!((p[0], *p.last().unwrap()), (s, t));
        }
        prop_assert!(!g.without_edges(&r.cut).components().iter().any(|c| c.contains(&s) && c.contains(&t)));
    }

    #[test]
    fn factorization_trees(seed in any::<u64>(), len in 1usize..200, which in 0usize..4) {
        let a = [
            FiniteSemigroup::cyclic_group(4),
            FiniteSemigroup::boolean(),
            FiniteSemigroup::full_transformations_2(),
            FiniteSemigroup::from_transformations(&[vec![1, 2, 0], vec![0, 0, 2]], 27).unwrap(),
        ][which].clone();
        let mut s = seed;
        let word: Vec<usize> = (0..len).map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as usize % a.size()
        }).collect();
        let t = build_factorization_tree(&a, &word).unwrap();
        prop_assert!(t.check(&a).is_ok());
        prop_assert_eq!(t.leaves(), word.clone());
        prop_assert_eq!(Some(t.value()), a.product(&word));
        prop_assert!(t.depth() <= 3 * a.size());
    }

    #[test]
    fn associativity_check_catches_corruption(x in 0usize..4, y in 0usize..4, v in 0usize..4) {
        let mut table = FiniteSemigroup::cyclic_group(4).table().to_vec();
        table[x][y] = v;
        let n = table.len();
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]])));
        prop_assert_eq!(FiniteSemigroup::new(table).is_ok(), assoc);
    }

    #[test]
    fn coarsening_keeps_decompositions_valid(k in 4usize..14, mask in any::<u32>()) {
        let g = families::ladder(k);
        let d = pathdec::families::ladder(k);
        let merges: BTreeSet<usize> = (1..d.order()).filter(|i| mask >> (i % 32) & 1 == 1).collect();
        let c = d.coarsen(&merges).unwrap();
        prop_assert!(c.validate(&g).is_ok());
        prop_assert_eq!(c.order(), d.order() - merges.len());
    }

    #[test]
    fn tiles_cover_the_band_support(k in 5usize..20) {
        let host = planarity_embed(&families::circular_ladder(k)).unwrap();
        let b = locate_band(&host, (0..k).map(|i| vec![i, k + i]).collect(), false)
            .or_else(|| locate_band(&host, (0..k).rev().map(|i| vec![i, k + i]).collect(), false))
            .unwrap();
        let tiles = tiles_of(&host, &b).unwrap();
        let (sv, _) = support(&tiles);
        let union: BTreeSet<usize> = tiles.iter().flat_map(|t| t.vertices.iter().copied()).collect();
        prop_assert_eq!(union, sv);
        for (i, w) in tiles.windows(2).enumerate() {
            prop_assert_eq!(w[0].vertices.intersection(&w[1].vertices).count(), b.paths[i + 1].len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn crossing_number_properties(g in simple_graph(4, 7, 14)) {
        let cr = exact(&g);
        prop_assert_eq!(cr == 0, planarity_embed(&g).is_some());
        if cr <= 2 {
            prop_assert_eq!(crossing_number_bruteforce(&g, 2), Some(cr));
            if g.m() > 0 {
                prop_assert_eq!(exact(&g.subdivide(0, 1)), cr);
            }
        }
        for e in 0..g.m() {
            prop_assert!(exact(&g.without_edge(e)) <= cr);
        }
    }

    #[test]
    fn refined_decompositions_are_linked(k in 4usize..12) {
        let g = families::circular_ladder(k);
        let d: PathDecomposition = pathdec::families::circular_ladder(k);
        let r = refine_to_linked(&g, &d, &|_| 2).unwrap();
        let m = r.decomposition.validate(&g).unwrap();
        if m.order >= 2 {
            prop_assert_eq!(m.linked, Some(r.p));
        }
        prop_assert!(r.below_threshold || m.order >= 2);
    }
}

#[test]
fn census_entries_revalidate() {
    for (c, n) in [(1, 7), (2, 6)] {
        for e in &census_bruteforce(c, n).unwrap().entries {
            assert!(exact(&e.graph) >= c);
            for x in 0..e.graph.m() {
                assert!(exact(&e.graph.without_edge(x)) < c);
            }
        }
    }
}
