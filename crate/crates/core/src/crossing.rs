//! Drawings with crossings, exact crossing numbers and criticality.
//!
//! Drawings are modelled as *good* drawings: a pair of edges crosses at most
//! once and adjacent edges never cross. A candidate drawing is a set of
//! crossing pairs together with the order of crossings along every edge; it
//! is realizable iff its planarization is planar.
//!
//! The main solver works on the underlying simple graph with edge weights
//! equal to the multiplicities (a crossing of bundles of sizes `p` and `q`
//! costs `p * q`) and searches crossing sets by increasing cost. The oracle
//! [`crossing_number_bruteforce`] enumerates crossing sets of the multigraph
//! itself and tests them with the face-splitting embedder instead.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{blocks, edge_of, EdgeId, EmbeddedMultigraph, Multigraph, Vertex};
use crate::planarity::{is_planar, planarity_embed};

/// One crossing of a drawing: `edge_a` and `edge_b` cross at the
/// `pos_a`-th crossing along `edge_a` (from its first endpoint) and the
/// `pos_b`-th crossing along `edge_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub edge_a: EdgeId,
    pub edge_b: EdgeId,
    pub pos_a: usize,
    pub pos_b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    pub original: Multigraph,
    pub planarization: EmbeddedMultigraph,
    /// Crossing vertices of the planarization, `n..n + crossings.len()`.
    pub crossing_vertices: BTreeSet<Vertex>,
    /// Planarization edges forming each original edge, from its first endpoint.
    pub segments: Vec<Vec<EdgeId>>,
    pub crossings: Vec<Crossing>,
}

impl Drawing {
    /// Crossing-free drawing of a plane graph.
    pub fn from_plane(emb: &EmbeddedMultigraph) -> Drawing {
        Drawing {
            original: emb.graph.clone(),
            planarization: emb.clone(),
            crossing_vertices: BTreeSet::new(),
            segments: (0..emb.graph.m()).map(|e| vec![e]).collect(),
            crossings: Vec::new(),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossing_vertex(&self, i: usize) -> Vertex {
        self.original.n() + i
    }

    /// Checks the type invariants: degree-4 crossing vertices with
    /// alternating rotation, plane planarization, and segment chains that
    /// contract back to the original edges.
    pub fn validate(&self) -> Result<()> {
        let p = &self.planarization;
        let g = &p.graph;
        let n = self.original.n();
        if g.n() != n + self.crossings.len() {
            return Err(Error::Structure("planarization vertex count mismatch".into()));
        }
        if !p.is_plane() {
            return Err(Error::Structure("planarization fails the Euler check".into()));
        }
        let mut owner = vec![usize::MAX; g.m()];
        for (e, segs) in self.segments.iter().enumerate() {
            let (a, b) = self.original.endpoints(e);
            let mut at = a;
            for (i, &s) in segs.iter().enumerate() {
                owner[s] = e;
                let (x, y) = g.endpoints(s);
                let next = if x == at { y } else if y == at { x } else {
                    return Err(Error::Structure(format!("segment chain of edge {e} is broken")));
                };
                if i + 1 < segs.len() && next < n {
                    return Err(Error::Structure(format!("edge {e} passes through an original vertex")));
                }
                at = next;
            }
            if at != b {
                return Err(Error::Structure(format!("segment chain of edge {e} ends at {at}, not {b}")));
            }
        }
        for y in &self.crossing_vertices {
            let rot = &p.rotation[*y];
            if rot.len() != 4 {
                return Err(Error::Structure(format!("crossing vertex {y} has degree {}", rot.len())));
            }
            let o: Vec<usize> = rot.iter().map(|&d| owner[edge_of(d)]).collect();
            if !(o[0] == o[2] && o[1] == o[3] && o[0] != o[1]) {
                return Err(Error::Structure(format!("crossing vertex {y} is a touching, not a crossing")));
            }
        }
        Ok(())
    }
}

fn adjacent(g: &Multigraph, e: EdgeId, f: EdgeId) -> bool {
    let (a, b) = g.endpoints(e);
    let (c, d) = g.endpoints(f);
    a == c || a == d || b == c || b == d
}

/// Planarization graph (unembedded) for a crossing list, plus segment map.
fn planarization_graph(g: &Multigraph, crossings: &[Crossing]) -> Result<(Multigraph, Vec<Vec<EdgeId>>)> {
    let n = g.n();
    let mut along: Vec<Vec<(usize, Vertex)>> = vec![Vec::new(); g.m()];
    let mut pairs = BTreeSet::new();
    for (i, c) in crossings.iter().enumerate() {
        let (e, f) = (c.edge_a, c.edge_b);
        if e >= g.m() || f >= g.m() {
            return Err(Error::Argument(format!("crossing {i} references a missing edge")));
        }
        if e == f || g.is_loop(e) || g.is_loop(f) || adjacent(g, e, f) {
            return Err(Error::Argument(format!(
                "crossing {i} on edges {e} and {f} violates the good-drawing policy"
            )));
        }
        if !pairs.insert((e.min(f), e.max(f))) {
            return Err(Error::Argument(format!("edges {e} and {f} cross twice")));
        }
        along[e].push((c.pos_a, n + i));
        along[f].push((c.pos_b, n + i));
    }
    // the first segment of every edge keeps the edge's id
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().to_vec();
    let mut segments = vec![Vec::new(); g.m()];
    for e in 0..g.m() {
        let mut list = std::mem::take(&mut along[e]);
        list.sort_unstable();
        if list.iter().enumerate().any(|(i, &(pos, _))| pos != i) {
            return Err(Error::Argument(format!("crossing positions along edge {e} are not 0..k")));
        }
        segments[e].push(e);
        if list.is_empty() {
            continue;
        }
        let (a, b) = g.endpoints(e);
        let mut prev = list[0].1;
        edges[e] = (a, prev);
        for &(_, y) in &list[1..] {
            segments[e].push(edges.len());
            edges.push((prev, y));
            prev = y;
        }
        segments[e].push(edges.len());
        edges.push((prev, b));
    }
    Ok((Multigraph::from_edges(n + crossings.len(), &edges)?, segments))
}

/// Builds and embeds the planarization for an explicit crossing list.
pub fn planarize(g: &Multigraph, crossings: &[Crossing]) -> Result<Drawing> {
    let (p, segments) = planarization_graph(g, crossings)?;
    let emb = planarity_embed(&p)
        .ok_or_else(|| Error::NotRealizable("planarization is not planar".into()))?;
    let d = Drawing {
        original: g.clone(),
        crossing_vertices: (g.n()..g.n() + crossings.len()).collect(),
        planarization: emb,
        segments,
        crossings: crossings.to_vec(),
    };
    d.validate().map_err(|e| Error::NotRealizable(e.to_string()))?;
    Ok(d)
}

/// Crossing number value that may only be bounded from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrValue {
    Exact(usize),
    /// No drawing with fewer crossings exists; search stopped at the budget.
    AtLeast(usize),
}

impl CrValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            CrValue::Exact(v) => Some(v),
            CrValue::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum CrossingResult {
    Exact { cr: usize, witness: Box<Drawing> },
    /// Every drawing needs more than `budget` crossings.
    UnknownAboveBudget { budget: usize },
}

impl CrossingResult {
    pub fn value(&self) -> CrValue {
        match self {
            CrossingResult::Exact { cr, .. } => CrValue::Exact(*cr),
            CrossingResult::UnknownAboveBudget { budget } => CrValue::AtLeast(budget + 1),
        }
    }
}

/// Weighted simple-graph instance derived from a multigraph.
struct Instance {
    simple: Multigraph,
    /// Independent simple-edge pairs with their cost.
    pairs: Vec<(EdgeId, EdgeId, usize)>,
    /// Non-isolated vertex count.
    active: usize,
}

impl Instance {
    fn new(g: &Multigraph) -> Self {
        let (simple, weight, _) = g.underlying_simple();
        let mut pairs = Vec::new();
        for e in 0..simple.m() {
            for f in e + 1..simple.m() {
                if !adjacent(&simple, e, f) {
                    pairs.push((e, f, weight[e] * weight[f]));
                }
            }
        }
        let active = (0..simple.n()).filter(|&v| simple.degree(v) > 0).count();
        Instance { simple, pairs, active }
    }

    fn euler_slack(&self) -> usize {
        if self.active < 3 {
            return 0;
        }
        (self.simple.m() + 6).saturating_sub(3 * self.active)
    }

    /// Searches a realizable crossing set of total cost exactly `cost`.
    /// Returns the chosen pairs and their order along each edge.
    fn find(&self, cost: usize) -> Option<(Vec<usize>, Vec<Vec<usize>>)> {
        if cost == 0 {
            return is_planar(&self.simple).then(|| (Vec::new(), vec![Vec::new(); self.simple.m()]));
        }
        let slack = self.euler_slack();
        let firsts: Vec<usize> = (0..self.pairs.len()).filter(|&i| self.pairs[i].2 <= cost).collect();
        firsts.par_iter().find_map_first(|&i| {
            let mut chosen = vec![i];
            self.extend(&mut chosen, cost - self.pairs[i].2, slack)
        })
    }

    fn extend(&self, chosen: &mut Vec<usize>, left: usize, slack: usize) -> Option<(Vec<usize>, Vec<Vec<usize>>)> {
        if left == 0 {
            if chosen.len() < slack {
                return None;
            }
            return self.realize(chosen).map(|orders| (chosen.clone(), orders));
        }
        let from = chosen.last().unwrap() + 1;
        for i in from..self.pairs.len() {
            let c = self.pairs[i].2;
            if c > left {
                continue;
            }
            chosen.push(i);
            if let Some(r) = self.extend(chosen, left - c, slack) {
                return Some(r);
            }
            chosen.pop();
        }
        None
    }

    /// Tries every crossing order along the crossed edges.
    fn realize(&self, chosen: &[usize]) -> Option<Vec<Vec<usize>>> {
        let m = self.simple.m();
        let mut partners: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (k, &i) in chosen.iter().enumerate() {
            let (e, f, _) = self.pairs[i];
            partners[e].push(k);
            partners[f].push(k);
        }
        let multi: Vec<EdgeId> = (0..m).filter(|&e| partners[e].len() > 1).collect();
        let mut orders = partners.clone();
        realize_orders(&self.simple, chosen.len(), &self.pairs, chosen, &mut orders, &multi, 0)
            .then_some(orders)
    }
}

/// Odometer over permutations of the crossing lists of `multi[idx..]`.
fn realize_orders(
    g: &Multigraph,
    k: usize,
    pairs: &[(EdgeId, EdgeId, usize)],
    chosen: &[usize],
    orders: &mut [Vec<usize>],
    multi: &[EdgeId],
    idx: usize,
) -> bool {
    if idx == multi.len() {
        let crossings = crossings_from_orders(pairs, chosen, orders);
        debug_assert_eq!(crossings.len(), k);
        let (p, _) = planarization_graph(g, &crossings).expect("pairs are independent");
        return is_planar(&p);
    }
    let e = multi[idx];
    let mut perm = orders[e].clone();
    perm.sort_unstable();
    loop {
        orders[e] = perm.clone();
        if realize_orders(g, k, pairs, chosen, orders, multi, idx + 1) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn crossings_from_orders(pairs: &[(EdgeId, EdgeId, usize)], chosen: &[usize], orders: &[Vec<usize>]) -> Vec<Crossing> {
    chosen
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let (e, f, _) = pairs[i];
            Crossing {
                edge_a: e,
                edge_b: f,
                pos_a: orders[e].iter().position(|&x| x == k).unwrap(),
                pos_b: orders[f].iter().position(|&x| x == k).unwrap(),
            }
        })
        .collect()
}

pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lower bound used to seed iterative deepening: the Euler bound
/// `m - 3n + 6` on the underlying simple graph.
pub fn euler_lower_bound(g: &Multigraph) -> usize {
    Instance::new(g).euler_slack()
}

/// Exact crossing number under the good-drawing policy, by iterative
/// deepening on the crossing cost. With a budget, stops with
/// [`CrossingResult::UnknownAboveBudget`] instead of searching further.
pub fn crossing_number(g: &Multigraph, budget: Option<usize>) -> CrossingResult {
    let inst = Instance::new(g);
    let mut k = inst.euler_slack();
    if k > 0 && is_planar(&inst.simple) {
        // cannot happen: the Euler bound is valid for simple graphs
        k = 0;
    }
    loop {
        if budget.is_some_and(|b| k > b) {
            return CrossingResult::UnknownAboveBudget { budget: budget.unwrap() };
        }
        if let Some((chosen, orders)) = inst.find(k) {
            let witness = expand_witness(g, &inst, &chosen, &orders)
                .expect("weighted solution expands to a drawing of the multigraph");
            debug_assert_eq!(witness.crossing_count(), k);
            return CrossingResult::Exact { cr: k, witness: Box::new(witness) };
        }
        k += 1;
    }
}

/// A good drawing with exactly `k` crossings, if one exists. With
/// `k = cr(g)` this skips the search below the optimum.
pub fn drawing_with_cost(g: &Multigraph, k: usize) -> Option<Drawing> {
    let inst = Instance::new(g);
    let (chosen, orders) = inst.find(k)?;
    expand_witness(g, &inst, &chosen, &orders)
}

/// Decides whether `cr(g) <= k` without computing the exact value.
pub fn has_drawing_within(g: &Multigraph, k: usize) -> bool {
    let inst = Instance::new(g);
    (inst.euler_slack()..=k).any(|c| inst.find(c).is_some())
}

/// Turns a weighted solution on the simple graph into a drawing of the
/// multigraph: parallel copies run side by side and every crossing of two
/// bundles becomes a grid of crossings.
fn expand_witness(g: &Multigraph, inst: &Instance, chosen: &[usize], orders: &[Vec<usize>]) -> Option<Drawing> {
    let (_, _, class) = g.underlying_simple();
    let mut copies: Vec<Vec<EdgeId>> = vec![Vec::new(); inst.simple.m()];
    for (e, c) in class.iter().enumerate() {
        if let Some(c) = c {
            copies[*c].push(e);
        }
    }
    let k = chosen.len();
    for mask in 0..(1u64 << (2 * k)) {
        let mut seq: Vec<Vec<(EdgeId, usize)>> = vec![Vec::new(); g.m()];
        for (se, order) in orders.iter().enumerate() {
            for &kk in order {
                let (e, f, _) = inst.pairs[chosen[kk]];
                let other = if e == se { f } else { e };
                let bit = if e == se { 2 * kk } else { 2 * kk + 1 };
                let mut others = copies[other].clone();
                if mask >> bit & 1 == 1 {
                    others.reverse();
                }
                for &c in &copies[se] {
                    for &o in &others {
                        seq[c].push((o, 0));
                    }
                }
            }
        }
        // orient each copy's sequence from its own first endpoint
        for (se, cs) in copies.iter().enumerate() {
            let (sa, _) = inst.simple.endpoints(se);
            for &c in cs {
                if g.endpoints(c).0 != sa {
                    seq[c].reverse();
                }
            }
        }
        let mut crossings = Vec::new();
        for e in 0..g.m() {
            for (pos, &(f, _)) in seq[e].iter().enumerate() {
                if e < f {
                    let pos_b = seq[f].iter().position(|&(x, _)| x == e).unwrap();
                    crossings.push(Crossing { edge_a: e, edge_b: f, pos_a: pos, pos_b });
                }
            }
        }
        if let Ok(d) = planarize(g, &crossings) {
            return Some(d);
        }
    }
    None
}

/// Independent oracle: enumerates crossing sets of the multigraph itself by
/// size, every order along every edge, and checks realizability with the
/// face-splitting embedder. Returns `None` when `cr(g) > max_k`.
pub fn crossing_number_bruteforce(g: &Multigraph, max_k: usize) -> Option<usize> {
    let m = g.m();
    let mut pairs = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            if !g.is_loop(e) && !g.is_loop(f) && !adjacent(g, e, f) {
                pairs.push((e, f));
            }
        }
    }
    for k in 0..=max_k {
        let mut idx: Vec<usize> = (0..k).collect();
        if k > pairs.len() {
            return None;
        }
        loop {
            if brute_realizable(g, &pairs, &idx) {
                return Some(k);
            }
            // next k-combination
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < pairs.len() - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    None
}

fn brute_realizable(g: &Multigraph, pairs: &[(EdgeId, EdgeId)], idx: &[usize]) -> bool {
    let m = g.m();
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (k, &i) in idx.iter().enumerate() {
        lists[pairs[i].0].push(k);
        lists[pairs[i].1].push(k);
    }
    let crossed: Vec<EdgeId> = (0..m).filter(|&e| lists[e].len() > 1).collect();
    fn rec(g: &Multigraph, pairs: &[(EdgeId, EdgeId)], idx: &[usize], lists: &mut Vec<Vec<usize>>, crossed: &[EdgeId], at: usize) -> bool {
        if at == crossed.len() {
            let crossings: Vec<Crossing> = idx
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let (e, f) = pairs[i];
                    Crossing {
                        edge_a: e,
                        edge_b: f,
                        pos_a: lists[e].iter().position(|&x| x == k).unwrap(),
                        pos_b: lists[f].iter().position(|&x| x == k).unwrap(),
                    }
                })
                .collect();
            let (p, _) = planarization_graph(g, &crossings).unwrap();
            return planarity_embed(&p).is_some();
        }
        let e = crossed[at];
        let mut perm = lists[e].clone();
        perm.sort_unstable();
        loop {
            lists[e] = perm.clone();
            if rec(g, pairs, idx, lists, crossed, at + 1) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
    rec(g, pairs, idx, &mut lists, &crossed, 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Critical,
    NotCritical(String),
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct CriticalityReport {
    pub c: usize,
    pub cr: CrValue,
    /// Crossing number of `G - e` for every edge, exact when below `c`.
    pub per_edge: Vec<CrValue>,
    pub verdict: Verdict,
}

/// Criticality test: `cr(G) >= c` and `cr(G - e) < c` for every edge.
/// Checking single-edge deletions suffices because the crossing number is
/// monotone under taking subgraphs.
pub fn is_crossing_critical(g: &Multigraph, c: usize) -> Result<CriticalityReport> {
    is_crossing_critical_with_budget(g, c, None)
}

pub fn is_crossing_critical_with_budget(g: &Multigraph, c: usize, budget: Option<usize>) -> Result<CriticalityReport> {
    if c == 0 {
        return Err(Error::Argument("c must be at least 1".into()));
    }
    let cr = crossing_number(g, budget.map(|b| b.max(c - 1))).value();
    let below = matches!(cr, CrValue::Exact(v) if v < c);
    let per_edge = per_edge_values(g, c);
    let verdict = if below {
        Verdict::NotCritical(format!("cr = {} < {c}", cr.exact().unwrap()))
    } else if let Some(e) = per_edge.iter().position(|v| !matches!(v, CrValue::Exact(x) if *x < c)) {
        Verdict::NotCritical(format!("deleting edge {e} keeps the crossing number at least {c}"))
    } else {
        Verdict::Critical
    };
    Ok(CriticalityReport { c, cr, per_edge, verdict })
}

/// `cr(G - e)` for each edge, exact if below `c`, else `AtLeast(c)`.
fn per_edge_values(g: &Multigraph, c: usize) -> Vec<CrValue> {
    let (_, _, class) = g.underlying_simple();
    // parallel copies give identical subgraphs; solve one per class
    let mut rep: Vec<Option<EdgeId>> = Vec::new();
    let mut first_of_class = std::collections::HashMap::new();
    for (e, cl) in class.iter().enumerate() {
        rep.push(cl.as_ref().map(|k| *first_of_class.entry(*k).or_insert(e)));
    }
    let distinct: Vec<EdgeId> = (0..g.m()).filter(|&e| rep[e] == Some(e) || rep[e].is_none()).collect();
    let solved: Vec<(EdgeId, CrValue)> = distinct
        .par_iter()
        .map(|&e| (e, crossing_number(&g.without_edge(e), Some(c - 1)).value()))
        .collect();
    let lookup: std::collections::HashMap<EdgeId, CrValue> = solved.into_iter().collect();
    (0..g.m()).map(|e| lookup[&rep[e].unwrap_or(e)]).collect()
}

/// `(c, delta)`-criticality: `cr(G) = c` and `cr(G - e) <= c - delta` for all `e`.
pub fn is_cd_critical(g: &Multigraph, c: usize, delta: usize) -> Result<bool> {
    if c == 0 || delta == 0 {
        return Err(Error::Argument("c and delta must be positive".into()));
    }
    if !has_drawing_within(g, c) || has_drawing_within(g, c - 1) {
        return Ok(false);
    }
    let limit = c.saturating_sub(delta);
    if delta > c {
        return Ok(g.m() == 0);
    }
    Ok((0..g.m()).into_par_iter().all(|e| has_drawing_within(&g.without_edge(e), limit)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAssignment {
    /// Edge ids of each block with its crossing number `c_i`.
    pub blocks: Vec<(Vec<EdgeId>, usize)>,
    pub delta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockVerdict {
    Assignment(BlockAssignment),
    Refuted(String),
}

/// Block-wise criticality: finds `c_1..c_b` and `delta` with every block
/// `(c_i, delta)`-critical and `c <= sum c_i <= c + delta - 1`, or explains
/// why none exists.
pub fn check_block_criticality(h: &Multigraph, c: usize) -> Result<BlockVerdict> {
    let dec = blocks(h);
    let mut out = Vec::new();
    let mut delta = usize::MAX;
    for es in &dec.block_edges {
        let keep: BTreeSet<EdgeId> = es.iter().copied().collect();
        let removed: BTreeSet<EdgeId> = (0..h.m()).filter(|e| !keep.contains(e)).collect();
        let b = h.without_edges(&removed);
        let ci = match crossing_number(&b, None) {
            CrossingResult::Exact { cr, .. } => cr,
            CrossingResult::UnknownAboveBudget { .. } => unreachable!("no budget"),
        };
        if ci == 0 {
            return Ok(BlockVerdict::Refuted(format!("block with edges {es:?} is planar")));
        }
        let worst = (0..b.m())
            .into_par_iter()
            .map(|e| match crossing_number(&b.without_edge(e), Some(ci)) {
                CrossingResult::Exact { cr, .. } => cr,
                CrossingResult::UnknownAboveBudget { .. } => ci + 1,
            })
            .max()
            .unwrap_or(0);
        if worst >= ci {
            return Ok(BlockVerdict::Refuted(format!(
                "block with edges {es:?} has an edge whose deletion keeps cr = {ci}"
            )));
        }
        delta = delta.min(ci - worst);
        out.push((es.clone(), ci));
    }
    let total: usize = out.iter().map(|(_, ci)| ci).sum();
    if out.is_empty() || total < c || total > c + delta - 1 {
        return Ok(BlockVerdict::Refuted(format!(
            "block crossing numbers sum to {total}, outside [{c}, {c} + delta - 1]"
        )));
    }
    Ok(BlockVerdict::Assignment(BlockAssignment { blocks: out, delta }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperConstants {
    pub c: u64,
    /// Crossings sufficient for an optimal-ish drawing of a c-critical graph.
    pub rt_bound: u64,
    /// Maximum depth of F-nests and degenerate F-nests.
    pub nest_bound: u64,
    /// Path-width bound `ceil(2^(6(72 log2 c + 248) c^3 + 1))`.
    pub pathwidth_bound: BigUint,
}

/// Closed-form bounds for a given `c`. The path-width bound is an integer:
/// `2^(6(72 log2 c + 248)c^3 + 1) = 2^(1488 c^3 + 1) * c^(432 c^3)`.
pub fn paper_constants(c: u64) -> Result<PaperConstants> {
    if c == 0 {
        return Err(Error::Argument("c must be at least 1".into()));
    }
    let rt_bound = (5 * c + 32).div_ceil(2);
    let nest_bound = 15 * c * c + 105 * c + 16;
    let c3 = c.pow(3);
    let pow2 = BigUint::from(1u8) << (1488 * c3 + 1);
    let pathwidth_bound = pow2 * BigUint::from(c).pow((432 * c3) as u32);
    Ok(PaperConstants { c, rt_bound, nest_bound, pathwidth_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn cr(g: &Multigraph) -> usize {
        crossing_number(g, None).value().exact().unwrap()
    }

    #[test]
    fn k5_single_crossing_planarization() {
        // K5 edges in lexicographic order: 0:01 1:02 2:03 3:04 4:12 5:13 6:14 7:23 8:24 9:34
        let g = complete(5);
        let d = planarize(&g, &[Crossing { edge_a: 5, edge_b: 8, pos_a: 0, pos_b: 0 }]).unwrap();
        assert_eq!(d.planarization.graph.n(), 6);
        assert_eq!(d.planarization.graph.m(), 12);
        assert!(d.planarization.is_plane());
    }

    #[test]
    fn empty_crossing_list_is_identity() {
        let g = cube();
        let d = planarize(&g, &[]).unwrap();
        assert_eq!(d.planarization.graph, g);
    }

    #[test]
    fn adjacent_crossing_rejected() {
        let g = complete(5);
        let err = planarize(&g, &[Crossing { edge_a: 0, edge_b: 1, pos_a: 0, pos_b: 0 }]);
        assert!(matches!(err, Err(Error::Argument(_))));
    }

    #[test]
    fn small_crossing_numbers() {
        assert_eq!(cr(&complete(4)), 0);
        assert_eq!(cr(&complete(5)), 1);
        assert_eq!(cr(&complete_bipartite(3, 3)), 1);
    }

    #[test]
    fn budget_gives_unknown() {
        let r = crossing_number(&complete(5), Some(0));
        assert!(matches!(r, CrossingResult::UnknownAboveBudget { budget: 0 }));
    }

    #[test]
    fn multigraph_witness() {
        // K5 with one doubled edge still has a 1-crossing drawing
        let mut g = complete(5);
        g.add_edge(0, 1).unwrap();
        assert_eq!(cr(&g), 1);
        // K3,3 with every edge doubled costs 4
        let k = complete_bipartite(3, 3);
        let mut h = k.clone();
        for &(a, b) in k.edges() {
            h.add_edge(a, b).unwrap();
        }
        let r = crossing_number(&h, None);
        let CrossingResult::Exact { cr, witness } = r else { panic!() };
        assert_eq!(cr, 4);
        witness.validate().unwrap();
        assert_eq!(witness.crossing_count(), 4);
    }

    #[test]
    fn oracle_agrees_on_small_graphs() {
        assert_eq!(crossing_number_bruteforce(&complete(5), 2), Some(1));
        assert_eq!(crossing_number_bruteforce(&complete_bipartite(3, 3), 2), Some(1));
        assert_eq!(crossing_number_bruteforce(&complete(4), 1), Some(0));
    }

    #[test]
    fn criticality_small() {
        let r = is_crossing_critical(&complete(5), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Critical);
        let r = is_crossing_critical(&complete(5).without_edge(0), 1).unwrap();
        assert!(matches!(r.verdict, Verdict::NotCritical(_)));
        assert!(is_cd_critical(&complete(5), 1, 1).unwrap());
        assert!(!is_cd_critical(&complete(5), 2, 1).unwrap());
    }

    #[test]
    fn block_criticality() {
        let k5 = complete(5);
        assert!(matches!(check_block_criticality(&k5, 1).unwrap(), BlockVerdict::Assignment(_)));
        let mut pendant = k5.clone();
        let v = pendant.add_vertex();
        pendant.add_edge(0, v).unwrap();
        assert!(matches!(check_block_criticality(&pendant, 1).unwrap(), BlockVerdict::Refuted(_)));
    }

    #[test]
    fn constants() {
        let one = paper_constants(1).unwrap();
        assert_eq!((one.rt_bound, one.nest_bound), (19, 136));
        let two = paper_constants(2).unwrap();
        assert_eq!((two.rt_bound, two.nest_bound), (21, 286));
        assert_eq!(two.pathwidth_bound, BigUint::from(1u8) << 15361u32);
        assert_eq!(one.pathwidth_bound, BigUint::from(1u8) << 1489u32);
    }
}
