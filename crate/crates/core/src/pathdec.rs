//! Path decompositions: validation, exact search, coarsening, node
//! classification and refinement to linked decompositions.

use std::collections::{BTreeSet, HashSet};

use crate::error::{arg, Error, Result};
use crate::flow::max_vertex_disjoint_paths;
use crate::graph::{EdgeId, Multigraph, Vertex};

pub type Bag = BTreeSet<Vertex>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<Bag>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMetrics {
    pub width: usize,
    pub interior_width: usize,
    pub adhesion: usize,
    pub order: usize,
    pub proper: bool,
    pub linked: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownVertex(Vertex),
    MissingVertex(Vertex),
    UncoveredEdge(EdgeId),
    NotContiguous(Vertex),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::UnknownVertex(v) => write!(f, "bag mentions unknown vertex {v}"),
            Violation::MissingVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(e) => write!(f, "edge {e} lies in no bag"),
            Violation::NotContiguous(v) => write!(f, "bags holding vertex {v} are not consecutive"),
        }
    }
}

impl PathDecomposition {
    pub fn new(bags: Vec<Bag>) -> Self {
        PathDecomposition { bags }
    }

    pub fn from_lists(lists: &[Vec<Vertex>]) -> Self {
        PathDecomposition { bags: lists.iter().map(|b| b.iter().copied().collect()).collect() }
    }

    pub fn order(&self) -> usize {
        self.bags.len()
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Width over the nodes other than the two ends.
    pub fn interior_width(&self) -> usize {
        let t = self.order();
        if t <= 2 {
            return 0;
        }
        self.bags[1..t - 1].iter().map(|b| b.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// `L(x)`: intersection with the previous bag (`x >= 1`).
    pub fn left(&self, x: usize) -> Bag {
        self.bags[x - 1].intersection(&self.bags[x]).copied().collect()
    }

    /// `R(x)`: intersection with the next bag (`x + 1 < order`).
    pub fn right(&self, x: usize) -> Bag {
        self.bags[x].intersection(&self.bags[x + 1]).copied().collect()
    }

    pub fn adhesion(&self) -> usize {
        (1..self.order()).map(|x| self.left(x).len()).max().unwrap_or(0)
    }

    pub fn is_proper(&self) -> bool {
        let t = self.order();
        (0..t).all(|x| (0..t).all(|y| x == y || !self.bags[x].is_subset(&self.bags[y])))
    }

    /// Drops bags contained in a neighbour until none is left. By the
    /// interval property this makes the decomposition proper.
    pub fn make_proper(mut self) -> Self {
        loop {
            let t = self.bags.len();
            let drop = (0..t).find(|&x| {
                (x > 0 && self.bags[x].is_subset(&self.bags[x - 1]))
                    || (x + 1 < t && self.bags[x].is_subset(&self.bags[x + 1]))
            });
            match drop {
                Some(x) if t > 1 => {
                    self.bags.remove(x);
                }
                _ => return self,
            }
        }
    }

    pub fn violations(&self, g: &Multigraph) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut first = vec![usize::MAX; g.n()];
        let mut last = vec![0; g.n()];
        let mut count = vec![0; g.n()];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    out.push(Violation::UnknownVertex(v));
                    continue;
                }
                first[v] = first[v].min(x);
                last[v] = x;
                count[v] += 1;
            }
        }
        for v in 0..g.n() {
            if count[v] == 0 {
                out.push(Violation::MissingVertex(v));
            } else if last[v] - first[v] + 1 != count[v] {
                out.push(Violation::NotContiguous(v));
            }
        }
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if !self.bags.iter().any(|bag| bag.contains(&a) && bag.contains(&b)) {
                out.push(Violation::UncoveredEdge(e));
            }
        }
        out
    }

    pub fn validate(&self, g: &Multigraph) -> std::result::Result<DecompositionMetrics, Vec<Violation>> {
        let v = self.violations(g);
        if !v.is_empty() {
            return Err(v);
        }
        Ok(DecompositionMetrics {
            width: self.width(),
            interior_width: self.interior_width(),
            adhesion: self.adhesion(),
            order: self.order(),
            proper: self.is_proper(),
            linked: self.linkedness(g),
        })
    }

    /// `Some(p)` when `|L(x)| = p` for every non-first node and `g` has `p`
    /// vertex-disjoint paths from `R(s)` to `L(t)`.
    pub fn linkedness(&self, g: &Multigraph) -> Option<usize> {
        let t = self.order();
        if t < 2 {
            return None;
        }
        let p = self.left(1).len();
        if (2..t).any(|x| self.left(x).len() != p) {
            return None;
        }
        if p == 0 {
            return Some(0);
        }
        let paths = max_vertex_disjoint_paths(g, &self.right(0), &self.left(t - 1), None);
        (paths.count >= p).then_some(p)
    }

    /// Merges node `i` into node `i - 1` for every `i` in `merges`.
    pub fn coarsen(&self, merges: &BTreeSet<usize>) -> Result<Self> {
        if merges.iter().any(|&i| i == 0 || i >= self.order()) {
            return arg("merge indices must lie in 1..order");
        }
        let mut bags: Vec<Bag> = Vec::new();
        for (i, b) in self.bags.iter().enumerate() {
            if merges.contains(&i) {
                bags.last_mut().unwrap().extend(b);
            } else {
                bags.push(b.clone());
            }
        }
        Ok(PathDecomposition { bags })
    }

    /// Coarsening into consecutive runs of the given lengths.
    pub fn coarsen_runs(&self, runs: &[usize]) -> Result<Self> {
        if runs.iter().sum::<usize>() != self.order() || runs.contains(&0) {
            return arg("run lengths must be positive and sum to the order");
        }
        let mut at = 0;
        let mut bags = Vec::new();
        for &r in runs {
            bags.push(self.bags[at..at + r].iter().flatten().copied().collect());
            at += r;
        }
        Ok(PathDecomposition { bags })
    }

    /// Restriction to nodes `lo..=hi`: the end nodes absorb everything
    /// before and after them.
    pub fn restrict(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo > hi || hi >= self.order() {
            return arg("restriction interval out of range");
        }
        let mut runs = Vec::new();
        if lo == hi {
            runs.push(self.order());
        } else {
            runs.push(lo + 1);
            runs.extend(std::iter::repeat_n(1, hi - lo - 1));
            runs.push(self.order() - hi);
        }
        self.coarsen_runs(&runs)
    }
}

/// Exact search for a proper decomposition of width at most `w` by the
/// vertex separation formulation. At most `budget` boundary states are
/// explored; beyond that the answer is inconclusive.
pub fn find_path_decomposition(g: &Multigraph, w: usize, budget: Option<usize>) -> Result<Option<PathDecomposition>> {
    let n = g.n();
    if n > 64 {
        return Err(Error::Scale("exact path-width search supports at most 64 vertices".into()));
    }
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).into_iter().filter(|&u| u != v).fold(0u64, |m, u| m | 1 << u))
        .collect();
    let boundary = |s: u64| (0..n).filter(|&v| s >> v & 1 == 1 && nbr[v] & !s != 0).count();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut dead: HashSet<u64> = HashSet::new();
    let mut order = Vec::new();
    let budget = budget.unwrap_or(usize::MAX);
    let mut explored = 0usize;

    fn dfs(
        s: u64,
        full: u64,
        n: usize,
        w: usize,
        boundary: &dyn Fn(u64) -> usize,
        dead: &mut HashSet<u64>,
        order: &mut Vec<Vertex>,
        explored: &mut usize,
        budget: usize,
    ) -> Result<bool> {
        if s == full {
            return Ok(true);
        }
        if dead.contains(&s) {
            return Ok(false);
        }
        *explored += 1;
        if *explored > budget {
            return Err(Error::Inconclusive(format!("path-width search exceeded {budget} states")));
        }
        for v in 0..n {
            if s >> v & 1 == 1 {
                continue;
            }
            let t = s | 1 << v;
            // bag of v is the boundary of s plus v itself
            if boundary(s) + 1 > w + 1 || boundary(t) > w {
                continue;
            }
            order.push(v);
            if dfs(t, full, n, w, boundary, dead, order, explored, budget)? {
                return Ok(true);
            }
            order.pop();
        }
        dead.insert(s);
        Ok(false)
    }

    if n == 0 {
        return Ok(Some(PathDecomposition { bags: vec![Bag::new()] }));
    }
    if !dfs(0, full, n, w, &boundary, &mut dead, &mut order, &mut explored, budget)? {
        return Ok(None);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let bags = (0..n)
        .map(|i| {
            let mut bag: Bag = order[..i]
                .iter()
                .copied()
                .filter(|&u| (0..n).any(|x| nbr[u] >> x & 1 == 1 && pos[x] >= i))
                .collect();
            bag.insert(order[i]);
            bag
        })
        .collect();
    Ok(Some(PathDecomposition { bags }.make_proper()))
}

/// Exact path-width.
pub fn pathwidth(g: &Multigraph) -> usize {
    (0..).find(|&w| find_path_decomposition(g, w, None).unwrap().is_some()).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeClass {
    /// `a` vertex-disjoint `L(x)`-`R(x)` paths inside the bag.
    Unbroken { paths: Vec<Vec<Vertex>> },
    /// Separation `(A, B)` of the bag with `L(x) ⊆ A`, `R(x) ⊆ B` and no
    /// edge between `A \ B` and `B \ A`; absent when no separation of order
    /// below `a` exists.
    Broken { separation: Option<(Bag, Bag)> },
}

impl NodeClass {
    pub fn is_unbroken(&self) -> bool {
        matches!(self, NodeClass::Unbroken { .. })
    }
}

/// Classifies the interior nodes `1..order-1`; entry `i` belongs to node `i + 1`.
pub fn classify_nodes(g: &Multigraph, d: &PathDecomposition, a: usize) -> Vec<NodeClass> {
    let t = d.order();
    if t < 3 {
        return Vec::new();
    }
    (1..t - 1).map(|x| classify(g, d, x, a)).collect()
}

fn classify(g: &Multigraph, d: &PathDecomposition, x: usize, a: usize) -> NodeClass {
    let bag = &d.bags[x];
    let (l, r) = (d.left(x), d.right(x));
    let flow = max_vertex_disjoint_paths(g, &l, &r, Some(bag));
    if l.len() == a && r.len() == a && flow.count >= a {
        return NodeClass::Unbroken { paths: flow.paths.into_iter().take(a).collect() };
    }
    if flow.count >= a {
        return NodeClass::Broken { separation: None };
    }
    let sep = flow.separator;
    let mut side: Bag = l.difference(&sep).copied().collect();
    let mut stack: Vec<Vertex> = side.iter().copied().collect();
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v) {
            if bag.contains(&u) && !sep.contains(&u) && side.insert(u) {
                stack.push(u);
            }
        }
    }
    let a_side: Bag = side.union(&sep).copied().collect();
    let b_side: Bag = bag.difference(&side).copied().collect();
    NodeClass::Broken { separation: Some((a_side, b_side)) }
}

/// Checks a broken node's certificate: covering, containment of `L` and
/// `R`, order below `a` and no crossing edge.
pub fn check_separation(g: &Multigraph, d: &PathDecomposition, x: usize, a: usize, sep: &(Bag, Bag)) -> bool {
    let (sa, sb) = sep;
    let union: Bag = sa.union(sb).copied().collect();
    let only_a: Bag = sa.difference(sb).copied().collect();
    let only_b: Bag = sb.difference(sa).copied().collect();
    union == d.bags[x]
        && d.left(x).is_subset(sa)
        && d.right(x).is_subset(sb)
        && sa.intersection(sb).count() < a
        && !g.edges().iter().any(|&(u, v)| {
            (only_a.contains(&u) && only_b.contains(&v)) || (only_a.contains(&v) && only_b.contains(&u))
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedRefinement {
    pub p: usize,
    pub decomposition: PathDecomposition,
    /// Interior width of the result.
    pub width: usize,
    /// The result is shorter than `f(width)`.
    pub below_threshold: bool,
    /// `(adhesion, interior width, order)` at every induction step.
    pub trace: Vec<(usize, usize, usize)>,
}

/// Induction on the adhesion: keep a run of `f(w)` consecutive unbroken
/// nodes if one exists, otherwise split every broken node along its
/// separation and merge the pieces between broken nodes, which lowers the
/// adhesion.
pub fn refine_to_linked(g: &Multigraph, d: &PathDecomposition, f: &dyn Fn(usize) -> usize) -> Result<LinkedRefinement> {
    if let Some(v) = d.violations(g).first() {
        return Err(Error::Precondition(format!("invalid decomposition: {v}")));
    }
    let mut cur = d.clone().make_proper();
    let mut trace = Vec::new();
    loop {
        let a = cur.adhesion();
        let w = cur.interior_width();
        trace.push((a, w, cur.order()));
        if a == 0 || cur.order() < 3 {
            let p = cur.linkedness(g).unwrap_or(0);
            let width = cur.interior_width();
            return Ok(LinkedRefinement {
                p,
                below_threshold: cur.order() < f(width) || cur.linkedness(g).is_none(),
                width,
                decomposition: cur,
                trace,
            });
        }
        let classes = classify_nodes(g, &cur, a);
        // longest run of unbroken interior nodes
        let (mut best, mut run_start, mut best_start) = (0usize, 0usize, 0usize);
        for (i, c) in classes.iter().enumerate() {
            if c.is_unbroken() {
                if i == 0 || !classes[i - 1].is_unbroken() {
                    run_start = i;
                }
                if i + 1 - run_start > best {
                    best = i + 1 - run_start;
                    best_start = run_start;
                }
            }
        }
        let need = f(w).max(1);
        let broken: Vec<usize> = (0..classes.len()).filter(|&i| !classes[i].is_unbroken()).map(|i| i + 1).collect();
        if best >= need || broken.is_empty() {
            let (lo, hi) = (best_start + 1, best_start + best);
            let r = cur.restrict(lo, hi)?.make_proper();
            if let Some(p) = r.linkedness(g) {
                let width = r.interior_width();
                trace.push((r.adhesion(), width, r.order()));
                return Ok(LinkedRefinement {
                    p,
                    below_threshold: r.order() < f(width),
                    width,
                    decomposition: r,
                    trace,
                });
            }
        }
        let next = split_broken(&cur, &classes, &broken);
        if next.adhesion() >= a {
            return Err(Error::Structure("merging around broken nodes did not lower the adhesion".into()));
        }
        cur = next.make_proper();
    }
}

fn split_broken(d: &PathDecomposition, classes: &[NodeClass], broken: &[usize]) -> PathDecomposition {
    // bags with every broken node replaced by its two sides
    let mut pieces: Vec<Bag> = Vec::new();
    let mut cut_after: Vec<usize> = Vec::new();
    for (x, bag) in d.bags.iter().enumerate() {
        match broken.contains(&x).then(|| &classes[x - 1]) {
            Some(NodeClass::Broken { separation: Some((sa, sb)) }) => {
                pieces.push(sa.clone());
                cut_after.push(pieces.len());
                pieces.push(sb.clone());
            }
            _ => pieces.push(bag.clone()),
        }
    }
    let mut runs = Vec::new();
    let mut prev = 0;
    for c in cut_after {
        runs.push(c - prev);
        prev = c;
    }
    runs.push(pieces.len() - prev);
    PathDecomposition { bags: pieces }.coarsen_runs(&runs).expect("runs cover the pieces")
}

pub mod families {
    use super::*;

    /// Decomposition of `graph::families::ladder(k)` with one square per bag.
    pub fn ladder(k: usize) -> PathDecomposition {
        PathDecomposition::from_lists(&(0..k - 1).map(|i| vec![i, i + 1, k + i, k + i + 1]).collect::<Vec<_>>())
    }

    /// Width-2 decomposition of `cycle(n)` keeping vertex 0 in every bag.
    pub fn cycle(n: usize) -> PathDecomposition {
        PathDecomposition::from_lists(&(1..n - 1).map(|i| vec![0, i, i + 1]).collect::<Vec<_>>())
    }

    /// Decomposition of `path(n)` with one edge per bag.
    pub fn path(n: usize) -> PathDecomposition {
        PathDecomposition::from_lists(&(0..n - 1).map(|i| vec![i, i + 1]).collect::<Vec<_>>())
    }

    /// Decomposition of `circular_ladder(k)` carrying rung 0 through every bag.
    pub fn circular_ladder(k: usize) -> PathDecomposition {
        PathDecomposition::from_lists(
            &(1..k - 1).map(|i| vec![0, k, i, i + 1, k + i, k + i + 1]).collect::<Vec<_>>(),
        )
    }
}
