//! Unit-capacity max flow for disjoint path packing with Menger certificates.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{arg, Result};
use crate::graph::{EdgeId, Multigraph, Vertex};

const INF: i32 = i32::MAX / 4;

struct Network {
    head: Vec<usize>,
    cap: Vec<i32>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { head: Vec::new(), cap: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    /// Adds arc u->v with capacity `c`; returns the arc index (its reverse is `idx ^ 1`).
    fn arc(&mut self, u: usize, v: usize, c: i32) -> usize {
        let i = self.head.len();
        self.head.push(v);
        self.cap.push(c);
        self.out[u].push(i);
        self.head.push(u);
        self.cap.push(0);
        self.out[v].push(i + 1);
        i
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i32 {
        let mut total = 0;
        loop {
            let mut prev = vec![usize::MAX; self.out.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.out.len()];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &a in &self.out[u] {
                    let v = self.head[a];
                    if self.cap[a] > 0 && !seen[v] {
                        seen[v] = true;
                        prev[v] = a;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut v = t;
            let mut push = INF;
            while v != s {
                let a = prev[v];
                push = push.min(self.cap[a]);
                v = self.head[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = prev[v];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                v = self.head[a ^ 1];
            }
            total += push;
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let v = self.head[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Edge-disjoint path family with a matching edge cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePaths {
    pub count: usize,
    /// Each path as its sequence of (vertex, edge-to-next) steps ending in a bare vertex.
    pub paths: Vec<Vec<Vertex>>,
    pub path_edges: Vec<Vec<EdgeId>>,
    pub cut: BTreeSet<EdgeId>,
}

/// Maximum number of pairwise edge-disjoint paths from `sources` to `sinks`
/// avoiding `forbidden`, with a witness family and a minimum edge cut.
/// Edges with `allowed[e] == false` are ignored when a mask is given.
pub fn max_edge_disjoint_paths(
    g: &Multigraph,
    sources: &BTreeSet<Vertex>,
    sinks: &BTreeSet<Vertex>,
    forbidden: &BTreeSet<Vertex>,
) -> Result<EdgePaths> {
    edge_disjoint_masked(g, sources, sinks, forbidden, None)
}

pub fn edge_disjoint_masked(
    g: &Multigraph,
    sources: &BTreeSet<Vertex>,
    sinks: &BTreeSet<Vertex>,
    forbidden: &BTreeSet<Vertex>,
    allowed: Option<&[bool]>,
) -> Result<EdgePaths> {
    if sources.is_empty() || sinks.is_empty() {
        return arg("sources and sinks must be non-empty");
    }
    if sources.iter().chain(sinks).any(|v| forbidden.contains(v)) {
        return arg("sources and sinks must avoid forbidden vertices");
    }
    if sources.intersection(sinks).next().is_some() {
        return arg("sources and sinks must be disjoint");
    }
    let n = g.n();
    let (s, t) = (n, n + 1);
    let mut net = Network::new(n + 2);
    let mut arcs = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == b || forbidden.contains(&a) || forbidden.contains(&b) {
            continue;
        }
        if allowed.is_some_and(|m| !m[e]) {
            continue;
        }
        let f = net.arc(a, b, 1);
        let r = net.arc(b, a, 1);
        arcs.push((e, f, r));
    }
    for &v in sources {
        net.arc(s, v, INF);
    }
    for &v in sinks {
        net.arc(v, t, INF);
    }
    let count = net.max_flow(s, t) as usize;
    let reach = net.reachable(s);
    let cut: BTreeSet<EdgeId> = arcs
        .iter()
        .filter(|&&(e, _, _)| {
            let (a, b) = g.endpoints(e);
            reach[a] != reach[b]
        })
        .map(|&(e, _, _)| e)
        .collect();

    // net flow per undirected edge: +1 a->b, -1 b->a, 0 unused
    let mut adj_flow: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); n];
    for &(e, f, r) in &arcs {
        let (a, b) = g.endpoints(e);
        let used_f = 1 - net.cap[f];
        let used_r = 1 - net.cap[r];
        match used_f - used_r {
            1 => adj_flow[a].push((b, e)),
            -1 => adj_flow[b].push((a, e)),
            _ => {}
        }
    }
    let mut paths = Vec::new();
    let mut path_edges = Vec::new();
    for &src in sources {
        loop {
            let Some(&(_, _)) = adj_flow[src].last() else { break };
            let mut verts = vec![src];
            let mut es = Vec::new();
            let mut v = src;
            while !sinks.contains(&v) {
                let (u, e) = adj_flow[v].pop().expect("flow is conserved");
                es.push(e);
                verts.push(u);
                v = u;
            }
            // drop cycles so that the path is simple
            let (verts, es) = simplify_walk(verts, es);
            paths.push(verts);
            path_edges.push(es);
        }
    }
    debug_assert_eq!(paths.len(), count);
    Ok(EdgePaths { count, paths, path_edges, cut })
}

fn simplify_walk(verts: Vec<Vertex>, es: Vec<EdgeId>) -> (Vec<Vertex>, Vec<EdgeId>) {
    let mut vs: Vec<Vertex> = Vec::new();
    let mut out_e: Vec<EdgeId> = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        if let Some(p) = vs.iter().position(|&x| x == v) {
            vs.truncate(p + 1);
            out_e.truncate(p);
        } else {
            vs.push(v);
        }
        if i < es.len() {
            out_e.push(es[i]);
        }
    }
    out_e.truncate(vs.len() - 1);
    (vs, out_e)
}

/// Vertex-disjoint path family with a matching vertex separator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPaths {
    pub count: usize,
    pub paths: Vec<Vec<Vertex>>,
    /// Vertices meeting every source-sink path; `|separator| == count`.
    pub separator: BTreeSet<Vertex>,
}

/// Maximum number of pairwise vertex-disjoint paths from `sources` to
/// `sinks` inside the vertex set `within` (all vertices when `None`).
/// A vertex in both sets forms a trivial path.
pub fn max_vertex_disjoint_paths(
    g: &Multigraph,
    sources: &BTreeSet<Vertex>,
    sinks: &BTreeSet<Vertex>,
    within: Option<&BTreeSet<Vertex>>,
) -> VertexPaths {
    let n = g.n();
    let inside = |v: Vertex| within.is_none_or(|w| w.contains(&v));
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    let mut split = vec![usize::MAX; n];
    for v in 0..n {
        if inside(v) {
            split[v] = net.arc(2 * v, 2 * v + 1, 1);
        }
    }
    for &(a, b) in g.edges() {
        if a != b && inside(a) && inside(b) {
            net.arc(2 * a + 1, 2 * b, 1);
            net.arc(2 * b + 1, 2 * a, 1);
        }
    }
    for &v in sources.iter().filter(|&&v| inside(v)) {
        net.arc(s, 2 * v, INF);
    }
    for &v in sinks.iter().filter(|&&v| inside(v)) {
        net.arc(2 * v + 1, t, INF);
    }
    let count = net.max_flow(s, t) as usize;
    let reach = net.reachable(s);
    let separator: BTreeSet<Vertex> =
        (0..n).filter(|&v| inside(v) && reach[2 * v] && !reach[2 * v + 1]).collect();

    // successor of each used vertex along the flow
    let mut next = vec![Vec::new(); n];
    for v in 0..n {
        if !inside(v) {
            continue;
        }
        for &a in &net.out[2 * v + 1] {
            let h = net.head[a];
            if a % 2 == 0 && h < 2 * n && h.is_multiple_of(2) && net.cap[a] == 0 {
                next[v].push(h / 2);
            }
        }
    }
    let mut paths = Vec::new();
    for &src in sources.iter().filter(|&&v| inside(v)) {
        if net.cap[split[src]] != 0 {
            continue;
        }
        let mut p = vec![src];
        let mut v = src;
        let mut guard = 0;
        while !sinks.contains(&v) || (p.len() == 1 && !sinks.contains(&src)) {
            match next[v].pop() {
                Some(u) => {
                    p.push(u);
                    v = u;
                }
                None => break,
            }
            guard += 1;
            if guard > n + 1 {
                break;
            }
        }
        if sinks.contains(&v) {
            paths.push(p);
        }
    }
    VertexPaths { count, paths, separator }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn set(v: &[Vertex]) -> BTreeSet<Vertex> {
        v.iter().copied().collect()
    }

    #[test]
    fn parallel_edges() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[1]), &set(&[])).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.cut.len(), 3);
    }

    #[test]
    fn antipodal_cycle() {
        let r = max_edge_disjoint_paths(&cycle(6), &set(&[0]), &set(&[3]), &set(&[])).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.paths.len(), 2);
        assert_eq!(r.cut.len(), 2);
    }

    #[test]
    fn empty_sources_rejected() {
        assert!(max_edge_disjoint_paths(&cycle(4), &set(&[]), &set(&[1]), &set(&[])).is_err());
    }

    #[test]
    fn vertex_disjoint_in_ladder() {
        let g = ladder(5);
        let r = max_vertex_disjoint_paths(&g, &set(&[0, 5]), &set(&[4, 9]), None);
        assert_eq!(r.count, 2);
        assert_eq!(r.paths.len(), 2);
        assert_eq!(r.separator.len(), 2);
    }

    #[test]
    fn forbidden_vertices_block() {
        let r = max_edge_disjoint_paths(&cycle(6), &set(&[0]), &set(&[3]), &set(&[1])).unwrap();
        assert_eq!(r.count, 1);
    }
}
