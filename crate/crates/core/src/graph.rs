//! Multigraphs with loops and parallel edges, rotation systems and faces.
//!
//! Vertices are `0..n`. Edge `e` owns the two darts `2e` (leaving its first
//! endpoint) and `2e + 1` (leaving its second endpoint), so loops and
//! parallel edges need no special casing in face walks.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;
pub type Dart = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> EdgeId {
    d >> 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<EdgeId> {
        if a >= self.n || b >= self.n {
            return Err(Error::Structure(format!(
                "edge {a}-{b} references a vertex outside 0..{}",
                self.n
            )));
        }
        self.edges.push((a, b));
        Ok(self.edges.len() - 1)
    }

    /// Tail vertex of a dart.
    pub fn tail(&self, d: Dart) -> Vertex {
        let (a, b) = self.edges[edge_of(d)];
        if d & 1 == 0 {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.tail(twin(d))
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        a == b
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Darts leaving each vertex, in dart order.
    pub fn dart_lists(&self) -> Vec<Vec<Dart>> {
        let mut out = vec![Vec::new(); self.n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            out[a].push(2 * e);
            out[b].push(2 * e + 1);
        }
        out
    }

    /// Adjacency lists of (neighbour, edge) pairs; a loop appears twice.
    pub fn adjacency(&self) -> Vec<Vec<(Vertex, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .filter(|&u| u != v)
            .collect()
    }

    pub fn multiplicity(&self, a: Vertex, b: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
            .count()
    }

    pub fn max_multiplicity(&self) -> usize {
        let mut counts = std::collections::HashMap::new();
        for &(a, b) in &self.edges {
            if a != b {
                *counts.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
            }
        }
        counts.values().copied().max().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|&(a, b)| a != b) && self.max_multiplicity() <= 1
    }

    /// Copy without edge `e`; later edge ids shift down by one.
    pub fn without_edge(&self, e: EdgeId) -> Multigraph {
        let mut g = self.clone();
        g.edges.remove(e);
        g
    }

    pub fn without_edges(&self, removed: &BTreeSet<EdgeId>) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(e, _)| !removed.contains(e))
                .map(|(_, &ab)| ab)
                .collect(),
        }
    }

    /// Replace edge `e` by a path of `k + 1` edges through `k` new vertices.
    /// The first new edge keeps id `e`; the rest are appended.
    pub fn subdivide(&self, e: EdgeId, k: usize) -> Multigraph {
        let mut g = self.clone();
        let (a, b) = g.edges[e];
        let mut prev = a;
        for i in 0..k {
            let v = g.add_vertex();
            if i == 0 {
                g.edges[e] = (a, v);
            } else {
                g.edges.push((prev, v));
            }
            prev = v;
        }
        if k > 0 {
            g.edges.push((prev, b));
        }
        g
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in order.
    pub fn induced(&self, keep: &[Vertex]) -> (Multigraph, Vec<Option<Vertex>>) {
        let mut map = vec![None; self.n];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        let mut g = Multigraph::new(keep.len());
        for &(a, b) in &self.edges {
            if let (Some(x), Some(y)) = (map[a], map[b]) {
                g.edges.push((x, y));
            }
        }
        (g, map)
    }

    /// Drop isolated vertices, relabelling the rest in order.
    pub fn without_isolated(&self) -> Multigraph {
        let keep: Vec<Vertex> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep).0
    }

    /// Apply a vertex permutation `perm[old] = new`.
    pub fn relabel(&self, perm: &[Vertex]) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect(),
        }
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(u, _) in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Connected, at least three vertices and no cut-vertex; `K2` with
    /// parallel edges also counts.
    pub fn is_two_connected(&self) -> bool {
        if self.n < 2 || !self.is_connected() {
            return false;
        }
        if self.n == 2 {
            return self.edges.iter().filter(|&&(a, b)| a != b).count() >= 2;
        }
        blocks(self).cut_vertices.is_empty()
    }

    /// Underlying simple graph (loops dropped) with the multiplicity of each
    /// simple edge and, for every original edge, its simple-edge index.
    pub fn underlying_simple(&self) -> (Multigraph, Vec<usize>, Vec<Option<usize>>) {
        let mut index = std::collections::HashMap::new();
        let mut simple = Multigraph::new(self.n);
        let mut weights = Vec::new();
        let mut class = Vec::with_capacity(self.m());
        for &(a, b) in &self.edges {
            if a == b {
                class.push(None);
                continue;
            }
            let key = (a.min(b), a.max(b));
            let id = *index.entry(key).or_insert_with(|| {
                simple.edges.push(key);
                weights.push(0);
                simple.edges.len() - 1
            });
            weights[id] += 1;
            class.push(Some(id));
        }
        (simple, weights, class)
    }
}

/// Standard families used throughout tests, fixtures and the CLI.
pub mod families {
    use super::Multigraph;

    pub fn complete(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.edges.push((i, j));
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
        let mut g = Multigraph::new(a + b);
        for i in 0..a {
            for j in 0..b {
                g.edges.push((i, a + j));
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 0..n {
            g.edges.push((i, (i + 1) % n));
        }
        g
    }

    pub fn path(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 1..n {
            g.edges.push((i - 1, i));
        }
        g
    }

    pub fn star(leaves: usize) -> Multigraph {
        let mut g = Multigraph::new(leaves + 1);
        for i in 1..=leaves {
            g.edges.push((0, i));
        }
        g
    }

    pub fn petersen() -> Multigraph {
        let mut g = Multigraph::new(10);
        for i in 0..5 {
            g.edges.push((i, (i + 1) % 5));
            g.edges.push((i, i + 5));
            g.edges.push((5 + i, 5 + (i + 2) % 5));
        }
        g
    }

    /// Circular ladder (prism) `CL_k`: outer cycle `0..k`, inner cycle
    /// `k..2k`, spoke `i -- k + i`.
    pub fn circular_ladder(k: usize) -> Multigraph {
        let mut g = Multigraph::new(2 * k);
        for i in 0..k {
            g.edges.push((i, (i + 1) % k));
        }
        for i in 0..k {
            g.edges.push((k + i, k + (i + 1) % k));
        }
        for i in 0..k {
            g.edges.push((i, k + i));
        }
        g
    }

    /// Ladder strip with `k` rungs: rails `0..k` and `k..2k`, rung `i -- k + i`.
    pub fn ladder(k: usize) -> Multigraph {
        let mut g = Multigraph::new(2 * k);
        for i in 1..k {
            g.edges.push((i - 1, i));
            g.edges.push((k + i - 1, k + i));
        }
        for i in 0..k {
            g.edges.push((i, k + i));
        }
        g
    }

    /// Wheel with hub `0` and rim `1..=k`.
    pub fn wheel(k: usize) -> Multigraph {
        let mut g = Multigraph::new(k + 1);
        for i in 0..k {
            g.edges.push((1 + i, 1 + (i + 1) % k));
        }
        for i in 0..k {
            g.edges.push((0, 1 + i));
        }
        g
    }

    pub fn cube() -> Multigraph {
        let mut g = Multigraph::new(8);
        for v in 0..8usize {
            for bit in 0..3 {
                let u = v ^ (1 << bit);
                if v < u {
                    g.edges.push((v, u));
                }
            }
        }
        g
    }

    /// `k` diamonds in a chain: hubs `0..=k`, and for diamond `i` two
    /// middle vertices joined to hubs `i` and `i + 1`.
    pub fn diamond_chain(k: usize) -> Multigraph {
        let mut g = Multigraph::new(k + 1);
        for i in 0..k {
            for _ in 0..2 {
                let v = g.add_vertex();
                g.edges.push((i, v));
                g.edges.push((v, i + 1));
            }
        }
        g
    }
}

/// Rotation system: for each vertex the clockwise cyclic order of its darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedMultigraph {
    pub graph: Multigraph,
    pub rotation: Vec<Vec<Dart>>,
    pub outer_face: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Darts in walk order; dart `d` contributes the pair `(tail(d), edge(d))`.
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn walk(&self, g: &Multigraph) -> Vec<(Vertex, EdgeId)> {
        self.darts.iter().map(|&d| (g.tail(d), edge_of(d))).collect()
    }

    /// Distinct vertices in first-visit order along the walk.
    pub fn vertices(&self, g: &Multigraph) -> Vec<Vertex> {
        let mut seen = BTreeSet::new();
        self.darts
            .iter()
            .map(|&d| g.tail(d))
            .filter(|v| seen.insert(*v))
            .collect()
    }
}

impl EmbeddedMultigraph {
    /// Checks that every dart appears exactly once at its own tail.
    pub fn new(graph: Multigraph, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::Structure(format!(
                "rotation covers {} vertices, graph has {}",
                rotation.len(),
                graph.n()
            )));
        }
        let mut seen = vec![false; 2 * graph.m()];
        for (v, rot) in rotation.iter().enumerate() {
            for &d in rot {
                if d >= seen.len() {
                    return Err(Error::Structure(format!("dart {d} at vertex {v} does not exist")));
                }
                if graph.tail(d) != v {
                    return Err(Error::Structure(format!(
                        "dart {d} listed at {v} but leaves {}",
                        graph.tail(d)
                    )));
                }
                if std::mem::replace(&mut seen[d], true) {
                    return Err(Error::Structure(format!("dart {d} listed twice")));
                }
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::Structure(format!("dangling dart {d} (edge {})", edge_of(d))));
        }
        Ok(EmbeddedMultigraph { graph, rotation, outer_face: None })
    }

    /// Position of each dart within its tail's rotation.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; 2 * self.graph.m()];
        for rot in &self.rotation {
            for (i, &d) in rot.iter().enumerate() {
                pos[d] = i;
            }
        }
        pos
    }

    /// Clockwise successor of `d` around its tail.
    pub fn succ(&self, d: Dart, pos: &[usize]) -> Dart {
        let rot = &self.rotation[self.graph.tail(d)];
        rot[(pos[d] + 1) % rot.len()]
    }

    pub fn pred(&self, d: Dart, pos: &[usize]) -> Dart {
        let rot = &self.rotation[self.graph.tail(d)];
        rot[(pos[d] + rot.len() - 1) % rot.len()]
    }

    /// Face permutation: the dart following `d` along its face.
    pub fn face_next(&self, d: Dart, pos: &[usize]) -> Dart {
        self.succ(twin(d), pos)
    }

    pub fn faces(&self) -> Vec<Face> {
        let pos = self.positions();
        let mut seen = vec![false; 2 * self.graph.m()];
        let mut faces = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                darts.push(d);
                d = self.face_next(d, &pos);
            }
            faces.push(Face { id: faces.len(), darts });
        }
        faces
    }

    /// Face id of every dart.
    pub fn dart_faces(&self, faces: &[Face]) -> Vec<usize> {
        let mut out = vec![0; 2 * self.graph.m()];
        for f in faces {
            for &d in &f.darts {
                out[d] = f.id;
            }
        }
        out
    }

    /// Euler check per connected component with at least one edge.
    pub fn is_plane(&self) -> bool {
        let faces = self.faces();
        let comps = self.graph.components();
        let mut comp_of = vec![0; self.graph.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut v = vec![0i64; comps.len()];
        let mut e = vec![0i64; comps.len()];
        let mut f = vec![0i64; comps.len()];
        for (i, c) in comps.iter().enumerate() {
            v[i] = c.len() as i64;
        }
        for &(a, _) in self.graph.edges() {
            e[comp_of[a]] += 1;
        }
        for face in &faces {
            f[comp_of[self.graph.tail(face.darts[0])]] += 1;
        }
        (0..comps.len()).all(|i| e[i] == 0 || v[i] - e[i] + f[i] == 2)
    }

    /// Mirror image: every rotation reversed.
    pub fn reflected(&self) -> EmbeddedMultigraph {
        EmbeddedMultigraph {
            graph: self.graph.clone(),
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
            outer_face: None,
        }
    }

    /// Embedding of the subgraph keeping only `kept` edges (ids renumbered
    /// in increasing order) and all vertices.
    pub fn restrict_edges(&self, kept: &[bool]) -> (EmbeddedMultigraph, Vec<Option<EdgeId>>) {
        let mut map = vec![None; self.graph.m()];
        let mut g = Multigraph::new(self.graph.n());
        for (e, &(a, b)) in self.graph.edges().iter().enumerate() {
            if kept[e] {
                map[e] = Some(g.edges.len());
                g.edges.push((a, b));
            }
        }
        let rotation = self
            .rotation
            .iter()
            .map(|rot| {
                rot.iter()
                    .filter_map(|&d| map[edge_of(d)].map(|ne| 2 * ne + (d & 1)))
                    .collect()
            })
            .collect();
        (EmbeddedMultigraph { graph: g, rotation, outer_face: None }, map)
    }

    /// Embedding of the subgraph induced by `keep` (relabelled in order).
    pub fn induced(&self, keep: &[Vertex]) -> (EmbeddedMultigraph, Vec<Option<Vertex>>) {
        let mut vmap = vec![None; self.graph.n()];
        for (i, &v) in keep.iter().enumerate() {
            vmap[v] = Some(i);
        }
        let kept: Vec<bool> = self
            .graph
            .edges()
            .iter()
            .map(|&(a, b)| vmap[a].is_some() && vmap[b].is_some())
            .collect();
        let (sub, _) = self.restrict_edges(&kept);
        let mut g = Multigraph::new(keep.len());
        for &(a, b) in sub.graph.edges() {
            g.edges.push((vmap[a].unwrap(), vmap[b].unwrap()));
        }
        let rotation = keep.iter().map(|&v| sub.rotation[v].clone()).collect();
        (EmbeddedMultigraph { graph: g, rotation, outer_face: None }, vmap)
    }

    /// Subdivide edge `e` once; the new vertex takes the last id.
    pub fn subdivide(&self, e: EdgeId) -> EmbeddedMultigraph {
        let g = self.graph.subdivide(e, 1);
        let new_e = g.m() - 1;
        // edge e becomes (a, v), new edge (v, b): dart 2e+1 now leaves v,
        // the b-end is carried by dart 2*new_e + 1.
        let mut rotation = self.rotation.clone();
        for rot in rotation.iter_mut() {
            for d in rot.iter_mut() {
                if *d == 2 * e + 1 {
                    *d = 2 * new_e + 1;
                }
            }
        }
        rotation.push(vec![2 * e + 1, 2 * new_e]);
        EmbeddedMultigraph { graph: g, rotation, outer_face: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex set of each block (sorted).
    pub blocks: Vec<Vec<Vertex>>,
    /// Edge ids of each block, parallel to `blocks`.
    pub block_edges: Vec<Vec<EdgeId>>,
    pub cut_vertices: BTreeSet<Vertex>,
}

/// Block / cut-vertex decomposition (Hopcroft–Tarjan). Loops form no block
/// of their own; they are attached to a block containing their vertex, or to
/// a singleton block when the vertex has no other edges.
pub fn blocks(g: &Multigraph) -> BlockDecomposition {
    let n = g.n();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut used = vec![false; g.m()];
    let mut out_blocks: Vec<Vec<EdgeId>> = Vec::new();
    let mut cut = BTreeSet::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent edge, next adjacency index)
        let mut stack: Vec<(Vertex, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let (u, e) = adj[v][*idx];
                *idx += 1;
                if Some(e) == pe || used[e] || u == v {
                    continue;
                }
                used[e] = true;
                edge_stack.push(e);
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    stack.push((u, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != root {
                            cut.insert(p);
                        } else {
                            root_children += 1;
                        }
                        let pe = pe.unwrap();
                        let mut blk = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            blk.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        out_blocks.push(blk);
                    }
                }
            }
        }
        if root_children > 1 {
            cut.insert(root);
        }
    }

    let mut blocks: Vec<Vec<Vertex>> = out_blocks
        .iter()
        .map(|es| {
            let s: BTreeSet<Vertex> = es
                .iter()
                .flat_map(|&e| {
                    let (a, b) = g.endpoints(e);
                    [a, b]
                })
                .collect();
            s.into_iter().collect()
        })
        .collect();
    let mut block_edges = out_blocks;
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a != b {
            continue;
        }
        match blocks.iter().position(|bl| bl.contains(&a)) {
            Some(i) => block_edges[i].push(e),
            None => {
                blocks.push(vec![a]);
                block_edges.push(vec![e]);
            }
        }
    }
    for es in block_edges.iter_mut() {
        es.sort_unstable();
    }
    BlockDecomposition { blocks, block_edges, cut_vertices: cut }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn loop_bounds_two_faces() {
        let g = Multigraph::from_edges(1, &[(0, 0)]).unwrap();
        let emb = EmbeddedMultigraph::new(g, vec![vec![0, 1]]).unwrap();
        assert_eq!(emb.faces().len(), 2);
        assert!(emb.is_plane());
    }

    #[test]
    fn dangling_dart_is_rejected() {
        let g = path(2);
        assert!(EmbeddedMultigraph::new(g, vec![vec![0], vec![]]).is_err());
    }

    #[test]
    fn blocks_of_small_graphs() {
        let bowtie = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let b = blocks(&bowtie);
        assert_eq!(b.blocks.len(), 2);
        assert_eq!(b.cut_vertices, BTreeSet::from([2]));

        let b = blocks(&complete(5));
        assert_eq!(b.blocks.len(), 1);
        assert!(b.cut_vertices.is_empty());

        let b = blocks(&path(4));
        assert_eq!(b.blocks.len(), 3);
        assert_eq!(b.cut_vertices.len(), 2);
    }

    #[test]
    fn two_connectivity() {
        assert!(complete(4).is_two_connected());
        assert!(cycle(5).is_two_connected());
        assert!(!path(3).is_two_connected());
        assert!(Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap().is_two_connected());
    }

    #[test]
    fn subdivide_keeps_counts() {
        let g = complete(4).subdivide(0, 3);
        assert_eq!(g.n(), 7);
        assert_eq!(g.m(), 9);
        assert_eq!(g.degree(4), 2);
    }
}
