//! Criticality-preserving surgery on bands, fans and necklaces.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::crossing::{is_crossing_critical_with_budget, planarize, Crossing, Drawing, Verdict};
use crate::error::{arg, Error, Result};
use crate::flow::edge_disjoint_masked;
use crate::graph::{blocks, edge_of, Dart, EdgeId, EmbeddedMultigraph, Multigraph, Vertex};
use crate::planarity::planarity_embed;
use crate::structures::{
    band_isomorphic, is_shelled, locate_band, support, tiles_of, typical_copies, Band, Ctx, Necklace, Tile,
};

/// Thresholds of the reduction lemma, with optional test overrides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPolicy {
    pub c: usize,
    pub c0: usize,
    pub min_order_override: Option<usize>,
    pub t: usize,
    pub overridden: bool,
}

impl ReductionPolicy {
    pub fn paper(c: usize) -> Self {
        ReductionPolicy { c, c0: (5 * c).div_ceil(2) + 16, min_order_override: None, t: c, overridden: false }
    }

    pub fn with_min_order(mut self, order: usize) -> Self {
        self.min_order_override = Some(order);
        self.overridden = true;
        self
    }

    pub fn with_typicality(mut self, t: usize) -> Self {
        self.t = t;
        self.overridden = self.overridden || t != self.c;
        self
    }

    /// `12 c0 + 2k` unless overridden.
    pub fn min_order(&self, k: usize) -> usize {
        self.min_order_override.unwrap_or(12 * self.c0 + 2 * k)
    }
}

impl fmt::Display for ReductionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let order = match self.min_order_override {
            Some(r) => r.to_string(),
            None => format!("12*{}+2k", self.c0),
        };
        write!(f, "policy c={} c0={} min-order={} t={}", self.c, self.c0, order, self.t)?;
        if self.overridden {
            write!(f, " (override)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedTile {
    pub tile: Tile,
    pub vertices: BTreeSet<Vertex>,
    pub edges: BTreeSet<EdgeId>,
    /// Bounding cycle `C(T)` as an edge sequence.
    pub cycle: Vec<EdgeId>,
    pub cycle_vertices: BTreeSet<Vertex>,
    pub complement_vertices: BTreeSet<Vertex>,
    pub complement_edges: BTreeSet<EdgeId>,
    /// Components of the host minus `V(X(T))`.
    pub bridge_components: usize,
}

impl ExtendedTile {
    pub fn interior_edges(&self) -> BTreeSet<EdgeId> {
        let c: BTreeSet<EdgeId> = self.cycle.iter().copied().collect();
        self.edges.difference(&c).copied().collect()
    }

    pub fn interior_vertices(&self) -> BTreeSet<Vertex> {
        self.vertices.difference(&self.cycle_vertices).copied().collect()
    }
}

/// `X(T_i)` for the tile between paths `i` and `i+1` (1-based, `2 <= i <= m-2`).
pub fn extended_tile(host: &EmbeddedMultigraph, band: &Band, i: usize) -> Result<ExtendedTile> {
    let m = band.len();
    if i < 2 || i + 2 > m {
        return arg(format!("extended tiles need 2 <= i <= m-2 (i = {i}, m = {m})"));
    }
    if !is_shelled(host, band)?[i - 1] {
        return arg(format!("tile {i} is not shelled"));
    }
    let ctx = Ctx::new(host);
    let g = &host.graph;
    let tile = tiles_of(host, band)?.swap_remove(i - 1);
    let apex = band.apex();
    let removed: BTreeSet<Vertex> =
        band.paths[i - 2].iter().chain(&band.paths[i + 1]).copied().filter(|&v| Some(v) != apex).collect();
    let kept_ids: Vec<EdgeId> = (0..g.m())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            !removed.contains(&a) && !removed.contains(&b)
        })
        .collect();
    let sub = Multigraph::from_edges(g.n(), &kept_ids.iter().map(|&e| g.endpoints(e)).collect::<Vec<_>>())?;
    let p = &band.paths[i - 1];
    let anchor = ctx.edge(p[0], p[1]).ok_or_else(|| Error::Structure("path edge missing".into()))?;
    let bd = blocks(&sub);
    let blk = bd
        .block_edges
        .iter()
        .find(|es| es.iter().any(|&e| kept_ids[e] == anchor))
        .ok_or_else(|| Error::Structure("tile is not in a block".into()))?;
    let edges: BTreeSet<EdgeId> = blk.iter().map(|&e| kept_ids[e]).collect();
    let vertices: BTreeSet<Vertex> = edges
        .iter()
        .flat_map(|&e| {
            let (a, b) = g.endpoints(e);
            [a, b]
        })
        .collect();
    if !band.paths[i - 1].iter().chain(&band.paths[i]).all(|v| vertices.contains(v)) {
        return Err(Error::Structure("extended tile misses a delimiting path".into()));
    }
    // C(T): face of X(T) containing the F1 side of a span edge
    let mask: Vec<bool> = (0..g.m()).map(|e| edges.contains(&e)).collect();
    let (xemb, map) = host.restrict_edges(&mask);
    let s = &tile.span1;
    let se = ctx.edge(s[0], s[1]).ok_or_else(|| Error::Structure("span edge missing".into()))?;
    let d1 = if ctx.dart_face[2 * se] == band.f1 { 2 * se } else { 2 * se + 1 };
    let xd = 2 * map[se].unwrap() + (d1 & 1);
    let xfaces = xemb.faces();
    let xdf = xemb.dart_faces(&xfaces);
    let back: HashMap<EdgeId, EdgeId> = map.iter().enumerate().filter_map(|(e, m)| m.map(|x| (x, e))).collect();
    let cycle: Vec<EdgeId> = xfaces[xdf[xd]].darts.iter().map(|&d| back[&edge_of(d)]).collect();
    let cycle_vertices: BTreeSet<Vertex> = xfaces[xdf[xd]].darts.iter().map(|&d| xemb.graph.tail(d)).collect();
    if cycle_vertices.len() != cycle.len() {
        return Err(Error::Structure("boundary of the extended tile is not a cycle".into()));
    }
    let interior_v: BTreeSet<Vertex> = vertices.difference(&cycle_vertices).copied().collect();
    let cyc_e: BTreeSet<EdgeId> = cycle.iter().copied().collect();
    let complement_vertices = (0..g.n()).filter(|v| !interior_v.contains(v)).collect();
    let complement_edges = (0..g.m()).filter(|e| !edges.contains(e) || cyc_e.contains(e)).collect();
    let outside: Vec<Vertex> = (0..g.n()).filter(|v| !vertices.contains(v)).collect();
    let (rest, _) = g.induced(&outside);
    let bridge_components = rest.components().len();
    if !band.is_fan() && !(1..=2).contains(&bridge_components) {
        return Err(Error::Structure(format!("{bridge_components} components outside the extended tile")));
    }
    Ok(ExtendedTile {
        tile,
        vertices,
        edges,
        cycle,
        cycle_vertices,
        complement_vertices,
        complement_edges,
        bridge_components,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Straight,
    Twisted,
}

fn cycle_edges(g: &Multigraph, c: &[Vertex]) -> Result<Vec<(EdgeId, bool)>> {
    if c.len() < 2 {
        return arg("a cycle needs at least two vertices");
    }
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for k in 0..c.len() {
        let (a, b) = (c[k], c[(k + 1) % c.len()]);
        let e = (0..g.m())
            .find(|&e| {
                let (x, y) = g.endpoints(e);
                !used.contains(&e) && ((x, y) == (a, b) || (x, y) == (b, a))
            })
            .ok_or_else(|| Error::Argument(format!("{a} and {b} are not adjacent")))?;
        used.insert(e);
        out.push((e, g.endpoints(e).0 == a));
    }
    Ok(out)
}

/// Side of the directed cycle `c` (0 or 1) holding the face left of its
/// first dart, and the side holding `other`.
fn sides(d: &Drawing, c: &[(EdgeId, bool)], other: &[(EdgeId, bool)]) -> (usize, usize) {
    let p = &d.planarization;
    let faces = p.faces();
    let df = p.dart_faces(&faces);
    let cut: BTreeSet<EdgeId> = c.iter().map(|&(e, _)| e).collect();
    let mut comp = vec![usize::MAX; faces.len()];
    let start = df[2 * c[0].0];
    comp[start] = 0;
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for &dd in &faces[f].darts {
            let h = df[dd ^ 1];
            if !cut.contains(&edge_of(dd)) && comp[h] == usize::MAX {
                comp[h] = 0;
                stack.push(h);
            }
        }
    }
    let side = |f: usize| usize::from(comp[f] != 0);
    let (e, fwd) = c[0];
    (side(df[2 * e + usize::from(!fwd)]), side(df[2 * other[0].0]))
}

/// Whether each cycle sees the other on the same side of its direction.
fn same_side(d: &Drawing, c1: &[(EdgeId, bool)], c2: &[(EdgeId, bool)]) -> Result<bool> {
    for &(e, _) in c1.iter().chain(c2) {
        if d.segments[e].len() != 1 {
            return arg(format!("edge {e} is crossed"));
        }
    }
    let (l1, o1) = sides(d, c1, c2);
    let (l2, o2) = sides(d, c2, c1);
    Ok((l1 == o1) == (l2 == o2))
}

/// Straight or twisted position of `c2` relative to `c1` in `d`, measured
/// against `reference`. Cycles are vertex sequences.
pub fn orientation(reference: &Drawing, d: &Drawing, c1: &[Vertex], c2: &[Vertex]) -> Result<Orientation> {
    if c1.iter().any(|v| c2.contains(v)) {
        return arg("cycles intersect");
    }
    let g = &reference.original;
    let (e1, e2) = (cycle_edges(g, c1)?, cycle_edges(g, c2)?);
    let a = same_side(reference, &e1, &e2)?;
    let b = same_side(d, &e1, &e2)?;
    Ok(if a == b { Orientation::Straight } else { Orientation::Twisted })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecklaceReduction {
    pub p: usize,
    pub graph: Multigraph,
    /// Old vertex to new vertex.
    pub vertex_map: Vec<Option<Vertex>>,
    pub ends: (Vertex, Vertex),
}

/// Replaces a support between `a` and `b` by `p` parallel `ab` edges, where
/// `p` is the number of edge-disjoint `a`-`b` paths inside it.
pub fn replace_support(
    g: &Multigraph,
    a: Vertex,
    b: Vertex,
    support_vertices: &BTreeSet<Vertex>,
    support_edges: &BTreeSet<EdgeId>,
) -> Result<NecklaceReduction> {
    if a == b || a >= g.n() || b >= g.n() {
        return arg("necklace ends must be two distinct vertices");
    }
    let mask: Vec<bool> = (0..g.m()).map(|e| support_edges.contains(&e)).collect();
    let p = edge_disjoint_masked(g, &BTreeSet::from([a]), &BTreeSet::from([b]), &BTreeSet::new(), Some(&mask))?.count;
    let inner: BTreeSet<Vertex> = support_vertices.iter().copied().filter(|&v| v != a && v != b).collect();
    let mut edges = Vec::new();
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        if support_edges.contains(&e) {
            continue;
        }
        if inner.contains(&x) || inner.contains(&y) {
            return arg(format!("edge {e} leaves the necklace support"));
        }
        edges.push((x, y));
    }
    edges.extend(std::iter::repeat_n((a, b), p));
    let keep: Vec<Vertex> = (0..g.n()).filter(|v| !inner.contains(v)).collect();
    let (out, vertex_map) = Multigraph::from_edges(g.n(), &edges)?.induced(&keep);
    Ok(NecklaceReduction { p, graph: out, vertex_map, ends: (a, b) })
}

/// Necklace reduction in a drawing whose planarization carries the necklace.
pub fn reduce_necklace(d: &Drawing, necklace: &Necklace) -> Result<NecklaceReduction> {
    if necklace.vertices.len() < 2 {
        return arg("a necklace needs at least two vertices");
    }
    let band = necklace.to_band();
    let tiles = tiles_of(&d.planarization, &band).map_err(|e| Error::Argument(e.to_string()))?;
    let (sv, se) = support(&tiles);
    if sv.iter().any(|v| d.crossing_vertices.contains(v)) {
        return Err(Error::Precondition("necklace support meets a crossing".into()));
    }
    if se.iter().any(|&e| e >= d.original.m() || d.segments[e].len() != 1) {
        return Err(Error::Precondition("necklace support contains a crossed edge".into()));
    }
    let (a, b) = (necklace.vertices[0], *necklace.vertices.last().unwrap());
    replace_support(&d.original, a, b, &sv, &se)
}

/// Necklace along a thread of the drawing's planarization.
pub fn necklace_of_thread(d: &Drawing, thread: &[Vertex]) -> Result<Necklace> {
    let p = &d.planarization;
    let ctx = Ctx::new(p);
    let e = ctx.edge(thread[0], thread[1]).ok_or_else(|| Error::Argument("thread is not a path".into()))?;
    let (f1, f2) = (ctx.dart_face[2 * e], ctx.dart_face[2 * e + 1]);
    if f1 == f2 {
        return arg("thread does not separate two faces");
    }
    Ok(Necklace { f1, f2, vertices: thread.to_vec() })
}

/// Maximal paths whose interior vertices have degree two, as vertex lists.
pub fn threads(g: &Multigraph) -> Vec<Vec<Vertex>> {
    let adj = g.adjacency();
    let inner = |v: Vertex| adj[v].len() == 2 && adj[v].iter().all(|&(w, _)| w != v);
    let mut used = vec![false; g.m()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if inner(s) {
            continue;
        }
        for &(w, e) in &adj[s] {
            if used[e] || !inner(w) {
                continue;
            }
            used[e] = true;
            let mut path = vec![s, w];
            let mut at = w;
            let mut via = e;
            while inner(at) {
                let &(nx, ne) = adj[at].iter().find(|&&(_, f)| f != via).unwrap();
                used[ne] = true;
                path.push(nx);
                at = nx;
                via = ne;
            }
            out.push(path);
        }
    }
    out
}

/// Suppresses every thread into a single edge.
pub fn reduce_threads(g: &Multigraph) -> Result<Multigraph> {
    let mut cur = g.clone();
    loop {
        let Some(t) = threads(&cur).into_iter().find(|t| t[0] != *t.last().unwrap()) else {
            return Ok(cur);
        };
        let sv: BTreeSet<Vertex> = t.iter().copied().collect();
        let mut se = BTreeSet::new();
        for w in t.windows(2) {
            let e = (0..cur.m())
                .find(|&e| {
                    let (x, y) = cur.endpoints(e);
                    !se.contains(&e) && ((x, y) == (w[0], w[1]) || (x, y) == (w[1], w[0]))
                })
                .unwrap();
            se.insert(e);
        }
        cur = replace_support(&cur, t[0], *t.last().unwrap(), &sv, &se)?.graph;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionHypotheses {
    pub k: usize,
    pub edge_linked: bool,
    pub shelled: bool,
    pub typical: bool,
    pub order: usize,
    pub required_order: usize,
}

impl ReductionHypotheses {
    pub fn all_hold(&self) -> bool {
        self.edge_linked && self.shelled && self.typical && self.order >= self.required_order
    }
}

#[derive(Clone, Debug)]
pub struct BandReduction {
    pub embedding: EmbeddedMultigraph,
    pub vertex_map: Vec<Option<Vertex>>,
    pub band: Option<Band>,
    pub hypotheses: ReductionHypotheses,
    pub policy: ReductionPolicy,
}

fn check_hypotheses(
    host: &EmbeddedMultigraph,
    band: &Band,
    q: (usize, usize),
    order: usize,
    policy: &ReductionPolicy,
) -> Result<ReductionHypotheses> {
    let tiles = tiles_of(host, band)?;
    let (_, sup) = support(&tiles);
    let g = &host.graph;
    let apex = band.apex();
    let flow = |from: &[Vertex], to: &[Vertex], edges: &BTreeSet<EdgeId>| -> Result<usize> {
        let strip = |p: &[Vertex]| p.iter().copied().filter(|v| Some(*v) != apex).collect::<BTreeSet<_>>();
        let mask: Vec<bool> = (0..g.m()).map(|e| edges.contains(&e)).collect();
        let forb: BTreeSet<Vertex> = apex.into_iter().collect();
        Ok(edge_disjoint_masked(g, &strip(from), &strip(to), &forb, Some(&mask))?.count)
    };
    let k = flow(&band.paths[0], band.paths.last().unwrap(), &sup)?;
    let mut edge_linked = true;
    for (t, tile) in tiles.iter().enumerate() {
        if flow(&band.paths[t], &band.paths[t + 1], &tile.edges)? != k {
            edge_linked = false;
        }
    }
    let shelled = band.is_proper_fan(host) || is_shelled(host, band)?.iter().all(|&s| s);
    let typical = policy.t == 0 || typical_copies(host, band, q, policy.t)?.is_some();
    Ok(ReductionHypotheses { k, edge_linked, shelled, typical, order, required_order: policy.min_order(k) })
}

/// Rebuilds an embedding from surviving edges and vertices.
fn compact(
    n: usize,
    edges: &[(Vertex, Vertex)],
    rotation: &[Vec<Dart>],
    keep_edge: &[bool],
    keep_vertex: &[bool],
) -> Result<(EmbeddedMultigraph, Vec<Option<Vertex>>)> {
    let mut vmap = vec![None; n];
    let mut k = 0;
    for v in 0..n {
        if keep_vertex[v] {
            vmap[v] = Some(k);
            k += 1;
        }
    }
    let mut emap = vec![None; edges.len()];
    let mut new_edges = Vec::new();
    for (e, &(a, b)) in edges.iter().enumerate() {
        if keep_edge[e] {
            emap[e] = Some(new_edges.len());
            new_edges.push((vmap[a].unwrap(), vmap[b].unwrap()));
        }
    }
    let rot: Vec<Vec<Dart>> = (0..n)
        .filter(|&v| keep_vertex[v])
        .map(|v| rotation[v].iter().filter_map(|&d| emap[edge_of(d)].map(|ne| 2 * ne + (d & 1))).collect())
        .collect();
    let emb = EmbeddedMultigraph::new(Multigraph::from_edges(k, &new_edges)?, rot)?;
    Ok((emb, vmap))
}

/// Identifies `y` into `x` across a face they share.
fn identify(
    edges: &mut [(Vertex, Vertex)],
    rotation: &mut [Vec<Dart>],
    keep_edge: &[bool],
    x: Vertex,
    y: Vertex,
) -> Result<()> {
    if rotation[x].is_empty() || rotation[y].is_empty() {
        let ry = std::mem::take(&mut rotation[y]);
        rotation[x].extend(ry);
    } else {
        let n = rotation.len();
        let (emb, _) = compact(n, edges, rotation, keep_edge, &vec![true; n])?;
        let faces = emb.faces();
        // faces indexed by the original dart ids
        let sub_df = emb.dart_faces(&faces);
        let mut emap = vec![usize::MAX; edges.len()];
        let mut k = 0;
        for (e, &kept) in keep_edge.iter().enumerate() {
            if kept {
                emap[e] = k;
                k += 1;
            }
        }
        let df = |d: Dart| sub_df[2 * emap[edge_of(d)] + (d & 1)];
        let fx: BTreeSet<usize> = rotation[x].iter().map(|&d| df(d)).collect();
        let (sy, phi) = rotation[y]
            .iter()
            .enumerate()
            .find(|(_, &d)| fx.contains(&df(d)))
            .map(|(k, &d)| (k, df(d)))
            .ok_or_else(|| Error::Structure(format!("vertices {x} and {y} share no face")))?;
        let sx = rotation[x].iter().position(|&d| df(d) == phi).unwrap();
        let mut merged: Vec<Dart> = rotation[x][sx..].iter().chain(&rotation[x][..sx]).copied().collect();
        merged.extend(rotation[y][sy..].iter().chain(&rotation[y][..sy]));
        rotation[x] = merged;
        rotation[y].clear();
    }
    for (a, b) in edges.iter_mut() {
        if *a == y {
            *a = x;
        }
        if *b == y {
            *b = x;
        }
    }
    Ok(())
}

/// Removes the support strictly between the last paths of `q1` and `q2`
/// (path index ranges, inclusive) and identifies those two paths.
pub fn reduce_band(
    host: &EmbeddedMultigraph,
    band: &Band,
    q1: (usize, usize),
    q2: (usize, usize),
    policy: &ReductionPolicy,
    forbidden: &BTreeSet<Vertex>,
) -> Result<BandReduction> {
    let m = band.len();
    if q1.0 > q1.1 || q2.0 > q2.1 || q1.1 >= q2.0 {
        return arg("repetition must be two ordered, non-overlapping subbands");
    }
    if q1.0 == 0 || q2.1 + 1 >= m {
        return arg("repetition overlaps the first or last path of the band");
    }
    if q1.1 - q1.0 != q2.1 - q2.0 || !band_isomorphic(host, &band.sub(q1.0, q1.1), &band.sub(q2.0, q2.1))? {
        return arg("the two subbands are not isomorphic");
    }
    let tiles = tiles_of(host, band)?;
    let apex = band.apex();
    let (wv1, _) = support(&tiles[q1.0..q1.1]);
    let (wv2, _) = support(&tiles[q2.0..q2.1]);
    let w1: BTreeSet<Vertex> = wv1.iter().chain(band.paths[q1.0..=q1.1].iter().flatten()).copied().collect();
    let w2: BTreeSet<Vertex> = wv2.iter().chain(band.paths[q2.0..=q2.1].iter().flatten()).copied().collect();
    if w1.intersection(&w2).any(|&v| Some(v) != apex) {
        return arg("the two subbands overlap");
    }
    let (qv, _) = support(&tiles[q1.0..q2.1]);
    if qv.iter().any(|v| forbidden.contains(v)) {
        return Err(Error::Precondition("reducible subband meets a forbidden vertex".into()));
    }
    let (p1, p2) = (&band.paths[q1.1], &band.paths[q2.1]);
    if p1.len() != p2.len() {
        return arg("identified paths differ in length");
    }
    let hypotheses = check_hypotheses(host, band, (q1.0, q2.1), q1.1 - q1.0 + 1, policy)?;

    let ctx = Ctx::new(host);
    let g = &host.graph;
    let (sv, se) = support(&tiles[q1.1..q2.1]);
    let path_edges: BTreeSet<EdgeId> =
        ctx.path_edges(p1).unwrap().into_iter().chain(ctx.path_edges(p2).unwrap()).collect();
    let on_paths: BTreeSet<Vertex> = p1.iter().chain(p2).copied().chain(apex).collect();
    let s_vertices: BTreeSet<Vertex> = sv.difference(&on_paths).copied().collect();
    let mut keep_edge: Vec<bool> = (0..g.m())
        .map(|e| {
            let (a, b) = g.endpoints(e);
            path_edges.contains(&e) || !(se.contains(&e) || s_vertices.contains(&a) || s_vertices.contains(&b))
        })
        .collect();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().to_vec();
    let mut rotation: Vec<Vec<Dart>> =
        host.rotation.iter().map(|r| r.iter().copied().filter(|&d| keep_edge[edge_of(d)]).collect()).collect();
    for (&x, &y) in p1.iter().zip(p2) {
        if Some(x) == apex {
            continue;
        }
        identify(&mut edges, &mut rotation, &keep_edge, x, y)?;
    }
    for e in ctx.path_edges(p2).unwrap() {
        keep_edge[e] = false;
    }
    for r in rotation.iter_mut() {
        r.retain(|&d| keep_edge[edge_of(d)]);
    }
    let gone: BTreeSet<Vertex> = s_vertices.iter().chain(p2.iter().filter(|&&v| Some(v) != apex)).copied().collect();
    let keep_vertex: Vec<bool> = (0..g.n()).map(|v| !gone.contains(&v)).collect();
    let (embedding, vertex_map) = compact(g.n(), &edges, &rotation, &keep_edge, &keep_vertex)?;
    if !embedding.is_plane() {
        return Err(Error::Structure("reduction is not plane".into()));
    }
    let paths: Vec<Vec<Vertex>> = band.paths[..=q1.1]
        .iter()
        .chain(&band.paths[q2.1 + 1..])
        .map(|p| p.iter().map(|&v| vertex_map[v].unwrap()).collect())
        .collect();
    let reduced = locate_band(&embedding, paths, band.is_fan());
    Ok(BandReduction { embedding, vertex_map, band: reduced, hypotheses, policy: policy.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionSpec {
    /// Replace edge `e` by a path through `k` new vertices.
    Subdivide { edge: EdgeId, k: usize },
    /// Replace the parallel class of `e` (multiplicity `p`) by `p` paths of length two.
    Paths { edge: EdgeId, p: usize },
    /// Insert a copy of the subband between paths `from` and `to` of band `band`.
    DupBand { band: usize, from: usize, to: usize },
}

impl fmt::Display for ExpansionSpec {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match *self {
            ExpansionSpec::Subdivide { edge, k: 1 } => write!(f, "subdivide e{edge}"),
            ExpansionSpec::Subdivide { edge, k } => write!(f, "subdivide e{edge} {k}"),
            ExpansionSpec::Paths { edge, p } => write!(f, "paths e{edge} {p}"),
            ExpansionSpec::DupBand { band, from, to } => write!(f, "dup-band {band} {from} {to}"),
        }
    }
}

/// One spec per line; edges may be written `e3` or `3`.
pub fn parse_expansion_specs(text: &str) -> Result<Vec<ExpansionSpec>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().flat_map(|l| l.split(';')).enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split('#').next().unwrap().split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let num = |t: &str| -> Result<usize> {
            t.trim_start_matches('e').parse().map_err(|_| Error::Parse { line, msg: format!("bad number `{t}`") })
        };
        let spec = match (toks[0], toks.len()) {
            ("subdivide", 2) => ExpansionSpec::Subdivide { edge: num(toks[1])?, k: 1 },
            ("subdivide", 3) => ExpansionSpec::Subdivide { edge: num(toks[1])?, k: num(toks[2])? },
            ("paths", 3) => ExpansionSpec::Paths { edge: num(toks[1])?, p: num(toks[2])? },
            ("dup-band", 4) => ExpansionSpec::DupBand { band: num(toks[1])?, from: num(toks[2])?, to: num(toks[3])? },
            _ => return Err(Error::Parse { line, msg: format!("unknown expansion `{}`", raw.trim()) }),
        };
        out.push(spec);
    }
    Ok(out)
}

/// What an expansion inserted, so that the matching reduction can undo it.
#[derive(Clone, Debug)]
pub enum ExpansionRecord {
    Necklace { ends: (Vertex, Vertex), support_vertices: BTreeSet<Vertex>, support_edges: BTreeSet<EdgeId> },
    Band { embedding: EmbeddedMultigraph, band: Band, q1: (usize, usize), q2: (usize, usize) },
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: Multigraph,
    pub record: ExpansionRecord,
}

/// Applies one expansion. Band expansions need the plane host and its bands.
pub fn expand(g: &Multigraph, spec: &ExpansionSpec, bands: Option<(&EmbeddedMultigraph, &[Band])>) -> Result<Expansion> {
    match *spec {
        ExpansionSpec::Subdivide { edge, k } => {
            if edge >= g.m() {
                return arg(format!("edge {edge} does not exist"));
            }
            let (a, b) = g.endpoints(edge);
            if a == b || k == 0 {
                return arg("subdivision needs a non-loop edge and k >= 1");
            }
            let out = g.subdivide(edge, k);
            let support_vertices = [a, b].into_iter().chain(g.n()..out.n()).collect();
            let support_edges = [edge].into_iter().chain(g.m()..out.m()).collect();
            Ok(Expansion { graph: out, record: ExpansionRecord::Necklace { ends: (a, b), support_vertices, support_edges } })
        }
        ExpansionSpec::Paths { edge, p } => {
            if edge >= g.m() {
                return arg(format!("edge {edge} does not exist"));
            }
            let (a, b) = g.endpoints(edge);
            if a == b || g.multiplicity(a, b) != p {
                return arg(format!("edge {edge} does not have multiplicity {p}"));
            }
            let mut edges: Vec<(Vertex, Vertex)> =
                g.edges().iter().copied().filter(|&(x, y)| !((x, y) == (a, b) || (x, y) == (b, a))).collect();
            let base = edges.len();
            for j in 0..p {
                edges.push((a, g.n() + j));
                edges.push((g.n() + j, b));
            }
            let out = Multigraph::from_edges(g.n() + p, &edges)?;
            let support_vertices = [a, b].into_iter().chain(g.n()..out.n()).collect();
            let support_edges = (base..out.m()).collect();
            Ok(Expansion { graph: out, record: ExpansionRecord::Necklace { ends: (a, b), support_vertices, support_edges } })
        }
        ExpansionSpec::DupBand { band, from, to } => {
            let Some((host, list)) = bands else {
                return arg("band expansion needs a plane host with bands");
            };
            let b = list.get(band).ok_or_else(|| Error::Argument(format!("band {band} does not exist")))?;
            dup_band(host, b, from, to)
        }
    }
}

fn dup_band(host: &EmbeddedMultigraph, b: &Band, from: usize, to: usize) -> Result<Expansion> {
    let m = b.len();
    if from >= to || to + 2 > m {
        return arg(format!("need from < to <= m-2 (m = {m})"));
    }
    if b.paths[from].len() != b.paths[to].len() {
        return arg("boundary paths of the copied subband differ in length");
    }
    let g = &host.graph;
    let tiles = tiles_of(host, b)?;
    let (rv, re) = support(&tiles[from..to]);
    let apex = b.apex();
    let ctx = Ctx::new(host);
    let from_edges: BTreeSet<EdgeId> = ctx.path_edges(&b.paths[from]).unwrap().into_iter().collect();
    let to_set: BTreeSet<Vertex> = b.paths[to].iter().copied().filter(|&v| Some(v) != apex).collect();
    let mut phi: HashMap<Vertex, Vertex> = HashMap::new();
    for (&x, &y) in b.paths[from].iter().zip(&b.paths[to]) {
        phi.insert(x, y);
    }
    let mut n = g.n();
    for &v in &rv {
        if Some(v) == apex {
            phi.insert(v, v);
        } else if !phi.contains_key(&v) || to_set.contains(&v) && !b.paths[from].contains(&v) {
            phi.insert(v, n);
            n += 1;
        }
    }
    // P_to vertices now map to fresh copies; the from-path maps onto P_to
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        let mv = |v: Vertex| if to_set.contains(&v) && !re.contains(&e) { phi[&v] } else { v };
        edges.push((mv(x), mv(y)));
    }
    for &e in &re {
        if from_edges.contains(&e) {
            continue;
        }
        let (x, y) = g.endpoints(e);
        edges.push((phi[&x], phi[&y]));
    }
    let out = Multigraph::from_edges(n, &edges)?;
    let emb = planarity_embed(&out).ok_or_else(|| Error::Structure("band expansion is not planar".into()))?;
    let copies: Vec<Vec<Vertex>> = b.paths[from + 1..=to].iter().map(|p| p.iter().map(|v| phi[v]).collect()).collect();
    let paths: Vec<Vec<Vertex>> =
        b.paths[..=to].iter().cloned().chain(copies).chain(b.paths[to + 1..].iter().cloned()).collect();
    let nb = locate_band(&emb, paths, b.is_fan()).ok_or_else(|| Error::Structure("expanded band not found".into()))?;
    let len = to - from;
    Ok(Expansion {
        graph: out,
        record: ExpansionRecord::Band { embedding: emb, band: nb, q1: (from + 1, to), q2: (to + 1, to + len) },
    })
}

/// Undoes an expansion with the matching reduction.
pub fn reduce_expansion(x: &Expansion) -> Result<Multigraph> {
    match &x.record {
        ExpansionRecord::Necklace { ends, support_vertices, support_edges } => {
            Ok(replace_support(&x.graph, ends.0, ends.1, support_vertices, support_edges)?.graph)
        }
        ExpansionRecord::Band { embedding, band, q1, q2 } => {
            let policy = ReductionPolicy::paper(1).with_min_order(1).with_typicality(0);
            Ok(reduce_band(embedding, band, *q1, *q2, &policy, &BTreeSet::new())?.embedding.graph)
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionCheck {
    pub c: usize,
    pub original: Verdict,
    pub reduced: Verdict,
}

impl ReductionCheck {
    pub fn both_critical(&self) -> bool {
        self.original == Verdict::Critical && self.reduced == Verdict::Critical
    }
}

/// Certifies criticality of a graph and its reduction.
pub fn verify_reduction_critical(g: &Multigraph, g1: &Multigraph, c: usize, budget: Option<usize>) -> Result<ReductionCheck> {
    let original = is_crossing_critical_with_budget(g, c, budget)?.verdict;
    let reduced = is_crossing_critical_with_budget(g1, c, budget)?.verdict;
    Ok(ReductionCheck { c, original, reduced })
}

/// Keeps the crossings whose edges both pass `keep`, renumbering edges by
/// `emap` and compacting positions along each edge.
fn filter_crossings(cs: &[Crossing], keep: &dyn Fn(EdgeId) -> bool, emap: &dyn Fn(EdgeId) -> EdgeId) -> Vec<Crossing> {
    let kept: Vec<Crossing> = cs.iter().copied().filter(|c| keep(c.edge_a) && keep(c.edge_b)).collect();
    let mut along: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for c in &kept {
        along.entry(c.edge_a).or_default().push(c.pos_a);
        along.entry(c.edge_b).or_default().push(c.pos_b);
    }
    for v in along.values_mut() {
        v.sort_unstable();
    }
    let rank = |e: EdgeId, p: usize| along[&e].binary_search(&p).unwrap();
    kept.iter()
        .map(|c| Crossing {
            edge_a: emap(c.edge_a),
            edge_b: emap(c.edge_b),
            pos_a: rank(c.edge_a, c.pos_a),
            pos_b: rank(c.edge_b, c.pos_b),
        })
        .collect()
}

fn xt_code(emb: &EmbeddedMultigraph, x: &ExtendedTile) -> crate::canon::Code {
    let mask: Vec<bool> = (0..emb.graph.m()).map(|e| x.edges.contains(&e)).collect();
    let (sub, _) = emb.restrict_edges(&mask);
    let keep: Vec<Vertex> = x.vertices.iter().copied().collect();
    crate::canon::embedded_code(&sub.induced(&keep).0, None)
}

/// `X(T)` drawn as in the reference inside `C(T)`, with everything else
/// outside.
pub fn is_flat(reference: &Drawing, d: &Drawing, x: &ExtendedTile) -> bool {
    if x.edges.iter().any(|&e| e >= d.original.m() || d.segments[e].len() != 1) {
        return false;
    }
    if xt_code(&reference.planarization, x) != xt_code(&d.planarization, x) {
        return false;
    }
    let p = &d.planarization;
    let faces = p.faces();
    let df = p.dart_faces(&faces);
    let cut: BTreeSet<EdgeId> = x.cycle.iter().copied().collect();
    let interior = x.interior_edges();
    let inner_dart = |side: usize| df[2 * x.cycle[0] + side];
    for side in 0..2 {
        let start = inner_dart(side);
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for &dd in &faces[f].darts {
                let h = df[dd ^ 1];
                if !cut.contains(&edge_of(dd)) && seen.insert(h) {
                    stack.push(h);
                }
            }
        }
        let edges: BTreeSet<EdgeId> = seen.iter().flat_map(|&f| faces[f].darts.iter().map(|&dd| edge_of(dd))).collect();
        if edges.iter().all(|e| x.edges.contains(e)) && interior.iter().all(|e| edges.contains(e)) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug)]
pub struct FlatResult {
    pub drawing: Drawing,
    pub before: usize,
    pub after: usize,
}

/// Redraws `d` so that it is flat at the given tiles (1-based indices) of a
/// band in the reference planarization.
pub fn make_flat(reference: &Drawing, band: &Band, tiles: &[usize], d: &Drawing) -> Result<FlatResult> {
    let g = &reference.original;
    if d.original.edges() != g.edges() || d.original.n() != g.n() {
        return arg("drawings are of different graphs");
    }
    let (n, m) = (g.n(), g.m());
    let xs: Vec<ExtendedTile> = tiles.iter().map(|&i| extended_tile(&reference.planarization, band, i)).collect::<Result<_>>()?;
    let apex = band.apex();
    if apex.is_some() && xs.len() > 1 {
        return arg("fan tiles are flattened one at a time");
    }
    for (i, x) in xs.iter().enumerate() {
        if x.vertices.iter().any(|&v| v >= n) || x.edges.iter().any(|&e| e >= m || reference.segments[e].len() != 1) {
            return Err(Error::Precondition("extended tile meets a crossing of the reference".into()));
        }
        for y in &xs[..i] {
            if x.vertices.intersection(&y.vertices).any(|&v| Some(v) != apex) {
                return Err(Error::Precondition("extended tiles overlap".into()));
            }
        }
        if x.cycle.iter().any(|&e| d.segments[e].len() != 1) {
            return Err(Error::Precondition("a boundary cycle edge is crossed".into()));
        }
    }
    let interior: BTreeSet<EdgeId> = xs.iter().flat_map(|x| x.interior_edges()).collect();
    let kept = |e: EdgeId| !interior.contains(&e);
    let s2 = filter_crossings(&d.crossings, &kept, &|e| e);
    let d2 = planarize(g, &s2)?;

    // complement plus one hub per tile, forcing each C(T) to bound an empty disk
    let mut emap = vec![usize::MAX; m];
    let mut out_edges = Vec::new();
    for e in 0..m {
        if kept(e) {
            emap[e] = out_edges.len();
            out_edges.push(g.endpoints(e));
        }
    }
    let hub_base = out_edges.len();
    let mut hub_edge: Vec<HashMap<Vertex, EdgeId>> = Vec::new();
    for (t, x) in xs.iter().enumerate() {
        let mut he = HashMap::new();
        for &v in &x.cycle_vertices {
            he.insert(v, out_edges.len());
            out_edges.push((v, n + t));
        }
        hub_edge.push(he);
    }
    let g_out = Multigraph::from_edges(n + xs.len(), &out_edges)?;
    let s_out = filter_crossings(&d.crossings, &kept, &|e| emap[e]);
    let d_out = planarize(&g_out, &s_out)?;
    let hubs = xs.len();
    let vout = |v: Vertex| if v < n { v } else { v + hubs };
    // planarization edges of d_out back to d2
    let mut back = vec![usize::MAX; d_out.planarization.graph.m()];
    for e in 0..m {
        if kept(e) {
            for (k, &s) in d_out.segments[emap[e]].iter().enumerate() {
                back[s] = d2.segments[e][k];
            }
        }
    }
    let to_d2 = |dart: Dart| 2 * back[edge_of(dart)] + (dart & 1);
    let mut rot_out = d_out.planarization.rotation.clone();
    let is_hub_dart = |dart: Dart| edge_of(dart) >= hub_base && edge_of(dart) < g_out.m();

    let np = d2.planarization.graph.n();
    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); np];
    for (t, x) in xs.iter().enumerate() {
        let cyc: BTreeSet<EdgeId> = x.cycle.iter().map(|&e| emap[e]).collect();
        let hub_dart = |v: Vertex| {
            let e = hub_edge[t][&v];
            if g_out.endpoints(e).0 == v { 2 * e } else { 2 * e + 1 }
        };
        // reroute boundary edges past anything drawn between them and the hub
        for &v in &x.cycle_vertices {
            let r = &mut rot_out[v];
            let len = r.len();
            let h = r.iter().position(|&dd| dd == hub_dart(v)).unwrap();
            for dir in [1, len - 1] {
                let mut k = (h + dir) % len;
                let mut between = Vec::new();
                while !cyc.contains(&edge_of(r[k])) {
                    between.push(k);
                    k = (k + dir) % len;
                }
                if !between.is_empty() {
                    let c = r[k];
                    for &j in between.iter().rev() {
                        r[(j + dir) % len] = r[j];
                    }
                    r[between[0]] = c;
                }
            }
        }
        // orientation relative to the reference
        let mut reflect = None;
        for &v in &x.cycle_vertices {
            let r = &rot_out[v];
            let h = r.iter().position(|&dd| dd == hub_dart(v)).unwrap();
            let before = to_d2(r[(h + r.len() - 1) % r.len()]);
            let refrot = &reference.planarization.rotation[v];
            let k = refrot.iter().position(|&dd| dd == before).unwrap();
            let next = refrot[(k + 1) % refrot.len()];
            if interior_has(&x.interior_edges(), next) {
                reflect = Some(false);
                break;
            }
            let prev = refrot[(k + refrot.len() - 1) % refrot.len()];
            if interior_has(&x.interior_edges(), prev) {
                reflect = Some(true);
                break;
            }
        }
        let reflect = reflect.unwrap_or(false);
        let inner = x.interior_edges();
        for &v in &x.cycle_vertices {
            let refrot = &reference.planarization.rotation[v];
            let r = &rot_out[v];
            let h = r.iter().position(|&dd| dd == hub_dart(v)).unwrap();
            let before = to_d2(r[(h + r.len() - 1) % r.len()]);
            // interior darts of the reference wedge following (or preceding) `before`
            let k = refrot.iter().position(|&dd| dd == before).unwrap();
            let len = refrot.len();
            let mut wedge = Vec::new();
            for s in 1..len {
                let j = if reflect { (k + len - s) % len } else { (k + s) % len };
                if !interior_has(&inner, refrot[j]) {
                    break;
                }
                wedge.push(refrot[j]);
            }
            let mut full = Vec::new();
            for (j, &dd) in r.iter().enumerate() {
                if j == h {
                    full.extend(&wedge);
                } else {
                    full.push(to_d2(dd));
                }
            }
            rotation[v] = full;
        }
        for v in x.interior_vertices() {
            let mut rr = reference.planarization.rotation[v].clone();
            if reflect {
                rr.reverse();
            }
            rotation[v] = rr;
        }
    }
    let fixed: BTreeSet<Vertex> = xs.iter().flat_map(|x| x.vertices.iter().copied()).collect();
    for v in 0..np {
        if !fixed.contains(&v) {
            rotation[v] = rot_out[vout(v)].iter().filter(|&&dd| !is_hub_dart(dd)).map(|&dd| to_d2(dd)).collect();
        }
    }
    let planarization = EmbeddedMultigraph::new(d2.planarization.graph.clone(), rotation)?;
    let out = Drawing { planarization, ..d2 };
    out.validate().map_err(|e| Error::NotRealizable(e.to_string()))?;
    for x in &xs {
        if !is_flat(reference, &out, x) {
            return Err(Error::NotRealizable("flattening failed".into()));
        }
    }
    let (before, after) = (d.crossing_count(), out.crossing_count());
    assert!(after <= before, "flattening added crossings");
    Ok(FlatResult { drawing: out, before, after })
}

fn interior_has(inner: &BTreeSet<EdgeId>, dart: Dart) -> bool {
    inner.contains(&edge_of(dart))
}

/// Vertex order of a cycle given as consecutive edges.
fn cycle_order(g: &Multigraph, cycle: &[EdgeId]) -> Vec<Vertex> {
    let k = cycle.len();
    if k == 1 {
        return vec![g.endpoints(cycle[0]).0];
    }
    (0..k)
        .map(|i| {
            let (a, b) = g.endpoints(cycle[i]);
            let (c, d) = g.endpoints(cycle[(i + 1) % k]);
            if a == c || a == d { a } else { b }
        })
        .collect()
}

/// A plane graph with two boundary paths to be glued in place of a subband.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub graph: EmbeddedMultigraph,
    pub p1: Vec<Vertex>,
    pub p2: Vec<Vertex>,
}

impl Replacement {
    /// The support of paths `lo..=hi` of a band.
    pub fn from_subband(host: &EmbeddedMultigraph, band: &Band, lo: usize, hi: usize) -> Result<Replacement> {
        if lo >= hi || hi >= band.len() {
            return arg("subband out of range");
        }
        let tiles = tiles_of(host, band)?;
        let (sv, se) = support(&tiles[lo..hi]);
        let mask: Vec<bool> = (0..host.graph.m()).map(|e| se.contains(&e)).collect();
        let (sub, _) = host.restrict_edges(&mask);
        let keep: Vec<Vertex> = sv.iter().copied().collect();
        let (graph, vmap) = sub.induced(&keep);
        let map = |p: &Vec<Vertex>| p.iter().map(|&v| vmap[v].unwrap()).collect();
        Ok(Replacement { graph, p1: map(&band.paths[lo]), p2: map(&band.paths[hi]) })
    }
}

#[derive(Clone, Debug)]
pub struct SpliceResult {
    pub graph: Multigraph,
    pub drawing: Drawing,
    /// Old vertex to new vertex.
    pub vertex_map: Vec<Option<Vertex>>,
    pub before: usize,
    pub after: usize,
    /// False when the lemma's routing failed and the drawing came from the solver.
    pub constructed: bool,
}

/// Direction of a path along a face walk of length `len`: forward, backward,
/// or `None` when it is not traversed consecutively.
fn walk_direction(pos: &[usize], len: usize) -> Option<bool> {
    let steps: BTreeSet<usize> = pos.windows(2).map(|w| (w[1] + len - w[0]) % len).collect();
    match steps.iter().copied().collect::<Vec<_>>()[..] {
        [1] => Some(true),
        [s] if s == len - 1 => Some(false),
        _ => None,
    }
}

fn check_replacement(h: &Replacement, p1: &[Vertex], p2: &[Vertex]) -> Result<()> {
    if h.p1.len() != p1.len() || h.p2.len() != p2.len() {
        return Err(Error::Precondition("replacement paths differ in length".into()));
    }
    if h.p1.iter().any(|v| h.p2.contains(v)) {
        return Err(Error::Precondition("replacement paths intersect".into()));
    }
    let ctx = Ctx::new(&h.graph);
    let face = (0..ctx.faces.len())
        .find(|&f| h.p1.iter().chain(&h.p2).all(|&v| ctx.on_face(f, v)))
        .ok_or_else(|| Error::Precondition("replacement paths are not on a common face".into()))?;
    let len = ctx.walk[face].len();
    let dir = |p: &[Vertex]| walk_direction(&p.iter().map(|v| ctx.pos[face][v]).collect::<Vec<_>>(), len);
    let (a, b) = (dir(&h.p1), dir(&h.p2));
    let single = h.p1.len() < 2 || h.p2.len() < 2;
    if !single && (a.is_none() || b.is_none() || a == b) {
        return Err(Error::Precondition("replacement paths are not oppositely oriented".into()));
    }
    Ok(())
}

/// Replaces the support of subband `lo..=hi` by `h`, drawing the result from
/// the flat, straight drawing `d1` without adding crossings.
pub fn splice(reference: &Drawing, band: &Band, lo: usize, hi: usize, d1: &Drawing, h: &Replacement) -> Result<SpliceResult> {
    let g = &reference.original;
    let (n, m) = (g.n(), g.m());
    if band.is_fan() {
        return arg("splice is implemented for bands");
    }
    let bm = band.len();
    if lo == 0 || hi + 2 > bm || hi < lo + 4 {
        return arg("the subband needs at least five paths and must avoid the first and last path");
    }
    if d1.original.edges() != g.edges() || d1.original.n() != n {
        return arg("drawings are of different graphs");
    }
    let host = &reference.planarization;
    let tiles = tiles_of(host, band)?;
    let (sv, se) = support(&tiles[lo..hi]);
    if sv.iter().any(|&v| v >= n) || se.iter().any(|&e| e >= m || reference.segments[e].len() != 1) {
        return Err(Error::Precondition("subband support meets a crossing".into()));
    }
    let t1 = extended_tile(host, band, lo + 1)?;
    let t2 = extended_tile(host, band, hi)?;
    if !is_flat(reference, d1, &t1) || !is_flat(reference, d1, &t2) {
        return Err(Error::Precondition("drawing is not flat at the end tiles".into()));
    }
    let c1 = cycle_order(g, &t1.cycle);
    let c2 = cycle_order(g, &t2.cycle);
    if orientation(reference, d1, &c1, &c2)? == Orientation::Twisted {
        return Err(Error::Precondition("drawing is twisted between the end tiles".into()));
    }
    let (p1, p2) = (&band.paths[lo], &band.paths[hi]);
    check_replacement(h, p1, p2)?;

    let ctx = Ctx::new(host);
    let path_edges: BTreeSet<EdgeId> =
        ctx.path_edges(p1).unwrap().into_iter().chain(ctx.path_edges(p2).unwrap()).collect();
    let inner_mask: Vec<bool> = (0..m).map(|e| se.contains(&e) && !path_edges.contains(&e)).collect();
    let s1: BTreeSet<Vertex> = p1.iter().copied().collect();
    let s2: BTreeSet<Vertex> = p2.iter().copied().collect();
    let qs = edge_disjoint_masked(g, &s1, &s2, &BTreeSet::new(), Some(&inner_mask))?;
    let p = qs.count;
    let hg = &h.graph.graph;
    let hs1: BTreeSet<Vertex> = h.p1.iter().copied().collect();
    let hs2: BTreeSet<Vertex> = h.p2.iter().copied().collect();
    let hcut = crate::flow::max_edge_disjoint_paths(hg, &hs1, &hs2, &BTreeSet::new())?;
    if hcut.count > p {
        return Err(Error::Precondition(format!("replacement needs a cut of {} edges, more than {p}", hcut.count)));
    }
    let cut: Vec<EdgeId> = hcut.cut.iter().copied().collect();
    // side of each replacement vertex
    let mut side1 = hs1.clone();
    let mut stack: Vec<Vertex> = hs1.iter().copied().collect();
    let hadj = hg.adjacency();
    while let Some(v) = stack.pop() {
        for &(w, e) in &hadj[v] {
            if !hcut.cut.contains(&e) && side1.insert(w) {
                stack.push(w);
            }
        }
    }

    // G_H
    let removed_v: BTreeSet<Vertex> = sv.iter().copied().filter(|v| !s1.contains(v) && !s2.contains(v)).collect();
    let keep_g: Vec<bool> = (0..m).map(|e| !inner_mask[e]).collect();
    let mut vmap = vec![None; n];
    let mut nn = 0;
    for v in 0..n {
        if !removed_v.contains(&v) {
            vmap[v] = Some(nn);
            nn += 1;
        }
    }
    let mut hv = vec![0; hg.n()];
    for v in 0..hg.n() {
        if let Some(k) = h.p1.iter().position(|&x| x == v) {
            hv[v] = vmap[p1[k]].unwrap();
        } else if let Some(k) = h.p2.iter().position(|&x| x == v) {
            hv[v] = vmap[p2[k]].unwrap();
        } else {
            hv[v] = nn;
            nn += 1;
        }
    }
    let mut edges = Vec::new();
    let mut kmap = vec![usize::MAX; m];
    for e in 0..m {
        if keep_g[e] {
            let (a, b) = g.endpoints(e);
            kmap[e] = edges.len();
            edges.push((vmap[a].unwrap(), vmap[b].unwrap()));
        }
    }
    let hctx = Ctx::new(&h.graph);
    let hpath: BTreeSet<EdgeId> =
        hctx.path_edges(&h.p1).unwrap_or_default().into_iter().chain(hctx.path_edges(&h.p2).unwrap_or_default()).collect();
    let mut hmap = vec![usize::MAX; hg.m()];
    for e in 0..hg.m() {
        if !hpath.contains(&e) {
            let (a, b) = hg.endpoints(e);
            hmap[e] = edges.len();
            edges.push((hv[a], hv[b]));
        }
    }
    let gh = Multigraph::from_edges(nn, &edges)?;
    let before = d1.crossing_count();

    // route the cut along the least crossed path
    let kept_crossings: Vec<(usize, Crossing)> =
        d1.crossings.iter().copied().enumerate().filter(|(_, c)| keep_g[c.edge_a] && keep_g[c.edge_b]).collect();
    let crossings_on = |e: EdgeId| -> Vec<(usize, usize, EdgeId)> {
        // (position along e, crossing index, other edge)
        let mut v: Vec<(usize, usize, EdgeId)> = d1
            .crossings
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                if c.edge_a == e {
                    Some((c.pos_a, i, c.edge_b))
                } else if c.edge_b == e {
                    Some((c.pos_b, i, c.edge_a))
                } else {
                    None
                }
            })
            .collect();
        v.sort_unstable();
        v
    };
    let mut gamma: Option<Vec<(usize, EdgeId, bool)>> = None;
    for (path, pedges) in qs.paths.iter().zip(&qs.path_edges) {
        let mut events = Vec::new();
        for (k, &e) in pedges.iter().enumerate() {
            let fwd = g.endpoints(e).0 == path[k];
            let mut ev: Vec<(usize, EdgeId)> =
                crossings_on(e).into_iter().filter(|&(_, _, f)| keep_g[f]).map(|(_, i, f)| (i, f)).collect();
            if !fwd {
                ev.reverse();
            }
            events.extend(ev.into_iter().map(|(i, f)| (i, f, fwd)).map(|(i, f, fw)| (i, f, fw, e)));
        }
        let evs: Vec<(usize, EdgeId, bool)> = events
            .iter()
            .map(|&(i, f, fw, e)| (i, f, lane_sign(d1, i, e, fw, f)))
            .collect();
        if gamma.as_ref().is_none_or(|best| evs.len() < best.len()) {
            gamma = Some(evs);
        }
    }
    let gamma = gamma.unwrap_or_default();
    let mut orders: Vec<Vec<EdgeId>> = Vec::new();
    permutations(&cut, &mut Vec::new(), &mut vec![false; cut.len()], &mut orders, 720);
    for order in &orders {
        for flip in [false, true] {
            let cs = lane_crossings(d1, &kept_crossings, &gamma, order, flip, &kmap, &hmap, hg, &side1);
            if let Ok(d) = planarize(&gh, &cs) {
                let after = d.crossing_count();
                assert!(after <= before, "splice added crossings");
                return Ok(SpliceResult { graph: gh, drawing: d, vertex_map: vmap, before, after, constructed: true });
            }
        }
    }
    match crate::crossing::crossing_number(&gh, Some(before)) {
        crate::crossing::CrossingResult::Exact { cr, witness } => {
            Ok(SpliceResult { graph: gh, drawing: *witness, vertex_map: vmap, before, after: cr, constructed: false })
        }
        _ => Err(Error::NotRealizable("replacement needs more crossings".into())),
    }
}

fn permutations(items: &[EdgeId], cur: &mut Vec<EdgeId>, used: &mut [bool], out: &mut Vec<Vec<EdgeId>>, cap: usize) {
    if out.len() >= cap {
        return;
    }
    if cur.len() == items.len() {
        out.push(cur.clone());
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permutations(items, cur, used, out, cap);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Which way the crossed edge `f` passes the routing path at crossing `i`.
fn lane_sign(d: &Drawing, i: usize, q: EdgeId, q_fwd: bool, f: EdgeId) -> bool {
    let x = d.crossing_vertex(i);
    let c = d.crossings[i];
    let pos = |e: EdgeId| if c.edge_a == e { c.pos_a } else { c.pos_b };
    let g = &d.planarization.graph;
    let out_dart = |e: EdgeId, toward_end: bool| -> Dart {
        let s = d.segments[e][if toward_end { pos(e) + 1 } else { pos(e) }];
        if g.endpoints(s).0 == x { 2 * s } else { 2 * s + 1 }
    };
    let rot = &d.planarization.rotation[x];
    let k = rot.iter().position(|&dd| dd == out_dart(q, q_fwd)).unwrap();
    rot[(k + 1) % 4] == out_dart(f, false)
}

#[allow(clippy::too_many_arguments)]
fn lane_crossings(
    d1: &Drawing,
    kept: &[(usize, Crossing)],
    gamma: &[(usize, EdgeId, bool)],
    order: &[EdgeId],
    flip: bool,
    kmap: &[usize],
    hmap: &[usize],
    hg: &Multigraph,
    side1: &BTreeSet<Vertex>,
) -> Vec<Crossing> {
    let lanes = order.len();
    // events along each kept edge: (old position, kind)
    enum Ev {
        Kept(usize),
        Lane(usize),
    }
    let mut along: HashMap<EdgeId, Vec<(usize, Ev)>> = HashMap::new();
    for (k, (_, c)) in kept.iter().enumerate() {
        along.entry(c.edge_a).or_default().push((c.pos_a, Ev::Kept(k)));
        along.entry(c.edge_b).or_default().push((c.pos_b, Ev::Kept(k)));
    }
    for (t, &(i, f, _)) in gamma.iter().enumerate() {
        let c = d1.crossings[i];
        let pf = if c.edge_a == f { c.pos_a } else { c.pos_b };
        along.entry(f).or_default().push((pf, Ev::Lane(t)));
    }
    let mut kept_pos: Vec<[usize; 2]> = vec![[0, 0]; kept.len()];
    let mut out = Vec::new();
    let a = gamma.len();
    for (&f, evs) in along.iter_mut() {
        evs.sort_by_key(|e| e.0);
        let mut next = 0;
        for (_, ev) in evs.iter() {
            match *ev {
                Ev::Kept(k) => {
                    let slot = if kept[k].1.edge_a == f { 0 } else { 1 };
                    kept_pos[k][slot] = next;
                    next += 1;
                }
                Ev::Lane(t) => {
                    let ascending = gamma[t].2 != flip;
                    for j in 0..lanes {
                        let lane = if ascending { j } else { lanes - 1 - j };
                        let c = order[lane];
                        let from_side1 = side1.contains(&hg.endpoints(c).0);
                        let pc = if from_side1 { t } else { a - 1 - t };
                        out.push(Crossing { edge_a: kmap[f], edge_b: hmap[c], pos_a: next, pos_b: pc });
                        next += 1;
                    }
                }
            }
        }
    }
    for (k, (_, c)) in kept.iter().enumerate() {
        out.push(Crossing { edge_a: kmap[c.edge_a], edge_b: kmap[c.edge_b], pos_a: kept_pos[k][0], pos_b: kept_pos[k][1] });
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use crate::graph::families;
    use crate::structures::{find_reducible_repetition, Far};

    pub(crate) fn spoke_band(k: usize) -> (EmbeddedMultigraph, Band) {
        let host = planarity_embed(&families::circular_ladder(k)).unwrap();
        let b = locate_band(&host, (0..k).map(|i| vec![i, k + i]).collect(), false)
            .or_else(|| locate_band(&host, (0..k).rev().map(|i| vec![i, k + i]).collect(), false))
            .unwrap();
        (host, b)
    }

    /// K5 with edge 0 subdivided `s` times, drawn with its crossing off the thread.
    pub(crate) fn subdivided_k5(s: usize) -> Drawing {
        let g = families::complete(5).subdivide(0, s);
        for e in 1..10 {
            for f in e + 1..10 {
                let (a, b) = g.endpoints(e);
                let (c, d) = g.endpoints(f);
                if [a, b].iter().any(|v| *v == c || *v == d) {
                    continue;
                }
                let x = Crossing { edge_a: e, edge_b: f, pos_a: 0, pos_b: 0 };
                if let Ok(d) = planarize(&g, &[x]) {
                    return d;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn paper_policy() {
        let p = ReductionPolicy::paper(1);
        assert_eq!(p.c0, 19);
        assert_eq!(p.min_order(2), 232);
        assert!(!p.overridden);
        let q = p.with_min_order(3);
        assert_eq!(q.min_order(2), 3);
        assert!(q.to_string().contains("override"));
    }

    #[test]
    fn extended_tile_of_ladder() {
        let (host, b) = spoke_band(20);
        let x = extended_tile(&host, &b, 5).unwrap();
        assert_eq!(x.vertices.len(), 4);
        assert_eq!(x.cycle.len(), 4);
        assert!(x.interior_edges().is_empty());
        assert!(extended_tile(&host, &b, 1).is_err());
    }

    #[test]
    fn orientation_of_two_triangles() {
        let g = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        let emb = planarity_embed(&g).unwrap();
        let flip = |e: &EmbeddedMultigraph| {
            let mut r = e.rotation.clone();
            for v in 3..6 {
                r[v].reverse();
            }
            EmbeddedMultigraph::new(e.graph.clone(), r).unwrap()
        };
        let d0 = Drawing::from_plane(&emb);
        let d1 = Drawing::from_plane(&flip(&emb));
        let d2 = Drawing::from_plane(&flip(&flip(&emb)));
        let (c1, c2) = ([0, 1, 2], [3, 4, 5]);
        assert_eq!(orientation(&d0, &d0, &c1, &c2).unwrap(), Orientation::Straight);
        assert_eq!(orientation(&d0, &d1, &c1, &c2).unwrap(), Orientation::Twisted);
        assert_eq!(orientation(&d0, &d2, &c1, &c2).unwrap(), Orientation::Straight);
        assert_eq!(orientation(&d0, &Drawing::from_plane(&emb.reflected()), &c1, &c2).unwrap(), Orientation::Straight);
        assert!(orientation(&d0, &d0, &c1, &[2, 3, 4]).is_err());
    }

    #[test]
    fn necklace_reduction_of_long_thread() {
        let d = subdivided_k5(50);
        let thread: Vec<Vertex> = [0].into_iter().chain(5..55).chain([1]).collect();
        let neck = necklace_of_thread(&d, &thread).unwrap();
        let r = reduce_necklace(&d, &neck).unwrap();
        assert_eq!(r.p, 1);
        assert_eq!(canonical_code(&r.graph), canonical_code(&families::complete(5)));

        let short = Necklace { vertices: vec![0, 5], ..neck };
        let r = reduce_necklace(&d, &short).unwrap();
        assert_eq!(r.p, 1);
        assert_eq!(canonical_code(&r.graph), canonical_code(&d.original));
        assert_eq!(canonical_code(&reduce_threads(&d.original).unwrap()), canonical_code(&families::complete(5)));
    }

    #[test]
    fn band_reduction_shortens_ladder() {
        let (host, b) = spoke_band(50);
        let rep = find_reducible_repetition(&host, &b, 3, 0).unwrap().unwrap();
        let policy = ReductionPolicy::paper(2).with_min_order(3);
        let r = reduce_band(&host, &b, rep.first, rep.second, &policy, &BTreeSet::new()).unwrap();
        let removed = rep.second.1 - rep.first.1;
        assert_eq!(canonical_code(&r.embedding.graph), canonical_code(&families::circular_ladder(50 - removed)));
        assert!(r.band.is_some());
        assert!(r.policy.overridden);
        assert!(r.hypotheses.edge_linked && r.hypotheses.shelled);
        assert_eq!(r.hypotheses.k, 2);
        assert!(reduce_band(&host, &b, (0, 2), (3, 5), &policy, &BTreeSet::new()).is_err());
    }

    #[test]
    fn expansions_round_trip() {
        let k5 = families::complete(5);
        let x = expand(&k5, &ExpansionSpec::Subdivide { edge: 0, k: 1 }, None).unwrap();
        assert_eq!(x.graph.n(), 6);
        assert_eq!(canonical_code(&reduce_expansion(&x).unwrap()), canonical_code(&k5));

        let mut doubled = k5.clone();
        doubled.add_edge(0, 1).unwrap();
        let x = expand(&doubled, &ExpansionSpec::Paths { edge: 0, p: 2 }, None).unwrap();
        assert_eq!(x.graph.n(), 7);
        assert_eq!(x.graph.multiplicity(0, 1), 0);
        assert_eq!(canonical_code(&reduce_expansion(&x).unwrap()), canonical_code(&doubled));
        assert!(expand(&k5, &ExpansionSpec::Paths { edge: 0, p: 2 }, None).is_err());

        let (host, b) = spoke_band(12);
        let x = expand(&host.graph, &ExpansionSpec::DupBand { band: 0, from: 2, to: 5 }, Some((&host, &[b]))).unwrap();
        assert_eq!(canonical_code(&x.graph), canonical_code(&families::circular_ladder(15)));
        assert_eq!(canonical_code(&reduce_expansion(&x).unwrap()), canonical_code(&host.graph));
        assert!(matches!(x.record, ExpansionRecord::Band { band: Band { far: Far::Face(_), .. }, .. }));
    }

    #[test]
    fn spec_text() {
        let specs = parse_expansion_specs("subdivide e0\npaths e3 2; dup-band 0 1 4\n").unwrap();
        assert_eq!(specs.len(), 3);
        assert_eq!(specs[1], ExpansionSpec::Paths { edge: 3, p: 2 });
        assert_eq!(specs[0].to_string(), "subdivide e0");
        assert!(parse_expansion_specs("explode e1").is_err());
    }

    #[test]
    fn reduction_criticality_harness() {
        let k5 = families::complete(5);
        let sub = k5.subdivide(0, 1);
        assert!(verify_reduction_critical(&sub, &k5, 1, None).unwrap().both_critical());
        let mut doubled = k5.clone();
        doubled.add_edge(0, 1).unwrap();
        let r = verify_reduction_critical(&doubled, &k5, 1, None).unwrap();
        assert!(matches!(r.original, Verdict::NotCritical(_)));
        assert_eq!(r.reduced, Verdict::Critical);
        let k33 = families::complete_bipartite(3, 3);
        assert!(verify_reduction_critical(&k33.subdivide(0, 1), &k33, 1, None).unwrap().both_critical());
    }

    fn first_drawing(g: &Multigraph, options: &[Vec<Crossing>]) -> Drawing {
        options.iter().find_map(|cs| planarize(g, cs).ok()).expect("no realizable option")
    }

    /// `CL_k` with a vertex inside each given square, and a drawing with
    /// those vertices pulled out across a rail.
    fn wheel_gadget(k: usize, squares: &[usize]) -> (Drawing, Drawing, Band, Vec<Vertex>) {
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
                    let mut c = cs.clone();
                    let (e1, e2) = if r1 < k { (base + 2, base + 3) } else { (base, base + 1) };
                    c.push(Crossing { edge_a: r1, edge_b: e1, pos_a: 0, pos_b: 0 });
                    c.push(Crossing { edge_a: r2, edge_b: e2, pos_a: 0, pos_b: 0 });
                    c.sort();
                    next.push(c);
                }
            }
            options = next;
        }
        let d = first_drawing(&g, &options);
        let host = &reference.planarization;
        let b = locate_band(host, (0..k).map(|i| vec![i, k + i]).collect(), false).unwrap();
        (reference, d, b, hubs)
    }

    fn tile_holding(host: &EmbeddedMultigraph, b: &Band, w: Vertex) -> usize {
        tiles_of(host, b).unwrap().iter().position(|t| t.vertices.contains(&w)).unwrap() + 1
    }

    #[test]
    fn make_flat_pulls_a_wheel_back_inside() {
        let (reference, d, b, hubs) = wheel_gadget(8, &[3]);
        assert_eq!(d.crossing_count(), 2);
        let t = tile_holding(&reference.planarization, &b, hubs[0]);
        let x = extended_tile(&reference.planarization, &b, t).unwrap();
        assert!(is_flat(&reference, &reference, &x));
        assert!(!is_flat(&reference, &d, &x));
        let r = make_flat(&reference, &b, &[t], &d).unwrap();
        assert_eq!((r.before, r.after), (2, 0));
        assert!(is_flat(&reference, &r.drawing, &x));
        r.drawing.validate().unwrap();

        let same = make_flat(&reference, &b, &[t], &reference).unwrap();
        assert_eq!(same.after, 0);
        assert!(make_flat(&reference, &b, &[t, t], &d).is_err());
    }

    #[test]
    fn make_flat_two_tiles() {
        let (reference, d, b, hubs) = wheel_gadget(10, &[2, 6]);
        assert_eq!(d.crossing_count(), 4);
        let ts: Vec<usize> = hubs.iter().map(|&w| tile_holding(&reference.planarization, &b, w)).collect();
        let r = make_flat(&reference, &b, &ts, &d).unwrap();
        assert_eq!(r.after, 0);
        let one = make_flat(&reference, &b, &ts[..1], &d).unwrap();
        assert_eq!(one.after, 2);
        for &t in &ts {
            assert!(is_flat(&reference, &r.drawing, &extended_tile(&reference.planarization, &b, t).unwrap()));
        }
    }

    fn ordered(b: &Band, s1: usize, s2: usize) -> (usize, usize) {
        let at = |s: usize| b.paths.iter().position(|p| p[0] == s).unwrap();
        (at(s1).min(at(s2)), at(s1).max(at(s2)))
    }

    #[test]
    fn splice_identity_and_shrink() {
        let k = 16;
        let g = families::circular_ladder(k);
        let reference = Drawing::from_plane(&planarity_embed(&g).unwrap());
        let host = &reference.planarization;
        let b = locate_band(host, (0..k).map(|i| vec![i, k + i]).collect(), false).unwrap();
        let (lo, hi) = ordered(&b, 4, 10);
        let same = Replacement::from_subband(host, &b, lo, hi).unwrap();
        let r = splice(&reference, &b, lo, hi, &reference, &same).unwrap();
        assert_eq!(r.after, 0);
        assert_eq!(canonical_code(&r.graph), canonical_code(&g));

        // a rail drawn around a spoke far from the subband
        let options: Vec<Vec<Crossing>> = (0..2 * k)
            .flat_map(|f| (0..2 * k).map(move |h| (f, h)))
            .filter(|&(f, h)| f < h && f != 13 && h != 13)
            .flat_map(|(f, h)| {
                [(0, 1), (1, 0)].map(|(pf, ph)| {
                    let mut c = vec![
                        Crossing { edge_a: 13.min(f), edge_b: 13.max(f), pos_a: if f > 13 { pf } else { 0 }, pos_b: if f > 13 { 0 } else { pf } },
                        Crossing { edge_a: 13.min(h), edge_b: 13.max(h), pos_a: if h > 13 { ph } else { 0 }, pos_b: if h > 13 { 0 } else { ph } },
                    ];
                    c.sort();
                    c
                })
            })
            .collect();
        let d1 = first_drawing(&g, &options);
        assert_eq!(d1.crossing_count(), 2);
        let short = Replacement::from_subband(host, &b, lo, lo + 2).unwrap();
        let r = splice(&reference, &b, lo, hi, &d1, &short).unwrap();
        assert!(r.constructed);
        assert!(r.after <= r.before);
        assert_eq!(canonical_code(&r.graph), canonical_code(&families::circular_ladder(k - 4)));
        r.drawing.validate().unwrap();
        assert!(splice(&reference, &b, lo, lo + 3, &d1, &short).is_err());
    }

    #[test]
    fn splice_routes_cut_edges_along_crossed_rails() {
        let k = 16;
        let mut g = families::circular_ladder(k);
        let extra = g.add_edge(15, k + 15).unwrap();
        let d1 = first_drawing(
            &g,
            &[0, 1].map(|p| {
                vec![
                    Crossing { edge_a: 6, edge_b: extra, pos_a: 0, pos_b: p },
                    Crossing { edge_a: k + 6, edge_b: extra, pos_a: 0, pos_b: 1 - p },
                ]
            }),
        );
        let reference = Drawing::from_plane(&planarity_embed(&g).unwrap());
        let host = &reference.planarization;
        let b = locate_band(host, (0..k - 1).map(|i| vec![i, k + i]).collect(), false).unwrap();
        let (lo, hi) = ordered(&b, 4, 10);
        let short = Replacement::from_subband(host, &b, lo, lo + 2).unwrap();
        let r = splice(&reference, &b, lo, hi, &d1, &short).unwrap();
        assert!(r.constructed);
        assert_eq!((r.before, r.after), (2, 2));
        r.drawing.validate().unwrap();
    }

    #[test]
    fn splice_refuses_twisted_drawings() {
        let k = 16;
        let g = families::circular_ladder(k);
        let reference = Drawing::from_plane(&planarity_embed(&g).unwrap());
        let host = &reference.planarization;
        let b = locate_band(host, (0..k).map(|i| vec![i, k + i]).collect(), false).unwrap();
        let swap = |i: usize| Crossing { edge_a: i, edge_b: k + i, pos_a: 0, pos_b: 0 };
        let d1 = planarize(&g, &[swap(2), swap(7)]).unwrap();
        let (lo, hi) = ordered(&b, 4, 10);
        let same = Replacement::from_subband(host, &b, lo, hi).unwrap();
        match splice(&reference, &b, lo, hi, &d1, &same) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("twisted"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let (lo, hi) = ordered(&b, 8, 14);
        assert!(splice(&reference, &b, lo, hi, &d1, &Replacement::from_subband(host, &b, lo, hi).unwrap()).is_ok());
    }
}
