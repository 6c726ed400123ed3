//! Bands, fans, tiles, nests and necklaces in plane graphs.
//!
//! Faces are named by their index in [`EmbeddedMultigraph::faces`]. Paths
//! are vertex sequences; consecutive vertices are joined by the edge of
//! smallest id between them.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::canon::{embedded_code, Labels};
use crate::error::{arg, Error, Result};
use crate::flow::{edge_disjoint_masked, max_vertex_disjoint_paths};
use crate::graph::{edge_of, twin, Dart, EdgeId, EmbeddedMultigraph, Face, Vertex};

/// Far side of a band: a second face, or the apex of a fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Far {
    Face(usize),
    Apex(Vertex),
}

/// An `(F1, F2)`-band or `(F1, u)`-fan. Path `i` runs from `v_i` on `F1` to
/// `u_{m-i}` on `F2` (or to the apex).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Band {
    pub f1: usize,
    pub far: Far,
    pub paths: Vec<Vec<Vertex>>,
}

pub type Fan = Band;

impl Band {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn is_fan(&self) -> bool {
        matches!(self.far, Far::Apex(_))
    }

    pub fn apex(&self) -> Option<Vertex> {
        match self.far {
            Far::Apex(u) => Some(u),
            Far::Face(_) => None,
        }
    }

    pub fn is_necklace(&self) -> bool {
        !self.is_fan() && self.paths.iter().all(|p| p.len() == 1)
    }

    /// Paths `lo..=hi`.
    pub fn sub(&self, lo: usize, hi: usize) -> Band {
        Band { f1: self.f1, far: self.far, paths: self.paths[lo..=hi].to_vec() }
    }

    /// True for a fan whose apex is not on `F1`.
    pub fn is_proper_fan(&self, host: &EmbeddedMultigraph) -> bool {
        match self.far {
            Far::Apex(u) => {
                let faces = host.faces();
                self.f1 < faces.len() && !faces[self.f1].vertices(&host.graph).contains(&u)
            }
            Far::Face(_) => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NestKind {
    /// Nested cycles pairwise meeting in the same `k` vertices.
    Cycles(usize),
    Face,
    DegenerateFace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nest {
    pub kind: NestKind,
    /// Innermost first, each as its edge sequence (`Cycles` kind).
    pub cycles: Vec<Vec<EdgeId>>,
    /// `P_1..P_m` (face kinds); degenerate paths end at the apex.
    pub paths: Vec<Vec<Vertex>>,
    pub shared: BTreeSet<Vertex>,
    pub face: Option<usize>,
    pub apex: Option<Vertex>,
}

impl Nest {
    pub fn depth(&self) -> usize {
        match self.kind {
            NestKind::Cycles(_) => self.cycles.len(),
            _ => self.paths.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Necklace {
    pub f1: usize,
    pub f2: usize,
    pub vertices: Vec<Vertex>,
}

impl Necklace {
    pub fn to_band(&self) -> Band {
        Band { f1: self.f1, far: Far::Face(self.f2), paths: self.vertices.iter().map(|&v| vec![v]).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Band(Band),
    Nest(Nest),
    Necklace(Necklace),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub index: usize,
    pub vertices: BTreeSet<Vertex>,
    pub edges: BTreeSet<EdgeId>,
    /// Boundary segment of `F1` from `v_i` to `v_{i+1}` (vertices).
    pub span1: Vec<Vertex>,
    /// Boundary segment of `F2` between the far ends; empty for fans.
    pub span2: Vec<Vertex>,
}

impl Tile {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Face data shared by the routines below.
pub(crate) struct Ctx<'a> {
    pub host: &'a EmbeddedMultigraph,
    pub faces: Vec<Face>,
    pub dart_face: Vec<usize>,
    pub walk: Vec<Vec<Vertex>>,
    pub pos: Vec<HashMap<Vertex, usize>>,
    between: HashMap<(Vertex, Vertex), EdgeId>,
}

impl<'a> Ctx<'a> {
    pub fn new(host: &'a EmbeddedMultigraph) -> Self {
        let faces = host.faces();
        let dart_face = host.dart_faces(&faces);
        let g = &host.graph;
        let walk: Vec<Vec<Vertex>> = faces.iter().map(|f| f.darts.iter().map(|&d| g.tail(d)).collect()).collect();
        let pos = walk
            .iter()
            .map(|w| {
                let mut m = HashMap::new();
                for (i, &v) in w.iter().enumerate() {
                    m.entry(v).or_insert(i);
                }
                m
            })
            .collect();
        let mut between = HashMap::new();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            between.entry((a.min(b), a.max(b))).or_insert(e);
        }
        Ctx { host, faces, dart_face, walk, pos, between }
    }

    pub fn edge(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        self.between.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn path_edges(&self, p: &[Vertex]) -> Option<Vec<EdgeId>> {
        p.windows(2).map(|w| self.edge(w[0], w[1])).collect()
    }

    pub fn on_face(&self, f: usize, v: Vertex) -> bool {
        self.pos[f].contains_key(&v)
    }

    /// Darts of face `f` walking forward from `a` to `b`.
    fn segment(&self, f: usize, a: Vertex, b: Vertex) -> Vec<Dart> {
        let (pa, pb) = (self.pos[f][&a], self.pos[f][&b]);
        let len = self.walk[f].len();
        let steps = (pb + len - pa) % len;
        (0..steps).map(|k| self.faces[f].darts[(pa + k) % len]).collect()
    }

    fn segment_vertices(&self, f: usize, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.segment(f, a, b).iter().map(|&d| self.host.graph.tail(d)).collect();
        out.push(b);
        out
    }
}

/// Position sequence is cyclically increasing.
fn cyclic_forward(pos: &[usize]) -> bool {
    let m = pos.len();
    (0..m).filter(|&i| pos[(i + 1) % m] < pos[i]).count() <= 1
}

fn cyclic_either(pos: &[usize]) -> Option<bool> {
    let rev: Vec<usize> = pos.iter().rev().copied().collect();
    if cyclic_forward(pos) {
        Some(true)
    } else if cyclic_forward(&rev) {
        Some(false)
    } else {
        None
    }
}

fn check_path(ctx: &Ctx, p: &[Vertex], what: &str, out: &mut Vec<String>) {
    let n = ctx.host.graph.n();
    if p.is_empty() {
        out.push(format!("{what} is empty"));
        return;
    }
    if let Some(&v) = p.iter().find(|&&v| v >= n) {
        out.push(format!("{what} uses unknown vertex {v}"));
        return;
    }
    if p.iter().collect::<BTreeSet<_>>().len() != p.len() {
        out.push(format!("{what} repeats a vertex"));
    }
    if ctx.path_edges(p).is_none() {
        out.push(format!("{what} has non-adjacent consecutive vertices"));
    }
}

/// Orientation of a valid band: `true` when `v_1..v_m` follow the walk of `F1`.
fn band_direction(ctx: &Ctx, b: &Band) -> Option<bool> {
    let v: Vec<usize> = b.paths.iter().map(|p| ctx.pos[b.f1].get(&p[0]).copied()).collect::<Option<_>>()?;
    let dir = cyclic_either(&v)?;
    if let Far::Face(f2) = b.far {
        // u_1..u_m are the far ends in reverse path order
        let u: Vec<usize> =
            b.paths.iter().rev().map(|p| ctx.pos[f2].get(p.last().unwrap()).copied()).collect::<Option<_>>()?;
        let m = u.len();
        if m >= 3 && cyclic_forward(&v) && cyclic_forward(&u) {
            return Some(true);
        }
        let (rv, ru): (Vec<usize>, Vec<usize>) = (v.iter().rev().copied().collect(), u.iter().rev().copied().collect());
        if m >= 3 && cyclic_forward(&rv) && cyclic_forward(&ru) {
            return Some(false);
        }
        return if m < 3 { Some(dir) } else { None };
    }
    Some(dir)
}

pub fn validate_band(host: &EmbeddedMultigraph, b: &Band) -> Vec<String> {
    let ctx = Ctx::new(host);
    validate_band_ctx(&ctx, b)
}

fn validate_band_ctx(ctx: &Ctx, b: &Band) -> Vec<String> {
    let mut out = Vec::new();
    let nf = ctx.faces.len();
    if b.f1 >= nf {
        return vec![format!("face {} does not exist", b.f1)];
    }
    match b.far {
        Far::Face(f2) if f2 >= nf => return vec![format!("face {f2} does not exist")],
        Far::Face(f2) if f2 == b.f1 => return vec!["the two faces coincide".into()],
        Far::Apex(u) if u >= ctx.host.graph.n() => return vec![format!("apex {u} does not exist")],
        _ => {}
    }
    if b.paths.is_empty() {
        return vec!["no paths".into()];
    }
    for (i, p) in b.paths.iter().enumerate() {
        check_path(ctx, p, &format!("path {}", i + 1), &mut out);
    }
    if !out.is_empty() {
        return out;
    }
    let apex = b.apex();
    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    for (i, p) in b.paths.iter().enumerate() {
        for (k, &v) in p.iter().enumerate() {
            if Some(v) == apex {
                if k + 1 != p.len() {
                    out.push(format!("path {} passes through the apex", i + 1));
                }
                continue;
            }
            if let Some(j) = owner.insert(v, i) {
                out.push(format!("paths {} and {} share vertex {v}", j + 1, i + 1));
            }
        }
        if !ctx.on_face(b.f1, p[0]) {
            out.push(format!("path {} does not start on face {}", i + 1, b.f1));
        }
        match b.far {
            Far::Face(f2) if !ctx.on_face(f2, *p.last().unwrap()) => {
                out.push(format!("path {} does not end on face {f2}", i + 1))
            }
            Far::Apex(u) if *p.last().unwrap() != u => out.push(format!("path {} does not end at the apex", i + 1)),
            _ => {}
        }
    }
    if out.is_empty() && band_direction(ctx, b).is_none() {
        out.push("path ends are not in cyclic order along the faces".into());
    }
    out
}

pub fn validate_structure(host: &EmbeddedMultigraph, s: &Structure) -> Vec<String> {
    match s {
        Structure::Band(b) => validate_band(host, b),
        Structure::Necklace(n) => {
            let mut out = validate_band(host, &n.to_band());
            if n.vertices.len() < 2 {
                out.push("a necklace needs at least two vertices".into());
            }
            out
        }
        Structure::Nest(n) => validate_nest(host, n),
    }
}

/// Faces on each side of the edge set `cut`, by dual search not crossing it.
fn dual_components(ctx: &Ctx, cut: &BTreeSet<EdgeId>, skip: &BTreeSet<usize>) -> Vec<usize> {
    let nf = ctx.faces.len();
    let mut comp = vec![usize::MAX; nf];
    let mut k = 0;
    for s in 0..nf {
        if comp[s] != usize::MAX || skip.contains(&s) {
            continue;
        }
        comp[s] = k;
        let mut q = VecDeque::from([s]);
        while let Some(f) = q.pop_front() {
            for &d in &ctx.faces[f].darts {
                if cut.contains(&edge_of(d)) {
                    continue;
                }
                let h = ctx.dart_face[twin(d)];
                if comp[h] == usize::MAX && !skip.contains(&h) {
                    comp[h] = k;
                    q.push_back(h);
                }
            }
        }
        k += 1;
    }
    comp
}

fn cycle_vertices(ctx: &Ctx, cyc: &[EdgeId]) -> Option<BTreeSet<Vertex>> {
    let g = &ctx.host.graph;
    if cyc.is_empty() || cyc.iter().any(|&e| e >= g.m()) {
        return None;
    }
    let mut deg: HashMap<Vertex, usize> = HashMap::new();
    for &e in cyc {
        let (a, b) = g.endpoints(e);
        *deg.entry(a).or_default() += 1;
        *deg.entry(b).or_default() += 1;
    }
    if deg.values().any(|&d| d != 2) || cyc.iter().collect::<BTreeSet<_>>().len() != cyc.len() {
        return None;
    }
    // connected
    let verts: BTreeSet<Vertex> = deg.keys().copied().collect();
    let mut seen = BTreeSet::from([*verts.first().unwrap()]);
    let mut changed = true;
    while changed {
        changed = false;
        for &e in cyc {
            let (a, b) = g.endpoints(e);
            if seen.contains(&a) != seen.contains(&b) {
                seen.insert(a);
                seen.insert(b);
                changed = true;
            }
        }
    }
    (seen == verts).then_some(verts)
}

pub fn validate_nest(host: &EmbeddedMultigraph, n: &Nest) -> Vec<String> {
    let ctx = Ctx::new(host);
    let mut out = Vec::new();
    match n.kind {
        NestKind::Cycles(k) => {
            if n.shared.len() != k {
                out.push(format!("shared set has {} vertices, expected {k}", n.shared.len()));
            }
            let mut vsets = Vec::new();
            for (i, c) in n.cycles.iter().enumerate() {
                match cycle_vertices(&ctx, c) {
                    Some(v) => vsets.push(v),
                    None => {
                        out.push(format!("cycle {} is not a cycle", i + 1));
                        return out;
                    }
                }
            }
            let m = n.cycles.len();
            for i in 0..m {
                for j in i + 1..m {
                    if n.cycles[i].iter().any(|e| n.cycles[j].contains(e)) {
                        out.push(format!("cycles {} and {} share an edge", i + 1, j + 1));
                    }
                    let common: BTreeSet<Vertex> = vsets[i].intersection(&vsets[j]).copied().collect();
                    if common != n.shared {
                        out.push(format!("cycles {} and {} meet in {:?}", i + 1, j + 1, common));
                    }
                }
            }
            if m >= 2 && out.is_empty() {
                out.extend(check_nesting(&ctx, &n.cycles));
            }
        }
        NestKind::Face | NestKind::DegenerateFace => {
            let Some(f) = n.face.filter(|&f| f < ctx.faces.len()) else {
                return vec!["missing or unknown face".into()];
            };
            for (i, p) in n.paths.iter().enumerate() {
                check_path(&ctx, p, &format!("path {}", i + 1), &mut out);
            }
            if !out.is_empty() {
                return out;
            }
            let apex = if n.kind == NestKind::DegenerateFace { n.apex } else { None };
            if n.kind == NestKind::DegenerateFace && apex.is_none_or(|u| !ctx.on_face(f, u)) {
                return vec!["apex missing or not on the face".into()];
            }
            let mut owner: HashMap<Vertex, usize> = HashMap::new();
            for (i, p) in n.paths.iter().enumerate() {
                for &v in p {
                    if Some(v) == apex {
                        continue;
                    }
                    if let Some(j) = owner.insert(v, i) {
                        out.push(format!("paths {} and {} share vertex {v}", j + 1, i + 1));
                    }
                }
                if !ctx.on_face(f, p[0]) || !ctx.on_face(f, *p.last().unwrap()) {
                    out.push(format!("path {} does not join two vertices of the face", i + 1));
                }
                if let Some(u) = apex {
                    if *p.last().unwrap() != u || p[..p.len() - 1].contains(&u) {
                        out.push(format!("path {} does not end at the apex", i + 1));
                    }
                }
            }
            if out.is_empty() {
                let order: Vec<Vertex> = match apex {
                    Some(u) => n.paths.iter().map(|p| p[0]).chain([u]).collect(),
                    None => {
                        let m = n.paths.len();
                        (0..2 * m).map(|i| if i < m { n.paths[i][0] } else { *n.paths[2 * m - 1 - i].last().unwrap() }).collect()
                    }
                };
                let pos: Vec<usize> = order.iter().map(|v| ctx.pos[f][v]).collect();
                if cyclic_either(&pos).is_none() {
                    out.push("path ends are not in cyclic order along the face".into());
                }
            }
        }
    }
    out
}

/// Each cycle lies in the closed disk of every later one, the disk being
/// the side away from a face beyond the last cycle.
fn check_nesting(ctx: &Ctx, cycles: &[Vec<EdgeId>]) -> Vec<String> {
    let m = cycles.len();
    let last: BTreeSet<EdgeId> = cycles[m - 1].iter().copied().collect();
    let comp = dual_components(ctx, &last, &BTreeSet::new());
    let inner = comp[ctx.dart_face[2 * cycles[0][0]]];
    let Some(outer) = (0..ctx.faces.len()).find(|&f| comp[f] != inner) else {
        return vec!["outermost cycle does not separate".into()];
    };
    let mut out = Vec::new();
    for j in 1..m {
        let cut: BTreeSet<EdgeId> = cycles[j].iter().copied().collect();
        let comp = dual_components(ctx, &cut, &BTreeSet::new());
        for (i, c) in cycles.iter().enumerate().take(j) {
            if c.iter().any(|&e| comp[ctx.dart_face[2 * e]] == comp[outer] && !cut.contains(&e)) {
                out.push(format!("cycle {} is not inside cycle {}", i + 1, j + 1));
            }
        }
    }
    out
}

fn tile_between(ctx: &Ctx, f1: usize, far: Far, forward: bool, p: &[Vertex], q: &[Vertex], index: usize) -> Tile {
    let g = &ctx.host.graph;
    let (a, b) = if forward { (p[0], q[0]) } else { (q[0], p[0]) };
    let s1 = ctx.segment(f1, a, b);
    let span1 = ctx.segment_vertices(f1, a, b);
    let (s2, span2) = match far {
        Far::Face(f2) => {
            let (pe, qe) = (*p.last().unwrap(), *q.last().unwrap());
            let (a, b) = if forward { (qe, pe) } else { (pe, qe) };
            (ctx.segment(f2, a, b), ctx.segment_vertices(f2, a, b))
        }
        Far::Apex(_) => (Vec::new(), Vec::new()),
    };
    let mut edges: BTreeSet<EdgeId> = ctx.path_edges(p).unwrap_or_default().into_iter().collect();
    edges.extend(ctx.path_edges(q).unwrap_or_default());
    let blocked = edges.clone();
    let mut vertices: BTreeSet<Vertex> = p.iter().chain(q).copied().collect();
    let mut skip = BTreeSet::from([f1]);
    if let Far::Face(f2) = far {
        skip.insert(f2);
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for &d in s1.iter().chain(&s2) {
        edges.insert(edge_of(d));
        vertices.insert(g.tail(d));
        vertices.insert(g.head(d));
        let h = ctx.dart_face[twin(d)];
        if !skip.contains(&h) && seen.insert(h) {
            queue.push_back(h);
        }
    }
    while let Some(f) = queue.pop_front() {
        for &d in &ctx.faces[f].darts {
            edges.insert(edge_of(d));
            vertices.insert(g.tail(d));
            if blocked.contains(&edge_of(d)) {
                continue;
            }
            let h = ctx.dart_face[twin(d)];
            if !skip.contains(&h) && seen.insert(h) {
                queue.push_back(h);
            }
        }
    }
    Tile { index, vertices, edges, span1, span2 }
}

/// Tiles between consecutive paths of a valid band or fan.
pub fn tiles_of(host: &EmbeddedMultigraph, b: &Band) -> Result<Vec<Tile>> {
    let ctx = Ctx::new(host);
    tiles_ctx(&ctx, b)
}

fn tiles_ctx(ctx: &Ctx, b: &Band) -> Result<Vec<Tile>> {
    if let Some(v) = validate_band_ctx(ctx, b).first() {
        return Err(Error::Precondition(format!("invalid band: {v}")));
    }
    let forward = band_direction(ctx, b).unwrap();
    Ok((0..b.len().saturating_sub(1))
        .map(|i| tile_between(ctx, b.f1, b.far, forward, &b.paths[i], &b.paths[i + 1], i))
        .collect())
}

pub fn support(tiles: &[Tile]) -> (BTreeSet<Vertex>, BTreeSet<EdgeId>) {
    let mut v = BTreeSet::new();
    let mut e = BTreeSet::new();
    for t in tiles {
        v.extend(&t.vertices);
        e.extend(&t.edges);
    }
    (v, e)
}

fn tile_shelled(b: &Band, t: &Tile) -> bool {
    let (p, q) = (&b.paths[t.index], &b.paths[t.index + 1]);
    if p.len() < 2 || q.len() < 2 {
        return false;
    }
    // v_i .. along F1 .. v_{i+1}, down q, along F2, back up p
    let mut cyc: Vec<Vertex> = Vec::new();
    let s1 = if t.span1.first() == Some(&p[0]) { t.span1.clone() } else { t.span1.iter().rev().copied().collect() };
    cyc.extend(&s1[..s1.len() - 1]);
    cyc.extend(&q[..q.len() - 1]);
    match b.far {
        Far::Face(_) => {
            let s2 = if t.span2.first() == q.last() { t.span2.clone() } else { t.span2.iter().rev().copied().collect() };
            cyc.extend(&s2[..s2.len() - 1]);
        }
        Far::Apex(u) => cyc.push(u),
    }
    cyc.extend(p[1..p.len() - 1].iter().rev());
    cyc.len() >= 3 && cyc.iter().collect::<BTreeSet<_>>().len() == cyc.len()
}

/// Per-tile shelledness.
pub fn is_shelled(host: &EmbeddedMultigraph, b: &Band) -> Result<Vec<bool>> {
    Ok(tiles_of(host, b)?.iter().map(|t| tile_shelled(b, t)).collect())
}

/// Search for a band (then a proper fan) of length at least `min_len` with
/// tiles of at most `max_tile` vertices, all disjoint from `forbidden`.
/// Paths meet the two sides only at their ends.
pub fn find_band_or_fan(
    host: &EmbeddedMultigraph,
    forbidden: &BTreeSet<Vertex>,
    min_len: usize,
    max_tile: usize,
    budget: usize,
) -> Result<Option<Band>> {
    let ctx = Ctx::new(host);
    let nf = ctx.faces.len();
    let mut pairs: Vec<(usize, usize)> = (0..nf).flat_map(|a| (a + 1..nf).map(move |b| (a, b))).collect();
    pairs.sort_by_key(|&(a, b)| (ctx.walk[a].len().min(ctx.walk[b].len()), a, b));
    let mut steps = 0usize;
    for (a, b) in pairs {
        if let Some(band) = chain_search(&ctx, a, Far::Face(b), forbidden, min_len, max_tile, budget, &mut steps)? {
            return Ok(Some(band));
        }
    }
    for f in 0..nf {
        for u in 0..host.graph.n() {
            if ctx.on_face(f, u) || forbidden.contains(&u) {
                continue;
            }
            if let Some(band) = chain_search(&ctx, f, Far::Apex(u), forbidden, min_len, max_tile, budget, &mut steps)? {
                return Ok(Some(band));
            }
        }
    }
    Ok(None)
}

fn candidate_paths(ctx: &Ctx, f1: usize, far: Far, forbidden: &BTreeSet<Vertex>, max_len: usize) -> Vec<Vec<Vertex>> {
    let g = &ctx.host.graph;
    let adj = g.adjacency();
    let at_end = |v: Vertex| match far {
        Far::Face(f2) => ctx.on_face(f2, v),
        Far::Apex(u) => v == u,
    };
    let mut out = Vec::new();
    for &s in &ctx.walk[f1] {
        if forbidden.contains(&s) {
            continue;
        }
        if at_end(s) {
            if !matches!(far, Far::Apex(_)) {
                out.push(vec![s]);
            }
            continue;
        }
        let mut stack = vec![vec![s]];
        while let Some(p) = stack.pop() {
            let v = *p.last().unwrap();
            if p.len() >= max_len {
                continue;
            }
            let nbrs: BTreeSet<Vertex> = adj[v].iter().map(|&(w, _)| w).collect();
            for w in nbrs {
                if p.contains(&w) || forbidden.contains(&w) || ctx.on_face(f1, w) {
                    continue;
                }
                let mut np = p.clone();
                np.push(w);
                if at_end(w) {
                    out.push(np);
                } else {
                    stack.push(np);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[allow(clippy::too_many_arguments)]
fn chain_search(
    ctx: &Ctx,
    f1: usize,
    far: Far,
    forbidden: &BTreeSet<Vertex>,
    min_len: usize,
    max_tile: usize,
    budget: usize,
    steps: &mut usize,
) -> Result<Option<Band>> {
    let cands = candidate_paths(ctx, f1, far, forbidden, max_tile);
    if cands.len() < min_len.max(1) {
        return Ok(None);
    }
    let len1 = ctx.walk[f1].len();
    let far_pos = |p: &Vec<Vertex>| match far {
        Far::Face(f2) => ctx.pos[f2][p.last().unwrap()],
        Far::Apex(_) => 0,
    };
    let len2 = match far {
        Far::Face(f2) => ctx.walk[f2].len(),
        Far::Apex(_) => 1,
    };
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| (ctx.pos[f1][&cands[i][0]], cands[i].len()));

    struct St<'c> {
        chain: Vec<usize>,
        used: BTreeSet<Vertex>,
        best: Option<Vec<usize>>,
        cands: &'c [Vec<Vertex>],
    }
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        ctx: &Ctx,
        st: &mut St,
        order: &[usize],
        f1: usize,
        far: Far,
        rel: &dyn Fn(usize) -> (usize, usize),
        forbidden: &BTreeSet<Vertex>,
        min_len: usize,
        max_tile: usize,
        budget: usize,
        steps: &mut usize,
    ) -> Result<bool> {
        *steps += 1;
        if *steps > budget {
            return Err(Error::Inconclusive(format!("band search exceeded {budget} steps")));
        }
        let last = *st.chain.last().unwrap();
        let (r1, r2) = rel(last);
        let mut extended = false;
        for &c in order {
            let (c1, c2) = rel(c);
            let fan = matches!(far, Far::Apex(_));
            if c1 <= r1 || (!fan && c2 <= r2) {
                continue;
            }
            let path = &st.cands[c];
            let apex = match far {
                Far::Apex(u) => Some(u),
                _ => None,
            };
            if path.iter().any(|v| Some(*v) != apex && st.used.contains(v)) {
                continue;
            }
            let t = tile_between(ctx, f1, far, true, &st.cands[last], path, 0);
            if t.size() > max_tile || t.vertices.iter().any(|v| forbidden.contains(v)) {
                continue;
            }
            extended = true;
            st.chain.push(c);
            for &v in path {
                st.used.insert(v);
            }
            let done = dfs(ctx, st, order, f1, far, rel, forbidden, min_len, max_tile, budget, steps)?;
            if done {
                return Ok(true);
            }
            st.chain.pop();
            for &v in path {
                if Some(v) != apex {
                    st.used.remove(&v);
                }
            }
        }
        if !extended && st.chain.len() >= min_len {
            st.best = Some(st.chain.clone());
            return Ok(true);
        }
        Ok(false)
    }

    for &start in &order {
        let p0 = &cands[start];
        let base1 = ctx.pos[f1][&p0[0]];
        let base2 = far_pos(p0);
        // forward along F1, backward along F2, each within one turn
        let rel = |c: usize| {
            let p = &cands[c];
            ((ctx.pos[f1][&p[0]] + len1 - base1) % len1, (base2 + len2 - far_pos(p)) % len2)
        };
        let mut st = St { chain: vec![start], used: p0.iter().copied().collect(), best: None, cands: &cands };
        if let Some(u) = match far {
            Far::Apex(u) => Some(u),
            _ => None,
        } {
            st.used.remove(&u);
        }
        if dfs(ctx, &mut st, &order, f1, far, &rel, forbidden, min_len, max_tile, budget, steps)? {
            let chain = st.best.unwrap();
            let band = Band { f1, far, paths: chain.iter().map(|&c| cands[c].clone()).collect() };
            if validate_band_ctx(ctx, &band).is_empty() {
                return Ok(Some(band));
            }
        }
    }
    Ok(None)
}

/// Deepest nest of the given kind avoiding `forbidden`, if its depth is at
/// least `min_depth`.
pub fn find_nests(
    host: &EmbeddedMultigraph,
    kind: NestKind,
    min_depth: usize,
    forbidden: &BTreeSet<Vertex>,
) -> Result<Option<Nest>> {
    let ctx = Ctx::new(host);
    let best = match kind {
        NestKind::Cycles(0) => deepest_zero_nest(&ctx, forbidden),
        NestKind::Cycles(1) => deepest_one_nest(&ctx, forbidden),
        NestKind::Cycles(2) => deepest_two_nest(&ctx, forbidden),
        NestKind::Cycles(k) => return arg(format!("{k}-nests are not searched; k must be 0, 1 or 2")),
        NestKind::Face => (0..ctx.faces.len()).filter_map(|f| deepest_face_nest(&ctx, f, forbidden)).max_by_key(|n| n.depth()),
        NestKind::DegenerateFace => {
            (0..ctx.faces.len()).filter_map(|f| deepest_degenerate_nest(&ctx, f, forbidden)).max_by_key(|n| n.depth())
        }
    };
    Ok(best.filter(|n| n.depth() >= min_depth.max(1)))
}

/// Nested vertex-disjoint cycles around a face, peeled by radial distance.
fn deepest_zero_nest(ctx: &Ctx, forbidden: &BTreeSet<Vertex>) -> Option<Nest> {
    let g = &ctx.host.graph;
    let nf = ctx.faces.len();
    let face_verts: Vec<BTreeSet<Vertex>> = ctx.walk.iter().map(|w| w.iter().copied().collect()).collect();
    let mut best: Option<Nest> = None;
    for z in 0..nf {
        for o in 0..nf {
            if o == z {
                continue;
            }
            let mut region: BTreeSet<usize> = BTreeSet::from([z]);
            let mut cycles: Vec<Vec<EdgeId>> = Vec::new();
            let mut used: BTreeSet<Vertex> = BTreeSet::new();
            while !region.contains(&o) {
                // faces reachable from o outside the region
                let mut out_side = BTreeSet::from([o]);
                let mut q = VecDeque::from([o]);
                while let Some(f) = q.pop_front() {
                    for &d in &ctx.faces[f].darts {
                        let h = ctx.dart_face[twin(d)];
                        if !region.contains(&h) && out_side.insert(h) {
                            q.push_back(h);
                        }
                    }
                }
                let cut: Vec<EdgeId> = (0..g.m())
                    .filter(|&e| out_side.contains(&ctx.dart_face[2 * e]) != out_side.contains(&ctx.dart_face[2 * e + 1]))
                    .collect();
                let Some(vs) = cycle_vertices(ctx, &cut) else { break };
                if vs.iter().all(|v| !forbidden.contains(v) && !used.contains(v)) {
                    used.extend(&vs);
                    cycles.push(order_cycle(ctx, &cut));
                }
                let grown: BTreeSet<usize> = (0..nf)
                    .filter(|f| !out_side.contains(f) || !face_verts[*f].is_disjoint(&vs))
                    .collect();
                if grown == region {
                    break;
                }
                region = grown;
            }
            if best.as_ref().is_none_or(|b| cycles.len() > b.depth()) && !cycles.is_empty() {
                best = Some(Nest {
                    kind: NestKind::Cycles(0),
                    cycles,
                    paths: Vec::new(),
                    shared: BTreeSet::new(),
                    face: None,
                    apex: None,
                });
            }
        }
    }
    best
}

/// Edges of a cycle in walking order.
fn order_cycle(ctx: &Ctx, edges: &[EdgeId]) -> Vec<EdgeId> {
    let g = &ctx.host.graph;
    let mut left: Vec<EdgeId> = edges.to_vec();
    let mut out = vec![left.remove(0)];
    let (start, mut at) = g.endpoints(out[0]);
    while at != start || out.len() < edges.len() {
        let Some(k) = left.iter().position(|&e| {
            let (a, b) = g.endpoints(e);
            a == at || b == at
        }) else {
            break;
        };
        let e = left.remove(k);
        let (a, b) = g.endpoints(e);
        at = if a == at { b } else { a };
        out.push(e);
        if left.is_empty() {
            break;
        }
    }
    out
}

fn first_edge(ctx: &Ctx, path: &[Vertex]) -> Vec<EdgeId> {
    ctx.path_edges(path).unwrap_or_default()
}

fn deepest_one_nest(ctx: &Ctx, forbidden: &BTreeSet<Vertex>) -> Option<Nest> {
    let g = &ctx.host.graph;
    let mut best: Option<Nest> = None;
    for x in 0..g.n() {
        if forbidden.contains(&x) {
            continue;
        }
        let rot = &ctx.host.rotation[x];
        let deg = rot.len();
        let within: BTreeSet<Vertex> = (0..g.n()).filter(|v| *v != x && !forbidden.contains(v)).collect();
        for i in 0..deg {
            for j in i + 1..deg {
                let arc_a: Vec<Dart> = rot[i..j].to_vec();
                let arc_b: Vec<Dart> = rot[j..].iter().chain(&rot[..i]).copied().collect();
                let heads = |arc: &[Dart]| -> BTreeSet<Vertex> {
                    arc.iter().map(|&d| g.head(d)).filter(|v| within.contains(v)).collect()
                };
                let (na, nb) = (heads(&arc_a), heads(&arc_b));
                if na.is_empty() || nb.is_empty() {
                    continue;
                }
                let fl = max_vertex_disjoint_paths(g, &na, &nb, Some(&within));
                if best.as_ref().is_some_and(|b| fl.count <= b.depth()) {
                    continue;
                }
                // order outermost first by the position of the A-dart
                let mut cyc: Vec<(usize, Vec<EdgeId>)> = fl
                    .paths
                    .iter()
                    .map(|p| {
                        let (s, t) = (p[0], *p.last().unwrap());
                        let (ia, da) = arc_a.iter().enumerate().find(|(_, &d)| g.head(d) == s).map(|(k, &d)| (k, d)).unwrap();
                        let db = *arc_b.iter().rev().find(|&&d| g.head(d) == t && edge_of(d) != edge_of(da)).unwrap_or(&da);
                        let mut edges = vec![edge_of(da)];
                        edges.extend(first_edge(ctx, p));
                        edges.push(edge_of(db));
                        (ia, edges)
                    })
                    .collect();
                if cyc.iter().any(|(_, e)| e.iter().collect::<BTreeSet<_>>().len() != e.len()) {
                    continue;
                }
                cyc.sort_by_key(|c| std::cmp::Reverse(c.0));
                best = Some(Nest {
                    kind: NestKind::Cycles(1),
                    cycles: cyc.into_iter().map(|c| c.1).collect(),
                    paths: Vec::new(),
                    shared: BTreeSet::from([x]),
                    face: None,
                    apex: None,
                });
            }
        }
    }
    best.filter(|n| validate_nest(ctx.host, n).is_empty())
}

fn deepest_two_nest(ctx: &Ctx, forbidden: &BTreeSet<Vertex>) -> Option<Nest> {
    let g = &ctx.host.graph;
    let adj = g.adjacency();
    let mut best: Option<Nest> = None;
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            if forbidden.contains(&x) || forbidden.contains(&y) {
                continue;
            }
            let within: BTreeSet<Vertex> = (0..g.n()).filter(|v| *v != x && *v != y && !forbidden.contains(v)).collect();
            let nx: BTreeSet<Vertex> = adj[x].iter().map(|&(w, _)| w).filter(|w| within.contains(w)).collect();
            let ny: BTreeSet<Vertex> = adj[y].iter().map(|&(w, _)| w).filter(|w| within.contains(w)).collect();
            // each path as (first dart at x, edges)
            let mut paths: Vec<(Dart, Vec<EdgeId>)> = ctx.host.rotation[x]
                .iter()
                .filter(|&&d| g.head(d) == y && !g.is_loop(edge_of(d)))
                .map(|&d| (d, vec![edge_of(d)]))
                .collect();
            if !nx.is_empty() && !ny.is_empty() {
                for p in max_vertex_disjoint_paths(g, &nx, &ny, Some(&within)).paths {
                    let (s, t) = (p[0], *p.last().unwrap());
                    let ex = ctx.edge(x, s).unwrap();
                    let ey = ctx.edge(t, y).unwrap();
                    let d = if g.tail(2 * ex) == x { 2 * ex } else { 2 * ex + 1 };
                    let mut edges = vec![ex];
                    edges.extend(first_edge(ctx, &p));
                    edges.push(ey);
                    paths.push((d, edges));
                }
            }
            let depth = paths.len() / 2;
            if depth == 0 || best.as_ref().is_some_and(|b| depth <= b.depth()) {
                continue;
            }
            let pos = ctx.host.positions();
            paths.sort_by_key(|p| pos[p.0]);
            let r = 2 * depth;
            let cycles: Vec<Vec<EdgeId>> = (0..depth)
                .rev()
                .map(|i| {
                    let mut c = paths[i].1.clone();
                    c.extend(paths[r - 1 - i].1.iter().rev());
                    c
                })
                .collect();
            let nest = Nest {
                kind: NestKind::Cycles(2),
                cycles,
                paths: Vec::new(),
                shared: BTreeSet::from([x, y]),
                face: None,
                apex: None,
            };
            if validate_nest(ctx.host, &nest).is_empty() {
                best = Some(nest);
            }
        }
    }
    best
}

/// Trim a flow path to its last vertex in `from` and the first vertex in
/// `to` after it.
fn trim(p: &[Vertex], from: &BTreeSet<Vertex>, to: &BTreeSet<Vertex>) -> Vec<Vertex> {
    let s = p.iter().rposition(|v| from.contains(v)).unwrap_or(0);
    let t = s + p[s..].iter().position(|v| to.contains(v)).unwrap_or(p.len() - 1 - s);
    p[s..=t].to_vec()
}

fn deepest_face_nest(ctx: &Ctx, f: usize, forbidden: &BTreeSet<Vertex>) -> Option<Nest> {
    let g = &ctx.host.graph;
    let walk = &ctx.walk[f];
    let len = walk.len();
    let within: BTreeSet<Vertex> = (0..g.n()).filter(|v| !forbidden.contains(v)).collect();
    let mut best: Option<Nest> = None;
    for i in 0..len {
        for j in i + 1..len {
            let a: BTreeSet<Vertex> = walk[i..j].iter().copied().filter(|v| within.contains(v)).collect();
            let b: BTreeSet<Vertex> =
                walk[j..].iter().chain(&walk[..i]).copied().filter(|v| within.contains(v) && !a.contains(v)).collect();
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let fl = max_vertex_disjoint_paths(g, &a, &b, Some(&within));
            if best.as_ref().is_some_and(|n| fl.count <= n.depth()) {
                continue;
            }
            let rel = |v: Vertex| (ctx.pos[f][&v] + len - i) % len;
            let mut paths: Vec<Vec<Vertex>> = fl.paths.iter().map(|p| trim(p, &a, &b)).collect();
            paths.sort_by_key(|p| rel(p[0]));
            let nest = Nest { kind: NestKind::Face, cycles: Vec::new(), paths, shared: BTreeSet::new(), face: Some(f), apex: None };
            if validate_nest(ctx.host, &nest).is_empty() {
                best = Some(nest);
            }
        }
    }
    best
}

fn deepest_degenerate_nest(ctx: &Ctx, f: usize, forbidden: &BTreeSet<Vertex>) -> Option<Nest> {
    let g = &ctx.host.graph;
    let adj = g.adjacency();
    let walk = &ctx.walk[f];
    let len = walk.len();
    let mut best: Option<Nest> = None;
    for (k, &u) in walk.iter().enumerate() {
        if forbidden.contains(&u) {
            continue;
        }
        let within: BTreeSet<Vertex> = (0..g.n()).filter(|v| *v != u && !forbidden.contains(v)).collect();
        let s: BTreeSet<Vertex> = walk.iter().copied().filter(|v| within.contains(v)).collect();
        let t: BTreeSet<Vertex> = adj[u].iter().map(|&(w, _)| w).filter(|w| within.contains(w)).collect();
        if s.is_empty() || t.is_empty() {
            continue;
        }
        let fl = max_vertex_disjoint_paths(g, &s, &t, Some(&within));
        if best.as_ref().is_some_and(|n| fl.count <= n.depth()) {
            continue;
        }
        let rel = |v: Vertex| (ctx.pos[f][&v] + len - k) % len;
        let mut paths: Vec<Vec<Vertex>> = fl
            .paths
            .iter()
            .map(|p| {
                let mut q = trim(p, &s, &t);
                q.push(u);
                q
            })
            .collect();
        paths.sort_by_key(|p| rel(p[0]));
        let nest = Nest {
            kind: NestKind::DegenerateFace,
            cycles: Vec::new(),
            paths,
            shared: BTreeSet::new(),
            face: Some(f),
            apex: Some(u),
        };
        if validate_nest(ctx.host, &nest).is_empty() {
            best = Some(nest);
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestDepthReport {
    pub c: u64,
    pub bound: u64,
    pub max_face_nest: usize,
    pub max_degenerate_nest: usize,
    pub within_bound: bool,
}

/// Deepest `F`-nest and degenerate `F`-nest over all faces of a plane
/// graph (typically the planarization of an optimal drawing), against
/// `15c^2 + 105c + 16`.
pub fn verify_nest_depth_bound(host: &EmbeddedMultigraph, c: u64) -> NestDepthReport {
    let ctx = Ctx::new(host);
    let none = BTreeSet::new();
    let mut fd = 0;
    let mut dd = 0;
    for f in 0..ctx.faces.len() {
        fd = fd.max(deepest_face_nest(&ctx, f, &none).map_or(0, |n| n.depth()));
        dd = dd.max(deepest_degenerate_nest(&ctx, f, &none).map_or(0, |n| n.depth()));
    }
    let bound = 15 * c * c + 105 * c + 16;
    NestDepthReport { c, bound, max_face_nest: fd, max_degenerate_nest: dd, within_bound: fd as u64 <= bound && dd as u64 <= bound }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShelledOrNecklace {
    Shelled(Band),
    Necklace(Necklace),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShelledSearch {
    pub result: Option<ShelledOrNecklace>,
    /// Max tile size of the input.
    pub w: usize,
    pub below_threshold: bool,
}

/// Proper fans are returned whole; otherwise blocks of `f(w)` consecutive
/// paths are tried in order and, failing that, one common span vertex per
/// block forms a necklace.
pub fn find_shelled_or_necklace(host: &EmbeddedMultigraph, b: &Band, f: &dyn Fn(usize) -> usize) -> Result<ShelledSearch> {
    let ctx = Ctx::new(host);
    let tiles = tiles_ctx(&ctx, b)?;
    let w = tiles.iter().map(Tile::size).max().unwrap_or(0);
    let fw = f(w).max(2);
    if b.is_fan() {
        let shelled = tiles.iter().all(|t| tile_shelled(b, t));
        let proper = b.is_proper_fan(host);
        return Ok(ShelledSearch {
            result: (proper || shelled).then(|| ShelledOrNecklace::Shelled(b.clone())),
            w,
            below_threshold: b.len() < fw,
        });
    }
    let blocks = b.len() / fw;
    let mut common = Vec::new();
    for k in 0..blocks {
        let (lo, hi) = (k * fw, (k + 1) * fw - 1);
        let block_tiles = &tiles[lo..hi];
        if block_tiles.iter().all(|t| tile_shelled(b, t)) {
            return Ok(ShelledSearch { result: Some(ShelledOrNecklace::Shelled(b.sub(lo, hi))), w, below_threshold: false });
        }
        let s1: BTreeSet<Vertex> = block_tiles.iter().flat_map(|t| t.span1.iter().copied()).collect();
        let s2: BTreeSet<Vertex> = block_tiles.iter().flat_map(|t| t.span2.iter().copied()).collect();
        let mut shared: Vec<Vertex> = s1.intersection(&s2).copied().collect();
        let f1pos = |v: &Vertex| ctx.pos[b.f1][v];
        shared.sort_by_key(f1pos);
        if let Some(&v) = shared.first() {
            common.push(v);
        }
    }
    let Far::Face(f2) = b.far else { unreachable!() };
    let wp = w * (2 * fw - 1);
    let neck = Necklace { f1: b.f1, f2, vertices: common };
    let ok = neck.vertices.len() >= 2 && validate_band_ctx(&ctx, &neck.to_band()).is_empty();
    Ok(ShelledSearch {
        below_threshold: neck.vertices.len() < f(wp),
        result: ok.then_some(ShelledOrNecklace::Necklace(neck)),
        w,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLinked {
    pub k: usize,
    pub band: Band,
    /// Edge-disjoint paths from the first to the last path (edge lists).
    pub paths: Vec<Vec<EdgeId>>,
    /// One `k`-edge cut per tile.
    pub cuts: Vec<BTreeSet<EdgeId>>,
    pub below_threshold: bool,
}

fn edge_flow_within(
    host: &EmbeddedMultigraph,
    from: &[Vertex],
    to: &[Vertex],
    edges: &BTreeSet<EdgeId>,
    apex: Option<Vertex>,
) -> Result<crate::flow::EdgePaths> {
    let g = &host.graph;
    let strip = |p: &[Vertex]| -> BTreeSet<Vertex> { p.iter().copied().filter(|v| Some(*v) != apex).collect() };
    let forbidden: BTreeSet<Vertex> = apex.into_iter().collect();
    let mask: Vec<bool> = (0..g.m()).map(|e| edges.contains(&e)).collect();
    edge_disjoint_masked(g, &strip(from), &strip(to), &forbidden, Some(&mask))
}

/// Picks the largest `k` realized as an edge-disjoint path count over a long
/// enough stretch and regroups the paths so that every tile carries a
/// `k`-edge cut.
pub fn find_k_edge_linked(host: &EmbeddedMultigraph, b: &Band, f: &dyn Fn(usize, usize) -> usize) -> Result<EdgeLinked> {
    let ctx = Ctx::new(host);
    let tiles = tiles_ctx(&ctx, b)?;
    let m = b.len();
    if m < 2 {
        return arg("at least two paths are required");
    }
    let w = tiles.iter().map(Tile::size).max().unwrap_or(0);
    let c = host.graph.max_multiplicity().max(1);
    let apex = b.apex();
    // p[i][j]: edge-disjoint paths from P_i to P_j inside the support between them
    let mut p = vec![vec![0usize; m]; m];
    for i in 0..m {
        let mut sup = BTreeSet::new();
        for j in i + 1..m {
            sup.extend(&tiles[j - 1].edges);
            p[i][j] = edge_flow_within(host, &b.paths[i], &b.paths[j], &sup, apex)?.count;
        }
    }
    let k0 = 3 * c * w;
    // thresholds n_k and widths w_k
    let mut n = vec![0usize; k0 + 1];
    let mut wk = vec![0usize; k0 + 1];
    n[k0] = f(k0, w);
    wk[k0] = w;
    for i in (0..k0).rev() {
        wk[i] = n[i + 1].saturating_sub(1).saturating_mul(w);
        n[i] = n[i + 1].max(f(i, wk[i]).saturating_sub(1).saturating_mul(n[i + 1].saturating_sub(2)));
    }
    let mut pick = None;
    'outer: for k in (0..=k0).rev() {
        for i in 0..m {
            for j in i + 1..m {
                if p[i][j] == k && j + 1 >= i + n[k] {
                    pick = Some((k, i, j));
                    break 'outer;
                }
            }
        }
    }
    let below_threshold = pick.is_none();
    let (k, i, j) = pick.unwrap_or((p[0][m - 1], 0, m - 1));
    let mut idx = vec![i];
    if k == k0 && !below_threshold {
        idx = (i..=j).collect();
    } else {
        let want = if below_threshold { usize::MAX } else { f(k, wk[k]) };
        while idx.len() < want {
            let last = *idx.last().unwrap();
            match (last + 1..=j).find(|&t| p[last][t] == k) {
                Some(t) => idx.push(t),
                None => break,
            }
        }
    }
    let band = Band { f1: b.f1, far: b.far, paths: idx.iter().map(|&t| b.paths[t].clone()).collect() };
    let new_tiles = tiles_ctx(&ctx, &band)?;
    let (_, sup) = support(&new_tiles);
    let through = edge_flow_within(host, &band.paths[0], band.paths.last().unwrap(), &sup, apex)?;
    let mut cuts = Vec::new();
    for (t, tile) in new_tiles.iter().enumerate() {
        let fl = edge_flow_within(host, &band.paths[t], &band.paths[t + 1], &tile.edges, apex)?;
        cuts.push(fl.cut);
    }
    Ok(EdgeLinked { k, band, paths: through.path_edges, cuts, below_threshold })
}

/// Independent recheck of a `k`-edge-linked certificate by fresh flows.
pub fn check_edge_linked(host: &EmbeddedMultigraph, cert: &EdgeLinked) -> Result<bool> {
    let tiles = tiles_of(host, &cert.band)?;
    let (_, sup) = support(&tiles);
    let apex = cert.band.apex();
    let paths = &cert.band.paths;
    if edge_flow_within(host, &paths[0], paths.last().unwrap(), &sup, apex)?.count < cert.k {
        return Ok(false);
    }
    for (t, tile) in tiles.iter().enumerate() {
        let cut = &cert.cuts[t];
        if cut.len() != cert.k || !cut.is_subset(&tile.edges) {
            return Ok(false);
        }
        let rest: BTreeSet<EdgeId> = tile.edges.difference(cut).copied().collect();
        if cert.k > 0 && edge_flow_within(host, &paths[t], &paths[t + 1], &rest, apex)?.count != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Code of a subband's support with its paths labelled by index and
/// position, read away from `F1`.
fn subband_code(ctx: &Ctx, b: &Band, tiles: &[Tile]) -> Vec<u8> {
    let g = &ctx.host.graph;
    let (vs, es) = if tiles.is_empty() {
        (b.paths.iter().flatten().copied().collect(), BTreeSet::new())
    } else {
        support(tiles)
    };
    let kept: Vec<bool> = (0..g.m()).map(|e| es.contains(&e)).collect();
    let (sub, _) = ctx.host.restrict_edges(&kept);
    let keep: Vec<Vertex> = vs.iter().copied().collect();
    let (emb, vmap) = sub.induced(&keep);
    let mut labels: Labels = vec![None; keep.len()];
    for (i, p) in b.paths.iter().enumerate() {
        for (k, &v) in p.iter().enumerate() {
            if Some(v) == b.apex() {
                labels[vmap[v].unwrap()] = Some(u32::MAX - 1);
            } else {
                labels[vmap[v].unwrap()] = Some((i * 4096 + k) as u32);
            }
        }
    }
    embedded_code(&emb, Some(&labels))
}

/// Supports related by a plane homeomorphism carrying `P_i` to `P'_i`
/// with directions away from `F1` preserved.
pub fn band_isomorphic(host: &EmbeddedMultigraph, b1: &Band, b2: &Band) -> Result<bool> {
    if b1.len() != b2.len() {
        return Ok(false);
    }
    let ctx = Ctx::new(host);
    let t1 = tiles_ctx(&ctx, b1)?;
    let t2 = tiles_ctx(&ctx, b2)?;
    Ok(subband_code(&ctx, b1, &t1) == subband_code(&ctx, b2, &t2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repetition {
    /// Path index ranges (inclusive) within the band.
    pub reducible: (usize, usize),
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// The `2t + 1` pairwise isomorphic disjoint copies of the reducible
    /// subband, which sits in the middle; empty when `t = 0`.
    pub typical_witnesses: Vec<(usize, usize)>,
}

/// Two disjoint isomorphic subbands of `order` paths avoiding the first and
/// last path, in the shortest enclosing subband; with `t > 0` that subband
/// must also be `t`-typical.
pub fn find_reducible_repetition(host: &EmbeddedMultigraph, b: &Band, order: usize, t: usize) -> Result<Option<Repetition>> {
    let ctx = Ctx::new(host);
    let tiles = tiles_ctx(&ctx, b)?;
    let m = b.len();
    if order == 0 || m < 2 * order + 2 {
        return Ok(None);
    }
    let apex = b.apex();
    let window_vertices = |lo: usize, hi: usize| -> BTreeSet<Vertex> {
        let mut v: BTreeSet<Vertex> = b.paths[lo..=hi].iter().flatten().copied().collect();
        for tile in &tiles[lo..hi] {
            v.extend(&tile.vertices);
        }
        if let Some(u) = apex {
            v.remove(&u);
        }
        v
    };
    let mut codes: HashMap<(usize, usize), Vec<u8>> = HashMap::new();
    let mut code = |lo: usize, hi: usize| -> Vec<u8> {
        codes.entry((lo, hi)).or_insert_with(|| subband_code(&ctx, &b.sub(lo, hi), &tiles[lo..hi])).clone()
    };
    let disjoint = |a: (usize, usize), c: (usize, usize)| window_vertices(a.0, a.1).is_disjoint(&window_vertices(c.0, c.1));
    for span in 2 * order..m - 1 {
        for s1 in 1..m - span {
            let q1 = (s1, s1 + order - 1);
            let q2 = (s1 + span - order, s1 + span - 1);
            if q2.1 >= m - 1 || !disjoint(q1, q2) || code(q1.0, q1.1) != code(q2.0, q2.1) {
                continue;
            }
            let q = (s1, q2.1);
            if t == 0 {
                return Ok(Some(Repetition { reducible: q, first: q1, second: q2, typical_witnesses: Vec::new() }));
            }
            if let Some(all) = typical_from(&mut code, &disjoint, m, q, t) {
                return Ok(Some(Repetition { reducible: q, first: q1, second: q2, typical_witnesses: all }));
            }
        }
    }
    Ok(None)
}

/// Greedy search for `t` disjoint copies of `q` on each side of it.
fn typical_from(
    code: &mut dyn FnMut(usize, usize) -> Vec<u8>,
    disjoint: &dyn Fn((usize, usize), (usize, usize)) -> bool,
    m: usize,
    q: (usize, usize),
    t: usize,
) -> Option<Vec<(usize, usize)>> {
    let len = q.1 - q.0;
    let qc = code(q.0, q.1);
    let mut left = Vec::new();
    let mut end = q.0;
    let mut lo = q.0;
    while left.len() < t && lo > 0 {
        lo -= 1;
        let w = (lo, lo + len);
        if w.1 < end && disjoint(w, (end, end)) && code(w.0, w.1) == qc {
            left.push(w);
            end = lo;
        }
    }
    let mut right = Vec::new();
    let mut start = q.1;
    let mut s = q.1 + 1;
    while right.len() < t && s + len < m {
        let w = (s, s + len);
        if disjoint(w, (start, start)) && code(w.0, w.1) == qc {
            right.push(w);
            start = w.1;
            s = w.1 + 1;
        } else {
            s += 1;
        }
    }
    if left.len() < t || right.len() < t {
        return None;
    }
    let mut all: Vec<(usize, usize)> = left.into_iter().rev().collect();
    all.push(q);
    all.extend(right);
    Some(all)
}

/// The `2t + 1` copies witnessing that subband `q` is `t`-typical, if any.
pub fn typical_copies(host: &EmbeddedMultigraph, b: &Band, q: (usize, usize), t: usize) -> Result<Option<Vec<(usize, usize)>>> {
    let ctx = Ctx::new(host);
    let tiles = tiles_ctx(&ctx, b)?;
    if q.0 > q.1 || q.1 >= b.len() {
        return arg("subband out of range");
    }
    let apex = b.apex();
    let window_vertices = |lo: usize, hi: usize| -> BTreeSet<Vertex> {
        let mut v: BTreeSet<Vertex> = b.paths[lo..=hi].iter().flatten().copied().collect();
        for tile in &tiles[lo..hi] {
            v.extend(&tile.vertices);
        }
        if let Some(u) = apex {
            v.remove(&u);
        }
        v
    };
    let disjoint = |a: (usize, usize), c: (usize, usize)| window_vertices(a.0, a.1).is_disjoint(&window_vertices(c.0, c.1));
    let mut code = |lo: usize, hi: usize| subband_code(&ctx, &b.sub(lo, hi), &tiles[lo..hi]);
    Ok(typical_from(&mut code, &disjoint, b.len(), q, t))
}

/// Finds the faces of a band or fan given only its paths.
pub fn locate_band(host: &EmbeddedMultigraph, paths: Vec<Vec<Vertex>>, fan: bool) -> Option<Band> {
    let ctx = Ctx::new(host);
    let nf = ctx.faces.len();
    let starts: Vec<Vertex> = paths.iter().map(|p| p[0]).collect();
    let ends: Vec<Vertex> = paths.iter().map(|p| *p.last().unwrap()).collect();
    for f1 in 0..nf {
        if !starts.iter().all(|&v| ctx.on_face(f1, v)) {
            continue;
        }
        let fars: Vec<Far> = if fan {
            vec![Far::Apex(ends[0])]
        } else {
            (0..nf).filter(|&f| f != f1 && ends.iter().all(|&v| ctx.on_face(f, v))).map(Far::Face).collect()
        };
        for far in fars {
            let b = Band { f1, far, paths: paths.clone() };
            if validate_band_ctx(&ctx, &b).is_empty() {
                return Some(b);
            }
        }
    }
    None
}

/// Typed text block for a structure.
pub fn write_structure(s: &Structure) -> String {
    let mut out = String::new();
    let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    match s {
        Structure::Band(b) => {
            match b.far {
                Far::Face(f2) => {
                    let _ = writeln!(out, "band {} {}", b.f1, f2);
                }
                Far::Apex(u) => {
                    let _ = writeln!(out, "fan {} {}", b.f1, u);
                }
            }
            for p in &b.paths {
                let _ = writeln!(out, "path {}", list(p));
            }
        }
        Structure::Necklace(n) => {
            let _ = writeln!(out, "necklace {} {}", n.f1, n.f2);
            let _ = writeln!(out, "vertices {}", list(&n.vertices));
        }
        Structure::Nest(n) => {
            let kind = match n.kind {
                NestKind::Cycles(k) => format!("{k}-nest"),
                NestKind::Face => format!("face-nest {}", n.face.unwrap_or(0)),
                NestKind::DegenerateFace => format!("degenerate-nest {} {}", n.face.unwrap_or(0), n.apex.unwrap_or(0)),
            };
            let _ = writeln!(out, "nest {kind} depth {}", n.depth());
            if !n.shared.is_empty() {
                let _ = writeln!(out, "shared {}", list(&n.shared.iter().copied().collect::<Vec<_>>()));
            }
            for c in &n.cycles {
                let _ = writeln!(out, "cycle {}", list(c));
            }
            for p in &n.paths {
                let _ = writeln!(out, "path {}", list(p));
            }
        }
    }
    out.push_str("end\n");
    out
}

/// Reads the `band`, `fan` and `necklace` blocks of a report; other blocks
/// are skipped.
pub fn parse_bands(text: &str) -> Result<Vec<Band>> {
    let mut out = Vec::new();
    let mut cur: Option<Band> = None;
    let nums = |line: usize, s: &str| -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("bad number `{t}`") }))
            .collect()
    };
    let mut skipping = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        let (head, rest) = l.split_once(' ').unwrap_or((l, ""));
        match head {
            "band" | "fan" | "necklace" => {
                let v = nums(line, rest)?;
                if v.len() != 2 {
                    return Err(Error::Parse { line, msg: format!("`{head}` takes two numbers") });
                }
                let far = if head == "fan" { Far::Apex(v[1]) } else { Far::Face(v[1]) };
                cur = Some(Band { f1: v[0], far, paths: Vec::new() });
            }
            "path" if !skipping => match cur.as_mut() {
                Some(b) => b.paths.push(nums(line, rest)?),
                None => return Err(Error::Parse { line, msg: "path outside a block".into() }),
            },
            "vertices" => match cur.as_mut() {
                Some(b) => b.paths.extend(nums(line, rest)?.into_iter().map(|v| vec![v])),
                None => return Err(Error::Parse { line, msg: "vertices outside a block".into() }),
            },
            "nest" => skipping = true,
            "end" => {
                if let Some(b) = cur.take() {
                    out.push(b);
                }
                skipping = false;
            }
            _ if skipping => {}
            _ => return Err(Error::Parse { line, msg: format!("unexpected `{head}`") }),
        }
    }
    if cur.is_some() {
        return Err(Error::Parse { line: text.lines().count(), msg: "unterminated block".into() });
    }
    Ok(out)
}
