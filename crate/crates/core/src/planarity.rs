//! Planarity testing and plane embeddings.
//!
//! [`planarity_embed`] builds a rotation system by incremental face
//! splitting (Demoucron–Malgrange–Pertuiset) on each 2-connected block and
//! glues the blocks, parallel edges and loops back in. [`is_planar`] is a
//! fast yes/no test backed by the left-right algorithm of `rustworkx-core`;
//! the two are independent implementations and are cross-checked in tests.

use petgraph::graph::UnGraph;

use crate::graph::{blocks, EmbeddedMultigraph, Multigraph, Vertex};

/// Yes/no planarity via the left-right criterion.
pub fn is_planar(g: &Multigraph) -> bool {
    if g.n() <= 4 {
        return true;
    }
    let (simple, _, _) = g.underlying_simple();
    if simple.m() > 3 * g.n() - 6 {
        return false;
    }
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(g.n(), simple.m());
    let nodes: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for &(a, b) in simple.edges() {
        pg.add_edge(nodes[a], nodes[b], ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

/// A plane embedding of `g`, or `None` when `g` is not planar.
pub fn planarity_embed(g: &Multigraph) -> Option<EmbeddedMultigraph> {
    let (simple, _, class) = g.underlying_simple();
    let n = g.n();
    // neighbour order around each vertex in the simple graph
    let mut nbr_order: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let dec = blocks(&simple);
    for bl in &dec.blocks {
        if bl.len() == 2 {
            nbr_order[bl[0]].push(bl[1]);
            nbr_order[bl[1]].push(bl[0]);
            continue;
        }
        if bl.len() < 2 {
            continue;
        }
        let (sub, _) = simple.induced(bl);
        let local = embed_biconnected(sub.n(), sub.edges())?;
        for (i, rot) in local.into_iter().enumerate() {
            nbr_order[bl[i]].extend(rot.into_iter().map(|j| bl[j]));
        }
    }

    // original edges grouped by simple edge
    let mut copies: std::collections::HashMap<(Vertex, Vertex), Vec<usize>> = Default::default();
    for (e, cl) in class.iter().enumerate() {
        if cl.is_some() {
            let (a, b) = g.endpoints(e);
            copies.entry((a.min(b), a.max(b))).or_default().push(e);
        }
    }
    let dart_at = |e: usize, v: Vertex| {
        let (a, _) = g.endpoints(e);
        if a == v {
            2 * e
        } else {
            2 * e + 1
        }
    };
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for &u in &nbr_order[v] {
            let list = &copies[&(v.min(u), v.max(u))];
            if v < u {
                rotation[v].extend(list.iter().map(|&e| dart_at(e, v)));
            } else {
                rotation[v].extend(list.iter().rev().map(|&e| dart_at(e, v)));
            }
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == b {
            rotation[a].push(2 * e);
            rotation[a].push(2 * e + 1);
        }
    }
    let emb = EmbeddedMultigraph::new(g.clone(), rotation).expect("rotation covers every dart");
    debug_assert!(emb.is_plane(), "face-splitting produced a non-plane rotation");
    Some(emb)
}

/// Face-splitting embedding of a simple 2-connected graph with at least
/// three vertices. Returns the clockwise neighbour order of each vertex.
fn embed_biconnected(n: usize, edges: &[(Vertex, Vertex)]) -> Option<Vec<Vec<Vertex>>> {
    if edges.len() > 3 * n - 6 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut in_h = vec![false; n];
    let mut edge_in_h = vec![vec![false; n]; n];
    let cycle = find_cycle(&adj)?;
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        edge_in_h[a][b] = true;
        edge_in_h[b][a] = true;
    }
    let mut embedded_edges = cycle.len();
    let mut faces: Vec<Vec<Vertex>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while embedded_edges < edges.len() {
        let frags = fragments(&adj, &in_h, &edge_in_h);
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return None;
            }
            let better = best.as_ref().is_none_or(|(_, adm)| admissible.len() < adm.len());
            if better {
                let one = admissible.len() == 1;
                best = Some((fi, admissible));
                if one {
                    break;
                }
            }
        }
        let (fi, admissible) = best.expect("some fragment remains");
        let path = fragment_path(&adj, &in_h, &frags[fi]);
        let face = faces.swap_remove(admissible[0]);
        let a = path[0];
        let b = *path.last().unwrap();
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let mut f1 = Vec::new();
        let mut i = ia;
        loop {
            f1.push(face[i]);
            if i == ib {
                break;
            }
            i = (i + 1) % len;
        }
        f1.extend(path[1..path.len() - 1].iter().rev());
        let mut f2 = Vec::new();
        let mut i = ib;
        loop {
            f2.push(face[i]);
            if i == ia {
                break;
            }
            i = (i + 1) % len;
        }
        f2.extend(path[1..path.len() - 1].iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            edge_in_h[w[0]][w[1]] = true;
            edge_in_h[w[1]][w[0]] = true;
            embedded_edges += 1;
        }
        for &v in &path {
            in_h[v] = true;
        }
    }

    // succ_v(u) = w for every face occurrence u -> v -> w
    let mut succ = vec![std::collections::HashMap::new(); n];
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ[v].insert(u, w);
        }
    }
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        let start = adj[v][0];
        let mut u = start;
        loop {
            rot[v].push(u);
            u = succ[v][&u];
            if u == start {
                break;
            }
        }
        debug_assert_eq!(rot[v].len(), adj[v].len());
    }
    Some(rot)
}

fn find_cycle(adj: &[Vec<Vertex>]) -> Option<Vec<Vertex>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some((v, idx)) = stack.pop() {
        if idx < adj[v].len() {
            stack.push((v, idx + 1));
            let u = adj[v][idx];
            if depth[u] == usize::MAX {
                depth[u] = depth[v] + 1;
                parent[u] = v;
                stack.push((u, 0));
            } else if u != parent[v] && depth[u] < depth[v] {
                let mut cyc = vec![v];
                let mut x = v;
                while x != u {
                    x = parent[x];
                    cyc.push(x);
                }
                return Some(cyc);
            }
        }
    }
    None
}

struct Fragment {
    attachments: Vec<Vertex>,
    /// Interior vertices; empty for a single chord edge.
    interior: Vec<Vertex>,
}

fn fragments(adj: &[Vec<Vertex>], in_h: &[bool], edge_in_h: &[Vec<bool>]) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for a in 0..n {
        if !in_h[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b && in_h[b] && !edge_in_h[a][b] {
                out.push(Fragment { attachments: vec![a, b], interior: Vec::new() });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut interior = vec![s];
        let mut att = std::collections::BTreeSet::new();
        let mut i = 0;
        while i < interior.len() {
            let v = interior[i];
            i += 1;
            for &u in &adj[v] {
                if in_h[u] {
                    att.insert(u);
                } else if !seen[u] {
                    seen[u] = true;
                    interior.push(u);
                }
            }
        }
        out.push(Fragment { attachments: att.into_iter().collect(), interior });
    }
    out
}

fn fragment_path(adj: &[Vec<Vertex>], in_h: &[bool], frag: &Fragment) -> Vec<Vertex> {
    if frag.interior.is_empty() {
        return frag.attachments.clone();
    }
    let a = frag.attachments[0];
    let inside: std::collections::HashSet<Vertex> = frag.interior.iter().copied().collect();
    let start = *adj[a].iter().find(|u| inside.contains(u)).expect("attachment touches fragment");
    let mut prev = std::collections::HashMap::new();
    let mut queue = std::collections::VecDeque::from([start]);
    prev.insert(start, a);
    while let Some(v) = queue.pop_front() {
        if let Some(&b) = adj[v].iter().find(|&&b| in_h[b] && b != a) {
            let mut path = vec![b, v];
            let mut x = v;
            while x != start {
                x = prev[&x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &u in &adj[v] {
            if inside.contains(&u) && !prev.contains_key(&u) {
                prev.insert(u, v);
                queue.push_back(u);
            }
        }
    }
    unreachable!("2-connected fragment has two attachments")
}
