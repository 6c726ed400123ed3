//! Canonical forms.
//!
//! Abstract multigraphs get a colour-refinement + individualisation code;
//! embedded multigraphs get the lexicographically least dart-BFS code over all
//! starting darts and both orientations, so two embeddings share a code iff
//! their rotation systems agree up to relabelling and global reflection.

use crate::graph::{edge_of, twin, Dart, EmbeddedMultigraph, Multigraph, Vertex};

pub type Code = Vec<u8>;

/// Vertex labels for labelled embedded graphs (`None` = unlabelled).
pub type Labels = Vec<Option<u32>>;

fn mult_matrix(g: &Multigraph) -> Vec<Vec<u8>> {
    let n = g.n();
    let mut m = vec![vec![0u8; n]; n];
    for &(a, b) in g.edges() {
        m[a][b] = m[a][b].saturating_add(1);
        if a != b {
            m[b][a] = m[b][a].saturating_add(1);
        }
    }
    m
}

fn refine(m: &[Vec<u8>], colors: &mut [usize]) {
    let n = colors.len();
    let mut k = count_distinct(colors);
    loop {
        let sigs: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, u8)> =
                    (0..n).filter(|&u| m[v][u] > 0).map(|u| (colors[u], m[v][u])).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<(usize, u8)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        for v in 0..n {
            colors[v] = sorted.binary_search(&&sigs[v]).unwrap();
        }
        let nk = sorted.len();
        if nk == k {
            return;
        }
        k = nk;
    }
}

fn count_distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn code_for(m: &[Vec<u8>], colors: &[usize]) -> Vec<u8> {
    let n = colors.len();
    let mut order = vec![0; n];
    for v in 0..n {
        order[colors[v]] = v;
    }
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(m[order[i]][order[j]]);
        }
    }
    out
}

fn search(m: &[Vec<u8>], colors: Vec<usize>, best: &mut Option<Vec<u8>>) {
    let n = colors.len();
    if count_distinct(&colors) == n {
        let c = code_for(m, &colors);
        if best.as_ref().is_none_or(|b| c < *b) {
            *best = Some(c);
        }
        return;
    }
    // first non-singleton cell, by colour
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    let cell = (0..n).find(|&c| size[c] > 1).unwrap();
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
        next[v] = 2 * cell;
        refine(m, &mut next);
        search(m, next, best);
    }
}

/// Canonical code of an abstract multigraph: equal iff isomorphic.
pub fn canonical_code(g: &Multigraph) -> Code {
    let n = g.n();
    let m = mult_matrix(g);
    let mut colors = vec![0; n];
    refine(&m, &mut colors);
    let mut best = None;
    search(&m, colors, &mut best);
    let mut out = vec![b'A'];
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend(best.unwrap_or_default());
    out
}

/// Rebuilds a multigraph from a [`canonical_code`].
pub fn graph_from_code(code: &[u8]) -> Option<Multigraph> {
    if code.len() < 5 || code[0] != b'A' {
        return None;
    }
    let n = u32::from_le_bytes(code[1..5].try_into().ok()?) as usize;
    let body = &code[5..];
    if body.len() != n * (n + 1) / 2 {
        return None;
    }
    let mut g = Multigraph::new(n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            for _ in 0..body[k] {
                g.add_edge(i, j).ok()?;
            }
            k += 1;
        }
    }
    Some(g)
}

/// Lowercase hex rendering used in text files.
pub fn to_hex(code: &[u8]) -> String {
    code.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn from_hex(s: &str) -> Option<Code> {
    if !s.len().is_multiple_of(2) {
        return None;
    }
    (0..s.len()).step_by(2).map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok()).collect()
}

/// Canonical relabelling `perm[old] = new` consistent with [`canonical_code`].
pub fn canonical_labelling(g: &Multigraph) -> Vec<Vertex> {
    let n = g.n();
    let m = mult_matrix(g);
    let mut colors = vec![0; n];
    refine(&m, &mut colors);
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    fn go(m: &[Vec<u8>], colors: Vec<usize>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
        let n = colors.len();
        if count_distinct(&colors) == n {
            let c = code_for(m, &colors);
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                *best = Some((c, colors));
            }
            return;
        }
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c] += 1;
        }
        let cell = (0..n).find(|&c| size[c] > 1).unwrap();
        for v in (0..n).filter(|&v| colors[v] == cell) {
            let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
            next[v] = 2 * cell;
            refine(m, &mut next);
            go(m, next, best);
        }
    }
    go(&m, colors, &mut best);
    best.map(|(_, c)| c).unwrap_or_default()
}

fn bfs_code(emb: &EmbeddedMultigraph, rot: &[Vec<Dart>], pos: &[usize], labels: &Labels, start: Dart) -> Vec<u32> {
    let g = &emb.graph;
    let n = g.n();
    let mut num = vec![u32::MAX; n];
    let mut entry = vec![0usize; n];
    let mut order = vec![g.tail(start)];
    num[g.tail(start)] = 0;
    entry[g.tail(start)] = start;
    let mut out = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        out.push(labels[v].map_or(0, |l| l + 1));
        let deg = rot[v].len();
        out.push(deg as u32);
        let base = pos[entry[v]];
        for k in 0..deg {
            let x = rot[v][(base + k) % deg];
            let h = g.head(x);
            let tw = twin(x);
            if num[h] == u32::MAX {
                num[h] = order.len() as u32;
                entry[h] = tw;
                order.push(h);
            }
            let hdeg = rot[h].len();
            let off = (pos[tw] + hdeg - pos[entry[h]]) % hdeg;
            out.push(num[h]);
            out.push(off as u32);
        }
    }
    out
}

/// Canonical code of an embedding up to relabelling and reflection of the
/// sphere. Components are coded independently (their mutual nesting is not
/// recorded).
pub fn embedded_code(emb: &EmbeddedMultigraph, labels: Option<&Labels>) -> Code {
    let g = &emb.graph;
    let unl: Labels = vec![None; g.n()];
    let labels = labels.unwrap_or(&unl);
    let comps = g.components();
    let mut best: Option<Vec<Vec<u32>>> = None;
    for reflect in [false, true] {
        let rot: Vec<Vec<Dart>> = if reflect {
            emb.rotation.iter().map(|r| r.iter().rev().copied().collect()).collect()
        } else {
            emb.rotation.clone()
        };
        let mut pos = vec![0; 2 * g.m()];
        for r in &rot {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut parts: Vec<Vec<u32>> = comps
            .iter()
            .map(|comp| {
                let darts: Vec<Dart> = comp.iter().flat_map(|&v| rot[v].iter().copied()).collect();
                if darts.is_empty() {
                    return vec![u32::MAX, labels[comp[0]].map_or(0, |l| l + 1)];
                }
                darts
                    .iter()
                    .map(|&d| bfs_code(emb, &rot, &pos, labels, d))
                    .min()
                    .unwrap()
            })
            .collect();
        parts.sort();
        if best.as_ref().is_none_or(|b| parts < *b) {
            best = Some(parts);
        }
    }
    let mut out = vec![b'E'];
    for part in best.unwrap_or_default() {
        out.extend_from_slice(&(part.len() as u32).to_le_bytes());
        for x in part {
            out.extend_from_slice(&x.to_le_bytes());
        }
    }
    out
}

/// Suppress unlabelled vertices of degree two that are not isolated loop
/// vertices, repeatedly, keeping the rotation system.
pub fn suppress_degree_two(emb: &EmbeddedMultigraph, labels: &Labels) -> (EmbeddedMultigraph, Labels) {
    let mut emb = emb.clone();
    let mut labels = labels.clone();
    loop {
        let g = &emb.graph;
        let cand = (0..g.n()).find(|&v| {
            labels[v].is_none() && emb.rotation[v].len() == 2 && edge_of(emb.rotation[v][0]) != edge_of(emb.rotation[v][1])
        });
        let Some(v) = cand else { break };
        let (d1, d2) = (emb.rotation[v][0], emb.rotation[v][1]);
        let (t1, t2) = (twin(d1), twin(d2));
        let (u, w) = (g.head(d1), g.head(d2));
        let (e1, e2) = (edge_of(d1), edge_of(d2));
        // new graph: drop v, e1, e2; add edge u-w
        let mut vmap = vec![usize::MAX; g.n()];
        let mut k = 0;
        for x in 0..g.n() {
            if x != v {
                vmap[x] = k;
                k += 1;
            }
        }
        let mut emap = vec![usize::MAX; g.m()];
        let mut ng = Multigraph::new(g.n() - 1);
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if e != e1 && e != e2 {
                emap[e] = ng.add_edge(vmap[a], vmap[b]).unwrap();
            }
        }
        let ne = ng.add_edge(vmap[u], vmap[w]).unwrap();
        let map_dart = |d: Dart| -> Dart {
            if d == t1 {
                2 * ne
            } else if d == t2 {
                2 * ne + 1
            } else {
                2 * emap[edge_of(d)] + (d & 1)
            }
        };
        let rotation: Vec<Vec<Dart>> = (0..g.n())
            .filter(|&x| x != v)
            .map(|x| emb.rotation[x].iter().map(|&d| map_dart(d)).collect())
            .collect();
        let nl: Labels = (0..g.n()).filter(|&x| x != v).map(|x| labels[x]).collect();
        emb = EmbeddedMultigraph::new(ng, rotation).expect("suppression keeps darts consistent");
        labels = nl;
    }
    (emb, labels)
}

/// Code of the homeomorphism class of a labelled embedded multigraph.
pub fn homeomorphism_code(emb: &EmbeddedMultigraph, labels: &Labels) -> Code {
    let (s, l) = suppress_degree_two(emb, labels);
    embedded_code(&s, Some(&l))
}

/// True iff the two labelled embeddings are related by a homeomorphism of
/// the sphere (reflections allowed) after suppressing unlabelled degree-2
/// vertices.
pub fn is_homeomorphic(g1: &EmbeddedMultigraph, l1: &Labels, g2: &EmbeddedMultigraph, l2: &Labels) -> bool {
    homeomorphism_code(g1, l1) == homeomorphism_code(g2, l2)
}

/// Exhaustive isomorphism test, used as an independent oracle in tests.
pub fn isomorphic_bruteforce(a: &Multigraph, b: &Multigraph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let ma = mult_matrix(a);
    let mb = mult_matrix(b);
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, ma: &[Vec<u8>], mb: &[Vec<u8>]) -> bool {
        let n = perm.len();
        if k == n {
            return true;
        }
        for i in k..n {
            perm.swap(k, i);
            let ok = (0..=k).all(|j| ma[k][j] == mb[perm[k]][perm[j]]);
            if ok && rec(k + 1, perm, ma, mb) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    rec(0, &mut perm, &ma, &mb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::planarity::planarity_embed;

    #[test]
    fn relabelled_k4_same_code() {
        let g = complete(4);
        let h = g.relabel(&[2, 0, 3, 1]);
        assert_eq!(canonical_code(&g), canonical_code(&h));
        assert_ne!(canonical_code(&g), canonical_code(&g.without_edge(0)));
    }

    #[test]
    fn prism_vs_k33() {
        let prism = circular_ladder(3);
        let k33 = complete_bipartite(3, 3);
        assert!(!isomorphic_bruteforce(&prism, &k33));
        assert_ne!(canonical_code(&prism), canonical_code(&k33));
    }

    #[test]
    fn cycles_are_homeomorphic() {
        let c4 = planarity_embed(&cycle(4)).unwrap();
        let c7 = planarity_embed(&cycle(7)).unwrap();
        assert!(is_homeomorphic(&c4, &vec![None; 4], &c7, &vec![None; 7]));
    }

    #[test]
    fn labelled_paths_homeomorphic() {
        let p2 = planarity_embed(&path(2)).unwrap();
        let p3 = planarity_embed(&path(3)).unwrap();
        let l2 = vec![Some(0), Some(1)];
        let l3 = vec![Some(0), None, Some(1)];
        assert!(is_homeomorphic(&p2, &l2, &p3, &l3));
        assert!(is_homeomorphic(&p3, &l3, &p3, &l3));
    }

    #[test]
    fn reflection_invariance() {
        let emb = planarity_embed(&wheel(5)).unwrap();
        assert_eq!(embedded_code(&emb, None), embedded_code(&emb.reflected(), None));
    }
}
