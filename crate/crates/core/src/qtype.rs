//! Irreducible labelled plane multigraphs, q-types and the q-type semigroup
//! of a linked path decomposition.
//!
//! Labels are small integers: `3i` stands for `l_{i+1}`, `3i + 1` for
//! `r_{i+1}` and `3i + 2` for `c_{i+1}`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::canon::{embedded_code, from_hex, homeomorphism_code, suppress_degree_two, to_hex, Code, Labels};
use crate::error::{arg, Error, Result};
use crate::flow::max_vertex_disjoint_paths;
use crate::graph::{edge_of, EmbeddedMultigraph, Multigraph, Vertex};
use crate::pathdec::PathDecomposition;
use crate::semigroup::{split_idempotent_runs, FiniteSemigroup};

pub fn label_l(i: usize) -> u32 {
    3 * i as u32
}

pub fn label_r(i: usize) -> u32 {
    3 * i as u32 + 1
}

pub fn label_c(i: usize) -> u32 {
    3 * i as u32 + 2
}

pub fn label_name(l: u32) -> String {
    let kind = ["l", "r", "c"][(l % 3) as usize];
    format!("{kind}{}", l / 3 + 1)
}

/// Plane multigraph with a partial injective vertex labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPlaneMultigraph {
    pub embedding: EmbeddedMultigraph,
    pub labels: Labels,
}

impl LabelledPlaneMultigraph {
    pub fn new(embedding: EmbeddedMultigraph, labels: Labels) -> Result<Self> {
        if labels.len() != embedding.graph.n() {
            return arg("one label slot per vertex is required");
        }
        let mut seen = HashSet::new();
        if !labels.iter().flatten().all(|l| seen.insert(*l)) {
            return arg("labels must be distinct");
        }
        if !embedding.is_plane() {
            return Err(Error::Structure("rotation system is not plane".into()));
        }
        Ok(LabelledPlaneMultigraph { embedding, labels })
    }

    pub fn unlabelled(embedding: EmbeddedMultigraph) -> Self {
        let labels = vec![None; embedding.graph.n()];
        LabelledPlaneMultigraph { embedding, labels }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.embedding.graph
    }

    pub fn unlabelled_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_none()).count()
    }

    /// Code of the homeomorphism class.
    pub fn code(&self) -> Code {
        homeomorphism_code(&self.embedding, &self.labels)
    }

    pub fn subdivide(&self, e: usize) -> Self {
        let mut labels = self.labels.clone();
        labels.push(None);
        LabelledPlaneMultigraph { embedding: self.embedding.subdivide(e), labels }
    }

    fn delete_vertices(&self, gone: &BTreeSet<Vertex>) -> Self {
        let keep: Vec<Vertex> = (0..self.graph().n()).filter(|v| !gone.contains(v)).collect();
        let (embedding, _) = self.embedding.induced(&keep);
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        LabelledPlaneMultigraph { embedding, labels }
    }

    fn without_edge(&self, e: usize) -> Self {
        let mut kept = vec![true; self.graph().m()];
        kept[e] = false;
        let (embedding, _) = self.embedding.restrict_edges(&kept);
        LabelledPlaneMultigraph { embedding, labels: self.labels.clone() }
    }

    fn is_loop_isolate(&self, v: Vertex) -> bool {
        let rot = &self.embedding.rotation[v];
        rot.len() == 2 && edge_of(rot[0]) == edge_of(rot[1])
    }

    /// Removes unlabelled vertices of degree at most one until none is left,
    /// then suppresses unlabelled degree-2 vertices.
    pub fn normalized(&self) -> Self {
        let mut cur = self.clone();
        loop {
            let gone: BTreeSet<Vertex> = (0..cur.graph().n())
                .filter(|&v| cur.labels[v].is_none() && cur.embedding.rotation[v].len() <= 1)
                .collect();
            if gone.is_empty() {
                break;
            }
            cur = cur.delete_vertices(&gone);
        }
        let (embedding, labels) = suppress_degree_two(&cur.embedding, &cur.labels);
        LabelledPlaneMultigraph { embedding, labels }
    }
}

/// No face of size one or two and no unlabelled vertex of degree at most two
/// other than an isolated vertex carrying one loop. A face of size two is
/// bounded by two distinct edges, so a lone edge is irreducible.
pub fn is_irreducible(m: &LabelledPlaneMultigraph) -> bool {
    let g = m.graph();
    for v in 0..g.n() {
        if m.labels[v].is_none() && m.embedding.rotation[v].len() <= 2 && !m.is_loop_isolate(v) {
            return false;
        }
    }
    m.embedding.faces().iter().all(|f| match f.darts.len() {
        1 => {
            let v = g.tail(f.darts[0]);
            m.labels[v].is_none() && m.is_loop_isolate(v)
        }
        2 => edge_of(f.darts[0]) == edge_of(f.darts[1]),
        _ => true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QType {
    pub q: usize,
    pub members: BTreeSet<Code>,
    /// The subgraph search stopped at its budget; `members` may be partial.
    pub inconclusive: bool,
}

impl QType {
    /// One hex code per line, sorted.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for c in &self.members {
            let _ = writeln!(s, "{}", to_hex(c));
        }
        s
    }

    pub fn parse_dump(q: usize, text: &str) -> Result<Self> {
        let mut members = BTreeSet::new();
        for (i, l) in text.lines().enumerate() {
            let l = l.trim();
            if l.is_empty() {
                continue;
            }
            let c = from_hex(l).ok_or_else(|| Error::Parse { line: i + 1, msg: "expected a hex code".into() })?;
            members.insert(c);
        }
        Ok(QType { q, members, inconclusive: false })
    }
}

pub const DEFAULT_QTYPE_BUDGET: usize = 1_000_000;

pub fn compute_qtype(g: &LabelledPlaneMultigraph, q: usize) -> QType {
    compute_qtype_with_budget(g, q, DEFAULT_QTYPE_BUDGET)
}

/// Walks the subgraphs of `g` up to homeomorphism (edge deletions and
/// deletions of isolated labelled vertices) and collects the irreducible
/// ones with at most `q` unlabelled vertices.
pub fn compute_qtype_with_budget(g: &LabelledPlaneMultigraph, q: usize, budget: usize) -> QType {
    let start = g.normalized();
    let mut seen: HashSet<Code> = HashSet::new();
    seen.insert(start.code());
    let mut stack = vec![start];
    let mut members = BTreeSet::new();
    let mut inconclusive = false;
    while let Some(s) = stack.pop() {
        if s.unlabelled_count() <= q && is_irreducible(&s) {
            members.insert(embedded_code(&s.embedding, Some(&s.labels)));
        }
        if seen.len() > budget {
            inconclusive = true;
            continue;
        }
        let mut next: Vec<LabelledPlaneMultigraph> = (0..s.graph().m()).map(|e| s.without_edge(e).normalized()).collect();
        for v in 0..s.graph().n() {
            if s.labels[v].is_some() && s.embedding.rotation[v].is_empty() {
                next.push(s.delete_vertices(&BTreeSet::from([v])));
            }
        }
        for t in next {
            if seen.insert(t.code()) {
                stack.push(t);
            }
        }
    }
    QType { q, members, inconclusive }
}

/// Largest `|labels| + q` accepted by [`enumerate_irreducible`].
pub const ENUMERATION_LIMIT: usize = 4;

/// Every irreducible labelled plane multigraph whose labels come from
/// `labels` and which has at most `q` unlabelled vertices, up to
/// homeomorphism, as sorted codes.
pub fn enumerate_irreducible(labels: &[u32], q: usize) -> Result<Vec<Code>> {
    let distinct: BTreeSet<u32> = labels.iter().copied().collect();
    if distinct.len() != labels.len() {
        return arg("labels must be distinct");
    }
    if q > 2 || labels.len() + q > ENUMERATION_LIMIT {
        return Err(Error::Scale(format!(
            "enumeration supports q <= 2 and |labels| + q <= {ENUMERATION_LIMIT}, got |labels| = {} and q = {q}",
            labels.len()
        )));
    }
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << labels.len() {
        for u in 0..=q {
            let mut lab: Labels = (0..labels.len()).filter(|i| mask >> i & 1 == 1).map(|i| Some(labels[i])).collect();
            lab.extend(std::iter::repeat_n(None, u));
            out.extend(irreducible_on(&lab));
        }
    }
    Ok(out.into_iter().collect())
}

/// Upper bound on the edges of an irreducible graph on `v` vertices.
pub fn edge_bound(v: usize) -> usize {
    (3 * v).saturating_sub(6).max(v)
}

fn irreducible_on(labels: &Labels) -> Vec<Code> {
    let n = labels.len();
    let cap = edge_bound(n);
    let empty = EmbeddedMultigraph::new(Multigraph::new(n), vec![Vec::new(); n]).unwrap();
    let mut level = vec![LabelledPlaneMultigraph { embedding: empty, labels: labels.clone() }];
    let mut seen: HashSet<Code> = HashSet::new();
    let mut found = Vec::new();
    for m in 0..=cap {
        let mut next = Vec::new();
        for s in &level {
            if is_irreducible(s) {
                found.push(embedded_code(&s.embedding, Some(&s.labels)));
            }
            if m == cap {
                continue;
            }
            for t in insertions(s) {
                if seen.insert(embedded_code(&t.embedding, Some(&t.labels))) {
                    next.push(t);
                }
            }
        }
        level = next;
    }
    found
}

/// All plane graphs obtained by adding one edge at some pair of corners.
fn insertions(s: &LabelledPlaneMultigraph) -> Vec<LabelledPlaneMultigraph> {
    let g = s.graph();
    let n = g.n();
    let e = g.m();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u..n {
            let mut graph = g.clone();
            graph.add_edge(u, v).unwrap();
            for i in 0..=s.embedding.rotation[u].len() {
                let mut ru = s.embedding.rotation[u].clone();
                ru.insert(i, 2 * e);
                let slots = if u == v { ru.len() } else { s.embedding.rotation[v].len() };
                for j in 0..=slots {
                    let mut rotation = s.embedding.rotation.clone();
                    rotation[u] = ru.clone();
                    rotation[v].insert(j, 2 * e + 1);
                    let emb = EmbeddedMultigraph::new(graph.clone(), rotation).unwrap();
                    if emb.is_plane() {
                        out.push(LabelledPlaneMultigraph { embedding: emb, labels: s.labels.clone() });
                    }
                }
            }
        }
    }
    out
}

/// Vertex-disjoint paths `Q_1..Q_p` from `R(s)` to `L(t)`, ordered by
/// their first vertex.
pub fn linking_paths(g: &Multigraph, d: &PathDecomposition) -> Result<Vec<Vec<Vertex>>> {
    let p = d
        .linkedness(g)
        .ok_or_else(|| Error::Precondition("decomposition is not linked".into()))?;
    let t = d.order();
    let mut paths = max_vertex_disjoint_paths(g, &d.right(0), &d.left(t - 1), None).paths;
    paths.truncate(p);
    paths.sort();
    Ok(paths)
}

/// `G_{P'}` for the node interval `a..=b`, labelled by where the linking
/// paths cross `L(a)` and `R(b)`.
pub fn interval_graph(
    g: &EmbeddedMultigraph,
    d: &PathDecomposition,
    paths: &[Vec<Vertex>],
    a: usize,
    b: usize,
) -> Result<LabelledPlaneMultigraph> {
    let t = d.order();
    if a == 0 || b + 1 >= t || a > b {
        return arg(format!("interval {a}..={b} must lie strictly between the end nodes 0 and {}", t - 1));
    }
    let keep: BTreeSet<Vertex> = d.bags[a..=b].iter().flatten().copied().collect();
    let keep: Vec<Vertex> = keep.into_iter().collect();
    let (left, right) = (d.left(a), d.right(b));
    let mut labels = vec![None; g.graph.n()];
    for (i, q) in paths.iter().enumerate() {
        let u = q.iter().copied().find(|v| left.contains(v));
        let v = q.iter().copied().find(|v| right.contains(v));
        match (u, v) {
            (Some(u), Some(v)) if u == v => labels[u] = Some(label_c(i)),
            (u, v) => {
                if let Some(u) = u {
                    labels[u] = Some(label_l(i));
                }
                if let Some(v) = v {
                    labels[v] = Some(label_r(i));
                }
            }
        }
    }
    let (embedding, _) = g.induced(&keep);
    let labels = keep.iter().map(|&v| labels[v]).collect();
    LabelledPlaneMultigraph::new(embedding, labels)
}

pub fn subpath_qtype(g: &EmbeddedMultigraph, d: &PathDecomposition, a: usize, b: usize, q: usize) -> Result<QType> {
    let paths = linking_paths(&g.graph, d)?;
    Ok(compute_qtype(&interval_graph(g, d, &paths, a, b)?, q))
}

/// Q-types of node intervals, memoized by the interval graph's code.
struct IntervalTypes<'a> {
    g: &'a EmbeddedMultigraph,
    d: &'a PathDecomposition,
    paths: Vec<Vec<Vertex>>,
    q: usize,
    by_code: HashMap<Code, usize>,
    by_interval: BTreeMap<(usize, usize), usize>,
    types: Vec<QType>,
    ids: HashMap<QType, usize>,
}

impl IntervalTypes<'_> {
    fn of(&mut self, a: usize, b: usize) -> Result<usize> {
        if let Some(&t) = self.by_interval.get(&(a, b)) {
            return Ok(t);
        }
        let lg = interval_graph(self.g, self.d, &self.paths, a, b)?;
        let code = lg.code();
        let id = match self.by_code.get(&code) {
            Some(&id) => id,
            None => {
                let qt = compute_qtype(&lg, self.q);
                if qt.inconclusive {
                    return Err(Error::Inconclusive(format!("q-type search budget exceeded on interval {a}..={b}")));
                }
                let next = self.types.len();
                let id = *self.ids.entry(qt.clone()).or_insert(next);
                if id == next {
                    self.types.push(qt);
                }
                self.by_code.insert(code, id);
                id
            }
        };
        self.by_interval.insert((a, b), id);
        Ok(id)
    }
}

/// Result of checking one product against all of its witness pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCheck {
    pub left: usize,
    pub right: usize,
    pub witness_pairs: usize,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct QTypeSemigroup {
    /// Realized q-types; the last element is `ε`.
    pub types: Vec<QType>,
    pub epsilon: usize,
    pub semigroup: FiniteSemigroup,
    /// Node intervals realizing each type, shortest first.
    pub witnesses: Vec<Vec<(usize, usize)>>,
    /// Type of every interior node `1..order-1`.
    pub node_types: Vec<usize>,
    pub checks: Vec<ProductCheck>,
    pub linking_paths: Vec<Vec<Vertex>>,
}

impl QTypeSemigroup {
    pub fn well_defined(&self) -> bool {
        self.checks.iter().all(|c| c.agree)
    }

    pub fn type_of(&self, t: &QType) -> Option<usize> {
        self.types[..self.epsilon].iter().position(|x| x == t)
    }
}

/// Types of the interior nodes, closed under concatenation of adjacent
/// shortest witness intervals; products with no adjacent witnesses are `ε`.
/// Every product realized by two or more witness pairs is recorded in
/// `checks`.
pub fn build_qtype_semigroup(g: &EmbeddedMultigraph, d: &PathDecomposition, q: usize) -> Result<QTypeSemigroup> {
    let t = d.order();
    if t < 3 {
        return Err(Error::Precondition("decomposition has no interior nodes".into()));
    }
    let paths = linking_paths(&g.graph, d)?;
    let mut it = IntervalTypes {
        g,
        d,
        paths: paths.clone(),
        q,
        by_code: HashMap::new(),
        by_interval: BTreeMap::new(),
        types: Vec::new(),
        ids: HashMap::new(),
    };
    let node_types = (1..t - 1).map(|x| it.of(x, x)).collect::<Result<Vec<_>>>()?;
    let mut table: BTreeMap<(usize, usize), Option<usize>> = BTreeMap::new();
    let mut checks = Vec::new();
    loop {
        let k = it.types.len();
        let todo: Vec<(usize, usize)> =
            (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).filter(|p| !table.contains_key(p)).collect();
        if todo.is_empty() {
            break;
        }
        for (x, y) in todo {
            let wit = |id: usize, it: &IntervalTypes| -> Vec<(usize, usize)> {
                let all: Vec<(usize, usize)> =
                    it.by_interval.iter().filter(|(_, &v)| v == id).map(|(&k, _)| k).collect();
                let shortest = all.iter().map(|&(a, b)| b - a).min().unwrap_or(0);
                all.into_iter().filter(|&(a, b)| b - a == shortest).collect()
            };
            let (wx, wy) = (wit(x, &it), wit(y, &it));
            let pairs: Vec<(usize, usize)> = wx
                .iter()
                .flat_map(|&(a, b)| wy.iter().filter(move |&&(c, _)| c == b + 1).map(move |&(_, e)| (a, e)))
                .collect();
            let mut results = BTreeSet::new();
            for &(a, e) in &pairs {
                results.insert(it.of(a, e)?);
            }
            if pairs.len() >= 2 {
                checks.push(ProductCheck { left: x, right: y, witness_pairs: pairs.len(), agree: results.len() == 1 });
            }
            table.insert((x, y), results.first().copied());
        }
    }
    let k = it.types.len();
    let eps = k;
    let rows: Vec<Vec<usize>> = (0..=k)
        .map(|x| (0..=k).map(|y| if x == eps || y == eps { eps } else { table[&(x, y)].unwrap_or(eps) }).collect())
        .collect();
    let semigroup = FiniteSemigroup::new(rows)?;
    let mut witnesses = vec![Vec::new(); k + 1];
    for (&(a, b), &id) in &it.by_interval {
        witnesses[id].push((a, b));
    }
    for w in &mut witnesses {
        w.sort_by_key(|&(a, b)| (b - a, a));
    }
    let mut types = it.types;
    types.push(QType { q, members: BTreeSet::new(), inconclusive: false });
    Ok(QTypeSemigroup { types, epsilon: eps, semigroup, witnesses, node_types, checks, linking_paths: paths })
}

#[derive(Clone, Debug)]
pub struct Uniformized {
    /// Interior width of the output.
    pub width: usize,
    pub p: usize,
    pub decomposition: PathDecomposition,
    /// The common idempotent q-type of the interior nodes.
    pub qtype: QType,
    /// Recomputed type of every interior node of the output.
    pub node_qtypes: Vec<QType>,
    /// Recomputed type of two adjacent output nodes together.
    pub square: Option<QType>,
    pub below_threshold: bool,
}

impl Uniformized {
    /// All interior nodes share one type and that type squares to itself.
    pub fn verified(&self) -> bool {
        self.node_qtypes.iter().all(|t| *t == self.qtype) && self.square.as_ref().is_none_or(|s| *s == self.qtype)
    }
}

/// Refines to a linked decomposition, finds idempotent runs of node types
/// and merges every run into a single node.
pub fn uniformize_decomposition(
    g: &EmbeddedMultigraph,
    d: &PathDecomposition,
    q: usize,
    f: &dyn Fn(usize) -> usize,
) -> Result<Uniformized> {
    let linked = crate::pathdec::refine_to_linked(&g.graph, d, f)?;
    let d1 = linked.decomposition;
    if d1.order() < 3 {
        return Ok(Uniformized {
            width: d1.interior_width(),
            p: linked.p,
            qtype: QType { q, members: BTreeSet::new(), inconclusive: false },
            node_qtypes: Vec::new(),
            square: None,
            decomposition: d1,
            below_threshold: true,
        });
    }
    let sg = build_qtype_semigroup(g, &d1, q)?;
    let runs = split_idempotent_runs(&sg.semigroup, &sg.node_types, f)?;
    let Some(e) = runs.e.filter(|&e| e != sg.epsilon) else {
        return Ok(Uniformized {
            width: d1.interior_width(),
            p: linked.p,
            qtype: QType { q, members: BTreeSet::new(), inconclusive: false },
            node_qtypes: Vec::new(),
            square: None,
            decomposition: d1,
            below_threshold: true,
        });
    };
    let mut lengths = vec![1 + runs.prefix.len()];
    lengths.extend(runs.runs.iter().map(Vec::len));
    lengths.push(runs.suffix.len() + 1);
    let out = d1.coarsen_runs(&lengths)?;
    let paths = linking_paths(&g.graph, &out)?;
    let order = out.order();
    let node_qtypes = (1..order - 1)
        .map(|x| interval_graph(g, &out, &paths, x, x).map(|lg| compute_qtype(&lg, q)))
        .collect::<Result<Vec<_>>>()?;
    let square = if order >= 4 { Some(compute_qtype(&interval_graph(g, &out, &paths, 1, 2)?, q)) } else { None };
    Ok(Uniformized {
        width: out.interior_width(),
        p: linked.p,
        qtype: sg.types[e].clone(),
        node_qtypes,
        square,
        decomposition: out,
        below_threshold: runs.below_threshold || linked.below_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;
    use crate::planarity::planarity_embed;

    fn labelled(n: usize, edges: &[(usize, usize)], labels: Labels) -> LabelledPlaneMultigraph {
        let g = Multigraph::from_edges(n, edges).unwrap();
        LabelledPlaneMultigraph::new(planarity_embed(&g).unwrap(), labels).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&labelled(2, &[(0, 1)], vec![Some(label_l(0)), Some(label_r(0))])));
        assert!(!is_irreducible(&labelled(3, &[(0, 1), (1, 2)], vec![Some(0), None, Some(1)])));
        assert!(!is_irreducible(&labelled(2, &[(0, 1), (0, 1)], vec![Some(0), Some(1)])));
        assert!(is_irreducible(&labelled(1, &[(0, 0)], vec![None])));
        assert!(!is_irreducible(&labelled(1, &[(0, 0)], vec![Some(0)])));
        assert!(is_irreducible(&LabelledPlaneMultigraph::unlabelled(planarity_embed(&families::complete(4)).unwrap())));
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_irreducible(&[], 0).unwrap().len(), 1);
        assert_eq!(enumerate_irreducible(&[0], 0).unwrap().len(), 2);
        assert!(matches!(enumerate_irreducible(&[0, 1, 2, 3], 1), Err(Error::Scale(_))));
        assert!(matches!(enumerate_irreducible(&[], 3), Err(Error::Scale(_))));
    }

    #[test]
    fn qtype_of_labelled_edge() {
        let g = labelled(2, &[(0, 1)], vec![Some(label_l(0)), Some(label_r(0))]);
        let t = compute_qtype(&g, 0);
        assert!(!t.inconclusive);
        assert_eq!(t.members.len(), 5);
        assert!(t.members.contains(&g.code()));
        let back = QType::parse_dump(0, &t.dump()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn qtype_subdivision_invariance() {
        let g = LabelledPlaneMultigraph::unlabelled(planarity_embed(&families::complete(4)).unwrap());
        let mut g = g;
        g.labels[0] = Some(label_c(0));
        let t = compute_qtype(&g, 2);
        for e in 0..g.graph().m() {
            assert_eq!(compute_qtype(&g.subdivide(e), 2), t);
        }
        assert!(compute_qtype(&g, 1).members.is_subset(&t.members));
    }

    #[test]
    fn ladder_semigroup() {
        let k = 12;
        let g = planarity_embed(&families::ladder(k)).unwrap();
        let d = crate::pathdec::families::ladder(k);
        let sg = build_qtype_semigroup(&g, &d, 1).unwrap();
        assert!(sg.well_defined());
        assert!(sg.node_types.iter().all(|&t| t == sg.node_types[0]));
        let eps = sg.epsilon;
        for x in 0..=eps {
            assert_eq!(sg.semigroup.mul(x, eps), eps);
            assert_eq!(sg.semigroup.mul(eps, x), eps);
        }
        let l = subpath_qtype(&g, &d, 2, 2, 1).unwrap();
        assert_eq!(sg.types[sg.node_types[0]], l);
        assert!(subpath_qtype(&g, &d, 0, 2, 1).is_err());
    }
}
