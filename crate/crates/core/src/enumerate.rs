//! Catalogues of 2-connected crossing-critical graphs.
//!
//! [`enumerate_critical`] walks outwards from certified seeds, applying
//! expansion templates and keeping every certified child. [`census_bruteforce`]
//! is the exhaustive reference for small orders, and
//! [`census_by_edge_augmentation`] is a second, planarity-only generator for
//! `c = 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canon::{canonical_code, from_hex, graph_from_code, to_hex, Code};
use crate::crossing::{crossing_number, has_drawing_within, CrValue, Crossing, Drawing, Verdict};
use crate::error::{arg, Error, Result};
use crate::graph::{edge_of, EdgeId, Multigraph, Vertex};
use crate::planarity::planarity_embed;
use crate::structures::{find_band_or_fan, support, tiles_of};
use crate::surgery::{expand, ExpansionRecord, ExpansionSpec};

/// Largest order and crossing number the census accepts.
pub const CENSUS_MAX_N: usize = 8;
pub const CENSUS_MAX_C: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Template {
    /// Subdivide one edge once.
    Subdivision,
    /// Replace a parallel class of multiplicity `p` by `p` paths of length two.
    ParallelPaths,
    /// Duplicate one tile of a band that avoids the crossings of an optimal drawing.
    DuplicateBand,
}

impl Template {
    pub fn all() -> Vec<Template> {
        vec![Template::Subdivision, Template::ParallelPaths, Template::DuplicateBand]
    }

    pub fn name(self) -> &'static str {
        match self {
            Template::Subdivision => "subdivision",
            Template::ParallelPaths => "paths",
            Template::DuplicateBand => "dup-band",
        }
    }

    pub fn parse(s: &str) -> Result<Template> {
        match s {
            "subdivision" | "subdivide" => Ok(Template::Subdivision),
            "paths" => Ok(Template::ParallelPaths),
            "dup-band" | "band" => Ok(Template::DuplicateBand),
            _ => arg(format!("unknown template `{s}`")),
        }
    }
}

/// One graph reachable by a single template application.
#[derive(Clone, Debug)]
pub struct Neighbor {
    pub graph: Multigraph,
    pub code: Code,
    pub template: Template,
    pub spec: ExpansionSpec,
}

/// Rebuilds the drawn graph from a planarization whose crossing vertices
/// kept their incident edge ids. `pairs` lists, for every crossing vertex,
/// the two pairs of opposite edges.
fn unplanarize(g: &Multigraph, crossing: &BTreeMap<Vertex, [(EdgeId, EdgeId); 2]>) -> Result<Multigraph> {
    let m = g.m();
    let mut parent: Vec<EdgeId> = (0..m).collect();
    fn find(p: &mut [EdgeId], x: EdgeId) -> EdgeId {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (&x, pairs) in crossing {
        if g.degree(x) != 4 {
            return Err(Error::Structure(format!("vertex {x} is not a crossing any more")));
        }
        for &(a, b) in pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut ends: BTreeMap<EdgeId, Vec<Vertex>> = BTreeMap::new();
    for e in 0..m {
        let r = find(&mut parent, e);
        let (a, b) = g.endpoints(e);
        let list = ends.entry(r).or_default();
        list.extend([a, b].into_iter().filter(|v| !crossing.contains_key(v)));
    }
    let mut map = vec![usize::MAX; g.n()];
    let mut n = 0;
    for v in 0..g.n() {
        if !crossing.contains_key(&v) {
            map[v] = n;
            n += 1;
        }
    }
    let mut edges = Vec::new();
    for list in ends.values() {
        match list[..] {
            [a, b] => edges.push((map[a], map[b])),
            _ => return Err(Error::Structure("crossing chain without two ends".into())),
        }
    }
    Multigraph::from_edges(n, &edges)
}

fn band_neighbors(g: &Multigraph, s: usize, d: &Drawing) -> Vec<(Multigraph, ExpansionSpec)> {
    let host = &d.planarization;
    let forbidden: BTreeSet<Vertex> = d.crossing_vertices.clone();
    let Ok(Some(band)) = find_band_or_fan(host, &forbidden, 4, s.max(2), 20_000) else {
        return Vec::new();
    };
    let Ok(tiles) = tiles_of(host, &band) else {
        return Vec::new();
    };
    let crossing: BTreeMap<Vertex, [(EdgeId, EdgeId); 2]> = forbidden
        .iter()
        .map(|&x| {
            let r = &host.rotation[x];
            (x, [(edge_of(r[0]), edge_of(r[2])), (edge_of(r[1]), edge_of(r[3]))])
        })
        .collect();
    let mut out = Vec::new();
    for from in 1..band.len().saturating_sub(2) {
        let (sv, _) = support(&tiles[from..from + 1]);
        if sv.iter().any(|v| forbidden.contains(v)) || sv.len() > 2 * s + band.paths[from].len() {
            continue;
        }
        let spec = ExpansionSpec::DupBand { band: 0, from, to: from + 1 };
        let Ok(x) = expand(&host.graph, &spec, Some((host, std::slice::from_ref(&band)))) else {
            continue;
        };
        debug_assert!(matches!(x.record, ExpansionRecord::Band { .. }));
        if let Ok(h) = unplanarize(&x.graph, &crossing) {
            if h.n() > g.n() {
                out.push((h, spec));
            }
        }
    }
    out
}

/// All graphs obtained from `g` by one template application adding at most
/// `s` vertices, deduplicated by canonical code.
pub fn expansions_of(g: &Multigraph, templates: &[Template], s: usize) -> Vec<Neighbor> {
    let mut seen: BTreeMap<Code, Neighbor> = BTreeMap::new();
    let mut push = |graph: Multigraph, template: Template, spec: ExpansionSpec| {
        if graph.n() > g.n() + s {
            return;
        }
        let code = canonical_code(&graph);
        seen.entry(code.clone()).or_insert(Neighbor { graph, code, template, spec });
    };
    let (_, _, class) = g.underlying_simple();
    for &t in templates {
        match t {
            Template::Subdivision => {
                for e in 0..g.m() {
                    let spec = ExpansionSpec::Subdivide { edge: e, k: 1 };
                    if let Ok(x) = expand(g, &spec, None) {
                        push(x.graph, t, spec);
                    }
                }
            }
            Template::ParallelPaths => {
                let mut done = BTreeSet::new();
                for e in 0..g.m() {
                    let (a, b) = g.endpoints(e);
                    let p = g.multiplicity(a, b);
                    if p >= 2 && done.insert(class[e]) {
                        let spec = ExpansionSpec::Paths { edge: e, p };
                        if let Ok(x) = expand(g, &spec, None) {
                            push(x.graph, t, spec);
                        }
                    }
                }
            }
            Template::DuplicateBand => {
                if let crate::crossing::CrossingResult::Exact { witness, .. } = crossing_number(g, None) {
                    for (h, spec) in band_neighbors(g, s, &witness) {
                        push(h, t, spec);
                    }
                }
            }
        }
    }
    seen.into_values().collect()
}

/// One certified graph of a catalogue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub code: Code,
    pub graph: Multigraph,
    pub cr: CrValue,
    pub verdict: Verdict,
    /// Graph this one was generated from, and how.
    pub parent: Option<(Code, String)>,
}

impl Entry {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub c: usize,
    pub max_n: usize,
    /// Canonical representatives sorted by vertex count, then code.
    pub entries: Vec<Entry>,
    /// Wall time between consecutive outputs of a generator run.
    pub delays: Vec<Duration>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn codes(&self) -> BTreeSet<Code> {
        self.entries.iter().map(|e| e.code.clone()).collect()
    }

    pub fn critical_codes(&self) -> BTreeSet<Code> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Critical).map(|e| e.code.clone()).collect()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Multigraph> {
        self.entries.iter().map(|e| &e.graph)
    }

    pub fn max_delay(&self) -> Duration {
        self.delays.iter().copied().max().unwrap_or_default()
    }

    /// Canonical representatives, sorted.
    fn finish(&mut self) {
        for e in &mut self.entries {
            e.graph = graph_from_code(&e.code).expect("valid canonical code");
        }
        self.entries.sort_by(|a, b| (a.n(), &a.code).cmp(&(b.n(), &b.code)));
    }

    /// Text form, one line per graph:
    ///
    /// ```text
    /// catalog c 1 max-n 7
    /// graph <hex code> n 6 m 11 cr 1 verdict critical parent <hex|-> via <spec>
    /// ```
    pub fn write(&self) -> String {
        let mut s = format!("catalog c {} max-n {}\n", self.c, self.max_n);
        for e in &self.entries {
            let cr = match e.cr {
                CrValue::Exact(v) => v.to_string(),
                CrValue::AtLeast(v) => format!(">={v}"),
            };
            let verdict = match &e.verdict {
                Verdict::Critical => "critical",
                Verdict::NotCritical(_) => "not-critical",
                Verdict::Inconclusive(_) => "inconclusive",
            };
            let (parent, via) = match &e.parent {
                Some((p, v)) => (to_hex(p), v.as_str()),
                None => ("-".to_string(), "-"),
            };
            let _ = writeln!(
                s,
                "graph {} n {} m {} cr {cr} verdict {verdict} parent {parent} via {via}",
                to_hex(&e.code),
                e.n(),
                e.m()
            );
        }
        s
    }

    pub fn parse(text: &str) -> Result<Catalog> {
        let mut cat = Catalog::default();
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let perr = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            let l = raw.split('#').next().unwrap().trim();
            if l.is_empty() {
                continue;
            }
            let t: Vec<&str> = l.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| perr(&format!("bad number `{s}`")));
            match t[0] {
                "catalog" => {
                    if t.len() != 5 || t[1] != "c" || t[3] != "max-n" {
                        return Err(perr("expected `catalog c C max-n N`"));
                    }
                    cat.c = num(t[2])?;
                    cat.max_n = num(t[4])?;
                    header = true;
                }
                "graph" if header => {
                    if t.len() < 14 {
                        return Err(perr("truncated graph record"));
                    }
                    let code = from_hex(t[1]).ok_or_else(|| perr("bad code"))?;
                    let graph = graph_from_code(&code).ok_or_else(|| perr("code does not decode to a graph"))?;
                    if graph.n() != num(t[3])? || graph.m() != num(t[5])? {
                        return Err(perr("vertex or edge count disagrees with the code"));
                    }
                    let cr = match t[7].strip_prefix(">=") {
                        Some(v) => CrValue::AtLeast(num(v)?),
                        None => CrValue::Exact(num(t[7])?),
                    };
                    let verdict = match t[9] {
                        "critical" => Verdict::Critical,
                        "not-critical" => Verdict::NotCritical(String::new()),
                        "inconclusive" => Verdict::Inconclusive(String::new()),
                        v => return Err(perr(&format!("unknown verdict `{v}`"))),
                    };
                    let via = l.split_once(" via ").map(|(_, v)| v.trim()).unwrap_or("-");
                    let parent = match t[11] {
                        "-" => None,
                        h => Some((from_hex(h).ok_or_else(|| perr("bad parent code"))?, via.to_string())),
                    };
                    cat.entries.push(Entry { code, graph, cr, verdict, parent });
                }
                _ => return Err(perr("expected a catalog header or graph record")),
            }
        }
        if !header {
            return Err(Error::Parse { line: 1, msg: "missing catalog header".into() });
        }
        cat.finish();
        Ok(cat)
    }
}

/// `cr(g) >= c` and `cr(g - e) < c` for every edge, stopping at the first
/// failure. Budgets never exceed `c - 1`, so the answer is always exact.
pub fn is_critical_quick(g: &Multigraph, c: usize) -> bool {
    if c == 0 || has_drawing_within(g, c - 1) {
        return false;
    }
    let (_, _, class) = g.underlying_simple();
    let mut done = BTreeSet::new();
    (0..g.m()).all(|e| !done.insert(class[e]) || has_drawing_within(&g.without_edge(e), c - 1))
}

fn certify(g: &Multigraph, c: usize, budget: Option<usize>) -> (CrValue, Verdict) {
    let budget = budget.map(|b| b.max(c - 1));
    let cr = crossing_number(g, budget).value();
    if matches!(cr, CrValue::Exact(v) if v < c) {
        return (cr, Verdict::NotCritical(format!("cr = {} < {c}", cr.exact().unwrap())));
    }
    let (_, _, class) = g.underlying_simple();
    let mut done = BTreeSet::new();
    for e in 0..g.m() {
        if done.insert(class[e]) && !has_drawing_within(&g.without_edge(e), c - 1) {
            return (cr, Verdict::NotCritical(format!("deleting edge {e} keeps the crossing number at least {c}")));
        }
    }
    if let CrValue::AtLeast(v) = cr {
        return (cr, Verdict::Inconclusive(format!("critical, but cr is only known to be at least {v}")));
    }
    (cr, Verdict::Critical)
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Most vertices one template application may add.
    pub s: usize,
    /// Solver budget for the exact crossing number of each entry.
    pub budget: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { s: 2, budget: None }
    }
}

pub fn enumerate_critical(c: usize, max_n: usize, seeds: &[Multigraph], templates: &[Template]) -> Result<Catalog> {
    enumerate_critical_with(c, max_n, seeds, templates, &EnumerateOptions::default())
}

/// Breadth-first search over template expansions from certified seeds,
/// keeping every certified graph with at most `max_n` vertices.
pub fn enumerate_critical_with(
    c: usize,
    max_n: usize,
    seeds: &[Multigraph],
    templates: &[Template],
    opts: &EnumerateOptions,
) -> Result<Catalog> {
    if c == 0 {
        return arg("c must be at least 1");
    }
    let mut cat = Catalog { c, max_n, ..Default::default() };
    let mut seen: BTreeSet<Code> = BTreeSet::new();
    let mut frontier: Vec<Multigraph> = Vec::new();
    let mut clock = Instant::now();
    for g in seeds {
        if g.n() > max_n {
            continue;
        }
        let code = canonical_code(g);
        if !seen.insert(code.clone()) {
            continue;
        }
        let (cr, verdict) = certify(g, c, opts.budget);
        if let Verdict::NotCritical(why) = &verdict {
            return Err(Error::Precondition(format!("seed is not {c}-critical: {why}")));
        }
        if verdict == Verdict::Critical {
            frontier.push(g.clone());
        }
        cat.entries.push(Entry { code, graph: g.clone(), cr, verdict, parent: None });
        cat.delays.push(clock.elapsed());
        clock = Instant::now();
    }
    while !frontier.is_empty() {
        let mut candidates: Vec<(Code, Multigraph, Code, String)> = Vec::new();
        for g in &frontier {
            let pc = canonical_code(g);
            for nb in expansions_of(g, templates, opts.s) {
                if nb.graph.n() <= max_n && seen.insert(nb.code.clone()) {
                    candidates.push((nb.code, nb.graph, pc.clone(), format!("{} ({})", nb.spec, nb.template.name())));
                }
            }
        }
        let certified: Vec<(CrValue, Verdict)> = candidates.par_iter().map(|(_, g, _, _)| certify(g, c, opts.budget)).collect();
        frontier.clear();
        for ((code, graph, parent, via), (cr, verdict)) in candidates.into_iter().zip(certified) {
            if matches!(verdict, Verdict::NotCritical(_)) {
                continue;
            }
            if verdict == Verdict::Critical {
                frontier.push(graph.clone());
            }
            cat.entries.push(Entry { code, graph, cr, verdict, parent: Some((parent, via)) });
            cat.delays.push(clock.elapsed());
            clock = Instant::now();
        }
    }
    cat.finish();
    Ok(cat)
}

fn check_census_scale(c: usize, max_n: usize) -> Result<()> {
    if c == 0 {
        return arg("c must be at least 1");
    }
    if c > CENSUS_MAX_C || max_n > CENSUS_MAX_N {
        return Err(Error::Scale(format!(
            "census is limited to c <= {CENSUS_MAX_C} and n <= {CENSUS_MAX_N}, asked for c = {c}, n = {max_n}"
        )));
    }
    Ok(())
}

fn with_vertex(g: &Multigraph, mask: u32) -> Multigraph {
    let mut h = g.clone();
    let v = h.add_vertex();
    for u in 0..g.n() {
        if mask >> u & 1 == 1 {
            h.add_edge(u, v).unwrap();
        }
    }
    h
}

/// Most edges a simple graph with `n >= 3` vertices and crossing number at
/// most `k` can have.
fn edge_cap(n: usize, k: usize) -> usize {
    3 * n - 6 + k
}

/// Exhaustive census of 2-connected `c`-crossing-critical multigraphs with
/// at most `max_n` vertices and edge multiplicity at most `c`.
///
/// Simple graphs are grown one vertex at a time. Every proper subgraph of a
/// `c`-critical graph has crossing number below `c`, which bounds the edge
/// count of each intermediate graph. A critical multigraph with a parallel
/// class has a non-planar underlying simple graph `U` with `cr(U) < c`; its
/// multiplicities are searched over each such `U`, dropping any assignment
/// in which removing one copy of a parallel class leaves crossing number at
/// least `c`.
pub fn census_bruteforce(c: usize, max_n: usize) -> Result<Catalog> {
    check_census_scale(c, max_n)?;
    let mut cat = Catalog { c, max_n, ..Default::default() };
    let mut clock = Instant::now();
    let mut level: Vec<Multigraph> = vec![Multigraph::new(1)];
    let mut found: BTreeMap<Code, Multigraph> = BTreeMap::new();
    let mut bases: Vec<Multigraph> = Vec::new();
    for k in 2..=max_n {
        let mut next: BTreeMap<Code, Multigraph> = BTreeMap::new();
        for g in &level {
            for mask in 1u32..(1 << (k - 1)) {
                let h = with_vertex(g, mask);
                if k >= 3 && h.m() > edge_cap(k, c) {
                    continue;
                }
                next.entry(canonical_code(&h)).or_insert(h);
            }
        }
        let graphs: Vec<(Code, Multigraph)> = next.into_iter().collect();
        let flags: Vec<(bool, bool, bool)> = graphs
            .par_iter()
            .map(|(_, h)| {
                let two = k >= 3 && h.is_two_connected();
                let keep = k == max_n || k < 3 || h.m() <= edge_cap(k, c - 1) && (c > 1 || planarity_embed(h).is_some());
                let crit = two && planarity_embed(h).is_none() && is_critical_quick(h, c);
                (keep, two, crit)
            })
            .collect();
        level.clear();
        for ((code, h), (keep, two, crit)) in graphs.into_iter().zip(flags) {
            if crit {
                found.insert(code, h.clone());
            }
            if c > 1 && two && h.m() <= edge_cap(k, c - 1) && planarity_embed(&h).is_none() {
                bases.push(h.clone());
            }
            if keep && k < max_n {
                level.push(h);
            }
        }
    }
    let multi: Vec<Vec<Multigraph>> = bases.par_iter().map(|u| multiplicities(u, c)).collect();
    for g in multi.into_iter().flatten() {
        found.entry(canonical_code(&g)).or_insert(g);
    }
    for (code, graph) in found {
        let cr = crossing_number(&graph, None).value();
        cat.entries.push(Entry { code, graph, cr, verdict: Verdict::Critical, parent: None });
        cat.delays.push(clock.elapsed());
        clock = Instant::now();
    }
    cat.finish();
    Ok(cat)
}

fn with_multiplicities(u: &Multigraph, mu: &[usize]) -> Multigraph {
    let mut edges = Vec::new();
    for (e, &(a, b)) in u.edges().iter().enumerate() {
        for _ in 0..mu[e] {
            edges.push((a, b));
        }
    }
    Multigraph::from_edges(u.n(), &edges).unwrap()
}

/// Inclusion-minimal sets of at most `max` crossing pairs that some drawing
/// of the simple graph `u` realizes exactly.
struct Configurations {
    sets: Vec<Vec<(EdgeId, EdgeId)>>,
    /// Sets crossing each edge.
    by_edge: Vec<Vec<usize>>,
    /// Sets whose largest edge is each edge.
    by_last: Vec<Vec<usize>>,
}

fn realizable(u: &Multigraph, pairs: &[(EdgeId, EdgeId)]) -> bool {
    let mut on: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        on.entry(a).or_default().push(i);
        on.entry(b).or_default().push(i);
    }
    let shared: Vec<EdgeId> = on.iter().filter(|(_, v)| v.len() > 1).map(|(&e, _)| e).collect();
    // every order of the crossings along shared edges
    let mut orders: Vec<BTreeMap<EdgeId, Vec<usize>>> = vec![BTreeMap::new()];
    for &e in &shared {
        let mut next = Vec::new();
        for o in &orders {
            let mut perm = on[&e].clone();
            loop {
                let mut o2 = o.clone();
                o2.insert(e, perm.clone());
                next.push(o2);
                if !crate::crossing::next_permutation(&mut perm) {
                    break;
                }
            }
        }
        orders = next;
    }
    orders.iter().any(|o| {
        let pos = |e: EdgeId, i: usize| o.get(&e).map_or(0, |p| p.iter().position(|&x| x == i).unwrap());
        let cs: Vec<Crossing> =
            pairs.iter().enumerate().map(|(i, &(a, b))| Crossing { edge_a: a, edge_b: b, pos_a: pos(a, i), pos_b: pos(b, i) }).collect();
        crate::crossing::planarize(u, &cs).is_ok()
    })
}

fn configurations(u: &Multigraph, max: usize) -> Configurations {
    let m = u.m();
    let mut pairs = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let (x, y) = u.endpoints(a);
            let (z, w) = u.endpoints(b);
            if x != z && x != w && y != z && y != w {
                pairs.push((a, b));
            }
        }
    }
    let single: Vec<bool> = pairs.iter().map(|&p| realizable(u, &[p])).collect();
    let mut sets: Vec<Vec<(EdgeId, EdgeId)>> = pairs.iter().zip(&single).filter(|(_, &s)| s).map(|(&p, _)| vec![p]).collect();
    if max >= 2 {
        let rest: Vec<(EdgeId, EdgeId)> = pairs.iter().zip(&single).filter(|(_, &s)| !s).map(|(&p, _)| p).collect();
        let doubles: Vec<Vec<(EdgeId, EdgeId)>> = (0..rest.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let rest = &rest;
                (i + 1..rest.len()).filter(move |&j| realizable(u, &[rest[i], rest[j]])).map(move |j| vec![rest[i], rest[j]])
            })
            .collect();
        sets.extend(doubles);
    }
    let mut by_edge = vec![Vec::new(); m];
    let mut by_last = vec![Vec::new(); m];
    for (i, x) in sets.iter().enumerate() {
        let edges: BTreeSet<EdgeId> = x.iter().flat_map(|&(a, b)| [a, b]).collect();
        for &e in &edges {
            by_edge[e].push(i);
        }
        by_last[*edges.iter().next_back().unwrap()].push(i);
    }
    Configurations { sets, by_edge, by_last }
}

/// Critical multigraphs with underlying simple graph `u` and at least one
/// parallel class. Every drawing of such a multigraph can be assumed to
/// draw parallel edges side by side, so its cost is that of a drawing of `u`
/// weighted by products of multiplicities.
fn multiplicities(u: &Multigraph, c: usize) -> Vec<Multigraph> {
    let conf = configurations(u, c - 1);
    if conf.sets.is_empty() {
        return Vec::new();
    }
    let cost = |x: &[(EdgeId, EdgeId)], mu: &[usize], minus: Option<EdgeId>| -> usize {
        let w = |e: EdgeId| mu[e] - usize::from(minus == Some(e));
        x.iter().map(|&(a, b)| w(a) * w(b)).sum()
    };
    struct Search<'a> {
        conf: &'a Configurations,
        c: usize,
        m: usize,
        out: BTreeMap<Code, (Multigraph, Vec<usize>)>,
        u: &'a Multigraph,
    }
    fn rec(s: &mut Search, i: usize, mu: &mut Vec<usize>, cost: &dyn Fn(&[(EdgeId, EdgeId)], &[usize], Option<EdgeId>) -> usize) {
        if i == s.m {
            // every set has been weighed in full, so cr >= c already; a
            // parallel class is critical iff dropping one copy leaves a cheap set
            let thick_ok = (0..s.m)
                .filter(|&k| mu[k] > 1)
                .all(|k| s.conf.by_edge[k].iter().any(|&x| cost(&s.conf.sets[x], mu, Some(k)) < s.c));
            if thick_ok && mu.iter().any(|&x| x > 1) {
                let g = with_multiplicities(s.u, mu);
                s.out.entry(canonical_code(&g)).or_insert_with(|| (g, mu.clone()));
            }
            return;
        }
        for val in 1..=s.c {
            mu[i] = val;
            // sets now fully weighted must already cost at least c
            if s.conf.by_last[i].iter().any(|&x| cost(&s.conf.sets[x], mu, None) < s.c) {
                continue;
            }
            // each parallel class must lose a copy to some cheap drawing
            if val > 1
                && !(0..=i)
                    .filter(|&k| mu[k] > 1)
                    .all(|k| s.conf.by_edge[k].iter().any(|&x| cost(&s.conf.sets[x], mu, Some(k)) < s.c))
            {
                break;
            }
            rec(s, i + 1, mu, cost);
        }
        mu[i] = 1;
    }
    let mut s = Search { conf: &conf, c, m: u.m(), out: BTreeMap::new(), u };
    rec(&mut s, 0, &mut vec![1; u.m()], &cost);
    // a single edge must leave some drawing of cost below c when deleted;
    // dropping its pairs from a cheap-enough set is a quick witness
    let light = |mu: &[usize], e: EdgeId| {
        conf.sets.iter().any(|x| x.iter().filter(|&&(a, b)| a != e && b != e).map(|&(a, b)| mu[a] * mu[b]).sum::<usize>() < c)
    };
    s.out
        .into_values()
        .filter(|(_, mu)| {
            (0..u.m()).filter(|&e| mu[e] == 1).all(|e| {
                light(mu, e) || {
                    let mut less = mu.clone();
                    less[e] = 0;
                    has_drawing_within(&with_multiplicities(u, &less), c - 1)
                }
            })
        })
        .map(|(g, _)| g)
        .collect()
}

/// Second generator for `c = 1`: graphs grown one edge at a time on a fixed
/// vertex set, keeping only planar intermediates, with criticality decided
/// by planarity tests alone.
pub fn census_by_edge_augmentation(max_n: usize) -> Result<BTreeSet<Code>> {
    check_census_scale(1, max_n)?;
    let mut out = BTreeSet::new();
    for n in 3..=max_n {
        let mut level: BTreeMap<Code, Multigraph> = BTreeMap::new();
        level.insert(canonical_code(&Multigraph::new(n)), Multigraph::new(n));
        while !level.is_empty() {
            let mut next: BTreeMap<Code, Multigraph> = BTreeMap::new();
            for g in level.values() {
                let adj: HashMap<(Vertex, Vertex), ()> = g.edges().iter().map(|&(a, b)| ((a.min(b), a.max(b)), ())).collect();
                for a in 0..n {
                    for b in a + 1..n {
                        if adj.contains_key(&(a, b)) {
                            continue;
                        }
                        let mut h = g.clone();
                        h.add_edge(a, b).unwrap();
                        let code = canonical_code(&h);
                        if next.contains_key(&code) {
                            continue;
                        }
                        if planarity_embed(&h).is_some() {
                            next.insert(code, h);
                        } else if (0..n).all(|v| h.degree(v) >= 2)
                            && h.is_two_connected()
                            && (0..h.m()).all(|e| planarity_embed(&h.without_edge(e)).is_some())
                        {
                            out.insert(code);
                        }
                    }
                }
            }
            level = next;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn kuratowski() -> Vec<Multigraph> {
        vec![families::complete(5), families::complete_bipartite(3, 3)]
    }

    #[test]
    fn subdivided_k5_is_a_neighbor() {
        let k5 = families::complete(5);
        let nb = expansions_of(&k5, &[Template::Subdivision], 2);
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0].code, canonical_code(&k5.subdivide(0, 1)));
        assert!(expansions_of(&k5, &[Template::ParallelPaths], 2).is_empty());
        assert!(expansions_of(&k5, &[Template::Subdivision], 0).is_empty());
    }

    #[test]
    fn path_template_grows_linearly() {
        let counts: Vec<usize> = (3..8)
            .map(|k| {
                let mut g = families::cycle(k);
                for e in 0..k {
                    let (a, b) = g.endpoints(e);
                    g.add_edge(a, b).unwrap();
                }
                expansions_of(&g, &[Template::ParallelPaths], 2).len()
            })
            .collect();
        assert!(counts.iter().all(|&x| x == 1), "{counts:?}");
        let g = families::diamond_chain(4);
        let n = expansions_of(&g, &[Template::Subdivision], 1).len();
        assert!(n <= g.m());
    }

    #[test]
    fn small_catalogs() {
        let cat = enumerate_critical(1, 5, &kuratowski(), &[Template::Subdivision]).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.entries[0].code, canonical_code(&families::complete(5)));
        assert!(enumerate_critical(1, 7, &[], &Template::all()).unwrap().is_empty());
        let six = enumerate_critical(1, 6, &kuratowski(), &[Template::Subdivision]).unwrap();
        assert_eq!(six.len(), 3);
        assert_eq!(six.delays.len(), 3);
        assert!(six.entries.iter().filter(|e| e.parent.is_some()).count() == 1);
        let err = enumerate_critical(1, 6, &[families::complete(4)], &[Template::Subdivision]);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn census_small_orders() {
        let five = census_bruteforce(1, 5).unwrap();
        assert_eq!(five.codes(), BTreeSet::from([canonical_code(&families::complete(5))]));
        let six = census_bruteforce(1, 6).unwrap();
        assert_eq!(six.len(), 3);
        assert_eq!(six.codes(), census_by_edge_augmentation(6).unwrap());
        assert!(matches!(census_bruteforce(1, 9), Err(Error::Scale(_))));
        assert!(matches!(census_bruteforce(4, 5), Err(Error::Scale(_))));
    }

    #[test]
    fn multigraph_census_finds_thick_k33() {
        // K3,3 with the six edges away from one vertex doubled
        let k33 = families::complete_bipartite(3, 3);
        let mu: Vec<usize> = k33.edges().iter().map(|&(a, b)| if a == 0 || b == 0 { 1 } else { 2 }).collect();
        let g = with_multiplicities(&k33, &mu);
        assert!(is_critical_quick(&g, 2));
        let found = multiplicities(&k33, 2);
        assert!(found.iter().any(|h| canonical_code(h) == canonical_code(&g)));
    }

    #[test]
    fn catalog_text_round_trip() {
        let cat = enumerate_critical(1, 6, &kuratowski(), &[Template::Subdivision]).unwrap();
        let text = cat.write();
        let back = Catalog::parse(&text).unwrap();
        assert_eq!(back.codes(), cat.codes());
        assert_eq!(back.entries, cat.entries);
        assert!(Catalog::parse("graph 00").is_err());
        assert!(matches!(Catalog::parse("catalog c 1 max-n 5\ngraph zz n 1"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn unplanarize_recovers_k5() {
        let k5 = families::complete(5);
        let d = match crossing_number(&k5, None) {
            crate::crossing::CrossingResult::Exact { witness, .. } => witness,
            _ => unreachable!(),
        };
        let pairs = d
            .crossing_vertices
            .iter()
            .map(|&x| {
                let r = &d.planarization.rotation[x];
                (x, [(edge_of(r[0]), edge_of(r[2])), (edge_of(r[1]), edge_of(r[3]))])
            })
            .collect();
        let g = unplanarize(&d.planarization.graph, &pairs).unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&k5));
    }

    #[test]
    fn thick_k5_matches_exhaustive_multiplicities() {
        let u = families::complete(5);
        let mut brute = BTreeSet::new();
        for mask in 0u32..(1 << 10) {
            let mu: Vec<usize> = (0..10).map(|e| 1 + (mask >> e & 1) as usize).collect();
            let g = with_multiplicities(&u, &mu);
            if is_critical_quick(&g, 2) {
                brute.insert(canonical_code(&g));
            }
        }
        let found: BTreeSet<Code> = multiplicities(&u, 2).iter().map(canonical_code).collect();
        assert!(!found.is_empty());
        assert_eq!(found, brute);
    }
}
