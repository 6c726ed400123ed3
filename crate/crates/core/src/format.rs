//! Text formats for graphs, drawings, decompositions and semigroups.
//!
//! Graph record:
//!
//! ```text
//! n m
//! edge-id u v          (m lines, edge ids a permutation of 0..m)
//! v: d d d ...         (optional, clockwise darts; dart 2e leaves the
//!                       first endpoint of e, dart 2e+1 the second)
//! crossings:           (optional)
//! y-id edge-a edge-b pos-a pos-b
//! ```
//!
//! Blank lines and `#` comments are ignored. Several records may follow each
//! other in one file.

use std::fmt::Write as _;

use crate::crossing::{planarize, Crossing, Drawing};
use crate::error::{Error, Result};
use crate::graph::{Dart, EmbeddedMultigraph, Multigraph, Vertex};

/// One parsed graph record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphRecord {
    pub graph: Multigraph,
    pub rotation: Option<Vec<Vec<Dart>>>,
    pub crossings: Option<Vec<Crossing>>,
}

impl GraphRecord {
    pub fn embedded(&self) -> Result<Option<EmbeddedMultigraph>> {
        match &self.rotation {
            Some(r) => EmbeddedMultigraph::new(self.graph.clone(), r.clone()).map(Some),
            None => Ok(None),
        }
    }

    pub fn drawing(&self) -> Result<Option<Drawing>> {
        match &self.crossings {
            Some(c) => planarize(&self.graph, c).map(Some),
            None => Ok(None),
        }
    }
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn ints(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().or_else(|_| perr(line, format!("expected a non-negative integer, found `{t}`"))))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<GraphRecord> {
    let mut recs = parse_graphs(text)?;
    match recs.len() {
        1 => Ok(recs.pop().unwrap()),
        0 => perr(1, "empty input"),
        k => perr(1, format!("expected one graph, found {k}")),
    }
}

pub fn parse_graphs(text: &str) -> Result<Vec<GraphRecord>> {
    let lines = content_lines(text);
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (ln, head) = lines[i];
        let nm = ints(ln, head)?;
        if nm.len() != 2 {
            return perr(ln, "header must be `n m`");
        }
        let (n, m) = (nm[0], nm[1]);
        i += 1;
        let mut edges = vec![None; m];
        for _ in 0..m {
            let Some(&(ln, l)) = lines.get(i) else {
                return perr(lines.last().map_or(ln, |x| x.0), format!("expected {m} edge lines"));
            };
            let f = ints(ln, l)?;
            if f.len() != 3 {
                return perr(ln, "edge line must be `edge-id u v`");
            }
            if f[0] >= m || edges[f[0]].is_some() {
                return perr(ln, format!("edge id {} is out of range or repeated", f[0]));
            }
            if f[1] >= n || f[2] >= n {
                return perr(ln, format!("edge {} references a vertex outside 0..{n}", f[0]));
            }
            edges[f[0]] = Some((f[1], f[2]));
            i += 1;
        }
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().map(Option::unwrap).collect();
        let graph = Multigraph::from_edges(n, &edges).expect("validated above");

        let mut rotation: Option<Vec<Vec<Dart>>> = None;
        let mut rot_line = 0;
        while let Some(&(ln, l)) = lines.get(i) {
            let Some((v, rest)) = l.split_once(':') else { break };
            if v.trim() == "crossings" {
                break;
            }
            let v: usize = v.trim().parse().or_else(|_| perr(ln, "rotation line must be `v: darts`"))?;
            if v >= n {
                return perr(ln, format!("rotation for missing vertex {v}"));
            }
            rotation.get_or_insert_with(|| vec![Vec::new(); n])[v] = ints(ln, rest)?;
            rot_line = rot_line.max(ln);
            i += 1;
        }
        if let Some(r) = &rotation {
            if let Err(e) = EmbeddedMultigraph::new(graph.clone(), r.clone()) {
                return perr(rot_line, e.to_string());
            }
        }
        let mut crossings = None;
        if let Some(&(_, l)) = lines.get(i) {
            if l == "crossings:" {
                i += 1;
                let mut list: Vec<(usize, Crossing)> = Vec::new();
                while let Some(&(ln, l)) = lines.get(i) {
                    let f = ints(ln, l)?;
                    if f.len() == 2 {
                        break;
                    }
                    if f.len() != 5 {
                        return perr(ln, "crossing line must be `y-id edge-a edge-b pos-a pos-b`");
                    }
                    if f[1] >= m || f[2] >= m {
                        return perr(ln, "crossing references a missing edge");
                    }
                    list.push((f[0], Crossing { edge_a: f[1], edge_b: f[2], pos_a: f[3], pos_b: f[4] }));
                    i += 1;
                }
                list.sort_by_key(|x| x.0);
                if list.iter().enumerate().any(|(k, x)| x.0 != n + k) {
                    return perr(ln, format!("crossing vertex ids must be {n}, {}, ...", n + 1));
                }
                crossings = Some(list.into_iter().map(|x| x.1).collect());
            }
        }
        out.push(GraphRecord { graph, rotation, crossings });
    }
    Ok(out)
}

pub fn write_graph(g: &Multigraph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let _ = writeln!(s, "{e} {a} {b}");
    }
    s
}

pub fn write_embedded(emb: &EmbeddedMultigraph) -> String {
    let mut s = write_graph(&emb.graph);
    for (v, rot) in emb.rotation.iter().enumerate() {
        let darts: Vec<String> = rot.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "{v}: {}", darts.join(" "));
    }
    s
}

pub fn write_drawing(d: &Drawing) -> String {
    let mut s = write_graph(&d.original);
    s.push_str("crossings:\n");
    for (i, c) in d.crossings.iter().enumerate() {
        let _ = writeln!(s, "{} {} {} {} {}", d.crossing_vertex(i), c.edge_a, c.edge_b, c.pos_a, c.pos_b);
    }
    s
}

/// Bags of a path decomposition, `order t` followed by `x1: v v ...` lines.
pub fn parse_bags(text: &str) -> Result<Vec<Vec<Vertex>>> {
    let lines = content_lines(text);
    let Some(&(ln, head)) = lines.first() else { return perr(1, "empty input") };
    let t = head
        .strip_prefix("order")
        .and_then(|r| r.trim().parse::<usize>().ok())
        .map_or_else(|| perr(ln, "header must be `order t`"), Ok)?;
    if lines.len() != t + 1 {
        return perr(lines.last().unwrap().0, format!("expected {t} bag lines"));
    }
    let mut bags = Vec::with_capacity(t);
    for (k, &(ln, l)) in lines[1..].iter().enumerate() {
        let Some((name, rest)) = l.split_once(':') else { return perr(ln, "bag line must be `xi: vertices`") };
        let idx = name.trim().trim_start_matches('x').trim_start_matches('_');
        if idx.parse::<usize>().ok() != Some(k + 1) {
            return perr(ln, format!("expected bag x{}", k + 1));
        }
        let mut bag = ints(ln, rest)?;
        bag.sort_unstable();
        bag.dedup();
        bags.push(bag);
    }
    Ok(bags)
}

pub fn write_bags(bags: &[Vec<Vertex>]) -> String {
    let mut s = format!("order {}\n", bags.len());
    for (i, b) in bags.iter().enumerate() {
        let vs: Vec<String> = b.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "x{}: {}", i + 1, vs.join(" "));
    }
    s
}

/// Multiplication table, `order n` followed by n rows.
pub fn parse_table(text: &str) -> Result<Vec<Vec<usize>>> {
    let lines = content_lines(text);
    let Some(&(ln, head)) = lines.first() else { return perr(1, "empty input") };
    let n = head
        .strip_prefix("order")
        .and_then(|r| r.trim().parse::<usize>().ok())
        .map_or_else(|| perr(ln, "header must be `order n`"), Ok)?;
    if lines.len() != n + 1 {
        return perr(lines.last().unwrap().0, format!("expected {n} table rows"));
    }
    let mut rows = Vec::with_capacity(n);
    for &(ln, l) in &lines[1..] {
        let row = ints(ln, l)?;
        if row.len() != n || row.iter().any(|&x| x >= n) {
            return perr(ln, format!("row must hold {n} entries in 0..{n}"));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_table(table: &[Vec<usize>]) -> String {
    let mut s = format!("order {}\n", table.len());
    for row in table {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", r.join(" "));
    }
    s
}

pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (ln, l) in content_lines(text) {
        out.extend(ints(ln, l)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete;
    use crate::planarity::planarity_embed;

    #[test]
    fn graph_round_trip() {
        let g = complete(4);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap().graph, g);
        let emb = planarity_embed(&g).unwrap();
        let rec = parse_graph(&write_embedded(&emb)).unwrap();
        assert_eq!(rec.embedded().unwrap().unwrap().rotation, emb.rotation);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_graph("3 2\n0 0 1\n# c\n1 0 7\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 4, msg: "edge 1 references a vertex outside 0..3".into() });
        assert!(matches!(parse_graph("3 2\n0 0 1\n0 1 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("x y\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn drawing_round_trip() {
        let g = complete(5);
        let d = planarize(&g, &[Crossing { edge_a: 5, edge_b: 8, pos_a: 0, pos_b: 0 }]).unwrap();
        let text = write_drawing(&d);
        assert!(text.contains("crossings:\n5 5 8 0 0\n"));
        let back = parse_graph(&text).unwrap().drawing().unwrap().unwrap();
        assert_eq!(back.crossings, d.crossings);
    }

    #[test]
    fn several_records() {
        let text = format!("{}\n{}", write_graph(&complete(3)), write_graph(&complete(4)));
        assert_eq!(parse_graphs(&text).unwrap().len(), 2);
    }

    #[test]
    fn bags_and_tables() {
        let bags = vec![vec![0, 1], vec![1, 2]];
        assert_eq!(parse_bags(&write_bags(&bags)).unwrap(), bags);
        assert!(parse_bags("order 2\nx1: 0\n").is_err());
        let t = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(parse_table(&write_table(&t)).unwrap(), t);
        assert!(matches!(parse_table("order 2\n0 1\n1 5\n"), Err(Error::Parse { line: 3, .. })));
    }
}
