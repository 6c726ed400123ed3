//! Finite semigroups, factorization trees and idempotent runs.
//!
//! [`build_factorization_tree`] returns a tree of minimum height, computed
//! level by level over all intervals of the word with bitset reachability.
//! Minimum height is never above the `3|A|` bound of the factorization
//! forest theorem.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{arg, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    table: Vec<Vec<usize>>,
}

impl FiniteSemigroup {
    /// Validates shape and associativity (`O(|A|^3)`).
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return arg("a semigroup needs at least one element");
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return arg(format!("table must be {n}x{n} with entries in 0..{n}"));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteSemigroup { table })
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn product(&self, word: &[usize]) -> Option<usize> {
        word.iter().copied().reduce(|x, y| self.mul(x, y))
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> BTreeSet<usize> {
        (0..self.size()).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Semigroup generated by maps on `0..k` under composition
    /// (`a * b` applies `a` first). Fails past `max_size` elements.
    pub fn from_transformations(gens: &[Vec<usize>], max_size: usize) -> Result<Self> {
        let Some(k) = gens.first().map(Vec::len) else { return arg("no generators") };
        if gens.iter().any(|g| g.len() != k || g.iter().any(|&x| x >= k)) {
            return arg("generators must be maps on a common set");
        }
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut elems: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
                queue.push_back(g.clone());
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&x| b[x]).collect() };
        while let Some(a) = queue.pop_front() {
            for g in gens {
                let c = compose(&a, g);
                if !index.contains_key(&c) {
                    if elems.len() == max_size {
                        return Err(Error::Scale(format!("semigroup exceeds {max_size} elements")));
                    }
                    index.insert(c.clone(), elems.len());
                    elems.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        FiniteSemigroup::new(table)
    }

    pub fn cyclic_group(n: usize) -> Self {
        FiniteSemigroup { table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() }
    }

    /// `{0, 1}` under multiplication.
    pub fn boolean() -> Self {
        FiniteSemigroup { table: vec![vec![0, 0], vec![0, 1]] }
    }

    /// All maps on two points under composition.
    pub fn full_transformations_2() -> Self {
        Self::from_transformations(&[vec![0, 1], vec![1, 0], vec![0, 0], vec![1, 1]], 4).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorizationTree {
    Leaf { letter: usize },
    Node { value: usize, children: Vec<FactorizationTree> },
}

impl FactorizationTree {
    pub fn value(&self) -> usize {
        match self {
            FactorizationTree::Leaf { letter } => *letter,
            FactorizationTree::Node { value, .. } => *value,
        }
    }

    /// Edges on the longest root-leaf path; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            FactorizationTree::Leaf { .. } => 0,
            FactorizationTree::Node { children, .. } => 1 + children.iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            FactorizationTree::Leaf { letter } => out.push(*letter),
            FactorizationTree::Node { children, .. } => children.iter().for_each(|c| c.collect(out)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            FactorizationTree::Leaf { .. } => 1,
            FactorizationTree::Node { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Checks products, the idempotent rule for nodes with more than two
    /// children, and that no node has a single child.
    pub fn check(&self, a: &FiniteSemigroup) -> Result<()> {
        let FactorizationTree::Node { value, children } = self else { return Ok(()) };
        if children.len() < 2 {
            return Err(Error::Structure("internal node with fewer than two children".into()));
        }
        let vals: Vec<usize> = children.iter().map(|c| c.value()).collect();
        if a.product(&vals) != Some(*value) {
            return Err(Error::Structure(format!("node value {value} is not the product of its children")));
        }
        if children.len() > 2 && !(a.is_idempotent(*value) && vals.iter().all(|&v| v == *value)) {
            return Err(Error::Structure("wide node whose children are not one idempotent".into()));
        }
        children.iter().try_for_each(|c| c.check(a))
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n / 64 + 1])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn or(&mut self, o: &Bits) -> bool {
        let mut changed = false;
        for (x, y) in self.0.iter_mut().zip(&o.0) {
            let z = *x | y;
            changed |= z != *x;
            *x = z;
        }
        changed
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    w * 64 + b
                })
            })
        })
    }
}

const UNSET: u16 = u16::MAX;

/// Minimum-height factorization tree of `word`.
pub fn build_factorization_tree(a: &FiniteSemigroup, word: &[usize]) -> Result<FactorizationTree> {
    let n = word.len();
    if n == 0 {
        return arg("the word must be non-empty");
    }
    if word.iter().any(|&x| x >= a.size()) {
        return arg("letter outside the semigroup");
    }
    let mut prod = vec![vec![usize::MAX; n + 1]; n + 1];
    for i in 0..n {
        let mut p = word[i];
        prod[i][i + 1] = p;
        for j in i + 2..=n {
            p = a.mul(p, word[j - 1]);
            prod[i][j] = p;
        }
    }
    let mut height = vec![vec![UNSET; n + 1]; n + 1];
    let mut ends: Vec<Bits> = vec![Bits::new(n + 1); n + 1];
    for i in 0..n {
        height[i][i + 1] = 0;
        ends[i].set(i + 1);
    }
    let idem: Vec<usize> = a.idempotents().into_iter().collect();
    let mut h: u16 = 0;
    while height[0][n] == UNSET {
        h += 1;
        let mut fresh: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            let mut reach = Bits::new(n + 1);
            for k in ends[i].iter() {
                reach.or(&ends[k]);
            }
            fresh.extend(reach.iter().filter(|&j| height[i][j] == UNSET).map(|j| (i, j)));
        }
        for &e in &idem {
            let e_ends: Vec<Bits> = (0..=n)
                .map(|i| {
                    let mut b = Bits::new(n + 1);
                    for j in ends[i].iter().filter(|&j| prod[i][j] == e) {
                        b.set(j);
                    }
                    b
                })
                .collect();
            // closure[i]: ends of chains of one or more e-blocks from i
            let mut closure: Vec<Bits> = vec![Bits::new(n + 1); n + 1];
            for i in (0..n).rev() {
                let mut c = e_ends[i].clone();
                for k in e_ends[i].iter() {
                    c.or(&closure[k]);
                }
                closure[i] = c;
            }
            // two_plus[k]: ends of chains of two or more blocks from k
            let two_plus: Vec<Bits> = (0..=n)
                .map(|k| {
                    let mut b = Bits::new(n + 1);
                    for k2 in e_ends[k].iter() {
                        b.or(&closure[k2]);
                    }
                    b
                })
                .collect();
            for i in 0..n {
                let mut r = Bits::new(n + 1);
                for k in e_ends[i].iter() {
                    r.or(&two_plus[k]);
                }
                fresh.extend(r.iter().filter(|&j| height[i][j] == UNSET).map(|j| (i, j)));
            }
        }
        for (i, j) in fresh {
            if height[i][j] == UNSET {
                height[i][j] = h;
                ends[i].set(j);
            }
        }
    }
    Ok(rebuild(a, word, &prod, &height, 0, n))
}

fn rebuild(a: &FiniteSemigroup, word: &[usize], prod: &[Vec<usize>], height: &[Vec<u16>], i: usize, j: usize) -> FactorizationTree {
    let h = height[i][j];
    if h == 0 {
        return FactorizationTree::Leaf { letter: word[i] };
    }
    let ok = |x: usize, y: usize| height[x][y] < h;
    let e = prod[i][j];
    if a.is_idempotent(e) {
        // longest chain of e-blocks of height < h from i to j
        let mut best = vec![0usize; j + 1];
        let mut back = vec![usize::MAX; j + 1];
        best[i] = 0;
        back[i] = i;
        for p in i..j {
            if back[p] == usize::MAX {
                continue;
            }
            for q in p + 1..=j {
                if ok(p, q) && prod[p][q] == e && (back[q] == usize::MAX || best[p] + 1 > best[q]) {
                    best[q] = best[p] + 1;
                    back[q] = p;
                }
            }
        }
        if back[j] != usize::MAX && best[j] >= 3 {
            let mut cuts = vec![j];
            let mut q = j;
            while q != i {
                q = back[q];
                cuts.push(q);
            }
            cuts.reverse();
            let children = cuts.windows(2).map(|w| rebuild(a, word, prod, height, w[0], w[1])).collect();
            return FactorizationTree::Node { value: e, children };
        }
    }
    let k = (i + 1..j).find(|&k| ok(i, k) && ok(k, j)).expect("height table is consistent");
    FactorizationTree::Node {
        value: e,
        children: vec![rebuild(a, word, prod, height, i, k), rebuild(a, word, prod, height, k, j)],
    }
}

/// Plain rooted ordered tree; vertex 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn leaf_counts(&self) -> Vec<usize> {
        let n = self.children.len();
        let mut cnt = vec![0; n];
        for v in (0..n).rev() {
            cnt[v] = if self.children[v].is_empty() { 1 } else { self.children[v].iter().map(|&c| cnt[c]).sum() };
        }
        cnt
    }

    pub fn depth(&self) -> usize {
        fn d(t: &RootedTree, v: usize) -> usize {
            t.children[v].iter().map(|&c| 1 + d(t, c)).max().unwrap_or(0)
        }
        if self.children.is_empty() { 0 } else { d(self, 0) }
    }

    pub fn star(leaves: usize) -> Self {
        let mut children = vec![(1..=leaves).collect()];
        children.extend((0..leaves).map(|_| Vec::new()));
        RootedTree { children }
    }

    pub fn perfect_binary(depth: usize) -> Self {
        let n = (1usize << (depth + 1)) - 1;
        RootedTree {
            children: (0..n).map(|v| if 2 * v + 2 < n { vec![2 * v + 1, 2 * v + 2] } else { Vec::new() }).collect(),
        }
    }

    /// Spine of `spine` vertices, each with `legs` leaf children.
    pub fn caterpillar(spine: usize, legs: usize) -> Self {
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); spine];
        for s in 0..spine {
            if s + 1 < spine {
                children[s].push(s + 1);
            }
        }
        for s in 0..spine {
            for _ in 0..legs {
                children.push(Vec::new());
                let id = children.len() - 1;
                children[s].push(id);
            }
        }
        RootedTree { children }
    }
}

/// Preorder flattening of a factorization tree; also returns each vertex's
/// value and leaf span.
pub fn flatten(t: &FactorizationTree) -> (RootedTree, Vec<usize>, Vec<(usize, usize)>) {
    fn go(t: &FactorizationTree, at: &mut usize, ch: &mut Vec<Vec<usize>>, val: &mut Vec<usize>, span: &mut Vec<(usize, usize)>) -> usize {
        let id = ch.len();
        ch.push(Vec::new());
        val.push(t.value());
        span.push((*at, *at));
        if let FactorizationTree::Node { children, .. } = t {
            for c in children {
                let cid = go(c, at, ch, val, span);
                ch[id].push(cid);
            }
        } else {
            *at += 1;
        }
        span[id].1 = *at;
        id
    }
    let (mut ch, mut val, mut span) = (Vec::new(), Vec::new(), Vec::new());
    go(t, &mut 0, &mut ch, &mut val, &mut span);
    (RootedTree { children: ch }, val, span)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyVertex {
    pub vertex: usize,
    /// Largest leaf count among the child subtrees.
    pub k: usize,
    pub children: usize,
    /// No vertex has `f(k)` children; `vertex` is the best found.
    pub below_threshold: bool,
}

/// A vertex with at least `f(k)` children whose subtrees have at most `k`
/// leaves each. Among qualifying vertices the one with most children wins
/// (ties to the smaller id).
pub fn find_heavy_vertex(t: &RootedTree, f: &dyn Fn(usize) -> usize) -> Result<HeavyVertex> {
    heavy_among(t, f, &|_| true)
}

fn heavy_among(t: &RootedTree, f: &dyn Fn(usize) -> usize, allowed: &dyn Fn(usize) -> bool) -> Result<HeavyVertex> {
    if t.children.is_empty() {
        return arg("empty tree");
    }
    let leaves = t.leaf_counts();
    let mut best: Option<HeavyVertex> = None;
    let mut fallback: Option<HeavyVertex> = None;
    for v in 0..t.children.len() {
        let ch = &t.children[v];
        if ch.is_empty() || !allowed(v) {
            continue;
        }
        let k = ch.iter().map(|&c| leaves[c]).max().unwrap();
        let cand = HeavyVertex { vertex: v, k, children: ch.len(), below_threshold: false };
        if ch.len() >= f(k) {
            if best.as_ref().is_none_or(|b| cand.children > b.children) {
                best = Some(cand);
            }
        } else if fallback.as_ref().is_none_or(|b| cand.children > b.children) {
            fallback = Some(HeavyVertex { below_threshold: true, ..cand });
        }
    }
    best.or(fallback).ok_or_else(|| Error::Argument("no internal vertex qualifies".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentRuns {
    pub prefix: Vec<usize>,
    pub runs: Vec<Vec<usize>>,
    pub suffix: Vec<usize>,
    pub k: usize,
    pub e: Option<usize>,
    pub below_threshold: bool,
}

/// Splits `s = s0 s1 ... sm s(m+1)` where every run `si` has product `e`,
/// `e` idempotent, read off the children of a heavy vertex of a
/// factorization tree.
pub fn split_idempotent_runs(a: &FiniteSemigroup, s: &[usize], f: &dyn Fn(usize) -> usize) -> Result<IdempotentRuns> {
    let tree = build_factorization_tree(a, s)?;
    let (rt, val, span) = flatten(&tree);
    let uniform = |v: usize| {
        let ch = &rt.children[v];
        !ch.is_empty() && a.is_idempotent(val[ch[0]]) && ch.iter().all(|&c| val[c] == val[ch[0]])
    };
    let Ok(h) = heavy_among(&rt, f, &uniform) else {
        return Ok(IdempotentRuns { prefix: s.to_vec(), runs: Vec::new(), suffix: Vec::new(), k: 0, e: None, below_threshold: true });
    };
    let ch = &rt.children[h.vertex];
    let (lo, hi) = span[h.vertex];
    let runs: Vec<Vec<usize>> = ch.iter().map(|&c| s[span[c].0..span[c].1].to_vec()).collect();
    Ok(IdempotentRuns {
        prefix: s[..lo].to_vec(),
        k: runs.iter().map(Vec::len).max().unwrap_or(0),
        runs,
        suffix: s[hi..].to_vec(),
        e: Some(val[ch[0]]),
        below_threshold: h.below_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_counts() {
        assert_eq!(FiniteSemigroup::boolean().idempotents().len(), 2);
        assert_eq!(FiniteSemigroup::cyclic_group(3).idempotents(), BTreeSet::from([0]));
        let t2 = FiniteSemigroup::full_transformations_2();
        assert_eq!(t2.size(), 4);
        assert_eq!(t2.idempotents().len(), 3);
    }

    #[test]
    fn rejects_non_associative() {
        let err = FiniteSemigroup::new(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }));
    }

    #[test]
    fn single_letter_and_constant_word() {
        let b = FiniteSemigroup::boolean();
        let t = build_factorization_tree(&b, &[1]).unwrap();
        assert_eq!(t.depth(), 0);
        let t = build_factorization_tree(&b, &[1; 9]).unwrap();
        assert_eq!(t.depth(), 1);
        let FactorizationTree::Node { children, .. } = &t else { panic!() };
        assert_eq!(children.len(), 9);
    }

    #[test]
    fn tree_invariants_on_group() {
        let z5 = FiniteSemigroup::cyclic_group(5);
        let w: Vec<usize> = (0..150).map(|i| (i * 7 + i / 3) % 5).collect();
        let t = build_factorization_tree(&z5, &w).unwrap();
        t.check(&z5).unwrap();
        assert_eq!(t.leaves(), w);
        assert!(t.depth() <= 15);
    }

    #[test]
    fn heavy_vertices() {
        let h = find_heavy_vertex(&RootedTree::star(20), &|k| k).unwrap();
        assert_eq!((h.vertex, h.k, h.below_threshold), (0, 1, false));
        let h = find_heavy_vertex(&RootedTree::perfect_binary(4), &|_| 2).unwrap();
        assert!(h.k <= 8 && !h.below_threshold);
        let cat = RootedTree::caterpillar(4, 6);
        let h = find_heavy_vertex(&cat, &|k| k).unwrap();
        assert_eq!((h.vertex, h.k, h.children), (2, 6, 7));
        assert!(find_heavy_vertex(&RootedTree { children: vec![] }, &|k| k).is_err());
    }

    #[test]
    fn runs_of_constant_and_group_words() {
        let b = FiniteSemigroup::boolean();
        let r = split_idempotent_runs(&b, &[1; 20], &|k| k).unwrap();
        assert_eq!((r.runs.len(), r.e, r.k), (20, Some(1), 1));
        let z2 = FiniteSemigroup::cyclic_group(2);
        let w = vec![1; 16];
        let r = split_idempotent_runs(&z2, &w, &|k| k).unwrap();
        assert_eq!(r.e, Some(0));
        assert!(r.runs.iter().all(|run| run.len() == 2 && z2.product(run) == Some(0)));
        let mut joined = r.prefix.clone();
        r.runs.iter().for_each(|x| joined.extend(x));
        joined.extend(&r.suffix);
        assert_eq!(joined, w);
    }
}
