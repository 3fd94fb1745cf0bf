//! Shortest words for free metabelian elements.
//!
//! A word realizes `g` iff its path ends at `g.endpoint()` and traverses every
//! edge with net count `g.flow()`. The exact solver is an iterative-deepening
//! depth-first search over reduced words; the heuristic builds an Euler path
//! through the flow multigraph after joining its components with
//! back-and-forth corridors.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Edge, LatticePoint};
use crate::metabelian::MetabelianElement;
use crate::word::{alphabet, free_reduce, letter_rank, Word};

/// Default cap on search nodes for [`min_word_exact`].
pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthBounds {
    pub lower: u64,
    pub upper: u64,
    pub witness: Word,
}

/// `max(sum |flow|, |endpoint|_1)`.
pub fn length_lower_bound(g: &MetabelianElement) -> u64 {
    g.flow().l1_norm().max(g.endpoint().l1_norm())
}

/// Lower bound plus the heuristic word as witness for the upper bound.
pub fn length_bounds(g: &MetabelianElement) -> LengthBounds {
    let witness = min_word_upper(g);
    LengthBounds { lower: length_lower_bound(g), upper: witness.len() as u64, witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Longest word length tried.
    pub max_len: usize,
    /// Total search nodes, split evenly over the root branches.
    pub node_limit: u64,
}

impl SearchLimits {
    pub fn new(max_len: usize) -> Self {
        SearchLimits { max_len, node_limit: DEFAULT_NODE_LIMIT }
    }
}

/// The lexicographically least word of minimal length evaluating to `g`,
/// searching lengths up to `max_len`.
pub fn min_word_exact(g: &MetabelianElement, max_len: usize) -> Result<Word> {
    min_word_exact_with(g, SearchLimits::new(max_len))
}

pub fn min_word_exact_with(g: &MetabelianElement, limits: SearchLimits) -> Result<Word> {
    let d = g.d();
    let lower = length_lower_bound(g) as usize;
    if g.is_identity() {
        return Ok(Word::identity(d));
    }
    let roots = alphabet(d);
    let per_branch = (limits.node_limit / roots.len() as u64).max(1);
    let mut used = vec![0u64; roots.len()];
    let mut len = lower;
    while len <= limits.max_len {
        let results: Vec<(std::result::Result<Option<Vec<i32>>, ()>, u64)> = roots
            .par_iter()
            .zip(used.par_iter())
            .map(|(&root, &spent)| {
                let mut s = Search::new(g, per_branch.saturating_sub(spent));
                let r = s.root(root, len);
                (r, s.nodes)
            })
            .collect();
        for (i, (r, nodes)) in results.into_iter().enumerate() {
            used[i] += nodes;
            match r {
                Ok(Some(letters)) => return Word::new(d, letters),
                Ok(None) => {}
                Err(()) => {
                    return Err(Error::BudgetExceeded(format!(
                        "exact search exhausted {} nodes at length {len}",
                        limits.node_limit
                    )))
                }
            }
        }
        len += 2;
    }
    Err(Error::BudgetExceeded(format!("no word of length at most {}", limits.max_len)))
}

struct Search<'a> {
    target: &'a LatticePoint,
    alphabet: Vec<i32>,
    pos: LatticePoint,
    rem: HashMap<Edge, i64>,
    rem_l1: u64,
    letters: Vec<i32>,
    nodes: u64,
    node_limit: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a MetabelianElement, node_limit: u64) -> Self {
        Search {
            target: g.endpoint(),
            alphabet: alphabet(g.d()),
            pos: LatticePoint::origin(g.d()),
            rem: g.flow().iter().map(|(e, m)| (e.clone(), m)).collect(),
            rem_l1: g.flow().l1_norm(),
            letters: Vec::new(),
            nodes: 0,
            node_limit,
        }
    }

    /// Steps still needed from the current state: every remaining unit of
    /// flow costs a step, and reaching the support from the walker (or
    /// leaving it for the target) uses edges off the support, which must be
    /// crossed an even number of times.
    fn bound(&self) -> u64 {
        if self.rem.is_empty() {
            return self.pos.l1_distance(self.target);
        }
        let mut from_pos = u64::MAX;
        let mut from_target = u64::MAX;
        for e in self.rem.keys() {
            for v in [&e.base, &e.head()] {
                from_pos = from_pos.min(v.l1_distance(&self.pos));
                from_target = from_target.min(v.l1_distance(self.target));
            }
        }
        self.rem_l1 + 2 * from_pos.max(from_target)
    }

    fn apply(&mut self, letter: i32) {
        let (edge, s) = Edge::crossed(&self.pos, letter);
        let slot = self.rem.entry(edge).or_insert(0);
        if (*slot > 0) == (s > 0) && *slot != 0 {
            self.rem_l1 -= 1;
        } else {
            self.rem_l1 += 1;
        }
        *slot -= s;
        if *slot == 0 {
            let (edge, _) = Edge::crossed(&self.pos, letter);
            self.rem.remove(&edge);
        }
        self.pos.step_mut(letter);
        self.letters.push(letter);
    }

    fn undo(&mut self) {
        let letter = self.letters.pop().expect("nonempty prefix");
        self.pos.step_mut(-letter);
        let (edge, s) = Edge::crossed(&self.pos, letter);
        let slot = self.rem.entry(edge).or_insert(0);
        *slot += s;
        if (*slot > 0) == (s > 0) && *slot != 0 {
            self.rem_l1 += 1;
        } else {
            self.rem_l1 -= 1;
        }
        if *slot == 0 {
            let (edge, _) = Edge::crossed(&self.pos, letter);
            self.rem.remove(&edge);
        }
    }

    fn root(&mut self, letter: i32, len: usize) -> std::result::Result<Option<Vec<i32>>, ()> {
        self.apply(letter);
        let found = if self.bound() < len as u64 { self.dfs(len - 1)? } else { false };
        Ok(found.then(|| self.letters.clone()))
    }

    fn dfs(&mut self, left: usize) -> std::result::Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(());
        }
        if left == 0 {
            return Ok(self.rem.is_empty() && self.pos == *self.target);
        }
        let prev = *self.letters.last().expect("search starts below a root letter");
        for i in 0..self.alphabet.len() {
            let letter = self.alphabet[i];
            if letter == -prev {
                continue;
            }
            self.apply(letter);
            if self.bound() < left as u64 && self.dfs(left - 1)? {
                return Ok(true);
            }
            self.undo();
        }
        Ok(false)
    }
}

/// A word for `g` from an Euler path through the flow multigraph, made
/// connected by greedy back-and-forth corridors. Always evaluates to `g`.
pub fn min_word_upper(g: &MetabelianElement) -> Word {
    let d = g.d();
    let origin = LatticePoint::origin(d);
    let target = g.endpoint().clone();

    // Vertex numbering over support, origin and target, in sorted order.
    let mut index: BTreeMap<LatticePoint, usize> = BTreeMap::new();
    for (e, _) in g.flow().iter() {
        index.insert(e.base.clone(), 0);
        index.insert(e.head(), 0);
    }
    index.insert(origin.clone(), 0);
    index.insert(target.clone(), 0);
    let vertices: Vec<LatticePoint> = index.keys().cloned().collect();
    for (i, v) in vertices.iter().enumerate() {
        index.insert(v.clone(), i);
    }

    let mut dsu = Dsu::new(vertices.len());
    let mut arcs: Vec<(LatticePoint, i32)> = Vec::new();
    for (e, m) in g.flow().iter() {
        dsu.union(index[&e.base], index[&e.head()]);
        let axis = e.axis as i32;
        for _ in 0..m.unsigned_abs() {
            if m > 0 {
                arcs.push((e.base.clone(), axis));
            } else {
                arcs.push((e.head(), -axis));
            }
        }
    }

    // Prim over components: grow from the origin's component, always
    // attaching the nearest outside vertex (ties to the earliest in order).
    let n = vertices.len();
    let mut in_tree = vec![false; n];
    let mut best: Vec<(u64, usize)> = vec![(u64::MAX, usize::MAX); n];
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        members.entry(dsu.find(i)).or_default().push(i);
    }
    let attach = |comp: usize, in_tree: &mut Vec<bool>, best: &mut Vec<(u64, usize)>| {
        for &u in &members[&comp] {
            in_tree[u] = true;
        }
        for &u in &members[&comp] {
            for w in 0..n {
                if !in_tree[w] {
                    let dist = vertices[u].l1_distance(&vertices[w]);
                    if dist < best[w].0 || (dist == best[w].0 && u < best[w].1) {
                        best[w] = (dist, u);
                    }
                }
            }
        }
    };
    attach(dsu.find(index[&origin]), &mut in_tree, &mut best);
    loop {
        let next = (0..n).filter(|&w| !in_tree[w]).min_by_key(|&w| (best[w].0, w));
        let Some(w) = next else { break };
        let u = best[w].1;
        let there = staircase(&vertices[u], &vertices[w]);
        let mut at = vertices[u].clone();
        for &s in &there {
            arcs.push((at.clone(), s));
            at.step_mut(s);
        }
        for &s in there.iter().rev() {
            arcs.push((at.clone(), -s));
            at.step_mut(-s);
        }
        attach(dsu.find(w), &mut in_tree, &mut best);
    }

    let letters = euler_path(&origin, arcs);
    free_reduce(&Word::new(d, letters).expect("lattice steps are valid letters"))
}

/// Unit steps from `a` to `b`, axis by axis.
fn staircase(a: &LatticePoint, b: &LatticePoint) -> Vec<i32> {
    let mut steps = Vec::new();
    for (i, (x, y)) in a.coords().iter().zip(b.coords()).enumerate() {
        let axis = (i + 1) as i32;
        let s = if y > x { axis } else { -axis };
        steps.extend(std::iter::repeat_n(s, x.abs_diff(*y) as usize));
    }
    steps
}

/// Hierholzer's algorithm; arcs out of each vertex are used in letter order.
fn euler_path(start: &LatticePoint, arcs: Vec<(LatticePoint, i32)>) -> Vec<i32> {
    let mut out: HashMap<LatticePoint, Vec<i32>> = HashMap::new();
    for (from, s) in arcs {
        out.entry(from).or_default().push(s);
    }
    for list in out.values_mut() {
        // Popped from the back, so the smallest rank goes last.
        list.sort_by_key(|&s| std::cmp::Reverse(letter_rank(s)));
    }
    let mut stack: Vec<(LatticePoint, i32)> = vec![(start.clone(), 0)];
    let mut path = Vec::new();
    while let Some((v, s)) = stack.last().cloned() {
        match out.get_mut(&v).and_then(Vec::pop) {
            Some(step) => stack.push((v.stepped(step), step)),
            None => {
                stack.pop();
                if s != 0 {
                    path.push(s);
                }
            }
        }
    }
    path.reverse();
    path
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
