//! Hamiltonicity: cheap necessary-condition rejections, a deterministic
//! rotation-extension heuristic, then exact backtracking under a node budget.

use serde::{Deserialize, Serialize};

use crate::graph::SimpleGraph;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
const RESTARTS: usize = 10;
const SECOND_LEVEL: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HamStatus {
    Found,
    NotFound,
    /// The exact search ran out of budget before deciding.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamResult {
    pub status: HamStatus,
    /// Vertex order of the cycle when one was found.
    pub cycle: Option<Vec<usize>>,
}

impl HamResult {
    fn found(cycle: Vec<usize>) -> Self {
        HamResult {
            status: HamStatus::Found,
            cycle: Some(cycle),
        }
    }

    fn status(status: HamStatus) -> Self {
        HamResult { status, cycle: None }
    }
}

/// Decides Hamiltonicity of `g`. Graphs on fewer than 3 vertices are
/// reported as `NotFound`.
pub fn hamiltonian(g: &SimpleGraph, budget: u64) -> HamResult {
    let n = g.n();
    if n < 3 || g.min_degree() < 2 || g.components().0 != 1 || forced_obstruction(g) {
        return HamResult::status(HamStatus::NotFound);
    }
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (g.degree(v), v));
    for &s in starts.iter().take(RESTARTS + 1) {
        if let Some(c) = Posa::new(g).search(s) {
            debug_assert!(is_hamiltonian_cycle(g, &c));
            return HamResult::found(c);
        }
    }
    exact(g, budget)
}

/// Checks that `cycle` visits every vertex once and closes along edges of `g`.
pub fn is_hamiltonian_cycle(g: &SimpleGraph, cycle: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Degree-2 vertices force both their edges. A vertex with three forced
/// edges, or a forced cycle shorter than `n`, rules out a Hamilton cycle.
fn forced_obstruction(g: &SimpleGraph) -> bool {
    let n = g.n();
    let mut forced: Vec<(usize, usize)> = Vec::new();
    for v in (0..n).filter(|&v| g.degree(v) == 2) {
        for &w in g.neighbors(v) {
            let e = if v < w { (v, w) } else { (w, v) };
            forced.push(e);
        }
    }
    forced.sort_unstable();
    forced.dedup();
    let mut fdeg = vec![0usize; n];
    let mut uf = Dsu::new(n);
    for &(u, v) in &forced {
        fdeg[u] += 1;
        fdeg[v] += 1;
        if fdeg[u] > 2 || fdeg[v] > 2 {
            return true;
        }
        if !uf.union(u, v) && uf.size(u) < n {
            return true;
        }
    }
    false
}

struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

enum Step {
    /// A rotated path whose free end has a neighbour `u` off the path.
    Extend(Vec<usize>, usize),
    /// A path whose two ends are adjacent.
    Cycle(Vec<usize>),
    /// Every path reachable by rotations with the first vertex fixed.
    Stall(Vec<Vec<usize>>),
}

struct Posa<'a> {
    g: &'a SimpleGraph,
    on: Vec<bool>,
}

impl<'a> Posa<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        Posa {
            g,
            on: vec![false; g.n()],
        }
    }

    fn off_path_degree(&self, v: usize) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| !self.on[w]).count()
    }

    /// Walks off the last vertex while it has neighbours off the path,
    /// preferring the neighbour with the fewest remaining options.
    fn extend(&mut self, path: &mut Vec<usize>) {
        loop {
            let end = *path.last().unwrap();
            let next = self
                .g
                .neighbors(end)
                .iter()
                .copied()
                .filter(|&w| !self.on[w])
                .min_by_key(|&w| (self.off_path_degree(w), w));
            match next {
                Some(u) => {
                    self.on[u] = true;
                    path.push(u);
                }
                None => return,
            }
        }
    }

    fn search(mut self, start: usize) -> Option<Vec<usize>> {
        let n = self.g.n();
        let mut path = vec![start];
        self.on[start] = true;
        loop {
            self.extend(&mut path);
            path.reverse();
            self.extend(&mut path);
            match self.rotate(&path) {
                Step::Extend(p, u) => self.apply_extend(&mut path, p, u),
                Step::Cycle(c) => {
                    if c.len() == n {
                        return Some(c);
                    }
                    path = self.open_cycle(c);
                }
                Step::Stall(ends) => {
                    let mut advanced = false;
                    for q in ends.iter().take(SECOND_LEVEL) {
                        let mut r = q.clone();
                        r.reverse();
                        match self.rotate(&r) {
                            Step::Extend(p, u) => {
                                self.apply_extend(&mut path, p, u);
                                advanced = true;
                            }
                            Step::Cycle(c) => {
                                if c.len() == n {
                                    return Some(c);
                                }
                                path = self.open_cycle(c);
                                advanced = true;
                            }
                            Step::Stall(_) => continue,
                        }
                        break;
                    }
                    if !advanced {
                        return None;
                    }
                }
            }
        }
    }

    fn apply_extend(&mut self, path: &mut Vec<usize>, p: Vec<usize>, u: usize) {
        *path = p;
        self.on[u] = true;
        path.push(u);
    }

    /// Breaks a non-spanning cycle at a vertex with an outside neighbour and
    /// returns the resulting longer path.
    fn open_cycle(&mut self, c: Vec<usize>) -> Vec<usize> {
        let len = c.len();
        for i in 0..len {
            if let Some(&u) = self.g.neighbors(c[i]).iter().find(|&&w| !self.on[w]) {
                let mut p = Vec::with_capacity(len + 1);
                p.push(u);
                for j in 0..len {
                    p.push(c[(i + len - j) % len]);
                }
                self.on[u] = true;
                return p;
            }
        }
        unreachable!("connected graph has an edge leaving every proper cycle")
    }

    /// Breadth-first search over rotations keeping `path[0]` fixed.
    fn rotate(&self, path: &[usize]) -> Step {
        let n = self.g.n();
        let x = path[0];
        let mut seen_end = vec![false; n];
        seen_end[*path.last().unwrap()] = true;
        let mut queue = vec![path.to_vec()];
        let mut pos = vec![usize::MAX; n];
        let mut head = 0;
        while head < queue.len() {
            let q = queue[head].clone();
            head += 1;
            let len = q.len();
            let y = q[len - 1];
            if let Some(&u) = self.g.neighbors(y).iter().find(|&&w| !self.on[w]) {
                return Step::Extend(q, u);
            }
            if len >= 3 && self.g.has_edge(x, y) {
                return Step::Cycle(q);
            }
            for (i, &v) in q.iter().enumerate() {
                pos[v] = i;
            }
            for &v in self.g.neighbors(y) {
                let j = pos[v];
                if j == usize::MAX || j + 2 >= len {
                    continue;
                }
                let new_end = q[j + 1];
                if seen_end[new_end] {
                    continue;
                }
                seen_end[new_end] = true;
                let mut r = q[..=j].to_vec();
                r.extend(q[j + 1..].iter().rev());
                queue.push(r);
            }
            for &v in &q {
                pos[v] = usize::MAX;
            }
        }
        Step::Stall(queue)
    }
}

/// Exhaustive search with pruning; exceeding `budget` expansions gives `Budget`.
fn exact(g: &SimpleGraph, budget: u64) -> HamResult {
    let n = g.n();
    let start = (0..n).min_by_key(|&v| (g.degree(v), v)).unwrap();
    let mut s = Exact {
        g,
        n,
        start,
        budget,
        expansions: 0,
        visited: vec![false; n],
        free_nbrs: (0..n).map(|v| g.degree(v)).collect(),
        path: Vec::with_capacity(n),
        mark: vec![0; n],
        stamp: 0,
    };
    s.visit(start);
    match s.dfs() {
        HamStatus::Found => HamResult::found(s.path),
        other => HamResult::status(other),
    }
}

struct Exact<'a> {
    g: &'a SimpleGraph,
    n: usize,
    start: usize,
    budget: u64,
    expansions: u64,
    visited: Vec<bool>,
    // Unvisited neighbours per vertex.
    free_nbrs: Vec<usize>,
    path: Vec<usize>,
    mark: Vec<u32>,
    stamp: u32,
}

impl Exact<'_> {
    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        self.path.push(v);
        for &w in self.g.neighbors(v) {
            self.free_nbrs[w] -= 1;
        }
    }

    fn unvisit(&mut self, v: usize) {
        self.visited[v] = false;
        self.path.pop();
        for &w in self.g.neighbors(v) {
            self.free_nbrs[w] += 1;
        }
    }

    fn dfs(&mut self) -> HamStatus {
        let end = *self.path.last().unwrap();
        if self.path.len() == self.n {
            return if self.g.has_edge(end, self.start) {
                HamStatus::Found
            } else {
                HamStatus::NotFound
            };
        }
        self.expansions += 1;
        if self.expansions > self.budget {
            return HamStatus::Budget;
        }
        let mut cand: Vec<usize> = self
            .g
            .neighbors(end)
            .iter()
            .copied()
            .filter(|&u| !self.visited[u])
            .collect();
        cand.sort_by_key(|&u| (self.free_nbrs[u], u));
        for u in cand {
            self.visit(u);
            if self.feasible(u, end) {
                match self.dfs() {
                    HamStatus::NotFound => {}
                    other => return other,
                }
            }
            self.unvisit(u);
        }
        HamStatus::NotFound
    }

    /// Necessary conditions after moving the path end from `old` to `u`.
    fn feasible(&mut self, u: usize, old: usize) -> bool {
        let remaining = self.n - self.path.len();
        if remaining == 0 {
            return true;
        }
        if self.free_nbrs[self.start] == 0 {
            return false;
        }
        // An unvisited vertex needs two usable neighbours: unvisited ones,
        // the current end, or the start (which closes the cycle).
        for &a in [u, old].iter() {
            for &w in self.g.neighbors(a) {
                if self.visited[w] {
                    continue;
                }
                let usable = self.free_nbrs[w]
                    + self.g.has_edge(w, u) as usize
                    + self.g.has_edge(w, self.start) as usize;
                if usable < 2 {
                    return false;
                }
            }
        }
        // Unvisited vertices must be reachable from `u` through unvisited ones.
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.fill(0);
            self.stamp = 1;
        }
        let mut stack = vec![u];
        let mut reached = 0;
        while let Some(v) = stack.pop() {
            for &w in self.g.neighbors(v) {
                if !self.visited[w] && self.mark[w] != self.stamp {
                    self.mark[w] = self.stamp;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == remaining
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn status(g: &SimpleGraph) -> HamStatus {
        let r = hamiltonian(g, DEFAULT_BUDGET);
        if let Some(c) = &r.cycle {
            assert!(is_hamiltonian_cycle(g, c));
        }
        r.status
    }

    #[test]
    fn known_graphs() {
        assert_eq!(status(&SimpleGraph::complete(4)), HamStatus::Found);
        assert_eq!(status(&SimpleGraph::complete(3)), HamStatus::Found);
        assert_eq!(status(&SimpleGraph::cycle(5)), HamStatus::Found);
        assert_eq!(status(&SimpleGraph::petersen()), HamStatus::NotFound);
        assert_eq!(status(&SimpleGraph::complete(2)), HamStatus::NotFound);
        let star = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(status(&star), HamStatus::NotFound);
    }

    #[test]
    fn bowtie_is_not_hamiltonian() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(status(&g), HamStatus::NotFound);
    }

    #[test]
    fn complete_bipartite() {
        let mut g = SimpleGraph::new(7);
        for a in 0..3 {
            for b in 3..7 {
                g.add_edge(a, b);
            }
        }
        // K_{3,4} is unbalanced
        assert_eq!(status(&g), HamStatus::NotFound);
        let mut h = SimpleGraph::new(8);
        for a in 0..4 {
            for b in 4..8 {
                h.add_edge(a, b);
            }
        }
        assert_eq!(status(&h), HamStatus::Found);
    }

    #[test]
    fn exact_search_alone() {
        assert_eq!(exact(&SimpleGraph::petersen(), DEFAULT_BUDGET).status, HamStatus::NotFound);
        let r = exact(&SimpleGraph::complete(6), DEFAULT_BUDGET);
        assert!(is_hamiltonian_cycle(&SimpleGraph::complete(6), &r.cycle.unwrap()));
        assert_eq!(exact(&SimpleGraph::petersen(), 3).status, HamStatus::Budget);
    }

    #[test]
    fn large_cycle_with_chords() {
        let n = 300;
        let mut g = SimpleGraph::cycle(n);
        for i in (0..n).step_by(7) {
            g.add_edge(i, (i * 31 + 11) % n);
        }
        let mut relabel: Vec<usize> = (0..n).map(|i| (i * 97) % n).collect();
        relabel.dedup();
        let h = SimpleGraph::from_edges(
            n,
            &g.edges().iter().map(|&(u, v)| (relabel[u], relabel[v])).collect::<Vec<_>>(),
        );
        assert_eq!(status(&h), HamStatus::Found);
    }
}
