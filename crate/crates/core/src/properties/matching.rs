//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm, BFS formulation with explicit blossom bases).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::SimpleGraph;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub pairs: Vec<(usize, usize)>,
    pub is_perfect: bool,
}

/// A matching that can be grown after edges are added to the graph.
#[derive(Debug, Clone)]
pub struct Matcher {
    mate: Vec<usize>,
    size: usize,
}

impl Matcher {
    pub fn new(n: usize) -> Self {
        Matcher {
            mate: vec![NONE; n],
            size: 0,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        match self.mate[v] {
            NONE => None,
            m => Some(m),
        }
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.size == self.mate.len()
    }

    /// Greedy pass that matches free endpoints of any edge.
    pub fn greedy(&mut self, g: &SimpleGraph) {
        for u in 0..g.n() {
            if self.mate[u] != NONE {
                continue;
            }
            if let Some(&v) = g.neighbors(u).iter().find(|&&v| self.mate[v] == NONE) {
                self.mate[u] = v;
                self.mate[v] = u;
                self.size += 1;
            }
        }
    }

    /// Augments until the matching is maximum in `g`. Once a free vertex has
    /// no augmenting path it never gains one from later augmentations in the
    /// same graph, so one pass over the free vertices suffices.
    /// Returns the number of augmentations.
    pub fn augment(&mut self, g: &SimpleGraph) -> usize {
        let n = g.n();
        assert_eq!(n, self.mate.len(), "matcher built for a different vertex count");
        let mut search = Search::new(n);
        let mut gained = 0;
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(end) = search.find_path(g, &self.mate, root) {
                let mut v = end;
                while v != NONE {
                    let pv = search.parent[v];
                    let next = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = next;
                }
                gained += 1;
            }
        }
        self.size += gained;
        gained
    }

    pub fn result(&self) -> MatchingResult {
        let pairs = self
            .mate
            .iter()
            .enumerate()
            .filter(|&(u, &m)| m != NONE && u < m)
            .map(|(u, &m)| (u, m))
            .collect();
        MatchingResult {
            pairs,
            is_perfect: self.is_perfect(),
        }
    }
}

struct Search {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    on_root_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            on_root_path: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.on_root_path.fill(false);
        loop {
            a = self.base[a];
            self.on_root_path[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_root_path[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Alternating-tree search from `root`; returns the free vertex ending an
    /// augmenting path, with the path encoded in `parent`.
    fn find_path(&mut self, g: &SimpleGraph, mate: &[usize], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.fill(false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Maximum-cardinality matching of the simple graph.
pub fn max_matching(g: &SimpleGraph) -> MatchingResult {
    let mut m = Matcher::new(g.n());
    m.greedy(g);
    m.augment(g);
    m.result()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let k4 = max_matching(&SimpleGraph::complete(4));
        assert_eq!(k4.pairs.len(), 2);
        assert!(k4.is_perfect);
        let k3 = max_matching(&SimpleGraph::complete(3));
        assert_eq!(k3.pairs.len(), 1);
        assert!(!k3.is_perfect);
        let empty = max_matching(&SimpleGraph::new(0));
        assert!(empty.is_perfect && empty.pairs.is_empty());
    }

    #[test]
    fn blossom_needed() {
        // Triangle 2-3-4 hangs off the stem 0-1-2; the only augmenting path
        // from 0 to 5 runs 0-1=2-4=3-5 and needs the triangle contracted.
        let g = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (2, 4), (3, 4), (3, 5)]);
        let mut m = Matcher::new(6);
        for (u, v) in [(1, 2), (3, 4)] {
            m.mate[u] = v;
            m.mate[v] = u;
            m.size += 1;
        }
        assert_eq!(m.augment(&g), 1);
        assert!(m.is_perfect());
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let r = max_matching(&SimpleGraph::petersen());
        assert_eq!(r.pairs.len(), 5);
        assert!(r.is_perfect);
    }

    #[test]
    fn incremental_growth() {
        let mut g = SimpleGraph::new(6);
        let mut m = Matcher::new(6);
        g.add_edge(0, 1);
        m.augment(&g);
        assert_eq!(m.size(), 1);
        g.add_edge(1, 2);
        g.add_edge(0, 3);
        m.augment(&g);
        assert_eq!(m.size(), 2);
        g.add_edge(4, 5);
        m.augment(&g);
        assert_eq!(m.size(), 3);
        assert!(m.is_perfect());
    }
}
