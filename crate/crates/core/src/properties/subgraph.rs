//! Non-induced subgraph containment and counting by backtracking.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::motif::Motif;

/// Largest pattern accepted by default.
pub const DEFAULT_SUBGRAPH_CAP: usize = 8;

/// Does `g` contain a (not necessarily induced) copy of `s`?
pub fn contains_subgraph(g: &SimpleGraph, s: &Motif) -> Result<bool> {
    check_cap(s, DEFAULT_SUBGRAPH_CAP)?;
    Ok(Matcher::new(g, s).run(true) > 0)
}

/// Number of distinct copies of `s` in `g`, i.e. labeled embeddings divided
/// by `aut(s)`.
pub fn count_subgraphs(g: &SimpleGraph, s: &Motif) -> Result<u128> {
    count_subgraphs_with_cap(g, s, DEFAULT_SUBGRAPH_CAP)
}

pub fn count_subgraphs_with_cap(g: &SimpleGraph, s: &Motif, cap: usize) -> Result<u128> {
    check_cap(s, cap)?;
    Ok(Matcher::new(g, s).run(false) / s.aut() as u128)
}

fn check_cap(s: &Motif, cap: usize) -> Result<()> {
    if s.k() > cap {
        return Err(Error::SubgraphTooLarge { k: s.k(), cap });
    }
    Ok(())
}

struct Matcher<'a> {
    g: &'a SimpleGraph,
    order: Vec<usize>,
    s_deg: Vec<usize>,
    // For each position, the earlier positions adjacent to it in the pattern.
    back: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a SimpleGraph, s: &Motif) -> Self {
        let k = s.k();
        let mut adj = vec![Vec::new(); k];
        for &(u, v) in s.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        // Order pattern vertices so each one after the first in its
        // component has an earlier neighbour; start from high degree.
        let mut order = Vec::with_capacity(k);
        let mut placed = vec![false; k];
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = adj[v].iter().filter(|&&w| placed[w]).count();
                    (links, adj[v].len(), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let pos_of = |v: usize| order.iter().position(|&x| x == v).unwrap();
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| adj[v].iter().map(|&w| pos_of(w)).filter(|&j| j < i).collect())
            .collect();
        let s_deg = order.iter().map(|&v| adj[v].len()).collect();
        Matcher {
            g,
            order,
            s_deg,
            back,
            map: Vec::with_capacity(k),
            used: vec![false; g.n()],
        }
    }

    /// Labeled embedding count; with `first` set, stops at the first one.
    fn run(&mut self, first: bool) -> u128 {
        if self.order.len() > self.g.n() {
            return 0;
        }
        self.step(first)
    }

    fn step(&mut self, first: bool) -> u128 {
        let i = self.map.len();
        if i == self.order.len() {
            return 1;
        }
        let g = self.g;
        let cands: Vec<usize> = match self.back[i].first() {
            Some(&j) => g.neighbors(self.map[j]).to_vec(),
            None => (0..g.n()).collect(),
        };
        let mut total = 0;
        for c in cands {
            if self.used[c] || g.degree(c) < self.s_deg[i] {
                continue;
            }
            if !self.back[i].iter().all(|&j| g.has_edge(self.map[j], c)) {
                continue;
            }
            self.used[c] = true;
            self.map.push(c);
            total += self.step(first);
            self.map.pop();
            self.used[c] = false;
            if first && total > 0 {
                break;
            }
        }
        total
    }
}
