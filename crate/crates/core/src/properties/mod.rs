//! Graph properties evaluated on the simple view of a motif graph.

mod hamilton;
mod matching;
mod subgraph;

pub use hamilton::{hamiltonian, is_hamiltonian_cycle, HamResult, HamStatus, DEFAULT_BUDGET};
pub use matching::{max_matching, Matcher, MatchingResult};
pub use subgraph::{
    contains_subgraph, count_subgraphs, count_subgraphs_with_cap, DEFAULT_SUBGRAPH_CAP,
};

use crate::graph::SimpleGraph;

/// Connected, with the convention that graphs on 0 or 1 vertices are.
pub fn is_connected(g: &SimpleGraph) -> bool {
    g.components().0 <= 1
}

pub fn min_degree(g: &SimpleGraph) -> usize {
    g.min_degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity() {
        assert!(is_connected(&SimpleGraph::new(1)));
        assert!(!is_connected(&SimpleGraph::new(2)));
        assert!(is_connected(&SimpleGraph::cycle(6)));
        assert!(!is_connected(&SimpleGraph::from_edges(4, &[(0, 1), (2, 3)])));
    }
}
