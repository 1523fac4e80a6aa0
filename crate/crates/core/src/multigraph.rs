//! Union of motif copies, kept both as the list of placements and as the
//! underlying simple graph.
//!
//! Degrees count distinct neighbours. Parallel edges only show up in
//! [`MotifMultiGraph::multiplicity`]; every property check runs on the simple
//! view.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::motif::{edge, Edge, Motif};

/// One concrete copy of the motif: motif vertex `i` sits on `vertices[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub vertices: Vec<usize>,
    /// Image of the motif's edges, normalized and sorted.
    pub edges: Vec<Edge>,
}

impl Placement {
    pub fn from_tuple(motif: &Motif, vertices: Vec<usize>) -> Self {
        let mut edges: Vec<Edge> = motif
            .edges()
            .iter()
            .map(|&(u, v)| edge(vertices[u], vertices[v]))
            .collect();
        edges.sort_unstable();
        Placement { vertices, edges }
    }
}

#[derive(Debug, Clone)]
pub struct MotifMultiGraph {
    placements: Vec<Placement>,
    simple: SimpleGraph,
    multiplicity: HashMap<Edge, u32>,
    // Vertices with fewer than 1 and fewer than 2 distinct neighbours.
    below: [usize; 2],
}

impl MotifMultiGraph {
    pub fn new(n: usize) -> Self {
        MotifMultiGraph {
            placements: Vec::new(),
            simple: SimpleGraph::new(n),
            multiplicity: HashMap::new(),
            below: [n, n],
        }
    }

    pub fn n(&self) -> usize {
        self.simple.n()
    }

    /// Adds one copy. Returns the simple edges that were new.
    pub fn add_placement(&mut self, p: Placement) -> Result<Vec<Edge>> {
        let n = self.n();
        if let Some(&v) = p.vertices.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if let Some(&(u, v)) = p.edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        let mut fresh = Vec::new();
        for &(u, v) in &p.edges {
            let m = self.multiplicity.entry((u, v)).or_insert(0);
            *m += 1;
            if *m == 1 {
                for w in [u, v] {
                    match self.simple.degree(w) {
                        0 => self.below[0] -= 1,
                        1 => self.below[1] -= 1,
                        _ => {}
                    }
                }
                self.simple.add_edge(u, v);
                fresh.push((u, v));
            }
        }
        self.placements.push(p);
        Ok(fresh)
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn simple(&self) -> &SimpleGraph {
        &self.simple
    }

    pub fn degree(&self, v: usize) -> usize {
        self.simple.degree(v)
    }

    pub fn min_degree(&self) -> usize {
        self.simple.min_degree()
    }

    pub fn simple_edge_count(&self) -> usize {
        self.simple.edge_count()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.multiplicity.get(&edge(u, v)).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.multiplicity.values().map(|&m| m as u64).sum()
    }

    /// Number of vertices with degree below `d`, for `d` in {1, 2}.
    pub fn vertices_below(&self, d: usize) -> usize {
        match d {
            0 => 0,
            1 => self.below[0],
            2 => self.below[1],
            _ => (0..self.n()).filter(|&v| self.degree(v) < d).count(),
        }
    }

    pub fn isolated_count(&self) -> usize {
        self.below[0]
    }

    pub fn to_record(&self, motif: Option<&Motif>) -> GraphRecord {
        GraphRecord {
            n: self.n(),
            placements: self.placements.iter().map(|p| p.vertices.clone()).collect(),
            motif: motif.map(|m| m.edges().to_vec()),
        }
    }

    pub fn from_record(record: &GraphRecord, motif: &Motif) -> Result<Self> {
        let mut g = Self::new(record.n);
        for tuple in &record.placements {
            if tuple.len() != motif.k() {
                return Err(Error::Parse(format!(
                    "placement {tuple:?} does not have {} vertices",
                    motif.k()
                )));
            }
            g.add_placement(Placement::from_tuple(motif, tuple.clone()))?;
        }
        Ok(g)
    }

    /// `u v` per line for every simple edge, sorted.
    pub fn edge_list_text(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.simple.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Serialized multigraph: vertex tuples only, edges follow from the motif.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub placements: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motif: Option<Vec<Edge>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri(v: [usize; 3]) -> Placement {
        Placement::from_tuple(&Motif::preset("triangle").unwrap(), v.to_vec())
    }

    #[test]
    fn empty_graph() {
        let g = MotifMultiGraph::new(5);
        assert_eq!((g.n(), g.simple_edge_count(), g.min_degree()), (5, 0, 0));
        assert!((0..5).all(|v| g.degree(v) == 0));
        assert_eq!(g.vertices_below(1), 5);
        let g0 = MotifMultiGraph::new(0);
        assert_eq!(g0.min_degree(), 0);
    }

    #[test]
    fn triangle_degrees() {
        let mut g = MotifMultiGraph::new(4);
        g.add_placement(tri([0, 1, 2])).unwrap();
        let d: Vec<_> = (0..4).map(|v| g.degree(v)).collect();
        assert_eq!(d, vec![2, 2, 2, 0]);
    }

    #[test]
    fn repeated_path_keeps_distinct_degree() {
        let p3 = Motif::preset("path:3").unwrap();
        let mut g = MotifMultiGraph::new(3);
        // canonical path:3 has centre 0, so tuple (1, 0, 2) is the path 0-1-2
        let p = Placement::from_tuple(&p3, vec![1, 0, 2]);
        assert_eq!(p.edges, vec![(0, 1), (1, 2)]);
        g.add_placement(p.clone()).unwrap();
        let fresh = g.add_placement(p).unwrap();
        assert!(fresh.is_empty());
        assert_eq!(g.multiplicity(0, 1), 2);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.total_multiplicity(), 4);
    }

    #[test]
    fn untouched_vertices_keep_min_degree_zero() {
        let e = Motif::preset("edge").unwrap();
        let mut g = MotifMultiGraph::new(5);
        g.add_placement(Placement::from_tuple(&e, vec![3, 4])).unwrap();
        assert_eq!(g.min_degree(), 0);
    }

    #[test]
    fn k4_from_edges() {
        let e = Motif::preset("edge").unwrap();
        let mut g = MotifMultiGraph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_placement(Placement::from_tuple(&e, vec![u, v])).unwrap();
            }
        }
        assert_eq!(g.min_degree(), 3);
        assert_eq!(g.vertices_below(2), 0);
    }

    #[test]
    fn overlapping_triangles() {
        let mut g = MotifMultiGraph::new(4);
        g.add_placement(tri([0, 1, 2])).unwrap();
        g.add_placement(tri([1, 2, 3])).unwrap();
        let d: Vec<_> = (0..4).map(|v| g.degree(v)).collect();
        assert_eq!(d, vec![2, 3, 3, 2]);
        assert_eq!(g.simple_edge_count(), 5);
        assert_eq!(g.multiplicity(1, 2), 2);
    }

    #[test]
    fn out_of_range_rejected() {
        let mut g = MotifMultiGraph::new(3);
        assert_eq!(
            g.add_placement(tri([0, 1, 3])),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn record_roundtrip() {
        let t = Motif::preset("triangle").unwrap();
        let mut g = MotifMultiGraph::new(5);
        g.add_placement(tri([0, 1, 2])).unwrap();
        g.add_placement(tri([2, 3, 4])).unwrap();
        let rec = g.to_record(Some(&t));
        let json = serde_json::to_string(&rec).unwrap();
        let back: GraphRecord = serde_json::from_str(&json).unwrap();
        let h = MotifMultiGraph::from_record(&back, &t).unwrap();
        assert_eq!(h.simple().edges(), g.simple().edges());
        assert_eq!(g.edge_list_text().lines().count(), 6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn incremental_state_matches_recomputation(
            n in 3usize..30,
            spec in prop::sample::select(vec!["edge", "path:3", "triangle", "star:4", "path:4"]),
            raw in prop::collection::vec(prop::collection::vec(any::<prop::sample::Index>(), 4), 0..40),
        ) {
            let motif = Motif::preset(spec).unwrap();
            prop_assume!(n >= motif.k());
            let mut g = MotifMultiGraph::new(n);
            let mut mult: HashMap<Edge, u32> = HashMap::new();
            for picks in raw {
                // distinct vertices drawn from the index picks
                let mut pool: Vec<usize> = (0..n).collect();
                let mut tuple = Vec::new();
                for pick in picks.iter().take(motif.k()) {
                    tuple.push(pool.remove(pick.index(pool.len())));
                }
                let p = Placement::from_tuple(&motif, tuple);
                for &e in &p.edges {
                    *mult.entry(e).or_default() += 1;
                }
                g.add_placement(p).unwrap();

                let mut adj = vec![std::collections::BTreeSet::new(); n];
                for &(u, v) in mult.keys() {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
                for (v, nb) in adj.iter().enumerate() {
                    prop_assert_eq!(g.degree(v), nb.len());
                    for &w in g.simple().neighbors(v) {
                        prop_assert!(g.simple().neighbors(w).contains(&v));
                    }
                }
                prop_assert_eq!(g.vertices_below(1), adj.iter().filter(|s| s.is_empty()).count());
                prop_assert_eq!(g.vertices_below(2), adj.iter().filter(|s| s.len() < 2).count());
                prop_assert_eq!(g.simple_edge_count(), mult.len());
                prop_assert_eq!(
                    g.total_multiplicity(),
                    (g.placements().len() * motif.edge_count()) as u64
                );
                for (&(u, v), &m) in &mult {
                    prop_assert_eq!(g.multiplicity(u, v), m);
                }
            }
        }
    }
}
