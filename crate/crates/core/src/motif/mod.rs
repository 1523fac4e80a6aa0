//! The fixed small graph whose random copies make up a motif graph.
//!
//! A [`Motif`] is stored in canonical form: vertices are `0..k` and the edge
//! list is the lexicographically smallest image of the input under all `k!`
//! relabelings. Alongside it we keep every distinct labeled image
//! ("embedding") of the motif on `[k]`, sorted, which fixes the order used to
//! index copies in `K_n`.

mod counting;
mod index;

use std::collections::BTreeMap;
use std::fmt;

use crate::combin::{factorial, next_permutation};
use crate::error::{Error, Result};

pub use counting::{f_k, m_r, q_r, threshold_params, total_copies, ThresholdParams};
pub use index::{CopyIndex, CopySpace};

/// Largest motif the brute-force canonicalization accepts.
pub const MAX_MOTIF_VERTICES: usize = 8;

/// Unordered vertex pair, always stored with the smaller label first.
pub type Edge = (usize, usize);

#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Motif {
    k: usize,
    edges: Vec<Edge>,
    min_deg: usize,
    aut: u64,
    embeddings: Vec<Vec<Edge>>,
    // For each embedding, a map `canonical vertex -> position` realizing it.
    realizers: Vec<Vec<usize>>,
    name: Option<String>,
}

impl fmt::Debug for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Motif")
            .field("name", &self.name)
            .field("k", &self.k)
            .field("edges", &self.edges)
            .field("aut", &self.aut)
            .finish()
    }
}

impl Motif {
    /// Builds a motif on the declared vertex set `[k]`.
    pub fn new(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyMotif);
        }
        if k > MAX_MOTIF_VERTICES {
            return Err(Error::MotifTooLarge {
                k,
                max: MAX_MOTIF_VERTICES,
            });
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u >= k || v >= k {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n: k });
            }
            normalized.push(edge(u, v));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut deg = vec![0usize; k];
        for &(u, v) in &normalized {
            deg[u] += 1;
            deg[v] += 1;
        }
        if let Some(v) = deg.iter().position(|&d| d == 0) {
            return Err(Error::IsolatedVertex(v));
        }

        // Every labeling of [k]; images keyed by their sorted edge list.
        let mut images: BTreeMap<Vec<Edge>, (Vec<usize>, u64)> = BTreeMap::new();
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            let mut img: Vec<Edge> = normalized
                .iter()
                .map(|&(u, v)| edge(perm[u], perm[v]))
                .collect();
            img.sort_unstable();
            images
                .entry(img)
                .and_modify(|e| e.1 += 1)
                .or_insert_with(|| (perm.clone(), 1));
            if !next_permutation(&mut perm) {
                break;
            }
        }

        let (canonical, (to_canonical, aut)) = images
            .iter()
            .next()
            .map(|(e, (p, c))| (e.clone(), (p.clone(), *c)))
            .expect("at least one labeling");
        let mut from_canonical = vec![0usize; k];
        for (input, &canon) in to_canonical.iter().enumerate() {
            from_canonical[canon] = input;
        }
        let mut embeddings = Vec::with_capacity(images.len());
        let mut realizers = Vec::with_capacity(images.len());
        for (img, (perm, _)) in images {
            realizers.push((0..k).map(|c| perm[from_canonical[c]]).collect());
            embeddings.push(img);
        }
        debug_assert_eq!(aut * embeddings.len() as u64, factorial(k));

        let min_deg = deg.into_iter().min().unwrap_or(0);
        Ok(Motif {
            k,
            edges: canonical,
            min_deg,
            aut,
            embeddings,
            realizers,
            name: None,
        })
    }

    /// Builds a motif from pairs over an arbitrary label set; labels are
    /// compacted to `[k]` in increasing order before canonicalization.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(u, _)) = pairs.iter().find(|&&(u, v)| u == v) {
            return Err(Error::SelfLoop(u));
        }
        let mut labels: Vec<usize> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        labels.sort_unstable();
        labels.dedup();
        let relabeled: Vec<_> = pairs
            .iter()
            .map(|&(u, v)| {
                let a = labels.binary_search(&u).unwrap();
                let b = labels.binary_search(&v).unwrap();
                (a, b)
            })
            .collect();
        Self::new(labels.len(), &relabeled)
    }

    /// Parses a text edge list: one `u v` pair per line, `#` comments and
    /// blank lines ignored. A line holding a single label declares a vertex,
    /// which must then be covered by some edge.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut declared = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("line {}: bad vertex {t:?}", lineno + 1)))
                })
                .collect::<Result<_>>()?;
            match fields.as_slice() {
                [v] => declared.push(*v),
                [u, v] => pairs.push((*u, *v)),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected one or two vertices",
                        lineno + 1
                    )))
                }
            }
        }
        if let Some(&v) = declared
            .iter()
            .find(|&&v| !pairs.iter().any(|&(a, b)| a == v || b == v))
        {
            return Err(Error::IsolatedVertex(v));
        }
        Self::from_pairs(&pairs)
    }

    /// Named presets: `edge`, `triangle`, `path:k`, `cycle:k`, `clique:k`,
    /// `star:k`. The parameter is always the vertex count, so `star:4` is
    /// `K_{1,3}`.
    pub fn preset(spec: &str) -> Result<Self> {
        let (kind, arg) = match spec.split_once(':') {
            Some((a, b)) => {
                let k = b
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad preset size in {spec:?}")))?;
                (a.trim(), Some(k))
            }
            None => (spec.trim(), None),
        };
        let need = |min: usize| -> Result<usize> {
            match arg {
                Some(k) if k >= min => Ok(k),
                _ => Err(Error::Parse(format!("preset {spec:?} needs a size >= {min}"))),
            }
        };
        let edges: Vec<(usize, usize)> = match kind {
            "edge" => vec![(0, 1)],
            "triangle" => vec![(0, 1), (1, 2), (0, 2)],
            "path" => {
                let k = need(2)?;
                (1..k).map(|i| (i - 1, i)).collect()
            }
            "cycle" => {
                let k = need(3)?;
                (0..k).map(|i| (i, (i + 1) % k)).collect()
            }
            "clique" => {
                let k = need(2)?;
                (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect()
            }
            "star" => {
                let k = need(2)?;
                (1..k).map(|i| (0, i)).collect()
            }
            _ => return Err(Error::Parse(format!("unknown motif preset {spec:?}"))),
        };
        let mut m = Self::from_pairs(&edges)?;
        m.name = Some(spec.trim().to_string());
        Ok(m)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Human-readable identifier: the preset name if any, else the edge list.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => self
                .edges
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn min_deg(&self) -> usize {
        self.min_deg
    }

    pub fn aut(&self) -> u64 {
        self.aut
    }

    /// Distinct labeled copies of the motif on `[k]`, sorted lexicographically.
    pub fn embeddings(&self) -> &[Vec<Edge>] {
        &self.embeddings
    }

    /// Vertex map `canonical vertex -> position in [k]` producing embedding `i`.
    pub(crate) fn realizer(&self, i: usize) -> &[usize] {
        &self.realizers[i]
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.k];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut comps = self.k;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }

    pub fn is_path(&self) -> bool {
        self.edges.len() + 1 == self.k
            && self.degrees().iter().all(|&d| d <= 2)
            && self.is_connected()
    }
}
