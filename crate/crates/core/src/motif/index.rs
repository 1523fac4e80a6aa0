//! Bijection between `[0, N)` and the copies of a motif in `K_n`.
//!
//! Index layout: `subset_rank * E + embedding`, where `subset_rank` is the
//! colexicographic rank of the copy's vertex set and `E` is the number of
//! labeled embeddings of the motif on `[k]`.

use serde::{Deserialize, Serialize};

use super::{edge, Motif};
use crate::combin::{binomial_u128, colex_rank, colex_unrank};
use crate::error::{Error, Result};
use crate::multigraph::Placement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CopyIndex(pub u128);

/// All copies of one motif in `K_n`, indexable in 128 bits.
#[derive(Debug, Clone)]
pub struct CopySpace<'a> {
    motif: &'a Motif,
    n: usize,
    per_subset: u128,
    total: u128,
}

impl<'a> CopySpace<'a> {
    pub fn new(n: usize, motif: &'a Motif) -> Result<Self> {
        let per_subset = motif.embeddings().len() as u128;
        let total = binomial_u128(n as u128, motif.k() as u128)
            .and_then(|c| c.checked_mul(per_subset))
            .ok_or(Error::ModelTooLarge)?;
        Ok(CopySpace {
            motif,
            n,
            per_subset,
            total,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn motif(&self) -> &'a Motif {
        self.motif
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn unrank(&self, index: CopyIndex) -> Result<Placement> {
        if index.0 >= self.total {
            return Err(Error::IndexOutOfRange {
                index: index.0,
                total: self.total,
            });
        }
        let subset_rank = index.0 / self.per_subset;
        let emb = (index.0 % self.per_subset) as usize;
        let subset = colex_unrank(self.n, self.motif.k(), subset_rank);
        let realizer = self.motif.realizer(emb);
        let vertices: Vec<usize> = realizer.iter().map(|&pos| subset[pos]).collect();
        Ok(Placement::from_tuple(self.motif, vertices))
    }

    pub fn rank(&self, placement: &Placement) -> Result<CopyIndex> {
        let k = self.motif.k();
        if placement.vertices.len() != k {
            return Err(Error::Domain(format!(
                "placement has {} vertices, motif has {k}",
                placement.vertices.len()
            )));
        }
        if let Some(&v) = placement.vertices.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut subset = placement.vertices.clone();
        subset.sort_unstable();
        if subset.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("placement repeats a vertex".into()));
        }
        let pos = |v: usize| subset.binary_search(&v).unwrap();
        let mut img: Vec<_> = placement
            .edges
            .iter()
            .map(|&(u, v)| edge(pos(u), pos(v)))
            .collect();
        img.sort_unstable();
        let emb = self
            .motif
            .embeddings()
            .binary_search(&img)
            .map_err(|_| Error::Domain("placement edges are not a copy of the motif".into()))?;
        let subset_rank = colex_rank(&subset).ok_or(Error::ModelTooLarge)?;
        Ok(CopyIndex(subset_rank * self.per_subset + emb as u128))
    }
}
