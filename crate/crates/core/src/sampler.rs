//! Seeded generation of the binomial model, the uniform model and the
//! sequential motif process.
//!
//! Every random draw comes from a ChaCha8 stream selected by
//! `(master_seed, stream_id)`, so independent trials can run on any thread
//! and still reproduce bit-for-bit.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::{CopyIndex, CopySpace, Motif};
use crate::multigraph::{MotifMultiGraph, Placement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeededRng {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl SeededRng {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        SeededRng {
            master_seed,
            stream_id,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Exact `Binomial(total, p)` draw. Totals beyond 64 bits are split into
/// chunks; a sum of independent binomials with the same `p` is binomial.
pub fn binomial_count<R: Rng + ?Sized>(total: u128, p: f64, rng: &mut R) -> Result<u128> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    if p == 0.0 || total == 0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(total);
    }
    let mut left = total;
    let mut acc: u128 = 0;
    while left > 0 {
        let chunk = left.min(u64::MAX as u128) as u64;
        let dist = Binomial::new(chunk, p).map_err(|e| Error::Domain(e.to_string()))?;
        acc += dist.sample(rng) as u128;
        left -= chunk as u128;
    }
    Ok(acc)
}

/// `m` distinct indices from `[0, total)`, uniform over all m-subsets
/// (Floyd's algorithm, exactly `m` draws). Order is deterministic given the rng.
pub fn distinct_indices<R: Rng + ?Sized>(total: u128, m: u128, rng: &mut R) -> Result<Vec<CopyIndex>> {
    if m > total {
        return Err(Error::TooManyCopies { m, total });
    }
    let mut chosen = HashSet::with_capacity(m as usize);
    let mut out = Vec::with_capacity(m as usize);
    for j in (total - m)..total {
        let t = rng.random_range(0..=j);
        let pick = if chosen.insert(t) {
            t
        } else {
            chosen.insert(j);
            j
        };
        out.push(CopyIndex(pick));
    }
    Ok(out)
}

fn build(space: &CopySpace<'_>, indices: &[CopyIndex]) -> Result<MotifMultiGraph> {
    let mut g = MotifMultiGraph::new(space.n());
    for &i in indices {
        g.add_placement(space.unrank(i)?)?;
    }
    Ok(g)
}

/// `G(H, n, p)`: every copy present independently with probability `p`.
pub fn sample_binomial<R: Rng + ?Sized>(
    n: usize,
    motif: &Motif,
    p: f64,
    rng: &mut R,
) -> Result<MotifMultiGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    let space = CopySpace::new(n, motif)?;
    let m = binomial_count(space.total(), p, rng)?;
    let picks = distinct_indices(space.total(), m, rng)?;
    build(&space, &picks)
}

/// `G(H, n, m)`: union of `m` distinct copies, uniform over all m-sets.
pub fn sample_uniform<R: Rng + ?Sized>(
    n: usize,
    motif: &Motif,
    m: u128,
    rng: &mut R,
) -> Result<MotifMultiGraph> {
    let space = CopySpace::new(n, motif)?;
    let picks = distinct_indices(space.total(), m, rng)?;
    build(&space, &picks)
}

/// Copies of the motif in uniformly random order without replacement,
/// generated lazily. The first `m` items have the law of `G(H, n, m)`.
pub struct ProcessStream<'a, R> {
    space: CopySpace<'a>,
    used: HashSet<u128>,
    rng: R,
}

impl<'a, R: Rng> ProcessStream<'a, R> {
    pub fn new(n: usize, motif: &'a Motif, rng: R) -> Result<Self> {
        Ok(ProcessStream {
            space: CopySpace::new(n, motif)?,
            used: HashSet::new(),
            rng,
        })
    }

    pub fn total(&self) -> u128 {
        self.space.total()
    }

    pub fn emitted(&self) -> u128 {
        self.used.len() as u128
    }

    pub fn next_index(&mut self) -> Result<CopyIndex> {
        let total = self.space.total();
        if self.emitted() == total {
            return Err(Error::Exhausted(total));
        }
        loop {
            let i = self.rng.random_range(0..total);
            if self.used.insert(i) {
                return Ok(CopyIndex(i));
            }
        }
    }

    pub fn try_next(&mut self) -> Result<Placement> {
        let i = self.next_index()?;
        self.space.unrank(i)
    }
}

impl<R: Rng> Iterator for ProcessStream<'_, R> {
    type Item = Placement;

    fn next(&mut self) -> Option<Placement> {
        self.try_next().ok()
    }
}

/// Convenience: the process stream for `(n, motif)` on the given seeded stream.
pub fn process_stream(n: usize, motif: &Motif, seed: SeededRng) -> Result<ProcessStream<'_, ChaCha8Rng>> {
    ProcessStream::new(n, motif, seed.rng())
}
