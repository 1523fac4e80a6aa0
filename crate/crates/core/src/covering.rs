//! Coverings of a fixed subject graph `S` by copies of the motif, and the
//! exponent `gamma_bar` that decides when `S` appears in the uniform model.
//!
//! A covering is a set of motif copies on `V(S)` plus fresh vertices whose
//! union contains every edge of `S`, and from which no copy can be dropped.
//! Its value `gamma` is the minimum of `a'/b'` over nonempty subsets of the
//! copies (`a'` vertices spanned by `b'` copies); `gamma_bar` is the maximum
//! value over all coverings.
//!
//! Enumeration assigns each copy an anchor: the smallest edge of `S` that no
//! other copy covers. Copies are produced in increasing anchor order, so each
//! covering appears in one order only. Fresh vertices are numbered from
//! `S.n()` upwards and a covering is emitted only under its lexicographically
//! least fresh numbering, which removes duplicates that differ by renaming.

use std::collections::{BTreeMap, HashMap};


use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::motif::{edge, Edge, Motif};
use crate::multigraph::Placement;

/// Default cap on `|E(S)|` for enumeration.
pub const DEFAULT_SUBJECT_EDGE_CAP: usize = 6;
/// Cap on `|E(S)|` for the closed form (the path partition is `3^|E|`).
pub const CLOSED_FORM_EDGE_CAP: usize = 16;

pub type Rational = Ratio<i64>;

/// A subject graph on `0..n` with no isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    n: usize,
    edges: Vec<Edge>,
}

impl Subject {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyMotif);
        }
        let mut norm = Vec::with_capacity(edges.len());
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            deg[u] += 1;
            deg[v] += 1;
            norm.push(edge(u, v));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        if let Some(v) = deg.iter().position(|&d| d == 0) {
            return Err(Error::IsolatedVertex(v));
        }
        Ok(Subject { n, edges: norm })
    }

    /// Builds a subject from arbitrary labels, compacting them to `0..n`.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(u, _)) = pairs.iter().find(|&&(u, v)| u == v) {
            return Err(Error::SelfLoop(u));
        }
        let mut labels: Vec<usize> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        labels.sort_unstable();
        labels.dedup();
        let idx = |x: usize| labels.binary_search(&x).unwrap();
        let relabeled: Vec<_> = pairs.iter().map(|&(u, v)| (idx(u), idx(v))).collect();
        Self::new(labels.len(), &relabeled)
    }

    /// Same text format as [`Motif::parse_edge_list`], without the size cap.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("line {}: bad label '{t}'", lineno + 1)))
                })
                .collect::<Result<_>>()?;
            match nums[..] {
                [u, v] => pairs.push((u, v)),
                [_] => {}
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'u v'",
                        lineno + 1
                    )))
                }
            }
        }
        Self::from_pairs(&pairs)
    }

    pub fn from_motif(m: &Motif) -> Self {
        Subject {
            n: m.k(),
            edges: m.edges().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, &self.edges)
    }

    pub fn is_connected(&self) -> bool {
        self.graph().components().0 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covering {
    /// Labels `>= fresh_start` are fresh vertices outside `V(S)`.
    pub fresh_start: usize,
    pub placements: Vec<Placement>,
    pub a: usize,
    pub b: usize,
}

impl Covering {
    fn new(fresh_start: usize, placements: Vec<Placement>) -> Self {
        let a = vertex_mask(&placements).count_ones() as usize;
        let b = placements.len();
        Covering {
            fresh_start,
            placements,
            a,
            b,
        }
    }

    /// No S-edge is covered twice.
    pub fn is_edge_disjoint(&self) -> bool {
        let mut all: Vec<Edge> = self.placements.iter().flat_map(|p| p.edges.clone()).collect();
        let len = all.len();
        all.sort_unstable();
        all.dedup();
        all.len() == len
    }
}

fn placement_mask(p: &Placement) -> u128 {
    p.vertices.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

fn vertex_mask(ps: &[Placement]) -> u128 {
    ps.iter().fold(0, |m, p| m | placement_mask(p))
}

/// Minimum over nonempty placement subsets of `|V(union)| / |subset|`.
pub fn gamma_of_covering(c: &Covering) -> Rational {
    let masks: Vec<u128> = c.placements.iter().map(placement_mask).collect();
    min_subset_ratio(&masks).0
}

fn min_subset_ratio(masks: &[u128]) -> (Rational, usize) {
    let b = masks.len();
    assert!(b > 0 && b < 32);
    let mut best: Option<(Rational, usize)> = None;
    for sub in 1usize..(1 << b) {
        let mut m = 0u128;
        for (i, &pm) in masks.iter().enumerate() {
            if sub >> i & 1 == 1 {
                m |= pm;
            }
        }
        let r = Rational::new(m.count_ones() as i64, sub.count_ones() as i64);
        if best.is_none_or(|(x, _)| r < x) {
            best = Some((r, sub));
        }
    }
    best.unwrap()
}

/// Visits every covering of `S` by copies of `h` once, up to renaming of
/// fresh vertices.
pub fn for_each_covering(
    s: &Subject,
    h: &Motif,
    cap: usize,
    mut f: impl FnMut(&Covering),
) -> Result<()> {
    let mut e = Enumerator::new(s, h, cap)?;
    let mut visitor = |ps: &[Placement], full: bool| {
        if full {
            f(&Covering::new(s.n(), ps.to_vec()));
        }
        true
    };
    e.dfs(&mut visitor);
    Ok(())
}

pub fn enumerate_coverings(s: &Subject, h: &Motif) -> Result<Vec<Covering>> {
    let mut out = Vec::new();
    for_each_covering(s, h, DEFAULT_SUBJECT_EDGE_CAP, |c| out.push(c.clone()))?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaResult {
    pub gamma_bar: Rational,
    /// `|V(H)| - gamma_bar`: the appearance threshold is `m ~ n^exponent`.
    pub exponent: Rational,
    /// First covering in enumeration order attaining the maximum.
    pub witness: Covering,
    /// Coverings evaluated in full (fewer than exist when pruning is on).
    pub coverings_seen: u64,
}

/// `gamma_bar` by branch and bound: the minimum subset ratio of a partial
/// covering bounds the value of every completion, so branches that cannot
/// beat the incumbent are cut.
pub fn gamma_bar(s: &Subject, h: &Motif) -> Result<GammaResult> {
    gamma_bar_with_cap(s, h, DEFAULT_SUBJECT_EDGE_CAP)
}

pub fn gamma_bar_with_cap(s: &Subject, h: &Motif, cap: usize) -> Result<GammaResult> {
    let mut e = Enumerator::new(s, h, cap)?;
    let mut best: Option<(Rational, Vec<Placement>)> = None;
    let mut seen = 0u64;
    // min ratio of each prefix, indexed by prefix length - 1
    let mut prefix_min: Vec<Rational> = Vec::new();
    let mut visitor = |ps: &[Placement], full: bool| {
        let j = ps.len();
        prefix_min.truncate(j - 1);
        let last = placement_mask(&ps[j - 1]);
        let masks: Vec<u128> = ps[..j - 1].iter().map(placement_mask).collect();
        let mut m = prefix_min.last().copied();
        for sub in 0usize..(1 << (j - 1)) {
            let mut u = last;
            for (i, &pm) in masks.iter().enumerate() {
                if sub >> i & 1 == 1 {
                    u |= pm;
                }
            }
            let r = Rational::new(u.count_ones() as i64, sub.count_ones() as i64 + 1);
            if m.is_none_or(|x| r < x) {
                m = Some(r);
            }
        }
        let m = m.unwrap();
        prefix_min.push(m);
        if best.as_ref().is_some_and(|(b, _)| m <= *b) {
            return false;
        }
        if full {
            seen += 1;
            best = Some((m, ps.to_vec()));
        }
        true
    };
    e.dfs(&mut visitor);
    let (g, w) = best.ok_or_else(|| Error::Domain("subject has no covering".into()))?;
    Ok(GammaResult {
        gamma_bar: g,
        exponent: Rational::from_integer(h.k() as i64) - g,
        witness: Covering::new(s.n(), w),
        coverings_seen: seen,
    })
}

/// `gamma_bar` as the plain maximum of [`gamma_of_covering`] over the full
/// enumeration, with no pruning.
pub fn gamma_bar_exhaustive(s: &Subject, h: &Motif) -> Result<GammaResult> {
    let mut best: Option<(Rational, Covering)> = None;
    let mut seen = 0u64;
    for_each_covering(s, h, DEFAULT_SUBJECT_EDGE_CAP, |c| {
        seen += 1;
        let g = gamma_of_covering(c);
        if best.as_ref().is_none_or(|(b, _)| g > *b) {
            best = Some((g, c.clone()));
        }
    })?;
    let (g, w) = best.ok_or_else(|| Error::Domain("subject has no covering".into()))?;
    Ok(GammaResult {
        gamma_bar: g,
        exponent: Rational::from_integer(h.k() as i64) - g,
        witness: w,
        coverings_seen: seen,
    })
}

struct Enumerator<'a> {
    s: &'a Subject,
    h: &'a Motif,
    s_index: HashMap<Edge, usize>,
    placements: Vec<Placement>,
    // S-edge bitmask covered by each placement
    covers: Vec<u64>,
    anchors: Vec<usize>,
    cover_count: Vec<u32>,
    next_fresh: usize,
}

impl<'a> Enumerator<'a> {
    fn new(s: &'a Subject, h: &'a Motif, cap: usize) -> Result<Self> {
        let m = s.edges().len();
        if m > cap || m > 63 {
            return Err(Error::SubjectTooLarge { edges: m, cap });
        }
        let fresh_bound = s.n() + m * h.k();
        if fresh_bound > 128 {
            return Err(Error::SubjectTooLarge { edges: m, cap });
        }
        let s_index = s.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(Enumerator {
            s,
            h,
            s_index,
            placements: Vec::new(),
            covers: Vec::new(),
            anchors: Vec::new(),
            cover_count: vec![0; m],
            next_fresh: s.n(),
        })
    }

    fn s_mask(&self, p: &Placement) -> u64 {
        p.edges
            .iter()
            .filter_map(|e| self.s_index.get(e))
            .fold(0, |m, &i| m | (1 << i))
    }

    /// Copies of the motif through S-edge `anchor`, on `V(S)`, the fresh
    /// vertices in use, and new fresh vertices taken in order.
    fn candidates(&self, anchor: usize) -> Vec<Placement> {
        let (x, y) = self.s.edges()[anchor];
        let k = self.h.k();
        let mut out: BTreeMap<Vec<Edge>, Placement> = BTreeMap::new();
        let mut map = vec![usize::MAX; k];
        for &(a, b) in self.h.edges() {
            for (pa, pb) in [(a, b), (b, a)] {
                map.fill(usize::MAX);
                map[pa] = x;
                map[pb] = y;
                self.extend_map(&mut map, 0, self.next_fresh, &mut out);
            }
        }
        out.into_values().collect()
    }

    fn extend_map(
        &self,
        map: &mut Vec<usize>,
        i: usize,
        new_label: usize,
        out: &mut BTreeMap<Vec<Edge>, Placement>,
    ) {
        let k = map.len();
        if i == k {
            let p = Placement::from_tuple(self.h, map.clone());
            out.entry(p.edges.clone()).or_insert(p);
            return;
        }
        if map[i] != usize::MAX {
            return self.extend_map(map, i + 1, new_label, out);
        }
        for v in 0..=new_label {
            if map.contains(&v) {
                continue;
            }
            map[i] = v;
            let next = if v == new_label { new_label + 1 } else { new_label };
            self.extend_map(map, i + 1, next, out);
        }
        map[i] = usize::MAX;
    }

    fn push(&mut self, p: Placement, anchor: usize) {
        let mask = self.s_mask(&p);
        for i in 0..self.cover_count.len() {
            if mask >> i & 1 == 1 {
                self.cover_count[i] += 1;
            }
        }
        let top = p.vertices.iter().copied().max().unwrap();
        self.next_fresh = self.next_fresh.max(top + 1);
        self.covers.push(mask);
        self.anchors.push(anchor);
        self.placements.push(p);
    }

    fn pop(&mut self) {
        let mask = self.covers.pop().unwrap();
        self.anchors.pop();
        self.placements.pop();
        for i in 0..self.cover_count.len() {
            if mask >> i & 1 == 1 {
                self.cover_count[i] -= 1;
            }
        }
        self.next_fresh = self
            .placements
            .iter()
            .flat_map(|p| p.vertices.iter().copied())
            .max()
            .map_or(self.s.n(), |t| (t + 1).max(self.s.n()));
    }

    /// Every copy's smallest uniquely covered S-edge is its anchor.
    fn anchors_consistent(&self) -> bool {
        self.covers.iter().zip(&self.anchors).all(|(&mask, &anchor)| {
            let unique = (0..self.cover_count.len())
                .find(|&i| mask >> i & 1 == 1 && self.cover_count[i] == 1);
            unique == Some(anchor)
        })
    }

    /// `visit(prefix, is_full_covering)` returns whether to go deeper.
    fn dfs(&mut self, visit: &mut dyn FnMut(&[Placement], bool) -> bool) {
        let m = self.cover_count.len();
        let from = self.anchors.last().map_or(0, |&a| a + 1);
        for anchor in from..m {
            if self.cover_count[anchor] != 0 {
                continue;
            }
            let earlier: u64 = self.anchors.iter().fold(0, |acc, &a| acc | (1 << a));
            for p in self.candidates(anchor) {
                if self.s_mask(&p) & earlier != 0 {
                    continue;
                }
                self.push(p, anchor);
                if is_canonical(&self.placements, self.s.n()) {
                    let full = self.cover_count.iter().all(|&c| c > 0);
                    let emit = full && self.anchors_consistent();
                    if visit(&self.placements, emit) && !full {
                        self.dfs(visit);
                    }
                }
                self.pop();
            }
        }
    }
}

/// Is the fresh numbering of `ps` the lexicographically least among all
/// renamings of fresh labels? Any order-preserving shrink of labels lowers
/// the sorted edge lists, so only numberings that introduce labels in order
/// of first appearance need to be compared.
fn is_canonical(ps: &[Placement], fresh_start: usize) -> bool {
    let mut map = [NO_LABEL; 128];
    !smaller_exists(ps, 0, fresh_start, &mut map, fresh_start)
}

const NO_LABEL: usize = usize::MAX;

fn smaller_exists(
    ps: &[Placement],
    i: usize,
    fresh_start: usize,
    map: &mut [usize; 128],
    next: usize,
) -> bool {
    if i == ps.len() {
        return false;
    }
    let mut unmapped: Vec<usize> = ps[i]
        .vertices
        .iter()
        .copied()
        .filter(|&v| v >= fresh_start && map[v] == NO_LABEL)
        .collect();
    unmapped.sort_unstable();
    let orig = &ps[i].edges;
    let mut perm: Vec<usize> = (0..unmapped.len()).collect();
    let mut found;
    loop {
        for (j, &u) in unmapped.iter().enumerate() {
            map[u] = next + perm[j];
        }
        let relabel = |v: usize| if v >= fresh_start { map[v] } else { v };
        let mut img: Vec<Edge> = orig.iter().map(|&(u, v)| edge(relabel(u), relabel(v))).collect();
        img.sort_unstable();
        found = match img.cmp(orig) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => {
                smaller_exists(ps, i + 1, fresh_start, map, next + unmapped.len())
            }
            std::cmp::Ordering::Greater => false,
        };
        if found || !crate::combin::next_permutation(&mut perm) {
            break;
        }
    }
    for &u in &unmapped {
        map[u] = NO_LABEL;
    }
    found
}

/// Closed-form `gamma_bar` for a path motif on `v` vertices and connected `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathClosedForm {
    pub exc: i64,
    /// Fewest parts in a partition of `E(S)` into paths of at most `v - 1` edges.
    pub beta: usize,
    /// `min |V(X)| / |E(X)|` over nonempty edge subsets `X` of `S`.
    pub eta: Rational,
    pub gamma_bar: Rational,
}

pub fn path_closed_form(s: &Subject, v: usize) -> Result<PathClosedForm> {
    if v < 2 {
        return Err(Error::Domain(format!("path motif needs v >= 2, got {v}")));
    }
    if !s.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = s.edges().len();
    if m > CLOSED_FORM_EDGE_CAP {
        return Err(Error::SubjectTooLarge {
            edges: m,
            cap: CLOSED_FORM_EDGE_CAP,
        });
    }
    let exc = m as i64 - s.n() as i64 + 1;
    let full = (1usize << m) - 1;
    let is_part: Vec<bool> = (0..=full).map(|sub| is_short_path(s, sub, v - 1)).collect();
    let mut dp = vec![usize::MAX; full + 1];
    dp[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // parts containing the lowest edge of `mask`
        let mut sub = rest;
        loop {
            let part = sub | low;
            if is_part[part] && dp[mask ^ part] != usize::MAX {
                dp[mask] = dp[mask].min(dp[mask ^ part] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let beta = dp[full];
    let mut eta: Option<Rational> = None;
    for sub in 1..=full {
        let mut vm = 0u128;
        for (i, &(a, b)) in s.edges().iter().enumerate() {
            if sub >> i & 1 == 1 {
                vm |= 1 << a | 1 << b;
            }
        }
        let r = Rational::new(vm.count_ones() as i64, sub.count_ones() as i64);
        if eta.is_none_or(|e| r < e) {
            eta = Some(r);
        }
    }
    let eta = eta.unwrap();
    let vr = Rational::from_integer(v as i64);
    let gamma_bar = match exc {
        0 => vr - 1 + Rational::new(1, beta as i64),
        1 => vr - 1,
        _ => vr - 2 + eta,
    };
    Ok(PathClosedForm {
        exc,
        beta,
        eta,
        gamma_bar,
    })
}

/// Edge subset `sub` of `S` forms a simple path with at most `max_len` edges.
fn is_short_path(s: &Subject, sub: usize, max_len: usize) -> bool {
    let len = sub.count_ones() as usize;
    if len == 0 || len > max_len {
        return false;
    }
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    let mut es = Vec::with_capacity(len);
    for (i, &(a, b)) in s.edges().iter().enumerate() {
        if sub >> i & 1 == 1 {
            *deg.entry(a).or_default() += 1;
            *deg.entry(b).or_default() += 1;
            es.push((a, b));
        }
    }
    if deg.len() != len + 1 || deg.values().any(|&d| d > 2) {
        return false;
    }
    // |V| = |E| + 1 and connected means a tree; max degree 2 makes it a path.
    let labels: Vec<usize> = deg.keys().copied().collect();
    let idx = |x: usize| labels.binary_search(&x).unwrap();
    let g = SimpleGraph::from_edges(
        labels.len(),
        &es.iter().map(|&(a, b)| (idx(a), idx(b))).collect::<Vec<_>>(),
    );
    g.components().0 == 1
}

/// Checks `a'/b' = v - 1 + (c' - f' - k)/b'` for every nonempty subset of a
/// covering by paths on `v` vertices: `c'` counts components of the subset's
/// union, `f'` sums the excess of those components and `k` counts repeated
/// edges among the subset's copies.
pub fn verify_subset_formula(c: &Covering, h: &Motif) -> Result<bool> {
    if !h.is_path() {
        return Err(Error::NotAPath);
    }
    let v = h.k() as i64;
    let b = c.placements.len();
    let mut parent = [0u8; 128];
    let mut edges: Vec<Edge> = Vec::new();
    for sub in 1usize..(1 << b) {
        edges.clear();
        let mut vmask = 0u128;
        for (i, p) in c.placements.iter().enumerate() {
            if sub >> i & 1 == 1 {
                edges.extend_from_slice(&p.edges);
                vmask |= placement_mask(p);
            }
        }
        let total_edges = edges.len() as i64;
        edges.sort_unstable();
        edges.dedup();
        let mut rest = vmask;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            parent[x] = x as u8;
            rest &= rest - 1;
        }
        let a1 = vmask.count_ones() as i64;
        let mut c1 = a1;
        for &(x, y) in &edges {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx] = ry as u8;
                c1 -= 1;
            }
        }
        let b1 = sub.count_ones() as i64;
        let k = total_edges - edges.len() as i64;
        let f1 = edges.len() as i64 - a1 + c1;
        let lhs = Rational::new(a1, b1);
        let rhs = Rational::from_integer(v - 1) + Rational::new(c1 - f1 - k, b1);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn find(parent: &mut [u8; 128], mut x: usize) -> usize {
    while parent[x] as usize != x {
        let up = parent[parent[x] as usize];
        parent[x] = up;
        x = up as usize;
    }
    x
}

/// Renders a rational as `p/q`, or `p` when integral.
pub fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
