//! Hitting times along the motif process.
//!
//! `tau1`/`tau2` are the first steps with minimum degree at least 1/2;
//! `tau_c`, `tau_m` and `tau_h` are the first steps at which the graph is
//! connected, has a perfect matching and is Hamiltonian. Times count
//! placements, starting at 1 for the first copy.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::Motif;
use crate::multigraph::MotifMultiGraph;
use crate::properties::{hamiltonian, HamStatus, Matcher};
use crate::sampler::{process_stream, SeededRng};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Targets {
    pub connectivity: bool,
    pub matching: bool,
    pub hamiltonicity: bool,
}

impl Targets {
    pub fn all() -> Self {
        Targets {
            connectivity: true,
            matching: true,
            hamiltonicity: true,
        }
    }

    /// Parses a comma list drawn from `conn`, `pm`, `ham`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut t = Targets::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "conn" | "connected" => t.connectivity = true,
                "pm" | "matching" => t.matching = true,
                "ham" | "hamiltonian" => t.hamiltonicity = true,
                other => return Err(Error::InvalidConfig(format!("unknown target '{other}'"))),
            }
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingReport {
    pub n: usize,
    pub motif: String,
    pub seed: u64,
    pub stream: u64,
    pub tau1: Option<u64>,
    pub tau2: Option<u64>,
    pub tau_c: Option<u64>,
    pub tau_m: Option<u64>,
    pub tau_h: Option<u64>,
    /// Outcome of the first Hamiltonicity check, made at `tau2`.
    pub ham_status: Option<HamStatus>,
    /// Set when a Hamiltonicity check hit its budget; `tau_h` is then unknown.
    pub inconclusive: bool,
}

/// Union-find tracking the number of components.
#[derive(Debug, Clone)]
pub struct Components {
    parent: Vec<usize>,
    rank: Vec<u8>,
    count: usize,
}

impl Components {
    pub fn new(n: usize) -> Self {
        Components {
            parent: (0..n).collect(),
            rank: vec![0; n],
            count: n,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
        self.count -= 1;
        true
    }
}

/// Runs one motif process until every tracked time is known (or the copies
/// run out). Property checks start only once their degree prerequisite holds.
pub fn run_process(
    n: usize,
    motif: &Motif,
    seed: SeededRng,
    targets: Targets,
    ham_budget: u64,
) -> Result<HittingReport> {
    if targets.matching && n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if targets.hamiltonicity && n < 3 {
        return Err(Error::Domain(format!(
            "Hamiltonicity needs n >= 3, got {n}"
        )));
    }
    let mut report = HittingReport {
        n,
        motif: motif.label(),
        seed: seed.master_seed,
        stream: seed.stream_id,
        tau1: None,
        tau2: None,
        tau_c: None,
        tau_m: None,
        tau_h: None,
        ham_status: None,
        inconclusive: false,
    };
    let mut g = MotifMultiGraph::new(n);
    let mut comps = Components::new(n);
    let mut matcher = Matcher::new(n);
    let mut ham_dirty = true;

    let done = |r: &HittingReport| {
        r.tau1.is_some()
            && r.tau2.is_some()
            && (!targets.connectivity || r.tau_c.is_some())
            && (!targets.matching || r.tau_m.is_some())
            && (!targets.hamiltonicity || r.tau_h.is_some() || r.inconclusive)
    };

    let mut stream = process_stream(n, motif, seed)?;
    let mut step = 0u64;
    while !done(&report) {
        let Some(p) = stream.next() else { break };
        step += 1;
        let fresh = g.add_placement(p)?;
        for &(u, v) in &fresh {
            comps.union(u, v);
        }
        if !fresh.is_empty() {
            ham_dirty = true;
        }
        if report.tau1.is_none() && g.vertices_below(1) == 0 {
            report.tau1 = Some(step);
        }
        if report.tau2.is_none() && g.vertices_below(2) == 0 {
            report.tau2 = Some(step);
        }
        if targets.connectivity && report.tau_c.is_none() && comps.count() <= 1 {
            report.tau_c = Some(step);
        }
        if targets.matching && report.tau_m.is_none() && report.tau1.is_some() {
            if matcher.size() == 0 {
                matcher.greedy(g.simple());
            }
            matcher.augment(g.simple());
            if matcher.is_perfect() {
                report.tau_m = Some(step);
            }
        }
        if targets.hamiltonicity
            && report.tau_h.is_none()
            && !report.inconclusive
            && report.tau2.is_some()
            && ham_dirty
        {
            ham_dirty = false;
            let status = hamiltonian(g.simple(), ham_budget).status;
            report.ham_status.get_or_insert(status);
            match status {
                HamStatus::Found => report.tau_h = Some(step),
                HamStatus::Budget => report.inconclusive = true,
                HamStatus::NotFound => {}
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HittingConfig {
    pub n: usize,
    pub motif: Motif,
    pub trials: usize,
    pub targets: Targets,
    pub seed: u64,
    pub ham_budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeStats {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
}

impl TimeStats {
    fn of(values: impl Iterator<Item = u64>) -> Option<Self> {
        let v: Vec<f64> = values.map(|x| x as f64).collect();
        if v.is_empty() {
            return None;
        }
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let var = if v.len() > 1 {
            v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64
        } else {
            0.0
        };
        Some(TimeStats {
            count: v.len(),
            mean,
            std: var.sqrt(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HittingSummary {
    pub trials: usize,
    /// Fraction of all trials with `tau_c == tau1`.
    pub frac_c_eq_1: Option<f64>,
    pub frac_m_eq_1: Option<f64>,
    /// Inconclusive trials count against this fraction, never for it.
    pub frac_h_eq_2: Option<f64>,
    /// Trials whose Hamiltonicity check stopped on the budget.
    pub inconclusive: usize,
    pub tau1: Option<TimeStats>,
    pub tau2: Option<TimeStats>,
    pub tau_c: Option<TimeStats>,
    pub tau_m: Option<TimeStats>,
    pub tau_h: Option<TimeStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HittingOutput {
    pub reports: Vec<HittingReport>,
    pub summary: HittingSummary,
}

/// Runs `trials` independent processes in parallel; trial `t` uses stream `t`.
pub fn hitting_stats(cfg: &HittingConfig) -> Result<HittingOutput> {
    if cfg.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let reports: Vec<HittingReport> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            run_process(
                cfg.n,
                &cfg.motif,
                SeededRng::new(cfg.seed, t),
                cfg.targets,
                cfg.ham_budget,
            )
        })
        .collect::<Result<_>>()?;
    let summary = summarize(&reports, cfg.targets);
    Ok(HittingOutput { reports, summary })
}

pub fn summarize(reports: &[HittingReport], targets: Targets) -> HittingSummary {
    let t = reports.len();
    let frac = |on: bool, f: &dyn Fn(&HittingReport) -> bool| {
        on.then(|| reports.iter().filter(|r| f(r)).count() as f64 / t as f64)
    };
    HittingSummary {
        trials: t,
        frac_c_eq_1: frac(targets.connectivity, &|r| r.tau_c.is_some() && r.tau_c == r.tau1),
        frac_m_eq_1: frac(targets.matching, &|r| r.tau_m.is_some() && r.tau_m == r.tau1),
        frac_h_eq_2: frac(targets.hamiltonicity, &|r| {
            !r.inconclusive && r.tau_h.is_some() && r.tau_h == r.tau2
        }),
        inconclusive: reports.iter().filter(|r| r.inconclusive).count(),
        tau1: TimeStats::of(reports.iter().filter_map(|r| r.tau1)),
        tau2: TimeStats::of(reports.iter().filter_map(|r| r.tau2)),
        tau_c: TimeStats::of(reports.iter().filter_map(|r| r.tau_c)),
        tau_m: TimeStats::of(reports.iter().filter_map(|r| r.tau_m)),
        tau_h: TimeStats::of(reports.iter().filter_map(|r| r.tau_h)),
    }
}

/// CSV rows `trial,tau1,tau2,tau_c,tau_m,tau_h`, blank for unknown times.
pub fn reports_csv(reports: &[HittingReport]) -> String {
    let cell = |t: Option<u64>| t.map(|x| x.to_string()).unwrap_or_default();
    let mut out = String::from("trial,tau1,tau2,tau_c,tau_m,tau_h\n");
    for (i, r) in reports.iter().enumerate() {
        out.push_str(&format!(
            "{i},{},{},{},{},{}\n",
            cell(r.tau1),
            cell(r.tau2),
            cell(r.tau_c),
            cell(r.tau_m),
            cell(r.tau_h)
        ));
    }
    out
}
