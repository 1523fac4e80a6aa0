//! Monte Carlo experiments: threshold curves, `p_{1/2}` search, subgraph
//! appearance and isolated-vertex counts.
//!
//! Trial `t` at grid point `i` draws from stream `(i << 32) | t` of the
//! master seed, so results do not depend on scheduling.

use std::path::Path;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::{fmt_rational, gamma_bar, Subject};
use crate::error::{Error, Result};
use crate::motif::{m_r, total_copies, Motif};
use crate::multigraph::MotifMultiGraph;
use crate::properties::{contains_subgraph, hamiltonian, is_connected, max_matching, HamStatus};
use crate::sampler::{sample_binomial, sample_uniform, SeededRng};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

/// Wilson score interval at 95% confidence; `(0, 1)` when `trials == 0`.
pub fn wilson(hits: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // clamp so rounding at 0 or 1 hits cannot exclude the estimate
    ((centre - half).clamp(0.0, p), (centre + half).clamp(p, 1.0))
}

/// Resolves a motif given as a preset name or a path to an edge-list file.
pub fn load_motif(spec: &str) -> Result<Motif> {
    match Motif::preset(spec) {
        Ok(m) => Ok(m),
        Err(preset_err) => {
            let path = Path::new(spec);
            if path.is_file() {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
                Ok(Motif::parse_edge_list(&text)?.with_name(spec))
            } else {
                Err(preset_err)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    Connected,
    PerfectMatching,
    Hamiltonian,
    MinDegree(usize),
    Contains(Motif),
    /// At least one copy present.
    Nonempty,
}

impl Property {
    /// `connected`, `pm`, `ham`, `mindeg:d`, `contains:<preset or file>`, `nonempty`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "connected" | "conn" => Property::Connected,
            "pm" | "matching" => Property::PerfectMatching,
            "ham" | "hamiltonian" => Property::Hamiltonian,
            "nonempty" => Property::Nonempty,
            _ => {
                if let Some(d) = s.strip_prefix("mindeg:") {
                    let d = d
                        .parse()
                        .map_err(|_| Error::InvalidConfig(format!("bad degree in {s:?}")))?;
                    Property::MinDegree(d)
                } else if let Some(spec) = s.strip_prefix("contains:") {
                    Property::Contains(load_motif(spec)?)
                } else {
                    return Err(Error::InvalidConfig(format!("unknown property {s:?}")));
                }
            }
        })
    }

    pub fn label(&self) -> String {
        match self {
            Property::Connected => "connected".into(),
            Property::PerfectMatching => "pm".into(),
            Property::Hamiltonian => "ham".into(),
            Property::MinDegree(d) => format!("mindeg:{d}"),
            Property::Contains(s) => format!("contains:{}", s.label()),
            Property::Nonempty => "nonempty".into(),
        }
    }

    /// `None` when the Hamiltonicity search ran out of budget.
    pub fn holds(&self, g: &MotifMultiGraph, ham_budget: u64) -> Result<Option<bool>> {
        let s = g.simple();
        Ok(Some(match self {
            Property::Connected => is_connected(s),
            Property::PerfectMatching => s.min_degree() >= 1 && max_matching(s).is_perfect,
            Property::Hamiltonian => match hamiltonian(s, ham_budget).status {
                HamStatus::Found => true,
                HamStatus::NotFound => false,
                HamStatus::Budget => return Ok(None),
            },
            Property::MinDegree(d) => g.vertices_below(*d) == 0,
            Property::Contains(m) => contains_subgraph(s, m)?,
            Property::Nonempty => !g.placements().is_empty(),
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    /// Copy probabilities for the binomial model.
    P(Vec<f64>),
    /// Copy counts for the uniform model.
    M(Vec<u64>),
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::P(v) => v.len(),
            Grid::M(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        let increasing = match self {
            Grid::P(v) => {
                if let Some(p) = v.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                    return Err(Error::ProbabilityRange(*p));
                }
                v.windows(2).all(|w| w[0] < w[1])
            }
            Grid::M(v) => v.windows(2).all(|w| w[0] < w[1]),
        };
        if self.is_empty() || !increasing {
            return Err(Error::InvalidConfig("grid must be non-empty and strictly increasing".into()));
        }
        Ok(())
    }
}

/// Seven geometric points spanning a factor of 16, centred on `centre`.
pub fn geometric_grid(centre: f64) -> Vec<f64> {
    (0..7).map(|i| centre * 16f64.powf((i as f64 - 3.0) / 6.0)).collect()
}

/// Default p-grid around `ln n / m_1`, clipped to `[0, 1]`.
pub fn default_p_grid(n: usize, motif: &Motif) -> Result<Vec<f64>> {
    let m1 = m_r(n, motif, 1)?
        .to_f64()
        .ok_or_else(|| Error::Domain("m_1 not representable".into()))?;
    let mut g: Vec<f64> = geometric_grid((n as f64).ln() / m1)
        .into_iter()
        .map(|p| p.min(1.0))
        .collect();
    g.dedup();
    Ok(g)
}

/// Default m-grid around `n^exponent`, as distinct integers.
pub fn default_m_grid(n: usize, exponent: f64) -> Vec<u64> {
    let mut g: Vec<u64> = geometric_grid((n as f64).powf(exponent))
        .into_iter()
        .map(|m| m.floor() as u64)
        .collect();
    g.dedup();
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    /// `p` for binomial grids, `m` for uniform grids.
    pub x: f64,
    /// Conclusive trials.
    pub trials: u64,
    pub hits: u64,
    pub inconclusive: u64,
    pub p_hat: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

impl CurvePoint {
    fn new(x: f64, trials: u64, hits: u64, inconclusive: u64) -> Self {
        let (wilson_lo, wilson_hi) = wilson(hits, trials);
        CurvePoint {
            x,
            trials,
            hits,
            inconclusive,
            p_hat: if trials == 0 { 0.0 } else { hits as f64 / trials as f64 },
            wilson_lo,
            wilson_hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveConfig {
    pub motif: Motif,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub property: Property,
    pub grid: Grid,
    pub ham_budget: u64,
}

#[derive(Clone, Copy)]
enum Draw {
    P(f64),
    M(u64),
}

/// Runs `trials` samples at one model parameter; `point` selects the streams.
#[allow(clippy::too_many_arguments)]
fn evaluate(
    motif: &Motif,
    n: usize,
    draw: Draw,
    property: &Property,
    trials: usize,
    seed: u64,
    point: u64,
    ham_budget: u64,
) -> Result<CurvePoint> {
    let outcomes: Vec<Option<bool>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = SeededRng::new(seed, point << 32 | t).rng();
            let g = match draw {
                Draw::P(p) => sample_binomial(n, motif, p, &mut rng)?,
                Draw::M(m) => sample_uniform(n, motif, m as u128, &mut rng)?,
            };
            property.holds(&g, ham_budget)
        })
        .collect::<Result<_>>()?;
    let hits = outcomes.iter().filter(|o| **o == Some(true)).count() as u64;
    let inconclusive = outcomes.iter().filter(|o| o.is_none()).count() as u64;
    let x = match draw {
        Draw::P(p) => p,
        Draw::M(m) => m as f64,
    };
    Ok(CurvePoint::new(x, trials as u64 - inconclusive, hits, inconclusive))
}

pub fn threshold_curve(cfg: &CurveConfig) -> Result<Vec<CurvePoint>> {
    if cfg.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    cfg.grid.validate()?;
    let draws: Vec<Draw> = match &cfg.grid {
        Grid::P(v) => v.iter().map(|&p| Draw::P(p)).collect(),
        Grid::M(v) => v.iter().map(|&m| Draw::M(m)).collect(),
    };
    draws
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            evaluate(&cfg.motif, cfg.n, d, &cfg.property, cfg.trials, cfg.seed, i as u64, cfg.ham_budget)
        })
        .collect()
}

/// Largest drop between consecutive points that their Wilson intervals do
/// not explain, or `None` if the curve is monotone within tolerance.
pub fn monotonicity_violation(points: &[CurvePoint]) -> Option<(usize, usize)> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[j].wilson_hi < points[i].wilson_lo {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("p_or_m,trials,hits,p_hat,wilson_lo,wilson_hi\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.x, p.trials, p.hits, p.p_hat, p.wilson_lo, p.wilson_hi
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PHalfResult {
    pub p_half: f64,
    /// Final bracket.
    pub lo: f64,
    pub hi: f64,
    pub evaluations: Vec<CurvePoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PHalfConfig {
    pub motif: Motif,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub property: Property,
    /// Stop once `(hi - lo) / hi < rtol`.
    pub rtol: f64,
    pub ham_budget: u64,
}

const MAX_HALVINGS: usize = 200;
const MAX_BISECTIONS: usize = 100;

/// Geometric bisection for the `p` at which the property holds with
/// probability 1/2. The bracket starts at `[1/2, 1]` and halves its lower
/// end until the estimate drops below 1/2; each midpoint then replaces the
/// end on its side of 1/2. Inverted Wilson intervals along the way are
/// reported as [`Error::NonMonotoneSignal`].
pub fn estimate_p_half(cfg: &PHalfConfig) -> Result<PHalfResult> {
    if cfg.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if cfg.rtol.is_nan() || cfg.rtol <= 0.0 {
        return Err(Error::InvalidConfig("rtol must be positive".into()));
    }
    let mut evals: Vec<CurvePoint> = Vec::new();
    let eval = |p: f64, evals: &mut Vec<CurvePoint>| -> Result<CurvePoint> {
        let pt = evaluate(
            &cfg.motif,
            cfg.n,
            Draw::P(p),
            &cfg.property,
            cfg.trials,
            cfg.seed,
            evals.len() as u64,
            cfg.ham_budget,
        )?;
        evals.push(pt.clone());
        Ok(pt)
    };
    let mut hi = eval(1.0, &mut evals)?;
    if hi.p_hat < 0.5 {
        return Err(Error::Domain(format!(
            "property holds with estimated probability {} at p = 1",
            hi.p_hat
        )));
    }
    let mut lo = hi.clone();
    for _ in 0..MAX_HALVINGS {
        let pt = eval(lo.x / 2.0, &mut evals)?;
        check_order(&pt, &lo)?;
        if pt.p_hat < 0.5 {
            hi = lo;
            lo = pt;
            break;
        }
        lo = pt;
    }
    if lo.p_hat >= 0.5 {
        return Err(Error::Domain("no p with estimate below 1/2 found".into()));
    }
    for _ in 0..MAX_BISECTIONS {
        if (hi.x - lo.x) / hi.x < cfg.rtol {
            break;
        }
        let mid = (lo.x * hi.x).sqrt();
        let pt = eval(mid, &mut evals)?;
        check_order(&lo, &pt)?;
        check_order(&pt, &hi)?;
        if pt.p_hat < 0.5 {
            lo = pt;
        } else {
            hi = pt;
        }
    }
    Ok(PHalfResult {
        p_half: (lo.x * hi.x).sqrt(),
        lo: lo.x,
        hi: hi.x,
        evaluations: evals,
    })
}

/// `a.x < b.x` must not come with `a` clearly above `b`.
fn check_order(a: &CurvePoint, b: &CurvePoint) -> Result<()> {
    let (a, b) = if a.x <= b.x { (a, b) } else { (b, a) };
    if a.wilson_lo > b.wilson_hi {
        return Err(Error::NonMonotoneSignal {
            lo_p: a.x,
            lo_hat: a.p_hat,
            hi_p: b.x,
            hi_hat: b.p_hat,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppearancePoint {
    #[serde(flatten)]
    pub point: CurvePoint,
    /// `m / n^exponent`.
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppearanceResult {
    pub subject: String,
    pub motif: String,
    pub n: usize,
    pub gamma_bar: String,
    pub exponent: String,
    /// `n^exponent`.
    pub threshold_m: f64,
    pub points: Vec<AppearancePoint>,
}

/// Empirical `Pr[S in G(H, n, m)]` along an m-grid (default: around the
/// threshold `n^(v - gamma_bar)`).
pub fn appearance_experiment(
    subject: &Motif,
    motif: &Motif,
    n: usize,
    m_grid: Option<Vec<u64>>,
    trials: usize,
    seed: u64,
) -> Result<AppearanceResult> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let g = gamma_bar(&Subject::from_motif(subject), motif)?;
    let exp = *g.exponent.numer() as f64 / *g.exponent.denom() as f64;
    let threshold_m = (n as f64).powf(exp);
    let grid = m_grid.unwrap_or_else(|| default_m_grid(n, exp));
    Grid::M(grid.clone()).validate()?;
    let property = Property::Contains(subject.clone());
    let points = grid
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let point = evaluate(motif, n, Draw::M(m), &property, trials, seed, i as u64, 0)?;
            Ok(AppearancePoint {
                point,
                relative: m as f64 / threshold_m,
            })
        })
        .collect::<Result<_>>()?;
    Ok(AppearanceResult {
        subject: subject.label(),
        motif: motif.label(),
        n,
        gamma_bar: fmt_rational(&g.gamma_bar),
        exponent: fmt_rational(&g.exponent),
        threshold_m,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoStats {
    pub n: usize,
    pub motif: String,
    /// `(ln n - ln ln n) / m_1`
    pub p: f64,
    pub ln_n: f64,
    pub mean: f64,
    pub max: usize,
    /// Fraction of trials with at most `2 ln n` isolated vertices.
    pub frac_at_most_2ln: f64,
    pub counts: Vec<usize>,
}

/// Isolated-vertex counts of `G(H, n, p)` at `p = (ln n - ln ln n) / m_1`,
/// or at `p_override`.
pub fn isolated_vertex_stats(
    motif: &Motif,
    n: usize,
    trials: usize,
    seed: u64,
    p_override: Option<f64>,
) -> Result<IsoStats> {
    if n < 16 {
        return Err(Error::Domain(format!("isolated-vertex statistics need n >= 16, got {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let ln = (n as f64).ln();
    let p = match p_override {
        Some(p) => p,
        None => {
            let m1 = m_r(n, motif, 1)?
                .to_f64()
                .ok_or_else(|| Error::Domain("m_1 not representable".into()))?;
            (ln - ln.ln()) / m1
        }
    };
    let counts: Vec<usize> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = SeededRng::new(seed, t).rng();
            Ok(sample_binomial(n, motif, p, &mut rng)?.isolated_count())
        })
        .collect::<Result<_>>()?;
    let mean = counts.iter().sum::<usize>() as f64 / trials as f64;
    let within = counts.iter().filter(|&&c| c as f64 <= 2.0 * ln).count();
    Ok(IsoStats {
        n,
        motif: motif.label(),
        p,
        ln_n: ln,
        mean,
        max: counts.iter().copied().max().unwrap_or(0),
        frac_at_most_2ln: within as f64 / trials as f64,
        counts,
    })
}

/// Exact `p_{1/2}` of the `nonempty` property: `1 - 2^(-1/N)`.
pub fn nonempty_p_half(n: usize, motif: &Motif) -> f64 {
    let total = total_copies(n, motif).to_f64().unwrap_or(f64::INFINITY);
    -(-(2f64.ln()) / total).exp_m1()
}

/// Serializable experiment description, used for `--config` files.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motif: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_grid: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rtol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ham_budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == Some(0) {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if let Some(g) = &self.p_grid {
            Grid::P(g.clone()).validate()?;
        }
        if let Some(g) = &self.m_grid {
            Grid::M(g.clone()).validate()?;
        }
        if self.p_grid.is_some() && self.m_grid.is_some() {
            return Err(Error::InvalidConfig("give either p_grid or m_grid, not both".into()));
        }
        if let Some(r) = self.rtol {
            if r.is_nan() || r <= 0.0 {
                return Err(Error::InvalidConfig("rtol must be positive".into()));
            }
        }
        Ok(())
    }

    /// Fields set in `self` win over `base`.
    pub fn or(self, base: ExperimentConfig) -> Self {
        ExperimentConfig {
            motif: self.motif.or(base.motif),
            subject: self.subject.or(base.subject),
            n: self.n.or(base.n),
            trials: self.trials.or(base.trials),
            seed: self.seed.or(base.seed),
            property: self.property.or(base.property),
            p_grid: self.p_grid.or(base.p_grid),
            m_grid: self.m_grid.or(base.m_grid),
            rtol: self.rtol.or(base.rtol),
            ham_budget: self.ham_budget.or(base.ham_budget),
            targets: self.targets.or(base.targets),
            out: self.out.or(base.out),
            csv: self.csv.or(base.csv),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::DEFAULT_BUDGET;

    fn m(spec: &str) -> Motif {
        Motif::preset(spec).unwrap()
    }

    #[test]
    fn wilson_contains_estimate() {
        for (h, t) in [(0, 10), (10, 10), (3, 7), (50, 100), (1, 1000)] {
            let (lo, hi) = wilson(h, t);
            let p = h as f64 / t as f64;
            assert!(lo <= p && p <= hi && 0.0 <= lo && hi <= 1.0);
        }
        let (lo, hi) = wilson(50, 100);
        // textbook value for 50/100
        assert!((lo - 0.4038).abs() < 1e-4 && (hi - 0.5962).abs() < 1e-4);
    }

    #[test]
    fn property_parsing() {
        assert_eq!(Property::parse("mindeg:2").unwrap(), Property::MinDegree(2));
        assert_eq!(Property::parse("ham").unwrap(), Property::Hamiltonian);
        assert_eq!(
            Property::parse("contains:triangle").unwrap().label(),
            "contains:triangle"
        );
        assert!(matches!(Property::parse("blue"), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn zero_probability_point_is_zero() {
        let cfg = CurveConfig {
            motif: m("triangle"),
            n: 30,
            trials: 20,
            seed: 1,
            property: Property::Connected,
            grid: Grid::P(vec![0.0, 1.0]),
            ham_budget: DEFAULT_BUDGET,
        };
        let pts = threshold_curve(&cfg).unwrap();
        assert_eq!(pts[0].hits, 0);
        assert_eq!(pts[1].hits, 20);
    }

    #[test]
    fn grids() {
        let g = geometric_grid(1.0);
        assert_eq!(g.len(), 7);
        assert!((g[6] / g[0] - 16.0).abs() < 1e-9);
        assert!((g[3] - 1.0).abs() < 1e-12);
        assert!(Grid::P(vec![0.1, 0.1]).validate().is_err());
        assert!(Grid::M(vec![]).validate().is_err());
        assert!(Grid::P(vec![0.1, 1.5]).validate().is_err());
        let mg = default_m_grid(150, 1.0);
        assert!(mg.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn subject_equal_to_motif_appears_at_once() {
        let r = appearance_experiment(&m("path:3"), &m("path:3"), 20, Some(vec![0, 1]), 20, 3)
            .unwrap();
        assert_eq!(r.points[0].point.hits, 0);
        assert_eq!(r.points[1].point.hits, 20);
        assert_eq!(r.exponent, "0");
    }

    #[test]
    fn full_probability_has_no_isolated_vertices() {
        let s = isolated_vertex_stats(&m("path:3"), 20, 5, 1, Some(1.0)).unwrap();
        assert_eq!(s.max, 0);
        assert!(isolated_vertex_stats(&m("path:3"), 15, 5, 1, None).is_err());
    }

    #[test]
    fn p_half_of_single_coin() {
        // n = 2, H = edge: connected iff the only edge is present.
        let cfg = PHalfConfig {
            motif: m("edge"),
            n: 2,
            trials: 4000,
            seed: 8,
            property: Property::Connected,
            rtol: 0.02,
            ham_budget: DEFAULT_BUDGET,
        };
        let r = estimate_p_half(&cfg).unwrap();
        assert!((r.p_half - 0.5).abs() < 0.05, "{}", r.p_half);
    }

    #[test]
    fn config_roundtrip_and_merge() {
        let cfg = ExperimentConfig {
            motif: Some("triangle".into()),
            n: Some(100),
            trials: Some(10),
            seed: Some(4),
            p_grid: Some(vec![0.001, 0.002]),
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
        let merged = ExperimentConfig {
            n: Some(7),
            ..Default::default()
        }
        .or(cfg.clone());
        assert_eq!(merged.n, Some(7));
        assert_eq!(merged.motif, cfg.motif);
        assert!(ExperimentConfig::from_json(r#"{"trials": 0}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn curves_are_reproducible() {
        let cfg = CurveConfig {
            motif: m("path:3"),
            n: 40,
            trials: 30,
            seed: 99,
            property: Property::PerfectMatching,
            grid: Grid::P(default_p_grid(40, &m("path:3")).unwrap()),
            ham_budget: DEFAULT_BUDGET,
        };
        let a = curve_csv(&threshold_curve(&cfg).unwrap());
        let b = curve_csv(&threshold_curve(&cfg).unwrap());
        assert_eq!(a, b);
    }
}
