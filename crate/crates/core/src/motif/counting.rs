//! Exact copy counts and the degree-threshold parameters derived from them.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::Motif;
use crate::combin::binomial_big;
use crate::error::{Error, Result};

/// Number of copies of `motif` in `K_n`: `C(n,k) * k! / aut`.
pub fn total_copies(n: usize, motif: &Motif) -> BigUint {
    binomial_big(n, motif.k()) * motif.embeddings().len()
}

/// Copies of `motif` in `K_n` meeting the vertex set `{0, .., r-1}`.
pub fn m_r(n: usize, motif: &Motif, r: usize) -> Result<BigUint> {
    if r > n {
        return Err(Error::Range { r, n });
    }
    let k = motif.k();
    Ok((binomial_big(n, k) - binomial_big(n - r, k)) * motif.embeddings().len())
}

/// Copies meeting `{0, .., r-1}` without being contained in it.
pub fn q_r(n: usize, motif: &Motif, r: usize) -> Result<BigUint> {
    if r > n {
        return Err(Error::Range { r, n });
    }
    let k = motif.k();
    let outside = binomial_big(n - r, k) + binomial_big(r, k);
    Ok((binomial_big(n, k) - outside) * motif.embeddings().len())
}

/// `f_k(a) = (1 - (1-a)^k - a^k) / (k a)`.
pub fn f_k(alpha: f64, k: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("f_k needs 0 < alpha <= 1, got {alpha}")));
    }
    if k < 2 {
        return Err(Error::Domain(format!("f_k needs k >= 2, got {k}")));
    }
    let k_i = k as i32;
    Ok((1.0 - (1.0 - alpha).powi(k_i) - alpha.powi(k_i)) / (k as f64 * alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdParams {
    pub n: usize,
    pub d: usize,
    /// `ceil(d / min_deg(H)) - 1`
    pub delta_d: usize,
    pub x_of_n: f64,
    pub p_minus: f64,
    pub p_plus: f64,
}

impl ThresholdParams {
    pub fn default_x(n: usize) -> f64 {
        (n as f64).ln().ln().sqrt()
    }

    /// True when `0 < p_minus < p_plus < 1`; fails only for very small `n`.
    pub fn is_admissible(&self) -> bool {
        0.0 < self.p_minus && self.p_minus < self.p_plus && self.p_plus < 1.0
    }
}

/// `p_d^{+-} = (ln n + delta_d ln ln n +- x(n)) / m_1`, with
/// `x(n) = sqrt(ln ln n)` unless overridden.
pub fn threshold_params(
    n: usize,
    motif: &Motif,
    d: usize,
    x_of_n: Option<f64>,
) -> Result<ThresholdParams> {
    if n < 3 {
        return Err(Error::Domain(format!("threshold parameters need n >= 3, got {n}")));
    }
    if d < 1 {
        return Err(Error::Domain("threshold parameters need d >= 1".into()));
    }
    let delta_d = d.div_ceil(motif.min_deg()) - 1;
    let x = x_of_n.unwrap_or_else(|| ThresholdParams::default_x(n));
    let m1 = m_r(n, motif, 1)?
        .to_f64()
        .ok_or_else(|| Error::Domain("m_1 not representable".into()))?;
    let ln = (n as f64).ln();
    let base = ln + delta_d as f64 * ln.ln();
    Ok(ThresholdParams {
        n,
        d,
        delta_d,
        x_of_n: x,
        p_minus: (base - x) / m1,
        p_plus: (base + x) / m1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::Motif;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn copy_totals() {
        let p3 = Motif::preset("path:3").unwrap();
        let k3 = Motif::preset("triangle").unwrap();
        assert_eq!(total_copies(4, &p3), big(12));
        assert_eq!(total_copies(5, &k3), big(10));
        assert_eq!(total_copies(2, &k3), big(0));
    }

    #[test]
    fn m_and_q_examples() {
        let e = Motif::preset("edge").unwrap();
        let k3 = Motif::preset("triangle").unwrap();
        for n in 2..20 {
            assert_eq!(m_r(n, &e, 1).unwrap(), big(n as u64 - 1));
        }
        assert_eq!(m_r(5, &k3, 1).unwrap(), big(6));
        assert_eq!(q_r(4, &e, 2).unwrap(), big(4));
        assert_eq!(m_r(5, &k3, 0).unwrap(), big(0));
        assert_eq!(m_r(5, &k3, 5).unwrap(), total_copies(5, &k3));
        assert_eq!(m_r(5, &k3, 6), Err(Error::Range { r: 6, n: 5 }));
        assert_eq!(q_r(5, &k3, 6), Err(Error::Range { r: 6, n: 5 }));
    }

    #[test]
    fn f_k_values() {
        assert!((f_k(0.5, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!((f_k(0.25, 2).unwrap() - 0.75).abs() < 1e-15);
        assert!((f_k(0.5, 3).unwrap() - 0.5).abs() < 1e-15);
        assert!(f_k(0.0, 3).is_err());
        assert!(f_k(-0.1, 3).is_err());
        assert!(f_k(0.5, 1).is_err());
        // the whole vertex set: no copy can straddle it
        assert_eq!(f_k(1.0, 4).unwrap(), 0.0);
    }

    #[test]
    fn threshold_examples() {
        let e = Motif::preset("edge").unwrap();
        let n = 1000usize;
        let t = threshold_params(n, &e, 1, None).unwrap();
        let ln = (n as f64).ln();
        let x = ln.ln().sqrt();
        assert_eq!(t.delta_d, 0);
        assert!((t.p_minus - (ln - x) / 999.0).abs() < 1e-15);
        assert!((t.p_plus - (ln + x) / 999.0).abs() < 1e-15);
        assert!(t.is_admissible());

        let k3 = Motif::preset("triangle").unwrap();
        assert_eq!(threshold_params(50, &k3, 2, None).unwrap().delta_d, 0);
        let p3 = Motif::preset("path:3").unwrap();
        assert_eq!(threshold_params(50, &p3, 2, None).unwrap().delta_d, 1);
        assert!(threshold_params(2, &p3, 1, None).is_err());
        let custom = threshold_params(50, &p3, 1, Some(0.5)).unwrap();
        assert_eq!(custom.x_of_n, 0.5);
    }
}
