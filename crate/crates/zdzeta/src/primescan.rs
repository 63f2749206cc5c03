//! Prime-index machinery: multiplicative-order thresholds, qualifying
//! prime scans, and value sets of counts at prime indices.
//!
//! A prime q qualifies for (P, eps, d) when q lies outside P and every
//! p in P has multiplicative order mod q exceeding q^(1/d + eps). The
//! comparison is decided by exact integer cross-powering, never floats.

use crate::action::{self, ActionSpec, MixingCheck};
use crate::error::{Error, Result};
use crate::factored::Factored;
use crate::funcfield::{is_prime, mult_order};
use crate::lattice;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct PrimeScanConfig {
    /// The excluded characteristics P.
    pub primes: Vec<u64>,
    /// eps as an exact positive rational (numerator, denominator).
    pub eps: (u64, u64),
    /// Dimension entering the exponent 1/d + eps.
    pub d: usize,
}

impl PrimeScanConfig {
    pub fn new(primes: Vec<u64>, eps: (u64, u64), d: usize) -> Result<PrimeScanConfig> {
        if eps.0 == 0 || eps.1 == 0 {
            return Err(Error::Parse("eps must be a positive rational".into()));
        }
        if d == 0 || d > lattice::MAX_DIM {
            return Err(Error::UnsupportedDimension(d));
        }
        for &p in &primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(PrimeScanConfig { primes, eps, d })
    }

    pub fn for_spec(spec: &ActionSpec, eps: (u64, u64)) -> Result<PrimeScanConfig> {
        PrimeScanConfig::new(spec.characteristic_primes(), eps, spec.dim())
    }

    /// The reduced exponent fraction 1/d + eps = num/den.
    fn exponent_fraction(&self) -> (u64, u64) {
        let (a, b) = self.eps;
        let num = b + self.d as u64 * a;
        let den = self.d as u64 * b;
        let g = gcd(num, den);
        (num / g, den / g)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// m > q^(num/den) decided as m^den > q^num over big integers.
fn exceeds_power(m: u64, q: u64, num: u64, den: u64) -> bool {
    BigUint::from(m).pow(den as u32) > BigUint::from(q).pow(num as u32)
}

/// True iff q is prime, lies outside P, and every p in P has
/// multiplicative order mod q above q^(1/d + eps).
pub fn qualifies(cfg: &PrimeScanConfig, q: u64) -> Result<bool> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if cfg.primes.contains(&q) {
        return Ok(false);
    }
    let (num, den) = cfg.exponent_fraction();
    for &p in &cfg.primes {
        let m = mult_order(p, q)?;
        if !exceeds_power(m, q, num, den) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub qualifying: u64,
    pub primes: u64,
    pub ratio: f64,
}

/// Exact counts of qualifying primes up to the bound; the ratio is
/// diagnostic only.
pub fn qualifying_density(cfg: &PrimeScanConfig, qmax: u64) -> Result<DensityReport> {
    if qmax < 10 {
        return Err(Error::InvalidIndex(qmax as i64));
    }
    let primes = primes_up_to(qmax);
    let mut qualifying = 0u64;
    for &q in &primes {
        if qualifies(cfg, q)? {
            qualifying += 1;
        }
    }
    Ok(DensityReport {
        qualifying,
        primes: primes.len() as u64,
        ratio: qualifying as f64 / primes.len() as f64,
    })
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let mut sieve = vec![true; (n + 1) as usize];
    let mut out = Vec::new();
    for q in 2..=n as usize {
        if sieve[q] {
            out.push(q as u64);
            let mut m = q * q;
            while m <= n as usize {
                sieve[m] = false;
                m += q;
            }
        }
    }
    out
}

/// The index threshold above which qualifying primes must have a bounded
/// value set: q0 = max over p of (sqrt(d) log C0 / log p)^(1/eps), with
/// log C0 the sharp per-index constant of the spec.
pub fn threshold_q0(spec: &ActionSpec, eps: (u64, u64)) -> f64 {
    let consts = action::bound_constants(spec);
    let d = consts.base_dim as f64;
    // sharp index bound: log F <= sqrt(d) * (M_d * ln_height) * n^(1/d)
    let ln_c0 = consts.sharp_index_bound_nats(1) / d.sqrt();
    let inv_eps = eps.1 as f64 / eps.0 as f64;
    spec.characteristic_primes()
        .iter()
        .map(|&p| (d.sqrt() * ln_c0 / (p as f64).ln()).powf(inv_eps))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeScanRow {
    pub q: u64,
    pub qualifying: bool,
    /// multiplicative order of each configured prime mod q
    pub orders: Vec<(u64, u64)>,
    /// distinct counts over the index-q subgroups, ascending
    pub values: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeScanReport {
    pub threshold_q0: f64,
    pub rows: Vec<PrimeScanRow>,
}

/// For every prime q <= qmax, the set of counts over all index-q
/// subgroups, tagged by the qualifying flag. Entropy rank one only.
pub fn prime_value_scan(spec: &ActionSpec, eps: (u64, u64), qmax: u64) -> Result<PrimeScanReport> {
    if spec.has_principal() {
        return Err(Error::NotEntropyRankOne);
    }
    if spec.dim() < 2 {
        return Err(Error::UnsupportedDimension(spec.dim()));
    }
    if let MixingCheck::Violation(witness) = action::validate_mixing(spec) {
        return Err(Error::NotMixing { witness });
    }
    let cfg = PrimeScanConfig::for_spec(spec, eps)?;
    let primes = primes_up_to(qmax);
    let rows: Vec<PrimeScanRow> = primes
        .par_iter()
        .map(|&q| -> Result<PrimeScanRow> {
            let mut values: Vec<Factored> = Vec::new();
            for s in lattice::enumerate_subgroups(spec.dim(), q)? {
                let f = action::count_fixed_unchecked(spec, &s)?;
                if !values.contains(&f) {
                    values.push(f);
                }
            }
            values.sort_by_key(|f| f.to_biguint());
            let orders = cfg
                .primes
                .iter()
                .filter(|&&p| p != q)
                .map(|&p| Ok((p, mult_order(p, q)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(PrimeScanRow {
                q,
                qualifying: qualifies(&cfg, q)?,
                orders,
                values: values.iter().map(|f| f.to_string()).collect(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(PrimeScanReport { threshold_q0: threshold_q0(spec, eps), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn cfg2() -> PrimeScanConfig {
        PrimeScanConfig::new(vec![2], (1, 10), 2).unwrap()
    }

    #[test]
    fn qualifies_examples() {
        // m_2(5) = 4 > 5^0.6; exact form 4^5 > 5^3
        assert!(qualifies(&cfg2(), 5).unwrap());
        // m_2(7) = 3 < 7^0.6; exact form 3^5 < 7^3
        assert!(!qualifies(&cfg2(), 7).unwrap());
        // members of P never qualify
        assert!(!qualifies(&cfg2(), 2).unwrap());
        assert!(matches!(qualifies(&cfg2(), 9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn exponent_fraction_reduces() {
        assert_eq!(cfg2().exponent_fraction(), (3, 5));
        let c = PrimeScanConfig::new(vec![2], (1, 20), 3).unwrap();
        // 1/3 + 1/20 = 23/60
        assert_eq!(c.exponent_fraction(), (23, 60));
    }

    #[test]
    fn density_reports() {
        let r = qualifying_density(&cfg2(), 1000).unwrap();
        assert!(r.qualifying > 0);
        assert!(r.ratio > 0.0 && r.ratio <= 1.0);

        let d3 = PrimeScanConfig::new(vec![2], (1, 20), 3).unwrap();
        let r3 = qualifying_density(&d3, 1000).unwrap();
        assert!(r3.ratio > r.ratio, "d = 3 scan should qualify more primes");

        let empty = PrimeScanConfig::new(vec![], (1, 10), 2).unwrap();
        let re = qualifying_density(&empty, 100).unwrap();
        assert_eq!(re.qualifying, re.primes);
    }

    #[test]
    fn subgroup_counts_at_primes() {
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            assert_eq!(lattice::enumerate_subgroups(2, q).unwrap().len() as u64, q + 1);
            assert_eq!(
                lattice::enumerate_subgroups(3, q).unwrap().len() as u64,
                q * q + q + 1
            );
        }
    }

    #[test]
    fn ledrappier_threshold_near_literature_constant() {
        let q0 = threshold_q0(&presets::ledrappier(), (1, 10));
        // (2 sqrt(2/pi))^10
        let expected = (2.0 * (2.0 / std::f64::consts::PI).sqrt()).powi(10);
        assert!((q0 - expected).abs() < 1e-9);
        assert!(q0 > 100.0 && q0 < 120.0);
    }

    #[test]
    fn ledrappier_scan_small() {
        let report = prime_value_scan(&presets::ledrappier(), (1, 10), 7).unwrap();
        let q3 = report.rows.iter().find(|r| r.q == 3).unwrap();
        assert_eq!(q3.values, vec!["1", "2^2"]);
        assert!(q3.qualifying); // m_2(3) = 2 > 3^0.6
        let q7 = report.rows.iter().find(|r| r.q == 7).unwrap();
        assert!(!q7.qualifying);
        assert_eq!(q7.orders, vec![(2, 3)]);
    }

    #[test]
    fn principal_rejected() {
        assert!(matches!(
            prime_value_scan(&presets::mixed(), (1, 10), 20),
            Err(Error::NotEntropyRankOne)
        ));
    }
}
