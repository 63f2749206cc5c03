//! Exact integers (and rationals) kept in factored form `prod p^e`.
//!
//! Periodic-point counts live in the multiplicative group generated by the
//! characteristics of the action, so a map `prime -> exponent` represents
//! them without ever leaving exact arithmetic. Negative exponents appear
//! only in entropy-normalized quantities.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// A positive rational of the form `prod p^{e_p}` with `e_p` in `Z`.
/// Counts always have all exponents nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factored {
    exps: BTreeMap<u64, i64>,
}

impl Factored {
    pub fn one() -> Self {
        Factored { exps: BTreeMap::new() }
    }

    pub fn from_pow(p: u64, e: i64) -> Self {
        let mut f = Factored::one();
        f.mul_pow(p, e);
        f
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Multiply by `p^e` in place.
    pub fn mul_pow(&mut self, p: u64, e: i64) {
        if e == 0 {
            return;
        }
        let entry = self.exps.entry(p).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.exps.remove(&p);
        }
    }

    pub fn mul(&mut self, other: &Factored) {
        for (&p, &e) in &other.exps {
            self.mul_pow(p, e);
        }
    }

    pub fn pow(&self, k: i64) -> Factored {
        let mut out = Factored::one();
        for (&p, &e) in &self.exps {
            out.mul_pow(p, e * k);
        }
        out
    }

    pub fn exponent(&self, p: u64) -> i64 {
        self.exps.get(&p).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exps.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_integral(&self) -> bool {
        self.exps.values().all(|&e| e >= 0)
    }

    /// Exact value as a big integer. Panics on negative exponents; callers
    /// dealing with rationals must split via [`Factored::numer_denom`].
    pub fn to_biguint(&self) -> BigUint {
        assert!(self.is_integral(), "factored value has negative exponents");
        let mut v = BigUint::one();
        for (&p, &e) in &self.exps {
            v *= BigUint::from(p).pow(e as u32);
        }
        v
    }

    pub fn numer_denom(&self) -> (BigUint, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (&p, &e) in &self.exps {
            if e >= 0 {
                num *= BigUint::from(p).pow(e as u32);
            } else {
                den *= BigUint::from(p).pow((-e) as u32);
            }
        }
        (num, den)
    }

    /// Natural logarithm, for diagnostics only.
    pub fn ln(&self) -> f64 {
        self.exps
            .iter()
            .map(|(&p, &e)| e as f64 * (p as f64).ln())
            .sum()
    }

    /// True if `self` divides `other` (both must be integral).
    pub fn divides(&self, other: &Factored) -> bool {
        self.exps
            .iter()
            .all(|(p, &e)| e <= other.exponent(*p))
    }

    /// Render in decimal. Negative exponents render as "num/den".
    pub fn to_decimal_string(&self) -> String {
        let (num, den) = self.numer_denom();
        if den.is_one() {
            num.to_string()
        } else {
            format!("{num}/{den}")
        }
    }
}

impl fmt::Display for Factored {
    /// Factored rendering, e.g. `2^5*3^2`, `2^-3`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(&p, &e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
