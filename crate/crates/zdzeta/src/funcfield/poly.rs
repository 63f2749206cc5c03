//! Dense univariate polynomials over a prime field F_p.
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so
//! the zero polynomial is the empty vector. Characteristic 2 work is routed
//! through the bit-packed representation in [`super::gf2`].

use super::gf2::Gf2Poly;
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    /// Build from ascending coefficients, reducing mod p and trimming.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(p >= 2);
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        PolyFp::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        PolyFp::new(p, vec![c])
    }

    /// The coordinate polynomial t.
    pub fn t(p: u64) -> Self {
        PolyFp::new(p, vec![0, 1])
    }

    /// c * t^k
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        PolyFp::new(p, coeffs)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg(0) = -1, handy in valuation arithmetic.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    fn check_char(&self, other: &PolyFp) {
        assert_eq!(self.p, other.p, "mixed characteristics");
    }

    pub fn add(&self, other: &PolyFp) -> PolyFp {
        self.check_char(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        PolyFp::new(self.p, coeffs)
    }

    pub fn neg(&self) -> PolyFp {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        PolyFp::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &PolyFp) -> PolyFp {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> PolyFp {
        let c = c % self.p;
        let coeffs = self.coeffs.iter().map(|&a| a * c % self.p).collect();
        PolyFp::new(self.p, coeffs)
    }

    pub fn mul(&self, other: &PolyFp) -> PolyFp {
        self.check_char(other);
        if self.is_zero() || other.is_zero() {
            return PolyFp::zero(self.p);
        }
        if self.p == 2 && self.coeffs.len().min(other.coeffs.len()) > 8 {
            let a = Gf2Poly::from_coeffs(&self.coeffs);
            let b = Gf2Poly::from_coeffs(&other.coeffs);
            return PolyFp::new(2, a.mul(&b).to_coeffs());
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        PolyFp::new(self.p, out)
    }

    pub fn pow(&self, mut e: u64) -> PolyFp {
        let mut base = self.clone();
        let mut acc = PolyFp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn inv_mod_p(&self, a: u64) -> u64 {
        // Fermat; p is prime throughout the engine.
        let mut r = 1u64;
        let mut b = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, m: &PolyFp) -> (PolyFp, PolyFp) {
        self.check_char(m);
        let dm = m.degree().expect("division by zero polynomial");
        if self.p == 2 && self.coeffs.len() > 16 {
            let a = Gf2Poly::from_coeffs(&self.coeffs);
            let b = Gf2Poly::from_coeffs(&m.coeffs);
            let (q, r) = a.divrem(&b);
            return (PolyFp::new(2, q.to_coeffs()), PolyFp::new(2, r.to_coeffs()));
        }
        let inv_lead = self.inv_mod_p(m.leading_coeff());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dm)];
        while rem.len() > dm {
            let dr = rem.len() - 1;
            let c = rem[dr] * inv_lead % self.p;
            if c != 0 {
                quot[dr - dm] = c;
                for (k, &mc) in m.coeffs.iter().enumerate() {
                    let idx = dr - dm + k;
                    let sub = c * mc % self.p;
                    rem[idx] = (rem[idx] + self.p - sub) % self.p;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (PolyFp::new(self.p, quot), PolyFp::new(self.p, rem))
    }

    pub fn rem(&self, m: &PolyFp) -> PolyFp {
        self.divrem(m).1
    }

    /// Exact division; panics if `m` does not divide `self`.
    pub fn div_exact(&self, m: &PolyFp) -> PolyFp {
        let (q, r) = self.divrem(m);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Multiplicity of the factor `m` in `self` (0 if coprime).
    pub fn ord_of_factor(&self, m: &PolyFp) -> u32 {
        assert!(!self.is_zero() && !m.is_constant());
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(m);
            if !r.is_zero() {
                return k;
            }
            k += 1;
            cur = q;
            if cur.is_constant() {
                return k;
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &PolyFp) -> PolyFp {
        self.check_char(other);
        if self.p == 2 {
            let a = Gf2Poly::from_coeffs(&self.coeffs);
            let b = Gf2Poly::from_coeffs(&other.coeffs);
            return PolyFp::new(2, a.gcd(&b).to_coeffs());
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> PolyFp {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.inv_mod_p(self.leading_coeff()))
    }

    pub fn derivative(&self) -> PolyFp {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % self.p) * c % self.p)
            .collect();
        PolyFp::new(self.p, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c) % self.p;
        }
        acc
    }

    /// self * other mod m
    pub fn mulmod(&self, other: &PolyFp, m: &PolyFp) -> PolyFp {
        self.mul(other).rem(m)
    }

    /// self^e mod m
    pub fn powmod(&self, mut e: u128, m: &PolyFp) -> PolyFp {
        let mut base = self.rem(m);
        let mut acc = PolyFp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// t^n - 1 over F_p.
    pub fn tn_minus_one(p: u64, n: usize) -> PolyFp {
        let mut coeffs = vec![0u64; n + 1];
        coeffs[0] = p - 1;
        coeffs[n] = 1;
        PolyFp::new(p, coeffs)
    }

    /// Parse the comma-separated ascending-coefficient format, e.g. "1,1,1"
    /// for 1 + t + t^2.
    pub fn parse(p: u64, s: &str) -> Result<PolyFp> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial string".into()));
        }
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let c: u64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {part:?}")))?;
            coeffs.push(c);
        }
        Ok(PolyFp::new(p, coeffs))
    }

    /// The inverse of [`PolyFp::parse`]: "0" for zero, else ascending coefficients.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFp(p={}, {})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = PolyFp::parse(2, "1,1").unwrap(); // 1+t
        let q = PolyFp::parse(2, "1,1,1").unwrap(); // 1+t+t^2
        assert_eq!(p.mul(&q), PolyFp::tn_minus_one(2, 3));
        assert_eq!(p.mul(&q).gcd(&p), p);
        let (d, r) = PolyFp::tn_minus_one(2, 3).divrem(&q);
        assert_eq!(d, p);
        assert!(r.is_zero());
    }

    #[test]
    fn char3_division() {
        // (t+2)(t+1) = t^2 + 3t + 2 = t^2 + 2 over F_3
        let a = PolyFp::new(3, vec![2, 1]);
        let b = PolyFp::new(3, vec![1, 1]);
        let prod = a.mul(&b);
        assert_eq!(prod, PolyFp::new(3, vec![2, 0, 1]));
        assert_eq!(prod.div_exact(&a), b);
        assert_eq!(prod.gcd(&a), a.monic());
    }

    #[test]
    fn ord_of_factor_counts_multiplicity() {
        let f = PolyFp::parse(2, "1,1").unwrap().pow(4); // (1+t)^4 = 1+t^4
        assert_eq!(f, PolyFp::tn_minus_one(2, 4));
        assert_eq!(f.ord_of_factor(&PolyFp::parse(2, "1,1").unwrap()), 4);
        assert_eq!(f.ord_of_factor(&PolyFp::parse(2, "1,1,1").unwrap()), 0);
    }

    #[test]
    fn powmod_matches_pow() {
        let m = PolyFp::parse(5, "1,0,0,1").unwrap();
        let t = PolyFp::t(5);
        assert_eq!(t.powmod(17, &m), t.pow(17).rem(&m));
    }

    #[test]
    fn parse_roundtrip() {
        let f = PolyFp::parse(3, "2,0,1").unwrap();
        assert_eq!(f.to_coeff_string(), "2,0,1");
        assert_eq!(f.to_string(), "t^2+2");
        assert!(PolyFp::parse(2, "").is_err());
        assert!(PolyFp::parse(2, "1,x").is_err());
    }
}
