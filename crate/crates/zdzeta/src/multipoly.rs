//! Sparse Laurent polynomials over F_p in several variables, used for the
//! defining polynomials of curve components.
//!
//! Text format: terms separated by ';', each term "coeff:e1,e2,...,ed",
//! e.g. "1:0,0; 1:1,0; 1:0,1" for 1 + u1 + u2.

use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    p: u64,
    nvars: usize,
    /// coefficient (nonzero mod p) and exponent vector, sorted by exponents
    terms: Vec<(u64, Vec<i64>)>,
}

impl MultiPoly {
    pub fn new(p: u64, nvars: usize, raw: Vec<(u64, Vec<i64>)>) -> Result<MultiPoly> {
        let mut terms: Vec<(u64, Vec<i64>)> = Vec::new();
        for (c, e) in raw {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: e.len() });
            }
            let c = c % p;
            if c == 0 {
                continue;
            }
            match terms.iter_mut().find(|(_, d)| *d == e) {
                Some((acc, _)) => *acc = (*acc + c) % p,
                None => terms.push((c, e)),
            }
        }
        terms.retain(|(c, _)| *c != 0);
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        Ok(MultiPoly { p, nvars, terms })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(u64, Vec<i64>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single variable u_i (0-based).
    pub fn variable(p: u64, nvars: usize, i: usize) -> MultiPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly { p, nvars, terms: vec![(1, e)] }
    }

    /// Lift a univariate polynomial g(t) to g(u_i).
    pub fn from_univariate(g: &crate::funcfield::PolyFp, nvars: usize, i: usize) -> MultiPoly {
        let p = g.characteristic();
        let terms = g
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let mut e = vec![0i64; nvars];
                e[i] = k as i64;
                (c, e)
            })
            .collect();
        MultiPoly { p, nvars, terms }
    }

    /// Reinterpret in a larger variable count (new variables unused).
    pub fn pad_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| {
                let mut e2 = e.clone();
                e2.resize(nvars, 0);
                (*c, e2)
            })
            .collect();
        MultiPoly { p: self.p, nvars, terms }
    }

    /// Substitute rational functions for the variables.
    pub fn eval(&self, args: &[RatFunc]) -> Result<RatFunc> {
        if args.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: args.len() });
        }
        let mut acc = RatFunc::zero(self.p);
        for (c, exps) in &self.terms {
            let mut term = RatFunc::from_poly(crate::funcfield::PolyFp::constant(self.p, *c));
            for (arg, &e) in args.iter().zip(exps.iter()) {
                term = term.mul(&arg.powi(e)?);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    pub fn parse(p: u64, nvars: usize, s: &str) -> Result<MultiPoly> {
        let mut raw = Vec::new();
        for term in s.split(';') {
            let term = term.trim();
            if term.is_empty() {
                continue;
            }
            let (c, e) = term
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("term {term:?} missing ':'")))?;
            let coeff: u64 = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            let exps: Vec<i64> = e
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent {x:?}")))
                })
                .collect::<Result<_>>()?;
            raw.push((coeff, exps));
        }
        if raw.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        MultiPoly::new(p, nvars, raw)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0:{}", vec!["0"; self.nvars].join(","));
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                format!("{c}:{}", exps.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::PolyFp;

    #[test]
    fn parse_eval_ledrappier_relation() {
        let f = MultiPoly::parse(2, 2, "1:0,0; 1:1,0; 1:0,1").unwrap();
        let t = RatFunc::t(2);
        let t1 = RatFunc::from_poly(PolyFp::parse(2, "1,1").unwrap());
        // 1 + t + (t+1) = 0 over F_2
        assert!(f.eval(&[t.clone(), t1]).unwrap().is_zero());
        assert!(!f.eval(&[t.clone(), t]).unwrap().is_zero());
    }

    #[test]
    fn combines_duplicate_terms() {
        let f = MultiPoly::parse(3, 1, "2:1; 2:1").unwrap();
        assert_eq!(f.terms(), &[(1, vec![1])]);
        let g = MultiPoly::parse(2, 1, "1:1; 1:1; 1:0").unwrap();
        assert_eq!(g.terms(), &[(1, vec![0])]);
    }

    #[test]
    fn display_roundtrip() {
        let f = MultiPoly::parse(2, 2, "1:0,0; 1:1,0; 1:0,1").unwrap();
        let again = MultiPoly::parse(2, 2, &f.to_string()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn negative_exponents_evaluate() {
        let f = MultiPoly::parse(5, 1, "1:-1").unwrap();
        let t = RatFunc::t(5);
        let v = f.eval(&[t]).unwrap();
        assert_eq!(v.to_coeff_string(), "1/0,1");
    }
}
