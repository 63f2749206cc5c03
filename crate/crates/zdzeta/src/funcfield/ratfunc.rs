//! Rational functions over F_p(t), places, and normalized absolute values.
//!
//! A place is either a monic irreducible polynomial or the degree-one
//! infinite place. Absolute values are kept as integer exponents of p,
//! normalized so the product over all places of |f|_v is exactly 1.

use super::factor::{factor, is_irreducible};
use super::poly::PolyFp;
use crate::error::{Error, Result};
use std::fmt;

/// Element of F_p(t) in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: PolyFp,
    den: PolyFp,
}

impl RatFunc {
    pub fn new(num: PolyFp, den: PolyFp) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.characteristic(), den.characteristic());
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if !den.is_monic() {
            // divide both by the leading unit of the denominator
            let p = den.characteristic();
            let inv = mod_pow(den.leading_coeff(), p - 2, p);
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(num: PolyFp) -> RatFunc {
        let p = num.characteristic();
        RatFunc { num, den: PolyFp::one(p) }
    }

    pub fn t(p: u64) -> RatFunc {
        RatFunc::from_poly(PolyFp::t(p))
    }

    pub fn one(p: u64) -> RatFunc {
        RatFunc::from_poly(PolyFp::one(p))
    }

    pub fn zero(p: u64) -> RatFunc {
        RatFunc::from_poly(PolyFp::zero(p))
    }

    pub fn characteristic(&self) -> u64 {
        self.num.characteristic()
    }

    pub fn num(&self) -> &PolyFp {
        &self.num
    }

    pub fn den(&self) -> &PolyFp {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(c) if the function is the constant c.
    pub fn as_constant(&self) -> Option<u64> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn inverse(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    /// Integer power, negative exponents allowed for nonzero functions.
    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        if e < 0 {
            return self.inverse()?.powi(-e);
        }
        Ok(RatFunc::new(self.num.pow(e as u64), self.den.pow(e as u64)))
    }

    pub fn sub_one(&self) -> RatFunc {
        self.sub(&RatFunc::one(self.characteristic()))
    }

    /// max(deg num, deg den): the exponent of the global height of the
    /// function, used in growth bounds.
    pub fn height_deg(&self) -> i64 {
        self.num.deg_i64().max(self.den.deg_i64())
    }

    /// Parse "num/den" (or just "num") in comma-coefficient format.
    pub fn parse(p: u64, s: &str) -> Result<RatFunc> {
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(RatFunc::from_poly(PolyFp::parse(p, s)?)),
            Some((n, d)) => {
                let den = PolyFp::parse(p, d)?;
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(RatFunc::new(PolyFp::parse(p, n)?, den))
            }
        }
    }

    pub fn to_coeff_string(&self) -> String {
        if self.den.is_one() {
            self.num.to_coeff_string()
        } else {
            format!("{}/{}", self.num.to_coeff_string(), self.den.to_coeff_string())
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A place of F_p(t): a monic irreducible polynomial or the infinite place.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Place {
    p: u64,
    kind: PlaceKind,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PlaceKind {
    Finite(PolyFp),
    Infinity,
}

impl Place {
    pub fn infinity(p: u64) -> Place {
        Place { p, kind: PlaceKind::Infinity }
    }

    pub fn finite(g: PolyFp) -> Place {
        debug_assert!(g.is_monic() && is_irreducible(&g), "place must be monic irreducible");
        Place { p: g.characteristic(), kind: PlaceKind::Finite(g) }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, PlaceKind::Infinity)
    }

    /// Residue degree; the infinite place has degree 1.
    pub fn degree(&self) -> i64 {
        match &self.kind {
            PlaceKind::Infinity => 1,
            PlaceKind::Finite(g) => g.deg_i64(),
        }
    }

    /// Parse "inf" or a polynomial in coefficient format; finite places are
    /// normalized to monic and must be irreducible.
    pub fn parse(p: u64, s: &str) -> Result<Place> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Place::infinity(p));
        }
        let g = PolyFp::parse(p, s)?.monic();
        if g.is_constant() || !is_irreducible(&g) {
            return Err(Error::Parse(format!("{g} is not irreducible over F_{p}")));
        }
        Ok(Place::finite(g))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Infinity => write!(f, "inf"),
            PlaceKind::Finite(g) => write!(f, "({g})"),
        }
    }
}

/// Valuation of a nonzero rational function at a place. At the infinite
/// place this is deg(den) - deg(num); at a finite place it is the
/// multiplicity in the numerator minus that in the denominator.
pub fn ord_at(f: &RatFunc, v: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(match v.kind() {
        PlaceKind::Infinity => f.den().deg_i64() - f.num().deg_i64(),
        PlaceKind::Finite(g) => {
            f.num().ord_of_factor(g) as i64 - f.den().ord_of_factor(g) as i64
        }
    })
}

/// Normalized absolute value |f|_v = p^(-deg(v) * ord_v(f)), returned as the
/// exact exponent of p. The normalization makes prod_v |f|_v = 1.
pub fn abs_exponent_at(f: &RatFunc, v: &Place) -> Result<i64> {
    Ok(-v.degree() * ord_at(f, v)?)
}

/// All places with nonzero valuation on f, each paired with its valuation.
/// The degree-weighted valuations over this support sum to zero.
pub fn support(f: &RatFunc) -> Result<Vec<(Place, i64)>> {
    if f.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let p = f.characteristic();
    let mut out = Vec::new();
    for (g, m) in factor(f.num())? {
        out.push((Place::finite(g), m as i64));
    }
    if !f.den().is_one() {
        for (g, m) in factor(f.den())? {
            match out.iter_mut().find(|(pl, _)| matches!(pl.kind(), PlaceKind::Finite(h) if *h == g)) {
                Some((_, e)) => *e -= m as i64,
                None => out.push((Place::finite(g), -(m as i64))),
            }
        }
        out.retain(|(_, e)| *e != 0);
    }
    let at_inf = f.den().deg_i64() - f.num().deg_i64();
    if at_inf != 0 {
        out.push((Place::infinity(p), at_inf));
    }
    Ok(out)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    // These witnesses decide primality for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a, m);
        }
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    r
}

/// Multiplicative order of p modulo a prime q != p; always divides q - 1.
pub fn mult_order(p: u64, q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == q {
        return Err(Error::EqualPrimes(p));
    }
    Ok(order_in_group(p % q, q - 1, |a, b| mod_mul(*a, *b, q), 1))
}

/// Order of an element given the group order: divide out prime factors of
/// `group_order` while the power stays at the identity.
fn order_in_group<T: Clone + Eq>(
    elt: T,
    group_order: u64,
    mul: impl Fn(&T, &T) -> T + Copy,
    identity: T,
) -> u64 {
    fn pow<T: Clone>(mut b: T, mut e: u64, mul: impl Fn(&T, &T) -> T, id: T) -> T {
        let mut acc = id;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(&acc, &b);
            }
            b = mul(&b, &b);
            e >>= 1;
        }
        acc
    }
    let mul_ref = |a: &T, b: &T| mul(a, b);
    let mut ord = group_order;
    for f in factor_u64(group_order) {
        while ord.is_multiple_of(f)
            && pow(elt.clone(), ord / f, mul_ref, identity.clone()) == identity
        {
            ord /= f;
        }
    }
    ord
}

/// Prime factors of n (without multiplicity), trial division.
pub fn factor_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of the residue of r in F_p[t]/(v); requires
/// ord_v(r) = 0. The order divides p^deg(v) - 1.
pub fn residue_order(r: &RatFunc, v: &Place) -> Result<u64> {
    let g = match v.kind() {
        PlaceKind::Finite(g) => g,
        PlaceKind::Infinity => return Err(Error::NotAUnit(ord_at(r, v)?)),
    };
    let o = ord_at(r, v)?;
    if o != 0 {
        return Err(Error::NotAUnit(o));
    }
    let p = r.characteristic();
    // residue = num * den^(-1) mod g; den is invertible since ord = 0
    let dv = g.degree().unwrap() as u32;
    let group_order = p
        .checked_pow(dv)
        .expect("residue field too large for order computation")
        - 1;
    let den_inv = r.den().powmod((group_order - 1) as u128, g);
    let residue = r.num().mulmod(&den_inv, g);
    debug_assert!(residue.mulmod(r.den(), g) == r.num().rem(g));
    Ok(order_in_group(
        residue,
        group_order,
        |a, b| a.mulmod(b, g),
        PolyFp::one(p),
    ))
}

/// The p-part of n: the largest power of p dividing n.
pub fn p_part(n: u64, p: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let mut out = 1;
    let mut n = n;
    while n.is_multiple_of(p) {
        out *= p;
        n /= p;
    }
    Ok(out)
}
