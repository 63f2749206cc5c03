//! Factorization over F_p: squarefree decomposition, distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting.
//!
//! The equal-degree stage draws its splitting elements from a ChaCha stream
//! seeded by the polynomial itself, so factor lists are stable across runs.

use super::poly::PolyFp;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Full factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients). The leading unit is
/// dropped; multiply factors and rescale to recover the input.
pub fn factor(f: &PolyFp) -> Result<Vec<(PolyFp, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(PolyFp, u32)> = Vec::new();
    for (sf, mult) in squarefree_decomposition(&f.monic()) {
        for (g, d) in distinct_degree(&sf) {
            for irr in equal_degree(&g, d) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs())
            .cmp(&(b.0.degree(), b.0.coeffs()))
    });
    Ok(out)
}

/// Rabin irreducibility test.
pub fn is_irreducible(f: &PolyFp) -> bool {
    let p = f.characteristic();
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let t = PolyFp::t(p);
    // frob[k] = t^(p^k) mod f
    let mut frob = t.clone();
    let mut frob_at = vec![t.clone()];
    for _ in 0..n {
        frob = frob.powmod(p as u128, &f);
        frob_at.push(frob.clone());
    }
    if frob_at[n] != t.rem(&f) {
        return false;
    }
    for r in prime_divisors(n as u64) {
        let k = n / r as usize;
        let g = frob_at[k].sub(&t).gcd(&f);
        if !g.is_one() {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

/// Squarefree decomposition of a monic polynomial: returns pairs
/// (squarefree part, multiplicity) whose product with multiplicities is the
/// input. Handles the p-th power collapse of characteristic p.
fn squarefree_decomposition(f: &PolyFp) -> Vec<(PolyFp, u32)> {
    let p = f.characteristic();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f is a p-th power: coefficients sit at indices divisible by p.
        let root = pth_root(f);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut d = f.gcd(&deriv);
    let mut w = f.div_exact(&d).monic();
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&d);
        let z = w.div_exact(&y).monic();
        if !z.is_constant() {
            out.push((z, i));
        }
        w = y;
        d = d.div_exact(&w).monic();
        i += 1;
    }
    if !d.is_constant() {
        let root = pth_root(&d);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn pth_root(f: &PolyFp) -> PolyFp {
    let p = f.characteristic() as usize;
    // In F_p the Frobenius fixes scalars, so c^(1/p) = c.
    let coeffs: Vec<u64> = f.coeffs().iter().step_by(p).copied().collect();
    PolyFp::new(f.characteristic(), coeffs)
}

/// Distinct-degree stage: splits a monic squarefree polynomial into products
/// of irreducibles of equal degree, returned as (product, degree).
fn distinct_degree(f: &PolyFp) -> Vec<(PolyFp, usize)> {
    let p = f.characteristic();
    let mut f = f.monic();
    let t = PolyFp::t(p);
    let mut h = t.rem(&f);
    let mut out = Vec::new();
    let mut d = 0usize;
    loop {
        let deg = match f.degree() {
            None | Some(0) => break,
            Some(n) => n,
        };
        d += 1;
        if 2 * d > deg {
            out.push((f.clone(), deg));
            break;
        }
        h = h.powmod(p as u128, &f);
        let g = h.sub(&t).gcd(&f);
        if !g.is_constant() {
            out.push((g.clone(), d));
            f = f.div_exact(&g).monic();
            h = h.rem(&f);
        }
    }
    out
}

/// Equal-degree stage: factors a monic squarefree product of irreducibles
/// all of degree d.
fn equal_degree(f: &PolyFp, d: usize) -> Vec<PolyFp> {
    let deg = f.degree().unwrap_or(0);
    if deg == d {
        return vec![f.monic()];
    }
    let p = f.characteristic();
    let mut rng = rng_for(f);
    loop {
        let a = random_poly(&mut rng, p, deg);
        if a.is_constant() {
            continue;
        }
        let g = if p == 2 {
            // Trace map over GF(2^d): a + a^2 + ... + a^(2^(d-1)).
            let mut tr = a.clone().rem(f);
            let mut pw = a.rem(f);
            for _ in 1..d {
                pw = pw.mulmod(&pw, f);
                tr = tr.add(&pw);
            }
            tr.gcd(f)
        } else {
            // a^((p^d - 1)/2) is +-1 on each irreducible factor.
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = powmod_big(&a, &e, f);
            b.sub(&PolyFp::one(p)).gcd(f)
        };
        if !g.is_constant() && g.degree() != f.degree() {
            let mut left = equal_degree(&g, d);
            let right = equal_degree(&f.div_exact(&g).monic(), d);
            left.extend(right);
            return left;
        }
    }
}

fn powmod_big(a: &PolyFp, e: &BigUint, m: &PolyFp) -> PolyFp {
    let p = a.characteristic();
    let mut acc = PolyFp::one(p);
    let mut base = a.rem(m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mulmod(&base, m);
        }
        base = base.mulmod(&base, m);
    }
    acc
}

fn rng_for(f: &PolyFp) -> ChaCha8Rng {
    // FNV-style fold of the coefficients; any stable seed works.
    let mut h: u64 = 0xcbf29ce484222325 ^ f.characteristic();
    for &c in f.coeffs() {
        h = (h ^ c).wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, max_deg: usize) -> PolyFp {
    let deg = rng.gen_range(1..max_deg.max(2));
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    PolyFp::new(p, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refactor_check(f: &PolyFp) {
        let factors = factor(f).unwrap();
        let mut prod = PolyFp::constant(f.characteristic(), f.leading_coeff());
        for (g, m) in &factors {
            assert!(is_irreducible(g), "reported factor {g} is reducible");
            assert!(g.is_monic());
            prod = prod.mul(&g.pow(*m as u64));
        }
        assert_eq!(&prod, f);
    }

    #[test]
    fn factor_t3_minus_one_f2() {
        let f = PolyFp::tn_minus_one(2, 3);
        let factors = factor(&f).unwrap();
        assert_eq!(
            factors,
            vec![
                (PolyFp::parse(2, "1,1").unwrap(), 1),
                (PolyFp::parse(2, "1,1,1").unwrap(), 1),
            ]
        );
        refactor_check(&f);
    }

    #[test]
    fn factor_t4_minus_one_f2() {
        let f = PolyFp::tn_minus_one(2, 4);
        let factors = factor(&f).unwrap();
        assert_eq!(factors, vec![(PolyFp::parse(2, "1,1").unwrap(), 4)]);
    }

    #[test]
    fn factor_t_f3() {
        let f = PolyFp::t(3);
        assert_eq!(factor(&f).unwrap(), vec![(PolyFp::t(3), 1)]);
    }

    #[test]
    fn cyclotomic_degrees_2_7() {
        // t^7 - 1 over F_2: one linear factor plus (7-1)/3 = 2 cubics.
        let f = PolyFp::tn_minus_one(2, 7);
        let factors = factor(&f).unwrap();
        let degs: Vec<usize> = factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 3, 3]);
        refactor_check(&f);
    }

    #[test]
    fn factor_various_remultiply() {
        for (p, coeffs) in [
            (2u64, vec![1u64, 0, 1, 1, 0, 0, 1, 1]),
            (3, vec![2, 1, 0, 2, 1]),
            (5, vec![1, 4, 0, 0, 3, 2]),
            (3, vec![0, 0, 2, 1]), // divisible by t^2
        ] {
            refactor_check(&PolyFp::new(p, coeffs));
        }
    }

    #[test]
    fn factor_zero_rejected() {
        assert_eq!(factor(&PolyFp::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn irreducibility_known_cases() {
        assert!(is_irreducible(&PolyFp::parse(2, "1,1,1").unwrap()));
        assert!(is_irreducible(&PolyFp::parse(2, "1,1,0,1").unwrap()));
        assert!(!is_irreducible(&PolyFp::tn_minus_one(2, 3)));
        assert!(!is_irreducible(&PolyFp::one(2)));
        // t^2+1 = (t+2)(t+3) over F_5
        assert!(!is_irreducible(&PolyFp::new(5, vec![1, 0, 1])));
        assert!(is_irreducible(&PolyFp::new(3, vec![1, 0, 1])));
    }

    #[test]
    fn deterministic_output() {
        let f = PolyFp::tn_minus_one(3, 16);
        assert_eq!(factor(&f).unwrap(), factor(&f).unwrap());
    }

    #[test]
    fn cyclotomic_degree_law() {
        // t^q - 1 for prime q != p: one linear factor and (q-1)/m irreducibles
        // of degree m, with m the multiplicative order of p mod q
        for p in [2u64, 3] {
            for q in (3u64..100).filter(|&q| super::super::ratfunc::is_prime(q) && q != p) {
                let m = super::super::ratfunc::mult_order(p, q).unwrap() as usize;
                let factors = factor(&PolyFp::tn_minus_one(p, q as usize)).unwrap();
                let linear = factors.iter().filter(|(g, _)| g.degree() == Some(1)).count();
                let deg_m = factors.iter().filter(|(g, _)| g.degree() == Some(m)).count();
                assert_eq!(linear, if m == 1 { 1 + (q as usize - 1) } else { 1 });
                if m > 1 {
                    assert_eq!(deg_m, (q as usize - 1) / m, "(p,q) = ({p},{q})");
                    assert_eq!(factors.len(), 1 + (q as usize - 1) / m);
                }
                assert!(factors.iter().all(|(_, mult)| *mult == 1));
            }
        }
    }
}
