//! Finite-index subgroups of Z^d in Hermite normal form, plus the divisor
//! utilities the zeta machinery needs.
//!
//! A subgroup is stored as an upper-triangular d x d integer matrix whose
//! COLUMNS generate it: diagonal entries a_m >= 1 and off-diagonal entries
//! 0 <= b_mn <= a_m - 1 (row m, column n). The index is the diagonal
//! product. With columns as generators the top-left (d-1) block of the
//! matrix generates the intersection with Z^(d-1) x {0}, which the
//! suspension counting rule relies on.

use crate::error::{Error, Result};
use crate::funcfield::is_prime;
use serde::Serialize;
use std::fmt;

/// d <= 3 is the supported scope; the HNF code itself is dimension-generic.
pub const MAX_DIM: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    d: usize,
    /// Row-major d*d entries.
    h: Vec<i64>,
}

impl Subgroup {
    /// Validate explicit HNF entries (row-major).
    pub fn from_hnf_entries(d: usize, h: Vec<i64>) -> Result<Subgroup> {
        check_dim(d)?;
        if h.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, got: h.len() });
        }
        let s = Subgroup { d, h };
        for m in 0..d {
            if s.entry(m, m) < 1 {
                return Err(Error::Parse(format!("diagonal entry a_{} must be >= 1", m + 1)));
            }
            for n in 0..d {
                let e = s.entry(m, n);
                if n < m && e != 0 {
                    return Err(Error::Parse("matrix is not upper triangular".into()));
                }
                if n > m && !(0 <= e && e < s.entry(m, m)) {
                    return Err(Error::Parse(format!(
                        "entry b_{}{} = {e} out of range [0, a_{})",
                        m + 1,
                        n + 1,
                        m + 1
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn identity(d: usize) -> Subgroup {
        let mut h = vec![0; d * d];
        for i in 0..d {
            h[i * d + i] = 1;
        }
        Subgroup { d, h }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.h[row * self.d + col]
    }

    pub fn row_major(&self) -> &[i64] {
        &self.h
    }

    /// Index [Z^d : self] as the diagonal product.
    pub fn index(&self) -> u64 {
        (0..self.d).map(|i| self.entry(i, i) as u64).product()
    }

    /// Generator columns, left to right.
    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.d)
            .map(|j| (0..self.d).map(|i| self.entry(i, j)).collect())
            .collect()
    }

    /// Membership by back-substitution down the triangle.
    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.d);
        let mut rem: Vec<i64> = v.to_vec();
        for j in (0..self.d).rev() {
            let a = self.entry(j, j);
            if rem[j] % a != 0 {
                return false;
            }
            let c = rem[j] / a;
            for i in 0..=j {
                rem[i] -= c * self.entry(i, j);
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    /// True if every generator of `self` lies in `other`.
    pub fn is_contained_in(&self, other: &Subgroup) -> bool {
        self.columns().iter().all(|c| other.contains(c))
    }

    /// The top-left (d-1)-block: generators of the intersection with
    /// Z^(d-1) x {0}.
    pub fn top_block(&self) -> Subgroup {
        assert!(self.d >= 2);
        let d = self.d - 1;
        let mut h = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                h[i * d + j] = self.entry(i, j);
            }
        }
        Subgroup { d, h }
    }

    pub fn last_diagonal(&self) -> i64 {
        self.entry(self.d - 1, self.d - 1)
    }

    /// Parse "[3,1,0,1]" or "3,1,0,1" (row-major); the entries are taken as
    /// generator columns and canonicalized, so any full-rank matrix works.
    pub fn parse(d: usize, s: &str) -> Result<Subgroup> {
        check_dim(d)?;
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let entries: Vec<i64> = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad matrix entry {x:?}")))
            })
            .collect::<Result<_>>()?;
        if entries.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, got: entries.len() });
        }
        let cols: Vec<Vec<i64>> = (0..d)
            .map(|j| (0..d).map(|i| entries[i * d + j]).collect())
            .collect();
        hnf_canonicalize(d, &cols)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.h.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{self}")
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

/// Every index-n subgroup of Z^d, each exactly once, ordered
/// lexicographically by (a_1, ..., a_d, b_12, b_13, ..., b_(d-1)d).
pub fn enumerate_subgroups(d: usize, n: u64) -> Result<Vec<Subgroup>> {
    check_dim(d)?;
    if n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let mut out = Vec::new();
    let mut diag = vec![1i64; d];
    enumerate_diag(d, n, 0, &mut diag, &mut out);
    Ok(out)
}

fn enumerate_diag(d: usize, rest: u64, pos: usize, diag: &mut Vec<i64>, out: &mut Vec<Subgroup>) {
    if pos == d {
        if rest == 1 {
            emit_offdiag(d, diag, out);
        }
        return;
    }
    for a in 1..=rest {
        if rest.is_multiple_of(a) {
            diag[pos] = a as i64;
            enumerate_diag(d, rest / a, pos + 1, diag, out);
        }
    }
}

fn emit_offdiag(d: usize, diag: &[i64], out: &mut Vec<Subgroup>) {
    // Off-diagonal slots in row-major order: (0,1), (0,2), ..., (1,2), ...
    let slots: Vec<(usize, usize)> = (0..d)
        .flat_map(|m| (m + 1..d).map(move |n| (m, n)))
        .collect();
    let mut b = vec![0i64; slots.len()];
    loop {
        let mut h = vec![0i64; d * d];
        for i in 0..d {
            h[i * d + i] = diag[i];
        }
        for (k, &(m, n)) in slots.iter().enumerate() {
            h[m * d + n] = b[k];
        }
        out.push(Subgroup { d, h });
        // odometer, last slot fastest
        let mut k = slots.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            b[k] += 1;
            if b[k] < diag[slots[k].0] {
                break;
            }
            b[k] = 0;
            if k == 0 {
                return;
            }
        }
    }
}

/// Canonicalize any finite-index generating set (at least d vectors of
/// length d) to its unique HNF subgroup.
pub fn hnf_canonicalize(d: usize, generators: &[Vec<i64>]) -> Result<Subgroup> {
    check_dim(d)?;
    for g in generators {
        if g.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: g.len() });
        }
    }
    let mut cols: Vec<Vec<i128>> = generators
        .iter()
        .map(|g| g.iter().map(|&x| x as i128).collect())
        .collect();
    let mut pinned: Vec<Option<Vec<i128>>> = vec![None; d];
    for row in (0..d).rev() {
        // Euclid on row entries until one nonzero survives.
        loop {
            let nz: Vec<usize> = (0..cols.len()).filter(|&j| cols[j][row] != 0).collect();
            match nz.len() {
                0 => {
                    let rank = int_rank(generators, d);
                    return Err(Error::NotFiniteIndex { d, rank });
                }
                1 => {
                    let mut c = cols.swap_remove(nz[0]);
                    if c[row] < 0 {
                        for x in c.iter_mut() {
                            *x = -*x;
                        }
                    }
                    pinned[row] = Some(c);
                    break;
                }
                _ => {
                    // reduce the largest entry by the smallest, distinct columns
                    let (ja, jb) = {
                        let jb = *nz
                            .iter()
                            .min_by_key(|&&j| cols[j][row].abs())
                            .unwrap();
                        let ja = *nz
                            .iter()
                            .filter(|&&j| j != jb)
                            .max_by_key(|&&j| cols[j][row].abs())
                            .unwrap();
                        (ja, jb)
                    };
                    let q = cols[ja][row] / cols[jb][row];
                    let sub = cols[jb].clone();
                    for (x, s) in cols[ja].iter_mut().zip(sub.iter()) {
                        *x = x
                            .checked_sub(
                                q.checked_mul(*s)
                                    .ok_or_else(|| Error::Parse("generator entries overflow".into()))?,
                            )
                            .ok_or_else(|| Error::Parse("generator entries overflow".into()))?;
                    }
                }
            }
        }
    }
    let mut mat: Vec<Vec<i128>> = pinned.into_iter().map(|c| c.unwrap()).collect();
    // Reduce off-diagonal entries: row m of column j into [0, a_m).
    for j in 1..d {
        for m in (0..j).rev() {
            let a = mat[m][m];
            let q = mat[j][m].div_euclid(a);
            if q != 0 {
                let sub = mat[m].clone();
                for (x, s) in mat[j].iter_mut().zip(sub.iter()) {
                    *x -= q * s;
                }
            }
        }
    }
    let mut h = vec![0i64; d * d];
    for (j, col) in mat.iter().enumerate() {
        for i in 0..d {
            h[i * d + j] = i64::try_from(col[i])
                .map_err(|_| Error::Parse("generator entries overflow".into()))?;
        }
    }
    Ok(Subgroup { d, h })
}

/// Exact rank of the generator matrix, fraction-free elimination.
fn int_rank(generators: &[Vec<i64>], d: usize) -> usize {
    let mut rows: Vec<Vec<i128>> = generators
        .iter()
        .map(|g| g.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let piv = (rank..rows.len()).find(|&r| rows[r][col] != 0);
        let Some(piv) = piv else { continue };
        rows.swap(rank, piv);
        for r in rank + 1..rows.len() {
            if rows[r][col] != 0 {
                let (a, b) = (rows[rank][col], rows[r][col]);
                for c in 0..d {
                    rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Shortest nonzero vector, exhaustive search inside the Minkowski ball.
/// Ties resolve to the lexicographically least vector after normalizing the
/// sign so the first nonzero coordinate is positive.
pub fn short_vector(s: &Subgroup) -> Vec<i64> {
    let d = s.dim();
    let idx = s.index() as f64;
    // Minkowski guarantees a vector of norm <= sqrt(d) * index^(1/d);
    // the columns give another upper bound.
    let col_best = s
        .columns()
        .iter()
        .map(|c| norm2(c))
        .min()
        .unwrap();
    let minkowski = (d as f64).sqrt() * idx.powf(1.0 / d as f64);
    let bound2 = col_best.min((minkowski * minkowski).ceil() as i64 + 1);
    let r = (bound2 as f64).sqrt().ceil() as i64;
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut v = vec![-r; d];
    'outer: loop {
        let n2 = norm2(&v);
        if n2 != 0 && n2 <= bound2 && s.contains(&v) {
            let cand = normalize_sign(&v);
            let key = (n2, cand.clone());
            if best.as_ref().is_none_or(|(bn, bv)| key < (*bn, bv.clone())) {
                best = Some(key);
            }
        }
        // odometer over the cube [-r, r]^d
        for i in (0..d).rev() {
            v[i] += 1;
            if v[i] <= r {
                continue 'outer;
            }
            v[i] = -r;
        }
        break;
    }
    best.expect("lattice has a nonzero vector in its Minkowski ball").1
}

fn norm2(v: &[i64]) -> i64 {
    v.iter().map(|&x| x * x).sum()
}

fn normalize_sign(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|&y| -y).collect(),
        _ => v.to_vec(),
    }
}

/// Sum of positive divisors.
pub fn sigma(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let mut total = 0u64;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += d;
            if d != n / d {
                total += n / d;
            }
        }
        d += 1;
    }
    Ok(total)
}

/// Witness for divisor-sum growth along a congruence class: the smallest
/// positive N <= q * n_k with N = t (mod q) and n_k | N, where n_k is the
/// product of primes <= k not dividing q. Returns N and
/// sigma(N) / (N ln ln N).
pub fn gronwall_witness(t: u64, q: u64, k: u64) -> Result<(u64, f64)> {
    if q == 0 {
        return Err(Error::InvalidIndex(0));
    }
    if !(3..=52).contains(&k) {
        return Err(Error::Parse(format!("cutoff k = {k} outside supported range 3..=52")));
    }
    let t = t % q;
    let mut nk: u64 = 1;
    let mut nk_primes = Vec::new();
    for p in 2..=k {
        if is_prime(p) && !q.is_multiple_of(p) {
            nk = nk.checked_mul(p).ok_or(Error::NoSolution)?;
            nk_primes.push(p);
        }
    }
    // gcd(q, nk) = 1 by construction, so CRT always solves.
    let m = match mod_inverse(nk % q, q) {
        Some(inv) => {
            let m = (t as u128 * inv as u128 % q as u128) as u64;
            if m == 0 {
                q
            } else {
                m
            }
        }
        None => return Err(Error::NoSolution),
    };
    let n = nk.checked_mul(m).ok_or(Error::NoSolution)?;
    debug_assert!(n % q == t % q && n % nk == 0 && n <= nk.saturating_mul(q));
    // sigma(N) from the known primorial part plus the small cofactor m.
    let mut exps: std::collections::BTreeMap<u64, u32> = nk_primes.iter().map(|&p| (p, 1)).collect();
    let mut rest = m;
    let mut d = 2u64;
    while d * d <= rest {
        while rest % d == 0 {
            *exps.entry(d).or_insert(0) += 1;
            rest /= d;
        }
        d += 1;
    }
    if rest > 1 {
        *exps.entry(rest).or_insert(0) += 1;
    }
    let mut sigma_n: u128 = 1;
    for (&p, &e) in &exps {
        let mut geom: u128 = 1;
        let mut pk: u128 = 1;
        for _ in 0..e {
            pk *= p as u128;
            geom += pk;
        }
        sigma_n *= geom;
    }
    let nf = n as f64;
    let ratio = sigma_n as f64 / (nf * nf.ln().ln());
    Ok((n, ratio))
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
