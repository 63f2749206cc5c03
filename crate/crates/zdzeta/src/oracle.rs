//! Independent brute-force counts by finite linear algebra over F_p.
//!
//! For a curve with defining polynomial f, the count for a subgroup s is
//! the size of the localization of A = F_p[Z^d / s] / (f) at the product
//! of the inverted generators: build the multiplication matrix of f on the
//! group algebra, pass to the cokernel, and localize by taking the stable
//! image of multiplication by the inverted product. Everything reduces to
//! ranks of dense matrices (bit-packed when p = 2), so this path shares
//! nothing with the valuation formula it cross-checks.

use crate::action::{ActionSpec, Component, CurveComponent, MixingCheck};
use crate::error::{Error, Result};
use crate::factored::Factored;
use crate::funcfield::RatFunc;
use crate::lattice::{self, Subgroup};
use crate::multipoly::MultiPoly;
use rayon::prelude::*;
use serde::Serialize;

/// Default cap on the group-algebra dimension (the subgroup index).
pub const DEFAULT_BUDGET: u64 = 2500;

/// The finite group algebra F_p[Z^d / s] with its canonical box basis of
/// coset representatives.
pub struct GroupAlgebra {
    p: u64,
    d: usize,
    hnf: Subgroup,
    dims: Vec<i64>,
    n: usize,
}

impl GroupAlgebra {
    pub fn new(p: u64, s: &Subgroup) -> GroupAlgebra {
        let d = s.dim();
        let dims: Vec<i64> = (0..d).map(|i| s.entry(i, i)).collect();
        let n = s.index() as usize;
        GroupAlgebra { p, d, hnf: s.clone(), dims, n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn coords(&self, mut idx: usize) -> Vec<i64> {
        let mut x = vec![0i64; self.d];
        for i in 0..self.d {
            x[i] = (idx % self.dims[i] as usize) as i64;
            idx /= self.dims[i] as usize;
        }
        x
    }

    fn index_of(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for i in (0..self.d).rev() {
            idx = idx * self.dims[i] as usize + x[i] as usize;
        }
        idx
    }

    /// Reduce an arbitrary lattice vector into the box of representatives.
    fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for j in (0..self.d).rev() {
            let a = self.hnf.entry(j, j);
            let c = v[j].div_euclid(a);
            if c != 0 {
                for i in 0..=j {
                    v[i] -= c * self.hnf.entry(i, j);
                }
            }
        }
        v
    }

    /// Basis permutation of multiplication by the monomial u^e.
    fn shift_permutation(&self, e: &[i64]) -> Vec<usize> {
        (0..self.n)
            .map(|idx| {
                let mut x = self.coords(idx);
                for (xi, &ei) in x.iter_mut().zip(e.iter()) {
                    *xi += ei;
                }
                self.index_of(&self.reduce(&x))
            })
            .collect()
    }

    /// Multiplication matrix of a Laurent polynomial on the group algebra.
    fn mult_matrix(&self, f: &MultiPoly) -> FpMatrix {
        let mut m = FpMatrix::zero(self.p, self.n);
        for (c, e) in f.terms() {
            let perm = self.shift_permutation(e);
            for (src, &dst) in perm.iter().enumerate() {
                m.add_entry(src, dst, *c);
            }
        }
        m
    }
}

/// Dense matrix over F_p; rows are bit-packed words when p = 2.
enum FpMatrix {
    Bits { n: usize, rows: Vec<Vec<u64>> },
    Dense { p: u64, n: usize, rows: Vec<Vec<u64>> },
}

impl FpMatrix {
    fn zero(p: u64, n: usize) -> FpMatrix {
        if p == 2 {
            FpMatrix::Bits { n, rows: vec![vec![0u64; n.div_ceil(64)]; n] }
        } else {
            FpMatrix::Dense { p, n, rows: vec![vec![0u64; n]; n] }
        }
    }

    fn add_entry(&mut self, i: usize, j: usize, c: u64) {
        match self {
            FpMatrix::Bits { rows, .. } => {
                if c & 1 == 1 {
                    rows[i][j / 64] ^= 1u64 << (j % 64);
                }
            }
            FpMatrix::Dense { p, rows, .. } => {
                rows[i][j] = (rows[i][j] + c) % *p;
            }
        }
    }

    fn matmul(&self, other: &FpMatrix) -> FpMatrix {
        match (self, other) {
            (FpMatrix::Bits { n, rows: a }, FpMatrix::Bits { rows: b, .. }) => {
                let words = n.div_ceil(64);
                let rows = a
                    .iter()
                    .map(|arow| {
                        let mut acc = vec![0u64; words];
                        for (wi, &w) in arow.iter().enumerate() {
                            let mut bits = w;
                            while bits != 0 {
                                let k = wi * 64 + bits.trailing_zeros() as usize;
                                for (dst, src) in acc.iter_mut().zip(b[k].iter()) {
                                    *dst ^= src;
                                }
                                bits &= bits - 1;
                            }
                        }
                        acc
                    })
                    .collect();
                FpMatrix::Bits { n: *n, rows }
            }
            (FpMatrix::Dense { p, n, rows: a }, FpMatrix::Dense { rows: b, .. }) => {
                let p = *p;
                let rows = a
                    .iter()
                    .map(|arow| {
                        let mut acc = vec![0u64; *n];
                        for (k, &c) in arow.iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            for (dst, &src) in acc.iter_mut().zip(b[k].iter()) {
                                *dst = (*dst + c * src) % p;
                            }
                        }
                        acc
                    })
                    .collect();
                FpMatrix::Dense { p, n: *n, rows }
            }
            _ => unreachable!("mixed matrix representations"),
        }
    }

    fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(e >= 1);
        let mut base = self.clone_matrix();
        let mut acc: Option<FpMatrix> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone_matrix(),
                    Some(m) => m.matmul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        acc.unwrap()
    }

    fn clone_matrix(&self) -> FpMatrix {
        match self {
            FpMatrix::Bits { n, rows } => FpMatrix::Bits { n: *n, rows: rows.clone() },
            FpMatrix::Dense { p, n, rows } => {
                FpMatrix::Dense { p: *p, n: *n, rows: rows.clone() }
            }
        }
    }

    fn rows_for_rank(&self) -> RankRows {
        match self {
            FpMatrix::Bits { rows, .. } => RankRows::Bits(rows.clone()),
            FpMatrix::Dense { p, rows, .. } => RankRows::Dense(*p, rows.clone()),
        }
    }
}

/// Row collection for rank computations; ranks of unions come from
/// stacking.
enum RankRows {
    Bits(Vec<Vec<u64>>),
    Dense(u64, Vec<Vec<u64>>),
}

impl RankRows {
    fn empty_like(m: &FpMatrix) -> RankRows {
        match m {
            FpMatrix::Bits { .. } => RankRows::Bits(Vec::new()),
            FpMatrix::Dense { p, .. } => RankRows::Dense(*p, Vec::new()),
        }
    }

    fn stack(self, other: &FpMatrix) -> RankRows {
        match (self, other) {
            (RankRows::Bits(mut rows), FpMatrix::Bits { rows: more, .. }) => {
                rows.extend(more.iter().cloned());
                RankRows::Bits(rows)
            }
            (RankRows::Dense(p, mut rows), FpMatrix::Dense { rows: more, .. }) => {
                rows.extend(more.iter().cloned());
                RankRows::Dense(p, rows)
            }
            _ => unreachable!("mixed matrix representations"),
        }
    }

    fn rank(self) -> usize {
        match self {
            RankRows::Bits(mut rows) => {
                let mut rank = 0;
                let words = rows.first().map_or(0, |r| r.len());
                for col in 0..words * 64 {
                    let (w, b) = (col / 64, col % 64);
                    let Some(piv) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
                        continue;
                    };
                    rows.swap(rank, piv);
                    let pivot_row = rows[rank].clone();
                    for (r, row) in rows.iter_mut().enumerate() {
                        if r != rank && row[w] >> b & 1 == 1 {
                            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                                *x ^= y;
                            }
                        }
                    }
                    rank += 1;
                    if rank == rows.len() {
                        break;
                    }
                }
                rank
            }
            RankRows::Dense(p, mut rows) => {
                let n = rows.first().map_or(0, |r| r.len());
                let mut rank = 0;
                for col in 0..n {
                    let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                        continue;
                    };
                    rows.swap(rank, piv);
                    let inv = mod_inv(rows[rank][col], p);
                    for x in rows[rank].iter_mut() {
                        *x = *x * inv % p;
                    }
                    let pivot_row = rows[rank].clone();
                    for (r, row) in rows.iter_mut().enumerate() {
                        if r != rank && row[col] != 0 {
                            let c = row[col];
                            for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                                *x = (*x + (p - c % p) * y) % p;
                            }
                        }
                    }
                    rank += 1;
                    if rank == rows.len() {
                        break;
                    }
                }
                rank
            }
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Express each inverted generator as a Laurent polynomial in the
/// coordinates: either it equals some image, or some image is literally t
/// and the generator lifts coefficientwise through that coordinate.
fn lift_inverted(curve: &CurveComponent, nvars: usize) -> Result<Vec<MultiPoly>> {
    let p = curve.characteristic();
    let t = RatFunc::t(p);
    let mut lifts = Vec::new();
    for g in curve.inverted() {
        let as_func = RatFunc::from_poly(g.clone());
        let lift = if let Some(j) = curve.images().iter().position(|im| *im == as_func) {
            MultiPoly::variable(p, nvars, j)
        } else if let Some(j) = curve.images().iter().position(|im| *im == t) {
            MultiPoly::from_univariate(g, nvars, j)
        } else {
            return Err(Error::UnliftableInversion(g.to_string()));
        };
        lifts.push(lift);
    }
    Ok(lifts)
}

/// Brute-force count for one curve component (single copy, before raising
/// to the component multiplicity): |S^-1 (F_p[Z^d/s] / (f))| as a power
/// of p, computed from matrix ranks.
pub fn oracle_count(curve: &CurveComponent, s: &Subgroup, budget: u64) -> Result<Factored> {
    let n = s.index();
    if n > budget {
        return Err(Error::OutOfBudget(n, budget));
    }
    let d = s.dim();
    let p = curve.characteristic();
    let defining = match curve.defining_poly() {
        Some(f) => Some(f.pad_vars(d)),
        None => {
            // Without a relation the group algebra itself must be the
            // component ring, which needs the normalized coordinate t.
            if curve.images().len() == 1 && curve.images()[0] == RatFunc::t(p) {
                None
            } else {
                return Err(Error::NoDefiningPoly);
            }
        }
    };
    let lifts = lift_inverted(curve, d)?;
    let ga = GroupAlgebra::new(p, s);

    let mut loc = FpMatrix::zero(p, ga.dim());
    for i in 0..ga.dim() {
        loc.add_entry(i, i, 1);
    }
    for lift in &lifts {
        loc = loc.matmul(&ga.mult_matrix(lift));
    }
    // Stable image of the localizing element: exponent >= dim suffices.
    let stable = loc.pow(ga.dim() as u64);

    let rank = match &defining {
        None => stable.rows_for_rank().rank(),
        Some(f) => {
            let b = ga.mult_matrix(f);
            let b_rank = b.rows_for_rank().rank();
            let joint = RankRows::empty_like(&stable).stack(&stable).stack(&b).rank();
            joint - b_rank
        }
    };
    Ok(Factored::from_pow(p, rank as i64))
}

/// One comparison row of a validation run.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationRow {
    pub index: u64,
    pub subgroup: String,
    pub formula: String,
    pub oracle: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
    pub all_match: bool,
    pub compared: usize,
}

/// Compare the valuation-formula count against the matrix oracle on every
/// subgroup of index <= max_index, in enumeration order.
pub fn cross_validate(spec: &ActionSpec, max_index: u64, budget: u64) -> Result<ValidationReport> {
    if let MixingCheck::Violation(witness) = crate::action::validate_mixing(spec) {
        return Err(Error::NotMixing { witness });
    }
    let mut subgroups = Vec::new();
    for n in 1..=max_index {
        subgroups.extend(lattice::enumerate_subgroups(spec.dim(), n)?);
    }
    let rows: Vec<ValidationRow> = subgroups
        .par_iter()
        .map(|s| -> Result<ValidationRow> {
            let formula = crate::action::count_fixed_unchecked(spec, s)?;
            let mut oracle = Factored::one();
            for c in spec.components() {
                match c {
                    Component::Principal { p, mult } => {
                        // the full group algebra: p^index per copy
                        oracle.mul_pow(*p, *mult as i64 * s.index() as i64);
                    }
                    Component::Curve(curve) => {
                        let single = oracle_count(curve, s, budget)?;
                        oracle.mul(&single.pow(curve.mult() as i64));
                    }
                }
            }
            Ok(ValidationRow {
                index: s.index(),
                subgroup: s.to_string(),
                matches: formula == oracle,
                formula: formula.to_string(),
                oracle: oracle.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    let all_match = rows.iter().all(|r| r.matches);
    Ok(ValidationReport { compared: rows.len(), rows, all_match })
}
