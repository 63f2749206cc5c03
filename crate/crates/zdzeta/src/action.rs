//! Algebraic Z^d-actions given as lists of components, with exact
//! periodic-point counting, entropy, growth scans, and the suspension
//! construction.
//!
//! A curve component is a rank-one piece presented by its rational
//! parameterization: the images of the coordinates u_1..u_d in F_p(t)
//! together with the monic irreducibles inverted in its coordinate ring.
//! Because localizations of F_p[t] are integrally closed, the count of
//! points fixed by a finite-index subgroup is an exact product over the
//! places away from the exceptional set, which reduces to a gcd of the
//! generator numerators.

use crate::error::{Error, Result};
use crate::factored::Factored;
use crate::funcfield::{factor, is_prime, ord_at, support, Place, PolyFp, RatFunc};
use crate::lattice::{self, Subgroup};
use crate::multipoly::MultiPoly;

/// Rank-one component parameterized over F_p(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveComponent {
    p: u64,
    images: Vec<RatFunc>,
    /// Monic irreducibles inverted in the coordinate ring. Always contains
    /// every irreducible factor of every image numerator and denominator.
    inverted: Vec<PolyFp>,
    mult: u32,
    defining_poly: Option<MultiPoly>,
}

impl CurveComponent {
    pub fn new(
        p: u64,
        images: Vec<RatFunc>,
        inverted: Vec<PolyFp>,
        mult: u32,
        defining_poly: Option<MultiPoly>,
    ) -> Result<CurveComponent> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if mult == 0 {
            return Err(Error::SpecFile("component multiplicity must be >= 1".into()));
        }
        if images.is_empty() {
            return Err(Error::SpecFile("curve component needs at least one image".into()));
        }
        for im in &images {
            if im.characteristic() != p {
                return Err(Error::CharMismatch(p, im.characteristic()));
            }
            if im.is_zero() {
                return Err(Error::SpecFile("coordinate image must be nonzero".into()));
            }
        }
        // Close the inverted set under the factors the images force.
        let mut inv: Vec<PolyFp> = Vec::new();
        let mut push = |g: PolyFp| {
            if !inv.contains(&g) {
                inv.push(g);
            }
        };
        for g in &inverted {
            if g.characteristic() != p {
                return Err(Error::CharMismatch(p, g.characteristic()));
            }
            if g.is_zero() {
                return Err(Error::SpecFile("inverted polynomial must be nonzero".into()));
            }
            for (irr, _) in factor(g)? {
                push(irr);
            }
        }
        for im in &images {
            if !im.num().is_constant() {
                for (irr, _) in factor(im.num())? {
                    push(irr);
                }
            }
            if !im.den().is_one() {
                for (irr, _) in factor(im.den())? {
                    push(irr);
                }
            }
        }
        inv.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
        if let Some(f) = &defining_poly {
            if f.characteristic() != p {
                return Err(Error::CharMismatch(p, f.characteristic()));
            }
            if f.nvars() != images.len() {
                return Err(Error::DimensionMismatch { expected: images.len(), got: f.nvars() });
            }
            if !f.eval(&images)?.is_zero() {
                return Err(Error::SpecFile(
                    "defining polynomial does not vanish on the images".into(),
                ));
            }
        }
        Ok(CurveComponent { p, images, inverted: inv, mult, defining_poly })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn images(&self) -> &[RatFunc] {
        &self.images
    }

    pub fn inverted(&self) -> &[PolyFp] {
        &self.inverted
    }

    pub fn mult(&self) -> u32 {
        self.mult
    }

    pub fn defining_poly(&self) -> Option<&MultiPoly> {
        self.defining_poly.as_ref()
    }

    /// The exceptional places: infinity plus every finite place where some
    /// image or inverted generator has nonzero valuation. Counting runs
    /// over the complement.
    pub fn exceptional_places(&self) -> Vec<Place> {
        let mut out = vec![Place::infinity(self.p)];
        for g in &self.inverted {
            out.push(Place::finite(g.clone()));
        }
        out
    }

    /// u^n - 1 evaluated through the parameterization.
    fn image_power(&self, n: &[i64]) -> Result<RatFunc> {
        let mut w = RatFunc::one(self.p);
        for (im, &e) in self.images.iter().zip(n.iter()) {
            w = w.mul(&im.powi(e)?);
        }
        Ok(w)
    }

    /// Exact count contribution for the subgroup with the given generator
    /// columns: p^(mult * deg G) where G is the gcd of the numerators of
    /// u^g - 1 with all exceptional factors removed.
    fn count(&self, generators: &[Vec<i64>]) -> Result<Factored> {
        let mut g_poly: Option<PolyFp> = None;
        for gen in generators {
            let w = self.image_power(gen)?;
            if w.is_one() {
                return Err(Error::InfiniteFixedSet { generator: gen.clone() });
            }
            let num = w.sub_one().num().monic();
            g_poly = Some(match g_poly {
                None => num,
                Some(acc) => acc.gcd(&num),
            });
        }
        let mut g_poly = g_poly.expect("subgroup has at least one generator");
        for inv in &self.inverted {
            while !g_poly.is_constant() && g_poly.ord_of_factor(inv) > 0 {
                g_poly = g_poly.div_exact(inv);
            }
        }
        let exponent = g_poly.deg_i64() * self.mult as i64;
        Ok(Factored::from_pow(self.p, exponent))
    }

    /// Entropy weight of a one-dimensional curve: sum over exceptional
    /// places of log^+ |image|_v, as an exponent of p.
    fn entropy_weight_1d(&self) -> i64 {
        let im = &self.images[0];
        self.exceptional_places()
            .iter()
            .map(|v| {
                let e = crate::funcfield::abs_exponent_at(im, v).expect("image is nonzero");
                e.max(0)
            })
            .sum::<i64>()
            * self.mult as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    Principal { p: u64, mult: u32 },
    Curve(CurveComponent),
}

impl Component {
    pub fn characteristic(&self) -> u64 {
        match self {
            Component::Principal { p, .. } => *p,
            Component::Curve(c) => c.characteristic(),
        }
    }

    pub fn mult(&self) -> u32 {
        match self {
            Component::Principal { mult, .. } => *mult,
            Component::Curve(c) => c.mult(),
        }
    }
}

/// An action: dimension, suspension flag, and its components. For a
/// suspended spec the components describe the base action in dimension
/// d - 1 and counting follows the suspension rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    d: usize,
    suspended: bool,
    components: Vec<Component>,
}

impl ActionSpec {
    pub fn new(d: usize, suspended: bool, components: Vec<Component>) -> Result<ActionSpec> {
        if d == 0 || d > lattice::MAX_DIM {
            return Err(Error::UnsupportedDimension(d));
        }
        let base = if suspended {
            if d < 2 {
                return Err(Error::UnsupportedDimension(d));
            }
            d - 1
        } else {
            d
        };
        for c in &components {
            if let Component::Principal { p, mult } = c {
                if !is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if *mult == 0 {
                    return Err(Error::SpecFile("component multiplicity must be >= 1".into()));
                }
            }
            if let Component::Curve(curve) = c {
                if curve.images().len() != base {
                    return Err(Error::DimensionMismatch {
                        expected: base,
                        got: curve.images().len(),
                    });
                }
            }
        }
        Ok(ActionSpec { d, suspended, components })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Dimension the component images live in: d, or d - 1 when suspended.
    pub fn base_dim(&self) -> usize {
        if self.suspended {
            self.d - 1
        } else {
            self.d
        }
    }

    pub fn suspended(&self) -> bool {
        self.suspended
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn has_principal(&self) -> bool {
        self.components
            .iter()
            .any(|c| matches!(c, Component::Principal { .. }))
    }

    pub fn curves(&self) -> impl Iterator<Item = &CurveComponent> {
        self.components.iter().filter_map(|c| match c {
            Component::Curve(c) => Some(c),
            _ => None,
        })
    }

    /// The characteristics appearing in the spec, ascending.
    pub fn characteristic_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.components.iter().map(|c| c.characteristic()).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// The same components viewed as an unsuspended base action.
    pub fn base_spec(&self) -> ActionSpec {
        if self.suspended {
            ActionSpec {
                d: self.d - 1,
                suspended: false,
                components: self.components.clone(),
            }
        } else {
            self.clone()
        }
    }
}

/// Outcome of the mixing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MixingCheck {
    Mixing,
    /// Smallest (by norm, then lexicographically) nonzero n with u^n = 1
    /// in some component domain.
    Violation(Vec<i64>),
}

/// Decide mixing exactly: a curve component fails iff the valuation
/// vectors of its images over their supporting places have a nontrivial
/// integer kernel whose product of images is literally 1.
pub fn validate_mixing(spec: &ActionSpec) -> MixingCheck {
    let mut best: Option<Vec<i64>> = None;
    for curve in spec.curves() {
        if let Some(n) = curve_mixing_violation(curve) {
            let replace = match &best {
                None => true,
                Some(b) => cmp_norm_lex(&n, b) == std::cmp::Ordering::Less,
            };
            if replace {
                best = Some(n);
            }
        }
    }
    match best {
        Some(n) => MixingCheck::Violation(n),
        None => MixingCheck::Mixing,
    }
}

fn cmp_norm_lex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let na: i64 = a.iter().map(|x| x * x).sum();
    let nb: i64 = b.iter().map(|x| x * x).sum();
    na.cmp(&nb).then_with(|| a.cmp(b))
}

fn curve_mixing_violation(curve: &CurveComponent) -> Option<Vec<i64>> {
    let k = curve.images().len();
    // valuation matrix: one row per place in the union of supports
    let mut places: Vec<Place> = Vec::new();
    for im in curve.images() {
        for (v, _) in support(im).expect("images are nonzero") {
            if !places.contains(&v) {
                places.push(v);
            }
        }
    }
    let rows: Vec<Vec<i64>> = places
        .iter()
        .map(|v| {
            curve
                .images()
                .iter()
                .map(|im| ord_at(im, v).expect("images are nonzero"))
                .collect()
        })
        .collect();
    let kernel = integer_kernel(&rows, k);
    if kernel.is_empty() {
        return None;
    }
    // enumerate small combinations of the kernel basis by norm and return
    // the first whose image product is exactly 1
    let bound = 8i64;
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let dims = kernel.len();
    let mut coeffs = vec![-bound; dims];
    'outer: loop {
        if coeffs.iter().any(|&c| c != 0) {
            let mut n = vec![0i64; k];
            for (c, b) in coeffs.iter().zip(kernel.iter()) {
                for (ni, bi) in n.iter_mut().zip(b.iter()) {
                    *ni += c * bi;
                }
            }
            if n.iter().any(|&x| x != 0) {
                candidates.push(normalize_sign(&n));
            }
        }
        for i in (0..dims).rev() {
            coeffs[i] += 1;
            if coeffs[i] <= bound {
                continue 'outer;
            }
            coeffs[i] = -bound;
        }
        break;
    }
    candidates.sort_by(|a, b| cmp_norm_lex(a, b));
    candidates.dedup();
    for n in &candidates {
        let w = curve.image_power(n).expect("kernel vectors avoid poles");
        if w.is_one() {
            return Some(n.clone());
        }
    }
    // A kernel vector makes the product a nonzero constant c; some multiple
    // of it by ord(c) | p - 1 must hit 1.
    let n0 = normalize_sign(&kernel[0]);
    for mult in 2..curve.characteristic() {
        let n: Vec<i64> = n0.iter().map(|&x| x * mult as i64).collect();
        if curve.image_power(&n).expect("nonzero").is_one() {
            return Some(n);
        }
    }
    unreachable!("a kernel vector always yields a violation after scaling");
}

fn normalize_sign(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|&y| -y).collect(),
        _ => v.to_vec(),
    }
}

/// Primitive basis of the rational kernel of the (rows x k) matrix,
/// computed by exact fraction elimination.
fn integer_kernel(rows: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    #[derive(Clone, Copy)]
    struct Fr(i128, i128); // numerator, positive denominator
    impl Fr {
        fn reduce(self) -> Fr {
            if self.0 == 0 {
                return Fr(0, 1);
            }
            let g = gcd_i128(self.0.abs(), self.1.abs());
            let s = if self.1 < 0 { -1 } else { 1 };
            Fr(s * self.0 / g, s * self.1 / g)
        }
        fn sub_mul(self, a: Fr, b: Fr) -> Fr {
            // self - a*b
            Fr(self.0 * a.1 * b.1 - a.0 * b.0 * self.1, self.1 * a.1 * b.1).reduce()
        }
        fn div(self, o: Fr) -> Fr {
            Fr(self.0 * o.1, self.1 * o.0).reduce()
        }
        fn is_zero(self) -> bool {
            self.0 == 0
        }
    }
    fn gcd_i128(a: i128, b: i128) -> i128 {
        if b == 0 {
            a
        } else {
            gcd_i128(b, a % b)
        }
    }

    let mut m: Vec<Vec<Fr>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Fr(x as i128, 1)).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..k {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let piv = m[r][c];
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].div(piv);
                for j in 0..k {
                    let a = m[r][j];
                    m[i][j] = m[i][j].sub_mul(factor, a);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free_cols {
        // x_f = 1, other free vars 0, solve pivots
        let mut x = vec![Fr(0, 1); k];
        x[f] = Fr(1, 1);
        for (row, &pc) in pivot_cols.iter().enumerate() {
            // m[row] has a single pivot at pc after full elimination
            let val = m[row][f];
            x[pc] = Fr(0, 1).sub_mul(val.div(m[row][pc]), Fr(1, 1));
        }
        // clear denominators, divide by gcd
        let lcm = x.iter().fold(1i128, |acc, fr| acc / gcd_i128(acc.abs(), fr.1) * fr.1);
        let mut v: Vec<i128> = x.iter().map(|fr| fr.0 * (lcm / fr.1)).collect();
        let g = v.iter().fold(0i128, |acc, &t| gcd_i128(acc.abs(), t.abs())).max(1);
        for t in v.iter_mut() {
            *t /= g;
        }
        basis.push(v.iter().map(|&t| t as i64).collect());
    }
    basis
}

/// Number of points fixed by every element of the subgroup, as an exact
/// factored integer. Validates mixing first; for suspended specs applies
/// the suspension rule F(s) = F_base(top block)^(last diagonal).
pub fn count_fixed(spec: &ActionSpec, s: &Subgroup) -> Result<Factored> {
    if s.dim() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), got: s.dim() });
    }
    if let MixingCheck::Violation(witness) = validate_mixing(spec) {
        return Err(Error::NotMixing { witness });
    }
    count_fixed_unchecked(spec, s)
}

/// Counting path without the mixing check, for batch scans that validate
/// once up front.
pub fn count_fixed_unchecked(spec: &ActionSpec, s: &Subgroup) -> Result<Factored> {
    if spec.suspended() {
        let base = s.top_block();
        let exp = s.last_diagonal();
        let inner = count_components(spec, &base)?;
        return Ok(inner.pow(exp));
    }
    count_components(spec, s)
}

fn count_components(spec: &ActionSpec, s: &Subgroup) -> Result<Factored> {
    let generators = s.columns();
    let mut total = Factored::one();
    for c in spec.components() {
        match c {
            Component::Principal { p, mult } => {
                total.mul_pow(*p, *mult as i64 * s.index() as i64);
            }
            Component::Curve(curve) => {
                total.mul(&curve.count(&generators)?);
            }
        }
    }
    Ok(total)
}

/// e^h as an exact factored integer: principal components contribute
/// p^mult for d >= 2; in dimension one a curve contributes the
/// degree-weighted positive part of its image valuations. Suspension
/// preserves the base entropy.
pub fn entropy(spec: &ActionSpec) -> Factored {
    let base_dim = spec.base_dim();
    let mut h = Factored::one();
    for c in spec.components() {
        match c {
            Component::Principal { p, mult } => h.mul_pow(*p, *mult as i64),
            Component::Curve(curve) => {
                if base_dim == 1 {
                    h.mul_pow(curve.characteristic(), curve.entropy_weight_1d());
                }
            }
        }
    }
    h
}

/// The count divided by e^(h * index), exact, possibly with negative
/// exponents. Defined for two-dimensional specs.
pub fn entropy_normalized_count(spec: &ActionSpec, s: &Subgroup) -> Result<Factored> {
    if spec.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: spec.dim() });
    }
    let mut f = count_fixed(spec, s)?;
    let h = entropy(spec);
    f.mul(&h.pow(-(s.index() as i64)));
    Ok(f)
}

/// Add a free shift coordinate: the returned spec has dimension d + 1 and
/// counts via the suspension rule.
pub fn suspend(spec: &ActionSpec) -> Result<ActionSpec> {
    if spec.suspended() {
        return Err(Error::Parse("spec is already suspended".into()));
    }
    if spec.dim() + 1 > lattice::MAX_DIM {
        return Err(Error::UnsupportedDimension(spec.dim() + 1));
    }
    if let MixingCheck::Violation(witness) = validate_mixing(spec) {
        return Err(Error::NotMixing { witness });
    }
    ActionSpec::new(spec.dim() + 1, true, spec.components().to_vec())
}

/// Constants for the uniform upper bounds on counts.
#[derive(Clone, Debug)]
pub struct BoundConstants {
    /// log lambda: the largest single-place factor log max(|u_i|_v, |u_i|_v^-1).
    pub ln_lambda: f64,
    /// E = sum over curves of mult * #exceptional places.
    pub support_weight: i64,
    /// log of the height-based per-step constant: sum over curves of
    /// mult * max_i height(u_i) * log p. This is the constant the sharp
    /// index bounds use.
    pub ln_height: f64,
    /// Entropy in nats (exact part, rendered).
    pub entropy_nats: f64,
    /// Base dimension the scan runs in.
    pub base_dim: usize,
}

impl BoundConstants {
    /// Norm coefficient of the Minkowski short vector: ||m|| <= coeff * n^(1/d).
    fn minkowski_coeff(&self) -> f64 {
        if self.base_dim == 2 {
            2.0 / std::f64::consts::PI.sqrt()
        } else {
            (self.base_dim as f64).sqrt()
        }
    }

    /// Upper bound on log F(s)/[s] - h valid for every subgroup of index
    /// greater than n, decreasing in n.
    pub fn tail_bound_nats(&self, n: u64) -> f64 {
        let d = self.base_dim as f64;
        let norm_to_l1 = d.sqrt();
        self.entropy_nats
            + norm_to_l1 * self.minkowski_coeff() * (n as f64).powf(1.0 / d - 1.0) * self.ln_height
    }

    /// Bound on log F(s) from the short vector: ||m||_1 * ln_lambda * E.
    pub fn elementwise_bound_nats(&self, short: &[i64]) -> f64 {
        let l1: i64 = short.iter().map(|x| x.abs()).sum();
        l1 as f64 * self.ln_lambda * self.support_weight as f64
    }

    /// Bound on log F(s) in terms of the index: sqrt(d) * n^(1/d) * log C
    /// with C = lambda^(E sqrt(d)).
    pub fn index_bound_nats(&self, n: u64) -> f64 {
        let d = self.base_dim as f64;
        let ln_c = self.ln_lambda * self.support_weight as f64 * d.sqrt();
        d.sqrt() * (n as f64).powf(1.0 / d) * ln_c
    }

    /// The sharp index bound log F(s) <= sqrt(d) * M_d * n^(1/d) * ln_height.
    pub fn sharp_index_bound_nats(&self, n: u64) -> f64 {
        let d = self.base_dim as f64;
        d.sqrt() * self.minkowski_coeff() * (n as f64).powf(1.0 / d) * self.ln_height
    }
}

pub fn bound_constants(spec: &ActionSpec) -> BoundConstants {
    let mut ln_lambda: f64 = 0.0;
    let mut support_weight = 0i64;
    let mut ln_height = 0.0;
    for curve in spec.curves() {
        let lnp = (curve.characteristic() as f64).ln();
        let places = curve.exceptional_places();
        support_weight += curve.mult() as i64 * places.len() as i64;
        let mut max_height = 0i64;
        for im in curve.images() {
            max_height = max_height.max(im.height_deg());
            for v in &places {
                let e = crate::funcfield::abs_exponent_at(im, v).expect("image nonzero").abs();
                ln_lambda = ln_lambda.max(e as f64 * lnp);
            }
        }
        ln_height += curve.mult() as f64 * max_height as f64 * lnp;
    }
    BoundConstants {
        ln_lambda,
        support_weight,
        ln_height,
        entropy_nats: entropy(spec).ln(),
        base_dim: spec.base_dim(),
    }
}

/// Result of a growth scan over all subgroups of index <= the cutoff.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    /// Count at the maximizing subgroup.
    pub max_count: Factored,
    /// Index of the maximizing subgroup.
    pub max_index: u64,
    /// Maximizing subgroup (a base subgroup for suspended specs).
    pub argmax: Subgroup,
    /// g_N = max log F / index over the scan, in nats.
    pub g_nats: f64,
    /// Upper bound on log F / index valid for every larger index.
    pub tail_bound_nats: f64,
    /// g_N >= tail bound: the scan maximum is the global supremum. For a
    /// suspended spec this value equals the growth rate of the action.
    pub certified: bool,
    pub scanned: u64,
}

impl GrowthReport {
    /// "a/b·log p" when the maximum is a prime power, else a decimal.
    pub fn growth_string(&self) -> String {
        let exps: Vec<(u64, i64)> = self.max_count.exponents().collect();
        match exps[..] {
            [] => "0".to_string(),
            [(p, e)] => {
                let g = gcd_u64(e.unsigned_abs(), self.max_index);
                let (num, den) = (e / g as i64, self.max_index / g);
                if den == 1 && num == 1 {
                    format!("log {p}")
                } else if den == 1 {
                    format!("{num}·log {p}")
                } else {
                    format!("{num}/{den}·log {p}")
                }
            }
            _ => format!("{:.6}", self.g_nats),
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Scan every subgroup of index <= n_max (base subgroups for suspended
/// specs, where the count ratio is index-invariant along the fiber) and
/// report the exact maximum of log F / index together with a tail bound.
pub fn growth_scan(spec: &ActionSpec, n_max: u64) -> Result<GrowthReport> {
    if spec.dim() < 2 {
        return Err(Error::UnsupportedDimension(spec.dim()));
    }
    if n_max == 0 {
        return Err(Error::InvalidIndex(0));
    }
    if let MixingCheck::Violation(witness) = validate_mixing(spec) {
        return Err(Error::NotMixing { witness });
    }
    let base = spec.base_spec();
    let mut best: Option<(f64, Factored, u64, Subgroup)> = None;
    let mut scanned = 0u64;
    for n in 1..=n_max {
        for s in lattice::enumerate_subgroups(base.dim(), n)? {
            let f = count_fixed_unchecked(&base, &s)?;
            let ratio = f.ln() / n as f64;
            scanned += 1;
            if best.as_ref().is_none_or(|(b, ..)| ratio > *b) {
                best = Some((ratio, f, n, s));
            }
        }
    }
    let (g, max_count, max_index, argmax) = best.expect("scan covers index 1");
    let consts = bound_constants(spec);
    let tail = consts.tail_bound_nats(n_max);
    Ok(GrowthReport {
        max_count,
        max_index,
        argmax,
        g_nats: g,
        tail_bound_nats: tail,
        certified: g >= tail,
        scanned,
    })
}
