//! Property tests: canonical-form invariance for the lattice code and the
//! product formula for function-field valuations.

use proptest::prelude::*;
use zdzeta::funcfield::{ord_at, support, PolyFp, RatFunc};
use zdzeta::lattice::{enumerate_subgroups, hnf_canonicalize};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Degree-weighted valuations over the full support sum to zero: the
    /// product formula over all places of F_p(t).
    #[test]
    fn product_formula(p in prop::sample::select(vec![2u64, 3, 5]),
                       num_seed in prop::collection::vec(0u64..5, 1..8),
                       den_seed in prop::collection::vec(0u64..5, 1..8)) {
        let num = PolyFp::new(p, num_seed);
        let den = PolyFp::new(p, den_seed);
        prop_assume!(!num.is_zero() && !den.is_zero());
        let f = RatFunc::new(num, den);
        prop_assume!(!f.is_zero());
        let total: i64 = support(&f).unwrap().iter().map(|(v, e)| v.degree() * e).sum();
        prop_assert_eq!(total, 0);
        // and ord agrees with the support listing at every listed place
        for (v, e) in support(&f).unwrap() {
            prop_assert_eq!(ord_at(&f, &v).unwrap(), e);
        }
    }

    /// Canonicalization is idempotent and invariant under unimodular
    /// recombination of the generators.
    #[test]
    fn hnf_unimodular_invariance(
        diag in prop::collection::vec(1i64..6, 2..=3),
        mix in prop::collection::vec(-3i64..=3, 9),
        shear in -4i64..=4,
    ) {
        let d = diag.len();
        // start from a full-rank triangular generating set
        let mut gens: Vec<Vec<i64>> = (0..d)
            .map(|j| {
                (0..d)
                    .map(|i| {
                        if i == j {
                            diag[i]
                        } else if i < j {
                            mix[i * 3 + j].rem_euclid(diag[i])
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let s = hnf_canonicalize(d, &gens).unwrap();
        // idempotent
        prop_assert_eq!(&hnf_canonicalize(d, &s.columns()).unwrap(), &s);
        // add a multiple of one generator to another and reorder
        for (i, shear_target) in [(0usize, d - 1), (d - 1, 0)] {
            let mut changed = gens.clone();
            let src = changed[i].clone();
            for (x, y) in changed[shear_target].iter_mut().zip(src.iter()) {
                *x += shear * y;
            }
            changed.reverse();
            prop_assert_eq!(&hnf_canonicalize(d, &changed).unwrap(), &s);
        }
        // appending a vector already in the span changes nothing
        let extra: Vec<i64> = (0..d).map(|i| gens[0][i] + 2 * gens[d - 1][i]).collect();
        gens.push(extra);
        prop_assert_eq!(&hnf_canonicalize(d, &gens).unwrap(), &s);
    }

    /// Parsing an enumerated subgroup's serialization reproduces it.
    #[test]
    fn subgroup_parse_roundtrip(n in 1u64..40, d in 2usize..=3) {
        for s in enumerate_subgroups(d, n).unwrap() {
            let back = zdzeta::lattice::Subgroup::parse(d, &s.to_string()).unwrap();
            prop_assert_eq!(back, s);
        }
    }

    /// Factorization output re-multiplies to the input.
    #[test]
    fn factor_remultiplies(p in prop::sample::select(vec![2u64, 3, 5]),
                           coeffs in prop::collection::vec(0u64..5, 2..12)) {
        let f = PolyFp::new(p, coeffs);
        prop_assume!(!f.is_zero() && !f.is_constant());
        let mut prod = PolyFp::constant(p, f.leading_coeff());
        for (g, m) in zdzeta::funcfield::factor(&f).unwrap() {
            prop_assert!(g.is_monic());
            prod = prod.mul(&g.pow(m as u64));
        }
        prop_assert_eq!(prod, f);
    }
}
