use frobsum::bruteforce::{bruteforce_g1_dim, estimated_bytes, DEFAULT_BUDGET};
use frobsum::char_calculus::weyl_char;
use frobsum::decomposition::{decompose_invariants, decompose_ring};
use frobsum::hilbert::{
    char_k, char_s_degree, hs_covariant, hs_covariant_closed, hs_k, hs_k_numerator, hs_m,
    hs_m_euler, hs_of_summand_list, hs_ring, invariant_dim, ring_identity_failure,
    verify_identities, Oracle, VerifyOptions,
};
use frobsum::ncr::{hom_hilbert_matrix, ncr_analysis, Module, RationalSeriesMatrix};
use frobsum::params::binomial;
use frobsum::series::inverse_power_of_one_minus;
use frobsum::{Params, TruncSeries};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn covariants_closed_form(n in 2u32..=8, v in 0u64..=10) {
        prop_assert_eq!(hs_covariant(n, v, 40), hs_covariant_closed(n, v, 40));
    }

    #[test]
    fn character_of_s_has_monomial_count(n in 1u32..=7, d in 0usize..=12) {
        let c = char_s_degree(n, d);
        prop_assert_eq!(c.dimension(), binomial(2 * n as i64 + d as i64 - 1, d as i64));
        prop_assert!(c.is_symmetric());
    }
}

#[test]
fn m_series_two_ways() {
    for n in 4..=8 {
        for j in 0..=n - 2 {
            assert_eq!(hs_m(n, j, 30), hs_m_euler(n, j, 30), "n={n} j={j}");
        }
    }
}

#[test]
fn k_series_from_numerator() {
    for n in 4..=8 {
        for j in 1..=n - 3 {
            let num = TruncSeries::from_coeffs(30, hs_k_numerator(n, j));
            let want = &num * &inverse_power_of_one_minus(1, 2 * n as usize, 30);
            assert_eq!(hs_k(n, j, 30), want, "n={n} j={j}");
            // rank of K_j is C(n-2, j)
            let rank: BigInt = hs_k_numerator(n, j).iter().sum();
            assert_eq!(rank, binomial(n as i64 - 2, j as i64));
            for d in 0..6 {
                assert_eq!(&char_k(n, j, d).dimension(), hs_k(n, j, 6).coeff(d));
            }
        }
    }
}

#[test]
fn ring_series_from_characters() {
    let ring = hs_ring(5, 14);
    for d in 0..=14 {
        assert_eq!(ring.coeff(d), &invariant_dim(&char_s_degree(5, d)));
    }
}

#[test]
fn bruteforce_matches_invariant_series() {
    for (n, p, top) in [(4, 2, 6), (4, 3, 6), (5, 2, 5), (4, 5, 5)] {
        let params = Params::new(n, p).unwrap();
        let series = hs_of_summand_list(&decompose_invariants(&params).unwrap(), top).unwrap();
        for d in 0..=top {
            let dim = bruteforce_g1_dim(p, n, d, DEFAULT_BUDGET).unwrap();
            assert_eq!(&dim, series.coeff(d), "n={n} p={p} d={d}");
        }
    }
    assert!(estimated_bytes(4, 6) < DEFAULT_BUDGET);
}

#[test]
fn ring_identity_holds() {
    for n in 4..=7 {
        for p in [2, 3, 5, 7] {
            let ring = decompose_ring(&Params::new(n, p).unwrap()).unwrap();
            assert_eq!(ring_identity_failure(&ring, 40).unwrap(), None, "n={n} p={p}");
        }
    }
}

#[test]
fn verify_report_is_clean() {
    let params = Params::with_truncation(5, 3, 10).unwrap();
    let options = VerifyOptions { oracle: Oracle::Both, budget: 1 << 22 };
    let report = verify_identities(&params, options).unwrap();
    assert!(report.all_ok(), "{report:?}");
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    assert!(names.contains(&"ring_series") && names.contains(&"bruteforce_g1"));
}

#[test]
fn hom_entries_from_characters() {
    let (n, trunc) = (5, 8);
    let h = hom_hilbert_matrix(n, trunc).unwrap();
    for a in 0..=n - 3 {
        for b in 0..=n - 3 {
            let wab = &weyl_char(a as i64).unwrap() * &weyl_char(b as i64).unwrap();
            for d in 0..=trunc {
                let want = invariant_dim(&(&wab * &char_s_degree(n, d)));
                assert_eq!(h.entry(Module::T(a), Module::T(b)).coeff(d), &want);
            }
        }
        for j in 1..=n - 3 {
            let wa = weyl_char(a as i64).unwrap();
            for d in 0..=trunc {
                let want = invariant_dim(&(&wa * &char_k(n, j, d)));
                assert_eq!(h.entry(Module::T(a), Module::K(j)).coeff(d), &want);
            }
        }
    }
}

#[test]
fn ncr_inverse_is_polynomial() {
    let (h, g, report) = ncr_analysis(5, 40, 12).unwrap();
    assert!(report.ok(), "{report:?}");
    assert_eq!(report.polynomiality.max_degree, Some(10));
    let hq = RationalSeriesMatrix::from_integer_entries(&h.entries);
    assert!(g.mul(&hq).is_identity());

    let mut broken = h.entries.clone();
    broken[1][2].add_at(3, &BigInt::from(1));
    let bq = RationalSeriesMatrix::from_integer_entries(&broken);
    let bg = frobsum::ncr::invert_truncated_matrix(&bq).unwrap();
    assert!(!frobsum::ncr::polynomiality_report(&bg, 12).polynomial);
}
