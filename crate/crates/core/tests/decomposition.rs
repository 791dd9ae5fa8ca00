use frobsum::decomposition::{
    decompose_grassmannian, decompose_invariants, decompose_ring, g1_invariants, sheaf_image,
    square_decomp, tilting_part_t, SummandKey,
};
use frobsum::params::pow;
use frobsum::{par, Level, Params, SheafKind, SummandList};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn params(n: u32, p: u32) -> Params {
    Params::new(n, p).unwrap()
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn natural(x: &BigRational) -> Option<i64> {
    (x.is_integer() && !x.is_negative()).then(|| x.to_integer().try_into().unwrap())
}

/// The sheaf a ring-level summand contributes, computed from the rational conditions on
/// `(q_t, d_t, j)` directly rather than from the integer shortcuts of the library.
fn expected_sheaf(p: u32, key: &SummandKey) -> Option<SummandKey> {
    let p = p as i64;
    match key.kind {
        SheafKind::K => {
            let j = key.param as i64;
            let d_t = key.shift - p * (j + 2);
            let e = ratio(j, 2) + ratio(d_t, 2 * p);
            natural(&e).map(|e| SummandKey::new(SheafKind::WedgeR, j as u64, -e))
        }
        SheafKind::T if key.param == 0 => {
            natural(&ratio(key.shift, 2 * p)).map(|e| SummandKey::new(SheafKind::O, 0, -e))
        }
        SheafKind::T => {
            let q_t = key.param as i64 * p + 2 * p - 2;
            assert_eq!((q_t - 2 * p + 2) % p, 0);
            assert_ne!(q_t, p - 2);
            let e = ratio(q_t - 2 * p + 2 + key.shift, 2 * p);
            let m = ((q_t - 2 * p + 2) / p) as u64;
            natural(&e).map(|e| SummandKey::new(SheafKind::Tm, m, -e))
        }
        _ => None,
    }
}

#[test]
fn sheaf_rules_match_rational_conditions() {
    for n in 4..=8 {
        for p in PRIMES {
            let ring = decompose_ring(&params(n, p)).unwrap();
            for (key, _) in ring.iter() {
                assert_eq!(sheaf_image(p, key), expected_sheaf(p, key), "n={n} p={p} {key:?}");
            }
        }
    }
}

#[test]
fn sheaf_list_is_image_of_ring_list() {
    for n in 4..=7 {
        for p in PRIMES {
            let ring = decompose_ring(&params(n, p)).unwrap();
            let sheaf = decompose_grassmannian(&params(n, p)).unwrap();
            let mut want = SummandList::new(Level::Sheaf, n, p);
            for (key, c) in ring.iter() {
                if let Some(image) = expected_sheaf(p, key) {
                    want.add(image, c);
                }
            }
            assert_eq!(sheaf, want);
        }
    }
}

#[test]
fn weights_and_parities() {
    for n in 4..=8 {
        for p in PRIMES {
            let list = decompose_invariants(&params(n, p)).unwrap();
            for ((m, d), c) in list.tilt_entries() {
                assert!(c.is_positive());
                assert!(m <= (n - 3) as u64, "n={n} p={p} T({m}) shift {d}");
                assert_eq!((d - (m * p as u64) as i64).rem_euclid(2), 0, "n={n} p={p} m={m} d={d}");
            }
            for ((j, c), mult) in list.k_entries() {
                assert!(mult.is_positive());
                assert!((1..=(n - 3) as u64).contains(&j));
                assert!(c >= p as i64 * (j as i64 + 2));
            }
        }
    }
}

#[test]
fn rank_sums() {
    for n in 4..=8 {
        for p in PRIMES {
            let inv = decompose_invariants(&params(n, p)).unwrap();
            assert_eq!(inv.rank_sum(), pow(p, 2 * n - 3), "n={n} p={p}");
            let sheaf = decompose_grassmannian(&params(n, p)).unwrap();
            assert_eq!(sheaf.rank_sum(), pow(p, 2 * (n - 2)), "n={n} p={p}");
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    for (n, p) in [(5, 3), (6, 5), (7, 2)] {
        let par_result = (square_decomp(&params(n, p)).unwrap(), decompose_grassmannian(&params(n, p)).unwrap());
        let seq_result = par::single_threaded(|| {
            (square_decomp(&params(n, p)).unwrap(), decompose_grassmannian(&params(n, p)).unwrap())
        });
        assert_eq!(par_result, seq_result);
    }
}

#[test]
fn small_n_is_rejected() {
    for n in 1..4 {
        assert!(decompose_invariants(&params(n, 3)).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn square_has_full_dimension(n in 2u32..=6, p in prop::sample::select(PRIMES.to_vec())) {
        let dec = square_decomp(&params(n, p)).unwrap();
        prop_assert_eq!(dec.dimension(p), pow(p, 2 * n));
        prop_assert_eq!(dec.mult(0, 0), BigInt::from(1));
        prop_assert_eq!(dec.mult(0, (2 * n * (p - 1)) as usize), BigInt::from(1));
        let inv = g1_invariants(p, &dec);
        for ((m, d), c) in inv.iter() {
            prop_assert!(c.is_positive());
            prop_assert!(!dec.iter().all(|((u, e), _)| e != d || u < m));
        }
    }

    #[test]
    fn tilting_part_is_nonnegative(n in 4u32..=7, p in prop::sample::select(PRIMES.to_vec())) {
        let t = tilting_part_t(&params(n, p)).unwrap();
        prop_assert!(t.iter().all(|(_, c)| c.is_positive()));
        prop_assert!(!t.mult(0, 0).is_zero());
    }
}
