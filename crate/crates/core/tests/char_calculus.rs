use frobsum::char_calculus::{
    decompose_tilting_char, nabla_mults, tensor_decompose_simples, tilting_char, tilting_digits,
    tilting_dim, weyl_char,
};
use frobsum::{TiltingMultiset, WeightChar};
use num_bigint::BigInt;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7, 11, 13])
}

fn nabla_character(p: u32, u: u64) -> WeightChar {
    let mut c = WeightChar::zero();
    for (v, m) in nabla_mults(p, u) {
        c += &weyl_char(v as i64).unwrap().scale(&BigInt::from(m));
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn digits_reconstruct(p in prime(), u in 0u64..5000) {
        let digits = tilting_digits(p, u);
        let p64 = p as u64;
        let value: u64 = digits.iter().rev().fold(0, |acc, &d| acc * p64 + d);
        prop_assert_eq!(value, u);
        let (last, rest) = digits.split_last().unwrap();
        for &d in rest {
            prop_assert!(d >= p64 - 1 && d <= 2 * p64 - 2);
        }
        if !rest.is_empty() {
            prop_assert!(*last < p64 - 1);
        }
    }

    #[test]
    fn tilting_round_trip(p in prime(), u in 0u64..400) {
        let c = tilting_char(p, u);
        prop_assert!(c.is_symmetric());
        prop_assert_eq!(c.dimension(), tilting_dim(p, u));
        prop_assert_eq!(decompose_tilting_char(p, &c).unwrap(), TiltingMultiset::from_pairs([(u, 1)]));
        prop_assert_eq!(&nabla_character(p, u), &*c);
    }

    #[test]
    fn simple_tensor_products(p in prime(), a in 0i64..13, b in 0i64..13) {
        let (a, b) = (a.min(p as i64 - 1), b.min(p as i64 - 1));
        let (a, b) = if a >= b { (a, b) } else { (b, a) };
        let prod = tensor_decompose_simples(p, a, b).unwrap();
        let lhs = &weyl_char(a).unwrap() * &weyl_char(b).unwrap();
        prop_assert_eq!(prod.character(p), lhs);
        prop_assert_eq!(prod.dimension(p), BigInt::from((a + 1) * (b + 1)));
    }

    #[test]
    fn sums_of_tiltings_decompose(p in prime(), us in prop::collection::vec(0u64..60, 1..6)) {
        let mut c = WeightChar::zero();
        let mut want = TiltingMultiset::new();
        for &u in &us {
            c += &*tilting_char(p, u);
            want.add(u, &BigInt::from(1));
        }
        // mixed parities are rejected, single parity decomposes back
        let parity = us[0] % 2;
        if us.iter().all(|u| u % 2 == parity) {
            prop_assert_eq!(decompose_tilting_char(p, &c).unwrap(), want);
        } else {
            prop_assert!(decompose_tilting_char(p, &c).is_err());
        }
    }
}

#[test]
fn weyl_character_is_not_tilting_in_general() {
    // weyl(p) for p odd is not a combination of tilting characters
    let err = decompose_tilting_char(3, &weyl_char(3).unwrap()).unwrap_err();
    assert!(matches!(err, frobsum::error::CharError::NotTilting { .. }));
}
