//! Property tests over random inputs.

use cotype_core::estimate::Witness;
use cotype_core::matrix::Matrix;
use cotype_core::seq::{SymmetricNorm, SymmetricSpace};
use cotype_core::snumbers::approximation_numbers;
use cotype_core::{Budget, GrowthSequence, LinearMap, NormedSpace};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = SymmetricSpace<f64>> {
    prop_oneof![
        prop::sample::select(vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY]).prop_map(|p| SymmetricSpace::lp(p).unwrap()),
        (prop::sample::select(vec![1.5, 2.0, 3.0]), prop::sample::select(vec![1.0, 2.0, f64::INFINITY]))
            .prop_map(|(p, q)| SymmetricSpace::lorentz(p, q).unwrap()),
        (0.0..=1.0f64).prop_map(|a| SymmetricSpace::gweak(GrowthSequence::power(a))),
    ]
}

fn vector(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, n)
}

fn matrix(m: usize, n: usize) -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec(-3.0..3.0f64, m * n).prop_map(move |d| Matrix::from_row_major(m, n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rearrangement_invariant(y in family(), v in vector(1..=24), shift in 0usize..24, flips in prop::collection::vec(any::<bool>(), 24)) {
        let mut w: Vec<f64> = v.iter().zip(&flips).map(|(x, &f)| if f { -x } else { *x }).collect();
        let k = shift % w.len();
        w.rotate_left(k);
        prop_assert_eq!(y.norm(&v).unwrap().to_bits(), y.norm(&w).unwrap().to_bits());
    }

    #[test]
    fn between_sup_and_sum(y in family(), v in vector(1..=24)) {
        let sup = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let sum: f64 = v.iter().map(|x| x.abs()).sum();
        let n = y.norm(&v).unwrap();
        prop_assert!(n >= sup * (1.0 - 1e-12));
        prop_assert!(n <= sum * (1.0 + 1e-12));
    }

    #[test]
    fn normed_triangle(p in prop::sample::select(vec![1.0, 1.5, 2.0, 4.0, f64::INFINITY]), a in vector(6..=6), b in vector(6..=6)) {
        let x = NormedSpace::lp(p, 6).unwrap();
        let s: Vec<f64> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
        prop_assert!(x.norm(&s).unwrap() <= (x.norm(&a).unwrap() + x.norm(&b).unwrap()) * (1.0 + 1e-12));
    }

    #[test]
    fn operator_witness_reevaluates(p in prop::sample::select(vec![1.0, 1.5, 3.0]), q in prop::sample::select(vec![1.0, 2.0, 4.0]), a in matrix(3, 4), seed in 0u64..1000) {
        let t = LinearMap::new(a, NormedSpace::lp(p, 4).unwrap(), NormedSpace::lp(q, 3).unwrap()).unwrap();
        let est = t.operator_norm(Budget::new(2, 100), seed);
        if let Witness::Vector(x) = &est.witness {
            prop_assert!((t.ratio(x) - est.value).abs() <= 1e-9 * est.value.max(1.0));
        }
        if let (Some(lo), Some(hi)) = (est.lower_bound(), est.upper_bound()) {
            prop_assert!(lo <= hi * (1.0 + 1e-9));
        }
    }

    #[test]
    fn operator_norm_submultiplicative(a in matrix(4, 3), b in matrix(3, 5)) {
        let s = LinearMap::euclidean(a);
        let t = LinearMap::euclidean(b);
        let st = s.compose(&t).unwrap();
        let b0 = Budget::default();
        prop_assert!(st.operator_norm(b0, 0).value <= s.operator_norm(b0, 0).value * t.operator_norm(b0, 0).value * (1.0 + 1e-10));
    }

    #[test]
    fn approximation_numbers_decrease(a in matrix(5, 4)) {
        let s = approximation_numbers(&LinearMap::euclidean(a), Budget::default(), 0);
        prop_assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
    }
}
