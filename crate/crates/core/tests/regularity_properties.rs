use burau4::braid::{BraidWord, BvWord};
use burau4::decomp::{find_minimal_n, predict, with_trailing_a_inverse};
use burau4::laurent::{Direction, LaurentPoly};
use burau4::regularity::{check_instance, kernel_filter, KernelVerdict};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn reduced_word(max_len: usize) -> impl Strategy<Value = BvWord> {
    (0..=max_len, any::<u64>())
        .prop_map(|(len, seed)| BvWord::random_reduced(len, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn braid_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (0..=max_len, any::<u64>())
        .prop_map(|(len, seed)| BraidWord::random(4, len, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn deg(p: &LaurentPoly) -> Option<i32> {
    p.deg_min_opt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominant_p_forces_regularity(sigma in reduced_word(6), l in 0u32..4) {
        let d = find_minimal_n(with_trailing_a_inverse(&sigma, l), 20, 3).unwrap();
        prop_assume!(!d.p.is_zero());
        for m in 1..8u32 {
            let p_part = &d.p * &LaurentPoly::geometric_partial_sum(m, Direction::TInv);
            let r_part = &d.r * &LaurentPoly::geometric_partial_sum(m, Direction::T);
            let dp = deg(&p_part).unwrap();
            let below = |x: Option<i32>| x.is_none_or(|v| dp < v);
            if below(deg(&d.q)) && below(deg(&r_part)) {
                let o = check_instance(&sigma, d.n + m, l);
                prop_assert_eq!(o.diff, Some(-1), "{} m={} l={}", sigma, m, l);
                prop_assert!(o.regular);
            }
        }
    }

    #[test]
    fn check_instance_matches_predicted_degrees(sigma in reduced_word(6), l in 0u32..4, m in 0u32..6) {
        let d = find_minimal_n(with_trailing_a_inverse(&sigma, l), 20, 3).unwrap();
        let o = check_instance(&sigma, d.n + m, l);
        let (p11, p31) = predict(&d, m);
        prop_assert_eq!(o.rho11_degmin, deg(&p11));
        prop_assert_eq!(o.rho31_degmin, deg(&p31));
    }

    #[test]
    fn regular_means_both_nonzero_with_gap_one(sigma in reduced_word(8), m in 0u32..10, l in 0u32..10) {
        let o = check_instance(&sigma, m, l);
        let expected = matches!((o.rho11_degmin, o.rho31_degmin), (Some(a), Some(b)) if a - b == -1);
        prop_assert_eq!(o.regular, expected);
    }

    #[test]
    fn candidates_have_trivial_phi_permutation(w in braid_word(14)) {
        if kernel_filter(&w) != KernelVerdict::RejectedNotInKerPhi {
            prop_assert!(w.phi().permutation().is_identity());
        }
    }

    #[test]
    fn bokut_vesnin_words_are_in_ker_phi(w in reduced_word(4)) {
        let expected = if w.is_empty() { KernelVerdict::RejectedTrivial } else { KernelVerdict::Candidate };
        prop_assert_eq!(kernel_filter(&w.expand()), expected);
    }
}
