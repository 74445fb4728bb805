use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vmonotone::fock::{annihilation_sum, creation_sum, FockBasisIndex, FockOperator, FockVector};
use vmonotone::labelings::{cutoff, is_valley};
use vmonotone::mgf::{big_s, big_t, mgf, s_domain_max, MgfConfig};
use vmonotone::moments::{mixed_moment_combinatorial, mixed_moment_recursive, MatrixState};
use vmonotone::partitions::{enumerate_nc_pair, Partition};
use vmonotone::verify::random_rational_matrix;

type Q = BigRational;

fn valley_word() -> impl Strategy<Value = FockBasisIndex> {
    prop::collection::vec(1u64..=4, 0..5).prop_filter_map("valley", |w| FockBasisIndex::new(w).ok())
}

fn fock_vector() -> impl Strategy<Value = FockVector<Q>> {
    prop::collection::vec((valley_word(), -6i64..=6), 0..6).prop_map(|terms| {
        FockVector::from_terms(
            terms
                .into_iter()
                .map(|(w, c)| (w, Q::from_integer(c.into()))),
        )
    })
}

fn to_f64(v: &FockVector<Q>) -> FockVector<f64> {
    FockVector::from_terms(v.iter().map(|(k, c)| (k.clone(), c.to_f64().unwrap())))
}

proptest! {
    #[test]
    fn creation_is_adjoint_to_annihilation(x in fock_vector(), y in fock_vector(), i in 1u64..=4) {
        let a = FockOperator::<Q>::create(i);
        let s = FockOperator::<Q>::annihilate(i);
        prop_assert_eq!(a.apply(&x).inner(&y), x.inner(&s.apply(&y)));
    }

    #[test]
    fn creations_have_orthogonal_ranges(x in fock_vector(), y in fock_vector(), i in 1u64..=4, j in 1u64..=4) {
        prop_assume!(i != j);
        let ax = FockOperator::<Q>::create(i).apply(&x);
        let ay = FockOperator::<Q>::create(j).apply(&y);
        prop_assert_eq!(ax.inner(&ay), Q::from_integer(0.into()));
    }

    #[test]
    fn normalized_sums_are_contractions(x in fock_vector(), n in 1u64..=6) {
        let x = to_f64(&x);
        let norm = x.norm_sq().sqrt();
        let scale = 1.0 / (n as f64).sqrt();
        let ax = creation_sum::<f64>(n).apply(&x).scale(&scale);
        let sx = annihilation_sum::<f64>(n).apply(&x).scale(&scale);
        prop_assert!(ax.norm_sq().sqrt() <= norm * (1.0 + 1e-12) + 1e-12);
        prop_assert!(sx.norm_sq().sqrt() <= norm * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn cutoff_prefix_is_a_valley(seq in prop::collection::vec(1u64..=5, 1..9)) {
        prop_assume!(seq.windows(2).all(|w| w[0] != w[1]));
        let r = cutoff(&seq).unwrap();
        prop_assert!(r >= 1 && r <= seq.len());
        prop_assert!(is_valley(&seq[..r]));
        if r < seq.len() {
            prop_assert!(!is_valley(&seq[..=r]));
        }
    }

    #[test]
    fn first_pair_split_round_trips(n in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let all: Vec<Partition> = enumerate_nc_pair(2 * n).unwrap().collect();
        let pi = pick.get(&all);
        let (inner, outer) = pi.split_first_pair().unwrap().unwrap();
        prop_assert_eq!(&Partition::join_pair(&inner, &outer), pi);
    }

    #[test]
    fn recursion_matches_combinatorial_formula(
        seq in prop::collection::vec(1u64..=3, 1..=6),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = MatrixState::<Q>::new();
        let mats: Vec<_> = seq.iter().map(|_| random_rational_matrix(&mut rng, 3)).collect();
        prop_assert_eq!(
            mixed_moment_recursive(&st, &seq, &mats).unwrap(),
            mixed_moment_combinatorial(&st, &seq, &mats).unwrap()
        );
    }

    #[test]
    fn mgf_is_even_and_at_least_one(z in -0.45f64..0.45) {
        let cfg = MgfConfig::default();
        let (a, b) = (mgf(z, &cfg).unwrap(), mgf(-z, &cfg).unwrap());
        prop_assert!((a - b).abs() <= 1e-13 * a);
        prop_assert!(a >= 1.0 - 1e-15);
    }

    #[test]
    fn s_inverts_exp_t(frac in 1e-6f64..=1.0) {
        let u = frac * s_domain_max();
        let t = big_s(u, &MgfConfig::default()).unwrap();
        prop_assert!((big_t(t).unwrap().exp() - u).abs() < 1e-10);
    }
}
