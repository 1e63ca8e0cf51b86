//! Cross-module properties on random rational parameters.

use degenerate_bell::bell::{self, BellPath};
use degenerate_bell::charlier::{self, CharlierPath};
use degenerate_bell::poisson;
use degenerate_bell::scalar::{from_f64, ratio, Scalar};
use degenerate_bell::stirling;
use degenerate_bell::tables::Tables;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=7).prop_map(|(p, q)| ratio(p, q))
}

fn positive() -> impl Strategy<Value = Scalar> {
    (1i64..=24, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bell_paths_agree(lambda in rational(), alpha in rational(), beta in rational()) {
        let tables = Tables::build(&lambda, 8);
        for check in bell::path_agreement_checks(&tables, &alpha, &beta) {
            prop_assert!(check.passed(), "{}", check);
        }
    }

    #[test]
    fn charlier_paths_agree(lambda in rational(), x in rational(), alpha in rational()) {
        for n in 0..=7 {
            let gf = charlier::charlier(n, &x, &alpha, &CharlierPath::GeneratingFunction);
            prop_assert_eq!(&gf, &charlier::charlier(n, &x, &alpha, &CharlierPath::Explicit));
            prop_assert_eq!(&gf, &charlier::charlier(n, &x, &alpha, &CharlierPath::Degenerate(lambda.clone())));
        }
    }

    #[test]
    fn bell_and_charlier_connections(lambda in rational(), alpha in rational(), beta in rational()) {
        let tables = Tables::build(&lambda, 7);
        let checks = charlier::bell_from_charlier_checks(&tables, &alpha, &beta)
            .into_iter()
            .chain(charlier::charlier_from_bell_checks(&tables, &alpha, &beta))
            .chain(charlier::central_bell_checks(&tables, &alpha));
        for check in checks {
            prop_assert!(check.passed(), "{}", check);
        }
    }

    #[test]
    fn stirling_inversion(lambda in rational()) {
        prop_assert!(stirling::verify_inversion(&lambda, 9).is_ok());
    }

    #[test]
    fn partial_sum_covers_exact(lambda in rational(), alpha in positive(), beta in rational(), n in 0usize..=6) {
        let exact = bell::two_variable_bell(n, &lambda, &alpha, &beta, BellPath::GeneratingFunction);
        let est = poisson::poisson_degenerate_moment(n, &lambda, &alpha, &beta, 1e-15).unwrap();
        prop_assert!(est.covers(&exact));
        prop_assert!(est.error_bound <= from_f64(1e-15).unwrap());
    }
}
