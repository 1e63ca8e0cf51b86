//! Every cargo example runs to completion.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        #[path = $file]
        mod $name;

        #[test]
        fn $name() {
            $name::run_example();
        }
    };
}

example!(stirling_tables, "../examples/stirling_tables.rs");
example!(series_engine, "../examples/series_engine.rs");
example!(two_variable_bell, "../examples/two_variable_bell.rs");
example!(stirling_type, "../examples/stirling_type.rs");
example!(poisson_moments, "../examples/poisson_moments.rs");
example!(charlier, "../examples/charlier.rs");
example!(verify_suites, "../examples/verify_suites.rs");
