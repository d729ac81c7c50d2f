mod props;

macro_rules! checks {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = props::$name() {
                    panic!("{e}");
                }
            }
        )*

        #[test]
        fn every_check_is_listed() {
            let here = [$(stringify!($name)),*];
            let listed: Vec<&str> = props::ALL.iter().map(|(n, _)| *n).collect();
            assert_eq!(here.as_slice(), listed.as_slice());
        }
    };
}

checks!(
    ring_axioms,
    ring_canonical_form,
    ring_gl_class,
    series_algebra,
    series_dt_coefficients,
    quiver_skew_form,
    quiver_torus_associative,
    quiver_framed_span_closed,
    quiver_stability_base_change,
    quiver_routes_agree,
    pp_statistics_exhaustive,
    pp_colored_x_formulas,
    pp_polynomials,
    saddle_sandwich,
    saddle_tilted,
    saddle_monotone,
    faulhaber_forms,
    partials_direct_sums,
    moments_converge,
    oracle_ratio_denominator,
);
