use proptest::prelude::*;
use strat_euler::localization::fixtures::{cp2, s2_rotation, s2xs2, s4_semi_free, TANGENT};
use strat_euler::localization::{
    abbv_integral, intersection_number, main_thm2_rhs, ClassSpec, Split,
};
use strat_euler::{LocalizationProblem, Rational, Scalar};

fn lines(max: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..=max)
}

fn distinct_lambda() -> impl Strategy<Value = [i64; 3]> {
    [-6i64..=6, -6i64..=6, -6i64..=6]
        .prop_filter("distinct", |l| l[0] != l[1] && l[1] != l[2] && l[0] != l[2])
}

fn both() -> ClassSpec {
    ClassSpec::Euler(vec!["A".into(), "B".into()])
}

proptest! {
    #[test]
    fn s4_pipelines_agree(a in lines(2), b in lines(2)) {
        prop_assume!(a.len() + b.len() == 2);
        let p: LocalizationProblem = s4_semi_free(&[("A", a), ("B", b)]);
        let psi = intersection_number(&p, "A", "B").unwrap();
        let split = Split::by_weight(&p, ["A", "B"]).unwrap();
        prop_assert_eq!(main_thm2_rhs(&p, "A", "B", &split).unwrap(), psi.value);
    }

    #[test]
    fn degree_bookkeeping_on_s4(a in lines(4)) {
        // a class of real degree d integrates to a multiple of u^{(d-4)/2}
        let p: LocalizationProblem = s4_semi_free(&[("A", a.clone())]);
        let l = abbv_integral(&p, &ClassSpec::euler("A")).unwrap();
        let power = a.len() as i32 - 2;
        prop_assert!(l.terms().keys().all(|&k| k == power), "{}", l);
        // restrictions of genuine bundles on S⁴ have c1 = 0 on the fixed S²
        let c1: i64 = a.iter().map(|(_, c)| c).sum();
        if power < 0 && c1 == 0 {
            prop_assert_eq!(l.terms().len(), 0);
        }
    }

    #[test]
    fn cp2_integrals_are_polynomial_identities(
        lambda in distinct_lambda(),
        a in (-3i64..=3, -4i64..=4),
        b in (-3i64..=3, -4i64..=4),
    ) {
        // ∫ e(O(a)⊗χ_s) e(O(b)⊗χ_t) = a·b
        let p: LocalizationProblem = cp2(lambda, &[("A", a.0, a.1), ("B", b.0, b.1)]);
        let l = abbv_integral(&p, &both()).unwrap();
        prop_assert!(l.is_constant());
        prop_assert_eq!(l.constant_term(), Rational::from_int(a.0 * b.0));
        let chi = abbv_integral(&p, &ClassSpec::euler(TANGENT)).unwrap();
        prop_assert_eq!(chi.constant_term(), Rational::from_int(3));
    }

    #[test]
    fn euler_characteristics_do_not_depend_on_speeds(k in 1i64..=5, a in 1i64..=4, b in 1i64..=4) {
        let s2: LocalizationProblem = s2_rotation(k, &[]);
        prop_assert_eq!(abbv_integral(&s2, &ClassSpec::euler(TANGENT)).unwrap().constant_term(), Rational::from_int(2));
        let q: LocalizationProblem = s2xs2(a, -b);
        let l = abbv_integral(&q, &ClassSpec::euler(TANGENT)).unwrap();
        prop_assert!(l.is_constant());
        prop_assert_eq!(l.constant_term(), Rational::from_int(4));
    }

    #[test]
    fn low_degree_classes_vanish(mn in -6i64..=6, ms in -6i64..=6, k in 1i64..=3) {
        let p: LocalizationProblem = s2_rotation(k, &[("L", mn, ms)]);
        prop_assert_eq!(abbv_integral(&p, &ClassSpec::Unit).unwrap().terms().len(), 0);
        let l = abbv_integral(&p, &ClassSpec::euler("L")).unwrap();
        prop_assert!(l.is_constant());
    }
}
