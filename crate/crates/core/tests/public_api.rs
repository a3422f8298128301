use h2knot_core::{
    cf_eval, cf_expand, composite_u2_one, d_lens, equivalent, find_berge_witnesses, matching_exists,
    normalize, u2_classify, u2_upper_bound, units_of, Error, ExactRational, TwoBridgeLink,
};
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (2i64..400, 1i64..400).prop_filter("coprime", |&(p, q)| num_integer::Integer::gcd(&p, &q) == 1)
}

proptest! {
    #[test]
    fn continued_fraction_round_trips((p, q) in coprime_pair()) {
        let l = normalize(p, q).unwrap();
        let cf = cf_expand(&l).unwrap();
        prop_assert!(cf.terms().iter().all(|&a| a > 0));
        prop_assert_eq!(cf_eval(&cf).unwrap(), ExactRational::frac(l.p() as i64, l.q() as i64));
    }

    #[test]
    fn classification_is_consistent((p, q) in coprime_pair()) {
        let l = normalize(p, q).unwrap();
        let c = u2_classify(&l);
        prop_assert!(c.lower <= c.upper);
        prop_assert_eq!(c.upper, u2_upper_bound(&l));
        prop_assert_eq!(c.exact.is_some(), c.lower == c.upper);
        // the lower bound is a link invariant; the suffix bound depends on the presentation
        let inv = h2knot_core::mod_inverse(l.q() as i64, l.p()).unwrap();
        let other = normalize(p, inv as i64).unwrap();
        prop_assert!(equivalent(&l, &other, false));
        let c2 = u2_classify(&other);
        prop_assert_eq!(c.lower, c2.lower);
    }

    #[test]
    fn witnesses_verify(alpha in 1u64..600, beta in -800i64..800) {
        prop_assume!(num_integer::Integer::gcd(&(alpha as i64), &beta) == 1);
        for w in find_berge_witnesses(alpha, beta, None).unwrap() {
            prop_assert!(w.verify(alpha, beta));
        }
    }

    #[test]
    fn composite_is_symmetric((p, q) in coprime_pair(), (r, s) in coprime_pair()) {
        let a = normalize(p, q).unwrap();
        let b = normalize(r, s).unwrap();
        let x = composite_u2_one(&a, &b, false).unwrap();
        let y = composite_u2_one(&b, &a, false).unwrap();
        prop_assert_eq!(x.u2_is_one, y.u2_is_one);
        if let Some(w) = x.witness {
            prop_assert!(w.verify(&a, &b, false));
        }
    }
}

#[test]
fn berge_realizable_knots_pass_the_matching_test() {
    for p in (3..=101u64).step_by(2) {
        for q in units_of(p) {
            let l = normalize(p as i64, q as i64).unwrap();
            if h2knot_core::u2_is_one_2bridge(&l, None).unwrap().0 {
                assert!(matching_exists(&d_lens(&l).unwrap()).unwrap().feasible, "S({p},{q})");
            }
        }
    }
}

#[test]
fn d_table_sum_is_exact() {
    let t = d_lens(&normalize(23, 3).unwrap()).unwrap();
    let total = t.values().iter().fold(ExactRational::zero(), |acc, v| acc + v.clone());
    assert_eq!(total, ExactRational::frac(21, 2));
}

#[test]
fn domain_errors() {
    assert!(matches!(normalize(6, 4), Err(Error::NonCoprime { .. })));
    assert!(matches!(normalize(0, 1), Err(Error::InvalidParameter(_))));
    assert!(matches!(h2knot_core::u2_is_one_2bridge(&TwoBridgeLink::UNKNOT, None), Err(Error::InvalidParameter(_))));
    assert!(matches!(matching_exists(&d_lens(&normalize(8, 3).unwrap()).unwrap()), Err(Error::EvenOrder(8))));
}
