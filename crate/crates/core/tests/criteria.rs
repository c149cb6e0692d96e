//! Slope criteria against direct β evaluation, plus the exact-arithmetic laws
//! everything else relies on.

use bnloci::bncalc::{
    asympt_neg, beta_classical, beta_twisted, beta_universal, dim_excess_criterion,
    leading_coeff_t4, line_bn_degree_bound, neg_slope_criterion, t4_beta_poly,
};
use bnloci::exactnum::{ceil_ratio, floor_ratio, quad_neg_threshold};
use bnloci::spanops::UniversalProblem;
use bnloci::{BundleSpec, Genus, KernelFamily, LocusSpec, NegThreshold, Rational, SlopeFactor};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn genus(g: i64) -> Genus {
    Genus::new(g).unwrap()
}

fn bundle(n: u64, d: i64) -> BundleSpec {
    BundleSpec::new(n, d).unwrap()
}

fn factor(n: u64, d: i64, k: u64) -> SlopeFactor {
    SlopeFactor::new(n, k, Rational::new(d, n).unwrap()).unwrap()
}

#[test]
fn slope_criterion_matches_beta_on_full_grid() {
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for g in 2..=6 {
        let gg = genus(g);
        for n1 in 1..=4u64 {
            for d1 in -10..=10 {
                for k1 in 1..=5u64 {
                    let f1 = factor(n1, d1, k1);
                    for n2 in 1..=4u64 {
                        for d2 in -10..=10 {
                            for k2 in 1..=5u64 {
                                let f2 = factor(n2, d2, k2);
                                let beta = beta_universal(gg, &bundle(n1, d1), &bundle(n2, d2), k1 * k2);
                                if neg_slope_criterion(gg, &f1, &f2) != beta.is_negative() {
                                    mismatches.push((g, n1, d1, k1, n2, d2, k2));
                                }
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert_eq!(checked, 5 * 420 * 420);
    assert!(mismatches.is_empty(), "{:?}", &mismatches[..mismatches.len().min(10)]);
}

#[test]
fn strict_boundary_is_not_negative() {
    let g = genus(2);
    assert_eq!(beta_universal(g, &bundle(1, 0), &bundle(1, 1), 2), BigInt::from(0));
    assert!(!neg_slope_criterion(g, &factor(1, 0, 2), &factor(1, 1, 1)));
}

#[test]
fn line_degree_bound_matches_beta() {
    for g in 2..=12 {
        let gg = genus(g);
        for n1 in 1..=8u64 {
            let bound = line_bn_degree_bound(gg, n1);
            for d1 in 0..=40 {
                let beta = beta_classical(gg, &LocusSpec::new(1, d1, n1 + 1).unwrap());
                assert_eq!(Rational::from(d1) >= bound, !beta.is_negative(), "g={g} n1={n1} d1={d1}");
            }
        }
    }
}

#[test]
fn kernel_family_leading_coefficient() {
    for g in 2..=8 {
        let gg = genus(g);
        for n1 in 2..=4u64 {
            for k1 in n1 + 1..=n1 + 4 {
                for d1 in 0..=30 {
                    let lead = leading_coeff_t4(gg, n1, d1, k1).unwrap();
                    assert_eq!(asympt_neg(gg, n1, d1, k1).unwrap(), lead.is_negative());
                    for (n, e, f) in [(1, 0, 0), (2, 7, 1), (1, 3, 2)] {
                        let fam = KernelFamily::new(n1, d1, k1, n, e, f).unwrap();
                        let poly = t4_beta_poly(gg, &fam).unwrap();
                        assert_eq!(poly.a2, lead);
                        // sample where the kernel rank d - ng - f is positive
                        let d0 = n as i64 * g + f + 1;
                        let beta_at = |d: i64| {
                            let kernel = bundle((d - n as i64 * g - f) as u64, -d);
                            let k = fam.sections_at(d);
                            let k: u64 = k.try_into().unwrap_or(0);
                            (k, beta_universal(gg, &bundle(n1, d1), &kernel, k))
                        };
                        let samples: Vec<_> = (d0 + 40..d0 + 43).map(beta_at).collect();
                        if samples.iter().all(|(k, _)| *k > 0) {
                            let second = &samples[2].1 - &samples[1].1 * 2 + &samples[0].1;
                            assert_eq!(second, &lead * 2, "g={g} n1={n1} k1={k1} d1={d1}");
                            for (i, (_, b)) in samples.iter().enumerate() {
                                assert_eq!(&poly.eval(&BigInt::from(d0 + 40 + i as i64)), b);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_family_example() {
    let fam = KernelFamily::new(2, 4, 3, 1, 6, 0).unwrap();
    let poly = t4_beta_poly(genus(3), &fam).unwrap();
    assert_eq!((poly.a2.clone(), poly.a1.clone(), poly.a0.clone()), (BigInt::from(-1), BigInt::from(12), BigInt::from(-8)));
    assert_eq!(poly.neg_threshold(), Some(NegThreshold::From(BigInt::from(12))));
    assert_eq!(leading_coeff_t4(genus(3), 2, 5, 3).unwrap(), BigInt::from(0));
    assert!(!asympt_neg(genus(3), 2, 5, 3).unwrap());
    assert!(leading_coeff_t4(genus(3), 2, 5, 2).is_err());
}

#[test]
fn dim_excess_matches_integer_form() {
    for g in 2..=6i64 {
        let gg = genus(g);
        for n1 in 1..=3u64 {
            for k1 in 1..=4u64 {
                for d1 in -6..=12 {
                    for n2 in 1..=3u64 {
                        for k2 in 1..=4u64 {
                            for d2 in -6..=12 {
                                let (n1i, n2i, k1i, k2i) = (n1 as i64, n2 as i64, k1 as i64, k2 as i64);
                                let expr = k1i * k1i * k2i * k2i - k1i * k1i - k2i * k2i
                                    - k1i * k2i * (n2i * d1 + n1i * d2 - n1i * n2i * (g - 1))
                                    + k1i * (d1 - n1i * (g - 1))
                                    + k2i * (d2 - n2i * (g - 1));
                                let crit = dim_excess_criterion(gg, &factor(n1, d1, k1), &factor(n2, d2, k2));
                                assert_eq!(crit, expr > 0);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn classical_is_twist_by_trivial_bundle() {
    for g in 2..=8 {
        for n in 1..=4u64 {
            for d in -5..=20 {
                for k in 0..=6u64 {
                    let gg = genus(g);
                    assert_eq!(
                        beta_classical(gg, &LocusSpec::new(n, d, k).unwrap()),
                        beta_twisted(gg, &bundle(n, d), &bundle(1, 0), k)
                    );
                }
            }
        }
    }
}

#[test]
fn quad_threshold_examples() {
    let r = |x: i64| Rational::from(x);
    assert_eq!(quad_neg_threshold(&r(-1), &r(12), &r(-8)), Some(NegThreshold::From(BigInt::from(12))));
    assert_eq!(quad_neg_threshold(&r(0), &r(0), &r(-1)), Some(NegThreshold::Always));
    assert_eq!(quad_neg_threshold(&r(1), &r(0), &r(-4)), None);
}

#[test]
fn ceil_floor_examples() {
    assert_eq!(ceil_ratio(7, 2).unwrap(), BigInt::from(4));
    assert_eq!(floor_ratio(-7, 2).unwrap(), BigInt::from(-4));
    assert_eq!(ceil_ratio(8, 4).unwrap(), BigInt::from(2));
    assert!(ceil_ratio(1, 0).is_err());
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..30).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

proptest! {
    #[test]
    fn beta_swap_and_twist(g in 2i64..15, n1 in 1u64..6, d1 in -30i64..30, n2 in 1u64..6, d2 in -30i64..30, k in 0u64..40, ell in -10i64..10) {
        let gg = genus(g);
        let p = UniversalProblem::new(bundle(n1, d1), bundle(n2, d2), k);
        prop_assert_eq!(p.beta(gg), p.swap().beta(gg));
        prop_assert_eq!(p.beta(gg), p.twist(ell).unwrap().beta(gg));
        let twisted = beta_universal(gg, &bundle(n1, d1 - n1 as i64 * ell), &bundle(n2, d2 + n2 as i64 * ell), k);
        prop_assert_eq!(p.beta(gg), twisted);
    }

    #[test]
    fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!(a.denom().is_positive());
        let cross = (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()));
        prop_assert_eq!(a.cmp(&b), cross);
    }

    #[test]
    fn rational_is_canonical(p in -1000i64..1000, q in -50i64..50) {
        prop_assume!(q != 0);
        let x = Rational::new(p, q).unwrap();
        prop_assert!(x.denom().is_positive());
        prop_assert_eq!(num_integer::Integer::gcd(x.numer(), x.denom()), BigInt::from(1));
        prop_assert_eq!(x.clone(), x.to_string().parse::<Rational>().unwrap());
    }

    #[test]
    fn ceil_minus_floor(a in -10_000i64..10_000, b in 1i64..500) {
        let diff = ceil_ratio(a, b).unwrap() - floor_ratio(a, b).unwrap();
        let expect = if a % b == 0 { 0 } else { 1 };
        prop_assert_eq!(diff, BigInt::from(expect));
    }

    #[test]
    fn quad_threshold_pointwise(a2 in -6i64..=0, a1 in -60i64..60, a0 in -300i64..300, den in 1i64..4) {
        let r = |x: i64| Rational::new(x, den).unwrap();
        let (c2, c1, c0) = (r(a2), r(a1), r(a0));
        let eval = |x: i64| &(&c2 * &Rational::from(x * x)) + &(&(&c1 * &Rational::from(x)) + &c0);
        match quad_neg_threshold(&c2, &c1, &c0) {
            Some(NegThreshold::From(t)) => {
                let t: i64 = t.try_into().unwrap();
                prop_assert!(!eval(t - 1).is_negative());
                for x in t..=t + 10 {
                    prop_assert!(eval(x).is_negative());
                }
                for x in t - 3..t {
                    // below the threshold the polynomial is non-negative somewhere at or above x
                    prop_assert!((x..t).any(|y| !eval(y).is_negative()));
                }
            }
            Some(NegThreshold::Always) => {
                for x in -50..50 {
                    prop_assert!(eval(x).is_negative());
                }
            }
            None => {
                let eventually = (1000..1010).all(|x| eval(x).is_negative());
                prop_assert!(!eventually);
            }
        }
    }
}
