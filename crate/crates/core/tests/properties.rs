//! Property tests for the invariants of each module, checked against the
//! independent oracles in `common`.

mod common;

use lip::continuation::{admissible_extension, build_example3, BranchSetup};
use lip::exactpoly::{interpolant_is_integer, interpolate, IntPolynomial, Sample};
use lip::gluing::{precondition_check, single_piece_verdict, GluingFamily, Piece, Precondition};
use lip::lipcore::{
    catalog_eval, closure_check, exchange_identity_check, find_circuit, lip_check, newton_decompose, newton_eval,
    tau_sequence, validate_circuit, CatalogEntry, Decomposition, Enumeration, FunctionSpec, NewtonSeries, SigmaSpec,
};
use lip::numeric::{int, Integer, Rational};
use lip::sets::{ap_intersect, density, kirch_basic_check, meets_infinitely, normalize, Progression, SetExpr};
use lip::LipError;
use num_integer::Integer as _;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn sample_strategy(max_len: usize, xr: i64, yr: i64) -> impl Strategy<Value = Vec<(Integer, Integer)>> {
    prop::collection::btree_map(-xr..=xr, -yr..=yr, 1..=max_len)
        .prop_map(|m| m.into_iter().map(|(x, y)| (int(x), int(y))).collect())
}

fn poly_strategy(max_degree: usize, c: i64) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-c..=c, 1..=max_degree + 1).prop_map(|v| IntPolynomial::from_i64s(&v))
}

fn atom() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("Z".to_string()),
        Just("N".to_string()),
        Just("P".to_string()),
        (-20i64..=20, 1i64..=12).prop_map(|(a, d)| format!("ap({a},{d})")),
        (-20i64..=20, 1i64..=12).prop_map(|(a, d)| format!("apz({a},{d})")),
        prop::collection::btree_set(-30i64..=30, 1..=4)
            .prop_map(|s| { format!("{{{}}}", s.iter().map(i64::to_string).collect::<Vec<_>>().join(",")) }),
    ]
}

fn set_expr() -> impl Strategy<Value = String> {
    atom().prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), prop_oneof![Just("|"), Just("&"), Just("\\")], inner)
            .prop_map(|(l, op, r)| format!("({l}) {op} ({r})"))
    })
}

fn eval_window(f: &FunctionSpec, lo: i64, hi: i64) -> Vec<(Integer, Integer)> {
    (lo..=hi).map(|x| (int(x), catalog_eval(f, &int(x)).unwrap())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn interpolant_matches_vandermonde(pts in sample_strategy(7, 30, 10_000)) {
        let s = Sample::new(pts.clone()).unwrap();
        let oracle = common::vandermonde(&pts);
        let p = interpolate(&s);
        prop_assert_eq!(p.coeffs(), &oracle[..]);
    }

    #[test]
    fn verdict_matches_all_subsets(pts in sample_strategy(6, 10, 20)) {
        let s = Sample::new(pts.clone()).unwrap();
        prop_assert_eq!(lip_check(&s).is_consistent(), common::all_subsets_integral(&pts));
    }

    #[test]
    fn polynomial_samples_are_consistent(p in poly_strategy(6, 50), xs in prop::collection::btree_set(-40i64..=40, 1..=10)) {
        let xs: Vec<Integer> = xs.into_iter().map(int).collect();
        let s = Sample::from_fn(&xs, |x| p.eval(x)).unwrap();
        let v = lip_check(&s);
        let w = v.witness().expect("consistent");
        prop_assert!(xs.iter().all(|x| w.eval(x) == p.eval(x)));
    }

    #[test]
    fn circuits_are_sound(pts in sample_strategy(7, 15, 40)) {
        let s = Sample::new(pts).unwrap();
        match find_circuit(&s) {
            Ok(c) => {
                prop_assert!(validate_circuit(&c, &s).unwrap());
                let sub = s.restrict(&c.elements).unwrap();
                prop_assert!(!common::vandermonde_integral(sub.points()));
                prop_assert!(c.elements.iter().all(|x| (x - &c.elements[0]).is_multiple_of(&c.denominator)));
            }
            Err(LipError::Precondition(_)) => prop_assert!(lip_check(&s).is_consistent()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn newton_round_trip(perm in Just((-8i64..=8).collect::<Vec<_>>()).prop_shuffle(), len in 1usize..=17,
                         coeffs in prop::collection::vec(-10_000i64..=10_000, 17)) {
        let e = Enumeration::from_i64s(&perm[..len]).unwrap();
        let ns = NewtonSeries::new(e.clone(), coeffs[..len].iter().map(|&c| int(c)).collect()).unwrap();
        let values: Vec<Integer> = e.prefix().iter().map(|x| newton_eval(&ns, x)).collect();
        prop_assert_eq!(newton_decompose(&e, &values).unwrap(), Decomposition::Integral { series: ns });
    }

    #[test]
    fn newton_agrees_with_verdict(pts in sample_strategy(6, 12, 30)) {
        let e = Enumeration::new(pts.iter().map(|p| p.0.clone()).collect()).unwrap();
        let values: Vec<Integer> = pts.iter().map(|p| p.1.clone()).collect();
        let integral = matches!(newton_decompose(&e, &values).unwrap(), Decomposition::Integral { .. });
        prop_assert_eq!(integral, common::vandermonde_integral(&pts));
    }

    #[test]
    fn exchange_identity(pts in sample_strategy(8, 20, 500), pick in any::<prop::sample::Index>(), k in 0usize..6) {
        prop_assume!(pts.len() >= 2);
        let s = Sample::new(pts.clone()).unwrap();
        let i = pick.index(pts.len() - 1);
        let (a, b) = (pts[i].0.clone(), pts[i + 1].0.clone());
        let set: Vec<Integer> =
            pts.iter().map(|p| p.0.clone()).filter(|x| x != &a && x != &b).take(k).collect();
        prop_assert!(exchange_identity_check(&s, &set, &a, &b).unwrap());
    }

    #[test]
    fn closure_under_composition_and_delta(p in poly_strategy(4, 10), q in poly_strategy(3, 10)) {
        let window: Vec<Integer> = (-6..=6).map(int).collect();
        prop_assert_eq!(closure_check(&p, &q, &window).unwrap(), (true, true));
        let composed = p.compose(&q);
        prop_assert!(window.iter().all(|x| composed.eval(x) == p.eval(&q.eval(x))));
    }

    #[test]
    fn alternating_series_is_odd_and_bounded(x in 1i64..=40) {
        let f = FunctionSpec::example1();
        let v = catalog_eval(&f, &int(x)).unwrap();
        prop_assert_eq!(&v, &common::alternating_direct(x));
        prop_assert_eq!(catalog_eval(&f, &int(-x)).unwrap(), -v.clone());
        prop_assert!(v.abs() <= common::factorial(2 * x as u64 - 1));
    }

    #[test]
    fn chain_products_are_lip_and_nested(m in 1i64..=4, xs in prop::collection::btree_set(-5i64..=5, 2..=6)) {
        let f = |m: i64| FunctionSpec::Catalog(CatalogEntry::chain(int(m), SigmaSpec::StandardIntegers).unwrap());
        let pts: Vec<(Integer, Integer)> = xs.iter().map(|&x| (int(x), catalog_eval(&f(m), &int(x)).unwrap())).collect();
        prop_assert!(interpolant_is_integer(&pts));
        for (x, y) in &pts {
            let next = catalog_eval(&f(m + 1), x).unwrap();
            prop_assert!(next.is_zero() && y.is_zero() || !next.is_zero() && y.is_multiple_of(&next));
        }
    }

    #[test]
    fn ap_intersection_matches_scan(a1 in -40i64..=40, d1 in 1i64..=20, a2 in -40i64..=40, d2 in 1i64..=20) {
        let p1 = Progression::nonneg(int(a1), int(d1)).unwrap();
        let p2 = Progression::nonneg(int(a2), int(d2)).unwrap();
        let scan: Vec<i64> = (-40..=2000).filter(|&x| p1.contains(&int(x)) && p2.contains(&int(x))).collect();
        match ap_intersect(&p1, &p2) {
            None => prop_assert!(scan.is_empty()),
            Some(q) => {
                let got: Vec<i64> = (-40..=2000).filter(|&x| q.contains(&int(x))).collect();
                prop_assert_eq!(got, scan);
            }
        }
    }

    #[test]
    fn normal_form_agrees_with_expression(text in set_expr()) {
        let e: SetExpr = text.parse().unwrap();
        match normalize(&e) {
            Ok(n) => {
                for x in -200..=200 {
                    prop_assert_eq!(n.contains(&int(x)), e.contains(&int(x)), "{} at {}", text, x);
                }
            }
            Err(LipError::Unsupported(_)) | Err(LipError::ModulusTooLarge { .. }) => {}
            Err(err) => prop_assert!(false, "{text}: {err}"),
        }
    }

    #[test]
    fn parse_display_round_trip(text in set_expr()) {
        let e: SetExpr = text.parse().unwrap();
        let again: SetExpr = e.to_string().parse().unwrap();
        prop_assert_eq!(again, e);
    }

    #[test]
    fn meets_is_sound(text in set_expr(), a in -10i64..=10, d in 1i64..=8) {
        let e: SetExpr = text.parse().unwrap();
        let Ok(n) = normalize(&e) else { return Ok(()) };
        prop_assume!(!n.primes_filter);
        let target = Progression::two_sided(int(a), int(d)).unwrap();
        let beyond = n.added.iter().chain(&n.removed).map(|x| x.abs()).max().unwrap_or_default() + 1;
        let span = int((n.modulus * d as u64) as i64) * 2;
        let tail: Vec<Integer> = target.elements_in(&beyond, &(&beyond + &span)).collect();
        match meets_infinitely(&n, &target) {
            lip::sets::MeetVerdict::InfinitelyMany { witness, .. } => {
                let hi = &beyond + witness.step() * 5;
                for x in witness.elements_in(&beyond, &hi) {
                    prop_assert!(n.contains(&x) && target.contains(&x));
                }
            }
            lip::sets::MeetVerdict::FinitelyMany => prop_assert!(tail.iter().all(|x| !n.contains(x))),
            lip::sets::MeetVerdict::Unknown { .. } => prop_assert!(false, "unfiltered sets are decided"),
        }
    }

    #[test]
    fn density_inclusion_exclusion(a in set_expr(), b in set_expr()) {
        let (ea, eb): (SetExpr, SetExpr) = (a.parse().unwrap(), b.parse().unwrap());
        let parts = [
            normalize(&ea),
            normalize(&eb),
            normalize(&SetExpr::union(ea.clone(), eb.clone())),
            normalize(&SetExpr::intersect(ea, eb)),
        ];
        let ds: Vec<Rational> = parts.iter().filter_map(|n| n.as_ref().ok().and_then(|n| density(n).ok())).collect();
        prop_assume!(ds.len() == 4);
        // all four must share a ground for the identity to make sense
        let grounds: Vec<_> = parts.iter().map(|n| n.as_ref().unwrap().ground).collect();
        prop_assume!(grounds.iter().all(|g| *g == grounds[0]));
        prop_assert_eq!(&ds[2] + &ds[3], &ds[0] + &ds[1]);
    }

    #[test]
    fn kirch_basics_closed_under_intersection(a1 in 1i64..=60, d1 in 1i64..=30, a2 in 1i64..=60, d2 in 1i64..=30) {
        prop_assume!(kirch_basic_check(&int(a1), &int(d1)).unwrap() && kirch_basic_check(&int(a2), &int(d2)).unwrap());
        let p1 = Progression::nonneg(int(a1), int(d1)).unwrap();
        let p2 = Progression::nonneg(int(a2), int(d2)).unwrap();
        if let Some(q) = ap_intersect(&p1, &p2) {
            prop_assert!(kirch_basic_check(q.first(), q.step()).unwrap());
        }
    }

    #[test]
    fn extension_class_is_exact(p in poly_strategy(3, 5), xs in prop::collection::btree_set(-6i64..=6, 1..=3),
                                k1 in -3i64..=3, k2 in -3i64..=3, x in -12i64..=12,
                                ab in prop::sample::select(vec![(20i64, -20i64), (9, 3), (-7, 8), (10, 14)])) {
        let (a, b) = (int(ab.0), int(ab.1));
        let base: Vec<Integer> = xs.into_iter().map(int).collect();
        prop_assume!(!base.contains(&int(x)) && int(x) != a && int(x) != b);
        let prod = |t: &Integer| base.iter().map(|z| t - z).product::<Integer>();
        let s = Sample::from_fn(&base, |t| p.eval(t)).unwrap();
        let fa = p.eval(&a) + prod(&a) * k1;
        let fb = p.eval(&b) + prod(&b) * k2;
        let Ok(setup) = BranchSetup::new(s, a.clone(), b.clone(), fa.clone(), fb.clone()) else { return Ok(()) };
        let ok = |y: &Integer| {
            let mut pa = setup.base.points().to_vec();
            pa.push((a.clone(), fa.clone()));
            pa.push((int(x), y.clone()));
            let mut pb = setup.base.points().to_vec();
            pb.push((b.clone(), fb.clone()));
            pb.push((int(x), y.clone()));
            interpolant_is_integer(&pa) && interpolant_is_integer(&pb)
        };
        match admissible_extension(&setup, &int(x)) {
            Ok(class) => {
                let m = class.modulus.to_i64().unwrap();
                let r = class.representative.to_i64().unwrap();
                let step = (m / 200).max(1);
                let mut y = r - 2 * m;
                while y <= r + 2 * m {
                    prop_assert_eq!(class.contains(&int(y)), ok(&int(y)), "y = {}", y);
                    y += step;
                }
                prop_assert!(ok(&class.min_abs()));
            }
            Err(LipError::ObstructedPoint { progression, .. }) => {
                prop_assert!(!num_integer::gcd(int(x) - &a, &a - &b).is_one());
                // brute force over a fixed window, independent of the CRT path
                if progression.contains(&int(x)) {
                    prop_assert!((-300..=300).all(|y| !ok(&int(y))));
                }
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn precondition_is_symmetric(a in set_expr(), b in set_expr()) {
        let f = FunctionSpec::Poly(IntPolynomial::from_i64s(&[1, 1]));
        let piece = |t: &str| Piece { carrier: t.parse().unwrap(), function: f.clone() };
        let ab = GluingFamily::new(vec![piece(&a), piece(&b)], int(-30), int(30)).unwrap();
        let ba = GluingFamily::new(vec![piece(&b), piece(&a)], int(-30), int(30)).unwrap();
        match (precondition_check(&ab), precondition_check(&ba)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(matches!(x, Precondition::Ok), matches!(y, Precondition::Ok)),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "{x:?} vs {y:?}"),
        }
    }

    #[test]
    fn single_piece_is_plain_check(text in set_expr(), which in 0usize..3) {
        let f = [FunctionSpec::triangular(), FunctionSpec::example1(), FunctionSpec::Poly(IntPolynomial::from_i64s(&[2, -1, 3]))][which].clone();
        let carrier: SetExpr = text.parse().unwrap();
        let piece = Piece { carrier: carrier.clone(), function: f.clone() };
        let Ok(v) = single_piece_verdict(&piece, &int(-12), &int(12)) else { return Ok(()) };
        let pts: Vec<_> = eval_window(&f, -12, 12).into_iter().filter(|(x, _)| carrier.contains(x)).collect();
        prop_assume!(!pts.is_empty());
        prop_assert_eq!(v, lip_check(&Sample::new(pts).unwrap()));
    }
}

#[test]
fn tau_bound_holds_for_several_growth_functions() {
    type Tau = fn(&Integer) -> Integer;
    let taus: [(&str, Tau); 3] = [("n", |n| n.clone()), ("2n", |n| n * 2), ("n+3", |n| n + 3)];
    for (name, tau) in taus {
        let c = tau_sequence(tau, 3, 100_000).unwrap();
        let f = FunctionSpec::Catalog(CatalogEntry::tau(c.clone()).unwrap());
        for ck in &c[1..] {
            let x: Integer = ck - 1;
            let cap: Integer = Pow::pow(x.clone(), tau(&x).to_u32().unwrap());
            assert!(catalog_eval(&f, &x).unwrap().abs() < cap, "tau = {name}, x = {x}");
        }
    }
}

#[test]
fn odd_point_deletions_stay_consistent() {
    for n in 2..=12 {
        let s = build_example3(&int(n)).unwrap();
        assert!(lip_check(&s.without(&int(-1)).unwrap()).is_consistent());
        assert!(lip_check(&s.without(&int(1)).unwrap()).is_consistent());
        assert!(!lip_check(&s).is_consistent());
    }
}
