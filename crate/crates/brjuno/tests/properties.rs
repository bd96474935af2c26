use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use brjuno::cf::{self, alpha};
use brjuno::complex::{self, ComplexBrjuno, TruncationPolicy};
use brjuno::input::RealInput;
use brjuno::lindstedt;
use brjuno::operator::{self, GridFunction};
use brjuno::series::{self, SeriesFunction};
use brjuno::surd::QuadraticSurd;
use brjuno::Real128;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

prop_compose! {
    fn surd()(d in 2u64..60, a in -40i64..40, b in 1i64..12, neg in any::<bool>(), c in 1i64..40)
        -> Option<QuadraticSurd> {
        let s = QuadraticSurd::new(a, if neg { -b } else { b }, d, c).unwrap();
        if s.is_rational() { None } else { Some(s) }
    }
}

fn irrational() -> impl Strategy<Value = QuadraticSurd> {
    surd().prop_filter_map("rational", |s| s)
}

/// Small discriminants keep the period short enough to see inside a few hundred steps.
fn small_surd() -> impl Strategy<Value = QuadraticSurd> {
    (2u64..30, -40i64..40, 1i64..4, 1i64..10).prop_filter_map("rational", |(d, a, b, c)| {
        let s = QuadraticSurd::new(a, b, d, c).unwrap();
        (!s.is_rational()).then_some(s)
    })
}

fn alphas() -> impl Strategy<Value = BigRational> {
    prop_oneof![Just(alpha(1, 2).unwrap()), Just(alpha(7, 10).unwrap()), Just(alpha(1, 1).unwrap())]
}

fn euclid(mut p: BigInt, mut q: BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    while !q.is_zero() {
        let a = num_integer::Integer::div_floor(&p, &q);
        let r = &p - &a * &q;
        out.push(a);
        p = q;
        q = r;
    }
    out
}

proptest! {
    #![proptest_config(cfg(300))]

    #[test]
    fn beta_sandwich_holds(x in 0.0f64..1.0, al in alphas()) {
        let e = cf::expand(&RealInput::from_f64_exact(x).unwrap(), &al, 40).unwrap();
        let a = al.to_f64().unwrap();
        for n in e.sandwich_indices() {
            let v = e.beta_q_next(n);
            prop_assert!(v >= 1.0 / (1.0 + a) - 1e-12 && v <= 1.0 / a + 1e-12, "n={} v={}", n, v);
        }
    }

    #[test]
    fn exact_beta_is_distance_to_convergent(p in 1i64..100_000, q in 2i64..100_000, al in alphas()) {
        let x = BigRational::new(p.into(), q.into());
        let e = cf::expand(&RealInput::Rational(x.clone()), &al, 80).unwrap();
        for n in 0..=e.depth() {
            let want = (&x * BigRational::from(e.q[n].clone()) - BigRational::from(e.p[n].clone())).abs();
            let w = want.to_f64().unwrap();
            prop_assert!((e.beta[n] - w).abs() <= 1e-14 * (1.0 + w), "n={} {} vs {}", n, e.beta[n], w);
        }
        prop_assert_eq!(e.convergent(e.depth()), x);
    }

    #[test]
    fn float_reconstruction(x in -3.0f64..3.0, al in alphas()) {
        let e = cf::expand(&RealInput::from_f64_exact(x).unwrap(), &al, 30).unwrap();
        for n in 0..=e.depth() {
            let r = e.reconstruct(n);
            prop_assert!((r - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0), "n={} {} vs {}", n, r, x);
        }
    }

    #[test]
    fn unit_alpha_matches_euclid(p in -100_000i64..100_000, q in 1i64..100_000) {
        let x = BigRational::new(p.into(), q.into());
        let e = cf::expand(&RealInput::Rational(x.clone()), &alpha(1, 1).unwrap(), 200).unwrap();
        prop_assert!(e.eps.iter().all(|&s| s == 1));
        let want = euclid(x.numer().clone(), x.denom().clone());
        prop_assert_eq!(&e.a, &want);
    }
}

proptest! {
    #![proptest_config(cfg(100))]

    #[test]
    fn surd_period_reproduces_tail(s in small_surd(), al in alphas()) {
        let e = cf::expand(&RealInput::Surd(s), &al, 300).unwrap();
        let (st, len) = e.period.expect("period");
        prop_assert!(len >= 1);
        for n in st + 1..=e.depth() - len {
            prop_assert_eq!(&e.a[n + len], &e.a[n]);
            prop_assert_eq!(e.eps[n + len], e.eps[n]);
        }
    }

    #[test]
    fn integer_shift_changes_only_a0(s in irrational(), al in alphas()) {
        let x = RealInput::Surd(s.clone());
        let y = RealInput::Surd(s.add_integer(&BigInt::from(1)));
        let ex = cf::expand(&x, &al, 30).unwrap();
        let ey = cf::expand(&y, &al, 30).unwrap();
        prop_assert_eq!(&ey.a[0] - &ex.a[0], BigInt::from(1));
        prop_assert_eq!(&ex.a[1..], &ey.a[1..]);
        prop_assert_eq!(&ex.eps, &ey.eps);
        let f = SeriesFunction::NegLog;
        let bx = series::brjuno_series(&x, &f, &al, 60).unwrap();
        let by = series::brjuno_series(&y, &f, &al, 60).unwrap();
        prop_assert_eq!(bx.value, by.value);
    }

    #[test]
    fn half_alpha_is_even(s in irrational()) {
        let half = alpha(1, 2).unwrap();
        for f in [SeriesFunction::NegLog, SeriesFunction::power(0.5).unwrap()] {
            let a = series::brjuno_series(&RealInput::Surd(s.clone()), &f, &half, 80).unwrap();
            let b = series::brjuno_series(&RealInput::Surd(s.neg()), &f, &half, 80).unwrap();
            prop_assert!((a.value - b.value).abs() <= a.error_bound + b.error_bound + 1e-12);
        }
    }

    #[test]
    fn functional_equation(s in irrational(), al in prop_oneof![Just(alpha(1, 2).unwrap()), Just(alpha(1, 1).unwrap())]) {
        let a = al.to_f64().unwrap();
        let x = s.add_integer(&-s.floor());
        prop_assume!(x.to_f64() < a && x.to_f64() > 0.0);
        let inv = x.recip().unwrap();
        for f in [SeriesFunction::NegLog, SeriesFunction::power(0.5).unwrap()] {
            let bx = series::brjuno_series(&RealInput::Surd(x.clone()), &f, &al, 80).unwrap();
            let bi = series::brjuno_series(&RealInput::Surd(inv.clone()), &f, &al, 80).unwrap();
            let xv = x.to_f64();
            let r = bx.value - xv * bi.value - f.eval(xv);
            let tol = bx.error_bound + xv * bi.error_bound + 1e-12 * bx.value.abs().max(1.0);
            prop_assert!(r.abs() <= tol, "residual {} tol {}", r, tol);
        }
    }

    #[test]
    fn even_and_gauss_versions_stay_close(s in irrational()) {
        let x = RealInput::Surd(s);
        let b = series::brjuno_b(&x, 80).unwrap();
        let be = series::brjuno_be(&x, 80).unwrap();
        prop_assert!((be.value - b.value).abs() <= 5.0, "{} vs {}", be.value, b.value);
    }

    #[test]
    fn convergent_form_stays_close(s in irrational()) {
        let x = RealInput::Surd(s);
        let e = cf::expand(&x, &alpha(1, 1).unwrap(), 60).unwrap();
        let b = series::brjuno_b(&x, 60).unwrap();
        let mut sum = 0.0;
        for n in 0..e.depth() {
            let qn = e.q[n].to_f64().unwrap();
            sum += cf::log_bigint(&e.q[n + 1]) / qn;
        }
        prop_assert!((b.value - sum).abs() <= 5.0, "{} vs {}", b.value, sum);
    }
}

fn smooth(n: usize, a: f64, k: f64, c: f64) -> GridFunction<f64> {
    GridFunction::from_fn(n, a, |x| c + (2.0 * std::f64::consts::PI * k * x).cos())
}

proptest! {
    #![proptest_config(cfg(40))]

    #[test]
    fn operator_is_linear(ca in -3.0f64..3.0, cb in -3.0f64..3.0, k in 1.0f64..4.0, al in prop_oneof![Just(alpha(1, 2).unwrap()), Just(alpha(1, 1).unwrap())]) {
        let a = al.to_f64().unwrap();
        let f = smooth(400, a, k, 1.5);
        let g = GridFunction::from_fn(400, a, |x| (x * (1.0 - x)).sqrt());
        let lhs = operator::apply_t(&f.scale(ca).add(&g.scale(cb)), &al).unwrap();
        let rhs = operator::apply_t(&f, &al).unwrap().scale(ca).add(&operator::apply_t(&g, &al).unwrap().scale(cb));
        for (l, r) in lhs.values.iter().zip(&rhs.values) {
            prop_assert!((l - r).abs() <= 1e-13 * (1.0 + r.abs()), "{} vs {}", l, r);
        }
    }

    #[test]
    fn neumann_terms_decay_geometrically(k in 1.0f64..3.0, c in 1.5f64..4.0, al in prop_oneof![Just(alpha(1, 2).unwrap()), Just(alpha(1, 1).unwrap())]) {
        let f = smooth(800, al.to_f64().unwrap(), k, c);
        let r = operator::neumann_inverse(&f, &al, 1e-10).unwrap();
        let lam = cf::lambda(&al);
        prop_assert!(r.decay_ratio <= lam + 0.05, "ratio {} lambda {}", r.decay_ratio, lam);
    }

    #[test]
    fn dilog_inversion_identity(re in -5.0f64..5.0, im in 0.001f64..5.0) {
        let z = Complex64::new(re, im);
        let lhs = complex::dilog(z).unwrap() + complex::dilog(1.0 / z).unwrap();
        let l = (-z).ln();
        let rhs = -Complex64::from(std::f64::consts::PI.powi(2) / 6.0) - 0.5 * l * l;
        prop_assert!((lhs - rhs).norm() <= 1e-10, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn monoid_count_is_monotone(q in 1u64..60, dq in 1u64..30) {
        let small = complex::monoid_enumerate(q);
        let large = complex::monoid_enumerate(q + dq);
        prop_assert!(small.len() <= large.len());
        prop_assert!(small.iter().all(|g| large.contains(g)));
        prop_assert_eq!(&small, &complex::monoid_filter(q));
        prop_assert!(small.iter().all(|g| g.is_member() && g.det().abs() == 1));
    }
}

fn complex_cb() -> &'static ComplexBrjuno {
    static CB: OnceLock<ComplexBrjuno> = OnceLock::new();
    CB.get_or_init(|| ComplexBrjuno::new(TruncationPolicy { q_max: 60, ..TruncationPolicy::default() }).unwrap())
}

proptest! {
    #![proptest_config(cfg(12))]

    #[test]
    fn shells_decay_away_from_boundary(x in 0.0f64..1.0, y in 0.1f64..2.0) {
        let ev = complex_cb().eval(Complex64::new(x, y)).unwrap();
        prop_assert!(!ev.truncation_unreliable, "x={} y={} decay={}", x, y, ev.shell_decay);
        prop_assert!(ev.shell_decay < 1.0);
        let mags: Vec<f64> = ev.shells.iter().map(|s| s.re.hypot(s.im)).collect();
        let tail = &mags[mags.len() / 2..];
        prop_assert!(tail.last().unwrap() <= tail.first().unwrap());
    }

    #[test]
    fn standard_map_terms_are_real(s in irrational(), phi in 0.0f64..1.0) {
        let sm = lindstedt::standard_map_series::<f64>(&RealInput::Surd(s), 10, 1e-9).unwrap();
        for k in 1..=sm.order() {
            for j in 0..32 {
                let (re, im) = sm.eval_order(k, phi + j as f64 / 32.0);
                prop_assert!(im.abs() <= 1e-12 * re.abs().max(1.0), "k={} im={}", k, im);
            }
        }
    }
}

#[test]
fn real_part_settles_at_surds() {
    let cb = complex_cb();
    for s in [QuadraticSurd::golden().add_integer(&BigInt::from(-1)), QuadraticSurd::metallic(2).unwrap().add_integer(&BigInt::from(-2))] {
        let x = s.to_f64();
        let re: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&eps| cb.eval(Complex64::new(x, eps)).unwrap().re)
            .collect();
        let d1 = (re[0] - re[1]).abs();
        let d2 = (re[1] - re[2]).abs();
        assert!(d2 < d1, "x={x} re={re:?}");
    }
}

/// `2/7 + 10^{-30}`: a rational with one enormous partial quotient early on.
fn liouville_like() -> RealInput {
    let big = BigInt::from(10).pow(30);
    RealInput::Rational(BigRational::new(BigInt::from(2) * &big + 7, BigInt::from(7) * big))
}

#[test]
fn radius_collapses_for_liouville_like_rho() {
    let good = [QuadraticSurd::golden(), QuadraticSurd::metallic(2).unwrap()];
    for s in good {
        let r = lindstedt::semi_standard_series::<Real128>(&RealInput::Surd(s), 60).unwrap().radius_estimates();
        let tail = &r[20..];
        assert!(tail.iter().all(|&v| v > 0.05), "{tail:?}");
    }
    let r = lindstedt::semi_standard_series::<Real128>(&liouville_like(), 60).unwrap().radius_estimates();
    let late = r[40..].iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(late < 1e-3, "{:?}", &r[40..]);
    assert!(r[59] < r[10]);
}

#[test]
fn deepest_divisors_sit_at_convergents() {
    let s = QuadraticSurd::metallic(3).unwrap();
    let x = RealInput::Surd(s);
    let e = cf::expand(&x, &alpha(1, 1).unwrap(), 10).unwrap();
    let qs: Vec<i64> = e.q.iter().map(|q| q.to_i64().unwrap()).filter(|&q| q <= 500).collect();
    let mut best = f64::INFINITY;
    for nu in 1..=500i64 {
        let v = lindstedt::small_divisor(nu, &x).value.abs();
        if v < best {
            best = v;
            assert!(qs.contains(&nu), "record minimum at {nu}, not a convergent denominator {qs:?}");
        }
    }
}
