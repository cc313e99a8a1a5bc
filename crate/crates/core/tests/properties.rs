use proptest::prelude::*;

use ineq::bessel::{bessel_reverse_ball, bessel_reverse_pair};
use ineq::conditions::{self, ConditionForm, ScalarPair};
use ineq::harness::{
    evaluate, parse_instances, run_suite, sample_admissible, InstanceFile, Outcome, RecordPolicy,
    SuiteConfig, TheoremId,
};
use ineq::schwarz::{reverse_schwarz_ball, reverse_schwarz_pair};
use ineq::sharpness::{geometric_grid, sweep, Construction};
use ineq::space::{
    fourier_coefficients, gram_defect, inner, norm, norm_sq, CoefficientSequence,
    OrthonormalFamily, SchwarzDefect,
};
use ineq::triangle::triangle_reverse_pair;
use ineq::{FieldTag, Scalar, Vector};

fn field() -> impl Strategy<Value = FieldTag> {
    prop_oneof![Just(FieldTag::Real), Just(FieldTag::Complex)]
}

fn scalars(field: FieldTag, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), n).prop_map(move |v| {
        v.into_iter()
            .map(|(re, im)| match field {
                FieldTag::Real => Scalar::new(re, 0.0),
                FieldTag::Complex => Scalar::new(re, im),
            })
            .collect()
    })
}

/// Two vectors of one dimension and field.
fn vector_pair() -> impl Strategy<Value = (Vector, Vector)> {
    (field(), 1usize..8).prop_flat_map(|(f, n)| {
        (scalars(f, n), scalars(f, n))
            .prop_map(move |(a, b)| (Vector::new(f, a).unwrap(), Vector::new(f, b).unwrap()))
    })
}

fn admissible_theorem() -> impl Strategy<Value = (TheoremId, FieldTag, usize, u64)> {
    (
        prop::sample::select(TheoremId::all()),
        field(),
        1usize..10,
        any::<u64>(),
    )
}

fn tol(bound: f64) -> f64 {
    1e-9 * (1.0 + bound.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inner_product_is_hermitian((x, y) in vector_pair()) {
        let xy = inner(&x, &y).unwrap();
        let yx = inner(&y, &x).unwrap();
        prop_assert!((xy - yx.conj()).norm() <= 1e-14 * (1.0 + norm(&x) * norm(&y)));
        let d1 = gram_defect(&x, &y).unwrap();
        let d2 = gram_defect(&y, &x).unwrap();
        prop_assert!((d1 - d2).abs() <= 1e-12 * (1.0 + norm_sq(&x) * norm_sq(&y)));
        prop_assert!(d1 >= 0.0);
        let s = SchwarzDefect::new(&x, &y).unwrap();
        prop_assert!(s.abs_gap() >= 0.0);
    }

    #[test]
    fn admissible_samples_satisfy_every_chain((t, f, dim, seed) in admissible_theorem()) {
        let spec = sample_admissible(t, f, dim, seed).unwrap();
        let ev = evaluate(&spec).unwrap();
        prop_assert!(ev.admissible(), "{t}: {:?}", ev.admissibility);
        prop_assert!(ev.passes(1e-9), "{t}: {:?}", ev.failed_checks(1e-9));
        prop_assert!(ev.gap >= -1e-12 * (1.0 + ev.bound.abs()));
    }

    #[test]
    fn instance_json_round_trips((t, f, dim, seed) in admissible_theorem()) {
        let spec = sample_admissible(t, f, dim, seed).unwrap();
        let text = serde_json::to_string(&InstanceFile { instances: vec![spec.clone()] }).unwrap();
        let back = parse_instances(&text).unwrap();
        prop_assert_eq!(&back.instances[0], &spec);
        prop_assert_eq!(evaluate(&back.instances[0]).unwrap(), evaluate(&spec).unwrap());
    }

    #[test]
    fn schwarz_chains_are_monotone((x, a) in vector_pair(), t in 0.0..1.0f64, r in 1e-3..5.0f64) {
        // pull x into the ball around a
        let x = a.axpy(Scalar::new(t * r / norm(&x).max(1e-300), 0.0), &x).unwrap();
        let chain = reverse_schwarz_ball(&x, &a, r).unwrap();
        prop_assert!(chain.admissibility.holds);
        prop_assert!(chain.is_monotone(1e-9), "{:?}", chain);
        prop_assert!(chain.slack >= -tol(chain.bound));
    }

    #[test]
    fn ball_chain_is_homogeneous_of_degree_two((x, a) in vector_pair(), r in 1e-2..3.0f64, s in 0.1..10.0f64) {
        let c1 = reverse_schwarz_ball(&x, &a, r).unwrap();
        let k = Scalar::new(s, 0.0);
        let c2 = reverse_schwarz_ball(&x.scale(k), &a.scale(k), s * r).unwrap();
        for (u, w) in c1.values.iter().zip(&c2.values) {
            let scale = s * s * (norm(&x) * norm(&a) + r * r);
            prop_assert!((w - s * s * u).abs() <= 1e-12 * scale, "{u} {w}");
        }
        prop_assert_eq!(c1.admissibility.holds, c2.admissibility.holds);
    }

    #[test]
    fn pair_chain_is_invariant_under_joint_rotation(
        (x, y) in vector_pair(),
        lo in 0.1..2.0f64,
        width in 0.1..2.0f64,
        phase in 0.0..std::f64::consts::TAU,
    ) {
        prop_assume!(norm(&y) > 1e-3);
        let pair = ScalarPair::real(lo, lo + width);
        let c1 = reverse_schwarz_pair(&x, &y, &pair).unwrap();
        let u = Scalar::from_polar(1.0, phase);
        let (xc, yc) = (
            x.clone().into_field(FieldTag::Complex).unwrap(),
            y.clone().into_field(FieldTag::Complex).unwrap(),
        );
        let c2 = reverse_schwarz_pair(&xc.scale(u), &yc.scale(u), &pair).unwrap();
        let scale = 1.0 + norm_sq(&x) + norm_sq(&y) * (lo + width).powi(2);
        for (a, b) in c1.values.iter().zip(&c2.values) {
            prop_assert!((a - b).abs() <= 1e-12 * scale, "{a} {b}");
        }
    }

    #[test]
    fn real_instances_collapse_under_complexification(
        (t, dim, seed) in (prop::sample::select(TheoremId::all()), 1usize..8, any::<u64>())
    ) {
        let real = sample_admissible(t, FieldTag::Real, dim, seed).unwrap();
        let mut lifted = real.clone();
        lifted.field = FieldTag::Complex;
        let (a, b) = (evaluate(&real).unwrap(), evaluate(&lifted).unwrap());
        let scale = 1.0 + a.bound.abs();
        prop_assert!((a.gap - b.gap).abs() <= 1e-12 * scale, "{t}: {} vs {}", a.gap, b.gap);
        prop_assert!((a.bound - b.bound).abs() <= 1e-12 * scale, "{t}: {} vs {}", a.bound, b.bound);
        prop_assert_eq!(a.admissible(), b.admissible());
    }

    #[test]
    fn truncating_a_family_never_shrinks_the_bessel_gap(
        f in field(),
        dim in 2usize..9,
        seed in any::<u64>(),
    ) {
        let spec = sample_admissible(TheoremId::BesselBall, f, dim, seed).unwrap();
        let members: Vec<Vector> = spec
            .family
            .as_ref()
            .unwrap()
            .iter()
            .map(|m| Vector::new(f, m.0.clone()).unwrap())
            .collect();
        let fam = OrthonormalFamily::new(members, 1e-10).unwrap();
        let x = Vector::new(f, spec.x.as_ref().unwrap().0.clone()).unwrap();
        let mut last = f64::INFINITY;
        for k in (1..=fam.len()).rev() {
            let c = fourier_coefficients(&x, &fam.truncate(k).unwrap()).unwrap().norm();
            prop_assert!(c <= last * (1.0 + 1e-12) + 1e-15);
            prop_assert!(c <= norm(&x) * (1.0 + 1e-12));
            last = c;
        }
    }

    #[test]
    fn bessel_ball_and_pair_agree_on_the_induced_ball(
        f in field(),
        dim in 2usize..9,
        seed in any::<u64>(),
    ) {
        let spec = sample_admissible(TheoremId::BesselPair, f, dim, seed).unwrap();
        let members: Vec<Vector> = spec
            .family
            .as_ref()
            .unwrap()
            .iter()
            .map(|m| Vector::new(f, m.0.clone()).unwrap())
            .collect();
        let fam = OrthonormalFamily::new(members, 1e-10).unwrap();
        let x = Vector::new(f, spec.x.as_ref().unwrap().0.clone()).unwrap();
        let gam = CoefficientSequence::new(spec.gammas.as_ref().unwrap().0.clone()).unwrap();
        let big = CoefficientSequence::new(spec.big_gammas.as_ref().unwrap().0.clone()).unwrap();
        let lam = gam.midpoint(&big).unwrap();
        let r = 0.5 * big.difference(&gam).unwrap().norm();
        prop_assume!(lam.sq_norm() > 0.0);
        let pair = bessel_reverse_pair(&x, &fam, &gam, &big).unwrap();
        let ball = bessel_reverse_ball(&x, &fam, &lam, r).unwrap();
        prop_assert_eq!(pair.gap, ball.gap);
        prop_assert!(pair.admissibility.holds && ball.admissibility.holds);
        let by_form = conditions::family_two_sided(&x, &fam, &gam, &big, ConditionForm::Ball).unwrap();
        let direct = conditions::family_ball(&x, &fam, &lam, r).unwrap();
        prop_assert!((by_form.margin - direct.margin).abs() <= 1e-12 * (1.0 + norm(&x) + r));
    }

    #[test]
    fn two_sided_forms_agree_off_the_boundary(
        (x, y) in vector_pair(),
        lo in (-2.0..2.0f64, -2.0..2.0f64),
        hi in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        let lift = |(re, im): (f64, f64)| match x.field() {
            FieldTag::Real => Scalar::new(re, 0.0),
            FieldTag::Complex => Scalar::new(re, im),
        };
        let pair = ScalarPair::new(lift(lo), lift(hi));
        let rp = conditions::two_sided_realpart(&x, &y, &pair).unwrap();
        let ball = conditions::two_sided_ball(&x, &y, &pair).unwrap();
        let scale = 1.0 + norm_sq(&x) + pair.hi.norm_sqr() * norm_sq(&y);
        prop_assume!(rp.margin.abs() >= 1e-9 * scale && ball.margin.abs() >= ball.tolerance);
        prop_assert_eq!(rp.margin >= 0.0, ball.margin >= 0.0);
        prop_assert_eq!(rp.holds, rp.margin >= -rp.tolerance);
    }

    #[test]
    fn triangle_defect_is_nonnegative((x, y) in vector_pair(), m in 0.1..2.0f64, w in 0.01..2.0f64) {
        let t = triangle_reverse_pair(&x, &y, m, m + w).unwrap();
        prop_assert!(t.defect >= -1e-12 * (norm(&x) + norm(&y)));
        if t.admissibility.holds {
            prop_assert!(t.defect <= t.bound + tol(t.bound));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sweeps_increase_toward_one(hi in 0.05..0.9f64, count in 2usize..12) {
        let grid = geometric_grid(1e-6, hi, count).unwrap();
        for c in [Construction::Thm21, Construction::Thm22, Construction::Legacy11] {
            let s = sweep(c, &grid).unwrap();
            prop_assert!(s.ratios.windows(2).all(|w| w[1] > w[0]), "{c:?} {:?}", s.ratios);
            prop_assert!(s.ratios.iter().all(|&r| r <= 1.0 + 1e-9));
        }
    }

    #[test]
    fn summaries_match_records(seed in any::<u64>(), adversarial in any::<bool>()) {
        let config = SuiteConfig {
            theorems: vec![TheoremId::SchwarzBall, TheoremId::GrussPair, TheoremId::IntegralTriangle],
            trials: 20,
            dims: vec![2, 5],
            seed,
            adversarial,
            records: RecordPolicy::All,
            ..SuiteConfig::default()
        };
        let report = run_suite(&config).unwrap();
        let agg = &report.aggregate;
        let count = |o: Outcome| report.records.iter().filter(|r| r.outcome == o).count() as u64;
        prop_assert_eq!(agg.count, report.records.len() as u64);
        prop_assert_eq!(agg.violations, count(Outcome::Violation));
        prop_assert_eq!(agg.counterexamples, count(Outcome::Counterexample));
        prop_assert_eq!(agg.skipped, count(Outcome::Skipped));
        prop_assert_eq!(
            agg.admissible,
            report.records.iter().filter(|r| r.admissible == Some(true)).count() as u64
        );
        prop_assert_eq!(report.per_theorem.iter().map(|t| t.summary.count).sum::<u64>(), agg.count);
    }
}
