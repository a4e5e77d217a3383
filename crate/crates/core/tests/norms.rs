use mdm_core::dyadic::ratio_to_f64;
use mdm_core::dyadic::Dyadic;
use mdm_core::freq::{FreqSchedule, Mode, SchedulerConfig};
use mdm_core::norms::{
    flatness_residual, flatness_residual_of, grid_sup, grid_values, norm_report, GridSpec,
};
use mdm_core::pipeline::{construct, construct_with, PipelineConfig};
use mdm_core::poly::{EulerOp, ExpPair, GridPoint, Multiplier, SparsePoly};
use mdm_core::rs::{build_rs_pair, CoeffSchedule, CounterexampleBundle};
use num_bigint::BigUint;
use num_complex::Complex64;

fn cfg() -> PipelineConfig {
    PipelineConfig::default()
}

#[test]
fn fold_and_dft_agree_with_direct_evaluation() {
    let c = construct(8, &cfg()).unwrap();
    let spec = GridSpec::new(512, 32, 7).unwrap();
    for (src, op) in [
        (&c.bundle.f_source, EulerOp::D1sq),
        (&c.bundle.f_source, EulerOp::D1D2),
        (&c.bundle.g_source, EulerOp::D2sq),
    ] {
        let mult = CounterexampleBundle::view(op);
        let grid = grid_values(src, mult, 512).unwrap();
        for g in spec.sample_points() {
            let direct = src.eval_view_at(mult, g).unwrap();
            let folded = grid[(g.j1 * 512 + g.j2) as usize];
            assert!((direct - folded).norm() <= 1e-10, "{op} at {g:?}");
        }
    }
}

#[test]
fn grid_sup_monotone_under_doubling() {
    let c = construct(6, &cfg()).unwrap();
    for src in [&c.bundle.f_source, &c.bundle.g_source] {
        let mut prev = 0.0;
        for n in [16, 32, 64, 128, 256] {
            let s = grid_sup(src, Multiplier::IDENTITY, &GridSpec::new(n, 0, 0).unwrap()).unwrap();
            assert!(s.estimate >= prev - 1e-12);
            prev = s.estimate;
        }
    }
}

#[test]
fn unimodular_pair_respects_flatness_everywhere_on_grid() {
    let a = CoeffSchedule::new("ones", vec![1.0; 5]).unwrap();
    let kappa = Dyadic::nearest_inv_fourth_root(5, 20);
    let c = construct_with(&a, &kappa, &SchedulerConfig::default()).unwrap();
    let values = grid_values(&c.pair.p, Multiplier::IDENTITY, 64).unwrap();
    assert!(values.iter().all(|v| v.norm_sqr() <= 32.0 * (1.0 + 1e-12)));
}

#[test]
fn flatness_residuals() {
    let one = FreqSchedule::from_base(
        1,
        &[1],
        &Dyadic::new(BigUint::from(1u32), 0),
        &BigUint::from(3u32),
        Mode::Standard,
    );
    let a = CoeffSchedule::new("one", vec![1.0]).unwrap();
    let pair = build_rs_pair(&a, &one).unwrap();
    assert!(flatness_residual(&pair, &GridSpec::default()) <= 1e-12);

    let c = construct(10, &cfg()).unwrap();
    let spec = GridSpec::default();
    assert!(flatness_residual(&c.pair, &spec) <= 1e-9);

    let mut p = c.pair.p.clone();
    let (e, v) = p.terms().next().map(|(e, v)| (e.clone(), *v)).unwrap();
    p.insert(e, v + Complex64::new(0.01, 0.0));
    assert!(flatness_residual_of(&p, &c.pair.q, c.flat(), &spec) > 1e-4);
}

#[test]
fn single_term_bundle_report() {
    let f = SparsePoly::monomial(ExpPair::new(4u32, 1u32), Complex64::new(1.0, 0.0));
    let g = SparsePoly::monomial(ExpPair::new(8u32, 2u32), Complex64::new(-0.5, 0.0));
    let bounds = mdm_core::rs::BoundsRecord {
        upper_pure1: 3.0,
        upper_pure2: 4.0,
        mixed_at_1_f: Complex64::new(0.25, 0.0),
        mixed_at_1_g: Complex64::new(-0.125, 0.0),
        chain_lower: -1.0,
    };
    let bundle = CounterexampleBundle {
        f_source: f,
        g_source: g,
        kappa: Dyadic::new(BigUint::from(1u32), 0),
        bounds,
    };
    let r = norm_report(&bundle, 2.0, &GridSpec::new(16, 0, 0).unwrap()).unwrap();
    let mixed = r.entry("F", "D1D2").unwrap();
    assert_eq!(mixed.value_at_1, Complex64::new(0.25, 0.0));
    assert_eq!(
        r.entry("F", "D2sq").unwrap().value_at_1,
        Complex64::new(1.0 / 16.0, 0.0)
    );
    assert_eq!(r.ratio, 0.25 / 4.0);
}

#[test]
fn report_at_twelve() {
    let c = construct(12, &cfg()).unwrap();
    let r = norm_report(&c.bundle, c.flat(), &GridSpec::default()).unwrap();
    assert!((c.flat() - 13.0).abs() < 1e-12);
    assert!(r.entry("F", "D1sq").unwrap().grid_sup <= 13f64.sqrt() + 1e-6);
    for e in &r.entries {
        assert!(e.grid_sup <= e.l1_bound + 1e-9, "{} {}", e.poly, e.view);
        assert!(
            e.value_at_1.norm() <= e.grid_sup + 1e-12,
            "{} {}",
            e.poly,
            e.view
        );
    }
    let b = &r.bounds;
    assert_eq!(r.ratio, b.mixed_best() / b.upper_pure1.max(b.upper_pure2));
    assert_eq!(r.entry("F", "D1D2").unwrap().value_at_1, b.mixed_at_1_f);
    assert_eq!(r.to_table().lines().next().unwrap().split('\t').count(), 8);
}

#[test]
fn mixed_value_by_independent_summation() {
    let c = construct(10, &cfg()).unwrap();
    for src in [&c.bundle.f_source, &c.bundle.g_source] {
        let mut naive = Complex64::new(0.0, 0.0);
        for (e, v) in src.terms() {
            naive += v * ratio_to_f64(&e.m2, &e.m1);
        }
        let fast = src
            .eval_view_at(Multiplier::new(-1, 1), GridPoint::origin(512))
            .unwrap();
        assert!((naive - fast).norm() <= 1e-10);
    }
}
