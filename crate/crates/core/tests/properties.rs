use proptest::prelude::*;

use gaitforge::capture::{
    angle_to_counts, counts_to_angle, counts_to_force, fk_two_link, force_to_counts, ik_two_link,
    smooth_moving_average, zero_correct, Elbow, TimeSeries, TwoLinkGeometry,
};
use gaitforge::features::{
    count_extrema, count_zero_crossings, emd_decompose, feature_vector, quartile_stats,
    shannon_entropy, EmdOptions,
};
use gaitforge::fixtures;
use gaitforge::gait_ca::{decode, encode, CAState, CaRules, SubPhase8};
use gaitforge::gait_model::{
    fit_vector_field, phase_of, Interval, PhaseSchedule, PolynomialVectorField, RangeTable, Side,
};
use gaitforge::learn::{
    biometric_metrics, kfold_indices, kmeans, knn_classify, mlp_train, Activation, ConfusionMatrix,
    Dataset, Mlp, MlpConfig,
};
use gaitforge::push_fuzzy::{
    fis2_infer, recover, recover_planar, Direction, ForceInput, PushTables, ReactionMembership,
};
use gaitforge::rocking_block::{energy, simulate, BlockParams, BlockState, Mode};

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![
        Just(Direction::Left),
        Just(Direction::Right),
        Just(Direction::Forward),
        Just(Direction::Backward),
    ]
}

fn smooth_signal() -> impl Strategy<Value = Vec<f64>> {
    (
        prop::collection::vec((0.2f64..3.0, 0.5f64..25.0, 0.0f64..6.3), 1..4),
        -2.0f64..2.0,
        64usize..400,
    )
        .prop_map(|(tones, slope, n)| {
            (0..n)
                .map(|i| {
                    let t = i as f64 / 200.0;
                    slope * t
                        + tones
                            .iter()
                            .map(|(a, f, p)| a * (std::f64::consts::TAU * f * t + p).sin())
                            .sum::<f64>()
                })
                .collect()
        })
}

fn naive(c: &[f64], err: f64, x: f64) -> f64 {
    let d = c.len() - 1;
    c.iter()
        .enumerate()
        .map(|(k, v)| v * x.powi((d - k) as i32))
        .sum::<f64>()
        + err
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phase_ordinal_non_decreasing(mut xs in prop::collection::vec(0.0f64..=1.6, 2..60)) {
        let s = PhaseSchedule::guard();
        xs.sort_by(f64::total_cmp);
        let phases: Vec<usize> = xs.iter().map(|&x| phase_of(x, &s).unwrap().index()).collect();
        prop_assert!(phases.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn horner_matches_power_sum(
        c in prop::collection::vec(-5e4f64..5e4, 3..=5),
        err in -5.0f64..5.0,
        x in 0.0f64..=1.6,
    ) {
        let f = PolynomialVectorField::new(c.clone(), err, (0.0, 1.6)).unwrap();
        let n = naive(&c, err, x);
        let scale: f64 = c.iter().map(|v| v.abs()).sum::<f64>() * 1.6f64.powi(4) + err.abs();
        prop_assert!((f.eval(x) - n).abs() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn fit_ignores_sample_order(
        c in prop::collection::vec(-50.0f64..50.0, 4),
        shuffled in Just((0..40).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let samples: Vec<(f64, f64)> = (0..40)
            .map(|i| {
                let x = 0.5 + i as f64 * 0.01;
                (x, naive(&c, 0.0, x) + 0.3 * (17.0 * x).sin())
            })
            .collect();
        let permuted: Vec<(f64, f64)> = shuffled.iter().map(|&i| samples[i]).collect();
        let a = fit_vector_field(&samples, 3).unwrap();
        let b = fit_vector_field(&permuted, 3).unwrap();
        for (u, v) in a.field.coefficients().iter().zip(b.field.coefficients()) {
            prop_assert!((u - v).abs() <= 1e-6 * u.abs().max(1.0));
        }
    }

    #[test]
    fn interval_normalization(a in -90.0f64..90.0, b in -90.0f64..90.0) {
        let i = Interval::normalized(a, b);
        prop_assert!(i.min <= i.max);
        prop_assert_eq!(Interval::normalized(i.min, i.max), i);
        prop_assert!(i.contains(a) && i.contains(b));
    }

    #[test]
    fn impacts_scale_velocity_and_alternate(
        alpha in 0.05f64..1.2,
        r in 0.3f64..=1.0,
        x1 in -0.9f64..-0.05,
        restoring in any::<bool>(),
    ) {
        let p = BlockParams::new(alpha, r, 2e-3).unwrap().with_restoring_sign(restoring);
        let trace = simulate(BlockState::new(Mode::Left, x1, 0.0), &p, 6.0).unwrap();
        for e in &trace.impacts {
            prop_assert!((e.post_velocity - r * e.pre_velocity).abs() <= 1e-12);
        }
        for w in trace.impacts.windows(2) {
            prop_assert_ne!(w[0].from, w[1].from);
        }
        if r < 1.0 {
            let e: Vec<f64> = trace.states.iter().map(|s| energy(s, &p)).collect();
            for w in e.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-9);
            }
        }
    }

    #[test]
    fn ca_encoding_round_trips(leg in any::<bool>(), code in 0u8..8) {
        let side = if leg { Side::Right } else { Side::Left };
        let sub = SubPhase8::from_code(code).unwrap();
        let s = encode(side, sub);
        prop_assert_eq!(decode(s), (side, sub));
        prop_assert_eq!(s.code(), (leg as u8) << 3 | code);
    }

    #[test]
    fn ik_fk_round_trip(
        l1 in 0.5f64..10.0,
        l2 in 0.5f64..10.0,
        frac in 0.02f64..0.98,
        phi in -3.1f64..3.1,
        up in any::<bool>(),
    ) {
        let g = TwoLinkGeometry::new(l1, l2).unwrap();
        let (lo, hi) = ((l1 - l2).abs(), l1 + l2);
        let r = lo + frac * (hi - lo);
        let (x, y) = (r * phi.cos(), r * phi.sin());
        let elbow = if up { Elbow::Up } else { Elbow::Down };
        let (t1, t2) = ik_two_link(x, y, &g, elbow).unwrap();
        let tip = fk_two_link(t1, t2, &g).tip;
        prop_assert!((tip.0 - x).hypot(tip.1 - y) < 1e-9);
    }

    #[test]
    fn zero_correct_idempotent_and_linear(
        a in prop::collection::vec(-100.0f64..100.0, 1..50),
        k in -3.0f64..3.0,
    ) {
        let s = TimeSeries::new(a.clone(), 0.01, "deg").unwrap();
        let once = zero_correct(&s).unwrap();
        prop_assert_eq!(&zero_correct(&once).unwrap().values, &once.values);
        let scaled = zero_correct(&s.with_values(a.iter().map(|v| k * v).collect())).unwrap();
        for (u, v) in scaled.values.iter().zip(&once.values) {
            prop_assert!((u - k * v).abs() <= 1e-9 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn smoothing_stays_in_range(a in prop::collection::vec(-100.0f64..100.0, 8..120)) {
        let s = TimeSeries::new(a.clone(), 0.01, "deg").unwrap();
        let out = smooth_moving_average(&s).unwrap().series;
        let lo = a.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = a.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert_eq!(out.len(), a.len());
        prop_assert!(out.values.iter().all(|&v| v >= lo - 1e-9 && v <= hi + 1e-9));
    }

    #[test]
    fn count_conversions_invert(theta in 0.0f64..=999.0, theta0 in 0.0f64..=999.0, f in 0.0f64..=999.0) {
        let deg = counts_to_angle(theta, theta0).unwrap();
        prop_assert!((angle_to_counts(deg, theta0).unwrap() - theta).abs() <= 1e-9);
        let n = counts_to_force(f).unwrap();
        prop_assert!((force_to_counts(n).unwrap() - f).abs() <= 1e-9);
    }

    #[test]
    fn emd_reconstructs(x in smooth_signal()) {
        let d = emd_decompose(&x, &EmdOptions::default()).unwrap();
        let err = d
            .reconstruct()
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        prop_assert!(err <= 1e-9);
        for imf in d.imfs.iter().filter(|m| m.converged) {
            prop_assert!(count_extrema(&imf.values).abs_diff(count_zero_crossings(&imf.values)) <= 1);
        }
    }

    #[test]
    fn features_scale(x in prop::collection::vec(-10.0f64..10.0, 2..100), c in 0.1f64..10.0) {
        let a = feature_vector(&x).unwrap();
        let b = feature_vector(&x.iter().map(|v| c * v).collect::<Vec<_>>()).unwrap();
        prop_assert!(a.min <= a.max && a.rms >= 0.0 && (0.0..=1.0).contains(&a.zcr));
        prop_assert!((b.rms - c * a.rms).abs() <= 1e-9 * (1.0 + b.rms));
        prop_assert!((b.min - c * a.min).abs() <= 1e-9 * (1.0 + b.min.abs()));
        prop_assert!((b.max - c * a.max).abs() <= 1e-9 * (1.0 + b.max.abs()));
        prop_assert_eq!(a.zcr, b.zcr);
    }

    #[test]
    fn entropy_bounds(bins in 1usize..32, reps in 1usize..5) {
        let uniform: Vec<f64> = (0..bins * reps).map(|i| (i / reps) as f64 + 0.5).collect();
        if bins > 1 {
            let h = shannon_entropy(&uniform, bins).unwrap();
            prop_assert!((h - (bins as f64).log2()).abs() <= 1e-12);
        }
        prop_assert_eq!(shannon_entropy(&vec![3.0; reps + 1], bins).unwrap(), 0.0);
    }

    #[test]
    fn quartiles_ordered(x in prop::collection::vec(-1e3f64..1e3, 4..80)) {
        let b = quartile_stats(&x).unwrap();
        prop_assert!(b.q1 <= b.q2 && b.q2 <= b.q3);
        prop_assert_eq!(b.iqr, b.q3 - b.q1);
    }

    #[test]
    fn kfold_partitions(
        sizes in prop::array::uniform3(5usize..20),
        order in any::<u64>(),
        seed in any::<u64>(),
    ) {
        let mut labels: Vec<usize> = (0..3).flat_map(|c| vec![c; sizes[c]]).collect();
        let n = labels.len();
        labels.rotate_left(order as usize % n);
        let folds = kfold_indices(&labels, 3, 5, seed).unwrap();
        let mut all: Vec<usize> = folds.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..labels.len()).collect::<Vec<_>>());
    }

    #[test]
    fn kmeans_sse_non_increasing(
        pts in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 6..60),
        k in 1usize..4,
        seed in any::<u64>(),
    ) {
        let data: Vec<Vec<f64>> = pts.iter().map(|&(a, b)| vec![a, b]).collect();
        if let Ok(r) = kmeans(&data, k, 50, seed) {
            prop_assert!(r.sse_history.windows(2).all(|w| w[1] <= w[0] + 1e-9));
        }
    }

    #[test]
    fn confusion_identities(counts in prop::collection::vec(prop::collection::vec(0usize..20, 3), 3)) {
        let mut counts = counts;
        for (i, row) in counts.iter_mut().enumerate() {
            row[i] += 1;
        }
        let m = ConfusionMatrix::from_counts(counts).unwrap();
        let acc = m.trace() as f64 / m.total() as f64;
        prop_assert!((acc - (1.0 - m.error_rate())).abs() <= 1e-15);
        let b = biometric_metrics(&m).unwrap();
        for (t, f) in b.tar.iter().zip(&b.frr) {
            prop_assert_eq!(t + f, 100.0);
        }
    }

    #[test]
    fn mlp_gradient_matches_differences(
        hidden in 1usize..4,
        seed in any::<u64>(),
        x in prop::collection::vec(-1.0f64..1.0, 2),
        t in 0.0f64..1.0,
        tanh in any::<bool>(),
    ) {
        let act = if tanh { Activation::Tanh } else { Activation::Sigmoid };
        let mlp = Mlp::random(&[2, hidden, 1], act, seed).unwrap();
        prop_assume!(mlp.n_params() <= 20);
        let target = [t];
        let g = mlp.gradient_flat(&x, &target).unwrap();
        let p0 = mlp.params();
        let h = 1e-6;
        let mut diff = 0.0;
        for i in 0..p0.len() {
            let mut m = mlp.clone();
            let mut p = p0.clone();
            p[i] += h;
            m.set_params(&p).unwrap();
            let up = m.loss(&x, &target).unwrap();
            p[i] -= 2.0 * h;
            m.set_params(&p).unwrap();
            let down = m.loss(&x, &target).unwrap();
            diff += (g[i] - (up - down) / (2.0 * h)).powi(2);
        }
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!(diff.sqrt() <= 1e-4 * norm.max(1e-6));
    }

    #[test]
    fn knn_recovers_training_labels(
        pts in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0, 0usize..3), 3..30),
    ) {
        let mut feats: Vec<Vec<f64>> = Vec::new();
        let mut labels = Vec::new();
        for (a, b, l) in pts {
            if feats.iter().all(|f| f[0] != a || f[1] != b) {
                feats.push(vec![a, b]);
                labels.push(l);
            }
        }
        let mut labels = labels;
        labels[0] = 0;
        let ds = Dataset::new(feats.clone(), labels.clone(), vec!["a".into(), "b".into(), "c".into()]).unwrap();
        for (f, &l) in feats.iter().zip(&labels) {
            prop_assert_eq!(knn_classify(&ds, 1, f).unwrap(), l);
        }
    }

    #[test]
    fn fuzzy_degrees_stay_bounded(f in 0.0f64..=12.0, d in direction()) {
        let t = PushTables::default();
        let r = recover(ForceInput { magnitude: f, direction: d }, &t).unwrap();
        prop_assert!(r.reaction.degrees.iter().flatten().all(|v| (0.0..=1.0).contains(v)));
        prop_assert!(r.strategy_degrees.values().all(|v| (0.0..=1.0).contains(v)));
        prop_assert_eq!(r.state == gaitforge::push_fuzzy::FallState::Fall, r.strategy.is_fall());
        let best = r.strategy_degrees.values().cloned().fold(0.0, f64::max);
        prop_assert_eq!(r.strategy_degrees[&r.strategy], best);
    }

    #[test]
    fn planar_degrees_stay_bounded(roll in 0.0f64..=12.0, pitch in 0.0f64..=12.0) {
        let t = PushTables::default();
        let r = recover_planar(roll, pitch, &t).unwrap();
        prop_assert!(r.strategy_degrees.values().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn argmax_ignores_uniform_scaling(
        degrees in prop::array::uniform2(prop::array::uniform3(0.0f64..=1.0)),
        c in 0.01f64..=1.0,
    ) {
        let t = PushTables::default();
        let r = ReactionMembership { degrees };
        prop_assume!(!r.is_zero());
        let a = fis2_infer(&r, &t).unwrap();
        let b = fis2_infer(&r.scaled(c), &t).unwrap();
        prop_assert_eq!(a.strategy, b.strategy);
    }
}

#[test]
fn ca_rules_are_an_involution() {
    let rules = CaRules::default();
    let mut seen = [false; 16];
    for s in CAState::all() {
        let t = rules.next_state(s);
        assert!(!seen[t.code() as usize]);
        seen[t.code() as usize] = true;
        assert_eq!(rules.next_state(t), s);
        assert_ne!(s.side(), t.side());
    }
}

#[test]
fn range_normalization_idempotent() {
    let table: RangeTable = fixtures::range_table();
    let once = table.normalized();
    assert_eq!(once.normalized(), once);
}

#[test]
fn knn_with_full_k_votes_majority() {
    let ds = Dataset::with_numeric_classes(
        vec![vec![0.0], vec![1.0], vec![2.0], vec![10.0], vec![11.0]],
        vec![0, 0, 0, 1, 1],
    )
    .unwrap();
    for q in [-5.0, 10.5, 50.0] {
        assert_eq!(knn_classify(&ds, 5, &[q]).unwrap(), 0);
    }
}

#[test]
fn trainers_are_deterministic() {
    let ds = fixtures::synthetic_dataset();
    let cfg = MlpConfig::new(vec![ds.dim(), 5, ds.n_classes()], 0.2, 30, 9);
    let a = mlp_train(&ds, &cfg).unwrap();
    let b = mlp_train(&ds, &cfg).unwrap();
    assert_eq!(a.params(), b.params());
    assert_eq!(
        kmeans(&ds.features, 4, 50, 3).unwrap(),
        kmeans(&ds.features, 4, 50, 3).unwrap()
    );
}
