mod common;

use clospace::filtration::{
    filtered_from_metric, filtered_from_sublevel, filtered_from_weighted_digraph, metric_closure, Decoration, FilteredClosureSpace, FiniteMetric,
};
use clospace::{is_continuous, product, ProductKind};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const DECORATIONS: [Decoration; 3] = [Decoration::Minus, Decoration::Closed, Decoration::Plus];

fn metric(seed: u64, max_points: usize) -> FiniteMetric {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_points);
    random_metric(&mut rng, n, 5)
}

fn combined(x: &FiniteMetric, y: &FiniteMetric, join: impl Fn(f64, f64) -> f64) -> FiniteMetric {
    let m = y.len();
    FiniteMetric::from_fn(x.len() * m, |p, q| join(x.distance(p / m, q / m), y.distance(p % m, q % m))).unwrap()
}

fn nested(f: &FilteredClosureSpace) -> bool {
    (1..f.len()).all(|i| {
        let (before, after) = (f.stage(i - 1), f.stage(i));
        let (mb, ma) = (f.stage_members(i - 1), f.stage_members(i));
        (0..before.len()).all(|a| {
            let Some(pa) = ma.iter().position(|&p| p == mb[a]) else { return false };
            (0..before.len()).all(|b| {
                let pb = ma.iter().position(|&p| p == mb[b]).unwrap();
                !before.related(a, b) || after.related(pa, pb)
            })
        })
    })
}

proptest! {
    #[test]
    fn ball_closures_compose_within_the_sum(seed in any::<u64>(), e in 0u32..8, d in 0u32..8) {
        let x = metric(seed, 6);
        let (e, d) = (e as f64 / 2.0, d as f64 / 2.0);
        let outer = metric_closure(&x, e, Decoration::Closed).unwrap();
        let inner = metric_closure(&x, d, Decoration::Closed).unwrap();
        let sum = metric_closure(&x, e + d, Decoration::Closed).unwrap();
        for p in 0..x.len() {
            let twice = outer.closure_set(inner.closure_of_point(p));
            prop_assert!(twice.is_subset(sum.closure_of_point(p)));
        }
    }

    #[test]
    fn ball_closures_are_ordered(seed in any::<u64>(), e in 0u32..12, extra in 0u32..4) {
        let x = metric(seed, 6);
        let (e, f) = (e as f64 / 2.0, (e + extra) as f64 / 2.0);
        let minus = metric_closure(&x, e, Decoration::Minus).unwrap();
        let closed = metric_closure(&x, e, Decoration::Closed).unwrap();
        let plus = metric_closure(&x, e, Decoration::Plus).unwrap();
        prop_assert!(minus.is_finer_than(&closed));
        prop_assert_eq!(&closed, &plus);
        for dec in DECORATIONS {
            let (a, b) = (metric_closure(&x, e, dec).unwrap(), metric_closure(&x, f, dec).unwrap());
            prop_assert!(a.is_finer_than(&b));
        }
        if extra > 0 {
            prop_assert!(closed.is_finer_than(&metric_closure(&x, f, Decoration::Minus).unwrap()));
        }
    }

    #[test]
    fn products_of_balls_use_the_max_metric(a in any::<u64>(), b in any::<u64>(), e in 0u32..12) {
        let (x, y) = (metric(a, 4), metric(b, 4));
        let e = e as f64 / 2.0;
        let sup = combined(&x, &y, f64::max);
        for dec in DECORATIONS {
            let prod = product(&metric_closure(&x, e, dec).unwrap(), &metric_closure(&y, e, dec).unwrap(), ProductKind::Product);
            prop_assert_eq!(prod.with_index_labels(), metric_closure(&sup, e, dec).unwrap());
        }
    }

    #[test]
    fn inductive_products_of_unit_balls_use_the_sum_metric(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (metric(a, 4), metric(b, 4));
        let sum = combined(&x, &y, |s, t| s + t);
        for dec in [Decoration::Minus, Decoration::Closed] {
            let prod = product(&metric_closure(&x, 1.0, dec).unwrap(), &metric_closure(&y, 1.0, dec).unwrap(), ProductKind::Inductive);
            prop_assert_eq!(prod.with_index_labels(), metric_closure(&sum, 1.0, dec).unwrap());
        }
    }

    #[test]
    fn short_maps_are_continuous_at_every_scale(a in any::<u64>(), b in any::<u64>(), seed in any::<u64>(), e in 0u32..12) {
        let (x, y) = (metric(a, 5), metric(b, 5));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let images: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..y.len())).collect();
        let lipschitz = (0..x.len()).all(|p| (0..x.len()).all(|q| y.distance(images[p], images[q]) <= x.distance(p, q)));
        if lipschitz {
            for dec in DECORATIONS {
                let e = e as f64 / 2.0;
                let (cx, cy) = (metric_closure(&x, e, dec).unwrap(), metric_closure(&y, e, dec).unwrap());
                prop_assert!(is_continuous(&cx, &cy, &images));
            }
        }
    }

    #[test]
    fn constructors_give_nested_stages(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let x = random_metric(&mut rng, n, 6);
        for dec in DECORATIONS {
            prop_assert!(nested(&filtered_from_metric(&x, dec)));
        }
        prop_assert!(nested(&filtered_from_weighted_digraph(&random_digraph(&mut rng, n, 0.5, 6))));
        let space = random_space(&mut rng, n, 0.5);
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0..6) as f64).collect();
        let sub = filtered_from_sublevel(&space, &values).unwrap();
        prop_assert!(nested(&sub));
        prop_assert_eq!(sub.stage(sub.len() - 1), &space);
    }

    #[test]
    fn refinement_keeps_the_step_function(seed in any::<u64>(), extra in prop::collection::vec(0u32..20, 0..4)) {
        let x = metric(seed, 5);
        let f = filtered_from_metric(&x, Decoration::Closed);
        let extra: Vec<f64> = extra.into_iter().map(|v| v as f64 / 3.0).collect();
        let refined = f.refined(&extra);
        for &t in refined.grid().iter().chain(f.grid()).chain(&extra) {
            prop_assert_eq!(refined.stage_at(t), f.stage_at(t));
        }
    }
}

#[test]
fn rejects_invalid_metrics() {
    let asym = FiniteMetric::from_fn(2, |i, j| if i == j { 0.0 } else if i < j { 1.0 } else { 2.0 });
    assert!(asym.is_err());
    let triangle = FiniteMetric::from_fn(3, |i, j| if i == j { 0.0 } else if i + j == 2 { 5.0 } else { 1.0 });
    assert!(triangle.is_err());
    let zero = FiniteMetric::from_fn(2, |_, _| 0.0);
    assert!(zero.is_err());
    let labels = clospace::space::int_labels(2);
    assert!(FiniteMetric::new_pseudo(labels, vec![vec![0.0; 2]; 2]).is_ok());
}

#[test]
fn open_balls_lag_one_grid_step() {
    let x = FiniteMetric::from_fn(3, |i, j| (i as f64 - j as f64).abs()).unwrap();
    let (minus, closed) = (filtered_from_metric(&x, Decoration::Minus), filtered_from_metric(&x, Decoration::Closed));
    assert_eq!(minus.grid(), closed.grid());
    for i in 1..closed.len() {
        assert_eq!(minus.stage(i), closed.stage(i - 1));
    }
}
