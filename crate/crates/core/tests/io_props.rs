mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use clospace::complexes::vr;
use clospace::filtration::{FilteredClosureSpace, FiniteMetric};
use clospace::hom::homomorphisms;
use clospace::io::{
    complex_to_text, map_to_json, metric_to_csv, parse_complex, parse_diagrams, parse_digraph, parse_distance_csv, parse_map, parse_space,
    parse_sublevel_csv, space_to_json,
};
use clospace::{ClosureSpace, ContinuousMap, Error, PointId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const TOKENS: [&str; 8] = ["a", "b", "node-7", "x_1", "0", "1", "42", "-3"];

fn labelled_space(seed: u64) -> ClosureSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=TOKENS.len());
    let mut tokens = TOKENS.to_vec();
    tokens.shuffle(&mut rng);
    let labels = tokens[..n].iter().map(|t| PointId::parse_token(t)).collect();
    random_space(&mut rng, n, 0.4).relabel(labels).unwrap()
}

fn line_of(e: &Error) -> Option<usize> {
    match e {
        Error::Parse { line, .. } => Some(*line),
        _ => None,
    }
}

proptest! {
    #[test]
    fn spaces_round_trip(seed in any::<u64>()) {
        let x = labelled_space(seed);
        let text = serde_json::to_string_pretty(&space_to_json(&x)).unwrap();
        prop_assert_eq!(parse_space(&text).unwrap(), x);
    }

    #[test]
    fn metrics_round_trip(seed in any::<u64>(), named in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let m = random_metric(&mut rng, n, 9);
        let m = if named {
            let labels = (0..n).map(|i| PointId::from(format!("p{i}"))).collect();
            FiniteMetric::new(labels, m.matrix().to_vec()).unwrap()
        } else {
            m
        };
        prop_assert_eq!(parse_distance_csv(&metric_to_csv(&m), false).unwrap(), m);
    }

    #[test]
    fn complexes_round_trip(seed in any::<u64>()) {
        let x = labelled_space(seed).symmetrize();
        let k = vr(&x);
        let back = parse_complex(&complex_to_text(&k), false).unwrap();
        let set = |c: &clospace::complexes::SimplicialComplex| -> BTreeSet<Vec<PointId>> {
            c.labelled_simplices().into_iter().map(|mut s| { s.sort(); s }).collect()
        };
        prop_assert_eq!(set(&back), set(&k));
    }

    #[test]
    fn maps_round_trip(seed in any::<u64>()) {
        let (x, y) = (Arc::new(labelled_space(seed)), Arc::new(labelled_space(seed ^ 0xabc)));
        let maps = homomorphisms(&x, &y);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ContinuousMap::new(x.clone(), y.clone(), maps.choose(&mut rng).unwrap().clone()).unwrap();
        let text = map_to_json(&f).to_string();
        let back = parse_map(&text, x, y).unwrap();
        prop_assert_eq!(back.images(), f.images());
    }

    #[test]
    fn digraphs_parse_into_filtrations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let g = random_digraph(&mut rng, n, 0.5, 6);
        let mut text = String::from("# generated\n");
        for i in 0..n {
            text.push_str(&format!("{i}\n"));
        }
        for &(a, b, w) in g.edges() {
            text.push_str(&format!("{a} {b} {w}\n"));
        }
        let parsed = parse_digraph(&text).unwrap();
        let (fa, fb): (FilteredClosureSpace, FilteredClosureSpace) = (
            clospace::filtration::filtered_from_weighted_digraph(&g),
            clospace::filtration::filtered_from_weighted_digraph(&parsed),
        );
        prop_assert_eq!(fa.grid(), fb.grid());
        prop_assert_eq!(fa.stages(), fb.stages());
    }
}

#[test]
fn errors_carry_line_numbers() {
    let bad_space = "{\n  \"points\": [\"a\", \"b\"],\n  \"closure\": {\n    \"a\": [\"b\"]\n  }\n}";
    assert_eq!(parse_space(bad_space).err().as_ref().and_then(line_of), Some(4));
    let bad_csv = "0,1\n1,zero\n";
    assert_eq!(parse_distance_csv(bad_csv, false).err().as_ref().and_then(line_of), Some(2));
    let bad_digraph = "a b 1\nb b 2\n";
    assert_eq!(parse_digraph(bad_digraph).err().as_ref().and_then(line_of), Some(2));
    assert!(parse_sublevel_csv("point,value\na,1\na,2\n").is_err());
    assert!(parse_complex("a b c\n", false).is_err());
    assert_eq!(parse_complex("a b c\n", true).unwrap().simplices().len(), 7);
}

#[test]
fn diagram_files_accept_one_or_many() {
    let one = parse_diagrams(r#"{"degree": 1, "pairs": [[0, 1], [2, "inf"]]}"#).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].pairs(), &[(0.0, 1.0), (2.0, f64::INFINITY)]);
    let many = parse_diagrams(r#"[{"degree": 0, "pairs": []}, {"degree": 1, "pairs": [[1, 2]]}]"#).unwrap();
    assert_eq!(many.len(), 2);
    assert!(parse_diagrams(r#"{"degree": 0, "pairs": [[2, 1]]}"#).is_err());
}
