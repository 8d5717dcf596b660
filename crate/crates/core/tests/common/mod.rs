//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use clospace::complexes::{Hypergraph, SimplicialComplex};
use clospace::filtration::{FiniteMetric, WeightedDigraph};
use clospace::space::int_labels;
use clospace::ClosureSpace;
use rand::Rng;

pub fn space_from_table(n: usize, related: &[Vec<bool>]) -> ClosureSpace {
    ClosureSpace::from_relation(int_labels(n), |x, y| x == y || related[x][y]).unwrap()
}

pub fn random_space<R: Rng>(rng: &mut R, n: usize, density: f64) -> ClosureSpace {
    let table: Vec<Vec<bool>> = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(density)).collect()).collect();
    space_from_table(n, &table)
}

pub fn random_symmetric_space<R: Rng>(rng: &mut R, n: usize, density: f64) -> ClosureSpace {
    let mut table = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = rng.gen_bool(density);
            table[i][j] = e;
            table[j][i] = e;
        }
    }
    space_from_table(n, &table)
}

/// Every closure space on `0..n`, as reflexive relations.
pub fn all_spaces(n: usize) -> Vec<ClosureSpace> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    (0u64..1 << off.len())
        .map(|mask| {
            let mut table = vec![vec![false; n]; n];
            for (k, &(i, j)) in off.iter().enumerate() {
                table[i][j] = mask >> k & 1 == 1;
            }
            space_from_table(n, &table)
        })
        .collect()
}

/// Every non-empty subset of `0..n` as a sorted list, in a fixed order.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Every hypergraph on `0..n`.
pub fn all_hypergraphs(n: usize) -> Vec<Hypergraph> {
    let subsets = nonempty_subsets(n);
    (0u64..1 << subsets.len())
        .map(|mask| {
            let edges = subsets.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, s)| s.clone());
            Hypergraph::new(int_labels(n), edges).unwrap()
        })
        .collect()
}

/// Every simplicial complex on `0..n` (all singletons present).
pub fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    let larger: Vec<Vec<usize>> = nonempty_subsets(n).into_iter().filter(|s| s.len() > 1).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << larger.len() {
        let chosen: Vec<&Vec<usize>> = larger.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, s)| s).collect();
        let closed = chosen.iter().all(|s| {
            s.len() == 2 || (0..s.len()).all(|skip| {
                let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                face.len() < 2 || chosen.iter().any(|t| **t == face)
            })
        });
        if closed {
            let simplices = (0..n).map(|v| vec![v]).chain(chosen.into_iter().cloned());
            out.push(SimplicialComplex::new(int_labels(n), simplices).unwrap());
        }
    }
    out
}

/// Shortest-path metric of a complete graph with random integer weights.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize, max_weight: u32) -> FiniteMetric {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(1..=max_weight) as f64;
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    FiniteMetric::new(int_labels(n), d).unwrap()
}

pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, density: f64, max_weight: u32) -> WeightedDigraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(density) {
                edges.push((a, b, rng.gen_range(0..=max_weight) as f64 / 2.0));
            }
        }
    }
    WeightedDigraph::new(int_labels(n), edges).unwrap()
}

/// Every map `0..n → 0..m` as an image vector.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..m).map(move |y| {
                    let mut g = f.clone();
                    g.push(y);
                    g
                })
            })
            .collect();
    }
    out
}

/// Whether `images` is continuous, straight from the singleton closures.
pub fn continuous_by_definition(x: &ClosureSpace, y: &ClosureSpace, images: &[usize]) -> bool {
    (0..x.len()).all(|a| (0..x.len()).all(|b| !x.related(a, b) || y.related(images[a], images[b])))
}

/// Least value of `sup |d(x,x') − e(y,y')|` over all correspondences.
pub fn metric_distortion_oracle(d: &FiniteMetric, e: &FiniteMetric) -> f64 {
    let (n, m) = (d.len(), e.len());
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let mut best = f64::INFINITY;
    for mask in 1u64..1 << cells.len() {
        let pairs: Vec<(usize, usize)> = cells.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        let covers_left = (0..n).all(|i| pairs.iter().any(|p| p.0 == i));
        let covers_right = (0..m).all(|j| pairs.iter().any(|p| p.1 == j));
        if !covers_left || !covers_right {
            continue;
        }
        let mut worst: f64 = 0.0;
        for &(a, b) in &pairs {
            for &(c, f) in &pairs {
                worst = worst.max((d.distance(a, c) - e.distance(b, f)).abs());
            }
        }
        best = best.min(worst);
    }
    best
}

/// Brute-force clique complex: every vertex set whose members are pairwise
/// mutually related.
pub fn clique_oracle(x: &ClosureSpace) -> Vec<Vec<usize>> {
    nonempty_subsets(x.len())
        .into_iter()
        .filter(|s| s.iter().all(|&a| s.iter().all(|&b| x.related(a, b))))
        .collect()
}
