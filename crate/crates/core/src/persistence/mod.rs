//! Persistence diagrams of filtered closure spaces and the distances used to
//! compare them.

mod complex;
mod gh;
mod plot;
mod tower;

use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use complex::persistence_complex;
pub use gh::{distortion, gh_distance, Correspondence, DEFAULT_GH_CAP};
pub use plot::diagram_svg;
pub use tower::{
    interleaving_grid, persistence_tower, shifted_structure_maps, tower_inclusion_maps, tower_to_diagram, verify_interleaving,
    Matrix, PersistenceTower,
};

/// Multiset of bars `[birth, death)`; `death` may be `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    pub degree: usize,
    pairs: Vec<(f64, f64)>,
}

fn pair_order(a: &(f64, f64), b: &(f64, f64)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1))
}

impl PersistenceDiagram {
    /// Sorts the bars; births must be finite and not exceed deaths.
    pub fn new(degree: usize, mut pairs: Vec<(f64, f64)>) -> Result<Self> {
        for &(b, d) in &pairs {
            if !b.is_finite() || d.is_nan() || d < b {
                return Err(Error::BadParameter(format!("invalid bar ({b}, {d})")));
            }
        }
        pairs.sort_by(pair_order);
        Ok(PersistenceDiagram { degree, pairs })
    }

    pub fn empty(degree: usize) -> Self {
        PersistenceDiagram {
            degree,
            pairs: Vec::new(),
        }
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn finite_pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.pairs.iter().copied().filter(|p| p.1.is_finite())
    }

    /// Births of the bars that never die, ascending.
    pub fn essential_births(&self) -> Vec<f64> {
        self.pairs.iter().filter(|p| p.1.is_infinite()).map(|p| p.0).collect()
    }

    /// `{"degree": n, "pairs": [[b, d or "inf"], …]}`.
    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|&(b, d)| if d.is_infinite() { json!([b, "inf"]) } else { json!([b, d]) })
            .collect();
        json!({ "degree": self.degree, "pairs": pairs })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::parse(1, m);
        let degree = value
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field 'degree'"))? as usize;
        let raw = value
            .get("pairs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field 'pairs'"))?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (k, p) in raw.iter().enumerate() {
            let entry = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(&format!("pair {k} is not a 2-element array")))?;
            let birth = entry[0].as_f64().ok_or_else(|| bad(&format!("pair {k}: birth is not a number")))?;
            let death = match &entry[1] {
                Value::String(s) if s == "inf" => f64::INFINITY,
                v => v.as_f64().ok_or_else(|| bad(&format!("pair {k}: death is neither a number nor \"inf\"")))?,
            };
            pairs.push((birth, death));
        }
        Self::new(degree, pairs).map_err(|e| bad(&e.to_string()))
    }
}

/// Distance of a bar to the diagonal in the sup norm.
fn diagonal_gap(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

fn sup_distance(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

/// Whether a perfect matching exists; `adjacent[l]` lists right vertices.
fn has_perfect_matching(adjacent: &[Vec<usize>], right: usize) -> bool {
    let mut owner: Vec<Option<usize>> = vec![None; right];
    fn augment(l: usize, adjacent: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &r in &adjacent[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|o| augment(o, adjacent, owner, seen)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    (0..adjacent.len()).all(|l| {
        let mut seen = vec![false; right];
        augment(l, adjacent, &mut owner, &mut seen)
    })
}

/// Whether an `eps`-matching exists between two sets of finite bars.
fn matchable(a: &[(f64, f64)], b: &[(f64, f64)], eps: f64) -> bool {
    // Left: bars of `a`, then diagonal slots for bars of `b`.
    // Right: bars of `b`, then diagonal slots for bars of `a`.
    let (n, m) = (a.len(), b.len());
    let mut adjacent = vec![Vec::new(); n + m];
    for i in 0..n {
        for j in 0..m {
            if sup_distance(a[i], b[j]) <= eps {
                adjacent[i].push(j);
            }
        }
        if diagonal_gap(a[i]) <= eps {
            adjacent[i].push(m + i);
        }
    }
    for j in 0..m {
        if diagonal_gap(b[j]) <= eps {
            adjacent[n + j].push(j);
        }
        adjacent[n + j].extend(m..m + n);
    }
    has_perfect_matching(&adjacent, n + m)
}

/// Bottleneck distance. Essential bars must pair with essential bars.
pub fn bottleneck(first: &PersistenceDiagram, second: &PersistenceDiagram) -> Result<f64> {
    let (ea, eb) = (first.essential_births(), second.essential_births());
    if ea.len() != eb.len() {
        return Err(Error::InfinityMismatch(ea.len(), eb.len()));
    }
    // Sorted births pair optimally on the line.
    let essential = ea.iter().zip(&eb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let a: Vec<(f64, f64)> = first.finite_pairs().collect();
    let b: Vec<(f64, f64)> = second.finite_pairs().collect();
    let mut candidates: Vec<f64> = vec![0.0];
    candidates.extend(a.iter().chain(&b).map(|&p| diagonal_gap(p)));
    for &p in &a {
        candidates.extend(b.iter().map(|&q| sup_distance(p, q)));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // The largest candidate always admits the all-diagonal matching.
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if matchable(&a, &b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(essential.max(candidates[lo]))
}
