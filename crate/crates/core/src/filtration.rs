//! Metric closures and filtered closure spaces.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::point::PointId;
use crate::space::{int_labels, ClosureSpace};

/// Finite metric given by a distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetric {
    labels: Vec<PointId>,
    dist: Vec<Vec<f64>>,
}

impl FiniteMetric {
    /// Checks symmetry, zero diagonal, non-negativity, the triangle inequality
    /// and that distinct points are at positive distance.
    pub fn new(labels: Vec<PointId>, dist: Vec<Vec<f64>>) -> Result<Self> {
        Self::validated(labels, dist, false)
    }

    /// Like [`FiniteMetric::new`] but allows distinct points at distance zero.
    pub fn new_pseudo(labels: Vec<PointId>, dist: Vec<Vec<f64>>) -> Result<Self> {
        Self::validated(labels, dist, true)
    }

    /// Metric on `0..n` from a distance function.
    pub fn from_fn(n: usize, d: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let dist = (0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect();
        Self::new(int_labels(n), dist)
    }

    fn validated(labels: Vec<PointId>, dist: Vec<Vec<f64>>, pseudo: bool) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Err(Error::InvalidMetric(msg));
        if dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return bad(format!("distance matrix is not {n}×{n}"));
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l, ()).is_some() {
                return Err(Error::DuplicatePoint(l.clone()));
            }
        }
        let scale = dist.iter().flatten().cloned().fold(0.0f64, f64::max);
        let slack = 1e-12 * scale.max(1.0);
        for i in 0..n {
            if dist[i][i] != 0.0 {
                return bad(format!("d({0},{0}) ≠ 0", labels[i]));
            }
            for j in 0..n {
                let d = dist[i][j];
                if !d.is_finite() || d < 0.0 {
                    return bad(format!("d({},{}) = {d} is not a finite non-negative number", labels[i], labels[j]));
                }
                if d != dist[j][i] {
                    return bad(format!("d({},{}) ≠ d({},{})", labels[i], labels[j], labels[j], labels[i]));
                }
                if i != j && d == 0.0 && !pseudo {
                    return bad(format!("distinct points {} and {} at distance 0", labels[i], labels[j]));
                }
                for k in 0..n {
                    if dist[i][k] > d + dist[j][k] + slack {
                        return bad(format!(
                            "triangle inequality fails for {}, {}, {}",
                            labels[i], labels[j], labels[k]
                        ));
                    }
                }
            }
        }
        Ok(FiniteMetric { labels, dist })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[PointId] {
        &self.labels
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    /// Sorted distinct distances, always starting with 0.
    pub fn critical_values(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.dist.iter().flatten().cloned().collect();
        values.push(0.0);
        sorted_distinct(values)
    }
}

fn sorted_distinct(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    values.dedup();
    values
}

/// Which ball a metric closure uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decoration {
    /// Open ball `d < ε`; the radius-zero ball is the point itself.
    Minus,
    /// Closed ball `d ≤ ε`.
    Closed,
    /// `{y | dist(y, {x}) ≤ ε}`; the same as `Closed` on a finite metric.
    Plus,
}

impl std::str::FromStr for Decoration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "minus" | "-" => Ok(Decoration::Minus),
            "closed" | "0" => Ok(Decoration::Closed),
            "plus" | "+" => Ok(Decoration::Plus),
            _ => Err(Error::BadParameter(format!("unknown decoration '{s}'"))),
        }
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decoration::Minus => "minus",
            Decoration::Closed => "closed",
            Decoration::Plus => "plus",
        })
    }
}

fn within(d: f64, eps: f64, dec: Decoration) -> bool {
    match dec {
        Decoration::Minus => d < eps,
        Decoration::Closed | Decoration::Plus => d <= eps,
    }
}

/// The closure whose singleton closures are the `ε`-balls of `metric`.
pub fn metric_closure(metric: &FiniteMetric, eps: f64, dec: Decoration) -> Result<ClosureSpace> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::NegativeEpsilon(eps));
    }
    Ok(ClosureSpace::from_relation_unchecked(metric.labels.clone(), |i, j| {
        within(metric.dist[i][j], eps, dec)
    }))
}

/// Digraph without loops whose edges carry non-negative finite weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    labels: Vec<PointId>,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedDigraph {
    pub fn new(labels: Vec<PointId>, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l, ()).is_some() {
                return Err(Error::DuplicatePoint(l.clone()));
            }
        }
        let mut pairs = HashMap::new();
        for &(a, b, w) in &edges {
            if a >= n || b >= n {
                return Err(Error::InvalidDigraph(format!("edge ({a},{b}) leaves the point set")));
            }
            if a == b {
                return Err(Error::InvalidDigraph(format!("self-loop at {}", labels[a])));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidDigraph(format!("weight {w} on ({},{})", labels[a], labels[b])));
            }
            if pairs.insert((a, b), ()).is_some() {
                return Err(Error::InvalidDigraph(format!("repeated edge ({},{})", labels[a], labels[b])));
            }
        }
        Ok(WeightedDigraph { labels, edges })
    }

    /// The complete digraph whose weights are the metric distances.
    pub fn from_metric(metric: &FiniteMetric) -> Self {
        let n = metric.len();
        let edges = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b, metric.distance(a, b))))
            .collect();
        WeightedDigraph {
            labels: metric.labels.clone(),
            edges,
        }
    }

    pub fn labels(&self) -> &[PointId] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }
}

/// A finite grid `t_1 < … < t_k` with a closure space per grid value; both
/// point sets and closures grow along the grid. Between grid values the
/// stage of the largest grid value below is in force.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredClosureSpace {
    grid: Vec<f64>,
    stages: Vec<ClosureSpace>,
    /// Position of each stage point in the final stage.
    members: Vec<Vec<usize>>,
}

impl FilteredClosureSpace {
    /// Validates grid order and stage inclusions.
    pub fn new(grid: Vec<f64>, stages: Vec<ClosureSpace>) -> Result<Self> {
        if grid.len() != stages.len() {
            return Err(Error::BadParameter(format!("{} grid values for {} stages", grid.len(), stages.len())));
        }
        if grid.iter().any(|t| !t.is_finite()) {
            return Err(Error::BadParameter("grid values must be finite".into()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadParameter("grid must be strictly increasing".into()));
        }
        let members = match stages.last() {
            None => Vec::new(),
            Some(last) => stages
                .iter()
                .map(|s| s.labels().iter().map(|l| last.require(l)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        };
        for i in 1..stages.len() {
            let (prev, next) = (&stages[i - 1], &stages[i]);
            for x in 0..prev.len() {
                let nx = next.require(prev.label(x))?;
                for y in prev.closure_of_point(x).ones() {
                    let ny = next.require(prev.label(y))?;
                    if !next.related(nx, ny) {
                        return Err(Error::BadParameter(format!(
                            "closure of {} shrinks between grid values {} and {}",
                            prev.label(x),
                            grid[i - 1],
                            grid[i]
                        )));
                    }
                }
            }
        }
        Ok(FilteredClosureSpace { grid, stages, members })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn stages(&self) -> &[ClosureSpace] {
        &self.stages
    }

    pub fn stage(&self, i: usize) -> &ClosureSpace {
        &self.stages[i]
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Every point that appears at some stage, in the order of the last stage.
    pub fn points(&self) -> &[PointId] {
        self.stages.last().map(|s| s.labels()).unwrap_or(&[])
    }

    /// Position in [`FilteredClosureSpace::points`] of each point of stage `i`.
    pub fn stage_members(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    /// Index of the largest grid value `≤ t`.
    pub fn stage_index_at(&self, t: f64) -> Option<usize> {
        let count = self.grid.partition_point(|&g| g <= t);
        count.checked_sub(1)
    }

    /// Stage in force at `t`; the empty space below the grid.
    pub fn stage_at(&self, t: f64) -> ClosureSpace {
        match self.stage_index_at(t) {
            Some(i) => self.stages[i].clone(),
            None => ClosureSpace::empty(),
        }
    }

    /// The same filtration with every grid value increased by `s`.
    pub fn shifted(&self, s: f64) -> Self {
        FilteredClosureSpace {
            grid: self.grid.iter().map(|t| t + s).collect(),
            stages: self.stages.clone(),
            members: self.members.clone(),
        }
    }

    /// Adds grid values without changing the filtration as a step function.
    pub fn refined(&self, extra: &[f64]) -> Self {
        let grid = sorted_distinct(self.grid.iter().chain(extra).cloned().collect());
        let stages = grid.iter().map(|&t| self.stage_at(t)).collect();
        FilteredClosureSpace::new(grid, stages).expect("refinement of a valid filtration")
    }
}

/// Filtration by the metric closures at every critical distance.
///
/// With [`Decoration::Minus`] the stage at `t` uses open balls of radius `t`,
/// which coincides with the closed-ball stage at the previous grid value.
pub fn filtered_from_metric(metric: &FiniteMetric, dec: Decoration) -> FilteredClosureSpace {
    let grid = metric.critical_values();
    let stages = grid
        .iter()
        .map(|&t| metric_closure(metric, t, dec).expect("grid values are non-negative"))
        .collect();
    FilteredClosureSpace::new(grid, stages).expect("metric stages are monotone")
}

/// Filtration keeping the edges of weight `≤ t` at stage `t`.
pub fn filtered_from_weighted_digraph(graph: &WeightedDigraph) -> FilteredClosureSpace {
    let mut values: Vec<f64> = graph.edges.iter().map(|e| e.2).collect();
    values.push(0.0);
    let grid = sorted_distinct(values);
    let n = graph.labels.len();
    let stages = grid
        .iter()
        .map(|&t| {
            let mut related = vec![vec![false; n]; n];
            for &(a, b, w) in &graph.edges {
                if w <= t {
                    related[a][b] = true;
                }
            }
            ClosureSpace::from_relation_unchecked(graph.labels.clone(), |a, b| related[a][b])
        })
        .collect();
    FilteredClosureSpace::new(grid, stages).expect("digraph stages are monotone")
}

/// Sublevel filtration: the stage at `t` is the subspace on `f ≤ t`.
/// `values[i]` is the value at point `i` of `space`.
pub fn filtered_from_sublevel(space: &ClosureSpace, values: &[f64]) -> Result<FilteredClosureSpace> {
    if values.len() != space.len() {
        return Err(Error::BadParameter(format!(
            "{} function values for {} points",
            values.len(),
            space.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::BadParameter("function values must be finite".into()));
    }
    let grid = sorted_distinct(values.to_vec());
    let stages = grid
        .iter()
        .map(|&t| {
            let keep: Vec<usize> = (0..space.len()).filter(|&i| values[i] <= t).collect();
            space.subspace_indices(&keep)
        })
        .collect();
    FilteredClosureSpace::new(grid, stages)
}

/// Sublevel filtration from labelled values.
pub fn filtered_from_sublevel_labels(space: &ClosureSpace, values: &[(PointId, f64)]) -> Result<FilteredClosureSpace> {
    let mut table = vec![None; space.len()];
    for (p, v) in values {
        table[space.require(p)?] = Some(*v);
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::MissingPoint(space.label(i).clone())))
        .collect::<Result<Vec<_>>>()?;
    filtered_from_sublevel(space, &table)
}
