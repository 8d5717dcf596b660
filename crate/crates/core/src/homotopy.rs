//! Homotopy of continuous maps with respect to an interval and a product.
//!
//! A one-step homotopy from `f` to `g` is a continuous `H : X ⊗ J → Y` with
//! `H(-, 0) = f` and `H(-, m) = g`; homotopy is the equivalence relation
//! generated by one-step homotopies.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;

use crate::constructions::{product, ProductKind};
use crate::error::{Error, Result};
use crate::hom::{find_homomorphism, full_domains, homomorphisms};
use crate::interval::{interval, IntervalFamily, IntervalSpec};
use crate::maps::ContinuousMap;
use crate::space::ClosureSpace;

/// Default bound on `|X|` and `|Y|` for searches over the whole map space.
pub const DEFAULT_SIZE_CAP: usize = 5;
/// Default bound on the number of one-step moves.
pub const DEFAULT_MAX_STEPS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomotopyQuery {
    pub interval: IntervalSpec,
    pub product: ProductKind,
    pub max_steps: usize,
    /// Largest source or target size for map-space searches.
    pub size_cap: usize,
}

impl HomotopyQuery {
    pub fn new(interval: IntervalSpec, product: ProductKind) -> Self {
        HomotopyQuery {
            interval,
            product,
            max_steps: DEFAULT_MAX_STEPS,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        self.interval.validate()?;
        if self.max_steps == 0 {
            return Err(Error::BadParameter("max_steps must be positive".into()));
        }
        Ok(())
    }
}

/// A one-step homotopy, given by its stages `H(-, 0), …, H(-, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneStep {
    /// Whether the homotopy runs from the earlier map to the later one in
    /// the enclosing witness (as opposed to the reverse).
    pub forward: bool,
    pub stages: Vec<Vec<usize>>,
}

/// Maps `f = f_0, …, f_n = g` with a one-step homotopy between each
/// consecutive pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub maps: Vec<Vec<usize>>,
    pub steps: Vec<OneStep>,
}

impl HomotopyWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Decides one-step homotopies between maps `X → Y` for a fixed interval.
pub struct OneStepSolver {
    source: Arc<ClosureSpace>,
    target: Arc<ClosureSpace>,
    spec: IntervalSpec,
    kind: ProductKind,
    cylinder: ClosureSpace,
    points_per_fibre: usize,
}

impl OneStepSolver {
    pub fn new(source: Arc<ClosureSpace>, target: Arc<ClosureSpace>, spec: IntervalSpec, kind: ProductKind) -> Result<Self> {
        let j = interval(spec)?;
        let cylinder = product(&source, &j, kind);
        Ok(OneStepSolver {
            points_per_fibre: j.len(),
            source,
            target,
            spec,
            kind,
            cylinder,
        })
    }

    fn is_j1_product(&self) -> bool {
        self.kind == ProductKind::Product
            && self.spec.length == 1
            && matches!(self.spec.family, IntervalFamily::Plain | IntervalFamily::Top)
    }

    /// `(J_1, ×)`: for every `x` and `x' ∈ c(x)`, both `f(x')` and `g(x')`
    /// lie in `d(f(x)) ∩ d(g(x))`.
    fn j1_criterion(&self, f: &[usize], g: &[usize]) -> bool {
        let y = &self.target;
        (0..self.source.len()).all(|x| {
            self.source.closure_of_point(x).ones().all(|x2| {
                [f[x2], g[x2]].iter().all(|&v| y.related(f[x], v) && y.related(g[x], v))
            })
        })
    }

    /// Stages of some `H` with `H(-,0) = f`, `H(-,m) = g`.
    pub fn solve(&self, f: &[usize], g: &[usize]) -> Option<Vec<Vec<usize>>> {
        if self.is_j1_product() {
            return self.j1_criterion(f, g).then(|| vec![f.to_vec(), g.to_vec()]);
        }
        if f == g {
            return Some(vec![f.to_vec(); self.points_per_fibre]);
        }
        self.solve_generic(f, g)
    }

    /// The generic search, ignoring the closed-form shortcut.
    pub fn solve_generic(&self, f: &[usize], g: &[usize]) -> Option<Vec<Vec<usize>>> {
        let m = self.points_per_fibre - 1;
        let mut domains = full_domains(&self.cylinder, &self.target);
        for x in 0..self.source.len() {
            for (t, value) in [(0, f[x]), (m, g[x])] {
                let d = &mut domains[x * (m + 1) + t];
                d.clear();
                d.insert(value);
            }
        }
        let h = find_homomorphism(&self.cylinder, &self.target, domains)?;
        Some((0..=m).map(|t| (0..self.source.len()).map(|x| h[x * (m + 1) + t]).collect()).collect())
    }

    /// A one-step homotopy between `f` and `g` in either direction.
    pub fn either_direction(&self, f: &[usize], g: &[usize]) -> Option<OneStep> {
        if let Some(stages) = self.solve(f, g) {
            return Some(OneStep { forward: true, stages });
        }
        if self.spec.is_symmetric() {
            return None;
        }
        self.solve(g, f).map(|stages| OneStep { forward: false, stages })
    }
}

fn check_pair(f: &ContinuousMap, g: &ContinuousMap) -> Result<()> {
    if f.same_ends(g) {
        Ok(())
    } else {
        Err(Error::SourceTargetMismatch)
    }
}

/// A one-step homotopy from `f` to `g`, if one exists.
pub fn one_step_homotopic(f: &ContinuousMap, g: &ContinuousMap, spec: IntervalSpec, kind: ProductKind) -> Result<Option<OneStep>> {
    check_pair(f, g)?;
    let solver = OneStepSolver::new(f.source().clone(), f.target().clone(), spec, kind)?;
    Ok(solver
        .solve(f.images(), g.images())
        .map(|stages| OneStep { forward: true, stages }))
}

fn check_caps(x: &ClosureSpace, y: &ClosureSpace, query: &HomotopyQuery) -> Result<()> {
    if x.len() > query.size_cap || y.len() > query.size_cap {
        return Err(Error::CapExceeded(format!(
            "map-space search needs both spaces within {} points (got {} and {})",
            query.size_cap,
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

/// Searches for a chain of one-step homotopies from `f` to `g` of length at
/// most `query.max_steps`.
///
/// `Ok(None)` means the whole homotopy class of `f` was explored without
/// meeting `g`; hitting the step bound first gives `BoundExceeded`.
pub fn homotopic(f: &ContinuousMap, g: &ContinuousMap, query: &HomotopyQuery) -> Result<Option<HomotopyWitness>> {
    check_pair(f, g)?;
    query.validate()?;
    if f.images() == g.images() {
        return Ok(Some(HomotopyWitness {
            maps: vec![f.images().to_vec()],
            steps: Vec::new(),
        }));
    }
    check_caps(f.source(), f.target(), query)?;
    let solver = OneStepSolver::new(f.source().clone(), f.target().clone(), query.interval, query.product)?;
    let all = homomorphisms(f.source(), f.target());
    log::debug!("homotopy search over {} continuous maps", all.len());
    let index: HashMap<&[usize], usize> = all.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let start = index[f.images()];
    let goal = index[g.images()];
    let mut parent: Vec<Option<(usize, OneStep)>> = vec![None; all.len()];
    let mut depth = vec![usize::MAX; all.len()];
    depth[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let unvisited: Vec<usize> = (0..all.len()).filter(|&v| depth[v] == usize::MAX).collect();
        if unvisited.is_empty() {
            break;
        }
        let found: Vec<(usize, OneStep)> = unvisited
            .par_iter()
            .filter_map(|&v| solver.either_direction(&all[u], &all[v]).map(|s| (v, s)))
            .collect();
        if depth[u] == query.max_steps {
            if !found.is_empty() {
                return Err(Error::BoundExceeded(format!(
                    "no homotopy within {} steps, and the search was cut off",
                    query.max_steps
                )));
            }
            continue;
        }
        for (v, step) in found {
            depth[v] = depth[u] + 1;
            parent[v] = Some((u, step));
            if v == goal {
                let mut maps = vec![all[v].clone()];
                let mut steps = Vec::new();
                let mut cur = v;
                while let Some((p, s)) = parent[cur].take() {
                    maps.push(all[p].clone());
                    steps.push(s);
                    cur = p;
                }
                maps.reverse();
                steps.reverse();
                return Ok(Some(HomotopyWitness { maps, steps }));
            }
            queue.push_back(v);
        }
    }
    Ok(None)
}

/// Partition of all continuous maps `X → Y` into homotopy classes. Each
/// class is sorted and classes are ordered by their first map.
pub fn homotopy_classes(
    source: &Arc<ClosureSpace>,
    target: &Arc<ClosureSpace>,
    spec: IntervalSpec,
    kind: ProductKind,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let solver = OneStepSolver::new(source.clone(), target.clone(), spec, kind)?;
    let all = homomorphisms(source, target);
    log::debug!("homotopy classes: {} continuous maps under ({spec},{kind})", all.len());
    let mut class_of: Vec<usize> = (0..all.len()).collect();
    fn find(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    for u in 0..all.len() {
        for v in u + 1..all.len() {
            let (ru, rv) = (find(&mut class_of, u), find(&mut class_of, v));
            if ru == rv {
                continue;
            }
            if solver.either_direction(&all[u], &all[v]).is_some() {
                let (lo, hi) = (ru.min(rv), ru.max(rv));
                class_of[hi] = lo;
            }
        }
    }
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, m) in all.iter().enumerate() {
        let r = find(&mut class_of, i);
        let k = *slot.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(m.clone());
    }
    Ok(classes)
}

/// A homotopy equivalence `X ⇄ Y` with witnesses for both round trips.
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub there: ContinuousMap,
    pub back: ContinuousMap,
    /// From `back ∘ there` to the identity of `X`.
    pub source_round_trip: HomotopyWitness,
    /// From `there ∘ back` to the identity of `Y`.
    pub target_round_trip: HomotopyWitness,
}

fn class_containing(classes: &[Vec<Vec<usize>>], map: &[usize]) -> usize {
    classes
        .iter()
        .position(|c| c.binary_search_by(|m| m.as_slice().cmp(map)).is_ok())
        .expect("every continuous map has a class")
}

/// Searches for maps `f : X → Y`, `g : Y → X` with `gf ∼ 1_X`, `fg ∼ 1_Y`.
/// `Ok(None)` is an exhaustive negative answer.
pub fn homotopy_equivalent(x: &Arc<ClosureSpace>, y: &Arc<ClosureSpace>, query: &HomotopyQuery) -> Result<Option<Equivalence>> {
    query.validate()?;
    check_caps(x, y, query)?;
    let classes_x = homotopy_classes(x, x, query.interval, query.product)?;
    let classes_y = homotopy_classes(y, y, query.interval, query.product)?;
    let id_x: Vec<usize> = (0..x.len()).collect();
    let id_y: Vec<usize> = (0..y.len()).collect();
    let home_x = class_containing(&classes_x, &id_x);
    let home_y = class_containing(&classes_y, &id_y);
    let there_all = homomorphisms(x, y);
    let back_all = homomorphisms(y, x);
    for f in &there_all {
        for g in &back_all {
            let gf: Vec<usize> = f.iter().map(|&v| g[v]).collect();
            if class_containing(&classes_x, &gf) != home_x {
                continue;
            }
            let fg: Vec<usize> = g.iter().map(|&v| f[v]).collect();
            if class_containing(&classes_y, &fg) != home_y {
                continue;
            }
            let there = ContinuousMap::new(x.clone(), y.clone(), f.clone())?;
            let back = ContinuousMap::new(y.clone(), x.clone(), g.clone())?;
            let witness = |space: &Arc<ClosureSpace>, round: Vec<usize>| -> Result<HomotopyWitness> {
                let a = ContinuousMap::new(space.clone(), space.clone(), round)?;
                let id = ContinuousMap::identity(space.clone());
                homotopic(&a, &id, query)?.ok_or_else(|| Error::BoundExceeded("class computation and search disagree".into()))
            };
            return Ok(Some(Equivalence {
                source_round_trip: witness(x, gf)?,
                target_round_trip: witness(y, fg)?,
                there,
                back,
            }));
        }
    }
    Ok(None)
}

/// A homotopy from the identity of `X` to a constant map, if `X` is
/// contractible. `Ok(None)` is an exhaustive negative answer.
pub fn is_contractible(x: &Arc<ClosureSpace>, query: &HomotopyQuery) -> Result<Option<HomotopyWitness>> {
    query.validate()?;
    if x.is_empty() {
        return Ok(None);
    }
    let id = ContinuousMap::identity(x.clone());
    for p in 0..x.len() {
        let constant = ContinuousMap::constant(x.clone(), x.clone(), p);
        if let Some(w) = homotopic(&id, &constant, query)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
