//! Hypergraphs, simplicial complexes and the functors relating them to
//! closure spaces: Vietoris–Rips, Čech, `G`, `Γ` and the (co)skeleta.

use std::collections::BTreeSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::maps::ContinuousMap;
use crate::point::PointId;
use crate::space::ClosureSpace;

/// Which complex to build from a closure space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Vr,
    Cech,
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vr" | "rips" => Ok(Construction::Vr),
            "cech" | "čech" => Ok(Construction::Cech),
            _ => Err(Error::BadParameter(format!("unknown construction '{s}'"))),
        }
    }
}

fn normalize(mut s: Vec<usize>) -> Vec<usize> {
    s.sort_unstable();
    s.dedup();
    s
}

fn check_edges(n: usize, edges: &BTreeSet<Vec<usize>>) -> Result<()> {
    for e in edges {
        if e.is_empty() {
            return Err(Error::BadParameter("empty hyperedge".into()));
        }
        if e.iter().any(|&v| v >= n) {
            return Err(Error::BadParameter(format!("hyperedge {e:?} leaves the point set")));
        }
    }
    Ok(())
}

/// Vertex set plus a family of non-empty vertex subsets (sorted index lists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    labels: Vec<PointId>,
    edges: BTreeSet<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(labels: Vec<PointId>, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let edges: BTreeSet<Vec<usize>> = edges.into_iter().map(normalize).collect();
        check_edges(labels.len(), &edges)?;
        Ok(Hypergraph { labels, edges })
    }

    pub fn labels(&self) -> &[PointId] {
        &self.labels
    }

    pub fn edges(&self) -> &BTreeSet<Vec<usize>> {
        &self.edges
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }

    pub fn is_downward_closed(&self) -> bool {
        (0..self.labels.len()).all(|v| self.edges.contains(&vec![v]))
            && self.edges.iter().all(|e| {
                e.len() == 1
                    || (0..e.len()).all(|skip| {
                        let face: Vec<usize> = e.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v).collect();
                        self.edges.contains(&face)
                    })
            })
    }

    /// Whether `images` maps every hyperedge onto a hyperedge of `target`.
    pub fn is_morphism_to(&self, target: &Hypergraph, images: &[usize]) -> bool {
        self.edges.iter().all(|e| target.contains(&image_of(e, images)))
    }
}

/// Downward-closed family of finite non-empty subsets containing every
/// singleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<PointId>,
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Validates downward closure.
    pub fn new(labels: Vec<PointId>, simplices: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let h = Hypergraph::new(labels, simplices)?;
        if !h.is_downward_closed() {
            return Err(Error::NotDownwardClosed(
                "every face of a simplex and every vertex must be present".into(),
            ));
        }
        Ok(SimplicialComplex {
            labels: h.labels,
            simplices: h.edges,
        })
    }

    /// Smallest complex containing the given simplices and all vertices.
    pub fn downward_closure(labels: Vec<PointId>, generators: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let h = Hypergraph::new(labels, generators)?;
        let closed = dc(&h);
        Ok(SimplicialComplex {
            labels: closed.labels,
            simplices: closed.edges,
        })
    }

    /// Builds from labelled simplices.
    pub fn from_labelled(labels: Vec<PointId>, simplices: &[Vec<PointId>], close_downward: bool) -> Result<Self> {
        let index: std::collections::HashMap<&PointId, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let gens = simplices
            .iter()
            .map(|s| {
                s.iter()
                    .map(|p| index.get(p).copied().ok_or_else(|| Error::MissingPoint(p.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if close_downward {
            Self::downward_closure(labels, gens)
        } else {
            Self::new(labels, gens)
        }
    }

    pub fn labels(&self) -> &[PointId] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn simplices(&self) -> &BTreeSet<Vec<usize>> {
        &self.simplices
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.simplices.contains(simplex)
    }

    /// Largest simplex dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// Simplices of dimension `d`, in lexicographic order.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == d + 1).cloned().collect()
    }

    /// Simplices as labelled vertex lists.
    pub fn labelled_simplices(&self) -> Vec<Vec<PointId>> {
        self.simplices
            .iter()
            .map(|s| s.iter().map(|&v| self.labels[v].clone()).collect())
            .collect()
    }

    pub fn as_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            labels: self.labels.clone(),
            edges: self.simplices.clone(),
        }
    }

    pub fn is_simplicial_map_to(&self, target: &SimplicialComplex, images: &[usize]) -> bool {
        self.simplices.iter().all(|s| target.contains(&image_of(s, images)))
    }

    /// Keeps the simplices of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        SimplicialComplex {
            labels: self.labels.clone(),
            simplices: self.simplices.iter().filter(|s| s.len() <= d + 1).cloned().collect(),
        }
    }
}

fn image_of(simplex: &[usize], images: &[usize]) -> Vec<usize> {
    normalize(simplex.iter().map(|&v| images[v]).collect())
}

/// Simplicial map between complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    images: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() || images.iter().any(|&y| y >= target.len()) {
            return Err(Error::BadParameter("map does not fit the vertex sets".into()));
        }
        if !source.is_simplicial_map_to(&target, &images) {
            return Err(Error::BadParameter("some simplex is not mapped onto a simplex".into()));
        }
        Ok(SimplicialMap { source, target, images })
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

/// `f(σ) ∪ g(σ)` is a simplex for every simplex `σ`.
pub fn contiguous(f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::SourceTargetMismatch);
    }
    Ok(f.source.simplices.iter().all(|s| {
        let joined = normalize(s.iter().flat_map(|&v| [f.images[v], g.images[v]]).collect());
        f.target.contains(&joined)
    }))
}

/// Visits every increasing vertex list in `pool` of size at most `max_size`
/// whose vertices are pairwise `adjacent`.
fn cliques(n: usize, adjacent: impl Fn(usize, usize) -> bool, max_size: usize) -> BTreeSet<Vec<usize>> {
    let neighbours: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            for u in v + 1..n {
                if adjacent(v, u) {
                    s.insert(u);
                }
            }
            s
        })
        .collect();
    let mut out = BTreeSet::new();
    fn grow(current: &mut Vec<usize>, pool: &FixedBitSet, neighbours: &[FixedBitSet], max_size: usize, out: &mut BTreeSet<Vec<usize>>) {
        for v in pool.ones() {
            current.push(v);
            out.insert(current.clone());
            if current.len() < max_size {
                let mut next = pool.clone();
                next.intersect_with(&neighbours[v]);
                grow(current, &next, neighbours, max_size, out);
            }
            current.pop();
        }
    }
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    if max_size > 0 {
        grow(&mut Vec::new(), &all, &neighbours, max_size, &mut out);
    }
    out
}

/// Vietoris–Rips complex: `σ` with `σ ⊆ c(x)` for every `x ∈ σ`.
pub fn vr(space: &ClosureSpace) -> SimplicialComplex {
    vr_up_to(space, usize::MAX)
}

/// Vietoris–Rips simplices of dimension at most `max_dim`.
pub fn vr_up_to(space: &ClosureSpace, max_dim: usize) -> SimplicialComplex {
    let simplices = cliques(
        space.len(),
        |a, b| space.related(a, b) && space.related(b, a),
        max_dim.saturating_add(1),
    );
    SimplicialComplex {
        labels: space.labels().to_vec(),
        simplices,
    }
}

/// Čech complex: `σ` with `σ ⊆ c(x)` for some `x`.
pub fn cech(space: &ClosureSpace) -> SimplicialComplex {
    cech_up_to(space, usize::MAX)
}

/// Čech simplices of dimension at most `max_dim`.
pub fn cech_up_to(space: &ClosureSpace, max_dim: usize) -> SimplicialComplex {
    let mut simplices = BTreeSet::new();
    let max_size = max_dim.saturating_add(1);
    for x in 0..space.len() {
        let row: Vec<usize> = space.closure_of_point(x).ones().collect();
        subsets_into(&row, max_size, &mut simplices);
    }
    SimplicialComplex {
        labels: space.labels().to_vec(),
        simplices,
    }
}

/// Adds every non-empty subset of `pool` (sorted) of size at most `max_size`.
fn subsets_into(pool: &[usize], max_size: usize, out: &mut BTreeSet<Vec<usize>>) {
    fn rec(pool: &[usize], start: usize, current: &mut Vec<usize>, max_size: usize, out: &mut BTreeSet<Vec<usize>>) {
        for k in start..pool.len() {
            current.push(pool[k]);
            // Subsets already present have all their supersets from this
            // pool handled by an earlier visit only if the pool matches, so
            // always recurse.
            out.insert(current.clone());
            if current.len() < max_size {
                rec(pool, k + 1, current, max_size, out);
            }
            current.pop();
        }
    }
    rec(pool, 0, &mut Vec::new(), max_size, out);
}

pub fn complex_of(space: &ClosureSpace, construction: Construction) -> SimplicialComplex {
    match construction {
        Construction::Vr => vr(space),
        Construction::Cech => cech(space),
    }
}

pub fn complex_up_to(space: &ClosureSpace, construction: Construction, max_dim: usize) -> SimplicialComplex {
    match construction {
        Construction::Vr => vr_up_to(space, max_dim),
        Construction::Cech => cech_up_to(space, max_dim),
    }
}

/// `G(K)`: the closure of `x` is the union of the simplices containing `x`.
pub fn g_functor(complex: &SimplicialComplex) -> ClosureSpace {
    let n = complex.len();
    let mut related = vec![FixedBitSet::with_capacity(n); n];
    for s in &complex.simplices {
        for &a in s {
            for &b in s {
                related[a].insert(b);
            }
        }
    }
    ClosureSpace::from_relation_unchecked(complex.labels.clone(), |a, b| related[a].contains(b))
}

/// `Γ`: downward closure of the singleton closures.
pub fn gamma(space: &ClosureSpace) -> Hypergraph {
    let generators: Vec<Vec<usize>> = (0..space.len()).map(|x| space.closure_of_point(x).ones().collect()).collect();
    dc(&Hypergraph {
        labels: space.labels().to_vec(),
        edges: generators.into_iter().collect(),
    })
}

/// Clique complex of a graph, given as a symmetric closure space.
pub fn cosk1(graph: &ClosureSpace) -> Result<SimplicialComplex> {
    if !graph.is_symmetric() {
        return Err(Error::BadParameter("a graph must be a symmetric closure space".into()));
    }
    Ok(vr(graph))
}

/// The graph of edges of a complex, as a symmetric closure space.
pub fn tr1(complex: &SimplicialComplex) -> ClosureSpace {
    let mut edges = BTreeSet::new();
    for s in complex.simplices.iter().filter(|s| s.len() == 2) {
        edges.insert((s[0], s[1]));
    }
    ClosureSpace::from_relation_unchecked(complex.labels.clone(), |a, b| {
        edges.contains(&(a.min(b), a.max(b)))
    })
}

/// Downward closure: all non-empty subsets of hyperedges plus every singleton.
pub fn dc(h: &Hypergraph) -> Hypergraph {
    let mut edges = BTreeSet::new();
    for v in 0..h.labels.len() {
        edges.insert(vec![v]);
    }
    for e in &h.edges {
        subsets_into(e, usize::MAX, &mut edges);
    }
    Hypergraph {
        labels: h.labels.clone(),
        edges,
    }
}

/// Sets all of whose finite non-empty subsets are simplices. Such a set is
/// itself finite here, hence a simplex, so the result has the same hyperedges.
pub fn cosk_inf(complex: &SimplicialComplex) -> Hypergraph {
    Hypergraph {
        labels: complex.labels.clone(),
        edges: complex.simplices.clone(),
    }
}

/// Finite hyperedges of a downward-closed hypergraph, which is all of them.
pub fn tr_inf(h: &Hypergraph) -> Result<SimplicialComplex> {
    if !h.is_downward_closed() {
        return Err(Error::NotDownwardClosed("hypergraph is not downward closed".into()));
    }
    Ok(SimplicialComplex {
        labels: h.labels.clone(),
        simplices: h.edges.clone(),
    })
}

/// The simplicial map a continuous map induces on the chosen complexes.
pub fn induced_simplicial_map(f: &ContinuousMap, construction: Construction) -> SimplicialMap {
    let source = Arc::new(complex_of(f.source(), construction));
    let target = Arc::new(complex_of(f.target(), construction));
    SimplicialMap::new(source, target, f.images().to_vec()).expect("continuous maps induce simplicial maps")
}
