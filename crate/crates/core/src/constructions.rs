//! Products, coproducts, coequalizers and pushouts.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::ContinuousMap;
use crate::point::PointId;
use crate::space::ClosureSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// `×`: both coordinates related.
    Product,
    /// `⊡`: both coordinates related and at least one of them fixed.
    Inductive,
}

impl std::str::FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" | "product" | "times" | "×" => Ok(ProductKind::Product),
            "box" | "inductive" | "⊡" | "b" => Ok(ProductKind::Inductive),
            _ => Err(Error::BadParameter(format!("unknown product kind '{s}'"))),
        }
    }
}

impl std::fmt::Display for ProductKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProductKind::Product => "x",
            ProductKind::Inductive => "box",
        })
    }
}

/// Product space on pairs `(x, y)`, ordered lexicographically; the pair
/// `(x, y)` sits at index `x * |Y| + y`.
pub fn product(x: &ClosureSpace, y: &ClosureSpace, kind: ProductKind) -> ClosureSpace {
    let ny = y.len();
    let labels = x
        .labels()
        .iter()
        .flat_map(|a| y.labels().iter().map(move |b| PointId::pair(a.clone(), b.clone())))
        .collect();
    ClosureSpace::from_relation_unchecked(labels, |p, q| {
        let (x1, y1) = (p / ny, p % ny);
        let (x2, y2) = (q / ny, q % ny);
        let both = x.related(x1, x2) && y.related(y1, y2);
        match kind {
            ProductKind::Product => both,
            ProductKind::Inductive => both && (x1 == x2 || y1 == y2),
        }
    })
}

/// Disjoint union; the point `p` of summand `i` is labelled `i:p`.
pub fn coproduct(spaces: &[&ClosureSpace]) -> ClosureSpace {
    let mut labels = Vec::new();
    let mut owner = Vec::new();
    for (i, s) in spaces.iter().enumerate() {
        for (j, l) in s.labels().iter().enumerate() {
            labels.push(PointId::tagged(i, l.clone()));
            owner.push((i, j));
        }
    }
    ClosureSpace::from_relation_unchecked(labels, |p, q| {
        let (sp, a) = owner[p];
        let (sq, b) = owner[q];
        sp == sq && spaces[sp].related(a, b)
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Keeps the smaller index as the representative.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Quotient of `space` by the equivalence generated by `pairs`. Each class is
/// labelled by its least member; the classes keep the order of those members.
fn quotient(space: &ClosureSpace, pairs: impl IntoIterator<Item = (usize, usize)>) -> (ClosureSpace, Vec<usize>) {
    let n = space.len();
    let mut uf = UnionFind::new(n);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let reps: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    let mut class_of_rep = vec![usize::MAX; n];
    let mut labels = Vec::new();
    for i in 0..n {
        if reps[i] == i {
            class_of_rep[i] = labels.len();
            labels.push(space.label(i).clone());
        }
    }
    let projection: Vec<usize> = reps.iter().map(|&r| class_of_rep[r]).collect();
    let k = labels.len();
    let mut related = vec![vec![false; k]; k];
    for z in 0..n {
        for w in space.closure_of_point(z).ones() {
            related[projection[z]][projection[w]] = true;
        }
    }
    let q = ClosureSpace::from_relation_unchecked(labels, |a, b| related[a][b]);
    (q, projection)
}

/// Coequalizer of `f, g: X → Y`, with the quotient map `Y → Q`.
pub fn coequalizer(f: &ContinuousMap, g: &ContinuousMap) -> Result<(ClosureSpace, ContinuousMap)> {
    if !f.same_ends(g) {
        return Err(Error::SourceTargetMismatch);
    }
    let y = f.target().clone();
    let (q, projection) = quotient(&y, (0..f.source().len()).map(|a| (f.apply(a), g.apply(a))));
    let q = Arc::new(q);
    let p = ContinuousMap::new(y, q.clone(), projection)?;
    Ok((ClosureSpace::clone(&q), p))
}

/// Pushout of `f: A → X` and `g: A → Y`, with the legs `X → P` and `Y → P`.
/// Points of `X` precede points of `Y` when choosing class labels, and labels
/// carry the summand tag (`0:` for `X`, `1:` for `Y`).
pub fn pushout(f: &ContinuousMap, g: &ContinuousMap) -> Result<(ClosureSpace, ContinuousMap, ContinuousMap)> {
    if f.source() != g.source() {
        return Err(Error::SourceTargetMismatch);
    }
    let (x, y) = (f.target().clone(), g.target().clone());
    let sum = coproduct(&[&x, &y]);
    let offset = x.len();
    let (p, projection) = quotient(&sum, (0..f.source().len()).map(|a| (f.apply(a), offset + g.apply(a))));
    let p = Arc::new(p);
    let left = ContinuousMap::new(x, p.clone(), projection[..offset].to_vec())?;
    let right = ContinuousMap::new(y, p.clone(), projection[offset..].to_vec())?;
    Ok((ClosureSpace::clone(&p), left, right))
}
