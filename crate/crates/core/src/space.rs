//! Finite closure spaces.
//!
//! A finite closure is determined by its singleton closures, so a space is
//! stored as a reflexive relation: `y` is related to `x` when `y ∈ c(x)`.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::point::PointId;

/// A set of points of a space, indexed by position in the space's point list.
pub type PointSet = FixedBitSet;

#[derive(Clone)]
pub struct ClosureSpace {
    labels: Vec<PointId>,
    index: HashMap<PointId, usize>,
    rows: Vec<FixedBitSet>,
}

impl PartialEq for ClosureSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.rows == other.rows
    }
}

impl Eq for ClosureSpace {}

impl fmt::Debug for ClosureSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (i, label) in self.labels.iter().enumerate() {
            let row: Vec<String> = self.rows[i].ones().map(|j| self.labels[j].to_string()).collect();
            map.entry(&label.to_string(), &row);
        }
        map.finish()
    }
}

fn index_labels(labels: &[PointId]) -> Result<HashMap<PointId, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicatePoint(l.clone()));
        }
    }
    Ok(index)
}

impl ClosureSpace {
    /// Builds a space from labelled singleton closures. Every point needs an
    /// entry and every closure must contain its own point.
    pub fn build<I>(points: Vec<PointId>, closure_of: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PointId, Vec<PointId>)>,
    {
        let index = index_labels(&points)?;
        let n = points.len();
        let mut rows: Vec<Option<FixedBitSet>> = vec![None; n];
        for (p, targets) in closure_of {
            let i = *index.get(&p).ok_or_else(|| Error::MissingPoint(p.clone()))?;
            let mut row = FixedBitSet::with_capacity(n);
            for t in targets {
                let j = *index.get(&t).ok_or(Error::MissingPoint(t))?;
                row.insert(j);
            }
            rows[i] = Some(row);
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::MissingPoint(points[i].clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(points, rows)
    }

    /// Builds a space from index rows, checking reflexivity.
    pub fn from_rows(labels: Vec<PointId>, rows: Vec<FixedBitSet>) -> Result<Self> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        if rows.len() != n {
            return Err(Error::BadParameter(format!(
                "{} closure rows for {} points",
                rows.len(),
                n
            )));
        }
        let mut fixed = Vec::with_capacity(n);
        for (i, given) in rows.into_iter().enumerate() {
            let mut row = FixedBitSet::with_capacity(n);
            for j in given.ones() {
                if j >= n {
                    return Err(Error::BadParameter(format!("closure of {} leaves the point set", labels[i])));
                }
                row.insert(j);
            }
            if !row.contains(i) {
                return Err(Error::NotReflexive(labels[i].clone()));
            }
            fixed.push(row);
        }
        Ok(ClosureSpace {
            labels,
            index,
            rows: fixed,
        })
    }

    /// Builds a space whose closure relates `x` to `y` when `related(x, y)`
    /// holds, plus the reflexive pairs.
    pub fn from_relation(labels: Vec<PointId>, related: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let rows = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if i == j || related(i, j) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Self::from_rows(labels, rows)
    }

    pub(crate) fn from_relation_unchecked(labels: Vec<PointId>, related: impl Fn(usize, usize) -> bool) -> Self {
        Self::from_relation(labels, related).expect("labels are distinct")
    }

    pub fn empty() -> Self {
        ClosureSpace {
            labels: Vec::new(),
            index: HashMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    /// Discrete space on `0..n`.
    pub fn discrete(n: usize) -> Self {
        Self::from_relation_unchecked(int_labels(n), |_, _| false)
    }

    /// Indiscrete space on `0..n`.
    pub fn indiscrete(n: usize) -> Self {
        Self::from_relation_unchecked(int_labels(n), |_, _| true)
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

    pub fn label(&self, i: usize) -> &PointId {
        &self.labels[i]
    }

    pub fn index_of(&self, p: &PointId) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn require(&self, p: &PointId) -> Result<usize> {
        self.index_of(p).ok_or_else(|| Error::MissingPoint(p.clone()))
    }

    /// Whether `y ∈ c(x)`.
    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// The singleton closure `c(x)`.
    pub fn closure_of_point(&self, x: usize) -> &PointSet {
        &self.rows[x]
    }

    pub fn empty_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_from_labels(&self, points: &[PointId]) -> Result<PointSet> {
        let mut s = self.empty_set();
        for p in points {
            s.insert(self.require(p)?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, set: &PointSet) -> Vec<PointId> {
        set.ones().map(|i| self.labels[i].clone()).collect()
    }

    pub fn closure_set(&self, set: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for i in set.ones() {
            out.union_with(&self.rows[i]);
        }
        out
    }

    pub fn interior_set(&self, set: &PointSet) -> PointSet {
        let mut complement = self.full_set();
        complement.difference_with(set);
        let mut out = self.full_set();
        out.difference_with(&self.closure_set(&complement));
        out
    }

    /// Closure of a labelled set, returned in the space's point order.
    pub fn closure(&self, points: &[PointId]) -> Result<Vec<PointId>> {
        Ok(self.labels_of(&self.closure_set(&self.set_from_labels(points)?)))
    }

    /// `X − c(X − A)`.
    pub fn interior(&self, points: &[PointId]) -> Result<Vec<PointId>> {
        Ok(self.labels_of(&self.interior_set(&self.set_from_labels(points)?)))
    }

    pub fn is_closed(&self, points: &[PointId]) -> Result<bool> {
        let s = self.set_from_labels(points)?;
        Ok(self.closure_set(&s) == s)
    }

    pub fn is_open(&self, points: &[PointId]) -> Result<bool> {
        let s = self.set_from_labels(points)?;
        Ok(self.interior_set(&s) == s)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|x| self.rows[x].ones().all(|y| self.related(y, x)))
    }

    pub fn is_discrete(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones(..) == 1)
    }

    /// Keeps only the mutual pairs: `s(c)(x) = {y ∈ c(x) | x ∈ c(y)}`.
    pub fn symmetrize(&self) -> Self {
        Self::from_relation_unchecked(self.labels.clone(), |x, y| self.related(x, y) && self.related(y, x))
    }

    /// The finest topological closure coarser than this one; on a finite
    /// space this is the transitive closure of the relation.
    pub fn topological_modification(&self) -> Self {
        let mut rows = self.rows.clone();
        // Warshall: if k ∈ c(i) then c(k) ⊆ c(i).
        for k in 0..self.len() {
            let row_k = rows[k].clone();
            for row in rows.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        ClosureSpace {
            labels: self.labels.clone(),
            index: self.index.clone(),
            rows,
        }
    }

    /// Reverses the relation: `y ∈ c'(x)` iff `x ∈ c(y)`.
    pub fn reverse(&self) -> Self {
        Self::from_relation_unchecked(self.labels.clone(), |x, y| self.related(y, x))
    }

    /// Finite closures are already quasi-discrete, so this is the identity.
    pub fn quasi_discrete_modification(&self) -> Self {
        self.clone()
    }

    /// Smallest neighbourhood of `x`: `{y | x ∈ c(y)}`.
    pub fn local_base_set(&self, x: usize) -> PointSet {
        let mut s = self.empty_set();
        for y in 0..self.len() {
            if self.related(y, x) {
                s.insert(y);
            }
        }
        s
    }

    pub fn local_base(&self, p: &PointId) -> Result<Vec<PointId>> {
        Ok(self.labels_of(&self.local_base_set(self.require(p)?)))
    }

    /// Subspace on the given indices, in the given order: `c_A(B) = c(B) ∩ A`.
    pub fn subspace_indices(&self, keep: &[usize]) -> Self {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_relation_unchecked(labels, |a, b| self.related(keep[a], keep[b]))
    }

    /// Subspace on a labelled subset; points keep the parent's order.
    pub fn subspace(&self, points: &[PointId]) -> Result<Self> {
        let set = self.set_from_labels(points)?;
        Ok(self.subspace_indices(&set.ones().collect::<Vec<_>>()))
    }

    /// Same closure with new labels.
    pub fn relabel(&self, labels: Vec<PointId>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::BadParameter("relabel needs one label per point".into()));
        }
        Self::from_rows(labels, self.rows.clone())
    }

    /// Same closure with labels `0..n`.
    pub fn with_index_labels(&self) -> Self {
        self.relabel(int_labels(self.len())).expect("index labels are distinct")
    }

    /// Closure mapping in label form, in point order.
    pub fn closure_table(&self) -> Vec<(PointId, Vec<PointId>)> {
        (0..self.len())
            .map(|i| (self.labels[i].clone(), self.labels_of(&self.rows[i])))
            .collect()
    }

    /// Whether every closure of `self` is contained in the matching closure of
    /// `other` (same points, finer-or-equal closure).
    pub fn is_finer_than(&self, other: &ClosureSpace) -> bool {
        self.labels == other.labels && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }
}

pub fn int_labels(n: usize) -> Vec<PointId> {
    (0..n).map(PointId::from).collect()
}

/// Singleton criterion for continuity: `f(c(x)) ⊆ c(f(x))` for every `x`.
pub fn is_continuous(source: &ClosureSpace, target: &ClosureSpace, images: &[usize]) -> bool {
    first_discontinuity(source, target, images).is_none()
}

pub(crate) fn first_discontinuity(source: &ClosureSpace, target: &ClosureSpace, images: &[usize]) -> Option<usize> {
    debug_assert_eq!(images.len(), source.len());
    (0..source.len()).find(|&x| {
        let fx = images[x];
        source.rows[x].ones().any(|y| !target.related(fx, images[y]))
    })
}
