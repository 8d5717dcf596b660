//! Continuous maps between finite closure spaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::point::PointId;
use crate::space::{first_discontinuity, ClosureSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    source: Arc<ClosureSpace>,
    target: Arc<ClosureSpace>,
    images: Vec<usize>,
}

impl ContinuousMap {
    /// Validates `images` (indices into the target) against the singleton
    /// continuity criterion.
    pub fn new(source: Arc<ClosureSpace>, target: Arc<ClosureSpace>, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::BadParameter(format!(
                "map has {} images for {} points",
                images.len(),
                source.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.len()) {
            return Err(Error::BadParameter(format!("image index {bad} outside the target")));
        }
        if let Some(x) = first_discontinuity(&source, &target, &images) {
            return Err(Error::NotContinuous(source.label(x).clone()));
        }
        Ok(ContinuousMap { source, target, images })
    }

    pub(crate) fn new_unchecked(source: Arc<ClosureSpace>, target: Arc<ClosureSpace>, images: Vec<usize>) -> Self {
        debug_assert!(first_discontinuity(&source, &target, &images).is_none());
        ContinuousMap { source, target, images }
    }

    /// Builds a map from labelled pairs covering every source point.
    pub fn from_labels(
        source: Arc<ClosureSpace>,
        target: Arc<ClosureSpace>,
        pairs: &[(PointId, PointId)],
    ) -> Result<Self> {
        let mut images = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            images[source.require(x)?] = target.require(y)?;
        }
        if let Some(i) = images.iter().position(|&y| y == usize::MAX) {
            return Err(Error::MissingPoint(source.label(i).clone()));
        }
        Self::new(source, target, images)
    }

    pub fn identity(space: Arc<ClosureSpace>) -> Self {
        let images = (0..space.len()).collect();
        ContinuousMap {
            source: space.clone(),
            target: space,
            images,
        }
    }

    pub fn constant(source: Arc<ClosureSpace>, target: Arc<ClosureSpace>, value: usize) -> Self {
        assert!(value < target.len());
        let images = vec![value; source.len()];
        ContinuousMap { source, target, images }
    }

    pub fn source(&self) -> &Arc<ClosureSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ClosureSpace> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn apply_label(&self, p: &PointId) -> Result<&PointId> {
        Ok(self.target.label(self.images[self.source.require(p)?]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ContinuousMap) -> Result<ContinuousMap> {
        if self.target != other.source {
            return Err(Error::SourceTargetMismatch);
        }
        let images = self.images.iter().map(|&y| other.images[y]).collect();
        Ok(ContinuousMap::new_unchecked(self.source.clone(), other.target.clone(), images))
    }

    pub fn same_ends(&self, other: &ContinuousMap) -> bool {
        self.source == other.source && self.target == other.target
    }
}
