//! Distortion of correspondences between filtered closure spaces and the
//! resulting Gromov–Hausdorff-type distance, by exhaustive search.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::filtration::FilteredClosureSpace;
use crate::point::PointId;

/// Largest number of points on either side accepted by [`gh_distance`] by
/// default.
pub const DEFAULT_GH_CAP: usize = 4;

/// A relation between the points of two filtrations that is surjective in
/// both directions. Indices refer to [`FilteredClosureSpace::points`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn new(left: usize, right: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        pairs.dedup();
        let mut hit_left = vec![false; left];
        let mut hit_right = vec![false; right];
        for &(x, y) in &pairs {
            if x >= left || y >= right {
                return Err(Error::NotACorrespondence);
            }
            hit_left[x] = true;
            hit_right[y] = true;
        }
        if hit_left.contains(&false) || hit_right.contains(&false) {
            return Err(Error::NotACorrespondence);
        }
        Ok(Correspondence { pairs })
    }

    pub fn from_labels(x: &FilteredClosureSpace, y: &FilteredClosureSpace, pairs: &[(PointId, PointId)]) -> Result<Self> {
        let find = |f: &FilteredClosureSpace, p: &PointId| {
            f.points().iter().position(|q| q == p).ok_or_else(|| Error::MissingPoint(p.clone()))
        };
        let indexed = pairs
            .iter()
            .map(|(a, b)| Ok((find(x, a)?, find(y, b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(x.points().len(), y.points().len(), indexed)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn transpose(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        Correspondence { pairs }
    }
}

/// Per-point birth values and first grid values of every relation.
struct Appearance {
    birth: Vec<f64>,
    /// `related[x][x']`: first grid value with `x'` in the closure of `x`.
    related: Vec<Vec<f64>>,
}

impl Appearance {
    fn of(f: &FilteredClosureSpace) -> Self {
        let n = f.points().len();
        let mut birth = vec![f64::INFINITY; n];
        let mut related = vec![vec![f64::INFINITY; n]; n];
        for (i, stage) in f.stages().iter().enumerate().rev() {
            let t = f.grid()[i];
            let members = f.stage_members(i);
            for (x, &gx) in members.iter().enumerate() {
                birth[gx] = t;
                for y in stage.closure_of_point(x).ones() {
                    related[gx][members[y]] = t;
                }
            }
        }
        Appearance { birth, related }
    }
}

/// Smallest shift making the pair conditions hold from `a` to `b`.
fn shift_needed(a: f64, b: f64) -> f64 {
    if a.is_infinite() || b <= a {
        0.0
    } else {
        b - a
    }
}

/// Smallest `ε` such that membership and closure relations at `t` in one
/// filtration hold at `t + ε` in the other for corresponding points, in
/// both directions.
pub fn distortion(x: &FilteredClosureSpace, y: &FilteredClosureSpace, c: &Correspondence) -> Result<f64> {
    let (nx, ny) = (x.points().len(), y.points().len());
    if c.pairs.iter().any(|&(a, b)| a >= nx || b >= ny) {
        return Err(Error::NotACorrespondence);
    }
    Ok(distortion_of(&Appearance::of(x), &Appearance::of(y), &c.pairs))
}

fn pair_cost(ax: &Appearance, ay: &Appearance, p: (usize, usize), q: (usize, usize)) -> f64 {
    let forward = shift_needed(ax.related[p.0][q.0], ay.related[p.1][q.1]);
    let backward = shift_needed(ay.related[p.1][q.1], ax.related[p.0][q.0]);
    forward.max(backward)
}

fn point_cost(ax: &Appearance, ay: &Appearance, p: (usize, usize)) -> f64 {
    shift_needed(ax.birth[p.0], ay.birth[p.1]).max(shift_needed(ay.birth[p.1], ax.birth[p.0]))
}

fn distortion_of(ax: &Appearance, ay: &Appearance, pairs: &[(usize, usize)]) -> f64 {
    let mut worst: f64 = 0.0;
    for &p in pairs {
        worst = worst.max(point_cost(ax, ay, p));
        for &q in pairs {
            worst = worst.max(pair_cost(ax, ay, p, q));
        }
    }
    worst
}

/// Half the least distortion over all correspondences. Each side may have
/// at most `cap` points.
pub fn gh_distance(x: &FilteredClosureSpace, y: &FilteredClosureSpace, cap: usize) -> Result<f64> {
    let (nx, ny) = (x.points().len(), y.points().len());
    if nx > cap || ny > cap {
        return Err(Error::CapExceeded(format!("{nx} and {ny} points with a cap of {cap}")));
    }
    if nx == 0 || ny == 0 {
        return if nx == ny { Ok(0.0) } else { Err(Error::NotACorrespondence) };
    }
    let cells = nx * ny;
    if cells >= 64 {
        return Err(Error::CapExceeded(format!("{cells} candidate pairs")));
    }
    log::debug!("gh: enumerating {} relations between {nx} and {ny} points", (1u64 << cells) - 1);
    let (ax, ay) = (Appearance::of(x), Appearance::of(y));
    let all: Vec<(usize, usize)> = (0..nx).flat_map(|i| (0..ny).map(move |j| (i, j))).collect();
    let row_mask = |i: usize| -> u64 { ((1u64 << ny) - 1) << (i * ny) };
    let col_mask = |j: usize| -> u64 { (0..nx).map(|i| 1u64 << (i * ny + j)).sum() };
    let rows: Vec<u64> = (0..nx).map(row_mask).collect();
    let cols: Vec<u64> = (0..ny).map(col_mask).collect();
    let best = (1u64..1u64 << cells)
        .into_par_iter()
        .filter(|&m| rows.iter().all(|r| m & r != 0) && cols.iter().all(|c| m & c != 0))
        .map(|m| {
            let pairs: Vec<(usize, usize)> = (0..cells).filter(|k| m >> k & 1 == 1).map(|k| all[k]).collect();
            distortion_of(&ax, &ay, &pairs)
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::{filtered_from_metric, Decoration, FiniteMetric};

    fn two_points(d: f64) -> FilteredClosureSpace {
        let m = FiniteMetric::from_fn(2, |i, j| if i == j { 0.0 } else { d }).unwrap();
        filtered_from_metric(&m, Decoration::Closed)
    }

    #[test]
    fn metric_pairs() {
        let (a, b) = (two_points(1.0), two_points(3.0));
        let id = Correspondence::new(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        assert_eq!(distortion(&a, &b, &id).unwrap(), 2.0);
        assert_eq!(distortion(&a, &a, &id).unwrap(), 0.0);
        assert_eq!(gh_distance(&a, &b, DEFAULT_GH_CAP).unwrap(), 1.0);
        let full = Correspondence::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(distortion(&a, &b, &full).unwrap(), 3.0);
        assert_eq!(full.transpose(), full);
    }

    #[test]
    fn point_versus_pair() {
        let p = filtered_from_metric(&FiniteMetric::from_fn(1, |_, _| 0.0).unwrap(), Decoration::Closed);
        assert_eq!(gh_distance(&p, &two_points(2.0), DEFAULT_GH_CAP).unwrap(), 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Correspondence::new(2, 2, vec![(0, 0)]), Err(Error::NotACorrespondence));
        assert_eq!(Correspondence::new(1, 1, vec![(0, 1)]), Err(Error::NotACorrespondence));
        let big = FiniteMetric::from_fn(5, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap();
        let big = filtered_from_metric(&big, Decoration::Closed);
        assert!(matches!(gh_distance(&big, &big, DEFAULT_GH_CAP), Err(Error::CapExceeded(_))));
    }
}
