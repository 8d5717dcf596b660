//! Singular simplices: continuous maps from the interval simplices, which are
//! the indiscrete space on `n + 1` points for `J_1` and the order-like space
//! `c(i) = {j ≥ i}` for `J_+`.

use super::cubes::maps_from;
use super::{BaseInterval, ChainComplex};
use crate::error::Result;
use crate::interval::{interval, IntervalSpec};
use crate::space::ClosureSpace;

/// The `n`-simplex of the given interval.
pub fn simplex_space(base: BaseInterval, n: usize) -> ClosureSpace {
    match base {
        BaseInterval::J1 => ClosureSpace::indiscrete(n + 1),
        BaseInterval::JPlus if n == 0 => ClosureSpace::point().with_index_labels(),
        BaseInterval::JPlus => interval(IntervalSpec::leq(n)).expect("valid interval"),
    }
}

/// All singular `n`-simplices as vertex tuples, in lexicographic order.
pub fn enumerate_simplices(space: &ClosureSpace, base: BaseInterval, n: usize) -> Vec<Vec<usize>> {
    maps_from(&simplex_space(base, n), space)
}

fn repeats_consecutively(tuple: &[usize]) -> bool {
    tuple.windows(2).any(|w| w[0] == w[1])
}

/// Faces by deleting one vertex, with sign `(-1)^i`.
pub(super) fn deletion_faces(n: usize, cell: &[usize]) -> Vec<(Vec<usize>, i64)> {
    (0..=n)
        .map(|i| {
            let mut face = cell.to_vec();
            face.remove(i);
            (face, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

pub(super) fn singular_chain_complex(
    space: &ClosureSpace,
    base: BaseInterval,
    normalized: bool,
    top: usize,
) -> Result<ChainComplex> {
    let cells: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|n| {
            let mut all = enumerate_simplices(space, base, n);
            if normalized {
                all.retain(|t| !repeats_consecutively(t));
            }
            all
        })
        .collect();
    Ok(ChainComplex::from_faces(cells, deletion_faces))
}
