//! Singular cubes: continuous maps from powers of a two-point interval.
//!
//! A cube of dimension `n` is stored as its value table of length `2^n`,
//! indexed by the vertex `(a_1, …, a_n)` read as a binary number with `a_1`
//! the most significant bit.

use rayon::prelude::*;

use super::{BaseInterval, ChainComplex};
use crate::constructions::{product, ProductKind};
use crate::error::Result;
use crate::hom::{full_domains, homomorphisms_with};
use crate::interval::interval;
use crate::space::ClosureSpace;

/// `J^{⊗n}`; the one-point space for `n = 0`.
pub fn cube_space(base: BaseInterval, kind: ProductKind, n: usize) -> ClosureSpace {
    let j = interval(base.spec()).expect("base intervals are valid");
    (0..n).fold(ClosureSpace::point().with_index_labels(), |acc, k| {
        if k == 0 {
            j.clone()
        } else {
            product(&acc, &j, kind)
        }
    })
}

/// All singular `n`-cubes in `space`, degenerate ones included, in
/// lexicographic order of their value tables.
pub fn enumerate_cubes(space: &ClosureSpace, base: BaseInterval, kind: ProductKind, n: usize) -> Vec<Vec<usize>> {
    let cube = cube_space(base, kind, n);
    maps_from(&cube, space)
}

/// All continuous maps, split over the image of the first vertex.
pub(crate) fn maps_from(source: &ClosureSpace, target: &ClosureSpace) -> Vec<Vec<usize>> {
    if source.is_empty() {
        return vec![Vec::new()];
    }
    let domains = full_domains(source, target);
    let firsts: Vec<usize> = domains[0].ones().collect();
    firsts
        .into_par_iter()
        .map(|v| {
            let mut d = domains.clone();
            d[0].clear();
            d[0].insert(v);
            homomorphisms_with(source, target, d)
        })
        .flatten_iter()
        .collect()
}

/// The face fixing coordinate `i` (1-based) to `value`.
pub fn cube_face(table: &[usize], n: usize, i: usize, value: usize) -> Vec<usize> {
    debug_assert!(1 <= i && i <= n && table.len() == 1 << n);
    let shift = n - i;
    let low_mask = (1usize << shift) - 1;
    (0..1usize << (n - 1))
        .map(|idx| {
            let high = idx >> shift;
            let low = idx & low_mask;
            table[(high << (shift + 1)) | (value << shift) | low]
        })
        .collect()
}

/// Whether the two opposite faces in some direction coincide.
pub fn is_degenerate_cube(table: &[usize], n: usize) -> bool {
    (1..=n).any(|i| {
        let shift = n - i;
        (0..table.len()).filter(|idx| idx >> shift & 1 == 0).all(|idx| table[idx] == table[idx | (1 << shift)])
    })
}

pub(super) fn cubical_chain_complex(
    space: &ClosureSpace,
    base: BaseInterval,
    kind: ProductKind,
    top: usize,
) -> Result<ChainComplex> {
    let cells: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|n| {
            enumerate_cubes(space, base, kind, n)
                .into_iter()
                .filter(|t| !is_degenerate_cube(t, n))
                .collect()
        })
        .collect();
    Ok(ChainComplex::from_faces(cells, |n, table| {
        let mut out = Vec::with_capacity(2 * n);
        for i in 1..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.push((cube_face(table, n, i, 0), sign));
            out.push((cube_face(table, n, i, 1), -sign));
        }
        out
    }))
}
