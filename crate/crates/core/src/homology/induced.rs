//! Maps induced on chains and on homology.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{chain_complex, ChainComplex, Flavor};
use crate::error::{Error, Result};
use crate::linalg::field::{column_over, dense_over, null_space, rank_over, Echelon, Field, Vector};
use crate::linalg::integer::{integer_kernel, lattice_invariants, lattice_invariants_with};
use crate::linalg::SparseMatrix;
use crate::maps::ContinuousMap;

/// Sorts `v` and returns the sign of the sorting permutation, or `None` if a
/// value repeats.
fn sort_with_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// The chain map `C_n(X) → C_n(Y)` of post-composition with `images`.
/// Cells landing on degenerate cells go to zero.
pub fn chain_map(flavor: Flavor, source: &ChainComplex, target: &ChainComplex, images: &[usize], n: usize) -> SparseMatrix {
    let cols = source
        .cells(n)
        .iter()
        .map(|cell| {
            let mut image: Vec<usize> = cell.iter().map(|&v| images[v]).collect();
            let sign = match flavor {
                Flavor::Complex(_) => match sort_with_sign(&mut image) {
                    Some(s) => s,
                    None => return Vec::new(),
                },
                _ => 1,
            };
            target.cell_index(n, &image).map(|row| vec![(row, sign)]).unwrap_or_default()
        })
        .collect();
    SparseMatrix::from_columns(target.rank(n), cols)
}

fn apply<F: Field>(field: &F, m: &SparseMatrix, v: &Vector<F>) -> Vector<F> {
    let mut out = vec![field.zero(); m.rows()];
    for (j, x) in v.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for &(i, a) in m.column(j) {
            out[i] = field.add(&out[i], &field.mul(x, &field.from_i64(a)));
        }
    }
    out
}

/// Degree-`n` homology over a field with an explicit basis of cycle
/// representatives.
#[derive(Debug, Clone)]
pub struct FieldHomology<F: Field> {
    echelon: Echelon<F>,
    boundary_rank: usize,
    representatives: Vec<Vector<F>>,
}

impl<F: Field> FieldHomology<F> {
    pub fn new(field: &F, complex: &ChainComplex, n: usize, reduced: bool) -> Result<Self> {
        if n >= complex.top_degree() {
            return Err(Error::DegreeOutOfRange(n));
        }
        let incoming = complex.boundary(n + 1);
        let boundary_rank = rank_over(field, incoming);
        let mut echelon = Echelon::new(field.clone(), complex.rank(n));
        for j in 0..incoming.ncols() {
            if echelon.rank() == boundary_rank {
                break;
            }
            echelon.insert(&column_over(field, incoming, j));
        }
        let outgoing = complex.boundary_for(n, reduced);
        let cycles = null_space(field, &dense_over(field, &outgoing), complex.rank(n));
        let mut representatives = Vec::new();
        for z in cycles {
            if echelon.insert(&z) {
                representatives.push(z);
            }
        }
        Ok(FieldHomology {
            echelon,
            boundary_rank,
            representatives,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vector<F>] {
        &self.representatives
    }

    /// Coordinates of the class of a cycle in the representative basis;
    /// `None` if `cycle` is not a cycle.
    pub fn class_of(&self, cycle: &Vector<F>) -> Option<Vector<F>> {
        let coords = self.echelon.coordinates(cycle)?;
        Some(coords[self.boundary_rank..].to_vec())
    }
}

/// Matrix (row-major, `dim H_n(Y) × dim H_n(X)`) of the map on homology
/// induced by a chain map in degree `n`.
pub fn induced_map_between<F: Field>(
    field: &F,
    source: &FieldHomology<F>,
    target: &FieldHomology<F>,
    chain: &SparseMatrix,
) -> Vec<Vector<F>> {
    let mut out = vec![vec![field.zero(); source.dim()]; target.dim()];
    for (j, rep) in source.representatives.iter().enumerate() {
        let image = apply(field, chain, rep);
        let coords = target.class_of(&image).expect("chain maps send cycles to cycles");
        for (i, c) in coords.into_iter().enumerate() {
            out[i][j] = c;
        }
    }
    out
}

/// `f_*` on degree-`n` homology over `field`.
pub fn induced_map<F: Field>(field: &F, f: &ContinuousMap, flavor: Flavor, n: usize, reduced: bool) -> Result<Vec<Vector<F>>> {
    let cx = chain_complex(f.source(), flavor, n + 1)?;
    let cy = chain_complex(f.target(), flavor, n + 1)?;
    let hx = FieldHomology::new(field, &cx, n, reduced)?;
    let hy = FieldHomology::new(field, &cy, n, reduced)?;
    Ok(induced_map_between(field, &hx, &hy, &chain_map(flavor, &cx, &cy, f.images(), n)))
}

/// Whether `f_* = g_*` on degree-`n` homology with integer coefficients:
/// `(f_# − g_#)` must send every cycle of `X` to a boundary of `Y`.
pub fn induced_maps_agree_integrally(f: &ContinuousMap, g: &ContinuousMap, flavor: Flavor, n: usize, reduced: bool) -> Result<bool> {
    if !f.same_ends(g) {
        return Err(Error::SourceTargetMismatch);
    }
    let cx = chain_complex(f.source(), flavor, n + 1)?;
    let cy = chain_complex(f.target(), flavor, n + 1)?;
    let fs = chain_map(flavor, &cx, &cy, f.images(), n);
    let gs = chain_map(flavor, &cx, &cy, g.images(), n);
    let cycles = integer_kernel(&cx.boundary_for(n, reduced));
    let differences: Vec<Vec<BigInt>> = cycles
        .iter()
        .map(|z| {
            let mut d = vec![BigInt::zero(); cy.rank(n)];
            for (j, c) in z.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(i, a) in fs.column(j) {
                    d[i] += c * a;
                }
                for &(i, a) in gs.column(j) {
                    d[i] -= c * a;
                }
            }
            d
        })
        .filter(|d| d.iter().any(|x| !x.is_zero()))
        .collect();
    if differences.is_empty() {
        return Ok(true);
    }
    let boundaries = cy.boundary(n + 1);
    Ok(lattice_invariants(boundaries) == lattice_invariants_with(boundaries, &differences))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::{product, ProductKind};
    use crate::homology::BaseInterval;
    use crate::interval::{interval, IntervalSpec};
    use crate::linalg::PrimeField;

    #[test]
    fn identity_and_constant() {
        let j = interval(IntervalSpec::j1()).unwrap();
        let sq = Arc::new(product(&j, &j, ProductKind::Inductive));
        let flavor = Flavor::cubical(BaseInterval::J1, ProductKind::Product);
        let f2 = PrimeField::new(2).unwrap();
        let id = ContinuousMap::identity(sq.clone());
        let m = induced_map(&f2, &id, flavor, 1, false).unwrap();
        assert_eq!(m, vec![vec![f2.one()]]);
        let c = ContinuousMap::constant(sq.clone(), sq.clone(), 0);
        let m = induced_map(&f2, &c, flavor, 1, false).unwrap();
        assert_eq!(m, vec![vec![f2.zero()]]);
        let m = induced_map(&f2, &c, flavor, 0, true).unwrap();
        assert!(m.is_empty());
        assert!(!induced_maps_agree_integrally(&id, &c, flavor, 1, false).unwrap());
        assert!(induced_maps_agree_integrally(&id, &c, flavor, 0, false).unwrap());
        assert!(induced_maps_agree_integrally(&id, &id, flavor, 1, false).unwrap());
    }

    #[test]
    fn bottom_edge_inclusion() {
        let j = Arc::new(interval(IntervalSpec::j1()).unwrap());
        let sq = Arc::new(product(&j, &j, ProductKind::Inductive));
        let f = ContinuousMap::new(j, sq, vec![0, 1]).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let m = induced_map(&f2, &f, Flavor::cubical(BaseInterval::J1, ProductKind::Product), 1, false).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].is_empty());
    }

    #[test]
    fn oriented_images() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        let mut v = vec![1, 0];
        assert_eq!(sort_with_sign(&mut v), Some(-1));
        assert_eq!(sort_with_sign(&mut [1, 1]), None);
    }
}
