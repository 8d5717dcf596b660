//! Persistence of the filtered VR or Čech complex by boundary-matrix
//! column reduction.

use std::collections::HashMap;

use super::PersistenceDiagram;
use crate::complexes::{complex_up_to, Construction};
use crate::error::{Error, Result};
use crate::filtration::FilteredClosureSpace;
use crate::homology::Coefficients;
use crate::linalg::{Field, PrimeField, Rationals};

/// Diagrams in degrees `0..=max_dim` of the simplicial complexes built
/// stage by stage. Bars of length zero are dropped.
pub fn persistence_complex(
    filtration: &FilteredClosureSpace,
    construction: Construction,
    max_dim: usize,
    coefficients: Coefficients,
) -> Result<Vec<PersistenceDiagram>> {
    match coefficients {
        Coefficients::Integers => Err(Error::NeedsField),
        Coefficients::Rationals => Ok(reduce(&Rationals, filtration, construction, max_dim)),
        Coefficients::Prime(p) => {
            let field = PrimeField::new(p).ok_or_else(|| Error::BadParameter(format!("{p} is not prime")))?;
            Ok(reduce(&field, filtration, construction, max_dim))
        }
    }
}

/// Simplices over global point indices with the grid index at which each
/// first appears, in filtration order.
fn filtered_simplices(filtration: &FilteredClosureSpace, construction: Construction, max_dim: usize) -> Vec<(Vec<usize>, usize)> {
    let mut first: HashMap<Vec<usize>, usize> = HashMap::new();
    for (i, stage) in filtration.stages().iter().enumerate() {
        let members = filtration.stage_members(i);
        for s in complex_up_to(stage, construction, max_dim + 1).simplices() {
            let mut global: Vec<usize> = s.iter().map(|&v| members[v]).collect();
            global.sort_unstable();
            first.entry(global).or_insert(i);
        }
    }
    let mut all: Vec<(Vec<usize>, usize)> = first.into_iter().collect();
    all.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.len().cmp(&b.0.len())).then(a.0.cmp(&b.0)));
    all
}

fn reduce<F: Field>(field: &F, filtration: &FilteredClosureSpace, construction: Construction, max_dim: usize) -> Vec<PersistenceDiagram> {
    let grid = filtration.grid();
    let simplices = filtered_simplices(filtration, construction, max_dim);
    let position: HashMap<&[usize], usize> = simplices.iter().enumerate().map(|(k, s)| (s.0.as_slice(), k)).collect();
    // Columns as sparse vectors sorted by row; pivot = last row.
    let mut columns: Vec<Vec<(usize, F::Elem)>> = Vec::with_capacity(simplices.len());
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    let mut pairs: Vec<Vec<(f64, f64)>> = vec![Vec::new(); max_dim + 1];
    let mut killed = vec![false; simplices.len()];
    for (k, (s, _)) in simplices.iter().enumerate() {
        let mut col: Vec<(usize, F::Elem)> = Vec::new();
        if s.len() > 1 {
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                col.push((position[face.as_slice()], field.from_i64(sign)));
            }
            col.sort_by_key(|e| e.0);
        }
        while let Some(&(low, _)) = col.last() {
            let Some(&other) = pivot_owner.get(&low) else { break };
            let factor = field.mul(&col.last().unwrap().1, &field.inv(&columns[other].last().unwrap().1));
            col = sub_scaled(field, &col, &factor, &columns[other]);
        }
        if let Some(&(low, _)) = col.last() {
            pivot_owner.insert(low, k);
            killed[low] = true;
            let degree = simplices[low].0.len() - 1;
            let (birth, death) = (grid[simplices[low].1], grid[simplices[k].1]);
            if degree <= max_dim && birth < death {
                pairs[degree].push((birth, death));
            }
        }
        columns.push(col);
    }
    for (k, (s, appear)) in simplices.iter().enumerate() {
        let degree = s.len() - 1;
        if degree <= max_dim && columns[k].is_empty() && !killed[k] {
            pairs[degree].push((grid[*appear], f64::INFINITY));
        }
    }
    pairs
        .into_iter()
        .enumerate()
        .map(|(d, p)| PersistenceDiagram::new(d, p).expect("births precede deaths"))
        .collect()
}

/// `a − factor · b` on sparse columns sorted by row.
fn sub_scaled<F: Field>(field: &F, a: &[(usize, F::Elem)], factor: &F::Elem, b: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.neg(&field.mul(factor, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(factor, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
