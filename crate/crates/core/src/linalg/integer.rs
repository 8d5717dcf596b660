//! Integer lattices: rank and invariant factors of a column span, and
//! kernel bases over `ℤ`.
//!
//! Arithmetic runs in checked `i64` first and restarts with `BigInt` when an
//! intermediate value overflows.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SparseMatrix;

/// Rank and torsion of `ℤ^rows / span(columns)`'s torsion part: the invariant
/// factors of the column span that exceed 1, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Invariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

trait Ring: Clone + PartialEq + Eq + Hash + Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_cmp_lt(&self, other: &Self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn quot(&self, b: &Self) -> Self;
    fn is_multiple_of(&self, b: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_cmp_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn is_multiple_of(&self, b: &Self) -> bool {
        self % b == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_cmp_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn is_multiple_of(&self, b: &Self) -> bool {
        Integer::is_multiple_of(self, b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Sparse<T> = Vec<(usize, T)>;

/// `v − q·p` on sorted sparse vectors.
fn sub_mul_sparse<T: Ring>(v: &Sparse<T>, q: &T, p: &Sparse<T>) -> Option<Sparse<T>> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j >= p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i >= v.len() || p[j].0 < v[i].0 {
            let x = T::zero().sub_mul(q, &p[j].1)?;
            out.push((p[j].0, x));
            j += 1;
        } else {
            let x = v[i].1.sub_mul(q, &p[j].1)?;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn lookup<T: Ring>(v: &Sparse<T>, row: usize) -> Option<&T> {
    v.binary_search_by_key(&row, |e| e.0).ok().map(|k| &v[k].1)
}

fn invariants_generic<T: Ring>(rows: usize, columns: Vec<Sparse<T>>) -> Option<Invariants> {
    // Phase 1: echelon columns with unit leading entries. Their span is a
    // direct summand of ℤ^rows, contributing invariant factors equal to 1.
    let mut pivots: Vec<Option<Sparse<T>>> = vec![None; rows];
    let mut residues = Vec::new();
    let mut unit_rank = 0;
    for mut v in columns {
        while let Some((r, lead)) = v.last().cloned() {
            if let Some(p) = &pivots[r] {
                // p's leading entry is ±1, so lead / p[r] is exact.
                let q = if p.last().unwrap().1 == T::from_i64(1) { lead } else { lead.neg()? };
                v = sub_mul_sparse(&v, &q, p)?;
            } else if lead.is_unit() {
                pivots[r] = Some(v);
                unit_rank += 1;
                break;
            } else {
                residues.push(v);
                break;
            }
        }
    }
    // Phase 2: project residues onto the rows without a pivot.
    let free_rows: Vec<usize> = (0..rows).filter(|&r| pivots[r].is_none()).collect();
    let mut position = vec![usize::MAX; rows];
    for (k, &r) in free_rows.iter().enumerate() {
        position[r] = k;
    }
    let mut seen = HashSet::new();
    let mut dense = Vec::new();
    for mut v in residues {
        let mut ceiling = usize::MAX;
        loop {
            let next = v.iter().rev().find(|(r, _)| *r < ceiling && pivots[*r].is_some()).map(|(r, _)| *r);
            let Some(r) = next else { break };
            let p = pivots[r].as_ref().unwrap();
            let lead = lookup(&v, r).unwrap().clone();
            let q = if p.last().unwrap().1 == T::from_i64(1) { lead } else { lead.neg()? };
            v = sub_mul_sparse(&v, &q, p)?;
            ceiling = r;
        }
        if v.is_empty() {
            continue;
        }
        let mut row = vec![T::zero(); free_rows.len()];
        for (r, x) in v {
            row[position[r]] = x;
        }
        if seen.insert(row.clone()) {
            dense.push(row);
        }
    }
    // Phase 3: Hermite-style basis of the residue lattice, then its Smith form.
    let basis = lattice_basis(free_rows.len(), dense)?;
    let diagonal = smith_diagonal(basis)?;
    let mut torsion: Vec<BigInt> = diagonal.iter().map(|d| d.to_big().abs()).filter(|d| !d.is_one()).collect();
    torsion.sort();
    Some(Invariants {
        rank: unit_rank + diagonal.len(),
        torsion,
    })
}

/// Inserts dense vectors into a triangular lattice basis by gcd steps.
fn lattice_basis<T: Ring>(dim: usize, vectors: Vec<Vec<T>>) -> Option<Vec<Vec<T>>> {
    let mut slots: Vec<Option<Vec<T>>> = vec![None; dim];
    for mut v in vectors {
        for r in 0..dim {
            if v[r].is_zero() {
                continue;
            }
            match slots[r].take() {
                None => {
                    slots[r] = Some(v);
                    break;
                }
                Some(mut b) => {
                    while !v[r].is_zero() {
                        let q = b[r].quot(&v[r]);
                        for k in 0..dim {
                            b[k] = b[k].sub_mul(&q, &v[k])?;
                        }
                        std::mem::swap(&mut b, &mut v);
                    }
                    slots[r] = Some(b);
                }
            }
        }
    }
    Some(slots.into_iter().flatten().collect())
}

/// Non-zero diagonal of the Smith normal form of the matrix whose rows are
/// `rows`, with each entry dividing the next.
fn smith_diagonal<T: Ring>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            // Smallest non-zero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs_cmp_lt(&a[bi][bj])) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Some(diag);
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quot(&a[t][t]);
                for j in t..n {
                    a[i][j] = a[i][j].sub_mul(&q, &a[t][j])?;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quot(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    row[j] = row[j].sub_mul(&q, &row[t])?;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility: fold an offending row into the pivot row.
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    for j in t..n {
                        let x = a[t][j].sub_mul(&T::from_i64(-1), &a[i][j])?;
                        a[t][j] = x;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].clone());
    }
    Some(diag)
}

fn to_i64_columns(m: &SparseMatrix) -> Vec<Sparse<i64>> {
    m.columns().to_vec()
}

fn to_big_columns(m: &SparseMatrix) -> Vec<Sparse<BigInt>> {
    m.columns()
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect())
        .collect()
}

/// Rank and torsion invariant factors of the lattice spanned by the columns.
pub fn lattice_invariants(m: &SparseMatrix) -> Invariants {
    invariants_generic(m.rows(), to_i64_columns(m))
        .or_else(|| invariants_generic(m.rows(), to_big_columns(m)))
        .expect("big integer arithmetic cannot overflow")
}

/// Invariants of the lattice spanned by the columns of `m` together with the
/// dense integer columns `extra`.
pub fn lattice_invariants_with(m: &SparseMatrix, extra: &[Vec<BigInt>]) -> Invariants {
    let sparse_big = |v: &Vec<BigInt>| -> Sparse<BigInt> {
        v.iter().enumerate().filter(|(_, x)| !Zero::is_zero(*x)).map(|(r, x)| (r, x.clone())).collect()
    };
    let small: Option<Vec<Sparse<i64>>> = extra
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !Zero::is_zero(*x))
                .map(|(r, x)| x.to_i64().map(|x| (r, x)))
                .collect::<Option<Sparse<i64>>>()
        })
        .collect();
    let attempt = small.and_then(|extra_small| {
        let mut cols = to_i64_columns(m);
        cols.extend(extra_small);
        invariants_generic(m.rows(), cols)
    });
    attempt.unwrap_or_else(|| {
        let mut cols = to_big_columns(m);
        cols.extend(extra.iter().map(sparse_big));
        invariants_generic(m.rows(), cols).expect("big integer arithmetic cannot overflow")
    })
}

/// A `ℤ`-basis of the kernel of `m`, as dense vectors of length `m.ncols()`.
pub fn integer_kernel(m: &SparseMatrix) -> Vec<Vec<BigInt>> {
    let k = m.ncols();
    let rows = m.rows();
    // Column reduction on [m; I] keeping the transform unimodular.
    let mut cols: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..k)
        .map(|j| {
            let mut a = vec![<BigInt as Zero>::zero(); rows];
            for &(r, v) in m.column(j) {
                a[r] = BigInt::from(v);
            }
            let mut e = vec![<BigInt as Zero>::zero(); k];
            e[j] = BigInt::one();
            (a, e)
        })
        .collect();
    let mut next = 0;
    for r in 0..rows {
        let mut holder: Option<usize> = None;
        for j in next..k {
            if Zero::is_zero(&cols[j].0[r]) {
                continue;
            }
            match holder {
                None => holder = Some(j),
                Some(h) => {
                    // Euclid between columns h and j at row r.
                    while !Zero::is_zero(&cols[j].0[r]) {
                        let q = &cols[h].0[r] / &cols[j].0[r];
                        let (src_a, src_e) = cols[j].clone();
                        let (dst_a, dst_e) = &mut cols[h];
                        for (x, y) in dst_a.iter_mut().zip(&src_a) {
                            *x -= &q * y;
                        }
                        for (x, y) in dst_e.iter_mut().zip(&src_e) {
                            *x -= &q * y;
                        }
                        cols.swap(h, j);
                    }
                }
            }
        }
        if let Some(h) = holder {
            cols.swap(next, h);
            next += 1;
        }
    }
    cols.into_iter().skip(next).map(|(_, e)| e).collect()
}
