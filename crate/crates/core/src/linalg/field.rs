//! Linear algebra over prime fields and the rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SparseMatrix;

/// A field given as a context object; elements are plain values.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a non-zero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// `𝔽_p` for a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below `2^32`.
    pub fn new(p: u64) -> Option<Self> {
        if p < 2 || p >= 1 << 32 {
            return None;
        }
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                return None;
            }
            d += 1;
        }
        Some(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
}

/// `ℚ` with arbitrary-precision rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
}

/// Dense vector over a field.
pub type Vector<F> = Vec<<F as Field>::Elem>;

/// Converts an integer sparse matrix to dense row-major form over `field`.
pub fn dense_over<F: Field>(field: &F, m: &SparseMatrix) -> Vec<Vector<F>> {
    let mut out = vec![vec![field.zero(); m.ncols()]; m.rows()];
    for (j, c) in m.columns().iter().enumerate() {
        for &(i, v) in c {
            out[i][j] = field.from_i64(v);
        }
    }
    out
}

/// Column `j` of an integer sparse matrix as a dense vector over `field`.
pub fn column_over<F: Field>(field: &F, m: &SparseMatrix, j: usize) -> Vector<F> {
    let mut v = vec![field.zero(); m.rows()];
    for &(i, x) in m.column(j) {
        v[i] = field.from_i64(x);
    }
    v
}

/// Incrementally built echelon basis of a subspace of `F^dim`.
///
/// Each stored vector has a pivot coordinate where it is 1 and every other
/// stored vector is 0, so membership and coordinates are cheap.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    /// Reduced vectors with their pivot positions.
    rows: Vec<(usize, Vector<F>)>,
    /// For each stored vector, its expression in terms of the inserted
    /// vectors (by insertion index among accepted ones).
    combos: Vec<Vector<F>>,
    accepted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            combos: Vec::new(),
            accepted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; returns the residue and the combination
    /// of basis vectors (in stored-row order) that was subtracted.
    fn reduce(&self, v: &Vector<F>) -> (Vector<F>, Vector<F>) {
        let f = &self.field;
        let mut r = v.clone();
        let mut coeffs = vec![f.zero(); self.rows.len()];
        for (k, (p, row)) in self.rows.iter().enumerate() {
            if f.is_zero(&r[*p]) {
                continue;
            }
            let c = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
            coeffs[k] = c;
        }
        (r, coeffs)
    }

    pub fn contains(&self, v: &Vector<F>) -> bool {
        let (r, _) = self.reduce(v);
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v` if it is independent of the basis; returns whether it was.
    pub fn insert(&mut self, v: &Vector<F>) -> bool {
        let f = self.field.clone();
        let (mut r, coeffs) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let scale = f.inv(&r[p]);
        for x in r.iter_mut() {
            *x = f.mul(x, &scale);
        }
        // Combination: new = scale · (v − Σ coeffs_k · row_k).
        let width = self.accepted + 1;
        let mut combo = vec![f.zero(); width];
        combo[self.accepted] = scale.clone();
        for (k, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (t, y) in self.combos[k].iter().enumerate() {
                combo[t] = f.sub(&combo[t], &f.mul(&f.mul(&scale, c), y));
            }
        }
        // Keep the basis fully reduced at the new pivot.
        for k in 0..self.rows.len() {
            let c = self.rows[k].1[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let (row, cmb) = (&mut self.rows[k].1, &mut self.combos[k]);
            for (x, y) in row.iter_mut().zip(&r) {
                *x = f.sub(x, &f.mul(&c, y));
            }
            cmb.resize(width, f.zero());
            for (x, y) in cmb.iter_mut().zip(&combo) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        for cmb in self.combos.iter_mut() {
            cmb.resize(width, f.zero());
        }
        self.rows.push((p, r));
        self.combos.push(combo);
        self.accepted += 1;
        true
    }

    /// Coordinates of `v` in terms of the accepted inserted vectors, if `v`
    /// lies in their span.
    pub fn coordinates(&self, v: &Vector<F>) -> Option<Vector<F>> {
        let f = &self.field;
        let (r, coeffs) = self.reduce(v);
        if r.iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        let mut out = vec![f.zero(); self.accepted];
        for (k, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (t, y) in self.combos[k].iter().enumerate() {
                out[t] = f.add(&out[t], &f.mul(c, y));
            }
        }
        Some(out)
    }
}

/// Rank of an integer matrix over `field`, by sparse column elimination.
pub fn rank_over<F: Field>(field: &F, m: &SparseMatrix) -> usize {
    // pivots[row] holds a column whose last non-zero entry sits at `row`.
    let mut pivots: Vec<Option<Vec<(usize, F::Elem)>>> = vec![None; m.rows()];
    let mut rank = 0;
    for col in m.columns() {
        let mut v: Vec<(usize, F::Elem)> = col
            .iter()
            .map(|&(r, x)| (r, field.from_i64(x)))
            .filter(|(_, x)| !field.is_zero(x))
            .collect();
        while let Some((r, lead)) = v.last().cloned() {
            match &pivots[r] {
                Some(p) => {
                    // p has leading entry 1.
                    v = axpy(field, &v, &lead, p);
                }
                None => {
                    let inv = field.inv(&lead);
                    let scaled = v.iter().map(|(i, x)| (*i, field.mul(x, &inv))).collect();
                    pivots[r] = Some(scaled);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `v − c·p` for sparse sorted vectors.
fn axpy<F: Field>(field: &F, v: &[(usize, F::Elem)], c: &F::Elem, p: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, field.neg(&field.mul(c, &p[j].1))));
            j += 1;
        } else {
            let x = field.sub(&v[i].1, &field.mul(c, &p[j].1));
            if !field.is_zero(&x) {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Basis of the null space of a row-major dense matrix with `ncols` columns.
pub fn null_space<F: Field>(field: &F, rows: &[Vector<F>], ncols: usize) -> Vec<Vector<F>> {
    let f = field;
    let mut a: Vec<Vector<F>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..a.len() {
            if i != r && !f.is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let is_pivot: Vec<bool> = (0..ncols).map(|c| pivot_cols.contains(&c)).collect();
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); ncols];
            v[free] = f.one();
            for (k, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(&a[k][free]);
            }
            v
        })
        .collect()
}

/// Row-major matrix product.
pub fn mat_mul<F: Field>(field: &F, a: &[Vector<F>], b: &[Vector<F>], inner: usize, cols: usize) -> Vec<Vector<F>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| {
                        if field.is_zero(&row[k]) {
                            acc
                        } else {
                            field.add(&acc, &field.mul(&row[k], &b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Rank of a dense row-major matrix.
pub fn dense_rank<F: Field>(field: &F, rows: &[Vector<F>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    ncols - null_space(field, rows, ncols).len()
}
