//! Exact linear algebra over the session field.
//!
//! Two flavors: dense matrices indexed by integers (used for coalgebra
//! axioms, fixed spaces, radicals, nullspaces), and an echelon accumulator
//! keyed by words (used for relation-translate spans, commutator spans, and
//! other subspaces of the free algebra).

use crate::poly::NCPoly;
use crate::scalar::{Field, Scalar};
use crate::word::Word;
use std::collections::BTreeMap;

/// A dense `rows x cols` matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zero(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, c) in r.iter().enumerate() {
                *m.at_mut(i, j) = c.clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let field = self.field();
        let mut out = Mat::zero(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let s = out.at(i, j).add(&a.mul(b));
                        *out.at_mut(i, j) = s;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field().zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = out.data[i].add(&other.data[i]);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = out.data[i].sub(&other.data[i]);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let mut out = self.clone();
        for e in out.data.iter_mut() {
            *e = e.mul(c);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.field(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    fn field(&self) -> Field {
        self.data
            .first()
            .map(|s| s.field())
            .unwrap_or(crate::scalar::Field::Q)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.at(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).inv().unwrap();
            for j in col..self.cols {
                *self.at_mut(row, j) = self.at(row, j).mul(&inv);
            }
            for i in 0..self.rows {
                if i != row && !self.at(i, col).is_zero() {
                    let factor = self.at(i, col).clone();
                    for j in col..self.cols {
                        let v = self.at(i, j).sub(&factor.mul(self.at(row, j)));
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace `{v : M v = 0}`, one vector per row of
    /// the result, in the standard RREF parametrization.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let field = self.field();
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `M x = b`; `None` if inconsistent.  When the system is
    /// underdetermined this returns the particular solution with free
    /// variables set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let field = self.field_or(b);
        let mut aug = Mat::zero(field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    fn field_or(&self, b: &[Scalar]) -> Field {
        self.data
            .first()
            .or_else(|| b.first())
            .map(|s| s.field())
            .unwrap_or(Field::Q)
    }
}

/// A subspace of `k^n`, stored as an RREF basis so equality of subspaces is
/// equality of representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    /// RREF basis vectors (rows).
    pub basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn from_spanning(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut m = Mat::from_rows(field, ambient_dim, vectors);
        let pivots = m.rref();
        Subspace {
            ambient_dim,
            basis: (0..pivots.len()).map(|i| m.row(i)).collect(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, field: Field, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Mat::from_rows(field, self.ambient_dim, &rows).rank() == self.dim()
    }

    pub fn contains_subspace(&self, field: Field, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(field, v))
    }

    /// Intersection, via the nullspace of the stacked dual description.
    pub fn intersect(&self, field: Field, other: &Subspace) -> Subspace {
        // v in both spans iff v = x^T B1 = y^T B2; solve [B1^T | -B2^T] z = 0.
        let n = self.ambient_dim;
        let (d1, d2) = (self.dim(), other.dim());
        let mut m = Mat::zero(field, n, d1 + d2);
        for (j, v) in self.basis.iter().enumerate() {
            for i in 0..n {
                *m.at_mut(i, j) = v[i].clone();
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for i in 0..n {
                *m.at_mut(i, d1 + j) = v[i].neg();
            }
        }
        let vectors: Vec<Vec<Scalar>> = m
            .nullspace()
            .into_iter()
            .map(|z| {
                let mut v = vec![field.zero(); n];
                for (j, b) in self.basis.iter().enumerate() {
                    for i in 0..n {
                        v[i] = v[i].add(&z[j].mul(&b[i]));
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(field, n, &vectors)
    }

    /// Common kernel of a family of operators (each `n x n`).
    pub fn common_kernel(field: Field, n: usize, ops: &[Mat]) -> Subspace {
        if ops.is_empty() {
            return Subspace::from_spanning(
                field,
                n,
                &(0..n)
                    .map(|i| {
                        let mut v = vec![field.zero(); n];
                        v[i] = field.one();
                        v
                    })
                    .collect::<Vec<_>>(),
            );
        }
        let mut stacked = Mat::zero(field, ops.len() * n, n);
        for (k, op) in ops.iter().enumerate() {
            assert_eq!((op.rows, op.cols), (n, n));
            for i in 0..n {
                for j in 0..n {
                    *stacked.at_mut(k * n + i, j) = op.at(i, j).clone();
                }
            }
        }
        Subspace::from_spanning(field, n, &stacked.nullspace())
    }
}

/// Incremental echelon basis for a subspace of the free algebra, with pivots
/// on degree-lex leading words.  Inserting a polynomial reduces it against
/// the current rows; a nonzero remainder becomes a new monic row.
#[derive(Clone, Debug, Default)]
pub struct PolyEchelon {
    rows: BTreeMap<Word, NCPoly>,
}

impl PolyEchelon {
    pub fn new() -> PolyEchelon {
        PolyEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &Word> {
        self.rows.keys()
    }

    /// Fully reduce `p` modulo the current row space.
    pub fn reduce(&self, p: &NCPoly) -> NCPoly {
        let mut p = p.clone();
        loop {
            let Some(lead) = p.leading_word().cloned() else {
                return p;
            };
            match self.rows.get(&lead) {
                None => {
                    // The leading word has no pivot; peel smaller terms too.
                    // Walk the remaining terms from largest down and reduce
                    // any that do have pivots.
                    let mut changed = false;
                    let terms: Vec<(Word, Scalar)> = p
                        .terms()
                        .map(|(w, c)| (w.clone(), c.clone()))
                        .collect();
                    for (w, c) in terms.into_iter().rev() {
                        if let Some(row) = self.rows.get(&w) {
                            p = p.sub(&row.scale(&c));
                            changed = true;
                            break;
                        }
                    }
                    if !changed {
                        return p;
                    }
                }
                Some(row) => {
                    let c = p.coeff(&lead).unwrap().clone();
                    p = p.sub(&row.scale(&c));
                }
            }
        }
    }

    /// Insert `p`; returns `true` if the rank grew.
    pub fn insert(&mut self, p: &NCPoly) -> bool {
        let r = self.reduce(p);
        match r.leading_word().cloned() {
            None => false,
            Some(lead) => {
                self.rows.insert(lead, r.monic());
                true
            }
        }
    }

    /// Number of rows whose leading word has length at most `len`.  Because
    /// the order refines length, these rows lie entirely in the span of words
    /// of length at most `len`.
    pub fn rank_within_length(&self, len: usize) -> usize {
        self.rows.keys().filter(|w| w.len() <= len).count()
    }
}
