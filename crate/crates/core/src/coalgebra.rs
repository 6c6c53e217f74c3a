//! Finite-dimensional algebras with a coproduct, given by structure
//! constants over the session field.
//!
//! Basis index 0 is always the unit.  Multiplication is `a_j a_k =
//! sum_l u[j][k][l] a_l` and the coproduct is `D(a_j) = sum_{k,l} r[j][k][l]
//! a_k (x) a_l`.  Constructors for generalized nil-Coxeter algebras, 0-Hecke
//! algebras, generic Hecke-type quotients, and monoid algebras (with zero)
//! produce algebras in a distinguished word basis via bounded completion.

use crate::linalg::{Mat, Subspace};
use crate::poly::NCPoly;
use crate::rewrite::{ReductionRule, ReductionSystem, RewriteError};
use crate::scalar::{Field, Scalar};
use crate::word::{Generator, Word};

#[derive(Debug, thiserror::Error)]
pub enum CoalgebraError {
    #[error("unit convention violated: {0}")]
    UnitConvention(String),
    #[error("tensor has wrong length: expected {expected}, got {got}")]
    TensorSize { expected: usize, got: usize },
    #[error("completion did not saturate below the degree cap; dimension overflow")]
    DimensionOverflow,
    #[error("rewriting failed: {0}")]
    Rewrite(#[from] RewriteError),
    #[error("invalid Coxeter data: {0}")]
    BadCoxeterData(String),
    #[error("invalid monoid: {0}")]
    BadMonoid(String),
    #[error("algebra does not split as k·1 + ideal: {0}")]
    DecompositionFailure(String),
}

/// A finite-dimensional algebra with coproduct in a fixed basis.
#[derive(Clone, Debug)]
pub struct AlgebraWithCoproduct {
    pub field: Field,
    pub dim: usize,
    /// `u[j*d*d + k*d + l]`: coefficient of `a_l` in `a_j a_k`.
    u: Vec<Scalar>,
    /// `r[j*d*d + k*d + l]`: coefficient of `a_k (x) a_l` in `D(a_j)`.
    r: Vec<Scalar>,
    pub counit: Option<Vec<Scalar>>,
    /// `antipode.at(k, m)`: coefficient of `a_m` in `S(a_k)`.
    pub antipode: Option<Mat>,
}

/// Per-axiom results of `check_axioms`, in a fixed reporting order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub associative: bool,
    pub unital: bool,
    pub coassociative: bool,
    pub cocommutative: bool,
    pub counit_coproduct: bool,
    pub coproduct_multiplicative: bool,
    pub counit_valid: Option<bool>,
    pub antipode_valid: Option<bool>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.associative
            && self.unital
            && self.coassociative
            && self.cocommutative
            && self.counit_coproduct
            && self.coproduct_multiplicative
            && self.counit_valid.unwrap_or(true)
            && self.antipode_valid.unwrap_or(true)
    }
}

impl AlgebraWithCoproduct {
    /// Build from dense structure constants, enforcing the unit conventions
    /// `a_j a_0 = a_0 a_j = a_j` and `D(a_0) = a_0 (x) a_0`.
    pub fn new(
        field: Field,
        dim: usize,
        u: Vec<Scalar>,
        r: Vec<Scalar>,
    ) -> Result<AlgebraWithCoproduct, CoalgebraError> {
        let want = dim * dim * dim;
        for (name, t) in [("u", &u), ("r", &r)] {
            if t.len() != want {
                let _ = name;
                return Err(CoalgebraError::TensorSize {
                    expected: want,
                    got: t.len(),
                });
            }
        }
        let alg = AlgebraWithCoproduct {
            field,
            dim,
            u,
            r,
            counit: None,
            antipode: None,
        };
        for j in 0..dim {
            for l in 0..dim {
                let want_jl = if j == l { field.one() } else { field.zero() };
                if *alg.u(j, 0, l) != want_jl || *alg.u(0, j, l) != want_jl {
                    return Err(CoalgebraError::UnitConvention(format!(
                        "u with unit at (j={j}, l={l})"
                    )));
                }
            }
        }
        for k in 0..dim {
            for l in 0..dim {
                let want_kl = if k == 0 && l == 0 {
                    field.one()
                } else {
                    field.zero()
                };
                if *alg.r(0, k, l) != want_kl {
                    return Err(CoalgebraError::UnitConvention(format!(
                        "coproduct of unit at (k={k}, l={l})"
                    )));
                }
            }
        }
        Ok(alg)
    }

    pub fn u(&self, j: usize, k: usize, l: usize) -> &Scalar {
        &self.u[(j * self.dim + k) * self.dim + l]
    }

    pub fn r(&self, j: usize, k: usize, l: usize) -> &Scalar {
        &self.r[(j * self.dim + k) * self.dim + l]
    }

    /// Product of two coefficient vectors.
    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for j in 0..self.dim {
            if a[j].is_zero() {
                continue;
            }
            for k in 0..self.dim {
                if b[k].is_zero() {
                    continue;
                }
                let c = a[j].mul(&b[k]);
                for l in 0..self.dim {
                    let t = self.u(j, k, l);
                    if !t.is_zero() {
                        out[l] = out[l].add(&c.mul(t));
                    }
                }
            }
        }
        out
    }

    pub fn unit_vec(&self) -> Vec<Scalar> {
        self.basis_vec(0)
    }

    pub fn basis_vec(&self, j: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[j] = self.field.one();
        v
    }

    /// Left multiplication operator by the coefficient vector `a`.
    pub fn left_mul_op(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for k in 0..self.dim {
            let col = self.mul_vec(a, &self.basis_vec(k));
            for l in 0..self.dim {
                *m.at_mut(l, k) = col[l].clone();
            }
        }
        m
    }

    /// Coproduct of a coefficient vector as a `dim x dim` matrix, entry
    /// `(k, l)` the coefficient of `a_k (x) a_l`.
    pub fn coproduct_mat(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            if a[j].is_zero() {
                continue;
            }
            for k in 0..self.dim {
                for l in 0..self.dim {
                    let t = self.r(j, k, l);
                    if !t.is_zero() {
                        let v = m.at(k, l).add(&a[j].mul(t));
                        *m.at_mut(k, l) = v;
                    }
                }
            }
        }
        m
    }

    /// Coefficients of the `(n-1)`-fold iterated coproduct of `a_j`, indexed
    /// by an `n`-tuple of basis indices flattened in row-major order.
    pub fn iterated_coproduct(&self, j: usize, n: usize) -> Vec<Scalar> {
        assert!(n >= 1);
        let d = self.dim;
        let mut cur = vec![self.field.zero(); d];
        cur[j] = self.field.one();
        for _ in 1..n {
            // Expand the last tensor leg with the coproduct.
            let mut next = vec![self.field.zero(); cur.len() * d];
            for (idx, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let last = idx % d;
                let head = idx / d;
                for k in 0..d {
                    for l in 0..d {
                        let t = self.r(last, k, l);
                        if !t.is_zero() {
                            let pos = (head * d + k) * d + l;
                            next[pos] = next[pos].add(&c.mul(t));
                        }
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// Structural axioms of the data; counit and antipode are checked only
    /// when present.
    pub fn check_axioms(&self) -> AxiomReport {
        let d = self.dim;
        let mut associative = true;
        'assoc: for i in 0..d {
            for j in 0..d {
                for m in 0..d {
                    for n in 0..d {
                        // sum_l u[i][j][l] u[l][m][n] == sum_l u[j][m][l] u[i][l][n]
                        let mut lhs = self.field.zero();
                        let mut rhs = self.field.zero();
                        for l in 0..d {
                            lhs = lhs.add(&self.u(i, j, l).mul(self.u(l, m, n)));
                            rhs = rhs.add(&self.u(j, m, l).mul(self.u(i, l, n)));
                        }
                        if lhs != rhs {
                            associative = false;
                            break 'assoc;
                        }
                    }
                }
            }
        }
        // Unit laws are enforced at construction; re-verify anyway.
        let mut unital = true;
        for j in 0..d {
            for l in 0..d {
                let want = if j == l { self.field.one() } else { self.field.zero() };
                if *self.u(j, 0, l) != want || *self.u(0, j, l) != want {
                    unital = false;
                }
            }
        }
        let mut coassociative = true;
        'coassoc: for i in 0..d {
            for j in 0..d {
                for m in 0..d {
                    for n in 0..d {
                        // sum_l r[i][j][l] r[l][m][n] == sum_k r[i][k][n] r[k][j][m]
                        let mut lhs = self.field.zero();
                        let mut rhs = self.field.zero();
                        for l in 0..d {
                            lhs = lhs.add(&self.r(i, j, l).mul(self.r(l, m, n)));
                            rhs = rhs.add(&self.r(i, l, n).mul(self.r(l, j, m)));
                        }
                        if lhs != rhs {
                            coassociative = false;
                            break 'coassoc;
                        }
                    }
                }
            }
        }
        let mut cocommutative = true;
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    if self.r(j, k, l) != self.r(j, l, k) {
                        cocommutative = false;
                    }
                }
            }
        }
        // Counit axiom of the coproduct itself: some linear functional with
        // (eps (x) id) D = id exists.  We check solvability, not a stored eps.
        let counit_coproduct = self.solve_counit_linear().is_some();
        let mut coproduct_multiplicative = true;
        'mult: for j in 0..d {
            for k in 0..d {
                for m in 0..d {
                    for n in 0..d {
                        // sum_l u[j][k][l] r[l][m][n]
                        //   == sum_{c,e,df} r[j][c][e] r[k][cf][ef] u[c][cf][m] u[e][ef][n]
                        let mut lhs = self.field.zero();
                        for l in 0..d {
                            lhs = lhs.add(&self.u(j, k, l).mul(self.r(l, m, n)));
                        }
                        let mut rhs = self.field.zero();
                        for c in 0..d {
                            for e in 0..d {
                                let rj = self.r(j, c, e);
                                if rj.is_zero() {
                                    continue;
                                }
                                for cf in 0..d {
                                    for ef in 0..d {
                                        let rk = self.r(k, cf, ef);
                                        if rk.is_zero() {
                                            continue;
                                        }
                                        let prod = rj
                                            .mul(rk)
                                            .mul(self.u(c, cf, m))
                                            .mul(self.u(e, ef, n));
                                        rhs = rhs.add(&prod);
                                    }
                                }
                            }
                        }
                        if lhs != rhs {
                            coproduct_multiplicative = false;
                            break 'mult;
                        }
                    }
                }
            }
        }
        let counit_valid = self.counit.as_ref().map(|eps| self.verify_counit(eps));
        let antipode_valid = self.antipode.as_ref().map(|s| match &self.counit {
            None => false,
            Some(eps) => self.verify_antipode(s, eps),
        });
        AxiomReport {
            associative,
            unital,
            coassociative,
            cocommutative,
            counit_coproduct,
            coproduct_multiplicative,
            counit_valid,
            antipode_valid,
        }
    }

    /// Solve the linear counit equations `(eps (x) id) D = id = (id (x) eps) D`.
    fn solve_counit_linear(&self) -> Option<Vec<Scalar>> {
        let d = self.dim;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..d {
            for l in 0..d {
                let row: Vec<Scalar> = (0..d).map(|k| self.r(j, k, l).clone()).collect();
                rows.push(row);
                rhs.push(if j == l { self.field.one() } else { self.field.zero() });
                let row: Vec<Scalar> = (0..d).map(|k| self.r(j, l, k).clone()).collect();
                rows.push(row);
                rhs.push(if j == l { self.field.one() } else { self.field.zero() });
            }
        }
        Mat::from_rows(self.field, d, &rows).solve(&rhs)
    }

    /// A counit must also be an algebra map; returns one iff it exists.
    pub fn find_counit(&self) -> Option<Vec<Scalar>> {
        let eps = self.solve_counit_linear()?;
        if self.verify_counit(&eps) {
            Some(eps)
        } else {
            None
        }
    }

    fn verify_counit(&self, eps: &[Scalar]) -> bool {
        let d = self.dim;
        if eps.len() != d || !eps[0].is_one() {
            return false;
        }
        // Counit axiom.
        for j in 0..d {
            for l in 0..d {
                let mut s1 = self.field.zero();
                let mut s2 = self.field.zero();
                for k in 0..d {
                    s1 = s1.add(&self.r(j, k, l).mul(&eps[k]));
                    s2 = s2.add(&self.r(j, l, k).mul(&eps[k]));
                }
                let want = if j == l { self.field.one() } else { self.field.zero() };
                if s1 != want || s2 != want {
                    return false;
                }
            }
        }
        // Multiplicativity.
        for j in 0..d {
            for k in 0..d {
                let mut s = self.field.zero();
                for l in 0..d {
                    s = s.add(&self.u(j, k, l).mul(&eps[l]));
                }
                if s != eps[j].mul(&eps[k]) {
                    return false;
                }
            }
        }
        true
    }

    /// Solve for a two-sided antipode given a counit.
    pub fn find_antipode(&self, eps: &[Scalar]) -> Option<Mat> {
        let d = self.dim;
        // Unknowns S[k][m], flattened as k*d + m.
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..d {
            for n in 0..d {
                // Left: sum_{k,l,m} r[j][k][l] S[k][m] u[m][l][n] = eps_j delta_{n0}
                let mut row = vec![self.field.zero(); d * d];
                for k in 0..d {
                    for l in 0..d {
                        let rr = self.r(j, k, l);
                        if rr.is_zero() {
                            continue;
                        }
                        for m in 0..d {
                            row[k * d + m] = row[k * d + m].add(&rr.mul(self.u(m, l, n)));
                        }
                    }
                }
                rows.push(row);
                rhs.push(if n == 0 { eps[j].clone() } else { self.field.zero() });
                // Right: sum_{k,l,m} r[j][k][l] S[l][m] u[k][m][n] = eps_j delta_{n0}
                let mut row = vec![self.field.zero(); d * d];
                for k in 0..d {
                    for l in 0..d {
                        let rr = self.r(j, k, l);
                        if rr.is_zero() {
                            continue;
                        }
                        for m in 0..d {
                            row[l * d + m] = row[l * d + m].add(&rr.mul(self.u(k, m, n)));
                        }
                    }
                }
                rows.push(row);
                rhs.push(if n == 0 { eps[j].clone() } else { self.field.zero() });
            }
        }
        let x = Mat::from_rows(self.field, d * d, &rows).solve(&rhs)?;
        let mut s = Mat::zero(self.field, d, d);
        for k in 0..d {
            for m in 0..d {
                *s.at_mut(k, m) = x[k * d + m].clone();
            }
        }
        if self.verify_antipode(&s, eps) {
            Some(s)
        } else {
            None
        }
    }

    fn verify_antipode(&self, s: &Mat, eps: &[Scalar]) -> bool {
        let d = self.dim;
        for j in 0..d {
            for n in 0..d {
                let mut left = self.field.zero();
                let mut right = self.field.zero();
                for k in 0..d {
                    for l in 0..d {
                        let rr = self.r(j, k, l);
                        if rr.is_zero() {
                            continue;
                        }
                        for m in 0..d {
                            left = left.add(&rr.mul(s.at(k, m)).mul(self.u(m, l, n)));
                            right = right.add(&rr.mul(s.at(l, m)).mul(self.u(k, m, n)));
                        }
                    }
                }
                let want = if n == 0 { eps[j].clone() } else { self.field.zero() };
                if left != want || right != want {
                    return false;
                }
            }
        }
        true
    }

    /// Basis indices `j` with `D(a_j) = a_j (x) a_j` (and `a_j != 0`).
    pub fn grouplike_basis_elements(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&j| {
                (0..self.dim).all(|k| {
                    (0..self.dim).all(|l| {
                        let want = if k == j && l == j {
                            self.field.one()
                        } else {
                            self.field.zero()
                        };
                        *self.r(j, k, l) == want
                    })
                })
            })
            .collect()
    }

    pub fn is_grouplike_basis(&self) -> bool {
        self.grouplike_basis_elements().len() == self.dim
    }

    /// Is the coefficient vector `g` grouplike (`D g = g (x) g`, `g != 0`)?
    pub fn is_grouplike_vec(&self, g: &[Scalar]) -> bool {
        if g.iter().all(|c| c.is_zero()) {
            return false;
        }
        let dg = self.coproduct_mat(g);
        for k in 0..self.dim {
            for l in 0..self.dim {
                if *dg.at(k, l) != g[k].mul(&g[l]) {
                    return false;
                }
            }
        }
        true
    }

    /// Least `n` with `m^n = 0` for the augmentation-style ideal spanned by
    /// `ideal_basis`, after verifying `A = k·1 (+) span(ideal_basis)`.
    pub fn nilpotency_index(&self, ideal_basis: &[Vec<Scalar>]) -> Result<usize, CoalgebraError> {
        let f = self.field;
        let span = Subspace::from_spanning(f, self.dim, ideal_basis);
        if span.dim() != self.dim - 1 || span.contains(f, &self.unit_vec()) {
            return Err(CoalgebraError::DecompositionFailure(format!(
                "ideal has dimension {} in an algebra of dimension {}",
                span.dim(),
                self.dim
            )));
        }
        let mut powers = span.clone();
        for n in 1..=2 * self.dim + 1 {
            if powers.dim() == 0 {
                return Ok(n);
            }
            let mut products = Vec::new();
            for a in &span.basis {
                for b in &powers.basis {
                    products.push(self.mul_vec(a, b));
                }
            }
            powers = Subspace::from_spanning(f, self.dim, &products);
        }
        Err(CoalgebraError::DecompositionFailure(
            "ideal is not nilpotent".into(),
        ))
    }

    /// Spans of the powers `m^1 ⊇ m^2 ⊇ ...` down to zero.
    pub fn ideal_powers(&self, ideal_basis: &[Vec<Scalar>]) -> Vec<Subspace> {
        let f = self.field;
        let span = Subspace::from_spanning(f, self.dim, ideal_basis);
        let mut out = vec![span.clone()];
        loop {
            let last = out.last().unwrap();
            if last.dim() == 0 || out.len() > 2 * self.dim + 2 {
                break;
            }
            let mut products = Vec::new();
            for a in &span.basis {
                for b in &last.basis {
                    products.push(self.mul_vec(a, b));
                }
            }
            out.push(Subspace::from_spanning(f, self.dim, &products));
        }
        out
    }

    /// Level filtration `lev_k(M) = {v : m^k v = 0}` of a module given by the
    /// action matrices of the algebra basis (one per basis index).
    pub fn level_filtration(
        &self,
        ops: &[Mat],
        ideal_basis: &[Vec<Scalar>],
    ) -> Vec<Subspace> {
        assert_eq!(ops.len(), self.dim);
        let f = self.field;
        let mdim = ops[0].rows;
        let powers = self.ideal_powers(ideal_basis);
        let op_of = |vec: &[Scalar]| -> Mat {
            let mut m = Mat::zero(f, mdim, mdim);
            for (j, c) in vec.iter().enumerate() {
                if !c.is_zero() {
                    m = m.add(&ops[j].scale(c));
                }
            }
            m
        };
        powers
            .iter()
            .map(|pk| {
                let mats: Vec<Mat> = pk.basis.iter().map(|v| op_of(v)).collect();
                Subspace::common_kernel(f, mdim, &mats)
            })
            .collect()
    }

    /// Nondegeneracy of the trace pairing `(a_j, a_k) -> coeff of a_w` where
    /// `w` indexes a distinguished basis element (e.g. the longest word).
    pub fn frobenius_pairing_nondegenerate(&self, trace_index: usize) -> bool {
        let mut g = Mat::zero(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                *g.at_mut(j, k) = self.u(j, k, trace_index).clone();
            }
        }
        g.rank() == self.dim
    }
}

/// A finite monoid with a distinguished absorbing zero and a unit, by its
/// multiplication table.
#[derive(Clone, Debug)]
pub struct MonoidWithZero {
    pub names: Vec<String>,
    /// `table[i * n + j]` = index of the product.
    pub table: Vec<usize>,
    pub zero: usize,
    pub unit: usize,
}

impl MonoidWithZero {
    pub fn new(
        names: Vec<String>,
        table: Vec<usize>,
        zero: usize,
        unit: usize,
    ) -> Result<MonoidWithZero, CoalgebraError> {
        let n = names.len();
        if table.len() != n * n {
            return Err(CoalgebraError::BadMonoid("table size mismatch".into()));
        }
        if table.iter().any(|&t| t >= n) {
            return Err(CoalgebraError::BadMonoid("table entry out of range".into()));
        }
        let m = MonoidWithZero {
            names,
            table,
            zero,
            unit,
        };
        for i in 0..n {
            if m.mul(i, m.unit) != i || m.mul(m.unit, i) != i {
                return Err(CoalgebraError::BadMonoid("unit law fails".into()));
            }
            if m.mul(i, m.zero) != m.zero || m.mul(m.zero, i) != m.zero {
                return Err(CoalgebraError::BadMonoid("zero is not absorbing".into()));
            }
            for j in 0..n {
                for k in 0..n {
                    if m.mul(m.mul(i, j), k) != m.mul(i, m.mul(j, k)) {
                        return Err(CoalgebraError::BadMonoid("associativity fails".into()));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size() + j]
    }

    /// The contracted monoid algebra `k M / (zero = 0)`, with the nonzero
    /// elements as grouplike basis (unit first).
    pub fn algebra(&self, field: Field) -> Result<AlgebraWithCoproduct, CoalgebraError> {
        let n = self.size();
        // Map monoid indices to basis indices; unit -> 0, zero -> None.
        let mut basis_of = vec![None; n];
        basis_of[self.unit] = Some(0usize);
        let mut next = 1usize;
        for i in 0..n {
            if i != self.unit && i != self.zero {
                basis_of[i] = Some(next);
                next += 1;
            }
        }
        let dim = next;
        let mut u = vec![field.zero(); dim * dim * dim];
        let mut r = vec![field.zero(); dim * dim * dim];
        for i in 0..n {
            let Some(bi) = basis_of[i] else { continue };
            r[(bi * dim + bi) * dim + bi] = field.one();
            for j in 0..n {
                let Some(bj) = basis_of[j] else { continue };
                if let Some(bp) = basis_of[self.mul(i, j)] {
                    u[(bi * dim + bj) * dim + bp] = field.one();
                }
            }
        }
        AlgebraWithCoproduct::new(field, dim, u, r)
    }
}

/// Coxeter matrix plus nil/Hecke exponents.  `m[i][j] = 0` encodes infinity.
#[derive(Clone, Debug)]
pub struct CoxeterData {
    pub n: usize,
    pub m: Vec<Vec<usize>>,
    pub d: Vec<usize>,
}

impl CoxeterData {
    pub fn new(m: Vec<Vec<usize>>, d: Vec<usize>) -> Result<CoxeterData, CoalgebraError> {
        let n = m.len();
        if d.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(CoalgebraError::BadCoxeterData("shape mismatch".into()));
        }
        for i in 0..n {
            if m[i][i] != 1 {
                return Err(CoalgebraError::BadCoxeterData(format!("m[{i}][{i}] != 1")));
            }
            for j in 0..n {
                if i != j {
                    if m[i][j] != m[j][i] {
                        return Err(CoalgebraError::BadCoxeterData("not symmetric".into()));
                    }
                    if m[i][j] == 1 {
                        return Err(CoalgebraError::BadCoxeterData(
                            "off-diagonal entry 1".into(),
                        ));
                    }
                }
            }
        }
        if d.iter().any(|&di| di < 2) {
            return Err(CoalgebraError::BadCoxeterData(
                "exponents must be at least 2".into(),
            ));
        }
        Ok(CoxeterData { n, m, d })
    }

    /// Type A_2: two generators, braid order 3.
    pub fn a2() -> CoxeterData {
        CoxeterData::new(vec![vec![1, 3], vec![3, 1]], vec![2, 2]).unwrap()
    }

    /// Type B_2: two generators, braid order 4.
    pub fn b2() -> CoxeterData {
        CoxeterData::new(vec![vec![1, 4], vec![4, 1]], vec![2, 2]).unwrap()
    }

    /// Type A_1^n with exponents `d`: all braid orders 2.
    pub fn a1n(d: Vec<usize>) -> CoxeterData {
        let n = d.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else { 2 }).collect())
            .collect();
        CoxeterData::new(m, d).unwrap()
    }
}

/// An algebra produced by bounded completion, remembering its word basis.
#[derive(Clone, Debug)]
pub struct BuiltAlgebra {
    pub algebra: AlgebraWithCoproduct,
    pub system: ReductionSystem,
    /// Basis words in degree-lex order; index 0 is the empty word.
    pub basis_words: Vec<Word>,
}

impl BuiltAlgebra {
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.basis_words.iter().position(|b| b == w)
    }
}

fn braid_rules(field: Field, cox: &CoxeterData) -> Vec<ReductionRule> {
    let mut rules = Vec::new();
    for i in 0..cox.n {
        for j in 0..i {
            let mij = cox.m[i][j];
            if mij == 0 {
                continue; // infinite order: no braid relation
            }
            // Alternating words of length mij; the side starting with the
            // larger generator is degree-lex larger and becomes the lhs.
            let (hi, lo) = (Generator::Algebra(i as u16 + 1), Generator::Algebra(j as u16 + 1));
            let lhs: Vec<Generator> = (0..mij).map(|t| if t % 2 == 0 { hi } else { lo }).collect();
            let rhs: Vec<Generator> = (0..mij).map(|t| if t % 2 == 0 { lo } else { hi }).collect();
            rules.push(
                ReductionRule::new(Word(lhs), NCPoly::from_word(Word(rhs), field.one())).unwrap(),
            );
        }
    }
    rules
}

/// Complete a presentation over the algebra letters `T_1..T_n` and assemble
/// the quotient in its irreducible-word basis.  The coproduct makes every
/// basis word grouplike, which is multiplicative exactly when the basis
/// words are closed under multiplication up to zero; validity is reported by
/// `check_axioms` on the result.
fn build_from_rules(
    field: Field,
    n: usize,
    rules: Vec<ReductionRule>,
    degree_cap: usize,
    step_cap: usize,
) -> Result<BuiltAlgebra, CoalgebraError> {
    let sys = ReductionSystem::new(rules)?;
    let out = sys.knuth_bendix_bounded(degree_cap, step_cap)?;
    let alphabet: Vec<Generator> = (1..=n as u16).map(Generator::Algebra).collect();
    let basis = out.system.enumerate_basis(&alphabet, degree_cap);
    if !basis.saturated {
        return Err(CoalgebraError::DimensionOverflow);
    }
    let mut basis_words = basis.all_words();
    basis_words.sort();
    let dim = basis_words.len();
    let mut u = vec![field.zero(); dim * dim * dim];
    for (j, wj) in basis_words.iter().enumerate() {
        for (k, wk) in basis_words.iter().enumerate() {
            let prod = NCPoly::from_word(wj.concat(wk), field.one());
            let nf = out.system.normal_form(&prod, step_cap)?;
            for (w, c) in nf.terms() {
                let l = basis_words
                    .iter()
                    .position(|b| b == w)
                    .expect("normal form lies in the basis");
                u[(j * dim + k) * dim + l] = c.clone();
            }
        }
    }
    let mut r = vec![field.zero(); dim * dim * dim];
    for j in 0..dim {
        r[(j * dim + j) * dim + j] = field.one();
    }
    let algebra = AlgebraWithCoproduct::new(field, dim, u, r)?;
    Ok(BuiltAlgebra {
        algebra,
        system: out.system,
        basis_words,
    })
}

/// The one-dimensional algebra spanned by the unit.
pub fn trivial_algebra(field: Field) -> AlgebraWithCoproduct {
    AlgebraWithCoproduct::new(field, 1, vec![field.one()], vec![field.one()]).unwrap()
}

/// The generalized nil-Coxeter algebra: braid relations plus `T_i^{d_i} = 0`.
pub fn build_nilcoxeter(
    field: Field,
    cox: &CoxeterData,
    degree_cap: usize,
    step_cap: usize,
) -> Result<BuiltAlgebra, CoalgebraError> {
    let mut rules = braid_rules(field, cox);
    for i in 0..cox.n {
        let lhs = Word(vec![Generator::Algebra(i as u16 + 1); cox.d[i]]);
        rules.push(ReductionRule::new(lhs, NCPoly::zero()).unwrap());
    }
    build_from_rules(field, cox.n, rules, degree_cap, step_cap)
}

/// The 0-Hecke algebra: braid relations plus `T_i^2 = T_i`.
pub fn zero_hecke(
    field: Field,
    cox: &CoxeterData,
    degree_cap: usize,
    step_cap: usize,
) -> Result<BuiltAlgebra, CoalgebraError> {
    let mut rules = braid_rules(field, cox);
    for i in 0..cox.n {
        let g = Generator::Algebra(i as u16 + 1);
        let lhs = Word(vec![g; 2]);
        let rhs = NCPoly::from_word(Word::single(g), field.one());
        rules.push(ReductionRule::new(lhs, rhs).unwrap());
    }
    build_from_rules(field, cox.n, rules, degree_cap, step_cap)
}

/// Generic Hecke-type quotient: braid relations plus `T_i^{d_i} = p_i(T_i)`,
/// where `p_i` is given by its coefficient vector `(c_0, ..., c_{d_i - 1})`.
pub fn generic_hecke(
    field: Field,
    cox: &CoxeterData,
    p: &[Vec<Scalar>],
    degree_cap: usize,
    step_cap: usize,
) -> Result<BuiltAlgebra, CoalgebraError> {
    if p.len() != cox.n || p.iter().zip(&cox.d).any(|(pi, &di)| pi.len() > di) {
        return Err(CoalgebraError::BadCoxeterData(
            "polynomial degrees must stay below the exponents".into(),
        ));
    }
    let mut rules = braid_rules(field, cox);
    for i in 0..cox.n {
        let g = Generator::Algebra(i as u16 + 1);
        let lhs = Word(vec![g; cox.d[i]]);
        let mut rhs = NCPoly::zero();
        for (e, c) in p[i].iter().enumerate() {
            rhs.add_term(Word(vec![g; e]), c.clone());
        }
        rules.push(ReductionRule::new(lhs, rhs).map_err(RewriteError::from)?);
    }
    build_from_rules(field, cox.n, rules, degree_cap, step_cap)
}

/// The monoid `{0} ⊔ prod_i {T_i^0, ..., T_i^{d_i - 1}}` whose contracted
/// monoid algebra is the type `A_1^n` generalized nil-Coxeter algebra.  The
/// unit tuple (all exponents zero) is included so the monoid has an identity.
pub fn a1n_monoid(d: &[usize]) -> Result<MonoidWithZero, CoalgebraError> {
    if d.iter().any(|&di| di < 2) {
        return Err(CoalgebraError::BadCoxeterData(
            "exponents must be at least 2".into(),
        ));
    }
    let n = d.len();
    // Element 0 is the zero; tuples are enumerated mixed-radix after it.
    let count: usize = d.iter().product();
    let mut names = vec!["0".to_string()];
    let mut tuples = Vec::new();
    for idx in 0..count {
        let mut t = Vec::new();
        let mut rem = idx;
        for &di in d.iter().rev() {
            t.push(rem % di);
            rem /= di;
        }
        t.reverse();
        names.push(format!(
            "T^({})",
            t.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        tuples.push(t);
    }
    let size = count + 1;
    let mut table = vec![0usize; size * size];
    let index_of = |t: &[usize]| -> usize {
        let mut idx = 0;
        for (e, &di) in t.iter().zip(d.iter()) {
            idx = idx * di + e;
        }
        idx + 1
    };
    for i in 0..size {
        for j in 0..size {
            table[i * size + j] = if i == 0 || j == 0 {
                0
            } else {
                let (a, b) = (&tuples[i - 1], &tuples[j - 1]);
                let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if sum.iter().zip(d).any(|(s, &di)| *s >= di) {
                    0
                } else {
                    index_of(&sum)
                }
            };
        }
    }
    let unit = index_of(&vec![0; n]);
    MonoidWithZero::new(names, table, 0, unit)
}

/// Syntactic and operational classification of a generic Hecke quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// Each `p_i` is `0` or a monic monomial: grouplike coproduct well defined.
    pub coalgebra: bool,
    /// Each `p_i` is a monic monomial `T^{e_i}`: counit exists.
    pub bialgebra: bool,
    /// Each `p_i = 1`: Hopf (group algebra quotient).
    pub hopf: bool,
    /// Are `1, T_i, ..., T_i^{d_i-1}` independent for every `i`?  The
    /// converses of the syntactic criteria are only claimed under this.
    pub powers_independent: bool,
    /// Operational findings on the constructed algebra, when the coproduct
    /// is defined: (coproduct multiplicative, counit exists, antipode exists).
    pub operational: Option<(bool, bool, bool)>,
}

pub fn classify_structure(
    field: Field,
    cox: &CoxeterData,
    p: &[Vec<Scalar>],
    degree_cap: usize,
    step_cap: usize,
) -> Result<StructureReport, CoalgebraError> {
    let is_monomial = |pi: &[Scalar]| -> Option<usize> {
        let nonzero: Vec<usize> = pi.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, _)| e).collect();
        match nonzero.as_slice() {
            [e] if pi[*e].is_one() => Some(*e),
            _ => None,
        }
    };
    let coalgebra = p
        .iter()
        .all(|pi| pi.iter().all(|c| c.is_zero()) || is_monomial(pi).is_some());
    let bialgebra = p.iter().all(|pi| is_monomial(pi).is_some());
    let hopf = p.iter().all(|pi| is_monomial(pi) == Some(0));
    let built = generic_hecke(field, cox, p, degree_cap, step_cap)?;
    // Independence of the powers of each generator in the quotient.
    let mut powers_independent = true;
    for i in 0..cox.n {
        let g = Generator::Algebra(i as u16 + 1);
        let mut vectors = Vec::new();
        for e in 0..cox.d[i] {
            let nf = built
                .system
                .normal_form(&NCPoly::from_word(Word(vec![g; e]), field.one()), step_cap)?;
            let mut v = vec![field.zero(); built.algebra.dim];
            for (w, c) in nf.terms() {
                let idx = built.index_of(w).expect("normal form in basis");
                v[idx] = v[idx].add(c);
            }
            vectors.push(v);
        }
        if Subspace::from_spanning(field, built.algebra.dim, &vectors).dim() != cox.d[i] {
            powers_independent = false;
        }
    }
    // Operational check: the built algebra always carries the grouplike
    // candidate coproduct on its word basis; test whether it actually is
    // an algebra map, and whether counit/antipode exist.
    let report = built.algebra.check_axioms();
    let counit = built.algebra.find_counit();
    let antipode = counit.as_ref().and_then(|eps| built.algebra.find_antipode(eps));
    let operational = Some((
        report.coproduct_multiplicative,
        counit.is_some(),
        antipode.is_some(),
    ));
    Ok(StructureReport {
        coalgebra,
        bialgebra,
        hopf,
        powers_independent,
        operational,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilcoxeter_a1_dims() {
        for d in 2..=5 {
            let cox = CoxeterData::new(vec![vec![1]], vec![d]).unwrap();
            let built = build_nilcoxeter(Field::Q, &cox, 2 * d, 10_000).unwrap();
            assert_eq!(built.algebra.dim, d);
            assert!(built.algebra.check_axioms().all_ok());
        }
    }

    #[test]
    fn nilcoxeter_a2_b2_structure() {
        let a2 = build_nilcoxeter(Field::Q, &CoxeterData::a2(), 8, 10_000).unwrap();
        assert_eq!(a2.algebra.dim, 6);
        let rep = a2.algebra.check_axioms();
        assert!(rep.associative && rep.coassociative && rep.cocommutative);
        assert!(rep.coproduct_multiplicative);
        // Nil-Coxeter algebras admit no counit.
        assert!(a2.algebra.find_counit().is_none());
        let b2 = build_nilcoxeter(Field::Q, &CoxeterData::b2(), 10, 10_000).unwrap();
        assert_eq!(b2.algebra.dim, 8);
    }

    #[test]
    fn zero_hecke_a2_has_counit() {
        let built = zero_hecke(Field::Q, &CoxeterData::a2(), 10, 10_000).unwrap();
        assert_eq!(built.algebra.dim, 6);
        assert!(built.algebra.check_axioms().all_ok());
        let eps = built.algebra.find_counit().expect("0-Hecke has a counit");
        // eps(T_w) = 1 for every basis word.
        assert!(eps.iter().all(|c| c.is_one()));
        // But no antipode: T_i is a nontrivial idempotent grouplike.
        assert!(built.algebra.find_antipode(&eps).is_none());
    }

    #[test]
    fn group_algebra_z2_is_hopf() {
        // Z/2 as generic Hecke with d=2, p = 1.
        let cox = CoxeterData::new(vec![vec![1]], vec![2]).unwrap();
        let f = Field::Q;
        let built = generic_hecke(f, &cox, &[vec![f.one()]], 6, 1000).unwrap();
        assert_eq!(built.algebra.dim, 2);
        let eps = built.algebra.find_counit().unwrap();
        let s = built.algebra.find_antipode(&eps).expect("group algebra antipode");
        // S(g) = g^{-1} = g.
        assert!(s.at(1, 1).is_one() && s.at(1, 0).is_zero());
    }

    #[test]
    fn a1n_monoid_matches_built_algebra() {
        for d in [vec![2, 2], vec![2, 3], vec![3, 4]] {
            let monoid = a1n_monoid(&d).unwrap();
            let expected: usize = d.iter().product();
            assert_eq!(monoid.size(), expected + 1);
            let alg = monoid.algebra(Field::Q).unwrap();
            assert_eq!(alg.dim, expected);
            assert!(alg.check_axioms().all_ok());
            let built =
                build_nilcoxeter(Field::Q, &CoxeterData::a1n(d.clone()), 16, 100_000).unwrap();
            assert_eq!(built.algebra.dim, expected);
        }
    }

    #[test]
    fn grouplike_detection() {
        let built = build_nilcoxeter(Field::Q, &CoxeterData::a2(), 8, 10_000).unwrap();
        assert!(built.algebra.is_grouplike_basis());
        // A strict linear combination of basis words is never grouplike here.
        let f = Field::Q;
        let mut v = vec![f.zero(); 6];
        v[0] = f.one();
        v[1] = f.one();
        assert!(!built.algebra.is_grouplike_vec(&v));
        assert!(built.algebra.is_grouplike_vec(&built.algebra.basis_vec(3)));
    }

    #[test]
    fn nilpotency_and_levels() {
        let built = build_nilcoxeter(Field::Q, &CoxeterData::a2(), 8, 10_000).unwrap();
        let alg = &built.algebra;
        let ideal: Vec<Vec<Scalar>> = (1..alg.dim).map(|j| alg.basis_vec(j)).collect();
        // Longest word has length 3: m^4 = 0, m^3 != 0.
        assert_eq!(alg.nilpotency_index(&ideal).unwrap(), 4);
        // Unit vector inside the claimed ideal is a decomposition failure.
        let mut bad = ideal.clone();
        bad.push(alg.unit_vec());
        assert!(alg.nilpotency_index(&bad).is_err());
        // Level filtration of the left regular module.
        let ops: Vec<Mat> = (0..alg.dim)
            .map(|j| alg.left_mul_op(&alg.basis_vec(j)))
            .collect();
        let levels = alg.level_filtration(&ops, &ideal);
        // lev_k grows to everything at the nilpotency index.
        assert_eq!(levels.last().unwrap().dim(), alg.dim);
        assert!(levels[0].dim() <= levels[1].dim());
    }

    #[test]
    fn frobenius_trace_at_longest_word() {
        // For W = A_2 with all d_i = 2 the algebra has dimension |W| = 6 and
        // the pairing at the longest word is nondegenerate.
        let built = build_nilcoxeter(Field::Q, &CoxeterData::a2(), 8, 10_000).unwrap();
        let longest = built.basis_words.len() - 1;
        assert_eq!(built.basis_words[longest].len(), 3);
        assert!(built.algebra.frobenius_pairing_nondegenerate(longest));
        // Pairing at the unit is degenerate.
        assert!(!built.algebra.frobenius_pairing_nondegenerate(0));
    }

    #[test]
    fn classify_structure_families() {
        let f = Field::Q;
        let cox = CoxeterData::new(vec![vec![1]], vec![3]).unwrap();
        // p = 0: nil; coalgebra but not bialgebra.
        let rep = classify_structure(f, &cox, &[vec![]], 8, 10_000).unwrap();
        assert!(rep.coalgebra && !rep.bialgebra && !rep.hopf);
        assert!(rep.powers_independent);
        assert_eq!(rep.operational, Some((true, false, false)));
        // p = T: bialgebra but not Hopf.
        let rep =
            classify_structure(f, &cox, &[vec![f.zero(), f.one()]], 8, 10_000).unwrap();
        assert!(rep.coalgebra && rep.bialgebra && !rep.hopf);
        assert_eq!(rep.operational, Some((true, true, false)));
        // p = 1: Hopf (group algebra of Z/3).
        let rep = classify_structure(f, &cox, &[vec![f.one()]], 8, 10_000).unwrap();
        assert!(rep.coalgebra && rep.bialgebra && rep.hopf);
        assert_eq!(rep.operational, Some((true, true, true)));
        // p = T + 1: not a coalgebra syntactically; the grouplike candidate
        // coproduct fails to be multiplicative.
        let rep =
            classify_structure(f, &cox, &[vec![f.one(), f.one()]], 8, 10_000).unwrap();
        assert!(!rep.coalgebra);
        assert_eq!(rep.operational.map(|(m, _, _)| m), Some(false));
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(CoxeterData::new(vec![vec![2]], vec![2]).is_err());
        assert!(CoxeterData::new(vec![vec![1, 2], vec![3, 1]], vec![2, 2]).is_err());
        assert!(CoxeterData::new(vec![vec![1]], vec![1]).is_err());
        assert!(a1n_monoid(&[2, 1]).is_err());
        // Broken unit law: 1 * g = 0.
        let bad = MonoidWithZero::new(
            vec!["0".into(), "1".into(), "g".into()],
            vec![0, 0, 0, 0, 1, 0, 0, 2, 2],
            0,
            1,
        );
        assert!(bad.is_err());
    }
}
