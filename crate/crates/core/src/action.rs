//! Modules over an algebra with coproduct, and the bilinear-form utilities
//! used by the deformation classifiers.

use crate::coalgebra::AlgebraWithCoproduct;
use crate::linalg::{Mat, Subspace};
use crate::scalar::{Field, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum ActionError {
    #[error("tensor has wrong length: expected {expected}, got {got}")]
    TensorSize { expected: usize, got: usize },
    #[error("unit must act as the identity")]
    UnitActsBadly,
}

/// An action of the algebra on `V = k^{dim_v}`, by structure constants
/// `s[j][k][h]`: the coefficient of `x_h` in `a_j(x_k)`.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    pub field: Field,
    pub dim_a: usize,
    pub dim_v: usize,
    s: Vec<Scalar>,
}

impl ModuleAction {
    pub fn new(
        field: Field,
        dim_a: usize,
        dim_v: usize,
        s: Vec<Scalar>,
    ) -> Result<ModuleAction, ActionError> {
        let want = dim_a * dim_v * dim_v;
        if s.len() != want {
            return Err(ActionError::TensorSize {
                expected: want,
                got: s.len(),
            });
        }
        let act = ModuleAction {
            field,
            dim_a,
            dim_v,
            s,
        };
        for k in 0..dim_v {
            for h in 0..dim_v {
                let want = if k == h { field.one() } else { field.zero() };
                if *act.s(0, k, h) != want {
                    return Err(ActionError::UnitActsBadly);
                }
            }
        }
        Ok(act)
    }

    /// Build from the action matrices of the non-unit basis elements; the
    /// unit is filled in as the identity.
    pub fn from_ops(field: Field, dim_a: usize, dim_v: usize, ops: &[Mat]) -> ModuleAction {
        assert_eq!(ops.len(), dim_a - 1);
        let mut s = vec![field.zero(); dim_a * dim_v * dim_v];
        for k in 0..dim_v {
            s[k * dim_v + k] = field.one();
        }
        for (j, op) in ops.iter().enumerate() {
            assert_eq!((op.rows, op.cols), (dim_v, dim_v));
            for k in 0..dim_v {
                for h in 0..dim_v {
                    s[((j + 1) * dim_v + k) * dim_v + h] = op.at(h, k).clone();
                }
            }
        }
        ModuleAction {
            field,
            dim_a,
            dim_v,
            s,
        }
    }

    pub fn s(&self, j: usize, k: usize, h: usize) -> &Scalar {
        &self.s[(j * self.dim_v + k) * self.dim_v + h]
    }

    /// The action matrix of basis element `a_j` (columns indexed by source).
    pub fn op(&self, j: usize) -> Mat {
        let mut m = Mat::zero(self.field, self.dim_v, self.dim_v);
        for k in 0..self.dim_v {
            for h in 0..self.dim_v {
                *m.at_mut(h, k) = self.s(j, k, h).clone();
            }
        }
        m
    }

    /// The action matrix of a coefficient vector.
    pub fn op_vec(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim_v, self.dim_v);
        for (j, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.op(j).scale(c));
            }
        }
        m
    }

    pub fn apply(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.op_vec(a).apply(v)
    }

    /// Does the action respect multiplication: `rho(a_j) rho(a_k) =
    /// sum_l u[j][k][l] rho(a_l)`?
    pub fn check_module_axiom(&self, alg: &AlgebraWithCoproduct) -> bool {
        assert_eq!(alg.dim, self.dim_a);
        for j in 0..self.dim_a {
            for k in 0..self.dim_a {
                let lhs = self.op(j).mul(&self.op(k));
                let mut rhs = Mat::zero(self.field, self.dim_v, self.dim_v);
                for l in 0..self.dim_a {
                    let c = alg.u(j, k, l);
                    if !c.is_zero() {
                        rhs = rhs.add(&self.op(l).scale(c));
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Diagonal action of `a` on `V^{(x) n}` through the iterated coproduct.
    /// Tensors are coefficient vectors indexed by flattened module
    /// multi-indices in row-major order.
    pub fn act_tensor(
        &self,
        alg: &AlgebraWithCoproduct,
        a: &[Scalar],
        tensor: &[Scalar],
        n: usize,
    ) -> Vec<Scalar> {
        let dv = self.dim_v;
        assert_eq!(tensor.len(), dv.pow(n as u32));
        let mut out = vec![self.field.zero(); tensor.len()];
        for (j, cj) in a.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let delta = alg.iterated_coproduct(j, n);
            for (leg_idx, cd) in delta.iter().enumerate() {
                if cd.is_zero() {
                    continue;
                }
                // Decompose the algebra multi-index.
                let mut legs = vec![0usize; n];
                let mut rem = leg_idx;
                for t in (0..n).rev() {
                    legs[t] = rem % alg.dim;
                    rem /= alg.dim;
                }
                // Apply s legwise to every tensor entry.
                for (src_idx, cv) in tensor.iter().enumerate() {
                    if cv.is_zero() {
                        continue;
                    }
                    let mut src = vec![0usize; n];
                    let mut rem = src_idx;
                    for t in (0..n).rev() {
                        src[t] = rem % dv;
                        rem /= dv;
                    }
                    // Accumulate over all target multi-indices.
                    let mut partial: Vec<(usize, Scalar)> =
                        vec![(0usize, cj.mul(cd).mul(cv))];
                    for t in 0..n {
                        let mut next = Vec::new();
                        for (idx, c) in &partial {
                            for h in 0..dv {
                                let sc = self.s(legs[t], src[t], h);
                                if !sc.is_zero() {
                                    next.push((idx * dv + h, c.mul(sc)));
                                }
                            }
                        }
                        partial = next;
                    }
                    for (idx, c) in partial {
                        out[idx] = out[idx].add(&c);
                    }
                }
            }
        }
        out
    }

    /// Fixed space of the operator of `a`: `ker(rho(a) - id)`.
    pub fn fix_space(&self, a: &[Scalar]) -> Subspace {
        let m = self.op_vec(a).sub(&Mat::identity(self.field, self.dim_v));
        Subspace::from_spanning(self.field, self.dim_v, &m.nullspace())
    }
}

/// Radical of a bilinear form on `V` given by its Gram matrix.
pub fn radical(field: Field, gram: &Mat) -> Subspace {
    Subspace::from_spanning(field, gram.cols, &gram.nullspace())
}

/// Is the Gram matrix alternating (skew with zero diagonal)?  The zero
/// diagonal is required explicitly so the check is meaningful in
/// characteristic 2, where skew-symmetry alone does not imply it.
pub fn is_alternating(gram: &Mat) -> bool {
    if gram.rows != gram.cols {
        return false;
    }
    for i in 0..gram.rows {
        if !gram.at(i, i).is_zero() {
            return false;
        }
        for j in 0..gram.cols {
            if *gram.at(i, j) != gram.at(j, i).neg() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{build_nilcoxeter, CoxeterData};

    fn e12_e23(field: Field) -> Vec<Mat> {
        // T1 = E12, T2 = E23 on k^3.
        let mut t1 = Mat::zero(field, 3, 3);
        *t1.at_mut(0, 1) = field.one();
        let mut t2 = Mat::zero(field, 3, 3);
        *t2.at_mut(1, 2) = field.one();
        vec![t1, t2]
    }

    #[test]
    fn unit_convention_enforced() {
        let f = Field::Q;
        let s = vec![f.zero(); 2 * 2 * 2];
        assert!(matches!(
            ModuleAction::new(f, 2, 2, s),
            Err(ActionError::UnitActsBadly)
        ));
    }

    #[test]
    fn nilcoxeter_a2_rep_satisfies_module_axiom() {
        let f = Field::Q;
        let built = build_nilcoxeter(f, &CoxeterData::a2(), 8, 10_000).unwrap();
        let alg = &built.algebra;
        // Extend T1 = E12, T2 = E23 to all six basis words by multiplying.
        let gens = e12_e23(f);
        let ops: Vec<Mat> = built.basis_words[1..]
            .iter()
            .map(|w| {
                let mut m = Mat::identity(f, 3);
                for g in &w.0 {
                    let idx = match g {
                        crate::word::Generator::Algebra(j) => *j as usize - 1,
                        _ => unreachable!(),
                    };
                    m = m.mul(&gens[idx]);
                }
                m
            })
            .collect();
        let act = ModuleAction::from_ops(f, alg.dim, 3, &ops);
        assert!(act.check_module_axiom(alg));
        // Sanity: a wrong rep fails.
        let mut bad_ops = ops.clone();
        bad_ops[0] = Mat::identity(f, 3);
        let bad = ModuleAction::from_ops(f, alg.dim, 3, &bad_ops);
        assert!(!bad.check_module_axiom(alg));
    }

    #[test]
    fn grouplike_acts_diagonally_on_tensors() {
        // For a grouplike generator T, T(v (x) w) = Tv (x) Tw.
        let f = Field::Q;
        let built = build_nilcoxeter(f, &CoxeterData::a2(), 8, 10_000).unwrap();
        let alg = &built.algebra;
        let gens = e12_e23(f);
        let ops: Vec<Mat> = built.basis_words[1..]
            .iter()
            .map(|w| {
                let mut m = Mat::identity(f, 3);
                for g in &w.0 {
                    let idx = match g {
                        crate::word::Generator::Algebra(j) => *j as usize - 1,
                        _ => unreachable!(),
                    };
                    m = m.mul(&gens[idx]);
                }
                m
            })
            .collect();
        let act = ModuleAction::from_ops(f, alg.dim, 3, &ops);
        // x2 (x) x3: T1 sends it to x1 (x) x2... componentwise E12.
        let mut tensor = vec![f.zero(); 9];
        tensor[1 * 3 + 2] = f.one();
        let t1 = alg.basis_vec(1);
        let out = act.act_tensor(alg, &t1, &tensor, 2);
        // T1 x2 = x1, T1 x3 = 0 -> T1 (x2 (x) x3) = x1 (x) 0 = 0? No:
        // diagonal action via Delta(T1) = T1 (x) T1: (T1 x2) (x) (T1 x3) = 0.
        assert!(out.iter().all(|c| c.is_zero()));
        let mut tensor = vec![f.zero(); 9];
        tensor[1 * 3 + 1] = f.one(); // x2 (x) x2
        let out = act.act_tensor(alg, &t1, &tensor, 2);
        let mut expect = vec![f.zero(); 9];
        expect[0] = f.one(); // x1 (x) x1
        assert_eq!(out, expect);
        // The unit acts as the identity on tensors.
        let out = act.act_tensor(alg, &alg.unit_vec(), &tensor, 2);
        assert_eq!(out, tensor);
    }

    #[test]
    fn fix_space_and_radical() {
        let f = Field::Q;
        // Reflection diag(1, -1) on k^2 inside the Z/2 group algebra.
        let cox = CoxeterData::new(vec![vec![1]], vec![2]).unwrap();
        let built = crate::coalgebra::generic_hecke(f, &cox, &[vec![f.one()]], 6, 1000).unwrap();
        let mut refl = Mat::zero(f, 2, 2);
        *refl.at_mut(0, 0) = f.one();
        *refl.at_mut(1, 1) = f.from_i64(-1);
        let act = ModuleAction::from_ops(f, 2, 2, &[refl]);
        assert!(act.check_module_axiom(&built.algebra));
        let fix = act.fix_space(&built.algebra.basis_vec(1));
        assert_eq!(fix.dim(), 1);
        assert!(fix.contains(f, &[f.one(), f.zero()]));
        // Standard symplectic form has zero radical.
        let mut omega = Mat::zero(f, 2, 2);
        *omega.at_mut(0, 1) = f.one();
        *omega.at_mut(1, 0) = f.from_i64(-1);
        assert!(is_alternating(&omega));
        assert_eq!(radical(f, &omega).dim(), 0);
        let degenerate = Mat::zero(f, 2, 2);
        assert_eq!(radical(f, &degenerate).dim(), 2);
        // Skew but not alternating in characteristic 2.
        let f2 = Field::fp(2).unwrap();
        let mut g = Mat::identity(f2, 2);
        *g.at_mut(0, 1) = f2.one();
        *g.at_mut(1, 0) = f2.one();
        assert!(!is_alternating(&g));
    }
}
