//! Deformed smash product algebras and the PBW property.
//!
//! An instance is a triple: an algebra `A` with coproduct, an `A`-module
//! `V`, and deformation data `(lambda, kappa_V, kappa_A)` given by structure
//! constants `q`, `w`, `v`.  The quotient `H` of the tensor algebra
//! `T(V + A')` by the defining relations has the PBW property when the
//! ordered monomials `x_{i_1} <= ... <= x_{i_n}` times a single algebra
//! basis element form a basis.  Four independent deciders are provided:
//!
//! 1. `check_symbolic_conditions` — the five element-level deformation
//!    conditions, evaluated through generic coproduct/action machinery;
//! 2. `check_constant_identities` — the same conditions unfolded into
//!    structure-constant identities via the mixed tensor `t`;
//! 3. `check_ambiguities` — diamond-lemma resolution of all overlap
//!    ambiguities of the presentation;
//! 4. `graded_dimension_oracle` — exact corank of the span of relation
//!    translates inside a degree truncation of the tensor algebra.

use crate::action::ModuleAction;
use crate::coalgebra::AlgebraWithCoproduct;
use crate::linalg::PolyEchelon;
use crate::poly::NCPoly;
use crate::rewrite::{ReductionRule, ReductionSystem, RewriteError};
use crate::scalar::{Field, Scalar};
use crate::word::{Generator, Word};

#[derive(Debug, thiserror::Error)]
pub enum DeformationError {
    #[error("tensor has wrong length: expected {expected}, got {got}")]
    TensorSize { expected: usize, got: usize },
    #[error("kappa data is not alternating at ({0}, {1})")]
    NotAlternating(usize, usize),
    #[error("lambda must vanish on the unit: q[0][{0}] != 0")]
    LambdaOnUnit(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("rewriting failed: {0}")]
    Rewrite(#[from] RewriteError),
    #[error("PBW methods disagree: {0}")]
    MethodDisagreement(String),
}

/// The deformation tensors.  `q[j][k][l]` is the coefficient of `a_l` in
/// `lambda(a_j, x_k)`; `v[j][k][l]` the coefficient of `a_l` in
/// `kappa_A(x_j, x_k)`; `w[j][k][h]` the coefficient of `x_h` in
/// `kappa_V(x_j, x_k)`.  `v` and `w` are alternating in `(j, k)`.
#[derive(Clone, Debug)]
pub struct DeformationData {
    pub field: Field,
    pub dim_a: usize,
    pub dim_v: usize,
    q: Vec<Scalar>,
    v: Vec<Scalar>,
    w: Vec<Scalar>,
}

impl DeformationData {
    pub fn zero(field: Field, dim_a: usize, dim_v: usize) -> DeformationData {
        DeformationData {
            field,
            dim_a,
            dim_v,
            q: vec![field.zero(); dim_a * dim_v * dim_a],
            v: vec![field.zero(); dim_v * dim_v * dim_a],
            w: vec![field.zero(); dim_v * dim_v * dim_v],
        }
    }

    /// Dense constructor; validates alternating `kappa` data (zero diagonal,
    /// so the condition is meaningful in characteristic 2) and that `lambda`
    /// vanishes on the unit.
    pub fn new(
        field: Field,
        dim_a: usize,
        dim_v: usize,
        q: Vec<Scalar>,
        v: Vec<Scalar>,
        w: Vec<Scalar>,
    ) -> Result<DeformationData, DeformationError> {
        for (t, want) in [
            (&q, dim_a * dim_v * dim_a),
            (&v, dim_v * dim_v * dim_a),
            (&w, dim_v * dim_v * dim_v),
        ] {
            if t.len() != want {
                return Err(DeformationError::TensorSize {
                    expected: want,
                    got: t.len(),
                });
            }
        }
        let d = DeformationData {
            field,
            dim_a,
            dim_v,
            q,
            v,
            w,
        };
        for k in 0..dim_v {
            for l in 0..dim_a {
                if !d.q[(0 * dim_v + k) * dim_a + l].is_zero() {
                    return Err(DeformationError::LambdaOnUnit(k));
                }
            }
        }
        for j in 0..dim_v {
            for k in 0..dim_v {
                let bad_v = (0..dim_a).any(|l| *d.v_at(j, k, l) != d.v_at(k, j, l).neg())
                    || (j == k && (0..dim_a).any(|l| !d.v_at(j, j, l).is_zero()));
                let bad_w = (0..dim_v).any(|h| *d.w_at(j, k, h) != d.w_at(k, j, h).neg())
                    || (j == k && (0..dim_v).any(|h| !d.w_at(j, j, h).is_zero()));
                if bad_v || bad_w {
                    return Err(DeformationError::NotAlternating(j, k));
                }
            }
        }
        Ok(d)
    }

    /// Build from strictly lower-triangular data (`j > k` only); the skew
    /// completion is filled in automatically.
    pub fn from_triangular(
        field: Field,
        dim_a: usize,
        dim_v: usize,
        q: Vec<Scalar>,
        v_lower: &[(usize, usize, usize, Scalar)],
        w_lower: &[(usize, usize, usize, Scalar)],
    ) -> Result<DeformationData, DeformationError> {
        let mut v = vec![field.zero(); dim_v * dim_v * dim_a];
        for (j, k, l, c) in v_lower {
            assert!(j > k, "triangular data requires j > k");
            v[(j * dim_v + k) * dim_a + l] = c.clone();
            v[(k * dim_v + j) * dim_a + l] = c.neg();
        }
        let mut w = vec![field.zero(); dim_v * dim_v * dim_v];
        for (j, k, h, c) in w_lower {
            assert!(j > k, "triangular data requires j > k");
            w[(j * dim_v + k) * dim_v + h] = c.clone();
            w[(k * dim_v + j) * dim_v + h] = c.neg();
        }
        DeformationData::new(field, dim_a, dim_v, q, v, w)
    }

    pub fn q_at(&self, j: usize, k: usize, l: usize) -> &Scalar {
        &self.q[(j * self.dim_v + k) * self.dim_a + l]
    }

    pub fn v_at(&self, j: usize, k: usize, l: usize) -> &Scalar {
        &self.v[(j * self.dim_v + k) * self.dim_a + l]
    }

    pub fn w_at(&self, j: usize, k: usize, h: usize) -> &Scalar {
        &self.w[(j * self.dim_v + k) * self.dim_v + h]
    }

    pub fn set_q(&mut self, j: usize, k: usize, l: usize, c: Scalar) {
        assert!(j >= 1, "lambda vanishes on the unit");
        self.q[(j * self.dim_v + k) * self.dim_a + l] = c;
    }

    pub fn set_v(&mut self, j: usize, k: usize, l: usize, c: Scalar) {
        assert!(j != k);
        self.v[(j * self.dim_v + k) * self.dim_a + l] = c.clone();
        self.v[(k * self.dim_v + j) * self.dim_a + l] = c.neg();
    }

    pub fn set_w(&mut self, j: usize, k: usize, h: usize, c: Scalar) {
        assert!(j != k);
        self.w[(j * self.dim_v + k) * self.dim_v + h] = c.clone();
        self.w[(k * self.dim_v + j) * self.dim_v + h] = c.neg();
    }

    pub fn lambda_is_zero(&self) -> bool {
        self.q.iter().all(|c| c.is_zero())
    }

    pub fn kappa_v_is_zero(&self) -> bool {
        self.w.iter().all(|c| c.is_zero())
    }

    pub fn kappa_a_is_zero(&self) -> bool {
        self.v.iter().all(|c| c.is_zero())
    }
}

/// A full problem instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub alg: AlgebraWithCoproduct,
    pub act: ModuleAction,
    pub def: DeformationData,
}

/// Which conditions of the symbolic/constant checkers failed, in order:
/// action compatibility, the two mixed compatibilities, and the two Jacobi
/// conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub action: bool,
    pub compat_a: bool,
    pub compat_v: bool,
    pub jacobi_a: bool,
    pub jacobi_v: bool,
}

impl ConditionReport {
    pub fn all_ok(&self) -> bool {
        self.action && self.compat_a && self.compat_v && self.jacobi_a && self.jacobi_v
    }
}

/// Outcome of the ambiguity method, with per-family counts keyed by the
/// letter pattern of the overlap word.
#[derive(Clone, Debug)]
pub struct AmbiguityReport {
    pub aaa: (usize, usize),
    pub aax: (usize, usize),
    pub axx: (usize, usize),
    pub xxx: (usize, usize),
    /// Overlap words of unresolved ambiguities, for diagnostics.
    pub unresolved: Vec<Word>,
}

impl AmbiguityReport {
    /// Pass iff every ambiguity resolves.  The `aaa` family is guaranteed by
    /// associativity of `A` whenever the algebra axioms hold, but it is
    /// resolved and counted here all the same.
    pub fn pass(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Outcome of the truncated dimension count.
#[derive(Clone, Debug)]
pub struct DimensionReport {
    /// Dimension of the degree-`n` truncation of `H`, for `n = 0..=cap`.
    pub dims: Vec<usize>,
    /// The PBW prediction: the count of irreducible words of length `<= n`.
    pub expected: Vec<usize>,
    pub first_mismatch: Option<usize>,
}

impl DimensionReport {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Aggregated verdict of `pbw_check`.
#[derive(Clone, Debug)]
pub struct PBWReport {
    pub symbolic: Option<ConditionReport>,
    pub constants: Option<ConditionReport>,
    pub ambiguities: Option<AmbiguityReport>,
    pub dimensions: Option<DimensionReport>,
    pub pbw: bool,
}

/// Method selection for `pbw_check`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Symbolic,
    Constants,
    Ambiguity,
    Dimension,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Symbolic,
        Method::Constants,
        Method::Ambiguity,
        Method::Dimension,
    ];
}

impl Instance {
    pub fn field(&self) -> Field {
        self.alg.field
    }

    /// The mixed tensor: `a_j x_k = sum t[j][k][m][n] x_n a_m + lambda`,
    /// with `t[j][k][m][n] = sum_l r[j][l][m] s[l][k][n]`.
    pub fn t(&self, j: usize, k: usize, m: usize, n: usize) -> Scalar {
        let mut acc = self.field().zero();
        for l in 0..self.alg.dim {
            let r = self.alg.r(j, l, m);
            if !r.is_zero() {
                acc = acc.add(&r.mul(self.act.s(l, k, n)));
            }
        }
        acc
    }

    /// `lambda` of coefficient vectors, as an algebra coefficient vector.
    pub fn lambda(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.alg.dim];
        for (j, cj) in a.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            for (k, ck) in v.iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                let c = cj.mul(ck);
                for l in 0..self.alg.dim {
                    let q = self.def.q_at(j, k, l);
                    if !q.is_zero() {
                        out[l] = out[l].add(&c.mul(q));
                    }
                }
            }
        }
        out
    }

    pub fn kappa_a(&self, v1: &[Scalar], v2: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.alg.dim];
        for (j, cj) in v1.iter().enumerate() {
            for (k, ck) in v2.iter().enumerate() {
                let c = cj.mul(ck);
                if c.is_zero() {
                    continue;
                }
                for l in 0..self.alg.dim {
                    out[l] = out[l].add(&c.mul(self.def.v_at(j, k, l)));
                }
            }
        }
        out
    }

    pub fn kappa_v(&self, v1: &[Scalar], v2: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.act.dim_v];
        for (j, cj) in v1.iter().enumerate() {
            for (k, ck) in v2.iter().enumerate() {
                let c = cj.mul(ck);
                if c.is_zero() {
                    continue;
                }
                for h in 0..self.act.dim_v {
                    out[h] = out[h].add(&c.mul(self.def.w_at(j, k, h)));
                }
            }
        }
        out
    }

    /// Preconditions shared by all deciders: algebra axioms and the module
    /// axiom.
    pub fn check_hypotheses(&self) -> Result<(), DeformationError> {
        let rep = self.alg.check_axioms();
        if !(rep.associative && rep.unital && rep.coassociative && rep.cocommutative
            && rep.coproduct_multiplicative)
        {
            return Err(DeformationError::HypothesisViolated(format!(
                "algebra axioms fail: {:?}",
                rep
            )));
        }
        if !self.act.check_module_axiom(&self.alg) {
            return Err(DeformationError::HypothesisViolated(
                "module axiom fails".into(),
            ));
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // Presentation
    // ------------------------------------------------------------------

    fn word_xa(&self, n: usize, m: usize) -> Word {
        // x_n a_m with a_0 elided.
        let mut letters = vec![Generator::Module(n as u16)];
        if m > 0 {
            letters.push(Generator::Algebra(m as u16));
        }
        Word(letters)
    }

    fn word_a(&self, l: usize) -> Word {
        if l == 0 {
            Word::empty()
        } else {
            Word::single(Generator::Algebra(l as u16))
        }
    }

    /// The defining reduction system of `H`: for `j > k`,
    /// `x_j x_k -> x_k x_j + kappa_V + kappa_A`; for `j, k >= 1`,
    /// `a_j a_k -> sum u a_l`; and `a_j x_k -> sum t x_n a_m + lambda`.
    pub fn build_presentation(&self) -> Result<ReductionSystem, DeformationError> {
        let f = self.field();
        let (da, dv) = (self.alg.dim, self.act.dim_v);
        let mut rules = Vec::new();
        for j in 1..dv {
            for k in 0..j {
                let lhs = Word(vec![Generator::Module(j as u16), Generator::Module(k as u16)]);
                let mut rhs = NCPoly::from_word(
                    Word(vec![Generator::Module(k as u16), Generator::Module(j as u16)]),
                    f.one(),
                );
                for h in 0..dv {
                    rhs.add_term(
                        Word::single(Generator::Module(h as u16)),
                        self.def.w_at(j, k, h).clone(),
                    );
                }
                for l in 0..da {
                    rhs.add_term(self.word_a(l), self.def.v_at(j, k, l).clone());
                }
                rules.push(ReductionRule::new(lhs, rhs)?);
            }
        }
        for j in 1..da {
            for k in 1..da {
                let lhs = Word(vec![
                    Generator::Algebra(j as u16),
                    Generator::Algebra(k as u16),
                ]);
                let mut rhs = NCPoly::zero();
                for l in 0..da {
                    rhs.add_term(self.word_a(l), self.alg.u(j, k, l).clone());
                }
                rules.push(ReductionRule::new(lhs, rhs)?);
            }
        }
        for j in 1..da {
            for k in 0..dv {
                let lhs = Word(vec![
                    Generator::Algebra(j as u16),
                    Generator::Module(k as u16),
                ]);
                let mut rhs = NCPoly::zero();
                for m in 0..da {
                    for n in 0..dv {
                        rhs.add_term(self.word_xa(n, m), self.t(j, k, m, n));
                    }
                }
                for l in 0..da {
                    rhs.add_term(self.word_a(l), self.def.q_at(j, k, l).clone());
                }
                rules.push(ReductionRule::new(lhs, rhs)?);
            }
        }
        Ok(ReductionSystem::new(rules)?)
    }

    /// Does the presentation preserve the module grading (`deg x = 1`,
    /// `deg a = 0`)?  Happens exactly when `lambda = 0`.
    pub fn is_graded(&self) -> bool {
        self.def.lambda_is_zero()
    }

    /// The alphabet of the presentation.
    pub fn alphabet(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = (0..self.act.dim_v as u16).map(Generator::Module).collect();
        out.extend((1..self.alg.dim as u16).map(Generator::Algebra));
        out
    }

    // ------------------------------------------------------------------
    // Method 1: symbolic conditions
    // ------------------------------------------------------------------

    /// Evaluate the five deformation conditions on all basis tuples using
    /// generic element arithmetic (products, iterated coproducts, actions).
    pub fn check_symbolic_conditions(&self) -> ConditionReport {
        let f = self.field();
        let (da, dv) = (self.alg.dim, self.act.dim_v);
        let basis_a: Vec<Vec<Scalar>> = (0..da).map(|j| self.alg.basis_vec(j)).collect();
        let basis_v: Vec<Vec<Scalar>> = (0..dv)
            .map(|i| {
                let mut v = vec![f.zero(); dv];
                v[i] = f.one();
                v
            })
            .collect();
        let add = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
        };
        let sub = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
        };
        let scale = |a: &[Scalar], c: &Scalar| -> Vec<Scalar> {
            a.iter().map(|x| x.mul(c)).collect()
        };
        let is_zero = |a: &[Scalar]| a.iter().all(|c| c.is_zero());

        // Sweedler legs of Delta^2 and Delta^3 per basis element.
        let delta2: Vec<Vec<Scalar>> = (0..da).map(|j| self.alg.iterated_coproduct(j, 2)).collect();
        let delta3: Vec<Vec<Scalar>> = (0..da).map(|j| self.alg.iterated_coproduct(j, 3)).collect();

        // Action compatibility: lambda(a a', v) =
        //   a lambda(a', v) + sum lambda(a, a'_(1) v) a'_(2).
        let mut action_ok = true;
        'act: for j in 0..da {
            for k in 0..da {
                for i in 0..dv {
                    let prod = self.alg.mul_vec(&basis_a[j], &basis_a[k]);
                    let lhs = self.lambda(&prod, &basis_v[i]);
                    let mut rhs = self
                        .alg
                        .mul_vec(&basis_a[j], &self.lambda(&basis_a[k], &basis_v[i]));
                    for c in 0..da {
                        for d in 0..da {
                            let coef = &delta2[k][c * da + d];
                            if coef.is_zero() {
                                continue;
                            }
                            let acted = self.act.apply(&basis_a[c], &basis_v[i]);
                            let lam = self.lambda(&basis_a[j], &acted);
                            let term = self.alg.mul_vec(&lam, &basis_a[d]);
                            rhs = add(&rhs, &scale(&term, coef));
                        }
                    }
                    if !is_zero(&sub(&lhs, &rhs)) {
                        action_ok = false;
                        break 'act;
                    }
                }
            }
        }

        // Mixed compatibility into A:
        //   a kappa_A(v, v') - sum kappa_A(a_(1) v, a_(2) v') a_(3)
        //     = lambda(lambda(a, v), v') - lambda(lambda(a, v'), v)
        //       - lambda(a, kappa_V(v, v')).
        let mut compat_a_ok = true;
        'ca: for i in 0..da {
            for j in 0..dv {
                for k in 0..j {
                    let ka = self.kappa_a(&basis_v[j], &basis_v[k]);
                    let mut lhs = self.alg.mul_vec(&basis_a[i], &ka);
                    for a in 0..da {
                        for b in 0..da {
                            for c in 0..da {
                                let coef = &delta3[i][(a * da + b) * da + c];
                                if coef.is_zero() {
                                    continue;
                                }
                                let av = self.act.apply(&basis_a[a], &basis_v[j]);
                                let bv = self.act.apply(&basis_a[b], &basis_v[k]);
                                let kap = self.kappa_a(&av, &bv);
                                let term = self.alg.mul_vec(&kap, &basis_a[c]);
                                lhs = sub(&lhs, &scale(&term, coef));
                            }
                        }
                    }
                    let l1 = self.lambda(&self.lambda(&basis_a[i], &basis_v[j]), &basis_v[k]);
                    let l2 = self.lambda(&self.lambda(&basis_a[i], &basis_v[k]), &basis_v[j]);
                    let l3 = self.lambda(&basis_a[i], &self.kappa_v(&basis_v[j], &basis_v[k]));
                    let rhs = sub(&sub(&l1, &l2), &l3);
                    if !is_zero(&sub(&lhs, &rhs)) {
                        compat_a_ok = false;
                        break 'ca;
                    }
                }
            }
        }

        // Mixed compatibility in V (x) A.  Elements of V (x) A are flattened
        // as c * da + d.
        let vxa_zero = vec![f.zero(); dv * da];
        let outer = |vv: &[Scalar], aa: &[Scalar]| -> Vec<Scalar> {
            let mut out = vxa_zero.clone();
            for (c, x) in vv.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (d, y) in aa.iter().enumerate() {
                    out[c * da + d] = x.mul(y);
                }
            }
            out
        };
        let mut compat_v_ok = true;
        'cv: for i in 0..da {
            for j in 0..dv {
                for k in 0..j {
                    let mut lhs = vxa_zero.clone();
                    // sum a_(1)(kappa_V(v, v')) (x) a_(2)
                    let kv = self.kappa_v(&basis_v[j], &basis_v[k]);
                    for a in 0..da {
                        for b in 0..da {
                            let coef = &delta2[i][a * da + b];
                            if coef.is_zero() {
                                continue;
                            }
                            let acted = self.act.apply(&basis_a[a], &kv);
                            lhs = add(&lhs, &scale(&outer(&acted, &basis_a[b]), coef));
                        }
                    }
                    // - sum kappa_V(a_(1) v, a_(2) v') (x) a_(3)
                    for a in 0..da {
                        for b in 0..da {
                            for c in 0..da {
                                let coef = &delta3[i][(a * da + b) * da + c];
                                if coef.is_zero() {
                                    continue;
                                }
                                let av = self.act.apply(&basis_a[a], &basis_v[j]);
                                let bv = self.act.apply(&basis_a[b], &basis_v[k]);
                                let kap = self.kappa_v(&av, &bv);
                                lhs = sub(&lhs, &scale(&outer(&kap, &basis_a[c]), coef));
                            }
                        }
                    }
                    let mut rhs = vxa_zero.clone();
                    // sum lambda(a,v)_(1)(v') (x) lambda(a,v)_(2), antisymmetrized.
                    for (vv, vp, sign) in [
                        (j, k, false),
                        (k, j, true),
                    ] {
                        let lam = self.lambda(&basis_a[i], &basis_v[vv]);
                        for l in 0..da {
                            if lam[l].is_zero() {
                                continue;
                            }
                            let d2 = self.alg.iterated_coproduct(l, 2);
                            for a in 0..da {
                                for b in 0..da {
                                    let coef = &d2[a * da + b];
                                    if coef.is_zero() {
                                        continue;
                                    }
                                    let acted = self.act.apply(&basis_a[a], &basis_v[vp]);
                                    let term = scale(
                                        &outer(&acted, &basis_a[b]),
                                        &lam[l].mul(coef),
                                    );
                                    rhs = if sign { sub(&rhs, &term) } else { add(&rhs, &term) };
                                }
                            }
                        }
                        // + sum a_(1)(v) (x) lambda(a_(2), v'), antisymmetrized.
                        for a in 0..da {
                            for b in 0..da {
                                let coef = &delta2[i][a * da + b];
                                if coef.is_zero() {
                                    continue;
                                }
                                let acted = self.act.apply(&basis_a[a], &basis_v[vv]);
                                let lam2 = self.lambda(&basis_a[b], &basis_v[vp]);
                                let term = scale(&outer(&acted, &lam2), coef);
                                rhs = if sign { sub(&rhs, &term) } else { add(&rhs, &term) };
                            }
                        }
                    }
                    if !is_zero(&sub(&lhs, &rhs)) {
                        compat_v_ok = false;
                        break 'cv;
                    }
                }
            }
        }

        // Jacobi into A: cyclic sums over module basis triples.
        let mut jacobi_a_ok = true;
        'ja: for i in 0..dv {
            for j in 0..i {
                for k in 0..j {
                    let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                    let mut lhs = vec![f.zero(); da];
                    let mut rhs = vec![f.zero(); da];
                    for (p, qq, rr) in cyc {
                        let ka = self.kappa_a(&basis_v[p], &basis_v[qq]);
                        lhs = add(&lhs, &self.lambda(&ka, &basis_v[rr]));
                        let kv = self.kappa_v(&basis_v[qq], &basis_v[rr]);
                        rhs = add(&rhs, &self.kappa_a(&basis_v[p], &kv));
                    }
                    if !is_zero(&sub(&lhs, &rhs)) {
                        jacobi_a_ok = false;
                        break 'ja;
                    }
                }
            }
        }

        // Jacobi in V (x) A.
        let mut jacobi_v_ok = true;
        'jv: for i in 0..dv {
            for j in 0..i {
                for k in 0..j {
                    let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                    let mut lhs = vxa_zero.clone();
                    let mut rhs = vxa_zero.clone();
                    for (p, qq, rr) in cyc {
                        // kappa_V(kappa_V(v1, v2), v3), embedded at a_0.
                        let kv = self.kappa_v(&basis_v[p], &basis_v[qq]);
                        let kvv = self.kappa_v(&kv, &basis_v[rr]);
                        lhs = add(&lhs, &outer(&kvv, &self.alg.unit_vec()));
                        // v1 (x) kappa_A(v2, v3)
                        let ka = self.kappa_a(&basis_v[qq], &basis_v[rr]);
                        rhs = add(&rhs, &outer(&basis_v[p], &ka));
                        // - sum kappa_A(v1, v2)_(1)(v3) (x) kappa_A(v1, v2)_(2)
                        let ka12 = self.kappa_a(&basis_v[p], &basis_v[qq]);
                        for l in 0..da {
                            if ka12[l].is_zero() {
                                continue;
                            }
                            let d2 = self.alg.iterated_coproduct(l, 2);
                            for a in 0..da {
                                for b in 0..da {
                                    let coef = &d2[a * da + b];
                                    if coef.is_zero() {
                                        continue;
                                    }
                                    let acted = self.act.apply(&basis_a[a], &basis_v[rr]);
                                    let term =
                                        scale(&outer(&acted, &basis_a[b]), &ka12[l].mul(coef));
                                    rhs = sub(&rhs, &term);
                                }
                            }
                        }
                    }
                    if !is_zero(&sub(&lhs, &rhs)) {
                        jacobi_v_ok = false;
                        break 'jv;
                    }
                }
            }
        }

        ConditionReport {
            action: action_ok,
            compat_a: compat_a_ok,
            compat_v: compat_v_ok,
            jacobi_a: jacobi_a_ok,
            jacobi_v: jacobi_v_ok,
        }
    }

    // ------------------------------------------------------------------
    // Method 2: structure-constant identities
    // ------------------------------------------------------------------

    /// The same five conditions unfolded into identities among the structure
    /// constants, using the mixed tensor `t` (so products of coproduct legs
    /// appear as iterated `t`-contractions rather than Sweedler sums).
    pub fn check_constant_identities(&self) -> ConditionReport {
        let f = self.field();
        let (da, dv) = (self.alg.dim, self.act.dim_v);
        let q = |j: usize, k: usize, l: usize| self.def.q_at(j, k, l).clone();
        let va = |j: usize, k: usize, l: usize| self.def.v_at(j, k, l).clone();
        let wv = |j: usize, k: usize, h: usize| self.def.w_at(j, k, h).clone();
        let u = |j: usize, k: usize, l: usize| self.alg.u(j, k, l).clone();
        let t = |j: usize, k: usize, m: usize, n: usize| self.t(j, k, m, n);

        // (1) sum_l u[j][k][l] q[l][i][h]
        //     = sum_l q[k][i][l] u[j][l][h]
        //       + sum_{m,n,l} t[k][i][m][n] q[j][n][l] u[l][m][h].
        let mut action_ok = true;
        'one: for j in 0..da {
            for k in 0..da {
                for i in 0..dv {
                    for h in 0..da {
                        let mut lhs = f.zero();
                        let mut rhs = f.zero();
                        for l in 0..da {
                            lhs = lhs.add(&u(j, k, l).mul(&q(l, i, h)));
                            rhs = rhs.add(&q(k, i, l).mul(&u(j, l, h)));
                        }
                        for m in 0..da {
                            for n in 0..dv {
                                let tt = t(k, i, m, n);
                                if tt.is_zero() {
                                    continue;
                                }
                                for l in 0..da {
                                    rhs = rhs.add(&tt.mul(&q(j, n, l)).mul(&u(l, m, h)));
                                }
                            }
                        }
                        if lhs != rhs {
                            action_ok = false;
                            break 'one;
                        }
                    }
                }
            }
        }

        // (2) sum_l v[j][k][l] u[i][l][h]
        //       - sum t[i][j][m][n] t[m][k][c][d] v[n][d][l] u[l][c][h]
        //     = sum_l q[i][j][l] q[l][k][h] - sum_l q[i][k][l] q[l][j][h]
        //       - sum_m w[j][k][m] q[i][m][h].
        let mut compat_a_ok = true;
        'two: for i in 0..da {
            for j in 1..dv {
                for k in 0..j {
                    for h in 0..da {
                        let mut lhs = f.zero();
                        for l in 0..da {
                            lhs = lhs.add(&va(j, k, l).mul(&u(i, l, h)));
                        }
                        for m in 0..da {
                            for n in 0..dv {
                                let t1 = t(i, j, m, n);
                                if t1.is_zero() {
                                    continue;
                                }
                                for c in 0..da {
                                    for d in 0..dv {
                                        let t2 = t(m, k, c, d);
                                        if t2.is_zero() {
                                            continue;
                                        }
                                        for l in 0..da {
                                            let term = t1
                                                .mul(&t2)
                                                .mul(&va(n, d, l))
                                                .mul(&u(l, c, h));
                                            lhs = lhs.sub(&term);
                                        }
                                    }
                                }
                            }
                        }
                        let mut rhs = f.zero();
                        for l in 0..da {
                            rhs = rhs.add(&q(i, j, l).mul(&q(l, k, h)));
                            rhs = rhs.sub(&q(i, k, l).mul(&q(l, j, h)));
                        }
                        for m in 0..dv {
                            rhs = rhs.sub(&wv(j, k, m).mul(&q(i, m, h)));
                        }
                        if lhs != rhs {
                            compat_a_ok = false;
                            break 'two;
                        }
                    }
                }
            }
        }

        // (3) at (x_c, a_d):
        //   sum_m w[j][k][m] t[i][m][d][c]
        //     - sum t[i][j][m][n] t[m][k][d][p] w[n][p][c]
        //   = sum_l q[i][j][l] t[l][k][d][c] - sum_l q[i][k][l] t[l][j][d][c]
        //     + sum_b t[i][j][b][c] q[b][k][d] - sum_b t[i][k][b][c] q[b][j][d].
        let mut compat_v_ok = true;
        'three: for i in 0..da {
            for j in 1..dv {
                for k in 0..j {
                    for c in 0..dv {
                        for d in 0..da {
                            let mut lhs = f.zero();
                            for m in 0..dv {
                                lhs = lhs.add(&wv(j, k, m).mul(&t(i, m, d, c)));
                            }
                            for m in 0..da {
                                for n in 0..dv {
                                    let t1 = t(i, j, m, n);
                                    if t1.is_zero() {
                                        continue;
                                    }
                                    for p in 0..dv {
                                        let t2 = t(m, k, d, p);
                                        if t2.is_zero() {
                                            continue;
                                        }
                                        lhs = lhs.sub(&t1.mul(&t2).mul(&wv(n, p, c)));
                                    }
                                }
                            }
                            let mut rhs = f.zero();
                            for l in 0..da {
                                rhs = rhs.add(&q(i, j, l).mul(&t(l, k, d, c)));
                                rhs = rhs.sub(&q(i, k, l).mul(&t(l, j, d, c)));
                            }
                            for b in 0..da {
                                rhs = rhs.add(&t(i, j, b, c).mul(&q(b, k, d)));
                                rhs = rhs.sub(&t(i, k, b, c).mul(&q(b, j, d)));
                            }
                            if lhs != rhs {
                                compat_v_ok = false;
                                break 'three;
                            }
                        }
                    }
                }
            }
        }

        // (4) cyclic: sum_l v[i][j][l] q[l][k][h] = sum_m w[j][k][m] v[i][m][h].
        let mut jacobi_a_ok = true;
        'four: for i in 0..dv {
            for j in 0..i {
                for k in 0..j {
                    for h in 0..da {
                        let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                        let mut lhs = f.zero();
                        let mut rhs = f.zero();
                        for (p, qq, rr) in cyc {
                            for l in 0..da {
                                lhs = lhs.add(&va(p, qq, l).mul(&q(l, rr, h)));
                            }
                            for m in 0..dv {
                                rhs = rhs.add(&wv(qq, rr, m).mul(&va(p, m, h)));
                            }
                        }
                        if lhs != rhs {
                            jacobi_a_ok = false;
                            break 'four;
                        }
                    }
                }
            }
        }

        // (5) at (x_c, a_d), cyclic:
        //   sum_l w[i][j][l] w[l][k][c] delta_{d0}
        //   = v[j][k][d] delta_{ci} - sum_l v[i][j][l] t[l][k][d][c].
        let mut jacobi_v_ok = true;
        'five: for i in 0..dv {
            for j in 0..i {
                for k in 0..j {
                    for c in 0..dv {
                        for d in 0..da {
                            let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                            let mut lhs = f.zero();
                            let mut rhs = f.zero();
                            for (p, qq, rr) in cyc {
                                if d == 0 {
                                    for l in 0..dv {
                                        lhs = lhs.add(&wv(p, qq, l).mul(&wv(l, rr, c)));
                                    }
                                }
                                if c == p {
                                    rhs = rhs.add(&va(qq, rr, d));
                                }
                                for l in 0..da {
                                    rhs = rhs.sub(&va(p, qq, l).mul(&t(l, rr, d, c)));
                                }
                            }
                            if lhs != rhs {
                                jacobi_v_ok = false;
                                break 'five;
                            }
                        }
                    }
                }
            }
        }

        ConditionReport {
            action: action_ok,
            compat_a: compat_a_ok,
            compat_v: compat_v_ok,
            jacobi_a: jacobi_a_ok,
            jacobi_v: jacobi_v_ok,
        }
    }

    // ------------------------------------------------------------------
    // Method 3: diamond lemma
    // ------------------------------------------------------------------

    /// Resolve every overlap ambiguity of the presentation and classify it
    /// by the letter pattern of its overlap word.
    pub fn check_ambiguities(&self, step_cap: usize) -> Result<AmbiguityReport, DeformationError> {
        let sys = self.build_presentation()?;
        let mut report = AmbiguityReport {
            aaa: (0, 0),
            aax: (0, 0),
            axx: (0, 0),
            xxx: (0, 0),
            unresolved: Vec::new(),
        };
        for amb in sys.enumerate_ambiguities() {
            let pattern: Vec<bool> = amb
                .overlap_word
                .0
                .iter()
                .map(|g| matches!(g, Generator::Algebra(_)))
                .collect();
            let family = match pattern.as_slice() {
                [true, true, true] => &mut report.aaa,
                [true, true, false] => &mut report.aax,
                [true, false, false] => &mut report.axx,
                [false, false, false] => &mut report.xxx,
                other => unreachable!("overlap pattern {:?}", other),
            };
            family.0 += 1;
            let diff = sys.resolve_ambiguity(&amb, step_cap)?;
            if diff.is_zero() {
                family.1 += 1;
            } else {
                report.unresolved.push(amb.overlap_word.clone());
            }
        }
        Ok(report)
    }

    // ------------------------------------------------------------------
    // Method 4: dimension oracle
    // ------------------------------------------------------------------

    /// Words over the presentation alphabet, grouped by length up to `cap`.
    fn words_by_length(&self, cap: usize) -> Vec<Vec<Word>> {
        let alphabet = self.alphabet();
        let mut out = vec![vec![Word::empty()]];
        for _ in 1..=cap {
            let mut level = Vec::new();
            for w in out.last().unwrap() {
                for &g in &alphabet {
                    let mut v = w.0.clone();
                    v.push(g);
                    level.push(Word(v));
                }
            }
            out.push(level);
        }
        out
    }

    /// Exact truncated dimension count: span all translates `x (lhs - rhs) y`
    /// within total degree `cap`, echelonize, and compare coranks with the
    /// count of irreducible words.  Rules never increase word length, so the
    /// rows with leading length `<= n` compute the ideal's intersection with
    /// the degree-`n` truncation.
    pub fn graded_dimension_oracle(&self, cap: usize) -> Result<DimensionReport, DeformationError> {
        let sys = self.build_presentation()?;
        let f = self.field();
        let words = self.words_by_length(cap);
        let mut ech = PolyEchelon::new();
        for rule in sys.rules() {
            let rel = rule.as_relation(&f.one());
            let l = rule.lhs.len();
            if l > cap {
                continue;
            }
            for lc in 0..=cap - l {
                for rc in 0..=cap - l - lc {
                    for left in &words[lc] {
                        for right in &words[rc] {
                            ech.insert(&rel.sandwich(left, right));
                        }
                    }
                }
            }
        }
        // Expected: irreducible words of the presentation (PBW monomials).
        let expected_level = |n: usize| -> usize {
            // Words x_{i_1} <= ... <= x_{i_m} (a_j)? of total length n:
            // multisets of size n from dim_v letters, plus multisets of size
            // n-1 followed by one of the dim_a - 1 algebra letters.
            let choose = |n: usize, k: usize| -> usize {
                if k == 0 {
                    return 1;
                }
                let mut acc = 1usize;
                for i in 0..k {
                    acc = acc * (n + i) / (i + 1);
                }
                acc
            };
            let sym = |m: usize| -> usize {
                if self.act.dim_v == 0 {
                    return if m == 0 { 1 } else { 0 };
                }
                choose(self.act.dim_v, m)
            };
            let mut total = sym(n);
            if n >= 1 {
                total += sym(n - 1) * (self.alg.dim - 1);
            }
            total
        };
        let mut dims = Vec::new();
        let mut expected = Vec::new();
        let mut cum_words = 0usize;
        let mut cum_expected = 0usize;
        let mut first_mismatch = None;
        for n in 0..=cap {
            cum_words += words[n].len();
            cum_expected += expected_level(n);
            let dim_n = cum_words - ech.rank_within_length(n);
            dims.push(dim_n);
            expected.push(cum_expected);
            if dim_n != cum_expected && first_mismatch.is_none() {
                first_mismatch = Some(n);
            }
        }
        Ok(DimensionReport {
            dims,
            expected,
            first_mismatch,
        })
    }

    /// Reduce `p` modulo the span of relation translates within degree
    /// `cap`; vanishing certifies `p = 0` in `H` even without confluence.
    pub fn reduce_mod_ideal_truncation(
        &self,
        p: &NCPoly,
        cap: usize,
    ) -> Result<NCPoly, DeformationError> {
        let sys = self.build_presentation()?;
        let f = self.field();
        let words = self.words_by_length(cap);
        let mut ech = PolyEchelon::new();
        for rule in sys.rules() {
            let rel = rule.as_relation(&f.one());
            let l = rule.lhs.len();
            if l > cap {
                continue;
            }
            for lc in 0..=cap - l {
                for rc in 0..=cap - l - lc {
                    for left in &words[lc] {
                        for right in &words[rc] {
                            ech.insert(&rel.sandwich(left, right));
                        }
                    }
                }
            }
        }
        Ok(ech.reduce(p))
    }

    // ------------------------------------------------------------------
    // Aggregation
    // ------------------------------------------------------------------

    /// Run the selected methods and aggregate.  Any disagreement between
    /// methods is a fatal error: it would mean an implementation bug, not a
    /// mathematical fact.
    pub fn pbw_check(
        &self,
        methods: &[Method],
        dim_cap: usize,
        step_cap: usize,
    ) -> Result<PBWReport, DeformationError> {
        self.check_hypotheses()?;
        let mut report = PBWReport {
            symbolic: None,
            constants: None,
            ambiguities: None,
            dimensions: None,
            pbw: false,
        };
        let mut verdicts: Vec<(&str, bool)> = Vec::new();
        for m in methods {
            match m {
                Method::Symbolic => {
                    let r = self.check_symbolic_conditions();
                    verdicts.push(("symbolic", r.all_ok()));
                    report.symbolic = Some(r);
                }
                Method::Constants => {
                    let r = self.check_constant_identities();
                    verdicts.push(("constants", r.all_ok()));
                    report.constants = Some(r);
                }
                Method::Ambiguity => {
                    let r = self.check_ambiguities(step_cap)?;
                    verdicts.push(("ambiguity", r.pass()));
                    report.ambiguities = Some(r);
                }
                Method::Dimension => {
                    let r = self.graded_dimension_oracle(dim_cap)?;
                    verdicts.push(("dimension", r.pass()));
                    report.dimensions = Some(r);
                }
            }
        }
        let Some(&(_, first)) = verdicts.first() else {
            return Err(DeformationError::HypothesisViolated(
                "no methods selected".into(),
            ));
        };
        if let Some((name, _)) = verdicts.iter().find(|(_, v)| *v != first) {
            return Err(DeformationError::MethodDisagreement(format!(
                "{} disagrees with {}: {:?}",
                name, verdicts[0].0, verdicts
            )));
        }
        report.pbw = first;
        Ok(report)
    }

    // ------------------------------------------------------------------
    // Homogenization
    // ------------------------------------------------------------------

    /// Homogenize with a central degree-one parameter, compute the first and
    /// second-order multiplication corrections on generator pairs, and check
    /// that they recover `lambda`, `kappa_V`, `kappa_A` exactly.
    pub fn homogenize_and_extract_mu(
        &self,
        step_cap: usize,
    ) -> Result<MuExtraction, DeformationError> {
        let f = self.field();
        let (da, dv) = (self.alg.dim, self.act.dim_v);
        // Graded rules: lhs -> (t^0, t^1, t^2) components.
        struct GradedRule {
            lhs: Word,
            rhs: [NCPoly; 3],
        }
        let mut rules: Vec<GradedRule> = Vec::new();
        for j in 1..dv {
            for k in 0..j {
                let lhs = Word(vec![Generator::Module(j as u16), Generator::Module(k as u16)]);
                let c0 = NCPoly::from_word(
                    Word(vec![Generator::Module(k as u16), Generator::Module(j as u16)]),
                    f.one(),
                );
                let mut c1 = NCPoly::zero();
                for h in 0..dv {
                    c1.add_term(
                        Word::single(Generator::Module(h as u16)),
                        self.def.w_at(j, k, h).clone(),
                    );
                }
                let mut c2 = NCPoly::zero();
                for l in 0..da {
                    c2.add_term(self.word_a(l), self.def.v_at(j, k, l).clone());
                }
                rules.push(GradedRule {
                    lhs,
                    rhs: [c0, c1, c2],
                });
            }
        }
        for j in 1..da {
            for k in 1..da {
                let lhs = Word(vec![
                    Generator::Algebra(j as u16),
                    Generator::Algebra(k as u16),
                ]);
                let mut c0 = NCPoly::zero();
                for l in 0..da {
                    c0.add_term(self.word_a(l), self.alg.u(j, k, l).clone());
                }
                rules.push(GradedRule {
                    lhs,
                    rhs: [c0, NCPoly::zero(), NCPoly::zero()],
                });
            }
        }
        for j in 1..da {
            for k in 0..dv {
                let lhs = Word(vec![
                    Generator::Algebra(j as u16),
                    Generator::Module(k as u16),
                ]);
                let mut c0 = NCPoly::zero();
                for m in 0..da {
                    for n in 0..dv {
                        c0.add_term(self.word_xa(n, m), self.t(j, k, m, n));
                    }
                }
                let mut c1 = NCPoly::zero();
                for l in 0..da {
                    c1.add_term(self.word_a(l), self.def.q_at(j, k, l).clone());
                }
                rules.push(GradedRule {
                    lhs,
                    rhs: [c0, c1, NCPoly::zero()],
                });
            }
        }
        // Normal form of a t-graded element (components by t-degree).
        let normal_form_graded = |start: Vec<NCPoly>| -> Result<Vec<NCPoly>, DeformationError> {
            let mut comps = start;
            for _ in 0..step_cap {
                let mut applied = false;
                'outer: for g in 0..comps.len() {
                    let reducible = comps[g]
                        .terms()
                        .map(|(w, c)| (w.clone(), c.clone()))
                        .collect::<Vec<_>>();
                    for (w, c) in reducible.into_iter().rev() {
                        for rule in &rules {
                            if let Some(pos) = w.find_factor(&rule.lhs) {
                                let prefix = Word(w.0[..pos].to_vec());
                                let suffix = Word(w.0[pos + rule.lhs.len()..].to_vec());
                                comps[g].add_term(w.clone(), c.neg());
                                for (shift, comp) in rule.rhs.iter().enumerate() {
                                    let dst = g + shift;
                                    if dst >= comps.len() {
                                        comps.resize(dst + 1, NCPoly::zero());
                                    }
                                    let add = comp.sandwich(&prefix, &suffix).scale(&c);
                                    comps[dst] = comps[dst].add(&add);
                                }
                                applied = true;
                                break 'outer;
                            }
                        }
                    }
                }
                if !applied {
                    return Ok(comps);
                }
            }
            Err(DeformationError::Rewrite(RewriteError::CapExceeded(
                step_cap,
            )))
        };
        let mu = |w1: &Word, w2: &Word| -> Result<Vec<NCPoly>, DeformationError> {
            normal_form_graded(vec![NCPoly::from_word(w1.concat(w2), f.one())])
        };
        let comp = |nf: &[NCPoly], g: usize| -> NCPoly {
            nf.get(g).cloned().unwrap_or_default()
        };
        // lambda(a_j, x_k) = mu_1(a_j (x) x_k) - sum mu_1(a_j_(1)(x_k) (x) a_j_(2)).
        let mut lambda_ok = true;
        for j in 1..da {
            for k in 0..dv {
                let aw = Word::single(Generator::Algebra(j as u16));
                let xw = Word::single(Generator::Module(k as u16));
                let m1 = mu(&aw, &xw)?;
                let mut got = comp(&m1, 1);
                for m in 0..da {
                    for n in 0..dv {
                        let c = self.t(j, k, m, n);
                        if c.is_zero() {
                            continue;
                        }
                        let m1b = mu(
                            &Word::single(Generator::Module(n as u16)),
                            &self.word_a(m),
                        )?;
                        got = got.sub(&comp(&m1b, 1).scale(&c));
                    }
                }
                let mut want = NCPoly::zero();
                for l in 0..da {
                    want.add_term(self.word_a(l), self.def.q_at(j, k, l).clone());
                }
                if got != want {
                    lambda_ok = false;
                }
            }
        }
        // kappa_V(x_j, x_k) = mu_1(x_j (x) x_k) - mu_1(x_k (x) x_j);
        // kappa_A similarly at order two.
        let mut kappa_v_ok = true;
        let mut kappa_a_ok = true;
        for j in 0..dv {
            for k in 0..dv {
                let xj = Word::single(Generator::Module(j as u16));
                let xk = Word::single(Generator::Module(k as u16));
                let m_jk = mu(&xj, &xk)?;
                let m_kj = mu(&xk, &xj)?;
                let got_v = comp(&m_jk, 1).sub(&comp(&m_kj, 1));
                let mut want_v = NCPoly::zero();
                for h in 0..dv {
                    want_v.add_term(
                        Word::single(Generator::Module(h as u16)),
                        self.def.w_at(j, k, h).clone(),
                    );
                }
                if got_v != want_v {
                    kappa_v_ok = false;
                }
                let got_a = comp(&m_jk, 2).sub(&comp(&m_kj, 2));
                let mut want_a = NCPoly::zero();
                for l in 0..da {
                    want_a.add_term(self.word_a(l), self.def.v_at(j, k, l).clone());
                }
                if got_a != want_a {
                    kappa_a_ok = false;
                }
            }
        }
        Ok(MuExtraction {
            lambda_ok,
            kappa_v_ok,
            kappa_a_ok,
        })
    }
}

/// Result of recovering the deformation data from the homogenized product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuExtraction {
    pub lambda_ok: bool,
    pub kappa_v_ok: bool,
    pub kappa_a_ok: bool,
}

impl MuExtraction {
    pub fn all_ok(&self) -> bool {
        self.lambda_ok && self.kappa_v_ok && self.kappa_a_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{build_nilcoxeter, trivial_algebra, CoxeterData};
    use crate::linalg::Mat;

    fn q() -> Field {
        Field::Q
    }

    /// Trivial acting algebra on a module of dimension `dv`.
    fn free_instance(dv: usize) -> Instance {
        let alg = trivial_algebra(q());
        let mut s = vec![q().zero(); dv * dv];
        for k in 0..dv {
            s[k * dv + k] = q().one();
        }
        let act = ModuleAction::new(q(), 1, dv, s).unwrap();
        let def = DeformationData::zero(q(), 1, dv);
        Instance { alg, act, def }
    }

    /// Two-dimensional Weyl-type instance: `x_2 x_1 - x_1 x_2 = 1`.
    fn weyl() -> Instance {
        let mut inst = free_instance(2);
        inst.def.set_v(1, 0, 0, q().one());
        inst
    }

    /// Three-dimensional Lie instance with `[x1, x2] = x3`, `[x3, x1] = 2 x1`,
    /// `[x3, x2] = -2 x2` (the enveloping algebra of a simple Lie algebra).
    fn lie_rank_one() -> Instance {
        let mut inst = free_instance(3);
        inst.def.set_w(1, 0, 2, q().from_i64(-1));
        inst.def.set_w(2, 0, 0, q().from_i64(2));
        inst.def.set_w(2, 1, 1, q().from_i64(-2));
        inst
    }

    /// A 2-dimensional nil algebra (`T^2 = 0`) acting by a Jordan block
    /// (`T x_2 = x_1`, `T x_1 = 0`), with `kappa_A(x_2, x_1)` prescribed.
    fn jordan_instance(kappa_const: i64, kappa_t: i64) -> Instance {
        let built = build_nilcoxeter(q(), &CoxeterData::a1n(vec![2]), 8, 1000).unwrap();
        let alg = built.algebra;
        let mut t = Mat::zero(q(), 2, 2);
        *t.at_mut(0, 1) = q().one();
        let act = ModuleAction::from_ops(q(), 2, 2, &[t]);
        let mut def = DeformationData::zero(q(), 2, 2);
        def.set_v(1, 0, 0, q().from_i64(kappa_const));
        def.set_v(1, 0, 1, q().from_i64(kappa_t));
        Instance { alg, act, def }
    }

    #[test]
    fn weyl_passes_all_four_methods() {
        let inst = weyl();
        let rep = inst.pbw_check(&Method::ALL, 4, 10_000).unwrap();
        assert!(rep.pbw);
        let dims = rep.dimensions.unwrap();
        assert_eq!(dims.dims, vec![1, 3, 6, 10, 15]);
        assert_eq!(dims.expected, vec![1, 3, 6, 10, 15]);
        let amb = rep.ambiguities.unwrap();
        assert_eq!(amb.xxx, (0, 0)); // a single commutator rule has no overlaps
    }

    #[test]
    fn lie_rank_one_passes_all_four_methods() {
        let inst = lie_rank_one();
        let rep = inst.pbw_check(&Method::ALL, 3, 10_000).unwrap();
        assert!(rep.pbw);
        let dims = rep.dimensions.unwrap();
        assert_eq!(dims.dims, vec![1, 4, 10, 20]);
        let amb = rep.ambiguities.unwrap();
        assert_eq!(amb.xxx, (1, 1)); // the single x3 x2 x1 overlap resolves
    }

    #[test]
    fn lie_jacobi_violation_detected() {
        // Break the Jacobi identity: [x3, x2] = -2 x2 replaced by -2 x1.
        let mut inst = lie_rank_one();
        inst.def.set_w(2, 1, 1, q().zero());
        inst.def.set_w(2, 1, 0, q().from_i64(-2));
        let rep = inst.pbw_check(&Method::ALL, 3, 10_000).unwrap();
        assert!(!rep.pbw);
        let sym = rep.symbolic.unwrap();
        assert!(!sym.jacobi_v && sym.jacobi_a && sym.action);
        let dims = rep.dimensions.unwrap();
        // The spurious ideal element has degree 1.
        assert_eq!(dims.first_mismatch, Some(1));
    }

    #[test]
    fn jordan_with_constant_kappa_fails() {
        let inst = jordan_instance(1, 0);
        let rep = inst.pbw_check(&Method::ALL, 3, 10_000).unwrap();
        assert!(!rep.pbw);
        // The overlap T x2 x1 collapses T itself into the ideal, so the
        // dimension defect appears already in degree 1.
        let dims = rep.dimensions.unwrap();
        assert_eq!(dims.first_mismatch, Some(1));
        assert_eq!(dims.dims[1], 3);
        assert_eq!(dims.expected[1], 4);
        // And indeed T reduces to zero modulo the truncated ideal span.
        let t_elt = NCPoly::from_word(Word::single(Generator::Algebra(1)), q().one());
        let reduced = inst.reduce_mod_ideal_truncation(&t_elt, 3).unwrap();
        assert!(reduced.is_zero());
    }

    #[test]
    fn jordan_with_nilpotent_kappa_passes() {
        let inst = jordan_instance(0, 1);
        let rep = inst.pbw_check(&Method::ALL, 3, 10_000).unwrap();
        assert!(rep.pbw);
        // dims: multisets in x1, x2 times {1, T}.
        let dims = rep.dimensions.unwrap();
        assert_eq!(dims.dims, vec![1, 4, 9, 16]);
    }

    #[test]
    fn methods_agree_with_nonzero_lambda() {
        // lambda(T, x1) = T on the Jordan instance: the T x2 x1 overlap
        // resolves (both paths give x1 T), so this is a filtered but
        // ungraded instance with the basis property.
        let mut inst = jordan_instance(0, 1);
        inst.def.set_q(1, 0, 1, q().one());
        assert!(!inst.is_graded());
        let rep = inst.pbw_check(&Method::ALL, 3, 10_000).unwrap();
        assert!(rep.pbw);
    }

    #[test]
    fn mu_extraction_with_nonzero_lambda() {
        let mut inst = jordan_instance(0, 1);
        inst.def.set_q(1, 0, 1, q().one());
        let ext = inst.homogenize_and_extract_mu(10_000).unwrap();
        assert!(ext.all_ok(), "{:?}", ext);
    }

    #[test]
    fn mu_extraction_recovers_deformation_data() {
        for inst in [weyl(), lie_rank_one(), jordan_instance(0, 1)] {
            let ext = inst.homogenize_and_extract_mu(10_000).unwrap();
            assert!(ext.all_ok(), "{:?}", ext);
        }
    }

    #[test]
    fn weyl_over_prime_field() {
        let f = Field::fp(5).unwrap();
        let alg = trivial_algebra(f);
        let mut s = vec![f.zero(); 4];
        s[0] = f.one();
        s[3] = f.one();
        let act = ModuleAction::new(f, 1, 2, s).unwrap();
        let mut def = DeformationData::zero(f, 1, 2);
        def.set_v(1, 0, 0, f.one());
        let inst = Instance { alg, act, def };
        let rep = inst.pbw_check(&Method::ALL, 3, 10_000).unwrap();
        assert!(rep.pbw);
    }

    #[test]
    fn triangular_constructor_matches_dense() {
        let f = q();
        let tri = DeformationData::from_triangular(
            f,
            1,
            2,
            vec![f.zero(); 2],
            &[(1, 0, 0, f.one())],
            &[],
        )
        .unwrap();
        assert_eq!(*tri.v_at(1, 0, 0), f.one());
        assert_eq!(*tri.v_at(0, 1, 0), f.from_i64(-1));
        assert!(DeformationData::new(
            f,
            1,
            2,
            vec![f.zero(); 2],
            vec![f.one(), f.zero(), f.zero(), f.zero()],
            vec![f.zero(); 8],
        )
        .is_err());
    }
}
