//! Reduction systems on the free algebra and bounded completion.
//!
//! A reduction system is a set of oriented rules `lhs -> rhs` where `lhs` is
//! a word and every monomial of `rhs` is degree-lex smaller than `lhs`.
//! Because the order is a well-order compatible with concatenation, rewriting
//! terminates; the diamond lemma then says the system is confluent iff all
//! overlap ambiguities resolve, in which case the irreducible words form a
//! basis of the quotient algebra.

use crate::poly::NCPoly;
use crate::scalar::Scalar;
use crate::word::{deglex_compare, Generator, Word};
use std::cmp::Ordering;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rule lhs must be a nonempty word")]
    EmptyLhs,
    #[error("rhs monomial {0} is not smaller than lhs {1}")]
    RhsNotSmaller(String, String),
    #[error("duplicate rule lhs {0}")]
    DuplicateLhs(String),
    #[error("lhs {0} is a factor of lhs {1} (inclusion ambiguity)")]
    InclusionAmbiguity(String, String),
    #[error("step cap {0} exceeded during reduction")]
    CapExceeded(usize),
    #[error("cannot orient relation {0}: empty leading word (inconsistent presentation)")]
    OrientationFailure(String),
    #[error("completion iteration limit reached")]
    IterationLimit,
}

/// One oriented rule.  Construction enforces the order condition.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl ReductionRule {
    pub fn new(lhs: Word, rhs: NCPoly) -> Result<ReductionRule, RewriteError> {
        if lhs.is_empty() {
            return Err(RewriteError::EmptyLhs);
        }
        for (w, _) in rhs.terms() {
            if deglex_compare(w, &lhs) != Ordering::Less {
                return Err(RewriteError::RhsNotSmaller(w.to_string(), lhs.to_string()));
            }
        }
        Ok(ReductionRule { lhs, rhs })
    }

    /// The rule as the relation polynomial `lhs - rhs`.
    pub fn as_relation(&self, one: &Scalar) -> NCPoly {
        let mut p = NCPoly::from_word(self.lhs.clone(), one.clone());
        p = p.sub(&self.rhs);
        p
    }
}

/// A validated set of rules: distinct left-hand sides, none a factor of
/// another (so the only ambiguities are overlap ambiguities).
#[derive(Clone, Debug)]
pub struct ReductionSystem {
    rules: Vec<ReductionRule>,
}

/// Record of a single applied reduction, for instrumentation (the
/// termination-certificate tests compare misordering indices across a step).
#[derive(Clone, Debug)]
pub struct ReductionStep {
    /// The monomial that was rewritten.
    pub word: Word,
    /// Start position of the rule match inside `word`.
    pub pos: usize,
    /// Index of the applied rule.
    pub rule: usize,
    /// Monomials produced by the replacement (before cancellation).
    pub produced: Vec<Word>,
}

impl ReductionSystem {
    pub fn new(rules: Vec<ReductionRule>) -> Result<ReductionSystem, RewriteError> {
        for (i, r) in rules.iter().enumerate() {
            for (j, s) in rules.iter().enumerate() {
                if i == j {
                    continue;
                }
                if r.lhs == s.lhs {
                    if i < j {
                        return Err(RewriteError::DuplicateLhs(r.lhs.to_string()));
                    }
                    continue;
                }
                if s.lhs.contains_factor(&r.lhs) {
                    return Err(RewriteError::InclusionAmbiguity(
                        r.lhs.to_string(),
                        s.lhs.to_string(),
                    ));
                }
            }
        }
        Ok(ReductionSystem { rules })
    }

    pub fn rules(&self) -> &[ReductionRule] {
        &self.rules
    }

    /// Does any rule lhs occur in `w`?
    pub fn is_reducible(&self, w: &Word) -> bool {
        self.rules.iter().any(|r| w.contains_factor(&r.lhs))
    }

    /// Deterministic single step: rewrite the degree-lex-largest reducible
    /// monomial at the leftmost match.  Returns `None` on normal forms.
    pub fn reduce_once(&self, p: &NCPoly) -> Option<(NCPoly, ReductionStep)> {
        let (word, coeff) = p
            .terms()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .find(|(w, _)| self.is_reducible(w))
            .map(|(w, c)| (w.clone(), c.clone()))?;
        let (pos, rule) = self.leftmost_match(&word).expect("reducible word");
        Some(self.apply_at(p, &word, &coeff, pos, rule))
    }

    /// Apply rule `rule` to monomial `word` (with coefficient `coeff` in `p`)
    /// at position `pos`.  Caller guarantees the match.
    pub fn apply_at(
        &self,
        p: &NCPoly,
        word: &Word,
        coeff: &Scalar,
        pos: usize,
        rule: usize,
    ) -> (NCPoly, ReductionStep) {
        let r = &self.rules[rule];
        debug_assert_eq!(&word.0[pos..pos + r.lhs.len()], &r.lhs.0[..]);
        let prefix = Word(word.0[..pos].to_vec());
        let suffix = Word(word.0[pos + r.lhs.len()..].to_vec());
        let replacement = r.rhs.sandwich(&prefix, &suffix).scale(coeff);
        let mut out = p.clone();
        out.add_term(word.clone(), coeff.neg());
        let produced: Vec<Word> = replacement.terms().map(|(w, _)| w.clone()).collect();
        let out = out.add(&replacement);
        (
            out,
            ReductionStep {
                word: word.clone(),
                pos,
                rule,
                produced,
            },
        )
    }

    /// Leftmost `(position, rule)` match in `w`.  At a fixed position the
    /// matching rule is unique because no lhs is a factor of another.
    pub fn leftmost_match(&self, w: &Word) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (k, r) in self.rules.iter().enumerate() {
                if pos + r.lhs.len() <= w.len() && w.0[pos..pos + r.lhs.len()] == r.lhs.0[..] {
                    return Some((pos, k));
                }
            }
        }
        None
    }

    /// All `(position, rule)` matches in `w`, for randomized strategies.
    pub fn all_matches(&self, w: &Word) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for (k, r) in self.rules.iter().enumerate() {
                if pos + r.lhs.len() <= w.len() && w.0[pos..pos + r.lhs.len()] == r.lhs.0[..] {
                    out.push((pos, k));
                }
            }
        }
        out
    }

    /// Reduce to normal form with the deterministic strategy, erroring if
    /// more than `step_cap` steps are needed.
    pub fn normal_form(&self, p: &NCPoly, step_cap: usize) -> Result<NCPoly, RewriteError> {
        let mut p = p.clone();
        for _ in 0..step_cap {
            match self.reduce_once(&p) {
                None => return Ok(p),
                Some((q, _)) => p = q,
            }
        }
        if self.reduce_once(&p).is_none() {
            Ok(p)
        } else {
            Err(RewriteError::CapExceeded(step_cap))
        }
    }

    /// All overlap ambiguities: triples where a suffix of one lhs equals a
    /// prefix of another (possibly the same) lhs.  Self-overlaps included.
    pub fn enumerate_ambiguities(&self) -> Vec<Ambiguity> {
        let mut out = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            for (j, s) in self.rules.iter().enumerate() {
                for m in 1..r.lhs.len().min(s.lhs.len()) {
                    if r.lhs.0[r.lhs.len() - m..] == s.lhs.0[..m] {
                        let mut w = r.lhs.0.clone();
                        w.extend_from_slice(&s.lhs.0[m..]);
                        out.push(Ambiguity {
                            left_rule: i,
                            right_rule: j,
                            overlap_word: Word(w),
                            offset: r.lhs.len() - m,
                        });
                    }
                }
            }
        }
        out
    }

    /// Reduce the overlap word both ways and return the difference of the
    /// resulting normal forms; zero iff the ambiguity resolves.
    pub fn resolve_ambiguity(
        &self,
        amb: &Ambiguity,
        step_cap: usize,
    ) -> Result<NCPoly, RewriteError> {
        let one = match self.rules.iter().find_map(|r| r.rhs.leading_coeff()) {
            Some(c) => c.field().one(),
            // All rhs are zero: every reduction just deletes monomials, so
            // the field never matters; fall back to Q.
            None => crate::scalar::Field::Q.one(),
        };
        let w = NCPoly::from_word(amb.overlap_word.clone(), one.clone());
        let (p1, _) = self.apply_at(&w, &amb.overlap_word, &one, 0, amb.left_rule);
        let (p2, _) = self.apply_at(&w, &amb.overlap_word, &one, amb.offset, amb.right_rule);
        let n1 = self.normal_form(&p1, step_cap)?;
        let n2 = self.normal_form(&p2, step_cap)?;
        Ok(n1.sub(&n2))
    }

    /// Bounded Knuth–Bendix completion: repeatedly resolve ambiguities whose
    /// overlap word has length at most `degree_cap`, orienting nonzero
    /// differences into new rules.  Ambiguities with longer overlap words are
    /// skipped and counted in `residual_ambiguities`.
    pub fn knuth_bendix_bounded(
        &self,
        degree_cap: usize,
        step_cap: usize,
    ) -> Result<CompletionOutcome, RewriteError> {
        let mut rules = self.rules.clone();
        let mut pending: Vec<NCPoly> = Vec::new();
        for iteration in 0.. {
            if iteration > 10_000 {
                return Err(RewriteError::IterationLimit);
            }
            let sys = ReductionSystem::new(rules.clone())?;
            let mut residual = 0usize;
            if pending.is_empty() {
                for amb in sys.enumerate_ambiguities() {
                    if amb.overlap_word.len() > degree_cap {
                        residual += 1;
                        continue;
                    }
                    let diff = sys.resolve_ambiguity(&amb, step_cap)?;
                    if !diff.is_zero() {
                        pending.push(diff);
                    }
                }
            }
            match pending.pop() {
                None => {
                    return Ok(CompletionOutcome {
                        system: sys,
                        complete: residual == 0,
                        residual_ambiguities: residual,
                    });
                }
                Some(diff) => {
                    let diff = sys.normal_form(&diff, step_cap)?;
                    let Some(lead) = diff.leading_word().cloned() else {
                        continue;
                    };
                    if lead.is_empty() {
                        return Err(RewriteError::OrientationFailure(diff.to_string()));
                    }
                    let monic = diff.monic();
                    let mut rhs = NCPoly::from_word(lead.clone(), monic.leading_coeff().unwrap().neg());
                    rhs = rhs.add(&monic).scale(&monic.leading_coeff().unwrap().neg());
                    // rhs = lead - monic = -(monic - lead).
                    let new_rule = ReductionRule::new(lead.clone(), rhs)?;
                    // Rules subsumed by the new lhs go back into the queue as
                    // plain relations.
                    let one = monic.leading_coeff().unwrap().clone();
                    let mut kept = Vec::new();
                    for r in rules.into_iter() {
                        if r.lhs.contains_factor(&lead) {
                            pending.push(r.as_relation(&one));
                        } else {
                            kept.push(r);
                        }
                    }
                    kept.push(new_rule);
                    rules = kept;
                }
            }
        }
        unreachable!()
    }

    /// Enumerate irreducible words over `alphabet` up to length `degree_cap`,
    /// grouped by length.  `saturated` means some level below the cap is
    /// empty, so no irreducible words exist beyond it either.
    pub fn enumerate_basis(&self, alphabet: &[Generator], degree_cap: usize) -> BasisEnumeration {
        let mut by_length: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        let mut saturated = false;
        for _len in 1..=degree_cap {
            let mut level = Vec::new();
            for w in by_length.last().unwrap() {
                for &g in alphabet {
                    let mut v = w.0.clone();
                    v.push(g);
                    let cand = Word(v);
                    // The prefix is irreducible, so only suffix matches matter.
                    let reducible = self.rules.iter().any(|r| {
                        r.lhs.len() <= cand.len()
                            && cand.0[cand.len() - r.lhs.len()..] == r.lhs.0[..]
                    });
                    if !reducible {
                        level.push(cand);
                    }
                }
            }
            if level.is_empty() {
                saturated = true;
                break;
            }
            by_length.push(level);
        }
        BasisEnumeration {
            by_length,
            saturated,
        }
    }
}

/// An overlap ambiguity: `overlap_word` factors as `lhs_left` starting at
/// position 0 and `lhs_right` starting at `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub left_rule: usize,
    pub right_rule: usize,
    pub overlap_word: Word,
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct CompletionOutcome {
    pub system: ReductionSystem,
    /// True iff no ambiguities above the degree cap were skipped and all
    /// bounded ones resolve.
    pub complete: bool,
    pub residual_ambiguities: usize,
}

#[derive(Clone, Debug)]
pub struct BasisEnumeration {
    /// Irreducible words grouped by length, starting with the empty word.
    pub by_length: Vec<Vec<Word>>,
    pub saturated: bool,
}

impl BasisEnumeration {
    pub fn total(&self) -> usize {
        self.by_length.iter().map(|l| l.len()).sum()
    }

    pub fn all_words(&self) -> Vec<Word> {
        self.by_length.iter().flatten().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn x(i: u16) -> Generator {
        Generator::Module(i)
    }
    fn a(j: u16) -> Generator {
        Generator::Algebra(j)
    }
    fn w(gens: &[Generator]) -> Word {
        Word(gens.to_vec())
    }

    /// The one-variable Weyl relation: x2 x1 -> x1 x2 + 1.
    fn weyl_system() -> ReductionSystem {
        let f = Field::Q;
        let mut rhs = NCPoly::from_word(w(&[x(0), x(1)]), f.one());
        rhs.add_term(Word::empty(), f.one());
        ReductionSystem::new(vec![ReductionRule::new(w(&[x(1), x(0)]), rhs).unwrap()]).unwrap()
    }

    #[test]
    fn rule_order_condition() {
        let f = Field::Q;
        // x1 -> x1 x2 violates the order condition.
        let bad = ReductionRule::new(
            w(&[x(0)]),
            NCPoly::from_word(w(&[x(0), x(1)]), f.one()),
        );
        assert!(matches!(bad, Err(RewriteError::RhsNotSmaller(_, _))));
        assert!(matches!(
            ReductionRule::new(Word::empty(), NCPoly::zero()),
            Err(RewriteError::EmptyLhs)
        ));
    }

    #[test]
    fn inclusion_ambiguity_rejected() {
        let f = Field::Q;
        let r1 = ReductionRule::new(w(&[a(1), a(2), a(1)]), NCPoly::zero()).unwrap();
        let r2 = ReductionRule::new(w(&[a(2)]), NCPoly::from_word(Word::empty(), f.one())).unwrap();
        assert!(matches!(
            ReductionSystem::new(vec![r1, r2]),
            Err(RewriteError::InclusionAmbiguity(_, _))
        ));
    }

    #[test]
    fn weyl_normal_forms() {
        let f = Field::Q;
        let sys = weyl_system();
        // x2 x1 -> x1 x2 + 1.
        let p = NCPoly::from_word(w(&[x(1), x(0)]), f.one());
        let nf = sys.normal_form(&p, 100).unwrap();
        assert_eq!(format!("{}", nf), "x1 x2 + 1");
        // Hand oracle: x2 x1 x1 -> (x1 x2 + 1) x1 -> x1 (x1 x2 + 1) + x1
        //            = x1 x1 x2 + 2 x1.
        let p = NCPoly::from_word(w(&[x(1), x(0), x(0)]), f.one());
        let nf = sys.normal_form(&p, 100).unwrap();
        let mut expect = NCPoly::from_word(w(&[x(0), x(0), x(1)]), f.one());
        expect.add_term(w(&[x(0)]), f.from_i64(2));
        assert_eq!(nf, expect);
        // x2 x2 x1 -> x1 x2 x2 + 2 x2.
        let p = NCPoly::from_word(w(&[x(1), x(1), x(0)]), f.one());
        let nf = sys.normal_form(&p, 100).unwrap();
        let mut expect = NCPoly::from_word(w(&[x(0), x(1), x(1)]), f.one());
        expect.add_term(w(&[x(1)]), f.from_i64(2));
        assert_eq!(nf, expect);
    }

    #[test]
    fn step_cap_is_enforced() {
        let f = Field::Q;
        let sys = weyl_system();
        let p = NCPoly::from_word(w(&[x(1), x(1), x(0), x(0)]), f.one());
        assert!(matches!(
            sys.normal_form(&p, 1),
            Err(RewriteError::CapExceeded(1))
        ));
        assert!(sys.normal_form(&p, 100).is_ok());
    }

    #[test]
    fn ambiguity_enumeration_examples() {
        let f = Field::Q;
        // {ab -> 1, ba -> 1} has exactly the overlaps aba and bab.
        let r1 = ReductionRule::new(w(&[a(1), a(2)]), NCPoly::from_word(Word::empty(), f.one()))
            .unwrap();
        let r2 = ReductionRule::new(w(&[a(2), a(1)]), NCPoly::from_word(Word::empty(), f.one()))
            .unwrap();
        let sys = ReductionSystem::new(vec![r1, r2]).unwrap();
        let ambs = sys.enumerate_ambiguities();
        let words: Vec<String> = ambs.iter().map(|a| a.overlap_word.to_string()).collect();
        assert_eq!(words, vec!["a1 a2 a1", "a2 a1 a2"]);
        // Self-overlap: {aa -> 0} overlaps itself in aaa.
        let r = ReductionRule::new(w(&[a(1), a(1)]), NCPoly::zero()).unwrap();
        let sys = ReductionSystem::new(vec![r]).unwrap();
        let ambs = sys.enumerate_ambiguities();
        assert_eq!(ambs.len(), 1);
        assert_eq!(ambs[0].overlap_word, w(&[a(1), a(1), a(1)]));
        assert_eq!((ambs[0].left_rule, ambs[0].right_rule), (0, 0));
    }

    #[test]
    fn weyl_ambiguities_resolve_with_three_vars() {
        // Three canonical commuting pairs with [x_j, x_k] = delta: the xxx
        // overlap x3 x2 x1 resolves.
        let f = Field::Q;
        let mut rules = Vec::new();
        for j in 1..3u16 {
            for k in 0..j {
                let mut rhs = NCPoly::from_word(w(&[x(k), x(j)]), f.one());
                if j == k + 1 {
                    rhs.add_term(Word::empty(), f.one());
                }
                rules.push(ReductionRule::new(w(&[x(j), x(k)]), rhs).unwrap());
            }
        }
        let sys = ReductionSystem::new(rules).unwrap();
        let ambs = sys.enumerate_ambiguities();
        assert_eq!(ambs.len(), 1); // x3 x2 x1 only
        for amb in &ambs {
            assert!(sys.resolve_ambiguity(amb, 1000).unwrap().is_zero());
        }
    }

    fn nil_coxeter_rules(order_12: usize) -> Vec<ReductionRule> {
        // T1^2 -> 0, T2^2 -> 0, and the braid rule of length order_12
        // oriented with the T2-leading side as lhs.
        let f = Field::Q;
        let mut rules = vec![
            ReductionRule::new(w(&[a(1), a(1)]), NCPoly::zero()).unwrap(),
            ReductionRule::new(w(&[a(2), a(2)]), NCPoly::zero()).unwrap(),
        ];
        if order_12 > 2 {
            let lhs: Vec<Generator> = (0..order_12)
                .map(|t| if t % 2 == 0 { a(2) } else { a(1) })
                .collect();
            let rhs: Vec<Generator> = (0..order_12)
                .map(|t| if t % 2 == 0 { a(1) } else { a(2) })
                .collect();
            rules.push(
                ReductionRule::new(Word(lhs), NCPoly::from_word(Word(rhs), f.one())).unwrap(),
            );
        } else {
            let f = Field::Q;
            rules.push(
                ReductionRule::new(
                    w(&[a(2), a(1)]),
                    NCPoly::from_word(w(&[a(1), a(2)]), f.one()),
                )
                .unwrap(),
            );
        }
        rules
    }

    #[test]
    fn nil_coxeter_a2_completes_to_dimension_six() {
        let sys = ReductionSystem::new(nil_coxeter_rules(3)).unwrap();
        let out = sys.knuth_bendix_bounded(8, 10_000).unwrap();
        assert!(out.complete);
        let basis = out.system.enumerate_basis(&[a(1), a(2)], 8);
        assert!(basis.saturated);
        assert_eq!(basis.total(), 6);
    }

    #[test]
    fn nil_coxeter_b2_completes_to_dimension_eight() {
        let sys = ReductionSystem::new(nil_coxeter_rules(4)).unwrap();
        let out = sys.knuth_bendix_bounded(10, 10_000).unwrap();
        assert!(out.complete);
        let basis = out.system.enumerate_basis(&[a(1), a(2)], 10);
        assert!(basis.saturated);
        assert_eq!(basis.total(), 8);
    }

    #[test]
    fn unresolvable_system_gains_rules() {
        // T^2 -> 0 together with a rank-dropping extra relation: T a - a T
        // style conflicts force new rules; here use {aa -> a1... } simple:
        // {bb -> b, bab -> 1}: overlap bbab resolves to a new rule.
        let f = Field::Q;
        let r1 = ReductionRule::new(
            w(&[a(2), a(2)]),
            NCPoly::from_word(w(&[a(2)]), f.one()),
        )
        .unwrap();
        let r2 = ReductionRule::new(
            w(&[a(2), a(1), a(2)]),
            NCPoly::from_word(Word::empty(), f.one()),
        )
        .unwrap();
        let sys = ReductionSystem::new(vec![r1, r2]).unwrap();
        let out = sys.knuth_bendix_bounded(10, 10_000).unwrap();
        // Whatever the completed form, it must be locally confluent within
        // the cap: every bounded ambiguity resolves.
        for amb in out.system.enumerate_ambiguities() {
            if amb.overlap_word.len() <= 10 {
                assert!(out
                    .system
                    .resolve_ambiguity(&amb, 10_000)
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn saturation_flag_false_for_infinite_algebras() {
        let basis = weyl_system().enumerate_basis(&[x(0), x(1)], 5);
        assert!(!basis.saturated);
        // Irreducible words of length n avoiding x2 x1: the weakly
        // increasing words, C(n+1, 1)... over 2 letters: n+1 of them.
        for (n, level) in basis.by_length.iter().enumerate() {
            assert_eq!(level.len(), n + 1);
        }
    }
}
