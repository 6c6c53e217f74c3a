//! Sparse noncommutative polynomials: finite formal sums of words with
//! nonzero field coefficients, stored in a `BTreeMap` keyed by the degree-lex
//! order so that iteration, equality, and printing are canonical.

use crate::scalar::Scalar;
use crate::word::Word;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn from_word(w: Word, c: Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    /// The degree-lex-largest word with nonzero coefficient.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    /// Add `c * w`, dropping the term if the coefficient cancels to zero.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            None => {
                self.terms.insert(w, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale_neg())
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (w.clone(), d.mul(c)))
                .collect(),
        }
    }

    fn scale_neg(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (w.clone(), d.neg()))
                .collect(),
        }
    }

    /// Bilinear extension of word concatenation.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    /// `prefix * self * suffix` for plain words.
    pub fn sandwich(&self, prefix: &Word, suffix: &Word) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (prefix.concat(w).concat(suffix), c.clone()))
                .collect(),
        }
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> NCPoly {
        match self.leading_coeff() {
            None => NCPoly::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Largest term first reads naturally for normal forms.
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = c.display_signed();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == "1" {
                write!(f, "{}", w)?;
            } else {
                write!(f, "{} {}", mag, w)?;
            }
        }
        Ok(())
    }
}
