//! Words in the free monoid on a two-sorted alphabet.
//!
//! Letters are module generators `x_i` (0-based) and algebra generators `a_j`
//! with `j >= 1`; the algebra unit `a_0` is the empty word and is never stored
//! as a letter.  The semigroup order is degree-lexicographic for the letter
//! order `x_0 < x_1 < ... < a_1 < a_2 < ...`, so every module letter is
//! smaller than every algebra letter.

use std::cmp::Ordering;
use std::fmt;

/// One letter of a word.  The derived `Ord` is exactly the letter order used
/// by the degree-lex comparison: `Module(_) < Algebra(_)`, and within a sort
/// letters compare by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `x_i`, a basis vector of the module `V`.
    Module(u16),
    /// `a_j` with `j >= 1`, a non-unit basis vector of the algebra `A`.
    Algebra(u16),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Module(i) => write!(f, "x{}", i + 1),
            Generator::Algebra(j) => write!(f, "a{}", j),
        }
    }
}

/// A word; the empty word is the unit of the free monoid (and represents the
/// algebra unit `a_0` after unit normalization).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(g: Generator) -> Word {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Leftmost starting index at which `pat` occurs as a factor, if any.
    pub fn find_factor(&self, pat: &Word) -> Option<usize> {
        if pat.is_empty() || pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.0[i..i + pat.len()] == pat.0[..])
    }

    pub fn contains_factor(&self, pat: &Word) -> bool {
        self.find_factor(pat).is_some()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

/// Degree-lexicographic comparison: longer words are larger; equal lengths
/// compare letterwise by the canonical letter order.
pub fn deglex_compare(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0))
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        deglex_compare(self, other)
    }
}

/// Termination certificate for the deformed smash product reduction system:
/// `o + p + p*r + q + r^3`, where `o` counts inversions among module letters,
/// `p` counts (algebra letter, later module letter) pairs, `q` counts algebra
/// letters, and `r` counts module letters.  Every single reduction step of
/// the deformed relations strictly decreases this value on the rewritten
/// monomial.
pub fn misordering_index(w: &Word) -> u64 {
    let mut o = 0u64;
    let mut p = 0u64;
    let mut q = 0u64;
    let mut r = 0u64;
    for (k, g) in w.0.iter().enumerate() {
        match g {
            Generator::Module(i) => {
                r += 1;
                o += w.0[..k]
                    .iter()
                    .filter(|h| matches!(h, Generator::Module(i2) if i2 > i))
                    .count() as u64;
                p += w.0[..k]
                    .iter()
                    .filter(|h| matches!(h, Generator::Algebra(_)))
                    .count() as u64;
            }
            Generator::Algebra(_) => q += 1,
        }
    }
    o + p + p * r + q + r * r * r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u16) -> Generator {
        Generator::Module(i)
    }
    fn a(j: u16) -> Generator {
        Generator::Algebra(j)
    }

    #[test]
    fn deglex_examples() {
        // x2 x1 > x1 a1: equal length, first letters x2 > x1.
        let w1 = Word(vec![x(1), x(0)]);
        let w2 = Word(vec![x(0), a(1)]);
        assert_eq!(deglex_compare(&w1, &w2), Ordering::Greater);
        // Length dominates.
        assert!(Word(vec![x(0), x(0), x(0)]) > Word(vec![a(5), a(5)]));
        // Module letters are smaller than algebra letters.
        assert!(Word(vec![x(7)]) < Word(vec![a(1)]));
        assert!(Word::empty() < Word(vec![x(0)]));
    }

    /// Brute-force oracle: sort all words of bounded length by (len, letters)
    /// using the derived letter order, and check deglex agrees pairwise.
    #[test]
    fn deglex_total_order_matches_bruteforce() {
        let letters = [x(0), x(1), a(1), a(2)];
        let mut words = vec![Word::empty()];
        for _ in 0..3 {
            let prev: Vec<Word> = words.clone();
            for w in prev {
                for &g in &letters {
                    let mut v = w.0.clone();
                    v.push(g);
                    words.push(Word(v));
                }
            }
        }
        words.sort();
        words.dedup();
        for i in 0..words.len() {
            for j in 0..words.len() {
                let expect = (words[i].len(), &words[i].0).cmp(&(words[j].len(), &words[j].0));
                assert_eq!(deglex_compare(&words[i], &words[j]), expect);
            }
        }
    }

    #[test]
    fn misordering_examples() {
        // a1 x1: o=0, p=1, q=1, r=1 => 0 + 1 + 1 + 1 + 1 = 4.
        assert_eq!(misordering_index(&Word(vec![a(1), x(0)])), 4);
        // x2 x1: o=1, p=0, q=0, r=2 => 1 + 0 + 0 + 0 + 8 = 9.
        assert_eq!(misordering_index(&Word(vec![x(1), x(0)])), 9);
        // Empty word.
        assert_eq!(misordering_index(&Word::empty()), 0);
        // A normal-form word x1 x2 a1: o=0, p=0, q=1, r=2 => 0+0+0+1+8.
        assert_eq!(misordering_index(&Word(vec![x(0), x(1), a(1)])), 9);
    }

    #[test]
    fn misordering_direct_count_oracle() {
        // Independent O(n^2) recount on a fixed word with all pair types.
        let w = Word(vec![a(2), x(1), x(0), a(1), x(2), x(0)]);
        // module letters at positions 1,2,4,5 -> r=4; algebra letters -> q=2.
        // inversions among (x1,x0,x2,x0): (x1,x0),(x1,x0'),(x2,x0') -> o=3.
        // algebra-before-module pairs: a2 before all 4, a1 before 2 -> p=6.
        assert_eq!(misordering_index(&w), 3 + 6 + 6 * 4 + 2 + 64);
    }

    #[test]
    fn factor_search() {
        let w = Word(vec![a(1), x(0), x(1), x(0)]);
        assert_eq!(w.find_factor(&Word(vec![x(0)])), Some(1));
        assert_eq!(w.find_factor(&Word(vec![x(1), x(0)])), Some(2));
        assert_eq!(w.find_factor(&Word(vec![x(1), x(1)])), None);
        assert_eq!(w.find_factor(&Word::empty()), None);
    }
}
