//! Letters and words over the virtual braid generators σᵢ, ρᵢ.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterKind {
    Sigma,
    Rho,
}

/// A signed generator. ρ letters always carry sign +1 since ρᵢ² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    kind: LetterKind,
    index: usize,
    sign: i8,
}

impl Letter {
    pub fn sigma(index: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter {
            kind: LetterKind::Sigma,
            index,
            sign: if sign < 0 { -1 } else { 1 },
        }
    }

    pub fn rho(index: usize) -> Self {
        Letter {
            kind: LetterKind::Rho,
            index,
            sign: 1,
        }
    }

    pub fn kind(&self) -> LetterKind {
        self.kind
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_sigma(&self) -> bool {
        self.kind == LetterKind::Sigma
    }

    pub fn inverse(&self) -> Self {
        match self.kind {
            LetterKind::Sigma => Letter::sigma(self.index, -self.sign),
            LetterKind::Rho => *self,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.kind == other.kind
            && self.index == other.index
            && (self.kind == LetterKind::Rho || self.sign == -other.sign)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.sign) {
            (LetterKind::Sigma, 1) => write!(f, "s{}", self.index),
            (LetterKind::Sigma, _) => write!(f, "s{}^-1", self.index),
            (LetterKind::Rho, _) => write!(f, "r{}", self.index),
        }
    }
}

/// An element of VBₙ given as a word. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands(strands));
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::IndexOutOfRange {
                    index: l.index,
                    n: strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        assert!(strands >= 2, "strand count must be at least 2");
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// Internal constructor for letters already known to be in range.
    pub(crate) fn from_letters(strands: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index >= 1 && l.index < strands));
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn invert(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Juxtaposition. No reduction is applied.
    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Deletes σᵢσᵢ⁻¹, σᵢ⁻¹σᵢ and ρᵢρᵢ until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match out.last() {
                Some(top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(*l),
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Left-to-right product of the generator images.
    pub fn evaluate<G, F>(&self, group: &G, image: F) -> Result<G::Elem>
    where
        G: Group,
        F: Fn(LetterKind, usize) -> Option<G::Elem>,
    {
        let mut acc = group.identity();
        for l in &self.letters {
            let g = image(l.kind, l.index).ok_or_else(|| {
                Error::MissingImage(match l.kind {
                    LetterKind::Sigma => format!("s{}", l.index),
                    LetterKind::Rho => format!("r{}", l.index),
                })
            })?;
            acc = group.mul(&acc, &group.pow(&g, l.sign));
        }
        Ok(acc)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses `s<k>`, `s<k>^-1`, `r<k>`, `r<k>^-1` tokens separated by spaces.
pub fn parse_word(text: &str, n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::TooFewStrands(n));
    }
    let mut letters = Vec::new();
    for tok in text.split(' ').filter(|t| !t.is_empty()) {
        letters.push(parse_letter(tok, n)?);
    }
    Ok(BraidWord { strands: n, letters })
}

fn parse_letter(tok: &str, n: usize) -> Result<Letter> {
    let bad = || Error::MalformedToken(tok.to_string());
    let (head, inverse) = match tok.strip_suffix("^-1") {
        Some(h) => (h, true),
        None => (tok, false),
    };
    let mut chars = head.chars();
    let kind = match chars.next() {
        Some('s') => LetterKind::Sigma,
        Some('r') => LetterKind::Rho,
        _ => return Err(bad()),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index: usize = digits.parse().map_err(|_| bad())?;
    if index == 0 || index >= n {
        return Err(Error::IndexOutOfRange { index, n });
    }
    Ok(match kind {
        LetterKind::Sigma => Letter::sigma(index, if inverse { -1 } else { 1 }),
        LetterKind::Rho => Letter::rho(index),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Perm, SymmetricGroup};

    fn w(text: &str, n: usize) -> BraidWord {
        parse_word(text, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        let word = w("s1 r2 s1^-1", 3);
        assert_eq!(
            word.letters(),
            &[Letter::sigma(1, 1), Letter::rho(2), Letter::sigma(1, -1)]
        );
        assert!(w("", 2).is_empty());
        assert_eq!(w("r1^-1", 2).letters(), &[Letter::rho(1)]);
        assert_eq!(w("s1  s1", 2).len(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_word("s3", 3),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        ));
        assert!(matches!(parse_word("s0", 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse_word("s1", 1), Err(Error::TooFewStrands(1))));
        for bad in ["x1", "s", "s1^2", "s-1", "s1^-1^-1", "S1", "r1^+1"] {
            assert!(
                matches!(parse_word(bad, 4), Err(Error::MalformedToken(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn display_roundtrip() {
        let word = w("s1 r2 s3^-1 r1", 4);
        assert_eq!(word.to_string(), "s1 r2 s3^-1 r1");
        assert_eq!(w(&word.to_string(), 4), word);
    }

    #[test]
    fn free_reduce_examples() {
        assert!(w("s1 s1^-1", 2).free_reduce().is_empty());
        assert_eq!(w("r1 r1 s2", 3).free_reduce(), w("s2", 3));
        assert!(w("s1 r2 r2 s1^-1", 3).free_reduce().is_empty());
        assert_eq!(w("s1 s1", 2).free_reduce(), w("s1 s1", 2));
        assert_eq!(w("s1 r1 s1^-1", 2).free_reduce().len(), 3);
    }

    #[test]
    fn invert_and_concat() {
        assert_eq!(w("s1 r2", 3).invert(), w("r2 s1^-1", 3));
        assert!(BraidWord::empty(3).invert().is_empty());
        let a = w("s1 r2 s2^-1 r1", 3);
        assert!(a.concat(&a.invert()).unwrap().free_reduce().is_empty());
        assert!(matches!(
            a.concat(&BraidWord::empty(4)),
            Err(Error::StrandMismatch(3, 4))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let s2 = SymmetricGroup::new(2);
        let mu = |k: LetterKind, i: usize| match k {
            LetterKind::Sigma => Some(Perm::identity(2)),
            LetterKind::Rho => Some(Perm::transposition(2, i, i + 1)),
        };
        let nu = |_: LetterKind, i: usize| Some(Perm::transposition(2, i, i + 1));
        assert_eq!(BraidWord::empty(2).evaluate(&s2, mu).unwrap(), Perm::identity(2));
        assert_eq!(w("s1", 2).evaluate(&s2, mu).unwrap(), Perm::identity(2));
        assert_eq!(
            w("s1", 2).evaluate(&s2, nu).unwrap(),
            Perm::transposition(2, 1, 2)
        );
        let partial = |k: LetterKind, _: usize| match k {
            LetterKind::Sigma => None,
            LetterKind::Rho => Some(Perm::identity(2)),
        };
        assert!(matches!(
            w("r1 s1", 2).evaluate(&s2, partial),
            Err(Error::MissingImage(g)) if g == "s1"
        ));
    }
}
