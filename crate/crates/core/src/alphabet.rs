//! Words over the λ_{i,j} (generators of VPₙ) or x_{i,j} (generators of Hₙ).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Lambda,
    X,
}

impl Alphabet {
    pub fn name(&self) -> &'static str {
        match self {
            Alphabet::Lambda => "lambda",
            Alphabet::X => "x",
        }
    }

    fn prefix(&self) -> char {
        match self {
            Alphabet::Lambda => 'l',
            Alphabet::X => 'x',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairLetter {
    pub alphabet: Alphabet,
    pub i: usize,
    pub j: usize,
    pub sign: i8,
}

impl PairLetter {
    pub fn new(alphabet: Alphabet, i: usize, j: usize, sign: i8) -> Self {
        debug_assert!(i != j && i >= 1 && j >= 1);
        PairLetter {
            alphabet,
            i,
            j,
            sign: if sign < 0 { -1 } else { 1 },
        }
    }

    pub fn lambda(i: usize, j: usize, sign: i8) -> Self {
        Self::new(Alphabet::Lambda, i, j, sign)
    }

    pub fn x(i: usize, j: usize, sign: i8) -> Self {
        Self::new(Alphabet::X, i, j, sign)
    }

    pub fn inverse(&self) -> Self {
        PairLetter {
            sign: -self.sign,
            ..*self
        }
    }

    /// Position of the generator in the order
    /// (1,2) < (2,1) < (1,3) < (2,3) < (3,1) < (3,2) < (1,4) < ⋯
    pub fn generator_index(&self) -> usize {
        pair_index(self.i, self.j)
    }
}

pub fn pair_index(i: usize, j: usize) -> usize {
    let k = i.max(j);
    let base = (k - 1) * (k - 2);
    if i < j {
        base + i - 1
    } else {
        base + (k - 1) + (j - 1)
    }
}

/// The ordered generator pairs for n strands; inverse of [`pair_index`].
pub fn pair_order(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1));
    for k in 2..=n {
        out.extend((1..k).map(|i| (i, k)));
        out.extend((1..k).map(|j| (k, j)));
    }
    out
}

impl fmt::Display for PairLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.alphabet.prefix(), self.i, self.j)?;
        if self.sign < 0 {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphabetWord {
    strands: usize,
    alphabet: Alphabet,
    letters: Vec<PairLetter>,
}

impl AlphabetWord {
    pub fn new(strands: usize, alphabet: Alphabet, letters: Vec<PairLetter>) -> Result<Self> {
        for l in &letters {
            if l.alphabet != alphabet {
                return Err(Error::WrongAlphabet {
                    expected: alphabet.name(),
                    found: l.alphabet.name(),
                });
            }
            for idx in [l.i, l.j] {
                if idx == 0 || idx > strands {
                    return Err(Error::IndexOutOfRange { index: idx, n: strands });
                }
            }
            if l.i == l.j {
                return Err(Error::MalformedToken(l.to_string()));
            }
        }
        Ok(AlphabetWord {
            strands,
            alphabet,
            letters,
        })
    }

    pub fn empty(strands: usize, alphabet: Alphabet) -> Self {
        AlphabetWord {
            strands,
            alphabet,
            letters: Vec::new(),
        }
    }

    pub(crate) fn from_letters(strands: usize, alphabet: Alphabet, letters: Vec<PairLetter>) -> Self {
        AlphabetWord {
            strands,
            alphabet,
            letters,
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[PairLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn invert(&self) -> Self {
        AlphabetWord {
            letters: self.letters.iter().rev().map(PairLetter::inverse).collect(),
            ..self.clone()
        }
    }

    pub fn concat(&self, other: &AlphabetWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        if self.alphabet != other.alphabet {
            return Err(Error::WrongAlphabet {
                expected: self.alphabet.name(),
                found: other.alphabet.name(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(AlphabetWord { letters, ..self.clone() })
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<PairLetter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match out.last() {
                Some(top) if *top == l.inverse() => {
                    out.pop();
                }
                _ => out.push(*l),
            }
        }
        AlphabetWord {
            letters: out,
            ..self.clone()
        }
    }

    /// Generator indices (see [`PairLetter::generator_index`]) with signs.
    pub fn as_generator_word(&self) -> Vec<(usize, i8)> {
        self.letters
            .iter()
            .map(|l| (l.generator_index(), l.sign))
            .collect()
    }
}

impl fmt::Display for AlphabetWord {
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

/// Parses `l[i,j]`, `x[i,j]` tokens, each optionally followed by `^-1`.
/// The alphabet of an empty word is `default`.
pub fn parse_alphabet_word(text: &str, n: usize, default: Alphabet) -> Result<AlphabetWord> {
    let mut letters = Vec::new();
    let mut alphabet = None;
    for tok in text.split_whitespace() {
        let l = parse_pair_letter(tok, n)?;
        match alphabet {
            None => alphabet = Some(l.alphabet),
            Some(a) if a != l.alphabet => {
                return Err(Error::WrongAlphabet {
                    expected: a.name(),
                    found: l.alphabet.name(),
                })
            }
            _ => {}
        }
        letters.push(l);
    }
    AlphabetWord::new(n, alphabet.unwrap_or(default), letters)
}

fn parse_pair_letter(tok: &str, n: usize) -> Result<PairLetter> {
    let bad = || Error::MalformedToken(tok.to_string());
    let (head, sign) = match tok.strip_suffix("^-1") {
        Some(h) => (h, -1),
        None => (tok, 1),
    };
    let alphabet = match head.chars().next() {
        Some('l') => Alphabet::Lambda,
        Some('x') => Alphabet::X,
        _ => return Err(bad()),
    };
    let inner = head[1..]
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let parse = |s: &str| -> Result<usize> {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    let (i, j) = (parse(a)?, parse(b)?);
    for idx in [i, j] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    if i == j {
        return Err(bad());
    }
    Ok(PairLetter::new(alphabet, i, j, sign))
}
