//! Reidemeister–Schreier rewriting of kernel words into the x (Hₙ = ker μ)
//! and λ (VPₙ = ker ν) alphabets, and the semidirect decompositions.
//!
//! With the left-to-right convention for permutations, conjugating by a
//! ρ-word k moves indices by the inverse of k's value: k·x_{i,j}·k⁻¹ is
//! x_{f(i),f(j)} with f = value(k)⁻¹. For a single ρᵢ the two coincide.

use std::fmt;

use crate::alphabet::{Alphabet, AlphabetWord, PairLetter};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::project::{mu, nu};
use crate::transversal::Transversal;
use crate::word::{BraidWord, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Hₙ, the kernel of μ, over x-letters.
    H,
    /// VPₙ, the kernel of ν, over λ-letters.
    VP,
}

impl Target {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            Target::H => Alphabet::X,
            Target::VP => Alphabet::Lambda,
        }
    }

    pub fn project(&self, w: &BraidWord) -> Perm {
        match self {
            Target::H => mu(w),
            Target::VP => nu(w),
        }
    }

    pub fn map_name(&self) -> &'static str {
        match self {
            Target::H => "mu",
            Target::VP => "nu",
        }
    }

    fn letter_image(&self, l: &Letter, n: usize) -> Perm {
        if !l.is_sigma() || *self == Target::VP {
            Perm::transposition(n, l.index(), l.index() + 1)
        } else {
            Perm::identity(n)
        }
    }
}

/// The defining braid word of a λ- or x-letter.
pub fn expand(l: &PairLetter, n: usize) -> BraidWord {
    let (lo, hi) = (l.i.min(l.j), l.i.max(l.j));
    // ρ_{hi−1} ⋯ ρ_{lo+1}
    let outer: Vec<Letter> = (lo + 1..hi).rev().map(Letter::rho).collect();
    let core: Vec<Letter> = match (l.alphabet, l.i < l.j) {
        // λ_{lo,lo+1} = ρ_lo σ_lo⁻¹
        (Alphabet::Lambda, true) => vec![Letter::rho(lo), Letter::sigma(lo, -1)],
        // λ_{lo+1,lo} = σ_lo⁻¹ ρ_lo
        (Alphabet::Lambda, false) => vec![Letter::sigma(lo, -1), Letter::rho(lo)],
        // x_{lo,lo+1} = σ_lo
        (Alphabet::X, true) => vec![Letter::sigma(lo, 1)],
        // x_{lo+1,lo} = ρ_lo σ_lo ρ_lo
        (Alphabet::X, false) => vec![Letter::rho(lo), Letter::sigma(lo, 1), Letter::rho(lo)],
    };
    let mut letters = outer.clone();
    letters.extend(core);
    letters.extend(outer.iter().rev());
    let word = BraidWord::from_letters(n, letters);
    if l.sign < 0 {
        word.invert()
    } else {
        word
    }
}

pub fn expand_word(w: &AlphabetWord) -> BraidWord {
    let n = w.strands();
    let letters = w
        .letters()
        .iter()
        .flat_map(|l| expand(l, n).letters().to_vec())
        .collect();
    BraidWord::from_letters(n, letters)
}

/// One factor s_{k,a}^ε of the rewriting, with its raw braid form
/// `rep(prefix before a) · a^ε · rep(prefix through a)⁻¹`.
#[derive(Debug, Clone)]
pub struct SchreierFactor {
    pub letter: Letter,
    pub before: Vec<usize>,
    pub after: Vec<usize>,
    /// `None` for ρ letters, whose Schreier generators are trivial.
    pub emitted: Option<PairLetter>,
}

impl SchreierFactor {
    pub fn raw(&self, n: usize) -> BraidWord {
        let mut letters: Vec<Letter> = self.before.iter().map(|&i| Letter::rho(i)).collect();
        letters.push(self.letter);
        letters.extend(self.after.iter().rev().map(|&i| Letter::rho(i)));
        BraidWord::from_letters(n, letters)
    }
}

fn check_kernel(w: &BraidWord, target: Target) -> Result<()> {
    let image = target.project(w);
    if image.is_identity() {
        Ok(())
    } else {
        Err(Error::NotInKernel {
            map: target.map_name(),
            image: image.to_string(),
        })
    }
}

/// The rewriting process τ, factor by factor.
pub fn rewrite_factors(w: &BraidWord, target: Target) -> Result<Vec<SchreierFactor>> {
    check_kernel(w, target)?;
    let n = w.strands();
    let transversal = Transversal::get(n);
    let mut prefix = Perm::identity(n);
    let mut out = Vec::with_capacity(w.len());
    for l in w.letters() {
        let next = prefix.then(&target.letter_image(l, n));
        let emitted = if l.is_sigma() {
            // coset of the (j−1)th prefix for ε = +1, of the jth for ε = −1
            let k = if l.sign() > 0 { &prefix } else { &next };
            let f = k.inverse();
            let (a, b) = (f.apply(l.index()), f.apply(l.index() + 1));
            Some(match target {
                Target::H => PairLetter::x(a, b, l.sign()),
                Target::VP => PairLetter::lambda(a, b, -l.sign()),
            })
        } else {
            None
        };
        out.push(SchreierFactor {
            letter: *l,
            before: transversal.rep_indices(&prefix).to_vec(),
            after: transversal.rep_indices(&next).to_vec(),
            emitted,
        });
        prefix = next;
    }
    Ok(out)
}

pub fn rewrite(w: &BraidWord, target: Target) -> Result<AlphabetWord> {
    let letters = rewrite_factors(w, target)?
        .into_iter()
        .filter_map(|f| f.emitted)
        .collect();
    Ok(AlphabetWord::from_letters(w.strands(), target.alphabet(), letters))
}

/// (pure part, permutation) in VPₙ ⋊ Sₙ or Hₙ ⋊ Sₙ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectElt {
    pub pure: AlphabetWord,
    pub perm: Perm,
}

impl fmt::Display for SemidirectElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pure.is_empty() {
            write!(f, "(1 ; {})", self.perm)
        } else {
            write!(f, "({} ; {})", self.pure, self.perm)
        }
    }
}

fn decompose(w: &BraidWord, target: Target) -> SemidirectElt {
    let perm = target.project(w);
    let rep = Transversal::get(w.strands()).rep(&perm);
    let pure_word = w
        .concat(&rep.invert())
        .expect("same strand count")
        .free_reduce();
    let pure = rewrite(&pure_word, target).expect("w·rep⁻¹ lies in the kernel");
    SemidirectElt { pure, perm }
}

/// ω(v) = (v·(s∘ν)(v)⁻¹, ν(v)) ∈ VPₙ ⋊ Sₙ.
pub fn omega(w: &BraidWord) -> SemidirectElt {
    decompose(w, Target::VP)
}

/// The analogue of ω for VBₙ ≅ Hₙ ⋊ Sₙ, split along μ.
pub fn h_decompose(w: &BraidWord) -> SemidirectElt {
    decompose(w, Target::H)
}

/// Moves both indices through `p`; the sign is kept.
pub fn act(p: &Perm, l: &PairLetter) -> PairLetter {
    PairLetter::new(l.alphabet, p.apply(l.i), p.apply(l.j), l.sign)
}

pub fn act_word(p: &Perm, w: &AlphabetWord) -> AlphabetWord {
    AlphabetWord::from_letters(
        w.strands(),
        w.alphabet(),
        w.letters().iter().map(|l| act(p, l)).collect(),
    )
}

/// The forgetting map φ: VPₙ → VPₙ₋₁ killing every λ with an index n.
pub fn forget(w: &AlphabetWord) -> Result<AlphabetWord> {
    if w.alphabet() != Alphabet::Lambda {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::Lambda.name(),
            found: w.alphabet().name(),
        });
    }
    let n = w.strands();
    if n < 3 {
        return Err(Error::TooFewStrands(n.saturating_sub(1)));
    }
    let letters = w
        .letters()
        .iter()
        .filter(|l| l.i != n && l.j != n)
        .copied()
        .collect();
    Ok(AlphabetWord::from_letters(n - 1, Alphabet::Lambda, letters))
}

/// Normal form in VB₂ = ⟨σ₁⟩ * ⟨ρ₁ | ρ₁²⟩: alternating σ₁-powers and single ρ₁.
pub fn vb2_normal_form(w: &BraidWord) -> Result<BraidWord> {
    if w.strands() != 2 {
        return Err(Error::WrongStrandCount {
            expected: 2,
            got: w.strands(),
        });
    }
    Ok(w.free_reduce())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_alphabet_word;
    use crate::project::chi;
    use crate::word::parse_word;

    fn w(text: &str, n: usize) -> BraidWord {
        parse_word(text, n).unwrap()
    }

    fn aw(text: &str, n: usize) -> AlphabetWord {
        parse_alphabet_word(text, n, Alphabet::Lambda).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(&PairLetter::x(1, 2, 1), 2), w("s1", 2));
        assert_eq!(expand(&PairLetter::lambda(2, 1, 1), 2), w("s1^-1 r1", 2));
        assert_eq!(expand(&PairLetter::x(1, 3, 1), 3), w("r2 s1 r2", 3));
        assert_eq!(expand(&PairLetter::lambda(1, 2, 1), 2), w("r1 s1^-1", 2));
        assert_eq!(expand(&PairLetter::x(2, 1, 1), 2), w("r1 s1 r1", 2));
        assert_eq!(expand(&PairLetter::x(4, 1, 1), 4), w("r3 r2 r1 s1 r1 r2 r3", 4));
        assert_eq!(expand(&PairLetter::lambda(1, 3, -1), 3), w("r2 s1 r1 r2", 3));
    }

    #[test]
    fn rewrite_examples() {
        assert_eq!(rewrite(&w("s1", 2), Target::H).unwrap().to_string(), "x[1,2]");
        assert_eq!(rewrite(&w("r1 s1^-1", 2), Target::VP).unwrap().to_string(), "l[1,2]");
        assert_eq!(
            rewrite(&w("s1 s2 s1 s2^-1 s1^-1 s2^-1", 3), Target::H)
                .unwrap()
                .to_string(),
            "x[1,2] x[2,3] x[1,2] x[2,3]^-1 x[1,2]^-1 x[2,3]^-1"
        );
    }

    #[test]
    fn rewrite_rejects_non_kernel() {
        let err = rewrite(&w("r1", 3), Target::H).unwrap_err();
        assert_eq!(
            err,
            Error::NotInKernel {
                map: "mu",
                image: "(1 2)".into()
            }
        );
        assert!(matches!(
            rewrite(&w("s1", 2), Target::VP),
            Err(Error::NotInKernel { map: "nu", .. })
        ));
    }

    #[test]
    fn rewrite_of_expansion_is_identity_on_letters() {
        for n in 2..=5 {
            for (i, j) in crate::alphabet::pair_order(n) {
                for sign in [1, -1] {
                    let l = PairLetter::lambda(i, j, sign);
                    assert_eq!(rewrite(&expand(&l, n), Target::VP).unwrap().letters(), &[l]);
                    let x = PairLetter::x(i, j, sign);
                    assert_eq!(rewrite(&expand(&x, n), Target::H).unwrap().letters(), &[x]);
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let o = omega(&w("r1", 2));
        assert!(o.pure.is_empty());
        assert_eq!(o.perm, Perm::transposition(2, 1, 2));
        let o = omega(&w("s1^-1", 2));
        assert_eq!(o.pure.to_string(), "l[2,1]");
        assert_eq!(o.perm, Perm::transposition(2, 1, 2));
        let o = omega(&w("s1", 2));
        assert_eq!(o.pure.to_string(), "l[1,2]^-1");
        assert_eq!(o.to_string(), "(l[1,2]^-1 ; (1 2))");
    }

    #[test]
    fn h_decompose_examples() {
        let h = h_decompose(&w("s1 r2", 3));
        assert_eq!(h.pure.to_string(), "x[1,2]");
        assert_eq!(h.perm, Perm::transposition(3, 2, 3));
        let h = h_decompose(&w("r1", 2));
        assert!(h.pure.is_empty());
        let h = h_decompose(&w("r1 s1 r1", 2));
        assert_eq!(h.pure.to_string(), "x[2,1]");
        assert!(h.perm.is_identity());
    }

    #[test]
    fn act_examples() {
        let cyc = Perm::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(act(&Perm::transposition(3, 1, 2), &PairLetter::x(1, 3, 1)), PairLetter::x(2, 3, 1));
        assert_eq!(act(&Perm::identity(3), &PairLetter::lambda(2, 1, -1)), PairLetter::lambda(2, 1, -1));
        assert_eq!(act(&cyc, &PairLetter::lambda(1, 2, 1)), PairLetter::lambda(2, 3, 1));
    }

    #[test]
    fn forget_examples() {
        assert!(forget(&aw("l[1,3]", 3)).unwrap().is_empty());
        let f = forget(&aw("l[1,2]", 3)).unwrap();
        assert_eq!((f.to_string(), f.strands()), ("l[1,2]".to_string(), 2));
        assert_eq!(forget(&aw("l[3,2] l[1,2]", 3)).unwrap().to_string(), "l[1,2]");
        let x = parse_alphabet_word("x[1,2]", 3, Alphabet::X).unwrap();
        assert!(matches!(forget(&x), Err(Error::WrongAlphabet { .. })));
        assert!(forget(&aw("l[1,2]", 2)).is_err());
    }

    #[test]
    fn vb2_examples() {
        let nf = |s: &str| vb2_normal_form(&w(s, 2)).unwrap().to_string();
        assert_eq!(nf("s1 r1 r1 s1"), "s1 s1");
        assert_eq!(nf("s1 s1^-1"), "");
        assert_eq!(nf("r1 s1 r1 s1"), "r1 s1 r1 s1");
        assert!(vb2_normal_form(&w("s1", 3)).is_err());
    }

    #[test]
    fn emitted_letters_agree_under_chi() {
        // x-letters and λ-letters expand to braid words with the same χ-image as their raw factor
        let word = w("r1 s2 r1 r2 s1^-1 r2 r1 s2 r1 s1 r2 r1", 3);
        let word = word.concat(&Transversal::get(3).rep(&mu(&word)).invert()).unwrap();
        for f in rewrite_factors(&word, Target::H).unwrap() {
            if let Some(l) = f.emitted {
                assert_eq!(chi(&f.raw(3)), chi(&expand(&l, 3)));
            }
        }
    }
}
