//! The projections μ, ν: VBₙ → Sₙ, χ: VBₙ → Mₙ, ε: Hₙ → Sₙ and η₁, η₂: Mₙ → Sₙ.

use crate::alphabet::{Alphabet, AlphabetWord};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::{MElement, MGroup, Perm, SymmetricGroup};
use crate::word::{BraidWord, LetterKind};

/// μ(σᵢ) = 1, μ(ρᵢ) = ρᵢ. Its kernel is Hₙ.
pub fn mu(w: &BraidWord) -> Perm {
    let s = SymmetricGroup::new(w.strands());
    w.evaluate(&s, |k, i| {
        Some(match k {
            LetterKind::Sigma => Perm::identity(w.strands()),
            LetterKind::Rho => s.gen(i),
        })
    })
    .expect("total image")
}

/// ν(σᵢ) = ν(ρᵢ) = ρᵢ. Its kernel is VPₙ.
pub fn nu(w: &BraidWord) -> Perm {
    let s = SymmetricGroup::new(w.strands());
    w.evaluate(&s, |_, i| Some(s.gen(i))).expect("total image")
}

/// χ(σᵢ) = sᵢ, χ(ρᵢ) = tᵢ. Its kernel is EPₙ.
pub fn chi(w: &BraidWord) -> MElement {
    let m = MGroup::new(w.strands());
    w.evaluate(&m, |k, i| {
        Some(match k {
            LetterKind::Sigma => m.s(i),
            LetterKind::Rho => m.t(i),
        })
    })
    .expect("total image")
}

/// ε(x_{i,j}) = ε(x_{j,i}) = (i j).
pub fn epsilon(w: &AlphabetWord) -> Result<Perm> {
    if w.alphabet() != Alphabet::X {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::X.name(),
            found: w.alphabet().name(),
        });
    }
    let n = w.strands();
    let s = SymmetricGroup::new(n);
    Ok(w.letters().iter().fold(s.identity(), |acc, l| {
        acc.then(&Perm::transposition(n, l.i, l.j))
    }))
}

pub fn eta1(m: &MElement) -> Perm {
    m.right.clone()
}

pub fn eta2(m: &MElement) -> Perm {
    m.left.then(&m.right)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub in_h: bool,
    pub in_vp: bool,
    pub in_ep: bool,
}

pub fn membership(w: &BraidWord) -> Membership {
    let flags = Membership {
        in_h: mu(w).is_identity(),
        in_vp: nu(w).is_identity(),
        in_ep: chi(w).is_identity(),
    };
    debug_assert_eq!(flags.in_ep, flags.in_h && flags.in_vp);
    flags
}
