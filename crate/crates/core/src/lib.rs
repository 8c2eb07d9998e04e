//! Computational tools for virtual braid groups VBₙ.
//!
//! Words in σᵢ, ρᵢ, the projections onto Sₙ and Sₙ ⋊ Sₙ, Reidemeister–Schreier
//! rewriting into the λ (VPₙ) and x (Hₙ) alphabets, abelianizations and
//! Γ₂/Γ₃ sections of finite presentations, and the universal degree-d
//! Goussarov–Polyak–Viro invariant computed in ℤ[VPₙ]/I^{d+1}.

pub mod alphabet;
pub mod class2;
pub mod error;
pub mod gpv;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod presentation;
pub mod project;
pub mod quotients;
pub mod rewrite;
pub mod series;
pub mod suites;
pub mod transversal;
pub mod word;

pub use alphabet::{parse_alphabet_word, Alphabet, AlphabetWord, PairLetter};
pub use error::{Error, Result};
pub use group::Group;
pub use perm::{MElement, MGroup, Perm, SymmetricGroup};
pub use presentation::{build_presentation, check_homomorphism, split_components, Family, Presentation};
pub use project::{chi, epsilon, eta1, eta2, membership, mu, nu, Membership};
pub use rewrite::{
    act, expand, forget, h_decompose, omega, rewrite, vb2_normal_form, SemidirectElt, Target,
};
pub use transversal::{schreier_rep, Transversal};
pub use word::{parse_word, BraidWord, Letter, LetterKind};
