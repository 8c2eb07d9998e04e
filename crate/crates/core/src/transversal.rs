//! The Schreier transversal Λₙ of ⟨ρ₁,…,ρₙ₋₁⟩ ≅ Sₙ.
//!
//! Words have the shape (ρ_{i₁} ρ_{i₁−1} ⋯ ρ_{i₁−r₁}) ⋯ (ρ_{i_p} ⋯ ρ_{i_p−r_p})
//! with i₁ < ⋯ < i_p and 0 ≤ r_j < i_j. The set is prefix closed.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::perm::{Perm, SymmetricGroup};
use crate::word::{BraidWord, Letter};

#[derive(Debug)]
pub struct Transversal {
    n: usize,
    lookup: HashMap<Perm, Vec<usize>>,
}

impl Transversal {
    pub fn build(n: usize) -> Self {
        assert!(n >= 2);
        let s = SymmetricGroup::new(n);
        let mut lookup = HashMap::new();
        for word in lambda_words(n) {
            let perm = word
                .iter()
                .fold(Perm::identity(n), |acc, &i| acc.then(&s.gen(i)));
            let prev = lookup.insert(perm, word);
            assert!(prev.is_none(), "two transversal words with equal value");
        }
        Transversal { n, lookup }
    }

    /// Shared, lazily built instance for `n` strands.
    pub fn get(n: usize) -> Arc<Transversal> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Transversal>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(Transversal::build(n)))
            .clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.lookup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lookup.is_empty()
    }

    /// ρ-indices of the representative of `p`.
    pub fn rep_indices(&self, p: &Perm) -> &[usize] {
        &self.lookup[p]
    }

    pub fn rep(&self, p: &Perm) -> BraidWord {
        BraidWord::from_letters(
            self.n,
            self.rep_indices(p).iter().map(|&i| Letter::rho(i)).collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Perm, &Vec<usize>)> {
        self.lookup.iter()
    }
}

/// Enumerates the Λₙ words as ρ-index sequences, in a fixed order.
pub fn lambda_words(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 1..n {
        let mut next = Vec::with_capacity(out.len() * (i + 1));
        for prefix in &out {
            next.push(prefix.clone());
            for r in 0..i {
                let mut w = prefix.clone();
                w.extend((i - r..=i).rev());
                next.push(w);
            }
        }
        out = next;
    }
    out
}

pub fn schreier_rep(p: &Perm) -> BraidWord {
    Transversal::get(p.degree()).rep(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_and_distinct_values() {
        let mut fact = 1;
        for n in 2..=6 {
            fact *= n;
            let words = lambda_words(n);
            assert_eq!(words.len(), fact);
            let t = Transversal::build(n);
            assert_eq!(t.len(), fact);
            let distinct: HashSet<_> = words.iter().collect();
            assert_eq!(distinct.len(), fact);
        }
    }

    #[test]
    fn prefix_closed() {
        let words: HashSet<Vec<usize>> = lambda_words(5).into_iter().collect();
        for w in &words {
            for k in 0..w.len() {
                assert!(words.contains(&w[..k].to_vec()), "{w:?}");
            }
        }
    }

    #[test]
    fn reps_in_s3() {
        let t = Transversal::build(3);
        assert!(t.rep(&Perm::identity(3)).is_empty());
        assert_eq!(t.rep(&Perm::transposition(3, 1, 3)).to_string(), "r1 r2 r1");
        assert_eq!(t.rep(&Perm::transposition(3, 1, 2)).to_string(), "r1");
    }

    #[test]
    fn brute_force_s3_matching() {
        // every Λ₃ word, evaluated independently, is the stored representative of its value
        let s = SymmetricGroup::new(3);
        let t = Transversal::build(3);
        let all = ["", "r1", "r2", "r2 r1", "r1 r2", "r1 r2 r1"];
        for text in all {
            let idx: Vec<usize> = text
                .split_whitespace()
                .map(|tok| tok[1..].parse().unwrap())
                .collect();
            let mut p = Perm::identity(3);
            for &i in &idx {
                p = p.then(&s.gen(i));
            }
            assert_eq!(t.rep_indices(&p), idx.as_slice());
        }
    }
}
