//! Truncated noncommutative power series ℤ⟨a₁, …, a_m⟩ / (degree > d), the
//! coordinates of ℤ[G]/I^{d+1} with aᵢ = gᵢ − 1.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::presentation::GenLetter;

/// Dense length-then-lexicographic numbering of monomials of length ≤ d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialIndex {
    m: usize,
    d: usize,
}

impl MonomialIndex {
    pub fn new(m: usize, d: usize) -> Self {
        let idx = MonomialIndex { m, d };
        assert!(idx.try_dim().is_some(), "monomial space m={m} d={d} is too large");
        idx
    }

    fn try_dim(&self) -> Option<usize> {
        (0..=self.d as u32).try_fold(0usize, |acc, k| acc.checked_add(self.m.checked_pow(k)?))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// B(d) = Σ_{k ≤ d} m^k
    pub fn dim(&self) -> usize {
        self.offset(self.d + 1)
    }

    /// Index of the first monomial of length `len`.
    pub fn offset(&self, len: usize) -> usize {
        (0..len as u32).map(|k| self.m.pow(k)).sum()
    }

    pub fn index(&self, mono: &[usize]) -> usize {
        debug_assert!(mono.len() <= self.d && mono.iter().all(|&g| g < self.m));
        self.offset(mono.len()) + mono.iter().fold(0, |acc, &g| acc * self.m + g)
    }

    pub fn len_of(&self, index: usize) -> usize {
        (0..=self.d).rev().find(|&l| self.offset(l) <= index).unwrap()
    }

    pub fn monomial(&self, index: usize) -> Vec<usize> {
        let len = self.len_of(index);
        let mut rank = index - self.offset(len);
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = rank % self.m;
            rank /= self.m;
        }
        out
    }

    /// Index of the concatenation, or None if it is longer than d.
    pub fn concat(&self, a: usize, b: usize) -> Option<usize> {
        let (la, lb) = (self.len_of(a), self.len_of(b));
        if la + lb > self.d {
            return None;
        }
        let ra = a - self.offset(la);
        let rb = b - self.offset(lb);
        Some(self.offset(la + lb) + ra * self.m.pow(lb as u32) + rb)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    index: MonomialIndex,
    terms: BTreeMap<usize, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(index: MonomialIndex) -> Self {
        TruncatedSeries {
            index,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(index: MonomialIndex) -> Self {
        let mut s = Self::zero(index);
        s.terms.insert(0, BigInt::one());
        s
    }

    pub fn monomial(index: MonomialIndex, mono: &[usize], coeff: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(index);
        if mono.len() <= index.d() {
            s.add_term(index.index(mono), coeff.into());
        }
        s
    }

    pub fn index(&self) -> MonomialIndex {
        self.index
    }

    pub fn degree_bound(&self) -> usize {
        self.index.d()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &[usize]) -> BigInt {
        if mono.len() > self.index.d() {
            return BigInt::zero();
        }
        self.terms.get(&self.index.index(mono)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn add_term(&mut self, at: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(at).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&at);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &BigInt::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-BigInt::one())
    }

    pub fn add_scaled(&self, other: &Self, c: &BigInt) -> Self {
        assert_eq!(self.index, other.index);
        let mut out = self.clone();
        for (&k, v) in &other.terms {
            out.add_term(k, v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.index, other.index);
        let mut out = Self::zero(self.index);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if let Some(ab) = self.index.concat(a, b) {
                    out.add_term(ab, x * y);
                }
            }
        }
        out
    }

    /// Dense coefficient vector of length B(d).
    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.index.dim()];
        for (&k, c) in &self.terms {
            v[k] = c.clone();
        }
        v
    }

    pub fn from_dense(index: MonomialIndex, v: &[BigInt]) -> Self {
        assert_eq!(v.len(), index.dim());
        TruncatedSeries {
            index,
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// Applies a substitution aᵢ ↦ a_{f(i)} to every monomial.
    pub fn relabel(&self, f: &dyn Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.index);
        for (&k, c) in &self.terms {
            let mono: Vec<usize> = self.index.monomial(k).into_iter().map(f).collect();
            out.add_term(self.index.index(&mono), c.clone());
        }
        out
    }

    /// Right multiplication by gᵢ^{±1} = (1 + aᵢ)^{±1}.
    fn mul_letter(&mut self, g: usize, sign: i8) {
        let idx = self.index;
        let d = idx.d();
        if d == 0 {
            return;
        }
        let mut out = self.terms.clone();
        let push = |out: &mut BTreeMap<usize, BigInt>, at: usize, c: BigInt| {
            let e = out.entry(at).or_default();
            *e += c;
            if e.is_zero() {
                out.remove(&at);
            }
        };
        let a = idx.index(&[g]);
        for (&k, c) in &self.terms {
            let mut cur = k;
            let mut coeff = c.clone();
            // sign −1: 1 − a + a² − ⋯
            for _ in idx.len_of(k)..d {
                cur = idx.concat(cur, a).unwrap();
                if sign < 0 {
                    coeff = -coeff;
                }
                push(&mut out, cur, coeff.clone());
                if sign > 0 {
                    break;
                }
            }
        }
        self.terms = out;
    }

    pub fn format_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            let mono = self.index.monomial(k);
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = render_monomial(&mono, name);
            match (body.is_empty(), mag.is_one()) {
                (true, _) => s.push_str(&mag.to_string()),
                (false, true) => s.push_str(&body),
                (false, false) => s.push_str(&format!("{mag}*{body}")),
            }
        }
        s
    }
}

fn render_monomial(mono: &[usize], name: &dyn Fn(usize) -> String) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < mono.len() {
        let run = mono[i..].iter().take_while(|&&g| g == mono[i]).count();
        parts.push(if run == 1 {
            name(mono[i])
        } else {
            format!("{}^{run}", name(mono[i]))
        });
        i += run;
    }
    parts.join("*")
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&|g| format!("a{}", g + 1)))
    }
}

/// Image of a group word under gᵢ ↦ 1 + aᵢ, truncated above degree d.
pub fn magnus_expand(word: &[GenLetter], index: MonomialIndex) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(index);
    for &(g, sign) in word {
        s.mul_letter(g, sign);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // λ₁,₂ and λ₂,₁ are generators 0 and 1
    #[test]
    fn examples() {
        let idx = MonomialIndex::new(2, 2);
        assert_eq!(magnus_expand(&[(0, 1)], idx).to_string(), "1 + a1");
        assert_eq!(magnus_expand(&[(0, -1)], idx).to_string(), "1 - a1 + a1^2");
        let comm = magnus_expand(&[(0, -1), (1, -1), (0, 1), (1, 1)], idx);
        assert_eq!(comm.to_string(), "1 + a1*a2 - a2*a1");
        assert_eq!(magnus_expand(&[], idx).to_string(), "1");
    }

    #[test]
    fn indexing_roundtrip() {
        let idx = MonomialIndex::new(3, 3);
        assert_eq!(idx.dim(), 1 + 3 + 9 + 27);
        for k in 0..idx.dim() {
            assert_eq!(idx.index(&idx.monomial(k)), k);
        }
        assert_eq!(idx.index(&[1, 0]), 1 + 3 + 3);
        assert_eq!(idx.concat(idx.index(&[2]), idx.index(&[1, 0])), Some(idx.index(&[2, 1, 0])));
        assert_eq!(idx.concat(idx.index(&[2, 2]), idx.index(&[1, 0])), None);
    }

    /// Independent oracle: expansion by summing over all subsets of letters,
    /// using (1 + a)^{-1} = Σ (−a)^k.
    fn naive(word: &[GenLetter], idx: MonomialIndex) -> TruncatedSeries {
        let mut terms: Vec<(Vec<usize>, i64)> = vec![(vec![], 1)];
        for &(g, s) in word {
            let mut next = Vec::new();
            for (mono, c) in &terms {
                next.push((mono.clone(), *c));
                let powers = if s > 0 { 1 } else { idx.d() };
                for k in 1..=powers {
                    if mono.len() + k <= idx.d() {
                        let mut m = mono.clone();
                        m.extend(std::iter::repeat_n(g, k));
                        let sign = if s < 0 && k % 2 == 1 { -1 } else { 1 };
                        next.push((m, c * sign));
                    }
                }
            }
            terms = next;
        }
        let mut out = TruncatedSeries::zero(idx);
        for (mono, c) in terms {
            out.add_term(idx.index(&mono), BigInt::from(c));
        }
        out
    }

    fn word(m: usize, len: usize) -> impl Strategy<Value = Vec<GenLetter>> {
        proptest::collection::vec((0..m, prop_oneof![Just(1i8), Just(-1i8)]), 0..len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn expansion_is_multiplicative(u in word(3, 12), v in word(3, 12), d in 0usize..4) {
            let idx = MonomialIndex::new(3, d);
            let uv: Vec<GenLetter> = u.iter().chain(&v).copied().collect();
            prop_assert_eq!(magnus_expand(&uv, idx), magnus_expand(&u, idx).mul(&magnus_expand(&v, idx)));
        }
    }

    proptest! {
        #[test]
        fn expansion_matches_subset_sum(w in word(2, 8), d in 0usize..4) {
            let idx = MonomialIndex::new(2, d);
            prop_assert_eq!(magnus_expand(&w, idx), naive(&w, idx));
        }

        #[test]
        fn inverse_cancels(w in word(3, 10)) {
            let idx = MonomialIndex::new(3, 3);
            let inv: Vec<GenLetter> = w.iter().rev().map(|&(g, s)| (g, -s)).collect();
            let prod = magnus_expand(&w, idx).mul(&magnus_expand(&inv, idx));
            prop_assert_eq!(prod, TruncatedSeries::one(idx));
        }
    }
}
