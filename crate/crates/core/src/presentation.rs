//! Finite presentations of VBₙ, VPₙ, Hₙ, Mₙ = Sₙ ⋊ Sₙ and Sₙ.
//!
//! Relators are stored as single words LHS·RHS⁻¹ over generator indices.
//! Within a relation family, index tuples are enumerated lexicographically.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::pair_order;
use crate::error::{Error, Result};
use crate::group::Group;

/// A generator index with exponent ±1.
pub type GenLetter = (usize, i8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    VB,
    VP,
    H,
    M,
    S,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::VB => "VB",
            Family::VP => "VP",
            Family::H => "H",
            Family::M => "M",
            Family::S => "S",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vb" => Ok(Family::VB),
            "vp" => Ok(Family::VP),
            "h" => Ok(Family::H),
            "m" => Ok(Family::M),
            "s" => Ok(Family::S),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    label: String,
    n: usize,
    generators: Vec<String>,
    relators: Vec<Vec<GenLetter>>,
    // relation-family tag per relator
    kinds: Vec<&'static str>,
}

impl Presentation {
    /// A presentation not tied to one of the built-in families.
    pub fn custom(label: &str, generators: Vec<String>, relators: Vec<Vec<GenLetter>>) -> Result<Self> {
        for r in &relators {
            for &(g, _) in r {
                if g >= generators.len() {
                    return Err(Error::IndexOutOfRange {
                        index: g,
                        n: generators.len(),
                    });
                }
            }
        }
        let kinds = vec!["custom"; relators.len()];
        Ok(Presentation {
            label: label.to_string(),
            n: 0,
            generators,
            relators,
            kinds,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Vec<GenLetter>] {
        &self.relators
    }

    /// Relation-family tag of each relator, e.g. `"braid"`, `"commute"`.
    pub fn relator_kinds(&self) -> &[&'static str] {
        &self.kinds
    }

    pub fn count_kind(&self, kind: &str) -> usize {
        self.kinds.iter().filter(|k| **k == kind).count()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn format_word(&self, word: &[GenLetter]) -> String {
        word.iter()
            .map(|&(g, s)| {
                if s < 0 {
                    format!("{}^-1", self.generators[g])
                } else {
                    self.generators[g].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the text produced by `Display`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::MalformedToken(m.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("missing header"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("group") {
            return Err(bad(header));
        }
        let label = parts.next().ok_or_else(|| bad(header))?.to_string();
        let n: usize = parts
            .next()
            .and_then(|s| s.strip_prefix("n="))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(header))?;
        let mut generators = Vec::new();
        let mut relators = Vec::new();
        for line in lines {
            if let Some(name) = line.strip_prefix("gen ") {
                generators.push(name.trim().to_string());
            } else if let Some(body) = line.strip_prefix("rel ") {
                let mut word = Vec::new();
                for tok in body.split_whitespace() {
                    let (name, sign) = match tok.strip_suffix("^-1") {
                        Some(h) => (h, -1),
                        None => (tok, 1),
                    };
                    let g = generators
                        .iter()
                        .position(|x| x == name)
                        .ok_or_else(|| bad(tok))?;
                    word.push((g, sign));
                }
                relators.push(word);
            } else {
                return Err(bad(line));
            }
        }
        let mut p = Presentation::custom(&label, generators, relators)?;
        p.n = n;
        Ok(p)
    }

    /// Evaluates a generator word in `group` under `images`.
    pub fn evaluate<G: Group>(&self, group: &G, images: &[G::Elem], word: &[GenLetter]) -> G::Elem {
        word.iter().fold(group.identity(), |acc, &(g, s)| {
            group.mul(&acc, &group.pow(&images[g], s))
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {} n={}", self.label, self.n)?;
        for g in &self.generators {
            writeln!(f, "gen {g}")?;
        }
        for r in &self.relators {
            writeln!(f, "rel {}", self.format_word(r))?;
        }
        Ok(())
    }
}

struct Builder {
    generators: Vec<String>,
    relators: Vec<Vec<GenLetter>>,
    kinds: Vec<&'static str>,
}

impl Builder {
    fn new(generators: Vec<String>) -> Self {
        Builder {
            generators,
            relators: Vec::new(),
            kinds: Vec::new(),
        }
    }

    /// Adds lhs · rhs⁻¹, both sides given as positive generator sequences.
    fn relation(&mut self, kind: &'static str, lhs: &[usize], rhs: &[usize]) {
        let mut w: Vec<GenLetter> = lhs.iter().map(|&g| (g, 1)).collect();
        w.extend(rhs.iter().rev().map(|&g| (g, -1)));
        self.relators.push(w);
        self.kinds.push(kind);
    }

    fn finish(self, family: Family, n: usize) -> Presentation {
        Presentation {
            label: family.name().to_string(),
            n,
            generators: self.generators,
            relators: self.relators,
            kinds: self.kinds,
        }
    }
}

pub fn build_presentation(family: Family, n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::TooFewStrands(n));
    }
    Ok(match family {
        Family::VB => virtual_braid(n),
        Family::VP => pair_group(n, 'l', Family::VP),
        Family::H => pair_group(n, 'x', Family::H),
        Family::M => semidirect_symmetric(n),
        Family::S => symmetric(n),
    })
}

fn far_pairs(n: usize, ordered: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) >= 2 && (ordered || i < j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn virtual_braid(n: usize) -> Presentation {
    let mut gens: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    gens.extend((1..n).map(|i| format!("r{i}")));
    let s = |i: usize| i - 1;
    let r = |i: usize| n - 1 + i - 1;
    let mut b = Builder::new(gens);
    for i in 1..n - 1 {
        b.relation("braid", &[s(i), s(i + 1), s(i)], &[s(i + 1), s(i), s(i + 1)]);
    }
    for (i, j) in far_pairs(n, false) {
        b.relation("commute", &[s(i), s(j)], &[s(j), s(i)]);
    }
    for i in 1..n - 1 {
        b.relation("rho-braid", &[r(i), r(i + 1), r(i)], &[r(i + 1), r(i), r(i + 1)]);
    }
    for (i, j) in far_pairs(n, false) {
        b.relation("rho-commute", &[r(i), r(j)], &[r(j), r(i)]);
    }
    for i in 1..n {
        b.relation("involution", &[r(i), r(i)], &[]);
    }
    for (i, j) in far_pairs(n, true) {
        b.relation("mixed-commute", &[s(i), r(j)], &[r(j), s(i)]);
    }
    for i in 1..n - 1 {
        b.relation("mixed", &[r(i), r(i + 1), s(i)], &[s(i + 1), r(i), r(i + 1)]);
    }
    b.finish(Family::VB, n)
}

/// VPₙ (prefix `l`) or Hₙ (prefix `x`); distinct letters are distinct indices.
fn pair_group(n: usize, prefix: char, family: Family) -> Presentation {
    use crate::alphabet::pair_index as g;
    let gens = pair_order(n)
        .into_iter()
        .map(|(i, j)| format!("{prefix}[{i},{j}]"))
        .collect();
    let mut b = Builder::new(gens);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let distinct = i != j && i != k && i != l && j != k && j != l && k != l;
                    if distinct && (i, j) < (k, l) {
                        b.relation("commute", &[g(i, j), g(k, l)], &[g(k, l), g(i, j)]);
                    }
                }
            }
        }
    }
    for a in 1..=n {
        for c in 1..=n {
            for d in 1..=n {
                if a == c || a == d || c == d {
                    continue;
                }
                match family {
                    // λ_{k,i} λ_{k,j} λ_{i,j} = λ_{i,j} λ_{k,j} λ_{k,i} with (k,i,j) = (a,c,d)
                    Family::VP => b.relation(
                        "triangle",
                        &[g(a, c), g(a, d), g(c, d)],
                        &[g(c, d), g(a, d), g(a, c)],
                    ),
                    // x_{i,k} x_{k,j} x_{i,k} = x_{k,j} x_{i,k} x_{k,j} with (i,k,j) = (a,c,d)
                    _ => b.relation(
                        "braid",
                        &[g(a, c), g(c, d), g(a, c)],
                        &[g(c, d), g(a, c), g(c, d)],
                    ),
                }
            }
        }
    }
    b.finish(family, n)
}

fn semidirect_symmetric(n: usize) -> Presentation {
    let mut gens: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    gens.extend((1..n).map(|i| format!("t{i}")));
    let s = |i: usize| i - 1;
    let t = |i: usize| n - 1 + i - 1;
    let mut b = Builder::new(gens);
    for i in 1..n {
        b.relation("involution", &[t(i), t(i)], &[]);
    }
    for i in 1..n {
        b.relation("involution", &[s(i), s(i)], &[]);
    }
    for (i, j) in far_pairs(n, false) {
        b.relation("s-commute", &[s(i), s(j)], &[s(j), s(i)]);
    }
    for i in 1..n - 1 {
        b.relation("s-braid", &[s(i), s(i + 1), s(i)], &[s(i + 1), s(i), s(i + 1)]);
    }
    for (i, j) in far_pairs(n, false) {
        b.relation("t-commute", &[t(i), t(j)], &[t(j), t(i)]);
    }
    for i in 1..n - 1 {
        b.relation("t-braid", &[t(i), t(i + 1), t(i)], &[t(i + 1), t(i), t(i + 1)]);
    }
    for (i, j) in far_pairs(n, true) {
        b.relation("far-conjugate", &[t(i), s(j), t(i)], &[s(j)]);
    }
    for i in 1..n {
        b.relation("self-conjugate", &[t(i), s(i), t(i)], &[s(i)]);
    }
    for i in 1..n - 1 {
        b.relation("up-conjugate", &[t(i + 1), s(i), t(i + 1)], &[s(i + 1), s(i), s(i + 1)]);
    }
    for i in 2..n {
        b.relation("down-conjugate", &[t(i - 1), s(i), t(i - 1)], &[s(i - 1), s(i), s(i - 1)]);
    }
    b.finish(Family::M, n)
}

fn symmetric(n: usize) -> Presentation {
    let gens = (1..n).map(|i| format!("r{i}")).collect();
    let r = |i: usize| i - 1;
    let mut b = Builder::new(gens);
    for i in 1..n {
        b.relation("involution", &[r(i), r(i)], &[]);
    }
    for i in 1..n - 1 {
        b.relation("braid", &[r(i), r(i + 1), r(i)], &[r(i + 1), r(i), r(i + 1)]);
    }
    for (i, j) in far_pairs(n, false) {
        b.relation("commute", &[r(i), r(j)], &[r(j), r(i)]);
    }
    b.finish(Family::S, n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub ok: bool,
    /// Indices of relators not sent to the identity.
    pub failing: Vec<usize>,
}

/// Checks that the assignment generator ↦ image kills every relator.
pub fn check_homomorphism<G: Group>(
    p: &Presentation,
    group: &G,
    images: &[Option<G::Elem>],
) -> Result<HomomorphismReport> {
    let mut total = Vec::with_capacity(p.num_generators());
    for (k, name) in p.generators().iter().enumerate() {
        match images.get(k).cloned().flatten() {
            Some(x) => total.push(x),
            None => return Err(Error::MissingImage(name.clone())),
        }
    }
    let id = group.identity();
    let failing: Vec<usize> = p
        .relators()
        .iter()
        .enumerate()
        .filter(|(_, r)| p.evaluate(group, &total, r) != id)
        .map(|(k, _)| k)
        .collect();
    Ok(HomomorphismReport {
        ok: failing.is_empty(),
        failing,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub generators: Vec<usize>,
    pub relators: Vec<usize>,
}

/// Finest partition of the generators such that every relator lives in one part.
pub fn split_components(p: &Presentation) -> Vec<Component> {
    let m = p.num_generators();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for r in p.relators() {
        if let Some(&(first, _)) = r.first() {
            for &(g, _) in r {
                let (a, b) = (find(&mut parent, first), find(&mut parent, g));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut comps: Vec<Component> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for g in 0..m {
        let root = find(&mut parent, g);
        if slot[root] == usize::MAX {
            slot[root] = comps.len();
            comps.push(Component {
                generators: Vec::new(),
                relators: Vec::new(),
            });
        }
        comps[slot[root]].generators.push(g);
    }
    for (k, r) in p.relators().iter().enumerate() {
        if let Some(&(g, _)) = r.first() {
            let root = find(&mut parent, g);
            comps[slot[root]].relators.push(k);
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{MGroup, Perm, SymmetricGroup};

    #[test]
    fn vp_counts() {
        let p = build_presentation(Family::VP, 3).unwrap();
        assert_eq!(p.num_generators(), 6);
        assert_eq!(p.relators().len(), 6);
        let p = build_presentation(Family::VP, 2).unwrap();
        assert_eq!((p.num_generators(), p.relators().len()), (2, 0));
        for n in 2..=6 {
            for fam in [Family::VP, Family::H] {
                let p = build_presentation(fam, n).unwrap();
                assert_eq!(p.num_generators(), n * (n - 1));
                assert_eq!(p.count_kind("commute"), n * (n - 1) * (n - 2) * n.saturating_sub(3) / 2);
                assert_eq!(p.relators().len() - p.count_kind("commute"), n * (n - 1) * (n - 2));
            }
        }
    }

    #[test]
    fn vb3_families() {
        let p = build_presentation(Family::VB, 3).unwrap();
        assert_eq!(p.num_generators(), 4);
        assert_eq!(p.count_kind("braid"), 1);
        assert_eq!(p.count_kind("rho-braid"), 1);
        assert_eq!(p.count_kind("involution"), 2);
        assert_eq!(p.count_kind("mixed"), 1);
        assert_eq!(p.relators().len(), 5);
    }

    #[test]
    fn vp3_relators_match_displayed_list() {
        let p = build_presentation(Family::VP, 3).unwrap();
        let texts: Vec<String> = p.relators().iter().map(|r| p.format_word(r)).collect();
        assert_eq!(
            texts[0],
            "l[1,2] l[1,3] l[2,3] l[1,2]^-1 l[1,3]^-1 l[2,3]^-1"
        );
        // λ₂,₁(λ₂,₃λ₁,₃) = (λ₁,₃λ₂,₃)λ₂,₁
        assert!(texts.contains(&"l[2,1] l[2,3] l[1,3] l[2,1]^-1 l[2,3]^-1 l[1,3]^-1".to_string()));
    }

    #[test]
    fn text_roundtrip() {
        for fam in [Family::VB, Family::VP, Family::H, Family::M, Family::S] {
            let p = build_presentation(fam, 4).unwrap();
            let text = p.to_string();
            let q = Presentation::parse_text(&text).unwrap();
            assert_eq!(q.to_string(), text);
        }
        let text = build_presentation(Family::VB, 3).unwrap().to_string();
        assert!(text.starts_with("group VB n=3\ngen s1\ngen s2\ngen r1\ngen r2\nrel s1 s2 s1 s2^-1 s1^-1 s2^-1\n"));
    }

    #[test]
    fn errors() {
        assert!(matches!(build_presentation(Family::VB, 1), Err(Error::TooFewStrands(1))));
        assert!(matches!("q".parse::<Family>(), Err(Error::UnknownFamily(_))));
        let p = build_presentation(Family::S, 3).unwrap();
        let s = SymmetricGroup::new(3);
        assert!(matches!(
            check_homomorphism(&p, &s, &[Some(s.gen(1))]),
            Err(Error::MissingImage(g)) if g == "r2"
        ));
    }

    #[test]
    fn broken_braid_image_is_reported() {
        let p = build_presentation(Family::VB, 3).unwrap();
        let s = SymmetricGroup::new(3);
        let images = vec![Some(s.gen(1)), Some(Perm::identity(3)), Some(s.gen(1)), Some(s.gen(2))];
        let rep = check_homomorphism(&p, &s, &images).unwrap();
        assert!(!rep.ok);
        assert!(rep.failing.contains(&0));
    }

    #[test]
    fn m_relations_hold_concretely() {
        for n in 2..=5 {
            let p = build_presentation(Family::M, n).unwrap();
            let m = MGroup::new(n);
            let mut images: Vec<Option<_>> = (1..n).map(|i| Some(m.s(i))).collect();
            images.extend((1..n).map(|i| Some(m.t(i))));
            assert!(check_homomorphism(&p, &m, &images).unwrap().ok);
            let fams: std::collections::BTreeSet<_> = p.relator_kinds().iter().collect();
            if n >= 4 {
                assert_eq!(fams.len(), 9);
            }
        }
    }

    #[test]
    fn components() {
        let h3 = build_presentation(Family::H, 3).unwrap();
        let comps = split_components(&h3);
        let names: Vec<Vec<&str>> = comps
            .iter()
            .map(|c| c.generators.iter().map(|&g| h3.generators()[g].as_str()).collect())
            .collect();
        assert_eq!(names.len(), 2);
        let mut a = names[0].clone();
        let mut b = names[1].clone();
        a.sort();
        b.sort();
        assert_eq!(a, ["x[1,2]", "x[2,3]", "x[3,1]"]);
        assert_eq!(b, ["x[1,3]", "x[2,1]", "x[3,2]"]);
        assert_eq!(comps[0].relators.len() + comps[1].relators.len(), 6);

        assert_eq!(split_components(&build_presentation(Family::VP, 2).unwrap()).len(), 2);
        assert_eq!(split_components(&build_presentation(Family::VB, 3).unwrap()).len(), 1);
    }
}
