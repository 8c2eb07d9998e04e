//! Permutations of {1..n} and the group Mₙ = Sₙ ⋊ Sₙ.
//!
//! Products are read left to right: `p.then(q)` applies `p` first, so a
//! word of transpositions evaluates in reading order, e.g. ρ₁ρ₂ sends 1 ↦ 3.

use std::fmt;

use crate::group::Group;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    // 0-based images
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize);
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds from 1-based images; returns `None` unless a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
        }
        Some(Perm {
            images: images.iter().map(|&x| (x - 1) as u8).collect(),
        })
    }

    /// The transposition (i j), 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Perm::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x as usize)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x as usize] = k as u8;
        }
        Perm { images }
    }

    /// Disjoint cycles of length ≥ 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// One-line notation `[3 4 1 2]`.
    pub fn one_line(&self) -> String {
        let body: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        format!("[{}]", body.join(" "))
    }

    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        permutations(&mut cur, 0, &mut out);
        out.sort();
        out
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(Perm::from_images(cur).unwrap());
        return;
    }
    for j in k..cur.len() {
        cur.swap(k, j);
        permutations(cur, k + 1, out);
        cur.swap(k, j);
    }
}

/// Cycle notation; the identity prints as `identity`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("identity");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SymmetricGroup {
    n: usize,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Self {
        SymmetricGroup { n }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// The Coxeter generator ρᵢ = (i i+1).
    pub fn gen(&self, i: usize) -> Perm {
        Perm::transposition(self.n, i, i + 1)
    }
}

impl Group for SymmetricGroup {
    type Elem = Perm;

    fn identity(&self) -> Perm {
        Perm::identity(self.n)
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.then(b)
    }

    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }
}

/// Element (left, right) of Mₙ with (a,b)·(c,d) = (a·(b c b⁻¹), b·d).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MElement {
    pub left: Perm,
    pub right: Perm,
}

impl MElement {
    pub fn new(left: Perm, right: Perm) -> Self {
        MElement { left, right }
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }
}

impl fmt::Display for MElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.left, self.right)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MGroup {
    n: usize,
}

impl MGroup {
    pub fn new(n: usize) -> Self {
        MGroup { n }
    }

    /// sᵢ = (ρᵢ, id)
    pub fn s(&self, i: usize) -> MElement {
        MElement::new(Perm::transposition(self.n, i, i + 1), Perm::identity(self.n))
    }

    /// tᵢ = (id, ρᵢ)
    pub fn t(&self, i: usize) -> MElement {
        MElement::new(Perm::identity(self.n), Perm::transposition(self.n, i, i + 1))
    }
}

impl Group for MGroup {
    type Elem = MElement;

    fn identity(&self) -> MElement {
        MElement::new(Perm::identity(self.n), Perm::identity(self.n))
    }

    fn mul(&self, x: &MElement, y: &MElement) -> MElement {
        let b = &x.right;
        let conj = b.then(&y.left).then(&b.inverse());
        MElement::new(x.left.then(&conj), x.right.then(&y.right))
    }

    fn inv(&self, x: &MElement) -> MElement {
        // (a,b)⁻¹ = (b⁻¹ a⁻¹ b, b⁻¹)
        let bi = x.right.inverse();
        MElement::new(bi.then(&x.left.inverse()).then(&x.right), bi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Perm {
        Perm::from_images(images).unwrap()
    }

    #[test]
    fn left_to_right_convention() {
        let s3 = SymmetricGroup::new(3);
        let prod = s3.mul(&s3.gen(1), &s3.gen(2));
        assert_eq!(prod.apply(1), 3);
        assert_eq!(prod.to_string(), "(1 3 2)");
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[3, 4, 1, 2]).to_string(), "(1 3)(2 4)");
        assert_eq!(p(&[3, 4, 1, 2]).one_line(), "[3 4 1 2]");
        assert_eq!(Perm::identity(4).to_string(), "identity");
        let m = MElement::new(Perm::transposition(2, 1, 2), Perm::identity(2));
        assert_eq!(m.to_string(), "((1 2) ; identity)");
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(&[1, 1]).is_none());
        assert!(Perm::from_images(&[0, 1]).is_none());
        assert!(Perm::from_images(&[3, 1]).is_none());
    }

    #[test]
    fn inverse_and_all() {
        for q in Perm::all(4) {
            assert!(q.then(&q.inverse()).is_identity());
        }
        assert_eq!(Perm::all(5).len(), 120);
    }

    #[test]
    fn m_group_laws() {
        let n = 3;
        let m = MGroup::new(n);
        let elems: Vec<MElement> = Perm::all(n)
            .into_iter()
            .flat_map(|a| Perm::all(n).into_iter().map(move |b| MElement::new(a.clone(), b)))
            .collect();
        for x in &elems {
            assert!(m.mul(x, &m.inv(x)).is_identity());
            assert!(m.mul(&m.inv(x), x).is_identity());
            assert_eq!(&m.mul(x, &m.identity()), x);
        }
        for x in elems.iter().step_by(5) {
            for y in elems.iter().step_by(3) {
                for z in elems.iter().step_by(7) {
                    assert_eq!(m.mul(&m.mul(x, y), z), m.mul(x, &m.mul(y, z)));
                }
            }
        }
        for i in 1..n {
            assert!(!m.s(i).is_identity());
            assert!(m.mul(&m.s(i), &m.s(i)).is_identity());
            assert!(m.mul(&m.t(i), &m.t(i)).is_identity());
        }
    }
}
