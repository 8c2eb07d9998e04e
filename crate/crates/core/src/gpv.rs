//! ℤ[G]/I^{d+1} for a finitely presented G and the universal degree-d
//! Goussarov–Polyak–Viro invariant of virtual braids, computed through
//! ℤ[VBₙ] ≅ ℤ[VPₙ] ⊗ ℤ[Sₙ].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::alphabet::{pair_order, AlphabetWord};
use crate::error::{Error, Result};
use crate::lattice::{HermiteBasis, SparseRow};
use crate::perm::Perm;
use crate::presentation::{build_presentation, Family, Presentation};
use crate::rewrite::omega;
use crate::series::{magnus_expand, MonomialIndex, TruncatedSeries};
use crate::word::{parse_word, BraidWord};

/// Hermite basis of the two-sided ideal generated by the relator deviations
/// r − 1, inside the coordinates of ℤ⟨a⟩/(degree > d).
#[derive(Debug, Clone)]
pub struct IdealBasis {
    index: MonomialIndex,
    basis: HermiteBasis,
}

impl IdealBasis {
    pub fn degree(&self) -> usize {
        self.index.d()
    }

    pub fn generators(&self) -> usize {
        self.index.m()
    }

    pub fn index(&self) -> MonomialIndex {
        self.index
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// Free rank of ℤ[G]/I^{d+1}.
    pub fn quotient_rank(&self) -> usize {
        self.index.dim() - self.basis.rank()
    }

    pub fn basis(&self) -> &HermiteBasis {
        &self.basis
    }

    /// Canonical representative of the coset of `s`.
    pub fn reduce(&self, s: &TruncatedSeries) -> Vec<BigInt> {
        assert_eq!(s.index(), self.index, "series and basis live in different spaces");
        let mut v = s.to_dense();
        self.basis.reduce(&mut v);
        v
    }

    pub fn contains(&self, s: &TruncatedSeries) -> bool {
        self.reduce(s).iter().all(|x| x.is_zero())
    }

    fn header(&self, n: usize) -> String {
        format!("gpv-basis n={n} d={} m={}", self.index.d(), self.index.m())
    }

    pub fn write_cache(&self, path: &Path, n: usize) -> Result<()> {
        let mut out = self.header(n);
        out.push('\n');
        let dense = self.basis.to_dense();
        for i in 0..dense.nrows() {
            let row: Vec<String> = dense.row(i).iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        }
        std::fs::write(path, out).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }

    /// Loads a cached basis; None if the file is absent, has another header,
    /// or does not hold a normalized Hermite basis.
    pub fn read_cache(path: &Path, n: usize, index: MonomialIndex) -> Option<IdealBasis> {
        let text = std::fs::read_to_string(path).ok()?;
        let mut lines = text.lines();
        let expected = format!("gpv-basis n={n} d={} m={}", index.d(), index.m());
        if lines.next()? != expected {
            return None;
        }
        let mut rows: Vec<SparseRow> = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let vals: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| t.parse::<BigInt>().ok())
                .collect::<Option<_>>()?;
            if vals.len() != index.dim() {
                return None;
            }
            rows.push(crate::lattice::dense_to_sparse(&vals));
        }
        let basis = HermiteBasis::from_normalized_rows(index.dim(), rows)?;
        Some(IdealBasis { index, basis })
    }
}

/// Rows u·(r − 1)·v over relators r and monomials u, v with |u| + |v| + low(r − 1) ≤ d.
fn ideal_rows(p: &Presentation, index: MonomialIndex) -> Vec<SparseRow> {
    let d = index.d();
    let one = TruncatedSeries::one(index);
    let monomials_upto: Vec<usize> = (0..index.offset(d)).collect();
    p.relators()
        .par_iter()
        .flat_map_iter(|r| {
            let dev = magnus_expand(r, index).sub(&one);
            let low = dev.terms().map(|(k, _)| index.len_of(k)).min().unwrap_or(d + 1);
            let mut rows = Vec::new();
            if dev.is_zero() {
                return rows;
            }
            for &u in &monomials_upto {
                let lu = index.len_of(u);
                if lu + low > d {
                    break;
                }
                for &v in &monomials_upto {
                    let lv = index.len_of(v);
                    if lu + lv + low > d {
                        break;
                    }
                    let mut row: Vec<(usize, BigInt)> = dev
                        .terms()
                        .filter_map(|(k, c)| {
                            let uk = index.concat(u, k)?;
                            Some((index.concat(uk, v)?, c.clone()))
                        })
                        .collect();
                    if !row.is_empty() {
                        row.sort_by_key(|e| e.0);
                        rows.push(row);
                    }
                }
            }
            rows
        })
        .collect()
}

pub fn ideal_basis(p: &Presentation, d: usize) -> IdealBasis {
    let index = MonomialIndex::new(p.num_generators(), d);
    let mut basis = HermiteBasis::new(index.dim());
    for row in ideal_rows(p, index) {
        basis.insert(row);
    }
    basis.normalize();
    IdealBasis { index, basis }
}

pub fn cache_path(dir: &Path, n: usize, d: usize) -> PathBuf {
    dir.join(format!("gpv-n{n}-d{d}.basis"))
}

type BasisCache = Mutex<HashMap<(usize, usize), Arc<IdealBasis>>>;

fn memory_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The ideal basis of VPₙ at degree d, memoized in-process and optionally on disk.
pub fn vp_ideal_basis(n: usize, d: usize, cache_dir: Option<&Path>) -> Result<Arc<IdealBasis>> {
    if let Some(b) = memory_cache().lock().unwrap().get(&(n, d)) {
        if let Some(dir) = cache_dir {
            let path = cache_path(dir, n, d);
            if IdealBasis::read_cache(&path, n, b.index).is_none() {
                b.write_cache(&path, n)?;
            }
        }
        return Ok(b.clone());
    }
    let p = build_presentation(Family::VP, n)?;
    let index = MonomialIndex::new(p.num_generators(), d);
    let basis = match cache_dir {
        Some(dir) => {
            let path = cache_path(dir, n, d);
            match IdealBasis::read_cache(&path, n, index) {
                Some(b) => b,
                None => {
                    let b = ideal_basis(&p, d);
                    b.write_cache(&path, n)?;
                    b
                }
            }
        }
        None => ideal_basis(&p, d),
    };
    let basis = Arc::new(basis);
    memory_cache().lock().unwrap().insert((n, d), basis.clone());
    Ok(basis)
}

/// Names a[i,j] for the VPₙ expansion variables.
pub fn vp_variable_names(n: usize) -> Vec<String> {
    pair_order(n).into_iter().map(|(i, j)| format!("a[{i},{j}]")).collect()
}

pub fn expand_pure(w: &AlphabetWord, index: MonomialIndex) -> TruncatedSeries {
    magnus_expand(&w.as_generator_word(), index)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPVCoordinates {
    pub perm: Perm,
    pub coords: Vec<BigInt>,
}

impl GPVCoordinates {
    pub fn coords_line(&self) -> String {
        let v: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        v.join(" ")
    }

    /// The reduced coordinates as a polynomial in the a[i,j].
    pub fn series(&self, n: usize, d: usize) -> TruncatedSeries {
        TruncatedSeries::from_dense(MonomialIndex::new(n * (n - 1), d), &self.coords)
    }
}

pub fn universal_gpv(w: &BraidWord, d: usize) -> Result<GPVCoordinates> {
    universal_gpv_cached(w, d, None)
}

pub fn universal_gpv_cached(w: &BraidWord, d: usize, cache_dir: Option<&Path>) -> Result<GPVCoordinates> {
    let basis = vp_ideal_basis(w.strands(), d, cache_dir)?;
    let om = omega(w);
    Ok(GPVCoordinates {
        coords: basis.reduce(&expand_pure(&om.pure, basis.index())),
        perm: om.perm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    DistinguishedAt(usize),
    IndistinguishableUpTo(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::DistinguishedAt(k) => write!(f, "distinguished at degree {k}"),
            Verdict::IndistinguishableUpTo(d) => write!(f, "indistinguishable at degree <= {d}"),
        }
    }
}

pub fn distinguish(w1: &BraidWord, w2: &BraidWord, d: usize) -> Result<Verdict> {
    distinguish_cached(w1, w2, d, None)
}

pub fn distinguish_cached(w1: &BraidWord, w2: &BraidWord, d: usize, cache_dir: Option<&Path>) -> Result<Verdict> {
    if w1.strands() != w2.strands() {
        return Err(Error::StrandMismatch(w1.strands(), w2.strands()));
    }
    for k in 0..=d {
        if universal_gpv_cached(w1, k, cache_dir)? != universal_gpv_cached(w2, k, cache_dir)? {
            return Ok(Verdict::DistinguishedAt(k));
        }
    }
    Ok(Verdict::IndistinguishableUpTo(d))
}

/// Σ cᵢ · wᵢ in ℤ[VBₙ].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCombination {
    strands: usize,
    terms: Vec<(BigInt, BraidWord)>,
}

impl FormalCombination {
    pub fn new(strands: usize, terms: Vec<(BigInt, BraidWord)>) -> Result<Self> {
        for (_, w) in &terms {
            if w.strands() != strands {
                return Err(Error::StrandMismatch(strands, w.strands()));
            }
        }
        Ok(FormalCombination { strands, terms })
    }

    pub fn word(w: BraidWord) -> Self {
        FormalCombination {
            strands: w.strands(),
            terms: vec![(BigInt::one(), w)],
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn terms(&self) -> &[(BigInt, BraidWord)] {
        &self.terms
    }

    pub fn add_scaled(&self, other: &Self, c: impl Into<BigInt>) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let c = c.into();
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(k, w)| (k * &c, w.clone())));
        Ok(FormalCombination { strands: self.strands, terms })
    }

    /// Product in the group ring, expanded termwise.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                terms.push((a * b, u.concat(v)?));
            }
        }
        Ok(FormalCombination { strands: self.strands, terms })
    }
}

impl fmt::Display for FormalCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{mag} * ({w})")?;
        }
        Ok(())
    }
}

/// Parses `<int> * ( <word> ) ± <int> * ( <word> ) …`; a missing coefficient means 1.
pub fn parse_combination(text: &str, n: usize) -> Result<FormalCombination> {
    let bad = |msg: &str| Error::MalformedCombination(format!("{msg} in `{text}`"));
    let mut terms = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad("empty combination"));
    }
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = BigInt::one();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        } else if !first {
            return Err(bad("expected `+` or `-` between terms"));
        }
        first = false;
        let open = rest.find('(').ok_or_else(|| bad("expected `(`"))?;
        let head = rest[..open].trim();
        let coeff = if head.is_empty() {
            BigInt::one()
        } else {
            let num = head.strip_suffix('*').ok_or_else(|| bad("expected `*` after coefficient"))?;
            num.trim().parse::<BigInt>().map_err(|_| bad("bad coefficient"))?
        };
        let close = rest[open..].find(')').ok_or_else(|| bad("unclosed `(`"))? + open;
        let word = parse_word(&rest[open + 1..close], n)?;
        terms.push((sign * coeff, word));
        rest = rest[close + 1..].trim_start();
    }
    FormalCombination::new(n, terms)
}

/// Per permutation class, the reduced degree-d coordinates of the pure parts;
/// classes whose coordinates vanish are omitted.
pub fn combination_gpv(c: &FormalCombination, d: usize, cache_dir: Option<&Path>) -> Result<Vec<(Perm, Vec<BigInt>)>> {
    let basis = vp_ideal_basis(c.strands(), d, cache_dir)?;
    let mut classes: BTreeMap<Perm, TruncatedSeries> = BTreeMap::new();
    for (k, w) in c.terms() {
        let om = omega(w);
        let s = expand_pure(&om.pure, basis.index());
        let acc = classes
            .entry(om.perm)
            .or_insert_with(|| TruncatedSeries::zero(basis.index()));
        *acc = acc.add_scaled(&s, k);
    }
    Ok(classes
        .into_iter()
        .map(|(p, s)| (p, basis.reduce(&s)))
        .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
        .collect())
}

/// Whether the combination lies in J^d.
pub fn jpower_membership(c: &FormalCombination, d: usize) -> Result<bool> {
    jpower_membership_cached(c, d, None)
}

pub fn jpower_membership_cached(c: &FormalCombination, d: usize, cache_dir: Option<&Path>) -> Result<bool> {
    if d == 0 {
        return Ok(true);
    }
    Ok(combination_gpv(c, d - 1, cache_dir)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_alphabet_word;
    use crate::alphabet::Alphabet;

    fn w(text: &str, n: usize) -> BraidWord {
        parse_word(text, n).unwrap()
    }

    fn coords(text: &str, n: usize, d: usize) -> (String, String) {
        let g = universal_gpv(&w(text, n), d).unwrap();
        (g.perm.to_string(), g.series(n, d).format_with(&|i| vp_variable_names(n)[i].clone()))
    }

    #[test]
    fn gpv_examples() {
        assert_eq!(coords("s1", 2, 1), ("(1 2)".into(), "1 - a[1,2]".into()));
        assert_eq!(coords("r1", 2, 3), ("(1 2)".into(), "1".into()));
        assert_eq!(coords("", 3, 2), ("identity".into(), "1".into()));
        assert_eq!(coords("s1^-1", 2, 1), ("(1 2)".into(), "1 + a[2,1]".into()));
    }

    #[test]
    fn distinguish_examples() {
        let d = |a: &str, b: &str, k| distinguish(&w(a, 2), &w(b, 2), k).unwrap();
        assert_eq!(d("s1", "r1", 1), Verdict::DistinguishedAt(1));
        assert_eq!(d("s1 s1^-1 r1", "r1", 3), Verdict::IndistinguishableUpTo(3));
        assert_eq!(d("s1", "s1^-1", 1), Verdict::DistinguishedAt(1));
        assert_eq!(d("s1", "s1 r1", 2), Verdict::DistinguishedAt(0));
        assert_eq!(Verdict::IndistinguishableUpTo(2).to_string(), "indistinguishable at degree <= 2");
        assert!(distinguish(&w("s1", 2), &w("s1", 3), 1).is_err());
    }

    #[test]
    fn jpower_examples() {
        let c = |t: &str| parse_combination(t, 2).unwrap();
        assert!(jpower_membership(&c("1 * (s1) - 1 * (r1)"), 1).unwrap());
        assert!(!jpower_membership(&c("1 * (s1) - 1 * (r1)"), 2).unwrap());
        assert!(jpower_membership(&c("(s1) - (s1^-1)"), 1).unwrap());
        assert!(jpower_membership(&c("2 * (s1) - (r1) - (s1^-1)"), 1).unwrap());
    }

    #[test]
    fn combination_parser() {
        let c = parse_combination("3 * (s1 r1) - 2 * () + (s1^-1)", 2).unwrap();
        assert_eq!(c.terms().len(), 3);
        assert_eq!(c.to_string(), "3 * (s1 r1) - 2 * () + 1 * (s1^-1)");
        assert_eq!(parse_combination(&c.to_string(), 2).unwrap(), c);
        for bad in ["", "3 (s1)", "3 * s1", "(s1) (r1)", "x * (s1)", "(s1"] {
            assert!(matches!(parse_combination(bad, 2), Err(Error::MalformedCombination(_))), "{bad}");
        }
        assert!(parse_combination("(s3)", 2).is_err());
    }

    #[test]
    fn free_and_abelian_ranks() {
        for d in 0..=6 {
            let b = vp_ideal_basis(2, d, None).unwrap();
            assert_eq!(b.rank(), 0);
            assert_eq!(b.quotient_rank(), (1 << (d + 1)) - 1);
        }
        let z2 = Presentation::custom("Z2", vec!["g1".into(), "g2".into()], vec![vec![(0, -1), (1, -1), (0, 1), (1, 1)]]).unwrap();
        for d in 1..=4 {
            assert_eq!(ideal_basis(&z2, d).quotient_rank(), (d + 1) * (d + 2) / 2);
        }
    }

    /// Rank over ℚ by Gaussian elimination mod a large prime, on all rows
    /// u·(r − 1)·v built by plain polynomial multiplication.
    fn naive_rank(p: &Presentation, d: usize, prime: u64) -> usize {
        let index = MonomialIndex::new(p.num_generators(), d);
        let one = TruncatedSeries::one(index);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let monos: Vec<usize> = (0..index.offset(d)).collect();
        for r in p.relators() {
            let dev = magnus_expand(r, index).sub(&one);
            for &u in &monos {
                for &v in &monos {
                    if index.len_of(u) + index.len_of(v) + 1 > d {
                        continue;
                    }
                    let su = TruncatedSeries::monomial(index, &index.monomial(u), 1);
                    let sv = TruncatedSeries::monomial(index, &index.monomial(v), 1);
                    let prod = su.mul(&dev).mul(&sv);
                    let modp = |x: &BigInt| {
                        let r = x % BigInt::from(prime);
                        u64::try_from(if r < BigInt::zero() { r + prime } else { r }).unwrap()
                    };
                    rows.push(prod.to_dense().iter().map(modp).collect());
                }
            }
        }
        let cols = index.dim();
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = mod_pow(rows[rank][c], prime - 2, prime);
            for i in 0..rows.len() {
                if i != rank && rows[i][c] != 0 {
                    let f = rows[i][c] * inv % prime;
                    for j in c..cols {
                        let sub = f * rows[rank][j] % prime;
                        rows[i][j] = (rows[i][j] + prime - sub) % prime;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    #[test]
    fn vp3_rank_matches_dense_oracle() {
        let p = build_presentation(Family::VP, 3).unwrap();
        for d in 1..=3 {
            let fast = ideal_basis(&p, d).rank();
            assert_eq!(fast, naive_rank(&p, d, 1_000_000_007), "d = {d}");
            assert_eq!(fast, naive_rank(&p, d, 998_244_353), "d = {d}");
        }
    }

    #[test]
    fn vp_relators_vanish() {
        for n in 2..=4 {
            let p = build_presentation(Family::VP, n).unwrap();
            for d in 1..=3 {
                let b = vp_ideal_basis(n, d, None).unwrap();
                let one = TruncatedSeries::one(b.index());
                for r in p.relators() {
                    assert!(b.contains(&magnus_expand(r, b.index()).sub(&one)));
                }
            }
        }
    }

    #[test]
    fn cache_roundtrip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let b = vp_ideal_basis(3, 2, Some(dir.path())).unwrap();
        let path = cache_path(dir.path(), 3, 2);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("gpv-basis n=3 d=2 m=6\n"));
        let loaded = IdealBasis::read_cache(&path, 3, b.index()).unwrap();
        assert_eq!(loaded.basis().to_dense(), b.basis().to_dense());
        assert!(IdealBasis::read_cache(&path, 3, MonomialIndex::new(6, 3)).is_none());
        std::fs::write(&path, text.replacen("d=2", "d=9", 1)).unwrap();
        assert!(IdealBasis::read_cache(&path, 3, b.index()).is_none());
        // the memoized basis rewrites a stale file
        vp_ideal_basis(3, 2, Some(dir.path())).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    }

    #[test]
    fn pure_expansion_uses_pair_order() {
        let idx = MonomialIndex::new(6, 1);
        let l = parse_alphabet_word("l[2,3]", 3, Alphabet::Lambda).unwrap();
        assert_eq!(expand_pure(&l, idx).to_string(), "1 + a4");
    }
}
