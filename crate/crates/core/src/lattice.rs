//! Exact integer linear algebra: dense matrices, Smith normal form with
//! transforms, and an incremental Hermite (row echelon) basis over sparse rows.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone().into();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", r.join(" "))?;
        }
        Ok(())
    }
}

/// `u · a · v = s` with `u`, `v` unimodular and `s` diagonal, dᵢ | dᵢ₊₁.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Checks every postcondition against the input matrix.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let diag_ok = self.s.is_diagonal();
        let factors = self.invariant_factors();
        let chain_ok = factors.iter().all(|d| d.is_positive())
            && factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
            && (factors.len()..self.s.rows.min(self.s.cols)).all(|i| self.s[(i, i)].is_zero());
        let product_ok = self.u.mul(a).mul(&self.v) == self.s;
        let unimodular = self.u.determinant().abs().is_one() && self.v.determinant().abs().is_one();
        diag_ok && chain_ok && product_ok && unimodular
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        // pivot = entry of least absolute value in the trailing block
        let Some((pi, pj)) = min_abs_entry(&s, t, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_abs_in_cross(&s, t);
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // the pivot must divide the whole trailing block
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !(&s[(i, j)] % &s[(t, t)]).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { s, u, v }
}

fn min_abs_entry(s: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..s.rows {
        for j in c0..s.cols {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn min_abs_in_cross(s: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |x: &BigInt, b: &BigInt| !x.is_zero() && (b.is_zero() || x.abs() < b.abs());
    for i in t..s.rows {
        if better(&s[(i, t)], &s[best]) {
            best = (i, t);
        }
    }
    for j in t..s.cols {
        if better(&s[(t, j)], &s[best]) {
            best = (t, j);
        }
    }
    best
}

/// A sparse integer row: strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

pub fn dense_to_sparse(v: &[BigInt]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

/// a·x + b·y
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map_or(usize::MAX, |e| e.0);
        let cy = y.get(j).map_or(usize::MAX, |e| e.0);
        let (col, val) = if cx < cy {
            i += 1;
            (cx, a * &x[i - 1].1)
        } else if cy < cx {
            j += 1;
            (cy, b * &y[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (cx, a * &x[i - 1].1 + b * &y[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Row-echelon basis of a sublattice of ℤ^ncols, built one row at a time.
/// After [`HermiteBasis::normalize`] it is the Hermite normal form: positive
/// pivots, entries above each pivot reduced into [0, pivot).
#[derive(Debug, Clone, Default)]
pub struct HermiteBasis {
    ncols: usize,
    // pivot column -> row
    rows: BTreeMap<usize, SparseRow>,
}

impl HermiteBasis {
    pub fn new(ncols: usize) -> Self {
        HermiteBasis {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert_dense(&mut self, v: &[BigInt]) {
        assert_eq!(v.len(), self.ncols);
        self.insert(dense_to_sparse(v));
    }

    pub fn insert(&mut self, mut row: SparseRow) {
        debug_assert!(row.iter().all(|(c, x)| *c < self.ncols && !x.is_zero()));
        let one = BigInt::one();
        while let Some((c, lead)) = row.first().cloned() {
            let Some(b) = self.rows.get_mut(&c) else {
                if lead.is_negative() {
                    for e in row.iter_mut() {
                        e.1 = -&e.1;
                    }
                }
                self.rows.insert(c, row);
                return;
            };
            let p = b[0].1.clone();
            if (&lead % &p).is_zero() {
                row = combine(&one, &row, &-(&lead / &p), b);
            } else {
                // replace the basis row by the gcd combination
                let e = p.extended_gcd(&lead);
                let g = e.gcd;
                let new_b = combine(&e.x, b, &e.y, &row);
                row = combine(&(&lead / &g), b, &-(&p / &g), &row);
                *b = new_b;
                if b[0].1.is_negative() {
                    for e in b.iter_mut() {
                        e.1 = -&e.1;
                    }
                }
            }
        }
    }

    /// Reduces entries above pivots into [0, pivot).
    pub fn normalize(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (k, &pc) in pivots.iter().enumerate() {
            let prow = self.rows[&pc].clone();
            let p = prow[0].1.clone();
            for &above in &pivots[..k] {
                let r = self.rows.get_mut(&above).unwrap();
                let entry = r
                    .iter()
                    .find(|e| e.0 == pc)
                    .map(|e| e.1.clone())
                    .unwrap_or_default();
                let q = entry.div_floor(&p);
                if !q.is_zero() {
                    *r = combine(&BigInt::one(), r, &-q, &prow);
                }
            }
        }
    }

    /// Rebuilds a normalized basis from its rows, or None if they are not in
    /// Hermite normal form.
    pub fn from_normalized_rows(ncols: usize, rows: Vec<SparseRow>) -> Option<Self> {
        let mut map = BTreeMap::new();
        let mut last = None;
        for r in rows {
            let (pc, lead) = r.first()?;
            if !lead.is_positive() || last.is_some_and(|l| l >= *pc) {
                return None;
            }
            if r.iter().any(|(c, x)| *c >= ncols || x.is_zero()) || !r.windows(2).all(|w| w[0].0 < w[1].0) {
                return None;
            }
            last = Some(*pc);
            map.insert(*pc, r);
        }
        for r in map.values() {
            for (c, x) in r.iter().skip(1) {
                if let Some(p) = map.get(c) {
                    if x.is_negative() || x >= &p[0].1 {
                        return None;
                    }
                }
            }
        }
        Some(HermiteBasis { ncols, rows: map })
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.rows.iter()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.ncols);
        for (i, (_, r)) in self.rows.iter().enumerate() {
            for (j, x) in r {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }

    /// Canonical representative of `v` modulo the lattice; the basis must be normalized.
    pub fn reduce(&self, v: &mut [BigInt]) {
        for (&pc, r) in &self.rows {
            let q = v[pc].div_floor(&r[0].1);
            if q.is_zero() {
                continue;
            }
            for (j, x) in r {
                v[*j] -= &q * x;
            }
        }
    }

    /// Sub-basis of rows whose pivot is at or right of `col`: a basis of the
    /// intersection with the coordinate subspace spanned by columns ≥ `col`.
    pub fn tail(&self, col: usize) -> HermiteBasis {
        HermiteBasis {
            ncols: self.ncols,
            rows: self.rows.range(col..).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Invariants of ℤ^ncols modulo the lattice.
    pub fn quotient_invariants(&self) -> AbelianInvariants {
        let snf = smith_normal_form(&self.to_dense());
        debug_assert!(snf.verify(&self.to_dense()));
        AbelianInvariants::from_factors(self.ncols, &snf.invariant_factors())
    }
}

/// ℤ^rank ⊕ ℤ/d₁ ⊕ ⋯ with d₁ | d₂ | ⋯, each dᵢ ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Self {
        AbelianInvariants {
            rank,
            torsion: torsion.into_iter().map(BigInt::from).collect(),
        }
    }

    /// Invariants of ℤ^ambient / (lattice with the given invariant factors).
    pub fn from_factors(ambient: usize, factors: &[BigInt]) -> Self {
        AbelianInvariants {
            rank: ambient - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
