//! The free nilpotent group of class 2 on m generators, in collected form.
//!
//! An element is `(e, k)`: the word g₁^{e₁}⋯g_m^{e_m} · Π c_{ij}^{k_{ij}} with
//! c_{ij} = [gᵢ,gⱼ] = gᵢ⁻¹gⱼ⁻¹gᵢgⱼ for i > j. Multiplication is
//! `(e, k)(e', k') = (e + e', k + k' + β(e, e'))` with β(x, y)_{ij} = xᵢ yⱼ.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::presentation::GenLetter;

/// Position of c_{ij} (0-based, i > j) among the basic commutators.
pub fn commutator_index(i: usize, j: usize) -> usize {
    debug_assert!(i > j);
    i * (i - 1) / 2 + j
}

pub fn num_commutators(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Class2Vector {
    pub e: Vec<i64>,
    pub k: Vec<i64>,
}

impl Class2Vector {
    pub fn identity(m: usize) -> Self {
        Class2Vector {
            e: vec![0; m],
            k: vec![0; num_commutators(m)],
        }
    }

    pub fn generator(m: usize, index: usize, sign: i8) -> Self {
        let mut v = Self::identity(m);
        v.e[index] = sign as i64;
        v
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn is_identity(&self) -> bool {
        self.e.iter().chain(&self.k).all(|&x| x == 0)
    }
}

impl fmt::Display for Class2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.e.iter().map(|x| x.to_string()).collect();
        let k: Vec<String> = self.k.iter().map(|x| x.to_string()).collect();
        write!(f, "e=({}) k=({})", e.join(","), k.join(","))
    }
}

/// β(x, y): the bilinear form with β(gᵢ, gⱼ) = c_{ij} for i > j and 0 otherwise.
pub fn beta(x: &[i64], y: &[i64]) -> Vec<i64> {
    let m = x.len();
    let mut out = vec![0; num_commutators(m)];
    for i in 1..m {
        if x[i] == 0 {
            continue;
        }
        for j in 0..i {
            out[commutator_index(i, j)] += x[i] * y[j];
        }
    }
    out
}

/// The commutator form: [a, b] = (0, β(e_a, e_b) − β(e_b, e_a)) for any lifts.
pub fn bracket(x: &[i64], y: &[i64]) -> Vec<i64> {
    let mut out = beta(x, y);
    for (o, t) in out.iter_mut().zip(beta(y, x)) {
        *o -= t;
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct FreeClass2 {
    pub m: usize,
}

impl Group for FreeClass2 {
    type Elem = Class2Vector;

    fn identity(&self) -> Class2Vector {
        Class2Vector::identity(self.m)
    }

    fn mul(&self, a: &Class2Vector, b: &Class2Vector) -> Class2Vector {
        let e = a.e.iter().zip(&b.e).map(|(x, y)| x + y).collect();
        let mut k = beta(&a.e, &b.e);
        for ((o, x), y) in k.iter_mut().zip(&a.k).zip(&b.k) {
            *o += x + y;
        }
        Class2Vector { e, k }
    }

    fn inv(&self, a: &Class2Vector) -> Class2Vector {
        let e = a.e.iter().map(|x| -x).collect();
        let mut k = beta(&a.e, &a.e);
        for (o, x) in k.iter_mut().zip(&a.k) {
            *o -= x;
        }
        Class2Vector { e, k }
    }
}

/// Normal form of a word over m generators (0-based indices).
pub fn collect_class2(m: usize, word: &[GenLetter]) -> Result<Class2Vector> {
    let g = FreeClass2 { m };
    let mut acc = g.identity();
    for &(index, sign) in word {
        if index >= m {
            return Err(Error::IndexOutOfRange { index: index + 1, n: m });
        }
        if sign != 1 && sign != -1 {
            return Err(Error::MalformedToken(format!("exponent {sign}")));
        }
        // right multiplication by a generator only touches the row of `index`
        acc.e[index] += sign as i64;
        for i in index + 1..m {
            acc.k[commutator_index(i, index)] += acc.e[i] * sign as i64;
        }
    }
    Ok(acc)
}
