//! Abelianization and the lower central section Γ₂/Γ₃ of a finite presentation.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::class2::{beta, bracket, collect_class2, num_commutators, Class2Vector};
use crate::lattice::{AbelianInvariants, HermiteBasis, SparseRow};
use crate::presentation::{GenLetter, Presentation};

fn exponent_sum(m: usize, word: &[GenLetter]) -> Vec<i64> {
    let mut e = vec![0; m];
    for &(i, s) in word {
        e[i] += s as i64;
    }
    e
}

fn sparse(offset: usize, v: &[i64]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(j, &x)| (offset + j, BigInt::from(x)))
        .collect()
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let m = p.num_generators();
    let mut h = HermiteBasis::new(m);
    for r in p.relators() {
        h.insert(sparse(0, &exponent_sum(m, r)));
    }
    h.quotient_invariants()
}

/// Section q: E → ℤ^C of the exponent map on the subgroup generated by the
/// relators, taking e = Σ aᵤ bᵤ to the k-part of Π (bᵤ, 0)^{aᵤ} in basis order.
struct QuadraticSection {
    basis: Vec<(usize, Vec<i64>)>,
}

impl QuadraticSection {
    fn new(m: usize, exps: &[Vec<i64>]) -> Self {
        let mut h = HermiteBasis::new(m);
        for e in exps {
            h.insert(sparse(0, e));
        }
        let basis = h
            .rows()
            .map(|(&pc, row)| {
                let mut dense = vec![0i64; m];
                for (j, x) in row {
                    dense[*j] = i64::try_from(x).expect("exponent basis entry overflows i64");
                }
                (pc, dense)
            })
            .collect();
        QuadraticSection { basis }
    }

    fn coefficients(&self, e: &[i64]) -> Vec<i64> {
        let mut rest = e.to_vec();
        let mut a = Vec::with_capacity(self.basis.len());
        for (pc, b) in &self.basis {
            let c = rest[*pc] / b[*pc];
            debug_assert_eq!(rest[*pc] % b[*pc], 0);
            for (r, x) in rest.iter_mut().zip(b) {
                *r -= c * x;
            }
            a.push(c);
        }
        debug_assert!(rest.iter().all(|&x| x == 0), "exponent vector outside the relator span");
        a
    }

    fn eval(&self, e: &[i64], ncomm: usize) -> Vec<i64> {
        let a = self.coefficients(e);
        let mut q = vec![0i64; ncomm];
        for (u, (_, bu)) in self.basis.iter().enumerate() {
            if a[u] == 0 {
                continue;
            }
            let self_term = beta(bu, bu);
            let binom = a[u] * (a[u] - 1) / 2;
            for (o, t) in q.iter_mut().zip(&self_term) {
                *o += binom * t;
            }
            for (v, (_, bv)) in self.basis.iter().enumerate().skip(u + 1) {
                if a[v] == 0 {
                    continue;
                }
                for (o, t) in q.iter_mut().zip(beta(bu, bv)) {
                    *o += a[u] * a[v] * t;
                }
            }
        }
        q
    }
}

/// Γ₂G/Γ₃G for G = F/N, computed inside the free class-2 group Φ = F/Γ₃F.
///
/// Γ₂G/Γ₃G ≅ Γ₂Φ / (Γ₂Φ ∩ N̄) with N̄ the normal closure of the relators in Φ.
/// Conjugation changes a relator r by the central element [r, g], which is
/// bilinear in the exponent vectors, so N̄ = ⟨r̄⟩ · Z with
/// Z = span{ bracket(e(r), eⱼ) } over relators r and generators j.
/// Modulo Z the map (e, k) ↦ (e, k − q(e)) is a homomorphism on the preimage
/// of span{e(r)}: its failure to be additive is Σ aᵤa'ᵥ bracket(bᵤ, bᵥ) ∈ Z.
/// N̄ therefore maps onto the lattice spanned by (e(r), k(r) − q(e(r))) and (0, Z),
/// and Γ₂Φ ∩ N̄ is that lattice meet 0 ⊕ ℤ^C.
pub fn gamma2_mod_gamma3(p: &Presentation) -> AbelianInvariants {
    let m = p.num_generators();
    let c = num_commutators(m);
    let collected: Vec<Class2Vector> = p
        .relators()
        .par_iter()
        .map(|r| collect_class2(m, r).expect("relator letters lie in range"))
        .collect();
    let exps: Vec<Vec<i64>> = collected.iter().map(|v| v.e.clone()).collect();
    let section = QuadraticSection::new(m, &exps);

    let mut rows: Vec<SparseRow> = collected
        .par_iter()
        .map(|v| {
            let q = section.eval(&v.e, c);
            let k: Vec<i64> = v.k.iter().zip(&q).map(|(x, y)| x - y).collect();
            let mut row = sparse(0, &v.e);
            row.extend(sparse(m, &k));
            row
        })
        .collect();
    let conj: Vec<SparseRow> = exps
        .par_iter()
        .filter(|e| e.iter().any(|&x| x != 0))
        .flat_map_iter(|e| {
            (0..m).map(move |j| {
                let mut unit = vec![0; m];
                unit[j] = 1;
                sparse(m, &bracket(e, &unit))
            })
        })
        .collect();
    rows.extend(conj);

    let mut h = HermiteBasis::new(m + c);
    for row in rows {
        if !row.is_empty() {
            h.insert(row);
        }
    }
    let mut section_lattice = HermiteBasis::new(c);
    for (_, row) in h.tail(m).rows() {
        section_lattice.insert(row.iter().map(|(j, x)| (j - m, x.clone())).collect());
    }
    debug_assert!(section_lattice.rows().all(|(_, r)| r.iter().all(|(_, x)| !x.is_zero())));
    section_lattice.quotient_invariants()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::perm::{Perm, SymmetricGroup};
    use crate::presentation::{build_presentation, Family};
    use std::collections::HashSet;

    fn pres(gens: usize, rels: &[&[GenLetter]]) -> Presentation {
        Presentation::custom(
            "test",
            (1..=gens).map(|i| format!("g{i}")).collect(),
            rels.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    /// |G/Γ₂| and |Γ₂/Γ₃| of a finite permutation group by enumeration.
    fn lcs_orders(n: usize, gens: &[Perm]) -> (usize, usize) {
        let s = SymmetricGroup::new(n);
        let g: Vec<Perm> = s.generated_subgroup(gens).into_iter().collect();
        let comm = |a: &Perm, b: &Perm| s.mul(&s.mul(&s.inv(a), &s.inv(b)), &s.mul(a, b));
        let set = |xs: &[Perm], ys: &[Perm]| -> Vec<Perm> {
            let gens: HashSet<Perm> = xs.iter().flat_map(|x| ys.iter().map(move |y| comm(x, y))).collect();
            s.generated_subgroup(&gens.into_iter().collect::<Vec<_>>()).into_iter().collect()
        };
        let g2 = set(&g, &g);
        let g3 = set(&g2, &g);
        (g.len() / g2.len(), g2.len() / g3.len())
    }

    fn order(a: &AbelianInvariants) -> Option<usize> {
        (a.rank == 0).then(|| usize::try_from(&a.torsion_order()).unwrap())
    }

    #[test]
    fn s3_against_enumeration() {
        let p = pres(2, &[&[(0, 1), (0, 1)], &[(1, 1), (1, 1)], &[(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)]]);
        let gens = [Perm::transposition(3, 1, 2), Perm::transposition(3, 2, 3)];
        let (ab, sec) = lcs_orders(3, &gens);
        assert_eq!(abelianization(&p).to_string(), "Z/2");
        assert_eq!(order(&abelianization(&p)), Some(ab));
        assert_eq!(order(&gamma2_mod_gamma3(&p)), Some(sec));
        assert_eq!(gamma2_mod_gamma3(&p).to_string(), "0");
    }

    #[test]
    fn d4_against_enumeration() {
        // a = rotation, b = reflection of the square
        let p = pres(2, &[&[(0, 1); 4], &[(1, 1), (1, 1)], &[(0, 1), (1, 1), (0, 1), (1, 1)]]);
        let gens = [Perm::from_images(&[2, 3, 4, 1]).unwrap(), Perm::from_images(&[4, 3, 2, 1]).unwrap()];
        let (ab, sec) = lcs_orders(4, &gens);
        assert_eq!((ab, sec), (4, 2));
        assert_eq!(order(&abelianization(&p)), Some(ab));
        assert_eq!(gamma2_mod_gamma3(&p).to_string(), "Z/2");
    }

    #[test]
    fn free_groups() {
        for m in 1..6 {
            let p = pres(m, &[]);
            assert_eq!(gamma2_mod_gamma3(&p), AbelianInvariants::new(m * (m - 1) / 2, vec![]));
            assert_eq!(abelianization(&p), AbelianInvariants::new(m, vec![]));
        }
    }

    #[test]
    fn relators_with_nonzero_exponents_need_the_section() {
        // ⟨g₁,g₂,g₃ | g₁g₂g₃, g₃⁻¹g₂⁻¹g₁⁻¹⟩ is free on g₁, g₂
        let p = pres(3, &[&[(0, 1), (1, 1), (2, 1)], &[(2, -1), (1, -1), (0, -1)]]);
        assert_eq!(gamma2_mod_gamma3(&p).to_string(), "Z^1");
        // ℤ² = ⟨a, b | [a, b]⟩ and ℤ × (ℤ/2)
        assert_eq!(gamma2_mod_gamma3(&pres(2, &[&[(0, -1), (1, -1), (0, 1), (1, 1)]])).to_string(), "0");
        assert_eq!(abelianization(&pres(2, &[&[(0, -1), (1, -1), (0, 1), (1, 1)], &[(1, 1), (1, 1)]])).to_string(), "Z^1 + Z/2");
    }

    #[test]
    fn family_values() {
        let inv = |f, n| {
            let p = build_presentation(f, n).unwrap();
            (abelianization(&p).to_string(), gamma2_mod_gamma3(&p).to_string())
        };
        assert_eq!(inv(Family::VB, 3), ("Z^1 + Z/2".into(), "Z/2".into()));
        assert_eq!(inv(Family::VB, 4), ("Z^1 + Z/2".into(), "0".into()));
        assert_eq!(inv(Family::VP, 3), ("Z^6".into(), "Z^9".into()));
        assert_eq!(inv(Family::H, 3).0, "Z^2");
        assert_eq!(inv(Family::H, 4), ("Z^1".into(), "0".into()));
        assert_eq!(inv(Family::S, 4), ("Z/2".into(), "0".into()));
    }
}
