//! Finitely presented abelian groups `Z^g / L`, where `L` is spanned by the
//! rows of a relation matrix.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{IntMatrix, IntVector};

/// Smith data of a presentation: with `R` the relation matrix, `U·Rᵀ·V = D`.
/// An element `x` lies in the relation lattice iff every coordinate of `U·x`
/// is divisible by the matching entry of `factors` (zero meaning "is zero").
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct PresentationData {
    u: IntMatrix,
    u_inv: IntMatrix,
    factors: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntModule {
    relations: IntMatrix,
    data: Arc<PresentationData>,
}

impl IntModule {
    /// Module presented by `relations` (rows are relations, columns generators).
    pub fn new(relations: IntMatrix) -> Self {
        let relations = if relations.cols() == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            relations
        };
        let g = relations.cols();
        let s = relations.transpose().snf();
        let factors = (0..g)
            .map(|k| {
                if k < s.rank {
                    s.d.get(k, k).clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        IntModule {
            relations,
            data: Arc::new(PresentationData {
                u: s.u,
                u_inv: s.u_inv,
                factors,
            }),
        }
    }

    pub fn zero() -> Self {
        Self::new(IntMatrix::zeros(0, 0))
    }

    pub fn free(rank: usize) -> Self {
        Self::new(IntMatrix::zeros(0, rank))
    }

    /// `Z/n` on one generator; `n = 0` gives `Z`.
    pub fn cyclic(n: i64) -> Self {
        Self::from_factors(&[BigInt::from(n)])
    }

    /// `⊕ Z/d_i` with one generator per entry, `0` entries giving copies of `Z`.
    pub fn from_factors(factors: &[BigInt]) -> Self {
        let g = factors.len();
        let rows: Vec<usize> = (0..g).filter(|&i| !factors[i].is_zero()).collect();
        let mut rel = IntMatrix::zeros(rows.len(), g);
        for (r, &i) in rows.iter().enumerate() {
            rel.set(r, i, factors[i].abs());
        }
        Self::new(rel)
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    #[inline]
    pub fn gens(&self) -> usize {
        self.relations.cols()
    }

    /// Torsion invariant factors (all `> 1`, in divisibility order) and free rank.
    pub fn invariants(&self) -> (Vec<BigInt>, usize) {
        let torsion = self
            .data
            .factors
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect();
        let free = self.data.factors.iter().filter(|d| d.is_zero()).count();
        (torsion, free)
    }

    pub fn is_zero_module(&self) -> bool {
        self.data.factors.iter().all(One::is_one)
    }

    pub fn is_projective(&self) -> bool {
        self.data.factors.iter().all(|d| d.is_zero() || d.is_one())
    }

    /// Canonical representative of the class of `x` in Smith coordinates.
    pub fn normal_form(&self, x: &[BigInt]) -> IntVector {
        let y = self.data.u.mul_vec(x).expect("coordinate length");
        y.into_iter()
            .zip(&self.data.factors)
            .map(|(v, d)| {
                if d.is_zero() {
                    v
                } else {
                    v.mod_floor(d)
                }
            })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.normal_form(x).iter().all(Zero::is_zero)
    }

    /// For a matrix `f` with `gens()` rows, the linear system whose integer
    /// solutions `(x, w)` are exactly the `x` with `f·x ≡ 0` modulo relations:
    /// `[ (U·f)_sel | -D_tors ]`.
    fn membership_system(&self, f: &IntMatrix) -> IntMatrix {
        let uf = self.data.u.mul(f).expect("matching shapes");
        let sel: Vec<usize> = (0..self.gens())
            .filter(|&k| !self.data.factors[k].is_one())
            .collect();
        let tors: Vec<usize> = sel
            .iter()
            .copied()
            .filter(|&k| !self.data.factors[k].is_zero())
            .collect();
        let mut b = IntMatrix::zeros(sel.len(), f.cols() + tors.len());
        for (r, &k) in sel.iter().enumerate() {
            for c in 0..f.cols() {
                b.set(r, c, uf.get(k, c).clone());
            }
            if let Some(t) = tors.iter().position(|&j| j == k) {
                b.set(r, f.cols() + t, -self.data.factors[k].clone());
            }
        }
        b
    }

    fn selected_rhs(&self, y: &[BigInt]) -> IntVector {
        let uy = self.data.u.mul_vec(y).expect("coordinate length");
        (0..self.gens())
            .filter(|&k| !self.data.factors[k].is_one())
            .map(|k| uy[k].clone())
            .collect()
    }

    /// Some `x` with `f·x ≡ y` modulo the relations of `self`.
    pub fn solve_modulo(&self, f: &IntMatrix, y: &[BigInt]) -> Option<IntVector> {
        let b = self.membership_system(f);
        let rhs = self.selected_rhs(y);
        let sol = b.solve_int(&rhs).ok()??;
        Some(sol[..f.cols()].to_vec())
    }

    /// Generators (as columns) of `{x : f·x ≡ 0}` modulo relations of `self`.
    pub fn preimage_of_zero(&self, f: &IntMatrix) -> IntMatrix {
        let b = self.membership_system(f);
        let k = b.kernel_basis();
        let rows: Vec<usize> = (0..f.cols()).collect();
        let proj = k.select_rows(&rows);
        drop_zero_columns(&proj)
    }

    /// Simplified module `S` with isomorphisms: `to_self` maps generators of
    /// `S` into `self` and `from_self` the reverse.
    pub fn simplify(&self) -> Simplified {
        let kept: Vec<usize> = (0..self.gens())
            .filter(|&k| !self.data.factors[k].is_one())
            .collect();
        let factors: Vec<BigInt> = kept.iter().map(|&k| self.data.factors[k].clone()).collect();
        Simplified {
            module: IntModule::from_factors(&factors),
            to_original: self.data.u_inv.select_cols(&kept),
            from_original: self.data.u.select_rows(&kept),
        }
    }

    /// Projective basis of a torsion-free module: generator vectors whose
    /// images form a basis, and the coordinate map onto that basis.
    pub(crate) fn free_basis(&self) -> Option<(Vec<IntVector>, IntMatrix)> {
        if !self.is_projective() {
            return None;
        }
        let free: Vec<usize> = (0..self.gens())
            .filter(|&k| self.data.factors[k].is_zero())
            .collect();
        let basis = free.iter().map(|&k| self.data.u_inv.column(k)).collect();
        Some((basis, self.data.u.select_rows(&free)))
    }
}

#[derive(Clone, Debug)]
pub struct Simplified {
    pub module: IntModule,
    pub to_original: IntMatrix,
    pub from_original: IntMatrix,
}

fn drop_zero_columns(m: &IntMatrix) -> IntMatrix {
    let keep: Vec<usize> = (0..m.cols())
        .filter(|&c| (0..m.rows()).any(|r| !m.get(r, c).is_zero()))
        .collect();
    m.select_cols(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn invariants_of_z2_plus_z3() {
        let m = IntModule::from_factors(&big(&[2, 3]));
        assert_eq!(m.invariants(), (big(&[6]), 0));
    }

    #[test]
    fn normal_forms_identify_equal_classes() {
        let m = IntModule::cyclic(4);
        assert_eq!(m.normal_form(&big(&[5])), m.normal_form(&big(&[1])));
        assert!(m.is_zero_element(&big(&[8])));
        assert!(!m.is_zero_element(&big(&[2])));
        let z = IntModule::cyclic(0);
        assert!(!z.is_zero_element(&big(&[3])));
    }

    #[test]
    fn simplify_drops_trivial_generators() {
        // Z^2 / <(1, 2)> ≅ Z
        let m = IntModule::new(IntMatrix::from_rows(&[vec![1, 2]], 2).unwrap());
        let s = m.simplify();
        assert_eq!(s.module.gens(), 1);
        assert_eq!(s.module.invariants(), (vec![], 1));
        let back = s.from_original.mul(&s.to_original).unwrap();
        assert_eq!(back, IntMatrix::identity(1));
    }

    #[test]
    fn zero_columns_normalize_to_zero_module() {
        let m = IntModule::new(IntMatrix::zeros(3, 0));
        assert_eq!(m, IntModule::zero());
    }
}
