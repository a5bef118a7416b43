//! Tensor products over a commutative ring and base change along ring maps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, IntMatrix};

use super::{quotient_maps, AlgModule, Algebra, IntModule, Matrix, ModMor, Module, Ring};

/// A ring homomorphism between the supported rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    kind: RingMapKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RingMapKind {
    Identity,
    /// `Z → F_p`.
    Reduction,
    /// `F_p`-linear algebra map; column `a` is the image of basis element `a`.
    Linear(FpMatrix),
}

impl RingMap {
    pub fn identity(ring: &Ring) -> Self {
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            kind: RingMapKind::Identity,
        }
    }

    pub fn reduction(p: u64) -> Result<Self> {
        Ok(RingMap {
            source: Ring::Integers,
            target: Ring::prime_field(p)?,
            kind: RingMapKind::Reduction,
        })
    }

    /// Algebra map given by the images of the source basis; checked to be
    /// unital and multiplicative.
    pub fn linear(source: &Arc<Algebra>, target: &Arc<Algebra>, images: FpMatrix) -> Result<Self> {
        if source.prime() != target.prime() || images.rows() != target.dim() || images.cols() != source.dim() {
            return Err(Error::RingMismatch("ring map has the wrong shape".into()));
        }
        if images.mul_vec(source.unit())? != *target.unit() {
            return Err(Error::InvalidRing("ring map does not preserve the unit".into()));
        }
        for a in 0..source.dim() {
            for b in 0..source.dim() {
                let lhs = images.mul_vec(&source.mul(&source.basis(a), &source.basis(b)))?;
                let rhs = target.mul(&images.column(a), &images.column(b));
                if lhs != rhs {
                    return Err(Error::InvalidRing(format!(
                        "ring map is not multiplicative on ({}, {})",
                        source.labels()[a],
                        source.labels()[b]
                    )));
                }
            }
        }
        Ok(RingMap {
            source: Ring::Algebra(source.clone()),
            target: Ring::Algebra(target.clone()),
            kind: RingMapKind::Linear(images),
        })
    }

    /// Group homomorphism extended linearly: basis element `g` goes to basis
    /// element `element_map[g]`.
    pub fn group_hom(source: &Arc<Algebra>, target: &Arc<Algebra>, element_map: &[usize]) -> Result<Self> {
        let mut m = FpMatrix::zeros(source.prime(), target.dim(), source.dim());
        if element_map.len() != source.dim() || element_map.iter().any(|&x| x >= target.dim()) {
            return Err(Error::RingMismatch("element map has the wrong shape".into()));
        }
        for (g, &h) in element_map.iter().enumerate() {
            m.set(h, g, 1);
        }
        Self::linear(source, target, m)
    }

    /// The augmentation onto the prime field.
    pub fn augmentation(source: &Arc<Algebra>) -> Result<Self> {
        let aug = source
            .augmentation()
            .ok_or_else(|| Error::InvalidRing("algebra has no augmentation".into()))?;
        let target = Arc::new(Algebra::prime_field(source.prime())?);
        let m = FpMatrix::new(source.prime(), 1, source.dim(), aug.clone())?;
        Self::linear(source, &target, m)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }
}

/// `A ⊗_R B` over a commutative ring.
pub fn tensor(a: &Module, b: &Module) -> Result<Module> {
    match (a.int(), b.int(), a.alg(), b.alg()) {
        (Some(x), Some(y), _, _) => Ok(int_tensor(x, y).into()),
        (_, _, Some(x), Some(y)) => Ok(alg_tensor(x, y)?.0.into()),
        _ => Err(Error::RingMismatch("tensor of modules over different rings".into())),
    }
}

/// `f ⊗ g : A ⊗ B → A' ⊗ B'`.
pub fn tensor_mor(f: &ModMor, g: &ModMor) -> Result<ModMor> {
    let source = tensor(f.source(), g.source())?;
    let target = tensor(f.target(), g.target())?;
    let matrix = match (f.matrix(), g.matrix()) {
        (Matrix::Int(x), Matrix::Int(y)) => Matrix::Int(x.kron(y)),
        (Matrix::Fp(x), Matrix::Fp(y)) => {
            let (_, _, s_src) = alg_tensor(f.source().alg().unwrap(), g.source().alg().unwrap())?;
            let (_, q_tgt, _) = alg_tensor(f.target().alg().unwrap(), g.target().alg().unwrap())?;
            Matrix::Fp(q_tgt.mul(&x.kron(y))?.mul(&s_src)?)
        }
        _ => return Err(Error::RingMismatch("tensor of maps over different rings".into())),
    };
    ModMor::unchecked(source, target, matrix)
}

fn int_tensor(a: &IntModule, b: &IntModule) -> IntModule {
    let (ga, gb) = (a.gens(), b.gens());
    let left = a.relations().kron(&IntMatrix::identity(gb));
    let right = IntMatrix::identity(ga).kron(b.relations());
    IntModule::new(left.vstack(&right).expect("same width"))
}

/// Tensor module together with the quotient map from the `F_p`-tensor and a
/// section of it.
fn alg_tensor(a: &AlgModule, b: &AlgModule) -> Result<(AlgModule, FpMatrix, FpMatrix)> {
    let alg = a.algebra();
    if alg != b.algebra() {
        return Err(Error::RingMismatch("tensor of modules over different algebras".into()));
    }
    if !alg.is_commutative() {
        return Err(Error::Unsupported("tensor product over a noncommutative algebra".into()));
    }
    let p = alg.prime();
    let (n, m) = (a.dim(), b.dim());
    let (ia, ib) = (FpMatrix::identity(p, n), FpMatrix::identity(p, m));
    let mut rel = FpMatrix::zeros(p, n * m, 0);
    for e in 0..alg.dim() {
        let d = a.action(e).kron(&ib).sub(&ia.kron(b.action(e)))?;
        rel = rel.hstack(&d)?;
    }
    let (q, s) = quotient_maps(&rel);
    let actions = (0..alg.dim())
        .map(|e| q.mul(&a.action(e).kron(&ib))?.mul(&s))
        .collect::<Result<Vec<_>>>()?;
    let module = AlgModule::from_parts(alg.clone(), q.rows(), actions);
    Ok((module, q, s))
}

/// `S ⊗_R A` along `φ : R → S`.
pub fn base_change(phi: &RingMap, a: &Module) -> Result<Module> {
    Ok(base_change_parts(phi, a)?.0)
}

pub fn base_change_mor(phi: &RingMap, f: &ModMor) -> Result<ModMor> {
    let (source, _, s_src) = base_change_parts(phi, f.source())?;
    let (target, q_tgt, _) = base_change_parts(phi, f.target())?;
    let matrix = match (&phi.kind, f.matrix()) {
        (RingMapKind::Identity, m) => m.clone(),
        (RingMapKind::Reduction, Matrix::Int(m)) => {
            let p = phi.target.as_algebra().expect("prime field").prime();
            let mp = reduce(m, p);
            Matrix::Fp(q_tgt.expect("quotient").mul(&mp)?.mul(&s_src.expect("section"))?)
        }
        (RingMapKind::Linear(_), Matrix::Fp(m)) => {
            let t = phi.target.as_algebra().expect("algebra");
            let lifted = FpMatrix::identity(t.prime(), t.dim()).kron(m);
            Matrix::Fp(q_tgt.expect("quotient").mul(&lifted)?.mul(&s_src.expect("section"))?)
        }
        _ => return Err(Error::RingMismatch("morphism not over the source ring".into())),
    };
    ModMor::unchecked(source, target, matrix)
}

fn reduce(m: &IntMatrix, p: u64) -> FpMatrix {
    let rows: Vec<Vec<i64>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    let x = m.get(r, c) % num_bigint::BigInt::from(p);
                    i64::try_from(x).expect("residue fits")
                })
                .collect()
        })
        .collect();
    FpMatrix::from_rows(p, &rows, m.cols()).expect("prime")
}

type Parts = (Module, Option<FpMatrix>, Option<FpMatrix>);

fn base_change_parts(phi: &RingMap, a: &Module) -> Result<Parts> {
    if a.ring() != phi.source {
        return Err(Error::RingMismatch("module is not over the source of the ring map".into()));
    }
    match &phi.kind {
        RingMapKind::Identity => Ok((a.clone(), None, None)),
        RingMapKind::Reduction => {
            let x = a.int().expect("integer module");
            let t = phi.target.as_algebra().expect("prime field");
            let p = t.prime();
            let rel = reduce(&x.relations().transpose(), p);
            let rel = if rel.rows() == 0 {
                FpMatrix::zeros(p, x.gens(), 0)
            } else {
                rel
            };
            let (q, s) = quotient_maps(&rel);
            let dim = q.rows();
            let module = AlgModule::from_parts(t.clone(), dim, vec![FpMatrix::identity(p, dim)]);
            Ok((module.into(), Some(q), Some(s)))
        }
        RingMapKind::Linear(images) => {
            let x = a.alg().expect("algebra module");
            let src = x.algebra();
            let t = phi.target.as_algebra().expect("algebra");
            let p = t.prime();
            let (ds, n) = (t.dim(), x.dim());
            let (is, ia) = (FpMatrix::identity(p, ds), FpMatrix::identity(p, n));
            let mut rel = FpMatrix::zeros(p, ds * n, 0);
            for r in 0..src.dim() {
                let right = t.right_mult_by(&images.column(r));
                let d = right.kron(&ia).sub(&is.kron(x.action(r)))?;
                rel = rel.hstack(&d)?;
            }
            let (q, s) = quotient_maps(&rel);
            let actions = (0..ds)
                .map(|e| q.mul(&t.left_mult(e).kron(&ia))?.mul(&s))
                .collect::<Result<Vec<_>>>()?;
            let module = AlgModule::from_parts(t.clone(), q.rows(), actions);
            Ok((module.into(), Some(q), Some(s)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianCategory;
    use crate::module::ModCat;

    #[test]
    fn cyclic_tensors() {
        let t = tensor(&Module::cyclic(2), &Module::cyclic(3)).unwrap();
        assert!(t.is_zero());
        let t = tensor(&Module::cyclic(4), &Module::cyclic(6)).unwrap();
        assert_eq!(t.describe(), "Z/2");
        let t = tensor(&Module::cyclic(5), &Module::cyclic(0)).unwrap();
        assert_eq!(t.describe(), "Z/5");
    }

    #[test]
    fn tensor_with_the_ring_is_trivial_over_an_algebra() {
        let ring = Ring::cyclic_group(2, 2).unwrap();
        let a = Module::free(&ring, 1);
        let triv = Module::trivial(&ring).unwrap();
        let t = tensor(&a, &triv).unwrap();
        assert_eq!(t.vector_dim(), Some(1));
    }

    #[test]
    fn times_two_tensored_with_z2_vanishes() {
        let z = Module::cyclic(0);
        let two = ModMor::from_int_rows(&z, &z, &[vec![2]]).unwrap();
        let z2 = Module::cyclic(2);
        let c = ModCat::integers();
        let f = tensor_mor(&two, &c.identity(&z2)).unwrap();
        assert!(c.is_zero(&f));
        assert_eq!(f.source().describe(), "Z/2");
    }

    #[test]
    fn reduction_mod_p() {
        let phi = RingMap::reduction(3).unwrap();
        let m = base_change(&phi, &Module::int_factors(&[6, 9, 0, 2])).unwrap();
        // F_3 ⊗ (Z/6 ⊕ Z/9 ⊕ Z ⊕ Z/2) = F_3^3
        assert_eq!(m.vector_dim(), Some(3));
    }

    #[test]
    fn coinvariants_of_free_module() {
        let ring = Ring::cyclic_group(2, 4).unwrap();
        let alg = ring.as_algebra().unwrap();
        let phi = RingMap::augmentation(alg).unwrap();
        let m = base_change(&phi, &Module::free(&ring, 3)).unwrap();
        assert_eq!(m.vector_dim(), Some(3));
        let t = base_change(&phi, &Module::trivial(&ring).unwrap()).unwrap();
        assert_eq!(t.vector_dim(), Some(1));
    }

    #[test]
    fn quotient_c4_to_c2() {
        let g = Arc::new(Algebra::cyclic_group(2, 4).unwrap());
        let h = Arc::new(Algebra::cyclic_group(2, 2).unwrap());
        let phi = RingMap::group_hom(&g, &h, &[0, 1, 0, 1]).unwrap();
        let m = base_change(&phi, &Module::free(&Ring::Algebra(g.clone()), 1)).unwrap();
        assert_eq!(m.vector_dim(), Some(2));
        assert!(RingMap::group_hom(&g, &h, &[0, 1, 1, 1]).is_err());
    }
}
