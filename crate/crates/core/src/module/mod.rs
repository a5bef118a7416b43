//! The two effective module categories: finitely presented abelian groups
//! and finite-dimensional modules over an `F_p`-algebra.

mod alg_module;
mod int_module;
mod ring;
mod tensor;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use alg_module::AlgModule;
pub use int_module::{IntModule, Simplified};
pub use ring::{cyclic_table, group_algebra, mixed_radix, product_table, Algebra, Ring};
pub use tensor::{base_change, base_change_mor, tensor, tensor_mor, RingMap};

use crate::abelian::{AbelianCategory, Biproduct};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, FpVector, IntMatrix, IntVector};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum ModuleKind {
    Int(IntModule),
    Alg(AlgModule),
}

/// A finitely presented module; cheap to clone.
#[derive(Clone, Eq, Hash)]
pub struct Module(Arc<ModuleKind>);

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl From<IntModule> for Module {
    fn from(m: IntModule) -> Self {
        Module(Arc::new(ModuleKind::Int(m)))
    }
}

impl From<AlgModule> for Module {
    fn from(m: AlgModule) -> Self {
        Module(Arc::new(ModuleKind::Alg(m)))
    }
}

impl Module {
    pub fn int(&self) -> Option<&IntModule> {
        match &*self.0 {
            ModuleKind::Int(m) => Some(m),
            ModuleKind::Alg(_) => None,
        }
    }

    pub fn alg(&self) -> Option<&AlgModule> {
        match &*self.0 {
            ModuleKind::Alg(m) => Some(m),
            ModuleKind::Int(_) => None,
        }
    }

    pub fn ring(&self) -> Ring {
        match &*self.0 {
            ModuleKind::Int(_) => Ring::Integers,
            ModuleKind::Alg(m) => Ring::Algebra(m.algebra().clone()),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        match ring {
            Ring::Integers => IntModule::zero().into(),
            Ring::Algebra(a) => AlgModule::zero(a.clone()).into(),
        }
    }

    pub fn free(ring: &Ring, rank: usize) -> Self {
        match ring {
            Ring::Integers => IntModule::free(rank).into(),
            Ring::Algebra(a) => AlgModule::free(a.clone(), rank).into(),
        }
    }

    /// `Z/n` (`n = 0` gives `Z`).
    pub fn cyclic(n: i64) -> Self {
        IntModule::cyclic(n).into()
    }

    pub fn int_factors(factors: &[i64]) -> Self {
        let f: Vec<BigInt> = factors.iter().map(|&x| BigInt::from(x)).collect();
        IntModule::from_factors(&f).into()
    }

    /// Cokernel presentation over the integers: rows are relations.
    pub fn int_presentation(relations: IntMatrix) -> Self {
        IntModule::new(relations).into()
    }

    pub fn trivial(ring: &Ring) -> Result<Self> {
        match ring {
            Ring::Integers => Ok(Module::free(ring, 1)),
            Ring::Algebra(a) => Ok(AlgModule::trivial(a.clone())?.into()),
        }
    }

    pub fn from_actions(algebra: &Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Result<Self> {
        Ok(AlgModule::new(algebra.clone(), dim, actions)?.into())
    }

    /// Number of listed generators (the rank of the free cover).
    pub fn gens_count(&self) -> usize {
        match &*self.0 {
            ModuleKind::Int(m) => m.gens(),
            ModuleKind::Alg(m) => m.gens().len(),
        }
    }

    /// Underlying `F_p`-dimension (field-based rings only).
    pub fn vector_dim(&self) -> Option<usize> {
        self.alg().map(AlgModule::dim)
    }

    pub fn is_zero(&self) -> bool {
        match &*self.0 {
            ModuleKind::Int(m) => m.is_zero_module(),
            ModuleKind::Alg(m) => m.dim() == 0,
        }
    }

    pub fn is_free(&self) -> bool {
        match &*self.0 {
            ModuleKind::Int(m) => m.is_projective(),
            ModuleKind::Alg(m) => m.free_rank().is_some(),
        }
    }

    /// Human-readable isomorphism type, e.g. `Z/2 ⊕ Z/6 ⊕ Z^2`.
    pub fn describe(&self) -> String {
        match &*self.0 {
            ModuleKind::Int(m) => {
                let (tors, free) = m.invariants();
                let mut parts: Vec<String> = tors.iter().map(|d| format!("Z/{}", d)).collect();
                match free {
                    0 => {}
                    1 => parts.push("Z".into()),
                    r => parts.push(format!("Z^{}", r)),
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" ⊕ ")
                }
            }
            ModuleKind::Alg(m) => {
                if m.dim() == 0 {
                    "0".into()
                } else if m.algebra().dim() == 1 {
                    format!("F{}^{}", m.prime(), m.dim())
                } else {
                    format!("dim {} (F{})", m.dim(), m.prime())
                }
            }
        }
    }

    pub fn element(&self, coords: Coords) -> Result<Element> {
        let ok = match (&*self.0, &coords) {
            (ModuleKind::Int(m), Coords::Int(v)) => v.len() == m.gens(),
            (ModuleKind::Alg(m), Coords::Fp(v)) => v.len() == m.dim(),
            _ => false,
        };
        if !ok {
            return Err(Error::DimensionMismatch("element coordinates".into()));
        }
        Ok(Element {
            parent: self.clone(),
            coords,
        })
    }

    pub fn int_element(&self, coords: &[i64]) -> Result<Element> {
        self.element(Coords::Int(coords.iter().map(|&x| BigInt::from(x)).collect()))
    }

    fn coord_len(&self) -> usize {
        match &*self.0 {
            ModuleKind::Int(m) => m.gens(),
            ModuleKind::Alg(m) => m.dim(),
        }
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            ModuleKind::Int(m) => write!(f, "Module[{} | rel {}]", self.describe(), m.relations()),
            ModuleKind::Alg(_) => write!(f, "Module[{}]", self.describe()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Coords {
    Int(IntVector),
    Fp(FpVector),
}

/// An element of a module, compared through its normal form.
#[derive(Clone, Debug)]
pub struct Element {
    parent: Module,
    coords: Coords,
}

impl Element {
    pub fn parent(&self) -> &Module {
        &self.parent
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn normal_form(&self) -> Coords {
        match (&*self.parent.0, &self.coords) {
            (ModuleKind::Int(m), Coords::Int(v)) => Coords::Int(m.normal_form(v)),
            (_, c) => c.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self.normal_form() {
            Coords::Int(v) => v.iter().all(Zero::is_zero),
            Coords::Fp(v) => v.iter().all(|&x| x == 0),
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.normal_form() == other.normal_form()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Matrix {
    Int(IntMatrix),
    Fp(FpMatrix),
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Matrix::Int(m) => write!(f, "{}", m),
            Matrix::Fp(m) => write!(f, "{}", m),
        }
    }
}

impl Matrix {
    pub fn int(&self) -> Option<&IntMatrix> {
        match self {
            Matrix::Int(m) => Some(m),
            Matrix::Fp(_) => None,
        }
    }

    pub fn fp(&self) -> Option<&FpMatrix> {
        match self {
            Matrix::Fp(m) => Some(m),
            Matrix::Int(_) => None,
        }
    }
}

/// A module homomorphism, given by the images of the source generators
/// (integers) or by its matrix on the underlying vector spaces (algebras).
/// Columns index the source. Equality is structural; use
/// `AbelianCategory::equal` for equality as homomorphisms.
#[derive(Clone, PartialEq)]
pub struct ModMor {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl fmt::Debug for ModMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModMor({} -> {}: {:?})",
            self.source.describe(),
            self.target.describe(),
            self.matrix
        )
    }
}

impl ModMor {
    /// Checked constructor: the matrix must have the right shape and define a
    /// module homomorphism.
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Self> {
        let f = Self::unchecked(source, target, matrix)?;
        f.check_well_defined()?;
        Ok(f)
    }

    pub fn from_int_rows(source: &Module, target: &Module, rows: &[Vec<i64>]) -> Result<Self> {
        let m = IntMatrix::from_rows(rows, source.gens_count())?;
        Self::new(source.clone(), target.clone(), Matrix::Int(m))
    }

    pub(crate) fn unchecked(source: Module, target: Module, matrix: Matrix) -> Result<Self> {
        let ok = match (&*source.0, &*target.0, &matrix) {
            (ModuleKind::Int(s), ModuleKind::Int(t), Matrix::Int(m)) => {
                m.rows() == t.gens() && m.cols() == s.gens()
            }
            (ModuleKind::Alg(s), ModuleKind::Alg(t), Matrix::Fp(m)) => {
                s.algebra() == t.algebra() && m.rows() == t.dim() && m.cols() == s.dim()
            }
            _ => false,
        };
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "matrix {:?} does not fit {} -> {}",
                matrix,
                source.describe(),
                target.describe()
            )));
        }
        Ok(ModMor {
            source,
            target,
            matrix,
        })
    }

    fn check_well_defined(&self) -> Result<()> {
        match (&*self.source.0, &*self.target.0, &self.matrix) {
            (ModuleKind::Int(s), ModuleKind::Int(t), Matrix::Int(m)) => {
                for r in 0..s.relations().rows() {
                    let img = m.mul_vec(&s.relations().row(r))?;
                    if !t.is_zero_element(&img) {
                        return Err(Error::NotWellDefined(format!(
                            "relation {} does not map to zero",
                            r
                        )));
                    }
                }
                Ok(())
            }
            (ModuleKind::Alg(s), ModuleKind::Alg(t), Matrix::Fp(m)) => {
                for (a, (rs, rt)) in s.actions().iter().zip(t.actions()).enumerate() {
                    if m.mul(rs)? != rt.mul(m)? {
                        return Err(Error::NotWellDefined(format!(
                            "does not commute with the action of {}",
                            s.algebra().labels()[a]
                        )));
                    }
                }
                Ok(())
            }
            _ => unreachable!("shape checked on construction"),
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.parent != self.source {
            return Err(Error::DimensionMismatch("element not in source".into()));
        }
        let coords = match (&self.matrix, &x.coords) {
            (Matrix::Int(m), Coords::Int(v)) => Coords::Int(m.mul_vec(v)?),
            (Matrix::Fp(m), Coords::Fp(v)) => Coords::Fp(m.mul_vec(v)?),
            _ => return Err(Error::RingMismatch("element coordinates".into())),
        };
        Ok(Element {
            parent: self.target.clone(),
            coords,
        })
    }
}

/// Some `x` with `f(x) = y`, or `None` when `y` is not in the image.
pub fn preimage(f: &ModMor, y: &Element) -> Result<Option<Element>> {
    if y.parent != f.target {
        return Err(Error::DimensionMismatch("element not in target".into()));
    }
    let coords = match (&*f.target.0, &f.matrix, &y.coords) {
        (ModuleKind::Int(t), Matrix::Int(m), Coords::Int(v)) => t.solve_modulo(m, v).map(Coords::Int),
        (ModuleKind::Alg(_), Matrix::Fp(m), Coords::Fp(v)) => m.solve_vec(v)?.map(Coords::Fp),
        _ => return Err(Error::RingMismatch("element coordinates".into())),
    };
    Ok(coords.map(|coords| Element {
        parent: f.source.clone(),
        coords,
    }))
}

/// The category of finitely presented modules over a fixed ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModCat {
    ring: Ring,
}

impl ModCat {
    pub fn new(ring: Ring) -> Self {
        ModCat { ring }
    }

    pub fn integers() -> Self {
        ModCat::new(Ring::Integers)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The homomorphism sending generator `j` of `source` to `images[j]`,
    /// given in the coordinates of `target` (generators over `Z`, the
    /// underlying vector space over an algebra).
    pub fn map_from_images(&self, source: &Module, target: &Module, images: &[Coords]) -> Result<ModMor> {
        self.check_ring(source)?;
        self.check_ring(target)?;
        if images.len() != source.gens_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                images.len(),
                source.gens_count()
            )));
        }
        let cover = self.free_cover(source)?;
        let free = cover.source.clone();
        let u = match &*target.0 {
            ModuleKind::Int(t) => {
                let cols = images
                    .iter()
                    .map(|c| match c {
                        Coords::Int(v) if v.len() == t.gens() => Ok(v.clone()),
                        _ => Err(Error::DimensionMismatch("image coordinates".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.int_mor(&free, target, IntMatrix::from_columns(t.gens(), &cols)?)
            }
            ModuleKind::Alg(t) => {
                let alg = t.algebra();
                let mut cols = Vec::new();
                for c in images {
                    let y = match c {
                        Coords::Fp(v) if v.len() == t.dim() => v.iter().map(|x| x % alg.prime()).collect::<Vec<_>>(),
                        _ => return Err(Error::DimensionMismatch("image coordinates".into())),
                    };
                    for e in 0..alg.dim() {
                        cols.push(t.action(e).mul_vec(&y)?);
                    }
                }
                self.fp_mor(&free, target, FpMatrix::from_columns(alg.prime(), t.dim(), &cols))
            }
        };
        self.factor_through_epi(&cover, &u)?
            .ok_or_else(|| Error::NotWellDefined("the images do not satisfy the relations of the source".into()))
    }

    fn check_ring(&self, m: &Module) -> Result<()> {
        if m.ring() != self.ring {
            return Err(Error::RingMismatch(format!(
                "module over {:?} used in category over {:?}",
                m.ring(),
                self.ring
            )));
        }
        Ok(())
    }

    fn int_mor(&self, s: &Module, t: &Module, m: IntMatrix) -> ModMor {
        ModMor {
            source: s.clone(),
            target: t.clone(),
            matrix: Matrix::Int(m),
        }
    }

    fn fp_mor(&self, s: &Module, t: &Module, m: FpMatrix) -> ModMor {
        ModMor {
            source: s.clone(),
            target: t.clone(),
            matrix: Matrix::Fp(m),
        }
    }

    fn prime(&self) -> u64 {
        self.ring.as_algebra().map(|a| a.prime()).unwrap_or(0)
    }

    /// Column `j` of `f` as an element of the target.
    fn column_element(f: &ModMor, j: usize) -> Element {
        let coords = match &f.matrix {
            Matrix::Int(m) => Coords::Int(m.column(j)),
            Matrix::Fp(m) => Coords::Fp(m.column(j)),
        };
        Element {
            parent: f.target.clone(),
            coords,
        }
    }

    fn matrix_from_coords(&self, rows: usize, cols: Vec<Coords>) -> Result<Matrix> {
        match &self.ring {
            Ring::Integers => {
                let cols: Vec<IntVector> = cols
                    .into_iter()
                    .map(|c| match c {
                        Coords::Int(v) => v,
                        Coords::Fp(_) => unreachable!("integer module"),
                    })
                    .collect();
                Ok(Matrix::Int(IntMatrix::from_columns(rows, &cols)?))
            }
            Ring::Algebra(a) => {
                let cols: Vec<FpVector> = cols
                    .into_iter()
                    .map(|c| match c {
                        Coords::Fp(v) => v,
                        Coords::Int(_) => unreachable!("algebra module"),
                    })
                    .collect();
                Ok(Matrix::Fp(FpMatrix::from_columns(a.prime(), rows, &cols)))
            }
        }
    }

    fn int_kernel(&self, f: &ModMor, s: &IntModule, t: &IntModule, m: &IntMatrix) -> Result<(Module, ModMor)> {
        let gens = t.preimage_of_zero(m);
        let rel_gens = s.preimage_of_zero(&gens);
        let presented = IntModule::new(rel_gens.transpose());
        let simp = presented.simplify();
        let mono = gens.mul(&simp.to_original)?;
        let k: Module = simp.module.into();
        Ok((k.clone(), self.int_mor(&k, &f.source, mono)))
    }

    fn int_cokernel(&self, f: &ModMor, t: &IntModule, m: &IntMatrix) -> Result<(Module, ModMor)> {
        let rel = t.relations().vstack(&m.transpose())?;
        let presented = IntModule::new(rel);
        let simp = presented.simplify();
        let c: Module = simp.module.into();
        Ok((c.clone(), self.int_mor(&f.target, &c, simp.from_original)))
    }

    fn alg_kernel(&self, f: &ModMor, s: &AlgModule, m: &FpMatrix) -> Result<(Module, ModMor)> {
        let k = m.kernel_matrix();
        let actions = s
            .actions()
            .iter()
            .map(|act| {
                k.solve(&act.mul(&k)?)?
                    .ok_or_else(|| Error::InvalidModule("kernel not stable under action".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let km: Module = AlgModule::from_parts(s.algebra().clone(), k.cols(), actions).into();
        Ok((km.clone(), self.fp_mor(&km, &f.source, k)))
    }

    fn alg_cokernel(&self, f: &ModMor, t: &AlgModule, m: &FpMatrix) -> Result<(Module, ModMor)> {
        let (q, s) = quotient_maps(m);
        let actions = t
            .actions()
            .iter()
            .map(|act| q.mul(act)?.mul(&s))
            .collect::<Result<Vec<_>>>()?;
        let c: Module = AlgModule::from_parts(t.algebra().clone(), q.rows(), actions).into();
        Ok((c.clone(), self.fp_mor(&f.target, &c, q)))
    }
}

/// For a matrix whose columns span a subspace `W` of `F_p^n`, returns the
/// quotient map `q: F_p^n → F_p^n / W` in coordinates given by the non-pivot
/// positions of `W`'s reduced basis, and the section `s` with `q·s = 1`.
pub(crate) fn quotient_maps(m: &FpMatrix) -> (FpMatrix, FpMatrix) {
    let p = m.prime();
    let n = m.rows();
    let r = m.transpose().rref();
    let rank = r.pivots.len();
    let mut is_pivot = vec![None; n];
    for (i, &c) in r.pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let free: Vec<usize> = (0..n).filter(|&c| is_pivot[c].is_none()).collect();
    let mut q = FpMatrix::zeros(p, free.len(), n);
    for j in 0..n {
        match is_pivot[j] {
            None => {
                let t = free.iter().position(|&c| c == j).expect("free column");
                q.set(t, j, 1);
            }
            Some(i) => {
                debug_assert!(i < rank);
                for (t, &c) in free.iter().enumerate() {
                    let v = r.matrix.get(i, c);
                    q.set(t, j, (p - v) % p);
                }
            }
        }
    }
    let mut s = FpMatrix::zeros(p, n, free.len());
    for (t, &c) in free.iter().enumerate() {
        s.set(c, t, 1);
    }
    (q, s)
}

impl AbelianCategory for ModCat {
    type Obj = Module;
    type Mor = ModMor;

    fn source(&self, f: &ModMor) -> Module {
        f.source.clone()
    }

    fn target(&self, f: &ModMor) -> Module {
        f.target.clone()
    }

    fn zero_object(&self) -> Module {
        Module::zero(&self.ring)
    }

    fn is_zero_object(&self, a: &Module) -> bool {
        a.is_zero()
    }

    fn identity(&self, a: &Module) -> ModMor {
        match &*a.0 {
            ModuleKind::Int(m) => self.int_mor(a, a, IntMatrix::identity(m.gens())),
            ModuleKind::Alg(m) => self.fp_mor(a, a, FpMatrix::identity(m.prime(), m.dim())),
        }
    }

    fn zero_morphism(&self, a: &Module, b: &Module) -> ModMor {
        match (&*a.0, &*b.0) {
            (ModuleKind::Int(s), ModuleKind::Int(t)) => {
                self.int_mor(a, b, IntMatrix::zeros(t.gens(), s.gens()))
            }
            (ModuleKind::Alg(s), ModuleKind::Alg(t)) => {
                self.fp_mor(a, b, FpMatrix::zeros(s.prime(), t.dim(), s.dim()))
            }
            _ => panic!("zero morphism between modules over different rings"),
        }
    }

    fn compose(&self, g: &ModMor, f: &ModMor) -> Result<ModMor> {
        if f.target != g.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {:?} after {:?}",
                g, f
            )));
        }
        let matrix = match (&g.matrix, &f.matrix) {
            (Matrix::Int(a), Matrix::Int(b)) => Matrix::Int(a.mul(b)?),
            (Matrix::Fp(a), Matrix::Fp(b)) => Matrix::Fp(a.mul(b)?),
            _ => return Err(Error::RingMismatch("composite across rings".into())),
        };
        Ok(ModMor {
            source: f.source.clone(),
            target: g.target.clone(),
            matrix,
        })
    }

    fn add(&self, f: &ModMor, g: &ModMor) -> Result<ModMor> {
        if f.source != g.source || f.target != g.target {
            return Err(Error::DimensionMismatch("sum of non-parallel morphisms".into()));
        }
        let matrix = match (&f.matrix, &g.matrix) {
            (Matrix::Int(a), Matrix::Int(b)) => Matrix::Int(a.add(b)?),
            (Matrix::Fp(a), Matrix::Fp(b)) => Matrix::Fp(a.add(b)?),
            _ => return Err(Error::RingMismatch("sum across rings".into())),
        };
        Ok(ModMor {
            source: f.source.clone(),
            target: f.target.clone(),
            matrix,
        })
    }

    fn negate(&self, f: &ModMor) -> ModMor {
        let matrix = match &f.matrix {
            Matrix::Int(a) => Matrix::Int(a.neg()),
            Matrix::Fp(a) => Matrix::Fp(a.neg()),
        };
        ModMor {
            source: f.source.clone(),
            target: f.target.clone(),
            matrix,
        }
    }

    fn is_zero(&self, f: &ModMor) -> bool {
        match (&*f.target.0, &f.matrix) {
            (ModuleKind::Int(t), Matrix::Int(m)) => (0..m.cols()).all(|j| t.is_zero_element(&m.column(j))),
            (_, Matrix::Fp(m)) => m.is_zero(),
            _ => unreachable!("shape checked"),
        }
    }

    fn kernel(&self, f: &ModMor) -> Result<(Module, ModMor)> {
        self.check_ring(&f.source)?;
        match (&*f.source.0, &*f.target.0, &f.matrix) {
            (ModuleKind::Int(s), ModuleKind::Int(t), Matrix::Int(m)) => self.int_kernel(f, s, t, m),
            (ModuleKind::Alg(s), ModuleKind::Alg(_), Matrix::Fp(m)) => self.alg_kernel(f, s, m),
            _ => unreachable!("shape checked"),
        }
    }

    fn cokernel(&self, f: &ModMor) -> Result<(Module, ModMor)> {
        self.check_ring(&f.target)?;
        match (&*f.target.0, &f.matrix) {
            (ModuleKind::Int(t), Matrix::Int(m)) => self.int_cokernel(f, t, m),
            (ModuleKind::Alg(t), Matrix::Fp(m)) => self.alg_cokernel(f, t, m),
            _ => unreachable!("shape checked"),
        }
    }

    fn biproduct(&self, parts: &[Module]) -> Result<Biproduct<Self>> {
        for m in parts {
            self.check_ring(m)?;
        }
        match &self.ring {
            Ring::Integers => {
                let ints: Vec<&IntModule> = parts.iter().map(|m| m.int().expect("ring checked")).collect();
                let rels: Vec<&IntMatrix> = ints.iter().map(|m| m.relations()).collect();
                let total: usize = ints.iter().map(|m| m.gens()).sum();
                let obj: Module = IntModule::new(IntMatrix::block_diag(&rels)).into();
                let mut injections = Vec::new();
                let mut projections = Vec::new();
                let mut off = 0;
                for (part, m) in parts.iter().zip(&ints) {
                    let g = m.gens();
                    let mut inj = IntMatrix::zeros(total, g);
                    inj.paste(off, 0, &IntMatrix::identity(g));
                    injections.push(self.int_mor(part, &obj, inj.clone()));
                    projections.push(self.int_mor(&obj, part, inj.transpose()));
                    off += g;
                }
                Ok(Biproduct {
                    object: obj,
                    injections,
                    projections,
                })
            }
            Ring::Algebra(alg) => {
                let p = alg.prime();
                let ms: Vec<&AlgModule> = parts.iter().map(|m| m.alg().expect("ring checked")).collect();
                let total: usize = ms.iter().map(|m| m.dim()).sum();
                let actions: Vec<FpMatrix> = (0..alg.dim())
                    .map(|a| {
                        let blocks: Vec<&FpMatrix> = ms.iter().map(|m| m.action(a)).collect();
                        FpMatrix::block_diag(p, &blocks)
                    })
                    .collect();
                let obj: Module = if let Some(rank) = ms.iter().map(|m| m.free_rank()).sum::<Option<usize>>() {
                    AlgModule::free(alg.clone(), rank).into()
                } else {
                    AlgModule::from_parts(alg.clone(), total, actions).into()
                };
                let mut injections = Vec::new();
                let mut projections = Vec::new();
                let mut off = 0;
                for (part, m) in parts.iter().zip(&ms) {
                    let n = m.dim();
                    let mut inj = FpMatrix::zeros(p, total, n);
                    inj.paste(off, 0, &FpMatrix::identity(p, n));
                    injections.push(self.fp_mor(part, &obj, inj.clone()));
                    projections.push(self.fp_mor(&obj, part, inj.transpose()));
                    off += n;
                }
                Ok(Biproduct {
                    object: obj,
                    injections,
                    projections,
                })
            }
        }
    }

    fn factor_through_mono(&self, mono: &ModMor, h: &ModMor) -> Result<Option<ModMor>> {
        if mono.target != h.target {
            return Err(Error::DimensionMismatch("factor_through_mono: targets differ".into()));
        }
        let mut cols = Vec::new();
        for j in 0..h.source.coord_len() {
            match preimage(mono, &Self::column_element(h, j))? {
                Some(x) => cols.push(x.coords),
                None => return Ok(None),
            }
        }
        let matrix = self.matrix_from_coords(mono.source.coord_len(), cols)?;
        let u = ModMor::unchecked(h.source.clone(), mono.source.clone(), matrix)?;
        if u.check_well_defined().is_err() {
            return Ok(None);
        }
        Ok(Some(u))
    }

    fn factor_through_epi(&self, epi: &ModMor, h: &ModMor) -> Result<Option<ModMor>> {
        if epi.source != h.source {
            return Err(Error::DimensionMismatch("factor_through_epi: sources differ".into()));
        }
        let q = &epi.target;
        let n = q.coord_len();
        let mut cols = Vec::new();
        for j in 0..n {
            let e = match &*q.0 {
                ModuleKind::Int(_) => {
                    let mut v = vec![BigInt::zero(); n];
                    v[j] = BigInt::one();
                    Coords::Int(v)
                }
                ModuleKind::Alg(_) => {
                    let mut v = vec![0; n];
                    v[j] = 1;
                    Coords::Fp(v)
                }
            };
            let y = Element {
                parent: q.clone(),
                coords: e,
            };
            match preimage(epi, &y)? {
                Some(x) => cols.push(h.apply(&x)?.coords),
                None => return Ok(None),
            }
        }
        let matrix = self.matrix_from_coords(h.target.coord_len(), cols)?;
        let u = ModMor::unchecked(q.clone(), h.target.clone(), matrix)?;
        if u.check_well_defined().is_err() || !self.equal(&self.compose(&u, epi)?, h)? {
            return Ok(None);
        }
        Ok(Some(u))
    }

    fn free_cover(&self, a: &Module) -> Result<ModMor> {
        self.check_ring(a)?;
        match &*a.0 {
            ModuleKind::Int(m) => {
                let g = m.gens();
                let free: Module = IntModule::free(g).into();
                Ok(self.int_mor(&free, a, IntMatrix::identity(g)))
            }
            ModuleKind::Alg(m) => {
                let alg = m.algebra();
                let free: Module = AlgModule::free(alg.clone(), m.gens().len()).into();
                let mut cols = Vec::new();
                for g in m.gens() {
                    for e in 0..alg.dim() {
                        cols.push(m.action(e).mul_vec(g)?);
                    }
                }
                Ok(self.fp_mor(&free, a, FpMatrix::from_columns(alg.prime(), m.dim(), &cols)))
            }
        }
    }

    fn lift_through_epi(&self, epi: &ModMor, g: &ModMor) -> Result<Option<ModMor>> {
        if epi.target != g.target {
            return Err(Error::DimensionMismatch("lift_through_epi: targets differ".into()));
        }
        match &*g.source.0 {
            ModuleKind::Int(p) => {
                let (basis, coords) = p
                    .free_basis()
                    .ok_or_else(|| Error::NotProjective(g.source.describe()))?;
                let gm = g.matrix.int().expect("integer morphism");
                let mut cols = Vec::new();
                for b in basis {
                    let y = Element {
                        parent: g.target.clone(),
                        coords: Coords::Int(gm.mul_vec(&b)?),
                    };
                    match preimage(epi, &y)? {
                        Some(Element {
                            coords: Coords::Int(x),
                            ..
                        }) => cols.push(x),
                        _ => return Ok(None),
                    }
                }
                let x = IntMatrix::from_columns(epi.source.coord_len(), &cols)?;
                Ok(Some(self.int_mor(&g.source, &epi.source, x.mul(&coords)?)))
            }
            ModuleKind::Alg(p) => {
                if p.free_rank().is_none() {
                    return Err(Error::NotProjective(g.source.describe()));
                }
                let gm = g.matrix.fp().expect("algebra morphism");
                let em = epi.matrix.fp().expect("algebra morphism");
                let src = epi.source.alg().expect("algebra module");
                let alg = p.algebra();
                let mut cols = Vec::new();
                for gen in p.gens() {
                    let y = gm.mul_vec(gen)?;
                    let Some(x) = em.solve_vec(&y)? else {
                        return Ok(None);
                    };
                    for e in 0..alg.dim() {
                        cols.push(src.action(e).mul_vec(&x)?);
                    }
                }
                let h = FpMatrix::from_columns(self.prime(), src.dim(), &cols);
                Ok(Some(self.fp_mor(&g.source, &epi.source, h)))
            }
        }
    }
}

/// Structural sanity check used by tests and validators.
pub fn is_well_defined(f: &ModMor) -> bool {
    f.check_well_defined().is_ok()
}

#[cfg(test)]
mod tests;
