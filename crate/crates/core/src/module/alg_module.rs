//! Finite-dimensional modules over an `F_p`-algebra, stored as a vector space
//! with one action matrix per algebra basis element.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, FpVector};

use super::ring::Algebra;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgModule {
    algebra: Arc<Algebra>,
    dim: usize,
    actions: Vec<FpMatrix>,
    gens: Vec<FpVector>,
    /// `Some(r)` when this is `A^r` with block-ordered basis and generators
    /// the unit of each block.
    free_rank: Option<usize>,
}

impl AlgModule {
    /// Module with the given action matrices; generators are chosen
    /// deterministically.
    pub fn new(algebra: Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Result<Self> {
        let p = algebra.prime();
        if actions.len() != algebra.dim()
            || actions
                .iter()
                .any(|m| m.rows() != dim || m.cols() != dim || m.prime() != p)
        {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices of size {}x{} over F_{}",
                algebra.dim(),
                dim,
                dim,
                p
            )));
        }
        check_module_axioms(&algebra, dim, &actions)?;
        Ok(Self::from_parts(algebra, dim, actions))
    }

    /// Trusted constructor for modules produced by constructions.
    pub(crate) fn from_parts(algebra: Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Self {
        if dim == 0 {
            return Self::zero(algebra);
        }
        let gens = select_generators(&algebra, dim, &actions);
        AlgModule {
            algebra,
            dim,
            actions,
            gens,
            free_rank: None,
        }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let p = algebra.prime();
        let d = algebra.dim();
        AlgModule {
            algebra,
            dim: 0,
            actions: vec![FpMatrix::zeros(p, 0, 0); d],
            gens: vec![],
            free_rank: Some(0),
        }
    }

    pub fn free(algebra: Arc<Algebra>, rank: usize) -> Self {
        if rank == 0 {
            return Self::zero(algebra);
        }
        let p = algebra.prime();
        let d = algebra.dim();
        let actions = (0..d)
            .map(|a| FpMatrix::identity(p, rank).kron(algebra.left_mult(a)))
            .collect();
        let gens = (0..rank)
            .map(|k| {
                let mut v = vec![0; rank * d];
                v[k * d..(k + 1) * d].copy_from_slice(algebra.unit());
                v
            })
            .collect();
        AlgModule {
            algebra,
            dim: rank * d,
            actions,
            gens,
            free_rank: Some(rank),
        }
    }

    /// One-dimensional module on which each basis element acts by its
    /// augmentation value.
    pub fn trivial(algebra: Arc<Algebra>) -> Result<Self> {
        let aug = algebra
            .augmentation()
            .ok_or_else(|| Error::InvalidModule("algebra has no augmentation".into()))?
            .clone();
        let p = algebra.prime();
        let actions = aug
            .iter()
            .map(|&x| FpMatrix::new(p, 1, 1, vec![x]).expect("1x1"))
            .collect();
        Self::new(algebra, 1, actions)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }

    pub fn action(&self, a: usize) -> &FpMatrix {
        &self.actions[a]
    }

    /// Action of an arbitrary algebra element.
    pub fn action_of(&self, x: &[u64]) -> FpMatrix {
        if self.dim == 0 {
            return FpMatrix::zeros(self.algebra.prime(), 0, 0);
        }
        self.algebra.combine(&self.actions, x)
    }

    pub fn gens(&self) -> &[FpVector] {
        &self.gens
    }

    pub fn free_rank(&self) -> Option<usize> {
        self.free_rank
    }

    pub fn prime(&self) -> u64 {
        self.algebra.prime()
    }

    /// Submodule generated by `vectors`, as a column basis in reduced form.
    pub fn generated_submodule(&self, vectors: &[FpVector]) -> FpMatrix {
        span_closure(&self.algebra, self.dim, &self.actions, vectors)
    }
}

fn check_module_axioms(algebra: &Algebra, dim: usize, actions: &[FpMatrix]) -> Result<()> {
    let p = algebra.prime();
    let d = algebra.dim();
    let unit_action = algebra.combine(actions, algebra.unit());
    if unit_action != FpMatrix::identity(p, dim) {
        return Err(Error::InvalidModule("unit does not act as the identity".into()));
    }
    let consts = algebra.structure_constants();
    for a in 0..d {
        for b in 0..d {
            let lhs = actions[a].mul(&actions[b])?;
            let rhs = algebra.combine(actions, &consts[a][b]);
            if lhs != rhs {
                return Err(Error::InvalidModule(format!(
                    "action does not respect {} * {}",
                    algebra.labels()[a],
                    algebra.labels()[b]
                )));
            }
        }
    }
    Ok(())
}

/// Column basis (reduced) of the span of `vectors` closed under the actions.
fn span_closure(algebra: &Algebra, dim: usize, actions: &[FpMatrix], vectors: &[FpVector]) -> FpMatrix {
    let p = algebra.prime();
    let mut cols: Vec<FpVector> = Vec::new();
    for v in vectors {
        for act in actions {
            cols.push(act.mul_vec(v).expect("dimension"));
        }
    }
    column_basis(p, dim, &cols)
}

/// Reduced column basis of the span of `cols`.
pub(crate) fn column_basis(p: u64, dim: usize, cols: &[FpVector]) -> FpMatrix {
    if cols.is_empty() {
        return FpMatrix::zeros(p, dim, 0);
    }
    let m = FpMatrix::from_columns(p, dim, cols).transpose();
    let r = m.rref();
    let rows: Vec<usize> = (0..r.pivots.len()).collect();
    r.matrix.select_rows(&rows).transpose()
}

/// Deterministic generating set. For algebras with a known nilpotent radical
/// `J` the standard basis vectors complementing `J·M` are used, which is a
/// minimal generating set; otherwise basis vectors are added greedily until
/// they generate.
fn select_generators(algebra: &Algebra, dim: usize, actions: &[FpMatrix]) -> Vec<FpVector> {
    let p = algebra.prime();
    let unit = |k: usize| {
        let mut v = vec![0; dim];
        v[k] = 1;
        v
    };
    if let Some(rad) = algebra.radical() {
        let mut cols = Vec::new();
        for j in rad {
            let act = algebra.combine(actions, j);
            cols.extend(act.columns());
        }
        let jm = column_basis(p, dim, &cols);
        let pivots = jm.transpose().rref().pivots;
        let mut is_pivot = vec![false; dim];
        for c in pivots {
            is_pivot[c] = true;
        }
        return (0..dim).filter(|&k| !is_pivot[k]).map(unit).collect();
    }
    let mut gens = Vec::new();
    let mut span = FpMatrix::zeros(p, dim, 0);
    for k in 0..dim {
        if span.cols() == dim {
            break;
        }
        let v = unit(k);
        if span.solve_vec(&v).expect("dimension").is_some() {
            continue;
        }
        gens.push(v);
        span = span_closure(algebra, dim, actions, &gens);
    }
    gens
}
