use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{is_prime, FpMatrix, FpVector};

/// A finite-dimensional associative unital algebra over `F_p`, given by
/// structure constants on a labelled basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    p: u64,
    labels: Vec<String>,
    /// `consts[a][b]` holds the coordinates of `basis[a] * basis[b]`.
    consts: Vec<Vec<FpVector>>,
    unit: FpVector,
    /// Left multiplication by each basis element.
    left: Vec<FpMatrix>,
    /// Right multiplication by each basis element.
    right: Vec<FpMatrix>,
    commutative: bool,
    augmentation: Option<FpVector>,
    /// Basis of a nilpotent two-sided ideal with semisimple quotient `F_p`,
    /// when one is known (group algebras of p-groups).
    radical: Option<Vec<FpVector>>,
}

impl Algebra {
    pub fn new(p: u64, labels: Vec<String>, consts: Vec<Vec<FpVector>>, unit: FpVector) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{} is not prime", p)));
        }
        let d = labels.len();
        if d == 0 {
            return Err(Error::InvalidRing("algebra of dimension 0".into()));
        }
        if consts.len() != d
            || consts.iter().any(|row| row.len() != d || row.iter().any(|v| v.len() != d))
            || unit.len() != d
        {
            return Err(Error::InvalidRing(format!(
                "structure constants must be {}x{}x{} with a unit of length {}",
                d, d, d, d
            )));
        }
        let consts: Vec<Vec<FpVector>> = consts
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.into_iter().map(|x| x % p).collect()).collect())
            .collect();
        let unit: FpVector = unit.into_iter().map(|x| x % p).collect();
        let left: Vec<FpMatrix> = (0..d)
            .map(|a| FpMatrix::from_columns(p, d, &consts[a]))
            .collect();
        let right: Vec<FpMatrix> = (0..d)
            .map(|b| {
                let cols: Vec<FpVector> = (0..d).map(|a| consts[a][b].clone()).collect();
                FpMatrix::from_columns(p, d, &cols)
            })
            .collect();
        let commutative = (0..d).all(|a| (0..d).all(|b| consts[a][b] == consts[b][a]));
        let alg = Algebra {
            p,
            labels,
            consts,
            unit,
            left,
            right,
            commutative,
            augmentation: None,
            radical: None,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    // (ab)c = a(bc)
                    let lhs = self.mul(&self.consts[a][b], &self.basis(c));
                    let rhs = self.mul(&self.basis(a), &self.consts[b][c]);
                    if lhs != rhs {
                        return Err(Error::InvalidRing(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
            let e = self.basis(a);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidRing(format!(
                    "unit law fails on {}",
                    self.labels[a]
                )));
            }
        }
        Ok(())
    }

    /// The prime field `F_p` as a one-dimensional algebra.
    pub fn prime_field(p: u64) -> Result<Self> {
        let mut a = Self::new(p, vec!["1".into()], vec![vec![vec![1]]], vec![1])?;
        a.augmentation = Some(vec![1]);
        a.radical = Some(vec![]);
        Ok(a)
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constants(&self) -> &[Vec<FpVector>] {
        &self.consts
    }

    pub fn unit(&self) -> &FpVector {
        &self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn augmentation(&self) -> Option<&FpVector> {
        self.augmentation.as_ref()
    }

    pub fn radical(&self) -> Option<&[FpVector]> {
        self.radical.as_deref()
    }

    pub fn basis(&self, a: usize) -> FpVector {
        let mut v = vec![0; self.dim()];
        v[a] = 1;
        v
    }

    pub fn left_mult(&self, a: usize) -> &FpMatrix {
        &self.left[a]
    }

    pub fn right_mult(&self, a: usize) -> &FpMatrix {
        &self.right[a]
    }

    /// Right multiplication by an arbitrary element.
    pub fn right_mult_by(&self, x: &[u64]) -> FpMatrix {
        self.combine(&self.right, x)
    }

    pub fn left_mult_by(&self, x: &[u64]) -> FpMatrix {
        self.combine(&self.left, x)
    }

    /// `Σ x_e · mats[e]`.
    pub fn combine(&self, mats: &[FpMatrix], x: &[u64]) -> FpMatrix {
        let (r, c) = (mats[0].rows(), mats[0].cols());
        let mut acc = FpMatrix::zeros(self.p, r, c);
        for (m, &xe) in mats.iter().zip(x) {
            if xe != 0 {
                acc = acc.add(&m.scale(xe)).expect("same shape");
            }
        }
        acc
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> FpVector {
        let d = self.dim();
        let mut out = vec![0; d];
        for a in 0..d {
            if x[a] == 0 {
                continue;
            }
            for b in 0..d {
                if y[b] == 0 {
                    continue;
                }
                let k = x[a] * y[b] % self.p;
                for (o, &c) in out.iter_mut().zip(&self.consts[a][b]) {
                    *o = (*o + k * c) % self.p;
                }
            }
        }
        out
    }

    /// Group algebra `F_p[G]` from a multiplication table on `0..n`.
    pub fn group_algebra(p: u64, table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidRing("empty group table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidRing("group table is not a closed n x n table".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidRing(format!(
                            "group table not associative at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidRing("group table has no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return Err(Error::InvalidRing(format!("element {} has no inverse", a)));
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("g{}", i)).collect());
        if labels.len() != n {
            return Err(Error::InvalidRing("label count differs from group order".into()));
        }
        let consts: Vec<Vec<FpVector>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut v = vec![0; n];
                        v[table[a][b]] = 1;
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![0; n];
        unit[identity] = 1;
        let mut alg = Self::new(p, labels, consts, unit)?;
        alg.augmentation = Some(vec![1; n]);
        if is_power_of(n as u64, p) {
            alg.radical = Some(
                (0..n)
                    .filter(|&g| g != identity)
                    .map(|g| {
                        let mut v = vec![0; n];
                        v[g] = 1;
                        v[identity] = (v[identity] + p - 1) % p;
                        v
                    })
                    .collect(),
            );
        }
        Ok(alg)
    }

    /// `F_p[C_n]` with basis `1, g, …, g^{n-1}`.
    pub fn cyclic_group(p: u64, n: usize) -> Result<Self> {
        let table = cyclic_table(n);
        let labels = (0..n).map(power_label).collect();
        Self::group_algebra(p, &table, Some(labels))
    }

    /// Group algebra of `C_{n_1} × … × C_{n_k}`; element `(a_1, …, a_k)` has
    /// mixed-radix index with the last factor varying fastest.
    pub fn abelian_group(p: u64, orders: &[usize]) -> Result<Self> {
        let table = product_table(orders);
        let n = table.len();
        let labels = (0..n)
            .map(|i| {
                let digits = mixed_radix(i, orders);
                let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Self::group_algebra(p, &table, Some(labels))
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(F_{}, dim {})", self.p, self.dim())
    }
}

fn power_label(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "g".into(),
        _ => format!("g^{}", k),
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

pub fn mixed_radix(mut i: usize, orders: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; orders.len()];
    for (k, &o) in orders.iter().enumerate().rev() {
        digits[k] = i % o;
        i /= o;
    }
    digits
}

pub fn product_table(orders: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = orders.iter().product();
    let index = |digits: &[usize]| digits.iter().zip(orders).fold(0, |acc, (&d, &o)| acc * o + d);
    (0..n)
        .map(|a| {
            let da = mixed_radix(a, orders);
            (0..n)
                .map(|b| {
                    let db = mixed_radix(b, orders);
                    let sum: Vec<usize> = da
                        .iter()
                        .zip(&db)
                        .zip(orders)
                        .map(|((x, y), o)| (x + y) % o)
                        .collect();
                    index(&sum)
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Algebra(Arc<Algebra>),
}

impl Ring {
    pub fn algebra(a: Algebra) -> Self {
        Ring::Algebra(Arc::new(a))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(Ring::algebra(Algebra::prime_field(p)?))
    }

    pub fn group_algebra(p: u64, table: &[Vec<usize>]) -> Result<Self> {
        Ok(Ring::algebra(Algebra::group_algebra(p, table, None)?))
    }

    pub fn cyclic_group(p: u64, n: usize) -> Result<Self> {
        Ok(Ring::algebra(Algebra::cyclic_group(p, n)?))
    }

    pub fn abelian_group(p: u64, orders: &[usize]) -> Result<Self> {
        Ok(Ring::algebra(Algebra::abelian_group(p, orders)?))
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            Ring::Integers => true,
            Ring::Algebra(a) => a.is_commutative(),
        }
    }

    /// Ring whose modules are finite-dimensional vector spaces.
    pub fn is_field_based(&self) -> bool {
        matches!(self, Ring::Algebra(_))
    }

    pub fn as_algebra(&self) -> Option<&Arc<Algebra>> {
        match self {
            Ring::Algebra(a) => Some(a),
            Ring::Integers => None,
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Algebra(a) => write!(f, "{:?}", a),
        }
    }
}

/// `group_algebra(p, table)` as a free function.
pub fn group_algebra(p: u64, table: &[Vec<usize>]) -> Result<Ring> {
    Ring::group_algebra(p, table)
}
