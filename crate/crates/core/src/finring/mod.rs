//! Finite rings given by structure constants over Z/m.
//!
//! A [`FiniteRing`] of rank `n` has additive group `(Z/m)^n` with basis
//! `b_0, …, b_{n-1}` and multiplication `b_i · b_j = Σ_k c[i][j][k] b_k`.
//! Rings need not be unital. Associativity is verified on every basis triple
//! before a ring is handed out.

mod corner;
mod ideals;
mod subgroup;

pub use corner::{corner_ring, CornerRing};
pub use ideals::{
    enumerate_one_sided_ideals, enumerate_submodules, module_closure, one_sided_ideal_closure,
    IdealLattice, OneSidedIdeal, Side, DEFAULT_LATTICE_CAP,
};
pub use subgroup::AdditiveSubgroup;

use crate::modular::{self, MAX_MODULUS};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus {0} is too small (need m >= 2)")]
    ModulusTooSmall(u64),
    #[error("modulus {0} exceeds the supported maximum {max}", max = MAX_MODULUS)]
    ModulusTooLarge(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("structure constant {value} at index {index} is not a residue mod {modulus}")]
    ResidueOutOfRange { index: usize, value: u64, modulus: u64 },
    #[error("ring order m^n overflows")]
    OrderOverflow,
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element belongs to a different ring")]
    RingMismatch,
    #[error("rings have different moduli ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("corner ring e S e is not a free Z/{0}-module and has no basis representation")]
    CornerNotFree(u64),
    #[error("lattice enumeration exceeded the cap of {0} members")]
    LatticeTooLarge(usize),
}

impl RingError {
    pub fn kind(&self) -> &'static str {
        match self {
            RingError::ModulusTooSmall(_) => "ModulusTooSmall",
            RingError::ModulusTooLarge(_) => "ModulusTooLarge",
            RingError::ShapeMismatch(_) => "ShapeMismatch",
            RingError::ResidueOutOfRange { .. } => "ResidueOutOfRange",
            RingError::OrderOverflow => "OrderOverflow",
            RingError::NotAssociative(..) => "NotAssociative",
            RingError::RingMismatch => "RingMismatch",
            RingError::ModulusMismatch(..) => "ModulusMismatch",
            RingError::NotIdempotent => "NotIdempotent",
            RingError::CornerNotFree(_) => "CornerNotFree",
            RingError::LatticeTooLarge(_) => "LatticeTooLarge",
        }
    }
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
struct RingData {
    id: u64,
    modulus: u64,
    rank: usize,
    labels: Vec<String>,
    constants: Vec<u64>,
    /// Nonzero `(k, c[i][j][k])` for each basis pair `(i, j)`, row-major.
    sparse: Vec<Vec<(usize, u64)>>,
    order: u128,
}

/// A validated finite ring. Cloning is cheap and keeps the identity of the ring,
/// so elements created from either clone stay compatible.
#[derive(Clone)]
pub struct FiniteRing {
    data: Arc<RingData>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("modulus", &self.data.modulus)
            .field("rank", &self.data.rank)
            .field("labels", &self.data.labels)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.data.id == other.data.id
    }
}

impl Eq for FiniteRing {}

/// An element of a specific [`FiniteRing`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring_id: u64,
    coords: Vec<u64>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl RingElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }
}

/// Build a ring from its structure constants `c[i][j][k]`, flattened row-major.
pub fn make_ring(
    modulus: u64,
    rank: usize,
    structure_constants: Vec<u64>,
    basis_labels: Option<Vec<String>>,
) -> Result<FiniteRing, RingError> {
    if rank == 0 {
        return Err(RingError::ShapeMismatch("rank must be at least 1".into()));
    }
    FiniteRing::build(modulus, rank, structure_constants, basis_labels)
}

/// Serialized form of a ring; `constants` is the flattened `n × n × n` array, index `(i·n + j)·n + k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub modulus: u64,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub constants: Vec<u64>,
}

pub fn ring_from_spec(spec: &RingSpec) -> Result<FiniteRing, RingError> {
    make_ring(spec.modulus, spec.rank, spec.constants.clone(), spec.labels.clone())
}

impl FiniteRing {
    /// Shared constructor; unlike [`make_ring`] it also admits the zero ring (rank 0).
    pub(crate) fn build(
        modulus: u64,
        rank: usize,
        constants: Vec<u64>,
        labels: Option<Vec<String>>,
    ) -> Result<FiniteRing, RingError> {
        if modulus < 2 {
            return Err(RingError::ModulusTooSmall(modulus));
        }
        if modulus > MAX_MODULUS {
            return Err(RingError::ModulusTooLarge(modulus));
        }
        let expected = rank * rank * rank;
        if constants.len() != expected {
            return Err(RingError::ShapeMismatch(format!(
                "expected {expected} structure constants for rank {rank}, found {}",
                constants.len()
            )));
        }
        if let Some((index, &value)) = constants.iter().enumerate().find(|(_, &v)| v >= modulus) {
            return Err(RingError::ResidueOutOfRange { index, value, modulus });
        }
        let labels = match labels {
            Some(l) if l.len() != rank => {
                return Err(RingError::ShapeMismatch(format!(
                    "expected {rank} basis labels, found {}",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..rank).map(|i| format!("b{i}")).collect(),
        };
        let order = modular::checked_pow(modulus, rank).ok_or(RingError::OrderOverflow)?;
        let sparse = (0..rank * rank)
            .map(|ij| {
                (0..rank)
                    .filter_map(|k| {
                        let c = constants[ij * rank + k];
                        (c != 0).then_some((k, c))
                    })
                    .collect()
            })
            .collect();
        let data = RingData {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            modulus,
            rank,
            labels,
            constants,
            sparse,
            order,
        };
        let ring = FiniteRing { data: Arc::new(data) };
        if let Some((i, j, k)) = ring.associativity_defect() {
            return Err(RingError::NotAssociative(i, j, k));
        }
        Ok(ring)
    }

    /// First basis triple (lexicographic) on which `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.rank();
        let basis: Vec<Vec<u64>> = (0..n).map(|i| self.unit_vector(i)).collect();
        let products: Vec<Vec<u64>> = (0..n * n)
            .map(|ij| self.mul_coords(&basis[ij / n], &basis[ij % n]))
            .collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_coords(&products[i * n + j], &basis[k]);
                    let right = self.mul_coords(&basis[i], &products[j * n + k]);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn modulus(&self) -> u64 {
        self.data.modulus
    }

    pub fn rank(&self) -> usize {
        self.data.rank
    }

    /// `m^n`.
    pub fn order(&self) -> u128 {
        self.data.order
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    /// Flattened `c[i][j][k]`.
    pub fn to_spec(&self) -> RingSpec {
        RingSpec {
            modulus: self.modulus(),
            rank: self.rank(),
            labels: Some(self.labels().to_vec()),
            constants: self.structure_constants().to_vec(),
        }
    }

    pub fn structure_constants(&self) -> &[u64] {
        &self.data.constants
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u64 {
        let n = self.rank();
        self.data.constants[(i * n + j) * n + k]
    }

    pub(crate) fn id(&self) -> u64 {
        self.data.id
    }

    pub(crate) fn unit_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// Product of raw coordinate vectors.
    pub fn mul_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let n = self.rank();
        let m = self.modulus();
        let mut out = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let t = xi * yj % m;
                for &(k, c) in &self.data.sparse[i * n + j] {
                    out[k] = (out[k] + t * c) % m;
                }
            }
        }
        out
    }

    pub fn add_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        x.iter().zip(y).map(|(&a, &b)| modular::add(a, b, m)).collect()
    }

    pub(crate) fn sub_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        x.iter().zip(y).map(|(&a, &b)| modular::sub(a, b, m)).collect()
    }

    /// Bind a coordinate vector to this ring, reducing entries mod m.
    pub fn element(&self, coords: Vec<u64>) -> Result<RingElement, RingError> {
        if coords.len() != self.rank() {
            return Err(RingError::ShapeMismatch(format!(
                "element has {} coordinates, ring has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        let m = self.modulus();
        Ok(RingElement {
            ring_id: self.id(),
            coords: coords.into_iter().map(|x| x % m).collect(),
        })
    }

    pub(crate) fn wrap(&self, coords: Vec<u64>) -> RingElement {
        debug_assert_eq!(coords.len(), self.rank());
        RingElement { ring_id: self.id(), coords }
    }

    pub fn zero(&self) -> RingElement {
        self.wrap(vec![0; self.rank()])
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        self.wrap(self.unit_vector(i))
    }

    pub fn basis(&self) -> Vec<RingElement> {
        (0..self.rank()).map(|i| self.basis_element(i)).collect()
    }

    pub fn check(&self, x: &RingElement) -> Result<(), RingError> {
        if x.ring_id == self.id() {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, RingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.add_coords(&x.coords, &y.coords)))
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, RingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.sub_coords(&x.coords, &y.coords)))
    }

    pub fn neg(&self, x: &RingElement) -> Result<RingElement, RingError> {
        self.check(x)?;
        let m = self.modulus();
        Ok(self.wrap(x.coords.iter().map(|&a| modular::neg(a, m)).collect()))
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, RingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_coords(&x.coords, &y.coords)))
    }

    pub fn scale(&self, k: i64, x: &RingElement) -> Result<RingElement, RingError> {
        self.check(x)?;
        let m = self.modulus();
        let k = modular::reduce_signed(k, m);
        Ok(self.wrap(x.coords.iter().map(|&a| a * k % m).collect()))
    }

    pub fn is_idempotent(&self, x: &RingElement) -> Result<bool, RingError> {
        Ok(self.mul(x, x)? == *x)
    }

    /// All `m^n` elements, in lexicographic order of coordinates (last coordinate fastest).
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let n = self.rank();
        let m = self.modulus();
        let total = self.order();
        (0..total).map(move |mut idx| {
            let mut coords = vec![0u64; n];
            for c in coords.iter_mut().rev() {
                *c = (idx % m as u128) as u64;
                idx /= m as u128;
            }
            self.wrap(coords)
        })
    }

    /// Render an element as `label` terms, e.g. `E11 + 2*E21`.
    pub fn display(&self, x: &RingElement) -> String {
        let terms: Vec<String> = x
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.labels()[i].clone()
                } else {
                    format!("{c}*{}", self.labels()[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// The two-sided identity, if the ring has one.
    ///
    /// Solves `u · b_i = b_i = b_i · u` for all basis elements as one linear
    /// system over Z/m. The zero ring has no identity (unital rings are nonzero).
    pub fn find_identity(&self) -> Option<RingElement> {
        let n = self.rank();
        if n == 0 {
            return None;
        }
        // Row t holds the coefficients of u_t: (b_t b_i)_k then (b_i b_t)_k.
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|t| {
                let mut row = Vec::with_capacity(2 * n * n);
                for i in 0..n {
                    row.extend((0..n).map(|k| self.constant(t, i, k)));
                }
                for i in 0..n {
                    row.extend((0..n).map(|k| self.constant(i, t, k)));
                }
                row
            })
            .collect();
        let mut rhs = Vec::with_capacity(2 * n * n);
        for _ in 0..2 {
            for i in 0..n {
                rhs.extend((0..n).map(|k| u64::from(i == k)));
            }
        }
        crate::howell::solve_left(&rows, &rhs, self.modulus()).map(|u| self.wrap(u))
    }

    pub fn is_unital(&self) -> bool {
        self.find_identity().is_some()
    }
}

/// Expression trees over ring elements, evaluated exactly by [`evaluate`].
#[derive(Debug, Clone)]
pub enum Expr {
    Leaf(RingElement),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Scale(i64, Box<Expr>),
}

impl Expr {
    pub fn leaf(x: &RingElement) -> Expr {
        Expr::Leaf(x.clone())
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }
}

pub fn evaluate(ring: &FiniteRing, expr: &Expr) -> Result<RingElement, RingError> {
    match expr {
        Expr::Leaf(x) => {
            ring.check(x)?;
            Ok(x.clone())
        }
        Expr::Add(a, b) => ring.add(&evaluate(ring, a)?, &evaluate(ring, b)?),
        Expr::Sub(a, b) => ring.sub(&evaluate(ring, a)?, &evaluate(ring, b)?),
        Expr::Neg(a) => ring.neg(&evaluate(ring, a)?),
        Expr::Mul(a, b) => ring.mul(&evaluate(ring, a)?, &evaluate(ring, b)?),
        Expr::Scale(k, a) => ring.scale(*k, &evaluate(ring, a)?),
    }
}

/// Direct product with block-diagonal structure constants.
pub fn direct_product(rings: &[FiniteRing]) -> Result<FiniteRing, RingError> {
    let first = rings
        .first()
        .ok_or_else(|| RingError::ShapeMismatch("direct product of no rings".into()))?;
    let m = first.modulus();
    if let Some(r) = rings.iter().find(|r| r.modulus() != m) {
        return Err(RingError::ModulusMismatch(m, r.modulus()));
    }
    let n: usize = rings.iter().map(|r| r.rank()).sum();
    let mut constants = vec![0u64; n * n * n];
    let mut labels = Vec::with_capacity(n);
    let mut offset = 0;
    for (f, r) in rings.iter().enumerate() {
        let k = r.rank();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    constants[((offset + i) * n + offset + j) * n + offset + l] = r.constant(i, j, l);
                }
            }
        }
        if rings.len() == 1 {
            labels.extend(r.labels().iter().cloned());
        } else {
            labels.extend(r.labels().iter().map(|l| format!("{l}@{f}")));
        }
        offset += k;
    }
    FiniteRing::build(m, n, constants, Some(labels))
}

/// The full matrix ring M_k(T) with basis `E_ab ⊗ t_i`, ordered by `(a, b, i)`.
pub fn matrix_ring_over(base: &FiniteRing, k: usize) -> Result<FiniteRing, RingError> {
    if k == 0 {
        return Err(RingError::ShapeMismatch("matrix size must be at least 1".into()));
    }
    let t = base.rank();
    let n = k * k * t;
    let idx = |a: usize, b: usize, i: usize| (a * k + b) * t + i;
    let mut constants = vec![0u64; n * n * n];
    for a in 0..k {
        for b in 0..k {
            for d in 0..k {
                for i in 0..t {
                    for j in 0..t {
                        for l in 0..t {
                            let c = base.constant(i, j, l);
                            if c != 0 {
                                constants[(idx(a, b, i) * n + idx(b, d, j)) * n + idx(a, d, l)] = c;
                            }
                        }
                    }
                }
            }
        }
    }
    let labels = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .flat_map(|(a, b)| {
            base.labels()
                .iter()
                .map(move |l| if t == 1 { format!("E{}{}", a + 1, b + 1) } else { format!("E{}{}*{l}", a + 1, b + 1) })
        })
        .collect();
    FiniteRing::build(base.modulus(), n, constants, Some(labels))
}

/// Z/m as a rank-one ring with `b_0 · b_0 = b_0`.
pub fn cyclic_ring(modulus: u64) -> Result<FiniteRing, RingError> {
    make_ring(modulus, 1, vec![1 % modulus.max(1)], Some(vec!["1".into()]))
}

/// M_k(Z/m).
pub fn matrix_ring(modulus: u64, k: usize) -> Result<FiniteRing, RingError> {
    matrix_ring_over(&cyclic_ring(modulus)?, k)
}

/// Rank-`n` ring with identically zero multiplication.
pub fn zero_multiplication_ring(modulus: u64, rank: usize) -> Result<FiniteRing, RingError> {
    make_ring(modulus, rank, vec![0; rank * rank * rank], None)
}

/// Copy of `ring` with its basis permuted: new basis element `perm[i]` is old `b_i`.
pub fn relabel(ring: &FiniteRing, perm: &[usize]) -> Result<FiniteRing, RingError> {
    let n = ring.rank();
    if perm.len() != n || {
        let mut seen = vec![false; n];
        perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    } {
        return Err(RingError::ShapeMismatch("relabeling is not a permutation".into()));
    }
    let mut constants = vec![0u64; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                constants[(perm[i] * n + perm[j]) * n + perm[k]] = ring.constant(i, j, k);
            }
        }
    }
    let mut labels = vec![String::new(); n];
    for (i, &p) in perm.iter().enumerate() {
        labels[p] = ring.labels()[i].clone();
    }
    FiniteRing::build(ring.modulus(), n, constants, Some(labels))
}

/// True when `perm` carries the structure constants of `a` exactly onto those of `b`.
pub fn constants_match_under(a: &FiniteRing, b: &FiniteRing, perm: &[usize]) -> bool {
    let n = a.rank();
    if b.rank() != n || a.modulus() != b.modulus() || perm.len() != n {
        return false;
    }
    (0..n).all(|i| {
        (0..n).all(|j| (0..n).all(|k| a.constant(i, j, k) == b.constant(perm[i], perm[j], perm[k])))
    })
}
