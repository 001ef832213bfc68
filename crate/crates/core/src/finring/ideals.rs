//! One-sided ideals and, more generally, submodule lattices.
//!
//! Everything here lives inside the ambient ring's coordinates. A "module" is an
//! additive subgroup `M` closed under multiplication by an acting subring `A`
//! from one side; left ideals of `S` are the case `M = A = S`. Corner rings and
//! Peirce components reuse the same enumerator with smaller `M` and `A`.

use super::{AdditiveSubgroup, FiniteRing, RingElement, RingError};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

pub const DEFAULT_LATTICE_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("unknown side `{other}` (expected left or right)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneSidedIdeal {
    pub subgroup: AdditiveSubgroup,
    pub side: Side,
    /// Set once closure under the ring action has been verified on the canonical basis.
    pub closure_witnessed: bool,
}

impl OneSidedIdeal {
    pub fn order(&self) -> u128 {
        self.subgroup.order()
    }
}

fn act(ring: &FiniteRing, a: &[u64], x: &[u64], side: Side) -> Vec<u64> {
    match side {
        Side::Left => ring.mul_coords(a, x),
        Side::Right => ring.mul_coords(x, a),
    }
}

/// True when `acting · module ⊆ module` (or `module · acting` for the right side).
pub(crate) fn is_closed(module: &AdditiveSubgroup, acting: &AdditiveSubgroup, side: Side) -> bool {
    let ring = module.ring();
    module.canonical_basis().iter().all(|x| {
        acting
            .canonical_basis()
            .iter()
            .all(|a| module.contains_coords(&act(ring, a, x, side)))
    })
}

/// Smallest subgroup containing `generators` and closed under the action of `acting`.
///
/// The integer span of the generators is always included, so nonunital actions
/// still keep the generators themselves.
pub fn module_closure(
    ring: &FiniteRing,
    generators: Vec<Vec<u64>>,
    acting: &AdditiveSubgroup,
    side: Side,
) -> AdditiveSubgroup {
    let mut current = AdditiveSubgroup::from_coords(ring, generators);
    loop {
        let mut gens: Vec<Vec<u64>> = current.canonical_basis().to_vec();
        for x in current.canonical_basis() {
            for a in acting.canonical_basis() {
                gens.push(act(ring, a, x, side));
            }
        }
        let next = AdditiveSubgroup::from_coords(ring, gens);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Smallest one-sided ideal `Zx + Sx` (or `Zx + xS`) containing the generators.
pub fn one_sided_ideal_closure(
    ring: &FiniteRing,
    generators: &[RingElement],
    side: Side,
) -> Result<OneSidedIdeal, RingError> {
    for g in generators {
        ring.check(g)?;
    }
    let whole = AdditiveSubgroup::whole(ring);
    let subgroup = module_closure(ring, generators.iter().map(|g| g.coords().to_vec()).collect(), &whole, side);
    let closure_witnessed = is_closed(&subgroup, &whole, side);
    Ok(OneSidedIdeal { subgroup, side, closure_witnessed })
}

/// The lattice of submodules of some ambient module, ordered by inclusion.
///
/// Members are sorted canonically (by order, then canonical basis), so the
/// zero submodule comes first and the ambient module last.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    side: Side,
    members: Vec<AdditiveSubgroup>,
    /// `covers[i]` lists the members covering member `i`.
    covers: Vec<Vec<usize>>,
    height: usize,
    index: HashMap<Vec<Vec<u64>>, usize>,
}

impl IdealLattice {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Number of edges in a longest chain.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn members(&self) -> &[AdditiveSubgroup] {
        &self.members
    }

    pub fn ideals(&self) -> Vec<OneSidedIdeal> {
        self.members
            .iter()
            .map(|s| OneSidedIdeal { subgroup: s.clone(), side: self.side, closure_witnessed: true })
            .collect()
    }

    /// Upward cover relation: `covers()[i]` are the members directly above `i`.
    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }

    pub fn index_of(&self, member: &AdditiveSubgroup) -> Option<usize> {
        self.index.get(member.canonical_basis()).copied()
    }

    pub fn bottom(&self) -> &AdditiveSubgroup {
        &self.members[0]
    }

    pub fn top(&self) -> &AdditiveSubgroup {
        self.members.last().expect("a lattice always has a top")
    }

    fn from_members(side: Side, mut members: Vec<AdditiveSubgroup>) -> IdealLattice {
        members.sort();
        let index: HashMap<Vec<Vec<u64>>, usize> = members
            .iter()
            .enumerate()
            .map(|(i, s)| (s.canonical_basis().to_vec(), i))
            .collect();
        let n = members.len();
        let mut covers = vec![Vec::new(); n];
        for i in 0..n {
            let mut found: Vec<usize> = Vec::new();
            for j in (i + 1)..n {
                let (a, b) = (&members[i], &members[j]);
                if b.order() <= a.order() || b.order() % a.order() != 0 || !a.is_subgroup_of(b) {
                    continue;
                }
                // Members are sorted by order, so any intermediate member was seen first.
                if found.iter().all(|&c| !members[c].is_subgroup_of(b)) {
                    found.push(j);
                }
            }
            covers[i] = found;
        }
        let mut depth = vec![0usize; n];
        for i in 0..n {
            for &j in &covers[i] {
                depth[j] = depth[j].max(depth[i] + 1);
            }
        }
        let height = depth.iter().copied().max().unwrap_or(0);
        IdealLattice { side, members, covers, height, index }
    }
}

/// All submodules of `ambient` under the one-sided action of `acting`.
///
/// Seeds are the cyclic submodules generated by single elements; every
/// submodule is a finite sum of those, so closing the seeds under pairwise sums
/// reaches the whole lattice. `ambient` must itself be closed under the action.
pub fn enumerate_submodules(
    ambient: &AdditiveSubgroup,
    acting: &AdditiveSubgroup,
    side: Side,
    cap: usize,
) -> Result<IdealLattice, RingError> {
    let ring = ambient.ring();
    if ambient.ring() != acting.ring() {
        return Err(RingError::RingMismatch);
    }
    debug_assert!(is_closed(ambient, acting, side));
    let mut known: HashMap<Vec<Vec<u64>>, usize> = HashMap::new();
    let mut members: Vec<AdditiveSubgroup> = Vec::new();
    let mut insert = |s: AdditiveSubgroup, members: &mut Vec<AdditiveSubgroup>| -> Result<bool, RingError> {
        if known.contains_key(s.canonical_basis()) {
            return Ok(false);
        }
        if members.len() >= cap {
            return Err(RingError::LatticeTooLarge(cap));
        }
        known.insert(s.canonical_basis().to_vec(), members.len());
        members.push(s);
        Ok(true)
    };

    insert(AdditiveSubgroup::zero(ring), &mut members)?;
    let mut seeds: Vec<AdditiveSubgroup> = Vec::new();
    for x in ambient.element_coords() {
        let cyclic = module_closure(ring, vec![x], acting, side);
        if insert(cyclic.clone(), &mut members)? {
            seeds.push(cyclic);
        }
    }
    let mut frontier = 0usize;
    while frontier < members.len() {
        let current = members[frontier].clone();
        frontier += 1;
        for seed in &seeds {
            let joined = current.sum_unchecked(seed);
            insert(joined, &mut members)?;
        }
    }
    Ok(IdealLattice::from_members(side, members))
}

/// The poset of all left (or right) ideals of `ring`.
pub fn enumerate_one_sided_ideals(ring: &FiniteRing, side: Side, cap: usize) -> Result<IdealLattice, RingError> {
    let whole = AdditiveSubgroup::whole(ring);
    enumerate_submodules(&whole, &whole, side, cap)
}
