use super::{CategoryError, SmallCategory};
use crate::verdict::Verdict;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HomSetDefect {
    /// `G(cod, dom)` is empty although the condition needs it nonempty.
    EmptyHomSet { cod: usize, dom: usize },
    /// The set of composites differs from the expected hom-set.
    CompositeMismatch { composites: Vec<usize>, expected: Vec<usize> },
    /// The identity is not among the composites.
    IdentityNotReached { composites: Vec<usize> },
}

/// Objects (a triple for condition 1, a pair otherwise) and the defect found there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomSetWitness {
    pub objects: Vec<usize>,
    pub defect: HomSetDefect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomSetStrongReport {
    pub condition1: Verdict<HomSetWitness>,
    pub condition2: Verdict<HomSetWitness>,
    pub condition3: Verdict<HomSetWitness>,
    pub agree: bool,
}

impl HomSetStrongReport {
    pub fn all_hold(&self) -> bool {
        self.condition1.holds && self.condition2.holds && self.condition3.holds
    }
}

/// `G(a,b) G(b,c)` as the set of composites.
fn composites(cat: &SmallCategory, left: &[usize], right: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = left
        .iter()
        .flat_map(|&g| right.iter().filter_map(move |&h| cat.compose(g, h)))
        .collect();
    set.into_iter().collect()
}

fn first_empty(homs: &[Vec<Vec<usize>>], cells: &[(usize, usize)]) -> Option<HomSetDefect> {
    cells
        .iter()
        .find(|&&(a, b)| homs[a][b].is_empty())
        .map(|&(cod, dom)| HomSetDefect::EmptyHomSet { cod, dom })
}

fn condition1(cat: &SmallCategory, homs: &[Vec<Vec<usize>>]) -> Option<HomSetWitness> {
    let p = cat.object_count();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let cells = [(a, b), (b, c), (a, c)];
                if cells.iter().filter(|&&(x, y)| !homs[x][y].is_empty()).count() < 2 {
                    continue;
                }
                let defect = first_empty(homs, &cells).or_else(|| {
                    let got = composites(cat, &homs[a][b], &homs[b][c]);
                    (got != homs[a][c]).then(|| HomSetDefect::CompositeMismatch { composites: got, expected: homs[a][c].clone() })
                });
                if let Some(defect) = defect {
                    return Some(HomSetWitness { objects: vec![a, b, c], defect });
                }
            }
        }
    }
    None
}

fn pair_scan(
    cat: &SmallCategory,
    homs: &[Vec<Vec<usize>>],
    check: impl Fn(usize, Vec<usize>) -> Option<HomSetDefect>,
) -> Option<HomSetWitness> {
    let p = cat.object_count();
    for x in 0..p {
        for y in 0..p {
            if homs[x][y].is_empty() && homs[y][x].is_empty() {
                continue;
            }
            let defect = first_empty(homs, &[(x, y), (y, x)]).or_else(|| check(x, composites(cat, &homs[x][y], &homs[y][x])));
            if let Some(defect) = defect {
                return Some(HomSetWitness { objects: vec![x, y], defect });
            }
        }
    }
    None
}

/// Evaluate the three hom-set strongness conditions independently.
pub fn homset_strong_report(cat: &SmallCategory) -> HomSetStrongReport {
    let homs = cat.hom_sets();
    let condition1 = Verdict::from_first_failure(condition1(cat, &homs));
    let condition2 = Verdict::from_first_failure(pair_scan(cat, &homs, |x, got| {
        (got != homs[x][x]).then(|| HomSetDefect::CompositeMismatch { composites: got, expected: homs[x][x].clone() })
    }));
    let condition3 = Verdict::from_first_failure(pair_scan(cat, &homs, |x, got| {
        (!got.contains(&cat.identity(x))).then_some(HomSetDefect::IdentityNotReached { composites: got })
    }));
    let agree = condition1.holds == condition2.holds && condition2.holds == condition3.holds;
    HomSetStrongReport { condition1, condition2, condition3, agree }
}

/// The section `u : c → d`, `v : d → c` with `u ∘ v = id_d` used to embed `G(c, d)` into `G(c)`.
///
/// `α(g) = g ∘ u` and `β(h) = h ∘ v`; `β ∘ α = id` makes `α` injective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionCertificate {
    pub c: usize,
    pub d: usize,
    /// `(u, v)`, absent when no such pair exists.
    pub section: Option<(usize, usize)>,
    pub hom_size: usize,
    pub endo_size: usize,
    pub retraction_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub object_count: usize,
    pub morphism_count: usize,
    pub endomorphism_counts: Vec<usize>,
    pub homset_strong: bool,
    /// Present only for hom-set strong categories.
    pub injections: Option<Vec<InjectionCertificate>>,
    /// `|G_1| ≤ |G_0|² · max_a |G(a)|`, asserted only for hom-set strong categories.
    pub morphism_bound_holds: Option<bool>,
}

impl FinitenessReport {
    pub fn consistent(&self) -> bool {
        let injections_ok = self
            .injections
            .as_ref()
            .map_or(true, |v| v.iter().all(|i| i.retraction_holds && i.hom_size <= i.endo_size));
        injections_ok && self.morphism_bound_holds != Some(false)
    }
}

pub fn finiteness_report(cat: &SmallCategory) -> FinitenessReport {
    let p = cat.object_count();
    let homs = cat.hom_sets();
    let endomorphism_counts: Vec<usize> = (0..p).map(|a| homs[a][a].len()).collect();
    let homset_strong = homset_strong_report(cat).condition3.holds;
    let (injections, morphism_bound_holds) = if homset_strong {
        let mut certs = Vec::new();
        for c in 0..p {
            for d in (0..p).filter(|&d| d != c && !homs[c][d].is_empty()) {
                let pair = homs[d][c]
                    .iter()
                    .flat_map(|&u| homs[c][d].iter().map(move |&v| (u, v)))
                    .find(|&(u, v)| cat.compose(u, v) == Some(cat.identity(d)));
                let retraction_holds = pair.is_some_and(|(u, v)| {
                    homs[c][d].iter().all(|&g| cat.compose(g, u).and_then(|alpha| cat.compose(alpha, v)) == Some(g))
                });
                certs.push(InjectionCertificate {
                    c,
                    d,
                    section: pair,
                    hom_size: homs[c][d].len(),
                    endo_size: homs[c][c].len(),
                    retraction_holds,
                });
            }
        }
        let max_endo = endomorphism_counts.iter().copied().max().unwrap_or(0);
        (Some(certs), Some(cat.morphism_count() <= p * p * max_endo))
    } else {
        (None, None)
    };
    FinitenessReport {
        object_count: p,
        morphism_count: cat.morphism_count(),
        endomorphism_counts,
        homset_strong,
        injections,
        morphism_bound_holds,
    }
}

/// Group-theoretic predicates of `G(a)`, in their finite-group forms.
///
/// A finite group is torsion-free exactly when it is trivial (every element
/// has finite order), and every finite group is polycyclic-by-finite (take
/// the trivial polycyclic subgroup).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupPredicates {
    pub is_group: bool,
    pub order: usize,
    pub torsion_free: bool,
    pub polycyclic_by_finite: bool,
}

pub fn group_predicates(cat: &SmallCategory, a: usize) -> Result<GroupPredicates, CategoryError> {
    if a >= cat.object_count() {
        return Err(CategoryError::ObjectIndexOutOfRange(a));
    }
    let endo = cat.endomorphisms(a);
    let id = cat.identity(a);
    let is_group = endo
        .iter()
        .all(|&g| endo.iter().any(|&h| cat.compose(g, h) == Some(id) && cat.compose(h, g) == Some(id)));
    if !is_group {
        return Err(CategoryError::NotAGroup(a));
    }
    // Element orders by repeated composition; in a finite group each power sequence returns to the identity.
    let finite_order_non_identity = endo.iter().any(|&g| {
        g != id && {
            let mut x = g;
            let mut steps = 1;
            while x != id && steps <= endo.len() {
                x = cat.compose(x, g).expect("endomorphisms compose");
                steps += 1;
            }
            x == id
        }
    });
    Ok(GroupPredicates { is_group, order: endo.len(), torsion_free: !finite_order_non_identity, polycyclic_by_finite: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallcat::{arrow_category, build_mx, disjoint_union, one_object, pair_groupoid, Monoid};

    #[test]
    fn groupoids_are_homset_strong() {
        for cat in [pair_groupoid(2).unwrap(), build_mx(&Monoid::cyclic(3), 2).unwrap(), one_object(&Monoid::cyclic(2))] {
            let r = homset_strong_report(&cat);
            assert!(r.all_hold() && r.agree);
        }
    }

    #[test]
    fn arrow_category_fails_everywhere() {
        let r = homset_strong_report(&arrow_category());
        assert!(!r.condition1.holds && !r.condition2.holds && !r.condition3.holds);
        let w = r.condition3.witness.unwrap();
        assert_eq!(w.objects, vec![0, 1]);
        assert_eq!(w.defect, HomSetDefect::EmptyHomSet { cod: 0, dom: 1 });
    }

    #[test]
    fn mx_over_zero_one_is_strong_but_not_groupoid() {
        let c = build_mx(&Monoid::zero_one(), 2).unwrap();
        assert!(homset_strong_report(&c).all_hold());
        assert!(!c.is_groupoid());
    }

    #[test]
    fn single_object_monoid_is_strong() {
        let r = homset_strong_report(&one_object(&Monoid::zero_one()));
        assert!(r.all_hold());
    }

    #[test]
    fn finiteness_for_pair_groupoid_and_mx() {
        let f = finiteness_report(&pair_groupoid(2).unwrap());
        assert_eq!(f.endomorphism_counts, vec![1, 1]);
        assert!(f.injections.as_ref().unwrap().iter().all(|i| i.hom_size == 1 && i.endo_size == 1));
        assert!(f.consistent());
        let m = Monoid::full_transformation(2);
        let cat = build_mx(&m, 3).unwrap();
        let f = finiteness_report(&cat);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(cat.hom_set(x, y).len(), m.order());
            }
        }
        assert!(f.injections.unwrap().iter().all(|i| i.retraction_holds && i.hom_size == i.endo_size));
        assert_eq!(f.morphism_bound_holds, Some(true));
    }

    #[test]
    fn finiteness_bound_not_asserted_for_arrow() {
        let f = finiteness_report(&arrow_category());
        assert!(!f.homset_strong);
        assert_eq!(f.injections, None);
        assert_eq!(f.morphism_bound_holds, None);
        assert!(f.consistent());
    }

    #[test]
    fn group_predicates_finite_forms() {
        let p = group_predicates(&one_object(&Monoid::trivial()), 0).unwrap();
        assert!(p.torsion_free && p.polycyclic_by_finite);
        let p = group_predicates(&one_object(&Monoid::cyclic(2)), 0).unwrap();
        assert!(!p.torsion_free && p.polycyclic_by_finite);
        assert_eq!(group_predicates(&one_object(&Monoid::zero_one()), 0).unwrap_err(), CategoryError::NotAGroup(0));
        assert_eq!(group_predicates(&arrow_category(), 2).unwrap_err(), CategoryError::ObjectIndexOutOfRange(2));
    }

    #[test]
    fn disjoint_union_of_strong_parts_is_strong() {
        let u = disjoint_union(&[pair_groupoid(2).unwrap(), build_mx(&Monoid::zero_one(), 1).unwrap()]).unwrap();
        assert!(homset_strong_report(&u).all_hold());
    }
}
