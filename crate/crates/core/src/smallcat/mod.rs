//! Finite small categories given by composition tables.
//!
//! Hom-sets follow the convention `G(a, b)` = morphisms `b → a`: the first
//! argument is the codomain. `compose(g, h)` is `g ∘ h` ("first `h`, then
//! `g`") and is defined exactly when `dom(g) = cod(h)`.

mod monoid;
mod strong;

pub use monoid::{build_mx, transformation_submonoid, Monoid, MonoidDefect};
pub use strong::{
    finiteness_report, group_predicates, homset_strong_report, FinitenessReport, GroupPredicates, HomSetDefect,
    HomSetStrongReport, HomSetWitness, InjectionCertificate,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphism {morphism} refers to object {object}, but there are only {objects} objects")]
    ObjectOutOfRange { morphism: usize, object: usize, objects: usize },
    #[error("morphism index {0} is out of range")]
    MorphismOutOfRange(usize),
    #[error("object index {0} is out of range")]
    ObjectIndexOutOfRange(usize),
    #[error("the identity of object {0} is not an endomorphism of it")]
    IdentityNotEndomorphism(usize),
    #[error("composite of ({0}, {1}) is given but the domain of {0} is not the codomain of {1}")]
    CompositionDomainMismatch(usize, usize),
    #[error("composable pair ({0}, {1}) has no composite")]
    MissingComposite(usize, usize),
    #[error("composite {2} of ({0}, {1}) has the wrong domain or codomain")]
    CompositeEndpoints(usize, usize, usize),
    #[error("pair ({0}, {1}) is given two different composites")]
    ConflictingComposite(usize, usize),
    #[error("identity law fails for the identity of object {object} and morphism {morphism}")]
    IdentityLawViolation { object: usize, morphism: usize },
    #[error("composition is not associative on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("not a monoid: {0}")]
    NotAMonoid(MonoidDefect),
    #[error("the endomorphism monoid of object {0} is not a group")]
    NotAGroup(usize),
}

impl CategoryError {
    pub fn kind(&self) -> &'static str {
        match self {
            CategoryError::ShapeMismatch(_) => "ShapeMismatch",
            CategoryError::ObjectOutOfRange { .. } => "ObjectOutOfRange",
            CategoryError::MorphismOutOfRange(_) => "MorphismOutOfRange",
            CategoryError::ObjectIndexOutOfRange(_) => "ObjectIndexOutOfRange",
            CategoryError::IdentityNotEndomorphism(_) => "IdentityNotEndomorphism",
            CategoryError::CompositionDomainMismatch(..) => "CompositionDomainMismatch",
            CategoryError::MissingComposite(..) => "MissingComposite",
            CategoryError::CompositeEndpoints(..) => "CompositeEndpoints",
            CategoryError::ConflictingComposite(..) => "ConflictingComposite",
            CategoryError::IdentityLawViolation { .. } => "IdentityLawViolation",
            CategoryError::NotAssociative(..) => "NotAssociative",
            CategoryError::NotAMonoid(_) => "NotAMonoid",
            CategoryError::NotAGroup(_) => "NotAGroup",
        }
    }
}

/// Serialized form of a category: composition as `(g, h, g∘h)` triples, omitted pairs undefined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySpec {
    pub objects: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_labels: Option<Vec<String>>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: Vec<usize>,
    pub compose: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dom: usize,
    pub cod: usize,
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCategory {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identity: Vec<usize>,
    /// Row-major `q × q`: entry `g * q + h` is `g ∘ h`.
    compose: Vec<Option<usize>>,
    object_labels: Vec<String>,
    labels: Vec<String>,
}

/// Raw tables for [`make_category`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryTables {
    pub objects: usize,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub identity: Vec<usize>,
    pub compose: Vec<Option<usize>>,
    pub object_labels: Option<Vec<String>>,
    pub labels: Option<Vec<String>>,
}

/// Validate composition tables and build the category.
///
/// Checks run in the order: shapes, index ranges, identities being
/// endomorphisms, definedness and endpoints of each pair, identity laws,
/// associativity.
pub fn make_category(t: CategoryTables) -> Result<SmallCategory, CategoryError> {
    let p = t.objects;
    let q = t.dom.len();
    if p == 0 {
        return Err(CategoryError::ShapeMismatch("a category needs at least one object".into()));
    }
    if t.cod.len() != q {
        return Err(CategoryError::ShapeMismatch(format!("{} domains but {} codomains", q, t.cod.len())));
    }
    if t.identity.len() != p {
        return Err(CategoryError::ShapeMismatch(format!("{} identities for {} objects", t.identity.len(), p)));
    }
    if t.compose.len() != q * q {
        return Err(CategoryError::ShapeMismatch(format!("composition table has {} entries, expected {}", t.compose.len(), q * q)));
    }
    if let Some(l) = &t.object_labels {
        if l.len() != p {
            return Err(CategoryError::ShapeMismatch(format!("{} object labels for {} objects", l.len(), p)));
        }
    }
    if let Some(l) = &t.labels {
        if l.len() != q {
            return Err(CategoryError::ShapeMismatch(format!("{} labels for {} morphisms", l.len(), q)));
        }
    }
    for g in 0..q {
        for object in [t.dom[g], t.cod[g]] {
            if object >= p {
                return Err(CategoryError::ObjectOutOfRange { morphism: g, object, objects: p });
            }
        }
    }
    if let Some(&bad) = t.identity.iter().find(|&&i| i >= q) {
        return Err(CategoryError::MorphismOutOfRange(bad));
    }
    if let Some(&Some(bad)) = t.compose.iter().find(|c| matches!(c, Some(x) if *x >= q)) {
        return Err(CategoryError::MorphismOutOfRange(bad));
    }
    for (a, &i) in t.identity.iter().enumerate() {
        if t.dom[i] != a || t.cod[i] != a {
            return Err(CategoryError::IdentityNotEndomorphism(a));
        }
    }
    for g in 0..q {
        for h in 0..q {
            let composable = t.dom[g] == t.cod[h];
            match (t.compose[g * q + h], composable) {
                (Some(_), false) => return Err(CategoryError::CompositionDomainMismatch(g, h)),
                (None, true) => return Err(CategoryError::MissingComposite(g, h)),
                (Some(gh), true) if t.dom[gh] != t.dom[h] || t.cod[gh] != t.cod[g] => {
                    return Err(CategoryError::CompositeEndpoints(g, h, gh))
                }
                _ => {}
            }
        }
    }
    let c = |g: usize, h: usize| t.compose[g * q + h].expect("composable");
    for g in 0..q {
        let left = t.identity[t.cod[g]];
        if c(left, g) != g {
            return Err(CategoryError::IdentityLawViolation { object: t.cod[g], morphism: g });
        }
        let right = t.identity[t.dom[g]];
        if c(g, right) != g {
            return Err(CategoryError::IdentityLawViolation { object: t.dom[g], morphism: g });
        }
    }
    for f in 0..q {
        for g in (0..q).filter(|&g| t.dom[f] == t.cod[g]) {
            let fg = c(f, g);
            for h in (0..q).filter(|&h| t.dom[g] == t.cod[h]) {
                if c(fg, h) != c(f, c(g, h)) {
                    return Err(CategoryError::NotAssociative(f, g, h));
                }
            }
        }
    }
    let object_labels = t.object_labels.unwrap_or_else(|| (0..p).map(|a| a.to_string()).collect());
    let labels = t.labels.unwrap_or_else(|| {
        (0..q)
            .map(|g| match t.identity.iter().position(|&i| i == g) {
                Some(a) => format!("id{}", object_labels[a]),
                None => format!("g{g}"),
            })
            .collect()
    });
    Ok(SmallCategory { objects: p, dom: t.dom, cod: t.cod, identity: t.identity, compose: t.compose, object_labels, labels })
}

/// Build a category from its serialized form.
pub fn category_from_spec(spec: &CategorySpec) -> Result<SmallCategory, CategoryError> {
    let q = spec.morphisms.len();
    let mut compose = vec![None; q * q];
    for &[g, h, gh] in &spec.compose {
        if g >= q || h >= q {
            return Err(CategoryError::MorphismOutOfRange(g.max(h)));
        }
        match compose[g * q + h] {
            Some(prev) if prev != gh => return Err(CategoryError::ConflictingComposite(g, h)),
            _ => compose[g * q + h] = Some(gh),
        }
    }
    let labels = if spec.morphisms.iter().all(|m| m.label.is_some()) && q > 0 {
        Some(spec.morphisms.iter().map(|m| m.label.clone().unwrap_or_default()).collect())
    } else {
        None
    };
    make_category(CategoryTables {
        objects: spec.objects,
        dom: spec.morphisms.iter().map(|m| m.dom).collect(),
        cod: spec.morphisms.iter().map(|m| m.cod).collect(),
        identity: spec.identities.clone(),
        compose,
        object_labels: spec.object_labels.clone(),
        labels,
    })
}

impl SmallCategory {
    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, g: usize) -> usize {
        self.dom[g]
    }

    pub fn cod(&self, g: usize) -> usize {
        self.cod[g]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identity
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identity[self.dom[g]] == g
    }

    /// `g ∘ h`, defined iff `dom(g) = cod(h)`.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose[g * self.morphism_count() + h]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    /// `G(a, b)`: the morphisms `b → a`.
    pub fn hom_set(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphism_count()).filter(|&g| self.cod[g] == a && self.dom[g] == b).collect()
    }

    /// `G(a) = G(a, a)`.
    pub fn endomorphisms(&self, a: usize) -> Vec<usize> {
        self.hom_set(a, a)
    }

    /// `hom_sets()[a][b] = G(a, b)` for all objects.
    pub fn hom_sets(&self) -> Vec<Vec<Vec<usize>>> {
        let p = self.objects;
        let mut out = vec![vec![Vec::new(); p]; p];
        for g in 0..self.morphism_count() {
            out[self.cod[g]][self.dom[g]].push(g);
        }
        out
    }

    /// The inverse of every morphism, or `None` if some morphism is not an isomorphism.
    pub fn groupoid_inverses(&self) -> Option<Vec<usize>> {
        (0..self.morphism_count())
            .map(|g| {
                self.hom_set(self.dom[g], self.cod[g]).into_iter().find(|&h| {
                    self.compose(g, h) == Some(self.identity[self.cod[g]])
                        && self.compose(h, g) == Some(self.identity[self.dom[g]])
                })
            })
            .collect()
    }

    pub fn is_groupoid(&self) -> bool {
        self.groupoid_inverses().is_some()
    }

    pub fn to_spec(&self) -> CategorySpec {
        let q = self.morphism_count();
        let mut compose = Vec::new();
        for g in 0..q {
            for h in 0..q {
                if let Some(gh) = self.compose(g, h) {
                    compose.push([g, h, gh]);
                }
            }
        }
        CategorySpec {
            objects: self.objects,
            object_labels: Some(self.object_labels.clone()),
            morphisms: (0..q).map(|g| MorphismSpec { label: Some(self.labels[g].clone()), dom: self.dom[g], cod: self.cod[g] }).collect(),
            identities: self.identity.clone(),
            compose,
        }
    }

    /// The subcategory on the given morphisms, which must contain every identity
    /// and be closed under composition. Morphisms keep their relative order.
    pub fn wide_subcategory(&self, keep: &[usize]) -> Result<SmallCategory, CategoryError> {
        let q = self.morphism_count();
        let mut new_index = vec![None; q];
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        for (n, &g) in kept.iter().enumerate() {
            if g >= q {
                return Err(CategoryError::MorphismOutOfRange(g));
            }
            new_index[g] = Some(n);
        }
        let r = kept.len();
        let mut compose = vec![None; r * r];
        for (x, &g) in kept.iter().enumerate() {
            for (y, &h) in kept.iter().enumerate() {
                if let Some(gh) = self.compose(g, h) {
                    compose[x * r + y] = Some(new_index[gh].ok_or(CategoryError::MissingComposite(x, y))?);
                }
            }
        }
        let identity = self
            .identity
            .iter()
            .enumerate()
            .map(|(a, &i)| new_index[i].ok_or(CategoryError::IdentityNotEndomorphism(a)))
            .collect::<Result<Vec<_>, _>>()?;
        make_category(CategoryTables {
            objects: self.objects,
            dom: kept.iter().map(|&g| self.dom[g]).collect(),
            cod: kept.iter().map(|&g| self.cod[g]).collect(),
            identity,
            compose,
            object_labels: Some(self.object_labels.clone()),
            labels: Some(kept.iter().map(|&g| self.labels[g].clone()).collect()),
        })
    }
}

/// `A → B`: objects `A = 0`, `B = 1`, morphisms `idA, idB, f`.
pub fn arrow_category() -> SmallCategory {
    make_category(CategoryTables {
        objects: 2,
        dom: vec![0, 1, 0],
        cod: vec![0, 1, 1],
        identity: vec![0, 1],
        compose: vec![Some(0), None, None, None, Some(1), Some(2), Some(2), None, None],
        object_labels: Some(vec!["A".into(), "B".into()]),
        labels: Some(vec!["idA".into(), "idB".into(), "f".into()]),
    })
    .expect("arrow category tables are valid")
}

/// The pair groupoid on `s` objects: exactly one morphism `y → x` for every pair.
pub fn pair_groupoid(s: usize) -> Result<SmallCategory, CategoryError> {
    build_mx(&Monoid::trivial(), s)
}

/// A monoid as a one-object category.
pub fn one_object(monoid: &Monoid) -> SmallCategory {
    build_mx(monoid, 1).expect("one object is a valid set size")
}

/// Disjoint union: objects and morphisms of each part follow those of the previous parts.
pub fn disjoint_union(parts: &[SmallCategory]) -> Result<SmallCategory, CategoryError> {
    let q: usize = parts.iter().map(SmallCategory::morphism_count).sum();
    let mut t = CategoryTables {
        objects: 0,
        dom: Vec::with_capacity(q),
        cod: Vec::with_capacity(q),
        identity: Vec::new(),
        compose: vec![None; q * q],
        object_labels: Some(Vec::new()),
        labels: Some(Vec::with_capacity(q)),
    };
    let mut offset = 0;
    for (n, part) in parts.iter().enumerate() {
        let r = part.morphism_count();
        for g in 0..r {
            t.dom.push(part.dom[g] + t.objects);
            t.cod.push(part.cod[g] + t.objects);
            for h in 0..r {
                if let Some(gh) = part.compose(g, h) {
                    t.compose[(g + offset) * q + h + offset] = Some(gh + offset);
                }
            }
        }
        t.identity.extend(part.identity.iter().map(|i| i + offset));
        if let Some(l) = t.object_labels.as_mut() {
            l.extend(part.object_labels.iter().map(|s| format!("{s}.{n}")));
        }
        if let Some(l) = t.labels.as_mut() {
            l.extend(part.labels.iter().map(|s| format!("{s}.{n}")));
        }
        t.objects += part.objects;
        offset += r;
    }
    make_category(t)
}
