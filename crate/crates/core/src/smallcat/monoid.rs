use super::{make_category, CategoryError, CategoryTables, SmallCategory};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonoidDefect {
    Empty,
    NotSquare { row: usize },
    EntryOutOfRange { row: usize, col: usize },
    IdentityOutOfRange { identity: usize },
    IdentityLaw { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for MonoidDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidDefect::Empty => write!(f, "empty Cayley table"),
            MonoidDefect::NotSquare { row } => write!(f, "row {row} has the wrong length"),
            MonoidDefect::EntryOutOfRange { row, col } => write!(f, "entry ({row}, {col}) is out of range"),
            MonoidDefect::IdentityOutOfRange { identity } => write!(f, "identity index {identity} is out of range"),
            MonoidDefect::IdentityLaw { element } => write!(f, "identity law fails at element {element}"),
            MonoidDefect::NotAssociative { a, b, c } => write!(f, "({a}·{b})·{c} ≠ {a}·({b}·{c})"),
        }
    }
}

/// A finite monoid given by its Cayley table: `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monoid {
    table: Vec<Vec<usize>>,
    identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Monoid {
    pub fn new(table: Vec<Vec<usize>>, identity: usize, labels: Option<Vec<String>>) -> Result<Monoid, CategoryError> {
        let bad = |d| Err(CategoryError::NotAMonoid(d));
        let k = table.len();
        if k == 0 {
            return bad(MonoidDefect::Empty);
        }
        if let Some(row) = table.iter().position(|r| r.len() != k) {
            return bad(MonoidDefect::NotSquare { row });
        }
        for (row, r) in table.iter().enumerate() {
            if let Some(col) = r.iter().position(|&x| x >= k) {
                return bad(MonoidDefect::EntryOutOfRange { row, col });
            }
        }
        if identity >= k {
            return bad(MonoidDefect::IdentityOutOfRange { identity });
        }
        if let Some(element) = (0..k).find(|&a| table[identity][a] != a || table[a][identity] != a) {
            return bad(MonoidDefect::IdentityLaw { element });
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(MonoidDefect::NotAssociative { a, b, c });
                    }
                }
            }
        }
        if let Some(l) = &labels {
            if l.len() != k {
                return Err(CategoryError::ShapeMismatch(format!("{} labels for a monoid of order {k}", l.len())));
            }
        }
        Ok(Monoid { table, identity, labels })
    }

    /// Re-run validation, for values that came through deserialization.
    pub fn validated(self) -> Result<Monoid, CategoryError> {
        Monoid::new(self.table, self.identity, self.labels)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_group(&self) -> bool {
        let k = self.order();
        (0..k).all(|a| (0..k).any(|b| self.table[a][b] == self.identity && self.table[b][a] == self.identity))
    }

    pub fn trivial() -> Monoid {
        Monoid::cyclic(1)
    }

    /// `Z/n` under addition, identity 0.
    pub fn cyclic(n: usize) -> Monoid {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Monoid::new(table, 0, None).expect("cyclic group table is valid")
    }

    /// `{0, 1}` under multiplication; element `i` is the integer `i`, identity 1.
    pub fn zero_one() -> Monoid {
        Monoid::new(vec![vec![0, 0], vec![0, 1]], 1, None).expect("{0,1} is a monoid")
    }

    /// Permutations of `{0..n}` under composition, identity first.
    pub fn symmetric(n: usize) -> Monoid {
        let gens: Vec<Vec<usize>> = if n < 2 {
            vec![]
        } else {
            let mut cycle: Vec<usize> = (1..n).collect();
            cycle.push(0);
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            vec![swap, cycle]
        };
        transformation_submonoid(n, &gens, usize::MAX).expect("no order bound")
    }

    /// Componentwise product; element `(a, b)` has index `a·|other| + b`.
    pub fn product(&self, other: &Monoid) -> Monoid {
        let k = other.order();
        let n = self.order() * k;
        let table = (0..n)
            .map(|x| (0..n).map(|y| self.mul(x / k, y / k) * k + other.mul(x % k, y % k)).collect())
            .collect();
        let labels = (0..n).map(|x| format!("({},{})", self.label(x / k), other.label(x % k))).collect();
        Monoid::new(table, self.identity * k + other.identity, Some(labels)).expect("product of monoids is a monoid")
    }

    /// All maps `{0..n} → {0..n}` under composition `(f·g)(x) = f(g(x))`.
    ///
    /// Map `f` is encoded by its images read as base-`n` digits, `f(0)` most significant.
    pub fn full_transformation(n: usize) -> Monoid {
        let maps: Vec<Vec<usize>> = (0..n.pow(n as u32))
            .map(|mut code| {
                let mut images = vec![0; n];
                for x in (0..n).rev() {
                    images[x] = code % n;
                    code /= n;
                }
                images
            })
            .collect();
        let encode = |images: &[usize]| images.iter().fold(0, |acc, &y| acc * n + y);
        let table = maps
            .iter()
            .map(|f| maps.iter().map(|g| encode(&g.iter().map(|&y| f[y]).collect::<Vec<_>>())).collect())
            .collect();
        let identity = encode(&(0..n).collect::<Vec<_>>());
        let labels = maps.iter().map(|f| f.iter().map(usize::to_string).collect::<String>()).collect();
        Monoid::new(table, identity, Some(labels)).expect("transformation monoid is valid")
    }
}

/// Submonoid of all maps `{0..n} → {0..n}` generated by `generators`, with the
/// identity as element 0 and the rest in breadth-first discovery order.
///
/// Returns `None` if the closure grows past `max_order`.
pub fn transformation_submonoid(n: usize, generators: &[Vec<usize>], max_order: usize) -> Option<Monoid> {
    let mut elems: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut queue = std::collections::VecDeque::new();
    for g in generators {
        if !elems.contains(g) {
            elems.push(g.clone());
            queue.push_back(g.clone());
        }
    }
    while let Some(f) = queue.pop_front() {
        for g in generators {
            for h in [f.iter().map(|&y| g[y]).collect::<Vec<_>>(), g.iter().map(|&y| f[y]).collect()] {
                if !elems.contains(&h) {
                    elems.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        if elems.len() > max_order {
            return None;
        }
    }
    if elems.len() > max_order {
        return None;
    }
    let find = |h: &[usize]| elems.iter().position(|e| e == h).expect("closed under composition");
    let table = elems
        .iter()
        .map(|f| elems.iter().map(|g| find(&g.iter().map(|&y| f[y]).collect::<Vec<_>>())).collect())
        .collect();
    let labels = elems.iter().map(|f| f.iter().map(usize::to_string).collect()).collect();
    Some(Monoid::new(table, 0, Some(labels)).expect("transformation submonoid is valid"))
}

/// The category `MX`: objects `0..s`, morphisms `(m, x, y) : y → x` for all `m ∈ M`,
/// composing as `(m, x, y)(n, y, z) = (mn, x, z)`.
///
/// Morphism `(m, x, y)` has index `(m·s + x)·s + y`.
pub fn build_mx(monoid: &Monoid, s: usize) -> Result<SmallCategory, CategoryError> {
    if s == 0 {
        return Err(CategoryError::ShapeMismatch("MX needs a nonempty object set".into()));
    }
    let k = monoid.order();
    let q = k * s * s;
    let index = |m: usize, x: usize, y: usize| (m * s + x) * s + y;
    let split = |g: usize| (g / (s * s), (g / s) % s, g % s);
    let mut compose = vec![None; q * q];
    for g in 0..q {
        let (m, x, y) = split(g);
        for z in 0..s {
            for n in 0..k {
                let h = index(n, y, z);
                compose[g * q + h] = Some(index(monoid.mul(m, n), x, z));
            }
        }
    }
    make_category(CategoryTables {
        objects: s,
        dom: (0..q).map(|g| split(g).2).collect(),
        cod: (0..q).map(|g| split(g).1).collect(),
        identity: (0..s).map(|x| index(monoid.identity(), x, x)).collect(),
        compose,
        object_labels: None,
        labels: Some(
            (0..q)
                .map(|g| {
                    let (m, x, y) = split(g);
                    format!("({},{x},{y})", monoid.label(m))
                })
                .collect(),
        ),
    })
}
