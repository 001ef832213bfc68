use super::{CorpusError, Instance, MonoidChoice, Recipe, DEFAULT_MAX_RING_ORDER};
use crate::finring::{corner_ring, cyclic_ring, direct_product, matrix_ring, FiniteRing};
use crate::modular::{checked_pow, gcd, MAX_MODULUS};
use crate::skewalg::{build_category_algebra, build_skew_algebra, validate_system, SkewCategorySystem};
use crate::smallcat::{
    build_mx, disjoint_union, make_category, one_object, transformation_submonoid, CategoryTables, Monoid, SmallCategory,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

const MAX_CATEGORY_MORPHISMS: usize = 400;

pub(super) enum Built {
    Ring { ring: FiniteRing, idempotents: Vec<Vec<u64>> },
    /// `cyclic = Some((n, s))` when the category is `MX` over `C_n` on `s` objects.
    Category { category: SmallCategory, cyclic: Option<(usize, usize)> },
    System(SkewCategorySystem),
}

impl Built {
    pub(super) fn into_instance(self) -> Instance {
        match self {
            Built::Ring { ring, idempotents } => Instance::IdempotentSet { ring: ring.to_spec(), idempotents },
            Built::Category { category, .. } => Instance::Category { category: category.to_spec() },
            Built::System(system) => Instance::System { system: system.to_spec() },
        }
    }
}

fn out_of_range(msg: impl Into<String>) -> CorpusError {
    CorpusError::ParameterOutOfRange(msg.into())
}

fn check_range(name: &str, value: usize, lo: usize, hi: usize) -> Result<(), CorpusError> {
    if value < lo || value > hi {
        return Err(out_of_range(format!("{name} = {value} outside [{lo}, {hi}]")));
    }
    Ok(())
}

fn check_modulus(m: u64) -> Result<(), CorpusError> {
    if !(2..=MAX_MODULUS).contains(&m) {
        return Err(out_of_range(format!("modulus {m} outside [2, {MAX_MODULUS}]")));
    }
    Ok(())
}

fn check_order(m: u64, rank: usize) -> Result<(), CorpusError> {
    match checked_pow(m, rank) {
        Some(o) if o <= DEFAULT_MAX_RING_ORDER => Ok(()),
        _ => Err(out_of_range(format!("ring order {m}^{rank} exceeds {DEFAULT_MAX_RING_ORDER}"))),
    }
}

fn child(rng: &mut ChaCha8Rng) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(rng.gen())
}

pub(super) fn build(recipe: &Recipe, rng: &mut ChaCha8Rng) -> Result<Built, CorpusError> {
    match recipe {
        Recipe::MatrixRing { modulus, n, conjugate } => matrix_instance(*modulus, *n, *conjugate, rng),
        Recipe::MonoidAlgebra { modulus, monoid } => {
            check_modulus(*modulus)?;
            let mon = monoid_from_choice(monoid, rng)?;
            check_order(*modulus, mon.order())?;
            let alg = build_category_algebra(&cyclic_ring(*modulus)?, &one_object(&mon))?;
            let unit = alg.local_unit(0);
            Ok(Built::Ring { ring: alg.ring().clone(), idempotents: vec![unit] })
        }
        Recipe::SkewAlgebra { modulus, rank, category } => skew_instance(*modulus, *rank, category, rng),
        Recipe::DirectProduct { factors } => {
            check_range("factors", factors.len(), 1, 4)?;
            let mut rings = Vec::new();
            let mut sets = Vec::new();
            for f in factors {
                let (r, s) = ring_with_set(build(f, &mut child(rng))?)?;
                rings.push(r);
                sets.push(s);
            }
            let ring = direct_product(&rings)?;
            check_order(ring.modulus(), ring.rank())?;
            let mut idempotents = Vec::new();
            let mut offset = 0;
            for (r, s) in rings.iter().zip(sets) {
                for e in s {
                    let mut v = vec![0u64; ring.rank()];
                    v[offset..offset + r.rank()].copy_from_slice(&e);
                    idempotents.push(v);
                }
                offset += r.rank();
            }
            Ok(Built::Ring { ring, idempotents })
        }
        Recipe::Corner { source } => {
            let (ring, set) = ring_with_set(build(source, &mut child(rng))?)?;
            let mut keep: Vec<usize> = (0..set.len()).filter(|_| rng.gen_bool(0.5)).collect();
            if keep.is_empty() {
                keep.push(rng.gen_range(0..set.len()));
            }
            let mut e = vec![0u64; ring.rank()];
            for &k in &keep {
                e = ring.add_coords(&e, &set[k]);
            }
            let corner = corner_ring(&ring, &ring.element(e)?)?;
            let idempotents = keep
                .iter()
                .map(|&k| {
                    let x = ring.element(set[k].clone())?;
                    Ok(corner.project(&x)?.expect("e_k lies in eSe").into_coords())
                })
                .collect::<Result<Vec<_>, CorpusError>>()?;
            Ok(Built::Ring { ring: corner.ring, idempotents })
        }
        Recipe::MxCategory { monoid, objects } => {
            check_range("objects", *objects, 1, 8)?;
            let mon = monoid_from_choice(monoid, rng)?;
            check_range("morphisms", mon.order() * objects * objects, 1, MAX_CATEGORY_MORPHISMS)?;
            let cyclic = match monoid {
                MonoidChoice::Cyclic { order } => Some((*order, *objects)),
                _ => None,
            };
            Ok(Built::Category { category: build_mx(&mon, *objects)?, cyclic })
        }
        Recipe::RandomGroupoid { max_components, max_objects, max_morphisms } => {
            check_range("max_components", *max_components, 1, 4)?;
            check_range("max_objects", *max_objects, 1, 8)?;
            check_range("max_morphisms", *max_morphisms, 1, MAX_CATEGORY_MORPHISMS)?;
            let components = rng.gen_range(1..=*max_components);
            let (mut objects_left, mut budget) = (*max_objects, *max_morphisms);
            let mut parts = Vec::new();
            for _ in 0..components {
                if objects_left == 0 || budget == 0 {
                    break;
                }
                let mut s = rng.gen_range(1..=objects_left);
                while s * s > budget {
                    s -= 1;
                }
                let group = random_group(budget / (s * s), rng);
                objects_left -= s;
                budget -= group.order() * s * s;
                parts.push(build_mx(&group, s)?);
            }
            let category = if parts.len() == 1 { parts.pop().expect("one part") } else { disjoint_union(&parts)? };
            Ok(Built::Category { category, cyclic: None })
        }
        Recipe::RandomCategory { max_objects, max_points, generators, max_morphisms } => {
            check_range("max_objects", *max_objects, 1, 6)?;
            check_range("max_points", *max_points, 1, 3)?;
            check_range("generators", *generators, 0, 16)?;
            check_range("max_morphisms", *max_morphisms, 1, MAX_CATEGORY_MORPHISMS)?;
            let category = random_concrete_category(*max_objects.min(max_morphisms), *max_points, *generators, *max_morphisms, rng)?;
            Ok(Built::Category { category, cyclic: None })
        }
    }
}

fn ring_with_set(built: Built) -> Result<(FiniteRing, Vec<Vec<u64>>), CorpusError> {
    match built {
        Built::Ring { ring, idempotents } => Ok((ring, idempotents)),
        Built::System(sys) => {
            let alg = build_skew_algebra(&sys)?;
            let units = (0..sys.category().object_count()).map(|a| alg.local_unit(a)).collect();
            Ok((alg.ring().clone(), units))
        }
        Built::Category { .. } => Err(out_of_range("a ring recipe was expected, found a category recipe")),
    }
}

fn matrix_instance(m: u64, n: usize, conjugate: bool, rng: &mut ChaCha8Rng) -> Result<Built, CorpusError> {
    check_modulus(m)?;
    check_range("n", n, 1, 4)?;
    check_order(m, n * n)?;
    let ring = matrix_ring(m, n)?;
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let mut blocks: Vec<usize> = Vec::new();
    for &l in &labels {
        if !blocks.contains(&l) {
            blocks.push(l);
        }
    }
    let mut sets: Vec<Vec<Vec<u64>>> = blocks
        .iter()
        .map(|&b| {
            let mut e = vec![vec![0u64; n]; n];
            for (i, _) in labels.iter().enumerate().filter(|(_, &l)| l == b) {
                e[i][i] = 1;
            }
            e
        })
        .collect();
    if conjugate && n > 1 {
        let (mut p, mut p_inv) = (identity(n), identity(n));
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let lambda = rng.gen_range(0..m);
            let mut step = identity(n);
            step[i][j] = lambda;
            let mut back = identity(n);
            back[i][j] = (m - lambda) % m;
            p = mat_mul(&p, &step, m);
            p_inv = mat_mul(&back, &p_inv, m);
        }
        sets = sets.iter().map(|e| mat_mul(&mat_mul(&p, e, m), &p_inv, m)).collect();
    }
    let idempotents = sets.into_iter().map(|e| e.into_iter().flatten().collect()).collect();
    Ok(Built::Ring { ring, idempotents })
}

fn identity(n: usize) -> Vec<Vec<u64>> {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| (acc + a[i][k] * b[k][j]) % m)).collect())
        .collect()
}

fn group_catalogue() -> Vec<Monoid> {
    let c2 = Monoid::cyclic(2);
    let mut groups: Vec<Monoid> = (1..=8).map(Monoid::cyclic).collect();
    groups.push(c2.product(&c2));
    groups.push(Monoid::symmetric(3));
    groups.push(c2.product(&Monoid::cyclic(4)));
    groups.push(c2.product(&c2).product(&c2));
    groups
}

fn random_group(max_order: usize, rng: &mut ChaCha8Rng) -> Monoid {
    let fits: Vec<Monoid> = group_catalogue().into_iter().filter(|g| g.order() <= max_order.max(1)).collect();
    fits.choose(rng).expect("the trivial group always fits").clone()
}

fn monoid_from_choice(choice: &MonoidChoice, rng: &mut ChaCha8Rng) -> Result<Monoid, CorpusError> {
    Ok(match choice {
        MonoidChoice::Trivial => Monoid::trivial(),
        MonoidChoice::Cyclic { order } => {
            check_range("order", *order, 1, 64)?;
            Monoid::cyclic(*order)
        }
        MonoidChoice::ZeroOne => Monoid::zero_one(),
        MonoidChoice::FullTransformation { points } => {
            check_range("points", *points, 1, 3)?;
            Monoid::full_transformation(*points)
        }
        MonoidChoice::Symmetric { points } => {
            check_range("points", *points, 1, 4)?;
            Monoid::symmetric(*points)
        }
        MonoidChoice::Klein => Monoid::cyclic(2).product(&Monoid::cyclic(2)),
        MonoidChoice::RandomGroup { max_order } => {
            check_range("max_order", *max_order, 1, 64)?;
            random_group(*max_order, rng)
        }
        MonoidChoice::Random { points, generators, max_order } => {
            check_range("points", *points, 1, 4)?;
            check_range("generators", *generators, 0, 8)?;
            check_range("max_order", *max_order, 1, 256)?;
            let mut gens: Vec<Vec<usize>> =
                (0..*generators).map(|_| (0..*points).map(|_| rng.gen_range(0..*points)).collect()).collect();
            loop {
                if let Some(mon) = transformation_submonoid(*points, &gens, *max_order) {
                    break mon;
                }
                gens.pop();
            }
        }
    })
}

fn skew_instance(m: u64, rank: usize, category: &Recipe, rng: &mut ChaCha8Rng) -> Result<Built, CorpusError> {
    check_modulus(m)?;
    check_range("rank", rank, 1, 4)?;
    let Built::Category { category, cyclic } = build(category, &mut child(rng))? else {
        return Err(out_of_range("skew_algebra needs a category recipe"));
    };
    check_order(m, category.morphism_count() * rank)?;
    let base = direct_product(&vec![cyclic_ring(m)?; rank])?;
    let frames: Vec<Vec<usize>> = (0..category.object_count())
        .map(|_| {
            let mut p: Vec<usize> = (0..rank).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let twist = match cyclic {
        Some((n, _)) => {
            let mut p: Vec<usize> = (0..rank).collect();
            p.shuffle(rng);
            let o = perm_order(&p);
            perm_pow(&p, o / gcd(o as u64, n as u64) as usize)
        }
        None => (0..rank).collect(),
    };
    let maps = (0..category.morphism_count())
        .map(|g| {
            let power = cyclic.map_or(0, |(_, s)| g / (s * s));
            let pi = compose(
                &frames[category.cod(g)],
                &compose(&perm_pow(&twist, power), &invert(&frames[category.dom(g)])),
            );
            pi.iter().map(|&t| (0..rank).map(|c| u64::from(c == t)).collect()).collect()
        })
        .collect::<Vec<Vec<Vec<u64>>>>();
    let rings = vec![base; category.object_count()];
    Ok(Built::System(validate_system(&category, &rings, &maps)?))
}

/// `(p ∘ q)(i) = p(q(i))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn perm_pow(p: &[usize], k: usize) -> Vec<usize> {
    (0..k).fold((0..p.len()).collect(), |acc: Vec<usize>, _| compose(p, &acc))
}

fn perm_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut q = p.to_vec();
    let mut o = 1;
    while q != id {
        q = compose(p, &q);
        o += 1;
    }
    o
}

type Arrow = (usize, usize, Vec<usize>);

/// Finite sets and maps, closed under composition as generators are added.
struct Concrete {
    arrows: Vec<Arrow>,
    index: HashMap<Arrow, usize>,
}

impl Concrete {
    fn insert(&mut self, a: Arrow) {
        if !self.index.contains_key(&a) {
            self.index.insert(a.clone(), self.arrows.len());
            self.arrows.push(a);
        }
    }

    /// Add `gen` and close; roll back and return false if more than `cap` arrows result.
    fn close_with(&mut self, gen: Arrow, cap: usize) -> bool {
        let saved = self.arrows.len();
        self.insert(gen);
        let mut i = saved;
        while i < self.arrows.len() {
            let (fd, fc, f) = self.arrows[i].clone();
            let mut j = 0;
            while j < self.arrows.len() {
                let (gd, gc, g) = self.arrows[j].clone();
                if fd == gc {
                    self.insert((gd, fc, g.iter().map(|&x| f[x]).collect()));
                }
                if gd == fc {
                    self.insert((fd, gc, f.iter().map(|&x| g[x]).collect()));
                }
                if self.arrows.len() > cap {
                    for a in self.arrows.drain(saved..) {
                        self.index.remove(&a);
                    }
                    return false;
                }
                j += 1;
            }
            i += 1;
        }
        true
    }
}

fn random_concrete_category(
    max_objects: usize,
    max_points: usize,
    generators: usize,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Result<SmallCategory, CorpusError> {
    let p = rng.gen_range(1..=max_objects);
    let sizes: Vec<usize> = (0..p).map(|_| rng.gen_range(1..=max_points)).collect();
    let mut c = Concrete { arrows: Vec::new(), index: HashMap::new() };
    for (a, &n) in sizes.iter().enumerate() {
        c.insert((a, a, (0..n).collect()));
    }
    for _ in 0..generators {
        let (b, a) = (rng.gen_range(0..p), rng.gen_range(0..p));
        let f = (0..sizes[b]).map(|_| rng.gen_range(0..sizes[a])).collect();
        c.close_with((b, a, f), cap);
    }
    let q = c.arrows.len();
    let mut compose = vec![None; q * q];
    for (g, (gd, gc, f)) in c.arrows.iter().enumerate() {
        for (h, (hd, hc, k)) in c.arrows.iter().enumerate() {
            if gd == hc {
                compose[g * q + h] = Some(c.index[&(*hd, *gc, k.iter().map(|&x| f[x]).collect())]);
            }
        }
    }
    Ok(make_category(CategoryTables {
        objects: p,
        dom: c.arrows.iter().map(|a| a.0).collect(),
        cod: c.arrows.iter().map(|a| a.1).collect(),
        identity: (0..p).collect(),
        compose,
        object_labels: None,
        labels: None,
    })?)
}
