//! Enumerated element tables for small permutation groups.

use rustc_hash::FxHashMap;

use crate::bsgs::PermGroupBSGS;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default limit on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite group whose elements are numbered `0..order`, with `0` the identity.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// Element ids generating the group.
    fn generator_ids(&self) -> Vec<usize>;

    fn identity(&self) -> usize {
        0
    }

    /// `a^b = b⁻¹ a b`.
    fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// Maps fixed-length keys of small integers to ids, packing them into a
/// `u128` when they fit.
pub(crate) enum KeyIndex {
    Packed { bits: u32, map: FxHashMap<u128, u32> },
    Wide(FxHashMap<Box<[u32]>, u32>),
}

impl KeyIndex {
    /// Keys of `len` entries, each below `bound`.
    pub(crate) fn new(len: usize, bound: usize) -> Self {
        let bits = usize::BITS - bound.max(2).saturating_sub(1).leading_zeros();
        if len as u32 * bits <= 128 {
            KeyIndex::Packed {
                bits,
                map: FxHashMap::default(),
            }
        } else {
            KeyIndex::Wide(FxHashMap::default())
        }
    }

    pub(crate) fn insert(&mut self, key: impl Iterator<Item = u32>, id: u32) {
        match self {
            KeyIndex::Packed { bits, map } => {
                map.insert(pack(key, *bits), id);
            }
            KeyIndex::Wide(map) => {
                map.insert(key.collect(), id);
            }
        }
    }

    pub(crate) fn get(&self, key: impl Iterator<Item = u32>) -> Option<u32> {
        match self {
            KeyIndex::Packed { bits, map } => map.get(&pack(key, *bits)).copied(),
            KeyIndex::Wide(map) => {
                let key: Box<[u32]> = key.collect();
                map.get(&key).copied()
            }
        }
    }
}

/// All elements of a permutation group, numbered in breadth-first discovery
/// order from the identity (right multiplication by generators in order).
///
/// Elements are located through the images of a base, so products can be
/// looked up without composing full permutations.
pub struct ElementTable {
    degree: usize,
    perms: Vec<u32>,
    base: Vec<u32>,
    index: KeyIndex,
    inverse: Vec<u32>,
    generator_ids: Vec<u32>,
}

impl ElementTable {
    /// Enumerates the group, failing when its order exceeds `cap`.
    pub fn enumerate(group: &PermGroupBSGS, cap: usize) -> Result<Self> {
        let order = group.order_u64().filter(|&o| o <= cap as u64).ok_or_else(|| {
            Error::CapExceeded {
                what: "group".into(),
                size: group.order().to_string(),
                cap,
            }
        })? as usize;
        let degree = group.degree();
        let mut base: Vec<u32> = group.base().iter().map(|&b| b as u32).collect();
        if base.is_empty() && degree > 0 {
            base.push(0);
        }
        let index = KeyIndex::new(base.len(), degree);
        let mut table = ElementTable {
            degree,
            perms: Vec::with_capacity(order * degree),
            base,
            index,
            inverse: Vec::new(),
            generator_ids: Vec::new(),
        };
        table.push(Permutation::identity(degree).images());
        let gens: Vec<&Permutation> = group.generators().iter().collect();
        let mut head = 0;
        while head < table.len() {
            for g in &gens {
                let prod: Vec<u32> = table
                    .perm_slice(head)
                    .iter()
                    .map(|&i| g.images()[i as usize])
                    .collect();
                if table.lookup_images(&prod).is_none() {
                    table.push(&prod);
                }
            }
            head += 1;
        }
        debug_assert_eq!(table.len(), order);
        let n = table.len();
        table.inverse = (0..n)
            .map(|a| {
                let inv = table.perm(a).inverse();
                table.lookup_images(inv.images()).unwrap()
            })
            .collect();
        table.generator_ids = gens
            .iter()
            .map(|g| table.lookup_images(g.images()).unwrap())
            .collect();
        Ok(table)
    }

    /// Convenience: BSGS and enumeration in one step.
    pub fn from_generators(degree: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        let g = PermGroupBSGS::new(degree, gens)?;
        Self::enumerate(&g, cap)
    }

    fn push(&mut self, images: &[u32]) {
        let id = self.len() as u32;
        self.perms.extend_from_slice(images);
        self.index.insert(self.base.iter().map(|&b| images[b as usize]), id);
    }

    fn lookup_base_images(&self, images: impl Iterator<Item = u32>) -> Option<u32> {
        self.index.get(images)
    }

    fn lookup_images(&self, images: &[u32]) -> Option<u32> {
        if self.degree == 0 {
            return Some(0);
        }
        self.lookup_base_images(self.base.iter().map(|&b| images[b as usize]))
    }

    pub fn len(&self) -> usize {
        self.perms.len().checked_div(self.degree).unwrap_or(1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn perm_slice(&self, id: usize) -> &[u32] {
        &self.perms[id * self.degree..(id + 1) * self.degree]
    }

    pub fn perm(&self, id: usize) -> Permutation {
        Permutation::from_images_unchecked(self.perm_slice(id).to_vec())
    }

    /// Position of a permutation in the table, if it belongs to the group.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        let id = self.lookup_images(p.images())? as usize;
        (self.perm_slice(id) == p.images()).then_some(id)
    }

    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.len()).map(|i| self.perm(i))
    }

    /// Image of `point` under element `id`.
    pub fn apply(&self, id: usize, point: usize) -> usize {
        self.perms[id * self.degree + point] as usize
    }
}

fn pack(images: impl Iterator<Item = u32>, bits: u32) -> u128 {
    images.fold(0u128, |acc, v| (acc << bits) | v as u128)
}

impl FiniteGroup for ElementTable {
    fn order(&self) -> usize {
        self.len()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        if self.degree == 0 {
            return 0;
        }
        let pa = self.perm_slice(a);
        let pb = self.perm_slice(b);
        self.lookup_base_images(self.base.iter().map(|&x| pb[pa[x as usize] as usize]))
            .expect("product of group elements lies in the group") as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        if self.degree == 0 {
            return 0;
        }
        self.inverse[a] as usize
    }

    fn generator_ids(&self) -> Vec<usize> {
        self.generator_ids.iter().map(|&g| g as usize).collect()
    }
}

/// A group given by an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

impl CayleyTable {
    /// Tabulates any finite group (intended for small orders).
    pub fn from_group<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = g.mul(a, b) as u32;
            }
        }
        let inverse = (0..n).map(|a| g.inv(a) as u32).collect();
        CayleyTable {
            n,
            mul,
            inverse,
            generators: g.generator_ids(),
        }
    }

    /// Direct product `A × B`, with element `(a, b)` numbered `a * |B| + b`.
    pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> Self {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                mul[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        let inverse = (0..n)
            .map(|x| (a.inv(x / nb) * nb + b.inv(x % nb)) as u32)
            .collect();
        let mut generators: Vec<usize> = a.generators.iter().map(|&g| g * nb).collect();
        generators.extend(b.generators.iter().copied());
        CayleyTable {
            n,
            mul,
            inverse,
            generators,
        }
    }
}

impl FiniteGroup for CayleyTable {
    fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    fn generator_ids(&self) -> Vec<usize> {
        self.generators.clone()
    }
}

/// Elements of the subgroup generated by `gens`, as a membership mask and list.
pub fn subgroup_closure<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize]) -> (Vec<bool>, Vec<usize>) {
    let mut member = vec![false; g.order()];
    let mut elems = vec![g.identity()];
    member[g.identity()] = true;
    let mut head = 0;
    while head < elems.len() {
        let e = elems[head];
        head += 1;
        for &s in gens {
            let x = g.mul(e, s);
            if !member[x] {
                member[x] = true;
                elems.push(x);
            }
        }
    }
    (member, elems)
}

/// A small generating set for a subgroup given by its elements (greedy).
pub fn greedy_generators<G: FiniteGroup + ?Sized>(g: &G, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut member = vec![false; g.order()];
    member[g.identity()] = true;
    let mut closure = vec![g.identity()];
    for &e in elements {
        if member[e] {
            continue;
        }
        gens.push(e);
        // Extend the closure by the new generator.
        let mut head = 0;
        let mut frontier: Vec<usize> = closure.clone();
        while head < frontier.len() {
            let a = frontier[head];
            head += 1;
            for &s in &gens {
                let x = g.mul(a, s);
                if !member[x] {
                    member[x] = true;
                    closure.push(x);
                    frontier.push(x);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn enumeration_is_closed_and_starts_at_identity() {
        let t = ElementTable::from_generators(4, &[p(4, "(1,2)"), p(4, "(1,2,3,4)")], 100).unwrap();
        assert_eq!(t.len(), 24);
        assert!(t.perm(0).is_identity());
        for a in 0..t.len() {
            assert_eq!(t.mul(a, t.inv(a)), 0);
            for b in 0..t.len() {
                let direct = &t.perm(a) * &t.perm(b);
                assert_eq!(t.index_of(&direct), Some(t.mul(a, b)));
            }
        }
        // discovery order: identity, then generators in declared order
        assert_eq!(t.perm(1), p(4, "(1,2)"));
        assert_eq!(t.perm(2), p(4, "(1,2,3,4)"));
    }

    #[test]
    fn cap_is_enforced() {
        let g = PermGroupBSGS::new(5, &[p(5, "(1,2)"), p(5, "(1,2,3,4,5)")]).unwrap();
        assert!(matches!(
            ElementTable::enumerate(&g, 100),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(ElementTable::enumerate(&g, 120).unwrap().len(), 120);
    }

    #[test]
    fn index_of_rejects_non_members() {
        let t = ElementTable::from_generators(4, &[p(4, "(1,2,3,4)")], 100).unwrap();
        assert_eq!(t.index_of(&p(4, "(1,2)")), None);
        assert_eq!(t.index_of(&p(4, "(1,3)(2,4)")).map(|i| t.perm(i)), Some(p(4, "(1,3)(2,4)")));
    }

    #[test]
    fn wide_keys_work() {
        // 40 disjoint transpositions: base of length 40 on 80 points overflows 128 bits.
        let gens: Vec<Permutation> = (0..10u32)
            .map(|i| Permutation::from_cycles(80, &[vec![2 * i, 2 * i + 1]]).unwrap())
            .collect();
        let t = ElementTable::from_generators(80, &gens, 2000).unwrap();
        assert_eq!(t.len(), 1024);
        assert_eq!(t.mul(3, t.inv(3)), 0);
    }

    #[test]
    fn cayley_direct_product() {
        let c2 = CayleyTable::from_group(&ElementTable::from_generators(2, &[p(2, "(1,2)")], 10).unwrap());
        let c3 = CayleyTable::from_group(&ElementTable::from_generators(3, &[p(3, "(1,2,3)")], 10).unwrap());
        let c6 = CayleyTable::direct_product(&c2, &c3);
        assert_eq!(c6.order(), 6);
        let orders: Vec<u64> = (0..6).map(|a| c6.element_order(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 6).count(), 2);
        let (_, elems) = subgroup_closure(&c6, &c6.generator_ids());
        assert_eq!(elems.len(), 6);
    }

    #[test]
    fn greedy_generators_generate() {
        let t = ElementTable::from_generators(5, &[p(5, "(1,2)"), p(5, "(1,2,3,4,5)")], 200).unwrap();
        let all: Vec<usize> = (0..t.len()).collect();
        let gens = greedy_generators(&t, &all);
        assert!(gens.len() <= 7);
        assert_eq!(subgroup_closure(&t, &gens).1.len(), 120);
    }
}
