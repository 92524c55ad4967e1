//! The centralizer of the induced action inside the block-preserving
//! permutations of pair classes, computed orbit by orbit as a product of
//! wreath products, plus an exhaustive oracle for tiny cases.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::atlas::Group;
use crate::autgroup::{out_representatives, OutReps};
use crate::bsgs::PermGroupBSGS;
use crate::classes::ConjugacyClassTable;
use crate::error::{Error, Result};
use crate::pairs::{BlockPartition, InducedPerm, PcSet};
use crate::perm::Permutation;
use crate::structure::{
    composition_factors_small, fingerprint_recognize, simple_factors_of_symmetric, FactoredOrder,
    GroupFingerprint, SimpleFactorMultiset,
};
use crate::table::ElementTable;

/// Explicit generators are produced up to this many pair classes.
pub const EXPLICIT_LIMIT: usize = 2000;
/// Wreath factors up to this order are enumerated for their statistics.
pub const FINGERPRINT_LIMIT: u64 = 100_000;
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The group generated by the induced permutations, fully enumerated.
#[derive(Clone, Debug)]
pub struct HAction {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    /// `fixers[q]`: sorted ids of elements fixing point `q`.
    fixers: Vec<Vec<u32>>,
}

impl HAction {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: FxHashMap<Permutation, usize> = FxHashMap::default();
        index.insert(elements[0].clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            for s in &generators {
                let e = elements[head].then(s);
                if !index.contains_key(&e) {
                    index.insert(e.clone(), elements.len());
                    elements.push(e);
                }
            }
            head += 1;
        }
        let mut fixers = vec![Vec::new(); degree];
        for (id, e) in elements.iter().enumerate() {
            for (q, f) in fixers.iter_mut().enumerate() {
                if e.apply(q) == q {
                    f.push(id as u32);
                }
            }
        }
        HAction {
            degree,
            generators,
            elements,
            fixers,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Sorted ids of the elements fixing `q`.
    pub fn stabilizer(&self, q: usize) -> &[u32] {
        &self.fixers[q]
    }

    /// Orbits sorted by smallest point; each base point is its smallest point.
    pub fn orbits(&self) -> Vec<HOrbit> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            // transversal: an element carrying p to each orbit point
            let mut points = Vec::new();
            let mut carrier = Vec::new();
            for (id, e) in self.elements.iter().enumerate() {
                let q = e.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    points.push(q);
                    carrier.push(id);
                }
            }
            let mut order: Vec<usize> = (0..points.len()).collect();
            order.sort_by_key(|&i| points[i]);
            out.push(HOrbit {
                points: order.iter().map(|&i| points[i]).collect(),
                carrier: order.iter().map(|&i| carrier[i]).collect(),
                base: p,
                stabilizer: self.fixers[p].clone(),
            });
        }
        out
    }
}

/// One orbit of the induced action.
#[derive(Clone, Debug)]
pub struct HOrbit {
    /// Sorted points.
    pub points: Vec<usize>,
    /// `carrier[i]` is an element id mapping the base to `points[i]`.
    pub carrier: Vec<usize>,
    pub base: usize,
    pub stabilizer: Vec<u32>,
}

impl HOrbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Tries to build an equivariant, block-respecting bijection from `x1` to
/// `x2`. Images of `x1.points` are returned in the same order.
pub fn orbit_equivalence(h: &HAction, x1: &HOrbit, x2: &HOrbit, blocks: &BlockPartition) -> Option<Vec<usize>> {
    if x1.len() != x2.len() {
        return None;
    }
    let stab = h.stabilizer(x1.base);
    x2.points
        .iter()
        .filter(|&&q| h.stabilizer(q) == stab)
        .find_map(|&q| equivariant_map(h, x1, q, blocks))
}

/// The map `e(base) -> e(q)`, if it preserves blocks pointwise.
fn equivariant_map(h: &HAction, x1: &HOrbit, q: usize, blocks: &BlockPartition) -> Option<Vec<usize>> {
    x1.points
        .iter()
        .zip(&x1.carrier)
        .map(|(&pt, &e)| {
            let img = h.elements[e].apply(q);
            (blocks.block_of[img] == blocks.block_of[pt]).then_some(img)
        })
        .collect()
}

/// A factor `E wr S_s` of the result: `s` equivalent orbits, with `E` the
/// self-equivalences of the first one.
#[derive(Clone, Debug)]
pub struct WreathFactor {
    /// Indices into the orbit list; the first is the reference orbit.
    pub members: Vec<usize>,
    /// `maps[j]`: images of the reference orbit's points in member `j`.
    pub maps: Vec<Vec<usize>>,
    /// Elements of `E`, as images of the reference orbit's points.
    pub e_elements: Vec<Vec<usize>>,
}

impl WreathFactor {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    pub fn e_order(&self) -> usize {
        self.e_elements.len()
    }

    pub fn order(&self) -> FactoredOrder {
        let s = self.multiplicity() as u64;
        FactoredOrder::from_u64(self.e_order() as u64)
            .pow(s)
            .mul(&FactoredOrder::factorial(s))
    }
}

/// Orbits grouped twice: by the coarse invariant (stabilizer class and
/// block-intersection profile), and exactly by equivalence.
#[derive(Clone, Debug)]
pub struct PacketDecomposition {
    pub orbits: Vec<HOrbit>,
    pub coarse: Vec<Vec<usize>>,
    pub factors: Vec<WreathFactor>,
}

pub fn packet_decomposition(h: &HAction, blocks: &BlockPartition) -> PacketDecomposition {
    let orbits = h.orbits();
    type Key = (Vec<u32>, Vec<(usize, usize)>);
    let mut coarse_index: BTreeMap<Key, usize> = BTreeMap::new();
    let mut coarse: Vec<Vec<usize>> = Vec::new();
    for (i, x) in orbits.iter().enumerate() {
        // Stabilizers of points in one orbit form one conjugacy class of
        // subgroups, so the smallest of them names that class.
        let stab_class = x.points.iter().map(|&q| h.stabilizer(q).to_vec()).min().unwrap();
        let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
        for &q in &x.points {
            *profile.entry(blocks.block_of[q]).or_insert(0) += 1;
        }
        let key = (stab_class, profile.into_iter().collect());
        let k = *coarse_index.entry(key).or_insert_with(|| {
            coarse.push(Vec::new());
            coarse.len() - 1
        });
        coarse[k].push(i);
    }
    let mut factors: Vec<WreathFactor> = coarse
        .par_iter()
        .flat_map_iter(|packet| {
            let mut classes: Vec<WreathFactor> = Vec::new();
            for &i in packet {
                let x = &orbits[i];
                let found = classes.iter_mut().find_map(|c| {
                    orbit_equivalence(h, &orbits[c.members[0]], x, blocks).map(|m| (c, m))
                });
                match found {
                    Some((c, m)) => {
                        c.members.push(i);
                        c.maps.push(m);
                    }
                    None => {
                        let e_elements = x
                            .points
                            .iter()
                            .filter(|&&q| h.stabilizer(q) == x.stabilizer.as_slice())
                            .filter_map(|&q| equivariant_map(h, x, q, blocks))
                            .collect();
                        classes.push(WreathFactor {
                            members: vec![i],
                            maps: vec![x.points.clone()],
                            e_elements,
                        });
                    }
                }
            }
            classes
        })
        .collect();
    factors.sort_by_key(|f| orbits[f.members[0]].base);
    PacketDecomposition {
        orbits,
        coarse,
        factors,
    }
}

impl PacketDecomposition {
    pub fn order(&self) -> FactoredOrder {
        self.factors.iter().map(|f| f.order()).product()
    }

    /// `E` of a factor as a permutation group on the reference orbit.
    fn e_group(&self, f: &WreathFactor) -> Result<ElementTable> {
        let x = &self.orbits[f.members[0]];
        let pos: FxHashMap<usize, usize> = x.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let gens: Vec<Permutation> = f
            .e_elements
            .iter()
            .map(|img| Permutation::from_images(img.iter().map(|q| pos[q] as u32).collect()))
            .collect::<Result<_>>()?;
        ElementTable::from_generators(x.len(), &gens, FINGERPRINT_LIMIT as usize)
    }

    /// Generators of one factor on the given degree: `E` acting on the
    /// reference orbit, and swaps of the reference orbit with each other member.
    fn factor_generators(&self, f: &WreathFactor, degree: usize) -> Vec<Permutation> {
        let x1 = &self.orbits[f.members[0]];
        let mut gens = Vec::new();
        for img in f.e_elements.iter().skip(1) {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (&p, &q) in x1.points.iter().zip(img) {
                images[p] = q as u32;
            }
            gens.push(Permutation::from_images(images).unwrap());
        }
        for m in f.maps.iter().skip(1) {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (&p, &q) in x1.points.iter().zip(m) {
                images[p] = q as u32;
                images[q] = p as u32;
            }
            gens.push(Permutation::from_images(images).unwrap());
        }
        gens
    }

    /// Generators of the whole result on `0..degree`.
    pub fn explicit_generators(&self, degree: usize) -> Vec<Permutation> {
        self.factors
            .iter()
            .flat_map(|f| self.factor_generators(f, degree))
            .collect()
    }

    /// Statistics of one factor, when it is small enough to enumerate.
    fn factor_fingerprint(&self, f: &WreathFactor) -> Option<GroupFingerprint> {
        let order = f.order().to_biguint().to_u64()?;
        if order > FINGERPRINT_LIMIT {
            return None;
        }
        // Relabel the union of member orbits as 0..k.
        let points: Vec<usize> = f
            .members
            .iter()
            .flat_map(|&m| self.orbits[m].points.iter().copied())
            .collect();
        let max = *points.iter().max()?;
        let mut local = vec![u32::MAX; max + 1];
        for (i, &p) in points.iter().enumerate() {
            local[p] = i as u32;
        }
        let gens: Vec<Permutation> = self
            .factor_generators(f, max + 1)
            .iter()
            .map(|g| {
                let images = points.iter().map(|&p| local[g.apply(p)]).collect();
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let table = ElementTable::from_generators(points.len(), &gens, FINGERPRINT_LIMIT as usize).ok()?;
        Some(GroupFingerprint::of(&table))
    }

    pub fn simple_factors(&self) -> Result<SimpleFactorMultiset> {
        let mut out = SimpleFactorMultiset::new();
        for f in &self.factors {
            let e = composition_factors_small(&self.e_group(f)?)?;
            let s = f.multiplicity() as u64;
            out.extend_times(&e, s);
            out.extend_times(&simple_factors_of_symmetric(s), 1);
        }
        Ok(out)
    }
}

/// Everything computed on the way to the result for one group.
pub struct SgComputation {
    pub table: ElementTable,
    pub classes: ConjugacyClassTable,
    pub pc: PcSet,
    pub out: OutReps,
    pub induced: Vec<InducedPerm>,
    pub blocks: BlockPartition,
    pub h: HAction,
    pub decomposition: PacketDecomposition,
}

impl SgComputation {
    pub fn run(group: &Group, cap: usize) -> Result<Self> {
        let table = ElementTable::enumerate(&group.bsgs, cap)?;
        let classes = ConjugacyClassTable::new(&table);
        let pc = PcSet::build(&table, &classes)?;
        let out = out_representatives(&table, &classes, &pc)?;
        let induced = pc.induced_perms(&table, &classes, &out);
        let blocks = pc.block_partition();
        let h = HAction::new(pc.len(), induced.iter().map(|p| p.perm.clone()).collect());
        let decomposition = packet_decomposition(&h, &blocks);
        Ok(SgComputation {
            table,
            classes,
            pc,
            out,
            induced,
            blocks,
            h,
            decomposition,
        })
    }

    pub fn theta(&self) -> &Permutation {
        &self.induced[0].perm
    }

    pub fn delta(&self) -> &Permutation {
        &self.induced[1].perm
    }

    pub fn out_perms(&self) -> impl Iterator<Item = &Permutation> {
        self.induced[2..].iter().map(|p| &p.perm)
    }

    /// `|Z| m^2 / |G|`, the bound on every multiplicity.
    pub fn multiplicity_bound(&self) -> f64 {
        let z = self.classes.center().len() as f64;
        let m = self.classes.max_class_size() as f64;
        z * m * m / self.table.len() as f64
    }

    pub fn relations(&self) -> RelationChecks {
        let ell = self.pc.len();
        let id = Permutation::identity(ell);
        let (t, d) = (self.theta(), self.delta());
        let out_group = HAction::new(ell, self.out_perms().cloned().collect());
        let free_out = out_group
            .elements()
            .iter()
            .skip(1)
            .all(|e| (0..ell).all(|p| e.apply(p) != p));
        let td = HAction::new(ell, vec![t.clone(), d.clone()]);
        let bound = self.multiplicity_bound();
        RelationChecks {
            theta_involution: t.then(t) == id,
            delta_involution: d.then(d) == id,
            braid: d.then(t).then(d) == t.then(d).then(t),
            out_commutes: self.out_perms().all(|o| o.then(t) == t.then(o) && o.then(d) == d.then(o)),
            out_free: free_out,
            out_size_divides: ell.is_multiple_of(self.out.len()),
            swap_twist_order_divides_6: 6 % td.order() == 0,
            // The twist changes the class of the first entry in a way that
            // depends on both entries, so only the swap and outer maps are checked.
            blocks_permuted: self
                .induced
                .iter()
                .filter(|p| p.label != "delta")
                .all(|p| self.blocks.permutes_blocks(&p.perm)),
            multiplicity_bound: self
                .decomposition
                .factors
                .iter()
                .all(|f| f.multiplicity() as f64 <= bound + 1e-9),
        }
    }

    pub fn report(&self) -> Result<SgReport> {
        let d = &self.decomposition;
        let ell = self.pc.len();
        let order = d.order();
        let simple_factors = d.simple_factors()?;
        let factor_prints: Option<Vec<GroupFingerprint>> =
            d.factors.iter().map(|f| d.factor_fingerprint(f)).collect();
        let fingerprint = factor_prints.map(|fs| {
            fs.iter()
                .fold(GroupFingerprint::trivial(), |acc, f| acc.product(f))
        });
        let recognized = fingerprint.as_ref().and_then(fingerprint_recognize);
        let (explicit_generators, explicit_order) = if ell <= EXPLICIT_LIMIT {
            let gens = d.explicit_generators(ell);
            let bsgs = PermGroupBSGS::new(ell, &gens)?;
            (Some(gens), Some(bsgs.order().clone()))
        } else {
            (None, None)
        };
        let packets = d
            .factors
            .iter()
            .map(|f| PacketSummary {
                orbit_size: d.orbits[f.members[0]].len(),
                stabilizer_order: d.orbits[f.members[0]].stabilizer.len(),
                e_order: f.e_order() as u64,
                multiplicity: f.multiplicity() as u64,
                first_point: d.orbits[f.members[0]].base,
            })
            .collect();
        Ok(SgReport {
            ell,
            h_order: self.h.order(),
            num_orbits: d.orbits.len(),
            num_coarse_packets: d.coarse.len(),
            num_exact_classes: d.factors.len(),
            packets,
            order,
            simple_factors,
            fingerprint,
            recognized,
            explicit_generators,
            explicit_order,
        })
    }
}

/// Relations that must hold for every group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationChecks {
    pub theta_involution: bool,
    pub delta_involution: bool,
    pub braid: bool,
    pub out_commutes: bool,
    pub out_free: bool,
    pub out_size_divides: bool,
    pub swap_twist_order_divides_6: bool,
    pub blocks_permuted: bool,
    pub multiplicity_bound: bool,
}

impl RelationChecks {
    pub fn all(&self) -> bool {
        self.theta_involution
            && self.delta_involution
            && self.braid
            && self.out_commutes
            && self.out_free
            && self.out_size_divides
            && self.swap_twist_order_divides_6
            && self.blocks_permuted
            && self.multiplicity_bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketSummary {
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub e_order: u64,
    pub multiplicity: u64,
    pub first_point: usize,
}

#[derive(Clone, Debug)]
pub struct SgReport {
    pub ell: usize,
    pub h_order: usize,
    pub num_orbits: usize,
    pub num_coarse_packets: usize,
    pub num_exact_classes: usize,
    pub packets: Vec<PacketSummary>,
    pub order: FactoredOrder,
    pub simple_factors: SimpleFactorMultiset,
    pub fingerprint: Option<GroupFingerprint>,
    pub recognized: Option<(u64, u64)>,
    pub explicit_generators: Option<Vec<Permutation>>,
    /// Order of the group generated by the explicit generators.
    pub explicit_order: Option<BigUint>,
}

/// Exhaustive search of the block-preserving permutations commuting with
/// every generator of `h`. Returns all elements found.
pub fn brute_force_sg(h: &HAction, blocks: &BlockPartition, budget: u64) -> Result<Vec<Permutation>> {
    let size: BigUint = blocks
        .blocks
        .iter()
        .map(|b| FactoredOrder::factorial(b.len() as u64).to_biguint())
        .product();
    if size > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: size.to_string(),
            budget,
        });
    }
    let ell = h.degree();
    let mut checks: Vec<Permutation> = h.generators().to_vec();
    checks.extend(h.generators().iter().map(|g| g.inverse()));
    let mut sigma = vec![u32::MAX; ell];
    let mut found = Vec::new();
    search(0, blocks, &checks, &mut sigma, &mut found);
    Ok(found)
}

fn search(
    b: usize,
    blocks: &BlockPartition,
    checks: &[Permutation],
    sigma: &mut Vec<u32>,
    found: &mut Vec<Permutation>,
) {
    if b == blocks.blocks.len() {
        found.push(Permutation::from_images(sigma.clone()).unwrap());
        return;
    }
    let block = &blocks.blocks[b];
    let mut arrangement = block.clone();
    loop {
        for (&p, &q) in block.iter().zip(&arrangement) {
            sigma[p] = q as u32;
        }
        let consistent = block.iter().all(|&p| {
            checks.iter().all(|g| {
                let gp = g.apply(p);
                sigma[gp] == u32::MAX || sigma[gp] as usize == g.apply(sigma[p] as usize)
            })
        });
        if consistent {
            search(b + 1, blocks, checks, sigma, found);
        }
        if !next_permutation(&mut arrangement) {
            break;
        }
    }
    for &p in block {
        sigma[p] = u32::MAX;
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::construct;

    fn run(spec: &str) -> SgComputation {
        let g = construct(&spec.parse().unwrap()).unwrap();
        SgComputation::run(&g, 1_000_000).unwrap()
    }

    #[test]
    fn orbits_partition_and_orbit_stabilizer() {
        let c = run("alternating:4");
        let mut all: Vec<usize> = c.decomposition.orbits.iter().flat_map(|o| o.points.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..c.pc.len()).collect::<Vec<_>>());
        for o in &c.decomposition.orbits {
            assert_eq!(o.len() * o.stabilizer.len(), c.h.order());
        }
    }

    #[test]
    fn s3_is_trivial() {
        let c = run("symmetric:3");
        assert_eq!(c.decomposition.orbits.len(), 1);
        assert_eq!(c.decomposition.orbits[0].len(), 3);
        assert!(c.decomposition.order().is_one());
        let bf = brute_force_sg(&c.h, &c.blocks, DEFAULT_BUDGET).unwrap();
        assert_eq!(bf.len(), 1);
    }

    #[test]
    fn self_equivalence_and_size_mismatch() {
        let c = run("psl2:7");
        let o = &c.decomposition.orbits;
        let id = orbit_equivalence(&c.h, &o[0], &o[0], &c.blocks).unwrap();
        assert_eq!(id, o[0].points);
        if let Some(other) = o.iter().find(|x| x.len() != o[0].len()) {
            assert!(orbit_equivalence(&c.h, &o[0], other, &c.blocks).is_none());
        }
    }

    #[test]
    fn psl2_7_order_512() {
        let c = run("psl2:7");
        assert!(c.relations().all());
        assert!(!c.blocks.permutes_blocks(c.delta()));
        let r = c.report().unwrap();
        assert_eq!(r.order, FactoredOrder::from_u64(512));
        assert_eq!(r.explicit_order, Some(BigUint::from(512u32)));
        assert_eq!(r.recognized, Some((3, 2)));
        let fp = r.fingerprint.unwrap();
        assert_eq!(fp.center_order, BigUint::from(32u32));
        assert!(fp.center_elementary_abelian());
        assert_eq!(fp.central_quotient_order, BigUint::from(16u32));
        assert!(fp.central_quotient_elementary_abelian());
    }

    #[test]
    fn next_permutation_enumerates_all() {
        let mut v = vec![0, 1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 24);
    }
}
