//! The group generated by the tuples of representative pairs inside `G^r`,
//! with a word for every element, and the double-coset computation of the
//! automorphisms fixing the second generator.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atlas::Group;
use crate::autgroup::{out_representatives, OutReps};
use crate::bsgs::PermGroupBSGS;
use crate::classes::ConjugacyClassTable;
use crate::error::{Error, Result};
use crate::pairs::PcSet;
use crate::perm::Permutation;
use crate::table::{greedy_generators, subgroup_closure, CayleyTable, ElementTable, FiniteGroup, KeyIndex};

/// Word letters: the two generators and their inverses.
pub const LETTERS: [char; 4] = ['x', 'y', 'X', 'Y'];

/// Groups up to this order get a multiplication table for coordinates.
const CAYLEY_LIMIT: usize = 4096;

enum Coords<'a> {
    Cayley(CayleyTable),
    Table(&'a ElementTable),
}

impl Coords<'_> {
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Coords::Cayley(c) => c.mul(a, b),
            Coords::Table(t) => t.mul(a, b),
        }
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        match self {
            Coords::Cayley(c) => c.inv(a),
            Coords::Table(t) => t.inv(a),
        }
    }
}

/// The subgroup of `G^r` generated by `x̄ = (x_1..x_r)` and `ȳ = (y_1..y_r)`,
/// one coordinate per automorphism class of generating pairs.
pub struct GbarGroup<'a> {
    r: usize,
    pairs: Vec<(usize, usize)>,
    coords: Coords<'a>,
    g: &'a ElementTable,
    tuples: Vec<u32>,
    index: KeyIndex,
    parent: Vec<u32>,
    letter: Vec<u8>,
    inverse: Vec<u32>,
    x: usize,
    y: usize,
}

impl<'a> GbarGroup<'a> {
    /// Builds the model from the pair classes and outer automorphisms of `G`.
    pub fn build(
        g: &'a ElementTable,
        classes: &ConjugacyClassTable,
        pc: &PcSet,
        out: &OutReps,
        cap: usize,
    ) -> Result<Self> {
        let pairs = automorphism_class_reps(g, classes, pc, out);
        Self::from_pairs(g, pairs, cap)
    }

    /// Builds the subgroup generated by the given coordinate pairs.
    pub fn from_pairs(g: &'a ElementTable, pairs: Vec<(usize, usize)>, cap: usize) -> Result<Self> {
        let r = pairs.len();
        let d = g.degree();
        let lift = |pick: fn(&(usize, usize)) -> usize| -> Permutation {
            let images = pairs
                .iter()
                .enumerate()
                .flat_map(|(i, p)| {
                    let perm = g.perm(pick(p));
                    perm.images().iter().map(move |&v| v + (i * d) as u32).collect::<Vec<_>>()
                })
                .collect();
            Permutation::from_images(images).unwrap()
        };
        let bsgs = PermGroupBSGS::new(r * d, &[lift(|p| p.0), lift(|p| p.1)])?;
        let order = bsgs.order();
        if order > &BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "the model group".into(),
                size: order.to_string(),
                cap,
            });
        }
        let order = bsgs.order_u64().unwrap() as usize;
        let coords = if g.len() <= CAYLEY_LIMIT {
            Coords::Cayley(CayleyTable::from_group(g))
        } else {
            Coords::Table(g)
        };
        let mut gbar = GbarGroup {
            r,
            coords,
            g,
            tuples: Vec::with_capacity(order * r),
            index: KeyIndex::new(r, g.len()),
            parent: Vec::with_capacity(order),
            letter: Vec::with_capacity(order),
            inverse: Vec::new(),
            x: 0,
            y: 0,
            pairs,
        };
        let identity = vec![g.identity() as u32; r];
        gbar.push(&identity, 0, 0);
        let gen_tuples: Vec<Vec<u32>> = {
            let xs: Vec<u32> = gbar.pairs.iter().map(|p| p.0 as u32).collect();
            let ys: Vec<u32> = gbar.pairs.iter().map(|p| p.1 as u32).collect();
            let xi: Vec<u32> = xs.iter().map(|&a| gbar.coords.inv(a as usize) as u32).collect();
            let yi: Vec<u32> = ys.iter().map(|&a| gbar.coords.inv(a as usize) as u32).collect();
            vec![xs, ys, xi, yi]
        };
        let mut head = 0;
        let mut buf = vec![0u32; r];
        while head < gbar.len() {
            for (l, s) in gen_tuples.iter().enumerate() {
                for i in 0..r {
                    buf[i] = gbar.coords.mul(gbar.tuples[head * r + i] as usize, s[i] as usize) as u32;
                }
                if gbar.index.get(buf.iter().copied()).is_none() {
                    gbar.push(&buf.clone(), head as u32, l as u8);
                }
            }
            head += 1;
        }
        debug_assert_eq!(gbar.len(), order);
        gbar.inverse = (0..gbar.len())
            .map(|e| {
                let t: Vec<u32> = gbar.tuple(e).iter().map(|&a| gbar.coords.inv(a as usize) as u32).collect();
                gbar.index.get(t.into_iter()).unwrap()
            })
            .collect();
        gbar.x = gbar.index.get(gen_tuples[0].iter().copied()).unwrap() as usize;
        gbar.y = gbar.index.get(gen_tuples[1].iter().copied()).unwrap() as usize;
        Ok(gbar)
    }

    fn push(&mut self, t: &[u32], parent: u32, letter: u8) {
        let id = self.len() as u32;
        self.tuples.extend_from_slice(t);
        self.index.insert(t.iter().copied(), id);
        self.parent.push(parent);
        self.letter.push(letter);
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of coordinates.
    pub fn r(&self) -> usize {
        self.r
    }

    /// The coordinate pairs `(x_i, y_i)` as element ids of `G`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn tuple(&self, e: usize) -> &[u32] {
        &self.tuples[e * self.r..(e + 1) * self.r]
    }

    /// The element as a permutation on `r` disjoint copies of the domain of `G`.
    pub fn to_permutation(&self, e: usize) -> Permutation {
        let d = self.g.degree();
        let images = self
            .tuple(e)
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| {
                let p = self.g.perm(a as usize);
                p.images().iter().map(move |&v| v + (i * d) as u32).collect::<Vec<_>>()
            })
            .collect();
        Permutation::from_images(images).unwrap()
    }

    /// Letters of the stored (shortest) word, as indices into [`LETTERS`].
    pub fn word(&self, e: usize) -> Vec<u8> {
        let mut w = Vec::new();
        let mut cur = e;
        while cur != 0 {
            w.push(self.letter[cur]);
            cur = self.parent[cur] as usize;
        }
        w.reverse();
        w
    }

    pub fn word_string(&self, e: usize) -> String {
        let w = self.word(e);
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| LETTERS[l as usize]).collect()
    }

    /// The endomorphism sending `x̄, ȳ` to `images`, evaluated on every
    /// element through its word.
    pub fn evaluate_endo(&self, images: EndoImages) -> Vec<u32> {
        let img = [
            images.x,
            images.y,
            self.inv(images.x),
            self.inv(images.y),
        ];
        let mut map = vec![0u32; self.len()];
        for e in 1..self.len() {
            map[e] = self.mul(map[self.parent[e] as usize] as usize, img[self.letter[e] as usize]) as u32;
        }
        map
    }

    /// `x̄ <-> ȳ`.
    pub fn theta_images(&self) -> EndoImages {
        EndoImages { x: self.y, y: self.x }
    }

    /// `x̄ -> ȳ⁻¹x̄⁻¹`, `ȳ -> ȳ`.
    pub fn delta_images(&self) -> EndoImages {
        EndoImages {
            x: self.mul(self.inv(self.y), self.inv(self.x)),
            y: self.y,
        }
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.commutes(a, c)).collect()
    }

    fn generates(&self, a: usize, b: usize) -> bool {
        subgroup_closure(self, &[a, b]).1.len() == self.len()
    }
}

impl FiniteGroup for GbarGroup<'_> {
    fn order(&self) -> usize {
        self.len()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let prod = ta.iter().zip(tb).map(|(&u, &v)| self.coords.mul(u as usize, v as usize) as u32);
        self.index.get(prod).expect("closed under products") as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    fn generator_ids(&self) -> Vec<usize> {
        vec![self.x, self.y]
    }
}

/// Images of the two canonical generators under an endomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndoImages {
    pub x: usize,
    pub y: usize,
}

/// One pair class from each orbit of outer automorphisms.
pub fn automorphism_class_reps<G: FiniteGroup + Sync + ?Sized>(
    g: &G,
    classes: &ConjugacyClassTable,
    pc: &PcSet,
    out: &OutReps,
) -> Vec<(usize, usize)> {
    let perms = pc.induced_perms(g, classes, out);
    let out_perms: Vec<&Permutation> = perms[2..].iter().map(|p| &p.perm).collect();
    let mut seen = vec![false; pc.len()];
    let mut reps = Vec::new();
    for i in 0..pc.len() {
        if seen[i] {
            continue;
        }
        reps.push(pc.rep(i));
        let mut stack = vec![i];
        seen[i] = true;
        while let Some(j) = stack.pop() {
            for p in &out_perms {
                let k = p.apply(j);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
    }
    reps
}

/// A double coset `C(a) f C(b)` with the outcome of each test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCosetRep {
    pub f: usize,
    pub word: String,
    pub size: usize,
    pub generates: bool,
    pub theta: bool,
    pub delta: bool,
}

impl DoubleCosetRep {
    pub fn survives(&self) -> bool {
        self.generates && self.theta && self.delta
    }
}

#[derive(Clone, Debug)]
pub struct Gt1Result {
    pub gbar_order: usize,
    pub r: usize,
    pub double_cosets: Vec<DoubleCosetRep>,
    /// Surviving representatives, sorted by word length then word.
    pub survivors: Vec<DoubleCosetRep>,
}

impl Gt1Result {
    pub fn order(&self) -> usize {
        self.survivors.len()
    }
}

/// Double cosets `C(a) \ Ḡ / C(b)`, represented by their smallest element.
fn double_cosets(gbar: &GbarGroup, ca: &[usize], cb: &[usize]) -> Vec<(usize, usize)> {
    let left = greedy_generators(gbar, ca);
    let right = greedy_generators(gbar, cb);
    let mut seen = vec![false; gbar.len()];
    let mut out = Vec::new();
    for f in 0..gbar.len() {
        if seen[f] {
            continue;
        }
        seen[f] = true;
        let mut stack = vec![f];
        let mut size = 0;
        while let Some(e) = stack.pop() {
            size += 1;
            for n in left
                .iter()
                .map(|&s| gbar.mul(s, e))
                .chain(right.iter().map(|&u| gbar.mul(e, u)))
            {
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        out.push((f, size));
    }
    out
}

/// Counts outer automorphism classes `x̄ -> x̄^f, ȳ -> ȳ` that commute with
/// the swap and the twist modulo inner automorphisms.
pub fn gt1(gbar: &GbarGroup) -> Gt1Result {
    let (x, y) = (gbar.x(), gbar.y());
    let cx = gbar.centralizer(x);
    let cy = gbar.centralizer(y);
    let theta = gbar.evaluate_endo(gbar.theta_images());
    let delta = gbar.evaluate_endo(gbar.delta_images());
    let yx_inv = gbar.inv(gbar.mul(x, y)); // ȳ⁻¹x̄⁻¹
    let double_cosets: Vec<DoubleCosetRep> = double_cosets(gbar, &cx, &cy)
        .into_par_iter()
        .map(|(f, size)| {
            let tf = theta[f] as usize;
            // some t in C_x f with θ(f) t in C_y
            let theta_ok = cx.iter().any(|&s| {
                let t = gbar.mul(s, f);
                gbar.commutes(gbar.mul(tf, t), y)
            });
            let delta_ok = theta_ok && {
                let lhs = gbar.conj(yx_inv, delta[f] as usize);
                let rhs = gbar.mul(gbar.inv(y), gbar.inv(gbar.conj(x, f)));
                cy.iter().any(|&c| gbar.conj(lhs, c) == rhs)
            };
            let generates = theta_ok && delta_ok && gbar.generates(gbar.conj(x, f), y);
            DoubleCosetRep {
                f,
                word: gbar.word_string(f),
                size,
                generates,
                theta: theta_ok,
                delta: delta_ok,
            }
        })
        .collect();
    let mut survivors: Vec<DoubleCosetRep> = double_cosets.iter().filter(|d| d.survives()).cloned().collect();
    survivors.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
    Gt1Result {
        gbar_order: gbar.len(),
        r: gbar.r(),
        double_cosets,
        survivors,
    }
}

/// One surviving class for the full computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtFullClass {
    pub k: u64,
    pub f_word: String,
}

#[derive(Clone, Debug)]
pub struct GtFullResult {
    pub gbar_order: usize,
    pub generator_order: u64,
    pub classes: Vec<GtFullClass>,
    /// Double cosets examined, summed over `k`.
    pub double_cosets: usize,
    /// Survivors before merging classes found for different `k`.
    pub raw_survivors: usize,
}

impl GtFullResult {
    pub fn order(&self) -> usize {
        self.classes.len()
    }
}

/// Extends [`gt1`] to `x̄ -> (x̄^k)^f, ȳ -> ȳ^k` for every unit `k` modulo the
/// order of `x̄`. Experimental beyond cyclic groups.
pub fn gt_full(gbar: &GbarGroup) -> GtFullResult {
    let (x, y) = (gbar.x(), gbar.y());
    let n = gbar.element_order(x);
    let theta = gbar.evaluate_endo(gbar.theta_images());
    let delta = gbar.evaluate_endo(gbar.delta_images());
    let units: Vec<u64> = (1..=n).filter(|&k| k.gcd(&n) == 1 && (k < n || n == 1)).collect();
    let mut found: Vec<(u64, usize, (usize, usize))> = Vec::new();
    let mut examined = 0;
    for &k in &units {
        let (xk, yk) = (gbar.pow(x, k), gbar.pow(y, k));
        let cxk = gbar.centralizer(xk);
        let cyk = gbar.centralizer(yk);
        let cosets = double_cosets(gbar, &cxk, &cyk);
        examined += cosets.len();
        let hits: Vec<(usize, (usize, usize))> = cosets
            .into_par_iter()
            .filter_map(|(f, _)| {
                let (a, b) = (gbar.conj(xk, f), yk);
                let (ta, tb) = (theta[a] as usize, theta[b] as usize);
                // θ(b) = x̄^k, so a transporter to a lies in C(x̄^k) f
                let theta_ok = cxk.iter().any(|&s| {
                    let t = gbar.mul(s, f);
                    debug_assert_eq!(gbar.conj(tb, t), a);
                    gbar.conj(ta, t) == b
                });
                if !theta_ok {
                    return None;
                }
                // δ(b) = b, so the transporter lies in C(ȳ^k)
                let target = gbar.mul(gbar.inv(b), gbar.inv(a));
                let da = delta[a] as usize;
                let delta_ok = cyk.iter().any(|&c| gbar.conj(da, c) == target);
                (delta_ok && gbar.generates(a, b)).then_some((f, (a, b)))
            })
            .collect();
        found.extend(hits.into_iter().map(|(f, ab)| (k, f, ab)));
    }
    let raw_survivors = found.len();
    let mut seen = HashSet::new();
    let mut classes = Vec::new();
    for (k, f, (a, b)) in found {
        let canon = (0..gbar.len())
            .map(|t| (gbar.conj(a, t), gbar.conj(b, t)))
            .min()
            .unwrap();
        if seen.insert(canon) {
            classes.push(GtFullClass {
                k,
                f_word: gbar.word_string(f),
            });
        }
    }
    GtFullResult {
        gbar_order: gbar.len(),
        generator_order: n,
        classes,
        double_cosets: examined,
        raw_survivors,
    }
}

/// Closed form for dihedral groups of order `2n`.
pub fn dihedral_closed_form(n: u64) -> u64 {
    if n.is_multiple_of(4) {
        1
    } else {
        2
    }
}

/// Table, classes, pair classes and outer automorphisms needed for the model.
pub struct GbarContext {
    pub table: ElementTable,
    pub classes: ConjugacyClassTable,
    pub pc: PcSet,
    pub out: OutReps,
}

impl GbarContext {
    pub fn new(group: &Group, cap: usize) -> Result<Self> {
        let table = ElementTable::enumerate(&group.bsgs, cap)?;
        let classes = ConjugacyClassTable::new(&table);
        let pc = PcSet::build(&table, &classes)?;
        let out = out_representatives(&table, &classes, &pc)?;
        Ok(GbarContext {
            table,
            classes,
            pc,
            out,
        })
    }

    pub fn gbar(&self, cap: usize) -> Result<GbarGroup<'_>> {
        GbarGroup::build(&self.table, &self.classes, &self.pc, &self.out, cap)
    }
}

pub fn gt1_order(group: &Group, cap: usize) -> Result<Gt1Result> {
    let ctx = GbarContext::new(group, cap)?;
    let gbar = ctx.gbar(cap)?;
    Ok(gt1(&gbar))
}

pub fn gt_full_order(group: &Group, cap: usize) -> Result<GtFullResult> {
    let ctx = GbarContext::new(group, cap)?;
    let gbar = ctx.gbar(cap)?;
    Ok(gt_full(&gbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::construct;

    fn ctx(spec: &str) -> GbarContext {
        GbarContext::new(&construct(&spec.parse().unwrap()).unwrap(), 1_000_000).unwrap()
    }

    #[test]
    fn model_orders() {
        assert_eq!(ctx("cyclic:5").gbar(1_000_000).unwrap().len(), 25);
        let d5 = ctx("dihedral:5");
        let g = d5.gbar(1_000_000).unwrap();
        assert_eq!((g.r(), g.len()), (3, 500));
        assert_eq!(ctx("dihedral:3").gbar(1_000_000).unwrap().len(), 108);
    }

    #[test]
    fn cap_error_reports_exact_order() {
        let c = ctx("dihedral:5");
        match c.gbar(100) {
            Err(Error::CapExceeded { size, cap, .. }) => assert_eq!((size.as_str(), cap), ("500", 100)),
            other => panic!("expected cap error, got {:?}", other.map(|g| g.len())),
        }
    }

    #[test]
    fn words_and_endomorphisms() {
        let c = ctx("dihedral:5");
        let g = c.gbar(1_000_000).unwrap();
        let id = g.evaluate_endo(EndoImages { x: g.x(), y: g.y() });
        assert!(id.iter().enumerate().all(|(i, &v)| i as u32 == v));
        let theta = g.evaluate_endo(g.theta_images());
        assert_eq!(theta[g.x()] as usize, g.y());
        let delta = g.evaluate_endo(g.delta_images());
        let dd = delta[delta[g.x()] as usize] as usize;
        assert_eq!(dd, g.conj(g.x(), g.y()));
        for e in 0..g.len() {
            assert_eq!(g.to_permutation(g.mul(e, g.inv(e))), Permutation::identity(g.r() * 5));
        }
    }

    #[test]
    fn double_cosets_partition() {
        let c = ctx("dihedral:6");
        let g = c.gbar(1_000_000).unwrap();
        let r = gt1(&g);
        assert_eq!(r.double_cosets.iter().map(|d| d.size).sum::<usize>(), g.len());
        assert_eq!(r.order(), 2);
    }

    #[test]
    fn closed_form() {
        assert_eq!(dihedral_closed_form(9), 2);
        assert_eq!(dihedral_closed_form(12), 1);
        assert_eq!(dihedral_closed_form(10), 2);
    }

    #[test]
    fn cyclic_full_and_restricted() {
        let c = ctx("cyclic:5");
        let g = c.gbar(1_000_000).unwrap();
        assert_eq!(gt1(&g).order(), 1);
        assert_eq!(gt_full(&g).order(), 4);
        let t = ctx("cyclic:1");
        let g = t.gbar(10).unwrap();
        assert_eq!(gt_full(&g).order(), 1);
    }
}
