//! Generating pairs up to simultaneous conjugation, the induced actions of
//! the swap, the twist and outer automorphisms, and the block partition.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::autgroup::OutReps;
use crate::bsgs::PermGroupBSGS;
use crate::classes::ConjugacyClassTable;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::{greedy_generators, ElementTable, FiniteGroup};

const NONE: u32 = u32::MAX;

/// Classes `[g, h]` of generating pairs under simultaneous conjugation.
///
/// The canonical pair of a class has `g` a class representative and `h`
/// the smallest id in its orbit under the centralizer of `g`.
#[derive(Clone, Debug)]
pub struct PcSet {
    reps: Vec<(u32, u32)>,
    class_g: Vec<u32>,
    class_h: Vec<u32>,
    /// `lookup[c][h]`: index of `[rep_c, h]`, or `NONE` if not generating.
    lookup: Vec<Vec<u32>>,
}

impl PcSet {
    /// Enumerates pair classes, one sweep per conjugacy class of `g`.
    pub fn build(table: &ElementTable, classes: &ConjugacyClassTable) -> Result<Self> {
        let n = table.len();
        let order = n as u64;
        let degree = table.degree();
        let generates = |g: usize, h: usize| -> bool {
            let gens = [table.perm(g), table.perm(h)];
            PermGroupBSGS::new(degree, &gens).map(|b| b.order_u64() == Some(order)).unwrap_or(false)
        };
        let sweeps: Vec<(Vec<u32>, Vec<u32>)> = (0..classes.num_classes())
            .into_par_iter()
            .map(|c| {
                let g = classes.reps()[c];
                let cent_gens = greedy_generators(table, classes.centralizer_of_rep(c));
                let mut local = vec![NONE; n];
                let mut seen = vec![false; n];
                let mut canon = Vec::new();
                for h in 0..n {
                    if seen[h] {
                        continue;
                    }
                    let mut orbit = vec![h];
                    seen[h] = true;
                    let mut head = 0;
                    while head < orbit.len() {
                        let e = orbit[head];
                        head += 1;
                        for &s in &cent_gens {
                            let f = table.conj(e, s);
                            if !seen[f] {
                                seen[f] = true;
                                orbit.push(f);
                            }
                        }
                    }
                    if generates(g, h) {
                        let k = canon.len() as u32;
                        canon.push(h as u32);
                        for e in orbit {
                            local[e] = k;
                        }
                    }
                }
                (canon, local)
            })
            .collect();
        let mut reps = Vec::new();
        let mut class_g = Vec::new();
        let mut class_h = Vec::new();
        let mut lookup = Vec::with_capacity(sweeps.len());
        for (c, (canon, mut local)) in sweeps.into_iter().enumerate() {
            let offset = reps.len() as u32;
            for &h in &canon {
                reps.push((classes.reps()[c] as u32, h));
                class_g.push(c as u32);
                class_h.push(classes.class_of(h as usize) as u32);
            }
            for v in local.iter_mut().filter(|v| **v != NONE) {
                *v += offset;
            }
            lookup.push(local);
        }
        if reps.is_empty() {
            return Err(Error::NotTwoGenerated);
        }
        Ok(PcSet {
            reps,
            class_g,
            class_h,
            lookup,
        })
    }

    /// Number of pair classes.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Canonical pair of class `i`.
    pub fn rep(&self, i: usize) -> (usize, usize) {
        let (g, h) = self.reps[i];
        (g as usize, h as usize)
    }

    /// Conjugacy class ids of the two entries of class `i`.
    pub fn class_key(&self, i: usize) -> (usize, usize) {
        (self.class_g[i] as usize, self.class_h[i] as usize)
    }

    /// Index of the class of `(g, h)`.
    pub fn locate<G: FiniteGroup + ?Sized>(
        &self,
        group: &G,
        classes: &ConjugacyClassTable,
        g: usize,
        h: usize,
    ) -> Result<usize> {
        // rep^t = g, so (g, h)^{t⁻¹} = (rep, t h t⁻¹)
        let t = classes.transporter(g);
        let h2 = group.mul(group.mul(t, h), group.inv(t));
        match self.lookup[classes.class_of(g)][h2] {
            NONE => Err(Error::NonGenerating),
            i => Ok(i as usize),
        }
    }

    /// The induced permutations: swap, twist, then one per outer rep
    /// (the identity rep is skipped).
    pub fn induced_perms<G: FiniteGroup + Sync + ?Sized>(
        &self,
        group: &G,
        classes: &ConjugacyClassTable,
        out: &OutReps,
    ) -> Vec<InducedPerm> {
        let build = |f: &(dyn Fn(usize, usize) -> (usize, usize) + Sync)| -> Permutation {
            let images = (0..self.len())
                .into_par_iter()
                .map(|i| {
                    let (g, h) = self.rep(i);
                    let (a, b) = f(g, h);
                    self.locate(group, classes, a, b).expect("induced pair generates") as u32
                })
                .collect();
            Permutation::from_images(images).expect("induced map is a bijection")
        };
        let mut perms = vec![
            InducedPerm {
                label: "theta".into(),
                perm: build(&|g, h| (h, g)),
            },
            InducedPerm {
                label: "delta".into(),
                perm: build(&|g, h| (group.inv(group.mul(g, h)), h)),
            },
        ];
        for (k, a) in out.reps.iter().enumerate().skip(1) {
            perms.push(InducedPerm {
                label: format!("out:{k}"),
                perm: build(&|g, h| (a.apply(g), a.apply(h))),
            });
        }
        perms
    }

    pub fn block_partition(&self) -> BlockPartition {
        let mut by_key: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for i in 0..self.len() {
            by_key.entry(self.class_key(i)).or_default().push(i);
        }
        let mut block_of = vec![0usize; self.len()];
        let mut keys = Vec::new();
        let mut blocks = Vec::new();
        for (b, (key, members)) in by_key.into_iter().enumerate() {
            for &i in &members {
                block_of[i] = b;
            }
            keys.push(key);
            blocks.push(members);
        }
        BlockPartition {
            keys,
            blocks,
            block_of,
        }
    }
}

/// A permutation of pair-class indices with a label (`theta`, `delta`, `out:i`).
#[derive(Clone, Debug)]
pub struct InducedPerm {
    pub label: String,
    pub perm: Permutation,
}

/// Pair classes grouped by the conjugacy classes of both entries.
#[derive(Clone, Debug)]
pub struct BlockPartition {
    pub keys: Vec<(usize, usize)>,
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl BlockPartition {
    /// A partition given explicitly; keys are the block indices.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut block_of = vec![usize::MAX; n];
        for (b, members) in blocks.iter().enumerate() {
            for &i in members {
                if i >= n || block_of[i] != usize::MAX {
                    return Err(Error::Parse(format!("point {} is out of range or repeated", i + 1)));
                }
                block_of[i] = b;
            }
        }
        Ok(BlockPartition {
            keys: (0..blocks.len()).map(|b| (b, b)).collect(),
            blocks,
            block_of,
        })
    }

    /// Block size to number of blocks of that size.
    pub fn size_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.len()).or_insert(0) += 1;
        }
        m
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Whether `p` maps every block onto a block.
    pub fn permutes_blocks(&self, p: &Permutation) -> bool {
        self.blocks.iter().all(|b| {
            let target = self.block_of[p.apply(b[0])];
            b.iter().all(|&i| self.block_of[p.apply(i)] == target)
        })
    }

    /// Whether `p` maps every block onto itself.
    pub fn preserves_blocks(&self, p: &Permutation) -> bool {
        (0..self.block_of.len()).all(|i| self.block_of[p.apply(i)] == self.block_of[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::construct;

    fn setup(spec: &str) -> (ElementTable, ConjugacyClassTable, PcSet) {
        let g = construct(&spec.parse().unwrap()).unwrap();
        let t = ElementTable::enumerate(&g.bsgs, 1_000_000).unwrap();
        let c = ConjugacyClassTable::new(&t);
        let pc = PcSet::build(&t, &c).unwrap();
        (t, c, pc)
    }

    /// Pair classes by brute force: all generating pairs modulo conjugation.
    fn brute_force_ell(t: &ElementTable) -> usize {
        let n = t.len();
        let deg = t.degree();
        let mut seen = std::collections::HashSet::new();
        let mut count = 0;
        for g in 0..n {
            for h in 0..n {
                if seen.contains(&(g, h)) {
                    continue;
                }
                let b = PermGroupBSGS::new(deg, &[t.perm(g), t.perm(h)]).unwrap();
                if b.order_u64() != Some(n as u64) {
                    continue;
                }
                count += 1;
                for c in 0..n {
                    seen.insert((t.conj(g, c), t.conj(h, c)));
                }
            }
        }
        count
    }

    #[test]
    fn small_counts_match_brute_force() {
        assert_eq!(brute_force_ell(&setup("symmetric:3").0), 3);
        assert_eq!(brute_force_ell(&setup("cyclic:5").0), 24);
        for spec in ["symmetric:3", "cyclic:5", "dihedral:5", "quaternion8", "alternating:4"] {
            let (t, _, pc) = setup(spec);
            assert_eq!(pc.len(), brute_force_ell(&t), "{spec}");
        }
    }

    #[test]
    fn locate_is_class_invariant() {
        let (t, c, pc) = setup("alternating:4");
        for i in 0..pc.len() {
            let (g, h) = pc.rep(i);
            assert_eq!(pc.locate(&t, &c, g, h).unwrap(), i);
            for s in 0..t.len() {
                assert_eq!(pc.locate(&t, &c, t.conj(g, s), t.conj(h, s)).unwrap(), i);
            }
        }
        assert!(matches!(pc.locate(&t, &c, 0, 0), Err(Error::NonGenerating)));
    }

    #[test]
    fn psl2_7_blocks() {
        let (_, _, pc) = setup("psl2:7");
        assert_eq!(pc.len(), 114);
        let sizes = pc.block_partition().size_multiset();
        assert_eq!(sizes, BTreeMap::from([(2, 4), (3, 8), (6, 9), (8, 1), (10, 2)]));
    }

    #[test]
    fn s3_has_three_singleton_blocks() {
        let (_, _, pc) = setup("symmetric:3");
        let bp = pc.block_partition();
        assert_eq!(bp.size_multiset(), BTreeMap::from([(1, 3)]));
    }
}
