//! Automorphisms from generating-pair extension, and representatives of Out(G).

use rayon::prelude::*;

use crate::classes::ConjugacyClassTable;
use crate::error::{Error, Result};
use crate::pairs::PcSet;
use crate::table::FiniteGroup;

/// An automorphism stored as its action on element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutMap {
    images: Vec<u32>,
    pub source: (usize, usize),
    pub target: (usize, usize),
}

impl AutMap {
    pub fn identity(order: usize, pair: (usize, usize)) -> Self {
        AutMap {
            images: (0..order as u32).collect(),
            source: pair,
            target: pair,
        }
    }

    #[inline]
    pub fn apply(&self, e: usize) -> usize {
        self.images[e] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &AutMap) -> AutMap {
        AutMap {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
            source: self.source,
            target: (other.apply(self.target.0), other.apply(self.target.1)),
        }
    }

    /// Checks `f(ab) = f(a) f(b)` on every pair.
    pub fn is_multiplicative<G: FiniteGroup + ?Sized>(&self, g: &G) -> bool {
        let n = g.order();
        (0..n).all(|a| (0..n).all(|b| self.apply(g.mul(a, b)) == g.mul(self.apply(a), self.apply(b))))
    }
}

/// Tries to extend `x -> x2, y -> y2` to an automorphism, where `(x, y)`
/// generates the group. Walks the Cayley graph of right multiplication by
/// `x` and `y` and checks every edge for consistency.
pub fn extend_pair_map<G: FiniteGroup + ?Sized>(
    g: &G,
    (x, y): (usize, usize),
    (x2, y2): (usize, usize),
) -> Option<AutMap> {
    let n = g.order();
    const UNSET: u32 = u32::MAX;
    let mut images = vec![UNSET; n];
    images[g.identity()] = g.identity() as u32;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        let fa = images[a] as usize;
        for (s, s2) in [(x, x2), (y, y2)] {
            let b = g.mul(a, s);
            let fb = g.mul(fa, s2) as u32;
            if images[b] == UNSET {
                images[b] = fb;
                queue.push(b);
            } else if images[b] != fb {
                return None;
            }
        }
    }
    if queue.len() != n {
        return None;
    }
    let mut hit = vec![false; n];
    for &i in &images {
        if std::mem::replace(&mut hit[i as usize], true) {
            return None;
        }
    }
    Some(AutMap {
        images,
        source: (x, y),
        target: (x2, y2),
    })
}

/// One automorphism per element of Out(G).
#[derive(Clone, Debug)]
pub struct OutReps {
    /// The first entry is the identity.
    pub reps: Vec<AutMap>,
    /// Pair-class index hit by each rep applied to the base pair.
    pub target_class: Vec<usize>,
    /// For inner reps, a conjugating element realizing it.
    pub inner_witness: Vec<Option<usize>>,
}

impl OutReps {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// The rep equal to `a` modulo inner automorphisms.
    pub fn find_coset(&self, pc: &PcSet, classes: &ConjugacyClassTable, g: &impl FiniteGroup, a: &AutMap) -> Option<usize> {
        let (x, y) = pc.rep(0);
        let j = pc.locate(g, classes, a.apply(x), a.apply(y)).ok()?;
        self.target_class.iter().position(|&t| t == j)
    }
}

/// Extends the base pair class to every candidate class. Each success is
/// exactly one outer automorphism class, since Out(G) acts freely on pair classes.
pub fn out_representatives<G: FiniteGroup + Sync + ?Sized>(
    g: &G,
    classes: &ConjugacyClassTable,
    pc: &PcSet,
) -> Result<OutReps> {
    if pc.is_empty() {
        return Err(Error::NotTwoGenerated);
    }
    let (x, y) = pc.rep(0);
    let key = |a: usize, b: usize| {
        (
            g.element_order(a),
            g.element_order(b),
            g.element_order(g.mul(a, b)),
            classes.class_size(classes.class_of(a)),
            classes.class_size(classes.class_of(b)),
        )
    };
    let base_key = key(x, y);
    let found: Vec<(usize, AutMap)> = (0..pc.len())
        .into_par_iter()
        .filter_map(|j| {
            let (x2, y2) = pc.rep(j);
            if key(x2, y2) != base_key {
                return None;
            }
            extend_pair_map(g, (x, y), (x2, y2)).map(|a| (j, a))
        })
        .collect();
    let mut reps = Vec::with_capacity(found.len());
    let mut target_class = Vec::with_capacity(found.len());
    let mut inner_witness = Vec::with_capacity(found.len());
    for (j, a) in found {
        let witness = classes.transporter_pair(g, (x, y), (a.apply(x), a.apply(y)));
        reps.push(a);
        target_class.push(j);
        inner_witness.push(witness);
    }
    debug_assert_eq!(target_class.first(), Some(&0));
    Ok(OutReps {
        reps,
        target_class,
        inner_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::construct;
    use crate::perm::Permutation;
    use crate::table::ElementTable;

    fn table(spec: &str) -> ElementTable {
        let g = construct(&spec.parse().unwrap()).unwrap();
        ElementTable::enumerate(&g.bsgs, 1_000_000).unwrap()
    }

    #[test]
    fn identity_extension() {
        let t = table("symmetric:3");
        let gens = t.generator_ids();
        let a = extend_pair_map(&t, (gens[0], gens[1]), (gens[0], gens[1])).unwrap();
        assert!(a.is_identity());
    }

    #[test]
    fn s3_inner_extension() {
        let t = table("symmetric:3");
        let id = |s: &str| t.index_of(&Permutation::parse_cycles(3, s).unwrap()).unwrap();
        let a = extend_pair_map(&t, (id("(1,2,3)"), id("(1,2)")), (id("(1,3,2)"), id("(1,2)"))).unwrap();
        assert!(a.is_multiplicative(&t));
        // it is conjugation by (1,2)
        let c = t.perm(id("(1,2)"));
        for e in 0..t.len() {
            assert_eq!(t.perm(a.apply(e)), t.perm(e).conjugate_by(&c));
        }
        // orders differ: no extension
        assert!(extend_pair_map(&t, (id("(1,2,3)"), id("(1,2)")), (id("(1,2)"), id("(1,2,3)"))).is_none());
    }

    #[test]
    fn brute_force_automorphisms_of_c5() {
        let t = table("cyclic:5");
        let x = t.generator_ids()[0];
        let count = (0..t.len())
            .filter(|&x2| extend_pair_map(&t, (x, x), (x2, x2)).is_some())
            .count();
        assert_eq!(count, 4);
    }
}
