//! Dessins as finite sets with two permutations, regular dessins as groups
//! with a generating pair, and structures given by a homomorphism from a
//! second group.

use std::path::Path;

use num_bigint::BigUint;

use crate::autgroup::extend_pair_map;
use crate::bsgs::{orbit_of, PermGroupBSGS};
use crate::classes::ConjugacyClassTable;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::{subgroup_closure, ElementTable, FiniteGroup};

/// Darts with the two monodromy permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DessinXY {
    pub x: Permutation,
    pub y: Permutation,
}

impl DessinXY {
    pub fn new(x: Permutation, y: Permutation) -> Result<Self> {
        if x.degree() != y.degree() {
            return Err(Error::DegreeMismatch {
                expected: x.degree(),
                found: y.degree(),
            });
        }
        Ok(DessinXY { x, y })
    }

    pub fn darts(&self) -> usize {
        self.x.degree()
    }
}

/// Parses `darts N` followed by `x` and `y` in cycle notation (1-based).
pub fn parse_dessin(text: &str) -> Result<DessinXY> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `darts N` line".into()))?;
    let darts: usize = header
        .strip_prefix("darts")
        .and_then(|d| d.trim().parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Parse(format!("expected `darts N`, found {header:?}")))?;
    let mut perm = || -> Result<Permutation> {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("expected two permutation lines".into()))?;
        Permutation::parse_cycles(darts, line)
    };
    let (x, y) = (perm()?, perm()?);
    if lines.next().is_some() {
        return Err(Error::Parse("trailing lines after the two permutations".into()));
    }
    DessinXY::new(x, y)
}

pub fn load_dessin(path: &Path) -> Result<DessinXY> {
    parse_dessin(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Debug)]
pub struct DessinAnalysis {
    pub darts: usize,
    pub monodromy_order: BigUint,
    pub transitive: bool,
    pub regular: bool,
    /// The monodromy group, set when the dessin is regular.
    pub group: Option<PermGroupBSGS>,
}

/// Monodromy group, transitivity and regularity.
pub fn analyze_dessin(d: &DessinXY) -> Result<DessinAnalysis> {
    let gens = [d.x.clone(), d.y.clone()];
    let bsgs = PermGroupBSGS::new(d.darts(), &gens)?;
    let transitive = orbit_of(d.darts(), &gens, 0).len() == d.darts();
    let regular = transitive && bsgs.order() == &BigUint::from(d.darts());
    Ok(DessinAnalysis {
        darts: d.darts(),
        monodromy_order: bsgs.order().clone(),
        transitive,
        regular,
        group: regular.then_some(bsgs),
    })
}

/// A triple `(g, h, φ)`: a generating pair of a group plus the images of
/// the generators of a second group under a homomorphism into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaStructure {
    pub pair: (usize, usize),
    pub images: Vec<usize>,
}

impl GammaStructure {
    /// A structure from the cyclic group of order `n`: the generator goes to `z`.
    pub fn cyclic<G: FiniteGroup + ?Sized>(g: &G, pair: (usize, usize), z: usize, n: u64) -> Result<Self> {
        if g.pow(z, n) != g.identity() {
            return Err(Error::Incompatible(format!("z^{n} is not the identity")));
        }
        Ok(GammaStructure { pair, images: vec![z] })
    }
}

/// Whether some automorphism `α` with `α(g) = g'`, `α(h) = h'` also carries
/// each `φ₁(γ)` to a conjugate `t⁻¹ φ₂(γ) t`, with one `t` for all `γ`.
pub fn triple_isomorphic<G: FiniteGroup + ?Sized>(
    g: &G,
    classes: &ConjugacyClassTable,
    t1: &GammaStructure,
    t2: &GammaStructure,
) -> Result<bool> {
    if t1.images.len() != t2.images.len() {
        return Err(Error::Incompatible(format!(
            "structures have {} and {} generator images",
            t1.images.len(),
            t2.images.len()
        )));
    }
    let Some(alpha) = extend_pair_map(g, t1.pair, t2.pair) else {
        return Ok(false);
    };
    let moved: Vec<usize> = t1.images.iter().map(|&e| alpha.apply(e)).collect();
    Ok(classes.transporter_multi(g, &t2.images, &moved).is_some())
}

/// Representatives of the isomorphism classes of cyclic structures of
/// order dividing `n` on the regular dessin given by `pair`.
pub fn cyclic_structures<G: FiniteGroup + ?Sized>(
    g: &G,
    classes: &ConjugacyClassTable,
    pair: (usize, usize),
    n: u64,
) -> Result<Vec<GammaStructure>> {
    if subgroup_closure(g, &[pair.0, pair.1]).1.len() != g.order() {
        return Err(Error::NonGenerating);
    }
    let mut reps: Vec<GammaStructure> = Vec::new();
    for z in 0..g.order() {
        if g.pow(z, n) != g.identity() {
            continue;
        }
        let s = GammaStructure::cyclic(g, pair, z, n)?;
        let mut known = false;
        for r in &reps {
            if triple_isomorphic(g, classes, r, &s)? {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(s);
        }
    }
    Ok(reps)
}

/// Classes of triples `(g', h', id)` with `Γ = G`, over all generating pairs.
pub fn faithful_triple_classes(table: &ElementTable, classes: &ConjugacyClassTable) -> Result<usize> {
    let n = table.len();
    let gens = table.generator_ids();
    let mut reps: Vec<GammaStructure> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if subgroup_closure(table, &[a, b]).1.len() != n {
                continue;
            }
            let s = GammaStructure {
                pair: (a, b),
                images: gens.clone(),
            };
            let mut known = false;
            for r in &reps {
                if triple_isomorphic(table, classes, r, &s)? {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(s);
            }
        }
    }
    Ok(reps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::GroupFingerprint;

    const TETRAHEDRON: &str = "darts 12\n(1,2,3)(4,5,6)(7,8,9)(10,11,12)\n(1,4)(2,10)(3,7)(5,9)(6,11)(8,12)\n";

    fn tetra_group() -> (ElementTable, ConjugacyClassTable, (usize, usize)) {
        let d = parse_dessin(TETRAHEDRON).unwrap();
        let t = ElementTable::from_generators(12, &[d.x.clone(), d.y.clone()], 1000).unwrap();
        let c = ConjugacyClassTable::new(&t);
        let pair = (t.index_of(&d.x).unwrap(), t.index_of(&d.y).unwrap());
        (t, c, pair)
    }

    #[test]
    fn tetrahedron_is_regular_a4() {
        let d = parse_dessin(TETRAHEDRON).unwrap();
        let a = analyze_dessin(&d).unwrap();
        assert_eq!(a.monodromy_order, BigUint::from(12u32));
        assert!(a.transitive && a.regular);
        let (t, _, _) = tetra_group();
        let fp = GroupFingerprint::of(&t);
        // A4: derived subgroup is the Klein four-group, quotient C3, no element of order 6
        assert_eq!(fp.derived_order, BigUint::from(4u32));
        assert!(fp.derived_elementary_abelian());
        assert_eq!(fp.abelianization, vec![3]);
        assert!(!fp.order_histogram.contains_key(&6));
    }

    #[test]
    fn degenerate_dessins() {
        let one = parse_dessin("darts 1\n()\n()").unwrap();
        let a = analyze_dessin(&one).unwrap();
        assert!(a.regular && a.monodromy_order == BigUint::from(1u32));
        let two = parse_dessin("darts 2\n()\n()").unwrap();
        assert!(!analyze_dessin(&two).unwrap().transitive);
        assert!(parse_dessin("darts 2\n(1,2)").is_err());
        assert!(parse_dessin("darts 2\n(1,3)\n()").is_err());
    }

    #[test]
    fn x_and_inverse_structures_differ() {
        let (t, c, (x, y)) = tetra_group();
        let s1 = GammaStructure::cyclic(&t, (x, y), x, 3).unwrap();
        let s2 = GammaStructure::cyclic(&t, (x, y), t.inv(x), 3).unwrap();
        assert!(triple_isomorphic(&t, &c, &s1, &s1).unwrap());
        assert!(!triple_isomorphic(&t, &c, &s1, &s2).unwrap());
        let s3 = GammaStructure::cyclic(&t, (x, y), t.conj(x, y), 3).unwrap();
        assert!(triple_isomorphic(&t, &c, &s1, &s3).unwrap());
        assert!(GammaStructure::cyclic(&t, (x, y), y, 3).is_err());
    }

    #[test]
    fn cyclic_structure_counts() {
        let (t, c, pair) = tetra_group();
        assert_eq!(cyclic_structures(&t, &c, pair, 3).unwrap().len(), 3);
        assert_eq!(cyclic_structures(&t, &c, pair, 1).unwrap().len(), 1);
        assert_eq!(cyclic_structures(&t, &c, pair, 5).unwrap().len(), 1);
    }

    #[test]
    fn faithful_triples_match_pair_classes() {
        for (deg, gens) in [(3, vec!["(1,2,3)", "(1,2)"]), (4, vec!["(1,2,3)", "(1,2)(3,4)"])] {
            let gens: Vec<Permutation> = gens.iter().map(|s| Permutation::parse_cycles(deg, s).unwrap()).collect();
            let t = ElementTable::from_generators(deg, &gens, 100).unwrap();
            let c = ConjugacyClassTable::new(&t);
            let pc = crate::pairs::PcSet::build(&t, &c).unwrap();
            assert_eq!(faithful_triple_classes(&t, &c).unwrap(), pc.len());
        }
    }
}
