//! Base and strong generating set via a deterministic Schreier–Sims.
//!
//! Each level `k` stores a base point `b_k`, the generators added at that
//! level and a transversal `u_p` with `b_k^{u_p} = p`. Generators at level
//! `k+1` are sifted Schreier generators of level `k`, so the group at level
//! `k+1` is the stabilizer of `b_k` in the group at level `k`.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct PermGroupBSGS {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

enum Task {
    Add(usize, Permutation),
    Extend(usize, Permutation),
}

impl PermGroupBSGS {
    /// Builds a BSGS for the group generated by `generators` on `degree` points.
    pub fn new(degree: usize, generators: &[Permutation]) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut group = PermGroupBSGS {
            degree,
            generators: generators.to_vec(),
            levels: Vec::new(),
            order: BigUint::one(),
        };
        for g in generators {
            group.insert(g.clone());
        }
        group.order = group
            .levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product();
        Ok(group)
    }

    /// Builds from generators that must share a degree, taken from the first.
    pub fn from_generators(generators: &[Permutation]) -> Result<Self> {
        let degree = generators.first().ok_or(Error::EmptyGenerators)?.degree();
        Self::new(degree, generators)
    }

    fn insert(&mut self, g: Permutation) {
        let mut stack = vec![Task::Add(0, g)];
        while let Some(task) = stack.pop() {
            match task {
                Task::Add(k, g) => {
                    if g.is_identity() || self.sift_from(k, &g).is_identity() {
                        continue;
                    }
                    if k == self.levels.len() {
                        let b = (0..self.degree).find(|&i| g.apply(i) != i).unwrap();
                        let mut transversal = vec![None; self.degree];
                        transversal[b] = Some(Permutation::identity(self.degree));
                        self.levels.push(Level {
                            base_point: b,
                            gens: Vec::new(),
                            transversal,
                            orbit: vec![b as u32],
                        });
                    }
                    let level = &mut self.levels[k];
                    level.gens.push(g.clone());
                    for &p in &level.orbit {
                        let u = level.transversal[p as usize].as_ref().unwrap();
                        stack.push(Task::Extend(k, u.then(&g)));
                    }
                }
                Task::Extend(k, h) => {
                    let level = &mut self.levels[k];
                    let p = h.apply(level.base_point);
                    match &level.transversal[p] {
                        None => {
                            for s in &level.gens {
                                stack.push(Task::Extend(k, h.then(s)));
                            }
                            level.transversal[p] = Some(h);
                            level.orbit.push(p as u32);
                        }
                        Some(u) => {
                            let schreier = h.then(&u.inverse());
                            if !schreier.is_identity() {
                                stack.push(Task::Add(k + 1, schreier));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Sifts `g` through levels `k..`, returning the residue.
    fn sift_from(&self, k: usize, g: &Permutation) -> Permutation {
        let mut g = g.clone();
        for level in &self.levels[k..] {
            let p = g.apply(level.base_point);
            match &level.transversal[p] {
                None => return g,
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        g
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(0, g).is_identity()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Sizes of the fundamental orbits, one per base point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Whether the group acts transitively on ordered pairs of distinct points.
    pub fn is_two_transitive(&self) -> bool {
        if self.degree < 2 {
            return false;
        }
        let orbit0 = orbit_of(self.degree, &self.generators, 0);
        if orbit0.len() != self.degree {
            return false;
        }
        // Stabilizer of 0 must be transitive on the remaining points.
        let stab = self.point_stabilizer_generators(0);
        let orbit1 = orbit_of(self.degree, &stab, if self.degree > 1 { 1 } else { 0 });
        orbit1.len() == self.degree - 1
    }

    /// Generators of the stabilizer of `point` (Schreier generators, sifted).
    fn point_stabilizer_generators(&self, point: usize) -> Vec<Permutation> {
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[point] = Some(Permutation::identity(self.degree));
        let mut queue = vec![point];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for s in &self.generators {
                let q = s.apply(p);
                if transversal[q].is_none() {
                    transversal[q] = Some(transversal[p].as_ref().unwrap().then(s));
                    queue.push(q);
                }
            }
        }
        let mut out = Vec::new();
        for &p in &queue {
            let u = transversal[p].as_ref().unwrap();
            for s in &self.generators {
                let q = s.apply(p);
                let g = u.then(s).then(&transversal[q].as_ref().unwrap().inverse());
                if !g.is_identity() {
                    out.push(g);
                }
            }
        }
        out
    }
}

/// Orbit of `point` under the group generated by `gens`, in discovery order.
pub fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut head = 0;
    while head < orbit.len() {
        let p = orbit[head];
        head += 1;
        for s in gens {
            let q = s.apply(p);
            if !seen[q] {
                seen[q] = true;
                orbit.push(q);
            }
        }
    }
    orbit
}
