//! Conjugacy classes with transporters, centralizers and the center.

use crate::table::{greedy_generators, FiniteGroup};

/// Conjugacy classes of a finite group.
///
/// Classes are numbered by their smallest element id, which is also the
/// class representative. For every element `e` a transporter `t` with
/// `rep^t = e` is stored.
#[derive(Clone, Debug)]
pub struct ConjugacyClassTable {
    reps: Vec<usize>,
    class_of: Vec<u32>,
    transporter: Vec<u32>,
    sizes: Vec<usize>,
    centralizers: Vec<Vec<usize>>,
    center: Vec<usize>,
}

impl ConjugacyClassTable {
    pub fn new<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let gens = g.generator_ids();
        const UNSEEN: u32 = u32::MAX;
        let mut class_of = vec![UNSEEN; n];
        let mut transporter = vec![0u32; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != UNSEEN {
                continue;
            }
            let cid = reps.len() as u32;
            reps.push(start);
            class_of[start] = cid;
            transporter[start] = g.identity() as u32;
            let mut queue = vec![start];
            let mut head = 0;
            while head < queue.len() {
                let e = queue[head];
                head += 1;
                let t = transporter[e] as usize;
                for &s in &gens {
                    let f = g.conj(e, s);
                    if class_of[f] == UNSEEN {
                        class_of[f] = cid;
                        transporter[f] = g.mul(t, s) as u32;
                        queue.push(f);
                    }
                }
            }
            sizes.push(queue.len());
        }
        let centralizers = reps
            .iter()
            .map(|&r| (0..n).filter(|&c| g.commutes(r, c)).collect())
            .collect();
        let center = (0..n).filter(|&e| sizes[class_of[e] as usize] == 1).collect();
        ConjugacyClassTable {
            reps,
            class_of,
            transporter,
            sizes,
            centralizers,
            center,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn class_of(&self, e: usize) -> usize {
        self.class_of[e] as usize
    }

    /// `t` with `rep^t = e`, where `rep` represents the class of `e`.
    pub fn transporter(&self, e: usize) -> usize {
        self.transporter[e] as usize
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.sizes[class]
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Centralizer of the representative of `class`, as sorted element ids.
    pub fn centralizer_of_rep(&self, class: usize) -> &[usize] {
        &self.centralizers[class]
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    /// Size of the largest class.
    pub fn max_class_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(1)
    }

    /// Elements of the class with the given id.
    pub fn class_elements(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len())
            .filter(|&e| self.class_of[e] as usize == class)
            .collect()
    }

    /// Centralizer of an arbitrary element, conjugated from its class rep.
    pub fn centralizer<G: FiniteGroup + ?Sized>(&self, g: &G, e: usize) -> Vec<usize> {
        let t = self.transporter(e);
        let mut out: Vec<usize> = self.centralizers[self.class_of(e)]
            .iter()
            .map(|&c| g.conj(c, t))
            .collect();
        out.sort_unstable();
        out
    }

    /// Generators of the centralizer of a class representative.
    pub fn centralizer_generators<G: FiniteGroup + ?Sized>(&self, g: &G, class: usize) -> Vec<usize> {
        greedy_generators(g, &self.centralizers[class])
    }

    /// Some `t` with `a^t = a2`, if `a` and `a2` are conjugate.
    pub fn transporter_between<G: FiniteGroup + ?Sized>(
        &self,
        g: &G,
        a: usize,
        a2: usize,
    ) -> Option<usize> {
        (self.class_of(a) == self.class_of(a2))
            .then(|| g.mul(g.inv(self.transporter(a)), self.transporter(a2)))
    }

    /// Some `t` with `a^t = a2` and `b^t = b2`.
    pub fn transporter_pair<G: FiniteGroup + ?Sized>(
        &self,
        g: &G,
        (a, b): (usize, usize),
        (a2, b2): (usize, usize),
    ) -> Option<usize> {
        self.transporter_multi(g, &[a, b], &[a2, b2])
    }

    /// Some `t` with `src[i]^t = dst[i]` for every `i`.
    pub fn transporter_multi<G: FiniteGroup + ?Sized>(
        &self,
        g: &G,
        src: &[usize],
        dst: &[usize],
    ) -> Option<usize> {
        assert_eq!(src.len(), dst.len());
        let Some((&a, &a2)) = src.first().zip(dst.first()) else {
            return Some(g.identity());
        };
        let t0 = self.transporter_between(g, a, a2)?;
        let ta = self.transporter(a);
        // C(a) = C(rep)^{t_a}; every transporter a -> a2 is c * t0 with c in C(a).
        self.centralizers[self.class_of(a)].iter().find_map(|&c| {
            let t = g.mul(g.conj(c, ta), t0);
            src[1..]
                .iter()
                .zip(&dst[1..])
                .all(|(&s, &d)| g.conj(s, t) == d)
                .then_some(t)
        })
    }
}
