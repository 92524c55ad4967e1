//! Factored orders, composition factors and order statistics of finite groups.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{greedy_generators, subgroup_closure, FiniteGroup};

/// A positive integer as a map from prime to exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactoredOrder(BTreeMap<u64, u64>);

impl FactoredOrder {
    pub fn one() -> Self {
        FactoredOrder::default()
    }

    pub fn from_u64(mut n: u64) -> Self {
        assert!(n > 0, "orders are positive");
        let mut m = BTreeMap::new();
        let mut p = 2;
        while p * p <= n {
            while n.is_multiple_of(p) {
                *m.entry(p).or_insert(0) += 1;
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            *m.entry(n).or_insert(0) += 1;
        }
        FactoredOrder(m)
    }

    /// `n!` by Legendre's formula.
    pub fn factorial(n: u64) -> Self {
        let mut m = BTreeMap::new();
        for p in 2..=n {
            if (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                continue;
            }
            let (mut e, mut pk) = (0, p);
            while pk <= n {
                e += n / pk;
                pk = match pk.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
            m.insert(p, e);
        }
        FactoredOrder(m)
    }

    pub fn from_map(m: BTreeMap<u64, u64>) -> Self {
        FactoredOrder(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn primes(&self) -> &BTreeMap<u64, u64> {
        &self.0
    }

    pub fn exponent_of(&self, p: u64) -> u64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (&p, &e) in &other.0 {
            *m.entry(p).or_insert(0) += e;
        }
        FactoredOrder(m)
    }

    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return Self::one();
        }
        FactoredOrder(self.0.iter().map(|(&p, &e)| (p, e * k)).collect())
    }

    pub fn to_biguint(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e as u32))
    }
}

impl std::iter::Product for FactoredOrder {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc.mul(&x))
    }
}

impl fmt::Display for FactoredOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A composition factor, by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SimpleFactor {
    Cyclic(u64),
    Alt(u64),
    Other(u64),
}

impl SimpleFactor {
    pub fn order(&self) -> FactoredOrder {
        match *self {
            SimpleFactor::Cyclic(p) => FactoredOrder::from_u64(p),
            SimpleFactor::Alt(n) => {
                let mut f = FactoredOrder::factorial(n);
                *f.0.get_mut(&2).unwrap() -= 1;
                f
            }
            SimpleFactor::Other(n) => FactoredOrder::from_u64(n),
        }
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleFactor::Cyclic(p) => write!(f, "C{p}"),
            SimpleFactor::Alt(n) => write!(f, "A{n}"),
            SimpleFactor::Other(n) => write!(f, "Simple({n})"),
        }
    }
}

/// Composition factors with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleFactorMultiset(pub BTreeMap<SimpleFactor, u64>);

impl SimpleFactorMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, f: SimpleFactor, count: u64) {
        if count > 0 {
            *self.0.entry(f).or_insert(0) += count;
        }
    }

    /// Adds every factor of `other`, `times` times.
    pub fn extend_times(&mut self, other: &SimpleFactorMultiset, times: u64) {
        for (&f, &c) in &other.0 {
            self.add(f, c * times);
        }
    }

    pub fn total_order(&self) -> FactoredOrder {
        self.0.iter().map(|(f, &c)| f.order().pow(c)).product()
    }

    pub fn count(&self, f: SimpleFactor) -> u64 {
        self.0.get(&f).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SimpleFactorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, &c)| if c == 1 { s.to_string() } else { format!("{s}^{c}") })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Composition factors of the symmetric group on `s` points.
pub fn simple_factors_of_symmetric(s: u64) -> SimpleFactorMultiset {
    let mut m = SimpleFactorMultiset::new();
    match s {
        0 | 1 => {}
        2 => m.add(SimpleFactor::Cyclic(2), 1),
        3 => {
            m.add(SimpleFactor::Cyclic(2), 1);
            m.add(SimpleFactor::Cyclic(3), 1);
        }
        4 => {
            m.add(SimpleFactor::Cyclic(2), 3);
            m.add(SimpleFactor::Cyclic(3), 1);
        }
        _ => {
            m.add(SimpleFactor::Alt(s), 1);
            m.add(SimpleFactor::Cyclic(2), 1);
        }
    }
    m
}

/// Largest group order accepted by [`composition_factors_small`].
pub const COMPOSITION_LIMIT: usize = 10_000;

/// Composition factors of a small group given by its table.
pub fn composition_factors_small<G: FiniteGroup + ?Sized>(g: &G) -> Result<SimpleFactorMultiset> {
    if g.order() > COMPOSITION_LIMIT {
        return Err(Error::CapExceeded {
            what: "composition factor input".into(),
            size: g.order().to_string(),
            cap: COMPOSITION_LIMIT,
        });
    }
    let all: Vec<usize> = (0..g.order()).collect();
    let mut trivial = vec![false; g.order()];
    trivial[g.identity()] = true;
    let mut out = SimpleFactorMultiset::new();
    section_factors(g, &all, &trivial, &mut out);
    Ok(out)
}

/// Factors of the section `A/K` where `K` (as a mask) is normal in `A`.
fn section_factors<G: FiniteGroup + ?Sized>(g: &G, a: &[usize], k: &[bool], out: &mut SimpleFactorMultiset) {
    let k_size = k.iter().filter(|&&b| b).count();
    let q = (a.len() / k_size) as u64;
    if q == 1 {
        return;
    }
    if is_prime(q) {
        out.add(SimpleFactor::Cyclic(q), 1);
        return;
    }
    let a_gens = greedy_generators(g, a);
    let k_elems: Vec<usize> = (0..k.len()).filter(|&i| k[i]).collect();
    let k_gens = greedy_generators(g, &k_elems);
    // One candidate per conjugacy class of A outside K.
    let mut covered = k.to_vec();
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    for &x in a {
        if covered[x] {
            continue;
        }
        let mut stack = vec![x];
        covered[x] = true;
        while let Some(e) = stack.pop() {
            for &s in &a_gens {
                let f = g.conj(e, s);
                if !covered[f] {
                    covered[f] = true;
                    stack.push(f);
                }
            }
        }
        let (mask, elems) = normal_closure(g, &k_gens, &[x], &a_gens);
        if best.as_ref().is_none_or(|(_, b)| elems.len() < b.len()) {
            best = Some((mask, elems));
        }
    }
    let (n_mask, n_elems) = best.expect("nontrivial section has an element outside K");
    if n_elems.len() == a.len() {
        out.add(name_simple(q), 1);
        return;
    }
    section_factors(g, &n_elems, k, out);
    section_factors(g, a, &n_mask, out);
}

fn name_simple(order: u64) -> SimpleFactor {
    match order {
        p if is_prime(p) => SimpleFactor::Cyclic(p),
        // The only simple groups of these orders.
        60 => SimpleFactor::Alt(5),
        360 => SimpleFactor::Alt(6),
        2520 => SimpleFactor::Alt(7),
        n => SimpleFactor::Other(n),
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Order statistics of a finite group, used to compare groups cheaply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: BigUint,
    pub exponent: u64,
    pub center_order: BigUint,
    pub center_exponent: u64,
    pub central_quotient_order: BigUint,
    pub central_quotient_exponent: u64,
    pub central_quotient_abelian: bool,
    pub derived_order: BigUint,
    pub derived_exponent: u64,
    pub derived_abelian: bool,
    /// Prime-power orders of the cyclic factors of the abelianization, sorted.
    pub abelianization: Vec<u64>,
    /// Element order to number of elements of that order.
    pub order_histogram: BTreeMap<u64, BigUint>,
}

impl GroupFingerprint {
    pub fn trivial() -> Self {
        GroupFingerprint {
            order: BigUint::one(),
            exponent: 1,
            center_order: BigUint::one(),
            center_exponent: 1,
            central_quotient_order: BigUint::one(),
            central_quotient_exponent: 1,
            central_quotient_abelian: true,
            derived_order: BigUint::one(),
            derived_exponent: 1,
            derived_abelian: true,
            abelianization: Vec::new(),
            order_histogram: BTreeMap::from([(1, BigUint::one())]),
        }
    }

    /// Computes all statistics from a group table.
    pub fn of<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let gens = g.generator_ids();
        let orders: Vec<u64> = (0..n).map(|a| g.element_order(a)).collect();
        let mut hist: BTreeMap<u64, BigUint> = BTreeMap::new();
        for &o in &orders {
            *hist.entry(o).or_insert_with(BigUint::zero) += 1u32;
        }
        let exponent = orders.iter().fold(1, |acc, &o| acc.lcm(&o));

        let center: Vec<usize> = (0..n).filter(|&z| gens.iter().all(|&s| g.commutes(z, s))).collect();
        let mut in_center = vec![false; n];
        for &z in &center {
            in_center[z] = true;
        }
        let center_exponent = center.iter().fold(1, |acc, &z| acc.lcm(&orders[z]));
        let central_quotient_exponent = (0..n).fold(1u64, |acc, a| acc.lcm(&order_mod(g, a, &in_center)));
        let central_quotient_abelian = gens
            .iter()
            .all(|&a| gens.iter().all(|&b| in_center[commutator(g, a, b)]));

        let seeds: Vec<usize> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| commutator(g, a, b))
            .collect();
        let (in_derived, derived) = normal_closure(g, &[], &seeds, &gens);
        let derived_exponent = derived.iter().fold(1, |acc, &d| acc.lcm(&orders[d]));
        let derived_gens = greedy_generators(g, &derived);
        let derived_abelian = derived_gens
            .iter()
            .all(|&a| derived_gens.iter().all(|&b| g.commutes(a, b)));

        let abelianization = abelian_invariants(g, &in_derived, derived.len());

        GroupFingerprint {
            order: BigUint::from(n),
            exponent,
            center_order: BigUint::from(center.len()),
            center_exponent,
            central_quotient_order: BigUint::from(n / center.len()),
            central_quotient_exponent,
            central_quotient_abelian,
            derived_order: BigUint::from(derived.len()),
            derived_exponent,
            derived_abelian,
            abelianization,
            order_histogram: hist,
        }
    }

    /// Statistics of the direct product.
    pub fn product(&self, other: &Self) -> Self {
        let mut hist: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (&o1, c1) in &self.order_histogram {
            for (&o2, c2) in &other.order_histogram {
                *hist.entry(o1.lcm(&o2)).or_insert_with(BigUint::zero) += c1 * c2;
            }
        }
        let mut ab = self.abelianization.clone();
        ab.extend(&other.abelianization);
        ab.sort_unstable();
        GroupFingerprint {
            order: &self.order * &other.order,
            exponent: self.exponent.lcm(&other.exponent),
            center_order: &self.center_order * &other.center_order,
            center_exponent: self.center_exponent.lcm(&other.center_exponent),
            central_quotient_order: &self.central_quotient_order * &other.central_quotient_order,
            central_quotient_exponent: self.central_quotient_exponent.lcm(&other.central_quotient_exponent),
            central_quotient_abelian: self.central_quotient_abelian && other.central_quotient_abelian,
            derived_order: &self.derived_order * &other.derived_order,
            derived_exponent: self.derived_exponent.lcm(&other.derived_exponent),
            derived_abelian: self.derived_abelian && other.derived_abelian,
            abelianization: ab,
            order_histogram: hist,
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::trivial();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.product(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.derived_order.is_one()
    }

    pub fn center_elementary_abelian(&self) -> bool {
        self.center_exponent <= 2
    }

    pub fn central_quotient_elementary_abelian(&self) -> bool {
        self.central_quotient_abelian && self.central_quotient_exponent <= 2
    }

    pub fn derived_elementary_abelian(&self) -> bool {
        self.derived_abelian && self.derived_exponent <= 2
    }
}

fn commutator<G: FiniteGroup + ?Sized>(g: &G, a: usize, b: usize) -> usize {
    g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))
}

/// Smallest `k >= 1` with `a^k` in the subgroup given by `mask`.
fn order_mod<G: FiniteGroup + ?Sized>(g: &G, a: usize, mask: &[bool]) -> u64 {
    let mut x = a;
    let mut k = 1;
    while !mask[x] {
        x = g.mul(x, a);
        k += 1;
    }
    k
}

/// Smallest subgroup containing `base_gens` and `seeds` that is normalized
/// by `conj_gens`, assuming `<base_gens>` already is.
fn normal_closure<G: FiniteGroup + ?Sized>(
    g: &G,
    base_gens: &[usize],
    seeds: &[usize],
    conj_gens: &[usize],
) -> (Vec<bool>, Vec<usize>) {
    let mut gens: Vec<usize> = base_gens.to_vec();
    let (mut mask, mut elems) = subgroup_closure(g, &gens);
    let mut pending: Vec<usize> = seeds.to_vec();
    while let Some(s) = pending.pop() {
        if mask[s] {
            continue;
        }
        gens.push(s);
        (mask, elems) = subgroup_closure(g, &gens);
        for &t in &gens {
            for &c in conj_gens {
                let f = g.conj(t, c);
                if !mask[f] {
                    pending.push(f);
                }
            }
        }
    }
    (mask, elems)
}

/// Cyclic prime-power factors of `G/D`, from counts of `p^i`-torsion cosets.
fn abelian_invariants<G: FiniteGroup + ?Sized>(g: &G, in_d: &[bool], d_size: usize) -> Vec<u64> {
    let n = g.order();
    let q = (n / d_size) as u64;
    let mut out = Vec::new();
    for (p, e) in FactoredOrder::from_u64(q).0 {
        // n_i = log_p |{x in G/D : x^{p^i} = 1}|
        let mut ranks = vec![0u64];
        let mut pi = 1u64;
        while *ranks.last().unwrap() < e {
            pi *= p;
            let count = (0..n).filter(|&a| in_d[g.pow(a, pi)]).count() / d_size;
            ranks.push((count as f64).log(p as f64).round() as u64);
        }
        // factors of order >= p^i: ranks[i] - ranks[i-1]
        let at_least: Vec<u64> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        for i in 0..at_least.len() {
            let exact = at_least[i] - at_least.get(i + 1).copied().unwrap_or(0);
            for _ in 0..exact {
                out.push(p.pow(i as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Statistics of `C2^a x D8^b`, assembled from the statistics of the two
/// building blocks.
pub fn model_c2_d8(a: u64, b: u64) -> GroupFingerprint {
    c2_fingerprint().pow(a).product(&d8_fingerprint().pow(b))
}

fn c2_fingerprint() -> GroupFingerprint {
    GroupFingerprint::of(&crate::table::CayleyTable::from_group(&small_table(2, &["(1,2)"])))
}

fn d8_fingerprint() -> GroupFingerprint {
    GroupFingerprint::of(&small_table(4, &["(1,2,3,4)", "(1,3)"]))
}

fn small_table(deg: usize, gens: &[&str]) -> crate::table::ElementTable {
    let gens: Vec<_> = gens
        .iter()
        .map(|s| crate::perm::Permutation::parse_cycles(deg, s).unwrap())
        .collect();
    crate::table::ElementTable::from_generators(deg, &gens, 10_000).unwrap()
}

/// Finds `(a, b)` such that the statistics agree with those of
/// `C2^a x D8^b`. Agreement is necessary, not sufficient, for isomorphism.
pub fn fingerprint_recognize(fp: &GroupFingerprint) -> Option<(u64, u64)> {
    let n = log2_exact(&fp.order)?;
    let c = log2_exact(&fp.center_order)?;
    if n < c || (n - c) % 2 != 0 {
        return None;
    }
    let b = (n - c) / 2;
    let a = c.checked_sub(b)?;
    (model_c2_d8(a, b) == *fp).then_some((a, b))
}

fn log2_exact(x: &BigUint) -> Option<u64> {
    if x.is_zero() || x.count_ones() != 1 {
        return None;
    }
    Some(x.bits() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::CayleyTable;

    #[test]
    fn factored_arithmetic() {
        let a = FactoredOrder::from_u64(360);
        assert_eq!(a.to_string(), "2^3*3^2*5");
        assert_eq!(FactoredOrder::factorial(10).to_biguint(), BigUint::from(3628800u32));
        assert_eq!(a.mul(&FactoredOrder::from_u64(7)).to_biguint(), BigUint::from(2520u32));
        assert_eq!(SimpleFactor::Alt(5).order().to_biguint(), BigUint::from(60u32));
        assert!(FactoredOrder::one().is_one());
    }

    #[test]
    fn symmetric_factors() {
        let s5 = simple_factors_of_symmetric(5);
        assert_eq!(s5.to_string(), "C2 x A5");
        let s4 = simple_factors_of_symmetric(4);
        assert_eq!(s4.count(SimpleFactor::Cyclic(2)), 3);
        assert_eq!(s4.count(SimpleFactor::Cyclic(3)), 1);
        assert!(simple_factors_of_symmetric(1).is_empty());
        for s in 0..12 {
            assert_eq!(
                simple_factors_of_symmetric(s).total_order(),
                FactoredOrder::factorial(s)
            );
        }
    }

    #[test]
    fn composition_factors_of_small_groups() {
        let d8 = small_table(4, &["(1,2,3,4)", "(1,3)"]);
        let f = composition_factors_small(&d8).unwrap();
        assert_eq!(f.count(SimpleFactor::Cyclic(2)), 3);
        let c6 = small_table(6, &["(1,2,3,4,5,6)"]);
        assert_eq!(composition_factors_small(&c6).unwrap().to_string(), "C2 x C3");
        let a5 = small_table(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        assert_eq!(composition_factors_small(&a5).unwrap().to_string(), "A5");
        let s4 = small_table(4, &["(1,2)", "(1,2,3,4)"]);
        assert_eq!(composition_factors_small(&s4).unwrap(), simple_factors_of_symmetric(4));
        let s5 = small_table(5, &["(1,2)", "(1,2,3,4,5)"]);
        assert_eq!(composition_factors_small(&s5).unwrap(), simple_factors_of_symmetric(5));
        let gl = crate::atlas::construct(&crate::atlas::GroupSpec::Psl2(7)).unwrap();
        let gl = crate::table::ElementTable::enumerate(&gl.bsgs, 1000).unwrap();
        assert_eq!(composition_factors_small(&gl).unwrap().to_string(), "Simple(168)");
    }

    /// Closed-form statistics of C2^a x D8^b.
    fn analytic_histogram(a: u64, b: u64) -> BTreeMap<u64, BigUint> {
        let two = |k: u64| BigUint::from(2u32).pow(k as u32);
        let six_b = BigUint::from(6u32).pow(b as u32);
        let inv = two(a) * &six_b;
        let mut h = BTreeMap::from([(1, BigUint::one())]);
        if inv > BigUint::one() {
            h.insert(2, &inv - 1u32);
        }
        let fours = two(a + 3 * b) - &inv;
        if !fours.is_zero() {
            h.insert(4, fours);
        }
        h
    }

    #[test]
    fn model_matches_closed_form_and_is_recognized() {
        for a in 0..=6 {
            for b in 0..=6 {
                let m = model_c2_d8(a, b);
                assert_eq!(m.order_histogram, analytic_histogram(a, b), "({a},{b})");
                assert_eq!(m.center_order, BigUint::from(2u32).pow((a + b) as u32));
                assert_eq!(m.derived_order, BigUint::from(2u32).pow(b as u32));
                assert_eq!(m.abelianization.len() as u64, a + 2 * b);
                assert_eq!(fingerprint_recognize(&m), Some((a, b)));
            }
        }
    }

    #[test]
    fn quaternion_is_not_recognized() {
        let q8 = crate::atlas::construct(&crate::atlas::GroupSpec::Quaternion8).unwrap();
        let q8 = crate::table::ElementTable::enumerate(&q8.bsgs, 100).unwrap();
        let fp = GroupFingerprint::of(&q8);
        assert_eq!(fp.order_histogram[&4], BigUint::from(6u32));
        assert_eq!(fingerprint_recognize(&fp), None);
        let d8 = GroupFingerprint::of(&small_table(4, &["(1,2,3,4)", "(1,3)"]));
        assert_eq!(d8.order_histogram[&4], BigUint::from(2u32));
    }

    #[test]
    fn product_fingerprint_matches_direct_computation() {
        let s3 = CayleyTable::from_group(&small_table(3, &["(1,2)", "(1,2,3)"]));
        let c4 = CayleyTable::from_group(&small_table(4, &["(1,2,3,4)"]));
        let direct = GroupFingerprint::of(&CayleyTable::direct_product(&s3, &c4));
        let combined = GroupFingerprint::of(&s3).product(&GroupFingerprint::of(&c4));
        assert_eq!(direct, combined);
        assert_eq!(direct.abelianization, vec![2, 4]);
    }
}
