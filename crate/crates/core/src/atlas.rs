//! Benchmark groups and group files.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;

use crate::bsgs::PermGroupBSGS;
use crate::error::{Error, Result};
use crate::field::FieldGF;
use crate::perm::Permutation;

pub const PSL2_FIELDS: [usize; 10] = [4, 5, 7, 8, 9, 11, 13, 16, 17, 19];

/// A group description such as `psl2:7`, `dihedral:9` or `file:gens.txt`.
/// Several specs joined by commas denote their direct product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    Psl2(usize),
    Psl3_3,
    M11,
    File(PathBuf),
    Product(Vec<GroupSpec>),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        if s.contains(',') {
            let parts = s.split(',').map(str::parse).collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Product(parts));
        }
        let unsupported = || Error::UnsupportedSpec(s.to_string());
        let (family, param) = match s.split_once(':') {
            Some((f, p)) => (f, Some(p.parse::<usize>().map_err(|_| unsupported())?)),
            None => (s, None),
        };
        let spec = match (family, param) {
            ("cyclic", Some(n)) if n >= 1 => GroupSpec::Cyclic(n),
            ("dihedral", Some(n)) if n >= 3 => GroupSpec::Dihedral(n),
            ("symmetric", Some(n)) if n >= 1 => GroupSpec::Symmetric(n),
            ("alternating", Some(n)) if n >= 1 => GroupSpec::Alternating(n),
            ("quaternion8", None) => GroupSpec::Quaternion8,
            ("psl2", Some(q)) if PSL2_FIELDS.contains(&q) => GroupSpec::Psl2(q),
            ("psl3", Some(3)) => GroupSpec::Psl3_3,
            ("m11", None) => GroupSpec::M11,
            _ => return Err(unsupported()),
        };
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alternating:{n}"),
            GroupSpec::Quaternion8 => write!(f, "quaternion8"),
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Psl3_3 => write!(f, "psl3:3"),
            GroupSpec::M11 => write!(f, "m11"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
            GroupSpec::Product(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join(","))
            }
        }
    }
}

/// A permutation group with its generators in declared order.
#[derive(Clone, Debug)]
pub struct Group {
    pub name: String,
    pub generators: Vec<Permutation>,
    pub bsgs: PermGroupBSGS,
}

impl Group {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        let bsgs = PermGroupBSGS::new(degree, &generators)?;
        Ok(Group {
            name: name.into(),
            generators,
            bsgs,
        })
    }

    pub fn degree(&self) -> usize {
        self.bsgs.degree()
    }

    pub fn order(&self) -> &BigUint {
        self.bsgs.order()
    }

    fn check_order(self, expected: u64) -> Result<Self> {
        if self.order() != &BigUint::from(expected) {
            return Err(Error::OrderCheck {
                spec: self.name.clone(),
                expected: expected.to_string(),
                computed: self.order().to_string(),
            });
        }
        Ok(self)
    }
}

/// Names of the built-in families, for listings.
pub fn families() -> Vec<(&'static str, &'static str)> {
    vec![
        ("cyclic:n", "cyclic group of order n on n points"),
        ("dihedral:n", "dihedral group of order 2n on n points (n >= 3)"),
        ("symmetric:n", "symmetric group on n points"),
        ("alternating:n", "alternating group on n points"),
        ("quaternion8", "quaternion group, regular representation on 8 points"),
        ("psl2:q", "PSL(2,q) on the projective line, q in {4,5,7,8,9,11,13,16,17,19}"),
        ("psl3:3", "PSL(3,3) on the 13 points of the projective plane"),
        ("m11", "Mathieu group M11 on 11 points"),
        ("file:path", "generators read from a group file"),
        ("a,b", "direct product of two or more specs"),
    ]
}

pub fn construct(spec: &GroupSpec) -> Result<Group> {
    let name = spec.to_string();
    match *spec {
        GroupSpec::Cyclic(n) => {
            let c = cycle(n, 0..n as u32);
            Group::new(name, n, vec![c])?.check_order(n as u64)
        }
        GroupSpec::Dihedral(n) => {
            let m = n as i64;
            let reflect = |shift: i64| {
                let images = (0..m).map(|i| (shift - i).rem_euclid(m) as u32).collect();
                Permutation::from_images(images).unwrap()
            };
            // s: i -> -i, t: i -> 1 - i, so s*t is the rotation i -> i + 1
            Group::new(name, n, vec![reflect(0), reflect(1)])?.check_order(2 * n as u64)
        }
        GroupSpec::Symmetric(n) => {
            let gens = if n < 2 {
                vec![Permutation::identity(n)]
            } else {
                vec![cycle(n, [0, 1]), cycle(n, 0..n as u32)]
            };
            Group::new(name, n, gens)?.check_order(factorial(n))
        }
        GroupSpec::Alternating(n) => {
            let gens = if n < 3 {
                vec![Permutation::identity(n)]
            } else if n % 2 == 1 {
                vec![cycle(n, [0, 1, 2]), cycle(n, 0..n as u32)]
            } else {
                vec![cycle(n, [0, 1, 2]), cycle(n, 1..n as u32)]
            };
            Group::new(name, n, gens)?.check_order((factorial(n) / 2).max(1))
        }
        GroupSpec::Quaternion8 => {
            let (i, j) = quaternion_generators();
            Group::new(name, 8, vec![i, j])?.check_order(8)
        }
        GroupSpec::Psl2(q) => psl2(q),
        GroupSpec::Psl3_3 => psl3_3(),
        GroupSpec::M11 => {
            let a = cycle(11, 0..11);
            let b = Permutation::parse_cycles(11, "(3,7,11,8)(4,10,5,6)")?;
            let g = Group::new(name, 11, vec![a, b])?.check_order(7920)?;
            if !g.bsgs.is_two_transitive() {
                return Err(Error::OrderCheck {
                    spec: "m11".into(),
                    expected: "2-transitive action".into(),
                    computed: "not 2-transitive".into(),
                });
            }
            Ok(g)
        }
        GroupSpec::File(ref path) => load_group_file(path),
        GroupSpec::Product(ref parts) => {
            let groups = parts.iter().map(construct).collect::<Result<Vec<_>>>()?;
            let mut acc = groups[0].clone();
            for g in &groups[1..] {
                acc = direct_product(&acc, g)?;
            }
            acc.name = name;
            Ok(acc)
        }
    }
}

fn cycle(n: usize, points: impl IntoIterator<Item = u32>) -> Permutation {
    let c: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(n, &[c]).unwrap()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Right multiplication by `i` and `j` on the eight units `±1, ±i, ±j, ±k`.
fn quaternion_generators() -> (Permutation, Permutation) {
    // unit u in 0..4 = 1,i,j,k; element = (sign, unit) numbered sign*4 + u
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        const TABLE: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        TABLE[a][b]
    };
    let right = |by: usize| {
        let images = (0..8)
            .map(|e| {
                let (s, u) = (e / 4, e % 4);
                let (s2, u2) = unit_mul(u, by);
                (((s + s2) % 2) * 4 + u2) as u32
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    (right(1), right(2))
}

/// Points of the projective line over `f`: index `a < q` is `[a, 1]`, index `q` is `[1, 0]`.
fn psl2(q: usize) -> Result<Group> {
    let f = FieldGF::new(q)?;
    let point_index = |x: usize, y: usize| -> usize {
        if y == 0 {
            q
        } else {
            f.mul(x, f.inv(y))
        }
    };
    let act = |m: [usize; 4]| -> Permutation {
        // row vector [x, y] times [[a, b], [c, d]]
        let [a, b, c, d] = m;
        let images = (0..=q)
            .map(|p| {
                let (x, y) = if p == q { (1, 0) } else { (p, 1) };
                let nx = f.add(f.mul(x, a), f.mul(y, c));
                let ny = f.add(f.mul(x, b), f.mul(y, d));
                point_index(nx, ny) as u32
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    let alpha = f.primitive_element();
    let minus_one = f.neg(1);
    let mut gens = vec![act([1, 1, 0, 1]), act([1, alpha, 0, 1]), act([0, minus_one, 1, 0])];
    let expected = (q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }) as u64;
    let name = format!("psl2:{q}");
    let mut g = Group::new(name.clone(), q + 1, gens.clone())?;
    // Over larger fields the additive span of 1 and alpha may be too small.
    let mut e = 2;
    while g.order() != &BigUint::from(expected) && e < f.degree() {
        gens.push(act([1, f.pow(alpha, e), 0, 1]));
        g = Group::new(name.clone(), q + 1, gens.clone())?;
        e += 1;
    }
    g.check_order(expected)
}

/// PSL(3,3) on normalized nonzero vectors of GF(3)^3, acting by elementary transvections.
fn psl3_3() -> Result<Group> {
    let normalize = |v: [usize; 3]| -> [usize; 3] {
        let lead = v.iter().copied().find(|&c| c != 0).unwrap();
        let scale = if lead == 1 { 1 } else { 2 };
        v.map(|c| (c * scale) % 3)
    };
    let mut points: Vec<[usize; 3]> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let v = [a, b, c];
                if v != [0, 0, 0] && normalize(v) == v {
                    points.push(v);
                }
            }
        }
    }
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            // row vector times (I + E_ij): coordinate j gains coordinate i
            let images = points
                .iter()
                .map(|v| {
                    let mut w = *v;
                    w[j] = (w[j] + v[i]) % 3;
                    let w = normalize(w);
                    points.iter().position(|p| *p == w).unwrap() as u32
                })
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
    }
    Group::new("psl3:3", 13, gens)?.check_order(5616)
}

/// Direct product on the disjoint union of the domains. The i-th generator
/// pairs the i-th generators of both factors (padding with identities); if
/// those only reach a diagonal-like subgroup, both generating sets are used
/// side by side instead.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let (da, db) = (a.degree(), b.degree());
    let n = a.generators.len().max(b.generators.len());
    let id_a = Permutation::identity(da);
    let id_b = Permutation::identity(db);
    let join = |ga: &Permutation, gb: &Permutation| {
        let images = ga
            .images()
            .iter()
            .copied()
            .chain(gb.images().iter().map(|&x| x + da as u32))
            .collect();
        Permutation::from_images(images)
    };
    let paired = (0..n)
        .map(|i| join(a.generators.get(i).unwrap_or(&id_a), b.generators.get(i).unwrap_or(&id_b)))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("{},{}", a.name, b.name);
    let expected = a.order() * b.order();
    let mut g = Group::new(name.clone(), da + db, paired)?;
    if g.order() != &expected {
        let separate = a
            .generators
            .iter()
            .map(|ga| join(ga, &id_b))
            .chain(b.generators.iter().map(|gb| join(&id_a, gb)))
            .collect::<Result<Vec<_>>>()?;
        g = Group::new(name, da + db, separate)?;
    }
    if g.order() != &expected {
        return Err(Error::OrderCheck {
            spec: g.name.clone(),
            expected: expected.to_string(),
            computed: g.order().to_string(),
        });
    }
    Ok(g)
}

/// Reads a group file: `degree N`, then one generator per line in cycle
/// notation or as `images i1 .. iN` (1-based). `#` starts a comment.
pub fn load_group_file(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path)?;
    parse_group_text(&text, &format!("file:{}", path.display()))
}

pub fn parse_group_text(text: &str, name: &str) -> Result<Group> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `degree N` line".into()))?;
    let degree: usize = header
        .strip_prefix("degree")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected `degree N`, found {header:?}")))?;
    let mut gens = Vec::new();
    for line in lines {
        let g = if let Some(rest) = line.strip_prefix("images") {
            let images = rest
                .split_whitespace()
                .map(|t| match t.parse::<u32>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Parse(format!("bad image {t:?}"))),
                })
                .collect::<Result<Vec<u32>>>()?;
            if images.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: images.len(),
                });
            }
            Permutation::from_images(images)?
        } else {
            Permutation::parse_cycles(degree, line)?
        };
        gens.push(g);
    }
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    Group::new(name, degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> Group {
        construct(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders_and_degrees() {
        let cases = [
            ("cyclic:5", 5, 5u64),
            ("cyclic:1", 1, 1),
            ("dihedral:9", 9, 18),
            ("symmetric:4", 4, 24),
            ("alternating:5", 5, 60),
            ("alternating:6", 6, 360),
            ("quaternion8", 8, 8),
            ("psl2:7", 8, 168),
            ("psl2:4", 5, 60),
            ("psl2:8", 9, 504),
            ("psl2:9", 10, 360),
            ("psl2:16", 17, 4080),
            ("psl3:3", 13, 5616),
            ("m11", 11, 7920),
        ];
        for (s, deg, ord) in cases {
            let g = build(s);
            assert_eq!(g.degree(), deg, "{s}");
            assert_eq!(g.order(), &BigUint::from(ord), "{s}");
        }
    }

    #[test]
    fn dihedral_reflections_multiply_to_rotation() {
        let g = build("dihedral:7");
        let r = g.generators[0].then(&g.generators[1]);
        assert_eq!(r.order(), 7);
        assert_eq!(r.apply(0), 1);
    }

    #[test]
    fn products_and_spec_roundtrip() {
        let g = build("cyclic:3,dihedral:4");
        assert_eq!(g.order(), &BigUint::from(24u32));
        assert_eq!(build("cyclic:2,symmetric:3").order(), &BigUint::from(12u32));
        assert_eq!(build("cyclic:2,cyclic:2").order(), &BigUint::from(4u32));
        for s in ["psl2:7", "cyclic:3,dihedral:5", "m11", "quaternion8"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert!("psl2:6".parse::<GroupSpec>().is_err());
        assert!("foo:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn group_file_parsing() {
        let q8 = "degree 8\n# right multiplication by i and j\nimages 2 5 8 3 6 1 4 7\nimages 3 4 5 6 7 8 1 2\n";
        // Whatever the labels, a file must at least parse and give a group.
        let g = parse_group_text(q8, "q8").unwrap();
        assert_eq!(g.degree(), 8);
        assert!(matches!(
            parse_group_text("degree 3\nimages 1 1 2\n", "bad"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_group_text("degree 3\n(1,4)\n", "bad"),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            parse_group_text("degree 3\n", "empty"),
            Err(Error::EmptyGenerators)
        ));
    }
}
