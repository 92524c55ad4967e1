//! Small finite fields GF(p^d) with explicit tables.

use crate::error::{Error, Result};

/// A finite field of order `q = p^d`. Elements are `0..q`, read as
/// polynomials in a root of the defining polynomial with base-`p` digits
/// as coefficients (lowest degree first).
#[derive(Clone, Debug)]
pub struct FieldGF {
    p: usize,
    d: usize,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl FieldGF {
    pub fn new(q: usize) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or_else(|| {
            Error::UnsupportedSpec(format!("{q} is not a prime power"))
        })?;
        if q > 256 {
            return Err(Error::UnsupportedSpec(format!("field order {q} too large")));
        }
        let add_digits = |a: usize, b: usize| -> usize {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            for _ in 0..d {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let mut add = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = add_digits(a, b) as u16;
            }
        }
        // Try monic polynomials x^d - c(x) in order until the product table is a field.
        for tail in 0..q {
            if d > 1 && tail % p == 0 {
                continue; // constant term 0 means reducible
            }
            let Some(mul) = mul_table(p, d, tail) else {
                continue;
            };
            let mut inv = vec![0u16; q];
            let ok = (1..q).all(|a| match (1..q).find(|&b| mul[a * q + b] == 1) {
                Some(b) => {
                    inv[a] = b as u16;
                    true
                }
                None => false,
            });
            if !ok {
                continue;
            }
            let neg = (0..q)
                .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
                .collect();
            let f = FieldGF {
                p,
                d,
                q,
                add,
                mul,
                neg,
                inv,
            };
            f.check_axioms()?;
            return Ok(f);
        }
        Err(Error::UnsupportedSpec(format!("no field of order {q} found")))
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q;
        for a in 0..q {
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::UnsupportedSpec("field tables not commutative".into()));
                }
                for c in 0..q {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return Err(Error::UnsupportedSpec("field axioms fail".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// The smallest element generating the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        (1..self.q)
            .find(|&a| {
                let mut x = a;
                let mut k = 1;
                while x != 1 {
                    x = self.mul(x, a);
                    k += 1;
                }
                k == self.q - 1
            })
            .unwrap_or(1)
    }
}

/// Product table for GF(p)[x] / (x^d - c(x)), where the digits of `tail`
/// give c. Returns `None` if `d == 1` and `tail != 0`.
fn mul_table(p: usize, d: usize, tail: usize) -> Option<Vec<u16>> {
    let q = p.pow(d as u32);
    if d == 1 && tail != 0 {
        return None;
    }
    let digits = |mut a: usize| -> Vec<usize> {
        (0..d)
            .map(|_| {
                let r = a % p;
                a /= p;
                r
            })
            .collect()
    };
    let c = digits(tail);
    let mut table = vec![0u16; q * q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let mut prod = vec![0usize; 2 * d];
            for i in 0..d {
                for j in 0..d {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                }
            }
            // reduce x^k for k >= d using x^d = c(x)
            for k in (d..2 * d - 1).rev() {
                let top = prod[k];
                if top != 0 {
                    prod[k] = 0;
                    for (i, &ci) in c.iter().enumerate() {
                        prod[k - d + i] = (prod[k - d + i] + top * ci) % p;
                    }
                }
            }
            let v = prod[..d].iter().rev().fold(0, |acc, &x| acc * p + x);
            table[a * q + b] = v as u16;
        }
    }
    Some(table)
}

pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&p| q.is_multiple_of(p))?;
    let mut d = 0;
    let mut n = q;
    while n.is_multiple_of(p) {
        n /= p;
        d += 1;
    }
    (n == 1).then_some((p, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields_are_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 27] {
            let f = FieldGF::new(q).unwrap();
            assert_eq!(f.order(), q);
            let g = f.primitive_element();
            let powers: std::collections::BTreeSet<usize> = (0..q - 1).map(|e| f.pow(g, e)).collect();
            assert_eq!(powers.len(), q - 1);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FieldGF::new(6).is_err());
        assert!(FieldGF::new(1).is_err());
    }
}
