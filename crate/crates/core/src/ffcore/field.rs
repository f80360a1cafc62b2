use std::fmt;
use std::sync::Arc;

use crate::ffcore::FfError;

/// Conway polynomials, constant term first, leading 1 last.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
];

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn conway_polynomial(p: u32, e: u32) -> Option<&'static [u32]> {
    CONWAY.iter().find(|(pp, ee, _)| *pp == p && *ee == e).map(|(_, _, c)| *c)
}

struct Tables {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field GF(p^e). Elements are encoded as integers in `0..q`:
/// the base-p digits are the coefficients of the residue polynomial,
/// constant term in the least significant digit.
#[derive(Clone)]
pub struct Gf {
    inner: Arc<Inner>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.e())
        }
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.e() == other.e()
    }
}
impl Eq for Gf {}

impl std::hash::Hash for Gf {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        (self.p(), self.e()).hash(h);
    }
}

impl Gf {
    pub fn prime(p: u32) -> Result<Gf, FfError> {
        Gf::new(p, 1)
    }

    pub fn new(p: u32, e: u32) -> Result<Gf, FfError> {
        if !is_prime(p) || p > 65521 {
            return Err(FfError::NotPrime(p));
        }
        if e == 0 {
            return Err(FfError::UnsupportedExtension { p, e });
        }
        if e == 1 {
            return Ok(Gf {
                inner: Arc::new(Inner { p, e, q: p, modulus: vec![0, 1], tables: None }),
            });
        }
        let modulus = conway_polynomial(p, e)
            .ok_or(FfError::UnsupportedExtension { p, e })?
            .to_vec();
        let q = p.pow(e);
        let mut mul = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in a..q {
                let c = poly_mulmod(p, &modulus, a, b);
                mul[(a * q + b) as usize] = c;
                mul[(b * q + a) as usize] = c;
            }
        }
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }
        Ok(Gf {
            inner: Arc::new(Inner { p, e, q, modulus, tables: Some(Tables { mul, inv }) }),
        })
    }

    /// Field of order `q`, which must be a prime power covered by the table.
    pub fn of_order(q: u32) -> Result<Gf, FfError> {
        for p in 2..=q {
            if is_prime(p) && q % p == 0 {
                let mut e = 0;
                let mut r = q;
                while r % p == 0 {
                    r /= p;
                    e += 1;
                }
                if r != 1 {
                    return Err(FfError::NotPrimePower(q));
                }
                return Gf::new(p, e);
            }
        }
        Err(FfError::NotPrimePower(q))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.inner.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.e == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.e == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            while a > 0 {
                out += ((p - a % p) % p) * place;
                a /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.inner.tables {
            None => ((a as u64 * b as u64) % self.inner.p as u64) as u32,
            Some(t) => t.mul[(a * self.inner.q + b) as usize],
        }
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in {:?}", self);
        match &self.inner.tables {
            None => {
                let p = self.inner.p as i64;
                let (mut r0, mut r1) = (p, a as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let qt = r0 / r1;
                    (r0, r1) = (r1, r0 - qt * r1);
                    (t0, t1) = (t1, t0 - qt * t1);
                }
                t0.rem_euclid(p) as u32
            }
            Some(t) => t.inv[a as usize],
        }
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    /// The class of the generator of GF(p^e) over GF(p) (the root of the modulus).
    pub fn generator(&self) -> u32 {
        if self.inner.e == 1 {
            // a primitive root for the prime field
            let p = self.inner.p;
            (1..p).find(|&g| self.multiplicative_order(g) == (p - 1) as u64).unwrap_or(1)
        } else {
            self.inner.p
        }
    }

    pub fn multiplicative_order(&self, a: u32) -> u64 {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1u64;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elem(&self, v: u32) -> FieldElem {
        FieldElem { field: self.clone(), v: v % self.q() }
    }

    pub fn fmt_elem(&self, a: u32) -> String {
        if self.inner.e == 1 {
            return a.to_string();
        }
        let p = self.inner.p;
        let mut terms = Vec::new();
        let mut r = a;
        let mut i = 0;
        while r > 0 {
            let c = r % p;
            if c != 0 {
                terms.push(match (i, c) {
                    (0, c) => c.to_string(),
                    (1, 1) => "a".to_string(),
                    (1, c) => format!("{c}a"),
                    (i, 1) => format!("a^{i}"),
                    (i, c) => format!("{c}a^{i}"),
                });
            }
            r /= p;
            i += 1;
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.reverse();
            terms.join("+")
        }
    }
}

fn digits(p: u32, mut a: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for slot in d.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    d
}

fn poly_mulmod(p: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let e = modulus.len() - 1;
    let da = digits(p, a, e);
    let db = digits(p, b, e);
    let mut prod = vec![0u32; 2 * e];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (e..2 * e).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus.iter().enumerate().take(e) {
            let idx = k - e + i;
            prod[idx] = (prod[idx] + (p - (c * m) % p)) % p;
        }
    }
    let mut out = 0;
    for i in (0..e).rev() {
        out = out * p + prod[i];
    }
    out
}

/// An owned field element, for API surfaces where the field travels with the value.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Gf,
    v: u32,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_elem(self.v))
    }
}

impl FieldElem {
    pub fn field(&self) -> &Gf {
        &self.field
    }
    pub fn value(&self) -> u32 {
        self.v
    }
    pub fn is_zero(&self) -> bool {
        self.v == 0
    }
    pub fn add(&self, o: &FieldElem) -> FieldElem {
        self.field.elem(self.field.add(self.v, o.v))
    }
    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        self.field.elem(self.field.sub(self.v, o.v))
    }
    pub fn mul(&self, o: &FieldElem) -> FieldElem {
        self.field.elem(self.field.mul(self.v, o.v))
    }
    pub fn neg(&self) -> FieldElem {
        self.field.elem(self.field.neg(self.v))
    }
    pub fn inv(&self) -> Option<FieldElem> {
        (self.v != 0).then(|| self.field.elem(self.field.inv(self.v)))
    }
}
