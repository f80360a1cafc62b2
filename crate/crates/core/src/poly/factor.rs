//! Factorization of univariate polynomials over GF(q): square-free split,
//! distinct-degree split, then Cantor-Zassenhaus with a fixed-seed generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ffcore::Gf;
use crate::poly::UPoly;

/// Monic irreducible factors with multiplicities, sorted; the leading
/// coefficient is dropped.
pub fn factor(a: &UPoly) -> Vec<(UPoly, u32)> {
    assert!(!a.is_zero(), "factoring zero");
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    if a.is_constant() {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (sq, mult) in squarefree(&a.monic()) {
        for (g, d) in distinct_degree(&sq) {
            for p in equal_degree(&g, d, &mut rng) {
                out.push((p, mult));
            }
        }
    }
    out.sort();
    // merge duplicates that may arise from separate square-free layers
    let mut merged: Vec<(UPoly, u32)> = Vec::new();
    for (p, m) in out {
        match merged.last_mut() {
            Some((q, k)) if *q == p => *k += m,
            _ => merged.push((p, m)),
        }
    }
    merged
}

pub fn is_irreducible(a: &UPoly) -> bool {
    if a.deg() < 1 {
        return false;
    }
    let fs = factor(a);
    fs.len() == 1 && fs[0].1 == 1
}

fn pth_root(a: &UPoly) -> UPoly {
    let f = a.field();
    let p = f.p() as usize;
    // inverse Frobenius on coefficients: x -> x^(p^(e-1))
    let root_exp = (f.p() as u64).pow(f.e() - 1);
    let c = a.coeffs().iter().step_by(p).map(|&x| f.pow(x, root_exp)).collect();
    UPoly::new(f, c)
}

fn squarefree(a: &UPoly) -> Vec<(UPoly, u32)> {
    let f = a.field();
    let p = f.p();
    let mut out = Vec::new();
    let d = a.derivative();
    if d.is_zero() {
        for (g, m) in squarefree(&pth_root(a)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = a.gcd(&d);
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(a: &UPoly) -> Vec<(UPoly, usize)> {
    let f = a.field();
    let q = f.q() as u128;
    let mut out = Vec::new();
    let mut rest = a.clone();
    let x = UPoly::var(f);
    let mut h = x.rem(&rest);
    let mut i = 1;
    while rest.degree() >= 2 * i {
        h = h.powmod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree() > 0 {
        let d = rest.degree();
        out.push((rest, d));
    }
    out
}

fn random_poly(f: &Gf, below: usize, rng: &mut ChaCha8Rng) -> UPoly {
    let c = (0..below).map(|_| rng.gen_range(0..f.q())).collect();
    UPoly::new(f, c)
}

fn equal_degree(a: &UPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    if a.degree() == d {
        return vec![a.monic()];
    }
    let f = a.field();
    let q = f.q() as u128;
    loop {
        let r = random_poly(f, a.degree(), rng);
        if r.is_constant() {
            continue;
        }
        let b = if f.p() == 2 {
            // trace map to GF(2)
            let mut t = r.rem(a);
            let mut acc = t.clone();
            for _ in 1..(f.e() as usize * d) {
                t = t.mulmod(&t, a);
                acc = acc.add(&t);
            }
            acc
        } else {
            // norm to GF(q), then the quadratic character
            let mut frob = r.rem(a);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.powmod(q, a);
                norm = norm.mulmod(&frob, a);
            }
            norm.powmod((q - 1) / 2, a).sub(&UPoly::one(f))
        };
        let g = a.gcd(&b);
        if g.degree() > 0 && g.degree() < a.degree() {
            let rest = a.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
    }
}

/// All monic irreducible polynomials of degree d, in the `UPoly` order.
pub fn monic_irreducibles(f: &Gf, d: usize) -> Vec<UPoly> {
    let q = f.q() as u64;
    let mut out = Vec::new();
    for code in 0..q.pow(d as u32) {
        let mut c = Vec::with_capacity(d + 1);
        let mut r = code;
        for _ in 0..d {
            c.push((r % q) as u32);
            r /= q;
        }
        c.push(1);
        let p = UPoly::new(f, c);
        if is_irreducible(&p) {
            out.push(p);
        }
    }
    out.sort();
    out
}
