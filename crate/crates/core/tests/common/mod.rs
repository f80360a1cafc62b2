#![allow(dead_code)]

use gfl_core::ffcore::Gf;
use gfl_core::poly::{BPoly, PlaneCurve, RatFunc, RatFunc2, UPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf(q: u32) -> Gf {
    Gf::of_order(q).unwrap()
}

pub fn upoly(f: &Gf, c: &[u32]) -> UPoly {
    UPoly::new(f, c.to_vec())
}

pub fn rand_upoly(f: &Gf, deg: usize, r: &mut ChaCha8Rng) -> UPoly {
    loop {
        let c: Vec<u32> = (0..=deg).map(|_| r.gen_range(0..f.q())).collect();
        let p = UPoly::new(f, c);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn rand_ratfunc(f: &Gf, deg: usize, r: &mut ChaCha8Rng) -> RatFunc {
    let n = rand_upoly(f, r.gen_range(0..=deg), r);
    let d = rand_upoly(f, r.gen_range(0..=deg), r);
    RatFunc::new(n, d)
}

pub fn rand_bpoly(f: &Gf, deg: usize, r: &mut ChaCha8Rng) -> BPoly {
    loop {
        let mut terms = Vec::new();
        for i in 0..=deg {
            for j in 0..=deg - i {
                terms.push((i, j, r.gen_range(0..f.q())));
            }
        }
        let p = BPoly::from_terms(f, &terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn rand_ratfunc2(f: &Gf, deg: usize, r: &mut ChaCha8Rng) -> RatFunc2 {
    let n = rand_bpoly(f, r.gen_range(0..=deg), r);
    let d = rand_bpoly(f, r.gen_range(0..=deg), r);
    RatFunc2::new(n, d)
}

pub fn line(f: &Gf, a: u32, b: u32, c: u32) -> PlaneCurve {
    PlaneCurve::affine(&BPoly::linear(f, a, b, c)).unwrap()
}

pub fn x(f: &Gf) -> RatFunc2 {
    RatFunc2::x(f)
}
pub fn y(f: &Gf) -> RatFunc2 {
    RatFunc2::y(f)
}
pub fn c2(f: &Gf, a: u32) -> RatFunc2 {
    RatFunc2::constant(f, a)
}
pub fn t(f: &Gf) -> RatFunc {
    RatFunc::var(f)
}
pub fn c1(f: &Gf, a: u32) -> RatFunc {
    RatFunc::constant(f, a)
}
