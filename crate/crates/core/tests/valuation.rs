mod common;

use common::*;
use gfl_core::ffcore::Gf;
use gfl_core::flagmap::{is_c_pair, is_flag_map, HomogeneousMap, Ring};
use gfl_core::poly::{BPoly, ClosedPoint, PlaneCurve, RatFunc, RatFunc2, UPoly};
use gfl_core::valuation::*;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const ZL: Ring = Ring::Zl { ell: 5, m: 3 };

// ---- oracle: order along the line y = a x + c by shifting y ----

/// P(x, y' + a x + c) as a polynomial in y' with coefficients in x.
fn shift(p: &BPoly, a: u32, c: u32) -> BPoly {
    let f = p.field();
    let sub = BPoly::y(f).add(&BPoly::linear(f, a, 0, c));
    p.y_coeffs().iter().rev().fold(BPoly::zero(f), |acc, u| acc.mul(&sub).add(&BPoly::from_x(u)))
}

fn low_y(p: &BPoly) -> (usize, UPoly) {
    let j = p.y_coeffs().iter().position(|u| !u.is_zero()).unwrap();
    (j, p.y_coeff(j))
}

fn oracle_line_order(r: &RatFunc2, a: u32, c: u32) -> i64 {
    low_y(&shift(r.num(), a, c)).0 as i64 - low_y(&shift(r.den(), a, c)).0 as i64
}

fn oracle_flag_order(r: &RatFunc2, a: u32, c: u32, px: u32) -> (i64, i64) {
    let (jn, un) = low_y(&shift(r.num(), a, c));
    let (jd, ud) = low_y(&shift(r.den(), a, c));
    let lin = UPoly::linear_root(r.field(), px);
    let second = un.multiplicity(&lin).0 as i64 - ud.multiplicity(&lin).0 as i64;
    (jn as i64 - jd as i64, second)
}

fn line_ya(f: &Gf, a: u32, c: u32) -> PlaneCurve {
    // y - a x - c
    line(f, f.neg(a), 1, f.neg(c))
}

fn nonzero_pair(f: &Gf, r: &mut ChaCha8Rng, deg: usize) -> (RatFunc2, RatFunc2) {
    loop {
        let a = rand_ratfunc2(f, deg, r);
        let b = rand_ratfunc2(f, deg, r);
        if !a.is_zero() && !b.is_zero() && !a.add(&b).is_zero() {
            return (a, b);
        }
    }
}

#[test]
fn ord_examples() {
    let f = gf(5);
    let tt = t(&f);
    let r = tt.mul(&tt).div(&tt.sub(&c1(&f, 1)));
    assert_eq!(ord(&Valuation::Point(ClosedPoint::rational(&f, 0)), &Func::T(r.clone())).unwrap().0, vec![2]);
    assert_eq!(ord(&Valuation::Point(ClosedPoint::Infinity), &Func::T(r)).unwrap().0, vec![-1]);
    let f3 = gf(3);
    let v = Valuation::flag(line(&f3, 1, 0, 0), (0, 0)).unwrap();
    assert_eq!(ord(&v, &Func::XY(y(&f3).add(&x(&f3)))).unwrap().0, vec![0, 1]);
    assert_eq!(ord(&v, &Func::XY(c2(&f3, 0))), Err(ValError::Zero));
}

#[test]
fn point_valuations_are_valuations() {
    let f = gf(5);
    let mut r = rng(1);
    let points = [
        ClosedPoint::rational(&f, 0),
        ClosedPoint::rational(&f, 3),
        ClosedPoint::finite(&upoly(&f, &[2, 0, 1])).unwrap(),
        ClosedPoint::Infinity,
    ];
    for k in 0..1000 {
        let p = &points[k % points.len()];
        let a = rand_ratfunc(&f, 4, &mut r);
        let b = rand_ratfunc(&f, 4, &mut r);
        if a.is_zero() || b.is_zero() || a.add(&b).is_zero() {
            continue;
        }
        let v = Valuation::Point(p.clone());
        let (va, vb) = (ord(&v, &Func::T(a.clone())).unwrap(), ord(&v, &Func::T(b.clone())).unwrap());
        assert_eq!(ord(&v, &Func::T(a.mul(&b))).unwrap(), va.add(&vb));
        assert!(ord(&v, &Func::T(a.add(&b))).unwrap() >= va.clone().min(vb));
    }
}

#[test]
fn divisorial_valuations_match_shift_oracle() {
    let f = gf(5);
    let mut r = rng(2);
    for k in 0..1000 {
        let (a_, c_) = ((k % 5) as u32, (k / 5 % 5) as u32);
        let v = Valuation::divisorial(line_ya(&f, a_, c_)).unwrap();
        let (a, b) = nonzero_pair(&f, &mut r, 3);
        // bias toward actual vanishing along the line
        let ell = RatFunc2::poly(line_ya(&f, a_, c_).equation().clone());
        let a = a.mul(&ell.pow(r.gen_range(-2..=2)));
        let va = ord(&v, &Func::XY(a.clone())).unwrap();
        let vb = ord(&v, &Func::XY(b.clone())).unwrap();
        assert_eq!(va.0[0], oracle_line_order(&a, a_, c_));
        assert_eq!(ord(&v, &Func::XY(a.mul(&b))).unwrap(), va.add(&vb));
        if !a.add(&b).is_zero() {
            assert!(ord(&v, &Func::XY(a.add(&b))).unwrap() >= va.clone().min(vb));
        }
    }
}

#[test]
fn valuations_along_other_curves_are_valuations() {
    let f = gf(5);
    let mut r = rng(3);
    let curves = vec![
        PlaneCurve::infinity(&f),
        PlaneCurve::affine(&BPoly::from_terms(&f, &[(2, 0, 1), (0, 2, 1), (0, 0, 2)])).unwrap(),
        PlaneCurve::affine(&BPoly::from_x(&upoly(&f, &[2, 0, 1]))).unwrap(),
    ];
    for k in 0..600 {
        let c = &curves[k % 3];
        let v = Valuation::divisorial(c.clone()).unwrap();
        let (a, b) = nonzero_pair(&f, &mut r, 3);
        let eq = if c.is_infinity() {
            RatFunc2::x(&f).inv()
        } else {
            RatFunc2::poly(c.equation().clone())
        };
        let a = a.mul(&eq.pow(r.gen_range(-2..=2)));
        let va = ord(&v, &Func::XY(a.clone())).unwrap();
        let vb = ord(&v, &Func::XY(b.clone())).unwrap();
        assert_eq!(ord(&v, &Func::XY(a.mul(&b))).unwrap(), va.add(&vb));
        if !a.add(&b).is_zero() {
            assert!(ord(&v, &Func::XY(a.add(&b))).unwrap() >= va.clone().min(vb));
        }
        if c.is_infinity() {
            // homogeneous degree difference
            assert_eq!(va.0[0], a.den().total_deg() - a.num().total_deg());
        }
    }
}

#[test]
fn flag_valuations_match_shift_oracle() {
    let f = gf(5);
    let mut r = rng(4);
    for k in 0..1000 {
        let (a_, c_, px) = ((k % 5) as u32, (k / 5 % 5) as u32, (k / 25 % 5) as u32);
        let py = f.add(f.mul(a_, px), c_);
        let v = Valuation::flag(line_ya(&f, a_, c_), (px, py)).unwrap();
        let (a, b) = nonzero_pair(&f, &mut r, 3);
        let ell = RatFunc2::poly(line_ya(&f, a_, c_).equation().clone());
        let xp = x(&f).sub(&c2(&f, px));
        let a = a.mul(&ell.pow(r.gen_range(-1..=2))).mul(&xp.pow(r.gen_range(-1..=2)));
        let va = ord(&v, &Func::XY(a.clone())).unwrap();
        let vb = ord(&v, &Func::XY(b.clone())).unwrap();
        let (o1, o2) = oracle_flag_order(&a, a_, c_, px);
        assert_eq!(va.0, vec![o1, o2]);
        assert_eq!(ord(&v, &Func::XY(a.mul(&b))).unwrap(), va.add(&vb));
        if !a.add(&b).is_zero() {
            assert!(ord(&v, &Func::XY(a.add(&b))).unwrap() >= va.clone().min(vb));
        }
    }
}

#[test]
fn residue_examples() {
    let f = gf(3);
    let (xs, ys) = (x(&f), y(&f));
    let on_y0 = Valuation::divisorial(line(&f, 0, 1, 0)).unwrap();
    let on_x0 = Valuation::divisorial(line(&f, 1, 0, 0)).unwrap();
    assert!(!residue(&on_y0, &xs, &ys).unwrap().is_trivial());
    assert!(residue(&on_x0, &ys, &ys.add(&c2(&f, 1))).unwrap().is_trivial());
    assert_eq!(residue(&on_x0, &xs.mul(&ys), &xs).unwrap(), Residue::Nontrivial("y".into()));
    let pt = Valuation::Point(ClosedPoint::Infinity);
    assert_eq!(residue(&pt, &xs, &ys), Err(ValError::NotDivisorial));
}

#[test]
fn residue_is_bilinear_and_alternating_up_to_constants() {
    let f = gf(7);
    let mut r = rng(5);
    let v = Valuation::divisorial(line_ya(&f, 2, 3)).unwrap();
    let ell = RatFunc2::poly(line_ya(&f, 2, 3).equation().clone());
    for _ in 0..60 {
        let (a, b) = nonzero_pair(&f, &mut r, 2);
        let a = a.mul(&ell.pow(r.gen_range(-1..=2)));
        let b = b.mul(&ell.pow(r.gen_range(-1..=2)));
        // rho(a, a) is trivial up to sign
        assert!(residue(&v, &a, &a).unwrap().is_trivial());
        // rho(a, b) rho(b, a) = 1
        let ab = residue(&v, &a, &b).unwrap();
        let ba = residue(&v, &b, &a).unwrap();
        assert_eq!(ab.is_trivial(), ba.is_trivial());
    }
}

#[test]
fn sweep_examples() {
    let f = gf(7);
    let (xs, ys) = (x(&f), y(&f));
    assert!(residues_vanish_all(&xs, &xs.add(&c2(&f, 1))).unwrap().vanish);
    let s = residues_vanish_all(&xs, &ys).unwrap();
    assert!(!s.vanish);
    let (curve, _) = s.witness.unwrap();
    assert!(curve == "x" || curve == "y" || curve == "z");
    assert!(residues_vanish_all(&xs.pow(2), &xs.pow(3)).unwrap().vanish);
}

fn rand_in_k_of(h: &RatFunc2, f: &Gf, r: &mut ChaCha8Rng) -> RatFunc2 {
    // random P(h)/Q(h), nonconstant
    loop {
        let num = rand_upoly(f, r.gen_range(0..=2), r);
        let den = rand_upoly(f, r.gen_range(0..=2), r);
        let eval = |u: &UPoly| {
            u.coeffs().iter().rev().fold(RatFunc2::constant(f, 0), |acc, &c| acc.mul(h).add(&c2(f, c)))
        };
        let g = eval(&num).div(&eval(&den));
        if !g.is_constant() {
            return g;
        }
    }
}

#[test]
fn functions_of_one_generator_have_vanishing_residues() {
    let f = gf(7);
    let mut r = rng(6);
    let gens = [
        x(&f),
        y(&f).sub(&x(&f).pow(2)),
        x(&f).mul(&y(&f)),
        y(&f).div(&x(&f).add(&c2(&f, 1))),
    ];
    for k in 0..40 {
        let h = &gens[k % gens.len()];
        let a = rand_in_k_of(h, &f, &mut r);
        let b = rand_in_k_of(h, &f, &mut r);
        let s = residues_vanish_all(&a, &b).unwrap();
        assert!(s.vanish, "{:?} {:?} witness {:?}", a, b, s.witness);
    }
}

#[test]
fn independent_pairs_have_a_witness() {
    let f = gf(7);
    let mut r = rng(7);
    for _ in 0..20 {
        let a = rand_in_k_of(&x(&f), &f, &mut r);
        let b = rand_in_k_of(&y(&f), &f, &mut r);
        assert!(!residues_vanish_all(&a, &b).unwrap().vanish);
    }
}

#[test]
fn incompatible_pair_splits_the_group() {
    // f = (1 + m) u with ord_x(m) > 0 and ord_y(u) = 0 on a sample
    let f = gf(5);
    let (xs, ys) = (x(&f), y(&f));
    let vx = Valuation::divisorial(line(&f, 1, 0, 0)).unwrap();
    let vy = Valuation::divisorial(line(&f, 0, 1, 0)).unwrap();
    assert!(!compatible(&vx, &vy).unwrap());
    let mut r = rng(8);
    for _ in 0..50 {
        let s = rand_ratfunc2(&f, 2, &mut r).mul(&xs.pow(r.gen_range(-2..=2))).mul(&ys.pow(r.gen_range(-2..=2)));
        if s.is_zero() {
            continue;
        }
        let k = ord(&vy, &Func::XY(s.clone())).unwrap().0[0];
        let mx = ord(&vx, &Func::XY(s.clone())).unwrap().0[0];
        let n = 2 + k.abs() + mx.abs();
        // e = x^n / (x^n + y^n), 1 + m = 1 + e (y^k - 1)
        let xn = xs.pow(n);
        let e = xn.div(&xn.add(&ys.pow(n)));
        let m = e.mul(&ys.pow(k).sub(&c2(&f, 1)));
        let one_m = c2(&f, 1).add(&m);
        let u = s.div(&one_m);
        if !m.is_zero() {
            assert!(ord(&vx, &Func::XY(m)).unwrap().0[0] > 0);
        }
        assert_eq!(ord(&vy, &Func::XY(u)).unwrap().0[0], 0);
    }
}

fn span_xy(_f: &Gf, gens: Vec<RatFunc2>) -> FunctionSpan {
    FunctionSpan::new(gens.into_iter().map(Func::XY).collect()).unwrap()
}

#[test]
fn c_pairs_of_valuation_maps_come_from_compatible_valuations() {
    let f = gf(3);
    let (xs, ys) = (x(&f), y(&f));
    let span = span_xy(&f, vec![c2(&f, 1), xs.clone(), ys.clone(), xs.mul(&ys)]);
    let mut vals = Vec::new();
    for (a, c) in [(0, 0), (1, 0), (0, 1), (2, 2)] {
        let l = line_ya(&f, a, c);
        vals.push(Valuation::divisorial(l.clone()).unwrap());
        for px in 0..3 {
            vals.push(Valuation::flag(l.clone(), (px, f.add(f.mul(a, px), c))).unwrap());
        }
    }
    vals.push(Valuation::divisorial(line(&f, 1, 0, 0)).unwrap());
    let mut seen_pairs = 0;
    for (i, v1) in vals.iter().enumerate() {
        for v2 in &vals[i + 1..] {
            // the last component of each is a flag map
            let a1 = span.component_maps(v1, ZL).unwrap().pop().unwrap();
            let a2 = span.component_maps(v2, ZL).unwrap().pop().unwrap();
            assert!(is_flag_map(&a1) && is_flag_map(&a2));
            if is_c_pair(&a1, &a2).unwrap().holds {
                seen_pairs += 1;
                assert!(compatible(v1, v2).unwrap(), "{} vs {}", v1.render(), v2.render());
            }
        }
    }
    // divisorial with the first component of its own flags
    for (i, v) in vals.iter().enumerate() {
        if let Valuation::Flag { curve, .. } = v {
            let d = Valuation::divisorial(curve.clone()).unwrap();
            let maps = span.component_maps(v, ZL).unwrap();
            let dm = span.component_maps(&d, ZL).unwrap().remove(0);
            assert!(is_c_pair(&maps[1], &dm).unwrap().holds, "flag {i}");
            assert!(compatible(v, &d).unwrap());
        }
    }
    let _ = seen_pairs;
}

#[test]
fn order_examples() {
    let f = gf(3);
    let tt = t(&f);
    let span = FunctionSpan::new(vec![Func::T(c1(&f, 1)), Func::T(tt.clone()), Func::T(tt.mul(&tt))]).unwrap();
    let v = Valuation::Point(ClosedPoint::rational(&f, 0));
    let alpha = span.component_maps(&v, ZL).unwrap().remove(0);
    let prod = |a: &[u32], b: &[u32]| span.product(a, b);
    let o = order_from_flagmap(&alpha, Some(&prod)).unwrap();
    assert!(o.violations.is_empty() && o.product_violations.is_empty());
    let idx = |c: Vec<u32>| span.domain().index().of(&c).unwrap();
    assert!(o.greater(idx(vec![0, 0, 1]), idx(vec![0, 1, 0])));
    assert!(o.greater(idx(vec![0, 1, 0]), idx(vec![1, 0, 0])));
    assert_eq!(o.classes.len(), 3);

    let konst = HomogeneousMap::new(span.domain().clone(), ZL, vec![4; 13]).unwrap();
    let o = order_from_flagmap(&konst, None).unwrap();
    assert_eq!(o.classes.len(), 1);

    let b = span.component_maps(&Valuation::Point(ClosedPoint::rational(&f, 1)), ZL).unwrap().remove(0);
    assert_eq!(order_from_flagmap(&alpha.combination(1, &b, 1), None), Err(ValError::NotFlag));
}

#[test]
fn order_matches_first_component_on_xy() {
    let f = gf(3);
    let v = Valuation::flag(line(&f, 1, 0, 0), (0, 0)).unwrap();
    let span = span_xy(&f, vec![x(&f), y(&f)]);
    let maps = span.component_maps(&v, ZL).unwrap();
    let o = order_from_flagmap(&maps[0], None).unwrap();
    let vals = span.values(&v).unwrap();
    for i in 0..vals.len() {
        for j in 0..vals.len() {
            assert_eq!(o.greater(i, j), vals[i].0[0] > vals[j].0[0]);
        }
    }
}

#[test]
fn decomposition_examples() {
    let f = gf(3);
    let (xs, ys) = (x(&f), y(&f));
    let span = span_xy(&f, vec![c2(&f, 1), xs.clone(), ys.clone()]);
    let cx = line(&f, 1, 0, 0);
    let fl = Valuation::flag(cx.clone(), (0, 0)).unwrap();
    let dv = Valuation::divisorial(cx).unwrap();
    let pr2 = span.component_maps(&fl, ZL).unwrap().remove(1);
    assert!(decomposition_respects(&pr2, &dv, &span).unwrap());
    let ordc = span.component_maps(&dv, ZL).unwrap().remove(0);
    assert!(decomposition_respects(&ordc, &dv, &span).unwrap());

    let tt = t(&f);
    let tspan = FunctionSpan::new(vec![Func::T(c1(&f, 1)), Func::T(tt)]).unwrap();
    let at1 = tspan.component_maps(&Valuation::Point(ClosedPoint::rational(&f, 1)), ZL).unwrap().remove(0);
    let at0 = Valuation::Point(ClosedPoint::rational(&f, 0));
    assert!(!decomposition_respects(&at1, &at0, &tspan).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flag_order_reproduces_valuation_order(
        seed in 0u64..10_000, dim in 1usize..=3, kind in 0usize..3,
    ) {
        let f = gf(3);
        let mut r = rng(seed);
        let (v, gens): (Valuation, Vec<Func>) = match kind {
            0 => {
                let p = ClosedPoint::rational(&f, r.gen_range(0..3));
                (Valuation::Point(p), (0..dim).map(|_| Func::T(rand_ratfunc(&f, 2, &mut r))).collect())
            }
            1 => {
                let l = line_ya(&f, r.gen_range(0..3), r.gen_range(0..3));
                (Valuation::divisorial(l).unwrap(), (0..dim).map(|_| Func::XY(rand_ratfunc2(&f, 2, &mut r))).collect())
            }
            _ => {
                let (a, c, px) = (r.gen_range(0..3), r.gen_range(0..3), r.gen_range(0..3));
                let l = line_ya(&f, a, c);
                let v = Valuation::flag(l, (px, f.add(f.mul(a, px), c))).unwrap();
                (v, (0..dim).map(|_| Func::XY(rand_ratfunc2(&f, 2, &mut r))).collect())
            }
        };
        let Ok(span) = FunctionSpan::new(gens) else { return Ok(()) };
        let vals = span.values(&v).unwrap();
        // weights making the map injective on the values seen
        let alpha = span.weighted_map(&v, ZL, &[20, 1]).unwrap();
        let o = order_from_flagmap(&alpha, None).unwrap();
        prop_assert!(o.violations.is_empty());
        for i in 0..vals.len() {
            for j in 0..vals.len() {
                prop_assert_eq!(o.greater(i, j), vals[i] > vals[j]);
            }
        }
    }
}

#[test]
fn ratfunc_helpers_are_consistent() {
    let f = gf(5);
    let r = RatFunc::new(upoly(&f, &[1, 1]), upoly(&f, &[0, 1]));
    assert_eq!(r.num().coeffs(), &[1, 1]);
}
