//! Seeded instance generators. Output depends only on the generator
//! parameters, never on thread count or wall clock.

use anyhow::{bail, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use gfl_core::curvegal::{inertia_generator, CurveGaloisElem, PointCode};
use gfl_core::ffcore::Gf;
use gfl_core::flagmap::Ring;
use gfl_core::poly::{monic_irreducibles, BPoly, ClosedPoint, PlaneCurve, RatFunc2};
use gfl_core::projgeom::{hall_plane9, pg};
use gfl_core::valuation::{Func, FunctionSpan, Valuation};

use crate::instance::{Instance, Kind};
use crate::wire::{CurveWire, ElemWire, FuncWire, Rat2, ValuationWire};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    /// Component maps of a lexicographic valuation on a random span.
    FlagmapCpair,
    /// A class-zero l-adic divisor on the plane.
    Ladic,
    /// A Galois element of the line with prescribed support size.
    CurveIota,
    /// Planted conformal-constant data for two lines.
    CcMatch,
    /// The incidence structure of PG(n, q).
    Pg,
    /// The Hall plane of order 9.
    Hall,
}

/// Generator parameters; unset fields take per-kind defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub p: Option<u32>,
    pub ell: Option<u32>,
    pub m: Option<u32>,
    pub size: Option<usize>,
    pub q: Option<u32>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate(kind: GenKind, g: GenParams) -> Result<Instance> {
    let inst = match kind {
        GenKind::FlagmapCpair => flagmap_cpair(g)?,
        GenKind::Ladic => ladic(g)?,
        GenKind::CurveIota => curve_iota(g)?,
        GenKind::CcMatch => cc_match(g)?,
        GenKind::Pg => pg_dump(g)?,
        GenKind::Hall => Instance {
            kind: Kind::Projgeom,
            p: None,
            ell: None,
            m: None,
            seed: None,
            payload: json!({ "structure": hall_plane9() }),
        },
    };
    inst.validate()?;
    Ok(inst)
}

fn gf(p: u32) -> Result<Gf> {
    Ok(Gf::prime(p)?)
}

/// The line y = a x + c.
pub fn graph_line(f: &Gf, a: u32, c: u32) -> PlaneCurve {
    PlaneCurve::affine(&BPoly::linear(f, f.neg(a), 1, f.neg(c))).expect("a line is a curve")
}

fn flagmap_cpair(g: GenParams) -> Result<Instance> {
    let p = g.p.unwrap_or(3);
    let ell = g.ell.unwrap_or(5);
    let f = gf(p)?;
    let mut r = rng(g.seed);
    let m = g.m.unwrap_or_else(|| r.gen_range(1..=3));
    let dim = g.size.unwrap_or_else(|| r.gen_range(2..=3));
    if !(1..=4).contains(&dim) {
        bail!("span dimension must be between 1 and 4");
    }
    let (a, c, px) = (r.gen_range(0..p), r.gen_range(0..p), r.gen_range(0..p));
    let curve = graph_line(&f, a, c);
    let point = (px, f.add(f.mul(a, px), c));
    let v = Valuation::flag(curve.clone(), point)?;
    let (xs, ys) = (RatFunc2::x(&f), RatFunc2::y(&f));
    let (span, funcs) = loop {
        let funcs: Vec<RatFunc2> = (0..dim)
            .map(|_| {
                let (i, j) = (r.gen_range(0..3), r.gen_range(0..3));
                let (k, s) = (r.gen_range(0..p), r.gen_range(0..p));
                xs.pow(i).mul(&ys.pow(j)).add(&RatFunc2::constant(&f, k)).add(&xs.scale(s))
            })
            .collect();
        if let Ok(span) = FunctionSpan::new(funcs.iter().cloned().map(Func::XY).collect()) {
            break (span, funcs);
        }
    };
    let maps = span.component_maps(&v, Ring::Zl { ell, m })?;
    let tables: Vec<Value> = maps.iter().map(|mu| json!(mu.table())).collect();
    Ok(Instance {
        kind: Kind::Flagmap,
        p: Some(p),
        ell: Some(ell),
        m: Some(m),
        seed: Some(g.seed),
        payload: json!({
            "dim": dim,
            "maps": tables,
            "source": {
                "valuation": ValuationWire::Flag { curve: CurveWire::of(&curve), point },
                "functions": funcs.iter().map(|h| FuncWire::Xy(Rat2::of(h))).collect::<Vec<_>>(),
            },
        }),
    })
}

/// Irreducible curves available to the divisor generator: the line at
/// infinity, six lines, and four curves of degree 2 and 3.
pub fn curve_pool(f: &Gf) -> Vec<PlaneCurve> {
    let aff = |t: &[(usize, usize, u32)]| PlaneCurve::affine(&BPoly::from_terms(f, t)).expect("nonzero");
    let mut v = vec![PlaneCurve::infinity(f)];
    for (a, b, c) in [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 1), (0, 1, 2), (2, 1, 3)] {
        v.push(aff(&[(1, 0, a % f.q()), (0, 1, b % f.q()), (0, 0, c % f.q())]));
    }
    v.push(aff(&[(0, 1, 1), (2, 0, f.neg(1))]));
    v.push(aff(&[(1, 1, 1), (0, 0, 1)]));
    v.push(aff(&[(2, 0, 1), (0, 2, 1), (0, 0, 1)]));
    v.push(aff(&[(0, 2, 1), (3, 0, f.neg(1)), (0, 0, f.neg(1))]));
    v
}

fn ladic(g: GenParams) -> Result<Instance> {
    let p = g.p.unwrap_or(5);
    let ell = g.ell.unwrap_or(3);
    let m = g.m.unwrap_or(3);
    let k = g.size.unwrap_or(4);
    let f = gf(p)?;
    let pool = curve_pool(&f);
    if !(2..=pool.len()).contains(&k) {
        bail!("support size must be between 2 and {}", pool.len());
    }
    let n = (ell as i64).pow(m);
    let mut r = rng(g.seed);
    // two affine lines: one absorbs the class, so the divisor stays decomposable
    let mut curves = vec![pool[1].clone(), pool[2].clone()];
    let rest: Vec<PlaneCurve> = pool.iter().enumerate().filter(|(i, _)| *i != 1 && *i != 2).map(|(_, c)| c.clone()).collect();
    curves.extend(rest.choose_multiple(&mut r, k - 2).cloned());
    curves.shuffle(&mut r);
    let fix = curves.iter().position(|c| c.degree() == 1 && !c.is_infinity()).expect("a line is present");
    let coeffs = loop {
        let mut coeffs: Vec<i64> = (0..k).map(|_| r.gen_range(1..n)).collect();
        let cls: i64 = (0..k).filter(|&i| i != fix).map(|i| coeffs[i] * curves[i].degree() as i64).sum();
        coeffs[fix] = (-cls).rem_euclid(n);
        if coeffs[fix] != 0 {
            break coeffs;
        }
    };
    let divisor: Vec<(CurveWire, i64)> = curves.iter().map(CurveWire::of).zip(coeffs).collect();
    Ok(Instance {
        kind: Kind::Ladic,
        p: Some(p),
        ell: Some(ell),
        m: Some(m),
        seed: Some(g.seed),
        payload: json!({ "divisor": divisor }),
    })
}

/// Infinity, the rational points, then the monic irreducible quadratics.
pub fn small_points(f: &Gf) -> Vec<ClosedPoint> {
    let mut v = vec![ClosedPoint::Infinity];
    v.extend(f.elements().map(|a| ClosedPoint::rational(f, a)));
    v.extend(monic_irreducibles(f, 2).into_iter().map(ClosedPoint::Finite));
    v
}

fn curve_iota(g: GenParams) -> Result<Instance> {
    let p = g.p.unwrap_or(5);
    let ell = g.ell.unwrap_or(3);
    let m = g.m.unwrap_or(1);
    let k = g.size.unwrap_or(6);
    let f = gf(p)?;
    let pts = small_points(&f);
    if k > pts.len() {
        bail!("support size must be at most {}", pts.len());
    }
    let n = (ell as i64).pow(m);
    let mut r = rng(g.seed);
    let ex: Vec<(ClosedPoint, i64)> = pts.choose_multiple(&mut r, k).map(|q| (q.clone(), r.gen_range(1..n))).collect();
    let iota = CurveGaloisElem::new(&f, ell as i64, m, 0, ex)?;
    Ok(Instance {
        kind: Kind::Curve,
        p: Some(p),
        ell: Some(ell),
        m: Some(m),
        seed: Some(g.seed),
        payload: json!({ "element": ElemWire::of(&iota), "s": 2 }),
    })
}

/// One side of conformal matching data. The second side carries the images
/// of the first side's generators and the declared bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcSide {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub points: Vec<PointCode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<ElemWire>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bijection: Option<Vec<usize>>,
}

fn cc_match(g: GenParams) -> Result<Instance> {
    let ell = g.ell.unwrap_or(3);
    let m = g.m.unwrap_or(2);
    let (pa, pb) = match g.p {
        Some(p) => (p, p),
        None => (5, 7),
    };
    let (fa, fb) = (gf(pa)?, gf(pb)?);
    let mut r = rng(g.seed);
    let n = (ell as i64).pow(m);
    let unit = loop {
        let u = r.gen_range(1..n);
        if u % ell as i64 != 0 {
            break u;
        }
    };
    let room = small_points(&fa).len().min(small_points(&fb).len());
    let k = g.size.unwrap_or_else(|| r.gen_range(3..=6));
    if k == 0 || k > room {
        bail!("point count must be between 1 and {room}");
    }
    let a_pts: Vec<ClosedPoint> = small_points(&fa).choose_multiple(&mut r, k).cloned().collect();
    let b_pts: Vec<ClosedPoint> = small_points(&fb).choose_multiple(&mut r, k).cloned().collect();
    let mut bijection: Vec<usize> = (0..k).collect();
    bijection.shuffle(&mut r);
    let images = (0..k)
        .map(|i| {
            let d = inertia_generator(&fb, ell as i64, m, &b_pts[bijection[i]])?;
            Ok(ElemWire::of(&d.scale(unit).shift(r.gen_range(0..n))))
        })
        .collect::<Result<Vec<_>>>()?;
    let side_a = CcSide { p: Some(pa), points: a_pts.iter().map(PointCode::of).collect(), images: None, bijection: None };
    let side_b = CcSide {
        p: Some(pb),
        points: b_pts.iter().map(PointCode::of).collect(),
        images: Some(images),
        bijection: Some(bijection),
    };
    Ok(Instance {
        kind: Kind::Curve,
        p: None,
        ell: Some(ell),
        m: Some(m),
        seed: Some(g.seed),
        payload: json!({ "a": side_a, "b": side_b, "planted": unit }),
    })
}

fn pg_dump(g: GenParams) -> Result<Instance> {
    let q = g.q.or(g.p).unwrap_or(3);
    let n = g.size.unwrap_or(2);
    let st = pg(n, q)?;
    Ok(Instance {
        kind: Kind::Projgeom,
        p: None,
        ell: None,
        m: None,
        seed: None,
        payload: json!({ "structure": st, "q": q, "dim": n }),
    })
}
