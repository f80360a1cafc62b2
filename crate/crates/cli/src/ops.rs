//! One function per subcommand: instance in, [`Outcome`] out. A property
//! that is checked and found false is an outcome with `holds = false`;
//! malformed or out-of-contract input is an error.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use gfl_core::curvegal::{
    cc_match, cu_separator, genus_detect, kummer_pairing, principal_divisor, verify_separation, CurveData,
    CurveError, CurveGaloisData,
};
use gfl_core::ffcore::{Gf, VecSpace, Vector};
use gfl_core::flagmap::{
    find_flag, find_flag_combination, first_non_flag_line, is_c_pair, is_flag_map, maximal_cpair_cliques, Domain,
    HomogeneousMap, Ring,
};
use gfl_core::ladicdiv::{class_map, dd_decompose, gff_subfield, LadicDivisor, LadicError, LadicFunction};
use gfl_core::projgeom::{
    check_axioms, check_pappus, check_partial, check_partial_in, coordinatize, decompose, is_generating,
    is_generating2, rebuild, IncidenceStructure, PartialStructure, ProjError,
};
use gfl_core::valuation::{
    compatible, ord, order_from_flagmap, residue, residues_vanish_all, FunctionSpan, ValError,
};

use crate::gen::CcSide;
use crate::instance::{Instance, Kind};
use crate::wire::{ell_adic, point, CurveWire, ElemWire, FuncWire, Rat, Rat2, ValuationWire};

/// Result of one operation, before it is wrapped into a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub holds: bool,
    pub result: Value,
    pub witnesses: Value,
}

impl Outcome {
    fn ok(result: Value) -> Outcome {
        Outcome { holds: true, result, witnesses: Value::Null }
    }
    fn new(holds: bool, result: Value, witnesses: Value) -> Outcome {
        Outcome { holds, result, witnesses }
    }
}

// ---- flagmap ----

#[derive(Deserialize)]
struct MapsPayload {
    dim: usize,
    maps: Vec<Vec<(Vector, i64)>>,
}

fn ring_of(inst: &Instance) -> Ring {
    match (inst.ell, inst.m) {
        (Some(ell), Some(m)) => Ring::Zl { ell, m },
        _ => Ring::Z,
    }
}

fn load_maps(inst: &Instance) -> Result<Vec<HomogeneousMap>> {
    inst.expect(Kind::Flagmap)?;
    let pl: MapsPayload = inst.payload()?;
    let d = Domain::new(&VecSpace::new(inst.field()?, pl.dim)?);
    let ring = ring_of(inst);
    pl.maps.iter().map(|t| Ok(HomogeneousMap::from_table(d.clone(), ring, t)?)).collect()
}

pub fn flagmap_check(inst: &Instance) -> Result<Outcome> {
    let maps = load_maps(inst)?;
    if maps.is_empty() {
        bail!("no maps given");
    }
    let mut per_map = Vec::new();
    let mut bad = Vec::new();
    for mu in &maps {
        let whole = mu.domain().space().whole();
        let flag = find_flag(mu, &whole);
        if flag.is_none() {
            bad.push(json!(first_non_flag_line(mu)));
        }
        per_map.push(json!({ "is_flag_map": is_flag_map(mu), "flag": flag.map(|f| f.chain) }));
    }
    let holds = bad.is_empty();
    let result = if per_map.len() == 1 { per_map.remove(0) } else { json!({ "is_flag_map": holds, "maps": per_map }) };
    Ok(Outcome::new(holds, result, json!({ "non_flag_lines": bad })))
}

pub fn flagmap_find_combo(inst: &Instance) -> Result<Outcome> {
    let maps = load_maps(inst)?;
    let [a, b] = maps.as_slice() else { bail!("find-combo needs exactly two maps") };
    let pair = is_c_pair(a, b)?;
    let out = find_flag_combination(a, b)?;
    let result = json!({ "c_pair": pair.holds, "witness": out.witness });
    let witnesses = json!({ "certificate": out.certificate, "planes": pair.witnesses });
    Ok(Outcome::new(out.witness.is_some(), result, witnesses))
}

pub fn flagmap_cliques(inst: &Instance) -> Result<Outcome> {
    let maps = load_maps(inst)?;
    Ok(Outcome::ok(json!({ "cliques": maximal_cpair_cliques(&maps)? })))
}

// ---- valuation ----

#[derive(Deserialize)]
struct OrdPayload {
    valuation: ValuationWire,
    function: FuncWire,
}

pub fn val_ord(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Valuation)?;
    let f = inst.field()?;
    let pl: OrdPayload = inst.payload()?;
    let v = pl.valuation.decode(&f)?;
    let g = pl.function.decode(&f)?;
    Ok(Outcome::ok(json!({ "valuation": v.render(), "function": g.render(), "value": ord(&v, &g)?.0 })))
}

#[derive(Deserialize)]
struct ResiduePayload {
    #[serde(default)]
    valuation: Option<ValuationWire>,
    f: Rat2,
    g: Rat2,
}

pub fn val_residue(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Valuation)?;
    let fld = inst.field()?;
    let pl: ResiduePayload = inst.payload()?;
    let (f, g) = (pl.f.decode(&fld)?, pl.g.decode(&fld)?);
    match pl.valuation {
        Some(vw) => {
            let v = vw.decode(&fld)?;
            let r = residue(&v, &f, &g)?;
            Ok(Outcome::new(r.is_trivial(), json!({ "valuation": v.render(), "residue": r }), Value::Null))
        }
        None => {
            let s = residues_vanish_all(&f, &g)?;
            Ok(Outcome::new(
                s.vanish,
                json!({ "vanish": s.vanish, "checked": s.checked }),
                json!({ "nontrivial": s.witness }),
            ))
        }
    }
}

#[derive(Deserialize)]
struct OrderPayload {
    valuation: ValuationWire,
    functions: Vec<FuncWire>,
    #[serde(default)]
    weights: Option<Vec<i64>>,
}

/// Weights used to fold a rank-2 value into one integer when none are given.
pub const DEFAULT_WEIGHTS: [i64; 2] = [20, 1];

pub fn val_order_from_flag(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Valuation)?;
    let f = inst.field()?;
    let pl: OrderPayload = inst.payload()?;
    let v = pl.valuation.decode(&f)?;
    let funcs = pl.functions.iter().map(|w| w.decode(&f)).collect::<Result<Vec<_>>>()?;
    let span = FunctionSpan::new(funcs)?;
    let w = pl.weights.unwrap_or_else(|| DEFAULT_WEIGHTS[2 - v.rank()..].to_vec());
    let alpha = span.weighted_map(&v, ring_of(inst), &w)?;
    let prod = |a: &[u32], b: &[u32]| span.product(a, b);
    let order = match order_from_flagmap(&alpha, Some(&prod)) {
        Ok(o) => o,
        Err(ValError::NotFlag) => {
            return Ok(Outcome::new(false, json!({ "is_flag_map": false }), json!({ "line": first_non_flag_line(&alpha) })))
        }
        Err(e) => return Err(e.into()),
    };
    let vals = span.values(&v)?;
    let mut mismatches = Vec::new();
    for i in 0..vals.len() {
        for j in 0..vals.len() {
            if order.greater(i, j) != (vals[i] > vals[j]) {
                mismatches.push((i, j));
            }
        }
    }
    let holds = mismatches.is_empty() && order.violations.is_empty() && order.product_violations.is_empty();
    let points: Vec<&Vector> = (0..span.domain().len()).map(|i| span.domain().point(i)).collect();
    Ok(Outcome::new(
        holds,
        json!({ "points": points, "classes": order.classes, "agrees_with_valuation": mismatches.is_empty() }),
        json!({
            "violations": order.violations,
            "product_violations": order.product_violations,
            "mismatches": mismatches,
        }),
    ))
}

#[derive(Deserialize)]
struct CompatPayload {
    valuations: (ValuationWire, ValuationWire),
}

pub fn val_compatible(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Valuation)?;
    let f = inst.field()?;
    let pl: CompatPayload = inst.payload()?;
    let (a, b) = (pl.valuations.0.decode(&f)?, pl.valuations.1.decode(&f)?);
    let c = compatible(&a, &b)?;
    Ok(Outcome::new(c, json!({ "compatible": c, "valuations": [a.render(), b.render()] }), Value::Null))
}

// ---- curve ----

fn level(inst: &Instance) -> Result<(i64, u32)> {
    let (ell, m) = inst.level()?;
    Ok((ell as i64, m))
}

#[derive(Deserialize)]
struct DivPayload {
    function: Rat,
}

pub fn curve_div(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Curve)?;
    let f = inst.field()?;
    let pl: DivPayload = inst.payload()?;
    let d = principal_divisor(&pl.function.decode(&f)?)?;
    Ok(Outcome::ok(json!({ "divisor": d.codes(), "degree": d.degree(), "render": d.render() })))
}

#[derive(Deserialize)]
struct PairPayload {
    element: ElemWire,
    function: Rat,
}

pub fn curve_pair(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Curve)?;
    let f = inst.field()?;
    let (ell, m) = level(inst)?;
    let pl: PairPayload = inst.payload()?;
    let mu = pl.element.decode(&f, ell, m)?;
    let v = kummer_pairing(&mu, &pl.function.decode(&f)?)?;
    Ok(Outcome::ok(json!({ "pairing": v, "modulus": mu.modulus() })))
}

#[derive(Deserialize)]
struct SepPayload {
    element: ElemWire,
    #[serde(default = "two")]
    s: usize,
}

fn two() -> usize {
    2
}

pub fn curve_separator(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Curve)?;
    let f = inst.field()?;
    let (ell, m) = level(inst)?;
    let pl: SepPayload = inst.payload()?;
    let iota = pl.element.decode(&f, ell, m)?;
    let sep = match cu_separator(&iota, pl.s) {
        Ok(s) => s,
        Err(CurveError::NotSeparating(sub)) => {
            let size = gfl_core::curvegal::support_size(&iota);
            return Ok(Outcome::new(false, json!({ "separates": false, "support_size": size }), json!({ "subset": sub })));
        }
        Err(e) => return Err(e.into()),
    };
    let rechecked = verify_separation(&sep, pl.s, iota.modulus()).is_ok();
    Ok(Outcome::new(
        rechecked,
        json!({
            "separates": rechecked,
            "support_size": gfl_core::curvegal::support_size(&iota),
            "case": sep.case,
            "points": sep.points.iter().map(gfl_core::curvegal::PointCode::of).collect::<Vec<_>>(),
            "base": sep.base,
            "functions": sep.functions.iter().map(Rat::of).collect::<Vec<_>>(),
            "subsets_checked": sep.subsets_checked,
        }),
        json!({ "psi_iota": sep.psi_iota, "psi_delta": sep.psi_delta }),
    ))
}

#[derive(Deserialize)]
struct GenusPayload {
    #[serde(default)]
    genus: Option<u32>,
    #[serde(default)]
    candidates: Vec<Rat>,
}

pub fn curve_genus(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Curve)?;
    let pl: GenusPayload = inst.payload()?;
    let data = match pl.genus {
        Some(genus) => CurveGaloisData::Symbolic { genus },
        None => {
            let f = inst.field()?;
            let (ell, m) = level(inst)?;
            let candidates = pl.candidates.iter().map(|c| c.decode(&f)).collect::<Result<Vec<_>>>()?;
            CurveGaloisData::Line { field: f, ell, m, candidates }
        }
    };
    let rep = genus_detect(&data)?;
    Ok(Outcome::ok(json!(rep)))
}

#[derive(Deserialize)]
struct CcPayload {
    a: CcSide,
    b: CcSide,
}

fn side_data(side: &CcSide, p: Option<u32>, ell: i64, m: u32) -> Result<CurveData> {
    let f = Gf::prime(side.p.or(p).context("side needs p")?)?;
    let points = side.points.iter().map(|c| point(&f, c)).collect::<Result<Vec<_>>>()?;
    Ok(CurveData { field: f, ell, m, points })
}

/// Conformal matching from a combined instance (`a` and `b` in the payload).
pub fn curve_cc_match(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Curve)?;
    let pl: CcPayload = inst.payload()?;
    cc_sides(&pl.a, inst.p, &pl.b, inst.p, level(inst)?)
}

/// Conformal matching from two instances, one per curve. The level is read
/// from the second.
pub fn curve_cc_match_files(a: &Instance, b: &Instance) -> Result<Outcome> {
    a.expect(Kind::Curve)?;
    b.expect(Kind::Curve)?;
    let sa: CcSide = a.payload()?;
    let sb: CcSide = b.payload()?;
    let lvl = level(b)?;
    if level(a).ok().is_some_and(|la| la != lvl) {
        bail!("the two curves declare different levels");
    }
    cc_sides(&sa, a.p, &sb, b.p, lvl)
}

fn cc_sides(sa: &CcSide, pa: Option<u32>, sb: &CcSide, pb: Option<u32>, (ell, m): (i64, u32)) -> Result<Outcome> {
    let da = side_data(sa, pa, ell, m)?;
    let db = side_data(sb, pb, ell, m)?;
    let images = sb
        .images
        .as_ref()
        .context("second curve needs the images")?
        .iter()
        .map(|e| e.decode(&db.field, ell, m))
        .collect::<Result<Vec<_>>>()?;
    let bij = sb.bijection.as_ref().context("second curve needs the bijection")?;
    match cc_match(&da, &db, &images, bij) {
        Ok(c) => Ok(Outcome::ok(json!({ "a": ell_adic(c.a, ell), "a_int": c.a, "bijection": c.bijection }))),
        Err(CurveError::Inconsistent { index, detail }) => {
            Ok(Outcome::new(false, json!({ "a": null }), json!({ "index": index, "detail": detail })))
        }
        Err(CurveError::NotAUnit(a)) => Ok(Outcome::new(false, json!({ "a": null }), json!({ "not_a_unit": a }))),
        Err(e) => Err(e.into()),
    }
}

// ---- ladic ----

#[derive(Deserialize)]
struct DivisorPayload {
    divisor: Vec<(CurveWire, i64)>,
}

fn load_divisor(inst: &Instance) -> Result<LadicDivisor> {
    inst.expect(Kind::Ladic)?;
    let f = inst.field()?;
    let (ell, m) = level(inst)?;
    let pl: DivisorPayload = inst.payload()?;
    let terms = pl.divisor.iter().map(|(c, a)| Ok((c.decode(&f)?, *a))).collect::<Result<Vec<_>>>()?;
    Ok(LadicDivisor::new(ell, m, terms)?)
}

pub fn ladic_class(inst: &Instance) -> Result<Outcome> {
    let d = load_divisor(inst)?;
    Ok(Outcome::ok(json!({ "class": class_map(&d), "modulus": d.modulus(), "divisor": d.render() })))
}

pub fn ladic_decompose(inst: &Instance) -> Result<Outcome> {
    let d = load_divisor(inst)?;
    let dec = match dd_decompose(&d) {
        Ok(x) => x,
        Err(e @ (LadicError::NonzeroClass(_) | LadicError::NotDecomposable)) => {
            return Ok(Outcome::new(false, json!({ "decomposed": false }), json!({ "reason": e.to_string() })))
        }
        Err(e) => return Err(e.into()),
    };
    let term = |t: &gfl_core::ladicdiv::DdTerm| {
        json!({ "exponents": t.exponents, "coeff": t.coeff, "function": Rat2::of(&dec.function(t)) })
    };
    let residual_zero = dec.reconstruct(&[dec.regrouped.clone()])?.sub(&d)?.is_zero()
        && dec.reconstruct(&dec.terms)?.sub(&d)?.is_zero();
    Ok(Outcome::new(
        residual_zero,
        json!({
            "decomposed": true,
            "support": dec.support.iter().map(CurveWire::of).collect::<Vec<_>>(),
            "terms": dec.terms.iter().map(term).collect::<Vec<_>>(),
            "lift_rank": dec.lift_rank,
            // exponents over the support; the expanded product is too large to print
            "regrouped": json!({ "exponents": dec.regrouped.exponents, "coeff": dec.regrouped.coeff }),
            "residual_zero": residual_zero,
        }),
        Value::Null,
    ))
}

#[derive(Deserialize)]
struct GffPayload {
    f: Vec<Rat2>,
    g: Vec<Rat2>,
}

pub fn ladic_gff(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Ladic)?;
    let fld = inst.field()?;
    let (ell, m) = level(inst)?;
    let pl: GffPayload = inst.payload()?;
    let parts = |v: &[Rat2]| v.iter().map(|r| r.decode(&fld)).collect::<Result<Vec<_>>>();
    let f = LadicFunction::new(ell, m, parts(&pl.f)?)?;
    let g = LadicFunction::new(ell, m, parts(&pl.g)?)?;
    match gff_subfield(&f, &g)? {
        Ok(res) => Ok(Outcome::ok(json!({
            "generator": Rat2::of(&res.generator),
            "generator_render": res.generator.render(),
            "expressions": res.expressions.iter().map(Rat::of).collect::<Vec<_>>(),
            "disjoint_supports": res.disjoint_supports,
        }))),
        Err(fail) => Ok(Outcome::new(false, json!({ "generator": null }), json!({ "failure": format!("{fail:?}") }))),
    }
}

// ---- projgeom ----

#[derive(Deserialize)]
struct StructurePayload {
    structure: IncidenceStructure,
}

fn load_structure(inst: &Instance) -> Result<IncidenceStructure> {
    inst.expect(Kind::Projgeom)?;
    Ok(inst.payload::<StructurePayload>()?.structure)
}

pub fn proj_axioms(inst: &Instance) -> Result<Outcome> {
    let st = load_structure(inst)?;
    let rep = check_axioms(&st);
    Ok(Outcome::new(rep.all_hold(), json!({ "holds": rep.all_hold(), "first_failure": rep.first_failure() }), json!(rep)))
}

pub fn proj_pappus(inst: &Instance) -> Result<Outcome> {
    let st = load_structure(inst)?;
    let r = check_pappus(&st);
    Ok(Outcome::new(r.holds(), json!({ "pappian": r.holds() }), json!(r)))
}

pub fn proj_coordinatize(inst: &Instance) -> Result<Outcome> {
    let st = load_structure(inst)?;
    let c = match coordinatize(&st) {
        Ok(c) => c,
        Err(e @ (ProjError::NotAField(_) | ProjError::Axioms(_) | ProjError::NonClosing(_))) => {
            return Ok(Outcome::new(false, json!({ "order": null }), json!({ "reason": e.to_string() })))
        }
        Err(e) => return Err(e.into()),
    };
    let (order, rebuilt) = rebuild(&st)?;
    let equal = order == c.order && rebuilt == st;
    Ok(Outcome::new(
        equal,
        json!({
            "order": c.order,
            "tables": { "add": c.field.add, "mul": c.field.mul },
            "frame": c.frame,
            "rebuilt_equal": equal,
        }),
        json!({ "coords": c.coords }),
    ))
}

#[derive(Deserialize)]
struct PartialPayload {
    partial: PartialStructure,
    #[serde(default)]
    ambient: Option<IncidenceStructure>,
}

pub fn proj_partial(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Projgeom)?;
    let pl: PartialPayload = inst.payload()?;
    let rep = match &pl.ambient {
        Some(a) => check_partial_in(&pl.partial, a)?,
        None => check_partial(&pl.partial),
    };
    Ok(Outcome::new(rep.holds, json!({ "partial": rep.holds, "triples_checked": rep.triples_checked }), json!(rep)))
}

#[derive(Deserialize)]
struct GenPayload {
    #[serde(default)]
    function: Option<Rat>,
    #[serde(default)]
    function2: Option<Rat2>,
}

pub fn proj_generating(inst: &Instance) -> Result<Outcome> {
    inst.expect(Kind::Projgeom)?;
    let f = inst.field()?;
    let pl: GenPayload = inst.payload()?;
    match (pl.function, pl.function2) {
        (Some(r), None) => {
            let x = r.decode(&f)?;
            let dec = decompose(&x);
            let g = is_generating(&x);
            let w = dec.map(|(z, y)| json!({ "outer": Rat::of(&z), "inner": Rat::of(&y), "render": [z.render("t"), y.render("t")] }));
            Ok(Outcome::new(g, json!({ "generating": g, "degree": x.degree() }), json!({ "decomposition": w })))
        }
        (None, Some(r)) => {
            let g = is_generating2(&r.decode(&f)?);
            Ok(Outcome::new(g != Some(false), json!({ "generating": g }), Value::Null))
        }
        _ => bail!("give exactly one of function, function2"),
    }
}
