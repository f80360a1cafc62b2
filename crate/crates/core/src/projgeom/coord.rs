use serde::{Deserialize, Serialize};

use crate::ffcore::Gf;
use crate::projgeom::{
    check_axioms, planes, structure_dimension, IncidenceStructure, ProjError,
};

/// A finite field given by its tables; 0 and 1 are the additive and
/// multiplicative identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordField {
    pub order: usize,
    pub add: Vec<Vec<u32>>,
    pub mul: Vec<Vec<u32>>,
}

impl CoordField {
    pub fn from_gf(f: &Gf) -> CoordField {
        let q = f.q();
        CoordField {
            order: q as usize,
            add: (0..q).map(|a| (0..q).map(|b| f.add(a, b)).collect()).collect(),
            mul: (0..q).map(|a| (0..q).map(|b| f.mul(a, b)).collect()).collect(),
        }
    }
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize][b as usize]
    }
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize][b as usize]
    }
    pub fn neg(&self, a: u32) -> u32 {
        (0..self.order as u32).find(|&b| self.add(a, b) == 0).expect("verified field")
    }
    pub fn inv(&self, a: u32) -> Option<u32> {
        (0..self.order as u32).find(|&b| self.mul(a, b) == 1)
    }

    /// Exhaustive check of the field axioms; the error names the first failure.
    pub fn verify(&self) -> Result<(), String> {
        let q = self.order;
        if q < 2 || self.add.len() != q || self.mul.len() != q {
            return Err("table size".into());
        }
        if self.add.iter().chain(&self.mul).any(|r| r.len() != q || r.iter().any(|&v| v as usize >= q)) {
            return Err("closure".into());
        }
        let e = 0..q as u32;
        for a in e.clone() {
            if self.add(a, 0) != a || self.add(0, a) != a {
                return Err(format!("additive identity at {a}"));
            }
            if self.mul(a, 1) != a || self.mul(1, a) != a {
                return Err(format!("multiplicative identity at {a}"));
            }
            if !e.clone().any(|b| self.add(a, b) == 0) {
                return Err(format!("additive inverse of {a}"));
            }
            if a != 0 && self.inv(a).is_none() {
                return Err(format!("multiplicative inverse of {a}"));
            }
            for b in e.clone() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(format!("additive commutativity at ({a}, {b})"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("multiplicative commutativity at ({a}, {b})"));
                }
                for c in e.clone() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity at ({a}, {b}, {c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity at ({a}, {b}, {c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Relabelling onto the ffcore field of the same order, fixing 0 and 1.
    pub fn isomorphism_to(&self, f: &Gf) -> Option<Vec<u32>> {
        let q = self.order;
        if f.q() as usize != q {
            return None;
        }
        let order_of = |a: u32| -> usize {
            let mut x = a;
            let mut k = 1;
            while x != 1 {
                x = self.mul(x, a);
                k += 1;
            }
            k
        };
        let g = (1..q as u32).find(|&a| order_of(a) == q - 1)?;
        for h in 1..q as u32 {
            if f.multiplicative_order(h) as usize != q - 1 {
                continue;
            }
            let mut phi = vec![0u32; q];
            let (mut x, mut y) = (1u32, 1u32);
            for _ in 0..q - 1 {
                phi[x as usize] = y;
                x = self.mul(x, g);
                y = f.mul(y, h);
            }
            let additive = (0..q as u32).all(|a| {
                (0..q as u32).all(|b| phi[self.add(a, b) as usize] == f.add(phi[a as usize], phi[b as usize]))
            });
            if additive {
                return Some(phi);
            }
        }
        None
    }
}

/// Coordinates of a plane over a recognized field: the frame used and the
/// homogeneous coordinates of every point, in the ffcore labelling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinatization {
    pub order: usize,
    pub field: CoordField,
    /// origin, x-direction, y-direction, unit point
    pub frame: [usize; 4],
    pub coords: Vec<[u32; 3]>,
}

struct Frame<'a> {
    st: &'a IncidenceStructure,
    o: usize,
    x: usize,
    y: usize,
    e: usize,
    diag: usize,
    at_inf: usize,
}

impl Frame<'_> {
    fn line(&self, a: usize, b: usize) -> Result<usize, ProjError> {
        self.st.line_through(a, b).ok_or(ProjError::NoLine(a, b))
    }
    fn meet(&self, l: usize, m: usize) -> Result<usize, ProjError> {
        if l == m {
            return Err(ProjError::NonClosing(format!("lines {l} and {m} coincide")));
        }
        self.st.meet(l, m).ok_or_else(|| ProjError::NonClosing(format!("lines {l} and {m} do not meet")))
    }
    fn on_diag(&self, l: usize) -> Result<usize, ProjError> {
        self.meet(l, self.diag)
    }
    /// The affine point with diagonal coordinates a, b.
    fn point(&self, a: usize, b: usize) -> Result<usize, ProjError> {
        if a == b {
            return Ok(a);
        }
        self.meet(self.line(a, self.y)?, self.line(b, self.x)?)
    }
    /// (x, y) of an affine point, as diagonal points.
    fn coords(&self, p: usize) -> Result<(usize, usize), ProjError> {
        if self.st.contains(self.diag, p) {
            return Ok((p, p));
        }
        Ok((self.on_diag(self.line(p, self.y)?)?, self.on_diag(self.line(p, self.x)?)?))
    }
    /// Point at infinity of slope m.
    fn slope(&self, m: usize) -> Result<usize, ProjError> {
        let through = self.point(self.e, m)?;
        if through == self.o {
            return Err(ProjError::NonClosing("slope point at the origin".into()));
        }
        self.meet(self.line(self.o, through)?, self.line(self.x, self.y)?)
    }
    /// y-coordinate where the line through (0, b) of slope m meets x = a.
    fn ternary(&self, a: usize, m: usize, b: usize) -> Result<usize, ProjError> {
        let start = self.point(self.o, b)?;
        let dir = self.slope(m)?;
        let l = self.line(start, dir)?;
        let v = self.line(a, self.y)?;
        let p = self.meet(l, v)?;
        Ok(self.coords(p)?.1)
    }
}

fn general_position(st: &IncidenceStructure, pts: &[usize]) -> bool {
    (0..pts.len()).all(|i| {
        (i + 1..pts.len()).all(|j| (j + 1..pts.len()).all(|k| !st.collinear(pts[i], pts[j], pts[k])))
    })
}

fn least_frame(st: &IncidenceStructure) -> Option<[usize; 4]> {
    let n = st.num_points();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if st.collinear(a, b, c) {
                    continue;
                }
                for d in c + 1..n {
                    if general_position(st, &[a, b, c, d]) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Coordinates on a projective plane from the least four-point frame in
/// general position. Addition and multiplication on the diagonal are read
/// off the ternary operation through slope 1 and through the origin; the
/// result must pass the field axioms and the linearity of the ternary
/// operation, and is then relabelled onto the ffcore field of that order.
pub fn coordinatize_plane(st: &IncidenceStructure) -> Result<Coordinatization, ProjError> {
    let report = check_axioms(st);
    if let Some(ax) = report.first_failure() {
        return Err(ProjError::Axioms(ax.into()));
    }
    let dim = structure_dimension(st)?;
    if dim != 2 {
        return Err(ProjError::NotAPlane(dim));
    }
    let [o, x, y, e] = least_frame(st).ok_or(ProjError::NotAPlane(dim))?;
    let diag = st.line_through(o, e).ok_or(ProjError::NoLine(o, e))?;
    let l_inf = st.line_through(x, y).ok_or(ProjError::NoLine(x, y))?;
    let at_inf = st.meet(diag, l_inf).ok_or_else(|| ProjError::NonClosing("diagonal misses infinity".into()))?;
    let fr = Frame { st, o, x, y, e, diag, at_inf };
    let elems: Vec<usize> = st.lines()[diag].iter().copied().filter(|&p| p != fr.at_inf).collect();
    let q = elems.len();
    // relabel so that the origin is 0 and the unit point is 1
    let mut order: Vec<usize> = vec![o, e];
    order.extend(elems.iter().copied().filter(|&p| p != o && p != e));
    let mut lab = vec![u32::MAX; st.num_points()];
    for (i, &p) in order.iter().enumerate() {
        lab[p] = i as u32;
    }
    let mut t = vec![vec![vec![0u32; q]; q]; q];
    for (ai, &a) in order.iter().enumerate() {
        for (mi, &m) in order.iter().enumerate() {
            for (bi, &b) in order.iter().enumerate() {
                t[ai][mi][bi] = lab[fr.ternary(a, m, b)?];
            }
        }
    }
    let ring = CoordField {
        order: q,
        add: (0..q).map(|a| (0..q).map(|b| t[a][1][b]).collect()).collect(),
        mul: (0..q).map(|a| (0..q).map(|m| t[a][m][0]).collect()).collect(),
    };
    ring.verify().map_err(ProjError::NotAField)?;
    for a in 0..q {
        for m in 0..q {
            for b in 0..q {
                if t[a][m][b] != ring.add(ring.mul(a as u32, m as u32), b as u32) {
                    return Err(ProjError::NotAField(format!("ternary operation not linear at ({a}, {m}, {b})")));
                }
            }
        }
    }
    let gf = Gf::of_order(q as u32).map_err(|err| ProjError::Unsupported(err.to_string()))?;
    let phi = ring
        .isomorphism_to(&gf)
        .ok_or_else(|| ProjError::NotAField("no isomorphism to the field of that order".into()))?;
    let canon = |p: usize| phi[lab[p] as usize];
    let mut coords = vec![[0u32; 3]; st.num_points()];
    for (p, c) in coords.iter_mut().enumerate() {
        *c = if p == y {
            [0, 1, 0]
        } else if st.contains(l_inf, p) {
            // slope of the direction through the origin
            let through = st.meet(fr.line(o, p)?, fr.line(e, y)?).ok_or_else(|| ProjError::NonClosing("slope".into()))?;
            [1, canon(fr.coords(through)?.1), 0]
        } else {
            let (a, b) = fr.coords(p)?;
            [canon(a), canon(b), 1]
        };
    }
    Ok(Coordinatization { order: q, field: CoordField::from_gf(&gf), frame: [o, x, y, e], coords })
}

/// The plane on the same labels whose lines are the zero sets of linear
/// forms in the recovered coordinates.
pub fn rebuild_plane(labels: &[String], c: &Coordinatization) -> Result<IncidenceStructure, ProjError> {
    let f = &c.field;
    let q = c.order as u32;
    let mut lines = Vec::new();
    for u0 in 0..q {
        for u1 in 0..q {
            for u2 in 0..q {
                let u = [u0, u1, u2];
                // normalized: first nonzero entry is 1
                match u.iter().find(|&&v| v != 0) {
                    Some(&1) => {}
                    _ => continue,
                }
                let l: Vec<usize> = c
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| {
                        let s = (0..3).fold(0, |acc, i| f.add(acc, f.mul(u[i], x[i])));
                        s == 0
                    })
                    .map(|(p, _)| p)
                    .collect();
                lines.push(l);
            }
        }
    }
    IncidenceStructure::new(labels.to_vec(), lines)
}

/// Field of a projective structure of dimension at least 2, recovered on its
/// first plane.
pub fn coordinatize(st: &IncidenceStructure) -> Result<Coordinatization, ProjError> {
    let dim = structure_dimension(st)?;
    if dim == 2 {
        return coordinatize_plane(st);
    }
    if dim < 2 {
        return Err(ProjError::NotAPlane(dim));
    }
    let first = planes(st)?.into_iter().next().ok_or(ProjError::NotAPlane(dim))?;
    coordinatize_plane(&st.restrict(&first)?)
}

/// Rebuild the line set from coordinates: directly for a plane, and as the
/// union over all planes otherwise. Returns the recovered field order too.
pub fn rebuild(st: &IncidenceStructure) -> Result<(usize, IncidenceStructure), ProjError> {
    let dim = structure_dimension(st)?;
    if dim == 2 {
        let c = coordinatize_plane(st)?;
        return Ok((c.order, rebuild_plane(st.labels(), &c)?));
    }
    if dim < 2 {
        return Err(ProjError::NotAPlane(dim));
    }
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut order = None;
    for plane in planes(st)? {
        let sub = st.restrict(&plane)?;
        let c = coordinatize_plane(&sub)?;
        if *order.get_or_insert(c.order) != c.order {
            return Err(ProjError::NonClosing("planes disagree on the field order".into()));
        }
        let r = rebuild_plane(sub.labels(), &c)?;
        lines.extend(r.lines().iter().map(|l| l.iter().map(|&i| plane[i]).collect::<Vec<usize>>()));
    }
    lines.sort();
    lines.dedup();
    let order = order.ok_or(ProjError::NotAPlane(dim))?;
    Ok((order, IncidenceStructure::new(st.labels().to_vec(), lines)?))
}
