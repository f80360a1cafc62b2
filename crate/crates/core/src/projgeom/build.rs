use crate::ffcore::{enumerate_subspaces, Gf, PointIndex, VecSpace};
use crate::projgeom::{GroupLaw, IncidenceStructure, ProjError};

fn field(q: u32) -> Result<Gf, ProjError> {
    Gf::of_order(q).map_err(|e| ProjError::Unsupported(e.to_string()))
}

fn label(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

/// PG(n, q): projective points of GF(q)^(n+1), lines from 2-dim subspaces.
pub fn pg(n: usize, q: u32) -> Result<IncidenceStructure, ProjError> {
    let f = field(q)?;
    let space = VecSpace::new(f, n + 1).map_err(|e| ProjError::Unsupported(e.to_string()))?;
    let idx = PointIndex::new(&space);
    let labels = idx.points().iter().map(|p| label(&p.0)).collect();
    let lines = enumerate_subspaces(&space, 2).iter().map(|s| idx.points_of(s)).collect();
    IncidenceStructure::new(labels, lines)
}

pub fn fano() -> IncidenceStructure {
    pg(2, 2).expect("GF(2) is available")
}

/// Affine translation plane over a right quasifield given by tables, with its
/// line at infinity. Affine points (x, y) come first, then the slopes (m),
/// then (inf). Lines: y = x*m + b, x = c, and the line at infinity.
pub fn translation_plane(add: &[Vec<u32>], mul: &[Vec<u32>]) -> Result<IncidenceStructure, ProjError> {
    let q = add.len();
    if q < 2 || mul.len() != q || add.iter().chain(mul).any(|r| r.len() != q) {
        return Err(ProjError::Unsupported("tables must be square and agree in size".into()));
    }
    let aff = |x: usize, y: usize| x * q + y;
    let slope = |m: usize| q * q + m;
    let inf = q * q + q;
    let mut labels: Vec<String> = Vec::with_capacity(q * q + q + 1);
    for x in 0..q {
        for y in 0..q {
            labels.push(format!("({x},{y})"));
        }
    }
    for m in 0..q {
        labels.push(format!("({m})"));
    }
    labels.push("(inf)".into());
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for m in 0..q {
        for b in 0..q {
            let mut l: Vec<usize> =
                (0..q).map(|x| aff(x, add[mul[x][m] as usize][b] as usize)).collect();
            l.push(slope(m));
            lines.push(l);
        }
    }
    for c in 0..q {
        let mut l: Vec<usize> = (0..q).map(|y| aff(c, y)).collect();
        l.push(inf);
        lines.push(l);
    }
    let mut l: Vec<usize> = (0..q).map(slope).collect();
    l.push(inf);
    lines.push(l);
    IncidenceStructure::new(labels, lines)
}

/// Tables of the Hall quasifield of order 9: pairs a + b*u over GF(3) with
/// u^2 = u + 1 as the defining irreducible x^2 - x - 1, and
/// (a + b u)(c + d u) = ac - b d^-1 f(c) + (ad - bc + b) u for d != 0.
pub fn hall_quasifield9() -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let f = Gf::prime(3).expect("prime");
    // f(c) = c^2 - c - 1, irreducible over GF(3)
    let (r, s) = (1u32, 1u32);
    let fc = |c: u32| f.sub(f.sub(f.mul(c, c), f.mul(r, c)), s);
    let enc = |a: u32, b: u32| a + 3 * b;
    let mut add = vec![vec![0u32; 9]; 9];
    let mut mul = vec![vec![0u32; 9]; 9];
    for x in 0..9u32 {
        for y in 0..9u32 {
            let (a, b, c, d) = (x % 3, x / 3, y % 3, y / 3);
            add[x as usize][y as usize] = enc(f.add(a, c), f.add(b, d));
            mul[x as usize][y as usize] = if d == 0 {
                enc(f.mul(a, c), f.mul(b, c))
            } else {
                let re = f.sub(f.mul(a, c), f.mul(f.mul(b, f.inv(d)), fc(c)));
                let im = f.add(f.sub(f.mul(a, d), f.mul(b, c)), f.mul(b, r));
                enc(re, im)
            };
        }
    }
    (add, mul)
}

/// The Hall plane of order 9.
pub fn hall_plane9() -> IncidenceStructure {
    let (add, mul) = hall_quasifield9();
    translation_plane(&add, &mul).expect("tables are square")
}

/// P_k(K) for K = GF(p^n) over k = GF(p): the points of PG(n-1, p) read as
/// classes of K^* modulo k^*, with the multiplication of K^*/k^*.
pub fn extension_structure(p: u32, n: usize) -> Result<(IncidenceStructure, GroupLaw), ProjError> {
    if n < 2 {
        return Err(ProjError::Unsupported("extension degree must be at least 2".into()));
    }
    let k = Gf::prime(p).map_err(|e| ProjError::Unsupported(e.to_string()))?;
    let big = Gf::new(p, n as u32).map_err(|e| ProjError::Unsupported(e.to_string()))?;
    let space = VecSpace::new(k, n).map_err(|e| ProjError::Unsupported(e.to_string()))?;
    let idx = PointIndex::new(&space);
    // vector (d_0, ..., d_{n-1}) is the element sum d_i u^i
    let value = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    let digits = |mut x: u32| {
        let mut v = vec![0u32; n];
        for d in v.iter_mut() {
            *d = x % p;
            x /= p;
        }
        v
    };
    let pts = idx.points();
    let vals: Vec<u32> = pts.iter().map(|pt| value(&pt.0)).collect();
    let mut table = vec![vec![0usize; pts.len()]; pts.len()];
    for (i, &a) in vals.iter().enumerate() {
        for (j, &b) in vals.iter().enumerate() {
            table[i][j] = idx.of(&digits(big.mul(a, b))).expect("nonzero product");
        }
    }
    let one = idx.of(&digits(1)).expect("one");
    let law = GroupLaw::new(table)?;
    debug_assert_eq!(law.identity(), one);
    let labels = pts.iter().map(|pt| label(&pt.0)).collect();
    let lines = enumerate_subspaces(&space, 2).iter().map(|s| idx.points_of(s)).collect();
    Ok((IncidenceStructure::new(labels, lines)?, law))
}
