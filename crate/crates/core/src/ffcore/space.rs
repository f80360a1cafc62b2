use std::collections::HashMap;

use crate::ffcore::{FfError, Gf};

pub type Vector = Vec<u32>;

/// The coordinate space GF(q)^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecSpace {
    field: Gf,
    n: usize,
}

/// A nonzero vector scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(pub Vector);

/// A subspace stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vector>,
}

impl VecSpace {
    pub fn new(field: Gf, n: usize) -> Result<VecSpace, FfError> {
        if n == 0 {
            return Err(FfError::ZeroDimension);
        }
        Ok(VecSpace { field, n })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn whole(&self) -> Subspace {
        Subspace::whole(self.n)
    }

    /// All vectors in lexicographic order (first coordinate most significant).
    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        let q = self.field.q() as u64;
        let total = q.pow(self.n as u32);
        (0..total).map(move |code| decode(code, q, self.n))
    }

    pub fn point_count(&self) -> usize {
        let q = self.field.q() as usize;
        (q.pow(self.n as u32) - 1) / (q - 1)
    }

    pub fn point(&self, v: &[u32]) -> Option<ProjPoint> {
        normalize(&self.field, v).map(ProjPoint)
    }

    pub fn index(&self) -> PointIndex {
        PointIndex::new(self)
    }
}

fn decode(mut code: u64, q: u64, n: usize) -> Vector {
    let mut v = vec![0u32; n];
    for i in (0..n).rev() {
        v[i] = (code % q) as u32;
        code /= q;
    }
    v
}

fn encode(v: &[u32], q: u64) -> u64 {
    v.iter().fold(0u64, |acc, &c| acc * q + c as u64)
}

pub fn normalize(f: &Gf, v: &[u32]) -> Option<Vector> {
    let lead = *v.iter().find(|&&c| c != 0)?;
    if lead == 1 {
        return Some(v.to_vec());
    }
    let s = f.inv(lead);
    Some(v.iter().map(|&c| f.mul(c, s)).collect())
}

/// Projective points of the space in lexicographic order.
pub fn enumerate_proj_points(space: &VecSpace) -> Vec<ProjPoint> {
    let f = space.field();
    space
        .vectors()
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .inspect(|v| debug_assert_eq!(normalize(f, v).as_ref(), Some(v)))
        .map(ProjPoint)
        .collect()
}

/// Dense lookup from vectors to the index of their projective point.
#[derive(Clone, Debug)]
pub struct PointIndex {
    space: VecSpace,
    points: Vec<ProjPoint>,
    by_code: HashMap<u64, usize>,
}

impl PointIndex {
    pub fn new(space: &VecSpace) -> PointIndex {
        let points = enumerate_proj_points(space);
        let q = space.field().q() as u64;
        let by_code = points.iter().enumerate().map(|(i, p)| (encode(&p.0, q), i)).collect();
        PointIndex { space: space.clone(), points, by_code }
    }
    pub fn space(&self) -> &VecSpace {
        &self.space
    }
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    /// Index of the projective point of `v`, or `None` for the zero vector.
    pub fn of(&self, v: &[u32]) -> Option<usize> {
        let n = normalize(self.space.field(), v)?;
        self.by_code.get(&encode(&n, self.space.field().q() as u64)).copied()
    }
    /// Indices of the projective points of a subspace, ascending.
    pub fn points_of(&self, s: &Subspace) -> Vec<usize> {
        let mut out: Vec<usize> =
            s.vectors(self.space.field()).filter_map(|v| self.of(&v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Reduced row echelon form of the given rows; zero rows dropped.
pub fn rref(f: &Gf, rows: &[Vector], n: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows.iter().filter(|r| r.iter().any(|&c| c != 0)).cloned().collect();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, piv);
        let s = f.inv(m[r][col]);
        for c in m[r].iter_mut() {
            *c = f.mul(*c, s);
        }
        for i in 0..m.len() {
            if i != r && m[i][col] != 0 {
                let factor = m[i][col];
                for j in 0..n {
                    let t = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

pub fn span(f: &Gf, vectors: &[Vector], n: usize) -> Subspace {
    Subspace { n, rows: rref(f, vectors, n) }
}

pub fn in_subspace(f: &Gf, v: &[u32], s: &Subspace) -> bool {
    let mut rows = s.rows.clone();
    rows.push(v.to_vec());
    rref(f, &rows, s.n).len() == s.rows.len()
}

/// Serialized as its echelon basis.
impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, rows: Vec::new() }
    }
    pub fn whole(n: usize) -> Subspace {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { n, rows }
    }
    pub fn from_rref(n: usize, rows: Vec<Vector>) -> Subspace {
        Subspace { n, rows }
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }
    pub fn contains(&self, f: &Gf, v: &[u32]) -> bool {
        in_subspace(f, v, self)
    }
    pub fn is_subspace_of(&self, f: &Gf, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(f, r))
    }
    pub fn intersect(&self, f: &Gf, other: &Subspace) -> Subspace {
        // kernel of [A; -B] gives coefficient pairs with aA = bB
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(self.n);
        }
        let mut cols: Vec<Vector> = Vec::new();
        for j in 0..self.n {
            let mut row = Vec::with_capacity(a + b);
            row.extend(self.rows.iter().map(|r| r[j]));
            row.extend(other.rows.iter().map(|r| f.neg(r[j])));
            cols.push(row);
        }
        let ker = nullspace(f, &cols, a + b);
        let vs: Vec<Vector> = ker.iter().map(|c| combine(f, &c[..a], &self.rows, self.n)).collect();
        span(f, &vs, self.n)
    }
    /// All vectors of the subspace in lexicographic order of their coefficient tuples.
    pub fn vectors<'a>(&'a self, f: &'a Gf) -> impl Iterator<Item = Vector> + 'a {
        let q = f.q() as u64;
        let d = self.rows.len();
        let total = q.pow(d as u32);
        (0..total).map(move |code| combine(f, &decode(code, q, d), &self.rows, self.n))
    }
    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, f: &Gf, v: &[u32]) -> Option<Vector> {
        let mut coords = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let piv = r.iter().position(|&c| c != 0).expect("echelon row is nonzero");
            coords.push(v[piv]);
        }
        (combine(f, &coords, &self.rows, self.n) == v).then_some(coords)
    }
    pub fn flat(&self) -> Vector {
        self.rows.concat()
    }
}

pub fn combine(f: &Gf, coeffs: &[u32], rows: &[Vector], n: usize) -> Vector {
    let mut out = vec![0u32; n];
    for (c, r) in coeffs.iter().zip(rows) {
        if *c == 0 {
            continue;
        }
        for j in 0..n {
            out[j] = f.add(out[j], f.mul(*c, r[j]));
        }
    }
    out
}

/// Basis of {x : M x = 0} for an m-by-k matrix given by rows.
pub fn nullspace(f: &Gf, rows: &[Vector], k: usize) -> Vec<Vector> {
    let r = rref(f, rows, k);
    let pivots: Vec<usize> =
        r.iter().map(|row| row.iter().position(|&c| c != 0).expect("nonzero")).collect();
    let mut out = Vec::new();
    for free in (0..k).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; k];
        v[free] = 1;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// Solve M x = b; returns one solution if consistent.
pub fn solve(f: &Gf, rows: &[Vector], b: &[u32], k: usize) -> Option<Vector> {
    let aug: Vec<Vector> = rows
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut v = r.clone();
            v.push(bi);
            v
        })
        .collect();
    let red = rref(f, &aug, k + 1);
    let mut x = vec![0u32; k];
    for row in &red {
        let piv = row.iter().position(|&c| c != 0).expect("nonzero");
        if piv == k {
            return None;
        }
        x[piv] = row[k];
    }
    Some(x)
}

fn for_each_combination(n: usize, d: usize, mut visit: impl FnMut(&[usize])) {
    if d > n {
        return;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    'outer: loop {
        visit(&idx);
        let mut i = d;
        while i > 0 {
            i -= 1;
            if idx[i] < n - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        return;
    }
}

/// Every d-dimensional subspace exactly once, sorted by flattened echelon basis.
pub fn enumerate_subspaces(space: &VecSpace, d: usize) -> Vec<Subspace> {
    let n = space.dim();
    let f = space.field();
    let q = f.q() as u64;
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    if d == 0 {
        return vec![Subspace::zero(n)];
    }
    for_each_combination(n, d, |pivots| {
        // free slots: row i, column c > pivots[i], c not a pivot
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| {
                ((pivots[i] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for code in 0..total {
            let vals = decode(code, q, free.len());
            let mut rows = vec![vec![0u32; n]; d];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            for (&(i, c), &v) in free.iter().zip(&vals) {
                rows[i][c] = v;
            }
            out.push(Subspace { n, rows });
        }
    });
    out.sort_by_key(|s| s.flat());
    out
}

/// Gaussian binomial coefficient [n choose d]_q.
pub fn gaussian_binomial(n: u32, d: u32, q: u64) -> u64 {
    if d > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}
