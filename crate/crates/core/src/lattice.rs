//! Integer matrices: Smith normal form with unimodular transforms, integer
//! kernels, and linear systems over Z/N.

pub type IMat = Vec<Vec<i128>>;

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<i128>,
    pub u: IMat,
    pub v: IMat,
    pub rows: usize,
    pub cols: usize,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }
}

fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn smith(a: &[Vec<i128>], cols: usize) -> Snf {
    let rows = a.len();
    let mut m: IMat = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(m, u, v, rows, cols);
            };
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let qt = m[i][t].div_euclid(m[t][t]);
                if qt != 0 {
                    row_sub(&mut m, i, t, qt);
                    row_sub(&mut u, i, t, qt);
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let qt = m[t][j].div_euclid(m[t][t]);
                if qt != 0 {
                    col_sub(&mut m, j, t, qt);
                    col_sub(&mut v, j, t, qt);
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let piv = m[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    row_sub(&mut m, t, i, -1);
                    row_sub(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    finish(m, u, v, rows, cols)
}

fn finish(m: IMat, u: IMat, v: IMat, rows: usize, cols: usize) -> Snf {
    let diag = (0..rows.min(cols)).map(|i| m[i][i]).collect();
    Snf { diag, u, v, rows, cols }
}

/// row_i -= k * row_j
fn row_sub(m: &mut IMat, i: usize, j: usize, k: i128) {
    let rj = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(rj) {
        *x -= k * y;
    }
}

/// col_i -= k * col_j
fn col_sub(m: &mut IMat, i: usize, j: usize, k: i128) {
    for row in m.iter_mut() {
        row[i] -= k * row[j];
    }
}

pub fn mat_vec(a: &[Vec<i128>], x: &[i128]) -> Vec<i128> {
    a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// Basis of the integer kernel {x in Z^cols : a x = 0}.
pub fn integer_kernel(a: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    let s = smith(a, cols);
    let r = s.rank();
    (r..cols).map(|j| s.v.iter().map(|row| row[j]).collect()).collect()
}

pub fn rank(a: &[Vec<i128>], cols: usize) -> usize {
    smith(a, cols).rank()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduce(a: &[Vec<i128>], n: i128) -> IMat {
    a.iter().map(|r| r.iter().map(|x| x.rem_euclid(n)).collect()).collect()
}

/// Generators of the Z/n-module {x : a x = 0 mod n}, entries in [0, n).
pub fn kernel_mod(a: &[Vec<i128>], cols: usize, n: i128) -> Vec<Vec<i128>> {
    let s = smith(&reduce(a, n), cols);
    let mut gens = Vec::new();
    for j in 0..cols {
        let d = if j < s.diag.len() { s.diag[j] } else { 0 };
        let scale = if d == 0 { 1 } else { n / gcd(d, n) };
        if scale == n {
            continue;
        }
        let g: Vec<i128> = s.v.iter().map(|row| (row[j] * scale).rem_euclid(n)).collect();
        if g.iter().any(|&x| x != 0) {
            gens.push(g);
        }
    }
    gens
}

/// One solution of a x = b mod n, if any.
pub fn solve_mod(a: &[Vec<i128>], b: &[i128], cols: usize, n: i128) -> Option<Vec<i128>> {
    let s = smith(&reduce(a, n), cols);
    let ub: Vec<i128> = mat_vec(&s.u, b).into_iter().map(|x| x.rem_euclid(n)).collect();
    let mut y = vec![0i128; cols];
    for (i, &c) in ub.iter().enumerate() {
        let d = if i < s.diag.len() && i < cols { s.diag[i] } else { 0 };
        if d == 0 {
            if c != 0 {
                return None;
            }
            continue;
        }
        let g = gcd(d, n);
        if c % g != 0 {
            return None;
        }
        let (dn, cn, nn) = (d / g, c / g, n / g);
        y[i] = (cn * inv_mod(dn.rem_euclid(nn), nn)).rem_euclid(nn);
    }
    let x: Vec<i128> = mat_vec(&s.v, &y).into_iter().map(|t| t.rem_euclid(n)).collect();
    Some(x)
}

/// Inverse of a unit modulo n (n >= 1).
pub fn inv_mod(a: i128, n: i128) -> i128 {
    if n == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (n, a.rem_euclid(n));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not a unit mod {n}");
    t0.rem_euclid(n)
}

/// l-adic valuation of x modulo l^m (returns m for zero).
pub fn ell_valuation(x: i128, ell: i128, m: u32) -> u32 {
    let n = ell.pow(m);
    let mut x = x.rem_euclid(n);
    if x == 0 {
        return m;
    }
    let mut k = 0;
    while x % ell == 0 {
        x /= ell;
        k += 1;
    }
    k
}
