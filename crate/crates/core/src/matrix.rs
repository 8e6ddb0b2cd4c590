//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &[Vec<i64>]) -> IntMatrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn is_symmetric(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn dot(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// `u^T G v`.
pub fn bilinear(g: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    g.iter()
        .zip(u)
        .map(|(row, &ui)| ui * dot(row, v))
        .sum()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

/// `M M^T`: the Gram matrix of the rows of `m`.
pub fn gram(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|u| m.iter().map(|v| dot(u, v)).collect())
        .collect()
}

pub fn negate(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinants of the leading `1x1, 2x2, ..., nxn` submatrices.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=m.len())
        .map(|k| {
            let sub: IntMatrix = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Sylvester's criterion.
pub fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    is_symmetric(m) && leading_minors(m).iter().all(|d| d.is_positive())
}

pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    is_positive_definite(&negate(m))
}

/// Signature of a symmetric matrix by congruence diagonalization over `Q`.
pub fn signature(m: &[Vec<i64>]) -> i64 {
    let diag = congruence_diagonal(m);
    diag.iter().filter(|d| d.is_positive()).count() as i64
        - diag.iter().filter(|d| d.is_negative()).count() as i64
}

/// Diagonal entries of `P^T M P` for some invertible rational `P`.
pub fn congruence_diagonal(m: &[Vec<i64>]) -> Vec<BigRational> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            sym_swap(&mut a, k, p);
        } else if let Some((_, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
            .map(|(i, j)| (i, j))
        {
            // Every remaining diagonal entry is zero: with a_ij != 0, adding row/col j
            // to row/col i makes the (i,i) entry 2 a_ij, splitting off a hyperbolic plane.
            let i = (k..n).find(|&i| !a[i][j].is_zero()).unwrap();
            sym_add(&mut a, i, j);
            sym_swap(&mut a, k, i);
        } else {
            out.extend(std::iter::repeat_n(BigRational::zero(), n - k));
            return out;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
            for j in k..n {
                let t = &f * &a[j][k];
                a[j][i] -= t;
            }
        }
        out.push(pivot);
    }
    out
}

fn sym_swap<T>(a: &mut [Vec<T>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn sym_add(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let t = a[j][c].clone();
        a[i][c] += t;
    }
    for r in 0..n {
        let t = a[r][j].clone();
        a[r][i] += t;
    }
}

/// Rank over the prime field `F_p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: IntMatrix = m
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = mod_inverse(a[rank][c], p);
        for x in a[rank].iter_mut() {
            *x = (*x * inv) % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(x: i64, p: i64) -> i64 {
    let (mut r0, mut r1, mut t0, mut t1) = (p, x.rem_euclid(p), 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{x} is not invertible mod {p}");
    t0.rem_euclid(p)
}

/// Column-style Hermite reduction: returns `(H, U)` with `M U = H`, `U` unimodular and
/// `H` in column echelon form. The columns of `U` past the rank span the integer kernel
/// `{ v : M v = 0 }` as a saturated lattice.
pub fn column_hermite(m: &[Vec<i64>]) -> (IntMatrix, IntMatrix, usize) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut h: IntMatrix = m.to_vec();
    let mut u = identity(cols);
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // gcd-reduce entries h[r][pivot_col..] into h[r][pivot_col]
        loop {
            let nonzero: Vec<usize> = (pivot_col..cols).filter(|&c| h[r][c] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&c| h[r][c].abs()).unwrap();
            col_swap(&mut h, &mut u, pivot_col, best);
            let mut done = true;
            for c in pivot_col + 1..cols {
                if h[r][c] != 0 {
                    let q = h[r][c].div_euclid(h[r][pivot_col]);
                    col_axpy(&mut h, &mut u, c, pivot_col, -q);
                    if h[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][pivot_col] != 0 {
            if h[r][pivot_col] < 0 {
                col_negate(&mut h, &mut u, pivot_col);
            }
            pivot_col += 1;
        }
    }
    (h, u, pivot_col)
}

fn col_swap(h: &mut [Vec<i64>], u: &mut [Vec<i64>], i: usize, j: usize) {
    for row in h.iter_mut().chain(u.iter_mut()) {
        row.swap(i, j);
    }
}

/// `col_dst += k * col_src`
fn col_axpy(h: &mut [Vec<i64>], u: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    for row in h.iter_mut().chain(u.iter_mut()) {
        row[dst] += k * row[src];
    }
}

fn col_negate(h: &mut [Vec<i64>], u: &mut [Vec<i64>], i: usize) {
    for row in h.iter_mut().chain(u.iter_mut()) {
        row[i] = -row[i];
    }
}

/// A basis (as rows) of the saturated integer kernel `{ v in Z^n : M v = 0 }`.
pub fn integer_kernel(m: &[Vec<i64>], n: usize) -> IntMatrix {
    if m.is_empty() {
        return identity(n);
    }
    let (_, u, rank) = column_hermite(m);
    (rank..n).map(|c| u.iter().map(|row| row[c]).collect()).collect()
}

/// Elementary divisors (nonzero Smith invariants) of an integer matrix, increasing.
pub fn elementary_divisors(m: &[Vec<i64>]) -> Vec<i64> {
    let mut a: IntMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| a[r][c] != 0)
            .min_by_key(|&(r, c)| a[r][c].abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let p = a[t][t];
        let mut clean = true;
        for r in t + 1..rows {
            let q = a[r][t].div_euclid(p);
            if q != 0 {
                for c in t..cols {
                    a[r][c] -= q * a[t][c];
                }
            }
            clean &= a[r][t] == 0;
        }
        for c in t + 1..cols {
            let q = a[t][c].div_euclid(p);
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[c] -= q * row[t];
                }
            }
            clean &= a[t][c] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility: fold any entry not divisible by p into row t
        if let Some(r) = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a[r][c] % p != 0)) {
            for c in t..cols {
                a[t][c] += a[r][c];
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// Solves `x^T M = b` over the integers, if a solution exists.
pub fn solve_left(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    // x^T M = b  <=>  M^T x = b; reduce M^T by unimodular column ops.
    let mt = transpose(m);
    let (h, u, rank) = column_hermite(&mt);
    // h = M^T U, column echelon; solve h z = b then x = U z
    let mut z = vec![0i64; u.len()];
    let mut residual = b.to_vec();
    let mut row = 0;
    for c in 0..rank {
        while row < h.len() && h[row][c] == 0 {
            if residual[row] != 0 {
                return None;
            }
            row += 1;
        }
        if residual[row] % h[row][c] != 0 {
            return None;
        }
        z[c] = residual[row] / h[row][c];
        for (r, res) in residual.iter_mut().enumerate() {
            *res -= z[c] * h[r][c];
        }
        row += 1;
    }
    if residual.iter().any(|&x| x != 0) {
        return None;
    }
    Some(u.iter().map(|urow| dot(urow, &z)).collect())
}

/// Exact LLL reduction (`δ = 3/4`) of the rows of `basis`, measuring lengths with the
/// ambient Gram matrix.
pub fn lll_reduce(basis: &[Vec<i64>], ambient_gram: &[Vec<i64>]) -> IntMatrix {
    let mut b: IntMatrix = basis.to_vec();
    let n = b.len();
    let delta = BigRational::new(3.into(), 4.into());
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&b, ambient_gram);
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                let q = i64::try_from(q).expect("LLL coefficient fits i64");
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
            }
        }
        let (mu, norms) = gram_schmidt(&b, ambient_gram);
        let bound = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if norms[k] >= bound {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Gram-Schmidt coefficients `mu[i][j]` and squared norms of the orthogonalized rows.
fn gram_schmidt(b: &[Vec<i64>], g: &[Vec<i64>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<BigRational> = b[i]
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        for j in 0..i {
            mu[i][j] = ip_mixed(g, &b[i], &bstar[j]) / &norms[j];
            for (vk, bk) in v.iter_mut().zip(&bstar[j]) {
                *vk -= &mu[i][j] * bk;
            }
        }
        norms.push(ip_rat(g, &v, &v));
        bstar.push(v);
    }
    (mu, norms)
}

fn round(x: &BigRational) -> BigInt {
    (x + BigRational::new(1.into(), 2.into())).floor().to_integer()
}

fn ip_mixed(g: &[Vec<i64>], u: &[i64], v: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, &ui) in u.iter().enumerate() {
        if ui == 0 {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if g[i][j] != 0 {
                acc += BigRational::from_integer((ui * g[i][j]).into()) * vj;
            }
        }
    }
    acc
}

fn ip_rat(g: &[Vec<i64>], u: &[BigRational], v: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            if g[i][j] != 0 {
                acc += ui * vj * BigRational::from_integer(g[i][j].into());
            }
        }
    }
    acc
}
