//! Gaussian elimination over a [`Field`].

use crate::field::Field;
use crate::matrix::Matrix;
use num_complex::Complex64;

/// Reduced row echelon form and its pivot columns.
pub struct Rref<F> {
    pub m: Matrix<F>,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(a: &Matrix<F>) -> Rref<F> {
    let scale = a.scale_hint();
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for i in r..rows {
            let x = &m[(i, c)];
            if x.is_zero() || x.is_small(scale) {
                continue;
            }
            let sc = x.pivot_score();
            if best.is_none_or(|(_, b)| sc > b) {
                best = Some((i, sc));
            }
        }
        let Some((p, _)) = best else {
            for i in r..rows {
                m[(i, c)] = F::zero();
            }
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = t;
            }
        }
        let inv = m[(r, c)].inv().expect("pivot is nonzero");
        for j in c..cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = m[(r, j)].mul_ref(&inv);
            }
        }
        m[(r, c)] = F::one();
        let pivot_row: Vec<(usize, F)> =
            (c + 1..cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for (j, v) in &pivot_row {
                let t = m[(i, *j)].sub_ref(&f.mul_ref(v));
                m[(i, *j)] = if t.is_small(scale) { F::zero() } else { t };
            }
            m[(i, c)] = F::zero();
        }
        pivots.push(c);
        r += 1;
    }
    Rref { m, pivots }
}

pub fn rank<F: Field>(a: &Matrix<F>) -> usize {
    rref(a).pivots.len()
}

/// Basis of `{x : a x = 0}`, one vector per free column.
pub fn null_space<F: Field>(a: &Matrix<F>) -> Vec<Vec<F>> {
    let Rref { m, pivots } = rref(a);
    let cols = a.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                if !m[(r, f)].is_zero() {
                    v[p] = -m[(r, f)].clone();
                }
            }
            v
        })
        .collect()
}

/// A solution of `a x = b` when one exists.
pub fn solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<Matrix<F>> {
    assert_eq!(a.rows(), b.rows(), "solve: row count");
    let n = a.cols();
    let aug = hcat(a, b);
    let Rref { m, pivots } = rref(&aug);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (r, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(p, j)] = m[(r, n + j)].clone();
        }
    }
    Some(x)
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let Rref { m, pivots } = rref(&hcat(a, &Matrix::identity(n)));
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(m.select(&rows, &cols))
}

pub fn det<F: Field>(a: &Matrix<F>) -> F {
    assert!(a.is_square(), "det of a non-square matrix");
    let n = a.rows();
    let scale = a.scale_hint();
    let mut m = a.clone();
    let mut acc = F::one();
    for c in 0..n {
        let Some(p) = (c..n).filter(|&i| !m[(i, c)].is_small(scale)).max_by(|&x, &y| {
            m[(x, c)].pivot_score().partial_cmp(&m[(y, c)].pivot_score()).unwrap_or(std::cmp::Ordering::Equal)
        }) else {
            return F::zero();
        };
        if p != c {
            for j in 0..n {
                let t = m[(p, j)].clone();
                m[(p, j)] = m[(c, j)].clone();
                m[(c, j)] = t;
            }
            acc = -acc;
        }
        let piv = m[(c, c)].clone();
        acc = acc.mul_ref(&piv);
        let inv = piv.inv().expect("pivot is nonzero");
        for i in c + 1..n {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].mul_ref(&inv);
            for j in c + 1..n {
                if !m[(c, j)].is_zero() {
                    m[(i, j)] = m[(i, j)].sub_ref(&f.mul_ref(&m[(c, j)]));
                }
            }
            m[(i, c)] = F::zero();
        }
    }
    acc
}

pub fn hcat<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    assert_eq!(a.rows(), b.rows(), "hcat: row count");
    let mut out = Matrix::zeros(a.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = a[(i, j)].clone();
        }
        for j in 0..b.cols() {
            out[(i, a.cols() + j)] = b[(i, j)].clone();
        }
    }
    out
}

pub fn vcat<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    assert_eq!(a.cols(), b.cols(), "vcat: column count");
    let mut out = Matrix::zeros(a.rows() + b.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out[(a.rows() + i, j)] = b[(i, j)].clone();
        }
    }
    out
}

/// The generic point `s = s0` at which exact values are screened numerically.
pub(crate) fn screen_point() -> Complex64 {
    Complex64::from_polar(1.05, 0.7)
}

/// Eigenspaces of `m` for those `candidates` that are eigenvalues, as
/// `(candidate index, basis)`. Stops once the eigenvectors span the space.
/// Exact matrices are screened numerically before the exact null-space solve.
pub fn eigenspaces<F: Field>(m: &Matrix<F>, candidates: &[F]) -> Vec<(usize, Vec<Vec<F>>)> {
    let n = m.rows();
    let s0 = screen_point();
    let shadow = if F::EXACT { m.try_map(|x| x.to_complex(s0).ok_or(())).ok() } else { None };
    let mut out = Vec::new();
    let mut found = 0;
    for (idx, lambda) in candidates.iter().enumerate() {
        if found == n {
            break;
        }
        if let (Some(nm), Some(l0)) = (&shadow, lambda.to_complex(s0)) {
            if !numerically_singular(&nm.sub(&Matrix::scalar(n, l0))) {
                continue;
            }
        }
        let ns = null_space(&m.sub(&Matrix::scalar(n, lambda.clone())));
        if !ns.is_empty() {
            found += ns.len();
            out.push((idx, ns));
        }
    }
    out
}

/// Partial-pivoting elimination with a loose relative threshold; errs
/// towards "singular" since an exact test follows.
fn numerically_singular(m: &Matrix<Complex64>) -> bool {
    let n = m.rows();
    let scale = m.scale_hint().max(1.0);
    let mut a = m.to_rows();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].norm().total_cmp(&a[y][c].norm())).unwrap();
        if a[p][c].norm() <= 1e-7 * scale {
            return true;
        }
        a.swap(p, c);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                let t = a[c][j];
                a[i][j] -= f * t;
            }
        }
    }
    false
}
