//! Dense matrices over a [`Field`].

use crate::error::{Error, Result};
use crate::field::Field;
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = c.clone();
        }
        m
    }

    pub fn diag(d: Vec<F>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (k, v) in d.into_iter().enumerate() {
            m[(k, k)] = v;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_cols(cols: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> std::result::Result<G, E>) -> std::result::Result<Matrix<G>, E> {
        let data = self.data.iter().map(f).collect::<std::result::Result<Vec<G>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    fn check_same(&self, o: &Self, what: &str) {
        assert!(
            self.rows == o.rows && self.cols == o.cols,
            "{what}: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            o.rows,
            o.cols
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o, "add");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_same(o, "sub");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|a| if a.is_zero() { F::zero() } else { a.mul_ref(c) }).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "mul: inner dimensions");
        let nz_rows: Vec<Vec<usize>> =
            (0..o.rows).map(|k| (0..o.cols).filter(|&j| !o[(k, j)].is_zero()).collect()).collect();
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for &j in &nz_rows[k] {
                    let p = a.mul_ref(&o[(k, j)]);
                    let slot = &mut out.data[i * o.cols + j];
                    *slot = if slot.is_zero() { p } else { slot.add_ref(&p) };
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "mul_vec: length");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add_ref(&a.mul_ref(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// `diag(d) * self`.
    pub fn left_diag(&self, d: &[F]) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let slot = &mut out.data[i * self.cols + j];
                if !slot.is_zero() {
                    *slot = slot.mul_ref(&d[i]);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = &o[(k, l)];
                        if !b.is_zero() {
                            out[(i * o.rows + k, j * o.cols + l)] = a.mul_ref(b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for k in 0..self.rows.min(self.cols) {
            acc = acc.add_ref(&self[(k, k)]);
        }
        acc
    }

    /// Largest entry magnitude (1 for exact fields), used as a tolerance scale.
    pub fn scale_hint(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(1.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        let s = self.scale_hint();
        self.data.iter().all(|x| x.is_small(s))
    }

    /// Entrywise comparison, exact or within tolerance.
    pub fn approx_eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.sub(o).is_small_rel(self.scale_hint().max(o.scale_hint()))
    }

    fn is_small_rel(&self, scale: f64) -> bool {
        self.data.iter().all(|x| x.is_small(scale))
    }

    pub fn is_diagonal(&self) -> bool {
        let s = self.scale_hint();
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_small(s)))
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)].clone()).collect()
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<F> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        if self.rows == 0 {
            return Some(F::zero());
        }
        let c = self[(0, 0)].clone();
        self.diagonal().iter().all(|d| d.approx_eq(&c)).then_some(c)
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        let cols = self.cols;
        self.data.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(k, x)| (k / cols, k % cols, x))
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}
