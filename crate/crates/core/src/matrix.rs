//! Dense matrices over a domain and square matrices of polynomials.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::poly::{self, horner, taylor_shift};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros<D: Domain<Elem = E>>(dom: &D, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![dom.zero(); rows * cols] }
    }

    pub fn identity<D: Domain<Elem = E>>(dom: &D, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| if i == j { dom.one() } else { dom.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Classical product; zero entries of `self` are skipped.
    pub fn mul<D: Domain<Elem = E>>(&self, dom: &D, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(dom, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if dom.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if dom.is_zero(b) {
                        continue;
                    }
                    let t = dom.mul(a, b);
                    let idx = i * out.cols + j;
                    out.data[idx] = dom.add(&out.data[idx], &t);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec<D: Domain<Elem = E>>(&self, dom: &D, v: &[E]) -> Result<Vec<E>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = dom.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if dom.is_zero(a) || dom.is_zero(b) {
                        continue;
                    }
                    acc = dom.add(&acc, &dom.mul(a, b));
                }
                acc
            })
            .collect())
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

/// A square matrix whose entries are polynomials in `N` (monomial basis).
#[derive(Clone, Debug)]
pub struct PolyMatrix<D: Domain> {
    dom: D,
    k: usize,
    entries: Vec<Vec<D::Elem>>,
}

impl<D: Domain> PartialEq for PolyMatrix<D> {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.entries == other.entries
    }
}

impl<D: Domain> PolyMatrix<D> {
    /// `entries[i][j]` is the coefficient list of entry `(i, j)`.
    pub fn new(dom: &D, entries: Vec<Vec<Vec<D::Elem>>>) -> Result<Self> {
        let k = entries.len();
        if k == 0 {
            return Err(Error::invalid("matrix must have positive dimension"));
        }
        let mut flat = Vec::with_capacity(k * k);
        for row in entries {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, found: row.len() });
            }
            for e in row {
                flat.push(poly::trimmed(dom, e));
            }
        }
        Ok(PolyMatrix { dom: dom.clone(), k, entries: flat })
    }

    /// Constant matrix.
    pub fn constant(dom: &D, m: &Matrix<D::Elem>) -> Result<Self> {
        Self::new(
            dom,
            m.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|c| vec![c]).collect())
                .collect(),
        )
    }

    /// `1 x 1` matrix holding one polynomial.
    pub fn scalar(dom: &D, p: Vec<D::Elem>) -> Self {
        PolyMatrix { dom: dom.clone(), k: 1, entries: vec![poly::trimmed(dom, p)] }
    }

    pub fn domain(&self) -> &D {
        &self.dom
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &[D::Elem] {
        &self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[Vec<D::Elem>] {
        &self.entries
    }

    /// Largest entry degree; `None` when every entry is zero.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|e| e.len().checked_sub(1)).max()
    }

    pub fn eval(&self, x: &D::Elem) -> Matrix<D::Elem> {
        Matrix::from_fn(self.k, self.k, |i, j| horner(&self.dom, self.entry(i, j), x))
    }

    pub fn eval_u64(&self, x: u64) -> Matrix<D::Elem> {
        self.eval(&self.dom.from_u64(x))
    }

    /// `A(N + c)`.
    pub fn shift(&self, c: &D::Elem) -> Self {
        PolyMatrix {
            dom: self.dom.clone(),
            k: self.k,
            entries: self.entries.iter().map(|e| taylor_shift(&self.dom, e, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch { expected: self.k, found: other.k });
        }
        let k = self.k;
        let d = &self.dom;
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = Vec::new();
                for l in 0..k {
                    let p = poly::mul(d, self.entry(i, l), other.entry(l, j));
                    acc = poly::add(d, &acc, &p);
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { dom: d.clone(), k, entries })
    }

    /// True if the matrix has the shape of a (generalized) companion matrix:
    /// arbitrary first row, arbitrary subdiagonal, zeros elsewhere.
    pub fn is_companion_shape(&self) -> bool {
        let k = self.k;
        (1..k).all(|i| (0..k).all(|j| j + 1 == i || self.entry(i, j).is_empty()))
    }

    /// Companion shape with constant one on the subdiagonal.
    pub fn is_unit_companion(&self) -> bool {
        let one = vec![self.dom.one()];
        self.is_companion_shape() && (1..self.k).all(|i| self.entry(i, i - 1) == one.as_slice())
    }

    pub fn to_rows(&self) -> Vec<Vec<Vec<D::Elem>>> {
        (0..self.k)
            .map(|i| (0..self.k).map(|j| self.entry(i, j).to_vec()).collect())
            .collect()
    }
}
