//! Companion matrices and fast products of chains of them.
//!
//! A companion matrix of dimension `k` is determined by its first row
//! `(f_1, ..., f_k)`; below the first row it has ones on the subdiagonal
//! and zeros elsewhere.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, PolyMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct CompanionMatrix<E> {
    top_row: Vec<E>,
}

impl<E: Clone> CompanionMatrix<E> {
    pub fn new(top_row: Vec<E>) -> Result<Self> {
        if top_row.is_empty() {
            return Err(Error::invalid("companion matrix needs dimension at least 1"));
        }
        Ok(CompanionMatrix { top_row })
    }

    pub fn dim(&self) -> usize {
        self.top_row.len()
    }

    pub fn top_row(&self) -> &[E] {
        &self.top_row
    }

    pub fn dense<D: Domain<Elem = E>>(&self, dom: &D) -> Matrix<E> {
        let k = self.dim();
        Matrix::from_fn(k, k, |i, j| {
            if i == 0 {
                self.top_row[j].clone()
            } else if j + 1 == i {
                dom.one()
            } else {
                dom.zero()
            }
        })
    }

    pub fn is_invertible<D: Domain<Elem = E>>(&self, dom: &D) -> bool {
        dom.inv(&self.top_row[self.dim() - 1]).is_some()
    }

    /// Closed-form inverse: rows `e_2, ..., e_k` followed by
    /// `(1, -f_1, ..., -f_{k-1}) / f_k`.
    pub fn inverse<D: Domain<Elem = E>>(&self, dom: &D) -> Option<Matrix<E>> {
        let k = self.dim();
        let fk_inv = dom.inv(&self.top_row[k - 1])?;
        Some(Matrix::from_fn(k, k, |i, j| {
            if i + 1 < k {
                if j == i + 1 {
                    dom.one()
                } else {
                    dom.zero()
                }
            } else if j == 0 {
                fk_inv.clone()
            } else {
                dom.neg(&dom.mul(&self.top_row[j - 1], &fk_inv))
            }
        }))
    }

    /// `P * F` in `O(k^2)`.
    pub fn right_mul<D: Domain<Elem = E>>(&self, dom: &D, p: &Matrix<E>) -> Matrix<E> {
        let k = self.dim();
        Matrix::from_fn(p.rows(), k, |i, j| {
            let t = mul_nz(dom, p.get(i, 0), &self.top_row[j]);
            if j + 1 < k {
                dom.add(&t, p.get(i, j + 1))
            } else {
                t
            }
        })
    }

    /// `F * v` in `O(k)`.
    pub fn mul_vec<D: Domain<Elem = E>>(&self, dom: &D, v: &[E]) -> Vec<E> {
        let mut top = dom.zero();
        for (f, x) in self.top_row.iter().zip(v) {
            if !dom.is_zero(f) && !dom.is_zero(x) {
                top = dom.add(&top, &dom.mul(f, x));
            }
        }
        let mut out = Vec::with_capacity(v.len());
        out.push(top);
        out.extend_from_slice(&v[..v.len() - 1]);
        out
    }
}

fn mul_nz<D: Domain>(dom: &D, a: &D::Elem, b: &D::Elem) -> D::Elem {
    if dom.is_zero(a) || dom.is_zero(b) {
        dom.zero()
    } else {
        dom.mul(a, b)
    }
}

fn check_dims<E>(fs: &[CompanionMatrix<E>]) -> Result<usize> {
    let k = fs.first().ok_or_else(|| Error::invalid("empty chain"))?.top_row.len();
    for f in fs {
        if f.top_row.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: f.top_row.len() });
        }
    }
    Ok(k)
}

/// `F_1 F_2 ... F_m` with `O(k^2)` work per factor.
pub fn chain_product<D: Domain>(dom: &D, fs: &[CompanionMatrix<D::Elem>]) -> Result<Matrix<D::Elem>> {
    check_dims(fs)?;
    let mut p = fs[0].dense(dom);
    for f in &fs[1..] {
        p = f.right_mul(dom, &p);
    }
    Ok(p)
}

/// Product of exactly `k` companion factors as `(I - L)^{-1} R`.
///
/// With `t = F_1 ... F_k x`, the entries satisfy
/// `t_j = sum_{i <= k-j} f_{j,i} t_{j+i} + sum_{i <= j} f_{j,k-j+i} x_i`,
/// a triangular system solved column by column.
fn block_product<D: Domain>(dom: &D, fs: &[CompanionMatrix<D::Elem>]) -> Matrix<D::Elem> {
    let k = fs.len();
    let mut out = Matrix::zeros(dom, k, k);
    for col in 0..k {
        let mut t = vec![dom.zero(); k];
        for j in (0..k).rev() {
            let f = &fs[j].top_row;
            // R part: x = e_col contributes f_{j, k-j+col} when col <= j (0-based: col < j+1)
            let mut acc = if col <= j { f[k - 1 - j + col].clone() } else { dom.zero() };
            for i in 1..k - j {
                acc = dom.add(&acc, &mul_nz(dom, &f[i - 1], &t[j + i]));
            }
            t[j] = acc;
        }
        for (j, v) in t.into_iter().enumerate() {
            out.set(j, col, v);
        }
    }
    out
}

/// Same product as [`chain_product`], computed blockwise: each run of `k`
/// factors through a triangular solve, blocks combined by matrix products.
pub fn chain_product_blocked<D: Domain>(dom: &D, fs: &[CompanionMatrix<D::Elem>]) -> Result<Matrix<D::Elem>> {
    let k = check_dims(fs)?;
    let mut acc: Option<Matrix<D::Elem>> = None;
    let mut chunks = fs.chunks_exact(k);
    for block in chunks.by_ref() {
        let b = block_product(dom, block);
        acc = Some(match acc {
            None => b,
            Some(a) => a.mul(dom, &b)?,
        });
    }
    for f in chunks.remainder() {
        acc = Some(match acc {
            None => f.dense(dom),
            Some(a) => f.right_mul(dom, &a),
        });
    }
    Ok(acc.unwrap())
}

/// Products of all windows `F_j ... F_{j+n-1}`, `j = 1..=m-n+1`, using
/// `P_{j+1} = F_j^{-1} P_j F_{j+n}`.
pub fn sliding_window_products<D: Domain>(
    dom: &D,
    fs: &[CompanionMatrix<D::Elem>],
    window: usize,
) -> Result<Vec<Matrix<D::Elem>>> {
    let k = check_dims(fs)?;
    let m = fs.len();
    if window == 0 || window > m {
        return Err(Error::invalid(format!("window {} outside 1..={}", window, m)));
    }
    let mut inverses = Vec::with_capacity(m - window);
    for (j, f) in fs[..m - window].iter().enumerate() {
        if !f.is_invertible(dom) {
            return Err(Error::NonInvertibleFactor(j + 1));
        }
        inverses.push(dom.inv(&f.top_row[k - 1]).unwrap());
    }
    let mut p = chain_product(dom, &fs[..window])?;
    let mut out = Vec::with_capacity(m - window + 1);
    for j in 0..m - window {
        out.push(p.clone());
        p = left_div(dom, &fs[j], &inverses[j], &p);
        p = fs[j + window].right_mul(dom, &p);
    }
    out.push(p);
    Ok(out)
}

/// `F^{-1} P` in `O(k^2)` given `1/f_k`.
fn left_div<D: Domain>(dom: &D, f: &CompanionMatrix<D::Elem>, fk_inv: &D::Elem, p: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    let k = f.dim();
    Matrix::from_fn(k, p.cols(), |i, j| {
        if i + 1 < k {
            p.get(i + 1, j).clone()
        } else {
            let mut acc = p.get(0, j).clone();
            for l in 0..k - 1 {
                acc = dom.sub(&acc, &mul_nz(dom, &f.top_row[l], p.get(l + 1, j)));
            }
            dom.mul(&acc, fk_inv)
        }
    })
}

/// Checks the degree pattern of a product of `m` companion matrices whose
/// top rows satisfy `deg f_j <= j`: entry `(i, j)` (1-based) must have
/// degree at most `m + j - i`.
pub fn degree_pattern_check<D: Domain>(b: &PolyMatrix<D>, m: usize) -> bool {
    let k = b.dim();
    (0..k).all(|i| {
        (0..k).all(|j| {
            let e = b.entry(i, j);
            match e.len().checked_sub(1) {
                None => true,
                Some(deg) => (deg as i64) <= m as i64 + j as i64 - i as i64,
            }
        })
    })
}
