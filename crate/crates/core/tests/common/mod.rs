//! Plain-iteration oracles shared by the integration tests.
#![allow(dead_code)]

use linrec::domain::Domain;
use linrec::matrix::{Matrix, PolyMatrix};
use linrec::poly::horner;
use rand::Rng;

/// `A(hi) ... A(lo)`, the identity when `lo > hi`.
pub fn naive_product<D: Domain>(a: &PolyMatrix<D>, lo: u64, hi: u64) -> Matrix<D::Elem> {
    let dom = a.domain();
    let mut acc = Matrix::identity(dom, a.dim());
    for j in lo..=hi {
        acc = a.eval_u64(j).mul(dom, &acc).unwrap();
    }
    acc
}

/// `P_0, ..., P_{n}` for `P_{j} = A(j) P_{j-1}`.
pub fn naive_walk<D: Domain>(a: &PolyMatrix<D>, p0: &[D::Elem], n: u64) -> Vec<Vec<D::Elem>> {
    let dom = a.domain();
    let mut out = vec![p0.to_vec()];
    for j in 1..=n {
        let next = a.eval_u64(j).mul_vec(dom, out.last().unwrap()).unwrap();
        out.push(next);
    }
    out
}

/// Terms `0..count` of `P_n = a_1 P_{n-1} + ... + a_k P_{n-k}`.
pub fn naive_const_terms<D: Domain>(dom: &D, coeffs: &[D::Elem], initial: &[D::Elem], count: usize) -> Vec<D::Elem> {
    let k = coeffs.len();
    let mut s: Vec<D::Elem> = initial.iter().take(count).cloned().collect();
    while s.len() < count {
        let n = s.len();
        let mut acc = dom.zero();
        for i in 0..k {
            acc = dom.add(&acc, &dom.mul(&coeffs[i], &s[n - 1 - i]));
        }
        s.push(acc);
    }
    s
}

/// `p^m mod X^len` by repeated multiplication.
pub fn naive_power<D: Domain>(dom: &D, p: &[D::Elem], m: u64, len: usize) -> Vec<D::Elem> {
    let mut acc = vec![dom.zero(); len];
    if len == 0 {
        return acc;
    }
    acc[0] = dom.one();
    for _ in 0..m {
        acc = naive_mul(dom, &acc, p, len);
    }
    acc
}

/// `a b mod X^len`.
pub fn naive_mul<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem], len: usize) -> Vec<D::Elem> {
    let mut out = vec![dom.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if dom.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = dom.add(&out[i + j], &dom.mul(x, y));
        }
    }
    out
}

/// `1/p mod X^len` by long division.
pub fn naive_inverse<D: Domain>(dom: &D, p: &[D::Elem], len: usize) -> Vec<D::Elem> {
    let inv0 = dom.inv(&p[0]).expect("invertible constant term");
    let mut c: Vec<D::Elem> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = if j == 0 { dom.one() } else { dom.zero() };
        for k in 1..p.len().min(j + 1) {
            acc = dom.sub(&acc, &dom.mul(&p[k], &c[j - k]));
        }
        c.push(dom.mul(&acc, &inv0));
    }
    c
}

pub fn eval_poly<D: Domain>(dom: &D, p: &[D::Elem], n: u64) -> D::Elem {
    horner(dom, p, &dom.from_u64(n))
}

/// Sorted distinct random indices in `0..=max`.
pub fn random_indices(rng: &mut impl Rng, count: usize, max: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (0..count).map(|_| rng.gen_range(0..=max)).collect();
    v.sort_unstable();
    v.dedup();
    v
}
