//! Kernel vectors of matrices of rational functions.

use super::ratfunc::RationalFunction;
use crate::domain::{require_char, Domain};
use crate::error::{Error, Result};
use crate::poly::progression::interp_progression;
use crate::poly::series::{divrem, gcd};
use crate::poly::{add, horner, mul, scale, trimmed};

/// Determinant over a field by Gaussian elimination.
pub(crate) fn det<D: Domain>(dom: &D, mut a: Vec<Vec<D::Elem>>) -> D::Elem {
    let n = a.len();
    let mut acc = dom.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !dom.is_zero(&a[r][c])) else {
            return dom.zero();
        };
        if p != c {
            a.swap(p, c);
            acc = dom.neg(&acc);
        }
        acc = dom.mul(&acc, &a[c][c]);
        let inv = dom.inv(&a[c][c]).expect("field");
        for r in c + 1..n {
            if dom.is_zero(&a[r][c]) {
                continue;
            }
            let f = dom.mul(&a[r][c], &inv);
            for j in c..n {
                let t = dom.mul(&f, &a[c][j]);
                a[r][j] = dom.sub(&a[r][j], &t);
            }
        }
    }
    acc
}

/// Evaluation points used to probe the generic rank.
fn probe<D: Domain>(dom: &D, attempt: u64) -> D::Elem {
    let mut z = attempt.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    dom.from_u64(z % 100_003 + 101)
}

/// Pivot rows for the first column depending on the earlier ones, at one point.
fn first_dependency<D: Domain>(dom: &D, vals: &[Vec<D::Elem>]) -> Option<(usize, Vec<usize>)> {
    let rows = vals.len();
    let cols = vals.first().map_or(0, |r| r.len());
    let mut basis: Vec<(usize, Vec<D::Elem>)> = Vec::new();
    for c in 0..cols {
        let mut v: Vec<D::Elem> = (0..rows).map(|r| vals[r][c].clone()).collect();
        for (p, b) in &basis {
            if dom.is_zero(&v[*p]) {
                continue;
            }
            let f = dom.div(&v[*p], &b[*p]).expect("pivot");
            for r in 0..rows {
                let t = dom.mul(&f, &b[r]);
                v[r] = dom.sub(&v[r], &t);
            }
        }
        match (0..rows).find(|&r| !dom.is_zero(&v[r])) {
            Some(p) => basis.push((p, v)),
            None => return Some((c, basis.into_iter().map(|(p, _)| p).collect())),
        }
    }
    None
}

fn deg<E>(p: &[E]) -> usize {
    p.len().saturating_sub(1)
}

/// A nonzero polynomial vector `v` with `M v = 0` and coprime entries.
///
/// The dependency is minimal: only the first columns up to the first one
/// that depends on its predecessors are used; the remaining entries are zero.
pub fn nullrow<D: Domain>(dom: &D, m: &[Vec<RationalFunction<D>>]) -> Result<Vec<Vec<D::Elem>>> {
    let cols = m.first().map_or(0, |r| r.len());
    if cols == 0 {
        return Err(Error::NoDependency);
    }
    // clear denominators row by row
    let p: Vec<Vec<Vec<D::Elem>>> = m
        .iter()
        .map(|row| {
            let mut l = vec![dom.one()];
            for e in row {
                let g = gcd(dom, &l, e.denominator())?;
                l = divrem(dom, &mul(dom, &l, e.denominator()), &g)?.0;
            }
            row.iter()
                .map(|e| Ok(mul(dom, e.numerator(), &divrem(dom, &l, e.denominator())?.0)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    for attempt in 0..8 {
        let x = probe(dom, attempt);
        let vals: Vec<Vec<D::Elem>> = p.iter().map(|row| row.iter().map(|e| horner(dom, e, &x)).collect()).collect();
        let Some((t, piv)) = first_dependency(dom, &vals) else {
            return Err(Error::NoDependency);
        };
        let mut v = cramer(dom, &p, &piv, t)?;
        if residual_vanishes(dom, &p, &v) {
            let mut g: Vec<D::Elem> = Vec::new();
            for e in &v {
                g = gcd(dom, &g, e)?;
            }
            for e in v.iter_mut() {
                *e = divrem(dom, e, &g)?.0;
            }
            let flat: Vec<D::Elem> = v.iter().flatten().cloned().collect();
            let u = dom.normalizer(&flat);
            let mut v: Vec<Vec<D::Elem>> = v.iter().map(|e| scale(dom, e, &u)).collect();
            v.resize(cols, Vec::new());
            return Ok(v);
        }
    }
    Err(Error::NoDependency)
}

/// `v_c = (-1)^c det(S without column c)` for `S` the pivot rows and columns `0..=t`.
fn cramer<D: Domain>(dom: &D, p: &[Vec<Vec<D::Elem>>], piv: &[usize], t: usize) -> Result<Vec<Vec<D::Elem>>> {
    if t == 0 {
        return Ok(vec![vec![dom.one()]]);
    }
    let bound: usize = piv.iter().map(|&r| (0..=t).map(|c| deg(&p[r][c])).max().unwrap_or(0)).sum();
    require_char(dom, bound as u64 + 1)?;
    let mut samples: Vec<Vec<D::Elem>> = vec![Vec::with_capacity(bound + 1); t + 1];
    for xi in 0..=bound {
        let x = dom.from_u64(xi as u64);
        let s: Vec<Vec<D::Elem>> = piv.iter().map(|&r| (0..=t).map(|c| horner(dom, &p[r][c], &x)).collect()).collect();
        for (c, out) in samples.iter_mut().enumerate() {
            let minor: Vec<Vec<D::Elem>> = s
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, e)| e.clone()).collect())
                .collect();
            let dt = det(dom, minor);
            out.push(if c % 2 == 1 { dom.neg(&dt) } else { dt });
        }
    }
    samples
        .iter()
        .map(|ys| interp_progression(dom, ys, &dom.zero(), &dom.one()).map(|v| trimmed(dom, v)))
        .collect()
}

fn residual_vanishes<D: Domain>(dom: &D, p: &[Vec<Vec<D::Elem>>], v: &[Vec<D::Elem>]) -> bool {
    v.iter().any(|e| !e.is_empty())
        && p.iter().all(|row| {
            let mut acc: Vec<D::Elem> = Vec::new();
            for (e, c) in row.iter().zip(v) {
                acc = add(dom, &acc, &mul(dom, e, c));
            }
            acc.is_empty()
        })
}
