//! Conversion between the monomial and Newton (falling factorial) bases.
//!
//! Small inputs use synthetic division, which needs no inversions and works
//! in any characteristic. Larger inputs use divide and conquer on the
//! falling factorials `(X)_m = X(X-1)...(X-m+1)` with Taylor shifts, at
//! cost `O(M(d) log d)`; this needs `d!` to be a unit.

use std::collections::HashMap;

use super::{add, mul, scale_argument, series, taylor_shift, trimmed};
use crate::domain::{char_at_least, Domain};
use crate::error::{Error, Result};

const NAIVE_BELOW: usize = 32;

fn node<D: Domain>(dom: &D, start: &D::Elem, step: &D::Elem, i: usize) -> D::Elem {
    dom.add(start, &dom.mul(step, &dom.from_u64(i as u64)))
}

fn to_newton_naive<D: Domain>(dom: &D, p: &[D::Elem], start: &D::Elem, step: &D::Elem) -> Vec<D::Elem> {
    let mut cur = p.to_vec();
    let mut out = Vec::with_capacity(p.len());
    let mut x = start.clone();
    while !cur.is_empty() {
        // synthetic division by (X - x)
        let n = cur.len();
        let mut q = vec![dom.zero(); n - 1];
        let mut acc = cur[n - 1].clone();
        for i in (0..n - 1).rev() {
            q[i] = acc.clone();
            acc = dom.add(&cur[i], &dom.mul(&acc, &x));
        }
        out.push(acc);
        cur = q;
        x = dom.add(&x, step);
    }
    trimmed(dom, out)
}

fn from_newton_naive<D: Domain>(dom: &D, c: &[D::Elem], start: &D::Elem, step: &D::Elem) -> Vec<D::Elem> {
    let n = c.len();
    if n == 0 {
        return Vec::new();
    }
    let mut p = vec![c[n - 1].clone()];
    for j in (0..n - 1).rev() {
        let xj = node(dom, start, step, j);
        // p <- p * (X - xj) + c_j
        let mut q = vec![dom.zero(); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            q[i + 1] = dom.add(&q[i + 1], a);
            let t = dom.mul(a, &xj);
            q[i] = dom.sub(&q[i], &t);
        }
        q[0] = dom.add(&q[0], &c[j]);
        p = q;
    }
    trimmed(dom, p)
}

struct FallingCache<D: Domain> {
    polys: HashMap<usize, Vec<D::Elem>>,
}

impl<D: Domain> FallingCache<D> {
    fn new() -> Self {
        FallingCache { polys: HashMap::new() }
    }

    /// `(X)_m` in the monomial basis.
    fn get(&mut self, dom: &D, m: usize) -> Vec<D::Elem> {
        if let Some(p) = self.polys.get(&m) {
            return p.clone();
        }
        let p = if m == 0 {
            vec![dom.one()]
        } else if m <= 8 {
            let mut p = vec![dom.one()];
            for j in 0..m {
                p = mul(dom, &p, &[dom.from_i64(-(j as i64)), dom.one()]);
            }
            p
        } else {
            let h = m / 2;
            let lo = self.get(dom, h);
            let hi = self.get(dom, m - h);
            let hi = taylor_shift(dom, &hi, &dom.from_i64(-(h as i64)));
            mul(dom, &lo, &hi)
        };
        self.polys.insert(m, p.clone());
        p
    }
}

/// Monomial coefficients (degree < n) to Newton coefficients on `0, 1, 2, ...`.
fn to_falling<D: Domain>(dom: &D, p: &[D::Elem], n: usize, cache: &mut FallingCache<D>) -> Result<Vec<D::Elem>> {
    if n <= NAIVE_BELOW {
        let mut c = to_newton_naive(dom, p, &dom.zero(), &dom.one());
        c.resize(n, dom.zero());
        return Ok(c);
    }
    let m = n / 2;
    let f = cache.get(dom, m);
    let (q, r) = series::divrem(dom, p, &f)?;
    let mut lo = to_falling(dom, &r, m, cache)?;
    let q = taylor_shift(dom, &q, &dom.from_u64(m as u64));
    let hi = to_falling(dom, &q, n - m, cache)?;
    lo.extend(hi);
    Ok(lo)
}

fn from_falling<D: Domain>(dom: &D, c: &[D::Elem], cache: &mut FallingCache<D>) -> Vec<D::Elem> {
    let n = c.len();
    if n <= NAIVE_BELOW {
        return from_newton_naive(dom, c, &dom.zero(), &dom.one());
    }
    let m = n / 2;
    let r = from_falling(dom, &c[..m], cache);
    let q = from_falling(dom, &c[m..], cache);
    let q = taylor_shift(dom, &q, &dom.from_i64(-(m as i64)));
    let f = cache.get(dom, m);
    add(dom, &r, &mul(dom, &f, &q))
}

fn use_fast<D: Domain>(dom: &D, n: usize) -> bool {
    n > NAIVE_BELOW && char_at_least(dom, n as u64 + 1)
}

/// Newton coefficients of `p` on the nodes `start + i step`.
pub fn to_newton<D: Domain>(dom: &D, p: &[D::Elem], start: &D::Elem, step: &D::Elem) -> Result<Vec<D::Elem>> {
    let n = p.len();
    if !use_fast(dom, n) {
        return Ok(to_newton_naive(dom, p, start, step));
    }
    let hinv = dom
        .inv(step)
        .ok_or_else(|| Error::NotInvertible("progression step".into()))?;
    // p(start + step Y) in the falling factorial basis of Y
    let shifted = scale_argument(dom, &taylor_shift(dom, p, start), step);
    let mut cache = FallingCache::new();
    let c = to_falling(dom, &shifted, n, &mut cache)?;
    Ok(scale_argument(dom, &c, &hinv))
}

/// Monomial coefficients from Newton coefficients on `start + i step`.
pub fn from_newton<D: Domain>(dom: &D, c: &[D::Elem], start: &D::Elem, step: &D::Elem) -> Result<Vec<D::Elem>> {
    let n = c.len();
    if !use_fast(dom, n) {
        return Ok(from_newton_naive(dom, c, start, step));
    }
    let hinv = dom
        .inv(step)
        .ok_or_else(|| Error::NotInvertible("progression step".into()))?;
    let mut cache = FallingCache::new();
    let scaled = scale_argument(dom, c, step);
    let g = from_falling(dom, &scaled, &mut cache);
    // g(Y) = p(start + step Y), so p(X) = g((X - start)/step)
    let g = scale_argument(dom, &g, &hinv);
    Ok(taylor_shift(dom, &g, &dom.neg(start)))
}

/// Evaluates a Newton-basis polynomial at `x` by nested multiplication.
pub fn eval_newton<D: Domain>(dom: &D, c: &[D::Elem], start: &D::Elem, step: &D::Elem, x: &D::Elem) -> D::Elem {
    let n = c.len();
    if n == 0 {
        return dom.zero();
    }
    let mut acc = c[n - 1].clone();
    for j in (0..n - 1).rev() {
        let d = dom.sub(x, &node(dom, start, step, j));
        acc = dom.add(&dom.mul(&acc, &d), &c[j]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{PrimeField, Rationals};
    use crate::poly::horner;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn x_squared_in_falling_factorials() {
        let q = Rationals::new();
        let p = vec![q.zero(), q.zero(), q.one()];
        let c = to_newton(&q, &p, &q.zero(), &q.one()).unwrap();
        assert_eq!(c, vec![q.zero(), q.one(), q.one()]);
        assert_eq!(from_newton(&q, &c, &q.zero(), &q.one()).unwrap(), p);
    }

    #[test]
    fn fast_and_naive_agree() {
        let f = PrimeField::new(998_244_353).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [33usize, 64, 100, 257] {
            let p: Vec<u64> = (0..n).map(|_| rng.gen_range(0..f.modulus())).collect();
            let (s, h) = (rng.gen_range(0..1000u64), rng.gen_range(1..1000u64));
            let fast = to_newton(&f, &p, &s, &h).unwrap();
            let naive = to_newton_naive(&f, &p, &s, &h);
            assert_eq!(fast, naive);
            assert_eq!(from_newton(&f, &fast, &s, &h).unwrap(), p);
            assert_eq!(from_newton_naive(&f, &naive, &s, &h), p);
            let x = 12345u64;
            assert_eq!(eval_newton(&f, &fast, &s, &h, &x), horner(&f, &p, &x));
        }
    }

    #[test]
    fn small_characteristic_uses_synthetic_division() {
        let f = PrimeField::new(31).unwrap();
        let p: Vec<u64> = (0..50).map(|i| (i * 7 + 3) % 31).collect();
        let c = to_newton(&f, &p, &2, &3).unwrap();
        assert_eq!(from_newton(&f, &c, &2, &3).unwrap(), p);
    }
}
