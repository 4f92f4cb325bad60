//! Truncated power series and Euclidean operations.

use num_bigint::BigUint;

use super::{mul, sub, trimmed};
use crate::domain::Domain;
use crate::error::{Error, Result};

/// `sum_{i <= n} a_{n-i} X^i`. Requires `n >= deg(a)`; coefficients above `n` are ignored.
pub fn rev<D: Domain>(dom: &D, a: &[D::Elem], n: usize) -> Vec<D::Elem> {
    let out = (0..=n)
        .map(|i| a.get(n - i).cloned().unwrap_or_else(|| dom.zero()))
        .collect();
    trimmed(dom, out)
}

pub fn trunc_high<E: Clone>(a: &[E], l: usize) -> Vec<E> {
    a[..a.len().min(l)].to_vec()
}

pub fn shift_low<E: Clone>(a: &[E], l: usize) -> Vec<E> {
    if l >= a.len() {
        Vec::new()
    } else {
        a[l..].to_vec()
    }
}

/// `1/p mod X^n` by Newton iteration `q <- 2q - q^2 p`.
pub fn inverse<D: Domain>(dom: &D, p: &[D::Elem], n: usize) -> Result<Vec<D::Elem>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let p0 = p.first().ok_or(Error::ConstantTermNotInvertible)?;
    let q0 = dom.inv(p0).ok_or(Error::ConstantTermNotInvertible)?;
    let mut q = vec![q0];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        // e = p q - 1 has no terms below the old precision
        let pq = dom.convolve(&trunc_high(p, prec), &q);
        let old = q.len();
        let e: Vec<D::Elem> = (old..prec)
            .map(|i| pq.get(i).cloned().unwrap_or_else(|| dom.zero()))
            .collect();
        let corr = dom.convolve(&e, &q);
        for i in old..prec {
            let c = corr.get(i - old).cloned().unwrap_or_else(|| dom.zero());
            q.push(dom.neg(&c));
        }
    }
    Ok(trimmed(dom, q))
}

/// Euclidean division by `b` with invertible leading coefficient.
pub fn divrem<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Result<(Vec<D::Elem>, Vec<D::Elem>)> {
    let b = trimmed(dom, b.to_vec());
    let a = trimmed(dom, a.to_vec());
    let lead = b.last().ok_or_else(|| Error::invalid("division by the zero polynomial"))?;
    if a.len() < b.len() {
        return Ok((Vec::new(), a));
    }
    let db = b.len() - 1;
    let dq = a.len() - b.len();
    if db < mul::KARATSUBA_THRESHOLD || dq < mul::KARATSUBA_THRESHOLD {
        let li = dom
            .inv(lead)
            .ok_or_else(|| Error::NotInvertible("leading coefficient".into()))?;
        let mut r = a;
        let mut q = vec![dom.zero(); dq + 1];
        for i in (0..=dq).rev() {
            let c = dom.mul(&r[i + db], &li);
            if !dom.is_zero(&c) {
                for (j, bj) in b.iter().enumerate() {
                    let t = dom.mul(&c, bj);
                    r[i + j] = dom.sub(&r[i + j], &t);
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        return Ok((trimmed(dom, q), trimmed(dom, r)));
    }
    let ra = rev(dom, &a, a.len() - 1);
    let rb = rev(dom, &b, db);
    let inv = inverse(dom, &rb, dq + 1).map_err(|_| Error::NotInvertible("leading coefficient".into()))?;
    let rq = trunc_high(&dom.convolve(&trunc_high(&ra, dq + 1), &inv), dq + 1);
    let q = rev(dom, &rq, dq);
    let r = sub(dom, &a, &mul(dom, &q, &b));
    Ok((q, r))
}

pub fn rem<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Result<Vec<D::Elem>> {
    Ok(divrem(dom, a, b)?.1)
}

/// `base^n mod f` for monic `f`.
pub fn powmod<D: Domain>(dom: &D, base: &[D::Elem], n: &BigUint, f: &[D::Elem]) -> Result<Vec<D::Elem>> {
    let f = trimmed(dom, f.to_vec());
    if f.len() < 2 || !dom.is_one(f.last().unwrap()) {
        return Err(Error::NotMonic);
    }
    let b = rem(dom, base, &f)?;
    let mut acc = rem(dom, &[dom.one()], &f)?;
    for i in (0..n.bits()).rev() {
        acc = rem(dom, &mul(dom, &acc, &acc), &f)?;
        if n.bit(i) {
            acc = rem(dom, &mul(dom, &acc, &b), &f)?;
        }
    }
    Ok(acc)
}

/// Monic gcd over a field.
pub fn gcd<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Result<Vec<D::Elem>> {
    let mut x = trimmed(dom, a.to_vec());
    let mut y = trimmed(dom, b.to_vec());
    while !y.is_empty() {
        let r = rem(dom, &x, &y)?;
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        let li = dom.inv(&l).ok_or_else(|| Error::NotInvertible("leading coefficient".into()))?;
        x = x.iter().map(|c| dom.mul(c, &li)).collect();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{PrimeField, Rationals};
    use crate::poly::horner;

    fn q_poly(q: &Rationals, c: &[i64]) -> Vec<num_rational::BigRational> {
        c.iter().map(|&v| q.from_i64(v)).collect()
    }

    #[test]
    fn reversal() {
        let q = Rationals::new();
        let p = q_poly(&q, &[1, 2, 3]);
        assert_eq!(rev(&q, &p, 2), q_poly(&q, &[3, 2, 1]));
        assert_eq!(rev(&q, &rev(&q, &p, 4), 4), p);
    }

    #[test]
    fn fibonacci_inverse() {
        let q = Rationals::new();
        let inv = inverse(&q, &q_poly(&q, &[1, -1, -1]), 11).unwrap();
        assert_eq!(inv, q_poly(&q, &[1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]));
        let geo = inverse(&q, &q_poly(&q, &[1, -1]), 4).unwrap();
        assert_eq!(geo, q_poly(&q, &[1, 1, 1, 1]));
        assert_eq!(inverse(&q, &q_poly(&q, &[0, 1]), 3), Err(Error::ConstantTermNotInvertible));
    }

    #[test]
    fn x_cubed_mod_golden() {
        let q = Rationals::new();
        let f = q_poly(&q, &[-1, -1, 1]);
        let r = powmod(&q, &q_poly(&q, &[0, 1]), &BigUint::from(3u32), &f).unwrap();
        assert_eq!(r, q_poly(&q, &[1, 2]));
        let z = powmod(&q, &q_poly(&q, &[0, 1]), &BigUint::from(5u32), &q_poly(&q, &[0, 1])).unwrap();
        assert!(z.is_empty());
        assert_eq!(powmod(&q, &f, &BigUint::from(2u32), &q_poly(&q, &[1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn fast_division_matches_schoolbook() {
        let f = PrimeField::new(998_244_353).unwrap();
        let a: Vec<u64> = (0..300).map(|i| (i * i + 7) % 1000).collect();
        let b: Vec<u64> = (0..100).map(|i| (3 * i + 1) % 97).collect();
        let (q, r) = divrem(&f, &a, &b).unwrap();
        assert!(r.len() < b.len());
        let back = crate::poly::add(&f, &mul(&f, &q, &b), &r);
        assert_eq!(back, a);
        for x in [0u64, 5, 123] {
            let lhs = horner(&f, &a, &x);
            let rhs = f.add(&f.mul(&horner(&f, &q, &x), &horner(&f, &b, &x)), &horner(&f, &r, &x));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn polynomial_gcd() {
        let q = Rationals::new();
        // (X-1)(X-2) and (X-1)(X+3)
        let a = q_poly(&q, &[2, -3, 1]);
        let b = q_poly(&q, &[-3, 2, 1]);
        assert_eq!(gcd(&q, &a, &b).unwrap(), q_poly(&q, &[-1, 1]));
    }
}
