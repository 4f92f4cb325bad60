//! Selected coefficients of powers, inverses and their products.

use num_bigint::BigUint;

use super::factorial::multi_factorial;
use crate::constrec::ConstRecurrence;
use crate::domain::{pow, require_char, Domain};
use crate::error::{Error, Result};
use crate::holonomic::{closure_convolution, multi_eval, multi_eval_with, HolonomicRecurrence};
use crate::index::IndexSet;
use crate::poly::{mul, scale, series, taylor_shift, trimmed};
use crate::polyrec::Mode;

fn nonzero<D: Domain>(dom: &D, p: &[D::Elem]) -> Result<Vec<D::Elem>> {
    let p = trimmed(dom, p.to_vec());
    if p.is_empty() {
        return Err(Error::invalid("the zero polynomial"));
    }
    Ok(p)
}

/// Splits `p = X^t p~` with `p~(0) != 0`.
fn split_x_power<D: Domain>(dom: &D, p: &[D::Elem]) -> (u64, Vec<D::Elem>) {
    let t = p.iter().position(|c| !dom.is_zero(c)).unwrap_or(0);
    (t as u64, p[t..].to_vec())
}

fn mul_trunc<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem], l: usize) -> Vec<D::Elem> {
    let mut c = mul(dom, &a[..a.len().min(l)], &b[..b.len().min(l)]);
    c.truncate(l);
    c
}

fn pow_trunc<D: Domain>(dom: &D, a: &[D::Elem], mut e: u64, l: usize) -> Vec<D::Elem> {
    let mut acc = vec![dom.one()];
    let mut base = a[..a.len().min(l)].to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_trunc(dom, &acc, &base, l);
        }
        e >>= 1;
        if e > 0 {
            base = mul_trunc(dom, &base, &base, l);
        }
    }
    acc
}

fn pow_full<D: Domain>(dom: &D, a: &[D::Elem], e: u64) -> Vec<D::Elem> {
    pow_trunc(dom, a, e, usize::MAX)
}

fn pad<D: Domain>(dom: &D, mut v: Vec<D::Elem>, l: usize) -> Vec<D::Elem> {
    v.resize(l, dom.zero());
    v
}

/// The `l` leading coefficients of `p^n`, from `X^{nd}` downwards.
///
/// `rev(p^n) = rev(p)^n`, so these are the low coefficients of a power of
/// the reversal: `q = p^c` with `c = ceil(l/d)` has degree at least `l`,
/// the rest is powering truncated to `l` terms.
pub fn power_top_coeffs<D: Domain>(dom: &D, p: &[D::Elem], n: u64, l: usize) -> Result<Vec<D::Elem>> {
    let p = nonzero(dom, p)?;
    let d = p.len() - 1;
    if l < d {
        return Err(Error::invalid(format!("need at least deg p = {d} coefficients, asked for {l}")));
    }
    if l == 0 {
        return Ok(Vec::new());
    }
    if d == 0 {
        return Ok(pad(dom, vec![pow(dom, &p[0], n)], l));
    }
    let c = l.div_ceil(d) as u64;
    let rev = |v: &[D::Elem]| v.iter().rev().cloned().collect::<Vec<_>>();
    if n <= c {
        return Ok(pad(dom, rev(&pow_full(dom, &p, n)).into_iter().take(l).collect(), l));
    }
    let q = pow_full(dom, &p, c);
    let rq = rev(&q);
    let mut acc = pow_trunc(dom, &rq, n / c, l);
    if n % c > 0 {
        acc = mul_trunc(dom, &acc, &pow_trunc(dom, &rev(&p), n % c, l), l);
    }
    Ok(pad(dom, acc, l))
}

/// Coefficients `[X^j] 1/p` for `j` in `lo .. lo + vals.len()`.
struct Window<E> {
    lo: usize,
    vals: Vec<E>,
}

impl<E> Window<E> {
    fn get(&self, j: usize) -> &E {
        &self.vals[j - self.lo]
    }
}

/// The `l` leading coefficients of `1/p mod X^n`, from `X^{n-1}` downwards.
///
/// Newton's step `q_{2m} = q_m (1 + e)`, `e = 1 - p q_m`, only needs the top
/// `d` coefficients of `q_m` to find `e`, and the top `L + d` of them to
/// find the top `L` of `q_{2m}`. So after a full inversion to a small
/// precision, each doubling carries `d` fewer coefficients.
pub fn inverse_top_coeffs<D: Domain>(dom: &D, p: &[D::Elem], n: usize, l: usize) -> Result<Vec<D::Elem>> {
    let p = nonzero(dom, p)?;
    let d = p.len() - 1;
    if dom.inv(&p[0]).is_none() {
        return Err(Error::ConstantTermNotInvertible);
    }
    if l < d || l > n {
        return Err(Error::invalid(format!("need deg p = {d} <= l = {l} <= n = {n}")));
    }
    if l == 0 {
        return Ok(Vec::new());
    }
    let ratio = n as f64 / l as f64;
    let stages = if ratio > 2.0 { (ratio.log2() - ratio.log2().log2()).ceil().max(0.0) as usize } else { 0 };
    let mut precs = vec![n];
    let mut lens = vec![l];
    for _ in 0..stages {
        let m = precs.last().unwrap().div_ceil(2);
        let len = lens.last().unwrap() + d;
        if len > m {
            break;
        }
        precs.push(m);
        lens.push(len);
    }
    let bottom = *precs.last().unwrap();
    let full = pad(dom, series::inverse(dom, &p, bottom)?, bottom);
    let lo = bottom - lens.last().unwrap();
    let mut w = Window { lo, vals: full[lo..].to_vec() };
    for i in (0..precs.len() - 1).rev() {
        let (m, np, len) = (precs[i + 1], precs[i], lens[i]);
        // e_t for t in m .. m + d
        let e: Vec<D::Elem> = (m..m + d)
            .map(|t| {
                let mut acc = dom.zero();
                for s in t - m + 1..=d {
                    acc = dom.add(&acc, &dom.mul(&p[s], w.get(t - s)));
                }
                dom.neg(&acc)
            })
            .collect();
        let lo = np - len;
        let vals = (lo..np)
            .map(|j| {
                if j < m {
                    return w.get(j).clone();
                }
                let mut acc = dom.zero();
                for (dt, et) in e.iter().enumerate().take(j - m + 1) {
                    acc = dom.add(&acc, &dom.mul(w.get(j - m - dt), et));
                }
                acc
            })
            .collect();
        w = Window { lo, vals };
    }
    Ok(w.vals.into_iter().rev().collect())
}

/// Coefficients `c_0, ..., c_{count-1}` of `1/p`, `p(0)` invertible.
fn inverse_head<D: Domain>(dom: &D, p: &[D::Elem], count: usize) -> Result<Vec<D::Elem>> {
    let inv0 = dom.inv(&p[0]).ok_or(Error::ConstantTermNotInvertible)?;
    let mut c: Vec<D::Elem> = Vec::with_capacity(count);
    for j in 0..count {
        let mut acc = if j == 0 { dom.one() } else { dom.zero() };
        for k in 1..p.len().min(j + 1) {
            acc = dom.sub(&acc, &dom.mul(&p[k], &c[j - k]));
        }
        c.push(dom.mul(&acc, &inv0));
    }
    Ok(c)
}

/// Coefficients `n .. n + l` of the power series `1/p`.
///
/// They satisfy `c_j = sum_k (-p_k / p_0) c_{j-k}` for `j >= 1`.
pub fn inverse_coeff_range<D: Domain>(dom: &D, p: &[D::Elem], n: u64, l: usize) -> Result<Vec<D::Elem>> {
    let p = nonzero(dom, p)?;
    let d = p.len() - 1;
    let inv0 = dom.inv(&p[0]).ok_or(Error::ConstantTermNotInvertible)?;
    if d == 0 {
        return Ok((0..l as u64).map(|j| if n + j == 0 { inv0.clone() } else { dom.zero() }).collect());
    }
    let coeffs = (1..=d).map(|k| dom.neg(&dom.mul(&p[k], &inv0))).collect();
    let rec = ConstRecurrence::new(dom, coeffs, inverse_head(dom, &p, d)?)?;
    Ok(rec.consecutive_terms(&BigUint::from(n), l))
}

/// `(N - 1)(N - 2) ... (N - k + 1)`.
fn falling_below<D: Domain>(dom: &D, k: usize) -> Vec<D::Elem> {
    let mut f = vec![dom.one()];
    for i in 1..k {
        f = mul(dom, &f, &[dom.from_i64(-(i as i64)), dom.one()]);
    }
    f
}

/// Coefficients of `p^m` at the given indices.
///
/// `D_N = N! [X^N] p^m` satisfies
/// `D_N = sum_k ((m+1) k - N) (N-1)...(N-k+1) (p_k/p_0) D_{N-k}`,
/// a companion recurrence whose `k`-th coefficient has degree `k`.
pub fn power_coeffs_at<D: Domain>(dom: &D, p: &[D::Elem], m: u64, indices: &IndexSet) -> Result<Vec<D::Elem>> {
    let idx = indices.as_slice();
    let p = trimmed(dom, p.to_vec());
    if p.is_empty() {
        return Ok(idx.iter().map(|&n| if n == 0 && m == 0 { dom.one() } else { dom.zero() }).collect());
    }
    let (t, p) = split_x_power(dom, &p);
    let shift = t.saturating_mul(m);
    let d = p.len() - 1;
    let top = (d as u64).saturating_mul(m);
    // indices into p~^m that can be nonzero
    let js: Vec<u64> = idx.iter().filter(|&&n| n >= shift && n - shift <= top).map(|&n| n - shift).collect();
    let mut vals = if js.is_empty() {
        Vec::new()
    } else if d == 0 {
        vec![pow(dom, &p[0], m); js.len()]
    } else {
        let maxj = *js.last().unwrap();
        require_char(dom, maxj + 1)?;
        let inv0 = dom.inv(&p[0]).ok_or(Error::ConstantTermNotInvertible)?;
        let m1 = dom.from_u64(m + 1);
        let dd = dom.from_u64(d as u64);
        let mut coeffs = vec![vec![dom.one()]];
        for k in 1..=d {
            let lin = vec![dom.mul(&m1, &dom.from_u64(k as u64)), dom.from_i64(-1)];
            let f = scale(dom, &mul(dom, &lin, &falling_below(dom, k)), &dom.mul(&p[k], &inv0));
            coeffs.push(scale(dom, &taylor_shift(dom, &f, &dd), &dom.from_i64(-1)));
        }
        // D_0 .. D_{d-1} from the same relation
        let mut head = vec![pow(dom, &p[0], m)];
        for big_n in 1..d {
            let mut acc = dom.zero();
            for k in 1..=big_n {
                let f = crate::poly::horner(dom, &coeffs[k], &dom.from_i64(big_n as i64 - d as i64));
                acc = dom.sub(&acc, &dom.mul(&f, &head[big_n - k]));
            }
            head.push(acc);
        }
        let rec = HolonomicRecurrence::new(dom, coeffs, head, 0)?;
        let jset = IndexSet::new(js.clone())?;
        let dn = multi_eval_with(&rec, &jset, Mode::CompanionRestricted)?;
        let fact = multi_factorial(dom, &jset)?;
        dn.iter()
            .zip(&fact)
            .map(|(a, f)| dom.div(a, f).ok_or_else(|| Error::NotInvertible("factorial".into())))
            .collect::<Result<Vec<_>>>()?
    };
    let mut it = vals.drain(..);
    Ok(idx
        .iter()
        .map(|&n| if n >= shift && n - shift <= top { it.next().unwrap() } else { dom.zero() })
        .collect())
}

/// Second factor of [`mixed_coeffs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cofactor {
    /// `q^m`.
    Power(u64),
    /// `1/q`.
    Inverse,
}

/// A power series factor: `X^shift` times either a constant or a sequence
/// given by a recurrence.
enum Factor<D: Domain> {
    Constant(D::Elem),
    Rec(HolonomicRecurrence<D>),
}

/// Coefficients of `p^m` for `p(0) != 0`:
/// `p_0 N c_N = sum_k ((m+1) k - N) p_k c_{N-k}`.
fn power_factor<D: Domain>(dom: &D, p: &[D::Elem], m: u64) -> Result<Factor<D>> {
    let d = p.len() - 1;
    if d == 0 || m == 0 {
        return Ok(Factor::Constant(pow(dom, &p[0], m)));
    }
    let dd = dom.from_u64(d as u64);
    let m1 = dom.from_u64(m + 1);
    let mut coeffs = vec![vec![dom.mul(&p[0], &dd), p[0].clone()]];
    for (k, pk) in p.iter().enumerate().skip(1) {
        // p_k (n + d - (m+1) k)
        let c0 = dom.sub(&dd, &dom.mul(&m1, &dom.from_u64(k as u64)));
        coeffs.push(vec![dom.mul(pk, &c0), pk.clone()]);
    }
    let head = pow_trunc(dom, p, m, d);
    HolonomicRecurrence::new(dom, coeffs, pad(dom, head, d), 0).map(Factor::Rec)
}

fn inverse_factor<D: Domain>(dom: &D, q: &[D::Elem]) -> Result<Factor<D>> {
    let d = q.len() - 1;
    let inv0 = dom.inv(&q[0]).ok_or(Error::ConstantTermNotInvertible)?;
    if d == 0 {
        return Ok(Factor::Constant(inv0));
    }
    let coeffs = q.iter().map(|c| vec![c.clone()]).collect();
    HolonomicRecurrence::new(dom, coeffs, inverse_head(dom, q, d)?, 0).map(Factor::Rec)
}

/// Coefficients of `p^{m1} q^{m2}` or `p^{m1} / q` at the given indices.
///
/// Both factors are holonomic; their product series is annihilated by the
/// convolution closure of the two recurrences.
pub fn mixed_coeffs<D: Domain>(dom: &D, p: &[D::Elem], m1: u64, q: &[D::Elem], cof: Cofactor, indices: &IndexSet) -> Result<Vec<D::Elem>> {
    if !dom.is_exact() {
        return Err(Error::invalid("mixed coefficients need an exact domain"));
    }
    let idx = indices.as_slice();
    let p = nonzero(dom, p)?;
    let q = nonzero(dom, q)?;
    let (t1, p) = split_x_power(dom, &p);
    let f1 = power_factor(dom, &p, m1)?;
    let (shift2, f2) = match cof {
        Cofactor::Power(m2) => {
            let (t2, q) = split_x_power(dom, &q);
            (t2.saturating_mul(m2), power_factor(dom, &q, m2)?)
        }
        Cofactor::Inverse => (0, inverse_factor(dom, &q)?),
    };
    let shift = t1.saturating_mul(m1).saturating_add(shift2);
    let js: Vec<u64> = idx.iter().filter(|&&n| n >= shift).map(|&n| n - shift).collect();
    let jset = IndexSet::new(js)?;
    let mut vals = match (f1, f2) {
        (Factor::Constant(a), Factor::Constant(b)) => {
            let ab = dom.mul(&a, &b);
            jset.as_slice().iter().map(|&j| if j == 0 { ab.clone() } else { dom.zero() }).collect()
        }
        (Factor::Constant(a), Factor::Rec(r)) | (Factor::Rec(r), Factor::Constant(a)) => {
            multi_eval(&r, &jset)?.iter().map(|v| dom.mul(v, &a)).collect()
        }
        (Factor::Rec(r1), Factor::Rec(r2)) => multi_eval(&closure_convolution(&r1, &r2)?, &jset)?,
    };
    let mut it = vals.drain(..);
    Ok(idx.iter().map(|&n| if n >= shift { it.next().unwrap() } else { dom.zero() }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints<D: Domain>(d: &D, v: &[i64]) -> Vec<D::Elem> {
        v.iter().map(|&c| d.from_i64(c)).collect()
    }

    fn random_poly(f: &PrimeField, rng: &mut ChaCha8Rng, d: usize) -> Vec<u64> {
        let mut p: Vec<u64> = (0..=d).map(|_| rng.gen_range(0..f.modulus())).collect();
        p[0] = rng.gen_range(1..f.modulus());
        p[d] = rng.gen_range(1..f.modulus());
        p
    }

    #[test]
    fn top_of_powers() {
        let q = Rationals::new();
        assert_eq!(power_top_coeffs(&q, &ints(&q, &[1, 1]), 4, 2).unwrap(), ints(&q, &[1, 4]));
        assert_eq!(power_top_coeffs(&q, &ints(&q, &[0, 1]), 9, 3).unwrap(), ints(&q, &[1, 0, 0]));
        assert!(power_top_coeffs(&q, &ints(&q, &[1, 1, 1]), 4, 1).is_err());
        let f = PrimeField::new(1_000_000_007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let d = rng.gen_range(1..=5);
            let p = random_poly(&f, &mut rng, d);
            let n = rng.gen_range(0..60);
            let l = rng.gen_range(d..=3 * d + 4);
            let full = pow_full(&f, &p, n);
            let want: Vec<u64> = (0..l).map(|i| if i < full.len() { full[full.len() - 1 - i] } else { 0 }).collect();
            assert_eq!(power_top_coeffs(&f, &p, n, l).unwrap(), want, "d={d} n={n} l={l}");
        }
    }

    #[test]
    fn top_of_inverses() {
        let q = Rationals::new();
        assert_eq!(inverse_top_coeffs(&q, &ints(&q, &[1, -1]), 16, 4).unwrap(), ints(&q, &[1, 1, 1, 1]));
        assert_eq!(inverse_top_coeffs(&q, &ints(&q, &[1, -1, -1]), 16, 3).unwrap(), ints(&q, &[987, 610, 377]));
        assert_eq!(inverse_top_coeffs(&q, &ints(&q, &[0, 1]), 16, 3), Err(Error::ConstantTermNotInvertible));
        let f = PrimeField::new(998_244_353).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let d = rng.gen_range(0..=5);
            let p = random_poly(&f, &mut rng, d);
            let n = rng.gen_range(d.max(1)..=700);
            let l = rng.gen_range(d.max(1)..=n.min(d + 12));
            let full = pad(&f, series::inverse(&f, &p, n).unwrap(), n);
            let want: Vec<u64> = (0..l).map(|i| full[n - 1 - i]).collect();
            assert_eq!(inverse_top_coeffs(&f, &p, n, l).unwrap(), want, "d={d} n={n} l={l}");
        }
    }

    #[test]
    fn inverse_ranges() {
        let q = Rationals::new();
        assert_eq!(inverse_coeff_range(&q, &ints(&q, &[1, -1]), 100, 3).unwrap(), ints(&q, &[1, 1, 1]));
        assert_eq!(inverse_coeff_range(&q, &ints(&q, &[1, -1, -1]), 10, 1).unwrap(), ints(&q, &[89]));
        let f = PrimeField::new(1_000_000_007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_poly(&f, &mut rng, 4);
        let full = pad(&f, series::inverse(&f, &p, 505).unwrap(), 505);
        assert_eq!(inverse_coeff_range(&f, &p, 500, 5).unwrap(), full[500..].to_vec());
        assert_eq!(inverse_coeff_range(&f, &[3], 0, 2).unwrap(), vec![f.inv(&3).unwrap(), 0]);
    }

    #[test]
    fn coefficients_of_powers() {
        let q = Rationals::new();
        let one = IndexSet::new(vec![3]).unwrap();
        assert_eq!(power_coeffs_at(&q, &ints(&q, &[1, 1]), 10, &one).unwrap(), ints(&q, &[120]));
        let all = IndexSet::new(vec![0, 1, 5]).unwrap();
        assert_eq!(power_coeffs_at(&q, &ints(&q, &[3]), 4, &all).unwrap(), ints(&q, &[81, 0, 0]));
        let f = PrimeField::new(1_000_000_007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..6 {
            let d = rng.gen_range(1..=3);
            let mut p = random_poly(&f, &mut rng, d);
            if rng.gen_bool(0.3) {
                p.insert(0, 0);
            }
            let m = rng.gen_range(0..=8);
            let full = pow_full(&f, &p, m);
            let idx: Vec<u64> = (0..=24).collect();
            let want: Vec<u64> = idx.iter().map(|&i| full.get(i as usize).copied().unwrap_or(0)).collect();
            assert_eq!(power_coeffs_at(&f, &p, m, &IndexSet::new(idx).unwrap()).unwrap(), want);
        }
        // long enough for the restricted engine
        let p = vec![2u64, 5, 7];
        let full = pow_full(&f, &p, 400);
        let idx: Vec<u64> = vec![0, 1, 333, 400, 799, 800, 801];
        let want: Vec<u64> = idx.iter().map(|&i| full.get(i as usize).copied().unwrap_or(0)).collect();
        assert_eq!(power_coeffs_at(&f, &p, 400, &IndexSet::new(idx).unwrap()).unwrap(), want);
    }

    #[test]
    fn mixed_products() {
        let q = Rationals::new();
        let idx = IndexSet::new(vec![0, 1, 2, 3]).unwrap();
        let v = mixed_coeffs(&q, &ints(&q, &[1, 1]), 2, &ints(&q, &[1, -1]), Cofactor::Inverse, &idx).unwrap();
        assert_eq!(v, ints(&q, &[1, 3, 4, 4]));
        let v = mixed_coeffs(&q, &ints(&q, &[1, 1]), 1, &ints(&q, &[1, 1]), Cofactor::Power(1), &IndexSet::new(vec![1]).unwrap()).unwrap();
        assert_eq!(v, ints(&q, &[2]));

        let f = PrimeField::new(1_000_000_007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 31;
        for _ in 0..4 {
            let (dp, dr) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let p = random_poly(&f, &mut rng, dp);
            let r = random_poly(&f, &mut rng, dr);
            let m1 = rng.gen_range(1..=3);
            let m2 = rng.gen_range(1..=3);
            let idx = IndexSet::new((0..n as u64).collect()).unwrap();
            let pm = pad(&f, pow_trunc(&f, &p, m1, n), n);
            let want = mul_trunc(&f, &pm, &pad(&f, series::inverse(&f, &r, n).unwrap(), n), n);
            assert_eq!(mixed_coeffs(&f, &p, m1, &r, Cofactor::Inverse, &idx).unwrap(), pad(&f, want, n));
            let want = mul_trunc(&f, &pm, &pow_trunc(&f, &r, m2, n), n);
            assert_eq!(mixed_coeffs(&f, &p, m1, &r, Cofactor::Power(m2), &idx).unwrap(), pad(&f, want, n));
        }
    }
}
