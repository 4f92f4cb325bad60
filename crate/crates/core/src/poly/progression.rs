//! Evaluation, interpolation and value shifting on arithmetic progressions.

use super::{horner, newton, trimmed};
use crate::domain::{batch_inv, char_at_least, factorial_tables, require_char, Domain};
use crate::error::Result;

/// Below these sizes evaluation is done point by point with Horner's rule.
const DIRECT_LEN: usize = 16;

/// Values at `start + i step`, `i < count`, of the polynomial with Newton
/// coefficients `c` on the nodes `start + j step`.
///
/// Uses `v_i / i! = sum_j c_j step^j / (i - j)!`.
pub fn newton_to_values<D: Domain>(dom: &D, c: &[D::Elem], step: &D::Elem, count: usize) -> Result<Vec<D::Elem>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if c.is_empty() {
        return Ok(vec![dom.zero(); count]);
    }
    if !char_at_least(dom, count as u64) || c.len() < DIRECT_LEN || count < DIRECT_LEN {
        let zero = dom.zero();
        return Ok((0..count)
            .map(|i| {
                let x = dom.mul(step, &dom.from_u64(i as u64));
                newton::eval_newton(dom, c, &zero, step, &x)
            })
            .collect());
    }
    let (fact, inv_fact) = factorial_tables(dom, count - 1)?;
    let mut a = Vec::with_capacity(c.len().min(count));
    let mut hp = dom.one();
    for (j, cj) in c.iter().take(count).enumerate() {
        if j > 0 {
            hp = dom.mul(&hp, step);
        }
        a.push(dom.mul(cj, &hp));
    }
    let conv = dom.convolve(&a, &inv_fact);
    Ok((0..count).map(|i| dom.mul(&conv[i], &fact[i])).collect())
}

/// Newton coefficients on `start + j step` of the polynomial of degree
/// `< values.len()` taking `values[i]` at `start + i step`.
pub fn values_to_newton<D: Domain>(dom: &D, values: &[D::Elem], step: &D::Elem) -> Result<Vec<D::Elem>> {
    let n = values.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (_, inv_fact) = factorial_tables(dom, n - 1)?;
    let w: Vec<D::Elem> = values.iter().zip(&inv_fact).map(|(v, f)| dom.mul(v, f)).collect();
    let alt: Vec<D::Elem> = inv_fact
        .iter()
        .enumerate()
        .map(|(i, f)| if i % 2 == 1 { dom.neg(f) } else { f.clone() })
        .collect();
    let conv = dom.convolve(&w, &alt);
    let hinv = dom
        .inv(step)
        .ok_or_else(|| crate::error::Error::NotInvertible("progression step".into()))?;
    let mut out = Vec::with_capacity(n);
    let mut hp = dom.one();
    for (j, cj) in conv.into_iter().take(n).enumerate() {
        if j > 0 {
            hp = dom.mul(&hp, &hinv);
        }
        out.push(dom.mul(&cj, &hp));
    }
    Ok(trimmed(dom, out))
}

/// Values of the monomial-basis `p` at `start + i step` for `i < count`.
pub fn eval_progression<D: Domain>(
    dom: &D,
    p: &[D::Elem],
    start: &D::Elem,
    step: &D::Elem,
    count: usize,
) -> Result<Vec<D::Elem>> {
    let fast_ok = char_at_least(dom, (p.len().max(count)) as u64 + 1) && dom.inv(step).is_some();
    if p.len() < DIRECT_LEN || count < DIRECT_LEN || !fast_ok {
        let mut x = start.clone();
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                x = dom.add(&x, step);
            }
            out.push(horner(dom, p, &x));
        }
        return Ok(out);
    }
    let c = newton::to_newton(dom, p, start, step)?;
    newton_to_values(dom, &c, step, count)
}

/// Monomial coefficients of the interpolant through `(start + i step, values[i])`.
pub fn interp_progression<D: Domain>(dom: &D, values: &[D::Elem], start: &D::Elem, step: &D::Elem) -> Result<Vec<D::Elem>> {
    if values.is_empty() {
        return Ok(Vec::new());
    }
    require_char(dom, values.len() as u64)?;
    let c = values_to_newton(dom, values, step)?;
    newton::from_newton(dom, &c, start, step)
}

/// Shifts samples of a polynomial of degree `<= D`.
///
/// Each entry of `many` holds `f(0), ..., f(D)` for one polynomial `f`
/// (all entries share the same `D`). Returns `f(delta), ..., f(delta + count - 1)`
/// for each. All polynomials share one kernel `1/(delta + u)`, `u` in
/// `[-D, count)`, so the transform of the kernel is computed once.
pub fn shift_values_many<D: Domain>(
    dom: &D,
    many: &[Vec<D::Elem>],
    delta: &D::Elem,
    count: usize,
) -> Result<Vec<Vec<D::Elem>>> {
    if many.is_empty() || count == 0 {
        return Ok(vec![Vec::new(); many.len()]);
    }
    let n = many[0].len();
    debug_assert!(many.iter().all(|v| v.len() == n));
    if n == 1 {
        return Ok(many.iter().map(|v| vec![v[0].clone(); count]).collect());
    }
    let d = n - 1;
    require_char(dom, n as u64)?;
    let zs: Vec<D::Elem> = (0..d + count)
        .map(|t| dom.add(delta, &dom.from_i64(t as i64 - d as i64)))
        .collect();
    let Some(inv) = batch_inv(dom, &zs) else {
        return shift_through_monomials(dom, many, delta, count);
    };
    let (_, inv_fact) = factorial_tables(dom, d)?;
    let weights: Vec<D::Elem> = (0..=d)
        .map(|i| {
            let w = dom.mul(&inv_fact[i], &inv_fact[d - i]);
            if (d - i) % 2 == 1 {
                dom.neg(&w)
            } else {
                w
            }
        })
        .collect();
    let gs: Vec<Vec<D::Elem>> = many
        .iter()
        .map(|v| v.iter().zip(&weights).map(|(a, w)| dom.mul(a, w)).collect())
        .collect();
    let mids = dom.middle_product_many(&gs, &inv);
    // prefactor P(t) = prod_{j=0..D} (delta + t - j)
    let mut pre = Vec::with_capacity(count);
    let mut p = zs[0].clone();
    for z in &zs[1..=d] {
        p = dom.mul(&p, z);
    }
    pre.push(p);
    for t in 1..count {
        let num = dom.mul(&zs[t + d], &inv[t - 1]);
        let next = dom.mul(&pre[t - 1], &num);
        pre.push(next);
    }
    Ok(mids
        .into_iter()
        .map(|m| m.iter().zip(&pre).map(|(a, b)| dom.mul(a, b)).collect())
        .collect())
}

pub fn shift_values<D: Domain>(dom: &D, values: &[D::Elem], delta: &D::Elem, count: usize) -> Result<Vec<D::Elem>> {
    Ok(shift_values_many(dom, &[values.to_vec()], delta, count)?.pop().unwrap())
}

/// Slow path for targets that collide with the sample points.
fn shift_through_monomials<D: Domain>(
    dom: &D,
    many: &[Vec<D::Elem>],
    delta: &D::Elem,
    count: usize,
) -> Result<Vec<Vec<D::Elem>>> {
    many.iter()
        .map(|v| {
            let p = interp_progression(dom, v, &dom.zero(), &dom.one())?;
            eval_progression(dom, &p, delta, &dom.one(), count)
        })
        .collect()
}

/// Values of a fixed polynomial at consecutive integers, advanced with
/// additions only through a forward difference table.
#[derive(Clone, Debug)]
pub struct ForwardDifferences<D: Domain> {
    dom: D,
    diffs: Vec<D::Elem>,
}

impl<D: Domain> ForwardDifferences<D> {
    /// Starts at `x0`.
    pub fn new(dom: &D, p: &[D::Elem], x0: &D::Elem) -> Self {
        let n = p.len().max(1);
        let mut vals: Vec<D::Elem> = Vec::with_capacity(n);
        let mut x = x0.clone();
        for i in 0..n {
            if i > 0 {
                x = dom.add(&x, &dom.one());
            }
            vals.push(horner(dom, p, &x));
        }
        // in-place difference table: vals[i] becomes Δ^i f(x0)
        for i in 1..n {
            for j in (i..n).rev() {
                vals[j] = dom.sub(&vals[j], &vals[j - 1]);
            }
        }
        ForwardDifferences { dom: dom.clone(), diffs: vals }
    }

    pub fn value(&self) -> &D::Elem {
        &self.diffs[0]
    }

    /// Moves from `x` to `x + 1`.
    pub fn advance(&mut self) {
        for i in 0..self.diffs.len() - 1 {
            let v = self.dom.add(&self.diffs[i], &self.diffs[i + 1]);
            self.diffs[i] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn squares_on_even_numbers() {
        let q = Rationals::new();
        let p = vec![q.zero(), q.zero(), q.one()];
        let v = eval_progression(&q, &p, &q.zero(), &q.from_i64(2), 3).unwrap();
        assert_eq!(v, vec![q.from_i64(0), q.from_i64(4), q.from_i64(16)]);
    }

    #[test]
    fn interpolate_squares() {
        let q = Rationals::new();
        let vals: Vec<_> = [0, 1, 4, 9].iter().map(|&v| q.from_i64(v)).collect();
        let p = interp_progression(&q, &vals, &q.zero(), &q.one()).unwrap();
        assert_eq!(p, vec![q.zero(), q.zero(), q.one()]);
    }

    #[test]
    fn degree_fifty_against_horner() {
        let q = Rationals::new();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p: Vec<_> = (0..51).map(|_| q.from_i64(rng.gen_range(-9..10))).collect();
        let v = eval_progression(&q, &p, &q.zero(), &q.one(), 100).unwrap();
        for (i, vi) in v.iter().enumerate() {
            assert_eq!(*vi, horner(&q, &p, &q.from_i64(i as i64)));
        }
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let f = PrimeField::new(998_244_353).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for d in [1usize, 3, 40, 100] {
            let p: Vec<u64> = (0..=d).map(|_| rng.gen_range(0..f.modulus())).collect();
            let samples: Vec<u64> = (0..=d as u64).map(|x| horner(&f, &p, &x)).collect();
            let delta = rng.gen_range(1000..100_000u64);
            let got = shift_values(&f, &samples, &delta, 2 * d + 3).unwrap();
            for (t, g) in got.iter().enumerate() {
                assert_eq!(*g, horner(&f, &p, &(delta + t as u64)));
            }
        }
    }

    #[test]
    fn shift_onto_sample_points() {
        let q = Rationals::new();
        let p: Vec<_> = [3, -1, 2].iter().map(|&v| q.from_i64(v)).collect();
        let samples: Vec<_> = (0..3).map(|x| horner(&q, &p, &q.from_i64(x))).collect();
        let got = shift_values(&q, &samples, &q.from_i64(1), 5).unwrap();
        for (t, g) in got.iter().enumerate() {
            assert_eq!(*g, horner(&q, &p, &q.from_i64(t as i64 + 1)));
        }
    }

    #[test]
    fn fractional_shift_over_rationals() {
        let q = Rationals::new();
        let p: Vec<_> = [1, 2, 3, 4].iter().map(|&v| q.from_i64(v)).collect();
        let samples: Vec<_> = (0..4).map(|x| horner(&q, &p, &q.from_i64(x))).collect();
        let delta = q.parse("1/3").unwrap();
        let got = shift_values(&q, &samples, &delta, 4).unwrap();
        for (t, g) in got.iter().enumerate() {
            assert_eq!(*g, horner(&q, &p, &q.add(&delta, &q.from_i64(t as i64))));
        }
    }

    #[test]
    fn forward_differences_track_values() {
        let f = PrimeField::new(101).unwrap();
        let p = vec![5u64, 0, 3, 1];
        let mut fd = ForwardDifferences::new(&f, &p, &7);
        for x in 7..300u64 {
            assert_eq!(*fd.value(), horner(&f, &p, &(x % 101)));
            fd.advance();
        }
    }
}
