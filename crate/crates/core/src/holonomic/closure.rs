//! Sums, products and convolutions of holonomic sequences.
//!
//! Sums and products work in the space spanned by the shifts of the two
//! operands over rational functions in `n`. Convolutions go through the
//! generating functions: each operand becomes a linear differential
//! equation, the product of the two power series is annihilated by an
//! equation found the same way over rational functions in `x`, and that
//! equation is read back as a recurrence.

use super::nullrow::nullrow;
use super::ratfunc::RationalFunction;
use super::HolonomicRecurrence;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::poly::{add, derivative, horner, mul, scale, sub, taylor_shift, trimmed};

type Poly<D> = Vec<<D as Domain>::Elem>;
type Rf<D> = RationalFunction<D>;

/// Singularities beyond this index are not searched for in positive characteristic.
const ROOT_HORIZON: u64 = 1 << 16;

fn check_pair<D: Domain>(r1: &HolonomicRecurrence<D>, r2: &HolonomicRecurrence<D>) -> Result<D> {
    let d = r1.domain();
    if !d.same_ring(r2.domain()) {
        return Err(Error::DomainMismatch);
    }
    if !d.is_exact() {
        return Err(Error::invalid("closure operations need an exact domain"));
    }
    Ok(d.clone())
}

/// Largest integer root of `p` that is at least `lo`, searched up to the horizon.
fn largest_root<D: Domain>(dom: &D, p: &[D::Elem], lo: u64) -> Result<Option<u64>> {
    let hi = match dom.characteristic() {
        0 => u64::MAX - 1,
        c => ROOT_HORIZON.min(c - 1),
    };
    let mut last = None;
    let mut from = lo;
    while from <= hi {
        match dom.first_integer_zero(p, from, hi)? {
            Some(j) => {
                last = Some(j);
                from = j + 1;
            }
            None => break,
        }
    }
    Ok(last)
}

/// Shift matrix of one operand: column `i` holds the coordinates of
/// `P_{n+1+i}` in the basis `P_n, ..., P_{n+k-1}`.
fn shift_matrix<D: Domain>(r: &HolonomicRecurrence<D>) -> Result<Vec<Vec<Rf<D>>>> {
    let d = r.domain();
    let k = r.depth();
    let a = r.coeffs();
    let mut t = vec![vec![Rf::zero(d); k]; k];
    for i in 0..k - 1 {
        t[i + 1][i] = Rf::one(d);
    }
    for m in 0..k {
        // P_{n+k} = -sum_j a_j(n)/a_0(n) P_{n+k-j}, with m = k - j
        let num: Poly<D> = a[k - m].iter().map(|c| d.neg(c)).collect();
        t[m][k - 1] = Rf::new(d, num, a[0].clone())?;
    }
    Ok(t)
}

fn apply<D: Domain>(dom: &D, t: &[Vec<Rf<D>>], v: &[Rf<D>]) -> Vec<Rf<D>> {
    t.iter()
        .map(|row| {
            let mut acc = Rf::zero(dom);
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
        .collect()
}

fn kron<D: Domain>(dom: &D, a: &[Vec<Rf<D>>], b: &[Vec<Rf<D>>]) -> Vec<Vec<Rf<D>>> {
    let (ka, kb) = (a.len(), b.len());
    (0..ka * kb)
        .map(|r| (0..ka * kb).map(|c| {
            let x = &a[r / kb][c / kb];
            let y = &b[r % kb][c % kb];
            if x.is_zero() || y.is_zero() { Rf::zero(dom) } else { x.mul(y) }
        }).collect())
        .collect()
}

/// Minimal relation `sum_t c_t(n) S_{n+t} = 0` among the iterates
/// `w_{t+1}(n) = T(n) w_t(n+1)`.
fn shift_dependency<D: Domain>(dom: &D, t: &[Vec<Rf<D>>], start: Vec<Rf<D>>) -> Result<Vec<Poly<D>>> {
    let dim = start.len();
    let one = dom.one();
    let mut cols = vec![start];
    for _ in 0..dim {
        let shifted: Vec<Rf<D>> = cols.last().unwrap().iter().map(|c| c.shift(&one)).collect();
        cols.push(apply(dom, t, &shifted));
    }
    let m: Vec<Vec<Rf<D>>> = (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut v = nullrow(dom, &m)?;
    while v.last().is_some_and(|e| e.is_empty()) {
        v.pop();
    }
    Ok(v)
}

/// Builds the output recurrence from `sum_t c_t(n) S_{n+t} = 0`, valid for
/// `n >= base`, with the terms computed by `term`.
fn finish<D: Domain>(dom: &D, c: Vec<Poly<D>>, base: u64, seq: impl Fn(usize) -> Result<Vec<D::Elem>>) -> Result<HolonomicRecurrence<D>> {
    let mut coeffs: Vec<Poly<D>> = c.into_iter().rev().collect();
    if coeffs.len() == 1 {
        // q(n) S_n = 0 becomes q(n+1) S_{n+1} = 0
        let q = taylor_shift(dom, &coeffs[0], &dom.one());
        coeffs = vec![q, Vec::new()];
    }
    let k = coeffs.len() as u64 - 1;
    let offset = match largest_root(dom, &coeffs[0], base)? {
        Some(r) => r + 1,
        None => base,
    };
    let initial = seq((offset + k) as usize)?;
    HolonomicRecurrence::new(dom, coeffs, initial, offset)
}

fn operand_base<D: Domain>(r: &HolonomicRecurrence<D>) -> Result<u64> {
    let root = largest_root(r.domain(), &r.coeffs()[0], 0)?;
    Ok(r.offset().max(root.map_or(0, |x| x + 1)))
}

/// Annihilator of `P_n + Q_n`, of depth at most `k + l`.
pub fn closure_sum<D: Domain>(r1: &HolonomicRecurrence<D>, r2: &HolonomicRecurrence<D>) -> Result<HolonomicRecurrence<D>> {
    let dom = check_pair(r1, r2)?;
    let (t1, t2) = (shift_matrix(r1)?, shift_matrix(r2)?);
    let (k1, k2) = (t1.len(), t2.len());
    let mut t = vec![vec![Rf::zero(&dom); k1 + k2]; k1 + k2];
    for i in 0..k1 {
        for j in 0..k1 {
            t[i][j] = t1[i][j].clone();
        }
    }
    for i in 0..k2 {
        for j in 0..k2 {
            t[k1 + i][k1 + j] = t2[i][j].clone();
        }
    }
    let mut start = vec![Rf::zero(&dom); k1 + k2];
    start[0] = Rf::one(&dom);
    start[k1] = Rf::one(&dom);
    let c = shift_dependency(&dom, &t, start)?;
    let base = operand_base(r1)?.max(operand_base(r2)?);
    finish(&dom, c, base, |n| {
        let (p, q) = (r1.terms(n)?, r2.terms(n)?);
        Ok(p.iter().zip(&q).map(|(a, b)| dom.add(a, b)).collect())
    })
}

/// Annihilator of `P_n Q_n`, of depth at most `k l`.
pub fn closure_product<D: Domain>(r1: &HolonomicRecurrence<D>, r2: &HolonomicRecurrence<D>) -> Result<HolonomicRecurrence<D>> {
    let dom = check_pair(r1, r2)?;
    let t = kron(&dom, &shift_matrix(r1)?, &shift_matrix(r2)?);
    let mut start = vec![Rf::zero(&dom); t.len()];
    start[0] = Rf::one(&dom);
    let c = shift_dependency(&dom, &t, start)?;
    let base = operand_base(r1)?.max(operand_base(r2)?);
    finish(&dom, c, base, |n| {
        let (p, q) = (r1.terms(n)?, r2.terms(n)?);
        Ok(p.iter().zip(&q).map(|(a, b)| dom.mul(a, b)).collect())
    })
}

// ---------------------------------------------------------------------------
// Differential equations for generating functions

/// `sum_i c_i(x) D^i` with `D = d/dx`.
struct DiffOp<D: Domain> {
    coeffs: Vec<Poly<D>>,
}

impl<D: Domain> DiffOp<D> {
    fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `S(m, i)` for `m, i <= n`: `theta^m = sum_i S(m, i) x^i D^i`.
fn stirling2<D: Domain>(dom: &D, n: usize) -> Vec<Vec<D::Elem>> {
    let mut s = vec![vec![dom.zero(); n + 1]; n + 1];
    s[0][0] = dom.one();
    for m in 1..=n {
        for i in 1..=m {
            let a = dom.mul(&dom.from_u64(i as u64), &s[m - 1][i]);
            s[m][i] = dom.add(&a, &s[m - 1][i - 1]);
        }
    }
    s
}

/// Turns `sum_e x^e q_e(theta)` into `sum_i c_i(x) D^i`.
fn theta_to_d<D: Domain>(dom: &D, q: &[Poly<D>]) -> DiffOp<D> {
    let r = q.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0);
    let st = stirling2(dom, r);
    let mut coeffs: Vec<Poly<D>> = vec![Vec::new(); r + 1];
    for (e, qe) in q.iter().enumerate() {
        for i in 0..=r {
            let mut c = dom.zero();
            for (m, qm) in qe.iter().enumerate() {
                if m >= i {
                    c = dom.add(&c, &dom.mul(qm, &st[m][i]));
                }
            }
            if !dom.is_zero(&c) {
                let mut mono = vec![dom.zero(); e + i + 1];
                mono[e + i] = c;
                coeffs[i] = add(dom, &coeffs[i], &mono);
            }
        }
    }
    DiffOp { coeffs }
}

/// Operator `L` and polynomial `h` with `L f = h` for `f = sum P_n x^n`.
fn recurrence_to_ode<D: Domain>(r: &HolonomicRecurrence<D>) -> Result<(DiffOp<D>, Poly<D>)> {
    let dom = r.domain();
    let k = r.depth();
    let a = r.coeffs();
    // b_j multiplies P_{n+j}
    let b: Vec<&Poly<D>> = (0..=k).map(|j| &a[k - j]).collect();
    // x^{k-j} b_j(theta - j)
    let mut q: Vec<Poly<D>> = vec![Vec::new(); k + 1];
    for j in 0..=k {
        q[k - j] = taylor_shift(dom, b[j], &dom.neg(&dom.from_u64(j as u64)));
    }
    let top = r.offset() as usize + k;
    let terms = r.terms(top)?;
    let mut h: Poly<D> = Vec::with_capacity(top);
    for big_n in 0..top {
        let mut acc = dom.zero();
        for j in 0..=k {
            if big_n + j < k || b[j].is_empty() {
                continue;
            }
            let idx = big_n + j - k;
            // b_j(N - k) may have a negative argument
            let x = dom.sub(&dom.from_u64(big_n as u64), &dom.from_u64(k as u64));
            acc = dom.add(&acc, &dom.mul(&horner(dom, b[j], &x), &terms[idx]));
        }
        h.push(acc);
    }
    Ok((theta_to_d(dom, &q), trimmed(dom, h)))
}

/// `(h D - h') L`, which annihilates `f` when `L f = h`.
fn homogenize<D: Domain>(dom: &D, l: DiffOp<D>, h: &Poly<D>) -> DiffOp<D> {
    if h.is_empty() {
        return l;
    }
    let hp = derivative(dom, h);
    let r = l.order();
    let mut out: Vec<Poly<D>> = vec![Vec::new(); r + 2];
    for (i, c) in l.coeffs.iter().enumerate() {
        let t = sub(dom, &mul(dom, h, &derivative(dom, c)), &mul(dom, &hp, c));
        out[i] = add(dom, &out[i], &t);
        out[i + 1] = add(dom, &out[i + 1], &mul(dom, h, c));
    }
    while out.len() > 1 && out.last().unwrap().is_empty() {
        out.pop();
    }
    DiffOp { coeffs: out }
}

/// Annihilating operator of `f g`.
fn ode_product<D: Domain>(dom: &D, l1: &DiffOp<D>, l2: &DiffOp<D>) -> Result<DiffOp<D>> {
    let (r1, r2) = (l1.order(), l2.order());
    let dim = r1 * r2;
    // f^{(r1)} = sum_i red1[i] f^{(i)}
    let red = |l: &DiffOp<D>| -> Result<Vec<Rf<D>>> {
        let r = l.order();
        (0..r)
            .map(|i| Rf::new(dom, l.coeffs[i].iter().map(|c| dom.neg(c)).collect(), l.coeffs[r].clone()))
            .collect()
    };
    let (red1, red2) = (red(l1)?, red(l2)?);
    let idx = |i: usize, j: usize| i * r2 + j;
    let mut cols: Vec<Vec<Rf<D>>> = Vec::with_capacity(dim + 1);
    let mut u = vec![Rf::zero(dom); dim];
    u[0] = Rf::one(dom);
    cols.push(u);
    for _ in 0..dim {
        let u = cols.last().unwrap();
        let mut next: Vec<Rf<D>> = u.iter().map(|c| c.derivative()).collect();
        for i in 0..r1 {
            for j in 0..r2 {
                let c = &u[idx(i, j)];
                if c.is_zero() {
                    continue;
                }
                if i + 1 < r1 {
                    next[idx(i + 1, j)] = next[idx(i + 1, j)].add(c);
                } else {
                    for (i2, f) in red1.iter().enumerate() {
                        if !f.is_zero() {
                            next[idx(i2, j)] = next[idx(i2, j)].add(&c.mul(f));
                        }
                    }
                }
                if j + 1 < r2 {
                    next[idx(i, j + 1)] = next[idx(i, j + 1)].add(c);
                } else {
                    for (j2, g) in red2.iter().enumerate() {
                        if !g.is_zero() {
                            next[idx(i, j2)] = next[idx(i, j2)].add(&c.mul(g));
                        }
                    }
                }
            }
        }
        cols.push(next);
    }
    let m: Vec<Vec<Rf<D>>> = (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut v = nullrow(dom, &m)?;
    while v.last().is_some_and(|e| e.is_empty()) {
        v.pop();
    }
    Ok(DiffOp { coeffs: v })
}

/// Reads `M F = 0` as a recurrence `sum_j b_j(n) c_{n+j} = 0`, valid for all `n >= 0`.
fn ode_to_recurrence<D: Domain>(dom: &D, m: &DiffOp<D>) -> Vec<Poly<D>> {
    // x^l D^i = x^{l-i} theta (theta - 1) ... (theta - i + 1)
    let lift = m
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.iter().position(|a| !dom.is_zero(a)).map(|l| i as i64 - l as i64))
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let mut q: Vec<Poly<D>> = Vec::new();
    let mut falling: Poly<D> = vec![dom.one()];
    for (i, c) in m.coeffs.iter().enumerate() {
        if i > 0 {
            falling = mul(dom, &falling, &[dom.neg(&dom.from_u64(i as u64 - 1)), dom.one()]);
        }
        for (l, a) in c.iter().enumerate() {
            if dom.is_zero(a) {
                continue;
            }
            let e = lift + l - i;
            if q.len() <= e {
                q.resize(e + 1, Vec::new());
            }
            q[e] = add(dom, &q[e], &scale(dom, &falling, a));
        }
    }
    let e_min = q.iter().position(|p| !p.is_empty()).unwrap_or(0);
    let e_max = q.len() - 1;
    // b_j(n) = q_{e_max - j}(n + j)
    (0..=e_max - e_min)
        .map(|j| taylor_shift(dom, &q[e_max - j], &dom.from_u64(j as u64)))
        .collect()
}

/// Annihilator of `sum_{m <= n} P_m Q_{n-m}`.
pub fn closure_convolution<D: Domain>(r1: &HolonomicRecurrence<D>, r2: &HolonomicRecurrence<D>) -> Result<HolonomicRecurrence<D>> {
    let dom = check_pair(r1, r2)?;
    let (l1, h1) = recurrence_to_ode(r1)?;
    let (l2, h2) = recurrence_to_ode(r2)?;
    let l1 = homogenize(&dom, l1, &h1);
    let l2 = homogenize(&dom, l2, &h2);
    let conv = |n: usize| -> Result<Vec<D::Elem>> {
        let (p, q) = (r1.terms(n)?, r2.terms(n)?);
        Ok((0..n)
            .map(|t| {
                let mut acc = dom.zero();
                for m in 0..=t {
                    acc = dom.add(&acc, &dom.mul(&p[m], &q[t - m]));
                }
                acc
            })
            .collect())
    };
    if l1.order() == 0 || l2.order() == 0 {
        // an operand with a purely multiplicative annihilator is zero
        return HolonomicRecurrence::new(&dom, vec![vec![dom.one()], Vec::new()], vec![dom.zero()], 0);
    }
    let m = ode_product(&dom, &l1, &l2)?;
    let b = ode_to_recurrence(&dom, &m);
    finish(&dom, b, 0, conv)
}
