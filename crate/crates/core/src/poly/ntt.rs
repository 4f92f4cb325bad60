//! Number theoretic transform over [`PrimeField`].
//!
//! Arithmetic runs on raw `u64` values; the executed additions and
//! multiplications are tallied and charged to the field's counter in one go.

use crate::domain::{Domain, OpCounter, PrimeField};

#[derive(Default)]
struct Tally {
    adds: u64,
    muls: u64,
}

impl Tally {
    fn charge(&self, c: &OpCounter) {
        c.add(self.adds);
        c.mul(self.muls);
    }
}

/// True when the field has a root of unity of order `>= len` (rounded up to a power of two).
pub fn supports(f: &PrimeField, len: usize) -> bool {
    len.next_power_of_two() as u64 <= f.two_adic_root().0
}

fn root_of_order(f: &PrimeField, len: usize) -> u64 {
    let (order, w) = f.two_adic_root();
    f.raw_pow(w, order / len as u64)
}

fn transform(f: &PrimeField, a: &mut [u64], root: u64, t: &mut Tally) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    let mut tw = Vec::with_capacity(n / 2);
    while len <= n {
        let half = len / 2;
        let w_len = f.raw_pow(root, (n / len) as u64);
        tw.clear();
        tw.push(1u64);
        for k in 1..half {
            tw.push(f.raw_mul(tw[k - 1], w_len));
        }
        t.muls += half.saturating_sub(1) as u64;
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = if k == 0 { hi[k] } else { f.raw_mul(hi[k], tw[k]) };
                lo[k] = f.raw_add(u, v);
                hi[k] = f.raw_sub(u, v);
            }
            t.muls += (half - 1) as u64;
            t.adds += len as u64;
        }
        len <<= 1;
    }
}

fn forward(f: &PrimeField, a: &[u64], len: usize, t: &mut Tally) -> Vec<u64> {
    let mut v = a.to_vec();
    v.resize(len, 0);
    transform(f, &mut v, root_of_order(f, len), t);
    v
}

fn pointwise_inverse(f: &PrimeField, mut x: Vec<u64>, y: &[u64], t: &mut Tally) -> Vec<u64> {
    for (a, b) in x.iter_mut().zip(y) {
        *a = f.raw_mul(*a, *b);
    }
    t.muls += x.len() as u64;
    let len = x.len();
    let inv_root = f.raw_pow(root_of_order(f, len), f.modulus() - 2);
    transform(f, &mut x, inv_root, t);
    x
}

fn inv_len(f: &PrimeField, len: usize) -> u64 {
    f.raw_pow(len as u64 % f.modulus(), f.modulus() - 2)
}

pub fn convolve(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let len = out_len.next_power_of_two();
    let mut t = Tally::default();
    let fa = forward(f, a, len, &mut t);
    let fb = forward(f, b, len, &mut t);
    let mut c = pointwise_inverse(f, fa, &fb, &mut t);
    c.truncate(out_len);
    let s = inv_len(f, len);
    for v in c.iter_mut() {
        *v = f.raw_mul(*v, s);
    }
    t.muls += out_len as u64;
    t.charge(f.counter());
    c
}

/// Middle products of each `a` in `many` against the shared kernel `b`,
/// using one cyclic transform of `b`.
pub fn middle_product_many(f: &PrimeField, many: &[Vec<u64>], b: &[u64]) -> Vec<Vec<u64>> {
    let len = b.len().next_power_of_two();
    let mut t = Tally::default();
    let fb = forward(f, b, len, &mut t);
    let s = inv_len(f, len);
    let out = many
        .iter()
        .map(|a| {
            let fa = forward(f, a, len, &mut t);
            let c = pointwise_inverse(f, fa, &fb, &mut t);
            let r: Vec<u64> = c[a.len() - 1..b.len()].iter().map(|v| f.raw_mul(*v, s)).collect();
            t.muls += r.len() as u64;
            r
        })
        .collect();
    t.charge(f.counter());
    out
}
