//! Linear recurrences with constant coefficients,
//! `P_n = a_1 P_{n-1} + ... + a_k P_{n-k}`.
//!
//! Terms are read off remainders `X^n mod f` with
//! `f = X^k - (a_1 X^{k-1} + ... + a_k)`: if `X^n = sum r_i X^i mod f`
//! then `P_n = sum r_i P_i`. A remainder encodes the same information as
//! the power `A^n` of the companion matrix, at `O(k)` storage.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::poly::{self, series};

#[derive(Clone, Debug)]
pub struct ConstRecurrence<D: Domain> {
    dom: D,
    coeffs: Vec<D::Elem>,
    initial: Vec<D::Elem>,
}

impl<D: Domain> ConstRecurrence<D> {
    /// `coeffs = (a_1, ..., a_k)`, `initial = (P_0, ..., P_{k-1})`.
    pub fn new(dom: &D, coeffs: Vec<D::Elem>, initial: Vec<D::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("recurrence depth must be at least 1"));
        }
        if initial.len() != coeffs.len() {
            return Err(Error::DimensionMismatch { expected: coeffs.len(), found: initial.len() });
        }
        Ok(ConstRecurrence { dom: dom.clone(), coeffs, initial })
    }

    pub fn domain(&self) -> &D {
        &self.dom
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[D::Elem] {
        &self.initial
    }

    /// Monic characteristic polynomial, lowest degree first.
    pub fn char_poly(&self) -> Vec<D::Elem> {
        let k = self.depth();
        let mut f: Vec<D::Elem> = (0..k).map(|j| self.dom.neg(&self.coeffs[k - 1 - j])).collect();
        f.push(self.dom.one());
        f
    }

    /// `r * X mod f` in `O(k)`.
    fn times_x(&self, r: &[D::Elem]) -> Vec<D::Elem> {
        let d = &self.dom;
        let k = self.depth();
        let top = r[k - 1].clone();
        let mut out = Vec::with_capacity(k);
        for j in 0..k {
            let shifted = if j == 0 { d.zero() } else { r[j - 1].clone() };
            // X^k = sum_j a_{k-j} X^j mod f
            let a = &self.coeffs[k - 1 - j];
            out.push(if d.is_zero(&top) || d.is_zero(a) { shifted } else { d.add(&shifted, &d.mul(&top, a)) });
        }
        out
    }

    fn mulmod(&self, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
        let d = &self.dom;
        let prod = poly::mul(d, a, b);
        let mut r = series::rem(d, &prod, &self.char_poly()).expect("monic modulus");
        r.resize(self.depth(), d.zero());
        r
    }

    fn x_pow(&self, n: &BigUint) -> Vec<D::Elem> {
        let d = &self.dom;
        let k = self.depth();
        let mut r = vec![d.zero(); k];
        r[0] = d.one();
        for i in (0..n.bits()).rev() {
            r = self.mulmod(&r, &r);
            if n.bit(i) {
                r = self.times_x(&r);
            }
        }
        r
    }

    fn dot(&self, r: &[D::Elem]) -> D::Elem {
        let d = &self.dom;
        let mut acc = d.zero();
        for (a, b) in r.iter().zip(&self.initial) {
            if !d.is_zero(a) && !d.is_zero(b) {
                acc = d.add(&acc, &d.mul(a, b));
            }
        }
        acc
    }

    /// `P_n` in `O(M(k) log n)`.
    pub fn nth_term(&self, n: &BigUint) -> D::Elem {
        if let Some(small) = n.to_usize() {
            if small < self.depth() {
                return self.initial[small].clone();
            }
        }
        self.dot(&self.x_pow(n))
    }

    /// `P_n, ..., P_{n+l-1}`: `X^n mod f` once, then `k` further terms by
    /// multiplying by `X`, then the recurrence itself.
    pub fn consecutive_terms(&self, n: &BigUint, l: usize) -> Vec<D::Elem> {
        let k = self.depth();
        if l == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(l);
        if n.is_zero() {
            out.extend(self.initial.iter().take(l).cloned());
        } else {
            let mut r = self.x_pow(n);
            for i in 0..l.min(k) {
                if i > 0 {
                    r = self.times_x(&r);
                }
                out.push(self.dot(&r));
            }
        }
        while out.len() < l {
            out.push(self.step(&out[out.len() - k..]));
        }
        out
    }

    /// Next term from the last `k` terms.
    fn step(&self, window: &[D::Elem]) -> D::Elem {
        let d = &self.dom;
        let k = self.depth();
        let mut acc = d.zero();
        for i in 0..k {
            let (a, p) = (&self.coeffs[i], &window[k - 1 - i]);
            if !d.is_zero(a) && !d.is_zero(p) {
                acc = d.add(&acc, &d.mul(a, p));
            }
        }
        acc
    }

    /// Terms at sorted indices.
    ///
    /// Either sweeps the recurrence up to the largest index, or works on
    /// remainders: with `X^{2^j} mod f` precomputed, each index's remainder
    /// is built least significant bit first; indices agreeing on their low
    /// bits share one state. The cheaper plan by operation count is used.
    pub fn multi_terms(&self, indices: &IndexSet) -> Vec<D::Elem> {
        let idx = indices.as_slice();
        let Some(&top) = idx.last() else {
            return Vec::new();
        };
        let k = self.depth() as u64;
        let bits = 64 - top.leading_zeros() as u64;
        let sweep_cost = top.saturating_mul(k);
        let batched_cost = self.batched_cost(idx, bits);
        if sweep_cost <= batched_cost {
            self.multi_by_sweep(idx)
        } else {
            self.multi_by_bits(idx, bits as usize)
        }
    }

    fn batched_cost(&self, idx: &[u64], bits: u64) -> u64 {
        let k = self.depth() as u64;
        let per_mul = 2 * k * k;
        let mut states = 0u64;
        for j in 0..bits {
            let mask = if j >= 63 { u64::MAX } else { (1u64 << (j + 1)) - 1 };
            let mut seen: Vec<u64> = idx.iter().filter(|&&n| n >> j & 1 == 1).map(|&n| n & mask).collect();
            seen.dedup();
            states += seen.len() as u64;
        }
        (bits + states) * per_mul + idx.len() as u64 * k
    }

    fn multi_by_sweep(&self, idx: &[u64]) -> Vec<D::Elem> {
        let k = self.depth();
        let top = *idx.last().unwrap() as usize;
        let mut seq: Vec<D::Elem> = self.initial.clone();
        let mut out = Vec::with_capacity(idx.len());
        let mut next = 0;
        // keep only the last k terms plus pending outputs
        let mut base = 0usize;
        for n in 0..=top {
            if n >= base + seq.len() {
                let t = self.step(&seq[seq.len() - k..]);
                seq.push(t);
                if seq.len() > 4 * k + 64 {
                    let drop = seq.len() - k;
                    seq.drain(..drop);
                    base += drop;
                }
            }
            while next < idx.len() && idx[next] as usize == n {
                out.push(seq[n - base].clone());
                next += 1;
            }
        }
        out
    }

    fn multi_by_bits(&self, idx: &[u64], bits: usize) -> Vec<D::Elem> {
        let d = &self.dom;
        let k = self.depth();
        let mut one = vec![d.zero(); k];
        one[0] = d.one();
        let mut power = self.x_pow(&BigUint::from(1u32));
        // state keyed by the low bits consumed so far
        let mut states: HashMap<u64, Vec<D::Elem>> = HashMap::new();
        states.insert(0, one);
        for j in 0..bits {
            let mut next: HashMap<u64, Vec<D::Elem>> = HashMap::new();
            let mask = if j >= 63 { u64::MAX } else { (1u64 << (j + 1)) - 1 };
            let mut wanted: Vec<u64> = idx.iter().map(|&n| n & mask).collect();
            wanted.sort_unstable();
            wanted.dedup();
            for key in wanted {
                let prev_key = key & !(1u64 << j);
                let prev = &states[&prev_key];
                let s = if key >> j & 1 == 1 { self.mulmod(prev, &power) } else { prev.clone() };
                next.insert(key, s);
            }
            states = next;
            if j + 1 < bits {
                power = self.mulmod(&power, &power);
            }
        }
        idx.iter()
            .map(|&n| {
                let key = if bits >= 64 { n } else { n & ((1u64 << bits) - 1) };
                self.dot(&states[&key])
            })
            .collect()
    }
}
