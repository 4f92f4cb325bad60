//! Generic polynomial multiplication: schoolbook and Karatsuba.

use crate::domain::Domain;

/// Below this operand length Karatsuba falls back to schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 32;
/// Shortest operand length for which the NTT path is taken.
pub const NTT_THRESHOLD: usize = 32;

pub fn schoolbook<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![dom.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if dom.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if dom.is_zero(y) {
                continue;
            }
            let t = dom.mul(x, y);
            out[i + j] = dom.add(&out[i + j], &t);
        }
    }
    out
}

/// Linear convolution over any domain.
pub fn convolve_generic<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (s, l) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if s.len() < KARATSUBA_THRESHOLD {
        return schoolbook(dom, a, b);
    }
    let mut out = vec![dom.zero(); a.len() + b.len() - 1];
    for (ci, chunk) in l.chunks(s.len()).enumerate() {
        let mut padded = chunk.to_vec();
        padded.resize(s.len(), dom.zero());
        let p = karatsuba(dom, s, &padded);
        let base = ci * s.len();
        for (i, c) in p.into_iter().enumerate() {
            if base + i < out.len() && !dom.is_zero(&c) {
                out[base + i] = dom.add(&out[base + i], &c);
            }
        }
    }
    out
}

/// Karatsuba product of two operands of equal length.
fn karatsuba<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if n < KARATSUBA_THRESHOLD {
        return schoolbook(dom, a, b);
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = karatsuba(dom, a0, b0);
    let z2 = karatsuba(dom, a1, b1);
    let sum = |lo: &[D::Elem], hi: &[D::Elem]| -> Vec<D::Elem> {
        hi.iter()
            .enumerate()
            .map(|(i, y)| if i < lo.len() { dom.add(&lo[i], y) } else { y.clone() })
            .collect()
    };
    let sa = sum(a0, a1);
    let sb = sum(b0, b1);
    let mut z1 = karatsuba(dom, &sa, &sb);
    for (i, v) in z0.iter().enumerate() {
        z1[i] = dom.sub(&z1[i], v);
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] = dom.sub(&z1[i], v);
    }
    let mut out = vec![dom.zero(); 2 * n - 1];
    for (i, v) in z0.into_iter().enumerate() {
        out[i] = v;
    }
    for (i, v) in z2.into_iter().enumerate() {
        out[2 * h + i] = v;
    }
    for (i, v) in z1.into_iter().enumerate() {
        if i + h < out.len() {
            out[i + h] = dom.add(&out[i + h], &v);
        }
    }
    out
}
