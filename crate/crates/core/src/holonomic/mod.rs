//! Sequences satisfying linear recurrences with polynomial coefficients.
//!
//! A [`HolonomicRecurrence`] of depth `k` states
//! `a_0(n) P_{n+k} + a_1(n) P_{n+k-1} + ... + a_k(n) P_n = 0` for all
//! `n >= offset`, and stores the terms `P_0, ..., P_{offset+k-1}`.

mod closure;
mod nullrow;
mod ratfunc;

pub use closure::{closure_convolution, closure_product, closure_sum};
pub use nullrow::nullrow;
pub use ratfunc::RationalFunction;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::matrix::PolyMatrix;
use crate::poly::{horner, scale, taylor_shift, trimmed};
use crate::polyrec::{multi_apply, Mode};

#[derive(Clone, Debug)]
pub struct HolonomicRecurrence<D: Domain> {
    dom: D,
    coeffs: Vec<Vec<D::Elem>>,
    initial: Vec<D::Elem>,
    offset: u64,
}

impl<D: Domain> PartialEq for HolonomicRecurrence<D> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.initial == other.initial && self.offset == other.offset
    }
}

impl<D: Domain> HolonomicRecurrence<D> {
    /// `coeffs` holds `a_0, ..., a_k` (lowest degree first), `initial`
    /// holds `P_0, ..., P_{offset+k-1}`.
    pub fn new(dom: &D, coeffs: Vec<Vec<D::Elem>>, initial: Vec<D::Elem>, offset: u64) -> Result<Self> {
        let coeffs: Vec<Vec<D::Elem>> = coeffs.into_iter().map(|c| trimmed(dom, c)).collect();
        if coeffs.len() < 2 {
            return Err(Error::invalid("a recurrence needs at least the coefficients a_0 and a_1"));
        }
        if coeffs[0].is_empty() {
            return Err(Error::DegenerateOperand);
        }
        let k = coeffs.len() - 1;
        let need = offset as usize + k;
        if initial.len() != need {
            return Err(Error::invalid(format!(
                "depth {k} with offset {offset} needs {need} initial terms, got {}",
                initial.len()
            )));
        }
        Ok(HolonomicRecurrence { dom: dom.clone(), coeffs, initial, offset })
    }

    pub fn domain(&self) -> &D {
        &self.dom
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Vec<D::Elem>] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[D::Elem] {
        &self.initial
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// `sum_i a_i(n) s_{n+k-i}`.
    pub fn residual(&self, s: &[D::Elem], n: u64) -> D::Elem {
        let d = &self.dom;
        let k = self.depth();
        let x = d.from_u64(n);
        let mut acc = d.zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            acc = d.add(&acc, &d.mul(&horner(d, a, &x), &s[n as usize + k - i]));
        }
        acc
    }

    /// True if `s` satisfies the relation for every `n >= offset` it covers.
    pub fn annihilates(&self, s: &[D::Elem]) -> bool {
        let k = self.depth() as u64;
        (self.offset..(s.len() as u64).saturating_sub(k)).all(|n| self.dom.is_zero(&self.residual(s, n)))
    }

    /// `P_0, ..., P_{count-1}` by direct iteration.
    pub fn terms(&self, count: usize) -> Result<Vec<D::Elem>> {
        let d = &self.dom;
        let k = self.depth();
        let mut out: Vec<D::Elem> = self.initial.iter().take(count).cloned().collect();
        while out.len() < count {
            let big_n = out.len();
            let n = (big_n - k) as u64;
            let x = d.from_u64(n);
            let mut acc = d.zero();
            for i in 1..=k {
                if !self.coeffs[i].is_empty() {
                    acc = d.add(&acc, &d.mul(&horner(d, &self.coeffs[i], &x), &out[big_n - i]));
                }
            }
            let lead = horner(d, &self.coeffs[0], &x);
            let inv = d.inv(&lead).ok_or(Error::ScaleVanishes(n))?;
            out.push(d.neg(&d.mul(&acc, &inv)));
        }
        Ok(out)
    }

    /// The relation for `P'_n = P_{n+1}` when `a_k` vanishes identically.
    fn drop_trailing(&self) -> Option<Self> {
        if self.depth() < 2 || !self.coeffs[self.depth()].is_empty() {
            return None;
        }
        Some(HolonomicRecurrence {
            dom: self.dom.clone(),
            coeffs: self.coeffs[..self.depth()].to_vec(),
            initial: self.initial[1..].to_vec(),
            offset: self.offset,
        })
    }
}

/// First-order system for `V_n = (P_{n+k-1}, ..., P_n)`.
///
/// Returns `A(N)` and `s(N)` with `s(n) V_{n+1} = A(n) V_n` folded into
/// `Q_{n+1} = A(n) Q_n`, `Q_n = (prod_{offset <= i < n} s(i)) V_n`. `A` has
/// top row `(-a_1, ..., -a_k)` and subdiagonal `s`. For constant `a_0`
/// the system is normalized so that `s = 1`.
pub fn to_system<D: Domain>(rec: &HolonomicRecurrence<D>) -> Result<(PolyMatrix<D>, Vec<D::Elem>)> {
    let d = &rec.dom;
    let k = rec.depth();
    let a0 = &rec.coeffs[0];
    let (top_scale, s) = if a0.len() == 1 {
        (d.inv(&a0[0]).ok_or(Error::ScaleVanishes(rec.offset))?, vec![d.one()])
    } else {
        (d.one(), a0.clone())
    };
    let neg = d.neg(&top_scale);
    let entries = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == 0 {
                        scale(d, &rec.coeffs[j + 1], &neg)
                    } else if j + 1 == i {
                        s.clone()
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect();
    Ok((PolyMatrix::new(d, entries)?, s))
}

/// `P_{n_i}` for every index, in input order.
pub fn multi_eval<D: Domain>(rec: &HolonomicRecurrence<D>, indices: &IndexSet) -> Result<Vec<D::Elem>> {
    multi_eval_with(rec, indices, Mode::Vector)
}

/// [`multi_eval`] with an explicit engine mode.
pub fn multi_eval_with<D: Domain>(rec: &HolonomicRecurrence<D>, indices: &IndexSet, mode: Mode) -> Result<Vec<D::Elem>> {
    let idx = indices.as_slice();
    if let Some(reduced) = rec.drop_trailing() {
        let shifted: Vec<u64> = idx.iter().filter(|&&n| n > 0).map(|&n| n - 1).collect();
        let vals = multi_eval_with(&reduced, &IndexSet::new(shifted)?, mode)?;
        let mut it = vals.into_iter();
        return Ok(idx
            .iter()
            .map(|&n| if n == 0 { rec.initial[0].clone() } else { it.next().unwrap() })
            .collect());
    }
    let d = &rec.dom;
    let k = rec.depth() as u64;
    let known = rec.initial.len() as u64;
    let far: Vec<u64> = idx.iter().filter(|&&n| n >= known).map(|&n| n - k + 1 - rec.offset).collect();
    if far.is_empty() {
        return Ok(idx.iter().map(|&n| rec.initial[n as usize].clone()).collect());
    }
    let steps = *far.last().unwrap();
    // s(n) must not vanish for offset <= n < offset + steps
    if let Some(j) = d.first_integer_zero(&rec.coeffs[0], rec.offset, rec.offset + steps - 1)? {
        return Err(Error::ScaleVanishes(j));
    }
    let (a, s) = to_system(rec)?;
    // A'(j) = A(offset + j - 1)
    let c = d.sub(&d.from_u64(rec.offset), &d.one());
    let a = a.shift(&c);
    let v0: Vec<D::Elem> = (0..k).map(|i| rec.initial[(rec.offset + k - 1 - i) as usize].clone()).collect();
    let fset = IndexSet::new(far.clone())?;
    let q = multi_apply(&a, &v0, &fset, mode)?.values;
    let sigma: Option<Vec<D::Elem>> = if s.len() > 1 {
        let sm = PolyMatrix::scalar(d, taylor_shift(d, &s, &c));
        Some(multi_apply(&sm, &[d.one()], &fset, Mode::Vector)?.values.into_iter().map(|v| v[0].clone()).collect())
    } else {
        None
    };
    let mut it = 0;
    let mut out = Vec::with_capacity(idx.len());
    for &n in idx {
        if n < known {
            out.push(rec.initial[n as usize].clone());
            continue;
        }
        let top = q[it][0].clone();
        let val = match &sigma {
            None => top,
            Some(sg) => d.div(&top, &sg[it]).ok_or(Error::ScaleVanishes(rec.offset))?,
        };
        out.push(val);
        it += 1;
    }
    Ok(out)
}
