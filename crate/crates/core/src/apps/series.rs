//! Partial sums `sum_{n<N} c_n x^n` of holonomic power series.

use crate::domain::{Domain, DomainKind};
use crate::error::{Error, Result};
use crate::holonomic::HolonomicRecurrence;
use crate::index::IndexSet;
use crate::matrix::PolyMatrix;
use crate::poly::{scale, taylor_shift};
use crate::polyrec::{multi_apply, Mode};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesTarget {
    /// Sum exactly this many terms.
    Terms(u64),
    /// Sum enough terms for absolute error `eps`, given `|c_n| <= M / rho^n`.
    Error { eps: f64, rho: f64, bigm: f64 },
}

#[derive(Clone, Debug)]
pub struct SeriesSpec<D: Domain> {
    pub rec: HolonomicRecurrence<D>,
    pub target: SeriesTarget,
}

/// Smallest `N` with `M r^N / (1 - r) <= eps`, `r = |x| / rho`.
fn terms_for(eps: f64, rho: f64, bigm: f64, ax: f64) -> Result<u64> {
    if !(eps > 0.0 && rho > 0.0 && bigm > 0.0) {
        return Err(Error::invalid("eps, rho and M must be positive"));
    }
    if !(ax < rho) {
        return Err(Error::RadiusViolated { x: ax.to_string(), rho: rho.to_string() });
    }
    let r = ax / rho;
    let mut bound = bigm / (1.0 - r);
    let mut n = 0u64;
    while bound > eps {
        bound *= r;
        n += 1;
        if n > 1 << 40 {
            return Err(Error::invalid("error target needs too many terms"));
        }
    }
    Ok(n)
}

/// `(sum_{n<N} c_n x^n, N)`.
///
/// With `u_n = c_n x^n`, the state `(S_n, u_{n+k-1}, ..., u_n)` advances
/// by one matrix with polynomial entries; its products are taken by the
/// matrix factorial engine.
pub fn series_eval<D: Domain>(spec: &SeriesSpec<D>, x: &D::Elem) -> Result<(D::Elem, u64)> {
    let rec = &spec.rec;
    let dom = rec.domain();
    let n = match spec.target {
        SeriesTarget::Terms(n) => n,
        SeriesTarget::Error { eps, rho, bigm } => {
            if dom.kind() == DomainKind::Prime {
                return Err(Error::invalid("error-driven truncation needs an ordered domain"));
            }
            let ax = dom.to_f64(x).ok_or_else(|| Error::invalid("x has no real value"))?.abs();
            terms_for(eps, rho, bigm, ax)?
        }
    };
    Ok((partial_sum(rec, x, n)?, n))
}

fn partial_sum<D: Domain>(rec: &HolonomicRecurrence<D>, x: &D::Elem, n: u64) -> Result<D::Elem> {
    let d = rec.domain();
    let k = rec.depth();
    let known = rec.initial().len() as u64;
    let mut xp = d.one();
    let u: Vec<D::Elem> = rec
        .initial()
        .iter()
        .map(|c| {
            let v = d.mul(c, &xp);
            xp = d.mul(&xp, x);
            v
        })
        .collect();
    if n <= known {
        return Ok(u[..n as usize].iter().fold(d.zero(), |acc, v| d.add(&acc, v)));
    }
    let off = rec.offset();
    let s0 = u[..off as usize].iter().fold(d.zero(), |acc, v| d.add(&acc, v));
    let mut w0 = vec![s0];
    w0.extend((0..k).map(|i| u[off as usize + k - 1 - i].clone()));

    let a0 = &rec.coeffs()[0];
    let (s, top_scale) = if a0.len() == 1 {
        (vec![d.one()], d.inv(&a0[0]).ok_or(Error::ScaleVanishes(off))?)
    } else {
        (a0.clone(), d.one())
    };
    let t = n - off;
    if s.len() > 1 {
        if let Some(j) = d.first_integer_zero(&s, off, off + t - 1)? {
            return Err(Error::ScaleVanishes(j));
        }
    }
    let mut xi = d.one();
    let mut top: Vec<Vec<D::Elem>> = vec![Vec::new()];
    for i in 1..=k {
        xi = d.mul(&xi, x);
        let f = d.neg(&d.mul(&xi, &top_scale));
        top.push(scale(d, &rec.coeffs()[i], &f));
    }
    let entries: Vec<Vec<Vec<D::Elem>>> = (0..=k)
        .map(|r| {
            (0..=k)
                .map(|c| match r {
                    0 if c == 0 || c == k => s.clone(),
                    0 => Vec::new(),
                    1 => top[c].clone(),
                    _ if c + 1 == r => s.clone(),
                    _ => Vec::new(),
                })
                .collect()
        })
        .collect();
    let shift = d.sub(&d.from_u64(off), &d.one());
    let b = PolyMatrix::new(d, entries)?.shift(&shift);
    let idx = IndexSet::new(vec![t])?;
    let w = multi_apply(&b, &w0, &idx, Mode::Vector)?.values.swap_remove(0);
    if s.len() == 1 {
        return Ok(w[0].clone());
    }
    let sm = PolyMatrix::scalar(d, taylor_shift(d, &s, &shift));
    let sigma = multi_apply(&sm, &[d.one()], &idx, Mode::Vector)?.values.swap_remove(0).swap_remove(0);
    d.div(&w[0], &sigma).ok_or(Error::ScaleVanishes(off))
}
