//! Dense univariate polynomials.
//!
//! Internally most algorithms work on coefficient slices (`&[D::Elem]`,
//! lowest degree first) and take the domain as an explicit argument.
//! [`DensePolynomial`] wraps a coefficient vector together with its domain
//! and basis for the public API.

pub mod mul;
pub mod newton;
pub mod ntt;
pub mod progression;
pub mod roots;
pub mod series;

use num_bigint::BigUint;

use crate::domain::{factorial_tables, Domain};
use crate::error::{Error, Result};

/// Coefficient basis of a [`DensePolynomial`].
#[derive(Clone, Debug, PartialEq)]
pub enum Basis<E> {
    Monomial,
    /// Element `i` is `(X - start)(X - start - step)...(X - start - (i-1) step)`.
    Newton { start: E, step: E },
}

/// Drops trailing zeros so that the zero polynomial is the empty vector.
pub fn trim<D: Domain>(dom: &D, v: &mut Vec<D::Elem>) {
    while let Some(last) = v.last() {
        if dom.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
}

pub fn trimmed<D: Domain>(dom: &D, mut v: Vec<D::Elem>) -> Vec<D::Elem> {
    trim(dom, &mut v);
    v
}

pub fn add<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => dom.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trimmed(dom, out)
}

pub fn sub<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => dom.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => dom.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trimmed(dom, out)
}

pub fn scale<D: Domain>(dom: &D, a: &[D::Elem], c: &D::Elem) -> Vec<D::Elem> {
    if dom.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| dom.mul(x, c)).collect()
}

pub fn mul<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
    trimmed(dom, dom.convolve(a, b))
}

pub fn horner<D: Domain>(dom: &D, a: &[D::Elem], x: &D::Elem) -> D::Elem {
    let mut acc = dom.zero();
    for (i, c) in a.iter().rev().enumerate() {
        acc = if i == 0 { c.clone() } else { dom.add(&dom.mul(&acc, x), c) };
    }
    acc
}

pub fn derivative<D: Domain>(dom: &D, a: &[D::Elem]) -> Vec<D::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| dom.mul(c, &dom.from_u64(i as u64)))
        .collect();
    trimmed(dom, out)
}

/// `f(X + c)`. Uses one convolution when the characteristic allows
/// dividing by `deg(f)!`, repeated synthetic division otherwise.
pub fn taylor_shift<D: Domain>(dom: &D, f: &[D::Elem], c: &D::Elem) -> Vec<D::Elem> {
    let n = f.len();
    if n <= 1 || dom.is_zero(c) {
        return f.to_vec();
    }
    if n >= mul::KARATSUBA_THRESHOLD {
        if let Ok((fact, inv_fact)) = factorial_tables(dom, n - 1) {
            let a: Vec<D::Elem> = (0..n).rev().map(|i| dom.mul(&f[i], &fact[i])).collect();
            let mut b = Vec::with_capacity(n);
            let mut cp = dom.one();
            for (t, inv) in inv_fact.iter().enumerate() {
                if t > 0 {
                    cp = dom.mul(&cp, c);
                }
                b.push(dom.mul(&cp, inv));
            }
            let conv = dom.convolve(&a, &b);
            let out = (0..n).map(|j| dom.mul(&conv[n - 1 - j], &inv_fact[j])).collect();
            return trimmed(dom, out);
        }
    }
    let mut g = f.to_vec();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = dom.mul(c, &g[j + 1]);
            g[j] = dom.add(&g[j], &t);
        }
    }
    trimmed(dom, g)
}

/// `f(a X)`.
pub fn scale_argument<D: Domain>(dom: &D, f: &[D::Elem], a: &D::Elem) -> Vec<D::Elem> {
    let mut p = dom.one();
    let mut out = Vec::with_capacity(f.len());
    for (i, c) in f.iter().enumerate() {
        if i > 0 {
            p = dom.mul(&p, a);
        }
        out.push(dom.mul(c, &p));
    }
    trimmed(dom, out)
}

/// A dense univariate polynomial over a [`Domain`].
#[derive(Clone, Debug)]
pub struct DensePolynomial<D: Domain> {
    dom: D,
    coeffs: Vec<D::Elem>,
    basis: Basis<D::Elem>,
}

impl<D: Domain> PartialEq for DensePolynomial<D> {
    fn eq(&self, other: &Self) -> bool {
        self.dom.same_ring(&other.dom) && self.coeffs == other.coeffs && self.basis == other.basis
    }
}

impl<D: Domain> DensePolynomial<D> {
    /// Monomial-basis polynomial; trailing zeros are dropped.
    pub fn new(dom: &D, coeffs: Vec<D::Elem>) -> Self {
        DensePolynomial {
            dom: dom.clone(),
            coeffs: trimmed(dom, coeffs),
            basis: Basis::Monomial,
        }
    }

    pub fn with_basis(dom: &D, coeffs: Vec<D::Elem>, basis: Basis<D::Elem>) -> Self {
        DensePolynomial {
            dom: dom.clone(),
            coeffs: trimmed(dom, coeffs),
            basis,
        }
    }

    pub fn from_i64s(dom: &D, coeffs: &[i64]) -> Self {
        Self::new(dom, coeffs.iter().map(|&c| dom.from_i64(c)).collect())
    }

    pub fn zero(dom: &D) -> Self {
        Self::new(dom, Vec::new())
    }

    pub fn constant(dom: &D, c: D::Elem) -> Self {
        Self::new(dom, vec![c])
    }

    /// The monomial `X`.
    pub fn x(dom: &D) -> Self {
        Self::new(dom, vec![dom.zero(), dom.one()])
    }

    pub fn domain(&self) -> &D {
        &self.dom
    }

    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<D::Elem> {
        self.coeffs
    }

    pub fn basis(&self) -> &Basis<D::Elem> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient `i` in the polynomial's own basis (zero past the end).
    pub fn coeff(&self, i: usize) -> D::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.dom.zero())
    }

    fn check_pair(&self, other: &Self) -> Result<()> {
        if !self.dom.same_ring(&other.dom) {
            return Err(Error::DomainMismatch);
        }
        if self.basis != Basis::Monomial || other.basis != Basis::Monomial {
            return Err(Error::invalid("operation requires the monomial basis"));
        }
        Ok(())
    }

    fn monomial_coeffs(&self) -> Result<Vec<D::Elem>> {
        match &self.basis {
            Basis::Monomial => Ok(self.coeffs.clone()),
            Basis::Newton { .. } => Ok(self.from_newton()?.coeffs),
        }
    }

    pub fn evaluate(&self, x: &D::Elem) -> D::Elem {
        match &self.basis {
            Basis::Monomial => horner(&self.dom, &self.coeffs, x),
            Basis::Newton { start, step } => newton::eval_newton(&self.dom, &self.coeffs, start, step, x),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        Ok(Self::new(&self.dom, add(&self.dom, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        Ok(Self::new(&self.dom, sub(&self.dom, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: &D::Elem) -> Self {
        Self::with_basis(&self.dom, scale(&self.dom, &self.coeffs, c), self.basis.clone())
    }

    /// Product in the monomial basis.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        Ok(Self::new(&self.dom, mul(&self.dom, &self.coeffs, &other.coeffs)))
    }

    pub fn derivative(&self) -> Result<Self> {
        Ok(Self::new(&self.dom, derivative(&self.dom, &self.monomial_coeffs()?)))
    }

    pub fn taylor_shift(&self, c: &D::Elem) -> Result<Self> {
        Ok(Self::new(&self.dom, taylor_shift(&self.dom, &self.monomial_coeffs()?, c)))
    }

    /// `sum a_{n'-i} X^i` where `n'` is the bound `n`.
    pub fn rev(&self, n: usize) -> Self {
        Self::new(&self.dom, series::rev(&self.dom, &self.coeffs, n))
    }

    /// Keeps the terms of index `< l`.
    pub fn trunc_high(&self, l: usize) -> Self {
        Self::new(&self.dom, series::trunc_high(&self.coeffs, l))
    }

    /// Drops the `l` lowest terms and divides by `X^l`.
    pub fn shift_low(&self, l: usize) -> Self {
        Self::new(&self.dom, series::shift_low(&self.coeffs, l))
    }

    pub fn divrem(&self, f: &Self) -> Result<(Self, Self)> {
        self.check_pair(f)?;
        let (q, r) = series::divrem(&self.dom, &self.coeffs, &f.coeffs)?;
        Ok((Self::new(&self.dom, q), Self::new(&self.dom, r)))
    }

    /// `self^n mod f` for monic `f` of positive degree.
    pub fn powmod(&self, n: &BigUint, f: &Self) -> Result<Self> {
        self.check_pair(f)?;
        Ok(Self::new(&self.dom, series::powmod(&self.dom, &self.coeffs, n, &f.coeffs)?))
    }

    /// `q` with `self * q = 1 mod X^n`.
    pub fn newton_inverse(&self, n: usize) -> Result<Self> {
        Ok(Self::new(&self.dom, series::inverse(&self.dom, &self.monomial_coeffs()?, n)?))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        Ok(Self::new(&self.dom, series::gcd(&self.dom, &self.coeffs, &other.coeffs)?))
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut acc = Self::constant(&self.dom, self.dom.one());
        let mut base = Self::new(&self.dom, self.monomial_coeffs()?);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Coefficients in the Newton basis on `start, start + step, ...`.
    pub fn to_newton(&self, start: &D::Elem, step: &D::Elem) -> Result<Self> {
        let mono = self.monomial_coeffs()?;
        let c = newton::to_newton(&self.dom, &mono, start, step)?;
        Ok(Self::with_basis(
            &self.dom,
            c,
            Basis::Newton { start: start.clone(), step: step.clone() },
        ))
    }

    /// Back to the monomial basis (identity on monomial input).
    pub fn from_newton(&self) -> Result<Self> {
        match &self.basis {
            Basis::Monomial => Ok(self.clone()),
            Basis::Newton { start, step } => {
                let c = newton::from_newton(&self.dom, &self.coeffs, start, step)?;
                Ok(Self::new(&self.dom, c))
            }
        }
    }

    /// Values at `start + i step` for `i < count`.
    pub fn eval_progression(&self, start: &D::Elem, step: &D::Elem, count: usize) -> Result<Vec<D::Elem>> {
        match &self.basis {
            Basis::Newton { start: s, step: h } if s == start && h == step => {
                progression::newton_to_values(&self.dom, &self.coeffs, step, count)
            }
            _ => progression::eval_progression(&self.dom, &self.monomial_coeffs()?, start, step, count),
        }
    }

    /// The unique polynomial of degree `< values.len()` through
    /// `(start + i step, values[i])`, in the monomial basis.
    pub fn interp_progression(dom: &D, values: &[D::Elem], start: &D::Elem, step: &D::Elem) -> Result<Self> {
        Ok(Self::new(dom, progression::interp_progression(dom, values, start, step)?))
    }
}
