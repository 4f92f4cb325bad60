//! Rational functions in one variable over a field.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::poly::series::{divrem, gcd};
use crate::poly::{add, derivative, horner, mul, scale, sub, taylor_shift, trimmed};

/// `num / den` with `gcd(num, den) = 1` and monic `den`.
#[derive(Clone, Debug)]
pub struct RationalFunction<D: Domain> {
    dom: D,
    num: Vec<D::Elem>,
    den: Vec<D::Elem>,
}

fn exact_div<D: Domain>(dom: &D, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
    let (q, r) = divrem(dom, a, b).expect("nonzero divisor");
    debug_assert!(r.is_empty());
    q
}

impl<D: Domain> PartialEq for RationalFunction<D> {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl<D: Domain> RationalFunction<D> {
    pub fn new(dom: &D, num: Vec<D::Elem>, den: Vec<D::Elem>) -> Result<Self> {
        let num = trimmed(dom, num);
        let den = trimmed(dom, den);
        if den.is_empty() {
            return Err(Error::invalid("rational function with zero denominator"));
        }
        if num.is_empty() {
            return Ok(Self::zero(dom));
        }
        let g = gcd(dom, &num, &den)?;
        let (mut num, mut den) = if g.len() > 1 {
            (exact_div(dom, &num, &g), exact_div(dom, &den, &g))
        } else {
            (num, den)
        };
        let li = dom.inv(den.last().unwrap()).ok_or_else(|| Error::NotInvertible("leading coefficient".into()))?;
        if !dom.is_one(&li) {
            num = scale(dom, &num, &li);
            den = scale(dom, &den, &li);
        }
        Ok(RationalFunction { dom: dom.clone(), num, den })
    }

    pub fn from_poly(dom: &D, p: Vec<D::Elem>) -> Self {
        RationalFunction { dom: dom.clone(), num: trimmed(dom, p), den: vec![dom.one()] }
    }

    pub fn zero(dom: &D) -> Self {
        Self::from_poly(dom, Vec::new())
    }

    pub fn one(dom: &D) -> Self {
        Self::from_poly(dom, vec![dom.one()])
    }

    pub fn numerator(&self) -> &[D::Elem] {
        &self.num
    }

    pub fn denominator(&self) -> &[D::Elem] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = &self.dom;
        if self.den == o.den {
            return Self::new(d, add(d, &self.num, &o.num), self.den.clone()).expect("nonzero");
        }
        let num = add(d, &mul(d, &self.num, &o.den), &mul(d, &o.num, &self.den));
        Self::new(d, num, mul(d, &self.den, &o.den)).expect("nonzero")
    }

    pub fn neg(&self) -> Self {
        let d = &self.dom;
        RationalFunction { dom: d.clone(), num: self.num.iter().map(|c| d.neg(c)).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = &self.dom;
        Self::new(d, mul(d, &self.num, &o.num), mul(d, &self.den, &o.den)).expect("nonzero")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::NotInvertible("zero rational function".into()));
        }
        let d = &self.dom;
        Self::new(d, mul(d, &self.num, &o.den), mul(d, &self.den, &o.num))
    }

    /// `f(X + c)`.
    pub fn shift(&self, c: &D::Elem) -> Self {
        let d = &self.dom;
        Self::new(d, taylor_shift(d, &self.num, c), taylor_shift(d, &self.den, c)).expect("nonzero")
    }

    pub fn derivative(&self) -> Self {
        let d = &self.dom;
        let num = sub(d, &mul(d, &derivative(d, &self.num), &self.den), &mul(d, &self.num, &derivative(d, &self.den)));
        Self::new(d, num, mul(d, &self.den, &self.den)).expect("nonzero")
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &D::Elem) -> Option<D::Elem> {
        let d = &self.dom;
        d.div(&horner(d, &self.num, x), &horner(d, &self.den, x))
    }
}
