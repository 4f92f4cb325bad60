//! Classical orthogonal polynomials through their three-term recurrence
//! `P_{n+1} = (A_n X + B_n) P_n - C_n P_{n-1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Rationals};
use crate::error::{Error, Result};
use crate::holonomic::{multi_eval, HolonomicRecurrence, RationalFunction};
use crate::index::IndexSet;
use crate::poly::series::{divrem, gcd};
use crate::poly::{add, horner, mul, scale, taylor_shift};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    ChebyshevT,
    ChebyshevU,
    Legendre,
    Hermite,
    Laguerre,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] =
        [FamilyName::ChebyshevT, FamilyName::ChebyshevU, FamilyName::Legendre, FamilyName::Hermite, FamilyName::Laguerre];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::ChebyshevT => "chebyshev-t",
            FamilyName::ChebyshevU => "chebyshev-u",
            FamilyName::Legendre => "legendre",
            FamilyName::Hermite => "hermite",
            FamilyName::Laguerre => "laguerre",
        }
    }
}

impl std::str::FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    Classical,
    Monic,
}

/// A family given by its recurrence coefficients, rational in `n`.
///
/// The recurrence holds for `n >= initial.len() - 1`; `initial` holds the
/// polynomials `P_0, P_1, ...` below that (coefficients lowest degree first).
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalFamily {
    pub name: Option<FamilyName>,
    pub normalization: Normalization,
    pub a: RationalFunction<Rationals>,
    pub b: RationalFunction<Rationals>,
    pub c: RationalFunction<Rationals>,
    pub initial: Vec<Vec<BigRational>>,
}

fn rf(q: &Rationals, num: &[i64], den: &[i64]) -> RationalFunction<Rationals> {
    let p = |v: &[i64]| v.iter().map(|&c| q.from_i64(c)).collect();
    RationalFunction::new(q, p(num), p(den)).expect("nonzero denominator")
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ipoly(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&c| ratio(c, 1)).collect()
}

impl OrthogonalFamily {
    /// The built-in tables. Classical: Chebyshev `T`, `U`, Legendre `P`,
    /// physicists' Hermite `H`, Laguerre `L`.
    pub fn builtin(name: FamilyName, normalization: Normalization) -> Self {
        let q = Rationals::new();
        use FamilyName::*;
        use Normalization::*;
        let one = || rf(&q, &[1], &[1]);
        let zero = || rf(&q, &[], &[1]);
        let (a, b, c, initial) = match (name, normalization) {
            (ChebyshevT, Classical) => (rf(&q, &[2], &[1]), zero(), one(), vec![ipoly(&[1]), ipoly(&[0, 1])]),
            (ChebyshevU, Classical) => (rf(&q, &[2], &[1]), zero(), one(), vec![ipoly(&[1]), ipoly(&[0, 2])]),
            (Legendre, Classical) => {
                (rf(&q, &[1, 2], &[1, 1]), zero(), rf(&q, &[0, 1], &[1, 1]), vec![ipoly(&[1]), ipoly(&[0, 1])])
            }
            (Hermite, Classical) => (rf(&q, &[2], &[1]), zero(), rf(&q, &[0, 2], &[1]), vec![ipoly(&[1]), ipoly(&[0, 2])]),
            (Laguerre, Classical) => (
                rf(&q, &[-1], &[1, 1]),
                rf(&q, &[1, 2], &[1, 1]),
                rf(&q, &[0, 1], &[1, 1]),
                vec![ipoly(&[1]), ipoly(&[1, -1])],
            ),
            // T_n / 2^{n-1}: the first step has C_1 = 1/2, so P_2 is tabulated
            (ChebyshevT, Monic) => (
                one(),
                zero(),
                rf(&q, &[1], &[4]),
                vec![ipoly(&[1]), ipoly(&[0, 1]), vec![ratio(-1, 2), ratio(0, 1), ratio(1, 1)]],
            ),
            (ChebyshevU, Monic) => (one(), zero(), rf(&q, &[1], &[4]), vec![ipoly(&[1]), ipoly(&[0, 1])]),
            (Legendre, Monic) => (one(), zero(), rf(&q, &[0, 0, 1], &[-1, 0, 4]), vec![ipoly(&[1]), ipoly(&[0, 1])]),
            (Hermite, Monic) => (one(), zero(), rf(&q, &[0, 1], &[2]), vec![ipoly(&[1]), ipoly(&[0, 1])]),
            (Laguerre, Monic) => (one(), rf(&q, &[-1, -2], &[1]), rf(&q, &[0, 0, 1], &[1]), vec![ipoly(&[1]), ipoly(&[-1, 1])]),
        };
        OrthogonalFamily { name: Some(name), normalization, a, b, c, initial }
    }

    /// A family from explicit coefficients and starting polynomials.
    pub fn custom(
        a: RationalFunction<Rationals>,
        b: RationalFunction<Rationals>,
        c: RationalFunction<Rationals>,
        initial: Vec<Vec<BigRational>>,
        normalization: Normalization,
    ) -> Result<Self> {
        if initial.len() < 2 {
            return Err(Error::invalid("an orthogonal family needs at least P_0 and P_1"));
        }
        if a.is_zero() || c.is_zero() {
            return Err(Error::invalid("A_n and C_n must not vanish identically"));
        }
        Ok(OrthogonalFamily { name: None, normalization, a, b, c, initial })
    }

    /// The depth-2 recurrence for `P_n(x)` with polynomial coefficients:
    /// `L(m+1) P_{m+2} - (x (LA)(m+1) + (LB)(m+1)) P_{m+1} + (LC)(m+1) P_m = 0`
    /// for `L` the common denominator of `A, B, C`.
    pub fn recurrence_at<D: Domain>(&self, dom: &D, x: &D::Elem) -> Result<HolonomicRecurrence<D>> {
        let q = Rationals::new();
        let mut l = vec![q.one()];
        for r in [&self.a, &self.b, &self.c] {
            let g = gcd(&q, &l, r.denominator())?;
            l = divrem(&q, &mul(&q, &l, r.denominator()), &g)?.0;
        }
        let times_l = |r: &RationalFunction<Rationals>| -> Result<Vec<BigRational>> {
            Ok(divrem(&q, &mul(&q, &l, r.numerator()), r.denominator())?.0)
        };
        let (la, lb, lc) = (times_l(&self.a)?, times_l(&self.b)?, times_l(&self.c)?);
        let sh = |p: &[BigRational]| taylor_shift(&q, p, &BigRational::one());
        let a0 = lift(dom, &sh(&l))?;
        let a1 = {
            let xa = scale(dom, &lift(dom, &sh(&la))?, x);
            let s = add(dom, &xa, &lift(dom, &sh(&lb))?);
            s.iter().map(|e| dom.neg(e)).collect()
        };
        let a2 = lift(dom, &sh(&lc))?;
        let initial = self
            .initial
            .iter()
            .map(|p| Ok(horner(dom, &lift(dom, p)?, x)))
            .collect::<Result<Vec<_>>>()?;
        let offset = self.initial.len() as u64 - 2;
        HolonomicRecurrence::new(dom, vec![a0, a1, a2], initial, offset)
    }
}

fn lift<D: Domain>(dom: &D, p: &[BigRational]) -> Result<Vec<D::Elem>> {
    p.iter()
        .map(|c| {
            dom.div(&dom.from_bigint(c.numer()), &dom.from_bigint(c.denom()))
                .ok_or_else(|| Error::NotInvertible(c.denom().to_string()))
        })
        .collect()
}

/// `P_{n_i}(x)` for every index.
pub fn ortho_eval<D: Domain>(family: &OrthogonalFamily, dom: &D, x: &D::Elem, indices: &IndexSet) -> Result<Vec<D::Elem>> {
    let rec = family.recurrence_at(dom, x)?;
    multi_eval(&rec, indices)
}
