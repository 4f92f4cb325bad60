//! Coefficient domains.
//!
//! Every algorithm in the crate is generic over a [`Domain`]: a commutative
//! ring with one (a field for the exact domains) whose elements are plain
//! values and whose arithmetic goes through the domain object. Routing the
//! arithmetic through the domain lets each domain keep an [`OpCounter`] so
//! that the operation counts of the fast algorithms can be measured.
//!
//! Three domains are provided:
//!
//! * [`PrimeField`]: `Z/pZ` for an odd prime `p < 2^63`, elements in `[0, p)`.
//! * [`Rationals`]: exact rationals in lowest terms.
//! * [`Float64`]: IEEE binary64, for approximation only.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::mul;

/// Counts of ring operations executed through a domain.
///
/// Counters are atomic so concurrent use never loses counts.
#[derive(Debug, Default)]
pub struct OpCounter {
    adds: AtomicU64,
    muls: AtomicU64,
    invs: AtomicU64,
}

impl OpCounter {
    #[inline]
    pub fn add(&self, n: u64) {
        self.adds.fetch_add(n, Ordering::Relaxed);
    }

    #[inline]
    pub fn mul(&self, n: u64) {
        self.muls.fetch_add(n, Ordering::Relaxed);
    }

    #[inline]
    pub fn inv(&self, n: u64) {
        self.invs.fetch_add(n, Ordering::Relaxed);
    }

    pub fn report(&self) -> OpCountReport {
        OpCountReport {
            adds: self.adds.load(Ordering::Relaxed),
            muls: self.muls.load(Ordering::Relaxed),
            invs: self.invs.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.adds.store(0, Ordering::Relaxed);
        self.muls.store(0, Ordering::Relaxed);
        self.invs.store(0, Ordering::Relaxed);
    }
}

/// Snapshot of an [`OpCounter`].
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCountReport {
    pub adds: u64,
    pub muls: u64,
    pub invs: u64,
}

impl OpCountReport {
    /// Operations performed between `earlier` and `self`.
    pub fn since(&self, earlier: &OpCountReport) -> OpCountReport {
        OpCountReport {
            adds: self.adds - earlier.adds,
            muls: self.muls - earlier.muls,
            invs: self.invs - earlier.invs,
        }
    }

    pub fn total(&self) -> u64 {
        self.adds + self.muls + self.invs
    }
}

impl std::ops::Add for OpCountReport {
    type Output = OpCountReport;
    fn add(self, rhs: OpCountReport) -> OpCountReport {
        OpCountReport {
            adds: self.adds + rhs.adds,
            muls: self.muls + rhs.muls,
            invs: self.invs + rhs.invs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Prime,
    Rational,
    Float,
}

/// A commutative ring with one, with counted arithmetic.
pub trait Domain: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn kind(&self) -> DomainKind;

    /// Characteristic of the ring; `0` stands for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Whether arithmetic is exact (false only for floating point).
    fn is_exact(&self) -> bool {
        true
    }

    fn counter(&self) -> &OpCounter;

    /// True when both handles denote the same ring.
    fn same_ring(&self, other: &Self) -> bool;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    /// Approximate real value, used for magnitude estimates.
    fn to_f64(&self, a: &Self::Elem) -> Option<f64>;

    fn from_u64(&self, v: u64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Whether convolutions of output length `len` run in quasi-linear time.
    fn fast_convolution(&self, _len: usize) -> bool {
        false
    }

    /// Linear convolution of two coefficient lists.
    fn convolve(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        mul::convolve_generic(self, a, b)
    }

    /// Coefficients `a.len()-1 ..= b.len()-1` of `a * b`; requires
    /// `1 <= a.len() <= b.len()`.
    fn middle_product(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        let full = self.convolve(a, b);
        full[a.len() - 1..b.len()].to_vec()
    }

    /// Middle products of many `a`s against one shared `b`.
    fn middle_product_many(&self, many: &[Vec<Self::Elem>], b: &[Self::Elem]) -> Vec<Vec<Self::Elem>> {
        many.iter().map(|a| self.middle_product(a, b)).collect()
    }

    /// A unit `u` such that `u * xs` is in a canonical form: over the
    /// rationals, integers without common factor and a positive first
    /// nonzero entry; elsewhere the identity.
    fn normalizer(&self, _xs: &[Self::Elem]) -> Self::Elem {
        self.one()
    }

    /// Smallest integer `j` in `lo..=hi` with `p(j) = 0`.
    fn first_integer_zero(&self, p: &[Self::Elem], lo: u64, hi: u64) -> Result<Option<u64>> {
        Ok((lo..=hi).find(|&j| self.is_zero(&crate::poly::horner(self, p, &self.from_u64(j)))))
    }
}

/// True iff the domain has characteristic zero or at least `bound`.
pub fn char_at_least<D: Domain>(dom: &D, bound: u64) -> bool {
    let c = dom.characteristic();
    c == 0 || c >= bound
}

pub(crate) fn require_char<D: Domain>(dom: &D, bound: u64) -> Result<()> {
    if char_at_least(dom, bound) {
        Ok(())
    } else {
        Err(Error::CharacteristicTooSmall {
            required: bound,
            characteristic: dom.characteristic(),
        })
    }
}

/// `a^e` by repeated squaring.
pub fn pow<D: Domain>(dom: &D, a: &D::Elem, mut e: u64) -> D::Elem {
    let mut base = a.clone();
    let mut acc = dom.one();
    let mut first = true;
    while e > 0 {
        if e & 1 == 1 {
            acc = if first { base.clone() } else { dom.mul(&acc, &base) };
            first = false;
        }
        e >>= 1;
        if e > 0 {
            base = dom.mul(&base, &base);
        }
    }
    acc
}

/// Inverts every element with one inversion and `3(n-1)` multiplications.
/// Returns `None` if some element is not a unit.
pub fn batch_inv<D: Domain>(dom: &D, xs: &[D::Elem]) -> Option<Vec<D::Elem>> {
    if xs.is_empty() {
        return Some(Vec::new());
    }
    let mut prefix = Vec::with_capacity(xs.len());
    prefix.push(xs[0].clone());
    for x in &xs[1..] {
        let p = dom.mul(prefix.last().unwrap(), x);
        prefix.push(p);
    }
    let mut acc = dom.inv(prefix.last().unwrap())?;
    let mut out = vec![dom.zero(); xs.len()];
    for i in (1..xs.len()).rev() {
        out[i] = dom.mul(&acc, &prefix[i - 1]);
        acc = dom.mul(&acc, &xs[i]);
    }
    out[0] = acc;
    Some(out)
}

/// Inverses of `1!, ..., n!` style tables: returns `(fact, inv_fact)` for `0..=n`.
pub(crate) fn factorial_tables<D: Domain>(dom: &D, n: usize) -> Result<(Vec<D::Elem>, Vec<D::Elem>)> {
    require_char(dom, n as u64 + 1)?;
    let mut fact = Vec::with_capacity(n + 1);
    fact.push(dom.one());
    for i in 1..=n {
        let f = dom.mul(&fact[i - 1], &dom.from_u64(i as u64));
        fact.push(f);
    }
    let mut inv_fact = vec![dom.zero(); n + 1];
    inv_fact[n] = dom
        .inv(&fact[n])
        .ok_or_else(|| Error::NotInvertible(format!("{}!", n)))?;
    for i in (1..=n).rev() {
        inv_fact[i - 1] = dom.mul(&inv_fact[i], &dom.from_u64(i as u64));
    }
    Ok((fact, inv_fact))
}

// ---------------------------------------------------------------------------
// Prime field

/// The field `Z/pZ` for an odd prime `p < 2^63`.
#[derive(Clone)]
pub struct PrimeField {
    p: u64,
    /// `(2^s, root)` with `root` a primitive `2^s`-th root of unity, `2^s | p-1`.
    two_adic: (u64, u64),
    counter: Arc<OpCounter>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeField({})", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || p >= 1 << 63 || !is_prime_u64(p) {
            return Err(Error::invalid(format!("{} is not an odd prime below 2^63", p)));
        }
        let mut t = p - 1;
        let mut order = 1u64;
        while t % 2 == 0 {
            t /= 2;
            order *= 2;
        }
        // a^t has order dividing 2^s; it is primitive iff its 2^(s-1) power is -1.
        let mut root = 1;
        for a in 2..p {
            let w = powmod_u64(a, t, p);
            if order == 1 || powmod_u64(w, order / 2, p) == p - 1 {
                root = w;
                break;
            }
        }
        Ok(PrimeField {
            p,
            two_adic: (order, root),
            counter: Arc::new(OpCounter::default()),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Largest power of two dividing `p - 1` and a primitive root of that order.
    pub fn two_adic_root(&self) -> (u64, u64) {
        self.two_adic
    }

    #[inline]
    pub(crate) fn raw_mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub(crate) fn raw_add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn raw_sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub(crate) fn raw_pow(&self, a: u64, e: u64) -> u64 {
        powmod_u64(a, e, self.p)
    }
}

fn powmod_u64(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Domain for PrimeField {
    type Elem = u64;

    fn kind(&self) -> DomainKind {
        DomainKind::Prime
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn counter(&self) -> &OpCounter {
        &self.counter
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.p == other.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        let r = (v as i128).rem_euclid(self.p as i128);
        r as u64
    }

    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().unwrap()
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.counter.add(1);
        self.raw_add(*a, *b)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.counter.add(1);
        self.raw_sub(*a, *b)
    }

    fn neg(&self, a: &u64) -> u64 {
        self.counter.add(1);
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.counter.mul(1);
        self.raw_mul(*a, *b)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        self.counter.inv(1);
        if *a == 0 {
            return None;
        }
        // extended Euclid on i128
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return None;
        }
        Some(s0.rem_euclid(self.p as i128) as u64)
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = self.parse(n)?;
            let d = self.parse(d)?;
            return self
                .div(&n, &d)
                .ok_or_else(|| Error::parse(s, "denominator is not invertible"));
        }
        let v: BigInt = s
            .parse()
            .map_err(|_| Error::parse(s, "expected an integer"))?;
        Ok(self.from_bigint(&v))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn to_f64(&self, a: &u64) -> Option<f64> {
        Some(*a as f64)
    }

    fn fast_convolution(&self, len: usize) -> bool {
        crate::poly::ntt::supports(self, len)
    }

    fn first_integer_zero(&self, p: &[u64], lo: u64, hi: u64) -> Result<Option<u64>> {
        if p.iter().all(|c| *c == 0) {
            return Ok((lo <= hi).then_some(lo));
        }
        let m = self.modulus();
        Ok(crate::poly::roots::roots_mod_p(self, p)?
            .into_iter()
            .map(|r| lo + (r + m - lo % m) % m)
            .filter(|&j| j <= hi)
            .min())
    }

    fn convolve(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let len = a.len() + b.len() - 1;
        if a.len().min(b.len()) >= mul::NTT_THRESHOLD && crate::poly::ntt::supports(self, len) {
            crate::poly::ntt::convolve(self, a, b)
        } else {
            mul::convolve_generic(self, a, b)
        }
    }

    fn middle_product(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.middle_product_many(&[a.to_vec()], b).pop().unwrap()
    }

    fn middle_product_many(&self, many: &[Vec<u64>], b: &[u64]) -> Vec<Vec<u64>> {
        let shortest = many.iter().map(|a| a.len()).min().unwrap_or(0);
        if shortest >= mul::NTT_THRESHOLD && crate::poly::ntt::supports(self, b.len()) {
            crate::poly::ntt::middle_product_many(self, many, b)
        } else {
            many.iter()
                .map(|a| {
                    let full = mul::convolve_generic(self, a, b);
                    full[a.len() - 1..b.len()].to_vec()
                })
                .collect()
        }
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// Exact rationals, always in lowest terms with positive denominator.
#[derive(Clone, Default)]
pub struct Rationals {
    counter: Arc<OpCounter>,
}

impl fmt::Debug for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rationals")
    }
}

impl Rationals {
    pub fn new() -> Self {
        Rationals::default()
    }
}

impl Domain for Rationals {
    type Elem = BigRational;

    fn normalizer(&self, xs: &[BigRational]) -> BigRational {
        let Some(first) = xs.iter().find(|x| !x.is_zero()) else {
            return BigRational::one();
        };
        let den = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&(x.numer() * (&den / x.denom()))));
        let u = BigRational::new(den, num);
        if first.is_negative() {
            -u
        } else {
            u
        }
    }

    fn first_integer_zero(&self, p: &[BigRational], lo: u64, hi: u64) -> Result<Option<u64>> {
        if p.iter().all(|c| c.is_zero()) {
            return Ok((lo <= hi).then_some(lo));
        }
        let (lo_i, hi_i) = (BigInt::from(lo), BigInt::from(hi));
        Ok(crate::poly::roots::integer_roots(self, p)?
            .into_iter()
            .find(|r| *r >= lo_i && *r <= hi_i)
            .and_then(|r| r.to_u64()))
    }

    fn kind(&self) -> DomainKind {
        DomainKind::Rational
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn counter(&self) -> &OpCounter {
        &self.counter
    }

    fn same_ring(&self, _other: &Self) -> bool {
        true
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_u64(&self, v: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.counter.add(1);
        rat_add(a, b.numer(), b.denom())
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.counter.add(1);
        rat_add(a, &-b.numer(), b.denom())
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        self.counter.add(1);
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.counter.mul(1);
        if a.is_zero() || b.is_zero() {
            return BigRational::zero();
        }
        let g1 = balanced_gcd(a.numer(), b.denom());
        let g2 = balanced_gcd(b.numer(), a.denom());
        let num = (a.numer() / &g1) * (b.numer() / &g2);
        let den = (a.denom() / &g2) * (b.denom() / &g1);
        BigRational::new_raw(num, den)
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        self.counter.inv(1);
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn to_f64(&self, a: &BigRational) -> Option<f64> {
        a.to_f64()
    }
}

// num-bigint's binary gcd is quadratic in the size gap, so reduce the larger
// operand first. Denominators stay positive throughout.
fn balanced_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if b.is_one() || a.is_one() {
        return BigInt::one();
    }
    if a.bits() > b.bits() + 64 && !b.is_zero() {
        return b.gcd(&(a % b));
    }
    if b.bits() > a.bits() + 64 && !a.is_zero() {
        return a.gcd(&(b % a));
    }
    a.gcd(b)
}

fn rat_add(a: &BigRational, bn: &BigInt, bd: &BigInt) -> BigRational {
    let (an, ad) = (a.numer(), a.denom());
    if ad.is_one() && bd.is_one() {
        return BigRational::from_integer(an + bn);
    }
    if ad.is_one() {
        return BigRational::new_raw(an * bd + bn, bd.clone());
    }
    if bd.is_one() {
        return BigRational::new_raw(an + bn * ad, ad.clone());
    }
    let num = an * bd + bn * ad;
    let den = ad * bd;
    let g = balanced_gcd(&num, &den);
    if g.is_one() {
        BigRational::new_raw(num, den)
    } else {
        BigRational::new_raw(num / &g, den / &g)
    }
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-0.125"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::parse(t, "expected an integer, a fraction n/d or a decimal");
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::parse(t, "zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || fp.is_empty() {
            return Err(bad());
        }
        let digits = format!("{}{}", if ip_abs.is_empty() { "0" } else { ip_abs }, fp);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

// ---------------------------------------------------------------------------
// Floats

/// Binary64 floating point. Only for approximation paths.
#[derive(Clone, Default)]
pub struct Float64 {
    counter: Arc<OpCounter>,
}

impl fmt::Debug for Float64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Float64")
    }
}

impl Float64 {
    pub fn new() -> Self {
        Float64::default()
    }
}

impl Domain for Float64 {
    type Elem = f64;

    fn kind(&self) -> DomainKind {
        DomainKind::Float
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn counter(&self) -> &OpCounter {
        &self.counter
    }

    fn same_ring(&self, _other: &Self) -> bool {
        true
    }

    fn zero(&self) -> f64 {
        0.0
    }

    fn one(&self) -> f64 {
        1.0
    }

    fn from_i64(&self, v: i64) -> f64 {
        v as f64
    }

    fn from_u64(&self, v: u64) -> f64 {
        v as f64
    }

    fn from_bigint(&self, v: &BigInt) -> f64 {
        v.to_f64().unwrap_or(if v.sign() == Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        })
    }

    fn is_zero(&self, a: &f64) -> bool {
        *a == 0.0
    }

    fn add(&self, a: &f64, b: &f64) -> f64 {
        self.counter.add(1);
        a + b
    }

    fn sub(&self, a: &f64, b: &f64) -> f64 {
        self.counter.add(1);
        a - b
    }

    fn neg(&self, a: &f64) -> f64 {
        self.counter.add(1);
        -a
    }

    fn mul(&self, a: &f64, b: &f64) -> f64 {
        self.counter.mul(1);
        a * b
    }

    fn inv(&self, a: &f64) -> Option<f64> {
        self.counter.inv(1);
        if *a == 0.0 {
            None
        } else {
            Some(1.0 / a)
        }
    }

    fn parse(&self, s: &str) -> Result<f64> {
        let t = s.trim();
        if t.contains('/') {
            return parse_rational(t).map(|r| r.to_f64().unwrap_or(f64::NAN));
        }
        t.parse::<f64>()
            .map_err(|_| Error::parse(t, "expected a floating point number"))
    }

    fn format(&self, a: &f64) -> String {
        format!("{:?}", a)
    }

    fn to_f64(&self, a: &f64) -> Option<f64> {
        Some(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring_axioms<D: Domain>(dom: &D, sample: impl Fn(&mut ChaCha8Rng) -> D::Elem) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
            assert_eq!(dom.add(&a, &b), dom.add(&b, &a));
            assert_eq!(dom.mul(&a, &b), dom.mul(&b, &a));
            assert_eq!(dom.add(&dom.add(&a, &b), &c), dom.add(&a, &dom.add(&b, &c)));
            assert_eq!(dom.mul(&dom.mul(&a, &b), &c), dom.mul(&a, &dom.mul(&b, &c)));
            assert_eq!(
                dom.mul(&a, &dom.add(&b, &c)),
                dom.add(&dom.mul(&a, &b), &dom.mul(&a, &c))
            );
        }
    }

    #[test]
    fn prime_field_axioms() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        ring_axioms(&f, |r| r.gen_range(0..1_000_000_007));
    }

    #[test]
    fn rational_axioms() {
        let q = Rationals::new();
        ring_axioms(&q, |r| {
            BigRational::new(BigInt::from(r.gen_range(-50i64..50)), BigInt::from(r.gen_range(1i64..20)))
        });
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Rationals::new();
        let a = q.parse("6/-4").unwrap();
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(q.format(&q.parse("-0.125").unwrap()), "-1/8");
    }

    #[test]
    fn char_bounds() {
        let q = Rationals::new();
        assert!(char_at_least(&q, u64::MAX));
        let f = PrimeField::new(101).unwrap();
        assert!(char_at_least(&f, 100));
        assert!(char_at_least(&f, 101));
        assert!(!char_at_least(&f, 102));
    }

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(998_244_353).is_ok());
    }

    #[test]
    fn two_adic_root_has_full_order() {
        let f = PrimeField::new(998_244_353).unwrap();
        let (order, w) = f.two_adic_root();
        assert_eq!(order, 1 << 23);
        assert_eq!(f.raw_pow(w, order), 1);
        assert_eq!(f.raw_pow(w, order / 2), f.modulus() - 1);
    }

    #[test]
    fn batch_inversion() {
        let f = PrimeField::new(101).unwrap();
        let xs: Vec<u64> = (1..20).collect();
        let inv = batch_inv(&f, &xs).unwrap();
        for (x, y) in xs.iter().zip(&inv) {
            assert_eq!(f.raw_mul(*x, *y), 1);
        }
        assert!(batch_inv(&f, &[3, 0, 2]).is_none());
    }

    #[test]
    fn counter_is_monotone_and_exact() {
        let f = PrimeField::new(101).unwrap();
        let before = f.counter().report();
        let a = f.mul(&3, &4);
        let _ = f.add(&a, &1);
        let _ = f.inv(&a);
        let d = f.counter().report().since(&before);
        assert_eq!(d, OpCountReport { adds: 1, muls: 1, invs: 1 });
    }
}
