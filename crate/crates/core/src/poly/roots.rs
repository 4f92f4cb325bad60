//! Roots of univariate polynomials: in a prime field, and integer roots
//! of rational polynomials.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::series::{gcd, powmod};
use super::{horner, sub, trimmed};
use crate::domain::{is_prime_u64, Domain, PrimeField, Rationals};
use crate::error::{Error, Result};

/// Distinct roots of `f` in the prime field, sorted.
pub fn roots_mod_p(f: &PrimeField, poly: &[u64]) -> Result<Vec<u64>> {
    let poly = trimmed(f, poly.to_vec());
    if poly.len() <= 1 {
        return Ok(Vec::new());
    }
    let lead = f.inv(poly.last().unwrap()).unwrap();
    let monic: Vec<u64> = poly.iter().map(|c| f.mul(c, &lead)).collect();
    // g = gcd(f, X^p - X) is the product of the distinct linear factors
    let xp = powmod(f, &[0, 1], &BigUint::from(f.modulus()), &monic)?;
    let g = gcd(f, &monic, &sub(f, &xp, &[0, 1]))?;
    let mut out = Vec::new();
    split(f, g, 0, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

/// Splits a monic squarefree product of linear factors by
/// `gcd(g, (X + a)^((p-1)/2) - 1)` for `a = seed, seed + 1, ...`.
fn split(f: &PrimeField, g: Vec<u64>, seed: u64, out: &mut Vec<u64>) -> Result<()> {
    match g.len() {
        0 | 1 => return Ok(()),
        2 => {
            out.push(f.neg(&g[0]));
            return Ok(());
        }
        _ => {}
    }
    let half = BigUint::from((f.modulus() - 1) / 2);
    let mut a = seed;
    loop {
        let h = powmod(f, &[a % f.modulus(), 1], &half, &g)?;
        let d = gcd(f, &g, &sub(f, &h, &[1]))?;
        if d.len() > 1 && d.len() < g.len() {
            let (q, _) = super::series::divrem(f, &g, &d)?;
            split(f, d, a + 1, out)?;
            return split(f, q, a + 1, out);
        }
        a += 1;
        if a > seed + 200 {
            // g has roots only in a tiny field; try them one by one
            for x in 0..f.modulus().min(1 << 20) {
                if horner(f, &g, &x) == 0 {
                    out.push(x);
                }
            }
            return Ok(());
        }
    }
}

/// Integer roots of a polynomial with rational coefficients, sorted.
pub fn integer_roots(q: &Rationals, poly: &[BigRational]) -> Result<Vec<BigInt>> {
    let poly = trimmed(q, poly.to_vec());
    if poly.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    let low = poly.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(BigInt::zero());
    }
    let rest = &poly[low..];
    if rest.len() > 1 {
        // integer coefficients
        let den = rest.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = rest.iter().map(|c| (c * &den).to_integer()).collect();
        // every integer root divides the constant term
        let bound = ints[0].abs();
        let prime = prime_above(&bound)?;
        let f = PrimeField::new(prime)?;
        let reduced: Vec<u64> = ints.iter().map(|c| f.from_bigint(c)).collect();
        let half = BigInt::from(prime / 2);
        for r in roots_mod_p(&f, &reduced)? {
            let mut cand = BigInt::from(r);
            if cand > half {
                cand -= BigInt::from(prime);
            }
            let x = BigRational::from_integer(cand.clone());
            if horner(q, rest, &x).is_zero() {
                roots.push(cand);
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn prime_above(bound: &BigInt) -> Result<u64> {
    let b = bound
        .to_u64()
        .filter(|b| *b < 1 << 60)
        .ok_or_else(|| Error::invalid("polynomial coefficients too large for root search"))?;
    let mut p = (2 * b + 3) | 1;
    while !is_prime_u64(p) {
        p += 2;
    }
    Ok(p)
}
