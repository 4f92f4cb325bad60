use linrec::apps::multi_factorial;
use linrec::constrec::ConstRecurrence;
use linrec::domain::{Domain, PrimeField, Rationals};
use linrec::holonomic::{multi_eval, HolonomicRecurrence};
use linrec::index::IndexSet;
use num_bigint::BigUint;

fn main() -> linrec::error::Result<()> {
    // Fibonacci over Q
    let q = Rationals::new();
    let fib = ConstRecurrence::new(&q, vec![q.one(), q.one()], vec![q.zero(), q.one()])?;
    assert_eq!(fib.nth_term(&BigUint::from(10u32)), q.from_i64(55));

    // n! mod p at several indices, about sqrt(n) multiplications each
    let f = PrimeField::new(998_244_353)?;
    let facts = multi_factorial(&f, &IndexSet::new(vec![10, 100_000])?)?;
    println!("{:?} muls={}", facts, f.counter().report().muls);

    // Catalan numbers: (n + 2) C_{n+1} - (4n + 2) C_n = 0
    let coeffs = vec![vec![q.from_i64(2), q.one()], vec![q.from_i64(-2), q.from_i64(-4)]];
    let cat = HolonomicRecurrence::new(&q, coeffs, vec![q.one()], 0)?;
    println!("{:?}", multi_eval(&cat, &IndexSet::new(vec![5, 30])?)?);
    Ok(())
}
