//! Products `A(n) ... A(1)` of polynomial matrices in about `sqrt(n)`
//! ring operations, at one or many indices.
//!
//! Intervals passed to [`multi_products`] are inclusive on both ends and
//! multiplied right to left: `(m, n)` yields `A(n) A(n-1) ... A(m)`.

mod baby;
mod giant;
mod grid;
mod plan;
mod range_tree;

use std::collections::HashMap;

use rayon::prelude::*;

pub use baby::{iterate_apply, iterate_product, Stepper};
pub use giant::giant_step_poly;
pub use plan::{choose_nu, BsgsPlan, Mode};

use crate::domain::{char_at_least, Domain};
use crate::error::{Error, Result};
use crate::index::{IndexSet, IntervalSet};
use crate::matrix::{Matrix, PolyMatrix};
use grid::{dyadic_chunks, plan_chunks, ChunkSource, Engine, WindowKey};
use range_tree::RangeTree;

/// Below this many factors plain iteration is used.
pub const NAIVE_BELOW: u64 = 256;

/// Result of [`multi_apply`].
#[derive(Clone, Debug, PartialEq)]
pub struct MultiApply<E> {
    /// `A(n_i) ... A(1) P0` in index order.
    pub values: Vec<Vec<E>>,
    pub plan: BsgsPlan,
    /// Companion mode found a singular factor and general mode was used instead.
    pub fell_back: bool,
}

/// Largest power of two `<= nu` the characteristic supports, or 1.
fn fit_nu<D: Domain>(b: &PolyMatrix<D>, mut nu: u64, restricted: bool) -> u64 {
    while nu >= 2 && !char_at_least(b.domain(), Engine::required_characteristic(b, nu, restricted)) {
        nu /= 2;
    }
    nu
}

fn iterate_only<D: Domain>(b: &PolyMatrix<D>, n: u64, nu: u64) -> bool {
    n < NAIVE_BELOW || nu < 2 || (!b.domain().is_exact() && b.degree().unwrap_or(0) > 0)
}

type Chunks = Vec<(usize, u64)>;

struct Resolver<'a, D: Domain> {
    eng: &'a Engine<D>,
    plan: HashMap<WindowKey, ChunkSource>,
}

impl<'a, D: Domain> Resolver<'a, D> {
    fn new(eng: &'a mut Engine<D>, chunks: &[(usize, u64)], cols: usize) -> Result<Self> {
        let (plan, fill) = plan_chunks(eng, chunks, cols);
        eng.fill_windows(&fill)?;
        Ok(Resolver { eng, plan })
    }

    fn source(&self, level: usize, y: u64) -> ChunkSource {
        self.plan[&self.eng.window_key(level, y)]
    }

    /// `chunk * acc`, with `None` standing for the identity.
    fn times(&self, level: usize, y: u64, acc: Option<Matrix<D::Elem>>) -> Matrix<D::Elem> {
        let dom = self.eng.dom();
        match self.source(level, y) {
            ChunkSource::Window => {
                let c = self.eng.chunk(level, y).expect("window filled");
                match acc {
                    None => c,
                    Some(m) => c.mul(dom, &m).expect("square"),
                }
            }
            ChunkSource::Direct => {
                let s = 1u64 << level;
                let mut st = Stepper::new(self.eng.matrix(), y + 1, s);
                let mut m = match acc {
                    None => st.next_matrix(),
                    Some(m) => st.left_mul(&m),
                };
                for _ in 1..s {
                    m = st.left_mul(&m);
                }
                m
            }
        }
    }

    fn apply(&self, level: usize, y: u64, v: Vec<D::Elem>) -> Vec<D::Elem> {
        match self.source(level, y) {
            ChunkSource::Window => {
                let c = self.eng.chunk(level, y).expect("window filled");
                c.mul_vec(self.eng.dom(), &v).expect("dimension")
            }
            ChunkSource::Direct => {
                let s = 1u64 << level;
                let mut st = Stepper::new(self.eng.matrix(), y + 1, s);
                let mut v = v;
                for _ in 0..s {
                    v = st.apply(&v);
                }
                v
            }
        }
    }
}

/// Products `B(hi) ... B(lo + 1)` for half-open queries `(lo, hi]`.
fn products_on<D: Domain>(b: &PolyMatrix<D>, queries: &[(u64, u64)], nu: u64, restricted: bool) -> Result<Vec<Matrix<D::Elem>>> {
    let dom = b.domain();
    let k = b.dim();
    let n = queries.iter().map(|q| q.1).max().unwrap_or(0);
    let nu = fit_nu(b, nu, restricted);
    if iterate_only(b, n, nu) {
        return Ok(queries.par_iter().map(|&(lo, hi)| iterate_product(b, lo, hi)).collect());
    }
    let giant_len = (n / nu).max(1);
    let mut eng = Engine::build(b, nu, giant_len, restricted)?;

    struct Split {
        left: Chunks,
        mid: Option<(u64, u64)>,
        right: Chunks,
    }
    let splits: Vec<Split> = queries
        .iter()
        .map(|&(lo, hi)| {
            let a = lo.div_ceil(nu);
            let z = hi / nu;
            if a < z {
                Split {
                    left: dyadic_chunks(lo, a * nu, nu / 2),
                    mid: Some((a, z)),
                    right: dyadic_chunks(z * nu, hi, nu / 2),
                }
            } else {
                Split { left: dyadic_chunks(lo, hi, nu / 2), mid: None, right: Vec::new() }
            }
        })
        .collect();
    let all: Chunks = splits.iter().flat_map(|s| s.left.iter().chain(&s.right).copied()).collect();

    let mut bounds: Vec<u64> = splits.iter().filter_map(|s| s.mid).flat_map(|(a, z)| [a, z]).collect();
    bounds.sort_unstable();
    bounds.dedup();
    let segments: Vec<Matrix<D::Elem>> = bounds
        .par_windows(2)
        .map(|w| {
            let mut m = eng.giant(w[0]).clone();
            for x in w[0] + 1..w[1] {
                m = eng.giant(x).mul(dom, &m).expect("square");
            }
            m
        })
        .collect();
    let tree = RangeTree::new(dom, segments);
    let pos = |x: u64| bounds.binary_search(&x).expect("boundary");

    let res = Resolver::new(&mut eng, &all, k)?;
    Ok(splits
        .par_iter()
        .map(|s| {
            let mut acc: Option<Matrix<D::Elem>> = None;
            for &(l, y) in &s.left {
                acc = Some(res.times(l, y, acc));
            }
            if let Some((a, z)) = s.mid {
                let g = tree.query(pos(a), pos(z)).expect("nonempty range");
                acc = Some(match acc {
                    None => g,
                    Some(m) => g.mul(dom, &m).expect("square"),
                });
            }
            for &(l, y) in &s.right {
                acc = Some(res.times(l, y, acc));
            }
            acc.unwrap_or_else(|| Matrix::identity(dom, k))
        })
        .collect())
}

/// `A(n_i) ... A(1) v` for sorted indices, walking the giant grid once.
fn walk_on<D: Domain>(b: &PolyMatrix<D>, v0: &[D::Elem], indices: &[u64], nu: u64, restricted: bool) -> Result<Vec<Vec<D::Elem>>> {
    let dom = b.domain();
    let n = indices.last().copied().unwrap_or(0);
    let nu = fit_nu(b, nu, restricted);
    if iterate_only(b, n, nu) {
        let mut st = Stepper::new(b, 1, n);
        let mut v = v0.to_vec();
        let mut pos = 0;
        let mut out = Vec::with_capacity(indices.len());
        for &t in indices {
            while pos < t {
                v = st.apply(&v);
                pos += 1;
            }
            out.push(v.clone());
        }
        return Ok(out);
    }
    let mut eng = Engine::build(b, nu, (n / nu).max(1), restricted)?;
    let tails: Vec<Chunks> = indices.iter().map(|&t| dyadic_chunks(t / nu * nu, t, nu / 2)).collect();
    let all: Chunks = tails.iter().flatten().copied().collect();
    let res = Resolver::new(&mut eng, &all, 1)?;
    let mut v = v0.to_vec();
    let mut x = 0;
    let mut out = Vec::with_capacity(indices.len());
    for (&t, tail) in indices.iter().zip(&tails) {
        while x < t / nu {
            v = res.eng.giant(x).mul_vec(dom, &v)?;
            x += 1;
        }
        let mut w = v.clone();
        for &(l, y) in tail {
            w = res.apply(l, y, w);
        }
        out.push(w);
    }
    Ok(out)
}

/// `A(n) ... A(1)`; the identity for `n = 0`.
pub fn matrix_factorial<D: Domain>(a: &PolyMatrix<D>, n: u64) -> Result<Matrix<D::Elem>> {
    let plan = choose_nu(n, a.degree().unwrap_or(0), 1);
    Ok(products_on(a, &[(0, n)], plan.nu, false)?.pop().unwrap())
}

/// `A(n_i) ... A(m_i)` for every interval `(m_i, n_i)`, in the given order.
pub fn multi_products<D: Domain>(a: &PolyMatrix<D>, intervals: &IntervalSet) -> Result<Vec<Matrix<D::Elem>>> {
    let dom = a.domain();
    let b = a.shift(&dom.neg(&dom.one()));
    let queries: Vec<(u64, u64)> = intervals.as_slice().iter().map(|&(m, n)| (m, n + 1)).collect();
    let n = queries.iter().map(|q| q.1).max().unwrap_or(0);
    let plan = choose_nu(n, a.degree().unwrap_or(0), queries.len());
    products_on(&b, &queries, plan.nu, false)
}

fn check_restricted<D: Domain>(a: &PolyMatrix<D>) -> Result<()> {
    let k = a.dim();
    let ok = a.is_companion_shape()
        && (1..k).all(|i| a.entry(i, i - 1).len() == 1)
        && (0..k).all(|j| a.entry(0, j).len() <= j + 2);
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(
            "restricted companion mode needs a constant nonzero subdiagonal and top row degrees deg f_j <= j",
        ))
    }
}

/// `A(n_i) ... A(1) P0` for every index.
///
/// The companion modes check that every factor `A(1), ..., A(n)` is
/// invertible; if one is not, the general mode is used and `fell_back` is set.
pub fn multi_apply<D: Domain>(a: &PolyMatrix<D>, p0: &[D::Elem], indices: &IndexSet, mode: Mode) -> Result<MultiApply<D::Elem>> {
    let k = a.dim();
    if p0.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: p0.len() });
    }
    let dom = a.domain();
    let idx = indices.as_slice();
    let n = indices.max().unwrap_or(0);
    let d = a.degree().unwrap_or(0);
    let mut plan = choose_nu(n, d, idx.len().max(1));
    plan.mode = mode;
    let mut restricted = false;
    match mode {
        Mode::General | Mode::Vector => {}
        Mode::Companion | Mode::CompanionRestricted => {
            if !a.is_companion_shape() {
                return Err(Error::invalid("companion mode needs a matrix of companion shape"));
            }
            if mode == Mode::CompanionRestricted {
                check_restricted(a)?;
                if n < (k * k) as u64 {
                    plan.mode = Mode::Companion;
                } else {
                    plan.nu = choose_nu(n, 1, idx.len().max(1)).nu;
                    restricted = true;
                }
            }
            if n > 0 && dom.first_integer_zero(a.entry(0, k - 1), 1, n)?.is_some() {
                plan.mode = Mode::General;
                plan.nu = choose_nu(n, d, idx.len().max(1)).nu;
                restricted = false;
            }
        }
    }
    let fell_back = matches!(mode, Mode::Companion | Mode::CompanionRestricted) && plan.mode == Mode::General;
    let values = if plan.mode == Mode::General {
        let queries: Vec<(u64, u64)> = idx.iter().map(|&t| (0, t)).collect();
        products_on(a, &queries, plan.nu, false)?
            .into_iter()
            .map(|m| m.mul_vec(dom, p0))
            .collect::<Result<_>>()?
    } else {
        walk_on(a, p0, idx, plan.nu, restricted)?
    };
    Ok(MultiApply { values, plan, fell_back })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Float64, PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &PrimeField, rng: &mut ChaCha8Rng, k: usize, d: usize) -> PolyMatrix<PrimeField> {
        PolyMatrix::new(
            f,
            (0..k)
                .map(|_| (0..k).map(|_| (0..=d).map(|_| rng.gen_range(0..f.modulus())).collect()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn factorial_matrix<D: Domain>(dom: &D) -> PolyMatrix<D> {
        PolyMatrix::scalar(dom, vec![dom.zero(), dom.one()])
    }

    #[test]
    fn small_factorials() {
        let q = Rationals::new();
        let a = factorial_matrix(&q);
        assert_eq!(matrix_factorial(&a, 5).unwrap().get(0, 0), &q.from_i64(120));
        assert_eq!(matrix_factorial(&a, 0).unwrap(), Matrix::identity(&q, 1));
        let r = multi_apply(&a, &[q.one()], &IndexSet::new(vec![1, 2, 3, 6]).unwrap(), Mode::Vector).unwrap();
        let want: Vec<Vec<_>> = [1, 2, 6, 720].iter().map(|&v| vec![q.from_i64(v)]).collect();
        assert_eq!(r.values, want);
        let r = multi_apply(&a, &[q.from_i64(7)], &IndexSet::new(vec![0]).unwrap(), Mode::General).unwrap();
        assert_eq!(r.values, vec![vec![q.from_i64(7)]]);
    }

    #[test]
    fn fibonacci_as_matrix_product() {
        let q = Rationals::new();
        let a = PolyMatrix::constant(&q, &Matrix::from_rows(vec![vec![q.one(), q.one()], vec![q.one(), q.zero()]]).unwrap()).unwrap();
        let p0 = [q.zero(), q.one()];
        for mode in [Mode::General, Mode::Vector, Mode::Companion, Mode::CompanionRestricted] {
            let r = multi_apply(&a, &p0, &IndexSet::new(vec![10, 20]).unwrap(), mode).unwrap();
            assert_eq!(r.values[0], vec![q.from_i64(55), q.from_i64(34)]);
            assert_eq!(r.values[1], vec![q.from_i64(6765), q.from_i64(4181)]);
        }
    }

    #[test]
    fn large_factorial_matches_iteration() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        let a = factorial_matrix(&f);
        for n in [256u64, 1000, 4099, 70_000] {
            assert_eq!(matrix_factorial(&a, n).unwrap(), iterate_product(&a, 0, n), "n = {n}");
        }
    }

    #[test]
    fn random_products_match_iteration() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (k, d) in [(2, 2), (3, 1), (1, 3), (2, 0)] {
            let a = random_matrix(&f, &mut rng, k, d);
            assert_eq!(matrix_factorial(&a, 1000).unwrap(), iterate_product(&a, 0, 1000));
            let pairs: Vec<(u64, u64)> = (0..20)
                .map(|_| {
                    let m = rng.gen_range(0..10_000);
                    (m, rng.gen_range(m..=10_000))
                })
                .collect();
            let iv = IntervalSet::new(pairs.clone()).unwrap();
            let got = multi_products(&a, &iv).unwrap();
            for (&(m, n), g) in iv.as_slice().iter().zip(&got) {
                let want = if m == 0 { a.eval_u64(0).clone() } else { iterate_product(&a, m - 1, m) };
                let want = iterate_product(&a, m, n).mul(&f, &want).unwrap();
                assert_eq!(g, &want, "({m}, {n})");
            }
        }
    }

    #[test]
    fn single_factor_interval() {
        let q = Rationals::new();
        let a = PolyMatrix::new(&q, vec![vec![vec![q.one(), q.one()], vec![q.from_i64(2)]], vec![vec![q.one()], vec![]]]).unwrap();
        let got = multi_products(&a, &IntervalSet::new(vec![(4, 4), (0, 0)]).unwrap()).unwrap();
        assert_eq!(got[0], a.eval_u64(0));
        assert_eq!(got[1], a.eval_u64(4));
    }

    #[test]
    fn modes_agree() {
        let f = PrimeField::new(998_244_353).unwrap();
        let a = PolyMatrix::new(
            &f,
            vec![
                vec![vec![3, 1], vec![2, 5, 7], vec![1, 1, 1, 4]],
                vec![vec![1], vec![], vec![]],
                vec![vec![], vec![1], vec![]],
            ],
        )
        .unwrap();
        let p0 = [1, 2, 3];
        let idx = IndexSet::new(vec![5, 300, 301, 4000, 4096, 9999]).unwrap();
        let want: Vec<Vec<u64>> = idx.as_slice().iter().map(|&t| iterate_apply(&a, 0, t, &p0)).collect();
        for mode in [Mode::General, Mode::Vector, Mode::Companion, Mode::CompanionRestricted] {
            let r = multi_apply(&a, &p0, &idx, mode).unwrap();
            assert_eq!(r.values, want, "{mode:?}");
            assert!(!r.fell_back);
        }
    }

    #[test]
    fn singular_companion_falls_back() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        // top-right entry N - 700 vanishes at 700
        let a = PolyMatrix::new(&f, vec![vec![vec![1], vec![f.neg(&700), 1]], vec![vec![1], vec![]]]).unwrap();
        let idx = IndexSet::new(vec![1000, 2000]).unwrap();
        let r = multi_apply(&a, &[1, 1], &idx, Mode::Companion).unwrap();
        assert!(r.fell_back);
        assert_eq!(r.values[1], iterate_apply(&a, 0, 2000, &[1, 1]));
    }

    #[test]
    fn restricted_mode_rejects_high_degree() {
        let q = Rationals::new();
        let a = PolyMatrix::new(&q, vec![vec![vec![q.one(), q.one(), q.one()], vec![q.one()]], vec![vec![q.one()], vec![]]]).unwrap();
        let idx = IndexSet::new(vec![10]).unwrap();
        assert!(multi_apply(&a, &[q.one(), q.one()], &idx, Mode::CompanionRestricted).is_err());
    }

    #[test]
    fn float_chebyshev() {
        let fl = Float64::new();
        let x = 0.3f64;
        let m = Matrix::from_rows(vec![vec![2.0 * x, -1.0], vec![1.0, 0.0]]).unwrap();
        let a = PolyMatrix::constant(&fl, &m).unwrap();
        let idx = IndexSet::new(vec![999, 5000]).unwrap();
        let r = multi_apply(&a, &[x, 1.0], &idx, Mode::Vector).unwrap();
        let th = x.acos();
        assert!((r.values[0][0] - (1000.0 * th).cos()).abs() < 1e-9);
        assert!((r.values[1][0] - (5001.0 * th).cos()).abs() < 1e-9);
    }

    #[test]
    fn small_field_reduces_step() {
        let f = PrimeField::new(1009).unwrap();
        let a = factorial_matrix(&f);
        assert_eq!(matrix_factorial(&a, 1000).unwrap(), iterate_product(&a, 0, 1000));
        assert_eq!(matrix_factorial(&a, 5000).unwrap().get(0, 0), &0);
    }
}
