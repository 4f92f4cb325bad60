//! Giant-step grid and the refinement cascade.
//!
//! For a power of two `s <= nu` let `C_s(x) = A(nu x + s) ... A(nu x + 1)`,
//! a matrix of polynomials in `x` of degree at most `D_s`. Level `s` stores
//! the values `C_s(0), ..., C_s(D_s)`. Level `2s` follows from level `s`
//! through `C_{2s}(x) = C_s(x + s/nu) C_s(x)`: both factors are obtained
//! by shifting the stored samples, so no polynomial is ever formed.
//!
//! A product `A(y + s) ... A(y + 1)` with `y` a multiple of `s` equals
//! `C_s(y / nu)`, where `y / nu = q + r s / nu`. Such values are read off
//! a window of `D_s + 1` consecutive shifted samples, or computed directly
//! by `s` baby steps when that is cheaper.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

#[cfg(test)]
use super::baby::Stepper;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, PolyMatrix};
use crate::poly::progression::{eval_progression, shift_values_many};

pub(crate) type WindowKey = (usize, u64, u64);

pub(crate) struct Engine<D: Domain> {
    dom: D,
    b: PolyMatrix<D>,
    k: usize,
    nu: u64,
    degs: Vec<usize>,
    levels: Vec<Vec<Vec<D::Elem>>>,
    giant: Vec<Matrix<D::Elem>>,
    windows: HashMap<WindowKey, Vec<Matrix<D::Elem>>>,
}

/// Degree bound of a product of `s` factors.
fn degree_bound(deg1: usize, k: usize, s: u64, restricted: bool) -> usize {
    let general = deg1 as u64 * s;
    let bound = if restricted { general.min(s + k as u64 - 1) } else { general };
    bound as usize
}

fn to_matrices<D: Domain>(k: usize, entries: &[Vec<D::Elem>], count: usize) -> Vec<Matrix<D::Elem>> {
    (0..count)
        .map(|x| Matrix::from_fn(k, k, |i, j| entries[i * k + j][x].clone()))
        .collect()
}

fn to_entries<D: Domain>(k: usize, mats: &[Matrix<D::Elem>]) -> Vec<Vec<D::Elem>> {
    (0..k * k)
        .map(|e| mats.iter().map(|m| m.get(e / k, e % k).clone()).collect())
        .collect()
}

impl<D: Domain> Engine<D> {
    /// Characteristic needed by [`Engine::build`] for these parameters.
    pub fn required_characteristic(b: &PolyMatrix<D>, nu: u64, restricted: bool) -> u64 {
        let deg1 = b.degree().unwrap_or(0);
        2 * degree_bound(deg1, b.dim(), nu, restricted) as u64 + 2
    }

    /// Builds all levels up to `nu` and the giant values `C_nu(x)`, `x < giant_len`.
    pub fn build(b: &PolyMatrix<D>, nu: u64, giant_len: u64, restricted: bool) -> Result<Self> {
        debug_assert!(nu.is_power_of_two());
        let dom = b.domain().clone();
        let k = b.dim();
        let required = Self::required_characteristic(b, nu, restricted);
        if !crate::domain::char_at_least(&dom, required) {
            return Err(Error::CharacteristicTooSmall { required, characteristic: dom.characteristic() });
        }
        let deg1 = b.degree().unwrap_or(0);
        let log_nu = nu.trailing_zeros() as usize;
        let degs: Vec<usize> = (0..=log_nu).map(|j| degree_bound(deg1, k, 1 << j, restricted)).collect();
        let inv_nu = dom.inv(&dom.from_u64(nu)).ok_or(Error::CharacteristicTooSmall {
            required,
            characteristic: dom.characteristic(),
        })?;

        // level 1: A(nu x + 1) at x = 0..=D_1
        let nu_e = dom.from_u64(nu);
        let first: Vec<Vec<D::Elem>> = b
            .entries()
            .iter()
            .map(|e| eval_progression(&dom, e, &dom.one(), &nu_e, degs[0] + 1))
            .collect::<Result<_>>()?;
        let mut levels = vec![first];
        for j in 0..log_nu {
            let (dlo, dhi) = (degs[j], degs[j + 1]);
            let cur = &levels[j];
            let mut low = to_matrices::<D>(k, cur, dlo + 1);
            if dhi > dlo {
                let ext = shift_values_many(&dom, cur, &dom.from_u64(dlo as u64 + 1), dhi - dlo)?;
                low.extend(to_matrices::<D>(k, &ext, dhi - dlo));
            }
            let frac = dom.mul(&dom.from_u64(1 << j), &inv_nu);
            let high = shift_values_many(&dom, cur, &frac, dhi + 1)?;
            let high = to_matrices::<D>(k, &high, dhi + 1);
            let next: Vec<Matrix<D::Elem>> = high
                .par_iter()
                .zip(low.par_iter())
                .map(|(h, l)| h.mul(&dom, l).expect("square"))
                .collect();
            levels.push(to_entries::<D>(k, &next));
        }

        let top = &levels[log_nu];
        let dtop = degs[log_nu];
        let have = (dtop + 1) as u64;
        let mut giant = to_matrices::<D>(k, top, (dtop + 1).min(giant_len as usize));
        if giant_len > have {
            let ext = shift_values_many(&dom, top, &dom.from_u64(have), (giant_len - have) as usize)?;
            giant.extend(to_matrices::<D>(k, &ext, (giant_len - have) as usize));
        }
        Ok(Engine { dom, b: b.clone(), k, nu, degs, levels, giant, windows: HashMap::new() })
    }

    pub fn dom(&self) -> &D {
        &self.dom
    }

    pub fn matrix(&self) -> &PolyMatrix<D> {
        &self.b
    }

    pub fn giant(&self, x: u64) -> &Matrix<D::Elem> {
        &self.giant[x as usize]
    }

    fn locate(&self, level: usize, y: u64) -> (u64, u64, u64, usize) {
        let s = 1u64 << level;
        let q = y / self.nu;
        let r = (y % self.nu) / s;
        let width = self.degs[level] as u64 + 1;
        (q, r, q / width, (q % width) as usize)
    }

    /// Window holding the chunk `(level, y)`; `(level, 0, 0)` is the stored samples.
    pub fn window_key(&self, level: usize, y: u64) -> WindowKey {
        let (_, r, w, _) = self.locate(level, y);
        (level, r, w)
    }

    /// Estimated multiplications to fill one window of `level`.
    pub fn window_cost(&self, level: usize) -> u64 {
        let d = self.degs[level] as u64;
        if d == 0 {
            return 0;
        }
        let kk = (self.k * self.k) as u64;
        let len = 2 * d + 1;
        let conv = if self.dom.fast_convolution(len as usize) {
            let l = len.next_power_of_two();
            let lg = 64 - l.leading_zeros() as u64;
            l * lg + l
        } else if d < 32 {
            (d + 1) * len
        } else {
            // Karatsuba on the full product
            ((3 * d) as f64).powf(1.585) as u64
        };
        kk * (conv + 2 * d + 2) + 8 * d
    }

    /// Estimated multiplications for one chunk of `level` by baby steps
    /// applied to `cols` columns.
    pub fn direct_cost(&self, level: usize, cols: usize) -> u64 {
        let s = 1u64 << level;
        let nnz = self.b.entries().iter().filter(|e| !e.is_empty()).count() as u64;
        s * nnz * (cols as u64 + 1)
    }

    /// Computes the windows of the given keys not yet cached.
    pub fn fill_windows(&mut self, keys: &HashSet<WindowKey>) -> Result<()> {
        let mut todo: Vec<WindowKey> = keys
            .iter()
            .filter(|key| !(key.1 == 0 && key.2 == 0) && !self.windows.contains_key(key))
            .copied()
            .collect();
        todo.sort_unstable();
        let inv_nu = self.dom.inv(&self.dom.from_u64(self.nu)).expect("odd characteristic");
        let filled: Vec<(WindowKey, Vec<Matrix<D::Elem>>)> = todo
            .par_iter()
            .map(|&(level, r, w)| {
                let width = self.degs[level] as u64 + 1;
                let frac = self.dom.mul(&self.dom.from_u64(r << level), &inv_nu);
                let delta = self.dom.add(&frac, &self.dom.from_u64(w * width));
                let vals = shift_values_many(&self.dom, &self.levels[level], &delta, width as usize)?;
                Ok(((level, r, w), to_matrices::<D>(self.k, &vals, width as usize)))
            })
            .collect::<Result<_>>()?;
        self.windows.extend(filled);
        Ok(())
    }

    /// `A(y + s) ... A(y + 1)` for `s = 2^level`, if available from samples or a filled window.
    pub fn chunk(&self, level: usize, y: u64) -> Option<Matrix<D::Elem>> {
        let (q, r, w, t) = self.locate(level, y);
        if r == 0 && w == 0 {
            let e = &self.levels[level];
            let k = self.k;
            return Some(Matrix::from_fn(k, k, |i, j| e[i * k + j][q as usize].clone()));
        }
        self.windows.get(&(level, r, w)).map(|win| win[t].clone())
    }

    /// `A(y + s) ... A(y + 1)` by `s` baby steps.
    #[cfg(test)]
    pub fn chunk_direct(&self, level: usize, y: u64) -> Matrix<D::Elem> {
        let s = 1u64 << level;
        let mut st = Stepper::new(&self.b, y + 1, s);
        let mut m = st.next_matrix();
        for _ in 1..s {
            m = st.left_mul(&m);
        }
        m
    }
}

/// Splits `(lo, hi]` into aligned chunks `(y, y + s]`, `s` a power of two
/// at most `max_s` dividing `y`, in ascending order.
pub(crate) fn dyadic_chunks(lo: u64, hi: u64, max_s: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    let mut cur = lo;
    while cur < hi {
        let mut s = if cur == 0 { max_s } else { (1u64 << cur.trailing_zeros().min(63)).min(max_s) };
        while cur + s > hi {
            s >>= 1;
        }
        out.push((s.trailing_zeros() as usize, cur));
        cur += s;
    }
    out
}

/// How one chunk is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ChunkSource {
    Window,
    Direct,
}

/// Decides, per window, whether shifting a window beats baby steps for
/// all chunks that would read from it.
pub(crate) fn plan_chunks<D: Domain>(
    eng: &Engine<D>,
    chunks: &[(usize, u64)],
    cols: usize,
) -> (HashMap<WindowKey, ChunkSource>, HashSet<WindowKey>) {
    let mut count: HashMap<WindowKey, u64> = HashMap::new();
    let mut seen: HashSet<(usize, u64)> = HashSet::new();
    for &(level, y) in chunks {
        if seen.insert((level, y)) {
            *count.entry(eng.window_key(level, y)).or_insert(0) += 1;
        }
    }
    let mut plan = HashMap::new();
    let mut fill = HashSet::new();
    for (key, c) in count {
        let free = key.1 == 0 && key.2 == 0;
        let src = if free || c * eng.direct_cost(key.0, cols) > eng.window_cost(key.0) {
            ChunkSource::Window
        } else {
            ChunkSource::Direct
        };
        if src == ChunkSource::Window && !free {
            fill.insert(key);
        }
        plan.insert(key, src);
    }
    (plan, fill)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{PrimeField, Rationals};
    use crate::polyrec::baby::iterate_product;
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

    #[test]
    fn chunks_cover_the_range() {
        let c = dyadic_chunks(5, 37, 8);
        let mut cur = 5;
        for &(l, y) in &c {
            assert_eq!(y, cur);
            assert_eq!(y % (1 << l), 0);
            assert!(1 << l <= 8);
            cur += 1 << l;
        }
        assert_eq!(cur, 37);
        assert!(dyadic_chunks(4, 4, 8).is_empty());
    }

    #[test]
    fn giant_values_and_chunks_match_iteration() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for (k, d, nu) in [(1, 1, 8u64), (2, 2, 16), (3, 1, 4), (2, 0, 8)] {
            let b = random_matrix(&f, &mut rng, k, d);
            let mut eng = Engine::build(&b, nu, 40, false).unwrap();
            for x in 0..40 {
                assert_eq!(eng.giant(x), &iterate_product(&b, nu * x, nu * x + nu));
            }
            let chunks: Vec<(usize, u64)> = (0..nu.trailing_zeros() as usize)
                .flat_map(|l| (0..20u64).map(move |i| (l, i * 37 * (1 << l))))
                .collect();
            let keys: HashSet<WindowKey> = chunks.iter().map(|&(l, y)| eng.window_key(l, y)).collect();
            eng.fill_windows(&keys).unwrap();
            for &(l, y) in &chunks {
                let want = iterate_product(&b, y, y + (1 << l));
                assert_eq!(eng.chunk(l, y).unwrap(), want);
                assert_eq!(eng.chunk_direct(l, y), want);
            }
        }
    }

    #[test]
    fn rational_grid() {
        let q = Rationals::new();
        let b = PolyMatrix::new(
            &q,
            vec![
                vec![vec![q.from_i64(1), q.from_i64(2)], vec![q.from_i64(-1)]],
                vec![vec![q.one()], vec![]],
            ],
        )
        .unwrap();
        let eng = Engine::build(&b, 8, 12, false).unwrap();
        for x in 0..12 {
            assert_eq!(eng.giant(x), &iterate_product(&b, 8 * x, 8 * x + 8));
        }
    }

    #[test]
    fn restricted_degree_bound_is_enough() {
        // companion with deg f_j <= j
        let f = PrimeField::new(998_244_353).unwrap();
        let b = PolyMatrix::new(
            &f,
            vec![
                vec![vec![3, 1], vec![2, 5, 7], vec![1, 1, 1, 4]],
                vec![vec![1], vec![], vec![]],
                vec![vec![], vec![1], vec![]],
            ],
        )
        .unwrap();
        let eng = Engine::build(&b, 16, 30, true).unwrap();
        for x in 0..30 {
            assert_eq!(eng.giant(x), &iterate_product(&b, 16 * x, 16 * x + 16));
        }
    }

    #[test]
    fn small_characteristic_is_rejected() {
        let f = PrimeField::new(13).unwrap();
        let b = PolyMatrix::scalar(&f, vec![0, 1]);
        assert!(matches!(Engine::build(&b, 16, 4, false), Err(Error::CharacteristicTooSmall { .. })));
    }
}
