//! The giant-step polynomial matrix `C(N) = A(N + nu) ... A(N + 1)`,
//! computed by evaluation, windowed products and interpolation.

use crate::companion::{sliding_window_products, CompanionMatrix};
use crate::domain::{require_char, Domain};
use crate::error::Result;
use crate::matrix::{Matrix, PolyMatrix};
use crate::poly::progression::{eval_progression, interp_progression};

/// Products `E_{i+w-1} ... E_i` of every window of `w` consecutive
/// factors, from prefix products of one block of `w` and suffix products
/// of the block before it.
fn window_products<D: Domain>(dom: &D, es: &[Matrix<D::Elem>], w: usize) -> Vec<Matrix<D::Elem>> {
    let k = es[0].rows();
    let count = es.len() - w + 1;
    let mut out = Vec::with_capacity(count);
    for start in (0..count).step_by(w) {
        // suffix[t] = E_{start+w-1} ... E_{start+t}
        let mut suffix = vec![Matrix::identity(dom, k); w + 1];
        for t in (0..w).rev() {
            suffix[t] = suffix[t + 1].mul(dom, &es[start + t]).expect("square");
        }
        // windows start+t for t < w: (E_{start+w+t-1} ... E_{start+w}) * suffix[t]
        let mut prefix = Matrix::identity(dom, k);
        for t in 0..w {
            if start + t >= count {
                break;
            }
            if t > 0 {
                prefix = es[start + w + t - 1].mul(dom, &prefix).expect("square");
            }
            out.push(if t == 0 { suffix[0].clone() } else { prefix.mul(dom, &suffix[t]).expect("square") });
        }
    }
    out
}

/// `C(N) = A(N + nu) ... A(N + 1)` as a polynomial matrix of degree at most
/// `nu d`, sampled at `N = m, ..., m + nu d`.
pub fn giant_step_poly<D: Domain>(a: &PolyMatrix<D>, nu: u64, m: u64) -> Result<PolyMatrix<D>> {
    let dom = a.domain();
    let k = a.dim();
    let d = a.degree().unwrap_or(0) as u64;
    require_char(dom, m + 2 * nu * d + 2)?;
    if nu == 0 {
        return PolyMatrix::constant(dom, &Matrix::identity(dom, k));
    }
    let points = (nu * d + 1) as usize;
    let len = points + nu as usize - 1;
    // alpha: A at m+1, ..., m+len
    let start = dom.from_u64(m + 1);
    let vals: Vec<Vec<D::Elem>> = a
        .entries()
        .iter()
        .map(|e| eval_progression(dom, e, &start, &dom.one(), len))
        .collect::<Result<_>>()?;
    let es: Vec<Matrix<D::Elem>> = (0..len).map(|x| Matrix::from_fn(k, k, |i, j| vals[i * k + j][x].clone())).collect();

    // beta: windows of nu consecutive factors
    let windows = if a.is_unit_companion() {
        let fs: Vec<CompanionMatrix<D::Elem>> = es
            .iter()
            .rev()
            .map(|e| CompanionMatrix::new(e.row(0).to_vec()).expect("nonempty"))
            .collect();
        match sliding_window_products(dom, &fs, nu as usize) {
            Ok(mut w) => {
                w.reverse();
                w
            }
            Err(_) => window_products(dom, &es, nu as usize),
        }
    } else {
        window_products(dom, &es, nu as usize)
    };

    // gamma: entrywise interpolation
    let m_e = dom.from_u64(m);
    let entries = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let ys: Vec<D::Elem> = windows.iter().map(|w| w.get(i, j).clone()).collect();
                    interp_progression(dom, &ys, &m_e, &dom.one())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(dom, entries)
}
