//! Baby steps: evaluating `A(j)` at consecutive integers and applying it.

use crate::domain::Domain;
use crate::matrix::{Matrix, PolyMatrix};
use crate::poly::horner;
use crate::poly::progression::ForwardDifferences;

enum EntryEval<D: Domain> {
    Zero,
    Horner(Vec<D::Elem>),
    Diff(ForwardDifferences<D>),
}

/// Yields `A(j), A(j+1), ...` entry by entry.
///
/// For long runs over exact domains, entries of positive degree are
/// advanced through forward differences (additions only).
pub struct Stepper<D: Domain> {
    dom: D,
    k: usize,
    entries: Vec<EntryEval<D>>,
    pos: u64,
    sparse_rows: Vec<Vec<usize>>,
}

impl<D: Domain> Stepper<D> {
    /// Starts at `start`; `run` is the expected number of steps.
    pub fn new(a: &PolyMatrix<D>, start: u64, run: u64) -> Self {
        let dom = a.domain().clone();
        let k = a.dim();
        let x0 = dom.from_u64(start);
        let entries = a
            .entries()
            .iter()
            .map(|e| {
                if e.is_empty() {
                    EntryEval::Zero
                } else if e.len() == 1 || !dom.is_exact() || run <= e.len() as u64 {
                    EntryEval::Horner(e.clone())
                } else {
                    EntryEval::Diff(ForwardDifferences::new(&dom, e, &x0))
                }
            })
            .collect();
        let sparse_rows = (0..k)
            .map(|i| (0..k).filter(|&j| !a.entry(i, j).is_empty()).collect())
            .collect();
        Stepper { dom, k, entries, pos: start, sparse_rows }
    }

    fn value(&self, idx: usize, x: &D::Elem) -> D::Elem {
        match &self.entries[idx] {
            EntryEval::Zero => self.dom.zero(),
            EntryEval::Horner(p) => {
                if p.len() == 1 {
                    p[0].clone()
                } else {
                    horner(&self.dom, p, x)
                }
            }
            EntryEval::Diff(fd) => fd.value().clone(),
        }
    }

    fn advance(&mut self) {
        for e in self.entries.iter_mut() {
            if let EntryEval::Diff(fd) = e {
                fd.advance();
            }
        }
        self.pos += 1;
    }

    /// `A(pos)` as a dense matrix, then moves to `pos + 1`.
    pub fn next_matrix(&mut self) -> Matrix<D::Elem> {
        let x = self.dom.from_u64(self.pos);
        let k = self.k;
        let m = Matrix::from_fn(k, k, |i, j| self.value(i * k + j, &x));
        self.advance();
        m
    }

    /// `v <- A(pos) v`, then moves to `pos + 1`.
    pub fn apply(&mut self, v: &[D::Elem]) -> Vec<D::Elem> {
        let x = self.dom.from_u64(self.pos);
        let d = &self.dom;
        let k = self.k;
        let out = (0..k)
            .map(|i| {
                let mut acc = d.zero();
                for &j in &self.sparse_rows[i] {
                    if d.is_zero(&v[j]) {
                        continue;
                    }
                    let a = self.value(i * k + j, &x);
                    let t = if d.is_one(&a) { v[j].clone() } else { d.mul(&a, &v[j]) };
                    acc = if d.is_zero(&acc) { t } else { d.add(&acc, &t) };
                }
                acc
            })
            .collect();
        self.advance();
        out
    }

    /// `M <- A(pos) M`, then moves to `pos + 1`.
    pub fn left_mul(&mut self, m: &Matrix<D::Elem>) -> Matrix<D::Elem> {
        let cols: Vec<Vec<D::Elem>> = (0..m.cols()).map(|c| m.column(c)).collect();
        let x = self.dom.from_u64(self.pos);
        let d = &self.dom;
        let k = self.k;
        let vals: Vec<Vec<(usize, D::Elem)>> = (0..k)
            .map(|i| self.sparse_rows[i].iter().map(|&j| (j, self.value(i * k + j, &x))).collect())
            .collect();
        let out = Matrix::from_fn(k, m.cols(), |i, c| {
            let mut acc = d.zero();
            for (j, a) in &vals[i] {
                let b = &cols[c][*j];
                if d.is_zero(b) {
                    continue;
                }
                let t = if d.is_one(a) { b.clone() } else { d.mul(a, b) };
                acc = if d.is_zero(&acc) { t } else { d.add(&acc, &t) };
            }
            acc
        });
        self.advance();
        out
    }
}

/// `A(hi) ... A(lo+1)` by iteration.
pub fn iterate_product<D: Domain>(a: &PolyMatrix<D>, lo: u64, hi: u64) -> Matrix<D::Elem> {
    let dom = a.domain();
    let mut m = Matrix::identity(dom, a.dim());
    let mut st = Stepper::new(a, lo + 1, hi.saturating_sub(lo));
    for _ in lo..hi {
        m = st.left_mul(&m);
    }
    m
}

/// `A(hi) ... A(lo+1) v` by iteration.
pub fn iterate_apply<D: Domain>(a: &PolyMatrix<D>, lo: u64, hi: u64, v: &[D::Elem]) -> Vec<D::Elem> {
    let mut v = v.to_vec();
    let mut st = Stepper::new(a, lo + 1, hi.saturating_sub(lo));
    for _ in lo..hi {
        v = st.apply(&v);
    }
    v
}
