//! Segment tree over an ordered list of matrices.
//!
//! `query(l, r)` returns `E_{r-1} ... E_{l+1} E_l` (later elements on the
//! left) using `O(log T)` products.

use crate::domain::Domain;
use crate::matrix::Matrix;

pub struct RangeTree<D: Domain> {
    dom: D,
    size: usize,
    nodes: Vec<Option<Matrix<D::Elem>>>,
}

impl<D: Domain> RangeTree<D> {
    pub fn new(dom: &D, elems: Vec<Matrix<D::Elem>>) -> Self {
        let size = elems.len().next_power_of_two().max(1);
        let mut nodes: Vec<Option<Matrix<D::Elem>>> = vec![None; 2 * size];
        for (i, e) in elems.into_iter().enumerate() {
            nodes[size + i] = Some(e);
        }
        for i in (1..size).rev() {
            nodes[i] = combine(dom, nodes[2 * i + 1].as_ref(), nodes[2 * i].as_ref());
        }
        RangeTree { dom: dom.clone(), size, nodes }
    }

    /// Product of elements `l..r`; `None` for an empty range.
    pub fn query(&self, l: usize, r: usize) -> Option<Matrix<D::Elem>> {
        let mut low: Option<Matrix<D::Elem>> = None;
        let mut high: Option<Matrix<D::Elem>> = None;
        let (mut l, mut r) = (l + self.size, r + self.size);
        while l < r {
            if l & 1 == 1 {
                low = combine(&self.dom, self.nodes[l].as_ref(), low.as_ref());
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                high = combine(&self.dom, high.as_ref(), self.nodes[r].as_ref());
            }
            l >>= 1;
            r >>= 1;
        }
        combine(&self.dom, high.as_ref(), low.as_ref())
    }
}

/// `a * b`, treating `None` as the identity.
fn combine<D: Domain>(dom: &D, a: Option<&Matrix<D::Elem>>, b: Option<&Matrix<D::Elem>>) -> Option<Matrix<D::Elem>> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) => Some(x.clone()),
        (None, Some(y)) => Some(y.clone()),
        (Some(x), Some(y)) => Some(x.mul(dom, y).expect("square matrices of one size")),
    }
}
