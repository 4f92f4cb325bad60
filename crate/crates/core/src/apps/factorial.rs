use crate::domain::Domain;
use crate::error::Result;
use crate::index::IndexSet;
use crate::matrix::PolyMatrix;
use crate::polyrec::{multi_apply, Mode};

/// `n_i!` for every index, as products `N (N-1) ... 1` of the `1x1` matrix `(N)`.
pub fn multi_factorial<D: Domain>(dom: &D, indices: &IndexSet) -> Result<Vec<D::Elem>> {
    let a = PolyMatrix::scalar(dom, vec![dom.zero(), dom.one()]);
    let res = multi_apply(&a, &[dom.one()], indices, Mode::Vector)?;
    Ok(res.values.into_iter().map(|mut v| v.swap_remove(0)).collect())
}
