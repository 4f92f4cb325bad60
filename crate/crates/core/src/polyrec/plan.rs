use serde::{Deserialize, Serialize};

/// How `multi_apply` organizes its work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Full matrix products, then one matrix-vector product per index.
    General,
    /// Matrix-vector products along the giant grid.
    Vector,
    /// Vector mode with `O(k)` baby steps for companion-shaped matrices.
    Companion,
    /// Companion mode with top row degrees `deg f_j <= j`, which keeps
    /// products of `s` factors at degree `s + k - 1`.
    CompanionRestricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsgsPlan {
    pub nu: u64,
    pub n: u64,
    pub d: usize,
    pub l: usize,
    pub mode: Mode,
}

fn floor_pow2(x: f64) -> u64 {
    if x < 2.0 {
        1
    } else {
        1u64 << (x.log2().floor() as u32).min(62)
    }
}

/// Giant step size: the largest power of two `<= sqrt(n/d)` for few
/// requests (`l <= sqrt(n d)`), else the largest power of two
/// `<= max(n/l, 1)`, capped by `sqrt(n/d)` in both cases.
pub fn choose_nu(n: u64, d: usize, l: usize) -> BsgsPlan {
    let d_eff = d.max(1) as f64;
    let n_f = n.max(1) as f64;
    let cap = floor_pow2((n_f / d_eff).sqrt() + 1e-9);
    let nu = if (l.max(1) as f64) <= (n_f * d_eff).sqrt() {
        cap
    } else {
        floor_pow2((n_f / l.max(1) as f64).max(1.0) + 1e-9).min(cap)
    };
    BsgsPlan { nu, n, d, l, mode: Mode::General }
}
