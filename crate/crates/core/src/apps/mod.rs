//! Applications of the matrix factorial engine: factorials, orthogonal
//! polynomials, truncated power series and partial polynomial arithmetic.

mod factorial;
mod ortho;
mod partial;
mod series;

pub use factorial::multi_factorial;
pub use ortho::{ortho_eval, FamilyName, Normalization, OrthogonalFamily};
pub use partial::{inverse_coeff_range, inverse_top_coeffs, mixed_coeffs, power_coeffs_at, power_top_coeffs, Cofactor};
pub use series::{series_eval, SeriesSpec, SeriesTarget};
