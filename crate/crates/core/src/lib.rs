pub mod apps;
pub mod companion;
pub mod constrec;
pub mod domain;
pub mod error;
pub mod holonomic;
pub mod index;
pub mod matrix;
pub mod poly;
pub mod polyrec;
