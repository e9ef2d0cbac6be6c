pub mod affine;
pub mod chainlab;
pub mod coeffsets;
pub mod error;
pub mod exactgeom;
pub mod lctcore;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod rational;
pub mod toricgen;
