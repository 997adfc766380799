pub mod error;
mod krylov;
pub mod linalg;
pub mod model;
pub mod shrinkage;
pub mod subset;
pub mod geometry;
pub mod dof;
pub mod io;
pub mod cli;
