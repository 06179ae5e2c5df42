pub mod abelian;
pub mod cli;
pub mod error;
pub mod fiber;
pub mod graph;
pub mod linalg;
pub mod polytope;
pub mod verlinde;
pub mod weights;
