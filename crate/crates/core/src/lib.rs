pub mod associated;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod theorems;
