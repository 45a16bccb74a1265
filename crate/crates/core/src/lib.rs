pub mod cli;
pub mod engine;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod singularity;
pub mod vector_calculus;
