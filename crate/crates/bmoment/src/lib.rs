pub mod adjacency;
pub mod bpolytope;
pub mod codomain;
pub mod lattice;
pub mod linalg;
pub mod models;
pub mod polyhedron;
pub mod rational;
pub mod report;
pub mod unionfind;
pub mod verify;
