pub mod charpoly;
pub mod chipfiring;
pub mod document;
pub mod error;
pub mod firing_graph;
pub mod hypergraph;
pub mod multipoly;
pub mod oracle;
pub mod polyalg;
pub mod selftest;

pub use chipfiring::Configuration;
pub use error::{Error, Result};
pub use hypergraph::{LambdaValue, UniformHypergraph};
pub use polyalg::{CharPolyAccumulator, FactoredCharPoly, TPoly, TRat};
