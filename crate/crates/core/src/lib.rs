//! Spectral centrality for non-uniform hypergraphs.
//!
//! The pipeline is: build a [`hypercore::Hypergraph`], make it uniform with
//! [`uniformize`], turn it into an implicit symmetric [`tensor::UniformTensor`],
//! and solve for Perron eigenvectors with [`spectral`]. Rankings from
//! different methods are compared with [`rankcmp`].

pub mod combinatorics;
pub mod hypercore;
pub mod uniformize;
pub mod tensor;
pub mod spectral;
pub mod rankcmp;
pub mod numfmt;
pub mod dataset;
pub mod methods;
