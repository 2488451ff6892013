//! Exact linear algebra over rings with involution: matrices, Smith normal
//! form, bounded chain complexes of free modules and their homology.

mod complex;
pub mod matrix;
mod ring;
mod simplicial;
pub mod snf;

pub use complex::{
    dualize_complex, hom_complex, homology, ChainComplex, ChainMap, GradedGroup, HomologyGroup,
};
pub use matrix::Matrix;
pub use ring::Ring;
pub use simplicial::{relative_complex, simplicial_chain_complex};
pub use snf::{smith_normal_form, SmithForm};
