//! Exact decompositions of elementary transvections into products of
//! elementary conjugates of a matrix, for `GL_n`, `O_2n` and `U_2n` over
//! finite commutative rings with involution.

pub mod campaign;
pub mod congruence;
pub mod error;
pub mod gln;
pub mod hyperbolic;
pub mod linalg;
mod monomial;
pub mod ortho_decomp;
pub mod ring;
mod solve;
pub mod unitary_decomp;
pub mod words;

pub use error::{Error, Result};
pub use linalg::Mat;
pub use monomial::Route;
pub use ring::{FormParam, FormParamKind, InvolutionKind, Ring, RingElem, RingSpec};
pub use words::{Base, ConjWord, ElemWord, Group, Transvection};
