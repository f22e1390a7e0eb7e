//! Two-step completion of a tensor category into an abelian one: formal
//! cokernels of base arrows first, formal kernels on top of those.

pub mod ab;
pub mod fp;
pub mod functor;

pub use ab::{AbCat, AbHomData, AbMor, AbOb, SubquotientWitness};
pub use fp::{FpCat, FpHomData, FpMor, FpOb};
pub use functor::{
    check_monoidal, AbMap, AddFunctor, CoefficientChange, IdFunctor, QuotientProj, SplitEmbed,
};
