//! Exact arithmetic: computable rings, matrices, normal forms, modules.

pub mod ring;
pub mod matrix;
pub mod linalg;
pub mod module;
pub mod finite;

pub use finite::{idempotents, is_von_neumann_regular, nilradical, r_abs, ring_homs, RingHom};
pub use linalg::{left_nullspace, smith_normal_form, solve_left, solve_linear, SmithForm};
pub use matrix::Matrix;
pub use module::{flat_as_map, hom_module, solutions_into_span, FpModule, ModMap, Subquotient};
pub use ring::{Elem, Ring};
