//! Exact computation kernel for the bivariate Fibonacci polynomials `U_n(x, y)`
//! and Lucas polynomials `V_n(x, y)`.
//!
//! Both families satisfy `W_n = x W_{n-1} + y W_{n-2}`, with seeds `U_0 = 0`,
//! `U_1 = 1` and `V_0 = 2`, `V_1 = x`. The crate builds the four Fibonacci/Lucas
//! bases of the spaces spanned by `x^{m-2k} y^k`, decomposes `U` and `V` over
//! them by exact linear algebra, and generates the integer coordinate triangles
//! `a` through `e` by closed form, by recurrence and by solving.
//!
//! All arithmetic is exact (`num-bigint` / `num-rational`); nothing here uses
//! floating point.

pub mod bases;
pub mod coefficients;
pub mod error;
pub mod matrix;
pub mod operators;
pub mod poly;
pub mod report;
pub mod sequences;
pub mod specializations;

pub use bases::{BasisFamily, BasisSpec, Decomposition};
pub use coefficients::{CoeffFamily, CoeffTriangle, Method};
pub use error::{Error, Result};
pub use matrix::RationalMatrix;
pub use operators::{OperatorFamily, OperatorPoly};
pub use poly::{BivarPoly, Monomial};
pub use report::{Check, Report};
pub use sequences::{SequenceCache, SequenceKind, SequenceTerm, Sequences};
