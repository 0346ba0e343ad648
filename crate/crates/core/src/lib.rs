//! Exact arithmetic over rational function fields and linear-relation
//! solving for Drinfeld modules.
//!
//! The crate computes, for a Drinfeld `F_q[t]`-module `E` over `k = F_q(T)`
//! and finitely many nonzero points of `E(k)`, an explicit degree bound
//! `d + l` for generators of the module `G` of `F_q[t]`-linear relations
//! among the points, a degree-minimal basis of `G`, and an independence
//! verdict, all in exact arithmetic.
//!
//! Module map:
//! - [`field`]: the base field `F_q`, `q = p^e`
//! - [`poly`]: dense univariate polynomials over `F_q`
//! - [`sparse`]: sparse polynomials for high-degree values
//! - [`factor`]: factorization into monic irreducibles
//! - [`ratfunc`]: the rational function field `k = F_q(T)` and Frobenius twists
//! - [`tpoly`]: polynomials in `t` with coefficients in `k`
//! - [`parse`]: the text grammar for polynomials and rational functions
//! - [`places`]: places of `k`, valuations, divisors, heights
//! - [`newton`]: Newton polygons, slope divisors, the bound divisor `D`
//! - [`riemann_roch`]: Riemann-Roch spaces on the genus-0 model of `k`
//! - [`drinfeld`]: the twisted polynomial ring `k[tau]` and module action
//! - [`linalg`]: dense linear algebra over `F_q`
//! - [`polymat`]: matrices and module bases over `F_q[t]` (Popov forms)
//! - [`solver`]: the relation-solving pipeline and its brute-force oracle

pub mod drinfeld;
pub mod error;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod newton;
pub mod parse;
pub mod places;
pub mod poly;
pub mod polymat;
pub mod ratfunc;
pub mod riemann_roch;
pub mod solver;
pub mod sparse;
pub mod tpoly;

pub use drinfeld::{DrinfeldModule, TwistedPoly};
pub use error::Error;
pub use field::{FieldDesc, Fq, FqElem};
pub use newton::{NewtonPolygon, SlopeData};
pub use places::{Divisor, Place};
pub use poly::{Poly, Var};
pub use polymat::PolyMatrix;
pub use ratfunc::RatFunc;
pub use riemann_roch::RrBasis;
pub use solver::{LinearSystem, RelationBasis};
pub use tpoly::TPoly;
