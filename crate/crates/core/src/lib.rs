//! q-Borel–Laplace summation of formal solutions of linear
//! q-difference-differential equations.
//!
//! The crate implements the whole summation pipeline for equations of the form
//!
//! ```text
//!     sum_{j + sigma*alpha <= m}  a_{j,alpha}(t,z) (tD_q)^j d_z^alpha X = F(t,z),
//! ```
//!
//! where `D_q` is the q-difference operator in the time variable `t` and
//! `d_z` the usual derivative in the space variable `z`:
//!
//! * [`equation`] — equation data model, `ord_t`, the t-Newton polygon,
//!   structural assumption checks, the polynomials `P0`/`P1` and the set of
//!   singular directions;
//! * [`formal_solver`] — the coefficient recursion for the formal solution
//!   and q-Gevrey growth certification;
//! * [`reduction`] — operator identities, reduction to `(t^2 D_q)` form and
//!   assembly of the Borel-plane q-convolution equation, plus the `t = tau^2`
//!   variable change used when the structural order condition fails;
//! * [`borel_plane`] — Jackson-integral q-convolution and the ascending
//!   ray-grid solver that continues the Borel transform along `lambda*q^Z`;
//! * [`laplace`] — numeric q-Laplace and q-Borel transforms, inversion and
//!   convolution-theorem checks, and the q-Gevrey asymptotic verifier;
//! * [`qcore`] / [`powerseries`] — the underlying q-arithmetic and truncated
//!   power-series kernels (generic over `Complex<f64>` and exact rationals);
//! * [`spec`] / [`pipeline`] — JSON equation files, orchestration and reports.

pub mod borel_plane;
pub mod equation;
pub mod error;
pub mod fit;
pub mod formal_solver;
pub mod identities;
pub mod laplace;
pub mod pipeline;
pub mod powerseries;
pub mod qcore;
pub mod reduction;
pub mod roots;
pub mod scalar;
pub mod spec;

pub use error::{Error, Result};
pub use scalar::{Rat, C64};
