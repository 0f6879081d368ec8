//! One-dimensional finite element solver for volume-constrained nonlocal
//! diffusion with truncated fractional kernels.
//!
//! The nonlocal operator acts as `L u(x) = 2 ∫ (u(y) - u(x)) γ(x,y) dy` with
//! the fractional kernel `γ(x,y) = c_{n,s} / (2 |y-x|^{n+2s})`; truncating γ
//! to the interaction ball of radius λ yields a problem posed on the bounded
//! domain Ω = (-1,1) plus an interaction layer of thickness λ, on which the
//! solution is constrained to zero. As λ grows the solution converges to the
//! solution of the fractional Poisson problem at rate λ^{-2s}.
//!
//! Modules:
//! - [`specfun`]: Gamma function, kernel normalization, tail-integral constants
//! - [`kernel`]: fractional kernel, ball truncation, admissibility checks
//! - [`mesh`]: partitions of Ω ∪ Ω_I with geometric exterior coarsening
//! - [`quadrature`]: Gauss-Legendre rules, adaptive Gauss-Kronrod, singular inner integrals
//! - [`assembly`]: dense stiffness matrix, load vector, Cholesky solve
//! - [`analytic`]: exact fractional Poisson solutions on the unit ball
//! - [`metrics`]: L² / energy error norms and observed convergence rates
//! - [`harness`]: experiment drivers producing CSV tables and manifests

pub mod analytic;
pub mod assembly;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod mesh;
pub mod metrics;
pub mod quadrature;
pub mod specfun;

pub(crate) mod par;

pub use error::{Error, Result};
pub use kernel::KernelSpec;
pub use mesh::{FEFunction, Mesh1D};
pub use quadrature::QuadConfig;
pub use specfun::FractionalOrder;
