//! Self-contained special functions, adaptive quadrature and scalar
//! minimization used by the density and bound modules.

pub mod minimize;
pub mod quadrature;
pub mod special;

pub use minimize::{bracket_via_grid, minimize_scalar, MinimizeResult};
pub use quadrature::{integrate_radial, Quadrature, QuadratureSpec, Support};
pub use special::{beta, exp_integral_e1, log_beta, log_gamma};
