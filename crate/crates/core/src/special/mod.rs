//! Scalar special functions and quadrature.

pub mod bessel;
pub mod fseries;
pub mod humbert;
pub mod integrand;
pub mod quadrature;

pub use bessel::{bessel_i, gegenbauer};
pub use fseries::{f_humbert, f_laplace, f_numeric_laplace, f_series};
pub use humbert::{humbert_phi2, HumbertParams, HumbertRoute};
pub use integrand::SimplexIntegrand;
pub use quadrature::{jacobi_rule, simplex_rule, BetaVariant, QuadratureRule, SimplexRule};
