//! Verification instruments: errors, seminorms, conserved quantities,
//! dispersion analysis and convergence rates.

mod conservation;
mod dispersion;
mod error;
mod rate;

pub use conservation::{
    conserved_quantities, seminorm_of_combination, sobolev_seminorm, state_conserved_quantities,
    ShiftedTerm,
};
pub use dispersion::{
    amplification_matrix, amplification_scan, dispersion_order_scan, dispersion_symbol,
    zero_eigen_structure, DispersionScan, DispersionSymbol, ZeroEigenStructure,
};
pub use error::{l2_error, l2_error_2d, l2_error_poly};
pub use rate::{convergence_rate, least_squares_slope, RateFit};
