//! Explicit equations of moment varieties and their secants, masked
//! matrices and their minors, and randomized vanishing checks.

mod catalog;
mod family;
mod masked;
mod polynomial;
mod vanishing;

pub use catalog::{
    bidegree_53, coordinate_53, m33_cubic, masked_hankel_63, masked_matrix_53, pentad,
    pentad_facets_63, pentad_family, quadrilateral_set_quartic, quintic_53, sigma2_m44_cubics,
};
pub use family::EquationFamily;
pub use masked::{visible_minors, MaskedMatrix};
pub use polynomial::{Monomial, SparsePolynomial};
pub use vanishing::{second_prime, verify_vanishing, VanishingOptions, Verdict};
