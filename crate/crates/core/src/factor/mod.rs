//! Factorization of quantum cohomology presentations over the Novikov field.

mod hensel;
mod newton;
mod presentation;
mod split;
mod spoly;

pub use hensel::{hensel_lift, hensel_lift_many};
pub use newton::{newton_polygon, rational_roots, rescale, residue, split_over_rationals, unscale, Segment};
pub use presentation::{
    is_squarefree, poly_gcd, relation_check, structure_polynomial, StructurePolynomial, SubalgebraElement,
};
pub use split::{
    factor_polynomial, split_fields, unit_idempotents, CertifiedFactor, FactorizationCertificate,
    IrreducibilityReason, Splitting, Verdict, DEFAULT_TARGET_FLOOR,
};
pub use spoly::{max_sigma, solve_linear, SeriesPoly};
