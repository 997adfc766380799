//! Sign structure of relative residuals and the inverse shrinkage map.

mod cone;
mod sign;
mod simplex;

pub use cone::{
    admissible_signature, caratheodory_reduce, hull_inverse, inverse_rays, ray_count,
    ray_membership, RayDecomposition, RayFan,
};
pub use sign::{
    corner_signature, enumerate_signatures, pattern_from_changes, sign_changes,
    signature_lemma_check, SignPattern, SignSymbol, SignatureCheck,
};
pub use simplex::{expand_template, simplex_template, total_positivity_check, SimplexDescriptor};
