//! Exact computational model of the diagram algebras 𝔅_r(±n) acting on
//! tensor space `(k^n)^⊗r`.
//!
//! The crate provides:
//!
//! * [`diagrams`]: two-row perfect matchings with stacking multiplication
//!   `d_1 d_2 = δ^s d`, where `s` counts deleted middle cycles;
//! * [`weights`]: compositions of `r`, the fold onto orthogonal weights,
//!   its fibers, dominance, and the hyperoctahedral action;
//! * [`tensor_action`]: the symmetric and skew bilinear forms on `k^n` and
//!   the right action of diagrams as exact sparse operators;
//! * [`decomposition`]: the direct-sum decomposition of tensor space into
//!   weight summands, with exact invariance and isomorphism checks;
//! * [`scalars`]: arbitrary-precision rationals and prime-field residues.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod diagrams;
pub mod decomposition;
pub mod perm;
pub mod scalars;
pub mod tensor_action;
pub mod weights;

pub use diagrams::{
    diagram_multiply, enumerate_diagrams, enumerate_diagrams_capped, generator_diagrams,
    BrauerDiagram, DiagramError, DiagramProduct, DEFAULT_ENUMERATION_CAP,
};
pub use decomposition::{
    build_module, full_decomposition, indices_of_weight, invariance_generators, iso_check,
    perm_module_iso_check, transitivity_check, verify_invariance, CheckMode, Context,
    DecompError, DecompositionReport, ModuleBasis, SummandReport,
};
pub use perm::{PermError, Permutation};
pub use scalars::{delta_parameter, reduce_int, FieldSpec, FormKind, Scalar, ScalarError};
pub use tensor_action::{
    act, apply_c0, apply_permutation, dual_vector, form_value, phi_operator, phi_row,
    representation_property, ActionError, FormSpec, SparseOperator, SparseVector, TensorIndex,
    DENSE_CAP,
};
pub use weights::{
    dim_m, dim_n, dominant_representative, enumerate_compositions, fiber, image_weights,
    pi_map, signed_perm_apply, weight_of, Composition, OrthWeight, SignedPermutation,
    WeightError,
};
