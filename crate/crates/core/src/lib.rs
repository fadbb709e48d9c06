//! Chain spaces `C^n_d(l)`: the configurations of a robot arm with link
//! lengths `l_1..l_{n-1}` whose endpoint reaches distance `l_n`, modulo
//! rotations. Their topology is governed by the complex of short subsets.
//!
//! All arithmetic on lengths is exact.

pub mod cohomology;
pub mod complex;
pub mod error;
pub mod lengths;
pub mod lp;
pub mod realization;
pub mod subsets;

pub use cohomology::{
    betti_numbers, euler_characteristic, intersection_pairing, morse_inventory, pairing_matrix,
    ring_presentation, rings_isomorphic, BettiTable, CriticalPoint, GradedRing, MorseFunction,
    MorseInventory, PairingMatrix, PAIRING_MAX_N,
};
pub use complex::{
    are_isomorphic, canonical_form, canonical_labeling, CanonicalForm, Invariant, IsoCertificate,
    SimplicialComplex, VertexMap,
};
pub use error::{Error, Result};
pub use lengths::{
    dimension, parse_rational, LengthVector, Rational, SubsetClass, DEFAULT_MAX_N, HARD_MAX_N,
};
pub use realization::{
    enumerate_chambers, enumerate_chambers_capped, equivalent, realize, Chamber,
    Equivalence, RealizationProblem, RealizationResult, Verdict, DEFAULT_ENUMERATION_MAX_N,
    ENUMERATION_HARD_MAX_N, ENUMERATION_MIN_N,
};
pub use subsets::{
    a_vector, down_closure, genetic_code, is_shifted, maximal_elements, sh_faces, sh_family,
    shifted_closure, shifted_le, short_complex, short_family,
    ChamberCode, SubsetMask,
};
