//! Free metabelian groups as lattice edge flows, their nilpotent and
//! lamplighter quotients, word length, and random walk statistics.

pub mod boundary;
pub mod error;
pub mod geodesic;
pub mod lattice;
pub mod metabelian;
pub mod quotient;
pub mod walk;
pub mod word;

pub use error::{Error, ParseError, Result};
pub use geodesic::{
    length_bounds, length_lower_bound, min_word_exact, min_word_exact_with, min_word_upper,
    LengthBounds, SearchLimits,
};
pub use lattice::{
    canonical_path, divergence, flow_of_path, translate_flow, Edge, EdgeFlow, LatticePath,
    LatticePoint, PathSystem,
};
pub use metabelian::{
    cocycle_beta, extension_mul, fox_flow_oracle, from_extension, mb_eval, mb_inv, mb_mul, placket,
    to_extension, ExtensionElement, MetabelianElement,
};
pub use quotient::{
    ll_eval, ll_project, nil_eval, nil_mul, nil_project, LampGroupSpec, LamplighterElement,
    NilpotentElement,
};
pub use word::{free_reduce, parse_word, word_to_path, Word};
