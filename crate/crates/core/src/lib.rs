//! Braid words on three strands, their 2-bridge closures, knot invariants,
//! and the 2-adjacency relation between 2-bridge knots.

pub mod adjacency;
pub mod braid;
pub mod diagram;
pub mod error;
pub mod graph;
pub mod invariants;
mod json;
pub mod poly;
pub mod twobridge;

pub use braid::{format_braid_word, parse_braid_word, BraidWord, Generator, SiteRef, Syllable};
pub use diagram::{
    closure_component_count, component_count, plat_closure, site_algebraic_intersection,
    two_bridge_closure, CapRule, Crossing, PlanarDiagram,
};
pub use error::{Error, Result};
pub use invariants::{
    alexander_polynomial, determinant, fingerprint, fingerprint_word, jones_polynomial, kauffman_bracket_naive,
    kauffman_bracket_transfer, Fingerprint, FingerprintPolicy,
};
pub use poly::{LaurentPolynomial, Variable};
pub use twobridge::{
    cf_to_fraction, fraction_to_canonical_word, plat_fraction, schubert_equivalent, word_to_fraction,
    Fraction,
};
