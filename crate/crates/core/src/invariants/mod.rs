mod alexander;
mod bracket;
mod fingerprint;

pub use alexander::alexander_polynomial;
pub use bracket::{
    jones_from_bracket, jones_polynomial, kauffman_bracket_naive, kauffman_bracket_transfer,
    loop_value, NAIVE_CROSSING_LIMIT,
};
pub use fingerprint::{determinant, fingerprint, fingerprint_word, Fingerprint, FingerprintPolicy, DEFAULT_ALEXANDER_CAP};
