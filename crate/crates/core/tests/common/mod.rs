#![allow(dead_code)]

pub mod dot;

use knot_adjacency::{closure_component_count, BraidWord, Syllable};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const DEFAULT_SEED: u64 = 0x5eed_2b1d;

/// Seed from `ADJ_SEED`, for reproducing a randomized run.
pub fn seed() -> u64 {
    std::env::var("ADJ_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng() -> StdRng {
    StdRng::seed_from_u64(seed())
}

/// Alternating word starting at `first` (1 or 2) with nonzero exponents
/// in `-max_exp..=max_exp`.
pub fn random_word(rng: &mut StdRng, first: usize, syllables: usize, max_exp: i64) -> BraidWord {
    let mut g = first;
    let mut out = Vec::with_capacity(syllables);
    for _ in 0..syllables {
        let mut e = 0;
        while e == 0 {
            e = rng.gen_range(-max_exp..=max_exp);
        }
        out.push(if g == 1 { Syllable::s1(e) } else { Syllable::s2(e) });
        g = 3 - g;
    }
    BraidWord::from_syllables(out)
}

/// Random plat word with at most `max_crossings` crossings; a leading
/// `s2` is allowed.
pub fn random_plat_word(rng: &mut StdRng, max_crossings: usize) -> BraidWord {
    loop {
        let first = rng.gen_range(1..=2);
        let len = rng.gen_range(1..=6);
        let w = random_word(rng, first, len, 4);
        if !w.is_empty() && w.crossing_count() <= max_crossings {
            return w;
        }
    }
}

/// Random word starting with `s1` whose closure is a knot.
pub fn random_knot_word(rng: &mut StdRng, max_crossings: usize, max_syllables: usize, odd: bool) -> BraidWord {
    loop {
        let mut len = rng.gen_range(1..=max_syllables);
        if odd && len % 2 == 0 {
            len -= 1;
        }
        let w = random_word(rng, 1, len, 3);
        if w.len() == len && w.crossing_count() <= max_crossings && closure_component_count(&w) == 1 {
            return w;
        }
    }
}
