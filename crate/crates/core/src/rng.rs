//! Seed derivation for recursive instances and their random phases.
//!
//! Every instance owns one 64-bit seed. Children get `derive_seed(parent, ordinal)`
//! and each random phase of an instance reads from its own ChaCha stream, so the
//! draws of one phase never shift those of another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Random phases of one instance, in the order they are consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Classify,
    CaseRadius,
    Elimination,
    /// Algorithm iteration `i` (Bernoulli sweep, then radius, then permutation).
    Iteration(u32),
}

impl Phase {
    fn tag(self) -> u64 {
        match self {
            Phase::Classify => 1,
            Phase::CaseRadius => 2,
            Phase::Elimination => 3,
            Phase::Iteration(i) => 16 + i as u64,
        }
    }
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(parent: u64, ordinal: u64) -> u64 {
    splitmix64(parent ^ splitmix64(ordinal.wrapping_mul(0xD1B5_4A32_D192_ED03)))
}

pub fn phase_rng(instance_seed: u64, phase: Phase) -> Rng {
    Rng::seed_from_u64(splitmix64(instance_seed.rotate_left(17) ^ splitmix64(phase.tag())))
}
