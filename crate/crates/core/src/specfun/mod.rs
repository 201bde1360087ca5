//! Special functions on the real line.

mod airy;
mod erf;

pub use airy::{
    airy, airy_ai, airy_ai_prime, airy_bi_validation, airy_pair, airy_scaled, AiryValue, AI_PRIME_ZERO, AI_ZERO,
};
pub use erf::{erf, erfc};
