//! The secret key: two logistic-map parameter pairs.
//!
//! `(x0, mu0)` drive the per-pixel substitution tables and `(x0xor, mu0xor)`
//! the XOR keystream. Each component is a binary64 value, so the key has
//! 4 x 64 = 256 bits of representation and a key space of 2^256.
//!
//! The text form is 64 hex digits: the big-endian bit pattern of each
//! component in the order `x0, mu0, x0xor, mu0xor`.

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::chaos::{validate_params, ChaosParams};
use crate::error::{Error, Result};
use crate::rng::Lcg64;

pub const KEY_BITS: u32 = 256;
pub const KEY_HEX_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KeyComponent {
    X0,
    Mu0,
    X0Xor,
    Mu0Xor,
}

impl KeyComponent {
    pub const ALL: [KeyComponent; 4] = [
        KeyComponent::X0,
        KeyComponent::Mu0,
        KeyComponent::X0Xor,
        KeyComponent::Mu0Xor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KeyComponent::X0 => "x0",
            KeyComponent::Mu0 => "mu0",
            KeyComponent::X0Xor => "x0xor",
            KeyComponent::Mu0Xor => "mu0xor",
        }
    }
}

impl fmt::Display for KeyComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecretKey {
    lut: ChaosParams,
    xor: ChaosParams,
}

impl SecretKey {
    pub fn new(x0: f64, mu0: f64, x0xor: f64, mu0xor: f64) -> Result<Self> {
        Ok(SecretKey {
            lut: validate_params(x0, mu0)?,
            xor: validate_params(x0xor, mu0xor)?,
        })
    }

    /// `{x0: 0.4, mu0: 3.9, x0xor: 0.5002, mu0xor: 3.87001}`, the key used
    /// throughout the reference experiments.
    pub fn reference() -> Self {
        SecretKey::new(0.4, 3.9, 0.5002, 3.87001).expect("reference key is valid")
    }

    /// Draws `x` components uniformly from `[0.1, 0.9]` and `mu` components
    /// from `[3.9, 4.0]`, in the order `x0, mu0, x0xor, mu0xor`.
    pub fn generate(rng: &mut Lcg64) -> Self {
        let x0 = rng.next_in(0.1, 0.9);
        let mu0 = rng.next_in(3.9, 4.0);
        let x0xor = rng.next_in(0.1, 0.9);
        let mu0xor = rng.next_in(3.9, 4.0);
        SecretKey::new(x0, mu0, x0xor, mu0xor).expect("generated components are in range")
    }

    pub fn x0(&self) -> f64 {
        self.lut.x0()
    }

    pub fn mu0(&self) -> f64 {
        self.lut.mu()
    }

    pub fn x0xor(&self) -> f64 {
        self.xor.x0()
    }

    pub fn mu0xor(&self) -> f64 {
        self.xor.mu()
    }

    pub fn lut_params(&self) -> ChaosParams {
        self.lut
    }

    pub fn xor_params(&self) -> ChaosParams {
        self.xor
    }

    pub fn component(&self, c: KeyComponent) -> f64 {
        match c {
            KeyComponent::X0 => self.x0(),
            KeyComponent::Mu0 => self.mu0(),
            KeyComponent::X0Xor => self.x0xor(),
            KeyComponent::Mu0Xor => self.mu0xor(),
        }
    }

    pub fn with_component(&self, c: KeyComponent, value: f64) -> Result<Self> {
        let mut v = self.components();
        v[c as usize] = value;
        SecretKey::new(v[0], v[1], v[2], v[3])
    }

    pub fn components(&self) -> [f64; 4] {
        [self.x0(), self.mu0(), self.x0xor(), self.mu0xor()]
    }

    /// The 32-byte big-endian representation.
    pub fn to_bytes(&self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for (chunk, v) in out.chunks_exact_mut(8).zip(self.components()) {
            chunk.copy_from_slice(&v.to_bits().to_be_bytes());
        }
        out
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn parse_hex(text: &str) -> Result<Self> {
        if text.len() != KEY_HEX_LEN {
            return Err(Error::MalformedKey(format!(
                "expected {KEY_HEX_LEN} hex characters, got {}",
                text.len()
            )));
        }
        let mut bytes = [0u8; 32];
        hex::decode_to_slice(text, &mut bytes).map_err(|e| Error::MalformedKey(e.to_string()))?;
        let mut v = [0f64; 4];
        for (slot, chunk) in v.iter_mut().zip(bytes.chunks_exact(8)) {
            *slot = f64::from_bits(u64::from_be_bytes(chunk.try_into().expect("8 bytes")));
        }
        SecretKey::new(v[0], v[1], v[2], v[3])
    }

    /// First 16 hex digits of SHA-256 over the byte form; safe to print.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_bytes());
        hex::encode(&digest[..8])
    }
}

impl FromStr for SecretKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SecretKey::parse_hex(s.trim())
    }
}
