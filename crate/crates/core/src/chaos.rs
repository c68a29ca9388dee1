//! Logistic map `x -> mu * x * (1 - x)` and the small amount of glue that
//! turns its orbits into bytes and per-pixel seeds.
//!
//! All arithmetic is plain IEEE-754 binary64 with a fixed evaluation order
//! and no fused multiply-add, so orbits (and therefore ciphertexts) are
//! reproducible bit-for-bit on any conforming platform.

use crate::error::{Error, Result};

/// Lower (exclusive) bound on `mu` for the map to be in its chaotic regime.
pub const ACCUMULATION_POINT: f64 = 3.5784257;

/// Upper (inclusive) bound on `mu`; beyond it orbits leave `[0, 1]`.
pub const MU_MAX: f64 = 4.0;

/// Orbits closer than this to 0 or 1 are treated as collapsed.
pub const DEGENERATE_EPSILON: f64 = 1e-12;

/// A validated `(x0, mu)` pair.
///
/// `mu` in `[3.9, 4.0]` covers the whole unit interval and is the band
/// recommended for keys; anything above the accumulation point is accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosParams {
    x0: f64,
    mu: f64,
}

impl ChaosParams {
    pub fn new(x0: f64, mu: f64) -> Result<Self> {
        validate_params(x0, mu)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

pub fn validate_params(x0: f64, mu: f64) -> Result<ChaosParams> {
    if !x0.is_finite() {
        return Err(Error::NonFinite { what: "x0" });
    }
    if !mu.is_finite() {
        return Err(Error::NonFinite { what: "mu" });
    }
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::OutOfRange {
            what: "x0",
            value: x0,
            range: "(0, 1)",
        });
    }
    if !(mu > ACCUMULATION_POINT && mu <= MU_MAX) {
        return Err(Error::OutOfRange {
            what: "mu",
            value: mu,
            range: "(3.5784257, 4]",
        });
    }
    Ok(ChaosParams { x0, mu })
}

/// One application of the map, evaluated as `(mu * x) * (1 - x)`.
#[inline(always)]
pub fn step(x: f64, mu: f64) -> f64 {
    (mu * x) * (1.0 - x)
}

/// Iterator state of a single logistic map instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosStream {
    x: f64,
    mu: f64,
    steps_taken: u64,
}

impl ChaosStream {
    pub fn new(params: ChaosParams) -> Self {
        ChaosStream {
            x: params.x0,
            mu: params.mu,
            steps_taken: 0,
        }
    }

    pub fn value(&self) -> f64 {
        self.x
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps_taken
    }

    /// Advances one step and returns the new orbit value.
    #[inline]
    pub fn next_value(&mut self) -> Result<f64> {
        let x = step(self.x, self.mu);
        self.steps_taken += 1;
        if !(DEGENERATE_EPSILON..=1.0 - DEGENERATE_EPSILON).contains(&x) {
            return Err(Error::DegenerateOrbit {
                value: x,
                mu: self.mu,
                step: self.steps_taken,
            });
        }
        self.x = x;
        Ok(x)
    }

    /// Discards `n` iterates.
    pub fn burn_in(&mut self, n: usize) -> Result<()> {
        for _ in 0..n {
            self.next_value()?;
        }
        Ok(())
    }

    /// Fills `out` with consecutive iterates.
    pub fn fill(&mut self, out: &mut [f64]) -> Result<()> {
        for slot in out.iter_mut() {
            *slot = self.next_value()?;
        }
        Ok(())
    }
}

/// Maps an orbit value to a byte: `floor(x * 2^40) mod 256`, i.e. bits 33
/// through 40 after the binary point. Scaling by a power of two is exact.
pub fn quantize_byte(x: f64) -> Result<u8> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::OutOfRange {
            what: "orbit value",
            value: x,
            range: "[0, 1)",
        });
    }
    Ok(((x * (1u64 << 40) as f64) as u64 & 0xff) as u8)
}

/// Seed of the per-pixel map from the key's `x0` and the previous cipher byte.
///
/// `0.1 + 0.8 * frac(x0 + (pc + 1) / 257)`; lands in `[0.1, 0.9]` and is
/// injective in `pc` for a fixed `x0`.
pub fn derive_pixel_seed(x0: f64, pc: u8) -> f64 {
    let s = x0 + (f64::from(pc) + 1.0) / 257.0;
    let t = s - s.floor();
    0.1 + 0.8 * t
}
