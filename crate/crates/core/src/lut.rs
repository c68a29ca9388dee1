//! Byte substitution tables derived from chaotic orbit segments.

use crate::chaos::{ChaosParams, ChaosStream};
use crate::error::{Error, Result};

/// Iterates discarded from a per-pixel orbit before its 256 table values.
pub const PIXEL_BURN_IN: usize = 16;

/// A bijection on bytes together with its inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct Lut256 {
    forward: [u8; 256],
    inverse: [u8; 256],
}

impl std::fmt::Debug for Lut256 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lut256")
            .field("forward", &&self.forward[..])
            .finish()
    }
}

impl Lut256 {
    pub fn identity() -> Self {
        let mut forward = [0u8; 256];
        for (i, v) in forward.iter_mut().enumerate() {
            *v = i as u8;
        }
        Lut256 {
            forward,
            inverse: forward,
        }
    }

    /// Builds a table from an explicit forward mapping; `None` unless it is
    /// a permutation.
    pub fn from_forward(forward: [u8; 256]) -> Option<Self> {
        let mut inverse = [0u8; 256];
        let mut seen = [false; 256];
        for (i, &v) in forward.iter().enumerate() {
            if std::mem::replace(&mut seen[v as usize], true) {
                return None;
            }
            inverse[v as usize] = i as u8;
        }
        Some(Lut256 { forward, inverse })
    }

    #[inline]
    pub fn apply(&self, b: u8) -> u8 {
        self.forward[b as usize]
    }

    #[inline]
    pub fn apply_inverse(&self, b: u8) -> u8 {
        self.inverse[b as usize]
    }

    pub fn forward(&self) -> &[u8; 256] {
        &self.forward
    }

    pub fn inverse(&self) -> &[u8; 256] {
        &self.inverse
    }

    pub fn invert(&self) -> Lut256 {
        Lut256 {
            forward: self.inverse,
            inverse: self.forward,
        }
    }
}

/// Rank of each value in ascending order, ties going to the lower index.
pub fn stable_ranks(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut ranks = vec![0; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank;
    }
    ranks
}

/// `forward[i]` is the rank of `values[i]` among all 256 values.
pub fn build_lut(values: &[f64]) -> Result<Lut256> {
    if values.len() != 256 {
        return Err(Error::LengthMismatch {
            expected: 256,
            actual: values.len(),
        });
    }
    // Non-negative doubles order the same as their bit patterns, so the
    // sort runs on integer keys. Adding 0.0 folds -0.0 into +0.0.
    let mut keys = [(0u64, 0u8); 256];
    for (i, (&v, key)) in values.iter().zip(keys.iter_mut()).enumerate() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange {
                what: "table value",
                value: v,
                range: "[0, 1]",
            });
        }
        *key = ((v + 0.0).to_bits(), i as u8);
    }
    sort_keys(&mut keys);

    let mut forward = [0u8; 256];
    let mut inverse = [0u8; 256];
    for (rank, &(_, i)) in keys.iter().enumerate() {
        forward[i as usize] = rank as u8;
        inverse[rank] = i;
    }
    Ok(Lut256 { forward, inverse })
}

/// LSD radix passes over the top 24 bits, then an insertion pass on the
/// full key to settle anything that tied on that prefix. Noticeably faster
/// than a comparison sort at this size.
fn sort_keys(keys: &mut [(u64, u8); 256]) {
    let mut scratch = [(0u64, 0u8); 256];
    for shift in [40, 48, 56] {
        let mut count = [0u16; 257];
        for &(k, _) in keys.iter() {
            count[((k >> shift) & 0xff) as usize + 1] += 1;
        }
        for d in 0..256 {
            count[d + 1] += count[d];
        }
        for &e in keys.iter() {
            let d = ((e.0 >> shift) & 0xff) as usize;
            scratch[count[d] as usize] = e;
            count[d] += 1;
        }
        std::mem::swap(keys, &mut scratch);
    }
    for i in 1..keys.len() {
        let mut j = i;
        while j > 0 && keys[j - 1] > keys[j] {
            keys.swap(j - 1, j);
            j -= 1;
        }
    }
}

/// The table for one pixel: a fresh orbit from `seed` under `mu0`, burned
/// in for `PIXEL_BURN_IN` steps, ranked over its next 256 values.
pub fn generate_pixel_lut(mu0: f64, seed: f64) -> Result<Lut256> {
    generate_pixel_lut_with_state(mu0, seed).map(|(lut, _)| lut)
}

/// Like [`generate_pixel_lut`], also returning the last orbit value.
pub fn generate_pixel_lut_with_state(mu0: f64, seed: f64) -> Result<(Lut256, f64)> {
    let mut stream = ChaosStream::new(ChaosParams::new(seed, mu0)?);
    stream.burn_in(PIXEL_BURN_IN)?;
    let mut values = [0.0f64; 256];
    stream.fill(&mut values)?;
    Ok((build_lut(&values)?, values[255]))
}
