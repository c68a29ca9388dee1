//! The two-stage image cipher.
//!
//! Encryption runs an XOR stage with a keystream from the `(x0xor, mu0xor)`
//! orbit, then a substitution stage where every pixel goes through its own
//! table. The substitution map (`mu0`) keeps running across pixels: each
//! pixel re-seeds it with `derive_pixel_seed(y, pc)`, where `y` is the last
//! orbit value of the previous pixel (the key's `x0` for the first one) and
//! `pc` the previous *cipher* byte. Both feed-forward paths amplify any
//! difference, so a change in the plaintext or the key propagates to every
//! later pixel in raster order. Decryption undoes the stages in reverse.

use crate::chaos::{derive_pixel_seed, quantize_byte, ChaosParams, ChaosStream};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::image::GrayImage;
use crate::key::SecretKey;
use crate::lut::{generate_pixel_lut_with_state, Lut256};

/// Iterates discarded from the XOR orbit before the keystream starts.
pub const XOR_BURN_IN: usize = 1000;

/// Keystream bytes of the XOR stage, one per pixel in raster order.
pub fn xor_keystream(params: ChaosParams, len: usize) -> Result<Vec<u8>> {
    let mut stream = ChaosStream::new(params);
    stream.burn_in(XOR_BURN_IN)?;
    (0..len)
        .map(|_| stream.next_value().and_then(quantize_byte))
        .collect()
}

/// XORs the image with the chaotic keystream. Self-inverse.
pub fn xor_stage(image: &GrayImage, params: ChaosParams) -> Result<GrayImage> {
    let ks = xor_keystream(params, image.len())?;
    let data = image.pixels().iter().zip(&ks).map(|(p, k)| p ^ k).collect();
    Ok(image.with_data(data))
}

/// Feedback byte used for the first pixel.
pub fn initial_feedback(x0: f64) -> Result<u8> {
    quantize_byte(x0)
}

/// State of the substitution stage between pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LutChain {
    mu0: f64,
    /// Last orbit value of the previous pixel's map (`x0` initially).
    carry: f64,
    /// Previous cipher byte.
    pc: u8,
}

impl LutChain {
    pub fn new(params: ChaosParams) -> Result<Self> {
        Ok(LutChain {
            mu0: params.mu(),
            carry: params.x0(),
            pc: initial_feedback(params.x0())?,
        })
    }

    /// Seed of the table for the next pixel.
    pub fn seed(&self) -> f64 {
        derive_pixel_seed(self.carry, self.pc)
    }

    /// Builds the next pixel's table and advances the orbit carry. The
    /// caller must follow with [`LutChain::feed`].
    pub fn next_lut(&mut self) -> Result<Lut256> {
        let (lut, last) = generate_pixel_lut_with_state(self.mu0, self.seed())?;
        self.carry = last;
        Ok(lut)
    }

    pub fn feed(&mut self, cipher_byte: u8) {
        self.pc = cipher_byte;
    }
}

pub fn lut_stage_encrypt(image: &GrayImage, params: ChaosParams) -> Result<GrayImage> {
    let mut chain = LutChain::new(params)?;
    let mut out = Vec::with_capacity(image.len());
    for &p in image.pixels() {
        let c = chain.next_lut()?.apply(p);
        out.push(c);
        chain.feed(c);
    }
    Ok(image.with_data(out))
}

pub fn lut_stage_decrypt(image: &GrayImage, params: ChaosParams) -> Result<GrayImage> {
    let mut chain = LutChain::new(params)?;
    let mut out = Vec::with_capacity(image.len());
    for &c in image.pixels() {
        out.push(chain.next_lut()?.apply_inverse(c));
        chain.feed(c);
    }
    Ok(image.with_data(out))
}

pub fn encrypt(image: &GrayImage, key: &SecretKey) -> Result<GrayImage> {
    let whitened = xor_stage(image, key.xor_params())?;
    lut_stage_encrypt(&whitened, key.lut_params())
}

pub fn decrypt(image: &GrayImage, key: &SecretKey) -> Result<GrayImage> {
    let whitened = lut_stage_decrypt(image, key.lut_params())?;
    xor_stage(&whitened, key.xor_params())
}

/// Encrypts each image independently, fanning out across images.
pub fn encrypt_batch(
    images: &[GrayImage],
    key: &SecretKey,
    exec: Execution,
) -> Result<Vec<GrayImage>> {
    exec::try_map(exec, images, |img| encrypt(img, key))
}

pub fn decrypt_batch(
    images: &[GrayImage],
    key: &SecretKey,
    exec: Execution,
) -> Result<Vec<GrayImage>> {
    exec::try_map(exec, images, |img| decrypt(img, key))
}
