//! Chaos-based grayscale image cipher with a dynamic per-pixel look-up
//! table, and the statistical / cryptanalytic test battery used to
//! evaluate it.
//!
//! Encryption is two stages:
//!
//! 1. XOR the image with bytes quantized from a logistic-map orbit
//!    (`x0xor`, `mu0xor`).
//! 2. Push every pixel through its own bijective byte table, built by
//!    ranking 256 iterates of a second logistic map (`mu0`) seeded from
//!    `x0` and the previously emitted cipher byte.
//!
//! ```
//! use chaoslut::{decrypt, encrypt, GrayImage, SecretKey};
//!
//! let key = SecretKey::reference();
//! let img = GrayImage::from_fn(16, 8, |r, c| (r * 16 + c) as u8).unwrap();
//! let cipher = encrypt(&img, &key).unwrap();
//! assert_eq!(decrypt(&cipher, &key).unwrap(), img);
//! ```

pub mod analysis;
pub mod chaos;
pub mod cipher;
mod error;
pub mod exec;
pub mod image;
pub mod key;
pub mod lut;
pub mod pgm;
pub mod report;
pub mod rng;
pub mod stats;

pub use cipher::{decrypt, encrypt};
pub use error::{Error, PgmError, Result};
pub use exec::Execution;
pub use image::GrayImage;
pub use key::{KeyComponent, SecretKey};
pub use lut::Lut256;
