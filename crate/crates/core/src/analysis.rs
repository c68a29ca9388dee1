//! Experiment harnesses: plaintext sensitivity, key sensitivity on both the
//! encryption and decryption side, and the known-plaintext keystream attack.

use serde::{Deserialize, Serialize};

use crate::cipher::{decrypt, encrypt};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::image::GrayImage;
use crate::key::{KeyComponent, SecretKey};
use crate::stats::{diff_metrics, DiffMetrics};

pub const DEFAULT_DELTA: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyPerturbation {
    pub component: KeyComponent,
    pub delta: f64,
}

impl KeyPerturbation {
    pub fn new(component: KeyComponent, delta: f64) -> Self {
        KeyPerturbation { component, delta }
    }

    /// One perturbation of `delta` per key component, in key order.
    pub fn each_component(delta: f64) -> Vec<KeyPerturbation> {
        KeyComponent::ALL
            .iter()
            .map(|&c| KeyPerturbation::new(c, delta))
            .collect()
    }
}

/// Adds `delta` to one component; the others keep their exact bits.
pub fn perturb_key(key: &SecretKey, p: KeyPerturbation) -> Result<SecretKey> {
    key.with_component(p.component, key.component(p.component) + p.delta)
}

/// Encrypts `image` and a copy whose pixel at `(row, col)` is incremented
/// by one (mod 256), and compares the two ciphertexts.
pub fn plaintext_sensitivity(
    image: &GrayImage,
    key: &SecretKey,
    row: usize,
    col: usize,
) -> Result<DiffMetrics> {
    plaintext_sensitivity_with(image, key, row, col, Execution::default())
}

pub fn plaintext_sensitivity_with(
    image: &GrayImage,
    key: &SecretKey,
    row: usize,
    col: usize,
    exec: Execution,
) -> Result<DiffMetrics> {
    let changed = one_pixel_change(image, row, col)?;
    let (c1, c2) = exec::join(exec, || encrypt(image, key), || encrypt(&changed, key));
    diff_metrics(&c1?, &c2?)
}

pub fn one_pixel_change(image: &GrayImage, row: usize, col: usize) -> Result<GrayImage> {
    image.check_position(row, col)?;
    let mut changed = image.clone();
    let v = image.get(row, col).expect("checked");
    changed.set(row, col, v.wrapping_add(1))?;
    Ok(changed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Npcr,
    Uaci,
    Mae,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Npcr, Metric::Uaci, Metric::Mae];

    pub fn of(self, d: &DiffMetrics) -> f64 {
        match self {
            Metric::Npcr => d.npcr,
            Metric::Uaci => d.uaci,
            Metric::Mae => d.mae,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Npcr => "npcr",
            Metric::Uaci => "uaci",
            Metric::Mae => "mae",
        }
    }
}

/// Square table of a pairwise metric between labelled images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityMatrix {
    pub metric: Metric,
    pub labels: Vec<String>,
    pub cells: Vec<Vec<f64>>,
}

impl SensitivityMatrix {
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.cells[a][b]
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.cells[i][j] == self.cells[j][i]))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.size()).all(|i| self.cells[i][i] == 0.0)
    }

    /// Header row of labels, then one row per label.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.cells) {
            out.push_str(l);
            for v in row {
                out.push_str(&format!(",{v:.4}"));
            }
            out.push('\n');
        }
        out
    }
}

/// All three metric matrices over the same image set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityTables {
    pub npcr: SensitivityMatrix,
    pub uaci: SensitivityMatrix,
    pub mae: SensitivityMatrix,
}

impl SensitivityTables {
    pub fn get(&self, metric: Metric) -> &SensitivityMatrix {
        match metric {
            Metric::Npcr => &self.npcr,
            Metric::Uaci => &self.uaci,
            Metric::Mae => &self.mae,
        }
    }
}

/// Computes every pairwise metric once (upper triangle) and mirrors it.
pub fn pairwise_tables(
    labels: Vec<String>,
    images: &[GrayImage],
    exec: Execution,
) -> Result<SensitivityTables> {
    let n = images.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let diffs = exec::try_map(exec, &pairs, |&(i, j)| diff_metrics(&images[i], &images[j]))?;
    let build = |metric: Metric| {
        let mut cells = vec![vec![0.0; n]; n];
        for (&(i, j), d) in pairs.iter().zip(&diffs) {
            cells[i][j] = metric.of(d);
            cells[j][i] = metric.of(d);
        }
        SensitivityMatrix {
            metric,
            labels: labels.clone(),
            cells,
        }
    };
    Ok(SensitivityTables {
        npcr: build(Metric::Npcr),
        uaci: build(Metric::Uaci),
        mae: build(Metric::Mae),
    })
}

fn perturbed_keys(base: &SecretKey, deltas: &[KeyPerturbation]) -> Result<Vec<SecretKey>> {
    let mut keys = vec![*base];
    for &p in deltas {
        keys.push(perturb_key(base, p)?);
    }
    Ok(keys)
}

/// Ciphertexts under the base key and each perturbed key, plus the plain
/// image as the last row/column. Labels: `I_C`, `I_C1`.., `I`.
pub fn cipher_key_sensitivity(
    image: &GrayImage,
    base_key: &SecretKey,
    deltas: &[KeyPerturbation],
    exec: Execution,
) -> Result<SensitivityTables> {
    let keys = perturbed_keys(base_key, deltas)?;
    let mut images = exec::try_map(exec, &keys, |k| encrypt(image, k))?;
    images.push(image.clone());
    pairwise_tables(labels("I_C", deltas.len()), &images, exec)
}

/// Encrypts under the base key, then decrypts under the base and each
/// perturbed key. Labels: `I_D`, `I_D1`.., `I`.
pub fn decipher_key_sensitivity(
    image: &GrayImage,
    base_key: &SecretKey,
    deltas: &[KeyPerturbation],
    exec: Execution,
) -> Result<SensitivityTables> {
    let keys = perturbed_keys(base_key, deltas)?;
    let cipher = encrypt(image, base_key)?;
    let mut images = exec::try_map(exec, &keys, |k| decrypt(&cipher, k))?;
    images.push(image.clone());
    pairwise_tables(labels("I_D", deltas.len()), &images, exec)
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    let mut out = vec![prefix.to_string()];
    out.extend((1..=n).map(|i| format!("{prefix}{i}")));
    out.push("I".to_string());
    out
}

fn xor_images(a: &GrayImage, b: &GrayImage) -> Result<GrayImage> {
    a.same_dimensions(b)?;
    let data = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(x, y)| x ^ y)
        .collect();
    Ok(a.with_data(data))
}

/// The attacker's stream-cipher hypothesis: `plain XOR cipher`.
pub fn extract_keystream(plain: &GrayImage, cipher: &GrayImage) -> Result<GrayImage> {
    xor_images(plain, cipher)
}

pub fn apply_keystream(keystream: &GrayImage, cipher: &GrayImage) -> Result<GrayImage> {
    xor_images(keystream, cipher)
}

/// Outcome of the known-plaintext keystream attack.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackOutcome {
    /// Keystream applied back to the ciphertext it was extracted from.
    pub source_recovery: DiffMetrics,
    /// Keystream applied to the other image's ciphertext, against its truth.
    pub transfer: DiffMetrics,
}

impl AttackOutcome {
    pub fn source_recovered(&self) -> bool {
        self.source_recovery.npcr == 0.0
    }
}

/// Attack results plus the intermediate images, for callers that want to
/// write them out.
#[derive(Debug, Clone)]
pub struct AttackRun {
    pub outcome: AttackOutcome,
    pub keystream: GrayImage,
    pub known_cipher: GrayImage,
    pub other_cipher: GrayImage,
    pub other_attempt: GrayImage,
}

/// Extracts a keystream from `(known_plain, E(known_plain))` and tries it on
/// `E(other_plain)`. Both images must share dimensions.
pub fn keystream_attack(
    known_plain: &GrayImage,
    other_plain: &GrayImage,
    key: &SecretKey,
    exec: Execution,
) -> Result<AttackRun> {
    known_plain.same_dimensions(other_plain)?;
    let (known_cipher, other_cipher) = exec::join(
        exec,
        || encrypt(known_plain, key),
        || encrypt(other_plain, key),
    );
    let (known_cipher, other_cipher) = (known_cipher?, other_cipher?);
    let keystream = extract_keystream(known_plain, &known_cipher)?;
    let recovered = apply_keystream(&keystream, &known_cipher)?;
    let other_attempt = apply_keystream(&keystream, &other_cipher)?;
    Ok(AttackRun {
        outcome: AttackOutcome {
            source_recovery: diff_metrics(&recovered, known_plain)?,
            transfer: diff_metrics(&other_attempt, other_plain)?,
        },
        keystream,
        known_cipher,
        other_cipher,
        other_attempt,
    })
}

/// Sanity check that decryption under the right key inverts encryption.
pub fn decrypts_correctly(image: &GrayImage, key: &SecretKey) -> Result<bool> {
    Ok(&decrypt(&encrypt(image, key)?, key)? == image)
}
