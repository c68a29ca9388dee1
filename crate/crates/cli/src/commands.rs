use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use chaoslut::analysis::{
    cipher_key_sensitivity, decipher_key_sensitivity, keystream_attack, KeyPerturbation,
    SensitivityTables,
};
use chaoslut::pgm::{read_pgm, write_pgm};
use chaoslut::report::{analyze as run_analysis, AnalysisOptions};
use chaoslut::rng::Lcg64;
use chaoslut::stats::{histogram, sample_adjacent_pairs, DiffMetrics, Direction};
use chaoslut::{Execution, GrayImage, SecretKey};

use crate::error::CliError;

type Result<T = ()> = std::result::Result<T, CliError>;

fn read_image(path: &Path) -> Result<GrayImage> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    read_pgm(&bytes).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

fn read_key(path: &Path) -> Result<SecretKey> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(text.parse::<SecretKey>()?)
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    write_file(path, text)
}

fn create_dir(path: &Path) -> Result {
    fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

pub fn keygen(out: &Path, seed: Option<u64>) -> Result {
    let seed = seed.unwrap_or_else(rand::random);
    let key = SecretKey::generate(&mut Lcg64::new(seed));
    write_file(out, format!("{}\n", key.to_hex()))?;
    println!("wrote key {} to {}", key.fingerprint(), out.display());
    Ok(())
}

pub fn encrypt(input: &Path, key: &Path, out: &Path) -> Result {
    let key = read_key(key)?;
    let image = read_image(input)?;
    write_file(out, write_pgm(&chaoslut::encrypt(&image, &key)?))
}

pub fn decrypt(input: &Path, key: &Path, out: &Path) -> Result {
    let key = read_key(key)?;
    let image = read_image(input)?;
    write_file(out, write_pgm(&chaoslut::decrypt(&image, &key)?))
}

pub fn analyze(
    plain: &Path,
    key: &Path,
    sample_seed: u64,
    change_pos: Option<(usize, usize)>,
    out: &Path,
) -> Result {
    let key = read_key(key)?;
    let image = read_image(plain)?;
    let opts = AnalysisOptions {
        sample_seed,
        change_position: change_pos,
        ..AnalysisOptions::default()
    };
    let report = run_analysis(&image, &key, &opts)?;
    write_json(out, &report)
}

#[derive(Serialize)]
struct SensitivityReport {
    key_fingerprint: String,
    delta: f64,
    width: usize,
    height: usize,
    cipher: SensitivityTables,
    decipher: SensitivityTables,
}

pub fn sensitivity(plain: &Path, key: &Path, delta: f64, out: &Path) -> Result {
    let key = read_key(key)?;
    let image = read_image(plain)?;
    let deltas = KeyPerturbation::each_component(delta);
    let exec = Execution::default();
    let cipher = cipher_key_sensitivity(&image, &key, &deltas, exec)?;
    let decipher = decipher_key_sensitivity(&image, &key, &deltas, exec)?;

    create_dir(out)?;
    for (prefix, tables) in [("cipher", &cipher), ("decipher", &decipher)] {
        for m in [&tables.npcr, &tables.uaci, &tables.mae] {
            let name = format!("{prefix}_{}.csv", m.metric.name());
            write_file(&out.join(name), m.to_csv())?;
        }
    }
    write_json(
        &out.join("sensitivity.json"),
        &SensitivityReport {
            key_fingerprint: key.fingerprint(),
            delta,
            width: image.width(),
            height: image.height(),
            cipher,
            decipher,
        },
    )
}

#[derive(Serialize)]
struct AttackReport {
    key_fingerprint: String,
    width: usize,
    height: usize,
    source_recovered: bool,
    source_recovery: DiffMetrics,
    transfer: DiffMetrics,
}

pub fn attack_demo(known: &Path, other: &Path, key: &Path, out: &Path) -> Result {
    let key = read_key(key)?;
    let known = read_image(known)?;
    let other = read_image(other)?;
    let run = keystream_attack(&known, &other, &key, Execution::default())?;
    write_json(
        out,
        &AttackReport {
            key_fingerprint: key.fingerprint(),
            width: known.width(),
            height: known.height(),
            source_recovered: run.outcome.source_recovered(),
            source_recovery: run.outcome.source_recovery,
            transfer: run.outcome.transfer,
        },
    )
}

fn histogram_csv(image: &GrayImage) -> String {
    let mut out = String::from("value,count\n");
    for (v, c) in histogram(image).counts().iter().enumerate() {
        writeln!(out, "{v},{c}").unwrap();
    }
    out
}

fn scatter_csv(pairs: &[(u8, u8)]) -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in pairs {
        writeln!(out, "{x},{y}").unwrap();
    }
    out
}

fn write_plot_set(dir: &Path, prefix: &str, image: &GrayImage, seed: u64, pairs: usize) -> Result {
    write_file(
        &dir.join(format!("{prefix}_histogram.csv")),
        histogram_csv(image),
    )?;
    for d in Direction::ALL {
        let sample = sample_adjacent_pairs(image, d, pairs, seed)?;
        write_file(
            &dir.join(format!("{prefix}_scatter_{}.csv", d.name())),
            scatter_csv(&sample.pairs),
        )?;
    }
    Ok(())
}

pub fn plotdata(input: &Path, key: Option<&Path>, out: &Path, seed: u64, pairs: usize) -> Result {
    let key = key.map(read_key).transpose()?;
    let image = read_image(input)?;
    create_dir(out)?;
    write_plot_set(out, "plain", &image, seed, pairs)?;
    if let Some(key) = key {
        let cipher = chaoslut::encrypt(&image, &key)?;
        write_plot_set(out, "encrypted", &cipher, seed, pairs)?;
    }
    Ok(())
}
