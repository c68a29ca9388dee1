#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use chaoslut::pgm::read_pgm;
use chaoslut::GrayImage;

pub const CORPUS: [&str; 10] = [
    "camera",
    "moon",
    "brick",
    "grass",
    "gravel",
    "astronaut",
    "ihc",
    "hubble",
    "cell",
    "coins",
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn load(name: &str) -> GrayImage {
    let path = data_dir().join("corpus").join(format!("{name}.pgm"));
    let bytes = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    read_pgm(&bytes).unwrap()
}

pub fn corpus() -> Vec<(&'static str, GrayImage)> {
    CORPUS.iter().map(|&n| (n, load(n))).collect()
}

pub fn to_grid(img: &GrayImage) -> oracle::Grid {
    img.pixels()
        .chunks(img.width())
        .map(|row| row.to_vec())
        .collect()
}

pub fn crop(img: &GrayImage, top: usize, left: usize, w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |r, c| img.get(top + r, left + c).unwrap()).unwrap()
}
