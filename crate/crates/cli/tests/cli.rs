use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chaoslut::pgm::{read_pgm, write_pgm};
use chaoslut::report::AnalysisReport;
use chaoslut::rng::Lcg64;
use chaoslut::{GrayImage, SecretKey};
use tempfile::TempDir;

const K0_HEX: &str = "3fd999999999999a400f3333333333333fe001a36e2eb1c4400ef5c7cd898b2f";

fn core_data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data")
}

fn corpus(name: &str) -> PathBuf {
    core_data().join("corpus").join(format!("{name}.pgm"))
}

fn chaoslut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaoslut"))
        .args(args)
        .output()
        .expect("spawn chaoslut")
}

fn ok(args: &[&str]) -> Output {
    let out = chaoslut(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

/// Asserts the exit code and that stderr is a single diagnostic line.
fn fails_with(args: &[&str], code: i32) -> String {
    let out = chaoslut(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1, "{stderr:?}");
    stderr
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn key_file(dir: &TempDir, name: &str, hex: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, format!("{hex}\n")).unwrap();
    path
}

fn hex_of(components: [f64; 4]) -> String {
    components
        .iter()
        .flat_map(|c| c.to_be_bytes())
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn write_image(dir: &TempDir, name: &str, img: &GrayImage) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, write_pgm(img)).unwrap();
    path
}

fn camera_crop() -> GrayImage {
    let cam = read_pgm(&fs::read(corpus("camera")).unwrap()).unwrap();
    GrayImage::from_fn(64, 64, |r, c| cam.get(224 + r, 224 + c).unwrap()).unwrap()
}

#[test]
fn keygen_is_seeded_and_well_formed() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.key"), dir.path().join("b.key"));
    ok(&["keygen", "--out", s(&a), "--seed", "7"]);
    ok(&["keygen", "--out", s(&b), "--seed", "7"]);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(text.len(), 65);
    assert!(text.ends_with('\n'));
    assert!(text[..64]
        .bytes()
        .all(|c| c.is_ascii_digit() || (b'a'..=b'f').contains(&c)));
    let expected = SecretKey::generate(&mut Lcg64::new(7));
    assert_eq!(text.trim(), expected.to_hex());

    let c = dir.path().join("c.key");
    ok(&["keygen", "--out", s(&c)]);
    let key: SecretKey = fs::read_to_string(&c).unwrap().parse().unwrap();
    for x in [key.x0(), key.x0xor()] {
        assert!((0.1..=0.9).contains(&x));
    }
    for mu in [key.mu0(), key.mu0xor()] {
        assert!((3.9..=4.0).contains(&mu));
    }
}

#[test]
fn corpus_image_round_trips() {
    let dir = TempDir::new().unwrap();
    let key = dir.path().join("k");
    ok(&["keygen", "--out", s(&key), "--seed", "11"]);
    let (enc, dec) = (dir.path().join("enc.pgm"), dir.path().join("dec.pgm"));
    let input = corpus("coins");
    ok(&[
        "encrypt",
        "--in",
        s(&input),
        "--key",
        s(&key),
        "--out",
        s(&enc),
    ]);
    ok(&[
        "decrypt",
        "--in",
        s(&enc),
        "--key",
        s(&key),
        "--out",
        s(&dec),
    ]);
    assert_ne!(fs::read(&enc).unwrap(), fs::read(&input).unwrap());
    assert_eq!(fs::read(&dec).unwrap(), fs::read(&input).unwrap());
}

#[test]
fn encrypt_matches_golden_ciphertext() {
    let dir = TempDir::new().unwrap();
    let key = key_file(&dir, "k0", K0_HEX);
    let input = write_image(&dir, "crop.pgm", &camera_crop());
    let out = dir.path().join("out.pgm");
    ok(&[
        "encrypt",
        "--in",
        s(&input),
        "--key",
        s(&key),
        "--out",
        s(&out),
    ]);
    let golden = fs::read(core_data().join("golden/camera64_k0.pgm")).unwrap();
    assert_eq!(fs::read(&out).unwrap(), golden);
}

#[test]
fn analyze_report_is_stable_and_matches_golden() {
    let dir = TempDir::new().unwrap();
    let key = key_file(&dir, "k0", K0_HEX);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let plain = corpus("camera");
    for out in [&a, &b] {
        ok(&[
            "analyze",
            "--plain",
            s(&plain),
            "--key",
            s(&key),
            "--out",
            s(out),
        ]);
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(
        text,
        fs::read_to_string(core_data().join("golden/camera_report.json")).unwrap()
    );
    let report: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert!(report.is_consistent());
    assert!(report.encrypted.entropy >= 7.99);
    assert_eq!(report.parameters.change_position, [256, 256]);
}

#[test]
fn analyze_honours_seed_and_position() {
    let dir = TempDir::new().unwrap();
    let key = key_file(&dir, "k0", K0_HEX);
    let plain = write_image(&dir, "crop.pgm", &camera_crop());
    let out = dir.path().join("r.json");
    ok(&[
        "analyze",
        "--plain",
        s(&plain),
        "--key",
        s(&key),
        "--sample-seed",
        "9",
        "--change-pos",
        "0,0",
        "--out",
        s(&out),
    ]);
    let report: AnalysisReport = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.parameters.sample_seed, 9);
    assert_eq!(report.parameters.change_position, [0, 0]);
    // a change at the first pixel reaches every ciphertext byte
    assert!(report.diff.npcr > 99.0, "{:?}", report.diff);
}

#[test]
fn sensitivity_writes_six_tables() {
    let dir = TempDir::new().unwrap();
    let key = key_file(&dir, "k0", K0_HEX);
    let plain = write_image(&dir, "crop.pgm", &camera_crop());
    let out = dir.path().join("tables");
    ok(&[
        "sensitivity",
        "--plain",
        s(&plain),
        "--key",
        s(&key),
        "--delta",
        "1e-15",
        "--out",
        s(&out),
    ]);
    for stage in ["cipher", "decipher"] {
        for metric in ["npcr", "uaci", "mae"] {
            let csv = fs::read_to_string(out.join(format!("{stage}_{metric}.csv"))).unwrap();
            let rows: Vec<&str> = csv.lines().collect();
            assert_eq!(rows.len(), 7, "{stage}_{metric}");
            assert!(rows.iter().all(|r| r.split(',').count() == 7));
        }
    }
    let cipher_npcr = fs::read_to_string(out.join("cipher_npcr.csv")).unwrap();
    assert!(cipher_npcr.starts_with("label,I_C,I_C1,I_C2,I_C3,I_C4,I\n"));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("sensitivity.json")).unwrap()).unwrap();
    assert_eq!(json["delta"], 1e-15);
    assert_eq!(json["decipher"]["npcr"]["cells"][0][5], 0.0);
}

#[test]
fn attack_demo_reports_no_transfer() {
    let dir = TempDir::new().unwrap();
    let key = key_file(&dir, "k0", K0_HEX);
    let out = dir.path().join("attack.json");
    ok(&[
        "attack-demo",
        "--known-plain",
        s(&corpus("camera")),
        "--other-plain",
        s(&corpus("astronaut")),
        "--key",
        s(&key),
        "--out",
        s(&out),
    ]);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["source_recovered"], true);
    assert_eq!(json["source_recovery"]["npcr"], 0.0);
    assert!(json["transfer"]["npcr"].as_f64().unwrap() >= 98.0);
}

#[test]
fn plotdata_emits_histograms_and_scatter() {
    let dir = TempDir::new().unwrap();
    let key = key_file(&dir, "k0", K0_HEX);
    let img = camera_crop();
    let input = write_image(&dir, "crop.pgm", &img);
    let out = dir.path().join("plots");
    ok(&[
        "plotdata",
        "--in",
        s(&input),
        "--key",
        s(&key),
        "--out",
        s(&out),
        "--pairs",
        "300",
    ]);
    for prefix in ["plain", "encrypted"] {
        let hist = fs::read_to_string(out.join(format!("{prefix}_histogram.csv"))).unwrap();
        let rows: Vec<&str> = hist.lines().skip(1).collect();
        assert_eq!(rows.len(), 256);
        let total: usize = rows
            .iter()
            .map(|r| r.split_once(',').unwrap().1.parse::<usize>().unwrap())
            .sum();
        assert_eq!(total, img.len());
        for d in ["horizontal", "vertical", "diagonal"] {
            let scatter =
                fs::read_to_string(out.join(format!("{prefix}_scatter_{d}.csv"))).unwrap();
            assert!(scatter.starts_with("x,y\n"));
            assert_eq!(scatter.lines().count(), 301);
        }
    }

    let plain_only = dir.path().join("plain_only");
    ok(&["plotdata", "--in", s(&input), "--out", s(&plain_only)]);
    assert!(plain_only.join("plain_histogram.csv").exists());
    assert!(!plain_only.join("encrypted_histogram.csv").exists());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let good_key = key_file(&dir, "k0", K0_HEX);
    let img = write_image(&dir, "img.pgm", &GrayImage::filled(4, 4, 9).unwrap());
    let out = dir.path().join("out.pgm");
    let enc = |input: &Path, key: &Path| {
        vec![
            "encrypt".to_string(),
            "--in".into(),
            s(input).into(),
            "--key".into(),
            s(key).into(),
            "--out".into(),
            s(&out).into(),
        ]
    };
    let run = |args: Vec<String>, code| {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        fails_with(&args, code)
    };

    // usage
    fails_with(&[], 1);
    fails_with(&["encrypt", "--in", "x.pgm"], 1);
    fails_with(&["frobnicate"], 1);
    fails_with(
        &[
            "analyze",
            "--plain",
            "a",
            "--key",
            "k",
            "--change-pos",
            "3",
            "--out",
            "o",
        ],
        1,
    );
    assert!(ok(&["--help"]).stdout.starts_with(b"Chaotic"));

    // I/O and unreadable images
    let missing = dir.path().join("missing.pgm");
    let stderr = run(enc(&missing, &good_key), 2);
    assert!(stderr.contains("missing.pgm"), "{stderr}");
    let bogus = dir.path().join("bogus.pgm");
    fs::write(&bogus, b"P6\n1 1\n255\nabc").unwrap();
    run(enc(&bogus, &good_key), 2);
    let truncated = dir.path().join("short.pgm");
    fs::write(&truncated, b"P5\n4 4\n255\n0123456789abcde").unwrap();
    run(enc(&truncated, &good_key), 2);

    // validation
    let short_key = key_file(&dir, "short", "abcd");
    run(enc(&img, &short_key), 3);
    let bad_mu = key_file(&dir, "badmu", &hex_of([0.4, 5.0, 0.5, 3.9]));
    let stderr = run(enc(&img, &bad_mu), 3);
    assert!(stderr.contains("mu"), "{stderr}");
    fails_with(
        &[
            "analyze",
            "--plain",
            s(&img),
            "--key",
            s(&good_key),
            "--change-pos",
            "4,0",
            "--out",
            s(&dir.path().join("r.json")),
        ],
        3,
    );
    let other = write_image(&dir, "other.pgm", &GrayImage::filled(5, 4, 1).unwrap());
    fails_with(
        &[
            "attack-demo",
            "--known-plain",
            s(&img),
            "--other-plain",
            s(&other),
            "--key",
            s(&good_key),
            "--out",
            s(&dir.path().join("a.json")),
        ],
        3,
    );

    // cipher: the XOR orbit from 0.5 at mu = 4 hits the fixed point 0
    let degenerate = key_file(&dir, "degenerate", &hex_of([0.4, 3.9, 0.5, 4.0]));
    let stderr = run(enc(&img, &degenerate), 4);
    assert!(stderr.contains("degenerate"), "{stderr}");
    assert!(!out.exists());
}
