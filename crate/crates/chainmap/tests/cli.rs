use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use chainmap::corpus::{abutting_rectangles, disk_map};
use chainmap::imageio::{from_label_map, write_pgm, PgmImage};
use chainmap_core::LabelMap;

fn chainmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainmap"))
        .args(args)
        .env_remove("CHAINMAP_JOBS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn put(path: &Path, map: &LabelMap) {
    fs::write(path, write_pgm(&from_label_map(map))).unwrap();
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn encode_decode_reproduces_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("a.pgm");
    let smc = dir.path().join("a.smc");
    let back = dir.path().join("b.pgm");
    put(&pgm, &abutting_rectangles(50, 30));
    for mode in ["auto", "ecc", "3ot"] {
        let o = chainmap(&["encode", s(&pgm), s(&smc), "--mode", mode]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(code(&chainmap(&["decode", s(&smc), s(&back)])), 0);
        assert_eq!(fs::read(&pgm).unwrap(), fs::read(&back).unwrap());
    }
}

#[test]
fn uniform_map_is_tiny() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("u.pgm");
    let smc = dir.path().join("u.smc");
    let img = PgmImage { width: 64, height: 64, maxval: 255, samples: vec![17; 64 * 64] };
    fs::write(&pgm, write_pgm(&img)).unwrap();
    assert_eq!(code(&chainmap(&["encode", s(&pgm), s(&smc)])), 0);
    assert!(fs::metadata(&smc).unwrap().len() < 40);
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.smc");
    fs::write(&bad, b"NOPE\x01").unwrap();
    let out = dir.path().join("out.pgm");
    let o = chainmap(&["decode", s(&bad), s(&out)]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
    assert_eq!(code(&chainmap(&["decode", s(&dir.path().join("missing.smc")), s(&out)])), 2);
    assert_eq!(code(&chainmap(&["encode"])), 2);
    assert_eq!(code(&chainmap(&["encode", "--mode", "f8", "a", "b"])), 2);
    let not_pgm = dir.path().join("x.pgm");
    fs::write(&not_pgm, b"P6 1 1 255\n\0\0\0").unwrap();
    assert_eq!(code(&chainmap(&["encode", s(&not_pgm), s(&bad)])), 2);
}

#[test]
fn verify_detects_a_flipped_bit() {
    let dir = tempfile::tempdir().unwrap();
    let o = chainmap(&["gen-corpus", s(dir.path()), "--kind", "voronoi", "--size", "96x64", "--count", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&chainmap(&["verify", s(dir.path())])), 0);

    let pgm = dir.path().join("voronoi_0001.pgm");
    let smc = dir.path().join("voronoi_0001.smc");
    assert_eq!(code(&chainmap(&["encode", s(&pgm), s(&smc)])), 0);
    assert_eq!(code(&chainmap(&["verify", s(dir.path())])), 0);
    let mut bytes = fs::read(&smc).unwrap();
    let last = bytes.len() - 3;
    bytes[last] ^= 0x10;
    fs::write(&smc, &bytes).unwrap();
    assert_eq!(code(&chainmap(&["verify", s(dir.path())])), 1);
}

#[test]
fn verify_of_empty_directory_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let o = chainmap(&["verify", s(dir.path()), "--csv", s(&csv)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().filter(|l| !l.is_empty()).count(), 0);
}

#[test]
fn ablate_writes_one_row_per_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let maps = dir.path().join("maps");
    fs::create_dir(&maps).unwrap();
    put(&maps.join("rects.pgm"), &abutting_rectangles(60, 40));
    put(&maps.join("disk.pgm"), &disk_map(12));
    let csv = dir.path().join("ablate.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_chainmap"))
        .args(["ablate", s(&maps), "--csv", s(&csv)])
        .env("CHAINMAP_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(&csv).unwrap();
    let headers = r.headers().unwrap().clone();
    assert_eq!(&headers[0], "path");
    assert_eq!(&headers[headers.len() - 1], "verified");
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2 * 6);
    assert!(rows.iter().all(|r| &r[r.len() - 1] == "true"));

    // one explicit configuration
    let o = chainmap(&["ablate", s(&maps), "--no-skip", "--csv", s(&csv)]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_path(&csv).unwrap();
    let configs: Vec<String> = r.records().map(|x| x.unwrap()[1].to_string()).collect();
    assert_eq!(configs, ["auto+no-skip", "auto+no-skip"]);
}

#[test]
fn bench_shapes_counts_a_square_and_rejects_multilabel() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = vec![0u16; 15 * 15];
    for r in 3..12 {
        for c in 3..12 {
            v[r * 15 + c] = 255;
        }
    }
    put(&dir.path().join("square.pgm"), &LabelMap::from_values(15, 15, &v).unwrap());
    let o = chainmap(&["bench-shapes", s(dir.path())]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(&o.stdout[..]);
    let h = r.headers().unwrap().clone();
    let row = r.records().next().unwrap().unwrap();
    let col = |name: &str| row[h.iter().position(|x| x == name).unwrap()].to_string();
    assert_eq!(col("name"), "square");
    assert_eq!(col("f4"), "36");
    assert_eq!(col("ecc"), "12");

    put(&dir.path().join("three.pgm"), &LabelMap::from_values(3, 1, &[0, 1, 2]).unwrap());
    assert_eq!(code(&chainmap(&["bench-shapes", s(dir.path())])), 2);
}

#[test]
fn gen_corpus_is_seed_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = chainmap(&["gen-corpus", s(d.path()), "--kind", "silhouette", "--count", "2", "--seed", "9"]);
        assert_eq!(code(&o), 0);
    }
    for name in ["silhouette_0000.pgm", "silhouette_0001.pgm"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
    assert_eq!(code(&chainmap(&["gen-corpus", s(a.path()), "--kind", "disks", "--size", "0x4"])), 2);
}

#[test]
fn help_documents_csv_columns() {
    let o = chainmap(&["--help"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("skip_complete, skip_partial, verified"));
    assert!(text.contains("CHAINMAP_JOBS"));
}
