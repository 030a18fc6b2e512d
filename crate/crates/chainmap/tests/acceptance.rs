//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines show up in `cargo test` output; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chainmap::bench::{bench_shapes, mean_bytes, run_one, shape_contours, symbol_counts};
use chainmap::corpus::{
    abutting_rectangles, corpus, disk_map, rng_for, shape_set, silhouette, stress_map, CorpusKind,
};
use chainmap_core::entropy::{ContextModel, RangeEncoder};
use chainmap_core::lattice::register_blobs;
use chainmap_core::{
    decode_map, encode_map, encode_map_with_stats, Blob, CodecConfig, LabelMap, ModePolicy,
};
use rand::Rng;

type Outcome = (bool, String);

fn losslessness() -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    for i in 0..1000 {
        let map = stress_map(2024, i);
        let bytes = encode_map(&map, &CodecConfig::default());
        if decode_map(&bytes).as_ref() != Ok(&map) {
            failures.push(i);
        }
    }
    let secs = t.elapsed().as_secs_f64();
    (
        failures.is_empty() && secs < 60.0,
        format!("1000 maps, {} mismatches {:?}, {secs:.1} s (limit 60 s)", failures.len(), &failures[..failures.len().min(5)]),
    )
}

fn context_bound() -> Outcome {
    let mut worst = 0;
    for i in 0..1000 {
        let map = stress_map(2024, i);
        for mode in [ModePolicy::Auto, ModePolicy::EccOnly] {
            let config = CodecConfig { mode, full_recc: true, ..Default::default() };
            worst = worst.max(encode_map_with_stats(&map, &config).1.ecc_contexts);
        }
    }
    (worst <= 243 + 9, format!("max ECC contexts per map {worst} (limit 252)"))
}

fn symbol_economy() -> Outcome {
    let mut ok = true;
    let mut worst_disk: f64 = 0.0;
    for r in [16, 20, 24, 32, 48, 64, 100] {
        let n = symbol_counts(&shape_contours(&disk_map(r)).unwrap());
        let ratio = n.ecc as f64 / n.f4 as f64;
        worst_disk = worst_disk.max(ratio);
        ok &= 2 * n.ecc <= n.f4;
    }
    let mut maps: Vec<LabelMap> = (0..300).map(|i| stress_map(99, i)).collect();
    maps.extend(shape_set(28, 11));
    maps.extend(corpus(CorpusKind::Voronoi, 256, 256, 27, 4, 3));
    let mut contours = 0;
    let mut violations = 0;
    for m in &maps {
        for b in register_blobs(m).iter() {
            let n = symbol_counts(std::slice::from_ref(b));
            contours += 1;
            violations += (n.ecc > n.f4) as usize;
        }
    }
    ok &= violations == 0;
    (
        ok,
        format!("disks r>=16 worst ECC/F4 {worst_disk:.3} (limit 0.5); ECC > F4 on {violations} of {contours} contours"),
    )
}

fn entropy_sanity() -> Outcome {
    let shapes: Vec<Vec<Blob>> = shape_set(28, 11).iter().map(|m| shape_contours(m).unwrap()).collect();
    let eval: Vec<(String, Vec<Blob>)> =
        shapes[14..].iter().enumerate().map(|(i, b)| (format!("shape{i}"), b.clone())).collect();
    let rows = bench_shapes(&shapes[..14], &eval);
    let recc: f64 = rows.iter().map(|r| r.recc_bits).sum();
    let tri: f64 = rows.iter().map(|r| r.three_ot_bits).sum();
    let gap = (recc - tri) / tri;
    (gap.abs() <= 0.15, format!("RECC2 {recc:.0} bits vs 3OT4 {tri:.0} bits, {:+.1}% (limit 15%)", 100.0 * gap))
}

fn ablation_ordering() -> Outcome {
    let base = CodecConfig::default();
    let ecc = CodecConfig { mode: ModePolicy::EccOnly, ..base };
    let tri = CodecConfig { mode: ModePolicy::ThreeOtOnly, ..base };
    let ecc_full = CodecConfig { full_recc: true, ..ecc };
    let auto_full = CodecConfig { full_recc: true, ..base };
    let mut ok = true;
    let mut parts = Vec::new();
    for (kind, w, h, labels) in
        [(CorpusKind::Silhouette, 320, 240, 2), (CorpusKind::Voronoi, 256, 256, 27), (CorpusKind::Disks, 256, 256, 4)]
    {
        let maps = corpus(kind, w, h, labels, 10, 5);
        let avg = |c: &CodecConfig| {
            let rows: Vec<_> = maps.iter().map(|m| run_one("", m, c).0).collect();
            let blobs = rows.iter().map(|r| r.boundary_blobs + r.inner_blobs).sum::<usize>() as f64 / rows.len() as f64;
            (mean_bytes(&rows), blobs)
        };
        let (a, blobs) = avg(&base);
        let (e, _) = avg(&ecc);
        let (t, _) = avg(&tri);
        let (ef, _) = avg(&ecc_full);
        let (af, _) = avg(&auto_full);
        let tol = blobs * 2.0 / 8.0;
        let pass = a <= e + tol && a <= t + tol && e <= ef && a <= af;
        ok &= pass;
        parts.push(format!(
            "{kind}: auto {a:.1} ecc {e:.1} 3ot {t:.1} ecc+full {ef:.1} auto+full {af:.1} tol {tol:.1}{}",
            if pass { "" } else { " <-" }
        ));
    }
    (ok, parts.join("; "))
}

fn skip_effectiveness() -> Outcome {
    let base = CodecConfig::default();
    let no_skip = CodecConfig { skip: false, ..base };
    let rects = abutting_rectangles(120, 80);
    let with = encode_map(&rects, &base).len();
    let without = encode_map(&rects, &no_skip).len();
    let maps = corpus(CorpusKind::Voronoi, 256, 256, 27, 10, 5);
    let v_with = maps.iter().map(|m| encode_map(m, &base).len()).sum::<usize>();
    let v_without = maps.iter().map(|m| encode_map(m, &no_skip).len()).sum::<usize>();
    let (_, stats) = encode_map_with_stats(&LabelMap::uniform(64, 64, 3).unwrap(), &base);
    (
        with < without && v_with < v_without && stats.payload_bytes <= 4,
        format!(
            "rectangles {with} < {without} B; voronoi {v_with} < {v_without} B; uniform payload {} B (limit 4)",
            stats.payload_bytes
        ),
    )
}

fn coder_quality() -> Outcome {
    let mut rng = rng_for(7, 0);
    let n = 100_000;
    let bits: Vec<usize> = (0..n).map(|_| rng.gen_bool(0.1) as usize).collect();
    let ones = bits.iter().sum::<usize>() as f64 / n as f64;
    let entropy = n as f64 * -(ones * ones.log2() + (1.0 - ones) * (1.0 - ones).log2());
    let mut enc = RangeEncoder::with_sink(Vec::new());
    let mut model = ContextModel::new(2);
    for &b in &bits {
        model.encode(&mut enc, b);
    }
    let coded = enc.finish().len() as f64 * 8.0;
    let excess = coded / entropy - 1.0;

    let mut enc = RangeEncoder::with_sink(Vec::new());
    for _ in 0..n {
        enc.encode(rng.gen_range(0..36), 1, 36);
    }
    let per_symbol = enc.finish().len() as f64 * 8.0 / n as f64;
    let uniform_err = per_symbol - 36f64.log2();
    (
        excess.abs() <= 0.05 && uniform_err.abs() <= 0.1,
        format!(
            "p=0.9 stream {coded:.0} bits vs entropy {entropy:.0} ({:+.2}%, limit 5%); uniform-36 {per_symbol:.4} bits/symbol vs {:.4}",
            100.0 * excess,
            36f64.log2()
        ),
    )
}

fn silhouette_rate() -> Outcome {
    let map = silhouette(320, 240, &mut rng_for(1, 0));
    let a = encode_map(&map, &CodecConfig::default());
    let b = encode_map(&map, &CodecConfig::default());
    let again = encode_map(&silhouette(320, 240, &mut rng_for(1, 0)), &CodecConfig::default());
    (
        a.len() <= 150 && a == b && a == again && decode_map(&a).as_ref() == Ok(&map),
        format!("{} bytes (limit 150), deterministic {}", a.len(), a == b && a == again),
    )
}

fn runtime() -> Outcome {
    let map = silhouette(320, 240, &mut rng_for(1, 0));
    let config = CodecConfig::default();
    let bytes = encode_map(&map, &config);
    let median = |f: &dyn Fn()| {
        let mut times: Vec<Duration> = (0..15)
            .map(|_| {
                let t = Instant::now();
                f();
                t.elapsed()
            })
            .collect();
        times.sort();
        times[times.len() / 2].as_secs_f64() * 1e3
    };
    let enc = median(&|| {
        std::hint::black_box(encode_map(&map, &config));
    });
    let dec = median(&|| {
        std::hint::black_box(decode_map(&bytes).unwrap());
    });
    (enc < 50.0 && dec < 25.0, format!("encode {enc:.2} ms (limit 50), decode {dec:.2} ms (limit 25)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 losslessness", losslessness),
        ("2 context bound", context_bound),
        ("3 symbol economy", symbol_economy),
        ("4 entropy-coding sanity", entropy_sanity),
        ("5 ablation ordering", ablation_ordering),
        ("6 skip effectiveness", skip_effectiveness),
        ("7 coder quality", coder_quality),
        ("8 silhouette rate", silhouette_rate),
        ("9 runtime", runtime),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let (ok, detail) = check();
        failed += !ok as usize;
        println!("{} criterion {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
