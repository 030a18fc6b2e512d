use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use chainmap::bench::{bench_shapes, config_name, mean_bytes, run_one, shape_contours, RunReport, ShapeRow};
use chainmap::corpus::{generate, rng_for, CorpusKind};
use chainmap::imageio::{from_label_map, read_pgm, to_label_map, write_pgm};
use chainmap_core::{decode_map, Blob, CodecConfig, LabelMap, ModePolicy};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

const AFTER_HELP: &str = "\
Exit status: 0 success, 1 verification failure, 2 usage, I/O or corrupt-stream error.

CSV columns (encode, verify, ablate), in order:
  path, config, width, height, pixels, labels, boundary_blobs, inner_blobs,
  header_bytes, payload_bytes, total_bytes, encode_ms, decode_ms, ecc_pct,
  threeot_pct, skip_complete, skip_partial, verified
CSV columns (bench-shapes), in order:
  name, f4, f8, vcc, three_ot, ecc, rf8_bits, vcc_bits, three_ot_bits, recc_bits";

/// Lossless contour coding of label maps stored as binary PGM.
#[derive(Parser)]
#[command(version, after_help = AFTER_HELP)]
struct Cli {
    /// Worker threads for per-file parallelism (0 = all cores).
    #[arg(long, global = true, env = "CHAINMAP_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Write the report as CSV to this file instead of standard output.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a PGM label map into a bitstream.
    Encode {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        codec: CodecArgs,
        /// Skip the decode-and-compare check.
        #[arg(long)]
        no_verify: bool,
    },
    /// Decode a bitstream back into a PGM.
    Decode { input: PathBuf, output: PathBuf },
    /// Round-trip every PGM in a directory. A stored NAME.smc next to
    /// NAME.pgm is also decoded and compared.
    Verify {
        dir: PathBuf,
        #[command(flatten)]
        codec: CodecArgs,
    },
    /// Symbol counts and context-coded bits of binary shapes.
    BenchShapes {
        dir: PathBuf,
        /// Prime the context models on the shapes in this directory first.
        #[arg(long)]
        train: Option<PathBuf>,
    },
    /// Compare codec configurations over a corpus. Without codec flags the
    /// standard set is run.
    Ablate {
        dir: PathBuf,
        #[command(flatten)]
        codec: CodecArgs,
    },
    /// Write a seeded synthetic PGM corpus.
    GenCorpus {
        dir: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Frame size as WIDTHxHEIGHT.
        #[arg(long, default_value = "320x240", value_parser = parse_size)]
        size: (u32, u32),
        /// Number of labels (default: 2 for silhouette, 27 for voronoi, 4 otherwise).
        #[arg(long)]
        labels: Option<u16>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Clone, Copy, Default)]
struct CodecArgs {
    /// Chain code per blob.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Always allow the rare relative quadrant.
    #[arg(long)]
    full_recc: bool,
    /// Disable skip coding of shared edges.
    #[arg(long)]
    no_skip: bool,
}

impl CodecArgs {
    fn given(&self) -> bool {
        self.mode.is_some() || self.full_recc || self.no_skip
    }

    fn config(&self) -> CodecConfig {
        CodecConfig {
            mode: self.mode.unwrap_or(ModeArg::Auto).into(),
            full_recc: self.full_recc,
            skip: !self.no_skip,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Ecc,
    #[value(name = "3ot")]
    ThreeOt,
}

impl From<ModeArg> for ModePolicy {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => ModePolicy::Auto,
            ModeArg::Ecc => ModePolicy::EccOnly,
            ModeArg::ThreeOt => ModePolicy::ThreeOtOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Silhouette,
    Voronoi,
    Checker,
    Disks,
}

impl From<KindArg> for CorpusKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Silhouette => CorpusKind::Silhouette,
            KindArg::Voronoi => CorpusKind::Voronoi,
            KindArg::Checker => CorpusKind::Checker,
            KindArg::Disks => CorpusKind::Disks,
        }
    }
}

fn parse_size(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or("expected WIDTHxHEIGHT")?;
    let w: u32 = w.parse().map_err(|_| format!("bad width {w:?}"))?;
    let h: u32 = h.parse().map_err(|_| format!("bad height {h:?}"))?;
    if w == 0 || h == 0 {
        return Err("dimensions must be positive".into());
    }
    Ok((w, h))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a verification failure.
fn run(cli: Cli) -> Result<bool> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
    let csv = cli.csv.as_deref();
    pool.install(|| match cli.command {
        Command::Encode { input, output, codec, no_verify } => encode(&input, &output, codec, no_verify, csv),
        Command::Decode { input, output } => decode(&input, &output),
        Command::Verify { dir, codec } => verify(&dir, codec, csv),
        Command::BenchShapes { dir, train } => shapes(&dir, train.as_deref(), csv),
        Command::Ablate { dir, codec } => ablate(&dir, codec, csv),
        Command::GenCorpus { dir, kind, size, labels, count, seed } => {
            gen_corpus(&dir, kind.into(), size, labels, count, seed)
        }
    })
}

fn load_map(path: &Path) -> Result<LabelMap> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let img = read_pgm(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    Ok(to_label_map(&img)?)
}

fn pgm_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading directory {}", dir.display()))? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn write_csv<T: Serialize>(rows: &[T], csv: Option<&Path>) -> Result<()> {
    let sink: Box<dyn io::Write> = match csv {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn encode(input: &Path, output: &Path, codec: CodecArgs, no_verify: bool, csv: Option<&Path>) -> Result<bool> {
    let map = load_map(input)?;
    let (report, bytes) = run_one(&input.display().to_string(), &map, &codec.config());
    if !no_verify && !report.verified {
        eprintln!("{}: decoded map differs from input, nothing written", input.display());
        return Ok(false);
    }
    fs::write(output, &bytes).with_context(|| format!("writing {}", output.display()))?;
    eprintln!(
        "{} -> {}: {} bytes ({} header, {} payload)",
        input.display(),
        output.display(),
        report.total_bytes,
        report.header_bytes,
        report.payload_bytes
    );
    if csv.is_some() {
        write_csv(&[report], csv)?;
    }
    Ok(true)
}

fn decode(input: &Path, output: &Path) -> Result<bool> {
    let bytes = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let map = decode_map(&bytes).with_context(|| format!("decoding {}", input.display()))?;
    fs::write(output, write_pgm(&from_label_map(&map))).with_context(|| format!("writing {}", output.display()))?;
    Ok(true)
}

fn run_dir(files: &[PathBuf], config: &CodecConfig) -> Result<Vec<RunReport>> {
    files
        .par_iter()
        .map(|path| {
            let map = load_map(path)?;
            let (mut report, _) = run_one(&path.display().to_string(), &map, config);
            let stored = path.with_extension("smc");
            if stored.exists() {
                let bytes = fs::read(&stored).with_context(|| format!("reading {}", stored.display()))?;
                let ok = decode_map(&bytes).is_ok_and(|m| m == map);
                if !ok {
                    eprintln!("{}: stored bitstream does not reproduce the image", stored.display());
                }
                report.verified &= ok;
            }
            Ok(report)
        })
        .collect()
}

fn report_failures(rows: &[RunReport]) -> bool {
    let failed: Vec<_> = rows.iter().filter(|r| !r.verified).collect();
    for r in &failed {
        eprintln!("FAILED {} [{}]", r.path, r.config);
    }
    failed.is_empty()
}

fn verify(dir: &Path, codec: CodecArgs, csv: Option<&Path>) -> Result<bool> {
    let files = pgm_files(dir)?;
    let rows = run_dir(&files, &codec.config())?;
    write_csv(&rows, csv)?;
    let ok = report_failures(&rows);
    eprintln!("{} files, {} failed", rows.len(), rows.iter().filter(|r| !r.verified).count());
    Ok(ok)
}

fn load_shapes(dir: &Path) -> Result<Vec<(String, Vec<Blob>)>> {
    pgm_files(dir)?
        .par_iter()
        .map(|path| {
            let blobs = shape_contours(&load_map(path)?)
                .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Ok((name, blobs))
        })
        .collect()
}

fn shapes(dir: &Path, train: Option<&Path>, csv: Option<&Path>) -> Result<bool> {
    let eval = load_shapes(dir)?;
    let train: Vec<Vec<Blob>> = match train {
        Some(t) => load_shapes(t)?.into_iter().map(|(_, b)| b).collect(),
        None => Vec::new(),
    };
    let mut rows = bench_shapes(&train, &eval);
    let mut total = ShapeRow {
        name: "total".into(),
        f4: 0,
        f8: 0,
        vcc: 0,
        three_ot: 0,
        ecc: 0,
        rf8_bits: 0.0,
        vcc_bits: 0.0,
        three_ot_bits: 0.0,
        recc_bits: 0.0,
    };
    for r in &rows {
        total.f4 += r.f4;
        total.f8 += r.f8;
        total.vcc += r.vcc;
        total.three_ot += r.three_ot;
        total.ecc += r.ecc;
        total.rf8_bits += r.rf8_bits;
        total.vcc_bits += r.vcc_bits;
        total.three_ot_bits += r.three_ot_bits;
        total.recc_bits += r.recc_bits;
    }
    rows.push(total);
    write_csv(&rows, csv)?;
    Ok(true)
}

fn standard_configs() -> Vec<CodecConfig> {
    let base = CodecConfig::default();
    vec![
        base,
        CodecConfig { mode: ModePolicy::ThreeOtOnly, ..base },
        CodecConfig { mode: ModePolicy::EccOnly, ..base },
        CodecConfig { mode: ModePolicy::EccOnly, full_recc: true, ..base },
        CodecConfig { full_recc: true, ..base },
        CodecConfig { skip: false, ..base },
    ]
}

fn ablate(dir: &Path, codec: CodecArgs, csv: Option<&Path>) -> Result<bool> {
    let files = pgm_files(dir)?;
    if files.is_empty() {
        bail!("no .pgm files in {}", dir.display());
    }
    let configs = if codec.given() { vec![codec.config()] } else { standard_configs() };
    let mut all = Vec::new();
    for config in &configs {
        let rows = run_dir(&files, config)?;
        eprintln!("{:<16} {:>10.1} bytes/map", config_name(config), mean_bytes(&rows));
        all.extend(rows);
    }
    write_csv(&all, csv)?;
    Ok(report_failures(&all))
}

fn gen_corpus(dir: &Path, kind: CorpusKind, (w, h): (u32, u32), labels: Option<u16>, count: usize, seed: u64) -> Result<bool> {
    let labels = labels.unwrap_or(match kind {
        CorpusKind::Silhouette => 2,
        CorpusKind::Voronoi => 27,
        _ => 4,
    });
    if labels == 0 {
        bail!("--labels must be at least 1");
    }
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    (0..count).into_par_iter().try_for_each(|i| {
        let map = generate(kind, w, h, labels, &mut rng_for(seed, i as u64));
        let path = dir.join(format!("{kind}_{i:04}.pgm"));
        fs::write(&path, write_pgm(&from_label_map(&map))).with_context(|| format!("writing {}", path.display()))
    })?;
    eprintln!("wrote {count} {kind} maps to {}", dir.display());
    Ok(true)
}
