//! Parallel, resumable sweeps over a range of `g` (Thue mode) or `m` (pib
//! mode), written as one JSON object per line in ascending index order.
//!
//! Workers pull blocks of [`BLOCK_SIZE`] consecutive indices from a shared
//! counter and hand finished blocks to a single writer, which appends them in
//! block order. After each block is durably written the checkpoint is replaced
//! by atomic rename, recording how many blocks and bytes are final. A resumed
//! run truncates the output to that length and continues with the next block,
//! so the merged file does not depend on the job count or on where a run was
//! interrupted.
//!
//! Per-record `elapsed_ms` is only written when `record_timing` is set, since
//! timings would make otherwise identical runs differ.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::SquarefreeTable;
use crate::error::{BennettViolation, SweepError};
use crate::pib::{classify_m, generators_for_m_with, Inadmissibility};
use crate::thue::{assert_bennett, solve_small_with, SolveOptions, ThueStatus, PRECISION_RETRIES};

pub const BLOCK_SIZE: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Thue,
    Pib,
}

impl SweepMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepMode::Thue => "thue",
            SweepMode::Pib => "pib",
        }
    }
}

/// Named height presets.
pub mod profiles {
    use num_bigint::BigInt;

    /// Thue height of the full-scale computation, `10^500`.
    pub fn thue_full() -> BigInt {
        BigInt::from(10).pow(500)
    }

    /// Generator coordinate bound of the full-scale computation, `10^1000`.
    pub fn pib_full() -> BigInt {
        BigInt::from(10).pow(1000)
    }

    /// Desk-scale Thue height, `10^100`.
    pub fn thue_desk() -> BigInt {
        BigInt::from(10).pow(100)
    }

    /// Desk-scale generator bound, `10^200`.
    pub fn pib_desk() -> BigInt {
        BigInt::from(10).pow(200)
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub from: u64,
    pub to: u64,
    /// Thue height `H`, or the generator coordinate bound in pib mode.
    pub height: BigInt,
    pub jobs: usize,
    pub out: PathBuf,
    pub checkpoint: PathBuf,
    pub precision: Option<u32>,
    pub resume: bool,
    pub record_timing: bool,
    /// Stop after writing this many blocks in this invocation, leaving a
    /// resumable checkpoint. Used to exercise interruption.
    pub stop_after_blocks: Option<u64>,
}

impl SweepConfig {
    pub fn new(mode: SweepMode, from: u64, to: u64, height: BigInt, out: impl Into<PathBuf>, checkpoint: impl Into<PathBuf>) -> Self {
        SweepConfig {
            mode,
            from,
            to,
            height,
            jobs: 1,
            out: out.into(),
            checkpoint: checkpoint.into(),
            precision: None,
            resume: false,
            record_timing: false,
            stop_after_blocks: None,
        }
    }

    fn validate(&self) -> Result<(), SweepError> {
        let bad = |s: &str| Err(SweepError::InvalidConfig(s.to_string()));
        if self.from < 2 {
            return bad("range must start at 2 or above");
        }
        if self.to < self.from {
            return bad("range end is below range start");
        }
        if self.height < BigInt::from(1) {
            return bad("height must be at least 1");
        }
        if self.jobs == 0 {
            return bad("jobs must be at least 1");
        }
        Ok(())
    }

    /// Hash over everything that determines the output bytes.
    pub fn hash(&self) -> String {
        let canonical = format!(
            "v1|mode={}|from={}|to={}|height={}|precision={:?}|retries={}|block={}|timing={}",
            self.mode.as_str(),
            self.from,
            self.to,
            self.height,
            self.precision,
            PRECISION_RETRIES,
            BLOCK_SIZE,
            self.record_timing,
        );
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    fn total_blocks(&self) -> u64 {
        (self.to - self.from) / BLOCK_SIZE + 1
    }

    fn block_range(&self, block: u64) -> std::ops::RangeInclusive<u64> {
        let start = self.from + block * BLOCK_SIZE;
        start..=(start + BLOCK_SIZE - 1).min(self.to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub a: String,
    pub b: String,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThueRecord {
    pub g: String,
    pub status: String,
    pub height: String,
    pub precision_digits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub solutions: Vec<SolutionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PibRecord {
    pub m: String,
    pub status: String,
    pub admissible: bool,
    pub reasons: Vec<Inadmissibility>,
    pub height: String,
    pub precision_digits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub generators: Vec<GeneratorRecord>,
}

pub const STATUS_INADMISSIBLE: &str = "inadmissible";

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config_hash: String,
    pub completed_blocks: u64,
    pub total_blocks: u64,
    pub output: PathBuf,
    pub output_bytes: u64,
    pub records: u64,
    pub counts: BTreeMap<String, u64>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self, SweepError> {
        let text = fs::read_to_string(path).map_err(|source| SweepError::Io { path: path.into(), source })?;
        serde_json::from_str(&text)
            .map_err(|e| SweepError::BadCheckpoint { path: path.into(), detail: e.to_string() })
    }

    fn store(&self, path: &Path) -> Result<(), SweepError> {
        let io = |source| SweepError::Io { path: path.into(), source };
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut f = File::create(&tmp).map_err(io)?;
            f.write_all(serde_json::to_string_pretty(self).unwrap().as_bytes()).map_err(io)?;
            f.sync_all().map_err(io)?;
        }
        fs::rename(&tmp, path).map_err(io)
    }

    pub fn is_finished(&self) -> bool {
        self.completed_blocks == self.total_blocks
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    /// Record counts by status over the whole output, resumed parts included.
    pub counts: BTreeMap<String, u64>,
    pub records: u64,
    pub blocks_written: u64,
    pub resumed_from_block: u64,
    pub interrupted: bool,
    pub wall: Duration,
    pub max_record_ms: u64,
    pub bennett_violations: Vec<BennettViolation>,
}

impl SweepSummary {
    pub fn count(&self, status: &str) -> u64 {
        self.counts.get(status).copied().unwrap_or(0)
    }
}

#[derive(Default)]
struct BlockOutput {
    text: String,
    records: u64,
    counts: HashMap<&'static str, u64>,
    bennett: Vec<BennettViolation>,
    max_ms: u64,
}

struct Worker<'a> {
    config: &'a SweepConfig,
    table: Option<&'a SquarefreeTable>,
    opts: SolveOptions,
}

impl Worker<'_> {
    fn block(&self, block: u64) -> Result<BlockOutput, SweepError> {
        let mut out = BlockOutput::default();
        for index in self.config.block_range(block) {
            let started = Instant::now();
            let (line, status) = match self.config.mode {
                SweepMode::Thue => self.thue_record(index, started, &mut out.bennett)?,
                SweepMode::Pib => self.pib_record(index, started, &mut out.bennett)?,
            };
            out.max_ms = out.max_ms.max(started.elapsed().as_millis() as u64);
            out.text.push_str(&line);
            out.text.push('\n');
            out.records += 1;
            *out.counts.entry(status).or_default() += 1;
        }
        Ok(out)
    }

    fn elapsed(&self, started: Instant) -> Option<u64> {
        self.config.record_timing.then(|| started.elapsed().as_millis() as u64)
    }

    fn thue_record(
        &self,
        g: u64,
        started: Instant,
        bennett: &mut Vec<BennettViolation>,
    ) -> Result<(String, &'static str), SweepError> {
        let result = solve_small_with(&BigInt::from(g), &self.config.height, &self.opts)
            .map_err(|e| SweepError::Worker(e.to_string()))?;
        if result.status == ThueStatus::Solved {
            if let Err(v) = assert_bennett(&result) {
                log::error!("{v}");
                bennett.push(v);
            }
        }
        let record = ThueRecord {
            g: g.to_string(),
            status: result.status.as_str().to_string(),
            height: self.config.height.to_string(),
            precision_digits: (result.status != ThueStatus::SkippedReducible).then_some(result.precision_used),
            elapsed_ms: self.elapsed(started),
            solutions: result
                .solutions
                .iter()
                .map(|s| SolutionRecord { a: s.a.to_string(), b: s.b.to_string(), sign: s.sign })
                .collect(),
        };
        Ok((serde_json::to_string(&record).unwrap(), result.status.as_str()))
    }

    fn pib_record(
        &self,
        m: u64,
        started: Instant,
        bennett: &mut Vec<BennettViolation>,
    ) -> Result<(String, &'static str), SweepError> {
        let table = self.table.expect("pib mode builds a table");
        let param = classify_m(&BigInt::from(m), table).map_err(|e| SweepError::Worker(e.to_string()))?;
        let mut record = PibRecord {
            m: m.to_string(),
            status: STATUS_INADMISSIBLE.to_string(),
            admissible: param.is_admissible(),
            reasons: param.reasons().to_vec(),
            height: self.config.height.to_string(),
            precision_digits: None,
            elapsed_ms: None,
            generators: Vec::new(),
        };
        let mut status = STATUS_INADMISSIBLE;
        if param.is_admissible() {
            let set = generators_for_m_with(&param, &self.config.height, &self.opts).map_err(|e| SweepError::Worker(e.to_string()))?;
            let thue = set.thue.as_ref().expect("m > 1 goes through the Thue solver");
            if set.status == ThueStatus::Solved {
                if let Err(v) = assert_bennett(thue) {
                    log::error!("{v}");
                    bennett.push(v);
                }
            }
            status = set.status.as_str();
            record.status = status.to_string();
            record.precision_digits = Some(thue.precision_used);
            record.generators = set
                .generators
                .iter()
                .map(|g| GeneratorRecord { x: g.x.to_string(), y: g.y.to_string(), z: g.z.to_string() })
                .collect();
        }
        record.elapsed_ms = self.elapsed(started);
        Ok((serde_json::to_string(&record).unwrap(), status))
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> SweepError + '_ {
    move |source| SweepError::Io { path: path.into(), source }
}

fn prepare(config: &SweepConfig, hash: &str) -> Result<(Checkpoint, File), SweepError> {
    let total_blocks = config.total_blocks();
    let fresh = Checkpoint {
        config_hash: hash.to_string(),
        total_blocks,
        output: config.out.clone(),
        ..Default::default()
    };
    let existing = if config.resume && config.checkpoint.exists() {
        Some(Checkpoint::load(&config.checkpoint)?)
    } else {
        if config.resume {
            log::warn!("no checkpoint at {}, starting from scratch", config.checkpoint.display());
        }
        None
    };
    match existing {
        Some(cp) => {
            if cp.config_hash != hash {
                return Err(SweepError::ConfigMismatch {
                    path: config.checkpoint.clone(),
                    found: cp.config_hash,
                    expected: hash.to_string(),
                });
            }
            let file = OpenOptions::new().write(true).open(&config.out).map_err(io_err(&config.out))?;
            let len = file.metadata().map_err(io_err(&config.out))?.len();
            if len < cp.output_bytes {
                return Err(SweepError::BadCheckpoint {
                    path: config.checkpoint.clone(),
                    detail: format!("output holds {len} bytes, checkpoint expects {}", cp.output_bytes),
                });
            }
            file.set_len(cp.output_bytes).map_err(io_err(&config.out))?;
            log::info!("resuming at block {}/{}", cp.completed_blocks, cp.total_blocks);
            Ok((cp, file))
        }
        None => {
            let file = File::create(&config.out).map_err(io_err(&config.out))?;
            fresh.store(&config.checkpoint)?;
            Ok((fresh, file))
        }
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary, SweepError> {
    config.validate()?;
    let wall = Instant::now();
    let hash = config.hash();
    let (mut checkpoint, file) = prepare(config, &hash)?;
    let mut writer = BufWriter::new(file);
    {
        use std::io::Seek;
        writer.seek(std::io::SeekFrom::End(0)).map_err(io_err(&config.out))?;
    }

    let table = match config.mode {
        SweepMode::Pib => Some(SquarefreeTable::build(config.to)?),
        SweepMode::Thue => None,
    };
    let worker = Worker {
        config,
        table: table.as_ref(),
        opts: SolveOptions { precision: config.precision, ..Default::default() },
    };

    let mut summary = SweepSummary { resumed_from_block: checkpoint.completed_blocks, ..Default::default() };
    let total = checkpoint.total_blocks;
    let next_block = AtomicU64::new(checkpoint.completed_blocks);
    let stop = AtomicBool::new(false);

    let outcome: Result<(), SweepError> = thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<(u64, Result<BlockOutput, SweepError>)>();
        for _ in 0..config.jobs {
            let tx = tx.clone();
            let (worker, next_block, stop) = (&worker, &next_block, &stop);
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let block = next_block.fetch_add(1, Ordering::Relaxed);
                if block >= total {
                    break;
                }
                let result = worker.block(block);
                if tx.send((block, result)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending: BTreeMap<u64, BlockOutput> = BTreeMap::new();
        let result = (|| {
            for (block, result) in rx.iter() {
                pending.insert(block, result?);
                while let Some(out) = pending.remove(&checkpoint.completed_blocks) {
                    write_block(&mut writer, &config.out, &out)?;
                    checkpoint.completed_blocks += 1;
                    checkpoint.output_bytes += out.text.len() as u64;
                    checkpoint.records += out.records;
                    for (status, n) in out.counts {
                        *checkpoint.counts.entry(status.to_string()).or_default() += n;
                    }
                    checkpoint.store(&config.checkpoint)?;
                    summary.blocks_written += 1;
                    summary.max_record_ms = summary.max_record_ms.max(out.max_ms);
                    summary.bennett_violations.extend(out.bennett);
                    log::info!(
                        "block {}/{} written, {} records so far",
                        checkpoint.completed_blocks,
                        total,
                        checkpoint.records
                    );
                    if config.stop_after_blocks.is_some_and(|n| summary.blocks_written >= n)
                        && !checkpoint.is_finished()
                    {
                        summary.interrupted = true;
                        return Ok(());
                    }
                }
            }
            Ok(())
        })();
        stop.store(true, Ordering::Relaxed);
        drop(rx);
        result
    });
    outcome?;

    summary.counts = checkpoint.counts.clone();
    summary.records = checkpoint.records;
    summary.wall = wall.elapsed();
    Ok(summary)
}

fn write_block(writer: &mut BufWriter<File>, path: &Path, out: &BlockOutput) -> Result<(), SweepError> {
    writer.write_all(out.text.as_bytes()).map_err(io_err(path))?;
    writer.flush().map_err(io_err(path))?;
    writer.get_ref().sync_data().map_err(io_err(path))
}

/// Reads a JSONL file of Thue records.
pub fn read_thue_records(path: &Path) -> Result<Vec<ThueRecord>, SweepError> {
    read_records(path)
}

/// Reads a JSONL file of pib records.
pub fn read_pib_records(path: &Path) -> Result<Vec<PibRecord>, SweepError> {
    read_records(path)
}

fn read_records<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, SweepError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| SweepError::BadCheckpoint {
                path: path.into(),
                detail: format!("line {}: {e}", i + 1),
            })
        })
        .collect()
}
