//! Files written by `sweep`: `ber.csv`, one `.dat` per curve, `ber.gp` and
//! `manifest.json`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use wavephy::BerRecord;

pub const CSV_HEADER: &str =
    "snr_db,modulation,code_rate,pilot_scheme,estimator,channel,bits,bit_errors,ber,seed,max_run,sef";

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    snr_db: f64,
    modulation: &'a str,
    code_rate: &'a str,
    pilot_scheme: &'a str,
    estimator: &'a str,
    channel: &'a str,
    bits: u64,
    bit_errors: u64,
    ber: f64,
    seed: u64,
    max_run: usize,
    sef: f64,
}

fn code_rate(r: &BerRecord) -> &'static str {
    r.code_rate.map_or("uncoded", |c| c.name())
}

fn row(r: &BerRecord) -> CsvRow<'_> {
    CsvRow {
        snr_db: r.snr_db,
        modulation: r.modulation.name(),
        code_rate: code_rate(r),
        pilot_scheme: &r.pilot_scheme,
        estimator: r.estimator.name(),
        channel: r.channel.name(),
        bits: r.bits,
        bit_errors: r.bit_errors,
        ber: r.ber,
        seed: r.seed,
        max_run: r.max_run,
        sef: r.sef,
    }
}

/// CSV text for the successful records, in their given order.
pub fn csv_text(records: &[BerRecord]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records.iter().filter(|r| r.error.is_none()) {
        w.serialize(row(r))?;
    }
    if records.iter().all(|r| r.error.is_some()) {
        w.write_record(CSV_HEADER.split(','))?;
    }
    Ok(w.into_inner()?)
}

/// One curve: the key and the records along SNR.
type Curve<'a> = ((String, String, String), Vec<&'a BerRecord>);

fn curves(records: &[BerRecord]) -> Vec<Curve<'_>> {
    let mut out: Vec<Curve<'_>> = Vec::new();
    for r in records.iter().filter(|r| r.error.is_none()) {
        let key = (
            r.pilot_scheme.clone(),
            r.estimator.name().to_string(),
            format!("{}-{}", r.modulation.name(), code_rate(r)),
        );
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(r),
            None => out.push((key, vec![r])),
        }
    }
    out
}

fn dat_name((scheme, est, mcs): &(String, String, String)) -> String {
    let mcs: String = mcs
        .chars()
        .filter_map(|c| match c {
            '/' => None,
            '-' => Some('_'),
            c => Some(c),
        })
        .collect();
    format!("ber_{scheme}_{est}_{mcs}.dat")
}

fn dat_text(key: &(String, String, String), recs: &[&BerRecord]) -> String {
    let mut s = format!(
        "# {} {} {} {}\n# snr_db ebn0_db ber bit_errors bits\n",
        key.0,
        key.1,
        key.2,
        recs.first().map_or("", |r| r.channel.name())
    );
    for r in recs {
        s += &format!("{} {:.6} {:e} {} {}\n", r.snr_db, r.ebn0_db, r.ber, r.bit_errors, r.bits);
    }
    s
}

fn gnuplot_text(curves: &[(String, String)]) -> String {
    let mut s = String::from(
        "set terminal pngcairo size 1000,650\n\
         set output 'ber.png'\n\
         set logscale y\n\
         set format y '10^{%L}'\n\
         set xlabel 'SNR (dB)'\n\
         set ylabel 'BER'\n\
         set grid\n\
         set key outside right\n",
    );
    let plots: Vec<String> = curves
        .iter()
        .map(|(file, title)| format!("'{file}' using 1:3 with linespoints title '{title}'"))
        .collect();
    if !plots.is_empty() {
        s += "plot ";
        s += &plots.join(", \\\n     ");
        s += "\n";
    }
    s
}

#[derive(Debug, Serialize)]
struct FileEntry {
    path: String,
    sha256: String,
    bytes: usize,
}

#[derive(Debug, Serialize)]
struct RunManifest {
    tool: &'static str,
    version: &'static str,
    timestamp: String,
    config: PathBuf,
    output_dir: PathBuf,
    overrides: BTreeMap<String, String>,
    files: Vec<FileEntry>,
}

pub struct RunInfo {
    pub config: PathBuf,
    pub out: PathBuf,
    pub overrides: Vec<(String, String)>,
}

fn write(dir: &Path, name: &str, data: &[u8], files: &mut Vec<FileEntry>) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, data).with_context(|| format!("cannot write {}", path.display()))?;
    files.push(FileEntry {
        path: name.to_string(),
        sha256: hex::encode(Sha256::digest(data)),
        bytes: data.len(),
    });
    Ok(())
}

pub fn write_all(run: &RunInfo, records: &[BerRecord]) -> Result<()> {
    fs::create_dir_all(&run.out)
        .with_context(|| format!("cannot create {}", run.out.display()))?;
    let mut files = Vec::new();
    write(&run.out, "ber.csv", &csv_text(records)?, &mut files)?;
    let mut plotted = Vec::new();
    for (key, recs) in curves(records) {
        let name = dat_name(&key);
        write(&run.out, &name, dat_text(&key, &recs).as_bytes(), &mut files)?;
        plotted.push((name, format!("{} {} {}", key.0, key.1, key.2)));
    }
    write(&run.out, "ber.gp", gnuplot_text(&plotted).as_bytes(), &mut files)?;
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        timestamp: chrono::Utc::now().to_rfc3339(),
        config: run.config.clone(),
        output_dir: run.out.clone(),
        overrides: run.overrides.iter().cloned().collect(),
        files,
    };
    let json = serde_json::to_vec_pretty(&manifest)?;
    fs::write(run.out.join("manifest.json"), json).context("cannot write manifest")?;
    Ok(())
}
