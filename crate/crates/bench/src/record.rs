//! Measurement rows and their CSV form.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::plan::Phase;
use crate::BenchError;

pub const CSV_HEADER: &str =
    "impl,config,phase,ops,total_ns,ns_per_op,backyard_len,metadata_bits,seed,repetition";

/// One timed phase of one repetition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    #[serde(rename = "impl")]
    pub impl_name: String,
    /// `B_B̂_ô_t̂` for slick tables, empty for baselines.
    pub config: String,
    pub phase: Phase,
    pub ops: u64,
    pub total_ns: u64,
    pub ns_per_op: f64,
    pub backyard_len: Option<u64>,
    pub metadata_bits: Option<u64>,
    pub seed: u64,
    pub repetition: u32,
}

impl BenchRecord {
    fn sort_key(&self) -> (&str, &str, Phase, u32) {
        (&self.impl_name, &self.config, self.phase, self.repetition)
    }
}

/// Sorts by `(impl, config, phase, repetition)`.
pub fn sort_records(records: &mut [BenchRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

pub fn write_csv_to<W: Write>(records: &[BenchRecord], out: W) -> Result<(), csv::Error> {
    let mut sorted = records.to_vec();
    sort_records(&mut sorted);
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in &sorted {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(records: &[BenchRecord], path: &Path) -> Result<(), BenchError> {
    let with_path = |source: io::Error| BenchError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(with_path)?;
    write_csv_to(records, io::BufWriter::new(file)).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(source) => with_path(source),
        other => BenchError::Parse(format!("{other:?}")),
    })
}

pub fn read_csv(path: &Path) -> Result<Vec<BenchRecord>, BenchError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| BenchError::Parse(format!("{}: {e}", path.display())))?;
    let header = reader
        .headers()
        .map_err(|e| BenchError::Parse(e.to_string()))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CSV_HEADER {
        return Err(BenchError::Parse(format!("unexpected header `{header}`")));
    }
    reader
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| BenchError::Parse(format!("{}: {e}", path.display())))
}
