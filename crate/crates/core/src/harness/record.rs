use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::stats::StatRecord;
use crate::{Error, Result};

/// One rung of a decay ladder; also the CSV row `statistic,M,H,value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderRow {
    pub statistic: String,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "H")]
    pub h: u64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub experiment: String,
    pub config_hash: String,
    pub version: String,
    pub wall_time_s: f64,
    pub threads: usize,
    pub seed: u64,
    /// The configuration text exactly as given.
    pub config: String,
    pub records: Vec<StatRecord>,
    pub ladders: Vec<LadderRow>,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

/// `sha256` of the config text, hex encoded.
pub fn config_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn version_string() -> String {
    format!("nilorth-{}", env!("CARGO_PKG_VERSION"))
}

pub fn write_ladder_csv<W: Write>(out: W, rows: &[LadderRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    if rows.is_empty() {
        w.write_record(["statistic", "M", "H", "value"]).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_ladder_csv(path: &Path) -> Result<Vec<LadderRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    r.deserialize().map(|row| row.map_err(|e| Error::Parse(e.to_string()))).collect()
}

impl RunRecord {
    /// Writes the JSON record and the ladder CSV into `dir`.
    pub fn write(&self, dir: &Path, json: &str, csv: &str) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Io(std::io::Error::other(e)))?;
        std::fs::write(dir.join(json), text + "\n")?;
        write_ladder_csv(std::fs::File::create(dir.join(csv))?, &self.ladders)
    }
}
