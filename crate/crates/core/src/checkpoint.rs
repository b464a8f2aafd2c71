//! Append-only record of finished root pairs, so an interrupted or sharded
//! search can be resumed and merged.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{Family, Int};
use crate::search::{Pair, RawOutput};

#[derive(Serialize, Deserialize)]
struct Entry {
    dim: usize,
    k: i64,
    pair: Pair,
    sporadic: Vec<Vec<Int>>,
    families: Vec<Family>,
    unsupported: Vec<String>,
}

/// Finished root pairs of one `(dim, k)` run, one JSON object per line.
pub struct Checkpoint {
    dim: usize,
    k: i64,
    done: BTreeSet<Pair>,
    output: RawOutput,
    writer: Option<Mutex<File>>,
}

impl Checkpoint {
    /// Reads every given file; entries for another `(dim, k)` are ignored. A
    /// truncated final line (from a killed run) is skipped.
    pub fn load(dim: usize, k: i64, paths: &[PathBuf]) -> Result<Self, Error> {
        let mut done = BTreeSet::new();
        let mut output = RawOutput::default();
        for path in paths {
            if !path.exists() {
                continue;
            }
            let lines: Vec<String> = BufReader::new(File::open(path)?).lines().collect::<Result<_, _>>()?;
            let last = lines.len();
            for (i, line) in lines.iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let entry: Entry = match serde_json::from_str(line) {
                    Ok(e) => e,
                    Err(_) if i + 1 == last => continue,
                    Err(e) => {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: format!("{}: {e}", path.display()),
                        })
                    }
                };
                if entry.dim != dim || entry.k != k {
                    continue;
                }
                done.insert(entry.pair);
                output.sporadic.extend(entry.sporadic);
                output.families.extend(entry.families);
                output.unsupported.extend(entry.unsupported);
            }
        }
        Ok(Checkpoint {
            dim,
            k,
            done,
            output,
            writer: None,
        })
    }

    /// New results are appended to `path`, after cutting off a partial
    /// final line left by a killed run.
    pub fn append_to(mut self, path: &Path) -> Result<Self, Error> {
        if path.exists() {
            let bytes = std::fs::read(path)?;
            if !bytes.is_empty() && !bytes.ends_with(b"\n") {
                let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
                OpenOptions::new().write(true).open(path)?.set_len(keep as u64)?;
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        self.writer = Some(Mutex::new(file));
        Ok(self)
    }

    pub fn done(&self) -> &BTreeSet<Pair> {
        &self.done
    }

    pub fn output(&self) -> &RawOutput {
        &self.output
    }

    pub fn record(&self, pair: Pair, out: &RawOutput) -> Result<(), Error> {
        let Some(writer) = &self.writer else {
            return Ok(());
        };
        let entry = Entry {
            dim: self.dim,
            k: self.k,
            pair,
            sporadic: out.sporadic.iter().cloned().collect(),
            families: out.families.iter().cloned().collect(),
            unsupported: out.unsupported.clone(),
        };
        let mut line = serde_json::to_string(&entry).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        line.push('\n');
        let mut f = writer.lock().unwrap_or_else(|e| e.into_inner());
        f.write_all(line.as_bytes())?;
        f.flush()?;
        Ok(())
    }
}
