//! Ledger snapshots for resuming long folds.
//!
//! A snapshot is one JSON header line followed by little-endian records
//! `(key: u128, coefficient: i64)`. Files are written to a temporary name and
//! renamed, so a crash leaves the previous snapshot intact.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ledger::{KeyLayout, PackedKey, ShiftLedger};
use crate::error::{Error, Result};

const FILE_NAME: &str = "ledger.ckpt";

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    fingerprint: String,
    layout: KeyLayout,
    folded: usize,
    entries: usize,
}

/// Fingerprint of a fold run: the label and the fold order.
pub(crate) fn fingerprint(label: &str, roots: &[Vec<i32>]) -> String {
    let mut h = Sha256::new();
    h.update(label.as_bytes());
    for r in roots {
        h.update(format!("{r:?}").as_bytes());
    }
    hex::encode(h.finalize())
}

/// Snapshot I/O.
pub struct Checkpoint;

impl Checkpoint {
    pub fn path(dir: &Path) -> PathBuf {
        dir.join(FILE_NAME)
    }

    /// Writes the ledger atomically.
    pub fn save<K: PackedKey>(dir: &Path, fingerprint: &str, ledger: &ShiftLedger<K>) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let tmp = dir.join(format!("{FILE_NAME}.tmp"));
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            let header = Header {
                fingerprint: fingerprint.to_string(),
                layout: ledger.layout().clone(),
                folded: ledger.folded(),
                entries: ledger.len(),
            };
            serde_json::to_writer(&mut w, &header)?;
            w.write_all(b"\n")?;
            for &(k, c) in ledger.entries() {
                w.write_all(&k.to_u128().to_le_bytes())?;
                w.write_all(&c.to_le_bytes())?;
            }
            w.flush()?;
            w.get_ref().sync_all()?;
        }
        std::fs::rename(&tmp, Self::path(dir))?;
        Ok(())
    }

    /// Loads a snapshot if one exists for this run. A snapshot for a
    /// different run is an error rather than silently discarded.
    pub fn load<K: PackedKey>(dir: &Path, fingerprint: &str, layout: &KeyLayout) -> Result<Option<ShiftLedger<K>>> {
        let path = Self::path(dir);
        if !path.exists() {
            return Ok(None);
        }
        let mut r = BufReader::new(File::open(&path)?);
        let mut line = String::new();
        r.read_line(&mut line)?;
        let header: Header =
            serde_json::from_str(line.trim_end()).map_err(|e| Error::Checkpoint(format!("bad header: {e}")))?;
        if header.fingerprint != fingerprint || &header.layout != layout {
            return Err(Error::Checkpoint(format!(
                "{} belongs to a different computation; remove it or choose another directory",
                path.display()
            )));
        }
        let mut entries = Vec::with_capacity(header.entries);
        let mut buf = [0u8; 24];
        for _ in 0..header.entries {
            r.read_exact(&mut buf).map_err(|e| Error::Checkpoint(format!("truncated snapshot: {e}")))?;
            let k = u128::from_le_bytes(buf[..16].try_into().unwrap());
            let c = i64::from_le_bytes(buf[16..].try_into().unwrap());
            entries.push((K::from_u128(k), c));
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Checkpoint("snapshot keys are not strictly increasing".into()));
        }
        Ok(Some(ShiftLedger::from_parts(layout.clone(), entries, header.folded)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let roots = vec![vec![1, 0], vec![1, 1], vec![0, 1]];
        let layout = KeyLayout::for_roots(2, &roots).unwrap();
        let mut l: ShiftLedger<u64> = ShiftLedger::new(layout.clone());
        l.fold(&roots[0]).unwrap();
        l.fold(&roots[1]).unwrap();
        Checkpoint::save(dir.path(), "abc", &l).unwrap();
        let back: ShiftLedger<u64> = Checkpoint::load(dir.path(), "abc", &layout).unwrap().unwrap();
        assert_eq!(back.entries(), l.entries());
        assert_eq!(back.folded(), 2);
        assert!(Checkpoint::load::<u64>(dir.path(), "other", &layout).is_err());
    }
}
