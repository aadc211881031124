//! Content-addressed store of expanded series.

use std::fs;
use std::io;
use std::path::PathBuf;

use mockchar::{Exp, QSeries};
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// Hex SHA-256 of the canonical name, the order and the library version.
    pub fn key(name: &str, order: Exp) -> String {
        let material = format!("{name}\n{}/{}\n{}", order.numer(), order.denom(), env!("CARGO_PKG_VERSION"));
        hex::encode(Sha256::digest(material.as_bytes()))
    }

    fn path(&self, name: &str, order: Exp) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(name, order)))
    }

    /// A cached series, if present and readable. Corrupt entries are
    /// treated as misses.
    pub fn load(&self, name: &str, order: Exp) -> Option<QSeries> {
        let text = fs::read_to_string(self.path(name, order)).ok()?;
        QSeries::from_json(&text).ok()
    }

    pub fn store(&self, name: &str, order: Exp, s: &QSeries) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let dest = self.path(name, order);
        let tmp = dest.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, s.to_json())?;
        fs::rename(tmp, dest)
    }
}
