//! On-disk spectrum cache keyed by a SHA-256 of every input that affects the result.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::Tolerances;
use crate::operators::{OperatorParams, ThetaScope};
use crate::spectra::{GridSpec, SpectrumSet};

use super::io::{read_spectrum_csv, write_spectrum_csv, ARTIFACT_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey(String);

impl CacheKey {
    pub fn new(params: &OperatorParams, grid: &GridSpec, tol: &Tolerances) -> Self {
        let (scope, theta) = match params.theta {
            ThetaScope::Mother => ("mother", 0u64),
            ThetaScope::Fixed(t) => ("fixed", t.to_bits()),
        };
        let canonical = format!(
            "kind={}|kappa={:016x}|lambda={:016x}|p={}|q={}|scope={scope}|theta={theta:016x}|n_x={}|n_theta={}|tol={:016x},{:016x},{:016x},{:016x}|version={ARTIFACT_VERSION}",
            params.kind,
            params.kappa.to_bits(),
            params.lambda.to_bits(),
            params.alpha.p(),
            params.alpha.q(),
            grid.n_x,
            grid.n_theta,
            tol.hermitian.to_bits(),
            tol.unitary.to_bits(),
            tol.eig_residual.to_bits(),
            tol.dedup.to_bits(),
        );
        let digest = Sha256::digest(canonical.as_bytes());
        let mut hex = String::with_capacity(64);
        for b in digest.iter() {
            let _ = write!(hex, "{b:02x}");
        }
        CacheKey(hex)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.csv", key.as_str()))
    }

    /// Returns the cached set, or computes and stores it.
    pub fn get_or_compute(
        &self,
        params: &OperatorParams,
        grid: &GridSpec,
        compute: impl FnOnce() -> Result<SpectrumSet>,
    ) -> Result<SpectrumSet> {
        let key = CacheKey::new(params, grid, &Tolerances::default());
        let path = self.path_for(&key);
        if path.exists() {
            // A corrupt entry is recomputed rather than trusted.
            if let Ok(s) = read_spectrum_csv(&path) {
                if s.params() == params && s.grid() == grid {
                    return Ok(s);
                }
            }
        }
        let s = compute()?;
        std::fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        write_spectrum_csv(&s, &path)?;
        Ok(s)
    }

    /// Deletes every cache entry; returns how many files were removed.
    pub fn clear(&self) -> Result<usize> {
        if !self.dir.exists() {
            return Ok(0);
        }
        let mut n = 0;
        for entry in std::fs::read_dir(&self.dir).map_err(|e| Error::io(&self.dir, e))? {
            let path = entry.map_err(|e| Error::io(&self.dir, e))?.path();
            if is_entry(&path) {
                std::fs::remove_file(&path).map_err(|e| Error::io(&path, e))?;
                n += 1;
            }
        }
        Ok(n)
    }
}

fn is_entry(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "csv")
        && path
            .file_stem()
            .and_then(|s| s.to_str())
            .is_some_and(|s| s.len() == 64 && s.bytes().all(|b| b.is_ascii_hexdigit()))
}
