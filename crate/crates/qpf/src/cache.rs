//! One JSON file per sweep point, keyed by `(L, d_max, variant)`.
//!
//! Files are written to a temporary name and renamed into place, so a point is
//! either fully present or absent. Stored values are replayed verbatim,
//! including the original wall time, which keeps re-emitted sweeps byte-identical.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use qpf_core::qpf::BoundVariant;
use qpf_core::scaling::ScalingPoint;

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct CachedPoint {
    #[serde(rename = "L")]
    l: u32,
    d_max: u32,
    r: u64,
    variant: String,
    s: f64,
    seconds: f64,
}

#[derive(Debug, Clone)]
pub struct SweepCache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl SweepCache {
    pub fn open(dir: impl Into<PathBuf>) -> AppResult<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(AppError::io(&dir))?;
        Ok(SweepCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, l: u32, d_max: u32, variant: BoundVariant) -> PathBuf {
        self.dir.join(format!("s_L{l}_d{d_max}_{}.json", variant.as_str()))
    }

    pub fn load(&self, l: u32, d_max: u32, variant: BoundVariant) -> AppResult<Option<ScalingPoint>> {
        let path = self.path_for(l, d_max, variant);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(AppError::Io { path, source: e }),
        };
        let c: CachedPoint = serde_json::from_str(&text)
            .map_err(|e| AppError::Format(format!("{}: {e}", path.display())))?;
        if c.l != l || c.d_max != d_max || c.variant != variant.as_str() {
            return Err(AppError::Format(format!("{}: entry does not match its key", path.display())));
        }
        Ok(Some(ScalingPoint { l: c.l, d_max: c.d_max, r: c.r, s: c.s, seconds: c.seconds }))
    }

    pub fn store(&self, p: &ScalingPoint, variant: BoundVariant) -> AppResult<()> {
        let c = CachedPoint {
            l: p.l,
            d_max: p.d_max,
            r: p.r,
            variant: variant.as_str().to_owned(),
            s: p.s,
            seconds: p.seconds,
        };
        let path = self.path_for(p.l, p.d_max, variant);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_string_pretty(&c)? + "\n").map_err(AppError::io(&tmp))?;
        fs::rename(&tmp, &path).map_err(AppError::io(&path))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_exact_bits() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SweepCache::open(dir.path().join("c")).unwrap();
        let p = ScalingPoint::new(9, 2, 0.424_543_398_123_456_78, 0.0123);
        assert_eq!(cache.load(9, 2, BoundVariant::Physical).unwrap(), None);
        cache.store(&p, BoundVariant::Physical).unwrap();
        let back = cache.load(9, 2, BoundVariant::Physical).unwrap().unwrap();
        assert_eq!(back.s.to_bits(), p.s.to_bits());
        assert_eq!(back, p);
        assert_eq!(cache.load(9, 2, BoundVariant::PaperLiteral).unwrap(), None);
    }

    #[test]
    fn mismatched_entry_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SweepCache::open(dir.path()).unwrap();
        cache.store(&ScalingPoint::new(5, 1, 0.5, 0.0), BoundVariant::Physical).unwrap();
        fs::rename(
            cache.path_for(5, 1, BoundVariant::Physical),
            cache.path_for(6, 1, BoundVariant::Physical),
        )
        .unwrap();
        assert!(cache.load(6, 1, BoundVariant::Physical).is_err());
    }
}
