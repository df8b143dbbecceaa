//! Line-oriented field cache: one record per line, `D,r1,r2,h` with h empty
//! when not computed, sorted by |D| then D, no header. Parsing and rendering
//! round-trip byte-exactly.

use crate::error::{Error, Result};
use crate::fields::quadratic::{is_fundamental, QuadraticField};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub d: i64,
    pub r1: u32,
    pub r2: u32,
    pub h: Option<u64>,
}

impl CacheEntry {
    pub fn from_field(k: &QuadraticField, h: Option<u64>) -> CacheEntry {
        CacheEntry { d: k.d, r1: k.r1(), r2: k.r2(), h }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldCache {
    pub entries: Vec<CacheEntry>,
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::CacheFormat { line, msg: msg.into() }
}

impl FieldCache {
    pub fn parse(text: &str) -> Result<FieldCache> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.is_empty() {
                return Err(bad(line, "empty line"));
            }
            let parts: Vec<&str> = raw.split(',').collect();
            if parts.len() != 4 {
                return Err(bad(line, format!("expected 4 comma-separated fields, got {}", parts.len())));
            }
            let d: i64 = parts[0].parse().map_err(|_| bad(line, format!("bad discriminant {:?}", parts[0])))?;
            if !is_fundamental(d) {
                return Err(bad(line, format!("{d} is not a fundamental discriminant")));
            }
            let r1: u32 = parts[1].parse().map_err(|_| bad(line, format!("bad r1 {:?}", parts[1])))?;
            let r2: u32 = parts[2].parse().map_err(|_| bad(line, format!("bad r2 {:?}", parts[2])))?;
            let expected = if d > 0 { (2, 0) } else { (0, 1) };
            if (r1, r2) != expected {
                return Err(bad(line, format!("signature ({r1}, {r2}) does not match the sign of {d}")));
            }
            let h = if parts[3].is_empty() {
                None
            } else {
                let h: u64 = parts[3].parse().map_err(|_| bad(line, format!("bad class number {:?}", parts[3])))?;
                if h == 0 {
                    return Err(bad(line, "class number must be positive"));
                }
                Some(h)
            };
            if let Some(prev) = entries.last() {
                let prev: &CacheEntry = prev;
                if (prev.d.unsigned_abs(), prev.d) >= (d.unsigned_abs(), d) {
                    return Err(bad(line, format!("out of order: {} then {}", prev.d, d)));
                }
            }
            entries.push(CacheEntry { d, r1, r2, h });
        }
        Ok(FieldCache { entries })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.d.to_string());
            out.push(',');
            out.push_str(&e.r1.to_string());
            out.push(',');
            out.push_str(&e.r2.to_string());
            out.push(',');
            if let Some(h) = e.h {
                out.push_str(&h.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn load(path: &Path) -> Result<FieldCache> {
        let text = std::fs::read_to_string(path)?;
        FieldCache::parse(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn get(&self, d: i64) -> Option<&CacheEntry> {
        self.entries
            .binary_search_by_key(&(d.unsigned_abs(), d), |e| (e.d.unsigned_abs(), e.d))
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Insert or update, preserving the sort order.
    pub fn put(&mut self, entry: CacheEntry) {
        match self
            .entries
            .binary_search_by_key(&(entry.d.unsigned_abs(), entry.d), |e| (e.d.unsigned_abs(), e.d))
        {
            Ok(i) => self.entries[i] = entry,
            Err(i) => self.entries.insert(i, entry),
        }
    }
}
