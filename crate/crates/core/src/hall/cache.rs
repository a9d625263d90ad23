//! Persistent Hall-polynomial cache.
//!
//! One record per line, `M|N|X|c0,c1,...`, with `M`, `N`, `X` in the
//! multisegment grammar and ascending `q`-coefficients (`0` for the zero
//! polynomial). Keys do not depend on the ambient rank, since Hall
//! polynomials of the equioriented quiver do not either.

use std::collections::{BTreeMap, HashMap};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::QPolynomial;
use crate::repquiver::Multisegment;

/// One cache line: `F^X_{M,N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRecord {
    pub quotient: Multisegment,
    pub sub: Multisegment,
    pub total: Multisegment,
    pub poly: QPolynomial,
}

impl CacheRecord {
    pub fn key(&self) -> String {
        cache_key(&self.quotient, &self.sub, &self.total)
    }

    pub fn render(&self) -> String {
        format!("{}|{}", self.key(), render_coeffs(&self.poly))
    }
}

pub fn cache_key(quotient: &Multisegment, sub: &Multisegment, total: &Multisegment) -> String {
    format!("{quotient}|{sub}|{total}")
}

fn render_coeffs(p: &QPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses and validates one record; positions in errors are byte offsets into `line`.
pub fn parse_cache_record(line: &str) -> Result<CacheRecord> {
    let mut fields = Vec::with_capacity(4);
    let mut start = 0usize;
    for (idx, ch) in line.char_indices() {
        if ch == '|' {
            fields.push((start, &line[start..idx]));
            start = idx + 1;
        }
    }
    fields.push((start, &line[start..]));
    if fields.len() != 4 {
        return Err(Error::parse(
            line.len(),
            format!("expected 4 fields, found {}", fields.len()),
        ));
    }
    let ms = |(off, text): (usize, &str)| {
        Multisegment::parse_any_rank(text).map_err(|e| shift_pos(e, off))
    };
    let quotient = ms(fields[0])?;
    let sub = ms(fields[1])?;
    let total = ms(fields[2])?;
    let (off, coeff_text) = fields[3];
    let mut coeffs = Vec::new();
    let mut pos = off;
    for piece in coeff_text.split(',') {
        let trimmed = piece.trim();
        let c: BigInt = trimmed
            .parse()
            .map_err(|_| Error::parse(pos, format!("invalid coefficient {trimmed:?}")))?;
        coeffs.push(c);
        pos += piece.len() + 1;
    }
    let rank = quotient.rank().max(sub.rank()).max(total.rank());
    let widen = |m: &Multisegment| m.with_rank(rank).expect("rank only grows");
    let lhs = widen(&quotient)
        .dim_vector()
        .add(&widen(&sub).dim_vector())?;
    if lhs != widen(&total).dim_vector() {
        return Err(Error::parse(
            fields[2].0,
            "dim M + dim N differs from dim X",
        ));
    }
    Ok(CacheRecord {
        quotient,
        sub,
        total,
        poly: QPolynomial::from_coeffs(coeffs),
    })
}

fn shift_pos(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    }
}

/// Concurrent lookups, serialized idempotent inserts, append-only persistence.
#[derive(Debug, Default)]
pub struct HallCache {
    path: Option<PathBuf>,
    entries: RwLock<HashMap<String, QPolynomial>>,
    pending: Mutex<BTreeMap<String, QPolynomial>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl HallCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; new entries are appended to it by [`HallCache::flush`].
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            let file = std::fs::File::open(&path)
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
            for (idx, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec = parse_cache_record(&line)
                    .map_err(|e| Error::Cache(format!("{}:{}: {e}", path.display(), idx + 1)))?;
                let key = rec.key();
                match entries.get(&key) {
                    Some(old) if old != &rec.poly => {
                        return Err(Error::Cache(format!(
                            "{}:{}: conflicting payloads for {key}",
                            path.display(),
                            idx + 1
                        )))
                    }
                    _ => {
                        entries.insert(key, rec.poly);
                    }
                }
            }
        }
        Ok(Self {
            path: Some(path),
            entries: RwLock::new(entries),
            ..Self::default()
        })
    }

    pub fn get(
        &self,
        quotient: &Multisegment,
        sub: &Multisegment,
        total: &Multisegment,
    ) -> Option<QPolynomial> {
        let found = self
            .entries
            .read()
            .expect("cache lock")
            .get(&cache_key(quotient, sub, total))
            .cloned();
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Inserting an existing key with an equal value is a no-op; a different value is an error.
    pub fn insert(
        &self,
        quotient: &Multisegment,
        sub: &Multisegment,
        total: &Multisegment,
        poly: QPolynomial,
    ) -> Result<()> {
        let key = cache_key(quotient, sub, total);
        let mut entries = self.entries.write().expect("cache lock");
        match entries.get(&key) {
            Some(old) if old == &poly => Ok(()),
            Some(old) => Err(Error::Cache(format!(
                "conflicting values for {key}: {old} vs {poly}"
            ))),
            None => {
                entries.insert(key.clone(), poly.clone());
                if self.path.is_some() {
                    self.pending.lock().expect("cache lock").insert(key, poly);
                }
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(hits, misses)` of [`HallCache::get`] so far.
    pub fn stats(&self) -> (u64, u64) {
        (
            self.hits.load(Ordering::Relaxed),
            self.misses.load(Ordering::Relaxed),
        )
    }

    /// Appends the entries inserted since the last flush, in key order.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut pending = self.pending.lock().expect("cache lock");
        if pending.is_empty() {
            return Ok(());
        }
        let mut out = String::new();
        for (key, poly) in pending.iter() {
            out.push_str(key);
            out.push('|');
            out.push_str(&render_coeffs(poly));
            out.push('\n');
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        file.write_all(out.as_bytes())
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        pending.clear();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_roundtrip() {
        let rec = parse_cache_record("[1..1]|[1..1]|[1..1]^2|1,1").unwrap();
        assert_eq!(rec.poly, QPolynomial::from_i64s(&[1, 1]));
        assert_eq!(rec.render(), "[1..1]|[1..1]|[1..1]^2|1,1");
        let zero = parse_cache_record("[2..2]|[1..1]|[1..2]|0").unwrap();
        assert!(zero.poly.is_zero());
        assert_eq!(zero.render(), "[2..2]|[1..1]|[1..2]|0");
        // Rank-agnostic: the empty multisegment fits anywhere.
        assert!(parse_cache_record("0|[1..3]|[1..3]|1").is_ok());
    }

    #[test]
    fn record_errors() {
        assert!(matches!(
            parse_cache_record("[1..1]|[1..1]|[1..1]"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cache_record("[1..1]|[1..1]|[1..1]^2|x"),
            Err(Error::Parse { pos: 23, .. })
        ));
        assert!(matches!(
            parse_cache_record("[1..1]|[2..1]|[1..1]^2|1"),
            Err(Error::Parse { pos: 8, .. })
        ));
        assert!(parse_cache_record("[1..1]|[1..1]|[1..2]|1").is_err());
    }

    #[test]
    fn persistence_and_conflicts() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hall.cache");
        let s1 = Multisegment::parse("[1..1]", 1).unwrap();
        let x = Multisegment::parse("[1..1]^2", 1).unwrap();
        let cache = HallCache::open(&path).unwrap();
        cache
            .insert(&s1, &s1, &x, QPolynomial::from_i64s(&[1, 1]))
            .unwrap();
        cache
            .insert(&s1, &s1, &x, QPolynomial::from_i64s(&[1, 1]))
            .unwrap();
        assert!(cache
            .insert(&s1, &s1, &x, QPolynomial::from_i64s(&[2]))
            .is_err());
        cache.flush().unwrap();
        cache.flush().unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            "[1..1]|[1..1]|[1..1]^2|1,1\n"
        );

        let warm = HallCache::open(&path).unwrap();
        assert_eq!(
            warm.get(&s1, &s1, &x),
            Some(QPolynomial::from_i64s(&[1, 1]))
        );
        assert_eq!(warm.stats(), (1, 0));

        std::fs::write(
            &path,
            "[1..1]|[1..1]|[1..1]^2|1,1\n[1..1]|[1..1]|[1..1]^2|1,2\n",
        )
        .unwrap();
        assert!(matches!(HallCache::open(&path), Err(Error::Cache(_))));
    }
}
