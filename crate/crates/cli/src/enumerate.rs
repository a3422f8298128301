use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use h2knot_core::{mod_inverse, normalize, u2_classify, units_of, U2Classification};
use rayon::prelude::*;

use crate::CliResult;

/// Class representatives `(p, q)`: `q` is the smaller of `q` and `q^{-1} mod p`.
fn representatives(max_p: u64, knots_only: bool) -> Vec<(u64, u64)> {
    (2..=max_p)
        .filter(|p| !knots_only || p % 2 == 1)
        .flat_map(|p| {
            units_of(p)
                .into_iter()
                .filter(move |&q| q <= mod_inverse(q as i64, p).expect("unit"))
                .map(move |q| (p, q))
        })
        .collect()
}

pub struct CacheLoad {
    pub entries: HashMap<(u64, u64), U2Classification>,
    pub skipped: usize,
}

/// Reads a JSON-lines cache. Unparseable or inconsistent lines are skipped.
pub fn load_cache(path: &Path) -> CliResult<CacheLoad> {
    let mut entries = HashMap::new();
    let mut skipped = 0;
    if !path.exists() {
        return Ok(CacheLoad { entries, skipped });
    }
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<U2Classification>(&line) {
            Ok(c) if normalize(c.p as i64, c.q as i64).map(|l| (l.p(), l.q())) == Ok((c.p, c.q)) => {
                entries.insert((c.p, c.q), c);
            }
            _ => skipped += 1,
        }
    }
    Ok(CacheLoad { entries, skipped })
}

/// One classification per class of normalized `(p, q)` with `2 <= p <= max_p`,
/// ordered by `p` then `q`.
pub fn enumerate(
    max_p: u64,
    knots_only: bool,
    cache: Option<&Path>,
    err: &mut dyn Write,
) -> CliResult<Vec<U2Classification>> {
    let reps = representatives(max_p, knots_only);
    let loaded = match cache {
        Some(path) => load_cache(path)?,
        None => CacheLoad { entries: HashMap::new(), skipped: 0 },
    };
    if loaded.skipped > 0 {
        writeln!(err, "warning: skipped {} corrupt cache line(s)", loaded.skipped)?;
    }
    let records: Vec<(U2Classification, bool)> = reps
        .par_iter()
        .map(|&(p, q)| match loaded.entries.get(&(p, q)) {
            Some(c) => (c.clone(), false),
            None => (u2_classify(&normalize(p as i64, q as i64).expect("unit")), true),
        })
        .collect();

    if let Some(path) = cache {
        let fresh: Vec<&U2Classification> = records.iter().filter(|(_, new)| *new).map(|(c, _)| c).collect();
        if !fresh.is_empty() {
            let file = OpenOptions::new().create(true).append(true).open(path)?;
            let mut w = BufWriter::new(file);
            for c in fresh {
                writeln!(w, "{}", serde_json::to_string(c)?)?;
            }
            w.flush()?;
        }
    }
    Ok(records.into_iter().map(|(c, _)| c).collect())
}
