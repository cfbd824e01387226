//! Plain-text lattice files.
//!
//! ```text
//! LDS 1 <h> <k>
//! <key>
//! ...
//! ```
//!
//! The header is followed by `h(h-1)/2 + k` keys, one per line, listed
//! diagonal by diagonal from the top-right end of each diagonal. Files that
//! do not describe a valid lattice are rejected.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::{is_valid_key, Key, Lattice};

const MAGIC: &str = "LDS";
const VERSION: &str = "1";

pub fn write_lattice<W: Write>(lat: &Lattice, mut out: W) -> Result<()> {
    writeln!(out, "{MAGIC} {VERSION} {} {}", lat.height(), lat.outer_count())?;
    for k in lat.keys() {
        writeln!(out, "{k}")?;
    }
    out.flush()?;
    Ok(())
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let bad = || Error::MalformedHeader(line.trim_end().to_owned());
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        [MAGIC, VERSION, h, k] => {
            let h: usize = h.parse().map_err(|_| bad())?;
            let k: usize = k.parse().map_err(|_| bad())?;
            if h < 1 || k > h {
                return Err(bad());
            }
            Ok((h, k))
        }
        _ => Err(bad()),
    }
}

pub fn read_lattice<R: BufRead>(input: R) -> Result<Lattice> {
    let mut lines = input.lines();
    let header = match lines.next() {
        Some(l) => l?,
        None => return Err(Error::MalformedHeader("empty input".into())),
    };
    let (h, k) = parse_header(&header)?;
    let expected = h * (h - 1) / 2 + k;
    let mut keys: Vec<Key> = Vec::with_capacity(expected);
    let mut seen = HashSet::with_capacity(expected);
    for (i, line) in lines.enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let v: u64 = text.parse().map_err(|_| Error::MalformedKey { line: i + 2, text: text.to_owned() })?;
        if v > u32::MAX as u64 || !is_valid_key(v as u32) {
            return Err(Error::KeyOutOfDomain(v));
        }
        let key = v as Key;
        if !seen.insert(key) {
            return Err(Error::DuplicateKey(key));
        }
        keys.push(key);
    }
    if keys.len() != expected {
        return Err(Error::KeyCount { expected, found: keys.len() });
    }
    Lattice::from_keys(h, &keys)
}

pub fn save(lat: &Lattice, path: impl AsRef<Path>) -> Result<()> {
    write_lattice(lat, BufWriter::new(File::create(path)?))
}

pub fn load(path: impl AsRef<Path>) -> Result<Lattice> {
    read_lattice(BufReader::new(File::open(path)?))
}
