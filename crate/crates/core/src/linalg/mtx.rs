//! Plain-text coordinate format.
//!
//! ```text
//! nrows ncols nnz
//! row col value
//! ...
//! ```
//!
//! Indices are 0-based, values are integers or `p/q`. Entries are written in
//! row-major order; on read any order is accepted but duplicates and explicit
//! zeros are rejected.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_traits::Zero;

use super::{format_rational, parse_rational, SparseExactMatrix};
use crate::error::{io_err, Error, Result};

pub fn write_mtx(m: &SparseExactMatrix, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{} {} {}", m.nrows(), m.ncols(), m.nnz())?;
    for (r, c, v) in m.iter() {
        writeln!(out, "{r} {c} {}", format_rational(v))?;
    }
    Ok(())
}

pub fn read_mtx(input: impl BufRead) -> Result<SparseExactMatrix> {
    let mut lines = input
        .lines()
        .map(|l| l.map_err(|e| Error::Parse(e.to_string())))
        .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header".into()))??;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad header field {t:?}")))
        })
        .collect::<Result<_>>()?;
    let [nrows, ncols, nnz] = dims[..] else {
        return Err(Error::Parse(format!(
            "header needs 3 fields, got {header:?}"
        )));
    };

    let mut triplets = Vec::with_capacity(nnz);
    let mut positions = std::collections::HashSet::with_capacity(nnz);
    for line in lines {
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [r, c, v] = fields[..] else {
            return Err(Error::Parse(format!(
                "expected `row col value`, got {line:?}"
            )));
        };
        let r: usize = r
            .parse()
            .map_err(|_| Error::Parse(format!("bad row {r:?}")))?;
        let c: usize = c
            .parse()
            .map_err(|_| Error::Parse(format!("bad column {c:?}")))?;
        if r >= nrows || c >= ncols {
            return Err(Error::Parse(format!(
                "entry ({r}, {c}) outside {nrows}x{ncols}"
            )));
        }
        let v = parse_rational(v).ok_or_else(|| Error::Parse(format!("bad value {v:?}")))?;
        if v.is_zero() {
            return Err(Error::Parse(format!("explicit zero at ({r}, {c})")));
        }
        if !positions.insert((r, c)) {
            return Err(Error::Parse(format!("duplicate entry ({r}, {c})")));
        }
        triplets.push((r, c, v));
    }
    if triplets.len() != nnz {
        return Err(Error::Parse(format!(
            "header announces {nnz} entries, found {}",
            triplets.len()
        )));
    }
    SparseExactMatrix::from_triplets(nrows, ncols, triplets)
}

pub fn write_mtx_file(m: &SparseExactMatrix, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    write_mtx(m, &mut out).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

pub fn read_mtx_file(path: &Path) -> Result<SparseExactMatrix> {
    let file = File::open(path).map_err(io_err(path))?;
    read_mtx(BufReader::new(file))
}
