//! The `cyl-radon-v1` projection file.
//!
//! ```text
//! {"format":"cyl-radon-v1","m":1,"provenance":"numeric"}
//! 0,1,0,1.7320508075688772e0
//! ...
//! ```
//!
//! One JSON header line, then exactly `(2m+1)·2m·2m` rows `nu,j,l,value`
//! sorted by `(nu, j, l)`, with `j` 1-based. Values carry 17 significant
//! digits so a write/read cycle is bit-exact.

use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::radon::{ProjectionDataset, Provenance};

pub const FORMAT_TAG: &str = "cyl-radon-v1";

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    format: String,
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
}

pub fn write_dataset_to<W: Write>(dataset: &ProjectionDataset, mut out: W) -> std::io::Result<()> {
    let header = Header {
        format: FORMAT_TAG.to_string(),
        m: dataset.m(),
        provenance: Some(dataset.provenance.as_str().to_string()),
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string(&header).expect("header serializes")
    )?;
    for ((nu, j, l), v) in dataset.indices().zip(dataset.values()) {
        writeln!(out, "{nu},{j},{l},{}", fmt_f64(*v))?;
    }
    out.flush()
}

pub fn write_dataset(dataset: &ProjectionDataset, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_dataset_to(dataset, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn read_dataset_from<R: BufRead>(input: R) -> Result<ProjectionDataset> {
    let mut lines = input.lines().enumerate();
    let header_line = match lines.next() {
        Some((_, line)) => line.map_err(|e| Error::io("<input>", e))?,
        None => return Err(Error::MalformedHeader("empty input".into())),
    };
    let header: Header = serde_json::from_str(header_line.trim())
        .map_err(|e| Error::MalformedHeader(e.to_string()))?;
    if header.format != FORMAT_TAG {
        return Err(Error::MalformedHeader(format!(
            "format `{}` is not `{FORMAT_TAG}`",
            header.format
        )));
    }
    let m = header.m;
    if m == 0 {
        return Err(Error::MalformedHeader("m must be at least 1".into()));
    }
    let provenance = match header.provenance.as_deref() {
        None => Provenance::FileImport,
        Some(s) => Provenance::parse(s)
            .ok_or_else(|| Error::MalformedHeader(format!("unknown provenance `{s}`")))?,
    };

    let n = 2 * m;
    let expected = ProjectionDataset::len_for(m);
    let mut rows: Vec<(usize, usize, f64)> = Vec::with_capacity(expected);
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::io("<input>", e))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected nu,j,l,value, found {} fields", fields.len()),
            });
        }
        let index = |k: usize| -> Result<usize> {
            fields[k].trim().parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad index `{}`", fields[k]),
            })
        };
        let (nu, j, l) = (index(0)?, index(1)?, index(2)?);
        let value: f64 = fields[3].trim().parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("bad value `{}`", fields[3]),
        })?;
        if !value.is_finite() {
            return Err(Error::NonFinite {
                value,
                location: format!("line {lineno}"),
            });
        }
        if nu > n || j == 0 || j > n || l >= n {
            return Err(Error::DimensionMismatch(format!(
                "row ({nu},{j},{l}) on line {lineno} is outside the index ranges for m = {m}"
            )));
        }
        rows.push((lineno, ProjectionDataset::flat_index(m, nu, j, l), value));
    }
    if rows.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "m = {m} needs {expected} rows, found {}",
            rows.len()
        )));
    }
    let mut values = Vec::with_capacity(expected);
    for (position, (lineno, flat, value)) in rows.into_iter().enumerate() {
        if flat != position {
            return Err(Error::Parse {
                line: lineno,
                message: "row is duplicated or out of (nu, j, l) order".into(),
            });
        }
        values.push(value);
    }
    ProjectionDataset::new(m, values, provenance)
}

pub fn read_dataset(path: &Path) -> Result<ProjectionDataset> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_dataset_from(BufReader::new(file)).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}
