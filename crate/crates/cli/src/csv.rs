//! Minimal CSV output: one `#` stamp line, one header row, then data rows.
//! Numbers use Rust's shortest round-trip formatting, so identical inputs
//! give byte-identical files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::config::Stamp;
use crate::error::{CliError, CliResult};

pub struct CsvWriter<W: Write> {
    inner: W,
    columns: usize,
    label: String,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut inner: W, label: &str, stamp: &Stamp, header: &[&str]) -> CliResult<Self> {
        let io = |e| io_error(label, e);
        writeln!(inner, "{}", stamp.line()).map_err(io)?;
        writeln!(inner, "{}", header.join(",")).map_err(io)?;
        Ok(Self {
            inner,
            columns: header.len(),
            label: label.to_string(),
        })
    }

    pub fn row(&mut self, cells: &[String]) -> CliResult<()> {
        debug_assert_eq!(cells.len(), self.columns, "row width must match the header");
        writeln!(self.inner, "{}", cells.join(",")).map_err(|e| io_error(&self.label, e))
    }

    pub fn finish(mut self) -> CliResult<()> {
        self.inner.flush().map_err(|e| io_error(&self.label, e))
    }
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        x.to_string()
    } else {
        String::new()
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub type Sink = Box<dyn Write>;

/// Buffered writer for `path`, or stdout.
pub fn open(path: Option<&Path>) -> CliResult<(Sink, String)> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| io_error(&p.display().to_string(), e))?;
            Ok((Box::new(BufWriter::new(f)), p.display().to_string()))
        }
        None => Ok((Box::new(BufWriter::new(io::stdout().lock())), "stdout".to_string())),
    }
}

pub fn io_error(path: &str, source: io::Error) -> CliError {
    CliError::Io {
        path: path.to_string(),
        source,
    }
}
