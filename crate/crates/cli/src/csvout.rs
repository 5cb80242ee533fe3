//! CSV emission: '#' comment lines carrying the resolved config, then a
//! header row, then data rows with 17 significant digits.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

pub struct CsvWriter {
    out: Box<dyn Write>,
}

/// 17 significant digits, scientific.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl CsvWriter {
    /// Opens the output path, or stdout when none is given.
    pub fn open(path: Option<&Path>) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
            None => Box::new(io::BufWriter::new(io::stdout())),
        };
        Ok(Self { out })
    }

    /// One '#' comment line; used for the resolved-config banner.
    pub fn comment(&mut self, text: &str) -> io::Result<()> {
        writeln!(self.out, "# {text}")
    }

    pub fn header(&mut self, columns: &[&str]) -> io::Result<()> {
        writeln!(self.out, "{}", columns.join(","))
    }

    /// A row of an integer index followed by float fields.
    pub fn row(&mut self, n: u64, values: &[f64]) -> io::Result<()> {
        write!(self.out, "{n}")?;
        for v in values {
            write!(self.out, ",{}", fmt_f64(*v))?;
        }
        writeln!(self.out)
    }

    /// A fully custom row.
    pub fn raw_row(&mut self, fields: &[String]) -> io::Result<()> {
        writeln!(self.out, "{}", fields.join(","))
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}
