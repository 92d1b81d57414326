//! Deterministic CSV/JSON emission.
//!
//! Every CSV starts with a comment row naming the command, group, cutoff,
//! and quadrature settings, so files describe themselves. Floats are
//! printed with a fixed scientific format, which together with the
//! index-ordered reductions in the core makes outputs byte-identical for
//! identical configurations.

use std::fmt::Write as _;
use std::path::Path;

pub fn fmt_f(x: f64) -> String {
    format!("{x:.12e}")
}

/// In-memory CSV with a self-describing comment header.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(command: &str, meta: &[(&str, String)], columns: &[&str]) -> Self {
        let mut buf = String::new();
        let mut line = format!("# liewrap {command}");
        for (k, v) in meta {
            let _ = write!(line, " {k}={v}");
        }
        buf.push_str(&line);
        buf.push('\n');
        buf.push_str(&columns.join(","));
        buf.push('\n');
        Csv { buf }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

/// Write a set of named files under a directory, creating it as needed.
pub fn write_files(dir: &Path, files: &[(String, String)]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, contents) in files {
        std::fs::write(dir.join(name), contents)?;
    }
    Ok(())
}
