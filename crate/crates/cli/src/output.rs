//! CSV emission: `#`-prefixed metadata comment lines followed by a header
//! row and data rows. Floats are printed with the shortest representation
//! that parses back exactly, so identical runs produce byte-identical
//! files.

use std::io::Write;
use std::path::Path;

use crate::CliError;

pub struct CsvDoc {
    buffer: String,
}

impl CsvDoc {
    pub fn new(subcommand: &str) -> Self {
        let mut buffer = String::new();
        buffer.push_str(&format!("# enzq {subcommand}\n"));
        buffer.push_str("# units: normalized (rates in units of gamma, times as t*gamma)\n");
        Self { buffer }
    }

    pub fn meta(&mut self, line: &str) {
        self.buffer.push_str("# ");
        self.buffer.push_str(line);
        self.buffer.push('\n');
    }

    pub fn header(&mut self, columns: &str) {
        self.buffer.push_str(columns);
        self.buffer.push('\n');
    }

    pub fn row(&mut self, fields: &[f64]) {
        let mut first = true;
        for v in fields {
            if !first {
                self.buffer.push(',');
            }
            self.buffer.push_str(&format!("{v}"));
            first = false;
        }
        self.buffer.push('\n');
    }

    pub fn row_with_label(&mut self, label: &str, fields: &[f64]) {
        self.buffer.push_str(label);
        for v in fields {
            self.buffer.push(',');
            self.buffer.push_str(&format!("{v}"));
        }
        self.buffer.push('\n');
    }

    pub fn write_to(&self, out: Option<&Path>) -> Result<(), CliError> {
        match out {
            Some(path) => {
                let mut f = std::fs::File::create(path)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
                f.write_all(self.buffer.as_bytes())
                    .map_err(|e| CliError::Io(format!("write to {}: {e}", path.display())))?;
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(self.buffer.as_bytes())
                    .map_err(|e| CliError::Io(format!("write to stdout: {e}")))?;
            }
        }
        Ok(())
    }
}

/// `steps` intervals covering `[min, max]` inclusive.
pub fn linspace(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps == 0 {
        return Err(CliError::Config("grid needs at least one step".into()));
    }
    if !(max > min) || !min.is_finite() || !max.is_finite() {
        return Err(CliError::Config(format!(
            "grid bounds must satisfy min < max, got [{min}, {max}]"
        )));
    }
    let h = (max - min) / steps as f64;
    Ok((0..=steps)
        .map(|i| if i == steps { max } else { min + i as f64 * h })
        .collect())
}

/// Inclusive arithmetic grid `min, min+step, …` up to `max`.
pub fn step_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0) || !(max >= min) {
        return Err(CliError::Config(format!(
            "grid needs step > 0 and max ≥ min, got [{min}, {max}] step {step}"
        )));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| min + i as f64 * step).collect())
}

/// Parse a complex flag value: `re` or `re,im`.
pub fn parse_complex(raw: &str, field: &str) -> Result<num_complex::Complex64, CliError> {
    let parts: Vec<&str> = raw.split(',').collect();
    let parse = |s: &str| -> Result<f64, CliError> {
        s.trim()
            .parse()
            .map_err(|_| CliError::Config(format!("cannot parse `{field}` component {s:?}")))
    };
    match parts.as_slice() {
        [re] => Ok(num_complex::Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(num_complex::Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(CliError::Config(format!(
            "`{field}` expects `re` or `re,im`, got {raw:?}"
        ))),
    }
}
