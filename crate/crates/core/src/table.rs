//! Coupling tables: wavelength- and distance-indexed samples of `γ₁₂/γ`
//! and `g₁₂/γ` loaded from CSV files, optionally bundled by a JSON
//! manifest, and served by linear interpolation.
//!
//! Canonical CSV format (UTF-8, `.` decimal separator, `#` comments):
//!
//! ```text
//! r_over_lambda,gamma12_over_gamma,g12_over_gamma
//! 0.1,0.95,0.02
//! ...
//! ```
//!
//! Rows with `|γ₁₂/γ|` marginally above 1 — routine in exported solver
//! data — are clamped to ±1 and counted in the load report instead of
//! rejected.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::Error;
use crate::model::CouplingParameters;
use crate::Result;

pub const CSV_HEADER: &str = "r_over_lambda,gamma12_over_gamma,g12_over_gamma";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingRow {
    pub r_over_lambda: f64,
    pub gamma12_over_gamma: f64,
    pub g12_over_gamma: f64,
}

/// Interpolable coupling table for one excitation wavelength.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    /// Excitation wavelength label (nm).
    pub lambda_nm: f64,
    /// Physical decay time normalizing γ, when known (seconds).
    pub gamma_seconds: Option<f64>,
    rows: Vec<CouplingRow>,
}

/// One clamped row noted during loading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampEvent {
    /// 1-based line number in the source file.
    pub line: usize,
    pub original: f64,
    pub clamped: f64,
}

/// A loaded table together with its physicality warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedTable {
    pub table: CouplingTable,
    pub clamp_warnings: Vec<ClampEvent>,
}

impl CouplingTable {
    /// Build a table from rows, enforcing a strictly increasing distance
    /// column and the `|γ₁₂/γ| ≤ 1` bound (no clamping here; use
    /// [`load_coupling_table`] for forgiving file ingestion).
    pub fn new(lambda_nm: f64, gamma_seconds: Option<f64>, rows: Vec<CouplingRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter("coupling table is empty".into()));
        }
        for (k, w) in rows.windows(2).enumerate() {
            if !(w[1].r_over_lambda > w[0].r_over_lambda) {
                return Err(Error::InvalidParameter(format!(
                    "distance column must be strictly increasing (rows {} and {})",
                    k + 1,
                    k + 2
                )));
            }
        }
        if let Some(row) = rows.iter().find(|r| r.gamma12_over_gamma.abs() > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "|γ₁₂/γ| = {} exceeds 1",
                row.gamma12_over_gamma.abs()
            )));
        }
        Ok(Self {
            lambda_nm,
            gamma_seconds,
            rows,
        })
    }

    pub fn rows(&self) -> &[CouplingRow] {
        &self.rows
    }

    pub fn r_min(&self) -> f64 {
        self.rows.first().unwrap().r_over_lambda
    }

    pub fn r_max(&self) -> f64 {
        self.rows.last().unwrap().r_over_lambda
    }
}

fn parse_field(raw: &str, line: usize, name: &str) -> Result<f64> {
    let v: f64 = raw.trim().parse().map_err(|_| Error::TableFormat {
        line,
        message: format!("cannot parse {name} from {raw:?}"),
    })?;
    if !v.is_finite() {
        return Err(Error::TableFormat {
            line,
            message: format!("{name} is not finite"),
        });
    }
    Ok(v)
}

/// Parse coupling CSV text. `lambda_nm` and `gamma_seconds` label the
/// table; they are carried by the manifest, not the CSV itself.
pub fn parse_coupling_csv(
    text: &str,
    lambda_nm: f64,
    gamma_seconds: Option<f64>,
) -> Result<LoadedTable> {
    let mut rows: Vec<CouplingRow> = Vec::new();
    let mut warnings: Vec<ClampEvent> = Vec::new();
    let mut header_seen = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != CSV_HEADER {
                return Err(Error::TableFormat {
                    line: line_no,
                    message: format!("expected header {CSV_HEADER:?}, got {line:?}"),
                });
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::TableFormat {
                line: line_no,
                message: format!("expected 3 comma-separated fields, got {}", fields.len()),
            });
        }
        let r = parse_field(fields[0], line_no, "r_over_lambda")?;
        let mut gamma12 = parse_field(fields[1], line_no, "gamma12_over_gamma")?;
        let g12 = parse_field(fields[2], line_no, "g12_over_gamma")?;

        if let Some(prev) = rows.last() {
            if r <= prev.r_over_lambda {
                return Err(Error::TableFormat {
                    line: line_no,
                    message: format!(
                        "distance column must be strictly increasing: {} after {}",
                        r, prev.r_over_lambda
                    ),
                });
            }
        }
        if gamma12.abs() > 1.0 {
            let clamped = gamma12.signum();
            warnings.push(ClampEvent {
                line: line_no,
                original: gamma12,
                clamped,
            });
            gamma12 = clamped;
        }
        rows.push(CouplingRow {
            r_over_lambda: r,
            gamma12_over_gamma: gamma12,
            g12_over_gamma: g12,
        });
    }

    if !header_seen {
        return Err(Error::TableFormat {
            line: 1,
            message: "file has no header line".into(),
        });
    }
    if rows.is_empty() {
        return Err(Error::TableFormat {
            line: text.lines().count().max(1),
            message: "table has no data rows".into(),
        });
    }
    Ok(LoadedTable {
        table: CouplingTable::new(lambda_nm, gamma_seconds, rows)?,
        clamp_warnings: warnings,
    })
}

/// Load a coupling CSV from disk. Rows violating `|γ₁₂/γ| ≤ 1` are clamped
/// to ±1 and reported; structural violations are errors.
pub fn load_coupling_table(
    path: impl AsRef<Path>,
    lambda_nm: f64,
    gamma_seconds: Option<f64>,
) -> Result<LoadedTable> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_coupling_csv(&text, lambda_nm, gamma_seconds)
}

/// Write a table in the canonical CSV format. Floats are printed with the
/// shortest representation that parses back to the same bits, so
/// save → load round-trips exactly.
pub fn save_coupling_table(table: &CouplingTable, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{}\n",
            row.r_over_lambda, row.gamma12_over_gamma, row.g12_over_gamma
        ));
    }
    let mut f = std::fs::File::create(path.as_ref())?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

/// Coupling parameters at `r/λ₀` by piecewise-linear interpolation; exact
/// at table nodes, no extrapolation outside `[r_min, r_max]`.
pub fn coupling_at(table: &CouplingTable, r_over_lambda: f64) -> Result<CouplingParameters> {
    let rows = &table.rows;
    let (min, max) = (table.r_min(), table.r_max());
    if !(r_over_lambda >= min && r_over_lambda <= max) {
        return Err(Error::OutOfRange {
            query: r_over_lambda,
            min,
            max,
        });
    }
    let hi = rows.partition_point(|row| row.r_over_lambda < r_over_lambda);
    let (gamma12, g12) = if hi == 0 {
        (rows[0].gamma12_over_gamma, rows[0].g12_over_gamma)
    } else if (rows[hi].r_over_lambda - r_over_lambda).abs() == 0.0 {
        (rows[hi].gamma12_over_gamma, rows[hi].g12_over_gamma)
    } else {
        let a = &rows[hi - 1];
        let b = &rows[hi];
        let w = (r_over_lambda - a.r_over_lambda) / (b.r_over_lambda - a.r_over_lambda);
        (
            a.gamma12_over_gamma + w * (b.gamma12_over_gamma - a.gamma12_over_gamma),
            a.g12_over_gamma + w * (b.g12_over_gamma - a.g12_over_gamma),
        )
    };
    // linear interpolation between in-bound nodes cannot overshoot, but
    // roundoff can graze the boundary
    CouplingParameters::normalized(gamma12.clamp(-1.0, 1.0), g12)
}

#[derive(Debug, Deserialize)]
struct ManifestEntry {
    lambda_nm: f64,
    gamma_seconds: Option<f64>,
    table: String,
}

/// Load a JSON manifest bundling several per-wavelength CSV tables.
///
/// Format: a top-level array of
/// `{ "lambda_nm": <number>, "gamma_seconds": <number|null>, "table": "<relative path>" }`.
/// Table paths are resolved against the manifest's directory.
pub fn load_manifest(path: impl AsRef<Path>) -> Result<Vec<LoadedTable>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let entries: Vec<ManifestEntry> =
        serde_json::from_str(&text).map_err(|e| Error::Manifest(e.to_string()))?;
    if entries.is_empty() {
        return Err(Error::Manifest("manifest lists no tables".into()));
    }
    let base: PathBuf = path.parent().map(PathBuf::from).unwrap_or_default();
    entries
        .into_iter()
        .map(|e| load_coupling_table(base.join(&e.table), e.lambda_nm, e.gamma_seconds))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_csv() -> &'static str {
        "r_over_lambda,gamma12_over_gamma,g12_over_gamma\n0.1,0.95,0.05\n0.5,0.9,0.02\n1.0,0.8,0.01\n"
    }

    #[test]
    fn well_formed_file_loads_without_warnings() {
        let loaded = parse_coupling_csv(sample_csv(), 1450.0, Some(1e-5)).unwrap();
        assert_eq!(loaded.table.rows().len(), 3);
        assert!(loaded.clamp_warnings.is_empty());
        assert_eq!(loaded.table.lambda_nm, 1450.0);
    }

    #[test]
    fn overshoot_is_clamped_and_reported() {
        let csv = "r_over_lambda,gamma12_over_gamma,g12_over_gamma\n0.1,1.05,0.0\n0.2,0.9,0.0\n";
        let loaded = parse_coupling_csv(csv, 1450.0, None).unwrap();
        assert_eq!(loaded.clamp_warnings.len(), 1);
        assert_eq!(loaded.clamp_warnings[0].line, 2);
        assert_eq!(loaded.table.rows()[0].gamma12_over_gamma, 1.0);
    }

    #[test]
    fn decreasing_distance_names_the_row() {
        let csv = "r_over_lambda,gamma12_over_gamma,g12_over_gamma\n0.5,0.9,0.0\n0.4,0.8,0.0\n";
        match parse_coupling_csv(csv, 1450.0, None) {
            Err(Error::TableFormat { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_malformed_tables_rejected() {
        assert!(parse_coupling_csv("", 1450.0, None).is_err());
        assert!(parse_coupling_csv(CSV_HEADER, 1450.0, None).is_err());
        let bad = "r_over_lambda,gamma12_over_gamma,g12_over_gamma\n0.1,abc,0.0\n";
        assert!(matches!(
            parse_coupling_csv(bad, 1450.0, None),
            Err(Error::TableFormat { line: 2, .. })
        ));
        let short = "r_over_lambda,gamma12_over_gamma,g12_over_gamma\n0.1,0.5\n";
        assert!(parse_coupling_csv(short, 1450.0, None).is_err());
    }

    #[test]
    fn interpolation_exact_at_nodes_and_linear_between() {
        let loaded = parse_coupling_csv(sample_csv(), 1450.0, None).unwrap();
        let t = &loaded.table;
        let at = coupling_at(t, 0.5).unwrap();
        assert_eq!(at.gamma12(), 0.9);
        assert_eq!(at.g12(), 0.02);
        let mid = coupling_at(t, 0.75).unwrap();
        assert!((mid.gamma12() - 0.85).abs() < 1e-15);
        assert!((mid.g12() - 0.015).abs() < 1e-15);
    }

    #[test]
    fn interpolation_is_bracketed_by_nodes() {
        let loaded = parse_coupling_csv(sample_csv(), 1450.0, None).unwrap();
        let t = &loaded.table;
        let mut state = 0x2545f4914f6cdd1du64;
        for _ in 0..1000 {
            // xorshift64* — enough to scatter queries over the range
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            let u = (state.wrapping_mul(0x2545f4914f6cdd1d) >> 11) as f64 / (1u64 << 53) as f64;
            let r = t.r_min() + u * (t.r_max() - t.r_min());
            let p = coupling_at(t, r).unwrap();
            let hi = t.rows().partition_point(|row| row.r_over_lambda < r).max(1);
            let (a, b) = (&t.rows()[hi - 1], &t.rows()[hi.min(t.rows().len() - 1)]);
            let lo_g = a.gamma12_over_gamma.min(b.gamma12_over_gamma) - 1e-12;
            let hi_g = a.gamma12_over_gamma.max(b.gamma12_over_gamma) + 1e-12;
            assert!(p.gamma12() >= lo_g && p.gamma12() <= hi_g);
        }
    }

    #[test]
    fn out_of_range_query_rejected() {
        let loaded = parse_coupling_csv(sample_csv(), 1450.0, None).unwrap();
        assert!(matches!(
            coupling_at(&loaded.table, 0.05),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            coupling_at(&loaded.table, 1.5),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn save_load_round_trips_bit_exactly() {
        let rows = vec![
            CouplingRow {
                r_over_lambda: 0.1,
                gamma12_over_gamma: 0.951_234_567_890_123_4,
                g12_over_gamma: -0.012_345_678_901_234_567,
            },
            CouplingRow {
                r_over_lambda: std::f64::consts::FRAC_1_SQRT_2,
                gamma12_over_gamma: -1.0,
                g12_over_gamma: 1.0e-300,
            },
        ];
        let table = CouplingTable::new(1300.0, None, rows).unwrap();
        let dir = std::env::temp_dir().join("enzq_table_roundtrip");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.csv");
        save_coupling_table(&table, &path).unwrap();
        let loaded = load_coupling_table(&path, 1300.0, None).unwrap();
        assert!(loaded.clamp_warnings.is_empty());
        for (a, b) in table.rows().iter().zip(loaded.table.rows()) {
            assert_eq!(a.r_over_lambda.to_bits(), b.r_over_lambda.to_bits());
            assert_eq!(
                a.gamma12_over_gamma.to_bits(),
                b.gamma12_over_gamma.to_bits()
            );
            assert_eq!(a.g12_over_gamma.to_bits(), b.g12_over_gamma.to_bits());
        }
    }

    #[test]
    fn manifest_resolves_relative_paths() {
        let dir = std::env::temp_dir().join("enzq_manifest_test");
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("a.csv"), sample_csv()).unwrap();
        std::fs::write(dir.join("b.csv"), sample_csv()).unwrap();
        let manifest = r#"[
            { "lambda_nm": 1450, "gamma_seconds": 1e-5, "table": "a.csv" },
            { "lambda_nm": 1300, "gamma_seconds": null, "table": "b.csv" }
        ]"#;
        let mpath = dir.join("manifest.json");
        std::fs::write(&mpath, manifest).unwrap();
        let tables = load_manifest(&mpath).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[0].table.lambda_nm, 1450.0);
        assert_eq!(tables[0].table.gamma_seconds, Some(1e-5));
        assert_eq!(tables[1].table.gamma_seconds, None);
    }
}
