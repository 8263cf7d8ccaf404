use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use enzq::table::{load_coupling_table, load_manifest, CouplingTable, LoadedTable};

use crate::{data_err, CliError};

fn describe(report: &mut String, loaded: &LoadedTable, origin: &str) {
    let t: &CouplingTable = &loaded.table;
    let rows = t.rows();
    let (mut g_min, mut g_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut s_min, mut s_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for row in rows {
        g_min = g_min.min(row.gamma12_over_gamma);
        g_max = g_max.max(row.gamma12_over_gamma);
        s_min = s_min.min(row.g12_over_gamma);
        s_max = s_max.max(row.g12_over_gamma);
    }
    let _ = writeln!(report, "table {origin}");
    if t.lambda_nm != 0.0 {
        let _ = writeln!(report, "  wavelength label: {} nm", t.lambda_nm);
    }
    if let Some(gs) = t.gamma_seconds {
        let _ = writeln!(report, "  gamma normalization: {gs} s");
    }
    let _ = writeln!(report, "  rows: {}", rows.len());
    let _ = writeln!(report, "  r/lambda0 range: [{}, {}]", t.r_min(), t.r_max());
    let _ = writeln!(report, "  gamma12/gamma range: [{g_min}, {g_max}]");
    let _ = writeln!(report, "  g12/gamma range: [{s_min}, {s_max}]");
    if loaded.clamp_warnings.is_empty() {
        let _ = writeln!(
            report,
            "  physicality: all rows satisfy |gamma12/gamma| <= 1"
        );
    } else {
        let _ = writeln!(
            report,
            "  physicality: {} row(s) clamped to |gamma12/gamma| = 1:",
            loaded.clamp_warnings.len()
        );
        for w in &loaded.clamp_warnings {
            let _ = writeln!(
                report,
                "    line {}: {} -> {}",
                w.line, w.original, w.clamped
            );
        }
    }
}

pub fn run(path: &Path, lambda_nm: Option<f64>) -> Result<(), CliError> {
    let mut report = String::new();
    let is_manifest = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("json"))
        .unwrap_or(false);
    if is_manifest {
        let tables = load_manifest(path).map_err(data_err)?;
        let _ = writeln!(
            report,
            "manifest {} — {} table(s)",
            path.display(),
            tables.len()
        );
        for loaded in &tables {
            describe(
                &mut report,
                loaded,
                &format!("[{} nm]", loaded.table.lambda_nm),
            );
        }
    } else {
        let loaded = load_coupling_table(path, lambda_nm.unwrap_or(0.0), None).map_err(data_err)?;
        describe(&mut report, &loaded, &path.display().to_string());
    }
    report.push_str("ok\n");
    std::io::stdout()
        .write_all(report.as_bytes())
        .map_err(|e| CliError::Io(format!("write to stdout: {e}")))
}
