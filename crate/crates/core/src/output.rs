//! Writers for the grid, growth and convergence tables.

use std::io::Write;

use serde_json::json;

use crate::analysis::{ConvergenceRecord, GrowthReport};
use crate::format::fmt_f64;
use crate::reconstruct::ReconstructionResult;

/// JSON header `{"m":M,"method":...}` followed by `x,y,z,value` rows.
pub fn write_grid_csv<W: Write>(result: &ReconstructionResult, mut out: W) -> std::io::Result<()> {
    let header = json!({ "m": result.m, "method": result.method.as_str() });
    writeln!(out, "{header}")?;
    for (p, v) in result.grid.points().iter().zip(&result.values) {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(p[0]),
            fmt_f64(p[1]),
            fmt_f64(p[2]),
            fmt_f64(*v)
        )?;
    }
    out.flush()
}

pub const GROWTH_COLUMNS: &str = "m,grid_max,normalized,argmax_x,argmax_y,argmax_z,lb_point_value";

pub fn write_growth_csv<W: Write>(report: &GrowthReport, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{GROWTH_COLUMNS}")?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.m,
            fmt_f64(r.grid_max),
            fmt_f64(r.normalized),
            fmt_f64(r.argmax_point[0]),
            fmt_f64(r.argmax_point[1]),
            fmt_f64(r.argmax_point[2]),
            fmt_f64(r.lower_bound_point_value)
        )?;
    }
    out.flush()
}

pub const CONVERGENCE_COLUMNS: &str = "m,uniform_error,phantom";

pub fn write_convergence_csv<W: Write>(
    records: &[ConvergenceRecord],
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "{CONVERGENCE_COLUMNS}")?;
    for r in records {
        writeln!(out, "{},{},{}", r.m, fmt_f64(r.uniform_error), r.phantom)?;
    }
    out.flush()
}
