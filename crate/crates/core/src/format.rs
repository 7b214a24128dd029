//! Number formatting shared by every file writer.

/// 17 significant digits in scientific notation; parses back bit-exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}
