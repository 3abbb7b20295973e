//! Fixed 12-significant-digit number formatting shared by every output path.

/// Rounds to 12 significant digits. `-0.0` becomes `0.0`.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    let r: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// 12 significant digits, shortest form, scientific notation below 1e-4
/// (and at 1e15 or above).
pub fn format_number(v: f64) -> String {
    let r = round_sig(v);
    if r == 0.0 {
        return "0".to_string();
    }
    let mag = r.abs();
    if !(1e-4..1e15).contains(&mag) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}
