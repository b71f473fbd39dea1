//! Fourth-order central difference weights.
//!
//! Samples are combined in symmetric pairs so that constants give exactly 0.

/// `f'` from `[f(-2h), f(-h), f(0), f(h), f(2h)]`.
pub fn central_d1(f: &[f64], h: f64) -> f64 {
    debug_assert_eq!(f.len(), 5);
    (8.0 * (f[3] - f[1]) - (f[4] - f[0])) / (12.0 * h)
}

/// `f''` from `[f(-2h), f(-h), f(0), f(h), f(2h)]`.
pub fn central_d2(f: &[f64], h: f64) -> f64 {
    debug_assert_eq!(f.len(), 5);
    (16.0 * (f[1] + f[3]) - (f[0] + f[4]) - 30.0 * f[2]) / (12.0 * h * h)
}

/// `f'''` from `[f(-3h), ..., f(3h)]`.
pub fn central_d3(f: &[f64], h: f64) -> f64 {
    debug_assert_eq!(f.len(), 7);
    ((f[0] - f[6]) - 8.0 * (f[1] - f[5]) + 13.0 * (f[2] - f[4])) / (8.0 * h * h * h)
}
