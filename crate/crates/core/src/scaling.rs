//! Empirical growth-rate fitting.

use std::time::{Duration, Instant};

/// Least-squares slope of `ln(time)` against `ln(size)`. Needs at least two
/// distinct sizes and positive times.
pub fn loglog_slope(samples: &[(usize, Duration)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(n, t)| *n > 0 && !t.is_zero())
        .map(|&(n, t)| ((n as f64).ln(), t.as_secs_f64().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Minimum wall time of `reps` runs of `f`.
pub fn time_min<T>(reps: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..reps.max(1))
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(f());
            start.elapsed()
        })
        .min()
        .expect("at least one run")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let s: Vec<_> = [100usize, 200, 400, 800]
            .iter()
            .map(|&n| (n, Duration::from_nanos((n * n * 3) as u64)))
            .collect();
        assert!((loglog_slope(&s).unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(loglog_slope(&s[..1]), None);
    }
}
