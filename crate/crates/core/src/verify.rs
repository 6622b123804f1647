//! Round-trip digitization: recover a time-series from a clean binary mask
//! and score it against ground truth.
//!
//! Per pixel column the foreground row indices are averaged; with a square
//! brush the foreground is a contiguous run, so the mean is exactly the run
//! center. Columns without foreground are linearly interpolated from their
//! neighbours and reported as gaps.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::layout::Calibration;
use crate::math;
use crate::raster::RasterImage;
use crate::signal::interp_clamped;

/// A signal recovered from a mask: one (time, mV) pair per pixel column.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitizedTrace {
    /// Column center times, strictly increasing, seconds.
    pub times: Vec<f64>,
    /// Recovered values, mV; gap columns hold interpolated values.
    pub values: Vec<f64>,
    /// Column index ranges `[start, end)` that had no foreground.
    pub gaps: Vec<(u32, u32)>,
}

impl DigitizedTrace {
    /// Total number of gap columns.
    pub fn gap_columns(&self) -> u32 {
        self.gaps.iter().map(|(a, b)| b - a).sum()
    }
}

/// Digitize a binary mask. `baseline_y` is the 0 mV row and `x0` the pixel
/// column of time `t0`, both in mask coordinates; `calibration` must match
/// the render that produced the mask.
pub fn digitize_mask(
    mask_bin: &RasterImage,
    calibration: &Calibration,
    baseline_y: f64,
    t0: f64,
    x0: f64,
) -> Result<DigitizedTrace> {
    if mask_bin.channels() != 1 {
        return Err(Error::InvalidArgument("mask must be single-channel"));
    }
    let width = mask_bin.width() as usize;
    let mut row_sum = alloc::vec![0u64; width];
    let mut count = alloc::vec![0u32; width];
    let pixels = mask_bin.pixels();
    for y in 0..mask_bin.height() as usize {
        let row = &pixels[y * width..(y + 1) * width];
        for (x, v) in row.iter().enumerate() {
            if *v != 0 {
                row_sum[x] += y as u64;
                count[x] += 1;
            }
        }
    }
    if count.iter().all(|c| *c == 0) {
        return Err(Error::EmptyMask);
    }

    let scale_x = calibration.scale_x();
    let scale_y = calibration.scale_y();
    let mut values = alloc::vec![f64::NAN; width];
    for x in 0..width {
        if count[x] > 0 {
            let mean_y = row_sum[x] as f64 / count[x] as f64;
            values[x] = (baseline_y - mean_y) / scale_y;
        }
    }

    // Collect gap runs and fill them from the nearest defined neighbours.
    let mut gaps = Vec::new();
    let mut x = 0usize;
    while x < width {
        if count[x] > 0 {
            x += 1;
            continue;
        }
        let start = x;
        while x < width && count[x] == 0 {
            x += 1;
        }
        gaps.push((start as u32, x as u32));
        let left = start.checked_sub(1);
        let right = if x < width { Some(x) } else { None };
        for g in start..x {
            values[g] = match (left, right) {
                (Some(l), Some(r)) => {
                    let frac = (g - l) as f64 / (r - l) as f64;
                    values[l] + (values[r] - values[l]) * frac
                }
                (Some(l), None) => values[l],
                (None, Some(r)) => values[r],
                (None, None) => unreachable!("mask verified non-empty"),
            };
        }
    }

    let times = (0..width)
        .map(|x| t0 + (x as f64 - x0) / scale_x)
        .collect();
    Ok(DigitizedTrace {
        times,
        values,
        gaps,
    })
}

/// Agreement between a digitized trace and ground truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    /// Pearson correlation; `None` when either side is constant.
    pub pearson_r: Option<f64>,
    /// Root-mean-square error, mV.
    pub rmse_mv: f64,
}

/// Score a digitized trace against ground-truth samples starting at
/// `truth_t0` with rate `truth_fs`. The truth is resampled at the trace's
/// column times by linear interpolation.
pub fn score(trace: &DigitizedTrace, truth: &[f64], truth_fs: f64, truth_t0: f64) -> Result<Score> {
    if trace.times.is_empty() || truth.is_empty() {
        return Err(Error::InvalidArgument("cannot score empty series"));
    }
    let n = trace.times.len() as f64;
    let mut sum_sq = 0.0;
    let mut sum_a = 0.0;
    let mut sum_b = 0.0;
    let mut sum_aa = 0.0;
    let mut sum_bb = 0.0;
    let mut sum_ab = 0.0;
    for (t, a) in trace.times.iter().zip(trace.values.iter()) {
        let b = interp_clamped(truth, (t - truth_t0) * truth_fs);
        sum_sq += (a - b) * (a - b);
        sum_a += a;
        sum_b += b;
        sum_aa += a * a;
        sum_bb += b * b;
        sum_ab += a * b;
    }
    let rmse_mv = math::sqrt(sum_sq / n);
    let var_a = sum_aa - sum_a * sum_a / n;
    let var_b = sum_bb - sum_b * sum_b / n;
    let pearson_r = if var_a <= 1e-24 || var_b <= 1e-24 {
        None
    } else {
        Some((sum_ab - sum_a * sum_b / n) / math::sqrt(var_a * var_b))
    };
    Ok(Score { pearson_r, rmse_mv })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat_mask(width: u32, height: u32, row: u32) -> RasterImage {
        let mut mask = RasterImage::new_gray(width, height, 0);
        for x in 0..width {
            mask.put(x as i64, row as i64, &[1]);
        }
        mask
    }

    #[test]
    fn flat_baseline_digitizes_to_zero() {
        let mask = flat_mask(100, 60, 30);
        let trace = digitize_mask(&mask, &Calibration::default(), 30.0, 0.0, 0.0).unwrap();
        assert_eq!(trace.times.len(), 100);
        assert!(trace.values.iter().all(|v| *v == 0.0));
        assert!(trace.gaps.is_empty());
        assert_eq!(trace.times[0], 0.0);
        assert!((trace.times[50] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn one_box_step_reads_half_millivolt() {
        // Step up by one large box (20 px) halfway across.
        let mut mask = RasterImage::new_gray(100, 80, 0);
        for x in 0..50i64 {
            mask.put(x, 40, &[1]);
        }
        for x in 50..100i64 {
            mask.put(x, 20, &[1]);
        }
        let trace = digitize_mask(&mask, &Calibration::default(), 40.0, 0.0, 0.0).unwrap();
        assert!(trace.values[..50].iter().all(|v| *v == 0.0));
        assert!(trace.values[50..].iter().all(|v| (*v - 0.5).abs() < 1e-12));
    }

    #[test]
    fn empty_mask_is_an_error() {
        let mask = RasterImage::new_gray(10, 10, 0);
        assert_eq!(
            digitize_mask(&mask, &Calibration::default(), 5.0, 0.0, 0.0),
            Err(Error::EmptyMask)
        );
    }

    #[test]
    fn gap_columns_are_recorded_and_interpolated() {
        let mut mask = flat_mask(100, 60, 30);
        // Punch a 3-column hole and a hole at the right edge.
        for x in [40i64, 41, 42, 99] {
            mask.put(x, 30, &[0]);
        }
        let trace = digitize_mask(&mask, &Calibration::default(), 30.0, 0.0, 0.0).unwrap();
        assert_eq!(trace.gaps, alloc::vec![(40, 43), (99, 100)]);
        assert_eq!(trace.gap_columns(), 4);
        // The flat neighbours interpolate to the same flat value.
        assert!(trace.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn column_mean_is_run_center() {
        // A 3-pixel vertical run centred at row 10 must read as row 10.
        let mut mask = RasterImage::new_gray(4, 30, 0);
        for y in 9..=11i64 {
            mask.put(0, y, &[1]);
            mask.put(1, y, &[1]);
            mask.put(2, y, &[1]);
            mask.put(3, y, &[1]);
        }
        let calib = Calibration::default();
        let trace = digitize_mask(&mask, &calib, 20.0, 0.0, 0.0).unwrap();
        let expect = (20.0 - 10.0) / calib.scale_y();
        assert!(trace.values.iter().all(|v| (*v - expect).abs() < 1e-12));
    }

    #[test]
    fn score_identity_anticorrelation_and_shift() {
        let times: Vec<f64> = (0..500).map(|k| k as f64 / 100.0).collect();
        let values: Vec<f64> = times.iter().map(|t| libm::sin(*t * 3.0)).collect();
        let trace = DigitizedTrace {
            times: times.clone(),
            values: values.clone(),
            gaps: Vec::new(),
        };
        // Truth sampled at 100 Hz equals the trace exactly.
        let truth: Vec<f64> = (0..500).map(|k| libm::sin(k as f64 / 100.0 * 3.0)).collect();

        let s = score(&trace, &truth, 100.0, 0.0).unwrap();
        assert!((s.pearson_r.unwrap() - 1.0).abs() < 1e-12);
        assert!(s.rmse_mv < 1e-12);

        let negated = DigitizedTrace {
            times: times.clone(),
            values: values.iter().map(|v| -v).collect(),
            gaps: Vec::new(),
        };
        let s = score(&negated, &truth, 100.0, 0.0).unwrap();
        assert!((s.pearson_r.unwrap() + 1.0).abs() < 1e-12);

        let shifted = DigitizedTrace {
            times,
            values: values.iter().map(|v| v + 0.1).collect(),
            gaps: Vec::new(),
        };
        let s = score(&shifted, &truth, 100.0, 0.0).unwrap();
        assert!((s.pearson_r.unwrap() - 1.0).abs() < 1e-9);
        assert!((s.rmse_mv - 0.1).abs() < 1e-9);
    }

    #[test]
    fn constant_series_has_undefined_correlation() {
        let trace = DigitizedTrace {
            times: (0..10).map(|k| k as f64).collect(),
            values: alloc::vec![0.25; 10],
            gaps: Vec::new(),
        };
        let truth = alloc::vec![0.5; 10];
        let s = score(&trace, &truth, 1.0, 0.0).unwrap();
        assert_eq!(s.pearson_r, None);
        assert!((s.rmse_mv - 0.25).abs() < 1e-12);
    }
}
