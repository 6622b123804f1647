//! Multi-lead signal records, the synthetic record generator and resampling.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lead::LeadId;
use crate::math;

/// A 12-lead ECG record: per-lead sample arrays in mV at a fixed sampling
/// rate. All leads have the same length and every sample is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalRecord {
    record_id: String,
    fs: f64,
    leads: [Vec<f64>; 12],
}

impl SignalRecord {
    /// Build a record from per-lead sample arrays indexed in canonical lead
    /// order. Rejects non-positive sampling rates, empty or unequal arrays
    /// and non-finite samples.
    pub fn new(record_id: impl Into<String>, fs: f64, leads: [Vec<f64>; 12]) -> Result<Self> {
        if !(fs.is_finite() && fs > 0.0) {
            return Err(Error::InvalidArgument("sampling rate must be positive"));
        }
        let len = leads[0].len();
        if len == 0 {
            return Err(Error::InvalidArgument("lead arrays must be non-empty"));
        }
        for samples in &leads {
            if samples.len() != len {
                return Err(Error::InvalidArgument("lead arrays must have equal length"));
            }
            if samples.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument("samples must be finite"));
            }
        }
        Ok(Self {
            record_id: record_id.into(),
            fs,
            leads,
        })
    }

    pub fn record_id(&self) -> &str {
        &self.record_id
    }

    pub fn fs(&self) -> f64 {
        self.fs
    }

    /// Samples per lead.
    pub fn sample_count(&self) -> usize {
        self.leads[0].len()
    }

    pub fn duration_s(&self) -> f64 {
        self.sample_count() as f64 / self.fs
    }

    pub fn lead(&self, id: LeadId) -> &[f64] {
        &self.leads[id.index()]
    }

    pub fn leads(&self) -> impl Iterator<Item = (LeadId, &[f64])> {
        LeadId::ALL.iter().map(move |id| (*id, self.lead(*id)))
    }

    /// Value at time `t` by linear interpolation between neighbouring
    /// samples, clamped to the first/last sample outside the record.
    pub fn value_at(&self, id: LeadId, t: f64) -> f64 {
        let samples = self.lead(id);
        interp_clamped(samples, t * self.fs)
    }

    /// Samples whose times fall in `[t0, t1)`, as (sample index, time) pairs.
    pub(crate) fn sample_range(&self, t0: f64, t1: f64) -> core::ops::Range<usize> {
        let eps = 1e-9;
        let first = math::ceil(t0 * self.fs - eps).max(0.0) as usize;
        let end = math::ceil(t1 * self.fs - eps).max(0.0) as usize;
        first..end.min(self.sample_count())
    }
}

/// Linear interpolation of `samples` at fractional index `p`, clamped to the
/// endpoints.
pub(crate) fn interp_clamped(samples: &[f64], p: f64) -> f64 {
    if p <= 0.0 {
        return samples[0];
    }
    let i = math::floor(p) as usize;
    if i + 1 >= samples.len() {
        return samples[samples.len() - 1];
    }
    let frac = p - i as f64;
    samples[i] + (samples[i + 1] - samples[i]) * frac
}

/// Gaussian bump table describing one beat: (amplitude mV, offset s from the
/// R peak, width s).
const BEAT_BUMPS: [(f64, f64, f64); 5] = [
    (0.15, -0.20, 0.025), // P
    (-0.10, -0.04, 0.010), // Q
    (1.00, 0.00, 0.010),  // R
    (-0.25, 0.04, 0.010), // S
    (0.35, 0.30, 0.060),  // T
];

/// Generate a deterministic ECG-like test record.
///
/// Each lead is a train of Gaussian P/Q/R/S/T bumps with a beat period drawn
/// once per record from 0.66..1.0 s and a per-lead amplitude factor (limb
/// leads 0.7..1.1, chest leads 0.6..1.4). Peak amplitude stays below 2 mV.
/// The output is a pure function of `(seed, duration_s, fs)`.
pub fn synth_record(seed: u64, duration_s: f64, fs: f64) -> Result<SignalRecord> {
    if !(duration_s.is_finite() && duration_s > 0.0) {
        return Err(Error::InvalidArgument("duration must be positive"));
    }
    if !(fs.is_finite() && fs > 0.0) {
        return Err(Error::InvalidArgument("sampling rate must be positive"));
    }
    let n = math::round(duration_s * fs) as usize;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "duration and sampling rate give zero samples",
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let period = rng.gen_range(0.66..=1.0);
    let mut factors = [0.0f64; 12];
    for lead in LeadId::ALL {
        factors[lead.index()] = if lead.is_precordial() {
            rng.gen_range(0.6..=1.4)
        } else {
            rng.gen_range(0.7..=1.1)
        };
    }

    let first_r = period / 2.0;
    let mut leads: [Vec<f64>; 12] = core::array::from_fn(|_| alloc::vec![0.0; n]);
    for (li, samples) in leads.iter_mut().enumerate() {
        let factor = factors[li];
        // Beat -1 so that a P/T tail reaching across t = 0 is not cut off.
        let mut beat = -1i64;
        loop {
            let r_time = first_r + beat as f64 * period;
            if r_time > duration_s + period {
                break;
            }
            for (amp, offset, width) in BEAT_BUMPS {
                let center = r_time + offset;
                // Beyond 5 sigma the bump is < 4e-6 mV; skip those samples.
                let lo = ((center - 5.0 * width) * fs).max(0.0) as usize;
                let hi = (math::ceil((center + 5.0 * width) * fs) as usize).min(n);
                for k in lo..hi {
                    let t = k as f64 / fs;
                    let z = (t - center) / width;
                    samples[k] += factor * amp * math::exp(-0.5 * z * z);
                }
            }
            beat += 1;
        }
    }

    let record_id = alloc::format!("synth-{seed}");
    SignalRecord::new(record_id, fs, leads)
}

/// Resample by linear interpolation at times `k / target_fs`. Duration is
/// preserved; times beyond the last source sample clamp to it.
pub fn resample(record: &SignalRecord, target_fs: f64) -> Result<SignalRecord> {
    if !(target_fs.is_finite() && target_fs > 0.0) {
        return Err(Error::InvalidArgument("target sampling rate must be positive"));
    }
    let new_n = math::round(record.duration_s() * target_fs).max(1.0) as usize;
    let ratio = record.fs() / target_fs;
    let mut leads: [Vec<f64>; 12] = core::array::from_fn(|_| Vec::with_capacity(new_n));
    for lead in LeadId::ALL {
        let src = record.lead(lead);
        let dst = &mut leads[lead.index()];
        for k in 0..new_n {
            dst.push(interp_clamped(src, k as f64 * ratio));
        }
    }
    SignalRecord::new(record.record_id(), target_fs, leads)
}
