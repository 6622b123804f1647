//! WFDB reader for the subset this tool consumes: single-file, 12-signal,
//! format 16 (little-endian signed 16-bit) records — the layout PTB-XL
//! ships. Everything else is rejected loudly.

use std::fs;
use std::path::Path;

use ecgforge_core::{LeadId, SignalRecord};

use crate::error::LoadError;

struct SignalSpec {
    file_name: String,
    gain: f64,
    baseline: i32,
    lead: LeadId,
}

/// Load a WFDB record from its header file. Sample values are converted to
/// mV as `(adc - baseline) / gain` per signal.
///
/// Header checksums are not verified; the skipped check is logged.
pub fn load_wfdb(header_path: &Path) -> Result<SignalRecord, LoadError> {
    let text = fs::read_to_string(header_path)?;
    let parse_err = |line: usize, msg: String| LoadError::Parse {
        path: header_path.to_path_buf(),
        line,
        msg,
    };

    // Content lines with their 1-based file line numbers; comments and
    // blanks skipped.
    let mut content = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (record_line_no, record_line) = content
        .next()
        .ok_or_else(|| parse_err(1, "header has no record line".into()))?;
    let fields: Vec<&str> = record_line.split_whitespace().collect();
    if fields.len() < 4 {
        return Err(parse_err(
            record_line_no,
            format!("record line needs NAME NSIG FS NSAMP, got {fields:?}"),
        ));
    }
    let name = fields[0];
    if name.contains('/') {
        return Err(LoadError::UnsupportedFormat(
            "multi-segment records".to_string(),
        ));
    }
    let nsig: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(record_line_no, format!("bad signal count {:?}", fields[1])))?;
    if nsig != 12 {
        return Err(parse_err(
            record_line_no,
            format!("expected 12 signals, header declares {nsig}"),
        ));
    }
    // Sampling frequency may carry a counter spec after '/'.
    let fs_text = fields[2].split('/').next().unwrap_or_default();
    let fs: f64 = fs_text
        .parse()
        .map_err(|_| parse_err(record_line_no, format!("bad sampling rate {:?}", fields[2])))?;
    if !(fs.is_finite() && fs > 0.0) {
        return Err(parse_err(
            record_line_no,
            format!("sampling rate must be positive, got {fs}"),
        ));
    }
    let nsamp: usize = fields[3]
        .parse()
        .map_err(|_| parse_err(record_line_no, format!("bad sample count {:?}", fields[3])))?;
    if nsamp == 0 {
        return Err(parse_err(record_line_no, "sample count is zero".into()));
    }

    let mut signals = Vec::with_capacity(nsig);
    for _ in 0..nsig {
        let (line_no, line) = content.next().ok_or_else(|| {
            parse_err(
                record_line_no,
                format!("header declares {nsig} signals but ends early"),
            )
        })?;
        signals.push(parse_signal_line(line, line_no, &parse_err)?);
    }

    let data_file = &signals[0].file_name;
    if signals.iter().any(|s| &s.file_name != data_file) {
        return Err(LoadError::UnsupportedFormat(
            "signals split across multiple data files".to_string(),
        ));
    }

    let mut seen = [false; 12];
    for spec in &signals {
        if seen[spec.lead.index()] {
            return Err(parse_err(
                record_line_no,
                format!("lead {} appears twice", spec.lead),
            ));
        }
        seen[spec.lead.index()] = true;
    }

    let dat_path = header_path.with_file_name(data_file);
    let bytes = fs::read(&dat_path)?;
    let expected = nsamp as u64 * nsig as u64 * 2;
    if bytes.len() as u64 != expected {
        return Err(LoadError::TruncatedData {
            path: dat_path,
            expected,
            actual: bytes.len() as u64,
        });
    }

    log::debug!(
        "{}: checksum verification skipped (not part of the supported subset)",
        header_path.display()
    );

    let mut leads: [Vec<f64>; 12] = core::array::from_fn(|_| vec![0.0; nsamp]);
    for (si, spec) in signals.iter().enumerate() {
        let dst = &mut leads[spec.lead.index()];
        for (k, slot) in dst.iter_mut().enumerate() {
            let at = (k * nsig + si) * 2;
            let adc = i16::from_le_bytes([bytes[at], bytes[at + 1]]) as f64;
            *slot = (adc - spec.baseline as f64) / spec.gain;
        }
    }

    Ok(SignalRecord::new(name, fs, leads)?)
}

fn parse_signal_line(
    line: &str,
    line_no: usize,
    parse_err: &impl Fn(usize, String) -> LoadError,
) -> Result<SignalSpec, LoadError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() < 2 {
        return Err(parse_err(
            line_no,
            format!("signal line needs at least FILE FORMAT, got {fields:?}"),
        ));
    }
    let file_name = fields[0].to_string();
    if fields[1] != "16" {
        return Err(LoadError::UnsupportedFormat(format!(
            "storage format {:?}",
            fields[1]
        )));
    }

    // GAIN(BASELINE)/UNITS, every part optional. Gain 0 or absent means the
    // WFDB default of 200 ADC units per mV.
    let mut gain = 0.0f64;
    let mut baseline: Option<i32> = None;
    if let Some(spec) = fields.get(2) {
        let before_units = spec.split('/').next().unwrap_or_default();
        let (gain_text, rest) = match before_units.split_once('(') {
            Some((g, rest)) => (g, Some(rest)),
            None => (before_units, None),
        };
        gain = gain_text
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad gain {spec:?}")))?;
        if let Some(rest) = rest {
            let inner = rest.strip_suffix(')').ok_or_else(|| {
                parse_err(line_no, format!("unclosed baseline parenthesis in {spec:?}"))
            })?;
            baseline = Some(
                inner
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad baseline {spec:?}")))?,
            );
        }
    }
    if gain == 0.0 {
        gain = 200.0;
    }
    // Without an explicit baseline, fall back to ADC zero (field 5), then 0.
    let baseline = match baseline {
        Some(b) => b,
        None => fields
            .get(4)
            .and_then(|t| t.parse().ok())
            .unwrap_or(0i32),
    };

    let description = fields.get(8..).map(|d| d.join(" ")).unwrap_or_default();
    let lead = LeadId::parse(&description)
        .ok_or_else(|| LoadError::UnknownLead(description.clone()))?;

    Ok(SignalSpec {
        file_name,
        gain,
        baseline,
        lead,
    })
}
