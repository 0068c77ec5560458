//! Normalized SNR and log-spectrogram distance.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::MetricError;
use crate::media::audio::AudioBuffer;

pub const FRAME_LEN: usize = 1024;
pub const HOP_LEN: usize = 512;
pub const BINS: usize = FRAME_LEN / 2 + 1;

/// SNR values at or above this many dB map to a score of 1.
pub const SNR_CEILING_DB: f64 = 50.0;

fn check_rates(candidate: &AudioBuffer, reference: &AudioBuffer) -> Result<(), MetricError> {
    if candidate.sample_rate() != reference.sample_rate() {
        return Err(MetricError::SampleRateMismatch {
            candidate: candidate.sample_rate(),
            reference: reference.sample_rate(),
        });
    }
    Ok(())
}

/// SNR of the reference against the residual `reference - candidate`, over
/// the common prefix, clamped to `[0, 50]` dB and divided by 50.
pub fn audio_snr_score(candidate: &AudioBuffer, reference: &AudioBuffer) -> Result<f64, MetricError> {
    check_rates(candidate, reference)?;
    let n = candidate.len().min(reference.len());
    if n == 0 {
        return Ok(if candidate.is_empty() && reference.is_empty() { 1.0 } else { 0.0 });
    }
    let (c, r) = (&candidate.samples()[..n], &reference.samples()[..n]);
    let signal = r.iter().map(|x| x * x).sum::<f64>() / n as f64;
    let noise = r.iter().zip(c).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / n as f64;
    if noise == 0.0 {
        return Ok(1.0);
    }
    if signal == 0.0 {
        return Ok(0.0);
    }
    let db = 10.0 * (signal / noise).log10();
    Ok(db.clamp(0.0, SNR_CEILING_DB) / SNR_CEILING_DB)
}

/// Periodic Hann window of length `FRAME_LEN`.
pub fn hann_window() -> Vec<f64> {
    (0..FRAME_LEN)
        .map(|n| 0.5 - 0.5 * (2.0 * PI * n as f64 / FRAME_LEN as f64).cos())
        .collect()
}

/// Number of STFT frames for a signal: frames start every `HOP_LEN`
/// samples and must fit entirely, except that a nonempty signal shorter
/// than one frame gives a single zero-padded frame.
pub fn frame_count(len: usize) -> usize {
    match len {
        0 => 0,
        n if n < FRAME_LEN => 1,
        n => 1 + (n - FRAME_LEN) / HOP_LEN,
    }
}

/// One-sided STFT magnitudes (frames x 513 bins).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    frames: usize,
    magnitudes: Vec<f64>,
}

impl Spectrogram {
    pub fn compute(samples: &[f64]) -> Spectrogram {
        let frames = frame_count(samples.len());
        let window = hann_window();
        let fft = FftPlanner::<f64>::new().plan_fft_forward(FRAME_LEN);
        let mut buffer = vec![Complex::new(0.0, 0.0); FRAME_LEN];
        let mut magnitudes = Vec::with_capacity(frames * BINS);
        for f in 0..frames {
            let start = f * HOP_LEN;
            for (i, slot) in buffer.iter_mut().enumerate() {
                let x = samples.get(start + i).copied().unwrap_or(0.0);
                *slot = Complex::new(x * window[i], 0.0);
            }
            fft.process(&mut buffer);
            magnitudes.extend(buffer[..BINS].iter().map(|z| z.norm()));
        }
        Spectrogram { frames, magnitudes }
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn bins(&self) -> usize {
        BINS
    }

    pub fn frame(&self, index: usize) -> &[f64] {
        &self.magnitudes[index * BINS..(index + 1) * BINS]
    }
}

/// Mean absolute difference of `ln(1 + |X|)` over the common frames.
pub fn log_spectral_distance(a: &Spectrogram, b: &Spectrogram) -> Option<f64> {
    let frames = a.frames.min(b.frames);
    if frames == 0 {
        return None;
    }
    let n = frames * BINS;
    let total: f64 = a.magnitudes[..n]
        .iter()
        .zip(&b.magnitudes[..n])
        .map(|(x, y)| (x.ln_1p() - y.ln_1p()).abs())
        .sum();
    Some(total / n as f64)
}

/// `1 / (1 + d)` for the log-spectral distance `d`.
pub fn spectrogram_distance_score(candidate: &AudioBuffer, reference: &AudioBuffer) -> Result<f64, MetricError> {
    check_rates(candidate, reference)?;
    if candidate.is_empty() || reference.is_empty() {
        return Ok(if candidate.is_empty() && reference.is_empty() { 1.0 } else { 0.0 });
    }
    let a = Spectrogram::compute(candidate.samples());
    let b = Spectrogram::compute(reference.samples());
    let d = log_spectral_distance(&a, &b).expect("nonempty signals have frames");
    Ok(1.0 / (1.0 + d))
}
