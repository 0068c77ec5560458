use std::path::Path;

use crate::error::DecodeError;
use crate::media::image::BufferError;

/// Mono audio with samples nominally in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl AudioBuffer {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self, BufferError> {
        if sample_rate == 0 {
            return Err(BufferError::SampleRate);
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(BufferError::NonFiniteSample { index });
        }
        Ok(Self { samples, sample_rate })
    }

    /// Averages interleaved channels down to mono.
    pub fn from_interleaved(interleaved: &[f64], channels: usize, sample_rate: u32) -> Result<Self, BufferError> {
        let channels = channels.max(1);
        let mono = interleaved
            .chunks(channels)
            .map(|frame| frame.iter().sum::<f64>() / frame.len() as f64)
            .collect();
        Self::new(mono, sample_rate)
    }

    /// Reads a WAV file: 8/16/24/32-bit integer PCM or 32-bit float, any
    /// channel count (averaged to mono).
    pub fn open(path: &Path) -> Result<Self, DecodeError> {
        let media_err = |message: String| DecodeError::Media {
            path: path.to_owned(),
            message,
        };
        let mut reader = hound::WavReader::open(path).map_err(|e| match e {
            hound::Error::IoError(source) => DecodeError::Io {
                path: path.to_owned(),
                source,
            },
            other => media_err(format!("WAV decode failed: {other}")),
        })?;
        let spec = reader.spec();
        let interleaved: Vec<f64> = match spec.sample_format {
            hound::SampleFormat::Float if spec.bits_per_sample == 32 => reader
                .samples::<f32>()
                .map(|s| s.map(f64::from))
                .collect::<Result<_, _>>(),
            hound::SampleFormat::Int if (8..=32).contains(&spec.bits_per_sample) => {
                let full_scale = f64::from(1u32 << (spec.bits_per_sample - 1));
                reader
                    .samples::<i32>()
                    .map(|s| s.map(|v| f64::from(v) / full_scale))
                    .collect::<Result<_, _>>()
            }
            _ => {
                return Err(media_err(format!(
                    "unsupported WAV encoding: {:?} {}-bit",
                    spec.sample_format, spec.bits_per_sample
                )))
            }
        }
        .map_err(|e| media_err(format!("WAV decode failed: {e}")))?;
        Self::from_interleaved(&interleaved, spec.channels as usize, spec.sample_rate)
            .map_err(|e| media_err(e.to_string()))
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}
