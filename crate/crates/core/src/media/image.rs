use std::path::Path;

use crate::error::DecodeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BufferError {
    #[error("image must be at least 1x1, got {width}x{height}")]
    Empty { width: u32, height: u32 },
    #[error("unsupported channel count {0} (expected 1 or 3)")]
    Channels(u8),
    #[error("expected {expected} samples for the given shape, got {actual}")]
    SampleCount { expected: usize, actual: usize },
    #[error("sample rate must be positive")]
    SampleRate,
    #[error("audio sample {index} is not finite")]
    NonFiniteSample { index: usize },
}

/// 8-bit image, row-major, 1 (gray) or 3 (RGB) interleaved channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    channels: u8,
    samples: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(width: u32, height: u32, channels: u8, samples: Vec<u8>) -> Result<Self, BufferError> {
        if width == 0 || height == 0 {
            return Err(BufferError::Empty { width, height });
        }
        if channels != 1 && channels != 3 {
            return Err(BufferError::Channels(channels));
        }
        let expected = width as usize * height as usize * channels as usize;
        if samples.len() != expected {
            return Err(BufferError::SampleCount {
                expected,
                actual: samples.len(),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            samples,
        })
    }

    pub fn gray(width: u32, height: u32, samples: Vec<u8>) -> Result<Self, BufferError> {
        Self::new(width, height, 1, samples)
    }

    pub fn rgb(width: u32, height: u32, samples: Vec<u8>) -> Result<Self, BufferError> {
        Self::new(width, height, 3, samples)
    }

    pub fn filled(width: u32, height: u32, channels: u8, value: u8) -> Result<Self, BufferError> {
        let n = width as usize * height as usize * channels as usize;
        Self::new(width, height, channels, vec![value; n])
    }

    /// Decodes a PNG or JPEG file. Gray images (with or without alpha) stay
    /// single-channel; everything else becomes RGB. Alpha is dropped and
    /// 16-bit samples are reduced to 8 bits.
    pub fn open(path: &Path) -> Result<Self, DecodeError> {
        let media_err = |message: String| DecodeError::Media {
            path: path.to_owned(),
            message,
        };
        let reader = image::ImageReader::open(path)
            .map_err(|source| DecodeError::Io {
                path: path.to_owned(),
                source,
            })?
            .with_guessed_format()
            .map_err(|e| media_err(format!("cannot detect image format: {e}")))?;
        let format = reader.format();
        let decoded = reader.decode().map_err(|e| {
            let codec = format.map_or_else(|| "unknown format".to_owned(), |f| format!("{f:?}"));
            media_err(format!("{codec} decode failed: {e}"))
        })?;
        let (width, height) = (decoded.width(), decoded.height());
        let buffer = if decoded.color().has_color() {
            Self::new(width, height, 3, decoded.to_rgb8().into_raw())
        } else {
            Self::new(width, height, 1, decoded.to_luma8().into_raw())
        };
        buffer.map_err(|e| media_err(e.to_string()))
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> u8 {
        self.channels
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn shape(&self) -> String {
        format!("{}x{}x{}", self.width, self.height, self.channels)
    }

    /// Luma plane with weights 0.299, 0.587, 0.114, on the 0..=255 scale.
    pub fn luma(&self) -> Vec<f64> {
        match self.channels {
            1 => self.samples.iter().map(|&v| f64::from(v)).collect(),
            _ => self
                .samples
                .chunks_exact(3)
                .map(|p| 0.299 * f64::from(p[0]) + 0.587 * f64::from(p[1]) + 0.114 * f64::from(p[2]))
                .collect(),
        }
    }

    /// Copy with gray replicated across three channels.
    pub fn to_rgb(&self) -> ImageBuffer {
        if self.channels == 3 {
            return self.clone();
        }
        let samples = self.samples.iter().flat_map(|&v| [v, v, v]).collect();
        ImageBuffer {
            samples,
            channels: 3,
            ..*self
        }
    }

    /// Bilinear resample with pixel-center alignment and edge clamping.
    pub fn resize_bilinear(&self, width: u32, height: u32) -> ImageBuffer {
        if (width, height) == (self.width, self.height) {
            return self.clone();
        }
        let c = self.channels as usize;
        let (sw, sh) = (self.width as usize, self.height as usize);
        let taps = |dst: u32, src: usize| -> Vec<(usize, usize, f64)> {
            let scale = src as f64 / f64::from(dst);
            (0..dst)
                .map(|d| {
                    let pos = ((f64::from(d) + 0.5) * scale - 0.5).clamp(0.0, (src - 1) as f64);
                    let lo = pos.floor() as usize;
                    let hi = (lo + 1).min(src - 1);
                    (lo, hi, pos - lo as f64)
                })
                .collect()
        };
        let xs = taps(width, sw);
        let ys = taps(height, sh);
        let at = |x: usize, y: usize, ch: usize| f64::from(self.samples[(y * sw + x) * c + ch]);
        let mut samples = Vec::with_capacity(width as usize * height as usize * c);
        for &(y0, y1, fy) in &ys {
            for &(x0, x1, fx) in &xs {
                for ch in 0..c {
                    let top = at(x0, y0, ch) * (1.0 - fx) + at(x1, y0, ch) * fx;
                    let bottom = at(x0, y1, ch) * (1.0 - fx) + at(x1, y1, ch) * fx;
                    let v = top * (1.0 - fy) + bottom * fy;
                    samples.push(v.round().clamp(0.0, 255.0) as u8);
                }
            }
        }
        ImageBuffer {
            width,
            height,
            channels: self.channels,
            samples,
        }
    }
}

/// Area-averaging resample of a single plane: each output cell is the
/// overlap-weighted mean of the source pixels it covers.
pub fn area_resize(plane: &[f64], width: usize, height: usize, out_w: usize, out_h: usize) -> Vec<f64> {
    let weights = |src: usize, dst: usize| -> Vec<Vec<(usize, f64)>> {
        let scale = src as f64 / dst as f64;
        (0..dst)
            .map(|d| {
                let (start, end) = (d as f64 * scale, (d + 1) as f64 * scale);
                let first = start.floor() as usize;
                let last = (end.ceil() as usize).min(src);
                (first..last)
                    .filter_map(|s| {
                        let overlap = (end.min((s + 1) as f64) - start.max(s as f64)) / scale;
                        (overlap > 0.0).then_some((s, overlap))
                    })
                    .collect()
            })
            .collect()
    };
    let wx = weights(width, out_w);
    let wy = weights(height, out_h);
    let mut rows = vec![0.0; height * out_w];
    for y in 0..height {
        for (ox, taps) in wx.iter().enumerate() {
            rows[y * out_w + ox] = taps.iter().map(|&(x, w)| plane[y * width + x] * w).sum();
        }
    }
    let mut out = vec![0.0; out_h * out_w];
    for (oy, taps) in wy.iter().enumerate() {
        for ox in 0..out_w {
            out[oy * out_w + ox] = taps.iter().map(|&(y, w)| rows[y * out_w + ox] * w).sum();
        }
    }
    out
}
