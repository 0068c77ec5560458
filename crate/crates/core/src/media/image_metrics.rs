//! SSIM, PSNR, average hash and histogram intersection.
//!
//! SSIM and PSNR compare pixel grids, so a candidate with a different size is
//! first resampled (bilinear) to the reference's dimensions.

use crate::error::MetricError;
use crate::media::image::{area_resize, ImageBuffer};

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const PEAK: f64 = 255.0;
const C1: f64 = (0.01 * PEAK) * (0.01 * PEAK);
const C2: f64 = (0.03 * PEAK) * (0.03 * PEAK);

/// PSNR values at or above this many dB map to a score of 1.
pub const PSNR_CEILING_DB: f64 = 50.0;

/// Normalized 1-D Gaussian taps. The window shrinks to the largest odd size
/// that fits when the image is smaller than 11 pixels on a side.
pub fn gaussian_window(width: usize, height: usize) -> Vec<f64> {
    let mut size = SSIM_WINDOW.min(width).min(height);
    if size % 2 == 0 {
        size -= 1;
    }
    let radius = (size / 2) as f64;
    let taps: Vec<f64> = (0..size)
        .map(|i| {
            let d = i as f64 - radius;
            (-(d * d) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp()
        })
        .collect();
    let total: f64 = taps.iter().sum();
    taps.into_iter().map(|t| t / total).collect()
}

/// Separable "valid" filtering: output is `(w - k + 1) x (h - k + 1)`.
fn filter_valid(plane: &[f64], width: usize, height: usize, taps: &[f64]) -> Vec<f64> {
    let k = taps.len();
    let (ow, oh) = (width - k + 1, height - k + 1);
    let mut horizontal = vec![0.0; height * ow];
    for y in 0..height {
        let row = &plane[y * width..(y + 1) * width];
        for x in 0..ow {
            horizontal[y * ow + x] = taps.iter().zip(&row[x..x + k]).map(|(t, v)| t * v).sum();
        }
    }
    let mut out = vec![0.0; oh * ow];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = taps
                .iter()
                .enumerate()
                .map(|(i, t)| t * horizontal[(y + i) * ow + x])
                .sum();
        }
    }
    out
}

/// Mean local SSIM of two same-sized luma planes on the 0..=255 scale, in
/// `[-1, 1]`.
pub fn mean_ssim(candidate: &[f64], reference: &[f64], width: usize, height: usize) -> Result<f64, MetricError> {
    let n = width * height;
    if n == 0 || candidate.len() != n || reference.len() != n {
        return Err(MetricError::ShapeMismatch {
            candidate: format!("{} samples", candidate.len()),
            reference: format!("{width}x{height}"),
        });
    }
    let taps = gaussian_window(width, height);
    let product = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x * y).collect() };
    let mu_x = filter_valid(candidate, width, height, &taps);
    let mu_y = filter_valid(reference, width, height, &taps);
    let xx = filter_valid(&product(candidate, candidate), width, height, &taps);
    let yy = filter_valid(&product(reference, reference), width, height, &taps);
    let xy = filter_valid(&product(candidate, reference), width, height, &taps);
    let total: f64 = (0..mu_x.len())
        .map(|i| {
            let (mx, my) = (mu_x[i], mu_y[i]);
            let (vx, vy, cov) = (xx[i] - mx * mx, yy[i] - my * my, xy[i] - mx * my);
            ((2.0 * mx * my + C1) * (2.0 * cov + C2)) / ((mx * mx + my * my + C1) * (vx + vy + C2))
        })
        .sum();
    Ok(total / mu_x.len() as f64)
}

fn match_reference(candidate: &ImageBuffer, reference: &ImageBuffer) -> ImageBuffer {
    candidate.resize_bilinear(reference.width(), reference.height())
}

/// Gaussian-window SSIM on luma; negative structural agreement scores 0.
pub fn ssim(candidate: &ImageBuffer, reference: &ImageBuffer) -> Result<f64, MetricError> {
    let candidate = match_reference(candidate, reference);
    let (w, h) = (reference.width() as usize, reference.height() as usize);
    let raw = mean_ssim(&candidate.luma(), &reference.luma(), w, h)?;
    Ok(raw.clamp(0.0, 1.0))
}

pub fn mse(candidate: &ImageBuffer, reference: &ImageBuffer) -> f64 {
    let mut candidate = match_reference(candidate, reference);
    let mut reference = reference.clone();
    if candidate.channels() != reference.channels() {
        candidate = candidate.to_rgb();
        reference = reference.to_rgb();
    }
    let sum: f64 = candidate
        .samples()
        .iter()
        .zip(reference.samples())
        .map(|(&a, &b)| {
            let d = f64::from(a) - f64::from(b);
            d * d
        })
        .sum();
    sum / reference.samples().len() as f64
}

/// PSNR in dB clamped to `[0, 50]` and divided by 50. Zero error scores 1.
pub fn psnr_score(candidate: &ImageBuffer, reference: &ImageBuffer) -> f64 {
    let error = mse(candidate, reference);
    if error == 0.0 {
        return 1.0;
    }
    let db = 10.0 * (PEAK * PEAK / error).log10();
    db.clamp(0.0, PSNR_CEILING_DB) / PSNR_CEILING_DB
}

/// 64-bit average hash: 8x8 area-averaged luma, bit set where the cell is
/// at or above the mean. Bit 0 is the top-left cell.
pub fn average_hash(image: &ImageBuffer) -> u64 {
    let cells = area_resize(&image.luma(), image.width() as usize, image.height() as usize, 8, 8);
    let mean = cells.iter().sum::<f64>() / 64.0;
    // Tolerates summation rounding so equal cells compare as equal to the mean.
    let cut = mean - 1e-9 * mean.abs().max(1.0);
    cells
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= cut)
        .fold(0u64, |bits, (i, _)| bits | (1 << i))
}

pub fn average_hash_score(candidate: &ImageBuffer, reference: &ImageBuffer) -> f64 {
    let distance = (average_hash(candidate) ^ average_hash(reference)).count_ones();
    1.0 - f64::from(distance) / 64.0
}

/// Normalized 256-bin histograms, one per channel.
pub fn channel_histograms(image: &ImageBuffer) -> Vec<[f64; 256]> {
    let c = image.channels() as usize;
    let mut counts = vec![[0u64; 256]; c];
    for px in image.samples().chunks_exact(c) {
        for (ch, &v) in px.iter().enumerate() {
            counts[ch][v as usize] += 1;
        }
    }
    let total = image.pixel_count() as f64;
    counts
        .into_iter()
        .map(|hist| {
            let mut normalized = [0.0; 256];
            for (dst, &n) in normalized.iter_mut().zip(hist.iter()) {
                *dst = n as f64 / total;
            }
            normalized
        })
        .collect()
}

/// Mean over channels of histogram intersection. A gray image compared with
/// an RGB one is expanded to RGB first.
pub fn histogram_match(candidate: &ImageBuffer, reference: &ImageBuffer) -> f64 {
    let (a, b) = if candidate.channels() == reference.channels() {
        (channel_histograms(candidate), channel_histograms(reference))
    } else {
        (channel_histograms(&candidate.to_rgb()), channel_histograms(&reference.to_rgb()))
    };
    let per_channel: Vec<f64> = a
        .iter()
        .zip(&b)
        .map(|(ha, hb)| ha.iter().zip(hb).map(|(x, y)| x.min(*y)).sum())
        .collect();
    per_channel.iter().sum::<f64>() / per_channel.len() as f64
}
