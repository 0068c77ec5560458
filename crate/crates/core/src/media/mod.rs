//! Images and audio: decoding plus the six media metrics.

mod audio;
mod audio_metrics;
mod image;
mod image_metrics;

pub use audio::AudioBuffer;
pub use audio_metrics::{
    audio_snr_score, frame_count, hann_window, log_spectral_distance, spectrogram_distance_score, Spectrogram, BINS,
    FRAME_LEN, HOP_LEN, SNR_CEILING_DB,
};
pub use image::{area_resize, BufferError, ImageBuffer};
pub use image_metrics::{
    average_hash, average_hash_score, channel_histograms, gaussian_window, histogram_match, mean_ssim, mse,
    psnr_score, ssim, PSNR_CEILING_DB,
};
